//! Birkhoff factorization of the derivative frame of the I-function.
//!
//! The frame `L` collects the covariant derivatives `Π_i 𝔇_i^{a_i} Ĩ` for
//! the chosen basis monomials `u^a` into a matrix-valued Novikov series
//! (rows = fixed points, columns = basis monomials).  Degree by degree in
//! the ω-filtration it factors uniquely as
//!
//! ```text
//!   L = U · P,     U = Id + (z-proper),     P = z-polynomial,
//! ```
//!
//! which is the localized form of writing the I-function as a fundamental
//! solution applied to a z-polynomial input.  From the factors we read off
//!
//! * the mirror map correction `τ_d` — the `1/z`-coefficient of `U` applied
//!   to the coordinate vector of the class 1 (the logarithmic head
//!   `Σ u_i log y_i` is a fixed gauge marker, never materialized);
//! * the factor `Υ_d` — the first column of `P`, expressed in classes;
//! * the connection matrices `C_i = U⁻¹ 𝔇_i U`, which must be z-free and
//!   whose action on the class 1 recovers the derivative of the mirror map
//!   (the Seidel elements `S_i`);
//! * the quantum-product matrices `A_i = P₀⁻¹ C_i P₀` in the monomial
//!   basis, with classical head and Novikov-graded corrections.
//!
//! A projective-space fan additionally satisfies the quantum differential
//! relation `𝔇_1 ⋯ 𝔇_m Ĩ = (Qy)^{(1,…,1)} · Ĩ|_{λ → λ − z(1,…,1)}`, exposed
//! here as an exact residual.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::cohomology::{CohomologyModel, GlobalClass, LocalizedClass};
use crate::degree::{effective_degrees, DegreeClass, Grading};
use crate::ifun::IFunction;
use crate::matrix::RfMatrix;
use crate::poly::{MPoly, Monomial, QRat};
use crate::ratfun::RationalFunction;
use crate::series::{NovikovSeries, SeriesCoeff};
use crate::shift::covariant_derivative;

/// Contract violations surfaced while factoring the frame.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MirrorError {
    /// An extracted Υ coefficient is not polynomial in z.
    #[error("the factor coefficient at degree {0} is not polynomial in z")]
    NonPolynomialUpsilon(DegreeClass),
    /// A connection matrix depends on z.
    #[error("the connection matrix for direction {direction} depends on z at degree {degree}")]
    ZDependentConnection { direction: usize, degree: DegreeClass },
    /// A product-matrix entry has a pole at λ = 0, so the nonequivariant
    /// limit does not exist entrywise.
    #[error("an entry of the product matrix for direction {direction} has a pole at lambda = 0")]
    EquivariantLimit { direction: usize },
}

/// The covariant-derivative frame of the I-function: a matrix-valued
/// Novikov series whose column for the basis monomial `u^a` holds
/// `Π_i 𝔇_i^{a_i} Ĩ`, restricted to the fixed points row by row.
///
/// Its degree-0 part is exactly the restriction matrix of the basis.
#[derive(Debug, Clone)]
pub struct LaurentFrame {
    series: NovikovSeries<RfMatrix>,
}

fn derivative_column(
    model: &CohomologyModel,
    cache: &mut BTreeMap<Monomial, NovikovSeries<LocalizedClass>>,
    mono: &Monomial,
) -> NovikovSeries<LocalizedClass> {
    if let Some(hit) = cache.get(mono) {
        return hit.clone();
    }
    let i = mono
        .0
        .iter()
        .position(|&e| e > 0)
        .expect("the unit column is seeded");
    let mut parent = mono.clone();
    parent.0[i] -= 1;
    let below = derivative_column(model, cache, &parent);
    let col = covariant_derivative(model, i, &below);
    cache.insert(mono.clone(), col.clone());
    col
}

impl LaurentFrame {
    pub fn new(model: &CohomologyModel, ifun: &IFunction) -> Self {
        let base = ifun.series();
        let m = model.fan().num_rays();
        let n = model.num_points();
        let arity = model.arity();
        let mut cache = BTreeMap::new();
        cache.insert(Monomial::unit(m), base.clone());
        let columns: Vec<NovikovSeries<LocalizedClass>> = model
            .basis()
            .iter()
            .map(|mono| derivative_column(model, &mut cache, mono))
            .collect();
        let mut series = NovikovSeries::new(base.grading().clone(), base.cutoff().clone());
        for (d, _) in base.iter() {
            let rows = (0..n)
                .map(|x| {
                    columns
                        .iter()
                        .map(|col| {
                            col.get(d)
                                .map_or_else(|| RationalFunction::zero(arity), |c| c.value(x).clone())
                        })
                        .collect()
                })
                .collect();
            series.add_coeff(d.clone(), RfMatrix::from_rows(arity, rows));
        }
        let frame = LaurentFrame { series };
        assert_eq!(
            frame.series.get(&DegreeClass::zero(m)),
            Some(model.restriction_matrix()),
            "the frame head is the restriction matrix"
        );
        frame
    }

    pub fn series(&self) -> &NovikovSeries<RfMatrix> {
        &self.series
    }
}

/// The two factors of the frame: `U` unipotent with z-proper corrections,
/// `P` with z-polynomial entries.
#[derive(Debug, Clone)]
pub struct BirkhoffFactors {
    u: NovikovSeries<RfMatrix>,
    p: NovikovSeries<RfMatrix>,
}

fn split_matrix(g: &RfMatrix) -> (RfMatrix, RfMatrix) {
    let arity = g.arity();
    let mut poly = RfMatrix::zero(g.rows(), g.cols(), arity);
    let mut proper = RfMatrix::zero(g.rows(), g.cols(), arity);
    for r in 0..g.rows() {
        for c in 0..g.cols() {
            let (head, tail) = g.at(r, c).z_split();
            *poly.at_mut(r, c) = head;
            *proper.at_mut(r, c) = tail;
        }
    }
    (poly, proper)
}

impl BirkhoffFactors {
    /// Degree-by-degree factorization in the ω-filtration: with
    /// `K_d = L_d − Σ_{0<d′<d} U_{d′} P_{d−d′}` and `G_d = K_d P₀⁻¹`,
    /// the z-proper part of `G_d` is `U_d` and the z-polynomial part,
    /// multiplied back by `P₀`, is `P_d`.  The splittings only involve
    /// strictly smaller filtration values, so equal-ω ties are harmless.
    pub fn factorize(model: &CohomologyModel, frame: &LaurentFrame) -> Self {
        let l = frame.series();
        let n = model.num_points();
        let arity = model.arity();
        let m = model.fan().num_rays();
        let p0 = model.restriction_matrix();
        let p0_inv = model.restriction_inverse();
        let mut u = NovikovSeries::new(l.grading().clone(), l.cutoff().clone());
        u.add_coeff(DegreeClass::zero(m), RfMatrix::identity(n, arity));
        let mut p = NovikovSeries::new(l.grading().clone(), l.cutoff().clone());
        p.add_coeff(DegreeClass::zero(m), p0.clone());
        for d in l.degrees_filtered() {
            if d.is_zero() {
                continue;
            }
            let mut k = l.get(&d).cloned().expect("degree taken from the support");
            let known: Vec<DegreeClass> = u
                .iter()
                .map(|(dp, _)| dp.clone())
                .filter(|dp| !dp.is_zero())
                .collect();
            for dp in &known {
                let rem = d.sub(dp);
                if rem.is_zero() {
                    continue;
                }
                if let (Some(umat), Some(pmat)) = (u.get(dp), p.get(&rem)) {
                    k = k.sub(&umat.mul(pmat));
                }
            }
            let g = k.mul(p0_inv);
            let (g_poly, g_proper) = split_matrix(&g);
            u.add_coeff(d.clone(), g_proper);
            p.add_coeff(d.clone(), g_poly.mul(p0));
        }
        BirkhoffFactors { u, p }
    }

    pub fn u(&self) -> &NovikovSeries<RfMatrix> {
        &self.u
    }

    pub fn p(&self) -> &NovikovSeries<RfMatrix> {
        &self.p
    }

    /// Independent re-multiplication check: `L − U·P`, exactly zero when
    /// the factorization is correct.
    pub fn residual(&self, frame: &LaurentFrame) -> NovikovSeries<RfMatrix> {
        frame.series().sub(&self.u.mul(&self.p))
    }

    /// Every entry of `U − Id` is proper in z.
    pub fn u_is_proper(&self) -> bool {
        self.u
            .iter()
            .all(|(d, mat)| d.is_zero() || mat.entries().all(RationalFunction::is_proper_in_z))
    }

    /// Every entry of `P` is polynomial in z (z-free denominator).
    pub fn p_is_polynomial(&self) -> bool {
        self.p
            .iter()
            .all(|(_, mat)| mat.entries().all(|e| e.den_is_z_free()))
    }
}

/// Inverse of a unipotent matrix series (`V₀ = Id`,
/// `V_d = −Σ_{0<d′≤d} U_{d′} V_{d−d′}`), iterated in filtration order over
/// the supplied effective degrees.
fn unipotent_inverse(
    u: &NovikovSeries<RfMatrix>,
    degrees: &[DegreeClass],
    n: usize,
    arity: usize,
) -> NovikovSeries<RfMatrix> {
    let mut v = NovikovSeries::new(u.grading().clone(), u.cutoff().clone());
    let len = degrees
        .first()
        .map_or(0, |d| d.len());
    v.add_coeff(DegreeClass::zero(len), RfMatrix::identity(n, arity));
    for d in degrees {
        if d.is_zero() {
            continue;
        }
        let pairs: Vec<(&RfMatrix, &RfMatrix)> = u
            .iter()
            .filter(|(dp, _)| !dp.is_zero())
            .filter_map(|(dp, umat)| v.get(&d.sub(dp)).map(|vmat| (umat, vmat)))
            .collect();
        if let Some(acc) = SeriesCoeff::sum_of_products(&pairs) {
            if !RfMatrix::is_zero(&acc) {
                v.add_coeff(d.clone(), acc.neg());
            }
        }
    }
    v
}

/// Row-wise covariant derivative of a matrix series: the entry at degree
/// `d`, row `x` is multiplied by `u_i(x) + z·(u_i·d)`.
fn row_derivative(
    model: &CohomologyModel,
    i: usize,
    s: &NovikovSeries<RfMatrix>,
) -> NovikovSeries<RfMatrix> {
    let arity = model.arity();
    let z = MPoly::z(arity);
    s.map_with_degree(|d, mat| {
        let rows = (0..mat.rows())
            .map(|x| {
                let mult = model.points()[x].weights[i]
                    .add(&z.scale(&QRat::from_integer(d.pairing(i).into())));
                (0..mat.cols()).map(|c| mat.at(x, c).mul_poly(&mult)).collect()
            })
            .collect();
        RfMatrix::from_rows(arity, rows)
    })
}

fn global_scale(class: &GlobalClass, c: &QRat) -> GlobalClass {
    GlobalClass {
        coeffs: class.coeffs.iter().map(|f| f.scale(c)).collect(),
    }
}

fn global_sub(a: &GlobalClass, b: &GlobalClass) -> GlobalClass {
    GlobalClass {
        coeffs: a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(x, y)| x.sub(y))
            .collect(),
    }
}

fn sort_by_filtration<T>(grading: &Grading, items: &mut Vec<(DegreeClass, T)>) {
    items.sort_by(|a, b| {
        grading
            .value(&a.0)
            .cmp(&grading.value(&b.0))
            .then_with(|| a.0.cmp(&b.0))
    });
}

/// Everything the factorization yields for one fan at one cutoff: the
/// I-function, the frame, the factors, the mirror-map and Υ corrections,
/// and the validated connection and product matrices for every divisor
/// direction.
#[derive(Debug, Clone)]
pub struct MirrorEngine {
    model: CohomologyModel,
    grading: Grading,
    cutoff: QRat,
    ifun: IFunction,
    frame: LaurentFrame,
    factors: BirkhoffFactors,
    tau: Vec<(DegreeClass, GlobalClass)>,
    upsilon: Vec<(DegreeClass, GlobalClass)>,
    connections: Vec<NovikovSeries<RfMatrix>>,
    products: Vec<NovikovSeries<RfMatrix>>,
}

impl MirrorEngine {
    /// Run the full pipeline with the fan's certified grading.
    pub fn new(model: CohomologyModel, cutoff: QRat) -> Result<Self, MirrorError> {
        let grading = model.fan().grading();
        Self::with_grading(model, grading, cutoff)
    }

    /// Run the full pipeline with a caller-supplied positive grading.
    pub fn with_grading(
        model: CohomologyModel,
        grading: Grading,
        cutoff: QRat,
    ) -> Result<Self, MirrorError> {
        let m = model.fan().num_rays();
        let n = model.num_points();
        let arity = model.arity();
        let ifun = IFunction::new(&model, &grading, &cutoff);
        let frame = LaurentFrame::new(&model, &ifun);
        let factors = BirkhoffFactors::factorize(&model, &frame);
        let degrees = effective_degrees(model.fan().generators(), &grading, &cutoff);
        let u_inverse = unipotent_inverse(factors.u(), &degrees, n, arity);
        let ones = vec![RationalFunction::one(arity); n];

        let mut tau = Vec::new();
        for (d, umat) in factors.u().iter() {
            if d.is_zero() {
                continue;
            }
            let limits = umat
                .mul_vec(&ones)
                .iter()
                .map(|f| f.z_inf_leading().expect("corrections to the identity are z-proper"))
                .collect();
            let class = model.interpolate(&LocalizedClass::new(limits));
            if !class.is_zero() {
                tau.push((d.clone(), class));
            }
        }
        sort_by_filtration(&grading, &mut tau);

        let mut upsilon = Vec::new();
        for (d, pmat) in factors.p().iter() {
            if d.is_zero() {
                continue;
            }
            let column: Vec<RationalFunction> =
                (0..n).map(|x| pmat.at(x, 0).clone()).collect();
            if column.iter().any(|f| !f.den_is_z_free()) {
                return Err(MirrorError::NonPolynomialUpsilon(d.clone()));
            }
            let class = model.interpolate(&LocalizedClass::new(column));
            if class.coeffs.iter().any(|f| !f.den_is_z_free()) {
                return Err(MirrorError::NonPolynomialUpsilon(d.clone()));
            }
            if !class.is_zero() {
                upsilon.push((d.clone(), class));
            }
        }
        sort_by_filtration(&grading, &mut upsilon);

        let p0 = model.restriction_matrix().clone();
        let p0_inv = model.restriction_inverse().clone();
        let mut connections = Vec::with_capacity(m);
        let mut products = Vec::with_capacity(m);
        for i in 0..m {
            let derived = row_derivative(&model, i, factors.u());
            let c = u_inverse.mul(&derived);
            for (d, mat) in c.iter() {
                if mat.entries().any(|e| !e.is_z_free()) {
                    return Err(MirrorError::ZDependentConnection {
                        direction: i,
                        degree: d.clone(),
                    });
                }
            }
            let a = c.map(|mat| p0_inv.mul(mat).mul(&p0));
            connections.push(c);
            products.push(a);
        }

        Ok(MirrorEngine {
            model,
            grading,
            cutoff,
            ifun,
            frame,
            factors,
            tau,
            upsilon,
            connections,
            products,
        })
    }

    pub fn model(&self) -> &CohomologyModel {
        &self.model
    }

    pub fn grading(&self) -> &Grading {
        &self.grading
    }

    pub fn cutoff(&self) -> &QRat {
        &self.cutoff
    }

    pub fn ifunction(&self) -> &IFunction {
        &self.ifun
    }

    pub fn frame(&self) -> &LaurentFrame {
        &self.frame
    }

    pub fn factors(&self) -> &BirkhoffFactors {
        &self.factors
    }

    /// Mirror-map corrections `τ_d` (nonzero ones only), in filtration
    /// order.  The logarithmic head `Σ u_i log y_i` is implicit.
    pub fn tau(&self) -> &[(DegreeClass, GlobalClass)] {
        &self.tau
    }

    /// Corrections `Υ_d` of the z-polynomial factor over the class 1
    /// (nonzero ones only), in filtration order; the head is 1.
    pub fn upsilon(&self) -> &[(DegreeClass, GlobalClass)] {
        &self.upsilon
    }

    /// The z-free connection matrix `C_i = U⁻¹ 𝔇_i U` acting on localized
    /// vectors.
    pub fn connection(&self, i: usize) -> &NovikovSeries<RfMatrix> {
        &self.connections[i]
    }

    /// The quantum-product matrix of the i-th divisor in the monomial
    /// basis: `A_i = P₀⁻¹ C_i P₀`.
    pub fn product_matrix(&self, i: usize) -> &NovikovSeries<RfMatrix> {
        &self.products[i]
    }

    /// The Seidel element `S_i` as an explicit degree list: head `u_i`
    /// at degree 0, then `(u_i·d)·τ_d` for each mirror-map correction.
    pub fn seidel_element(&self, i: usize) -> Vec<(DegreeClass, GlobalClass)> {
        let m = self.model.fan().num_rays();
        let head = self.model.interpolate(&self.model.divisor(i));
        let mut out = vec![(DegreeClass::zero(m), head)];
        for (d, t) in &self.tau {
            let class = global_scale(t, &QRat::from_integer(d.pairing(i).into()));
            if !class.is_zero() {
                out.push((d.clone(), class));
            }
        }
        out
    }

    /// Differences between the connection matrix applied to the class 1
    /// and the Seidel element, degree by degree; all zero exactly when
    /// the mirror-map ODE holds.
    pub fn seidel_residuals(&self, i: usize) -> Vec<(DegreeClass, GlobalClass)> {
        let n = self.model.num_points();
        let arity = self.model.arity();
        let ones = vec![RationalFunction::one(arity); n];
        let mut lhs: BTreeMap<DegreeClass, GlobalClass> = self.connections[i]
            .iter()
            .map(|(d, mat)| {
                (
                    d.clone(),
                    self.model.interpolate(&LocalizedClass::new(mat.mul_vec(&ones))),
                )
            })
            .collect();
        let mut out = Vec::new();
        for (d, s) in self.seidel_element(i) {
            let diff = match lhs.remove(&d) {
                Some(c) => global_sub(&c, &s),
                None => global_scale(&s, &QRat::from_integer((-1).into())),
            };
            if !diff.is_zero() {
                out.push((d, diff));
            }
        }
        for (d, c) in lhs {
            if !c.is_zero() {
                out.push((d, c));
            }
        }
        sort_by_filtration(&self.grading, &mut out);
        out
    }

    /// Residual of the projective-space quantum differential relation
    /// `𝔇_1 ⋯ 𝔇_m Ĩ − (Qy)^{(1,…,1)} · Ĩ|_{λ → λ − z(1,…,1)}`; exactly
    /// zero on a projective-space fan.
    pub fn quantum_relation_residual(&self) -> NovikovSeries<LocalizedClass> {
        let m = self.model.fan().num_rays();
        let mut lhs = self.ifun.series().clone();
        for i in 0..m {
            lhs = covariant_derivative(&self.model, i, &lhs);
        }
        let shift = vec![1i64; m];
        let moved = self.ifun.series().map(|c| {
            LocalizedClass::new(c.values().iter().map(|f| f.lambda_shift(&shift)).collect())
        });
        lhs.sub(&moved.shift_degrees(&DegreeClass(shift)))
    }

    /// The product matrix at `λ = 0`: the nonequivariant small quantum
    /// product by the i-th divisor class in the monomial basis.
    pub fn nonequivariant_product(
        &self,
        i: usize,
    ) -> Result<NovikovSeries<RfMatrix>, MirrorError> {
        let a = &self.products[i];
        let arity = self.model.arity();
        let mut coeffs = Vec::new();
        for (d, mat) in a.iter() {
            let rows = (0..mat.rows())
                .map(|r| {
                    (0..mat.cols())
                        .map(|c| mat.at(r, c).lambdas_to_zero())
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| MirrorError::EquivariantLimit { direction: i })?;
            coeffs.push((d.clone(), RfMatrix::from_rows(arity, rows)));
        }
        Ok(NovikovSeries::from_coeffs(
            a.grading().clone(),
            a.cutoff().clone(),
            coeffs,
        ))
    }
}
