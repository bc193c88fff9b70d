//! Equivariant cohomology through fixed-point localization.
//!
//! Classes are stored by their restrictions to the torus-fixed points: a
//! `LocalizedClass` is one rational function per point, added and
//! multiplied pointwise.  The model selects a monomial basis in the
//! divisor classes u_1..u_m greedily — candidates ordered by total degree,
//! then by largest exponent (so squarefree products come first), then by
//! exponent tuple in descending lexicographic order — keeping a candidate
//! exactly when its localization is independent of those already chosen
//! over the fraction field of the weight ring.  The resulting restriction
//! matrix (points × basis) is invertible by construction; its inverse
//! interpolates localized data back into basis coefficients.

use crate::fan::Fan;
use crate::fixed_point::{fixed_points, FixedPoint};
use crate::matrix::RfMatrix;
use crate::poly::{Monomial, QRat};
use crate::ratfun::RationalFunction;
use crate::series::{Neg, SeriesCoeff};

/// A cohomology class by its fixed-point restrictions.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalizedClass {
    values: Vec<RationalFunction>,
}

impl LocalizedClass {
    pub fn new(values: Vec<RationalFunction>) -> Self {
        assert!(!values.is_empty(), "a localized class needs at least one point");
        let arity = values[0].arity();
        assert!(
            values.iter().all(|v| v.arity() == arity),
            "mixed arities in a localized class"
        );
        LocalizedClass { values }
    }

    pub fn zero(points: usize, arity: usize) -> Self {
        Self::new(vec![RationalFunction::zero(arity); points])
    }

    pub fn values(&self) -> &[RationalFunction] {
        &self.values
    }

    pub fn value(&self, x: usize) -> &RationalFunction {
        &self.values[x]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn arity(&self) -> usize {
        self.values[0].arity()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    fn zip(&self, other: &Self, f: impl Fn(&RationalFunction, &RationalFunction) -> RationalFunction) -> Self {
        assert_eq!(self.len(), other.len(), "point count mismatch");
        LocalizedClass {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a.add(b))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a.sub(b))
    }

    /// Pointwise product — the cup product in localized form.
    pub fn mul(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a.mul(b))
    }

    pub fn neg(&self) -> Self {
        LocalizedClass { values: self.values.iter().map(|v| v.neg()).collect() }
    }

    pub fn scale(&self, f: &RationalFunction) -> Self {
        LocalizedClass { values: self.values.iter().map(|v| v.mul(f)).collect() }
    }

    pub fn scale_q(&self, c: &QRat) -> Self {
        LocalizedClass { values: self.values.iter().map(|v| v.scale(c)).collect() }
    }

    /// Translates every torus weight: λ_i ↦ λ_i − k_i z, pointwise.
    pub fn lambda_shift(&self, k: &[i64]) -> Self {
        LocalizedClass { values: self.values.iter().map(|v| v.lambda_shift(k)).collect() }
    }
}

impl SeriesCoeff for LocalizedClass {
    fn is_zero(&self) -> bool {
        LocalizedClass::is_zero(self)
    }

    fn add(&self, other: &Self) -> Self {
        LocalizedClass::add(self, other)
    }

    fn mul(&self, other: &Self) -> Self {
        LocalizedClass::mul(self, other)
    }

    fn sum_of_products(pairs: &[(&Self, &Self)]) -> Option<Self> {
        let n = pairs.first()?.0.len();
        let arity = pairs[0].0.arity();
        let values = (0..n)
            .map(|i| {
                let prods: Vec<RationalFunction> = pairs
                    .iter()
                    .filter(|(a, b)| !a.value(i).is_zero() && !b.value(i).is_zero())
                    .map(|(a, b)| a.value(i).mul(b.value(i)))
                    .collect();
                RationalFunction::sum(arity, prods.iter())
            })
            .collect();
        Some(LocalizedClass { values })
    }
}

impl Neg for LocalizedClass {
    fn neg_coeff(&self) -> Self {
        self.neg()
    }
}

/// A cohomology class by its coefficients over the model's monomial basis.
#[derive(Debug, Clone, PartialEq)]
pub struct GlobalClass {
    pub coeffs: Vec<RationalFunction>,
}

impl GlobalClass {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
}

/// Fixed points, monomial basis and restriction data for one fan.
#[derive(Debug, Clone)]
pub struct CohomologyModel {
    fan: Fan,
    points: Vec<FixedPoint>,
    basis: Vec<Monomial>,
    p0: RfMatrix,
    p0_inv: RfMatrix,
}

/// All exponent vectors of length `m` with total degree `t`, ordered for
/// greedy selection: largest exponent ascending, then exponent tuple in
/// descending lexicographic order.
fn monomials_of_degree(m: usize, t: u32) -> Vec<Monomial> {
    fn fill(m: usize, t: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() == m - 1 {
            prefix.push(t);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in 0..=t {
            prefix.push(e);
            fill(m, t - e, prefix, out);
            prefix.pop();
        }
    }
    let mut raw = Vec::new();
    fill(m, t, &mut Vec::new(), &mut raw);
    raw.sort_by(|a, b| {
        let ma = a.iter().max().copied().unwrap_or(0);
        let mb = b.iter().max().copied().unwrap_or(0);
        ma.cmp(&mb).then_with(|| b.cmp(a))
    });
    raw.into_iter().map(Monomial).collect()
}

/// Gaussian step for the greedy basis: reduces `v` against the echelon
/// rows; on a nonzero remainder, normalizes, records it and reports
/// acceptance.
fn accept_if_independent(
    rows: &mut Vec<Vec<RationalFunction>>,
    pivots: &mut Vec<usize>,
    mut v: Vec<RationalFunction>,
) -> bool {
    for (row, &p) in rows.iter().zip(pivots.iter()) {
        if v[p].is_zero() {
            continue;
        }
        let f = v[p].clone();
        for (vi, ri) in v.iter_mut().zip(row) {
            *vi = vi.sub(&ri.mul(&f));
        }
    }
    let Some(p) = v.iter().position(|c| !c.is_zero()) else {
        return false;
    };
    let inv = v[p].inverse().expect("pivot entry is nonzero");
    for vi in v.iter_mut() {
        *vi = vi.mul(&inv);
    }
    rows.push(v);
    pivots.push(p);
    true
}

impl CohomologyModel {
    pub fn new(fan: Fan) -> Self {
        let points = fixed_points(&fan);
        let n = points.len();
        let m = fan.num_rays();
        let arity = m + 1;

        let mut basis: Vec<Monomial> = Vec::new();
        let mut rows: Vec<Vec<RationalFunction>> = Vec::new();
        let mut pivots: Vec<usize> = Vec::new();
        let bound = (m + fan.dim() + 1) as u32;
        'outer: for t in 0..=bound {
            for mono in monomials_of_degree(m, t) {
                let vec = localize_monomial(&points, &mono, arity);
                if accept_if_independent(&mut rows, &mut pivots, vec) {
                    basis.push(mono);
                    if basis.len() == n {
                        break 'outer;
                    }
                }
            }
        }
        assert_eq!(
            basis.len(),
            n,
            "monomial localizations span the fixed-point algebra"
        );

        let p0 = RfMatrix::from_rows(
            arity,
            points
                .iter()
                .map(|x| {
                    basis
                        .iter()
                        .map(|mono| monomial_at_point(x, mono, arity))
                        .collect()
                })
                .collect(),
        );
        let p0_inv = p0
            .inverse()
            .expect("restriction matrix of an independent basis is invertible");
        CohomologyModel { fan, points, basis, p0, p0_inv }
    }

    pub fn fan(&self) -> &Fan {
        &self.fan
    }

    pub fn points(&self) -> &[FixedPoint] {
        &self.points
    }

    pub fn num_points(&self) -> usize {
        self.points.len()
    }

    /// Polynomial arity of all localized data: torus weights plus z.
    pub fn arity(&self) -> usize {
        self.fan.num_rays() + 1
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    /// Human-readable basis monomials: "1", "u2", "u1*u3", "u1^2*u2", …
    pub fn basis_labels(&self) -> Vec<String> {
        self.basis
            .iter()
            .map(|mono| {
                let factors: Vec<String> = mono
                    .0
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(j, &e)| {
                        if e == 1 {
                            format!("u{}", j + 1)
                        } else {
                            format!("u{}^{}", j + 1, e)
                        }
                    })
                    .collect();
                if factors.is_empty() {
                    "1".to_string()
                } else {
                    factors.join("*")
                }
            })
            .collect()
    }

    /// Restriction matrix: rows indexed by fixed points, columns by basis
    /// monomials.
    pub fn restriction_matrix(&self) -> &RfMatrix {
        &self.p0
    }

    pub fn restriction_inverse(&self) -> &RfMatrix {
        &self.p0_inv
    }

    /// The unit class.
    pub fn one(&self) -> LocalizedClass {
        LocalizedClass::new(vec![RationalFunction::one(self.arity()); self.num_points()])
    }

    /// Restriction of the divisor class u_i.
    pub fn divisor(&self, i: usize) -> LocalizedClass {
        LocalizedClass::new(
            self.points
                .iter()
                .map(|x| RationalFunction::from_poly(x.weights[i].clone()))
                .collect(),
        )
    }

    /// Restriction of an arbitrary monomial in the divisor classes.
    pub fn monomial_class(&self, mono: &Monomial) -> LocalizedClass {
        LocalizedClass::new(localize_monomial(&self.points, mono, self.arity()))
    }

    /// Basis coefficients → localized class.
    pub fn restrict(&self, class: &GlobalClass) -> LocalizedClass {
        assert_eq!(class.coeffs.len(), self.basis.len(), "basis length mismatch");
        LocalizedClass::new(self.p0.mul_vec(&class.coeffs))
    }

    /// Localized class → basis coefficients.
    pub fn interpolate(&self, class: &LocalizedClass) -> GlobalClass {
        assert_eq!(class.len(), self.num_points(), "point count mismatch");
        GlobalClass { coeffs: self.p0_inv.mul_vec(class.values()) }
    }

    /// Pushforward to a point: Σ_x f(x)/e(x).
    pub fn integrate(&self, class: &LocalizedClass) -> RationalFunction {
        assert_eq!(class.len(), self.num_points(), "point count mismatch");
        let mut acc = RationalFunction::zero(self.arity());
        for (v, x) in class.values().iter().zip(&self.points) {
            let e = RationalFunction::from_poly(x.euler.clone());
            acc = acc.add(&v.div(&e).expect("Euler classes are nonzero"));
        }
        acc
    }

    /// Poincaré pairing ∫ a·b.
    pub fn pairing(&self, a: &LocalizedClass, b: &LocalizedClass) -> RationalFunction {
        self.integrate(&a.mul(b))
    }
}

fn monomial_at_point(x: &FixedPoint, mono: &Monomial, arity: usize) -> RationalFunction {
    let mut acc = crate::poly::MPoly::one(arity);
    for (j, &e) in mono.0.iter().enumerate() {
        if e > 0 {
            acc = acc.mul(&x.weights[j].pow(e));
        }
    }
    RationalFunction::from_poly(acc)
}

fn localize_monomial(points: &[FixedPoint], mono: &Monomial, arity: usize) -> Vec<RationalFunction> {
    points
        .iter()
        .map(|x| monomial_at_point(x, mono, arity))
        .collect()
}
