//! Shift operators on the localized series space.
//!
//! A cocharacter `k ∈ ℤ^m` of the big torus acts on the space of
//! fixed-point-localized series in two steps: substitute `λ → λ − z·k`,
//! then multiply by a fixed-point-dependent rational factor together with
//! a degree offset `d_k(x)` (the class of the section curve joining `x`
//! to the weight-minimal fixed locus of `k`).
//!
//! The factor at `x` is the telescoped ratio of normal weights
//!
//! ```text
//!   Δ_x(k) = Π_j  Π_{c ≤ 0} (u_j(x) + c·z)  /  Π_{c ≤ −u_j(x)·k} (u_j(x) + c·z),
//! ```
//!
//! which collapses to a finite product once the common tail cancels:
//! writing `e_j = −u_j(x)·k`, a negative `e_j` contributes the numerator
//! `Π_{c=e_j+1}^{0} (u_j(x) + c·z)` and a positive `e_j` the denominator
//! `Π_{c=1}^{e_j} (u_j(x) + c·z)`.
//!
//! The module provides the operator itself, the covariant derivative it
//! commutes past, the residual of that commutation on a given series, and
//! an exact composition check `Δ(k)·Δ(l)|_{λ−zk} = Δ(k+l)` whose degree
//! bookkeeping recovers a fixed-point-independent curve class `d(k, l)`.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::cohomology::{CohomologyModel, LocalizedClass};
use crate::degree::DegreeClass;
use crate::fixed_point::{section_degree, FixedPoint, SectionDegreeError};
use crate::poly::{MPoly, QRat};
use crate::ratfun::RationalFunction;
use crate::series::NovikovSeries;

/// Failure modes when building or composing shift operators.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShiftError {
    #[error(transparent)]
    Section(#[from] SectionDegreeError),
    /// The factors for `k` and `l` fail to compose into the factor for
    /// `k + l`, or the resulting degree bookkeeping depends on the fixed
    /// point or on the order of the two cocharacters.
    #[error("shift factors for {k:?} and {l:?} do not compose consistently")]
    InconsistentComposition { k: Vec<i64>, l: Vec<i64> },
}

/// One fixed point's contribution to a shift operator: the telescoped
/// weight factor and the degree offset `d_k(x)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ShiftFactor {
    /// Index into the model's fixed-point list.
    pub point: usize,
    /// Curve class `d_k(x)` added to the degree of every incoming term.
    pub degree_offset: DegreeClass,
    /// Telescoped product/ratio of normal weights `u_j(x) + c·z`.
    pub factor: RationalFunction,
}

fn integral_pairing(weight: &MPoly, k: &[i64]) -> i64 {
    let v = weight.linear_pairing(k);
    assert!(v.is_integer(), "divisor weights pair integrally");
    num_traits::ToPrimitive::to_i64(&v.to_integer()).expect("pairing fits in i64")
}

fn weight_plus_cz(weight: &MPoly, c: i64, arity: usize) -> MPoly {
    weight.add(&MPoly::z(arity).scale(&QRat::from_integer(c.into())))
}

fn telescoped_factor(x: &FixedPoint, k: &[i64], arity: usize) -> RationalFunction {
    let mut num = MPoly::one(arity);
    let mut den = Vec::new();
    for w in &x.weights {
        let e = -integral_pairing(w, k);
        if e < 0 {
            for c in (e + 1)..=0 {
                num = num.mul(&weight_plus_cz(w, c, arity));
            }
        } else {
            for c in 1..=e {
                den.push(weight_plus_cz(w, c, arity));
            }
        }
    }
    RationalFunction::from_factored(num, den).expect("telescoped factors are nonzero")
}

/// The per-fixed-point factors and degree offsets of the shift operator
/// for the cocharacter `k`, in fixed-point order.
pub fn delta(model: &CohomologyModel, k: &[i64]) -> Result<Vec<ShiftFactor>, ShiftError> {
    let offsets = section_degree(model.fan(), model.points(), k)?;
    let arity = model.arity();
    Ok(model
        .points()
        .iter()
        .zip(offsets)
        .enumerate()
        .map(|(xi, (x, degree_offset))| ShiftFactor {
            point: xi,
            degree_offset,
            factor: telescoped_factor(x, k, arity),
        })
        .collect())
}

/// The shift operator `𝔖_k`: acts on a localized series coefficient-wise by
/// `f(x) ↦ Δ_x(k) · (Qy)^{d_k(x)} · f(x)|_{λ → λ − z·k}`.
#[derive(Debug, Clone)]
pub struct ShiftOperator {
    k: Vec<i64>,
    factors: Vec<ShiftFactor>,
}

impl ShiftOperator {
    pub fn new(model: &CohomologyModel, k: &[i64]) -> Result<Self, ShiftError> {
        Ok(Self {
            k: k.to_vec(),
            factors: delta(model, k)?,
        })
    }

    /// The cocharacter this operator shifts by.
    pub fn cocharacter(&self) -> &[i64] {
        &self.k
    }

    /// Per-fixed-point factors, in fixed-point order.
    pub fn factors(&self) -> &[ShiftFactor] {
        &self.factors
    }

    /// Apply the operator to a localized series, truncating at the
    /// series' own cutoff.
    pub fn apply(&self, f: &NovikovSeries<LocalizedClass>) -> NovikovSeries<LocalizedClass> {
        let grading = f.grading().clone();
        let cutoff = f.cutoff().clone();
        let n = self.factors.len();
        let arity = self.factors[0].factor.arity();
        let mut acc: BTreeMap<DegreeClass, Vec<RationalFunction>> = BTreeMap::new();
        for (d, c) in f.iter() {
            for sf in &self.factors {
                let v = c.value(sf.point);
                if v.is_zero() {
                    continue;
                }
                let target = d.add(&sf.degree_offset);
                if grading.value(&target) > cutoff {
                    continue;
                }
                let moved = v.lambda_shift(&self.k).mul(&sf.factor);
                let slot = acc
                    .entry(target)
                    .or_insert_with(|| vec![RationalFunction::zero(arity); n]);
                slot[sf.point] = slot[sf.point].add(&moved);
            }
        }
        NovikovSeries::from_coeffs(
            grading,
            cutoff,
            acc.into_iter().map(|(d, vals)| (d, LocalizedClass::new(vals))),
        )
    }
}

/// The covariant derivative along the i-th divisor direction:
/// `(𝔇_i f)_d(x) = (u_i(x) + z·(u_i·d)) · f_d(x)`.
pub fn covariant_derivative(
    model: &CohomologyModel,
    i: usize,
    f: &NovikovSeries<LocalizedClass>,
) -> NovikovSeries<LocalizedClass> {
    let arity = model.arity();
    let z = MPoly::z(arity);
    f.map_with_degree(|d, c| {
        let vals = c
            .values()
            .iter()
            .enumerate()
            .map(|(x, v)| {
                let mult = model.points()[x].weights[i]
                    .add(&z.scale(&QRat::from_integer(d.pairing(i).into())));
                v.mul_poly(&mult)
            })
            .collect();
        LocalizedClass::new(vals)
    })
}

/// Residual of the flow identity `𝔇_i f = 𝔖_{e_i} f` on the series `f`:
/// zero exactly when `f` integrates the shift flow in direction `i`.
pub fn flow_residual(
    model: &CohomologyModel,
    i: usize,
    f: &NovikovSeries<LocalizedClass>,
) -> Result<NovikovSeries<LocalizedClass>, ShiftError> {
    let mut k = vec![0i64; model.fan().num_rays()];
    k[i] = 1;
    let op = ShiftOperator::new(model, &k)?;
    Ok(covariant_derivative(model, i, f).sub(&op.apply(f)))
}

fn compose_offset(
    model: &CohomologyModel,
    k: &[i64],
    l: &[i64],
) -> Result<DegreeClass, ShiftError> {
    let fk = delta(model, k)?;
    let fl = delta(model, l)?;
    let sum: Vec<i64> = k.iter().zip(l).map(|(a, b)| a + b).collect();
    let fsum = delta(model, &sum)?;
    let mismatch = || ShiftError::InconsistentComposition {
        k: k.to_vec(),
        l: l.to_vec(),
    };
    let mut common: Option<DegreeClass> = None;
    for ((a, b), c) in fk.iter().zip(&fl).zip(&fsum) {
        let lhs = a.factor.mul(&b.factor.lambda_shift(k));
        if lhs != c.factor {
            return Err(mismatch());
        }
        let off = a
            .degree_offset
            .add(&b.degree_offset)
            .sub(&c.degree_offset);
        match &common {
            None => common = Some(off),
            Some(prev) if *prev == off => {}
            Some(_) => return Err(mismatch()),
        }
    }
    Ok(common.expect("a fan has at least one fixed point"))
}

/// Verify the factor composition law `Δ(k) · Δ(l)|_{λ−zk} = Δ(k+l)` at
/// every fixed point and return the fixed-point-independent curve class
/// `d(k, l) = d_k(x) + d_l(x) − d_{k+l}(x)`, checking that it is also
/// symmetric in the two cocharacters.
pub fn compose_check(
    model: &CohomologyModel,
    k: &[i64],
    l: &[i64],
) -> Result<DegreeClass, ShiftError> {
    let d_kl = compose_offset(model, k, l)?;
    let d_lk = compose_offset(model, l, k)?;
    if d_kl != d_lk {
        return Err(ShiftError::InconsistentComposition {
            k: k.to_vec(),
            l: l.to_vec(),
        });
    }
    Ok(d_kl)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::ifun::IFunction;

    fn rf(num: MPoly, den: MPoly) -> RationalFunction {
        RationalFunction::new(num, den).unwrap()
    }

    fn unit_series(model: &CohomologyModel, cutoff: i64) -> NovikovSeries<LocalizedClass> {
        let grading = model.fan().grading();
        let m = model.fan().num_rays();
        NovikovSeries::from_coeffs(
            grading,
            QRat::from_integer(cutoff.into()),
            [(DegreeClass::zero(m), model.one())],
        )
    }

    #[test]
    fn line_shift_factors_for_the_first_divisor() {
        let model = CohomologyModel::new(fixtures::projective_line());
        let factors = delta(&model, &[1, 0]).unwrap();
        let arity = model.arity();
        let w = MPoly::lambda(arity, 0).sub(&MPoly::lambda(arity, 1));

        // At the weight-minimal point the factor is the bare weight and
        // the offset vanishes.
        assert_eq!(factors[0].degree_offset, DegreeClass::zero(2));
        assert_eq!(factors[0].factor, rf(w.clone(), MPoly::one(arity)));

        // At the other point the offset is the line class and the factor
        // inverts the once-stepped weight.
        assert_eq!(factors[1].degree_offset, DegreeClass(vec![1, 1]));
        assert_eq!(
            factors[1].factor,
            rf(MPoly::one(arity), w.neg().add(&MPoly::z(arity)))
        );
    }

    #[test]
    fn degree_zero_action_recovers_the_divisor_class() {
        for model in [
            CohomologyModel::new(fixtures::projective_plane()),
            CohomologyModel::new(fixtures::hirzebruch(1)),
        ] {
            let m = model.fan().num_rays();
            let one = unit_series(&model, 6);
            for i in 0..m {
                let mut k = vec![0i64; m];
                k[i] = 1;
                let op = ShiftOperator::new(&model, &k).unwrap();
                let image = op.apply(&one);
                let head = image
                    .get(&DegreeClass::zero(m))
                    .expect("the minimal fixed locus contributes at degree zero");
                assert_eq!(*head, model.divisor(i));
            }
        }
    }

    #[test]
    fn line_flow_residual_vanishes_on_the_hypergeometric_series() {
        let model = CohomologyModel::new(fixtures::projective_line());
        let grading = model.fan().grading();
        let series = IFunction::new(&model, &grading, &QRat::from_integer(3.into()));
        for i in 0..2 {
            let residual = flow_residual(&model, i, series.series()).unwrap();
            assert!(residual.is_zero(), "direction {i} residual {residual:?}");
        }
    }

    #[test]
    fn plane_flow_residual_vanishes_on_the_hypergeometric_series() {
        let model = CohomologyModel::new(fixtures::projective_plane());
        let grading = model.fan().grading();
        let series = IFunction::new(&model, &grading, &QRat::from_integer(2.into()));
        for i in 0..3 {
            let residual = flow_residual(&model, i, series.series()).unwrap();
            assert!(residual.is_zero(), "direction {i} residual {residual:?}");
        }
    }

    #[test]
    fn composition_on_the_line_yields_the_line_class() {
        let model = CohomologyModel::new(fixtures::projective_line());
        let d = compose_check(&model, &[1, 0], &[0, 1]).unwrap();
        assert_eq!(d, DegreeClass(vec![1, 1]));

        // Composing with the trivial cocharacter costs nothing.
        let d0 = compose_check(&model, &[1, 0], &[0, 0]).unwrap();
        assert_eq!(d0, DegreeClass::zero(2));
    }

    #[test]
    fn composition_on_a_product_respects_the_factors() {
        let model = CohomologyModel::new(fixtures::product_of_lines());
        // Rays 0 and 1 span different factors: the offsets never interact.
        let independent = compose_check(&model, &[1, 0, 0, 0], &[0, 1, 0, 0]).unwrap();
        assert_eq!(independent, DegreeClass::zero(4));
        // Rays 0 and 2 are the two poles of one factor: the offset is that
        // factor's line class.
        let same = compose_check(&model, &[1, 0, 0, 0], &[0, 0, 1, 0]).unwrap();
        assert_eq!(same, DegreeClass(vec![1, 0, 1, 0]));
    }

    #[test]
    fn doubled_cocharacter_composes_with_itself() {
        let model = CohomologyModel::new(fixtures::projective_line());
        let d = compose_check(&model, &[1, 0], &[1, 0]).unwrap();
        assert_eq!(d, DegreeClass::zero(2));
    }
}
