//! The hypergeometric fixed-point series of a toric manifold.
//!
//! Working in the fused gauge (one Novikov/coordinate monomial per degree,
//! no symbolic logarithms), the series assigns to every effective degree d
//! a localized class whose value at a fixed point x is a finite telescoped
//! product over the rays:
//!
//! * pairing u_i·d > 0 — divide by Π_{c=1}^{u_i·d} (u_i(x) + c·z);
//! * pairing u_i·d < 0 — multiply by Π_{c=u_i·d+1}^{0} (u_i(x) + c·z),
//!   which includes the bare factor u_i(x) at c = 0;
//! * pairing u_i·d = 0 — no contribution.
//!
//! The degree-0 coefficient is the unit class.  Because the c = 0 factor
//! u_i(x) vanishes at every fixed point x whose cone omits ray i, negative
//! pairings kill the coefficient at most points — the familiar support
//! pattern of local models.

use crate::cohomology::{CohomologyModel, LocalizedClass};
use crate::degree::{effective_degrees, DegreeClass, Grading};
use crate::poly::{MPoly, QRat};
use crate::ratfun::RationalFunction;
use crate::series::NovikovSeries;

/// Truncated fixed-point hypergeometric series.
#[derive(Clone, Debug)]
pub struct IFunction {
    series: NovikovSeries<LocalizedClass>,
}

impl IFunction {
    /// Computes every coefficient with ω-value at most `cutoff`.
    pub fn new(model: &CohomologyModel, grading: &Grading, cutoff: &QRat) -> Self {
        let degrees = effective_degrees(model.fan().generators(), grading, cutoff);
        let mut series = NovikovSeries::new(grading.clone(), cutoff.clone());
        for d in degrees {
            let c = Self::coefficient(model, &d);
            series.add_coeff(d, c);
        }
        IFunction { series }
    }

    pub fn series(&self) -> &NovikovSeries<LocalizedClass> {
        &self.series
    }

    pub fn into_series(self) -> NovikovSeries<LocalizedClass> {
        self.series
    }

    pub fn coefficient_at(&self, d: &DegreeClass) -> Option<&LocalizedClass> {
        self.series.get(d)
    }

    /// The telescoped coefficient at one degree, independent of any cutoff.
    pub fn coefficient(model: &CohomologyModel, d: &DegreeClass) -> LocalizedClass {
        let arity = model.arity();
        let values = model
            .points()
            .iter()
            .map(|x| {
                let mut num = MPoly::one(arity);
                let mut den = Vec::new();
                for (i, weight) in x.weights.iter().enumerate() {
                    let p = d.pairing(i);
                    if p > 0 {
                        for c in 1..=p {
                            den.push(linear_in_z(weight, c, arity));
                        }
                    } else {
                        for c in (p + 1)..=0 {
                            num = num.mul(&linear_in_z(weight, c, arity));
                        }
                    }
                    if num.is_zero() {
                        break;
                    }
                }
                RationalFunction::from_factored(num, den)
                    .expect("telescoped factors are nonzero")
            })
            .collect();
        LocalizedClass::new(values)
    }
}

/// u + c·z as a polynomial.
fn linear_in_z(weight: &MPoly, c: i64, arity: usize) -> MPoly {
    weight.add(&MPoly::z(arity).scale(&QRat::from_integer(c.into())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::poly::qrat;

    fn rf(num: MPoly, den: MPoly) -> RationalFunction {
        RationalFunction::new(num, den).unwrap()
    }

    #[test]
    fn degree_zero_is_the_unit() {
        for (_, fan) in fixtures::gallery() {
            let model = CohomologyModel::new(fan);
            let c = IFunction::coefficient(&model, &DegreeClass::zero(model.arity() - 1));
            assert_eq!(c, model.one());
        }
    }

    #[test]
    fn line_coefficients_match_the_closed_form() {
        let model = CohomologyModel::new(fixtures::projective_line());
        let arity = model.arity();
        let w = MPoly::lambda(arity, 0).sub(&MPoly::lambda(arity, 1));
        let z = MPoly::z(arity);

        // Degree k: at each point 1 / Π_{c=1}^{k} (w_x + cz)(0 + cz) with
        // w_x the nonzero cone weight there.
        let d1 = DegreeClass(vec![1, 1]);
        let c1 = IFunction::coefficient(&model, &d1);
        assert_eq!(c1.value(0), &rf(MPoly::one(arity), z.mul(&w.add(&z))));
        assert_eq!(
            c1.value(1),
            &rf(MPoly::one(arity), z.mul(&z.sub(&w)))
        );

        let d2 = DegreeClass(vec![2, 2]);
        let c2 = IFunction::coefficient(&model, &d2);
        let two_z = z.scale(&qrat(2, 1));
        assert_eq!(
            c2.value(0),
            &rf(
                MPoly::one(arity),
                z.mul(&two_z).mul(&w.add(&z)).mul(&w.add(&two_z))
            )
        );
    }

    #[test]
    fn series_respects_the_cutoff() {
        let model = CohomologyModel::new(fixtures::projective_line());
        let grading = model.fan().grading();
        let ifun = IFunction::new(&model, &grading, &qrat(2, 1));
        // ω = (1/2, 1/2) gives value k at degree (k, k): k = 0, 1, 2 survive.
        assert_eq!(ifun.series().len(), 3);
        assert!(ifun.coefficient_at(&DegreeClass(vec![3, 3])).is_none());
    }

    #[test]
    fn negative_pairings_multiply_weights_on_the_bundle() {
        let model = CohomologyModel::new(fixtures::canonical_bundle_plane());
        let arity = model.arity();
        let d = DegreeClass(vec![1, 1, 1, -3]);
        let c = IFunction::coefficient(&model, &d);
        let z = MPoly::z(arity);
        for (x, point) in model.points().iter().enumerate() {
            // Numerator: u₄(x)·(u₄(x)−z)·(u₄(x)−2z); denominator: the three
            // base rays each telescoped once.
            let u4 = &point.weights[3];
            let num = u4.mul(&u4.sub(&z)).mul(&u4.sub(&z.scale(&qrat(2, 1))));
            let mut den = MPoly::one(arity);
            for i in 0..3 {
                den = den.mul(&point.weights[i].add(&z));
            }
            assert_eq!(c.value(x), &rf(num, den), "point {x}");
        }
    }

    #[test]
    fn product_fan_mixed_degree_only_sees_its_factor() {
        let model = CohomologyModel::new(fixtures::product_of_lines());
        let arity = model.arity();
        let z = MPoly::z(arity);
        // Degree (1,0,1,0): rays 0 and 2 telescoped once, rays 1 and 3 idle.
        let d = DegreeClass(vec![1, 0, 1, 0]);
        let c = IFunction::coefficient(&model, &d);
        for (x, point) in model.points().iter().enumerate() {
            let den = point.weights[0].add(&z).mul(&point.weights[2].add(&z));
            assert_eq!(c.value(x), &rf(MPoly::one(arity), den), "point {x}");
        }
    }
}
