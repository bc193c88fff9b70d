//! Torus-fixed points, localized divisor weights, and section classes.
//!
//! Each maximal cone σ of the fan carries one fixed point x_σ.  The
//! divisor classes u_j restrict there to linear forms in the torus
//! weights: u_j(x_σ) = 0 when j ∉ σ, and for j ∈ σ the forms are pinned
//! by the relations Σ_i (b_i)_k (u_i(x) − λ_i) = 0 — a unimodular square
//! system once the off-cone values are substituted.  The Euler class of
//! the fixed point is the product of its cone weights; it is the
//! denominator of every localization formula downstream.
//!
//! `section_degree` computes, for an integer cocharacter k, the family of
//! curve classes d_k(x) joining each fixed point to the locus where the
//! associated C*-action attains its minimum: the pairing vector
//! (u_j(x*)·k − u_j(x)·k)_j read against the fixed point x* whose cone
//! weights all pair nonnegatively with k.  When no such point exists, or
//! several exist with different pairing vectors, there is no well-defined
//! minimum and an error is returned rather than a guess.

use crate::degree::DegreeClass;
use crate::fan::Fan;
use crate::matrix::q_solve;
use crate::poly::{qrat, MPoly, QRat};
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SectionDegreeError {
    #[error("the cocharacter {shift:?} has no isolated weight-minimal fixed locus")]
    NoIsolatedMinimum { shift: Vec<i64> },
}

/// A torus-fixed point together with its localized divisor weights.
#[derive(Debug, Clone)]
pub struct FixedPoint {
    /// Index of the maximal cone supporting this point.
    pub cone: usize,
    /// u_j restricted to the point, for every ray j: a z-free linear form
    /// in the torus weights; identically zero when j is not in the cone.
    pub weights: Vec<MPoly>,
    /// Product of the cone weights — the equivariant Euler class of the
    /// tangent space at the point.
    pub euler: MPoly,
}

/// Computes the fixed points of a validated fan, one per maximal cone and
/// in cone order.  Polynomials use arity m+1: the m torus weights followed
/// by z.
pub fn fixed_points(fan: &Fan) -> Vec<FixedPoint> {
    let dim = fan.dim();
    let m = fan.num_rays();
    let arity = m + 1;
    let mut points = Vec::with_capacity(fan.cones().len());
    for (s, cone) in fan.cones().iter().enumerate() {
        // Square system: columns are the cone's rays, one rhs per outside
        // ray i carrying the coefficient of λ_i.
        let a: Vec<Vec<QRat>> = (0..dim)
            .map(|k| cone.iter().map(|&j| qrat(fan.ray(j)[k], 1)).collect())
            .collect();
        // coeff[idx][i] = coefficient of λ_i in the correction v_{cone[idx]}.
        let mut coeff: Vec<Vec<QRat>> = vec![vec![QRat::zero(); m]; dim];
        for i in 0..m {
            if cone.contains(&i) {
                continue;
            }
            let rhs: Vec<QRat> = (0..dim).map(|k| qrat(fan.ray(i)[k], 1)).collect();
            let sol = q_solve(&a, &rhs).expect("cone rays are a lattice basis");
            for (idx, v) in sol.into_iter().enumerate() {
                coeff[idx][i] = v;
            }
        }
        let mut weights = vec![MPoly::zero(arity); m];
        for (idx, &j) in cone.iter().enumerate() {
            let mut w = MPoly::lambda(arity, j);
            for i in 0..m {
                if !coeff[idx][i].is_zero() {
                    w = w.add(&MPoly::lambda(arity, i).scale(&coeff[idx][i]));
                }
            }
            weights[j] = w;
        }
        let euler = cone
            .iter()
            .fold(MPoly::one(arity), |acc, &j| acc.mul(&weights[j]));
        points.push(FixedPoint { cone: s, weights, euler });
    }
    points
}

/// Integer pairing of every divisor weight at a fixed point with the
/// cocharacter k, as the full vector (u_j(x)·k)_j.
fn pairing_vector(point: &FixedPoint, k: &[i64]) -> Vec<i64> {
    point
        .weights
        .iter()
        .map(|w| {
            let v = w.linear_pairing(k);
            assert!(v.is_integer(), "divisor weights pair integrally");
            v.to_integer().to_i64().expect("pairing fits in i64")
        })
        .collect()
}

/// Curve classes d_k(x) from each fixed point to the weight-minimal fixed
/// point of the cocharacter k, in the order of `points`.
pub fn section_degree(
    fan: &Fan,
    points: &[FixedPoint],
    k: &[i64],
) -> Result<Vec<DegreeClass>, SectionDegreeError> {
    assert_eq!(k.len(), fan.num_rays(), "cocharacter length mismatch");
    let pairings: Vec<Vec<i64>> = points.iter().map(|x| pairing_vector(x, k)).collect();
    let mut minimum: Option<&Vec<i64>> = None;
    for (x, p) in points.iter().zip(&pairings) {
        let cone = fan.cone(x.cone);
        if cone.iter().any(|&j| p[j] < 0) {
            continue;
        }
        match minimum {
            None => minimum = Some(p),
            Some(prev) if prev == p => {}
            Some(_) => {
                return Err(SectionDegreeError::NoIsolatedMinimum { shift: k.to_vec() })
            }
        }
    }
    let Some(best) = minimum else {
        return Err(SectionDegreeError::NoIsolatedMinimum { shift: k.to_vec() });
    };
    Ok(pairings
        .iter()
        .map(|p| DegreeClass(best.iter().zip(p).map(|(b, v)| b - v).collect()))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::Fan;

    fn line() -> Fan {
        Fan::new(1, vec![vec![1], vec![-1]], vec![vec![0], vec![1]]).unwrap()
    }

    fn first_hirzebruch() -> Fan {
        Fan::new(
            2,
            vec![vec![1, 0], vec![0, 1], vec![-1, 1], vec![0, -1]],
            vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]],
        )
        .unwrap()
    }

    fn canonical_bundle() -> Fan {
        Fan::new(
            3,
            vec![vec![1, 0, 1], vec![0, 1, 1], vec![-1, -1, 1], vec![0, 0, 1]],
            vec![vec![0, 1, 3], vec![1, 2, 3], vec![0, 2, 3]],
        )
        .unwrap()
    }

    #[test]
    fn line_weights_and_euler_classes() {
        let fan = line();
        let pts = fixed_points(&fan);
        let w = MPoly::lambda(3, 0).sub(&MPoly::lambda(3, 1));
        assert_eq!(pts[0].weights[0], w);
        assert!(pts[0].weights[1].is_zero());
        assert_eq!(pts[0].euler, w);
        assert_eq!(pts[1].weights[1], w.neg());
        assert!(pts[1].weights[0].is_zero());
    }

    #[test]
    fn hirzebruch_weights_solve_the_cone_systems() {
        let fan = first_hirzebruch();
        let pts = fixed_points(&fan);
        let l = |i| MPoly::lambda(5, i);
        // Cone {0,1}: u_0 = λ_0 − λ_2, u_1 = λ_1 + λ_2 − λ_3.
        assert_eq!(pts[0].weights[0], l(0).sub(&l(2)));
        assert_eq!(pts[0].weights[1], l(1).add(&l(2)).sub(&l(3)));
        // Cone {2,3}: u_2 = λ_2 − λ_0, u_3 = λ_3 − λ_1 − λ_0.
        assert_eq!(pts[2].weights[2], l(2).sub(&l(0)));
        assert_eq!(pts[2].weights[3], l(3).sub(&l(1)).sub(&l(0)));
        // Off-cone weights vanish everywhere.
        for p in &pts {
            let cone = fan.cone(p.cone);
            for j in 0..fan.num_rays() {
                assert_eq!(p.weights[j].is_zero(), !cone.contains(&j));
            }
        }
    }

    #[test]
    fn line_section_degrees() {
        let fan = line();
        let pts = fixed_points(&fan);
        let d = section_degree(&fan, &pts, &[1, 0]).unwrap();
        assert_eq!(d[0], DegreeClass(vec![0, 0]));
        assert_eq!(d[1], DegreeClass(vec![1, 1]));
        // The opposite cocharacter swaps the roles.
        let d = section_degree(&fan, &pts, &[-1, 0]).unwrap();
        assert_eq!(d[0], DegreeClass(vec![1, 1]));
        assert_eq!(d[1], DegreeClass(vec![0, 0]));
    }

    #[test]
    fn hirzebruch_section_degrees() {
        let fan = first_hirzebruch();
        let pts = fixed_points(&fan);
        let s = vec![1, -1, 1, 0];
        let f = vec![0, 1, 0, 1];
        let d = section_degree(&fan, &pts, &[1, 0, 0, 0]).unwrap();
        assert_eq!(d[0], DegreeClass(vec![0, 0, 0, 0]));
        assert_eq!(d[1], DegreeClass(s.clone()));
        assert_eq!(d[2], DegreeClass(vec![1, 0, 1, 1]));
        assert_eq!(d[3], DegreeClass(vec![0, 0, 0, 0]));
        let d = section_degree(&fan, &pts, &[1, 1, 0, 0]).unwrap();
        assert_eq!(d[0], DegreeClass(vec![0, 0, 0, 0]));
        assert_eq!(d[1], DegreeClass(s.clone()));
        assert_eq!(
            d[2],
            DegreeClass(vec![s[0], s[1] + 2 * f[1], s[2], s[3] + 2 * f[3]])
        );
        assert_eq!(d[3], DegreeClass(f));
    }

    #[test]
    fn fixed_weight_identity_on_basis_cocharacters() {
        // u_j(x)·e_i = δ_ij − (d_{e_i}(x))_j on every fixed point of a
        // complete example.
        let fan = first_hirzebruch();
        let pts = fixed_points(&fan);
        let m = fan.num_rays();
        for i in 0..m {
            let mut k = vec![0i64; m];
            k[i] = 1;
            let ds = section_degree(&fan, &pts, &k).unwrap();
            for (x, d) in pts.iter().zip(&ds) {
                for j in 0..m {
                    let lhs = x.weights[j].linear_pairing(&k);
                    let delta = if i == j { 1 } else { 0 };
                    assert_eq!(lhs, qrat(delta - d.0[j], 1));
                }
            }
        }
    }

    #[test]
    fn vertical_cocharacter_on_the_bundle_is_degreeless() {
        let fan = canonical_bundle();
        let pts = fixed_points(&fan);
        let d = section_degree(&fan, &pts, &[0, 0, 0, 1]).unwrap();
        for c in d {
            assert!(c.is_zero());
        }
    }

    #[test]
    fn downward_cocharacter_on_the_bundle_has_no_minimum() {
        let fan = canonical_bundle();
        let pts = fixed_points(&fan);
        assert_eq!(
            section_degree(&fan, &pts, &[0, 0, 0, -1]),
            Err(SectionDegreeError::NoIsolatedMinimum { shift: vec![0, 0, 0, -1] })
        );
    }
}
