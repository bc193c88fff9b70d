//! Fans of smooth semi-projective toric manifolds.
//!
//! A fan is given by primitive integer rays and unimodular maximal cones.
//! Construction validates the combinatorics (distinct primitive rays,
//! unimodular cones, every codimension-one face shared by at most two
//! cones, cones on opposite sides of each shared face, wall-connected
//! support, convex support) and then certifies semi-projectivity by
//! solving an exact linear program for a strictly convex piecewise-linear
//! support function.  The certificate also produces a canonical grading
//! vector ω: the negated support values on rays, gauge-fixed to be
//! orthogonal to the column span of the ray matrix.  ω pairs to at least 1
//! with every wall curve class, so it grades the Novikov variables of all
//! downstream series.

use crate::degree::{minimal_generators, DegreeClass, Grading};
use crate::matrix::{q_det, q_kernel_vector, q_solve};
use crate::poly::{qrat, QRat};
use crate::simplex::{solve_standard, LpOutcome};
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FanError {
    #[error("ambient dimension must be at least 1")]
    ZeroDimension,
    #[error("fan has no rays")]
    NoRays,
    #[error("fan has no maximal cones")]
    NoCones,
    #[error("ray {ray} has {len} coordinates, expected {expected}")]
    BadRayLength { ray: usize, len: usize, expected: usize },
    #[error("ray {ray} is the zero vector")]
    ZeroRay { ray: usize },
    #[error("ray {ray} is not primitive")]
    NonPrimitiveRay { ray: usize },
    #[error("rays {first} and {second} coincide")]
    DuplicateRay { first: usize, second: usize },
    #[error("maximal cone {cone} must list {expected} distinct ray indices")]
    BadCone { cone: usize, expected: usize },
    #[error("maximal cone {cone} references ray {ray}, but only {count} rays exist")]
    ConeRayOutOfRange { cone: usize, ray: usize, count: usize },
    #[error("maximal cones {first} and {second} coincide")]
    DuplicateCone { first: usize, second: usize },
    #[error("ray {ray} lies in no maximal cone")]
    UnusedRay { ray: usize },
    #[error("maximal cone {cone} is not unimodular (determinant {det})")]
    NotSmooth { cone: usize, det: String },
    #[error("a codimension-one face is shared by {count} maximal cones")]
    BadWallIncidence { count: usize },
    #[error("maximal cones {first} and {second} lie on the same side of a shared face")]
    OverlappingCones { first: usize, second: usize },
    #[error("support is not convex along a boundary face of cone {cone}")]
    NotConvexSupport { cone: usize },
    #[error("the maximal cones are not connected through shared walls")]
    Disconnected,
    #[error("no strictly convex support function exists")]
    NotProjective,
    #[error("grading vector has {len} entries, expected {expected}")]
    BadGradingLength { len: usize, expected: usize },
    #[error("grading value {value} on curve class {class} is not positive")]
    GradingNotPositive { class: String, value: String },
}

/// A codimension-one face shared by exactly two maximal cones, together
/// with the curve class of the invariant sphere it indexes.  The class is
/// the vector of intersection numbers with the toric divisors: 1 on the
/// two opposite rays and the coefficients of the wall relation
/// b_j + b_{j'} + Σ c_i b_i = 0 on the shared rays.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Wall {
    /// Sorted indices of the shared rays (dim − 1 of them).
    pub rays: Vec<usize>,
    /// The two maximal cones, by index, lower first.
    pub cones: (usize, usize),
    /// The ray of `cones.0` resp. `cones.1` not contained in the wall.
    pub opposite: (usize, usize),
    /// Curve class of the wall in the divisor-pairing basis.
    pub class: DegreeClass,
}

/// Witness of semi-projectivity: exact support-function values per maximal
/// cone and the canonical grading vector derived from them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectivityCertificate {
    /// Linear functional of the support function on each maximal cone.
    pub support: Vec<Vec<QRat>>,
    /// Canonical grading values per ray: ω_i = −m_{σ}·b_i, gauge-fixed to
    /// be orthogonal to the span of the gauge directions (χ·b_i)_i.
    pub omega: Vec<QRat>,
}

/// A validated fan.  Constructing one runs every structural check and the
/// projectivity certificate, so holders can rely on all invariants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fan {
    dim: usize,
    rays: Vec<Vec<i64>>,
    cones: Vec<Vec<usize>>,
    walls: Vec<Wall>,
    certificate: ProjectivityCertificate,
    generators: Vec<DegreeClass>,
}

fn dot_qi(a: &[QRat], b: &[i64]) -> QRat {
    a.iter()
        .zip(b)
        .map(|(x, &y)| x * qrat(y, 1))
        .sum()
}

impl Fan {
    /// Validates the input data and computes walls, curve classes and the
    /// projectivity certificate.  Cone ray indices are 0-based.
    pub fn new(
        dim: usize,
        rays: Vec<Vec<i64>>,
        max_cones: Vec<Vec<usize>>,
    ) -> Result<Self, FanError> {
        if dim == 0 {
            return Err(FanError::ZeroDimension);
        }
        if rays.is_empty() {
            return Err(FanError::NoRays);
        }
        if max_cones.is_empty() {
            return Err(FanError::NoCones);
        }
        let m = rays.len();
        for (i, r) in rays.iter().enumerate() {
            if r.len() != dim {
                return Err(FanError::BadRayLength { ray: i, len: r.len(), expected: dim });
            }
            let g = r.iter().fold(0i64, |acc, &v| num_integer::gcd(acc, v.abs()));
            if g == 0 {
                return Err(FanError::ZeroRay { ray: i });
            }
            if g != 1 {
                return Err(FanError::NonPrimitiveRay { ray: i });
            }
        }
        for i in 0..m {
            for j in i + 1..m {
                if rays[i] == rays[j] {
                    return Err(FanError::DuplicateRay { first: i, second: j });
                }
            }
        }

        let mut cones: Vec<Vec<usize>> = Vec::with_capacity(max_cones.len());
        for (s, c) in max_cones.iter().enumerate() {
            if c.len() != dim {
                return Err(FanError::BadCone { cone: s, expected: dim });
            }
            let mut c = c.clone();
            c.sort_unstable();
            if let Some(&r) = c.iter().find(|&&r| r >= m) {
                return Err(FanError::ConeRayOutOfRange { cone: s, ray: r, count: m });
            }
            if c.windows(2).any(|w| w[0] == w[1]) {
                return Err(FanError::BadCone { cone: s, expected: dim });
            }
            cones.push(c);
        }
        for s in 0..cones.len() {
            for t in s + 1..cones.len() {
                if cones[s] == cones[t] {
                    return Err(FanError::DuplicateCone { first: s, second: t });
                }
            }
        }
        for i in 0..m {
            if !cones.iter().any(|c| c.contains(&i)) {
                return Err(FanError::UnusedRay { ray: i });
            }
        }
        for (s, c) in cones.iter().enumerate() {
            let mat: Vec<Vec<i64>> = c.iter().map(|&i| rays[i].clone()).collect();
            let det = q_det(&mat);
            if det.clone().abs() != QRat::one() {
                return Err(FanError::NotSmooth { cone: s, det: det.to_string() });
            }
        }

        // Codimension-one faces: map sorted ray set → (cone, opposite ray).
        let mut facets: BTreeMap<Vec<usize>, Vec<(usize, usize)>> = BTreeMap::new();
        for (s, c) in cones.iter().enumerate() {
            for p in 0..dim {
                let mut f = c.clone();
                let opp = f.remove(p);
                facets.entry(f).or_default().push((s, opp));
            }
        }
        if let Some(inc) = facets.values().find(|inc| inc.len() > 2) {
            return Err(FanError::BadWallIncidence { count: inc.len() });
        }

        // Oriented facet normals; interior facets become walls with curve
        // classes, boundary facets are kept for the convexity test.
        let mut walls: Vec<Wall> = Vec::new();
        let mut boundary: Vec<(usize, Vec<QRat>)> = Vec::new(); // (cone, inward normal)
        let mut adjacent: Vec<Vec<usize>> = vec![Vec::new(); cones.len()];
        for (f, inc) in &facets {
            let rows: Vec<Vec<QRat>> = f
                .iter()
                .map(|&i| rays[i].iter().map(|&v| qrat(v, 1)).collect())
                .collect();
            let mut n = q_kernel_vector(&rows, dim)
                .expect("a facet of a unimodular cone spans a corank-one sublattice");
            if inc.len() == 1 {
                let (s, opp) = inc[0];
                let d = dot_qi(&n, &rays[opp]);
                debug_assert!(!d.is_zero());
                if d.is_negative() {
                    for v in n.iter_mut() {
                        *v = -v.clone();
                    }
                }
                boundary.push((s, n));
                continue;
            }
            let (ca, ja) = inc[0];
            let (cb, jb) = inc[1];
            let da = dot_qi(&n, &rays[ja]);
            debug_assert!(!da.is_zero());
            if da.is_negative() {
                for v in n.iter_mut() {
                    *v = -v.clone();
                }
            }
            if !dot_qi(&n, &rays[jb]).is_negative() {
                return Err(FanError::OverlappingCones { first: ca, second: cb });
            }
            adjacent[ca].push(cb);
            adjacent[cb].push(ca);
            // Wall relation: Σ_{i∈f} c_i b_i = −(b_ja + b_jb).
            let a_mat: Vec<Vec<QRat>> = (0..dim)
                .map(|k| f.iter().map(|&i| qrat(rays[i][k], 1)).collect())
                .collect();
            let rhs: Vec<QRat> = (0..dim)
                .map(|k| qrat(-(rays[ja][k] + rays[jb][k]), 1))
                .collect();
            let sol = q_solve(&a_mat, &rhs)
                .expect("opposite rays across a wall satisfy a relation over the wall span");
            let mut class = vec![0i64; m];
            class[ja] += 1;
            class[jb] += 1;
            for (idx, &i) in f.iter().enumerate() {
                assert!(
                    sol[idx].is_integer(),
                    "wall relation coefficients are integral over unimodular cones"
                );
                class[i] += sol[idx]
                    .to_integer()
                    .to_i64()
                    .expect("wall relation coefficient fits in i64");
            }
            walls.push(Wall {
                rays: f.clone(),
                cones: (ca, cb),
                opposite: (ja, jb),
                class: DegreeClass(class),
            });
        }

        // Wall connectivity of the set of maximal cones.
        let mut seen = vec![false; cones.len()];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(s) = stack.pop() {
            for &t in &adjacent[s] {
                if !seen[t] {
                    seen[t] = true;
                    stack.push(t);
                }
            }
        }
        if seen.iter().any(|&v| !v) {
            return Err(FanError::Disconnected);
        }

        // Convex support: every ray lies weakly inside each boundary face's
        // supporting half-space.
        for (s, n) in &boundary {
            for r in &rays {
                if dot_qi(n, r).is_negative() {
                    return Err(FanError::NotConvexSupport { cone: *s });
                }
            }
        }

        let certificate = Self::certify(dim, &rays, &cones, &walls)?;
        let grading = Grading::new(certificate.omega.clone());
        let classes: Vec<DegreeClass> = walls.iter().map(|w| w.class.clone()).collect();
        let generators = minimal_generators(&classes, &grading);

        Ok(Fan { dim, rays, cones, walls, certificate, generators })
    }

    /// Solves the support-function linear program and gauge-fixes ω.
    ///
    /// Variables: one vector m_σ ∈ ℚ^dim per maximal cone (split into
    /// positive and negative parts) and one surplus per wall.  Constraints:
    /// m_σ·b_i = m_τ·b_i whenever σ and τ share the ray i, and across each
    /// wall m_a·b_{j_b} − m_b·b_{j_b} = 1 + surplus.  Phase two minimizes
    /// the total surplus, which pins ω·class to its minimum on every wall.
    fn certify(
        dim: usize,
        rays: &[Vec<i64>],
        cones: &[Vec<usize>],
        walls: &[Wall],
    ) -> Result<ProjectivityCertificate, FanError> {
        let m = rays.len();
        let s_count = cones.len();
        let stride = 2 * dim;
        let nfree = s_count * stride;
        let n = nfree + walls.len();

        let mut a_rows: Vec<Vec<QRat>> = Vec::new();
        let mut b_rhs: Vec<QRat> = Vec::new();
        let add_support_terms = |row: &mut Vec<QRat>, s: usize, ray: &[i64], sign: i64| {
            for (k, &coord) in ray.iter().enumerate() {
                let c = qrat(sign * coord, 1);
                row[s * stride + 2 * k] += &c;
                row[s * stride + 2 * k + 1] -= &c;
            }
        };
        for s in 0..s_count {
            for t in s + 1..s_count {
                for &i in cones[s].iter().filter(|i| cones[t].contains(i)) {
                    let mut row = vec![QRat::zero(); n];
                    add_support_terms(&mut row, s, &rays[i], 1);
                    add_support_terms(&mut row, t, &rays[i], -1);
                    a_rows.push(row);
                    b_rhs.push(QRat::zero());
                }
            }
        }
        for (w, wall) in walls.iter().enumerate() {
            let (ca, cb) = wall.cones;
            let jb = wall.opposite.1;
            let mut row = vec![QRat::zero(); n];
            add_support_terms(&mut row, ca, &rays[jb], 1);
            add_support_terms(&mut row, cb, &rays[jb], -1);
            row[nfree + w] = -QRat::one();
            a_rows.push(row);
            b_rhs.push(QRat::one());
        }
        let mut cost = vec![QRat::zero(); n];
        for w in 0..walls.len() {
            cost[nfree + w] = QRat::one();
        }

        let x = match solve_standard(&a_rows, &b_rhs, &cost) {
            LpOutcome::Optimal { x, .. } => x,
            LpOutcome::Infeasible => return Err(FanError::NotProjective),
            LpOutcome::Unbounded => unreachable!("surplus objective is bounded below by zero"),
        };
        let support: Vec<Vec<QRat>> = (0..s_count)
            .map(|s| {
                (0..dim)
                    .map(|k| &x[s * stride + 2 * k] - &x[s * stride + 2 * k + 1])
                    .collect()
            })
            .collect();

        // ω before gauge fixing: continuity makes −m_σ·b_i independent of
        // the cone σ containing ray i.
        let mut omega0: Vec<QRat> = Vec::with_capacity(m);
        for i in 0..m {
            let mut value: Option<QRat> = None;
            for (s, c) in cones.iter().enumerate() {
                if !c.contains(&i) {
                    continue;
                }
                let v = -dot_qi(&support[s], &rays[i]);
                match &value {
                    None => value = Some(v),
                    Some(prev) => {
                        assert_eq!(prev, &v, "support function is continuous across cones")
                    }
                }
            }
            omega0.push(value.expect("every ray lies in some cone"));
        }

        // Gauge fix: subtract the component of ω lying in the span of the
        // gauge directions (χ·b_i)_i via the normal equations of the ray
        // matrix.  Pairings with curve classes are unchanged.
        let btb: Vec<Vec<QRat>> = (0..dim)
            .map(|r| {
                (0..dim)
                    .map(|c| {
                        rays.iter()
                            .map(|b| qrat(b[r] * b[c], 1))
                            .sum::<QRat>()
                    })
                    .collect()
            })
            .collect();
        let btw: Vec<QRat> = (0..dim)
            .map(|r| {
                rays.iter()
                    .zip(&omega0)
                    .map(|(b, w)| qrat(b[r], 1) * w)
                    .sum::<QRat>()
            })
            .collect();
        let chi = q_solve(&btb, &btw).expect("ray matrix of a unimodular cone has full rank");
        let omega: Vec<QRat> = rays
            .iter()
            .zip(&omega0)
            .map(|(b, w0)| w0 - dot_qi(&chi, b))
            .collect();

        for wall in walls {
            let v: QRat = wall
                .class
                .0
                .iter()
                .zip(&omega)
                .map(|(&c, o)| qrat(c, 1) * o)
                .sum();
            assert!(v >= QRat::one(), "certified grading pairs to at least 1 with walls");
        }

        Ok(ProjectivityCertificate { support, omega })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_rays(&self) -> usize {
        self.rays.len()
    }

    pub fn rays(&self) -> &[Vec<i64>] {
        &self.rays
    }

    pub fn ray(&self, i: usize) -> &[i64] {
        &self.rays[i]
    }

    /// Maximal cones as sorted ray-index sets.
    pub fn cones(&self) -> &[Vec<usize>] {
        &self.cones
    }

    pub fn cone(&self, s: usize) -> &[usize] {
        &self.cones[s]
    }

    pub fn walls(&self) -> &[Wall] {
        &self.walls
    }

    pub fn wall_classes(&self) -> Vec<DegreeClass> {
        self.walls.iter().map(|w| w.class.clone()).collect()
    }

    pub fn certificate(&self) -> &ProjectivityCertificate {
        &self.certificate
    }

    /// Minimal generating set of the wall curve classes under effectivity.
    pub fn generators(&self) -> &[DegreeClass] {
        &self.generators
    }

    /// Grading by the certificate's canonical ω.
    pub fn grading(&self) -> Grading {
        Grading::new(self.certificate.omega.clone())
    }

    /// Grading by a caller-supplied ω, screened for positivity on all wall
    /// curve classes.
    pub fn grading_with(&self, omega: Vec<QRat>) -> Result<Grading, FanError> {
        self.check_omega(&omega)?;
        Ok(Grading::new(omega))
    }

    /// Checks that a grading vector has the right length and pairs strictly
    /// positively with every wall curve class.
    pub fn check_omega(&self, omega: &[QRat]) -> Result<(), FanError> {
        if omega.len() != self.rays.len() {
            return Err(FanError::BadGradingLength {
                len: omega.len(),
                expected: self.rays.len(),
            });
        }
        for w in &self.walls {
            let v: QRat = w
                .class
                .0
                .iter()
                .zip(omega)
                .map(|(&c, o)| qrat(c, 1) * o)
                .sum();
            if !v.is_positive() {
                return Err(FanError::GradingNotPositive {
                    class: w.class.to_string(),
                    value: v.to_string(),
                });
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line() -> Fan {
        Fan::new(1, vec![vec![1], vec![-1]], vec![vec![0], vec![1]]).unwrap()
    }

    fn plane() -> Fan {
        Fan::new(
            2,
            vec![vec![1, 0], vec![0, 1], vec![-1, -1]],
            vec![vec![0, 1], vec![1, 2], vec![0, 2]],
        )
        .unwrap()
    }

    #[test]
    fn line_certificate_and_wall() {
        let f = line();
        assert_eq!(f.certificate().omega, vec![qrat(1, 2), qrat(1, 2)]);
        assert_eq!(f.walls().len(), 1);
        let w = &f.walls()[0];
        assert_eq!(w.rays, Vec::<usize>::new());
        assert_eq!(w.class, DegreeClass(vec![1, 1]));
        assert_eq!(f.generators(), &[DegreeClass(vec![1, 1])]);
    }

    #[test]
    fn plane_certificate_and_walls() {
        let f = plane();
        let third = qrat(1, 3);
        assert_eq!(f.certificate().omega, vec![third.clone(), third.clone(), third]);
        assert_eq!(f.walls().len(), 3);
        for w in f.walls() {
            assert_eq!(w.class, DegreeClass(vec![1, 1, 1]));
        }
        assert_eq!(f.generators(), &[DegreeClass(vec![1, 1, 1])]);
    }

    #[test]
    fn product_of_lines_certificate() {
        let f = Fan::new(
            2,
            vec![vec![1, 0], vec![0, 1], vec![-1, 0], vec![0, -1]],
            vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]],
        )
        .unwrap();
        let half = qrat(1, 2);
        assert_eq!(
            f.certificate().omega,
            vec![half.clone(), half.clone(), half.clone(), half]
        );
        assert_eq!(
            f.generators(),
            &[DegreeClass(vec![0, 1, 0, 1]), DegreeClass(vec![1, 0, 1, 0])]
        );
    }

    #[test]
    fn first_hirzebruch_certificate() {
        let f = Fan::new(
            2,
            vec![vec![1, 0], vec![0, 1], vec![-1, 1], vec![0, -1]],
            vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]],
        )
        .unwrap();
        assert_eq!(
            f.certificate().omega,
            vec![qrat(3, 5), qrat(1, 5), qrat(3, 5), qrat(4, 5)]
        );
        // Wall classes: the section, two fibres and section+fibre.
        let mut classes = f.wall_classes();
        classes.sort();
        assert_eq!(
            classes,
            vec![
                DegreeClass(vec![0, 1, 0, 1]),
                DegreeClass(vec![0, 1, 0, 1]),
                DegreeClass(vec![1, -1, 1, 0]),
                DegreeClass(vec![1, 0, 1, 1]),
            ]
        );
        assert_eq!(
            f.generators(),
            &[DegreeClass(vec![0, 1, 0, 1]), DegreeClass(vec![1, -1, 1, 0])]
        );
    }

    #[test]
    fn second_hirzebruch_has_a_zero_grading_entry() {
        let f = Fan::new(
            2,
            vec![vec![1, 0], vec![0, 1], vec![-1, 2], vec![0, -1]],
            vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]],
        )
        .unwrap();
        assert_eq!(
            f.certificate().omega,
            vec![qrat(1, 2), qrat(0, 1), qrat(1, 2), qrat(1, 1)]
        );
    }

    #[test]
    fn canonical_bundle_over_the_plane() {
        let f = Fan::new(
            3,
            vec![
                vec![1, 0, 1],
                vec![0, 1, 1],
                vec![-1, -1, 1],
                vec![0, 0, 1],
            ],
            vec![vec![0, 1, 3], vec![1, 2, 3], vec![0, 2, 3]],
        )
        .unwrap();
        assert_eq!(
            f.certificate().omega,
            vec![qrat(1, 12), qrat(1, 12), qrat(1, 12), qrat(-1, 4)]
        );
        assert_eq!(f.walls().len(), 3);
        for w in f.walls() {
            assert_eq!(w.class, DegreeClass(vec![1, 1, 1, -3]));
        }
        assert_eq!(f.generators(), &[DegreeClass(vec![1, 1, 1, -3])]);
    }

    #[test]
    fn affine_plane_is_accepted_with_trivial_certificate() {
        let f = Fan::new(2, vec![vec![1, 0], vec![0, 1]], vec![vec![0, 1]]).unwrap();
        assert!(f.walls().is_empty());
        assert_eq!(f.certificate().omega, vec![qrat(0, 1), qrat(0, 1)]);
        assert!(f.generators().is_empty());
    }

    #[test]
    fn malformed_inputs_are_rejected_with_specific_errors() {
        assert_eq!(
            Fan::new(2, vec![vec![2, 0], vec![0, 1]], vec![vec![0, 1]]),
            Err(FanError::NonPrimitiveRay { ray: 0 })
        );
        assert_eq!(
            Fan::new(2, vec![vec![0, 0], vec![0, 1]], vec![vec![0, 1]]),
            Err(FanError::ZeroRay { ray: 0 })
        );
        assert_eq!(
            Fan::new(2, vec![vec![1, 0], vec![1, 0]], vec![vec![0, 1]]),
            Err(FanError::DuplicateRay { first: 0, second: 1 })
        );
        assert_eq!(
            Fan::new(2, vec![vec![1, 0], vec![0, 1]], vec![vec![0]]),
            Err(FanError::BadCone { cone: 0, expected: 2 })
        );
        assert_eq!(
            Fan::new(2, vec![vec![1, 0], vec![0, 1]], vec![vec![0, 5]]),
            Err(FanError::ConeRayOutOfRange { cone: 0, ray: 5, count: 2 })
        );
        assert_eq!(
            Fan::new(2, vec![vec![1, 0], vec![0, 1]], vec![vec![0, 1], vec![1, 0]]),
            Err(FanError::DuplicateCone { first: 0, second: 1 })
        );
        assert_eq!(
            Fan::new(
                2,
                vec![vec![1, 0], vec![0, 1], vec![1, 1]],
                vec![vec![0, 1]]
            ),
            Err(FanError::UnusedRay { ray: 2 })
        );
        assert_eq!(
            Fan::new(2, vec![vec![1, 0], vec![1, 2]], vec![vec![0, 1]]),
            Err(FanError::NotSmooth { cone: 0, det: "2".into() })
        );
    }

    #[test]
    fn geometric_defects_are_rejected() {
        // Three unimodular cones share the face spanned by (0,1).
        assert_eq!(
            Fan::new(
                2,
                vec![vec![1, 0], vec![-1, 0], vec![1, 1], vec![0, 1]],
                vec![vec![0, 3], vec![1, 3], vec![2, 3]]
            ),
            Err(FanError::BadWallIncidence { count: 3 })
        );
        // Both cones lie on the same side of the shared face.
        assert_eq!(
            Fan::new(
                2,
                vec![vec![1, 0], vec![0, 1], vec![1, 1]],
                vec![vec![0, 1], vec![1, 2]]
            ),
            Err(FanError::OverlappingCones { first: 0, second: 1 })
        );
        // Two opposite quadrants touch only at the origin.
        assert_eq!(
            Fan::new(
                2,
                vec![vec![1, 0], vec![0, 1], vec![-1, 0], vec![0, -1]],
                vec![vec![0, 1], vec![2, 3]]
            ),
            Err(FanError::Disconnected)
        );
        // Two cones of the plane fan leave a non-convex two-thirds support.
        assert_eq!(
            Fan::new(
                2,
                vec![vec![1, 0], vec![0, 1], vec![-1, -1]],
                vec![vec![0, 1], vec![1, 2]]
            ),
            Err(FanError::NotConvexSupport { cone: 0 })
        );
    }

    #[test]
    fn custom_grading_vectors_are_screened() {
        let f = plane();
        assert!(f.check_omega(&[qrat(1, 1), qrat(1, 1), qrat(1, 1)]).is_ok());
        assert_eq!(
            f.check_omega(&[qrat(1, 1), qrat(1, 1)]),
            Err(FanError::BadGradingLength { len: 2, expected: 3 })
        );
        match f.check_omega(&[qrat(1, 1), qrat(1, 1), qrat(-2, 1)]) {
            Err(FanError::GradingNotPositive { .. }) => {}
            other => panic!("expected a positivity failure, got {:?}", other),
        }
        assert!(f.grading_with(vec![qrat(1, 2), qrat(1, 3), qrat(1, 5)]).is_ok());
    }
}
