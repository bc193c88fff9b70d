//! Ready-made fans for tests, examples and benchmarks.
//!
//! All constructors return validated [`Fan`]s; panicking here would mean
//! the fixture data itself is wrong, so `unwrap` is appropriate.

use crate::fan::Fan;

/// The projective line: two opposite rays on a line.
pub fn projective_line() -> Fan {
    Fan::new(1, vec![vec![1], vec![-1]], vec![vec![0], vec![1]]).unwrap()
}

/// The projective plane.
pub fn projective_plane() -> Fan {
    Fan::new(
        2,
        vec![vec![1, 0], vec![0, 1], vec![-1, -1]],
        vec![vec![0, 1], vec![1, 2], vec![0, 2]],
    )
    .unwrap()
}

/// Projective three-space.
pub fn projective_space_3() -> Fan {
    Fan::new(
        3,
        vec![
            vec![1, 0, 0],
            vec![0, 1, 0],
            vec![0, 0, 1],
            vec![-1, -1, -1],
        ],
        vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]],
    )
    .unwrap()
}

/// The product of two projective lines.
pub fn product_of_lines() -> Fan {
    Fan::new(
        2,
        vec![vec![1, 0], vec![0, 1], vec![-1, 0], vec![0, -1]],
        vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]],
    )
    .unwrap()
}

/// The Hirzebruch surface of index `a ≥ 0`: the projectivization of
/// O ⊕ O(−a) over the line.  Index 0 is the product of lines (with its
/// own ray numbering), index 1 the blown-up plane.
pub fn hirzebruch(a: i64) -> Fan {
    assert!(a >= 0, "Hirzebruch index must be nonnegative");
    Fan::new(
        2,
        vec![vec![1, 0], vec![0, 1], vec![-1, a], vec![0, -1]],
        vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]],
    )
    .unwrap()
}

/// Total space of the canonical bundle over the projective plane — a
/// non-compact fan whose rays span a strictly convex cone.
pub fn canonical_bundle_plane() -> Fan {
    Fan::new(
        3,
        vec![
            vec![1, 0, 1],
            vec![0, 1, 1],
            vec![-1, -1, 1],
            vec![0, 0, 1],
        ],
        vec![vec![0, 1, 3], vec![1, 2, 3], vec![0, 2, 3]],
    )
    .unwrap()
}

/// Labeled gallery of every fixture, for sweep-style tests.
pub fn gallery() -> Vec<(&'static str, Fan)> {
    vec![
        ("P1", projective_line()),
        ("P2", projective_plane()),
        ("P3", projective_space_3()),
        ("P1xP1", product_of_lines()),
        ("F1", hirzebruch(1)),
        ("F2", hirzebruch(2)),
        ("F3", hirzebruch(3)),
        ("KP2", canonical_bundle_plane()),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::qrat;

    #[test]
    fn three_space_certificate() {
        let f = projective_space_3();
        let q = qrat(1, 4);
        assert_eq!(
            f.certificate().omega,
            vec![q.clone(), q.clone(), q.clone(), q]
        );
        assert_eq!(f.walls().len(), 6);
        assert_eq!(
            f.generators(),
            &[crate::degree::DegreeClass(vec![1, 1, 1, 1])]
        );
    }

    #[test]
    fn third_hirzebruch_certificate() {
        let f = hirzebruch(3);
        assert_eq!(
            f.certificate().omega,
            vec![qrat(5, 13), qrat(-1, 13), qrat(5, 13), qrat(14, 13)]
        );
    }

    #[test]
    fn gallery_validates_and_counts_fixed_points() {
        let expected = [2usize, 3, 4, 4, 4, 4, 4, 3];
        for ((name, fan), want) in gallery().into_iter().zip(expected) {
            assert_eq!(fan.cones().len(), want, "fixture {}", name);
        }
    }
}
