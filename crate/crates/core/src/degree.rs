//! Curve-degree classes and the positive grading that truncates them.
//!
//! A degree is recorded by its pairing vector (u1·d, …, um·d) against the
//! toric divisor classes; membership in the degree lattice means the
//! weighted sum of rays Σ_i (u_i·d)·b_i vanishes, which the fan layer
//! checks when it manufactures wall classes.  The effective cone is the
//! ℤ≥0-span of the wall classes, and a grading vector ω (rational, emitted
//! by the projectivity certificate or supplied by the caller) has ω·d > 0
//! on every nonzero effective degree, so the sublevel sets ω·d ≤ cutoff are
//! finite and enumerable.

use crate::poly::QRat;
use num_traits::Zero;
use std::collections::BTreeSet;
use std::fmt;

/// Pairing vector (u1·d, …, um·d) of a curve degree class.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct DegreeClass(pub Vec<i64>);

impl DegreeClass {
    pub fn zero(m: usize) -> Self {
        DegreeClass(vec![0; m])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, other: &DegreeClass) -> DegreeClass {
        DegreeClass(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &DegreeClass) -> DegreeClass {
        DegreeClass(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: i64) -> DegreeClass {
        DegreeClass(self.0.iter().map(|a| a * k).collect())
    }

    /// Entry u_i·d for zero-based ray index i.
    pub fn pairing(&self, i: usize) -> i64 {
        self.0[i]
    }
}

impl fmt::Display for DegreeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", x)?;
        }
        write!(f, ")")
    }
}

/// A rational grading vector paired against degree classes.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Grading {
    omega: Vec<QRat>,
}

impl Grading {
    pub fn new(omega: Vec<QRat>) -> Self {
        Grading { omega }
    }

    pub fn omega(&self) -> &[QRat] {
        &self.omega
    }

    pub fn len(&self) -> usize {
        self.omega.len()
    }

    pub fn is_empty(&self) -> bool {
        self.omega.is_empty()
    }

    /// ω·d as an exact rational.
    pub fn value(&self, d: &DegreeClass) -> QRat {
        assert_eq!(self.omega.len(), d.len(), "grading arity mismatch");
        let mut acc = QRat::zero();
        for (w, &x) in self.omega.iter().zip(&d.0) {
            acc += w * QRat::from_integer(x.into());
        }
        acc
    }

    /// Sorts degrees by (ω-value, lexicographic pairing vector): the
    /// deterministic filtration order every staged computation uses.
    pub fn sort_filtered(&self, degrees: &mut [DegreeClass]) {
        degrees.sort_by(|a, b| {
            self.value(a)
                .cmp(&self.value(b))
                .then_with(|| a.cmp(b))
        });
    }
}

/// All ℤ≥0-combinations of the generators with ω-value ≤ cutoff, in
/// filtration order.  Every generator must have strictly positive value,
/// which bounds the search depth.
pub fn effective_degrees(
    generators: &[DegreeClass],
    grading: &Grading,
    cutoff: &QRat,
) -> Vec<DegreeClass> {
    for g in generators {
        assert!(
            grading.value(g) > QRat::zero(),
            "generator {} has non-positive grading value",
            g
        );
    }
    let m = grading.len();
    let mut seen: BTreeSet<DegreeClass> = BTreeSet::new();
    let mut frontier: Vec<DegreeClass> = vec![DegreeClass::zero(m)];
    seen.insert(DegreeClass::zero(m));
    while let Some(d) = frontier.pop() {
        for g in generators {
            let next = d.add(g);
            if grading.value(&next) <= *cutoff && seen.insert(next.clone()) {
                frontier.push(next);
            }
        }
    }
    let mut out: Vec<DegreeClass> = seen.into_iter().collect();
    grading.sort_filtered(&mut out);
    out
}

/// Membership of `d` in the ℤ≥0-span of the generators, decided by the
/// same bounded expansion.
pub fn is_effective(d: &DegreeClass, generators: &[DegreeClass], grading: &Grading) -> bool {
    if d.is_zero() {
        return true;
    }
    let bound = grading.value(d);
    if bound <= QRat::zero() {
        return false;
    }
    effective_degrees(generators, grading, &bound).contains(d)
}

/// Removes duplicates and any class expressible as a ℤ≥0-combination of
/// the remaining ones; the span is unchanged and the result is the minimal
/// deterministic generating set, in filtration order.
pub fn minimal_generators(classes: &[DegreeClass], grading: &Grading) -> Vec<DegreeClass> {
    let mut distinct: Vec<DegreeClass> = {
        let set: BTreeSet<DegreeClass> = classes.iter().cloned().collect();
        set.into_iter().collect()
    };
    grading.sort_filtered(&mut distinct);
    let mut keep: Vec<bool> = vec![true; distinct.len()];
    for i in 0..distinct.len() {
        let others: Vec<DegreeClass> = distinct
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i && keep[j])
            .map(|(_, c)| c.clone())
            .collect();
        if others.is_empty() {
            continue;
        }
        if is_effective(&distinct[i], &others, grading) {
            keep[i] = false;
        }
    }
    distinct
        .into_iter()
        .zip(keep)
        .filter_map(|(c, k)| if k { Some(c) } else { None })
        .collect()
}
