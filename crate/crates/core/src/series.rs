//! Truncated Novikov series over an exact coefficient ring.
//!
//! A series is a finite map DegreeClass → C supported on effective degrees
//! with ω·d ≤ cutoff (the zero degree is always allowed).  Writes beyond
//! the cutoff are discarded, which is exactly truncated-ring semantics:
//! computing at a higher cutoff and then truncating agrees with computing
//! at the lower cutoff from the start.
//!
//! Coefficient types plug in through [`SeriesCoeff`]; rational functions,
//! localized class vectors, and matrices all implement it, so one Cauchy
//! product serves scalar series, class-valued series, and matrix series
//! (the coefficient ring need not be commutative).

use crate::degree::{DegreeClass, Grading};
use crate::poly::QRat;
use crate::ratfun::RationalFunction;
use std::collections::BTreeMap;

/// Exact ring of coefficients a Novikov series can carry.
pub trait SeriesCoeff: Clone {
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;

    /// Σ aᵢ·bᵢ over the given pairs; `None` when the list is empty.
    /// Rings that can share normalization work across many summands
    /// (rational functions over a common denominator) override this.
    fn sum_of_products(pairs: &[(&Self, &Self)]) -> Option<Self> {
        let mut acc: Option<Self> = None;
        for (a, b) in pairs {
            let p = a.mul(b);
            acc = Some(match acc {
                None => p,
                Some(s) => s.add(&p),
            });
        }
        acc
    }
}

impl SeriesCoeff for RationalFunction {
    fn is_zero(&self) -> bool {
        RationalFunction::is_zero(self)
    }

    fn add(&self, other: &Self) -> Self {
        RationalFunction::add(self, other)
    }

    fn mul(&self, other: &Self) -> Self {
        RationalFunction::mul(self, other)
    }

    fn sum_of_products(pairs: &[(&Self, &Self)]) -> Option<Self> {
        let arity = pairs.first()?.0.arity();
        let prods: Vec<RationalFunction> = pairs.iter().map(|(a, b)| a.mul(b)).collect();
        Some(RationalFunction::sum(arity, prods.iter()))
    }
}

/// Truncated graded series with exact coefficients.
#[derive(Clone, PartialEq, Debug)]
pub struct NovikovSeries<C> {
    grading: Grading,
    cutoff: QRat,
    coeffs: BTreeMap<DegreeClass, C>,
}

impl<C: SeriesCoeff> NovikovSeries<C> {
    pub fn new(grading: Grading, cutoff: QRat) -> Self {
        NovikovSeries {
            grading,
            cutoff,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn grading(&self) -> &Grading {
        &self.grading
    }

    pub fn cutoff(&self) -> &QRat {
        &self.cutoff
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn get(&self, d: &DegreeClass) -> Option<&C> {
        self.coeffs.get(d)
    }

    /// Stores (adds) a coefficient; zero results and degrees beyond the
    /// cutoff are dropped.
    pub fn add_coeff(&mut self, d: DegreeClass, c: C) {
        if c.is_zero() || self.grading.value(&d) > self.cutoff {
            return;
        }
        match self.coeffs.entry(d) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add(&c);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn from_coeffs<I>(grading: Grading, cutoff: QRat, coeffs: I) -> Self
    where
        I: IntoIterator<Item = (DegreeClass, C)>,
    {
        let mut s = Self::new(grading, cutoff);
        for (d, c) in coeffs {
            s.add_coeff(d, c);
        }
        s
    }

    /// Iterates in the map's lexicographic key order (deterministic).
    pub fn iter(&self) -> impl Iterator<Item = (&DegreeClass, &C)> {
        self.coeffs.iter()
    }

    /// Degrees sorted by (ω-value, lex): the filtration order.
    pub fn degrees_filtered(&self) -> Vec<DegreeClass> {
        let mut ds: Vec<DegreeClass> = self.coeffs.keys().cloned().collect();
        self.grading.sort_filtered(&mut ds);
        ds
    }

    fn assert_same_grading(&self, other: &Self) {
        assert_eq!(
            self.grading, other.grading,
            "Novikov series grading mismatch"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_same_grading(other);
        let cutoff = self.cutoff.clone().min(other.cutoff.clone());
        let mut out = Self::new(self.grading.clone(), cutoff);
        for (d, c) in &self.coeffs {
            out.add_coeff(d.clone(), c.clone());
        }
        for (d, c) in &other.coeffs {
            out.add_coeff(d.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self
    where
        C: Neg,
    {
        self.add(&other.map(|c| c.neg_coeff()))
    }

    /// Cauchy product over all effective splittings within the cutoff.
    /// Contributions to one output degree are summed in a single fused
    /// pass, which lets the coefficient ring share normalization work.
    pub fn mul(&self, other: &Self) -> Self {
        self.assert_same_grading(other);
        let cutoff = self.cutoff.clone().min(other.cutoff.clone());
        let mut buckets: BTreeMap<DegreeClass, Vec<(&C, &C)>> = BTreeMap::new();
        for (d1, c1) in &self.coeffs {
            for (d2, c2) in &other.coeffs {
                let d = d1.add(d2);
                if self.grading.value(&d) <= cutoff {
                    buckets.entry(d).or_default().push((c1, c2));
                }
            }
        }
        let mut out = Self::new(self.grading.clone(), cutoff);
        for (d, pairs) in buckets {
            if let Some(c) = C::sum_of_products(&pairs) {
                out.add_coeff(d, c);
            }
        }
        out
    }

    /// Applies a map to every coefficient, dropping zeros.
    pub fn map<F>(&self, f: F) -> Self
    where
        F: Fn(&C) -> C,
    {
        let mut out = Self::new(self.grading.clone(), self.cutoff.clone());
        for (d, c) in &self.coeffs {
            out.add_coeff(d.clone(), f(c));
        }
        out
    }

    /// Like [`NovikovSeries::map`] with access to the degree.
    pub fn map_with_degree<F>(&self, f: F) -> Self
    where
        F: Fn(&DegreeClass, &C) -> C,
    {
        let mut out = Self::new(self.grading.clone(), self.cutoff.clone());
        for (d, c) in &self.coeffs {
            out.add_coeff(d.clone(), f(d, c));
        }
        out
    }

    /// Restricts to degrees with ω-value ≤ the new (smaller) cutoff.
    pub fn truncate(&self, cutoff: QRat) -> Self {
        let mut out = Self::new(self.grading.clone(), cutoff);
        for (d, c) in &self.coeffs {
            out.add_coeff(d.clone(), c.clone());
        }
        out
    }

    /// Raises every stored degree by a fixed effective offset, discarding
    /// what the cutoff no longer admits.
    pub fn shift_degrees(&self, offset: &DegreeClass) -> Self {
        let mut out = Self::new(self.grading.clone(), self.cutoff.clone());
        for (d, c) in &self.coeffs {
            out.add_coeff(d.add(offset), c.clone());
        }
        out
    }
}

/// Coefficient negation, required only where series subtraction is used.
pub trait Neg {
    fn neg_coeff(&self) -> Self;
}

impl Neg for RationalFunction {
    fn neg_coeff(&self) -> Self {
        self.neg()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::qrat;

    fn grading() -> Grading {
        Grading::new(vec![qrat(1, 2), qrat(1, 2)])
    }

    fn e(k: i64) -> DegreeClass {
        DegreeClass(vec![k, k])
    }

    fn rf_int(n: i64) -> RationalFunction {
        RationalFunction::from_int(3, n)
    }

    fn series(cutoff: i64, coeffs: &[(i64, i64)]) -> NovikovSeries<RationalFunction> {
        NovikovSeries::from_coeffs(
            grading(),
            qrat(cutoff, 1),
            coeffs.iter().map(|&(k, c)| (e(k), rf_int(c))),
        )
    }

    #[test]
    fn unit_is_neutral() {
        let a = series(3, &[(0, 1), (1, 5), (3, -2)]);
        let one = series(3, &[(0, 1)]);
        assert_eq!(a.mul(&one), a);
    }

    #[test]
    fn conjugate_product_telescopes() {
        let plus = series(3, &[(0, 1), (1, 1)]);
        let minus = series(3, &[(0, 1), (1, -1)]);
        assert_eq!(plus.mul(&minus), series(3, &[(0, 1), (2, -1)]));
    }

    #[test]
    fn geometric_square_is_the_cauchy_product() {
        let geo = series(3, &[(0, 1), (1, 1), (2, 1), (3, 1)]);
        let sq = geo.mul(&geo);
        assert_eq!(sq, series(3, &[(0, 1), (1, 2), (2, 3), (3, 4)]));
    }

    #[test]
    fn truncation_commutes_with_arithmetic() {
        let a = series(6, &[(0, 1), (1, 3), (2, -1), (4, 7)]);
        let b = series(6, &[(0, 2), (1, -1), (3, 5)]);
        let low = qrat(3, 1);
        let wide = a.mul(&b).truncate(low.clone());
        let narrow = a.truncate(low.clone()).mul(&b.truncate(low));
        assert_eq!(wide, narrow);
    }

    #[test]
    fn product_is_commutative_and_associative() {
        let a = series(4, &[(0, 1), (1, 2), (3, -5)]);
        let b = series(4, &[(1, 1), (2, 4)]);
        let c = series(4, &[(0, -3), (2, 1)]);
        assert_eq!(a.mul(&b), b.mul(&a));
        assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn degree_shift_respects_cutoff() {
        let a = series(3, &[(0, 1), (2, 5), (3, 1)]);
        let shifted = a.shift_degrees(&e(1));
        assert_eq!(shifted, series(3, &[(1, 1), (3, 5)]));
    }
}
