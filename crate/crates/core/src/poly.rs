//! Sparse multivariate polynomials over ℚ.
//!
//! A polynomial lives in ℚ[l1, …, lm, z]: the first `m` variables are the
//! torus weights (equivariant parameters), the final variable is always the
//! loop-rotation parameter z.  The variable arity `m + 1` is fixed per value
//! and checked on every binary operation.
//!
//! Terms are stored in a `BTreeMap` keyed by exponent vector under the
//! repo-wide canonical order: graded lexicographic with l1 < l2 < … < lm < z.
//! Concretely, monomials compare first by total degree, then by exponents
//! read from z down to l1 (the first difference decides, larger exponent
//! wins).  The map therefore iterates in ascending canonical order and the
//! leading term is the last entry.
//!
//! Invariants:
//! * no zero coefficients are stored;
//! * every exponent vector has length equal to the arity;
//! * all arithmetic is exact — coefficients are arbitrary-precision
//!   rationals and no rounding of any kind occurs.
//!
//! The GCD used by rational-function reduction is classical content /
//! primitive-part recursion on the top variable with a primitive pseudo-
//! remainder sequence.  Every remainder is renormalized to integer-coprime
//! coefficients before the next step — with rational coefficients left in
//! place the numerators and denominators square at each division, which
//! turns modest inputs into multi-thousand-digit arithmetic.  Fast paths
//! cover monomial content, constants, and whole-divisor cancellation.
//! Returned GCDs are monic with respect to the canonical order, so reduced
//! representatives are unique.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

/// Arbitrary-precision rational scalar: always stored reduced with a
/// positive denominator (guaranteed by the backing implementation).
pub type QRat = BigRational;

/// Convenience constructor for small rationals.
pub fn qrat(num: i64, den: i64) -> QRat {
    QRat::new(num.into(), den.into())
}

/// Coefficient product with an integer fast path: when both operands have
/// denominator 1 the result is assembled raw, skipping `Ratio`'s
/// normalization.  That normalization runs a binary BigInt GCD even when
/// one side is 1, which is quadratic in coefficient bit-length and would
/// otherwise dominate every polynomial operation.
fn coeff_mul(a: &QRat, b: &QRat) -> QRat {
    if a.denom().is_one() && b.denom().is_one() {
        QRat::new_raw(a.numer() * b.numer(), BigInt::one())
    } else {
        a * b
    }
}

/// In-place coefficient sum with the same integer fast path as
/// [`coeff_mul`].
fn coeff_add_assign(acc: &mut QRat, rhs: &QRat) {
    if acc.denom().is_one() && rhs.denom().is_one() {
        *acc = QRat::new_raw(acc.numer() + rhs.numer(), BigInt::one());
    } else {
        *acc = &*acc + rhs;
    }
}

/// In-place coefficient difference with the same integer fast path as
/// [`coeff_mul`].
fn coeff_sub_assign(acc: &mut QRat, rhs: &QRat) {
    if acc.denom().is_one() && rhs.denom().is_one() {
        *acc = QRat::new_raw(acc.numer() - rhs.numer(), BigInt::one());
    } else {
        *acc = &*acc - rhs;
    }
}

/// Coefficient quotient that keeps exact integer divisions on the raw
/// path; inexact or rational cases fall back to reducing division.
fn coeff_div(a: &QRat, b: &QRat) -> QRat {
    if a.denom().is_one() && b.denom().is_one() {
        let (q, r) = a.numer().div_rem(b.numer());
        if r.is_zero() {
            return QRat::new_raw(q, BigInt::one());
        }
    }
    a / b
}

/// An exponent vector.  Index `i < arity - 1` is the power of `l(i+1)`;
/// the last index is the power of z.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn unit(arity: usize) -> Self {
        Monomial(vec![0; arity])
    }

    pub fn variable(arity: usize, index: usize) -> Self {
        let mut e = vec![0; arity];
        e[index] = 1;
        Monomial(e)
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| u64::from(e)).sum()
    }

    pub fn is_unit(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Componentwise difference; caller must ensure `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.min(b))
                .collect(),
        )
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.0.len(), other.0.len(), "monomial arity mismatch");
        match self.total_degree().cmp(&other.total_degree()) {
            Ordering::Equal => {
                for (a, b) in self.0.iter().rev().zip(other.0.iter().rev()) {
                    match a.cmp(b) {
                        Ordering::Equal => continue,
                        ord => return ord,
                    }
                }
                Ordering::Equal
            }
            ord => ord,
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial over ℚ in canonical form.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MPoly {
    arity: usize,
    terms: BTreeMap<Monomial, QRat>,
}

impl MPoly {
    pub fn zero(arity: usize) -> Self {
        MPoly {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(arity: usize, c: QRat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::unit(arity), c);
        }
        MPoly { arity, terms }
    }

    pub fn one(arity: usize) -> Self {
        Self::constant(arity, QRat::one())
    }

    pub fn from_int(arity: usize, n: i64) -> Self {
        Self::constant(arity, QRat::from_integer(n.into()))
    }

    /// The variable with the given index (z is index `arity - 1`).
    pub fn variable(arity: usize, index: usize) -> Self {
        assert!(index < arity, "variable index out of range");
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::variable(arity, index), QRat::one());
        MPoly { arity, terms }
    }

    /// The torus weight `l(i+1)` for zero-based ray index `i`.
    pub fn lambda(arity: usize, i: usize) -> Self {
        assert!(i + 1 < arity, "lambda index out of range");
        Self::variable(arity, i)
    }

    /// The loop variable z (always the last variable).
    pub fn z(arity: usize) -> Self {
        Self::variable(arity, arity - 1)
    }

    /// Builds a polynomial from raw terms, merging duplicates and dropping
    /// zeros.
    pub fn from_terms<I>(arity: usize, iter: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, QRat)>,
    {
        let mut p = Self::zero(arity);
        for (mono, coeff) in iter {
            p.add_term(mono, coeff);
        }
        p
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .map(|(m, c)| m.is_unit() && c.is_one())
                .unwrap_or(false)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_unit)
    }

    /// Returns the constant value if the polynomial is constant.
    pub fn as_constant(&self) -> Option<QRat> {
        if self.is_zero() {
            Some(QRat::zero())
        } else if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &QRat)> {
        self.terms.iter()
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().map(Monomial::total_degree).max()
    }

    /// Largest term under the canonical order.
    pub fn leading_term(&self) -> Option<(&Monomial, &QRat)> {
        self.terms.iter().next_back()
    }

    pub fn coeff(&self, mono: &Monomial) -> QRat {
        self.terms.get(mono).cloned().unwrap_or_else(QRat::zero)
    }

    fn add_term(&mut self, mono: Monomial, coeff: QRat) {
        debug_assert_eq!(mono.0.len(), self.arity, "term arity mismatch");
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                coeff_add_assign(e.get_mut(), &coeff);
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn assert_compatible(&self, other: &MPoly) {
        assert_eq!(
            self.arity, other.arity,
            "polynomial arity mismatch: {} vs {}",
            self.arity, other.arity
        );
    }

    pub fn neg(&self) -> MPoly {
        MPoly {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        self.assert_compatible(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        self.assert_compatible(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        self.assert_compatible(other);
        let mut out = Self::zero(self.arity);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), coeff_mul(ca, cb));
            }
        }
        out
    }

    pub fn scale(&self, c: &QRat) -> MPoly {
        if c.is_zero() {
            return Self::zero(self.arity);
        }
        MPoly {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), coeff_mul(k, c)))
                .collect(),
        }
    }

    /// Multiplies by a single term `coeff · mono`.
    pub fn mul_term(&self, mono: &Monomial, coeff: &QRat) -> MPoly {
        if coeff.is_zero() {
            return Self::zero(self.arity);
        }
        MPoly {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.mul(mono), coeff_mul(c, coeff)))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut out = Self::one(self.arity);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Divides by the leading coefficient, making the polynomial monic under
    /// the canonical order.  Zero stays zero.
    pub fn monic(&self) -> MPoly {
        match self.leading_term() {
            None => self.clone(),
            Some((_, c)) => {
                let inv = QRat::one() / c.clone();
                self.scale(&inv)
            }
        }
    }

    /// Exact division: returns `self / divisor` when the division leaves no
    /// remainder, `None` otherwise.  The remainder is updated in place, so
    /// one division costs O(steps · |divisor| · log |terms|).
    pub fn div_exact(&self, divisor: &MPoly) -> Option<MPoly> {
        self.assert_compatible(divisor);
        assert!(!divisor.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(Self::zero(self.arity));
        }
        if divisor.is_one() {
            return Some(self.clone());
        }
        let (dm, dc) = divisor.leading_term().expect("nonzero divisor");
        let dm = dm.clone();
        let dc = dc.clone();
        let mut rem = self.terms.clone();
        let mut quot = Self::zero(self.arity);
        while let Some((rm, rc)) = rem.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) {
            if !dm.divides(&rm) {
                return None;
            }
            let qm = rm.div(&dm);
            let qc = coeff_div(&rc, &dc);
            for (m, c) in &divisor.terms {
                let target = qm.mul(m);
                let delta = coeff_mul(&qc, c);
                match rem.entry(target) {
                    Entry::Vacant(v) => {
                        v.insert(-delta);
                    }
                    Entry::Occupied(mut o) => {
                        coeff_sub_assign(o.get_mut(), &delta);
                        if o.get().is_zero() {
                            o.remove();
                        }
                    }
                }
            }
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Exact division restricted to integer quotients: like
    /// [`MPoly::div_exact`], but gives up as soon as a quotient coefficient
    /// fails to be an integer.  When the dividend has integer coefficients
    /// and the divisor is primitive, an exact quotient is automatically
    /// integral (Gauss's lemma), so a fractional coefficient proves the
    /// division inexact without finishing it — and every surviving
    /// intermediate stays integer, where coefficient arithmetic is cheap.
    pub fn div_exact_integer(&self, divisor: &MPoly) -> Option<MPoly> {
        self.assert_compatible(divisor);
        assert!(!divisor.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(Self::zero(self.arity));
        }
        if divisor.is_one() {
            return Some(self.clone());
        }
        let (dm, dc) = divisor.leading_term().expect("nonzero divisor");
        let dm = dm.clone();
        let dc = dc.clone();
        let mut rem = self.terms.clone();
        let mut quot = Self::zero(self.arity);
        while let Some((rm, rc)) = rem.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) {
            if !dm.divides(&rm) {
                return None;
            }
            let qm = rm.div(&dm);
            let qc = coeff_div(&rc, &dc);
            if !qc.denom().is_one() {
                return None;
            }
            for (m, c) in &divisor.terms {
                let target = qm.mul(m);
                let delta = coeff_mul(&qc, c);
                match rem.entry(target) {
                    Entry::Vacant(v) => {
                        v.insert(-delta);
                    }
                    Entry::Occupied(mut o) => {
                        coeff_sub_assign(o.get_mut(), &delta);
                        if o.get().is_zero() {
                            o.remove();
                        }
                    }
                }
            }
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Splits off the rational content: `self = content · primitive` with
    /// the primitive part having coprime integer coefficients and a
    /// positive leading coefficient.  Zero returns (zero, 1).
    pub fn primitive_and_content(&self) -> (MPoly, QRat) {
        if self.is_zero() {
            return (self.clone(), QRat::one());
        }
        let c = rational_content(self);
        (self.scale(&(QRat::one() / c.clone())), c)
    }

    /// Componentwise minimum exponent over all terms: the largest monomial
    /// dividing the polynomial.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        let first = match it.next() {
            Some(m) => m.clone(),
            None => return Monomial::unit(self.arity),
        };
        it.fold(first, |acc, m| acc.gcd(m))
    }

    /// Indices of variables that actually occur.
    pub fn variables_present(&self) -> Vec<usize> {
        let mut present = vec![false; self.arity];
        for m in self.terms.keys() {
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    present[i] = true;
                }
            }
        }
        present
            .iter()
            .enumerate()
            .filter_map(|(i, &p)| if p { Some(i) } else { None })
            .collect()
    }

    /// Degree in one variable; `None` for the zero polynomial.
    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[var]).max()
    }

    /// Coefficients as a univariate polynomial in `var`: exponent of `var`
    /// mapped to an MPoly (same arity, `var`-exponent zeroed out).
    pub fn as_univariate(&self, var: usize) -> BTreeMap<u32, MPoly> {
        let mut out: BTreeMap<u32, MPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.0[var];
            let mut stripped = m.clone();
            stripped.0[var] = 0;
            out.entry(e)
                .or_insert_with(|| Self::zero(self.arity))
                .add_term(stripped, c.clone());
        }
        out.retain(|_, p| !p.is_zero());
        out
    }

    /// Inverse of [`MPoly::as_univariate`].
    pub fn from_univariate(arity: usize, var: usize, coeffs: &BTreeMap<u32, MPoly>) -> MPoly {
        let mut out = Self::zero(arity);
        for (&e, p) in coeffs {
            let mono = {
                let mut v = vec![0; arity];
                v[var] = e;
                Monomial(v)
            };
            out = out.add(&p.mul_term(&mono, &QRat::one()));
        }
        out
    }

    /// Leading coefficient with respect to one variable (an MPoly in the
    /// remaining variables).
    fn univariate_leading(&self, var: usize) -> (u32, MPoly) {
        let deg = self.degree_in(var).expect("zero polynomial");
        let mut lead = Self::zero(self.arity);
        for (m, c) in &self.terms {
            if m.0[var] == deg {
                let mut stripped = m.clone();
                stripped.0[var] = 0;
                lead.add_term(stripped, c.clone());
            }
        }
        (deg, lead)
    }

    /// Substitutes l_i ↦ l_i − k_i·z for every torus weight; z is unchanged.
    /// This is the algebraic form of the λ-translation a cocharacter shift
    /// performs.  The substitution is a ring automorphism, so coprime pairs
    /// stay coprime.
    pub fn lambda_shift(&self, k: &[i64]) -> MPoly {
        assert_eq!(k.len() + 1, self.arity, "cocharacter length mismatch");
        let zvar = self.arity - 1;
        let mut out = Self::zero(self.arity);
        for (m, c) in &self.terms {
            let mut term = Self::constant(self.arity, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if i == zvar {
                    term = term.mul_term(&Monomial::variable(self.arity, zvar).pow_mono(e), &QRat::one());
                } else if k[i] == 0 {
                    term = term.mul_term(&Monomial::variable(self.arity, i).pow_mono(e), &QRat::one());
                } else {
                    let shifted = Self::variable(self.arity, i).sub(
                        &Self::variable(self.arity, zvar)
                            .scale(&QRat::from_integer(k[i].into())),
                    );
                    term = term.mul(&shifted.pow(e));
                }
            }
            out = out.add(&term);
        }
        out
    }

    /// Sets every torus weight to zero, leaving a polynomial in z alone.
    pub fn lambdas_to_zero(&self) -> MPoly {
        let zvar = self.arity - 1;
        let mut out = Self::zero(self.arity);
        for (m, c) in &self.terms {
            if m.0[..zvar].iter().all(|&e| e == 0) {
                out.add_term(m.clone(), c.clone());
            }
        }
        out
    }

    /// True when z does not occur.
    pub fn is_z_free(&self) -> bool {
        let zvar = self.arity - 1;
        self.terms.keys().all(|m| m.0[zvar] == 0)
    }

    /// Pairs a homogeneous linear form in the torus weights with an integer
    /// cocharacter: Σ_i coeff(l_i)·k_i.  Panics if the polynomial is not
    /// z-free and linear without constant term.
    pub fn linear_pairing(&self, k: &[i64]) -> QRat {
        assert_eq!(k.len() + 1, self.arity, "cocharacter length mismatch");
        let mut acc = QRat::zero();
        for (m, c) in &self.terms {
            assert!(
                m.total_degree() == 1 && m.0[self.arity - 1] == 0,
                "pairing requires a homogeneous linear form in the torus weights"
            );
            let var = m.0.iter().position(|&e| e == 1).expect("linear term");
            acc += c * QRat::from_integer(k[var].into());
        }
        acc
    }
}

impl Monomial {
    fn pow_mono(&self, e: u32) -> Monomial {
        Monomial(self.0.iter().map(|&x| x * e).collect())
    }
}

/// Monic multivariate GCD by content / primitive-part recursion.
///
/// Fast paths: equal inputs, constants, shared monomial content, and one
/// input dividing the other.  The general case runs a primitive pseudo-
/// remainder sequence in the top occurring variable with coefficients
/// handled recursively.
pub fn gcd(a: &MPoly, b: &MPoly) -> MPoly {
    a.assert_compatible(b);
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a == b {
        return a.monic();
    }
    // Peel off monomial content first: it is cheap and very common (powers
    // of z in hypergeometric denominators).
    let ma = a.monomial_content();
    let mb = b.monomial_content();
    let shared = ma.gcd(&mb);
    let a1 = strip_monomial(a, &ma);
    let b1 = strip_monomial(b, &mb);
    let shared_poly = MPoly::from_terms(a.arity(), [(shared, QRat::one())]);
    // Whole-divisor cancellation is the common case when reducing rational
    // functions, so try exact division before the remainder sequence.  The
    // attempt bails out on the first non-dividing leading monomial.
    let da = a1.leading_term().map_or(0, |(m, _)| m.total_degree());
    let db = b1.leading_term().map_or(0, |(m, _)| m.total_degree());
    if db <= da && a1.div_exact(&b1).is_some() {
        return b1.mul(&shared_poly).monic();
    }
    if da < db && b1.div_exact(&a1).is_some() {
        return a1.mul(&shared_poly).monic();
    }
    let core = gcd_primitive_mon(&a1, &b1);
    core.mul(&shared_poly).monic()
}

fn strip_monomial(p: &MPoly, content: &Monomial) -> MPoly {
    if content.is_unit() {
        return p.clone();
    }
    MPoly {
        arity: p.arity,
        terms: p
            .terms
            .iter()
            .map(|(m, c)| (m.div(content), c.clone()))
            .collect(),
    }
}

/// GCD of two polynomials with trivial monomial content.
fn gcd_primitive_mon(a: &MPoly, b: &MPoly) -> MPoly {
    if a.is_constant() || b.is_constant() {
        return MPoly::one(a.arity());
    }
    if a == b {
        return a.monic();
    }
    let vars_a = a.variables_present();
    let vars_b = b.variables_present();
    let top = *vars_a
        .iter()
        .chain(vars_b.iter())
        .max()
        .expect("nonconstant polynomials have variables");
    let in_a = vars_a.contains(&top);
    let in_b = vars_b.contains(&top);
    if in_a && !in_b {
        return gcd(&content_wrt(a, top), b);
    }
    if in_b && !in_a {
        return gcd(a, &content_wrt(b, top));
    }
    let ca = content_wrt(a, top);
    let cb = content_wrt(b, top);
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");
    let cont_gcd = gcd(&ca, &cb);
    let prs = subresultant_prs(&pa, &pb, top);
    cont_gcd.mul(&prs).monic()
}

/// GCD of the univariate coefficient list of `p` with respect to `var`.
fn content_wrt(p: &MPoly, var: usize) -> MPoly {
    let coeffs = p.as_univariate(var);
    let mut acc = MPoly::zero(p.arity());
    for c in coeffs.values() {
        acc = gcd(&acc, c);
        if acc.is_one() {
            break;
        }
    }
    acc
}

/// Subresultant pseudo-remainder sequence for inputs with trivial polynomial
/// content in `var`; returns the monic GCD.
///
/// Each pseudo-remainder is divided by the subresultant factor β, which the
/// theory guarantees divides it exactly.  That keeps coefficient growth
/// polynomial along the sequence *without* computing polynomial contents at
/// every step — content extraction (a cascade of recursive GCDs) happens
/// only once, on the final candidate.  Inputs are first rescaled to
/// integer-coprime coefficients so all iterates stay integral.
fn subresultant_prs(a: &MPoly, b: &MPoly, var: usize) -> MPoly {
    let arity = a.arity();
    let mut f = primitive_rat(a);
    let mut g = primitive_rat(b);
    if f.degree_in(var) < g.degree_in(var) {
        std::mem::swap(&mut f, &mut g);
    }
    let mut delta = f.degree_in(var).expect("nonzero") - g.degree_in(var).expect("nonzero");
    let minus_one = MPoly::constant(arity, -QRat::one());
    let mut psi = minus_one.clone();
    let mut beta = if delta % 2 == 0 {
        minus_one.clone()
    } else {
        MPoly::one(arity)
    };
    loop {
        let prem = pseudo_rem(&f, &g, var);
        if prem.is_zero() {
            return primitive_part(&g, var).monic();
        }
        let r = prem
            .div_exact(&beta)
            .expect("subresultant divisor is exact");
        if r.degree_in(var) == Some(0) {
            // A nonzero remainder free of `var` means the inputs are
            // coprime in `var`; any common factor lives in the contents,
            // which the caller handles.
            return MPoly::one(arity);
        }
        let (_, lead_g) = g.univariate_leading(var);
        let neg_lead = lead_g.neg();
        psi = match delta {
            0 => psi,
            1 => neg_lead.clone(),
            _ => neg_lead
                .pow(delta)
                .div_exact(&psi.pow(delta - 1))
                .expect("subresultant psi update is exact"),
        };
        let next_delta =
            g.degree_in(var).expect("nonzero") - r.degree_in(var).expect("nonzero");
        beta = neg_lead.mul(&psi.pow(next_delta));
        delta = next_delta;
        f = g;
        g = r;
    }
}

/// Strips monomial content, polynomial content with respect to `var`, and
/// integer coefficient content.  Dropping the monomial factor is sound
/// inside the remainder sequence: the true GCD divides the monomial-free
/// inputs, so it is monomial-free itself and any monomial acquired by a
/// remainder is spurious.
fn primitive_part(p: &MPoly, var: usize) -> MPoly {
    let mono = p.monomial_content();
    let stripped = strip_monomial(p, &mono);
    let c = content_wrt(&stripped, var);
    primitive_rat(&stripped.div_exact(&c).expect("content divides"))
}

/// The canonical scalar content: the rational `c` such that `p / c` has
/// coprime integer coefficients and a positive leading coefficient.
fn rational_content(p: &MPoly) -> QRat {
    let mut denom_lcm = BigInt::one();
    for c in p.terms.values() {
        denom_lcm = denom_lcm.lcm(c.denom());
    }
    let mut numer_gcd = BigInt::zero();
    for c in p.terms.values() {
        let scaled = c.numer() * (&denom_lcm / c.denom());
        numer_gcd = numer_gcd.gcd(&scaled);
        if numer_gcd.is_one() {
            break;
        }
    }
    let mut content = QRat::new(numer_gcd, denom_lcm);
    if let Some((_, lead)) = p.leading_term() {
        if lead.is_negative() {
            content = -content;
        }
    }
    content
}

/// Rescales to coprime integer coefficients with a positive leading
/// coefficient.  Zero stays zero.
fn primitive_rat(p: &MPoly) -> MPoly {
    if p.is_zero() {
        return p.clone();
    }
    let c = rational_content(p);
    p.scale(&(QRat::one() / c))
}

/// Pseudo-remainder with the exact multiplier convention: the result equals
/// `lc(g)^{deg f − deg g + 1} · f  mod  g` in `var`.  The elimination loop
/// multiplies by the leading coefficient once per step; if cancellations end
/// the loop early, the remainder is padded to the full power so the
/// subresultant divisions downstream stay exact.
fn pseudo_rem(f: &MPoly, g: &MPoly, var: usize) -> MPoly {
    let (dg, lg) = g.univariate_leading(var);
    let df = f.degree_in(var).expect("nonzero dividend");
    assert!(df >= dg, "pseudo-division requires deg f >= deg g");
    let mut pad = df - dg + 1;
    let mut r = f.clone();
    while let Some(dr) = r.degree_in(var) {
        if dr < dg {
            break;
        }
        let (_, lr) = r.univariate_leading(var);
        let mono = {
            let mut v = vec![0; f.arity()];
            v[var] = dr - dg;
            Monomial(v)
        };
        r = r.mul(&lg).sub(&g.mul(&lr.mul_term(&mono, &QRat::one())));
        pad -= 1;
    }
    if r.is_zero() {
        return r;
    }
    for _ in 0..pad {
        r = r.mul(&lg);
    }
    r
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (mono, coeff) in self.terms.iter().rev() {
            let neg = coeff.is_negative();
            let mag = coeff.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            for (i, &e) in mono.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let name = if i + 1 == self.arity {
                    "z".to_string()
                } else {
                    format!("l{}", i + 1)
                };
                if e == 1 {
                    factors.push(name);
                } else {
                    factors.push(format!("{}^{}", name, e));
                }
            }
            if factors.is_empty() {
                write!(f, "{}", mag)?;
            } else if mag.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", mag, factors.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn l(i: usize) -> MPoly {
        MPoly::lambda(3, i)
    }

    fn z() -> MPoly {
        MPoly::z(3)
    }

    #[test]
    fn additive_inverse_cancels() {
        let p = l(0).add(&l(0).neg());
        assert!(p.is_zero());
    }

    #[test]
    fn difference_of_squares() {
        let prod = l(0).sub(&l(1)).mul(&l(0).add(&l(1)));
        let expected = l(0).mul(&l(0)).sub(&l(1).mul(&l(1)));
        assert_eq!(prod, expected);
    }

    #[test]
    fn weight_times_z_plus_z_squared() {
        let got = l(0).sub(&l(1)).mul(&z()).add(&z().mul(&z()));
        let expected = z()
            .pow(2)
            .add(&l(0).mul(&z()))
            .sub(&l(1).mul(&z()));
        assert_eq!(got, expected);
        // Descending canonical order: within degree two, l2*z outranks l1*z.
        assert_eq!(got.to_string(), "z^2 - l2*z + l1*z");
    }

    #[test]
    fn canonical_order_grades_first_then_z_heaviest() {
        // Total degree dominates; within a degree z outranks l2 outranks l1.
        let m_l1 = Monomial(vec![1, 0, 0]);
        let m_l2 = Monomial(vec![0, 1, 0]);
        let m_z = Monomial(vec![0, 0, 1]);
        let m_l1sq = Monomial(vec![2, 0, 0]);
        assert!(m_l1 < m_l2);
        assert!(m_l2 < m_z);
        assert!(m_z < m_l1sq);
        // Leading term of l1^2 + l1*z is the mixed term.
        let p = l(0).pow(2).add(&l(0).mul(&z()));
        let (lead, _) = p.leading_term().unwrap();
        assert_eq!(lead, &Monomial(vec![1, 0, 1]));
    }

    #[test]
    fn exact_division_roundtrip() {
        let a = l(0).add(&z()).pow(2).mul(&l(1).sub(&z()));
        let b = l(0).add(&z());
        let q = a.div_exact(&b).unwrap();
        assert_eq!(q.mul(&b), a);
        // Not divisible: remainder path returns None.
        assert!(l(0).add(&MPoly::one(3)).div_exact(&l(0)).is_none());
    }

    #[test]
    fn gcd_cancels_common_factor() {
        let num = l(0).pow(2).sub(&l(1).pow(2));
        let den = l(0).sub(&l(1)).mul(&z());
        let g = gcd(&num, &den);
        assert_eq!(g, l(0).sub(&l(1)).monic());
    }

    #[test]
    fn gcd_of_coprime_is_one() {
        let g = gcd(&l(0).add(&z()), &l(1).add(&z()));
        assert!(g.is_one());
        let g2 = gcd(&MPoly::from_int(3, 6), &l(0));
        assert!(g2.is_one());
    }

    #[test]
    fn gcd_strips_monomial_content() {
        let a = z().pow(3).mul(&l(0));
        let b = z().pow(2).mul(&l(0).add(&l(1)));
        let g = gcd(&a, &b);
        assert_eq!(g, z().pow(2));
    }

    #[test]
    fn gcd_of_linear_form_products() {
        // The shape the shift factors produce: products of (weight + c·z).
        let w = l(0).sub(&l(1));
        let f1 = w.add(&z());
        let f2 = w.add(&z().scale(&qrat(2, 1)));
        let a = f1.mul(&f2).mul(&w);
        let b = f1.mul(&w).mul(&w);
        let g = gcd(&a, &b);
        assert_eq!(g, f1.mul(&w).monic());
    }

    #[test]
    fn lambda_shift_translates_weights() {
        // l1 - l2 under l ↦ l − z·e1 becomes l1 - l2 - z.
        let w = l(0).sub(&l(1));
        let shifted = w.lambda_shift(&[1, 0]);
        assert_eq!(shifted, w.sub(&z()));
        // A fully symmetric shift leaves differences alone.
        let sym = w.lambda_shift(&[1, 1]);
        assert_eq!(sym, w);
    }

    #[test]
    fn linear_pairing_reads_coefficients() {
        let w = l(0).sub(&l(1).scale(&qrat(3, 1)));
        assert_eq!(w.linear_pairing(&[1, 0]), qrat(1, 1));
        assert_eq!(w.linear_pairing(&[0, 1]), qrat(-3, 1));
        assert_eq!(w.linear_pairing(&[2, 1]), qrat(-1, 1));
    }

    fn random_poly(rng: &mut ChaCha8Rng, arity: usize) -> MPoly {
        let n_terms = rng.gen_range(0..5);
        let mut p = MPoly::zero(arity);
        for _ in 0..n_terms {
            let mono = Monomial((0..arity).map(|_| rng.gen_range(0..3)).collect());
            let num = rng.gen_range(-6i64..=6);
            let den = rng.gen_range(1i64..=4);
            p = p.add(&MPoly::from_terms(arity, [(mono, qrat(num, den))]));
        }
        p
    }

    #[test]
    fn ring_axioms_on_random_triples() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        for _ in 0..60 {
            let a = random_poly(&mut rng, 3);
            let b = random_poly(&mut rng, 3);
            let c = random_poly(&mut rng, 3);
            assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
            assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            assert_eq!(a.mul(&b), b.mul(&a));
        }
    }

    #[test]
    fn gcd_divides_both_on_random_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(0xfeed);
        for _ in 0..25 {
            let shared = random_poly(&mut rng, 3);
            let a = random_poly(&mut rng, 3).mul(&shared);
            let b = random_poly(&mut rng, 3).mul(&shared);
            let g = gcd(&a, &b);
            if !a.is_zero() {
                assert!(a.div_exact(&g).is_some());
            }
            if !b.is_zero() {
                assert!(b.div_exact(&g).is_some());
            }
            if !shared.is_zero() && !a.is_zero() && !b.is_zero() {
                assert!(g.div_exact(&shared.monic()).is_some());
            }
        }
    }
}
