//! Reduced rational functions over ℚ in the torus weights and z.
//!
//! A value is stored as `scalar · num / Π factorᵢ^{mᵢ}`:
//!
//! * `num` is a *primitive* integer polynomial (coprime integer
//!   coefficients, positive leading coefficient);
//! * the denominator is kept in **factored form** — a product of
//!   pairwise-distinct non-constant primitive polynomials with
//!   multiplicities;
//! * `scalar` is a single arbitrary-precision rational carrying every
//!   scalar normalization.
//!
//! Both halves of that layout are load-bearing for performance.  Keeping
//! the denominator factored matters because fixed-point localization only
//! ever divides by products of small linear forms (tangent weights,
//! telescoped `u + c·z` terms, interpolation pivots), so every cancellation
//! is a trial division by one small factor instead of a GCD of two
//! assembled polynomials.  Keeping the scalar out of the coefficients
//! matters because it leaves every stored coefficient an integer:
//! big-rational arithmetic pays a GCD per operation the moment true
//! fractions appear, and a single 1/c smeared across a large numerator
//! would poison every polynomial it later touches.
//!
//! Equality compares values, not representations: the primitive-part
//! normal form is unique, so two values agree exactly when their scalars
//! agree and their cross-multiplied numerators agree.
//!
//! Two operations beyond field arithmetic matter downstream:
//!
//! * [`RationalFunction::z_split`] writes f = polyPart + properPart where
//!   polyPart is polynomial in z (its denominator is z-free) and properPart
//!   decays at z → ∞ (numerator z-degree strictly below denominator
//!   z-degree).  This is the projection the Birkhoff factorization applies
//!   entrywise.
//! * [`RationalFunction::z_inf_leading`] evaluates lim_{z→∞} z·f for proper
//!   f, i.e. the coefficient of 1/z in the expansion at z = ∞; the mirror
//!   map is read off through it.

use crate::poly::{gcd, MPoly, QRat};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("division by zero polynomial")]
    DivisionByZero,
    #[error("rational function is not proper in z")]
    NotProperInZ,
}

/// Deterministic total order on polynomials, used only to keep factor
/// lists sorted: lexicographic over the canonical term sequence.
fn poly_cmp(a: &MPoly, b: &MPoly) -> Ordering {
    a.terms().cmp(b.terms())
}

/// A denominator as a product Π pᵢ^{mᵢ} of pairwise-distinct, non-constant
/// polynomials with coprime integer coefficients and positive leading
/// coefficient, sorted under [`poly_cmp`].  The empty product is 1.
#[derive(Clone, PartialEq, Eq, Debug)]
struct Factors(Vec<(MPoly, u32)>);

impl Factors {
    fn one() -> Self {
        Factors(Vec::new())
    }

    fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    /// Inserts a primitive non-constant factor, keeping the list sorted and
    /// merging multiplicities.
    fn push(&mut self, p: MPoly, m: u32) {
        debug_assert!(m > 0);
        debug_assert!(p.total_degree().map_or(false, |d| d >= 1));
        match self.0.binary_search_by(|(q, _)| poly_cmp(q, &p)) {
            Ok(i) => self.0[i].1 += m,
            Err(i) => self.0.insert(i, (p, m)),
        }
    }

    fn mul(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (p, m) in &other.0 {
            out.push(p.clone(), *m);
        }
        out
    }

    /// `num · Π pᵢ^{mᵢ}`, multiplying one factor at a time so every step is
    /// a small-by-large product.
    fn mul_into(&self, mut num: MPoly) -> MPoly {
        for (p, m) in &self.0 {
            for _ in 0..*m {
                num = num.mul(p);
            }
        }
        num
    }

    fn expanded(&self, arity: usize) -> MPoly {
        self.mul_into(MPoly::one(arity))
    }

    /// Multiplicity of one factor (0 when absent).
    fn mult_of(&self, p: &MPoly) -> u32 {
        match self.0.binary_search_by(|(q, _)| poly_cmp(q, p)) {
            Ok(i) => self.0[i].1,
            Err(_) => 0,
        }
    }

    /// Multiset union (every factor with its maximal multiplicity): the
    /// least common denominator of two factor lists.
    fn union(&self, other: &Self) -> Self {
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match poly_cmp(&self.0[i].0, &other.0[j].0) {
                Ordering::Less => {
                    out.push(self.0[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other.0[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((self.0[i].0.clone(), self.0[i].1.max(other.0[j].1)));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Factors(out)
    }

    fn z_degree(&self, zvar: usize) -> i64 {
        self.0
            .iter()
            .map(|(p, m)| i64::from(p.degree_in(zvar).unwrap_or(0)) * i64::from(*m))
            .sum()
    }

    fn is_z_free(&self) -> bool {
        self.0.iter().all(|(p, _)| p.is_z_free())
    }

    /// Multiset difference; `other` must be contained in `self`.
    fn minus(&self, other: &Self) -> Self {
        let mut out = Vec::new();
        let mut j = 0;
        for (p, m) in &self.0 {
            let mut keep = *m;
            if j < other.0.len() && poly_cmp(p, &other.0[j].0) == Ordering::Equal {
                debug_assert!(other.0[j].1 <= keep);
                keep -= other.0[j].1;
                j += 1;
            }
            if keep > 0 {
                out.push((p.clone(), keep));
            }
        }
        debug_assert_eq!(j, other.0.len(), "difference requires containment");
        Factors(out)
    }
}

/// The largest rational g such that every `sᵢ/g` is an integer:
/// gcd of the numerators over the lcm of the denominators.  The result is
/// already in lowest terms because each input fraction is.
fn scalar_gcd<'a, I>(scalars: I) -> QRat
where
    I: IntoIterator<Item = &'a QRat>,
{
    let mut p = BigInt::zero();
    let mut q = BigInt::one();
    for s in scalars {
        p = p.gcd(s.numer());
        q = q.lcm(s.denom());
    }
    QRat::new_raw(p, q)
}

/// cᵐ for a small positive multiplicity.
fn num_pow(c: &QRat, m: u32) -> QRat {
    let mut out = QRat::one();
    for _ in 0..m {
        out *= c.clone();
    }
    out
}

/// A rational function `scalar · num / Π factorᵢ^{mᵢ}` with a primitive
/// integer numerator.
#[derive(Clone, Debug)]
pub struct RationalFunction {
    scalar: QRat,
    num: MPoly,
    den: Factors,
}

impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        // The stored numerators are primitive with positive leading
        // coefficient and so are the denominator factors; products of such
        // polynomials are again primitive with positive leading
        // coefficient.  A scalar times a primitive polynomial is a unique
        // decomposition, so the scalars must agree exactly.
        if self.scalar != other.scalar {
            return false;
        }
        if self.den == other.den {
            return self.num == other.num;
        }
        self.num.mul(&other.den_expanded()) == other.num.mul(&self.den_expanded())
    }
}

impl Eq for RationalFunction {}

impl RationalFunction {
    /// Builds num/den from an assembled denominator, reducing the pair with
    /// one polynomial GCD.  Prefer [`RationalFunction::from_factored`] when
    /// the denominator's factors are known — it skips the large GCD.
    pub fn new(num: MPoly, den: MPoly) -> Result<Self, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero(num.arity()));
        }
        let (num, den) = if den.is_one() {
            (num, den)
        } else {
            let g = gcd(&num, &den).primitive_and_content().0;
            if g.is_constant() {
                (num, den)
            } else {
                (
                    num.div_exact(&g).expect("gcd divides numerator"),
                    den.div_exact(&g).expect("gcd divides denominator"),
                )
            }
        };
        Ok(Self::over_primitive_factor(num, den))
    }

    /// Builds num / Π dᵢ from explicit denominator factors, cancelling each
    /// factor against the numerator by trial division (plus one small GCD
    /// for reducible factors).  No GCD of assembled products is ever taken.
    pub fn from_factored<I>(num: MPoly, den_factors: I) -> Result<Self, AlgebraError>
    where
        I: IntoIterator<Item = MPoly>,
    {
        let mut den_scale = QRat::one();
        let mut den = Factors::one();
        for p in den_factors {
            match p.total_degree() {
                None => return Err(AlgebraError::DivisionByZero),
                Some(0) => den_scale *= p.as_constant().expect("constant factor"),
                Some(_) => {
                    let (prim, content) = p.primitive_and_content();
                    den_scale *= content;
                    den.push(prim, 1);
                }
            }
        }
        if num.is_zero() {
            return Ok(Self::zero(num.arity()));
        }
        let (num, content) = num.primitive_and_content();
        let (num, den, adjust) = Self::cancel(num, den);
        Ok(RationalFunction {
            scalar: content * adjust / den_scale,
            num,
            den,
        })
    }

    /// Wraps an already reduced pair whose denominator is a single
    /// polynomial, splitting both sides' rational content into the scalar.
    fn over_primitive_factor(num: MPoly, den: MPoly) -> Self {
        match den.total_degree() {
            None => unreachable!("nonzero denominator"),
            Some(0) => {
                let c = den.as_constant().expect("constant denominator");
                Self::make(QRat::one() / c, num, Factors::one())
            }
            Some(_) => {
                let (prim, content) = den.primitive_and_content();
                let mut factors = Factors::one();
                factors.push(prim, 1);
                Self::make(QRat::one() / content, num, factors)
            }
        }
    }

    /// Canonicalizes a raw triple: the numerator's rational content moves
    /// into the scalar so the stored numerator is primitive with positive
    /// leading coefficient.  A zero numerator collapses to canonical zero.
    fn make(scalar: QRat, num: MPoly, den: Factors) -> Self {
        if num.is_zero() {
            return Self::zero(num.arity());
        }
        let (num, content) = num.primitive_and_content();
        RationalFunction {
            scalar: scalar * content,
            num,
            den,
        }
    }

    /// Cancels common factors between an integer-coefficient numerator and
    /// a factor list: returns `(num′, den′, s)` with
    /// num/Πden = s · num′/Πden′.  Linear factors are irreducible over ℚ,
    /// so trial division alone decides them; larger factors fall back to
    /// one GCD against that factor only.  A primitive input numerator stays
    /// primitive (Gauss's lemma).
    fn cancel(mut num: MPoly, den: Factors) -> (MPoly, Factors, QRat) {
        if num.is_zero() {
            return (num, Factors::one(), QRat::one());
        }
        let mut adjust = QRat::one();
        let mut out = Factors::one();
        let mut pending = den.0;
        while let Some((p, mut m)) = pending.pop() {
            if num.is_constant() {
                out.push(p, m);
                continue;
            }
            if p.total_degree() == Some(1) {
                while m > 0 {
                    match num.div_exact_integer(&p) {
                        Some(q) => {
                            num = q;
                            m -= 1;
                        }
                        None => break,
                    }
                }
            } else {
                while m > 0 {
                    if let Some(q) = num.div_exact_integer(&p) {
                        num = q;
                        m -= 1;
                        continue;
                    }
                    // The primitive part of the GCD divides both operands
                    // exactly too, and dividing by it keeps integer
                    // coefficients integral (Gauss's lemma).
                    let h = gcd(&num, &p).primitive_and_content().0;
                    if h.total_degree().map_or(true, |d| d == 0) {
                        break;
                    }
                    num = num.div_exact_integer(&h).expect("gcd divides numerator");
                    let rest = p.div_exact_integer(&h).expect("gcd divides factor");
                    m -= 1;
                    match rest.total_degree() {
                        Some(0) => {
                            let c = rest.as_constant().expect("constant cofactor");
                            adjust /= c;
                        }
                        Some(_) => {
                            let (prim, content) = rest.primitive_and_content();
                            adjust /= content;
                            pending.push((prim, 1));
                        }
                        None => unreachable!("cofactor of a nonzero factor"),
                    }
                }
            }
            if m > 0 {
                out.push(p, m);
            }
        }
        (num, out, adjust)
    }

    pub fn from_poly(p: MPoly) -> Self {
        Self::make(QRat::one(), p, Factors::one())
    }

    pub fn zero(arity: usize) -> Self {
        RationalFunction {
            scalar: QRat::one(),
            num: MPoly::zero(arity),
            den: Factors::one(),
        }
    }

    pub fn one(arity: usize) -> Self {
        Self::from_poly(MPoly::one(arity))
    }

    pub fn constant(arity: usize, c: QRat) -> Self {
        if c.is_zero() {
            return Self::zero(arity);
        }
        RationalFunction {
            scalar: c,
            num: MPoly::one(arity),
            den: Factors::one(),
        }
    }

    pub fn from_int(arity: usize, n: i64) -> Self {
        Self::constant(arity, QRat::from_integer(n.into()))
    }

    /// The numerator polynomial (the scalar folded back in).
    pub fn num(&self) -> MPoly {
        self.num.scale(&self.scalar)
    }

    /// The denominator as one assembled polynomial (primitive, positive
    /// leading coefficient).
    pub fn den_expanded(&self) -> MPoly {
        self.den.expanded(self.arity())
    }

    /// True when no denominator factor involves z.
    pub fn den_is_z_free(&self) -> bool {
        self.den.is_z_free()
    }

    /// True when neither the numerator nor the denominator involves z.
    pub fn is_z_free(&self) -> bool {
        self.num.is_z_free() && self.den.is_z_free()
    }

    pub fn arity(&self) -> usize {
        self.num.arity()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.scalar.is_one() && self.num.is_one() && self.den.is_one()
    }

    /// True when the value is a polynomial (denominator 1).
    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        Self::sum(self.arity(), [self, other])
    }

    /// Sum over the least common denominator of all the factor lists,
    /// normalized once at the end.  Fusing a long sum this way beats a
    /// chain of pairwise adds: each numerator is brought onto the common
    /// denominator exactly once and only one cancellation pass runs.  The
    /// summands' scalars are pulled out through their rational GCD so the
    /// fused numerator is built with integer arithmetic only.
    ///
    /// Cancellation is tried only against factors whose maximal
    /// multiplicity in the common denominator is attained by at least two
    /// summands.  When a single summand attains it, every other summand is
    /// divisible by the factor and that one is coprime to it (the inputs
    /// being reduced), so the total cannot cancel against it.
    pub fn sum<'a, I>(arity: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = &'a RationalFunction>,
    {
        let kept: Vec<&RationalFunction> = terms.into_iter().filter(|t| !t.is_zero()).collect();
        match kept.len() {
            0 => return Self::zero(arity),
            1 => return kept[0].clone(),
            _ => {}
        }
        let mut lcd = Factors::one();
        for t in &kept {
            lcd = lcd.union(&t.den);
        }
        let g = scalar_gcd(kept.iter().map(|t| &t.scalar));
        let mut num = MPoly::zero(arity);
        for t in &kept {
            let t_int = &t.scalar / &g;
            num = num.add(&lcd.minus(&t.den).mul_into(t.num.scale(&t_int)));
        }
        if num.is_zero() {
            return Self::zero(arity);
        }
        let (num, content) = num.primitive_and_content();
        let mut candidates = Factors::one();
        let mut fixed = Factors::one();
        for (p, m) in &lcd.0 {
            let achievers = kept.iter().filter(|t| t.den.mult_of(p) == *m).count();
            if achievers >= 2 {
                candidates.push(p.clone(), *m);
            } else {
                fixed.push(p.clone(), *m);
            }
        }
        let (num, rest, adjust) = Self::cancel(num, candidates);
        RationalFunction {
            scalar: g * content * adjust,
            num,
            den: rest.mul(&fixed),
        }
    }

    pub fn neg(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        RationalFunction {
            scalar: -self.scalar.clone(),
            num: self.num.clone(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.arity());
        }
        // Cross-cancel each numerator against the opposite factor list;
        // the surviving parts are pairwise coprime, and products of
        // primitive polynomials are primitive.
        let (a, d, adj1) = Self::cancel(self.num.clone(), other.den.clone());
        let (c, b, adj2) = Self::cancel(other.num.clone(), self.den.clone());
        RationalFunction {
            scalar: &self.scalar * &other.scalar * adj1 * adj2,
            num: a.mul(&c),
            den: b.mul(&d),
        }
    }

    pub fn inverse(&self) -> Result<Self, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let scalar = QRat::one() / self.scalar.clone();
        let num = self.den_expanded();
        let den = if self.num.is_one() {
            Factors::one()
        } else {
            let mut d = Factors::one();
            d.push(self.num.clone(), 1);
            d
        };
        Ok(RationalFunction { scalar, num, den })
    }

    pub fn div(&self, other: &Self) -> Result<Self, AlgebraError> {
        Ok(self.mul(&other.inverse()?))
    }

    pub fn scale(&self, c: &QRat) -> Self {
        if c.is_zero() || self.is_zero() {
            return Self::zero(self.arity());
        }
        RationalFunction {
            scalar: &self.scalar * c,
            num: self.num.clone(),
            den: self.den.clone(),
        }
    }

    pub fn mul_poly(&self, p: &MPoly) -> Self {
        self.mul(&Self::from_poly(p.clone()))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one(self.arity());
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// z-degree of the numerator minus z-degree of the denominator; `None`
    /// for the zero function.
    pub fn z_order(&self) -> Option<i64> {
        let zvar = self.arity() - 1;
        let zn = i64::from(self.num.degree_in(zvar)?);
        Some(zn - self.den.z_degree(zvar))
    }

    /// True when the function tends to 0 as z → ∞.
    pub fn is_proper_in_z(&self) -> bool {
        match self.z_order() {
            None => true,
            Some(o) => o < 0,
        }
    }

    /// Splits f = polyPart + properPart: the first summand is polynomial in
    /// z (z-free denominator), the second is proper.  One pass of Euclidean
    /// division in z over the fraction field of the torus weights.
    pub fn z_split(&self) -> (RationalFunction, RationalFunction) {
        let arity = self.arity();
        let zvar = arity - 1;
        let num_z = self.num.as_univariate(zvar);
        let den_z = self.den_expanded().as_univariate(zvar);
        let dd = *den_z.keys().next_back().expect("nonzero denominator");
        let nd = match num_z.keys().next_back() {
            None => return (Self::zero(arity), Self::zero(arity)),
            Some(&d) => d,
        };
        if nd < dd {
            return (Self::zero(arity), self.clone());
        }
        // Long division with coefficients in Frac(ℚ[l]): remainder update
        // only touches the coefficients that can still matter.  The scalar
        // multiplies the quotient at the end.
        let lead_den = Self::from_poly(den_z[&dd].clone());
        let mut rem: BTreeMap<u32, RationalFunction> = num_z
            .into_iter()
            .map(|(e, p)| (e, Self::from_poly(p)))
            .collect();
        let mut quot: BTreeMap<u32, RationalFunction> = BTreeMap::new();
        let mut cur = nd;
        loop {
            let lead_rem = rem.remove(&cur).unwrap_or_else(|| Self::zero(arity));
            if cur < dd {
                rem.insert(cur, lead_rem);
                break;
            }
            if !lead_rem.is_zero() {
                let q = lead_rem.div(&lead_den).expect("nonzero leading coeff");
                for (&e, den_coeff) in &den_z {
                    if e == dd {
                        continue;
                    }
                    let target = cur - dd + e;
                    let delta = q.mul(&Self::from_poly(den_coeff.clone())).neg();
                    let entry = rem
                        .remove(&target)
                        .unwrap_or_else(|| Self::zero(arity))
                        .add(&delta);
                    if !entry.is_zero() {
                        rem.insert(target, entry);
                    }
                }
                quot.insert(cur - dd, q);
            }
            if cur == 0 {
                break;
            }
            cur -= 1;
        }
        let z = Self::from_poly(MPoly::z(arity));
        let mut poly_part = Self::zero(arity);
        for (e, c) in quot {
            poly_part = poly_part.add(&c.mul(&z.pow(e)));
        }
        let poly_part = poly_part.scale(&self.scalar);
        let proper = self.sub(&poly_part);
        debug_assert!(poly_part.den_is_z_free(), "poly part must be z-free below");
        debug_assert!(proper.is_proper_in_z(), "remainder must be proper");
        (poly_part, proper)
    }

    /// lim_{z→∞} z·f for proper f: the 1/z coefficient of the expansion at
    /// z = ∞, a rational function of the torus weights alone.
    pub fn z_inf_leading(&self) -> Result<RationalFunction, AlgebraError> {
        if !self.is_proper_in_z() {
            return Err(AlgebraError::NotProperInZ);
        }
        let arity = self.arity();
        if self.is_zero() {
            return Ok(Self::zero(arity));
        }
        let zvar = arity - 1;
        let zn = i64::from(self.num.degree_in(zvar).unwrap_or(0));
        if zn + 1 < self.den.z_degree(zvar) {
            return Ok(Self::zero(arity));
        }
        let num_lead = self
            .num
            .as_univariate(zvar)
            .remove(&(zn as u32))
            .expect("leading");
        // The z-leading coefficient of the denominator is the product of
        // the factors' z-leading coefficients, kept factored.
        let den_leads = self.den.0.iter().flat_map(|(p, m)| {
            let top = p.degree_in(zvar).unwrap_or(0);
            let lead = p
                .as_univariate(zvar)
                .remove(&top)
                .expect("nonzero factor");
            std::iter::repeat(lead).take(*m as usize)
        });
        Ok(Self::from_factored(num_lead, den_leads.collect::<Vec<_>>())?
            .scale(&self.scalar))
    }

    /// Substitutes l ↦ l − z·k in numerator and denominator.  The
    /// substitution is an automorphism, so coprimality is preserved and
    /// only the normalization of each factor has to be redone.
    pub fn lambda_shift(&self, k: &[i64]) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let num = self.num.lambda_shift(k);
        let mut scalar = self.scalar.clone();
        let mut den = Factors::one();
        for (p, m) in &self.den.0 {
            let (prim, content) = p.lambda_shift(k).primitive_and_content();
            if !content.is_one() {
                scalar /= num_pow(&content, *m);
            }
            den.push(prim, *m);
        }
        Self::make(scalar, num, den)
    }

    /// Nonequivariant limit: sets every torus weight to zero.  Fails when
    /// the denominator vanishes there.
    pub fn lambdas_to_zero(&self) -> Result<Self, AlgebraError> {
        let num = self.num.lambdas_to_zero();
        let mut factors = Vec::new();
        for (p, m) in &self.den.0 {
            let q = p.lambdas_to_zero();
            if q.is_zero() {
                return Err(AlgebraError::DivisionByZero);
            }
            for _ in 0..*m {
                factors.push(q.clone());
            }
        }
        // The limit can break coprimality, so re-reduce factor by factor.
        Ok(Self::from_factored(num, factors)?.scale(&self.scalar))
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let shown = self.num.scale(&self.scalar);
        if self.den.is_one() {
            return write!(f, "{}", shown);
        }
        let den = if self.den.0.len() == 1 && self.den.0[0].1 == 1 {
            format!("{}", self.den.0[0].0)
        } else {
            self.den
                .0
                .iter()
                .map(|(p, m)| {
                    if *m == 1 {
                        format!("({})", p)
                    } else {
                        format!("({})^{}", p, m)
                    }
                })
                .collect::<Vec<_>>()
                .join("")
        };
        if shown.num_terms() <= 1 {
            write!(f, "{}/({})", shown, den)
        } else {
            write!(f, "({})/({})", shown, den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::qrat;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn l(i: usize) -> MPoly {
        MPoly::lambda(3, i)
    }

    fn z() -> MPoly {
        MPoly::z(3)
    }

    fn rf(num: MPoly, den: MPoly) -> RationalFunction {
        RationalFunction::new(num, den).unwrap()
    }

    #[test]
    fn reduce_cancels_difference_of_squares() {
        let f = rf(l(0).pow(2).sub(&l(1).pow(2)), l(0).sub(&l(1)));
        assert!(f.is_polynomial());
        assert_eq!(f.num(), l(0).add(&l(1)));
    }

    #[test]
    fn reduce_z_over_z_is_one() {
        assert!(rf(z(), z()).is_one());
    }

    #[test]
    fn reduce_factored_quotient_is_one() {
        let num = l(0).mul(&z()).add(&z().pow(2));
        let den = z().mul(&l(0).add(&z()));
        assert!(rf(num, den).is_one());
    }

    #[test]
    fn denominator_is_normalized() {
        let f = rf(MPoly::one(3), l(0).scale(&qrat(2, 1)));
        assert_eq!(f.den_expanded(), l(0));
        assert_eq!(f.num(), MPoly::constant(3, qrat(1, 2)));
    }

    #[test]
    fn factored_and_assembled_denominators_agree() {
        let w = l(0).sub(&l(1));
        let a = RationalFunction::from_factored(
            MPoly::one(3),
            vec![w.clone(), w.add(&z()).scale(&qrat(3, 1))],
        )
        .unwrap();
        let b = rf(MPoly::one(3), w.mul(&w.add(&z())).scale(&qrat(3, 1)));
        assert_eq!(a, b);
        assert_eq!(a.den_expanded(), b.den_expanded());
        assert!(a.sub(&b).is_zero());
    }

    #[test]
    fn factored_sums_cancel_common_factors() {
        let w = l(0).sub(&l(1));
        let f1 = w.clone();
        let f2 = w.add(&z());
        let f3 = w.add(&z().scale(&qrat(2, 1)));
        // 1/(f1·f2) + 1/(f2·f3): the sum over the least common denominator
        // keeps f2 factored and cancels nothing spurious.
        let a = RationalFunction::from_factored(MPoly::one(3), vec![f1.clone(), f2.clone()])
            .unwrap();
        let b = RationalFunction::from_factored(MPoly::one(3), vec![f2.clone(), f3.clone()])
            .unwrap();
        let sum = a.add(&b);
        let expected = rf(f1.add(&f3), f1.mul(&f2).mul(&f3));
        assert_eq!(sum, expected);
        // The telescoping difference collapses to a two-factor value.
        let diff = a.sub(&b);
        let expected = rf(f3.sub(&f1), f1.mul(&f2).mul(&f3));
        assert_eq!(diff, expected);
    }

    #[test]
    fn factored_inverse_round_trips() {
        let w = l(0).sub(&l(1));
        let f = RationalFunction::from_factored(l(1).add(&z()), vec![w.clone(), w.add(&z())])
            .unwrap();
        let inv = f.inverse().unwrap();
        assert!(f.mul(&inv).is_one());
        assert_eq!(inv.inverse().unwrap(), f);
    }

    #[test]
    fn scalars_are_split_from_primitive_numerators() {
        // 6/(4λ₀): the stored numerator must be the primitive part, with
        // the whole scalar 3/2 carried separately.
        let f = rf(MPoly::from_int(3, 6), l(0).scale(&qrat(4, 1)));
        assert_eq!(f.num(), MPoly::constant(3, qrat(3, 2)));
        assert_eq!(f.den_expanded(), l(0));
        // Scaling is exact and cheap: it never touches the numerator.
        let g = f.scale(&qrat(2, 3));
        assert_eq!(g, rf(MPoly::one(3), l(0)));
    }

    #[test]
    fn fused_sum_matches_pairwise_addition() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5151);
        for _ in 0..25 {
            let parts: Vec<RationalFunction> =
                (0..4).map(|_| random_rf(&mut rng)).collect();
            let fused = RationalFunction::sum(3, parts.iter());
            let mut pairwise = RationalFunction::zero(3);
            for p in &parts {
                pairwise = pairwise.add(p);
            }
            assert_eq!(fused, pairwise);
        }
    }

    #[test]
    fn z_split_monomial_division() {
        let f = rf(z().pow(2).add(&MPoly::one(3)), z());
        let (poly, proper) = f.z_split();
        assert_eq!(poly, RationalFunction::from_poly(z()));
        assert_eq!(proper, rf(MPoly::one(3), z()));
    }

    #[test]
    fn z_split_leaves_proper_input_alone() {
        let f = rf(l(0), z().add(&l(1)));
        let (poly, proper) = f.z_split();
        assert!(poly.is_zero());
        assert_eq!(proper, f);
    }

    #[test]
    fn z_split_one_euclidean_step() {
        let w = l(0).sub(&l(1));
        let f = rf(w.add(&z()).mul(&z()).add(&MPoly::one(3)), w.add(&z()));
        let (poly, proper) = f.z_split();
        assert_eq!(poly, RationalFunction::from_poly(z()));
        assert_eq!(proper, rf(MPoly::one(3), w.add(&z())));
        assert_eq!(poly.add(&proper), f);
    }

    #[test]
    fn z_inf_leading_examples() {
        let one_over_z = rf(MPoly::one(3), z());
        assert!(one_over_z.z_inf_leading().unwrap().is_one());

        let f = rf(l(0), z().add(&l(1)));
        assert_eq!(
            f.z_inf_leading().unwrap(),
            RationalFunction::from_poly(l(0))
        );

        let g = rf(MPoly::one(3), z().mul(&l(0).sub(&l(1)).add(&z())));
        assert!(g.z_inf_leading().unwrap().is_zero());

        let improper = rf(z().pow(2), z());
        assert_eq!(improper.z_inf_leading(), Err(AlgebraError::NotProperInZ));
    }

    fn random_poly(rng: &mut ChaCha8Rng) -> MPoly {
        let n_terms = rng.gen_range(0..4);
        let mut p = MPoly::zero(3);
        for _ in 0..n_terms {
            let mono = crate::poly::Monomial((0..3).map(|_| rng.gen_range(0..2)).collect());
            let num = rng.gen_range(-5i64..=5);
            p = p.add(&MPoly::from_terms(3, [(mono, qrat(num, 1))]));
        }
        p
    }

    fn random_linear(rng: &mut ChaCha8Rng) -> MPoly {
        loop {
            let coeffs: Vec<i64> = (0..4).map(|_| rng.gen_range(-2i64..=2)).collect();
            if coeffs.iter().all(|&c| c == 0) {
                continue;
            }
            let mut p = MPoly::constant(3, qrat(coeffs[3], 1));
            for (i, &c) in coeffs[..3].iter().enumerate() {
                if c != 0 {
                    p = p.add(&MPoly::variable(3, i).scale(&qrat(c, 1)));
                }
            }
            return p;
        }
    }

    fn random_rf(rng: &mut ChaCha8Rng) -> RationalFunction {
        // Numerators are small sparse polynomials; denominators are products
        // of linear forms — the shape fixed-point localization produces.
        // Half the samples arrive factored, half assembled, so both
        // construction paths and their interplay get exercised.
        let num = random_poly(rng);
        let d1 = random_linear(rng);
        if rng.gen_bool(0.5) {
            let d2 = random_linear(rng);
            if rng.gen_bool(0.5) {
                RationalFunction::from_factored(num, vec![d1, d2]).unwrap()
            } else {
                rf(num, d1.mul(&d2))
            }
        } else {
            rf(num, d1)
        }
    }

    #[test]
    fn field_axioms_on_random_triples() {
        let mut rng = ChaCha8Rng::seed_from_u64(0xabcd);
        for _ in 0..40 {
            let a = random_rf(&mut rng);
            let b = random_rf(&mut rng);
            let c = random_rf(&mut rng);
            assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
            assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            assert_eq!(a.sub(&a), RationalFunction::zero(3));
            if !a.is_zero() {
                assert!(a.div(&a).unwrap().is_one());
            }
        }
    }

    #[test]
    fn z_split_resums_and_is_idempotent() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x2f2f);
        for _ in 0..40 {
            let f = random_rf(&mut rng);
            let (poly, proper) = f.z_split();
            assert_eq!(poly.add(&proper), f);
            assert!(poly.den_is_z_free());
            assert!(proper.is_proper_in_z());
            let (poly2, rest2) = poly.z_split();
            assert_eq!(poly2, poly);
            assert!(rest2.is_zero());
            let (poly3, proper3) = proper.z_split();
            assert!(poly3.is_zero());
            assert_eq!(proper3, proper);
        }
    }

    #[test]
    fn lambda_shift_is_field_automorphism() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x11ee);
        for _ in 0..20 {
            let a = random_rf(&mut rng);
            let b = random_rf(&mut rng);
            let k = [rng.gen_range(-2i64..=2), rng.gen_range(-2i64..=2)];
            assert_eq!(
                a.add(&b).lambda_shift(&k),
                a.lambda_shift(&k).add(&b.lambda_shift(&k))
            );
            assert_eq!(
                a.mul(&b).lambda_shift(&k),
                a.lambda_shift(&k).mul(&b.lambda_shift(&k))
            );
        }
    }
}
