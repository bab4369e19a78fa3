//! Exact scalars in the ring ℚ[√2, √3, √5, …] with decidable comparison.
//!
//! An [`ExactScalar`] is a canonical sum Σ qᵢ·√dᵢ with rational coefficients
//! qᵢ and pairwise-distinct squarefree radicands dᵢ (d₀ = 1 carries the
//! rational part). Products of radicals re-reduce to squarefree form, so the
//! representation is closed under +, −, ×, and division by nonzero elements.
//! Because the square roots of distinct squarefree integers are linearly
//! independent over ℚ, a value is zero exactly when its canonical form has no
//! terms; comparison of distinct values is decided by adaptive-precision
//! dyadic interval refinement, which must terminate.
//!
//! Nested radicals such as √(5+2√6) are not representable: the only radical
//! constructor is [`ExactScalar::sqrt_integer`], which takes a plain integer.

mod dyadic;

pub use dyadic::{Dyadic, DyadicInterval};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use thiserror::Error;

/// Trichotomy verdict of [`ExactScalar::compare`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Ordering3 {
    Less,
    Equal,
    Greater,
}

impl From<Ordering> for Ordering3 {
    fn from(o: Ordering) -> Self {
        match o {
            Ordering::Less => Ordering3::Less,
            Ordering::Equal => Ordering3::Equal,
            Ordering::Greater => Ordering3::Greater,
        }
    }
}

impl fmt::Display for Ordering3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ordering3::Less => write!(f, "less"),
            Ordering3::Equal => write!(f, "equal"),
            Ordering3::Greater => write!(f, "greater"),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExactError {
    #[error("division by zero")]
    DivisionByZero,
}

/// Canonical element of ℚ + Σ ℚ·√d, d squarefree. Structural equality
/// coincides with numerical equality because the representation is canonical.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactScalar {
    /// radicand (squarefree, `1` for the rational part) → nonzero coefficient
    terms: BTreeMap<u64, BigRational>,
}

/// Splits `m` as `s²·d` with `d` squarefree; returns `(s, d)`.
fn squarefree_decompose(m: u64) -> (u64, u64) {
    if m == 0 {
        return (0, 1);
    }
    let mut rest = m;
    let mut square = 1u64;
    let mut free = 1u64;
    let mut p = 2u64;
    while p * p <= rest {
        if rest % p == 0 {
            let mut e = 0u32;
            while rest % p == 0 {
                rest /= p;
                e += 1;
            }
            square *= p.pow(e / 2);
            if e % 2 == 1 {
                free *= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    free *= rest; // leftover prime
    (square, free)
}

/// Smallest prime factor of `m ≥ 2`.
fn smallest_prime_factor(m: u64) -> u64 {
    if m % 2 == 0 {
        return 2;
    }
    let mut p = 3u64;
    while p * p <= m {
        if m % p == 0 {
            return p;
        }
        p += 2;
    }
    m
}

impl ExactScalar {
    pub fn zero() -> Self {
        ExactScalar {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        ExactScalar::from_integer(1)
    }

    pub fn from_integer(n: i64) -> Self {
        ExactScalar::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(q: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !q.is_zero() {
            terms.insert(1, q);
        }
        ExactScalar { terms }
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        ExactScalar::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// `√m` for a nonnegative integer `m`, reduced to `s·√d` with `d`
    /// squarefree.
    pub fn sqrt_integer(m: u64) -> Self {
        let (s, d) = squarefree_decompose(m);
        if s == 0 {
            return ExactScalar::zero();
        }
        let coeff = BigRational::from_integer(BigInt::from(s));
        let mut terms = BTreeMap::new();
        terms.insert(d, coeff);
        ExactScalar { terms }
    }

    /// `q·√m`.
    pub fn sqrt_with_coeff(q: BigRational, m: u64) -> Self {
        &ExactScalar::from_rational(q) * &ExactScalar::sqrt_integer(m)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Some(q)` when the value is rational.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.terms.is_empty() {
            return Some(BigRational::zero());
        }
        if self.terms.len() == 1 {
            if let Some(q) = self.terms.get(&1) {
                return Some(q.clone());
            }
        }
        None
    }

    /// Radicands appearing with nonzero coefficient (including 1).
    pub fn radicands(&self) -> impl Iterator<Item = u64> + '_ {
        self.terms.keys().copied()
    }

    pub fn coefficient(&self, radicand: u64) -> BigRational {
        self.terms
            .get(&radicand)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    fn insert_term(terms: &mut BTreeMap<u64, BigRational>, d: u64, q: BigRational) {
        if q.is_zero() {
            return;
        }
        match terms.entry(d) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(q);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + q;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add_ref(&self, other: &ExactScalar) -> ExactScalar {
        let mut terms = self.terms.clone();
        for (d, q) in &other.terms {
            Self::insert_term(&mut terms, *d, q.clone());
        }
        ExactScalar { terms }
    }

    pub fn neg_ref(&self) -> ExactScalar {
        ExactScalar {
            terms: self.terms.iter().map(|(d, q)| (*d, -q)).collect(),
        }
    }

    pub fn mul_ref(&self, other: &ExactScalar) -> ExactScalar {
        let mut terms = BTreeMap::new();
        for (d1, q1) in &self.terms {
            for (d2, q2) in &other.terms {
                // √d1·√d2 = g·√(d1' d2') with g = gcd(d1,d2); the product of
                // coprime squarefree integers is squarefree.
                let g = d1.gcd(d2);
                let d = (d1 / g) * (d2 / g);
                let q = q1 * q2 * BigRational::from_integer(BigInt::from(g));
                Self::insert_term(&mut terms, d, q);
            }
        }
        ExactScalar { terms }
    }

    pub fn square(&self) -> ExactScalar {
        self.mul_ref(self)
    }

    pub fn scale(&self, q: &BigRational) -> ExactScalar {
        if q.is_zero() {
            return ExactScalar::zero();
        }
        ExactScalar {
            terms: self.terms.iter().map(|(d, c)| (*d, c * q)).collect(),
        }
    }

    /// Multiplicative inverse by recursive conjugation: pick a prime `p`
    /// dividing some radicand, split `x = a + √p·b` where `a`, `b` involve
    /// only radicands coprime to `p`, and use
    /// `1/x = (a − √p·b) / (a² − p·b²)`; the denominator involves one prime
    /// fewer, so the recursion bottoms out in a plain rational.
    pub fn inverse(&self) -> Result<ExactScalar, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(ExactScalar::from_rational(q.recip()));
        }
        let p = self
            .terms
            .keys()
            .filter(|d| **d > 1)
            .map(|d| smallest_prime_factor(*d))
            .min()
            .expect("non-rational value has a radicand > 1");
        let mut a = BTreeMap::new();
        let mut b = BTreeMap::new();
        for (d, q) in &self.terms {
            if d % p == 0 {
                Self::insert_term(&mut b, d / p, q.clone());
            } else {
                Self::insert_term(&mut a, *d, q.clone());
            }
        }
        let a = ExactScalar { terms: a };
        let b = ExactScalar { terms: b };
        let sqrt_p = ExactScalar::sqrt_integer(p);
        // a² − p·b² = (a + √p·b)(a − √p·b); nonzero because a − √p·b = 0
        // would force both a and b to vanish (their radicand supports are
        // disjoint across the √p split), contradicting x ≠ 0.
        let denom = a
            .square()
            .add_ref(&b.square().scale(&BigRational::from_integer(BigInt::from(p))).neg_ref());
        let conj = a.add_ref(&sqrt_p.mul_ref(&b).neg_ref());
        Ok(conj.mul_ref(&denom.inverse()?))
    }

    /// Sound enclosure of the value at the given precision.
    pub fn eval_interval(&self, precision_bits: u32) -> DyadicInterval {
        let mut acc = DyadicInterval::zero(precision_bits);
        for (d, q) in &self.terms {
            let term = if *d == 1 {
                DyadicInterval::from_rational(q, precision_bits)
            } else {
                DyadicInterval::sqrt_integer(*d, precision_bits).scale(q)
            };
            acc = acc.add(&term);
        }
        acc
    }

    /// Decidable three-way comparison. Equality is decided by exact
    /// cancellation of the canonical forms; strict orderings by interval
    /// refinement starting at 64 bits and doubling, which terminates because
    /// square roots of distinct squarefree integers are ℚ-linearly
    /// independent, so a nonzero difference has nonzero value.
    pub fn compare(&self, other: &ExactScalar) -> Ordering3 {
        let diff = self.add_ref(&other.neg_ref());
        if diff.is_zero() {
            return Ordering3::Equal;
        }
        let mut precision = 64u32;
        loop {
            let iv = diff.eval_interval(precision);
            match iv.certified_sign() {
                Some(Ordering::Greater) => return Ordering3::Greater,
                Some(Ordering::Less) => return Ordering3::Less,
                Some(Ordering::Equal) => unreachable!("nonzero difference"),
                None => {
                    assert!(precision < 1 << 24, "interval refinement diverged");
                    precision *= 2;
                }
            }
        }
    }

    pub fn sign(&self) -> Ordering3 {
        self.compare(&ExactScalar::zero())
    }

    pub fn is_positive(&self) -> bool {
        self.sign() == Ordering3::Greater
    }

    /// Enclosure refined until its relative width is below `2^-60`, suitable
    /// for decimal rendering and float export.
    fn tight_interval(&self) -> Option<DyadicInterval> {
        if self.is_zero() {
            return None;
        }
        let mut precision = 64u32;
        loop {
            let iv = self.eval_interval(precision);
            let lo = iv.lower().to_rational();
            let hi = iv.upper().to_rational();
            let mag = lo.abs().min(hi.abs());
            if iv.certified_sign().is_some()
                && iv.width() * BigRational::from_integer(BigInt::one() << 60) < mag
            {
                return Some(iv);
            }
            assert!(precision < 1 << 24, "interval refinement diverged");
            precision *= 2;
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self.tight_interval() {
            None => 0.0,
            Some(iv) => iv.midpoint_f64(),
        }
    }

    /// Decimal rendering with 12 significant digits (correctly rounded from
    /// an enclosure of relative width `< 2^-60`).
    pub fn decimal_string(&self) -> String {
        const DIGITS: i64 = 12;
        let iv = match self.tight_interval() {
            None => return "0".to_string(),
            Some(iv) => iv,
        };
        let mid = (iv.lower().to_rational() + iv.upper().to_rational())
            / BigRational::from_integer(BigInt::from(2));
        let negative = mid.is_negative();
        let v = mid.abs();
        // decimal exponent e with 10^e ≤ v < 10^{e+1}
        let ten = BigRational::from_integer(BigInt::from(10));
        let mut e: i64 = 0;
        let mut scaled = v.clone();
        while scaled >= ten {
            scaled /= &ten;
            e += 1;
        }
        while scaled < BigRational::one() {
            scaled *= &ten;
            e -= 1;
        }
        // round to DIGITS significant digits
        let shift = DIGITS - 1 - e;
        let factor = if shift >= 0 {
            BigRational::from_integer(BigInt::from(10).pow(shift as u32))
        } else {
            BigRational::new(BigInt::one(), BigInt::from(10).pow((-shift) as u32))
        };
        let mut digits = (&v * &factor + BigRational::new(BigInt::one(), BigInt::from(2)))
            .floor()
            .to_integer();
        let mut e = e;
        let cap = BigInt::from(10).pow(DIGITS as u32);
        if digits >= cap {
            digits /= 10;
            e += 1;
        }
        let ds = digits.to_string();
        debug_assert_eq!(ds.len() as i64, DIGITS);
        let sign = if negative { "-" } else { "" };
        if (0..DIGITS).contains(&e) {
            let (int_part, frac_part) = ds.split_at((e + 1) as usize);
            format!("{sign}{int_part}.{frac_part}")
        } else if (-4..0).contains(&e) {
            let zeros = "0".repeat((-e - 1) as usize);
            format!("{sign}0.{zeros}{ds}")
        } else {
            let (head, tail) = ds.split_at(1);
            format!("{sign}{head}.{tail}e{e}")
        }
    }

    /// Exact radical expression, e.g. `3/7 + 2*sqrt(5)`.
    pub fn radical_string(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (d, q)) in self.terms.iter().enumerate() {
            let (sign, mag) = if q.is_negative() {
                ("-", -q)
            } else {
                ("+", q.clone())
            };
            if i == 0 {
                if sign == "-" {
                    out.push_str("-");
                }
            } else {
                out.push_str(&format!(" {sign} "));
            }
            if *d == 1 {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&format!("sqrt({d})"));
            } else {
                out.push_str(&format!("{mag}*sqrt({d})"));
            }
        }
        out
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.radical_string())
    }
}

impl From<i64> for ExactScalar {
    fn from(n: i64) -> Self {
        ExactScalar::from_integer(n)
    }
}

impl From<BigRational> for ExactScalar {
    fn from(q: BigRational) -> Self {
        ExactScalar::from_rational(q)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $impl:ident) => {
        impl $trait for &ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: &ExactScalar) -> ExactScalar {
                self.$impl(rhs)
            }
        }
        impl $trait for ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: ExactScalar) -> ExactScalar {
                (&self).$impl(&rhs)
            }
        }
        impl $trait<&ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: &ExactScalar) -> ExactScalar {
                (&self).$impl(rhs)
            }
        }
    };
}

fn sub_impl(a: &ExactScalar, b: &ExactScalar) -> ExactScalar {
    a.add_ref(&b.neg_ref())
}

fn div_impl(a: &ExactScalar, b: &ExactScalar) -> ExactScalar {
    a.mul_ref(&b.inverse().expect("division by zero ExactScalar"))
}

impl ExactScalar {
    fn sub_ref(&self, other: &ExactScalar) -> ExactScalar {
        sub_impl(self, other)
    }
    fn div_ref(&self, other: &ExactScalar) -> ExactScalar {
        div_impl(self, other)
    }
}

binop!(Add, add, add_ref);
binop!(Sub, sub, sub_ref);
binop!(Mul, mul, mul_ref);
binop!(Div, div, div_ref);

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        self.neg_ref()
    }
}

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        self.neg_ref()
    }
}

/// Free-function form of [`ExactScalar::compare`].
pub fn exact_compare(a: &ExactScalar, b: &ExactScalar) -> Ordering3 {
    a.compare(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn squarefree_decomposition() {
        assert_eq!(squarefree_decompose(1), (1, 1));
        assert_eq!(squarefree_decompose(8), (2, 2));
        assert_eq!(squarefree_decompose(49), (7, 1));
        assert_eq!(squarefree_decompose(616), (2, 154)); // 616 = 4·154
        assert_eq!(squarefree_decompose(720), (12, 5));
    }

    #[test]
    fn sixteen_sqrt_two_is_less_than_sixty_eight_thirds() {
        let lhs = ExactScalar::sqrt_with_coeff(rat(16, 1), 2);
        let rhs = ExactScalar::from_rational(rat(68, 3));
        assert_eq!(exact_compare(&lhs, &rhs), Ordering3::Less);
    }

    #[test]
    fn sixty_four_over_sqrt_three_is_less_than_thirty_seven() {
        let lhs = ExactScalar::from_integer(64) / ExactScalar::sqrt_integer(3);
        let rhs = ExactScalar::from_integer(37);
        assert_eq!(exact_compare(&lhs, &rhs), Ordering3::Less);
        // sanity: 64/√3 = 64√3/3
        assert_eq!(lhs, ExactScalar::sqrt_with_coeff(rat(64, 3), 3));
    }

    #[test]
    fn identity_comparison_is_equal_by_cancellation() {
        let x = ExactScalar::from_rational(rat(3, 7)) + ExactScalar::sqrt_with_coeff(rat(2, 1), 5);
        assert_eq!(exact_compare(&x, &x.clone()), Ordering3::Equal);
    }

    #[test]
    fn product_of_radicals_reduces_to_squarefree_form() {
        let a = ExactScalar::sqrt_integer(6);
        let b = ExactScalar::sqrt_integer(10);
        // √6·√10 = 2√15
        assert_eq!(&a * &b, ExactScalar::sqrt_with_coeff(rat(2, 1), 15));
        // √2·√2 = 2
        let s2 = ExactScalar::sqrt_integer(2);
        assert_eq!(s2.square(), ExactScalar::from_integer(2));
    }

    #[test]
    fn inverse_of_multi_radical_value() {
        // x = 1 + √2 + √3; check x · x⁻¹ = 1 exactly.
        let x = ExactScalar::one() + ExactScalar::sqrt_integer(2) + ExactScalar::sqrt_integer(3);
        let inv = x.inverse().unwrap();
        assert_eq!(&x * &inv, ExactScalar::one());
    }

    #[test]
    fn inverse_of_zero_is_an_error() {
        assert_eq!(
            ExactScalar::zero().inverse(),
            Err(ExactError::DivisionByZero)
        );
    }

    #[test]
    fn close_comparison_forces_refinement() {
        // √2 vs a convergent of its continued fraction: 665857/470832
        // agrees with √2 to ~3·10⁻¹³.
        let conv = ExactScalar::from_rational(rat(665_857, 470_832));
        let s2 = ExactScalar::sqrt_integer(2);
        assert_eq!(exact_compare(&s2, &conv), Ordering3::Less);
        assert_eq!(exact_compare(&conv, &s2), Ordering3::Greater);
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(ExactScalar::zero().decimal_string(), "0");
        assert_eq!(
            ExactScalar::sqrt_integer(2).decimal_string(),
            "1.41421356237"
        );
        assert_eq!(ExactScalar::from_integer(37).decimal_string(), "37.0000000000");
        assert_eq!(ExactScalar::ratio(-1, 4).decimal_string(), "-0.250000000000");
    }

    #[test]
    fn radical_rendering() {
        let x = ExactScalar::from_rational(rat(3, 7)) + ExactScalar::sqrt_with_coeff(rat(2, 1), 5);
        assert_eq!(x.radical_string(), "3/7 + 2*sqrt(5)");
        let y = ExactScalar::sqrt_integer(3) - ExactScalar::from_integer(2);
        assert_eq!(y.radical_string(), "-2 + sqrt(3)");
    }

    #[test]
    fn enclosure_contains_rational_values() {
        let q = rat(-355, 113);
        let x = ExactScalar::from_rational(q.clone());
        for p in [16u32, 64, 256] {
            assert!(x.eval_interval(p).contains_rational(&q));
        }
    }
}
