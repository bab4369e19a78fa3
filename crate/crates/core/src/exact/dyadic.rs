//! Arbitrary-precision dyadic numbers and outward-rounded intervals.
//!
//! A [`Dyadic`] is `mantissa * 2^exp`. Addition and multiplication are exact
//! (the dyadics form a ring); only conversion from a general rational and
//! integer square roots round, and those always round outward when used
//! through [`DyadicInterval`]. Refining the precision of an enclosure never
//! widens it.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dyadic {
    mantissa: BigInt,
    exp: i64,
}

impl Dyadic {
    pub fn new(mantissa: BigInt, exp: i64) -> Self {
        let mut d = Dyadic { mantissa, exp };
        d.normalize();
        d
    }

    pub fn zero() -> Self {
        Dyadic {
            mantissa: BigInt::zero(),
            exp: 0,
        }
    }

    pub fn from_bigint(m: BigInt) -> Self {
        Dyadic::new(m, 0)
    }

    fn normalize(&mut self) {
        if self.mantissa.is_zero() {
            self.exp = 0;
            return;
        }
        let tz = self.mantissa.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            self.mantissa >>= tz;
            self.exp += tz as i64;
        }
    }

    /// Largest dyadic with denominator `2^precision` that is `<= q`.
    pub fn from_rational_floor(q: &BigRational, precision: u32) -> Self {
        let scaled = q * BigRational::from_integer(BigInt::one() << precision);
        Dyadic::new(scaled.floor().to_integer(), -(precision as i64))
    }

    /// Smallest dyadic with denominator `2^precision` that is `>= q`.
    pub fn from_rational_ceil(q: &BigRational, precision: u32) -> Self {
        let scaled = q * BigRational::from_integer(BigInt::one() << precision);
        Dyadic::new(scaled.ceil().to_integer(), -(precision as i64))
    }

    pub fn to_rational(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(&self.mantissa << self.exp as u64)
        } else {
            BigRational::new(self.mantissa.clone(), BigInt::one() << (-self.exp) as u64)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn sign(&self) -> Ordering {
        self.mantissa.cmp(&BigInt::zero())
    }

    pub fn add(&self, other: &Dyadic) -> Dyadic {
        let exp = self.exp.min(other.exp);
        let a = &self.mantissa << (self.exp - exp) as u64;
        let b = &other.mantissa << (other.exp - exp) as u64;
        Dyadic::new(a + b, exp)
    }

    pub fn neg(&self) -> Dyadic {
        Dyadic {
            mantissa: -&self.mantissa,
            exp: self.exp,
        }
    }

    pub fn mul(&self, other: &Dyadic) -> Dyadic {
        Dyadic::new(&self.mantissa * &other.mantissa, self.exp + other.exp)
    }

    pub fn to_f64(&self) -> f64 {
        let m: f64 = match i64::try_from(&self.mantissa) {
            Ok(v) => v as f64,
            Err(_) => {
                // reduce to ~64 significant bits first
                let bits = self.mantissa.bits() as i64;
                let shift = bits - 63;
                let reduced = &self.mantissa >> shift as u64;
                return Dyadic::new(reduced, self.exp + shift).to_f64();
            }
        };
        m * 2f64.powi(self.exp.clamp(-2000, 2000) as i32)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let exp = self.exp.min(other.exp);
        let a = &self.mantissa << (self.exp - exp) as u64;
        let b = &other.mantissa << (other.exp - exp) as u64;
        a.cmp(&b)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*2^{}", self.mantissa, self.exp)
    }
}

/// A closed interval `[lower, upper]` of dyadic numbers. Every operation is
/// an enclosure of the exact operation on real numbers.
#[derive(Debug, Clone)]
pub struct DyadicInterval {
    lower: Dyadic,
    upper: Dyadic,
    precision_bits: u32,
}

impl DyadicInterval {
    pub fn point(d: Dyadic, precision_bits: u32) -> Self {
        DyadicInterval {
            lower: d.clone(),
            upper: d,
            precision_bits,
        }
    }

    pub fn zero(precision_bits: u32) -> Self {
        DyadicInterval::point(Dyadic::zero(), precision_bits)
    }

    pub fn from_rational(q: &BigRational, precision_bits: u32) -> Self {
        DyadicInterval {
            lower: Dyadic::from_rational_floor(q, precision_bits),
            upper: Dyadic::from_rational_ceil(q, precision_bits),
            precision_bits,
        }
    }

    /// Enclosure of `sqrt(d)` for a nonnegative integer `d`.
    pub fn sqrt_integer(d: u64, precision_bits: u32) -> Self {
        let p = precision_bits;
        let scaled = BigInt::from(d) << (2 * p) as u64;
        let s = scaled.sqrt();
        let exact = (&s * &s) == scaled;
        let lower = Dyadic::new(s.clone(), -(p as i64));
        let upper = if exact {
            lower.clone()
        } else {
            Dyadic::new(s + 1, -(p as i64))
        };
        DyadicInterval {
            lower,
            upper,
            precision_bits: p,
        }
    }

    pub fn lower(&self) -> &Dyadic {
        &self.lower
    }

    pub fn upper(&self) -> &Dyadic {
        &self.upper
    }

    pub fn precision_bits(&self) -> u32 {
        self.precision_bits
    }

    pub fn add(&self, other: &DyadicInterval) -> DyadicInterval {
        DyadicInterval {
            lower: self.lower.add(&other.lower),
            upper: self.upper.add(&other.upper),
            precision_bits: self.precision_bits.min(other.precision_bits),
        }
    }

    pub fn neg(&self) -> DyadicInterval {
        DyadicInterval {
            lower: self.upper.neg(),
            upper: self.lower.neg(),
            precision_bits: self.precision_bits,
        }
    }

    pub fn mul(&self, other: &DyadicInterval) -> DyadicInterval {
        let candidates = [
            self.lower.mul(&other.lower),
            self.lower.mul(&other.upper),
            self.upper.mul(&other.lower),
            self.upper.mul(&other.upper),
        ];
        let lower = candidates.iter().min().unwrap().clone();
        let upper = candidates.iter().max().unwrap().clone();
        DyadicInterval {
            lower,
            upper,
            precision_bits: self.precision_bits.min(other.precision_bits),
        }
    }

    /// Exact scaling by a rational, with endpoints rounded outward.
    pub fn scale(&self, q: &BigRational) -> DyadicInterval {
        let p = self.precision_bits;
        let (a, b) = (
            self.lower.to_rational() * q,
            self.upper.to_rational() * q,
        );
        let (lo, hi) = if q.is_negative() { (b, a) } else { (a, b) };
        DyadicInterval {
            lower: Dyadic::from_rational_floor(&lo, p),
            upper: Dyadic::from_rational_ceil(&hi, p),
            precision_bits: p,
        }
    }

    pub fn contains_rational(&self, q: &BigRational) -> bool {
        self.lower.to_rational() <= *q && *q <= self.upper.to_rational()
    }

    /// `Some(sign)` if the interval certifies a sign: entirely positive,
    /// entirely negative, or the exact point zero.
    pub fn certified_sign(&self) -> Option<Ordering> {
        if self.lower.sign() == Ordering::Greater {
            Some(Ordering::Greater)
        } else if self.upper.sign() == Ordering::Less {
            Some(Ordering::Less)
        } else if self.lower.is_zero() && self.upper.is_zero() {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    pub fn width(&self) -> BigRational {
        self.upper.to_rational() - self.lower.to_rational()
    }

    pub fn midpoint_f64(&self) -> f64 {
        0.5 * (self.lower.to_f64() + self.upper.to_f64())
    }
}
