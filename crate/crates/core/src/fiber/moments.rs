//! Exact moments of monomials on the unit sphere `S^{n−1}`.
//!
//! The measure is normalized to total mass 1. With respect to the
//! unnormalized round measure every identity verified downstream differs
//! by the same global constant on both sides, so normalization is a free
//! choice; it keeps all moments rational:
//! `∫ v^α = Π_i (αᵢ−1)!! / Π_{j=0}^{s−1} (n+2j)` with `s = |α|/2`, zero
//! whenever any `αᵢ` is odd.

use super::poly::Poly;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Double factorial `(m)!! = m(m−2)(m−4)⋯`, with `(−1)!! = 1`.
fn double_factorial(m: i64) -> BigRational {
    let mut acc = BigRational::one();
    let mut k = m;
    while k > 1 {
        acc *= BigRational::from_integer(k.into());
        k -= 2;
    }
    acc
}

/// Normalized moment `∫_{S^{n−1}} v^α` for the exponent vector `alpha`.
pub fn sphere_moment(n: usize, alpha: &[u8]) -> BigRational {
    assert_eq!(alpha.len(), n);
    if alpha.iter().any(|&a| a % 2 == 1) {
        return BigRational::zero();
    }
    let total: usize = alpha.iter().map(|&a| a as usize).sum();
    let s = total / 2;
    let mut num = BigRational::one();
    for &a in alpha {
        if a >= 2 {
            num *= double_factorial(a as i64 - 1);
        }
    }
    let mut den = BigRational::one();
    for j in 0..s {
        den *= BigRational::from_integer(((n + 2 * j) as i64).into());
    }
    num / den
}

/// Exact normalized integral of a polynomial over `S^{n−1}`.
pub fn sphere_integrate(p: &Poly) -> BigRational {
    let n = p.nvars();
    let mut acc = BigRational::zero();
    for (exps, coeff) in p.terms() {
        let m = sphere_moment(n, exps);
        if !m.is_zero() {
            acc += coeff * m;
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn constant_integrates_to_one() {
        assert_eq!(sphere_integrate(&Poly::one(7)), rat(1, 1));
    }

    #[test]
    fn second_moment_is_one_over_n() {
        for n in [2usize, 4, 8, 11] {
            let v1sq = Poly::variable(n, 0).mul(&Poly::variable(n, 0));
            assert_eq!(sphere_integrate(&v1sq), rat(1, n as i64));
        }
    }

    #[test]
    fn mixed_fourth_moment() {
        let n = 6;
        let p = Poly::variable(n, 0)
            .mul(&Poly::variable(n, 0))
            .mul(&Poly::variable(n, 1))
            .mul(&Poly::variable(n, 1));
        assert_eq!(sphere_integrate(&p), rat(1, (n * (n + 2)) as i64));
    }

    #[test]
    fn pure_fourth_moment() {
        let n = 4;
        let v = Poly::variable(n, 0);
        let p = v.mul(&v).mul(&v).mul(&v);
        assert_eq!(sphere_integrate(&p), rat(3, (n * (n + 2)) as i64));
    }

    #[test]
    fn odd_moments_vanish() {
        let n = 3;
        let p = Poly::variable(n, 0).mul(&Poly::variable(n, 1)).mul(&Poly::variable(n, 1));
        assert!(sphere_integrate(&p).is_zero());
    }

    #[test]
    fn radius_squared_integrates_to_one() {
        // Σ ∫vᵢ² = n·(1/n) = 1: consistency of the moment normalization.
        assert_eq!(sphere_integrate(&Poly::radius_squared(9)), rat(1, 1));
    }

    #[test]
    fn sixth_moment_closed_form() {
        // ∫v₁⁶ = 5!!/ (n(n+2)(n+4)) = 15/(n(n+2)(n+4)).
        let n = 5i64;
        let v = Poly::variable(5, 0);
        let p = v.mul(&v).mul(&v).mul(&v).mul(&v).mul(&v);
        assert_eq!(sphere_integrate(&p), rat(15, n * (n + 2) * (n + 4)));
    }
}
