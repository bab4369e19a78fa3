//! Quaternionic witness sections.
//!
//! On `ℝⁿ = ℍ^{n/4}` the canonical complex structure `J` is left
//! multiplication by `i`, and `A` (left multiplication by `j`) is an
//! orthogonal map with `A² = −Id` and `AJ = −JA`. The rank-2 projector
//! field `π(v) = (Av)(Av)ᵀ + (JAv)(JAv)ᵀ` satisfies `ι_v π = 0`,
//! `ι_{Jv} π = 0` and `[J, π(v)] = 0`; its traceless harmonic part `u`
//! realizes the norm relation `‖ι_v u‖² = 2/(n(n−2))·‖u‖²` (Eq. (5.4)
//! with complex rank r = 1).

use super::poly::Poly;
use super::section::{ESpace, PolySection};
use num_rational::BigRational;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum QuaternionicError {
    #[error("quaternionic structure needs n divisible by 4, got {0}")]
    DimensionNotDivisibleBy4(usize),
}

/// Left multiplication by `j` on `ℍ^{n/4}` in the basis
/// `(1, i, j, k)` per quaternionic block: `e_{4t} → e_{4t+2}`,
/// `e_{4t+1} → −e_{4t+3}`, `e_{4t+2} → −e_{4t}`, `e_{4t+3} → e_{4t+1}`.
/// Returns `(image index, sign)` for each basis vector.
fn quaternionic_a(i: usize) -> (usize, i64) {
    let block = i / 4;
    match i % 4 {
        0 => (4 * block + 2, 1),
        1 => (4 * block + 3, -1),
        2 => (4 * block, -1),
        _ => (4 * block + 1, 1),
    }
}

/// `(Av)` and `(JAv)` as vectors of degree-1 polynomials; `J` is the
/// canonical structure `e_{2i} → e_{2i+1}`.
fn linear_images(n: usize) -> (Vec<Poly>, Vec<Poly>) {
    let mut av = vec![Poly::zero(n); n];
    let mut jav = vec![Poly::zero(n); n];
    for col in 0..n {
        // A e_col = sign_a · e_row
        let (row, sign_a) = quaternionic_a(col);
        let term = Poly::variable(n, col).scale(&BigRational::from_integer(sign_a.into()));
        av[row] = av[row].add(&term);
        // J e_row = sign_j · e_jrow
        let (jrow, sign_j) = if row % 2 == 0 {
            (row + 1, 1i64)
        } else {
            (row - 1, -1i64)
        };
        jav[jrow] = jav[jrow].add(&term.scale(&BigRational::from_integer(sign_j.into())));
    }
    (av, jav)
}

/// The projector field `π(v) = (Av)(Av)ᵀ + (JAv)(JAv)ᵀ` as an `S²V`
/// section of polynomial degree 2.
pub fn quaternionic_projector(n: usize) -> Result<PolySection, QuaternionicError> {
    if n % 4 != 0 || n == 0 {
        return Err(QuaternionicError::DimensionNotDivisibleBy4(n));
    }
    let (av, jav) = linear_images(n);
    let mut comps = vec![Poly::zero(n); n * n];
    for a in 0..n {
        for b in 0..n {
            comps[a * n + b] = av[a].mul(&av[b]).add(&jav[a].mul(&jav[b]));
        }
    }
    Ok(PolySection::sym_matrix(n, comps))
}

/// The pure degree-2 part `u` in the decomposition
/// `π = (2/n)·|v|²·Id + u` (restricting to `π = (2/n)Id + u` on the
/// sphere). Each entry of `u` is harmonic of degree 2.
pub fn quaternionic_pure_part(n: usize) -> Result<PolySection, QuaternionicError> {
    let pi = quaternionic_projector(n)?;
    let r2 = Poly::radius_squared(n).scale(&BigRational::new(2.into(), (n as i64).into()));
    let mut id_comps = vec![Poly::zero(n); n * n];
    for a in 0..n {
        id_comps[a * n + a] = r2.clone();
    }
    let trace_part = PolySection::sym_matrix(n, id_comps);
    let u = pi.sub(&trace_part);
    debug_assert_eq!(u.space(), ESpace::S2V);
    Ok(u)
}
