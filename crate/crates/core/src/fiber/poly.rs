//! Sparse multivariate polynomials over exact rationals.
//!
//! Monomials are exponent vectors of fixed length `n` (the fiber
//! dimension); coefficients are `BigRational`. This is the coefficient
//! backend for polynomial sections on the sphere fiber: all operators
//! (gradients, Laplacians, contractions) act on homogeneous lifts and all
//! integrals route through the exact moment table.

use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// A polynomial in `v₁,…,v_n` with exact rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    n: usize,
    terms: BTreeMap<Vec<u8>, BigRational>,
}

impl Poly {
    pub fn zero(n: usize) -> Self {
        Poly {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: BigRational) -> Self {
        let mut p = Poly::zero(n);
        if !c.is_zero() {
            p.terms.insert(vec![0; n], c);
        }
        p
    }

    pub fn one(n: usize) -> Self {
        Poly::constant(n, BigRational::one())
    }

    /// The variable `vᵢ`.
    pub fn variable(n: usize, i: usize) -> Self {
        assert!(i < n);
        let mut exps = vec![0u8; n];
        exps[i] = 1;
        let mut p = Poly::zero(n);
        p.terms.insert(exps, BigRational::one());
        p
    }

    /// `|v|² = Σ vᵢ²`.
    pub fn radius_squared(n: usize) -> Self {
        let mut p = Poly::zero(n);
        for i in 0..n {
            let mut exps = vec![0u8; n];
            exps[i] = 2;
            p.terms.insert(exps, BigRational::one());
        }
        p
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Vec<u8>, BigRational)>) -> Self {
        let mut p = Poly::zero(n);
        for (exps, coeff) in terms {
            assert_eq!(exps.len(), n);
            p.add_term(&exps, coeff);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u8>, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn add_term(&mut self, exps: &[u8], coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(exps) {
            Some(c) => {
                *c += coeff;
                if c.is_zero() {
                    self.terms.remove(exps);
                }
            }
            None => {
                self.terms.insert(exps.to_vec(), coeff);
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        Poly {
            n: self.n,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, factor: &BigRational) -> Poly {
        if factor.is_zero() {
            return Poly::zero(self.n);
        }
        Poly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c * factor))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        assert_eq!(self.n, other.n);
        let mut out = Poly::zero(self.n);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exps: Vec<u8> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(&exps, ca * cb);
            }
        }
        out
    }

    /// Multiplies by the variable `vᵢ`.
    pub fn mul_var(&self, i: usize) -> Poly {
        let mut out = Poly::zero(self.n);
        for (e, c) in &self.terms {
            let mut exps = e.clone();
            exps[i] += 1;
            out.add_term(&exps, c.clone());
        }
        out
    }

    /// `∂/∂vᵢ`.
    pub fn derivative(&self, i: usize) -> Poly {
        let mut out = Poly::zero(self.n);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut exps = e.clone();
            exps[i] -= 1;
            out.add_term(&exps, c * BigRational::from_integer((e[i] as i64).into()));
        }
        out
    }

    /// Euclidean Laplacian `Δ_{ℝⁿ}`.
    pub fn laplacian(&self) -> Poly {
        let mut out = Poly::zero(self.n);
        for i in 0..self.n {
            out = out.add(&self.derivative(i).derivative(i));
        }
        out
    }

    /// Total degree (`None` for the zero polynomial).
    pub fn degree(&self) -> Option<usize> {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&x| x as usize).sum())
            .max()
    }

    /// `Some(d)` if nonzero and every monomial has total degree `d`.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut degs = self
            .terms
            .keys()
            .map(|e| e.iter().map(|&x| x as usize).sum::<usize>());
        let first = degs.next()?;
        if degs.all(|d| d == first) {
            Some(first)
        } else {
            None
        }
    }

    /// Splits into homogeneous parts, keyed by total degree.
    pub fn homogeneous_parts(&self) -> BTreeMap<usize, Poly> {
        let mut parts: BTreeMap<usize, Poly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let d: usize = e.iter().map(|&x| x as usize).sum();
            parts
                .entry(d)
                .or_insert_with(|| Poly::zero(self.n))
                .add_term(e, c.clone());
        }
        parts
    }

    pub fn eval(&self, point: &[BigRational]) -> BigRational {
        assert_eq!(point.len(), self.n);
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (i, &exp) in e.iter().enumerate() {
                for _ in 0..exp {
                    term *= &point[i];
                }
            }
            acc += term;
        }
        acc
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}")?;
            for (i, &exp) in e.iter().enumerate() {
                match exp {
                    0 => {}
                    1 => write!(f, "*v{}", i + 1)?,
                    _ => write!(f, "*v{}^{}", i + 1, exp)?,
                }
            }
        }
        Ok(())
    }
}
