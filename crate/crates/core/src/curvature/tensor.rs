//! Dense `(4,0)` curvature tensors, generic over the scalar type.
//!
//! The float instantiation backs the random generator and the optimizer;
//! the exact rational instantiation backs the identity checks, so every
//! float-path assertion has an exact-path counterpart where the inputs are
//! rational.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::ops::{Add, Mul, Neg, Sub};

/// Scalar requirements for tensor components.
pub trait TensorScalar:
    Clone
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn from_i64(v: i64) -> Self;
    /// The constant 1/4 (exact in both instantiations; `G` has
    /// quarter-integer components).
    fn quarter() -> Self;
    /// `1/v` for a nonzero integer (projection normalizers like 1/p!).
    fn recip_of(v: i64) -> Self;
    /// Absolute value as `f64`, used only for residual reporting.
    fn magnitude(&self) -> f64;
}

impl TensorScalar for f64 {
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn quarter() -> Self {
        0.25
    }
    fn recip_of(v: i64) -> Self {
        1.0 / v as f64
    }
    fn magnitude(&self) -> f64 {
        self.abs()
    }
}

impl TensorScalar for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(v.into())
    }
    fn quarter() -> Self {
        BigRational::new(1.into(), 4.into())
    }
    fn recip_of(v: i64) -> Self {
        BigRational::new(1.into(), v.into())
    }
    fn magnitude(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let num = self.numer().to_string().parse::<f64>().unwrap_or(f64::MAX);
        let den = self.denom().to_string().parse::<f64>().unwrap_or(1.0);
        (num / den).abs()
    }
}

/// The canonical complex structure on ℝⁿ (n even): block-diagonal 2×2
/// rotations, `J e_{2i} = e_{2i+1}`, `J e_{2i+1} = −e_{2i}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ComplexStructure {
    n: usize,
}

impl ComplexStructure {
    pub fn canonical(n: usize) -> Self {
        assert!(n >= 2 && n % 2 == 0, "complex structure needs even n >= 2");
        ComplexStructure { n }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// `J e_i = sign · e_j`; returns `(j, sign)`.
    pub fn image_of_basis(&self, i: usize) -> (usize, i64) {
        if i % 2 == 0 {
            (i + 1, 1)
        } else {
            (i - 1, -1)
        }
    }

    /// Matrix entry `J_{ij} = ⟨e_i, J e_j⟩`.
    pub fn entry(&self, i: usize, j: usize) -> i64 {
        let (row, sign) = self.image_of_basis(j);
        if row == i {
            sign
        } else {
            0
        }
    }

    /// Applies `J` to a coordinate vector.
    pub fn apply<S: TensorScalar>(&self, x: &[S]) -> Vec<S> {
        let mut out = vec![S::zero(); self.n];
        for (j, xj) in x.iter().enumerate() {
            let (i, sign) = self.image_of_basis(j);
            out[i] = if sign >= 0 {
                xj.clone()
            } else {
                -(xj.clone())
            };
        }
        out
    }
}

/// Dense `(4,0)` tensor `R(i,j,k,l)` on ℝⁿ.
#[derive(Debug, Clone, PartialEq)]
pub struct CurvatureTensor<S> {
    n: usize,
    components: Vec<S>,
}

impl<S: TensorScalar> CurvatureTensor<S> {
    pub fn zeros(n: usize) -> Self {
        CurvatureTensor {
            n,
            components: vec![S::zero(); n * n * n * n],
        }
    }

    pub fn from_components(n: usize, components: Vec<S>) -> Self {
        assert_eq!(components.len(), n * n * n * n);
        CurvatureTensor { n, components }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    fn idx(&self, i: usize, j: usize, k: usize, l: usize) -> usize {
        ((i * self.n + j) * self.n + k) * self.n + l
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize, l: usize) -> &S {
        &self.components[self.idx(i, j, k, l)]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, k: usize, l: usize, value: S) {
        let idx = self.idx(i, j, k, l);
        self.components[idx] = value;
    }

    pub fn components(&self) -> &[S] {
        &self.components
    }

    pub fn components_mut(&mut self) -> &mut [S] {
        &mut self.components
    }

    pub fn map(&self, f: impl Fn(&S) -> S) -> Self {
        CurvatureTensor {
            n: self.n,
            components: self.components.iter().map(f).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        CurvatureTensor {
            n: self.n,
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        CurvatureTensor {
            n: self.n,
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }

    pub fn scale(&self, factor: &S) -> Self {
        self.map(|c| c.clone() * factor.clone())
    }

    /// Full multilinear evaluation `R(X,Y,Z,W)`.
    pub fn eval(&self, x: &[S], y: &[S], z: &[S], w: &[S]) -> S {
        let n = self.n;
        let mut acc = S::zero();
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y[j].is_zero() {
                    continue;
                }
                let xy = x[i].clone() * y[j].clone();
                for k in 0..n {
                    if z[k].is_zero() {
                        continue;
                    }
                    let xyz = xy.clone() * z[k].clone();
                    for l in 0..n {
                        if w[l].is_zero() {
                            continue;
                        }
                        acc = acc
                            + self.get(i, j, k, l).clone() * xyz.clone() * w[l].clone();
                    }
                }
            }
        }
        acc
    }

    /// Unnormalized sectional value `R̄(X,Y) = R(X,Y,Y,X)`.
    pub fn sectional(&self, x: &[S], y: &[S]) -> S {
        self.eval(x, y, y, x)
    }

    /// Holomorphic sectional value `H(X) = R(X,JX,JX,X)`.
    pub fn holomorphic(&self, j: &ComplexStructure, x: &[S]) -> S {
        let jx = j.apply(x);
        self.eval(x, &jx, &jx, x)
    }

    /// The skew-symmetric endomorphism `R(X,Y)` as a matrix `M` with
    /// `M[w][z] = ⟨R(X,Y) e_z, e_w⟩ = R(X,Y,e_z,e_w)`.
    pub fn endomorphism(&self, x: &[S], y: &[S]) -> Vec<Vec<S>> {
        let n = self.n;
        let mut m = vec![vec![S::zero(); n]; n];
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y[j].is_zero() {
                    continue;
                }
                let xy = x[i].clone() * y[j].clone();
                for k in 0..n {
                    for l in 0..n {
                        m[l][k] = m[l][k].clone()
                            + self.get(i, j, k, l).clone() * xy.clone();
                    }
                }
            }
        }
        m
    }

    /// Largest violation of antisymmetry in `(1,2)` and `(3,4)` and of the
    /// pair symmetry, as a float magnitude.
    pub fn symmetry_residual(&self) -> f64 {
        let n = self.n;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let r = self.get(i, j, k, l).clone();
                        let anti12 = r.clone() + self.get(j, i, k, l).clone();
                        let anti34 = r.clone() + self.get(i, j, l, k).clone();
                        let pair = r - self.get(k, l, i, j).clone();
                        worst = worst
                            .max(anti12.magnitude())
                            .max(anti34.magnitude())
                            .max(pair.magnitude());
                    }
                }
            }
        }
        worst
    }

    /// Largest violation of the first Bianchi identity
    /// `R(i,j,k,l) + R(j,k,i,l) + R(k,i,j,l)`.
    pub fn bianchi_residual(&self) -> f64 {
        let n = self.n;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let s = self.get(i, j, k, l).clone()
                            + self.get(j, k, i, l).clone()
                            + self.get(k, i, j, l).clone();
                        worst = worst.max(s.magnitude());
                    }
                }
            }
        }
        worst
    }

    /// Largest violation of `R(JX,JY,Z,W) = R(X,Y,Z,W)` on basis vectors.
    pub fn kahler_residual(&self, jay: &ComplexStructure) -> f64 {
        let n = self.n;
        let mut worst = 0.0f64;
        for i in 0..n {
            let (ji, si) = jay.image_of_basis(i);
            for j in 0..n {
                let (jj, sj) = jay.image_of_basis(j);
                let sign = si * sj;
                for k in 0..n {
                    for l in 0..n {
                        let transformed = if sign >= 0 {
                            self.get(ji, jj, k, l).clone()
                        } else {
                            -(self.get(ji, jj, k, l).clone())
                        };
                        let d = transformed - self.get(i, j, k, l).clone();
                        worst = worst.max(d.magnitude());
                    }
                }
            }
        }
        worst
    }

    /// `R₀ = R − (1+λ)/2 · G` (Eq. (2.8)); `half_factor` is `(1+λ)/2`.
    pub fn r0_decompose(&self, g: &CurvatureTensor<S>, half_factor: S) -> Self {
        assert_eq!(self.n, g.n, "dimension mismatch in R0 decomposition");
        self.sub(&g.scale(&half_factor))
    }
}

impl CurvatureTensor<f64> {
    pub fn norm(&self) -> f64 {
        self.components.iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    pub fn to_f64(r: &CurvatureTensor<BigRational>) -> CurvatureTensor<f64> {
        CurvatureTensor {
            n: r.n,
            components: r
                .components
                .iter()
                .map(|c| {
                    let num: f64 = c.numer().to_string().parse().unwrap_or(0.0);
                    let den: f64 = c.denom().to_string().parse().unwrap_or(1.0);
                    num / den
                })
                .collect(),
        }
    }
}

/// `g∧g(i,j,k,l) = δ_ik δ_jl − δ_il δ_jk` (Eq. (2.4)). On orthonormal
/// pairs `(g∧g)(X,Y,Y,X) = +1`; see the module docs for the convention.
pub fn g_wedge_g<S: TensorScalar>(n: usize) -> CurvatureTensor<S> {
    assert!(n >= 2);
    let mut r = CurvatureTensor::zeros(n);
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            r.set(i, j, i, j, S::one());
            r.set(i, j, j, i, -S::one());
        }
    }
    r
}

/// The complex hyperbolic tensor of Eq. (2.5):
/// `4G(i,j,k,l) = δ_ik δ_jl − δ_il δ_jk + J_ik J_jl − J_il J_jk + 2 J_ij J_kl`.
pub fn complex_hyperbolic_g<S: TensorScalar>(
    jay: &ComplexStructure,
) -> CurvatureTensor<S> {
    let n = jay.dim();
    let mut r = CurvatureTensor::zeros(n);
    let delta = |a: usize, b: usize| -> i64 { i64::from(a == b) };
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let four_g = delta(i, k) * delta(j, l) - delta(i, l) * delta(j, k)
                        + jay.entry(i, k) * jay.entry(j, l)
                        - jay.entry(i, l) * jay.entry(j, k)
                        + 2 * jay.entry(i, j) * jay.entry(k, l);
                    if four_g != 0 {
                        r.set(i, j, k, l, quarter_of::<S>(four_g));
                    }
                }
            }
        }
    }
    r
}

/// `v/4` as a scalar; components of `G` are quarter-integers.
fn quarter_of<S: TensorScalar>(v: i64) -> S {
    S::quarter() * S::from_i64(v)
}

/// The endomorphism form of Eq. (2.6):
/// `4G(X,Y) = X∧Y + JX∧JY − 2⟨X,JY⟩J` with
/// `(X∧Y)(Z) = ⟨X,Z⟩Y − ⟨Y,Z⟩X`, converted back to `(4,0)` components
/// through `G(i,j,k,l) = ⟨G(e_i,e_j) e_k, e_l⟩`.
pub fn complex_hyperbolic_g_endomorphism_form<S: TensorScalar>(
    jay: &ComplexStructure,
) -> CurvatureTensor<S> {
    let n = jay.dim();
    let delta = |a: usize, b: usize| -> i64 { i64::from(a == b) };
    let mut r = CurvatureTensor::zeros(n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    // (e_i ∧ e_j)(e_k) = δ_ik e_j − δ_jk e_i
                    let wedge = delta(i, k) * delta(j, l) - delta(j, k) * delta(i, l);
                    // (Je_i ∧ Je_j)(e_k) component l
                    let mut jwedge = 0i64;
                    let (ii, si) = jay.image_of_basis(i);
                    let (jj, sj) = jay.image_of_basis(j);
                    jwedge += delta(ii, k) * si * delta(jj, l) * sj;
                    jwedge -= delta(jj, k) * sj * delta(ii, l) * si;
                    // −2⟨e_i, Je_j⟩ (J e_k) component l
                    let jterm = -2 * jay.entry(i, j) * {
                        let (kk, sk) = jay.image_of_basis(k);
                        delta(kk, l) * sk
                    };
                    let four_g = wedge + jwedge + jterm;
                    if four_g != 0 {
                        r.set(i, j, k, l, quarter_of::<S>(four_g));
                    }
                }
            }
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn basis(n: usize, i: usize) -> Vec<BigRational> {
        let mut v = vec![BigRational::zero(); n];
        v[i] = BigRational::one();
        v
    }

    #[test]
    fn complex_structure_squares_to_minus_identity() {
        let j = ComplexStructure::canonical(6);
        for i in 0..6 {
            let e = basis(6, i);
            let jje = j.apply(&j.apply(&e));
            for (a, c) in jje.iter().enumerate() {
                let expected = if a == i { rat(-1, 1) } else { rat(0, 1) };
                assert_eq!(*c, expected);
            }
        }
    }

    #[test]
    fn g_wedge_g_single_component_in_dim_2() {
        let r: CurvatureTensor<BigRational> = g_wedge_g(2);
        assert_eq!(*r.get(0, 1, 1, 0), rat(-1, 1));
        assert_eq!(*r.get(0, 1, 0, 1), rat(1, 1));
        // (g∧g)(e1,e2,e2,e1) = ⟨e1,e2⟩⟨e2,e1⟩ − ⟨e1,e1⟩⟨e2,e2⟩ = −1 …
        // careful: Eq. (2.4) gives g∧g(X,Y,Z,W) = ⟨X,Z⟩⟨Y,W⟩ − ⟨X,W⟩⟨Y,Z⟩,
        // so on (e1,e2,e2,e1) it is 0·0 − 1·1 = −1, while the "sectional"
        // slot order (X,Y,Y,X) evaluates the same expression.
        assert_eq!(r.sectional(&basis(2, 0), &basis(2, 1)), rat(-1, 1));
    }

    #[test]
    fn g_wedge_g_invariants_exact() {
        let r: CurvatureTensor<BigRational> = g_wedge_g(6);
        assert_eq!(r.symmetry_residual(), 0.0);
        assert_eq!(r.bianchi_residual(), 0.0);
    }

    #[test]
    fn g_wedge_g_on_random_orthonormal_pair() {
        // An exact orthonormal pair built from a rational rotation:
        // X = (3/5, 4/5, 0, …), Y = (−4/5, 3/5, 0, …).
        let n = 6;
        let r: CurvatureTensor<BigRational> = g_wedge_g(n);
        let mut x = vec![BigRational::zero(); n];
        let mut y = vec![BigRational::zero(); n];
        x[0] = rat(3, 5);
        x[1] = rat(4, 5);
        y[0] = rat(-4, 5);
        y[1] = rat(3, 5);
        assert_eq!(r.eval(&x, &y, &x, &y), rat(1, 1));
    }

    #[test]
    fn complex_hyperbolic_two_paths_agree_exactly() {
        let j = ComplexStructure::canonical(6);
        let a: CurvatureTensor<BigRational> = complex_hyperbolic_g(&j);
        let b: CurvatureTensor<BigRational> =
            complex_hyperbolic_g_endomorphism_form(&j);
        assert_eq!(a, b);
    }

    #[test]
    fn complex_hyperbolic_invariants() {
        let j = ComplexStructure::canonical(6);
        let g: CurvatureTensor<BigRational> = complex_hyperbolic_g(&j);
        assert_eq!(g.symmetry_residual(), 0.0);
        assert_eq!(g.bianchi_residual(), 0.0);
        assert_eq!(g.kahler_residual(&j), 0.0);
    }

    #[test]
    fn holomorphic_curvature_of_g_is_minus_one() {
        let j = ComplexStructure::canonical(8);
        let g: CurvatureTensor<BigRational> = complex_hyperbolic_g(&j);
        for i in 0..8 {
            assert_eq!(g.holomorphic(&j, &basis(8, i)), rat(-1, 1));
        }
        // Non-basis exact unit vector (3/5, 4/5·e₃ pattern mixes J-blocks).
        let mut x = vec![BigRational::zero(); 8];
        x[0] = rat(3, 5);
        x[2] = rat(4, 5);
        assert_eq!(g.holomorphic(&j, &x), rat(-1, 1));
    }

    #[test]
    fn totally_real_sectional_of_g_is_minus_quarter() {
        // X = e₁, Y = e₃: orthonormal with ⟨X, JY⟩ = ⟨e₁, e₄-ish⟩ = 0.
        let j = ComplexStructure::canonical(6);
        let g: CurvatureTensor<BigRational> = complex_hyperbolic_g(&j);
        assert_eq!(g.sectional(&basis(6, 0), &basis(6, 2)), rat(-1, 4));
    }

    #[test]
    fn r0_decomposition_recovers_perturbation() {
        let j = ComplexStructure::canonical(4);
        let g: CurvatureTensor<BigRational> = complex_hyperbolic_g(&j);
        // λ = 1: R = G ⟹ R₀ = 0.
        let r0 = g.r0_decompose(&g, rat(1, 1));
        assert!(r0.components().iter().all(|c| c.is_zero()));
        // R = (1+λ)/2·G + E recovers E exactly (here E = g∧g scaled).
        let e: CurvatureTensor<BigRational> = g_wedge_g::<BigRational>(4).scale(&rat(1, 100));
        let lambda = rat(9, 10);
        let half = (BigRational::one() + &lambda) / rat(2, 1);
        let r = g.scale(&half).add(&e);
        assert_eq!(r.r0_decompose(&g, half), e);
    }

    #[test]
    fn holomorphic_invariant_under_j() {
        let j = ComplexStructure::canonical(6);
        let g: CurvatureTensor<BigRational> = complex_hyperbolic_g(&j);
        let mut x = vec![BigRational::zero(); 6];
        x[0] = rat(3, 5);
        x[3] = rat(4, 5);
        assert_eq!(g.holomorphic(&j, &x), g.holomorphic(&j, &j.apply(&x)));
    }

    #[test]
    fn endomorphism_commutator_is_derivation_action_p1() {
        let j = ComplexStructure::canonical(4);
        let g: CurvatureTensor<BigRational> = complex_hyperbolic_g(&j);
        let x = basis(4, 0);
        let y = basis(4, 2);
        let m = g.endomorphism(&x, &y);
        // skew-symmetry of R(X,Y)
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(m[a][b], -m[b][a].clone());
            }
        }
    }
}
