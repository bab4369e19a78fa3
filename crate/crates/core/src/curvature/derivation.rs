//! Derivation extension of curvature endomorphisms to tensor powers.
//!
//! A skew-symmetric endomorphism `M = R(X,Y)` extends as a derivation to
//! `V^⊗p` by `Σ_s 1⊗…⊗M⊗…⊗1`; this preserves the exterior and symmetric
//! subspaces `Λᵖ` and `Sᵖ`, and for `p = 2` the symmetric action is the
//! commutator `u ↦ [R(X,Y), u]` (Eq. (2.3)). Elements of `Λᵖ`/`Sᵖ` are
//! stored as dense coefficient arrays over `V^⊗p` (length `n^p`) with the
//! inherited inner product, so the quantitative Lemma 2.4 bound
//! `|(R₀)_{Λᵖ}(X,Y,ω,η)| ≤ (4p/3)(1−λ)` is checked against unit vectors
//! of the ambient pairing.

use super::tensor::{CurvatureTensor, TensorScalar};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TensorSpace {
    Exterior,
    Symmetric,
}

/// Action oracle for the derivation extension of `R(·,·)` on `Λᵖ` or `Sᵖ`.
#[derive(Debug, Clone)]
pub struct DerivationAction<S> {
    r: CurvatureTensor<S>,
    p: usize,
    space: TensorSpace,
}

/// Builds the action oracle. Requires `1 ≤ p ≤ 3` (dense `n^p` storage).
pub fn derivation_extend<S: TensorScalar>(
    r: &CurvatureTensor<S>,
    p: usize,
    space: TensorSpace,
) -> DerivationAction<S> {
    assert!((1..=3).contains(&p), "derivation extension supports 1 <= p <= 3");
    DerivationAction {
        r: r.clone(),
        p,
        space,
    }
}

fn multi_indices(n: usize, p: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = n.pow(p as u32);
    (0..total).map(move |mut t| {
        let mut idx = vec![0usize; p];
        for slot in (0..p).rev() {
            idx[slot] = t % n;
            t /= n;
        }
        idx
    })
}

impl<S: TensorScalar> DerivationAction<S> {
    pub fn p(&self) -> usize {
        self.p
    }

    pub fn space(&self) -> TensorSpace {
        self.space
    }

    pub fn dim(&self) -> usize {
        self.r.dim()
    }

    /// Length of the dense coefficient arrays (`n^p`).
    pub fn ambient_len(&self) -> usize {
        self.r.dim().pow(self.p as u32)
    }

    fn flat(&self, idx: &[usize]) -> usize {
        let n = self.r.dim();
        idx.iter().fold(0, |acc, &i| acc * n + i)
    }

    /// Projects a dense `V^⊗p` element onto `Λᵖ` or `Sᵖ` by averaging over
    /// permutations with the appropriate signs.
    pub fn project(&self, omega: &[S]) -> Vec<S> {
        let n = self.r.dim();
        assert_eq!(omega.len(), self.ambient_len());
        let perms: Vec<(Vec<usize>, i64)> = match self.p {
            1 => vec![(vec![0], 1)],
            2 => vec![(vec![0, 1], 1), (vec![1, 0], -1)],
            3 => vec![
                (vec![0, 1, 2], 1),
                (vec![1, 2, 0], 1),
                (vec![2, 0, 1], 1),
                (vec![1, 0, 2], -1),
                (vec![0, 2, 1], -1),
                (vec![2, 1, 0], -1),
            ],
            _ => unreachable!(),
        };
        let count = perms.len() as i64;
        let mut out = vec![S::zero(); omega.len()];
        for idx in multi_indices(n, self.p) {
            let mut acc = S::zero();
            for (perm, sign) in &perms {
                let permuted: Vec<usize> = perm.iter().map(|&s| idx[s]).collect();
                let term = omega[self.flat(&permuted)].clone();
                let signed = match self.space {
                    TensorSpace::Symmetric => term,
                    TensorSpace::Exterior => {
                        if *sign >= 0 {
                            term
                        } else {
                            -term
                        }
                    }
                };
                acc = acc + signed;
            }
            // divide by the permutation count: multiply by 1/p! as scalar
            out[self.flat(&idx)] = divide(acc, count);
        }
        out
    }

    /// Applies the derivation extension of `R(X,Y)` to `ω`:
    /// `Σ_s (1⊗…⊗R(X,Y)⊗…⊗1) ω`.
    pub fn apply(&self, x: &[S], y: &[S], omega: &[S]) -> Vec<S> {
        let n = self.r.dim();
        assert_eq!(omega.len(), self.ambient_len());
        // m[l][k] = ⟨R(X,Y) e_k, e_l⟩
        let m = self.r.endomorphism(x, y);
        let mut out = vec![S::zero(); omega.len()];
        for idx in multi_indices(n, self.p) {
            let flat_out = self.flat(&idx);
            let mut acc = S::zero();
            for slot in 0..self.p {
                for a in 0..n {
                    let coeff = m[idx[slot]][a].clone();
                    if coeff.is_zero() {
                        continue;
                    }
                    let mut src = idx.clone();
                    src[slot] = a;
                    acc = acc + coeff * omega[self.flat(&src)].clone();
                }
            }
            out[flat_out] = acc;
        }
        out
    }

    /// Ambient inner product on `V^⊗p` coefficient arrays.
    pub fn pair(&self, a: &[S], b: &[S]) -> S {
        a.iter()
            .zip(b)
            .fold(S::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
    }
}

/// Exact multiplication by `1/count` (count is `p!`, so 1, 2, or 6).
fn divide<S: TensorScalar>(value: S, count: i64) -> S {
    value * S::recip_of(count)
}

#[derive(Debug, Clone)]
pub struct BoundCheck {
    pub bound: f64,
    pub max_found: f64,
    pub samples: usize,
    pub holds: bool,
}

impl DerivationAction<f64> {
    /// Samples the Lemma 2.4 bound `|(R₀)(X,Y,ω,η)| ≤ (4p/3)(1−λ)` on
    /// random orthonormal `(X,Y)` and random unit `ω,η` in the chosen
    /// subspace. The held tensor must already be `R₀ = R − (1+λ)/2·G`.
    pub fn sample_bound(&self, lambda: f64, samples: usize, seed: u64, tol: f64) -> BoundCheck {
        let n = self.r.dim();
        let bound = 4.0 * self.p as f64 / 3.0 * (1.0 - lambda);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut max_found = 0.0f64;
        for _ in 0..samples {
            let x = random_unit_vec(&mut rng, n);
            let mut y = random_unit_vec(&mut rng, n);
            let along: f64 = x.iter().zip(&y).map(|(a, b)| a * b).sum();
            for (yi, xi) in y.iter_mut().zip(&x) {
                *yi -= along * xi;
            }
            let ny: f64 = y.iter().map(|v| v * v).sum::<f64>().sqrt();
            if ny < 1e-9 {
                continue;
            }
            for v in y.iter_mut() {
                *v /= ny;
            }
            let omega = self.random_unit_element(&mut rng);
            let eta = self.random_unit_element(&mut rng);
            let value = self.pair(&self.apply(&x, &y, &omega), &eta).abs();
            max_found = max_found.max(value);
        }
        BoundCheck {
            bound,
            max_found,
            samples,
            holds: max_found <= bound + tol,
        }
    }

    /// Random unit element of the chosen subspace under the ambient pairing.
    pub fn random_unit_element(&self, rng: &mut ChaCha8Rng) -> Vec<f64> {
        loop {
            let raw: Vec<f64> = (0..self.ambient_len())
                .map(|_| rng.gen_range(-1.0..1.0))
                .collect();
            let mut proj = self.project(&raw);
            let norm: f64 = proj.iter().map(|v| v * v).sum::<f64>().sqrt();
            if norm > 1e-6 {
                for v in proj.iter_mut() {
                    *v /= norm;
                }
                return proj;
            }
        }
    }
}

fn random_unit_vec(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let norm: f64 = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-6 {
            return v.iter().map(|x| x / norm).collect();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvature::generate::random_pinched_kahler;
    use crate::curvature::tensor::{complex_hyperbolic_g, ComplexStructure};
    use num_rational::BigRational;
    use num_traits::{One, Zero};

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn basis(n: usize, i: usize) -> Vec<BigRational> {
        let mut v = vec![BigRational::zero(); n];
        v[i] = BigRational::one();
        v
    }

    #[test]
    fn p1_action_is_the_endomorphism_itself() {
        let j = ComplexStructure::canonical(4);
        let g: CurvatureTensor<BigRational> = complex_hyperbolic_g(&j);
        let act = derivation_extend(&g, 1, TensorSpace::Exterior);
        let x = basis(4, 0);
        let y = basis(4, 2);
        let m = g.endomorphism(&x, &y);
        for k in 0..4 {
            let out = act.apply(&x, &y, &basis(4, k));
            for l in 0..4 {
                assert_eq!(out[l], m[l][k]);
            }
        }
    }

    #[test]
    fn p2_symmetric_action_is_commutator_exact() {
        let j = ComplexStructure::canonical(4);
        let g: CurvatureTensor<BigRational> = complex_hyperbolic_g(&j);
        let act = derivation_extend(&g, 2, TensorSpace::Symmetric);
        let x = basis(4, 0);
        let y = basis(4, 1);
        // symmetric u with rational entries
        let mut u = vec![BigRational::zero(); 16];
        let entries = [
            (0, 0, rat(1, 2)),
            (0, 1, rat(-1, 3)),
            (1, 0, rat(-1, 3)),
            (1, 1, rat(2, 5)),
            (2, 3, rat(7, 11)),
            (3, 2, rat(7, 11)),
            (3, 3, rat(-5, 4)),
        ];
        for (a, b, v) in entries {
            u[a * 4 + b] = v;
        }
        let out = act.apply(&x, &y, &u);
        // Oracle: [M, u] with M[l][k] = ⟨R(X,Y) e_k, e_l⟩ acting on column
        // vectors as (Mz)_l = Σ_k M[l][k] z_k.
        let m = g.endomorphism(&x, &y);
        for a in 0..4 {
            for b in 0..4 {
                let mut expect = BigRational::zero();
                for c in 0..4 {
                    expect = expect + m[a][c].clone() * u[c * 4 + b].clone()
                        - u[a * 4 + c].clone() * m[c][b].clone();
                }
                assert_eq!(out[a * 4 + b], expect, "entry ({a},{b})");
            }
        }
    }

    #[test]
    fn p2_symmetric_action_on_identity_is_zero() {
        let j = ComplexStructure::canonical(6);
        let g: CurvatureTensor<BigRational> = complex_hyperbolic_g(&j);
        let act = derivation_extend(&g, 2, TensorSpace::Symmetric);
        let mut ident = vec![BigRational::zero(); 36];
        for a in 0..6 {
            ident[a * 6 + a] = BigRational::one();
        }
        let out = act.apply(&basis(6, 0), &basis(6, 3), &ident);
        assert!(out.iter().all(|c| c.is_zero()));
    }

    #[test]
    fn projection_is_idempotent_and_lands_in_subspace() {
        let j = ComplexStructure::canonical(4);
        let g: CurvatureTensor<BigRational> = complex_hyperbolic_g(&j);
        for space in [TensorSpace::Exterior, TensorSpace::Symmetric] {
            for p in [2usize, 3] {
                let act = derivation_extend(&g, p, space);
                let raw: Vec<BigRational> = (0..act.ambient_len())
                    .map(|t| rat((t as i64 * 7 + 3) % 13 - 6, 5))
                    .collect();
                let once = act.project(&raw);
                let twice = act.project(&once);
                assert_eq!(once, twice);
                if p == 2 {
                    for a in 0..4 {
                        for b in 0..4 {
                            let lhs = once[a * 4 + b].clone();
                            let rhs = once[b * 4 + a].clone();
                            match space {
                                TensorSpace::Symmetric => assert_eq!(lhs, rhs),
                                TensorSpace::Exterior => assert_eq!(lhs, -rhs),
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn derivation_preserves_subspace() {
        let j = ComplexStructure::canonical(4);
        let g: CurvatureTensor<BigRational> = complex_hyperbolic_g(&j);
        let act = derivation_extend(&g, 2, TensorSpace::Exterior);
        let raw: Vec<BigRational> = (0..16).map(|t| rat(t as i64 - 8, 3)).collect();
        let omega = act.project(&raw);
        let out = act.apply(&basis(4, 1), &basis(4, 2), &omega);
        assert_eq!(out, act.project(&out));
    }

    #[test]
    fn lemma_2_4_bound_on_generated_tensor() {
        let lambda = 0.9;
        let s = random_pinched_kahler(4, lambda, 23).unwrap();
        let g: CurvatureTensor<f64> = complex_hyperbolic_g(&s.jay);
        let r0 = s.tensor.r0_decompose(&g, (1.0 + lambda) / 2.0);
        for p in [1usize, 2] {
            let act = derivation_extend(&r0, p, TensorSpace::Exterior);
            let check = act.sample_bound(lambda, 2000, 7, 1e-7);
            assert!(
                check.holds,
                "p={p}: max {} over bound {}",
                check.max_found, check.bound
            );
        }
    }
}
