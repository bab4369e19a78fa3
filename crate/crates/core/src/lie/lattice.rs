//! Weight lattices of the exceptional simple Lie algebras and the Weyl
//! dimension formula in exact integer arithmetic.
//!
//! Everything is expressed over the simple-root / fundamental-weight
//! coordinate systems. For a positive root `α = Σ cᵢ αᵢ` and a dominant
//! weight with fundamental coordinates `mᵢ`,
//!
//!   ⟨λ + ρ, αᵛ⟩ / ⟨ρ, αᵛ⟩ = Σ cᵢ dᵢ (mᵢ + 1) / Σ cᵢ dᵢ,
//!
//! where `dᵢ = ⟨αᵢ, αᵢ⟩ / 2` up to a common scale, so the root-length
//! normalization cancels from the dimension formula.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Algebra {
    G2,
    F4,
    E6,
    E7,
    E8,
}

impl Algebra {
    pub const ALL: [Algebra; 5] = [Algebra::G2, Algebra::F4, Algebra::E6, Algebra::E7, Algebra::E8];

    pub fn name(self) -> &'static str {
        match self {
            Algebra::G2 => "g2",
            Algebra::F4 => "f4",
            Algebra::E6 => "e6",
            Algebra::E7 => "e7",
            Algebra::E8 => "e8",
        }
    }

    pub fn rank(self) -> usize {
        match self {
            Algebra::G2 => 2,
            Algebra::F4 => 4,
            Algebra::E6 => 6,
            Algebra::E7 => 7,
            Algebra::E8 => 8,
        }
    }
}

#[derive(Debug, Error)]
pub enum LieError {
    #[error("highest weight {0:?} is not dominant")]
    NonDominantWeight(Vec<i64>),
    #[error("p_max must be at least 13, got {0}")]
    PMaxTooSmall(u64),
    #[error("character decomposition failed to terminate within {0} steps")]
    DecompositionStalled(usize),
}

/// Weight lattice data for one algebra: Cartan matrix, relative root
/// lengths, and the positive roots in simple-root coordinates.
#[derive(Debug, Clone)]
pub struct WeightLattice {
    pub algebra: Algebra,
    /// Cartan matrix `C[i][j] = ⟨αᵢ, αⱼᵛ⟩`.
    pub cartan: Vec<Vec<i64>>,
    /// Relative half squared lengths `dᵢ` (1 for simply-laced).
    pub lengths: Vec<i64>,
    /// Positive roots in simple-root coordinates.
    pub positive_roots: Vec<Vec<i64>>,
}

/// Cartan matrix of a simply-laced diagram from its edge list (Bourbaki
/// numbering for the E series).
fn simply_laced(rank: usize, edges: &[(usize, usize)]) -> Vec<Vec<i64>> {
    let mut c = vec![vec![0i64; rank]; rank];
    for i in 0..rank {
        c[i][i] = 2;
    }
    for &(a, b) in edges {
        c[a - 1][b - 1] = -1;
        c[b - 1][a - 1] = -1;
    }
    c
}

impl WeightLattice {
    pub fn new(algebra: Algebra) -> Self {
        let (cartan, lengths): (Vec<Vec<i64>>, Vec<i64>) = match algebra {
            Algebra::G2 => (vec![vec![2, -1], vec![-3, 2]], vec![1, 3]),
            Algebra::F4 => (
                vec![
                    vec![2, -1, 0, 0],
                    vec![-1, 2, -2, 0],
                    vec![0, -1, 2, -1],
                    vec![0, 0, -1, 2],
                ],
                vec![2, 2, 1, 1],
            ),
            Algebra::E6 => (
                simply_laced(6, &[(1, 3), (3, 4), (4, 5), (5, 6), (2, 4)]),
                vec![1; 6],
            ),
            Algebra::E7 => (
                simply_laced(7, &[(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (2, 4)]),
                vec![1; 7],
            ),
            Algebra::E8 => (
                simply_laced(8, &[(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4)]),
                vec![1; 8],
            ),
        };
        let positive_roots = positive_roots_from(&cartan);
        WeightLattice {
            algebra,
            cartan,
            lengths,
            positive_roots,
        }
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    /// Dimension of the algebra: rank + number of roots.
    pub fn algebra_dim(&self) -> u64 {
        (self.rank() + 2 * self.positive_roots.len()) as u64
    }

    /// Fundamental coordinates `⟨β, αᵢᵛ⟩` of a vector given in
    /// simple-root coordinates.
    pub fn root_to_fundamental(&self, coords: &[i64]) -> Vec<i64> {
        let rank = self.rank();
        (0..rank)
            .map(|i| (0..rank).map(|j| coords[j] * self.cartan[j][i]).sum())
            .collect()
    }

    /// Highest root (unique positive root of maximal height), in
    /// fundamental coordinates: the adjoint highest weight.
    pub fn adjoint_weight(&self) -> Vec<i64> {
        let theta = self
            .positive_roots
            .iter()
            .max_by_key(|r| r.iter().sum::<i64>())
            .expect("nonempty root system");
        self.root_to_fundamental(theta)
    }

    /// Weyl dimension formula for a dominant highest weight given in
    /// fundamental coordinates.
    pub fn weyl_dimension(&self, weight: &[i64]) -> Result<BigInt, LieError> {
        assert_eq!(weight.len(), self.rank());
        if weight.iter().any(|&m| m < 0) {
            return Err(LieError::NonDominantWeight(weight.to_vec()));
        }
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for root in &self.positive_roots {
            let mut top = 0i64;
            let mut bot = 0i64;
            for (i, &c) in root.iter().enumerate() {
                top += c * self.lengths[i] * (weight[i] + 1);
                bot += c * self.lengths[i];
            }
            num *= BigInt::from(top);
            den *= BigInt::from(bot);
        }
        let ratio = BigRational::new(num, den);
        debug_assert!(ratio.is_integer());
        Ok(ratio.to_integer())
    }

    /// Gram matrix of the fundamental weights, scaled by a positive
    /// integer so that all entries are integers. Returns `(scale, G)`
    /// with `scale·⟨ωᵢ, ωⱼ⟩ = G[i][j]`.
    pub fn scaled_fundamental_gram(&self) -> (BigInt, Vec<Vec<BigInt>>) {
        let rank = self.rank();
        let inv = invert_rational(&self.cartan);
        // ⟨ωᵢ, ωⱼ⟩ = (C⁻¹)[j][i] dᵢ  (symmetric).
        let mut gram = vec![vec![BigRational::zero(); rank]; rank];
        let mut denom_lcm = BigInt::one();
        for i in 0..rank {
            for j in 0..rank {
                let v = &inv[j][i] * BigRational::from_integer(self.lengths[i].into());
                denom_lcm = num_integer::lcm(denom_lcm.clone(), v.denom().abs());
                gram[i][j] = v;
            }
        }
        let scaled = gram
            .iter()
            .map(|row| {
                row.iter()
                    .map(|v| (v * BigRational::from_integer(denom_lcm.clone())).to_integer())
                    .collect()
            })
            .collect();
        (denom_lcm, scaled)
    }
}

/// All roots as the Weyl orbit of the simple roots (simple-reflection
/// closure), restricted to the positive ones.
fn positive_roots_from(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let rank = cartan.len();
    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut queue: Vec<Vec<i64>> = Vec::new();
    for i in 0..rank {
        let mut alpha = vec![0i64; rank];
        alpha[i] = 1;
        seen.insert(alpha.clone());
        queue.push(alpha);
    }
    while let Some(beta) = queue.pop() {
        for i in 0..rank {
            // s_i(β) = β − ⟨β, αᵢᵛ⟩ αᵢ
            let pairing: i64 = (0..rank).map(|j| beta[j] * cartan[j][i]).sum();
            let mut image = beta.clone();
            image[i] -= pairing;
            if seen.insert(image.clone()) {
                queue.push(image);
            }
        }
    }
    seen.into_iter()
        .filter(|r| r.iter().all(|&c| c >= 0))
        .collect()
}

/// Exact inverse of a small integer matrix.
fn invert_rational(m: &[Vec<i64>]) -> Vec<Vec<BigRational>> {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .map(|row| {
            row.iter()
                .map(|&v| BigRational::from_integer(v.into()))
                .collect()
        })
        .collect();
    let mut inv: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .expect("Cartan matrix is invertible");
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let scale = a[col][col].recip();
        for v in a[col].iter_mut().chain(inv[col].iter_mut()) {
            *v *= &scale;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in 0..n {
                    let da = &f * &a[col][c];
                    a[r][c] -= da;
                    let di = &f * &inv[col][c];
                    inv[r][c] -= di;
                }
            }
        }
    }
    inv
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positive_root_counts_match_dimensions() {
        let expected = [
            (Algebra::G2, 6usize, 14u64),
            (Algebra::F4, 24, 52),
            (Algebra::E6, 36, 78),
            (Algebra::E7, 63, 133),
            (Algebra::E8, 120, 248),
        ];
        for (alg, pos, dim) in expected {
            let lat = WeightLattice::new(alg);
            assert_eq!(lat.positive_roots.len(), pos, "{}", alg.name());
            assert_eq!(lat.algebra_dim(), dim, "{}", alg.name());
        }
    }

    #[test]
    fn weyl_vector_pairs_to_one_with_simple_coroots() {
        // ρ has fundamental coordinates (1, …, 1); ⟨ρ, αᵢᵛ⟩ = 1 is the
        // defining property, and the simple roots must appear among the
        // positive roots.
        for alg in Algebra::ALL {
            let lat = WeightLattice::new(alg);
            for i in 0..lat.rank() {
                let mut alpha = vec![0i64; lat.rank()];
                alpha[i] = 1;
                assert!(lat.positive_roots.contains(&alpha));
            }
        }
    }

    #[test]
    fn adjoint_dimensions() {
        for (alg, dim) in [
            (Algebra::G2, 14i64),
            (Algebra::F4, 52),
            (Algebra::E6, 78),
            (Algebra::E7, 133),
            (Algebra::E8, 248),
        ] {
            let lat = WeightLattice::new(alg);
            let adj = lat.adjoint_weight();
            assert_eq!(lat.weyl_dimension(&adj).unwrap(), BigInt::from(dim));
        }
    }

    #[test]
    fn small_irrep_dimensions() {
        let g2 = WeightLattice::new(Algebra::G2);
        assert_eq!(g2.weyl_dimension(&[1, 0]).unwrap(), BigInt::from(7));
        assert_eq!(g2.weyl_dimension(&[0, 1]).unwrap(), BigInt::from(14));
        let f4 = WeightLattice::new(Algebra::F4);
        assert_eq!(f4.weyl_dimension(&[0, 0, 0, 1]).unwrap(), BigInt::from(26));
        let e6 = WeightLattice::new(Algebra::E6);
        assert_eq!(
            e6.weyl_dimension(&[1, 0, 0, 0, 0, 0]).unwrap(),
            BigInt::from(27)
        );
        assert_eq!(
            e6.weyl_dimension(&[0, 0, 0, 0, 0, 1]).unwrap(),
            BigInt::from(27)
        );
        let e7 = WeightLattice::new(Algebra::E7);
        assert_eq!(
            e7.weyl_dimension(&[0, 0, 0, 0, 0, 0, 1]).unwrap(),
            BigInt::from(56)
        );
        let e8 = WeightLattice::new(Algebra::E8);
        assert_eq!(
            e8.weyl_dimension(&[0, 0, 0, 0, 0, 0, 0, 1]).unwrap(),
            BigInt::from(248)
        );
    }

    #[test]
    fn non_dominant_weight_rejected() {
        let g2 = WeightLattice::new(Algebra::G2);
        assert!(matches!(
            g2.weyl_dimension(&[-1, 0]),
            Err(LieError::NonDominantWeight(_))
        ));
    }

    #[test]
    fn trivial_weight_has_dimension_one() {
        for alg in Algebra::ALL {
            let lat = WeightLattice::new(alg);
            let zero = vec![0i64; lat.rank()];
            assert_eq!(lat.weyl_dimension(&zero).unwrap(), BigInt::one());
        }
    }

    #[test]
    fn gram_matrix_reproduces_cartan_pairings() {
        // ⟨αᵢ, αⱼᵛ⟩ recovered from the Gram matrix must equal C[i][j].
        for alg in Algebra::ALL {
            let lat = WeightLattice::new(alg);
            let rank = lat.rank();
            let (scale, gram) = lat.scaled_fundamental_gram();
            // αᵢ in fundamental coordinates = row i of C.
            for i in 0..rank {
                for j in 0..rank {
                    let mut ip = BigInt::zero();
                    for a in 0..rank {
                        for b in 0..rank {
                            ip += BigInt::from(lat.cartan[i][a])
                                * &gram[a][b]
                                * BigInt::from(lat.cartan[j][b]);
                        }
                    }
                    // ⟨αᵢ, αⱼ⟩ = C[i][j]·dⱼ (both sides scaled).
                    assert_eq!(
                        ip,
                        &scale * BigInt::from(lat.cartan[i][j] * lat.lengths[j]),
                        "{} ({i},{j})",
                        alg.name()
                    );
                }
            }
        }
    }
}
