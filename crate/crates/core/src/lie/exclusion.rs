//! Enumeration of the odd-dimensional irreducible representations of the
//! exceptional Lie algebras compatible with the topological constraints
//! of §3: Eq. (3.2) `7 ≤ 2p+1 ≤ dim ĥ + 1` and Eq. (3.1)
//! `ρ(4p+4) ≥ 4p+3 − dim ĥ`.
//!
//! The homotopy-theoretic inputs behind those constraints
//! (`π₁₄(SO(15)) = ℤ₂` and the clutching-class argument that ultimately
//! removes the g2 candidate) are literature facts recorded in the
//! certificate narrative, not recomputed here.

use super::lattice::{Algebra, LieError, WeightLattice};
use super::radon::radon_hurwitz;
use crate::cert::Certificate;
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use std::time::Instant;

/// One irrep passing both constraints.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct Survivor {
    pub algebra: Algebra,
    /// Highest weight in fundamental coordinates.
    pub highest_weight: Vec<i64>,
    /// Complex dimension `2p + 1`.
    pub dim: u64,
}

/// All dominant weights of `lattice` whose Weyl dimension is ≤ `bound`,
/// found by coefficient search with monotone pruning (the dimension is
/// strictly increasing in every fundamental coordinate).
pub fn irreps_up_to_dimension(lattice: &WeightLattice, bound: u64) -> Vec<(Vec<i64>, u64)> {
    let mut out = Vec::new();
    let rank = lattice.rank();
    let mut weight = vec![0i64; rank];
    fn rec(
        lattice: &WeightLattice,
        bound: u64,
        weight: &mut Vec<i64>,
        pos: usize,
        out: &mut Vec<(Vec<i64>, u64)>,
    ) {
        if pos == weight.len() {
            let dim = lattice
                .weyl_dimension(weight)
                .expect("dominant by construction");
            if dim <= BigInt::from(bound) {
                out.push((weight.clone(), dim.to_u64().expect("dim ≤ bound")));
            }
            return;
        }
        for t in 0.. {
            weight[pos] = t;
            let dim = lattice
                .weyl_dimension(weight)
                .expect("dominant by construction");
            if dim > BigInt::from(bound) {
                break;
            }
            rec(lattice, bound, weight, pos + 1, out);
        }
        weight[pos] = 0;
    }
    rec(lattice, bound, &mut weight, 0, &mut out);
    out
}

/// Unpruned brute force over the coefficient box `⟨λ, αᵢᵛ⟩ ≤ box_max`,
/// used as an oracle for the pruned search on small algebras.
pub fn irreps_in_box(lattice: &WeightLattice, box_max: i64, bound: u64) -> Vec<(Vec<i64>, u64)> {
    let rank = lattice.rank();
    let mut out = Vec::new();
    let total = (box_max as usize + 1).pow(rank as u32);
    for code in 0..total {
        let mut weight = vec![0i64; rank];
        let mut c = code;
        for w in weight.iter_mut() {
            *w = (c % (box_max as usize + 1)) as i64;
            c /= box_max as usize + 1;
        }
        let dim = lattice.weyl_dimension(&weight).unwrap();
        if dim <= BigInt::from(bound) {
            out.push((weight, dim.to_u64().unwrap()));
        }
    }
    out.sort();
    out
}

/// Enumerates the candidate irreps of all five exceptional algebras and
/// filters by Eqs. (3.1)–(3.2). Returns the survivors together with a
/// certificate asserting they are exactly the two 27-dimensional e6
/// irreps and the 7-dimensional g2 irrep.
pub fn enumerate_exclusion_table(p_max: u64) -> Result<(Vec<Survivor>, Certificate), LieError> {
    if p_max < 13 {
        return Err(LieError::PMaxTooSmall(p_max));
    }
    let start = Instant::now();
    let mut survivors = Vec::new();
    let mut candidates_examined = 0u64;
    for algebra in Algebra::ALL {
        let lattice = WeightLattice::new(algebra);
        let algebra_dim = lattice.algebra_dim();
        for (weight, dim) in irreps_up_to_dimension(&lattice, algebra_dim + 1) {
            candidates_examined += 1;
            // Eq. (3.2): odd dimension 2p+1 with 7 ≤ 2p+1 ≤ dim ĥ + 1.
            if dim % 2 == 0 || dim < 7 {
                continue;
            }
            let p = (dim - 1) / 2;
            // Eq. (3.1): ρ(4p+4) ≥ 4p+3 − dim ĥ.
            let required = (4 * p + 3).saturating_sub(algebra_dim);
            if radon_hurwitz(4 * p + 4) < required {
                continue;
            }
            survivors.push(Survivor {
                algebra,
                highest_weight: weight,
                dim,
            });
        }
    }
    survivors.sort_by(|a, b| (a.algebra, &a.highest_weight).cmp(&(b.algebra, &b.highest_weight)));

    let expected = [
        (Algebra::G2, vec![1i64, 0], 7u64),
        (Algebra::E6, vec![1, 0, 0, 0, 0, 0], 27),
        (Algebra::E6, vec![0, 0, 0, 0, 0, 1], 27),
    ];
    let matches_expected = survivors.len() == 3
        && expected.iter().all(|(alg, w, d)| {
            survivors
                .iter()
                .any(|s| s.algebra == *alg && &s.highest_weight == w && s.dim == *d)
        });

    let mut cert = Certificate::new("section3.exclusion.survivors", "section-3")
        .param("p_max", p_max)
        .param("candidates_examined", candidates_examined)
        .witness("survivor_count", survivors.len())
        .witness(
            "survivors",
            survivors
                .iter()
                .map(|s| format!("({}, {:?}, {})", s.algebra.name(), s.highest_weight, s.dim))
                .collect::<Vec<_>>()
                .join("; "),
        )
        .witness(
            "literature_inputs",
            "rho(4p+4) >= 4p+3-dim from Cadek-Crabb Prop. 3.1; \
             the surviving g2 case is removed by the clutching-class \
             argument in pi_14(SO(15)) = Z_2, not recomputed here",
        );
    if matches_expected {
        cert = cert.verdict(crate::cert::Verdict::Holds);
    } else {
        cert = cert.fail(
            "unexpected_survivors",
            format!("{survivors:?}"),
        );
    }
    let cert = cert.runtime(start.elapsed().as_millis() as u64);
    Ok((survivors, cert))
}
