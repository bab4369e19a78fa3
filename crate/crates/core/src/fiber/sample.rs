//! Seeded sampling of admissible sections in `Ω_k ⊗ E`.
//!
//! The admissible sections (harmonic degree `k`, contraction-degree
//! conditions, optional `[J,f] = 0`) form the kernel of an exact linear
//! system. Two tiers:
//!
//! * **full basis** — when the ambient coefficient space is small, the
//!   kernel is computed by exact rational row reduction over the full
//!   monomial basis, so the reported kernel dimension is exact;
//! * **generator span** — otherwise the system is restricted to the span
//!   of structured generator families (products of harmonic scalars with
//!   equivariant linear maps) that satisfy the expensive constraints by
//!   construction. The reported dimension is then a lower bound for the
//!   true kernel, flagged by `restricted_to_span`.
//!
//! Every returned section is re-verified against all requested
//! constraints exactly, independent of which tier produced it.

use super::poly::Poly;
use super::section::{ESpace, PolySection};
use crate::curvature::ComplexStructure;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use thiserror::Error;

/// Columns above which the sampler switches to the generator-span tier.
const FULL_BASIS_LIMIT: usize = 300;

#[derive(Debug, Error)]
pub enum SampleError {
    #[error("fiber dimension must be even and at least 4, got {0}")]
    InvalidDimension(usize),
    #[error("degree {k} with constraint set is not supported for {space:?}")]
    Unsupported { space: ESpace, k: usize },
}

/// Which admissibility constraints to impose on top of harmonic degree `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Constraints {
    /// `degree_project(ι_v f, k+1) = 0` (f has contraction degree ≤ k−1).
    pub iota_v_degree: bool,
    /// `degree_project(ι_{Jv} f, k+1) = 0` (V-valued sections).
    pub iota_jv_degree: bool,
    /// `degree_project(ι_v ι_v f, k) = 0` (S²V-valued sections).
    pub iota_v_iota_v_degree: bool,
    /// `[J, f] = 0` (S²V-valued sections).
    pub j_commute: bool,
}

impl Constraints {
    pub fn all() -> Self {
        Constraints {
            iota_v_degree: true,
            iota_jv_degree: true,
            iota_v_iota_v_degree: true,
            j_commute: true,
        }
    }

    pub fn none() -> Self {
        Constraints {
            iota_v_degree: false,
            iota_jv_degree: false,
            iota_v_iota_v_degree: false,
            j_commute: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KernelInfo {
    /// Number of basis sections the system was solved over.
    pub basis_dim: usize,
    /// Dimension of the solution space over that basis.
    pub kernel_dim: usize,
    /// True when the basis was a structured generator span rather than
    /// the full ambient monomial basis (kernel_dim is then a lower bound).
    pub restricted_to_span: bool,
}

#[derive(Debug, Clone)]
pub enum SampleOutcome {
    Section {
        section: PolySection,
        info: KernelInfo,
    },
    EmptyKernel {
        info: KernelInfo,
    },
}

/// All exponent vectors of total degree `d` in `n` variables.
pub fn monomials(n: usize, d: usize) -> Vec<Vec<u8>> {
    fn rec(n: usize, d: usize, prefix: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if prefix.len() + 1 == n {
            prefix.push(d as u8);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in 0..=d {
            prefix.push(e as u8);
            rec(n, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, d, &mut Vec::new(), &mut out);
    out
}

/// `Re((x_a + i·x_b)^d)` or `Im((x_a + i·x_b)^d)` as a polynomial in `n`
/// variables: a two-variable solid harmonic of degree `d`, exactly
/// harmonic by the Cauchy–Riemann equations and only `⌈(d+1)/2⌉` terms.
fn plane_harmonic(n: usize, d: usize, a: usize, b: usize, real: bool) -> Poly {
    let mut terms = Vec::new();
    for j in 0..=d {
        if real != (j % 2 == 0) {
            continue;
        }
        // coefficient of x_a^{d−j} x_b^j in Re/Im((x_a + i x_b)^d)
        let sign = if (j / 2) % 2 == 0 { 1 } else { -1 };
        let coeff = num_integer::binomial(
            num_bigint::BigInt::from(d),
            num_bigint::BigInt::from(j),
        ) * sign;
        let mut exps = vec![0u8; n];
        exps[a] = (d - j) as u8;
        exps[b] = j as u8;
        terms.push((exps, BigRational::from_integer(coeff)));
    }
    Poly::from_terms(n, terms)
}

/// Seeded random harmonic homogeneous polynomial of degree `d`: a short
/// integer combination of two-variable solid harmonics. Deliberately
/// sparse (a handful of monomials) — downstream identity checks integrate
/// products of these, and their cost is quadratic in the term count.
pub fn random_harmonic(n: usize, d: usize, rng: &mut ChaCha8Rng) -> Poly {
    if d == 0 {
        let c: i64 = rng.gen_range(1..=5) * if rng.gen_bool(0.5) { 1 } else { -1 };
        return Poly::constant(n, BigRational::from_integer(c.into()));
    }
    loop {
        let mut h = Poly::zero(n);
        for _ in 0..2 {
            let c: i64 = rng.gen_range(-5..=5);
            if c == 0 {
                continue;
            }
            let a = rng.gen_range(0..n);
            let mut b = rng.gen_range(0..n);
            while b == a {
                b = rng.gen_range(0..n);
            }
            let real = rng.gen_bool(0.5);
            h = h.add(&plane_harmonic(n, d, a, b, real).scale(&BigRational::from_integer(c.into())));
        }
        if h.is_zero() {
            continue;
        }
        debug_assert!(h.laplacian().is_zero());
        return h;
    }
}

/// Exact kernel basis of the homogeneous system `A x = 0`, where `A` is
/// given row-wise with `cols` columns.
pub fn rational_kernel(mut rows: Vec<Vec<BigRational>>, cols: usize) -> Vec<Vec<BigRational>> {
    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut rank = 0usize;
    for col in 0..cols {
        // find a pivot in rows[rank..]
        let pivot = (rank..rows.len()).find(|&r| !rows[r][col].is_zero());
        let Some(p) = pivot else { continue };
        rows.swap(rank, p);
        let inv = rows[rank][col].recip();
        for v in rows[rank].iter_mut() {
            *v *= &inv;
        }
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let factor = rows[r][col].clone();
                for c in col..cols {
                    let delta = &factor * &rows[rank][c];
                    rows[r][c] -= delta;
                }
            }
        }
        pivot_cols.push(col);
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    let pivot_set: std::collections::BTreeSet<usize> = pivot_cols.iter().copied().collect();
    let mut kernel = Vec::new();
    for free in 0..cols {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut vec = vec![BigRational::zero(); cols];
        vec[free] = BigRational::one();
        for (r, &pc) in pivot_cols.iter().enumerate() {
            vec[pc] = -rows[r][free].clone();
        }
        kernel.push(vec);
    }
    kernel
}

/// Coefficient fingerprint of all requested constraints applied to one
/// basis section, keyed so that fingerprints of different sections align.
fn constraint_fingerprint(
    s: &PolySection,
    k: usize,
    cons: &Constraints,
    jay: &ComplexStructure,
    include_harmonicity: bool,
) -> BTreeMap<(u8, usize, Vec<u8>), BigRational> {
    let mut out = BTreeMap::new();
    let push = |tag: u8, comp: usize, p: &Poly, out: &mut BTreeMap<_, _>| {
        for (e, c) in p.terms() {
            out.insert((tag, comp, e.clone()), c.clone());
        }
    };
    if include_harmonicity {
        for (ci, p) in s.comps().iter().enumerate() {
            push(0, ci, &p.laplacian(), &mut out);
        }
    }
    if cons.iota_v_degree && s.space() != ESpace::Scalar {
        let proj = s.iota_v().degree_project(k + 1);
        for (ci, p) in proj.comps().iter().enumerate() {
            push(1, ci, p, &mut out);
        }
    }
    if cons.iota_jv_degree && s.space() == ESpace::V {
        let proj = s.iota_jv(jay).degree_project(k + 1);
        for (ci, p) in proj.comps().iter().enumerate() {
            push(2, ci, p, &mut out);
        }
    }
    if cons.iota_v_iota_v_degree && s.space() == ESpace::S2V && k >= 1 {
        let proj = s.iota_v().iota_v().degree_project(k);
        for (ci, p) in proj.comps().iter().enumerate() {
            push(3, ci, p, &mut out);
        }
    }
    if cons.j_commute && s.space() == ESpace::S2V {
        for (ci, p) in s.j_commutator(jay).iter().enumerate() {
            push(4, ci, p, &mut out);
        }
    }
    out
}

/// Verifies every requested constraint exactly on a concrete section.
pub fn verify_constraints(
    s: &PolySection,
    k: usize,
    cons: &Constraints,
    jay: &ComplexStructure,
) -> bool {
    if s.harmonic_degree() != Some(k) {
        return false;
    }
    constraint_fingerprint(s, k, cons, jay, false).is_empty()
}

/// Full ambient monomial basis of candidate sections.
fn ambient_basis(n: usize, k: usize, space: ESpace) -> Vec<PolySection> {
    let monos = monomials(n, k);
    let mut basis = Vec::new();
    match space {
        ESpace::Scalar => {
            for e in &monos {
                basis.push(PolySection::scalar(Poly::from_terms(
                    n,
                    [(e.clone(), BigRational::one())],
                )));
            }
        }
        ESpace::V => {
            for comp in 0..n {
                for e in &monos {
                    let mut comps = vec![Poly::zero(n); n];
                    comps[comp] = Poly::from_terms(n, [(e.clone(), BigRational::one())]);
                    basis.push(PolySection::vector(comps));
                }
            }
        }
        ESpace::S2V => {
            for a in 0..n {
                for b in a..n {
                    for e in &monos {
                        let mono = Poly::from_terms(n, [(e.clone(), BigRational::one())]);
                        let mut comps = vec![Poly::zero(n); n * n];
                        comps[a * n + b] = mono.clone();
                        comps[b * n + a] = mono;
                        basis.push(PolySection::sym_matrix(n, comps));
                    }
                }
            }
        }
    }
    basis
}

/// Basis of `{B : Bᵀ = −B, BJ + JB = 0}` (real skew maps anticommuting
/// with `J`), computed once by exact row reduction on the n²-dimensional
/// matrix space.
fn skew_anticommuting_basis(jay: &ComplexStructure) -> Vec<Vec<BigRational>> {
    let n = jay.dim();
    let cols = n * n;
    let idx = |i: usize, j: usize| i * n + j;
    let mut rows: Vec<Vec<BigRational>> = Vec::new();
    // Bᵀ + B = 0
    for i in 0..n {
        for j in i..n {
            let mut row = vec![BigRational::zero(); cols];
            row[idx(i, j)] += BigRational::one();
            row[idx(j, i)] += BigRational::one();
            rows.push(row);
        }
    }
    // (BJ + JB)_{ij} = Σ_c B_{ic} J_{cj} + J_{ic} B_{cj} = 0
    for i in 0..n {
        for j in 0..n {
            let mut row = vec![BigRational::zero(); cols];
            for c in 0..n {
                let jcj = jay.entry(c, j);
                if jcj != 0 {
                    row[idx(i, c)] += BigRational::from_integer(jcj.into());
                }
                let jic = jay.entry(i, c);
                if jic != 0 {
                    row[idx(c, j)] += BigRational::from_integer(jic.into());
                }
            }
            if row.iter().any(|v| !v.is_zero()) {
                rows.push(row);
            }
        }
    }
    rational_kernel(rows, cols)
}

fn matrix_from_flat(n: usize, flat: &[BigRational]) -> Vec<Vec<BigRational>> {
    (0..n)
        .map(|i| (0..n).map(|j| flat[i * n + j].clone()).collect())
        .collect()
}

/// `Bv` as a vector of degree-1 polynomials.
fn linear_map_poly(b: &[Vec<BigRational>]) -> Vec<Poly> {
    let n = b.len();
    (0..n)
        .map(|i| {
            let mut acc = Poly::zero(n);
            for j in 0..n {
                if !b[i][j].is_zero() {
                    acc = acc.add(&Poly::variable(n, j).scale(&b[i][j]));
                }
            }
            acc
        })
        .collect()
}

/// Random skew map anticommuting with `J`, as an integer combination of
/// the exact basis.
fn random_skew_anti(
    basis: &[Vec<BigRational>],
    n: usize,
    rng: &mut ChaCha8Rng,
) -> Vec<Vec<BigRational>> {
    loop {
        // A short combination of basis elements: the basis matrices are
        // sparse and the generators built from `B` inherit that sparsity,
        // which keeps the term count of sampled sections (and the cost of
        // the exact identity checks, quadratic in it) small.
        let mut flat = vec![BigRational::zero(); n * n];
        for _ in 0..2 {
            let b = &basis[rng.gen_range(0..basis.len())];
            let c: i64 = rng.gen_range(-3..=3);
            if c == 0 {
                continue;
            }
            let cr = BigRational::from_integer(c.into());
            for (t, v) in flat.iter_mut().zip(b) {
                *t += v * &cr;
            }
        }
        if flat.iter().any(|v| !v.is_zero()) {
            return matrix_from_flat(n, &flat);
        }
    }
}

/// Structured generators for `Ω_k ⊗ V`: `f = (Bv)h − |v|²(B∇h)/(n+2k−4)`
/// with `h` harmonic of degree `k−1` and `B ∈ {Id, J} ∪ {skew, BJ=−JB}`.
/// Each component is harmonic of degree `k` and the contraction-degree
/// conditions hold by construction.
fn v_generators(n: usize, k: usize, jay: &ComplexStructure, rng: &mut ChaCha8Rng) -> Vec<PolySection> {
    assert!(k >= 1);
    let c = BigRational::new((-1i64).into(), ((n + 2 * k - 4) as i64).into());
    let r2 = Poly::radius_squared(n);
    let skew = skew_anticommuting_basis(jay);
    let ident: Vec<Vec<BigRational>> = (0..n)
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
    let jmat: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| BigRational::from_integer(jay.entry(i, j).into()))
                .collect()
        })
        .collect();
    let mut gens = Vec::new();
    for t in 0..12 {
        let b = match t % 3 {
            0 => ident.clone(),
            1 => jmat.clone(),
            _ => random_skew_anti(&skew, n, rng),
        };
        let h = random_harmonic(n, k - 1, rng);
        let bv = linear_map_poly(&b);
        let comps: Vec<Poly> = (0..n)
            .map(|i| {
                // (Bv)_i h + c |v|² (B∇h)_i
                let mut bgrad = Poly::zero(n);
                for j in 0..n {
                    if !b[i][j].is_zero() {
                        bgrad = bgrad.add(&h.derivative(j).scale(&b[i][j]));
                    }
                }
                bv[i].mul(&h).add(&r2.mul(&bgrad).scale(&c))
            })
            .collect();
        gens.push(PolySection::vector(comps));
    }
    gens
}

/// Structured generators for `Ω_k ⊗ S²V`: the degree-`k` harmonic
/// projection of `M_B(v)·h` with `M_B(v) = (Bv)(Bv)ᵀ + (JBv)(JBv)ᵀ`,
/// `B` skew anticommuting with `J` and `h` harmonic of degree `k−2`.
/// `[J, M_B] = 0` and `ι_v M_B = 0` hold identically.
fn s2_generators(
    n: usize,
    k: usize,
    jay: &ComplexStructure,
    rng: &mut ChaCha8Rng,
) -> Vec<PolySection> {
    assert!(k >= 2);
    let skew = skew_anticommuting_basis(jay);
    let mut gens = Vec::new();
    for _ in 0..12 {
        let b = random_skew_anti(&skew, n, rng);
        let h = if k == 2 {
            Poly::one(n)
        } else {
            random_harmonic(n, k - 2, rng)
        };
        let bv = linear_map_poly(&b);
        let jbv: Vec<Poly> = {
            let mut out = vec![Poly::zero(n); n];
            for (col, p) in bv.iter().enumerate() {
                let (row, sign) = jay.image_of_basis(col);
                out[row] = p.scale(&BigRational::from_integer(sign.into()));
            }
            out
        };
        let mut comps = vec![Poly::zero(n); n * n];
        for a in 0..n {
            for bb in a..n {
                let m = bv[a].mul(&bv[bb]).add(&jbv[a].mul(&jbv[bb])).mul(&h);
                comps[a * n + bb] = m.clone();
                comps[bb * n + a] = m;
            }
        }
        let sec = PolySection::sym_matrix(n, comps).degree_project(k);
        if !sec.is_zero() {
            gens.push(sec);
        }
    }
    gens
}

/// Reduces a generator list to an independent subset (exact rank over the
/// coefficient space).
fn independent_subset(gens: Vec<PolySection>) -> Vec<PolySection> {
    // Gaussian elimination on coefficient vectors keyed by (comp, monomial).
    let mut reduced: Vec<(BTreeMap<(usize, Vec<u8>), BigRational>, usize)> = Vec::new();
    let mut keep = Vec::new();
    'outer: for (gi, g) in gens.iter().enumerate() {
        let mut vec: BTreeMap<(usize, Vec<u8>), BigRational> = BTreeMap::new();
        for (ci, p) in g.comps().iter().enumerate() {
            for (e, c) in p.terms() {
                vec.insert((ci, e.clone()), c.clone());
            }
        }
        for (r, _) in &reduced {
            let Some((lead, lead_val)) = r.iter().next() else { continue };
            if let Some(v) = vec.get(lead) {
                let factor = v / lead_val;
                for (key, rv) in r {
                    let entry = vec.entry(key.clone()).or_insert_with(BigRational::zero);
                    *entry -= &factor * rv;
                    if entry.is_zero() {
                        vec.remove(key);
                    }
                }
            }
            if vec.is_empty() {
                continue 'outer;
            }
        }
        if !vec.is_empty() {
            reduced.push((vec, gi));
            keep.push(gens[gi].clone());
        }
    }
    keep
}

/// A solved admissible-section system: the (possibly span-restricted)
/// kernel is computed once and arbitrarily many seeded sections are
/// drawn from it.
pub struct AdmissibleSampler {
    n: usize,
    k: usize,
    space: ESpace,
    cons: Constraints,
    jay: ComplexStructure,
    /// Kernel basis realized as concrete sections.
    kernel_sections: Vec<PolySection>,
    info: KernelInfo,
}

impl AdmissibleSampler {
    /// Builds the candidate basis, assembles the exact constraint
    /// system, and solves for its kernel. `basis_seed` only matters in
    /// the generator-span tier, where it seeds the structured
    /// generators.
    pub fn new(
        n: usize,
        k: usize,
        space: ESpace,
        cons: &Constraints,
        basis_seed: u64,
    ) -> Result<Self, SampleError> {
        if n < 4 || n % 2 != 0 {
            return Err(SampleError::InvalidDimension(n));
        }
        let jay = ComplexStructure::canonical(n);
        let mut rng = ChaCha8Rng::seed_from_u64(basis_seed);

        let comp_dim = match space {
            ESpace::Scalar => 1,
            ESpace::V => n,
            ESpace::S2V => n * (n + 1) / 2,
        };
        let ambient_cols = monomials(n, k).len() * comp_dim;
        let (basis, restricted) = if ambient_cols <= FULL_BASIS_LIMIT {
            (ambient_basis(n, k, space), false)
        } else {
            let gens = match space {
                ESpace::V if k >= 1 => v_generators(n, k, &jay, &mut rng),
                ESpace::S2V if k >= 2 => s2_generators(n, k, &jay, &mut rng),
                _ => return Err(SampleError::Unsupported { space, k }),
            };
            let gens = gens.into_iter().map(|g| g.primitive()).collect();
            (independent_subset(gens), true)
        };
        let basis_dim = basis.len();
        if basis_dim == 0 {
            return Ok(AdmissibleSampler {
                n,
                k,
                space,
                cons: *cons,
                jay,
                kernel_sections: Vec::new(),
                info: KernelInfo {
                    basis_dim: 0,
                    kernel_dim: 0,
                    restricted_to_span: restricted,
                },
            });
        }

        // Assemble the constraint system over the chosen basis.
        let fingerprints: Vec<_> = basis
            .iter()
            .map(|s| constraint_fingerprint(s, k, cons, &jay, !restricted))
            .collect();
        let mut keys: BTreeMap<(u8, usize, Vec<u8>), usize> = BTreeMap::new();
        for fp in &fingerprints {
            for key in fp.keys() {
                let next = keys.len();
                keys.entry(key.clone()).or_insert(next);
            }
        }
        let mut rows = vec![vec![BigRational::zero(); basis_dim]; keys.len()];
        for (col, fp) in fingerprints.iter().enumerate() {
            for (key, val) in fp {
                rows[keys[key]][col] = val.clone();
            }
        }
        let kernel = rational_kernel(rows, basis_dim);
        let info = KernelInfo {
            basis_dim,
            kernel_dim: kernel.len(),
            restricted_to_span: restricted,
        };
        // Realize each kernel vector as a section once. The raw kernel
        // vectors carry large rational entries from row reduction, so
        // reduce each section to its primitive integer representative —
        // downstream identity checks multiply polynomials and would
        // otherwise hit enormous numerators.
        let kernel_sections = kernel
            .iter()
            .map(|kv| {
                let mut acc = PolySection::zero(n, space);
                for (col, w) in kv.iter().enumerate() {
                    if !w.is_zero() {
                        acc = acc.add(&basis[col].scale(w));
                    }
                }
                acc.primitive()
            })
            .collect();
        Ok(AdmissibleSampler {
            n,
            k,
            space,
            cons: *cons,
            jay,
            kernel_sections,
            info,
        })
    }

    pub fn info(&self) -> KernelInfo {
        self.info
    }

    /// Seeded random integer combination of the kernel basis; `None`
    /// when the kernel is trivial. Every returned section is re-verified
    /// against all constraints exactly.
    pub fn sample(&self, seed: u64) -> Option<PolySection> {
        if self.kernel_sections.is_empty() {
            return None;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        // Combine at most four kernel basis sections: any combination is
        // admissible, and short ones keep the term count — and with it
        // the cost of the exact integral identities downstream — low.
        let picks = self.kernel_sections.len().min(4);
        let section = loop {
            let mut acc = PolySection::zero(self.n, self.space);
            for _ in 0..picks {
                let ks = &self.kernel_sections[rng.gen_range(0..self.kernel_sections.len())];
                let c: i64 = rng.gen_range(-7..=7);
                if c == 0 {
                    continue;
                }
                let cr = BigRational::from_integer(c.into());
                acc = acc.add(&ks.scale(&cr));
            }
            if !acc.is_zero() {
                break acc.primitive();
            }
        };
        assert!(
            verify_constraints(&section, self.k, &self.cons, &self.jay),
            "sampled section failed exact constraint re-verification"
        );
        Some(section)
    }
}

/// Samples a seeded admissible section of `Ω_k ⊗ E`, or reports that the
/// searched space contains none. One-shot convenience over
/// [`AdmissibleSampler`]; use the sampler directly to draw many sections
/// without re-solving the kernel.
pub fn sample_admissible_section(
    n: usize,
    k: usize,
    space: ESpace,
    cons: &Constraints,
    seed: u64,
) -> Result<SampleOutcome, SampleError> {
    let sampler = AdmissibleSampler::new(n, k, space, cons, seed)?;
    let info = sampler.info();
    match sampler.sample(seed) {
        Some(section) => Ok(SampleOutcome::Section { section, info }),
        None => Ok(SampleOutcome::EmptyKernel { info }),
    }
}
