//! Polynomial sections of trivial tensor bundles over the sphere fiber.
//!
//! A section is a scalar, vector (`V`), or symmetric-matrix (`S²V`) valued
//! polynomial in the fiber variable `v`; its value on the sphere is the
//! restriction of the homogeneous lift. Spherical-harmonic structure is
//! accessed through the classical decomposition of homogeneous polynomials
//! `F_d = Σ_j |v|^{2j} h_{d−2j}` with `h` harmonic, computed exactly by
//! recursion on the Euclidean Laplacian.

use super::moments::sphere_integrate;
use super::poly::Poly;
use crate::curvature::ComplexStructure;
use num_rational::BigRational;
use std::collections::BTreeMap;

/// Target space of a section.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ESpace {
    Scalar,
    V,
    S2V,
}

impl ESpace {
    pub fn component_count(&self, n: usize) -> usize {
        match self {
            ESpace::Scalar => 1,
            ESpace::V => n,
            ESpace::S2V => n * n,
        }
    }
}

/// A tensor-valued polynomial section. `S²V` components are stored as a
/// full `n×n` matrix (row-major) with symmetry enforced on construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolySection {
    n: usize,
    space: ESpace,
    comps: Vec<Poly>,
}

impl PolySection {
    pub fn scalar(p: Poly) -> Self {
        PolySection {
            n: p.nvars(),
            space: ESpace::Scalar,
            comps: vec![p],
        }
    }

    pub fn vector(comps: Vec<Poly>) -> Self {
        let n = comps.len();
        assert!(n > 0);
        assert!(comps.iter().all(|p| p.nvars() == n));
        PolySection {
            n,
            space: ESpace::V,
            comps,
        }
    }

    /// Row-major `n×n` entries; panics unless symmetric.
    pub fn sym_matrix(n: usize, comps: Vec<Poly>) -> Self {
        assert_eq!(comps.len(), n * n);
        assert!(comps.iter().all(|p| p.nvars() == n));
        for a in 0..n {
            for b in (a + 1)..n {
                assert_eq!(
                    comps[a * n + b], comps[b * n + a],
                    "S²V section must be symmetric"
                );
            }
        }
        PolySection {
            n,
            space: ESpace::S2V,
            comps,
        }
    }

    pub fn zero(n: usize, space: ESpace) -> Self {
        PolySection {
            n,
            space,
            comps: vec![Poly::zero(n); space.component_count(n)],
        }
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn space(&self) -> ESpace {
        self.space
    }

    pub fn comps(&self) -> &[Poly] {
        &self.comps
    }

    pub fn comp(&self, idx: usize) -> &Poly {
        &self.comps[idx]
    }

    pub fn entry(&self, a: usize, b: usize) -> &Poly {
        assert_eq!(self.space, ESpace::S2V);
        &self.comps[a * self.n + b]
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|p| p.is_zero())
    }

    pub fn add(&self, other: &PolySection) -> PolySection {
        assert_eq!((self.n, self.space), (other.n, other.space));
        PolySection {
            n: self.n,
            space: self.space,
            comps: self
                .comps
                .iter()
                .zip(&other.comps)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &PolySection) -> PolySection {
        self.add(&other.scale(&-BigRational::from_integer(1.into())))
    }

    pub fn scale(&self, factor: &BigRational) -> PolySection {
        PolySection {
            n: self.n,
            space: self.space,
            comps: self.comps.iter().map(|p| p.scale(factor)).collect(),
        }
    }

    /// Rescales by the positive rational that makes every coefficient an
    /// integer with overall content 1 (the primitive representative of
    /// the section's ray). No-op on the zero section. Keeps coefficient
    /// sizes small after exact linear-algebra steps, which would
    /// otherwise produce rationals with very large numerators and
    /// denominators.
    pub fn primitive(&self) -> PolySection {
        use num_bigint::BigInt;
        use num_traits::Zero;
        let mut denom_lcm = BigInt::from(1);
        let mut num_gcd = BigInt::from(0);
        for p in &self.comps {
            for (_, c) in p.terms() {
                denom_lcm = num_integer::lcm(denom_lcm, c.denom().clone());
                num_gcd = num_integer::gcd(num_gcd, c.numer().clone());
            }
        }
        if num_gcd.is_zero() {
            return self.clone();
        }
        self.scale(&BigRational::new(denom_lcm, num_gcd))
    }

    fn map(&self, f: impl Fn(&Poly) -> Poly) -> PolySection {
        PolySection {
            n: self.n,
            space: self.space,
            comps: self.comps.iter().map(f).collect(),
        }
    }

    /// Vertical (spherical) Laplacian with the geometer's sign:
    /// `Δ_V F_d = d(n+d−2)·F_d − |v|²·Δ_{ℝⁿ}F_d` on each homogeneous part,
    /// so harmonic degree-`k` sections are eigenvectors with eigenvalue
    /// `k(n+k−2)`.
    pub fn vertical_laplacian(&self) -> PolySection {
        let n = self.n;
        let r2 = Poly::radius_squared(n);
        self.map(|p| {
            let mut out = Poly::zero(n);
            for (d, part) in p.homogeneous_parts() {
                let eig = BigRational::from_integer(((d * (n + d - 2)) as i64).into());
                out = out.add(&part.scale(&eig)).sub(&r2.mul(&part.laplacian()));
            }
            out
        })
    }

    /// Contraction of the first tensor slot with `v`: `V → Scalar`,
    /// `S²V → V`.
    pub fn iota_v(&self) -> PolySection {
        let n = self.n;
        match self.space {
            ESpace::Scalar => panic!("iota_v of a scalar section"),
            ESpace::V => {
                let mut acc = Poly::zero(n);
                for (i, p) in self.comps.iter().enumerate() {
                    acc = acc.add(&p.mul_var(i));
                }
                PolySection::scalar(acc)
            }
            ESpace::S2V => {
                let comps = (0..n)
                    .map(|a| {
                        let mut acc = Poly::zero(n);
                        for b in 0..n {
                            acc = acc.add(&self.comps[a * n + b].mul_var(b));
                        }
                        acc
                    })
                    .collect();
                PolySection::vector(comps)
            }
        }
    }

    /// Contraction of the first slot with `Jv` (for `V`-valued sections
    /// this is `Σᵢ (Jv)ᵢ fᵢ`).
    pub fn iota_jv(&self, jay: &ComplexStructure) -> PolySection {
        let n = self.n;
        match self.space {
            ESpace::Scalar => panic!("iota_jv of a scalar section"),
            ESpace::V => {
                // (Jv)_i = sign · v_src where J e_src = sign e_i.
                let mut acc = Poly::zero(n);
                for (i, p) in self.comps.iter().enumerate() {
                    // (Jv)_i = Σ_j J_{ij} v_j with J_{ij} = ⟨e_i, J e_j⟩
                    for j in 0..n {
                        let s = jay.entry(i, j);
                        if s != 0 {
                            acc = acc.add(
                                &p.mul_var(j)
                                    .scale(&BigRational::from_integer(s.into())),
                            );
                        }
                    }
                }
                PolySection::scalar(acc)
            }
            ESpace::S2V => {
                let comps = (0..n)
                    .map(|a| {
                        let mut acc = Poly::zero(n);
                        for b in 0..n {
                            for j in 0..n {
                                let s = jay.entry(b, j);
                                if s != 0 {
                                    acc = acc.add(
                                        &self.comps[a * n + b]
                                            .mul_var(j)
                                            .scale(&BigRational::from_integer(s.into())),
                                    );
                                }
                            }
                        }
                        acc
                    })
                    .collect();
                PolySection::vector(comps)
            }
        }
    }

    /// Applies `J` to a `V`-valued section: `(Jf)ᵢ = Σⱼ Jᵢⱼ fⱼ`.
    pub fn j_apply(&self, jay: &ComplexStructure) -> PolySection {
        assert_eq!(self.space, ESpace::V);
        let n = self.n;
        let comps = (0..n)
            .map(|i| {
                let mut acc = Poly::zero(n);
                for j in 0..n {
                    let s = jay.entry(i, j);
                    if s != 0 {
                        acc = acc.add(&self.comps[j].scale(&BigRational::from_integer(s.into())));
                    }
                }
                acc
            })
            .collect();
        PolySection::vector(comps)
    }

    /// Matrix commutator `[J, f]` of an `S²V`-valued section (a matrix of
    /// polynomials; zero iff `f(v)` commutes with `J` for all `v`).
    pub fn j_commutator(&self, jay: &ComplexStructure) -> Vec<Poly> {
        assert_eq!(self.space, ESpace::S2V);
        let n = self.n;
        let mut out = vec![Poly::zero(n); n * n];
        for a in 0..n {
            for b in 0..n {
                let mut acc = Poly::zero(n);
                for c in 0..n {
                    let ja = jay.entry(a, c);
                    if ja != 0 {
                        acc = acc.add(
                            &self.comps[c * n + b].scale(&BigRational::from_integer(ja.into())),
                        );
                    }
                    let jb = jay.entry(c, b);
                    if jb != 0 {
                        acc = acc.sub(
                            &self.comps[a * n + c].scale(&BigRational::from_integer(jb.into())),
                        );
                    }
                }
                out[a * n + b] = acc;
            }
        }
        out
    }

    /// Extracts the degree-`k` spherical-harmonic part of the restriction
    /// to the sphere: every homogeneous part `F_d` contributes its
    /// harmonic `h_k` component (the `|v|^{2j}` multipliers restrict to 1).
    pub fn degree_project(&self, k: usize) -> PolySection {
        self.map(|p| {
            let mut out = Poly::zero(self.n);
            for (_, part) in p.homogeneous_parts() {
                let dec = harmonic_decompose(&part);
                if let Some(h) = dec.get(&k) {
                    out = out.add(h);
                }
            }
            out
        })
    }

    /// Pointwise inner product as a scalar polynomial (`Σ` over tensor
    /// components; for `S²V` this is the Frobenius pairing).
    pub fn dot(&self, other: &PolySection) -> Poly {
        assert_eq!((self.n, self.space), (other.n, other.space));
        let mut acc = Poly::zero(self.n);
        for (a, b) in self.comps.iter().zip(&other.comps) {
            acc = acc.add(&a.mul(b));
        }
        acc
    }

    /// `∫ ⟨f, g⟩` over the normalized sphere, exactly.
    pub fn inner_product(&self, other: &PolySection) -> BigRational {
        sphere_integrate(&self.dot(other))
    }

    pub fn norm_squared(&self) -> BigRational {
        self.inner_product(self)
    }

    /// Largest homogeneous degree appearing in any component.
    pub fn degree(&self) -> Option<usize> {
        self.comps.iter().filter_map(|p| p.degree()).max()
    }

    /// `Some(k)` if every nonzero component is homogeneous of degree `k`
    /// and harmonic (so the section lies in `Ω_k ⊗ E`).
    pub fn harmonic_degree(&self) -> Option<usize> {
        let mut found: Option<usize> = None;
        for p in &self.comps {
            if p.is_zero() {
                continue;
            }
            let d = p.homogeneous_degree()?;
            if !p.laplacian().is_zero() {
                return None;
            }
            match found {
                None => found = Some(d),
                Some(prev) if prev == d => {}
                _ => return None,
            }
        }
        found
    }
}

/// Tangential (vertical) gradient of a scalar polynomial:
/// `∇_V F = ∇F − (v·∇F)v`, valid on the sphere.
pub fn vertical_gradient(p: &Poly) -> Vec<Poly> {
    let n = p.nvars();
    let grads: Vec<Poly> = (0..n).map(|i| p.derivative(i)).collect();
    let mut radial = Poly::zero(n);
    for (i, g) in grads.iter().enumerate() {
        radial = radial.add(&g.mul_var(i));
    }
    (0..n)
        .map(|i| grads[i].sub(&radial.mul_var(i)))
        .collect()
}

/// Exact harmonic decomposition `F = Σ_j |v|^{2j} h_{d−2j}` of a
/// homogeneous polynomial; returns the harmonic pieces keyed by degree.
pub fn harmonic_decompose(f: &Poly) -> BTreeMap<usize, Poly> {
    let n = f.nvars();
    let mut out = BTreeMap::new();
    if f.is_zero() {
        return out;
    }
    let d = f
        .homogeneous_degree()
        .expect("harmonic decomposition needs a homogeneous input");
    if d <= 1 {
        out.insert(d, f.clone());
        return out;
    }
    let lap = f.laplacian();
    let lower = harmonic_decompose(&lap);
    // If F = Σ_{m≥0} |v|^{2m} h_{d−2m}, then
    // ΔF = Σ_{m≥1} 2m(n+2d−2m−2) |v|^{2(m−1)} h_{d−2m}, so the harmonic
    // piece of ΔF in degree d−2m determines h_{d−2m}.
    let r2 = Poly::radius_squared(n);
    let mut rest = Poly::zero(n);
    for (s, h) in &lower {
        let m = (d - s) / 2;
        let c = (2 * m * (n + 2 * d - 2 * m - 2)) as i64;
        let h_m = h.scale(&BigRational::new(1.into(), c.into()));
        let mut lifted = h_m.clone();
        for _ in 0..m {
            lifted = lifted.mul(&r2);
        }
        rest = rest.add(&lifted);
        out.insert(*s, h_m);
    }
    let top = f.sub(&rest);
    if !top.is_zero() {
        debug_assert!(top.laplacian().is_zero());
        out.insert(d, top);
    }
    out
}
