//! Exact harmonic analysis on the sphere fiber `S^{n−1}`.
//!
//! Scalar, vector, and symmetric-2-tensor valued polynomial sections with
//! exact rational coefficients; moment-table integration; vertical
//! operators (`Δ_V`, `∇_V`, `ι_v`, harmonic degree projection); seeded
//! sampling of admissible sections; and exact verification of the fiber
//! integral identities (Lemma 4.3, the curvature pairing bound of
//! Lemma 4.1, and the projector norm relation Eq. (5.4)).

mod identities;
mod moments;
mod poly;
mod sample;
mod section;
mod witness;

pub use identities::{
    eq_5_4_certificate, verify_curvature_pairing_bound, verify_g_identity_s2, verify_g_identity_tm,
    FiberError,
};
pub use moments::{sphere_integrate, sphere_moment};
pub use poly::Poly;
pub use sample::{
    sample_admissible_section, AdmissibleSampler, Constraints, KernelInfo, SampleError,
    SampleOutcome,
};
pub use section::{harmonic_decompose, vertical_gradient, ESpace, PolySection};
pub use witness::{quaternionic_projector, quaternionic_pure_part, QuaternionicError};
