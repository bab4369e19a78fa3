//! Verification engine for holomorphic pinching thresholds on even-dimensional
//! Kähler manifolds.
//!
//! The crate is organised in five layers:
//!
//! * [`exact`] — scalars in the ring generated by the rationals and square
//!   roots of squarefree integers, with decidable comparison backed by
//!   adaptive-precision dyadic interval arithmetic;
//! * [`unipoly`] — univariate rational polynomials with Sturm-sequence root
//!   isolation and ray-positivity certification;
//! * [`thresholds`] — the pinching constants and their certified properties
//!   (roots, monotonicity, the final inequality chain);
//! * [`curvature`] — algebraic curvature tensors with complex structure,
//!   random pinched generators and the constrained optimizer checking the
//!   sectional-curvature bounds;
//! * [`fiber`] — exact harmonic analysis on the sphere fiber: polynomial
//!   sections, moment integration and the integral identities;
//! * [`lie`] — Radon-Hurwitz numbers, Weyl dimensions for the exceptional
//!   algebras and the odd-dimensional irrep exclusion table.
//!
//! Every verified claim is reported as a [`cert::Certificate`].

pub mod cert;
pub mod curvature;
pub mod exact;
pub mod fiber;
pub mod lie;
pub mod thresholds;
pub mod unipoly;

pub use cert::{Certificate, Verdict};
pub use exact::{DyadicInterval, ExactScalar, Ordering3};
