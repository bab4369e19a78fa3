//! Algebraic curvature tensors with a complex structure.
//!
//! Sign convention: `g∧g` is stored as
//! `g∧g(X,Y,Z,W) = ⟨X,Z⟩⟨Y,W⟩ − ⟨X,W⟩⟨Y,Z⟩`, and the sectional value is
//! evaluated in the slot order `R̄(X,Y) = R(X,Y,Y,X)` (the order fixed by
//! `H(X) = R(X,JX,JX,X)`). Under that order, on orthonormal pairs:
//!
//! | tensor | `H(X)`             | `R̄(X,Y)`, `⟨X,JY⟩ = 0` | `R(X,Y,X,Y)` |
//! |--------|--------------------|-------------------------|--------------|
//! | `g∧g`  | `−1` (no `J` role) | `−1`                    | `+1`         |
//! | `G`    | `−1`               | `−1/4`                  | `+1/4`       |
//!
//! `g∧g` is the curvature tensor of the real hyperbolic model (constant
//! sectional value `−1`); its familiar "+1" value lives in the opposite slot
//! order `R(X,Y,X,Y)`, which differs by one antisymmetry swap. Both orders
//! are exercised by the exact-path tests so the convention cannot drift
//! silently.

mod derivation;
mod generate;
mod optimize;
mod tensor;

pub use derivation::{derivation_extend, BoundCheck, DerivationAction, TensorSpace};
pub use generate::{random_pinched_kahler, GeneratorError, PinchedSample};
pub use optimize::{
    optimize_holomorphic, optimize_stratum, verify_bishop_goldberg, OptimizeConfig, PinchReport,
    StratumReport,
};
pub use tensor::{
    complex_hyperbolic_g, complex_hyperbolic_g_endomorphism_form, g_wedge_g, ComplexStructure,
    CurvatureTensor, TensorScalar,
};
