//! Arithmetic backbone of the §3 topology argument: Radon–Hurwitz
//! numbers, Weyl dimension enumeration for the exceptional Lie algebras,
//! and the e6-invariant multiplicity in `S³ℂ²⁷` (§5.2 remark).

mod exclusion;
mod invariant;
mod lattice;
mod radon;

pub use exclusion::{enumerate_exclusion_table, irreps_in_box, irreps_up_to_dimension, Survivor};
pub use invariant::{
    character_weights, decompose_character, e6_cubic_invariant_dim,
    e6_symmetric_power_trivial_multiplicity, symmetric_power_weights, weyl_orbit,
};
pub use lattice::{Algebra, LieError, WeightLattice};
pub use radon::{clifford_structures_r16, radon_hurwitz};
