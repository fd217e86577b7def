//! Finite semigroup workbench.
//!
//! Explicit Cayley-table semigroups, Green's relations and DS/LDS membership,
//! identity checking and bounded isoterm search, the `u_n ≈ v_n` identity
//! family with its projection properties, bounded divisor search, and the
//! embedding of the i-Catalan monoid `IC_4` into upper triangular matrices
//! over GF(2).

pub mod constructions;
pub mod divisor;
pub mod error;
pub mod green;
pub mod nfb;
pub mod semigroup;
pub mod words;

pub use divisor::{
    cross_validate_ds, cross_validate_lds, find_onto_morphism, generated_subsemigroup, has_divisor,
    Agreement, CrossValidation, DivisorWitness, SearchOutcome,
};
pub use error::{Error, Result};
pub use green::{green, in_ds, in_lds, local_submonoid, GreenData, Partition};
pub use semigroup::{
    adjoin_identity, direct_product, generate, power_data, FiniteSemigroup, Generated, PowerData,
    Validation, DEFAULT_ELEMENT_CAP,
};
pub use words::{Identity, Word};
