//! Heffter difference matrices over cyclotomic half-sets of prime fields.
//!
//! The pipeline is
//!
//! 1. [`field::FieldCtx`]: `F_q` with a primitive root and log tables,
//! 2. [`halfset::HalfSet`]: a union of signed cyclotomic classes of order `2k`,
//! 3. [`hdm::HeffterDifferenceMatrix`]: `r` zero-sum rows with distinct column ratios,
//! 4. [`space::expand`]: the `((q-1)/2, k; r)` Heffter space generated by the rows,
//! 5. [`cycles::build_cycle_systems`]: `r` mutually orthogonal `k`-cycle systems of `K_q`.
//!
//! [`search`] finds matrices (exhaustively, at random, or greedily above the
//! field-size bound) and every stage has an independent verifier.

pub mod certificate;
pub mod cycles;
pub mod error;
pub mod field;
pub mod halfset;
pub mod hdm;
pub mod search;
pub mod space;

pub use error::{Error, Result};
pub use field::{admissible, Elem, FieldCtx};
pub use halfset::HalfSet;
pub use hdm::HeffterDifferenceMatrix;
pub use space::HeffterSpace;
