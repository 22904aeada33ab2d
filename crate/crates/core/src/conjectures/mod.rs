//! Predicted Betti tables, predicates on diagrams, and explicit syzygies.

mod expected;
mod predicates;
mod witness;

pub use expected::{expected_table, ExpectedTable, Family, FormulaValue};
pub use predicates::{
    canonical_hilbert, diagonal_difference, diagonal_identity_check, duality_check, green_predicate,
    hilbert_diagonal_check, is_natural, is_pure, nonspecial_hilbert, np_property, CheckOutcome,
};
pub use witness::{generic_first_section, gl_witness, witness_quadric, WitnessSyzygy};

use crate::koszul::KoszulError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConjectureError {
    #[error("{family} needs a genus of the other parity (got {genus})")]
    ParityMismatch { family: Family, genus: usize },
    #[error("{family} is defined for genus >= {min} (got {genus})")]
    GenusTooSmall { family: Family, genus: usize, min: usize },
    #[error("entry ({p}, {q}) is {num}/{den}, not an integer")]
    NotIntegral { p: usize, q: usize, num: i64, den: i64 },
    #[error("undecidable in window: {0}")]
    Undecidable(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("witness in degree {p} is not a cocycle")]
    WitnessNotCocycle { p: usize },
    #[error("witness in degree {p} is a coboundary; choose other sections")]
    WitnessCoboundary { p: usize },
    #[error(transparent)]
    Koszul(#[from] KoszulError),
}
