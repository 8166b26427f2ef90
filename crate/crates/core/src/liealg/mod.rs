//! Exact analysis of finite-dimensional Lie algebras over ℚ given by
//! structure constants.

mod classify;
mod derivation;
mod ideal;
mod killing;
mod levi;
mod structure;
mod subspace;

use thiserror::Error;

pub use classify::{classify_3dim_simple, classify_subalgebra, SimpleType};
pub use derivation::{derivations, is_derivation, DerivationSpace};
pub use ideal::{
    abelian_ideal_check, center, centroid, derived_series, derived_subalgebra,
    find_abelian_ideals_coordinate, find_ideals_coordinate, ideal_check, ideal_generated,
    is_semisimple, is_simple, is_solvable, radical, simplicity, Simplicity, MAX_SEARCH_DIM,
};
pub use killing::{killing_form, KillingMatrix, Signature};
pub use levi::{levi_decomposition, verify_levi, LeviResult};
pub use structure::{format_combination, JacobiViolation, StructureConstants};
pub use subspace::Subspace;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LieError {
    #[error("structure constants have inconsistent shape: {0}")]
    Shape(String),
    #[error("[{0}, {1}] is not antisymmetric")]
    NotAntisymmetric(String, String),
    #[error("generators are linearly dependent")]
    DependentGenerators,
    #[error("[{left}, {right}] = {bracket} is not in the span of the generators")]
    NonClosure {
        left: String,
        right: String,
        bracket: String,
    },
    #[error("subspace is not closed under the bracket")]
    NotClosed,
    #[error("expected a {expected}-dimensional algebra, found {found}")]
    WrongDimension { expected: usize, found: usize },
    #[error("coordinate search is limited to dimension {max}, found {found}")]
    TooLarge { max: usize, found: usize },
    #[error("Levi lifting system is inconsistent at layer {0}")]
    LiftInconsistent(usize),
    #[error("Levi decomposition failed verification: {0}")]
    LeviVerification(String),
}
