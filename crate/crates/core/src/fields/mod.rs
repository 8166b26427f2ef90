//! Vector fields on `M` and `TM`, complete lifts, and the membership tests
//! for spray symmetries, connection symmetries, isometries, horizontality and
//! the curvature nullity space.

mod membership;
mod solve;
mod vector;

use thiserror::Error;

use crate::symexpr::ExprError;

pub use membership::{
    in_ag, in_agamma, in_as, in_nullity, is_horizontal, lie_derivative_oneform,
    nullity_rank_numeric, MembershipVerdict, NullityRank,
};
pub use solve::{solve_in_span, Condition, SpanSolution};
pub use vector::{bracket_base, bracket_tm, complete_lift, BaseField, TMField};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FieldsError {
    #[error("component {component} depends on y: {expr}")]
    YDependent { component: usize, expr: String },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("at least one sample point is required")]
    NoPoints,
    #[error("at least one condition is required")]
    NoConditions,
    #[error(transparent)]
    Expr(#[from] ExprError),
}
