//! Exact scalar ring `Q[x1..xn, y1..yn] ⊗ exp(Q-linear forms in x)`.
//!
//! Every scalar produced by the geometric pipeline lives here. Values are
//! kept in a unique normal form ([`CanonicalExpr`]), so equality of term maps
//! is equality of functions and the zero test is exact.

mod ast;
mod expr;
mod parser;
mod term;

use std::fmt;

use thiserror::Error;

pub use ast::{canonicalize, Ast};
pub use expr::CanonicalExpr;
pub use parser::{coordinate, parse, parse_expr, parse_with};
pub use term::{LinForm, Monomial, TermKey};

/// A coordinate on `TM`: base coordinates `x^i` or fibre coordinates `y^i`.
/// Indices are 1-based, as written in the expression grammar.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    X(u32),
    Y(u32),
}

impl Var {
    pub fn index(self) -> u32 {
        match self {
            Var::X(i) | Var::Y(i) => i,
        }
    }

    pub fn is_x(self) -> bool {
        matches!(self, Var::X(_))
    }

    /// Position of the variable in the `TM` frame `(x1..xn, y1..yn)`.
    pub fn frame_slot(self, dim: usize) -> usize {
        match self {
            Var::X(i) => i as usize - 1,
            Var::Y(i) => dim + i as usize - 1,
        }
    }

    /// Inverse of [`Var::frame_slot`].
    pub fn from_frame_slot(slot: usize, dim: usize) -> Var {
        if slot < dim {
            Var::X(slot as u32 + 1)
        } else {
            Var::Y((slot - dim) as u32 + 1)
        }
    }

    /// All `2n` coordinates in frame order.
    pub fn frame(dim: usize) -> impl Iterator<Item = Var> {
        (0..2 * dim).map(move |s| Var::from_frame_slot(s, dim))
    }

    pub fn check(self, dim: usize) -> Result<Var, ExprError> {
        let i = self.index() as usize;
        if i == 0 || i > dim {
            Err(ExprError::UndeclaredVariable(self))
        } else {
            Ok(self)
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::X(i) => write!(f, "x{i}"),
            Var::Y(i) => write!(f, "y{i}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error("syntax error at {line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown identifier `{name}` at {line}:{column}")]
    UnknownIdentifier {
        name: String,
        line: usize,
        column: usize,
    },
    #[error("non-integer exponent at {line}:{column}")]
    NonIntegerExponent { line: usize, column: usize },
    #[error("division by `{0}`, which is not a unit (nonzero rational times one exponential)")]
    NonUnitDivisor(String),
    #[error("exp argument `{0}` is not a linear form in the x variables without constant term")]
    BadExponential(String),
    #[error("variable {0} is not declared")]
    UndeclaredVariable(Var),
    #[error("no value assigned to {0}")]
    MissingAssignment(Var),
}
