use super::expr::CanonicalExpr;
use super::{ExprError, Var};
use crate::Rational;

/// Parse tree of the expression grammar, before normalisation.
#[derive(Clone, Debug, PartialEq)]
pub enum Ast {
    Const(Rational),
    Var(Var),
    Sum(Box<Ast>, Box<Ast>),
    Product(Box<Ast>, Box<Ast>),
    Neg(Box<Ast>),
    Pow(Box<Ast>, i64),
    Quotient(Box<Ast>, Box<Ast>),
    Exp(Box<Ast>),
}

impl Ast {
    pub fn sum(a: Ast, b: Ast) -> Ast {
        Ast::Sum(Box::new(a), Box::new(b))
    }

    pub fn product(a: Ast, b: Ast) -> Ast {
        Ast::Product(Box::new(a), Box::new(b))
    }

    pub fn quotient(a: Ast, b: Ast) -> Ast {
        Ast::Quotient(Box::new(a), Box::new(b))
    }

    pub fn neg(a: Ast) -> Ast {
        Ast::Neg(Box::new(a))
    }

    pub fn pow(a: Ast, e: i64) -> Ast {
        Ast::Pow(Box::new(a), e)
    }

    pub fn exp(a: Ast) -> Ast {
        Ast::Exp(Box::new(a))
    }
}

/// Reduces a parse tree to its normal form.
///
/// Divisors (and bases of negative powers) must be units `c·e^{ℓ(x)}`;
/// `exp` arguments must reduce to a linear form in x without constant part.
pub fn canonicalize(ast: &Ast) -> Result<CanonicalExpr, ExprError> {
    Ok(match ast {
        Ast::Const(c) => CanonicalExpr::constant(c.clone()),
        Ast::Var(v) => CanonicalExpr::var(*v),
        Ast::Sum(a, b) => canonicalize(a)? + canonicalize(b)?,
        Ast::Product(a, b) => canonicalize(a)? * canonicalize(b)?,
        Ast::Neg(a) => -canonicalize(a)?,
        Ast::Pow(a, e) => canonicalize(a)?.pow(*e)?,
        Ast::Quotient(a, b) => canonicalize(a)?.checked_div(&canonicalize(b)?)?,
        Ast::Exp(a) => {
            let arg = canonicalize(a)?;
            let l = arg
                .as_linear_form()
                .ok_or_else(|| ExprError::BadExponential(arg.to_string()))?;
            CanonicalExpr::exp(l)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::super::parse_expr;
    use super::*;

    #[test]
    fn rejects_bad_exponentials() {
        for src in ["exp(x1*x2)", "exp(y1)", "exp(x1 + 1)", "exp(exp(x1))"] {
            assert!(
                matches!(parse_expr(src), Err(ExprError::BadExponential(_))),
                "{src}"
            );
        }
        assert_eq!(parse_expr("exp(x1 - x1)").unwrap(), CanonicalExpr::one());
    }

    #[test]
    fn rejects_non_unit_divisors() {
        for src in ["1/(x1+1)", "y1/y2", "1/0", "x1^-1", "1/(exp(x1)+exp(x2))"] {
            assert!(
                matches!(parse_expr(src), Err(ExprError::NonUnitDivisor(_))),
                "{src}"
            );
        }
    }

    #[test]
    fn unit_division_is_multiplication_by_inverse() {
        let e = parse_expr("(y1-y2)^2 / exp(-x3)").unwrap();
        assert_eq!(e, parse_expr("y1^2*exp(x3) - 2*y1*y2*exp(x3) + y2^2*exp(x3)").unwrap());
        assert_eq!(e.len(), 3);
    }
}
