use std::fmt;

use crate::symexpr::{CanonicalExpr, Var};
use crate::Rational;

use super::FieldsError;

/// Vector field on `TM`, components in the frame `(∂/∂x1..∂/∂xn, ∂/∂y1..∂/∂yn)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TMField {
    comps: Vec<CanonicalExpr>,
}

impl TMField {
    /// `comps` must have even length `2n`.
    pub fn new(comps: Vec<CanonicalExpr>) -> TMField {
        assert!(comps.len() % 2 == 0, "TM field needs 2n components");
        TMField { comps }
    }

    pub fn zero(dim: usize) -> TMField {
        TMField::new(vec![CanonicalExpr::zero(); 2 * dim])
    }

    /// Coordinate field `∂/∂(slot)`.
    pub fn coordinate(dim: usize, slot: usize) -> TMField {
        let mut f = TMField::zero(dim);
        f.comps[slot] = CanonicalExpr::one();
        f
    }

    /// Base dimension `n`.
    pub fn dim(&self) -> usize {
        self.comps.len() / 2
    }

    pub fn components(&self) -> &[CanonicalExpr] {
        &self.comps
    }

    pub fn component(&self, slot: usize) -> &CanonicalExpr {
        &self.comps[slot]
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(CanonicalExpr::is_zero)
    }

    /// First nonzero component in frame order.
    pub fn first_nonzero(&self) -> Option<&CanonicalExpr> {
        self.comps.iter().find(|c| !c.is_zero())
    }

    /// Projectable: the horizontal components depend on x only.
    pub fn is_projectable(&self) -> bool {
        self.comps[..self.dim()].iter().all(CanonicalExpr::is_x_only)
    }

    /// `X(f) = X^a ∂f/∂z^a`.
    pub fn apply_to(&self, f: &CanonicalExpr) -> CanonicalExpr {
        let n = self.dim();
        self.comps
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(a, c)| c * &f.diff(Var::from_frame_slot(a, n)))
            .sum()
    }

    /// Componentwise `∂/∂z^slot`; `[∂_slot, X]` as a field.
    pub fn diff_slot(&self, slot: usize) -> TMField {
        let v = Var::from_frame_slot(slot, self.dim());
        TMField::new(self.comps.iter().map(|c| c.diff(v)).collect())
    }

    /// Lie bracket `[X, Y]^c = X(Y^c) − Y(X^c)`.
    pub fn bracket(&self, other: &TMField) -> TMField {
        assert_eq!(self.comps.len(), other.comps.len(), "bracket of fields on different bundles");
        TMField::new(
            self.comps
                .iter()
                .zip(&other.comps)
                .map(|(xc, yc)| &self.apply_to(yc) - &other.apply_to(xc))
                .collect(),
        )
    }

    pub fn add(&self, other: &TMField) -> TMField {
        TMField::new(self.comps.iter().zip(&other.comps).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &TMField) -> TMField {
        TMField::new(self.comps.iter().zip(&other.comps).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: &Rational) -> TMField {
        TMField::new(self.comps.iter().map(|c| c.scale(k)).collect())
    }

    /// Multiplication by a function.
    pub fn mul_fn(&self, f: &CanonicalExpr) -> TMField {
        TMField::new(self.comps.iter().map(|c| c * f).collect())
    }

    pub fn eval_at(
        &self,
        point: &std::collections::BTreeMap<Var, Rational>,
    ) -> Result<Vec<f64>, crate::symexpr::ExprError> {
        self.comps.iter().map(|c| c.eval_at::<f64>(point)).collect()
    }
}

impl fmt::Display for TMField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_field(f, &self.comps, self.dim())
    }
}

fn fmt_field(f: &mut fmt::Formatter<'_>, comps: &[CanonicalExpr], n: usize) -> fmt::Result {
    let mut first = true;
    for (slot, c) in comps.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if !first {
            f.write_str(" + ")?;
        }
        first = false;
        write!(f, "({c})*d/d{}", Var::from_frame_slot(slot, n))?;
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

/// Vector field on the base `M`; components depend on x only.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BaseField {
    comps: Vec<CanonicalExpr>,
}

impl BaseField {
    pub fn new(comps: Vec<CanonicalExpr>) -> Result<BaseField, FieldsError> {
        let n = comps.len();
        for (i, c) in comps.iter().enumerate() {
            if !c.is_x_only() {
                return Err(FieldsError::YDependent {
                    component: i + 1,
                    expr: c.to_string(),
                });
            }
            if let Some(v) = c.variables().into_iter().find(|v| v.index() as usize > n) {
                return Err(FieldsError::Expr(crate::symexpr::ExprError::UndeclaredVariable(v)));
            }
        }
        Ok(BaseField { comps })
    }

    pub fn zero(dim: usize) -> BaseField {
        BaseField {
            comps: vec![CanonicalExpr::zero(); dim],
        }
    }

    /// `∂/∂x^(i+1)`.
    pub fn coordinate(dim: usize, i: usize) -> BaseField {
        let mut f = BaseField::zero(dim);
        f.comps[i] = CanonicalExpr::one();
        f
    }

    pub fn dim(&self) -> usize {
        self.comps.len()
    }

    pub fn components(&self) -> &[CanonicalExpr] {
        &self.comps
    }

    pub fn component(&self, i: usize) -> &CanonicalExpr {
        &self.comps[i]
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(CanonicalExpr::is_zero)
    }

    /// `X(f) = X^i ∂f/∂x^i`.
    pub fn apply_to(&self, f: &CanonicalExpr) -> CanonicalExpr {
        self.comps
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| c * &f.diff(Var::X(i as u32 + 1)))
            .sum()
    }

    pub fn bracket(&self, other: &BaseField) -> BaseField {
        assert_eq!(self.dim(), other.dim(), "bracket of fields on different bases");
        BaseField {
            comps: self
                .comps
                .iter()
                .zip(&other.comps)
                .map(|(xc, yc)| &self.apply_to(yc) - &other.apply_to(xc))
                .collect(),
        }
    }

    pub fn add(&self, other: &BaseField) -> BaseField {
        BaseField {
            comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, k: &Rational) -> BaseField {
        BaseField {
            comps: self.comps.iter().map(|c| c.scale(k)).collect(),
        }
    }

    /// `Σ coeffs[i] · fields[i]`.
    pub fn combination(fields: &[BaseField], coeffs: &[Rational], dim: usize) -> BaseField {
        fields
            .iter()
            .zip(coeffs)
            .fold(BaseField::zero(dim), |acc, (f, c)| acc.add(&f.scale(c)))
    }
}

impl fmt::Display for BaseField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.comps.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({c})*d/dx{}", i + 1)?;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// `X̄ = X^i ∂/∂x^i + y^j (∂X^i/∂x^j) ∂/∂y^i`.
pub fn complete_lift(x: &BaseField) -> TMField {
    let n = x.dim();
    let mut comps = x.comps.clone();
    for i in 0..n {
        let v: CanonicalExpr = (0..n)
            .map(|j| &CanonicalExpr::var(Var::Y(j as u32 + 1)) * &x.comps[i].diff(Var::X(j as u32 + 1)))
            .sum();
        comps.push(v);
    }
    TMField::new(comps)
}

pub fn bracket_tm(x: &TMField, y: &TMField) -> TMField {
    x.bracket(y)
}

pub fn bracket_base(x: &BaseField, y: &BaseField) -> BaseField {
    x.bracket(y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symexpr::parse_expr;

    fn base(comps: &[&str]) -> BaseField {
        BaseField::new(comps.iter().map(|s| parse_expr(s).unwrap()).collect()).unwrap()
    }

    fn tm(comps: &[&str]) -> TMField {
        TMField::new(comps.iter().map(|s| parse_expr(s).unwrap()).collect())
    }

    #[test]
    fn lift_of_constant_field_is_itself() {
        assert_eq!(complete_lift(&base(&["1", "0", "0"])), tm(&["1", "0", "0", "0", "0", "0"]));
    }

    #[test]
    fn lift_of_rotation() {
        let lifted = complete_lift(&base(&["-x2", "x1", "0"]));
        assert_eq!(lifted, tm(&["-x2", "x1", "0", "-y2", "y1", "0"]));
    }

    #[test]
    fn lift_of_exponential_field() {
        let lifted = complete_lift(&base(&["exp(-x1/2)", "0", "0"]));
        assert_eq!(
            lifted,
            tm(&["exp(-x1/2)", "0", "0", "-y1/2*exp(-x1/2)", "0", "0"])
        );
    }

    #[test]
    fn coordinate_fields_commute() {
        let a = BaseField::coordinate(2, 0);
        let b = BaseField::coordinate(2, 1);
        assert!(bracket_base(&a, &b).is_zero());
    }

    #[test]
    fn rejects_y_dependence() {
        assert!(BaseField::new(vec![parse_expr("y1").unwrap(), CanonicalExpr::zero()]).is_err());
        assert!(BaseField::new(vec![parse_expr("x3").unwrap(), CanonicalExpr::zero()]).is_err());
    }

    #[test]
    fn projectable_detection() {
        assert!(tm(&["x1", "0", "y1", "0"]).is_projectable());
        assert!(!tm(&["y1", "0", "0", "0"]).is_projectable());
    }
}
