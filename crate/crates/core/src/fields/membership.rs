use std::collections::BTreeMap;

use crate::geom::{connection_form, ConnectionData, CurvatureData, MetricSpec, SprayData, VectorOneForm};
use crate::linalg::Matrix;
use crate::symexpr::{CanonicalExpr, Var};
use crate::{int, Rational};

use super::{complete_lift, BaseField, FieldsError, TMField};

/// Outcome of a membership test. When the test fails, `residual` holds the
/// first nonzero obstruction in evaluation order.
#[derive(Clone, Debug, PartialEq)]
pub struct MembershipVerdict {
    pub predicate: &'static str,
    pub holds: bool,
    pub residual: Option<CanonicalExpr>,
}

impl MembershipVerdict {
    fn from_obstructions<'a>(
        predicate: &'static str,
        obstructions: impl IntoIterator<Item = &'a CanonicalExpr>,
    ) -> MembershipVerdict {
        let residual = obstructions.into_iter().find(|e| !e.is_zero()).cloned();
        MembershipVerdict {
            predicate,
            holds: residual.is_none(),
            residual,
        }
    }
}

/// Lie derivative of a vector 1-form: `([X, L])(∂_b) = [X, L∂_b] − L[X, ∂_b]`.
pub fn lie_derivative_oneform(x: &TMField, l: &VectorOneForm) -> VectorOneForm {
    let minus = int(-1);
    let columns = (0..2 * l.dim())
        .map(|b| {
            let x_b = x.diff_slot(b).scale(&minus);
            x.bracket(l.column(b)).sub(&l.apply(&x_b))
        })
        .collect();
    VectorOneForm::from_columns(columns)
}

pub(crate) fn spray_obstruction(x: &BaseField, s: &SprayData) -> TMField {
    complete_lift(x).bracket(&s.as_field())
}

/// `X ∈ A_S`: `[X̄, S] = 0`.
pub fn in_as(x: &BaseField, s: &SprayData) -> MembershipVerdict {
    let o = spray_obstruction(x, s);
    MembershipVerdict::from_obstructions("spray-symmetry", o.components())
}

/// `X ∈ A_Γ`: `[X̄, Γ] = 0`.
pub fn in_agamma(x: &BaseField, c: &ConnectionData) -> MembershipVerdict {
    let d = lie_derivative_oneform(&complete_lift(x), &connection_form(c));
    MembershipVerdict::from_obstructions("connection-symmetry", d.entries())
}

/// `X ∈ A_g`: a spray symmetry whose lift annihilates the energy.
pub fn in_ag(x: &BaseField, m: &MetricSpec, s: &SprayData) -> MembershipVerdict {
    let sym = in_as(x, s);
    if !sym.holds {
        return MembershipVerdict {
            predicate: "isometry",
            ..sym
        };
    }
    let e = complete_lift(x).apply_to(&m.energy());
    MembershipVerdict::from_obstructions("isometry", [&e])
}

pub(crate) fn horizontal_obstructions(x: &BaseField, c: &ConnectionData) -> Vec<CanonicalExpr> {
    let n = x.dim();
    let mut out = Vec::with_capacity(n * n);
    for j in 0..n {
        for l in 0..n {
            let mut e = x.component(j).diff(Var::X(l as u32 + 1));
            for i in 0..n {
                e = e + x.component(i) * c.gamma2(j, i, l);
            }
            out.push(e);
        }
    }
    out
}

/// Horizontality of the lift: `∂X^j/∂x^l = −X^i Γ^j_il` for all `j, l`.
pub fn is_horizontal(x: &BaseField, c: &ConnectionData) -> MembershipVerdict {
    MembershipVerdict::from_obstructions("horizontal", &horizontal_obstructions(x, c))
}

/// Curvature nullity: `X^l R^k_{l,ij} = 0` for all `k, i, j`.
pub fn in_nullity(x: &BaseField, r: &CurvatureData) -> MembershipVerdict {
    let n = x.dim();
    let mut obs = Vec::with_capacity(n * n * n);
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let e: CanonicalExpr = (0..n).map(|l| x.component(l) * r.r2(k, l, i, j)).sum();
                obs.push(e);
            }
        }
    }
    MembershipVerdict::from_obstructions("curvature-nullity", &obs)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NullityRank {
    /// Rank of `X^l ↦ X^l R^k_{l,ij}` at each sample point.
    pub ranks: Vec<usize>,
    pub dim: usize,
}

impl NullityRank {
    pub fn max_rank(&self) -> usize {
        self.ranks.iter().copied().max().unwrap_or(0)
    }

    /// `n − rank` per point.
    pub fn nullities(&self) -> Vec<usize> {
        self.ranks.iter().map(|r| self.dim - r).collect()
    }

    pub fn min_nullity(&self) -> usize {
        self.dim - self.max_rank()
    }
}

/// Numeric rank of the map `X^l ↦ X^l R^k_{l,ij}(p)` at each point `p`.
pub fn nullity_rank_numeric(
    r: &CurvatureData,
    points: &[BTreeMap<Var, Rational>],
) -> Result<NullityRank, FieldsError> {
    if points.is_empty() {
        return Err(FieldsError::NoPoints);
    }
    let n = r.dim();
    let mut ranks = Vec::with_capacity(points.len());
    for p in points {
        let mut rows = Vec::with_capacity(n * n * n);
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    let row = (0..n)
                        .map(|l| r.r2(k, l, i, j).eval_at::<f64>(p))
                        .collect::<Result<Vec<f64>, _>>()?;
                    rows.push(row);
                }
            }
        }
        ranks.push(Matrix::from_rows(rows, n).rank());
    }
    Ok(NullityRank { ranks, dim: n })
}
