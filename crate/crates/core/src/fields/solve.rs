use std::collections::BTreeMap;

use num_traits::Zero;

use crate::geom::Geometry;
use crate::linalg::{span_basis, Matrix};
use crate::symexpr::{CanonicalExpr, TermKey};
use crate::Rational;

use super::membership::{horizontal_obstructions, spray_obstruction};
use super::{complete_lift, BaseField, FieldsError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Condition {
    /// `[X̄, S] = 0`
    SpraySymmetry,
    /// `[X̄, S] = 0` and `X̄(E) = 0`
    Isometry,
    /// `∂X^j/∂x^l + X^i Γ^j_il = 0`
    Horizontality,
}

/// Solutions of a finite-dictionary symmetry search.
#[derive(Clone, Debug, PartialEq)]
pub struct SpanSolution {
    /// Coefficient vectors over the dictionary, in reduced echelon form.
    pub coefficients: Vec<Vec<Rational>>,
    /// The corresponding base fields.
    pub fields: Vec<BaseField>,
}

impl SpanSolution {
    pub fn dim(&self) -> usize {
        self.fields.len()
    }
}

fn obstructions(x: &BaseField, conditions: &[Condition], g: &Geometry) -> Vec<CanonicalExpr> {
    let mut out = Vec::new();
    for c in conditions {
        match c {
            Condition::SpraySymmetry => {
                out.extend(spray_obstruction(x, &g.spray).components().iter().cloned())
            }
            Condition::Isometry => {
                out.extend(spray_obstruction(x, &g.spray).components().iter().cloned());
                out.push(complete_lift(x).apply_to(&g.metric.energy()));
            }
            Condition::Horizontality => out.extend(horizontal_obstructions(x, &g.connection)),
        }
    }
    out
}

/// Coefficient-matching matrix: one row per `(slot, term key)` across the
/// vectors of expressions, one column per vector.
fn coefficient_matrix(columns: &[Vec<CanonicalExpr>]) -> Matrix<Rational> {
    let mut rows: BTreeMap<(usize, TermKey), Vec<Rational>> = BTreeMap::new();
    let m = columns.len();
    for (col, exprs) in columns.iter().enumerate() {
        for (slot, e) in exprs.iter().enumerate() {
            for (k, c) in e.terms() {
                rows.entry((slot, k.clone()))
                    .or_insert_with(|| vec![Rational::zero(); m])[col] = c.clone();
            }
        }
    }
    Matrix::from_rows(rows.into_values().collect(), m)
}

/// All rational combinations of `dictionary` whose lifts satisfy every
/// condition. Each obstruction is linear in the field, so coefficient
/// matching turns the conditions into an exact linear system.
pub fn solve_in_span(
    dictionary: &[BaseField],
    conditions: &[Condition],
    geometry: &Geometry,
) -> Result<SpanSolution, FieldsError> {
    if conditions.is_empty() {
        return Err(FieldsError::NoConditions);
    }
    let n = geometry.dim();
    if let Some(f) = dictionary.iter().find(|f| f.dim() != n) {
        return Err(FieldsError::DimensionMismatch {
            expected: n,
            found: f.dim(),
        });
    }
    let m = dictionary.len();
    if m == 0 {
        return Ok(SpanSolution {
            coefficients: vec![],
            fields: vec![],
        });
    }
    let obs: Vec<Vec<CanonicalExpr>> = dictionary
        .iter()
        .map(|x| obstructions(x, conditions, geometry))
        .collect();
    let kernel = span_basis(&coefficient_matrix(&obs).nullspace(), m);

    // Drop kernel directions that only encode dependencies among the
    // dictionary fields themselves.
    let field_coords: Vec<Vec<CanonicalExpr>> =
        dictionary.iter().map(|f| f.components().to_vec()).collect();
    let coords = coefficient_matrix(&field_coords);
    let mut kept: Vec<Vec<Rational>> = Vec::new();
    let mut images: Vec<Vec<Rational>> = Vec::new();
    for v in kernel {
        let img = coords.mul_vec(&v);
        let mut trial = images.clone();
        trial.push(img.clone());
        if Matrix::from_rows(trial, img.len()).rank() > images.len() {
            images.push(img);
            kept.push(v);
        }
    }
    let fields = kept
        .iter()
        .map(|c| BaseField::combination(dictionary, c, n))
        .collect();
    Ok(SpanSolution {
        coefficients: kept,
        fields,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::MetricSpec;
    use crate::symexpr::parse_expr;

    fn base(comps: &[&str]) -> BaseField {
        BaseField::new(comps.iter().map(|s| parse_expr(s).unwrap()).collect()).unwrap()
    }

    fn euclidean() -> Geometry {
        Geometry::from_metric(MetricSpec::diagonal(vec![CanonicalExpr::one(); 2]).unwrap()).unwrap()
    }

    #[test]
    fn rotation_absent_dictionary() {
        let dict = vec![base(&["1", "0"]), base(&["0", "1"]), base(&["0", "x1"])];
        let sol = solve_in_span(&dict, &[Condition::Isometry], &euclidean()).unwrap();
        assert_eq!(sol.dim(), 2);
        assert_eq!(sol.fields, vec![dict[0].clone(), dict[1].clone()]);
        // x1 ∂/∂x2 is still affine
        let aff = solve_in_span(&dict, &[Condition::SpraySymmetry], &euclidean()).unwrap();
        assert_eq!(aff.dim(), 3);
    }

    #[test]
    fn degenerate_dictionaries() {
        let g = euclidean();
        let zero = solve_in_span(&[BaseField::zero(2)], &[Condition::Isometry], &g).unwrap();
        assert_eq!(zero.dim(), 0);
        assert_eq!(solve_in_span(&[], &[Condition::Isometry], &g).unwrap().dim(), 0);
        assert_eq!(
            solve_in_span(&[BaseField::zero(2)], &[], &g),
            Err(FieldsError::NoConditions)
        );
        let dup = vec![base(&["1", "0"]), base(&["2", "0"])];
        assert_eq!(solve_in_span(&dup, &[Condition::Isometry], &g).unwrap().dim(), 1);
    }
}
