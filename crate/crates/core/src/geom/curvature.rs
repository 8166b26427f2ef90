use crate::fields::TMField;
use crate::symexpr::{CanonicalExpr, Var};

use super::{Array3, ConnectionData, GeomError, SprayData, VectorTwoForm};

/// Curvature of the connection of a spray.
#[derive(Clone, Debug, PartialEq)]
pub struct CurvatureData {
    /// `r1[k][i][j] = R^k_ij`, linear in y.
    r1: Array3,
    /// `r2[k][l][i][j] = R^k_{l,ij}`, x-only, with `R^k_ij = y^l R^k_{l,ij}`.
    r2: Vec<Array3>,
}

impl CurvatureData {
    pub fn dim(&self) -> usize {
        self.r1.len()
    }

    /// `R^k_ij`, 0-based.
    pub fn r(&self, k: usize, i: usize, j: usize) -> &CanonicalExpr {
        &self.r1[k][i][j]
    }

    /// `R^k_{l,ij}`, 0-based.
    pub fn r2(&self, k: usize, l: usize, i: usize, j: usize) -> &CanonicalExpr {
        &self.r2[k][l][i][j]
    }

    pub fn is_zero(&self) -> bool {
        self.r1.iter().flatten().flatten().all(CanonicalExpr::is_zero)
    }

    /// The curvature as the semi-basic vector 2-form
    /// `R(∂/∂x^i, ∂/∂x^j) = R^k_ij ∂/∂y^k`, zero on vertical arguments.
    pub fn as_two_form(&self) -> VectorTwoForm {
        let n = self.dim();
        let mut values = vec![vec![TMField::zero(n); 2 * n]; 2 * n];
        for i in 0..n {
            for j in 0..n {
                let mut comps = vec![CanonicalExpr::zero(); 2 * n];
                for k in 0..n {
                    comps[n + k] = self.r1[k][i][j].clone();
                }
                values[i][j] = TMField::new(comps);
            }
        }
        VectorTwoForm::from_table(values)
    }
}

/// `R^k_ij = ∂Γ^k_i/∂x^j − ∂Γ^k_j/∂x^i + Γ^l_i ∂Γ^k_j/∂y^l − Γ^l_j ∂Γ^k_i/∂y^l`,
/// with `R^k_{l,ij}` read off as the coefficient of `y^l`.
pub fn curvature(c: &ConnectionData) -> Result<CurvatureData, GeomError> {
    let n = c.dim();
    let x = |i: usize| Var::X(i as u32 + 1);
    let y = |i: usize| Var::Y(i as u32 + 1);
    let mut r1: Array3 = vec![vec![vec![CanonicalExpr::zero(); n]; n]; n];
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let mut e = &c.gamma(k, i).diff(x(j)) - &c.gamma(k, j).diff(x(i));
                for l in 0..n {
                    e = e + c.gamma(l, i) * &c.gamma(k, j).diff(y(l))
                        - c.gamma(l, j) * &c.gamma(k, i).diff(y(l));
                }
                r1[k][i][j] = e;
            }
        }
    }
    let mut r2 = vec![vec![vec![vec![CanonicalExpr::zero(); n]; n]; n]; n];
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                for (mono, coeff) in r1[k][i][j].split_y() {
                    let mut it = mono.iter();
                    let slot = match (it.next(), it.next()) {
                        (Some((Var::Y(l), 1)), None) => l as usize - 1,
                        _ => {
                            return Err(GeomError::Internal(format!(
                                "R^{}_{}{} is not linear in y: {}",
                                k + 1,
                                i + 1,
                                j + 1,
                                r1[k][i][j]
                            )))
                        }
                    };
                    r2[k][slot][i][j] = coeff;
                }
            }
        }
    }
    Ok(CurvatureData { r1, r2 })
}

/// Potential `R° = i_S R`: `R°[k][j] = y^i R^k_ij`, the `∂/∂y^k` component of
/// `R(S, ∂/∂x^j)`.
pub fn curvature_potential(s: &SprayData, r: &CurvatureData) -> Vec<Vec<CanonicalExpr>> {
    let n = s.dim();
    (0..n)
        .map(|k| {
            (0..n)
                .map(|j| {
                    (0..n)
                        .map(|i| &CanonicalExpr::var(Var::Y(i as u32 + 1)) * r.r(k, i, j))
                        .sum()
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{connection_from_spray, spray_from_metric, MetricSpec};
    use crate::symexpr::parse_expr;

    fn pipeline(entries: &[&str]) -> (SprayData, CurvatureData) {
        let m = MetricSpec::diagonal(entries.iter().map(|s| parse_expr(s).unwrap()).collect())
            .unwrap();
        let s = spray_from_metric(&m).unwrap();
        let r = curvature(&connection_from_spray(&s)).unwrap();
        (s, r)
    }

    #[test]
    fn flat_metrics_have_zero_curvature() {
        assert!(pipeline(&["1", "1"]).1.is_zero());
        let (s, r) = pipeline(&["exp(x1)", "exp(x2)", "exp(x3)"]);
        assert!(r.is_zero());
        assert!(curvature_potential(&s, &r).iter().flatten().all(CanonicalExpr::is_zero));
    }

    #[test]
    fn antisymmetric_and_semibasic_split() {
        let (_, r) = pipeline(&["exp(x3)", "exp(x3)", "1"]);
        assert!(!r.is_zero());
        for k in 0..3 {
            for i in 0..3 {
                for j in 0..3 {
                    assert_eq!(r.r(k, i, j), &-r.r(k, j, i));
                    let rebuilt: CanonicalExpr = (0..3)
                        .map(|l| &CanonicalExpr::var(Var::Y(l as u32 + 1)) * r.r2(k, l, i, j))
                        .sum();
                    assert_eq!(&rebuilt, r.r(k, i, j));
                }
            }
        }
    }

    #[test]
    fn product_metric_potential_is_block_diagonal() {
        let (s, r) = pipeline(&["exp(x2)", "1", "exp(x4)", "1"]);
        let pot = curvature_potential(&s, &r);
        assert!(pot.iter().flatten().any(|e| !e.is_zero()));
        for k in 0..4 {
            for j in 0..4 {
                if (k < 2) != (j < 2) {
                    assert!(pot[k][j].is_zero(), "R°[{k}][{j}]");
                }
                if k < 2 {
                    assert!(pot[k][j].variables().iter().all(|v| v.index() <= 2));
                }
            }
        }
    }
}
