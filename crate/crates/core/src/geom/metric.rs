use crate::symexpr::{CanonicalExpr, Var};
use crate::{rat, CanonicalExpr as E};

use super::GeomError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MetricKind {
    Diagonal,
    General,
}

/// Riemannian metric `g_ij(x)` with a verified inverse.
#[derive(Clone, Debug, PartialEq)]
pub struct MetricSpec {
    kind: MetricKind,
    g: Vec<Vec<CanonicalExpr>>,
    inverse: Vec<Vec<CanonicalExpr>>,
}

fn check_square(g: &[Vec<E>], what: &str) -> Result<usize, GeomError> {
    let n = g.len();
    if n < 2 {
        return Err(GeomError::InvalidMetric(format!("{what} must be at least 2x2")));
    }
    if g.iter().any(|row| row.len() != n) {
        return Err(GeomError::InvalidMetric(format!("{what} is not square")));
    }
    for (i, row) in g.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            if !e.is_x_only() {
                return Err(GeomError::InvalidMetric(format!(
                    "{what} entry ({}, {}) depends on y: {e}",
                    i + 1,
                    j + 1
                )));
            }
            if let Some(v) = e.variables().into_iter().find(|v| v.index() as usize > n) {
                return Err(GeomError::InvalidMetric(format!(
                    "{what} entry ({}, {}) uses undeclared variable {v}",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    Ok(n)
}

impl MetricSpec {
    /// Diagonal metric; every entry must be a unit `c·e^{ℓ(x)}` so the inverse
    /// is taken entrywise.
    pub fn diagonal(entries: Vec<CanonicalExpr>) -> Result<MetricSpec, GeomError> {
        let n = entries.len();
        let mut g = vec![vec![E::zero(); n]; n];
        for (i, e) in entries.into_iter().enumerate() {
            g[i][i] = e;
        }
        MetricSpec::diagonal_matrix(g)
    }

    /// Diagonal metric given as a full matrix; off-diagonal entries must be
    /// zero.
    pub fn diagonal_matrix(g: Vec<Vec<CanonicalExpr>>) -> Result<MetricSpec, GeomError> {
        let n = check_square(&g, "metric")?;
        let mut inverse = vec![vec![E::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                if i != j && !g[i][j].is_zero() {
                    return Err(GeomError::InvalidMetric(format!(
                        "diagonal metric has nonzero off-diagonal entry ({}, {})",
                        i + 1,
                        j + 1
                    )));
                }
            }
            inverse[i][i] = g[i][i].inverse().map_err(|_| {
                GeomError::InvalidMetric(format!(
                    "diagonal entry {} is not a unit: {}",
                    i + 1,
                    g[i][i]
                ))
            })?;
        }
        Ok(MetricSpec {
            kind: MetricKind::Diagonal,
            g,
            inverse,
        })
    }

    /// General symmetric metric with a caller-supplied inverse, checked
    /// structurally against `g · g_inv = I`.
    pub fn general(
        g: Vec<Vec<CanonicalExpr>>,
        inverse: Vec<Vec<CanonicalExpr>>,
    ) -> Result<MetricSpec, GeomError> {
        let n = check_square(&g, "metric")?;
        if check_square(&inverse, "inverse")? != n {
            return Err(GeomError::InvalidMetric("inverse has the wrong size".into()));
        }
        for i in 0..n {
            for j in 0..i {
                if g[i][j] != g[j][i] {
                    return Err(GeomError::InvalidMetric(format!(
                        "metric is not symmetric at ({}, {})",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                let p: E = (0..n).map(|k| &g[i][k] * &inverse[k][j]).sum();
                let want = if i == j { E::one() } else { E::zero() };
                if p != want {
                    return Err(GeomError::NotInvertible(i + 1, j + 1));
                }
            }
        }
        Ok(MetricSpec {
            kind: MetricKind::General,
            g,
            inverse,
        })
    }

    pub fn dim(&self) -> usize {
        self.g.len()
    }

    pub fn kind(&self) -> MetricKind {
        self.kind
    }

    /// `g_ij`, 0-based.
    pub fn g(&self, i: usize, j: usize) -> &CanonicalExpr {
        &self.g[i][j]
    }

    /// `g^ij`, 0-based.
    pub fn g_inv(&self, i: usize, j: usize) -> &CanonicalExpr {
        &self.inverse[i][j]
    }

    /// Energy `E = ½ g_ij y^i y^j`.
    pub fn energy(&self) -> CanonicalExpr {
        let n = self.dim();
        let mut acc = E::zero();
        for i in 0..n {
            for j in 0..n {
                if self.g[i][j].is_zero() {
                    continue;
                }
                let yy = &E::var(Var::Y(i as u32 + 1)) * &E::var(Var::Y(j as u32 + 1));
                acc = acc + &self.g[i][j] * &yy;
            }
        }
        acc.scale(&rat(1, 2))
    }
}
