use crate::fields::TMField;
use crate::symexpr::{CanonicalExpr, Var};
use crate::{int, rat};

use super::{GeomError, MetricSpec};

/// `n × n × n` array of expressions, indexed `[a][b][c]`.
pub type Array3 = Vec<Vec<Vec<CanonicalExpr>>>;

fn x(i: usize) -> Var {
    Var::X(i as u32 + 1)
}

fn y(i: usize) -> Var {
    Var::Y(i as u32 + 1)
}

/// Lower Christoffel data `γ_ikj = ½(∂_i g_kj + ∂_j g_ik − ∂_k g_ij)`,
/// returned as `[i][k][j]`.
pub fn christoffel_lower(m: &MetricSpec) -> Array3 {
    let n = m.dim();
    let half = rat(1, 2);
    (0..n)
        .map(|i| {
            (0..n)
                .map(|k| {
                    (0..n)
                        .map(|j| {
                            let s = &(&m.g(k, j).diff(x(i)) + &m.g(i, k).diff(x(j)))
                                - &m.g(i, j).diff(x(k));
                            s.scale(&half)
                        })
                        .collect()
                })
                .collect()
        })
        .collect()
}

/// Raised Christoffel symbols `γ^k_ij = g^kl γ_ilj`, returned as `[k][i][j]`.
pub fn christoffel_upper(m: &MetricSpec, lower: &Array3) -> Array3 {
    let n = m.dim();
    (0..n)
        .map(|k| {
            (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            (0..n)
                                .filter(|&l| !m.g_inv(k, l).is_zero())
                                .map(|l| m.g_inv(k, l) * &lower[i][l][j])
                                .sum()
                        })
                        .collect()
                })
                .collect()
        })
        .collect()
}

/// Coefficients `G^k` of a spray `S = y^i ∂/∂x^i − 2 G^i ∂/∂y^i`.
#[derive(Clone, Debug, PartialEq)]
pub struct SprayData {
    coefficients: Vec<CanonicalExpr>,
}

impl SprayData {
    /// Each `G^k` must be homogeneous of y-degree two.
    pub fn new(coefficients: Vec<CanonicalExpr>) -> Result<SprayData, GeomError> {
        for (k, g) in coefficients.iter().enumerate() {
            if !g.is_y_homogeneous(2) {
                return Err(GeomError::InvalidSpray(format!(
                    "G^{} is not homogeneous of degree 2 in y: {g}",
                    k + 1
                )));
            }
        }
        Ok(SprayData { coefficients })
    }

    pub fn dim(&self) -> usize {
        self.coefficients.len()
    }

    /// `G^k`, 0-based.
    pub fn g(&self, k: usize) -> &CanonicalExpr {
        &self.coefficients[k]
    }

    pub fn coefficients(&self) -> &[CanonicalExpr] {
        &self.coefficients
    }

    /// The spray as a vector field on `TM`.
    pub fn as_field(&self) -> TMField {
        let n = self.dim();
        let minus_two = int(-2);
        let comps = (0..n)
            .map(|i| CanonicalExpr::var(y(i)))
            .chain(self.coefficients.iter().map(|g| g.scale(&minus_two)))
            .collect();
        TMField::new(comps)
    }
}

/// Canonical spray of the energy `½ g_ij y^i y^j`: `G^k = ½ y^i y^j γ^k_ij`.
pub fn spray_from_metric(m: &MetricSpec) -> Result<SprayData, GeomError> {
    let n = m.dim();
    let upper = christoffel_upper(m, &christoffel_lower(m));
    let half = rat(1, 2);
    let coefficients = (0..n)
        .map(|k| {
            let mut acc = CanonicalExpr::zero();
            for i in 0..n {
                for j in 0..n {
                    let c = &upper[k][i][j];
                    if c.is_zero() {
                        continue;
                    }
                    let yy = &CanonicalExpr::var(y(i)) * &CanonicalExpr::var(y(j));
                    acc = acc + c * &yy;
                }
            }
            acc.scale(&half)
        })
        .collect();
    SprayData::new(coefficients)
}

/// Connection coefficients of `Γ = [J, S]`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConnectionData {
    /// `gamma1[j][i] = Γ^j_i = ∂G^j/∂y^i`
    gamma1: Vec<Vec<CanonicalExpr>>,
    /// `gamma2[j][i][l] = Γ^j_il = ∂²G^j/∂y^i∂y^l`
    gamma2: Array3,
}

impl ConnectionData {
    pub fn dim(&self) -> usize {
        self.gamma1.len()
    }

    /// `Γ^j_i`, 0-based.
    pub fn gamma(&self, j: usize, i: usize) -> &CanonicalExpr {
        &self.gamma1[j][i]
    }

    /// `Γ^j_il`, 0-based.
    pub fn gamma2(&self, j: usize, i: usize, l: usize) -> &CanonicalExpr {
        &self.gamma2[j][i][l]
    }

    /// Nonzero `Γ^j_i` as `(j, i, value)`, 0-based.
    pub fn nonzero(&self) -> Vec<(usize, usize, &CanonicalExpr)> {
        let n = self.dim();
        let mut out = Vec::new();
        for j in 0..n {
            for i in 0..n {
                if !self.gamma1[j][i].is_zero() {
                    out.push((j, i, &self.gamma1[j][i]));
                }
            }
        }
        out
    }
}

pub fn connection_from_spray(s: &SprayData) -> ConnectionData {
    let n = s.dim();
    let gamma1: Vec<Vec<CanonicalExpr>> = (0..n)
        .map(|j| (0..n).map(|i| s.g(j).diff(y(i))).collect())
        .collect();
    let gamma2 = (0..n)
        .map(|j| {
            (0..n)
                .map(|i| (0..n).map(|l| gamma1[j][i].diff(y(l))).collect())
                .collect()
        })
        .collect();
    ConnectionData { gamma1, gamma2 }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symexpr::parse_expr;

    fn p(s: &str) -> CanonicalExpr {
        parse_expr(s).unwrap()
    }

    fn diag(entries: &[&str]) -> MetricSpec {
        MetricSpec::diagonal(entries.iter().map(|s| p(s)).collect()).unwrap()
    }

    #[test]
    fn euclidean_is_flat() {
        let m = diag(&["1", "1"]);
        assert!(christoffel_lower(&m).iter().flatten().flatten().all(CanonicalExpr::is_zero));
        let s = spray_from_metric(&m).unwrap();
        assert!(s.coefficients().iter().all(CanonicalExpr::is_zero));
        let c = connection_from_spray(&s);
        assert!(c.nonzero().is_empty());
    }

    #[test]
    fn lower_symbols_of_diagonal_exponential_metric() {
        // g = diag(e^{x1}, e^{x2}, e^{x3}): only γ_iii = e^{x^i}/2 survive.
        let m = diag(&["exp(x1)", "exp(x2)", "exp(x3)"]);
        let low = christoffel_lower(&m);
        for i in 0..3 {
            for k in 0..3 {
                for j in 0..3 {
                    let want = if i == k && k == j {
                        p(&format!("exp(x{})/2", i + 1))
                    } else {
                        CanonicalExpr::zero()
                    };
                    assert_eq!(low[i][k][j], want, "γ_{i}{k}{j}");
                }
            }
        }
        let up = christoffel_upper(&m, &low);
        assert_eq!(up[0][0][0], p("1/2"));
        assert!(up[0][1][1].is_zero());
    }

    #[test]
    fn lower_symbols_symmetric_in_outer_indices() {
        let m = diag(&["exp(x3)", "exp(x3)", "1"]);
        let low = christoffel_lower(&m);
        for i in 0..3 {
            for k in 0..3 {
                for j in 0..3 {
                    assert_eq!(low[i][k][j], low[j][k][i]);
                }
            }
        }
        assert_eq!(low[0][2][0], p("-exp(x3)/2"));
        assert_eq!(low[0][0][2], p("exp(x3)/2"));
        assert!(low[2][0][2].is_zero());
    }

    #[test]
    fn spray_rejects_wrong_degree() {
        assert!(SprayData::new(vec![p("y1"), p("0")]).is_err());
        assert!(SprayData::new(vec![p("x1*y1*y2"), p("0")]).is_ok());
    }

    #[test]
    fn connection_is_torsion_free() {
        let m = diag(&["exp(x2)", "1", "exp(x4)", "1"]);
        let c = connection_from_spray(&spray_from_metric(&m).unwrap());
        for j in 0..4 {
            for i in 0..4 {
                for l in 0..4 {
                    assert_eq!(c.gamma2(j, i, l), c.gamma2(j, l, i));
                    assert!(c.gamma2(j, i, l).is_x_only());
                }
            }
        }
    }
}
