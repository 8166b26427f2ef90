//! Numeric oracles: seeded sample points, central differences, and
//! floating-point evaluations that do not go through the symbolic pipeline.

use std::collections::BTreeMap;

use liespray::fields::BaseField;
use liespray::geom::MetricSpec;
use liespray::linalg::Matrix;
use liespray::{rat, CanonicalExpr, Rational, Var};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::CliError;

pub type Point = BTreeMap<Var, Rational>;

pub const DEFAULT_SEED: u64 = 1729;
pub const DEFAULT_POINTS: usize = 10;
/// Two readings agree with an oracle when their relative deviation is below
/// this bound; central differences at step `1e-4` are accurate to ~`1e-8`.
pub const AGREE_TOL: f64 = 1e-6;

/// Finite-difference step.
pub fn fd_step() -> Rational {
    rat(1, 10000)
}

/// `k` points with every `x` and `y` coordinate drawn uniformly from
/// `{−2, −3/2, …, 2} \ {0}`.
pub fn sample_points(dim: usize, k: usize, seed: u64) -> Vec<Point> {
    let grid: Vec<Rational> = [-4, -3, -2, -1, 1, 2, 3, 4].iter().map(|&n| rat(n, 2)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..k)
        .map(|_| {
            Var::frame(dim)
                .map(|v| (v, grid[rng.gen_range(0..grid.len())].clone()))
                .collect()
        })
        .collect()
}

/// Largest absolute and relative deviation; relative deviation of `a` from
/// `b` is `|a − b| / max(1, |a|, |b|)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct Deviation {
    pub max_abs: f64,
    pub max_rel: f64,
}

impl Deviation {
    pub fn update(&mut self, a: f64, b: f64) {
        let abs = (a - b).abs();
        let rel = abs / a.abs().max(b.abs()).max(1.0);
        // NaN must not compare as a small deviation
        if abs.is_nan() {
            self.max_abs = f64::INFINITY;
            self.max_rel = f64::INFINITY;
            return;
        }
        self.max_abs = self.max_abs.max(abs);
        self.max_rel = self.max_rel.max(rel);
    }

    pub fn extend(&mut self, a: &[f64], b: &[f64]) {
        assert_eq!(a.len(), b.len(), "compared vectors differ in length");
        for (x, y) in a.iter().zip(b) {
            self.update(*x, *y);
        }
    }

    pub fn merge(&mut self, other: Deviation) {
        self.max_abs = self.max_abs.max(other.max_abs);
        self.max_rel = self.max_rel.max(other.max_rel);
    }

    pub fn within(&self, rel_tol: f64) -> bool {
        self.max_rel <= rel_tol
    }
}

fn internal(e: impl std::fmt::Display) -> CliError {
    CliError::Internal(format!("evaluation failed: {e}"))
}

pub fn eval(e: &CanonicalExpr, p: &Point) -> Result<f64, CliError> {
    e.eval_at::<f64>(p).map_err(internal)
}

pub fn eval_all<'a>(
    exprs: impl IntoIterator<Item = &'a CanonicalExpr>,
    p: &Point,
) -> Result<Vec<f64>, CliError> {
    exprs.into_iter().map(|e| eval(e, p)).collect()
}

fn shifted(p: &Point, v: Var, h: &Rational) -> Point {
    let mut q = p.clone();
    let cur = q.get(&v).cloned().unwrap_or_default();
    q.insert(v, cur + h);
    q
}

/// Central difference `(f(p + h e_v) − f(p − h e_v)) / 2h` of any numeric
/// function of the point.
pub fn central_difference(
    f: impl Fn(&Point) -> Result<f64, CliError>,
    p: &Point,
    v: Var,
) -> Result<f64, CliError> {
    let h = fd_step();
    let plus = f(&shifted(p, v, &h))?;
    let minus = f(&shifted(p, v, &-h.clone()))?;
    Ok((plus - minus) / (2.0 * num_traits::ToPrimitive::to_f64(&h).unwrap_or(1e-4)))
}

pub fn fd_partial(e: &CanonicalExpr, p: &Point, v: Var) -> Result<f64, CliError> {
    central_difference(|q| eval(e, q), p, v)
}

/// `G^k` at `p` from metric values and finite-difference metric
/// derivatives: `G^k = ¼ g^{kl} (2 ∂_i g_lj − ∂_l g_ij) y^i y^j`.
pub fn spray_numeric(metric: &MetricSpec, p: &Point) -> Result<Vec<f64>, CliError> {
    let n = metric.dim();
    let x = |i: usize| Var::X(i as u32 + 1);
    let y: Vec<f64> = (0..n)
        .map(|i| num_traits::ToPrimitive::to_f64(&p[&Var::Y(i as u32 + 1)]).unwrap_or(f64::NAN))
        .collect();
    let mut g = Matrix::<f64>::zeros(n, n);
    let mut dg = vec![vec![vec![0.0; n]; n]; n];
    for i in 0..n {
        for j in 0..n {
            g[(i, j)] = eval(metric.g(i, j), p)?;
            for (k, row) in dg.iter_mut().enumerate() {
                row[i][j] = fd_partial(metric.g(i, j), p, x(k))?;
            }
        }
    }
    let mut ginv = vec![vec![0.0; n]; n];
    for col in 0..n {
        let mut e = vec![0.0; n];
        e[col] = 1.0;
        let sol = g
            .solve(&e)
            .ok_or_else(|| CliError::Internal("metric is numerically singular".into()))?;
        for (row, v) in sol.into_iter().enumerate() {
            ginv[row][col] = v;
        }
    }
    let mut out = vec![0.0; n];
    for (k, gk) in out.iter_mut().enumerate() {
        for l in 0..n {
            let mut s = 0.0;
            for i in 0..n {
                for j in 0..n {
                    s += y[i] * y[j] * (2.0 * dg[i][l][j] - dg[l][i][j]);
                }
            }
            *gk += 0.25 * ginv[k][l] * s;
        }
    }
    Ok(out)
}

/// `Γ^j_i = ∂G^j/∂y^i` by central differences of [`spray_numeric`];
/// returned as `[j][i]`.
pub fn connection_numeric(metric: &MetricSpec, p: &Point) -> Result<Vec<Vec<f64>>, CliError> {
    let n = metric.dim();
    let mut out = vec![vec![0.0; n]; n];
    for (j, row) in out.iter_mut().enumerate() {
        for (i, v) in row.iter_mut().enumerate() {
            *v = central_difference(
                |q| spray_numeric(metric, q).map(|g| g[j]),
                p,
                Var::Y(i as u32 + 1),
            )?;
        }
    }
    Ok(out)
}

/// `h(∂/∂x^i) = ∂/∂x^i − Γ^j_i ∂/∂y^j` from [`connection_numeric`].
pub fn horizontal_numeric(metric: &MetricSpec, p: &Point) -> Result<Vec<Vec<f64>>, CliError> {
    let n = metric.dim();
    let gamma = connection_numeric(metric, p)?;
    Ok((0..n)
        .map(|i| {
            let mut v = vec![0.0; 2 * n];
            v[i] = 1.0;
            for j in 0..n {
                v[n + j] = -gamma[j][i];
            }
            v
        })
        .collect())
}

/// `[X, Y]^i = X^j ∂_j Y^i − Y^j ∂_j X^i` with central-difference partials.
pub fn bracket_numeric(a: &BaseField, b: &BaseField, p: &Point) -> Result<Vec<f64>, CliError> {
    let n = a.dim();
    let av = eval_all(a.components(), p)?;
    let bv = eval_all(b.components(), p)?;
    (0..n)
        .map(|i| {
            let mut s = 0.0;
            for j in 0..n {
                let v = Var::X(j as u32 + 1);
                s += av[j] * fd_partial(b.component(i), p, v)?;
                s -= bv[j] * fd_partial(a.component(i), p, v)?;
            }
            Ok(s)
        })
        .collect()
}

/// `Σ_k c_k F_k(p)`.
pub fn combination_numeric(
    fields: &[BaseField],
    coeffs: &[Rational],
    p: &Point,
) -> Result<Vec<f64>, CliError> {
    let n = fields.first().map_or(0, BaseField::dim);
    let mut out = vec![0.0; n];
    for (f, c) in fields.iter().zip(coeffs) {
        let cf = num_traits::ToPrimitive::to_f64(c).unwrap_or(f64::NAN);
        if cf == 0.0 {
            continue;
        }
        for (o, v) in out.iter_mut().zip(eval_all(f.components(), p)?) {
            *o += cf * v;
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    /// Only the computed value agrees with the oracle.
    Computation,
    /// Only the printed value agrees with the oracle.
    Reference,
    Both,
    Neither,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Computation => "computation",
            Verdict::Reference => "reference",
            Verdict::Both => "both",
            Verdict::Neither => "neither",
        })
    }
}

/// Deviations of the computed and the printed reading from an oracle.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Arbitration {
    pub seed: u64,
    pub points: usize,
    pub computed: Deviation,
    pub reference: Deviation,
    pub verdict: Verdict,
}

impl Arbitration {
    /// `oracle`, `computed` and `reference` map a point to a value vector.
    pub fn run(
        points: &[Point],
        seed: u64,
        oracle: impl Fn(&Point) -> Result<Vec<f64>, CliError>,
        computed: impl Fn(&Point) -> Result<Vec<f64>, CliError>,
        reference: impl Fn(&Point) -> Result<Vec<f64>, CliError>,
    ) -> Result<Arbitration, CliError> {
        let mut dc = Deviation::default();
        let mut dr = Deviation::default();
        for p in points {
            let o = oracle(p)?;
            dc.extend(&computed(p)?, &o);
            dr.extend(&reference(p)?, &o);
        }
        let verdict = match (dc.within(AGREE_TOL), dr.within(AGREE_TOL)) {
            (true, false) => Verdict::Computation,
            (false, true) => Verdict::Reference,
            (true, true) => Verdict::Both,
            (false, false) => Verdict::Neither,
        };
        Ok(Arbitration {
            seed,
            points: points.len(),
            computed: dc,
            reference: dr,
            verdict,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use liespray::symexpr::parse_expr;

    fn metric(entries: &[&str]) -> MetricSpec {
        MetricSpec::diagonal(entries.iter().map(|s| parse_expr(s).unwrap()).collect()).unwrap()
    }

    #[test]
    fn points_are_reproducible_and_nonzero() {
        let a = sample_points(3, 5, 7);
        assert_eq!(a, sample_points(3, 5, 7));
        assert_ne!(a, sample_points(3, 5, 8));
        for p in &a {
            assert_eq!(p.len(), 6);
            assert!(p.values().all(|v| *v != Rational::default()));
        }
    }

    #[test]
    fn numeric_spray_of_exponential_metric() {
        // E = ½ e^{x1} (y1)² gives G^1 = (y1)²/4
        let m = metric(&["exp(x1)", "1"]);
        for p in sample_points(2, 4, 1) {
            let g = spray_numeric(&m, &p).unwrap();
            let y1 = num_traits::ToPrimitive::to_f64(&p[&Var::Y(1)]).unwrap();
            assert!((g[0] - y1 * y1 / 4.0).abs() < 1e-7);
            assert!(g[1].abs() < 1e-12);
        }
    }

    #[test]
    fn numeric_bracket_of_linear_fields() {
        let f = |c: &[&str]| BaseField::new(c.iter().map(|s| parse_expr(s).unwrap()).collect()).unwrap();
        let (a, b) = (f(&["x2", "0"]), f(&["0", "x1"]));
        for p in sample_points(2, 3, 2) {
            let v = bracket_numeric(&a, &b, &p).unwrap();
            let x1 = num_traits::ToPrimitive::to_f64(&p[&Var::X(1)]).unwrap();
            let x2 = num_traits::ToPrimitive::to_f64(&p[&Var::X(2)]).unwrap();
            assert!((v[0] + x1).abs() < 1e-9 && (v[1] - x2).abs() < 1e-9);
        }
    }

    #[test]
    fn deviation_flags_nan() {
        let mut d = Deviation::default();
        d.update(f64::NAN, 1.0);
        assert!(!d.within(1.0));
    }
}
