#![allow(dead_code)]

use std::collections::BTreeMap;

use liespray::fields::BaseField;
use liespray::geom::{Geometry, MetricSpec};
use liespray::liealg::StructureConstants;
use liespray::symexpr::parse_expr;
use liespray::{rat, CanonicalExpr, Rational, Var};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn e(src: &str) -> CanonicalExpr {
    parse_expr(src).unwrap_or_else(|err| panic!("`{src}`: {err}"))
}

pub fn diagonal(entries: &[&str]) -> MetricSpec {
    MetricSpec::diagonal(entries.iter().map(|s| e(s)).collect()).unwrap()
}

pub fn field(comps: &[&str]) -> BaseField {
    BaseField::new(comps.iter().map(|s| e(s)).collect()).unwrap()
}

pub fn hyperbolic3() -> Geometry {
    Geometry::from_metric(diagonal(&["exp(x3)", "exp(x3)", "1"])).unwrap()
}

pub fn product_h2() -> Geometry {
    Geometry::from_metric(diagonal(&["exp(x2)", "1", "exp(x4)", "1"])).unwrap()
}

pub fn flat3() -> Geometry {
    Geometry::from_metric(diagonal(&["exp(x1)", "exp(x2)", "exp(x3)"])).unwrap()
}

pub fn hyperbolic3_fields() -> Vec<BaseField> {
    vec![
        field(&["-x1*x2/2", "exp(-x3) + x1^2/4 - x2^2/4", "x2"]),
        field(&["-2*exp(-x3) + x1^2/2 - x2^2/2", "x1*x2", "-2*x1"]),
        field(&["-x2", "x1", "0"]),
        field(&["x1", "x2", "-2"]),
        field(&["0", "1", "0"]),
        field(&["1", "0", "0"]),
    ]
}

pub fn product_h2_fields() -> Vec<BaseField> {
    vec![
        field(&["exp(-x2) - x1^2/4", "x1", "0", "0"]),
        field(&["-x1/2", "1", "0", "0"]),
        field(&["1", "0", "0", "0"]),
        field(&["0", "0", "exp(-x4) - x3^2/4", "x3"]),
        field(&["0", "0", "-x3/2", "1"]),
        field(&["0", "0", "1", "0"]),
    ]
}

/// The twelve generators of the flat example, `(coefficient, slot)` with
/// the field `coefficient · ∂/∂x^slot`.
pub fn flat3_fields() -> Vec<BaseField> {
    let specs = [
        ("1", 0),
        ("exp((x2 - x1)/2)", 0),
        ("exp(-x1/2)", 0),
        ("exp((x3 - x1)/2)", 0),
        ("exp((x1 - x2)/2)", 1),
        ("1", 1),
        ("exp(-x2/2)", 1),
        ("exp((x3 - x2)/2)", 1),
        ("exp((x1 - x3)/2)", 2),
        ("exp((x2 - x3)/2)", 2),
        ("1", 2),
        ("exp(-x3/2)", 2),
    ];
    specs
        .iter()
        .map(|(c, slot)| {
            let mut comps = vec!["0"; 3];
            comps[*slot] = c;
            field(&comps)
        })
        .collect()
}

pub fn isometry_fields() -> Vec<BaseField> {
    vec![
        field(&["exp((x2 - x1)/2)", "-exp((x1 - x2)/2)", "0"]),
        field(&["exp(-x1/2)", "0", "0"]),
        field(&["exp((x3 - x1)/2)", "0", "-exp((x1 - x3)/2)"]),
        field(&["0", "exp(-x2/2)", "0"]),
        field(&["0", "exp((x3 - x2)/2)", "-exp((x2 - x3)/2)"]),
        field(&["0", "0", "exp(-x3/2)"]),
    ]
}

pub fn constants(fields: &[BaseField], prefix: &str) -> StructureConstants {
    let names = (1..=fields.len()).map(|i| format!("{prefix}{i}")).collect();
    StructureConstants::from_fields(fields, names).unwrap()
}

/// `c · exp(Σ a_i x^i)` per diagonal slot, with `c ∈ {1/2, 1, 2, 3}` and
/// `a_i ∈ {−1, −1/2, 0, 1/2, 1}`.
pub fn random_diagonal_metric(seed: u64) -> MetricSpec {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(2..=4);
    let coeffs = ["1/2", "1", "2", "3"];
    let entries: Vec<String> = (0..n)
        .map(|_| {
            let c = coeffs[rng.gen_range(0..coeffs.len())];
            let lin: Vec<String> = (1..=n)
                .map(|i| format!("({})/2*x{i}", rng.gen_range(-2..=2)))
                .collect();
            format!("{c}*exp({})", lin.join(" + "))
        })
        .collect();
    MetricSpec::diagonal(entries.iter().map(|s| e(s)).collect()).unwrap()
}

/// Random `x`-only expression: up to three terms of the form
/// `c · x^α · exp(ℓ)` in `dim` variables.
pub fn random_x_expr(rng: &mut ChaCha8Rng, dim: usize) -> CanonicalExpr {
    let terms = rng.gen_range(0..=3);
    let mut parts = vec!["0".to_string()];
    for _ in 0..terms {
        let mut t = format!("({})/{}", rng.gen_range(-3..=3), rng.gen_range(1..=3));
        for i in 1..=dim {
            let p = rng.gen_range(0..=2);
            if p > 0 {
                t.push_str(&format!("*x{i}^{p}"));
            }
        }
        if rng.gen_bool(0.5) {
            let i = rng.gen_range(1..=dim);
            t.push_str(&format!("*exp(({})/2*x{i})", rng.gen_range(-2..=2)));
        }
        parts.push(t);
    }
    e(&parts.join(" + "))
}

pub fn random_base_field(rng: &mut ChaCha8Rng, dim: usize) -> BaseField {
    BaseField::new((0..dim).map(|_| random_x_expr(rng, dim)).collect()).unwrap()
}

/// Points with every coordinate in `{−2, −3/2, …, 2} \ {0}`.
pub fn points(dim: usize, k: usize, seed: u64) -> Vec<BTreeMap<Var, Rational>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..k)
        .map(|_| {
            Var::frame(dim)
                .map(|v| {
                    let mut n = 0;
                    while n == 0 {
                        n = rng.gen_range(-4..=4);
                    }
                    (v, rat(n, 2))
                })
                .collect()
        })
        .collect()
}

pub fn eval(e: &CanonicalExpr, p: &BTreeMap<Var, Rational>) -> f64 {
    e.eval_at::<f64>(p).unwrap()
}

pub fn rel_dev(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1.0)
}
