mod common;

use std::collections::BTreeMap;

use liespray::symexpr::parse_expr;
use liespray::{rat, CanonicalExpr, Rational, Var};
use proptest::prelude::*;

use common::{eval, rel_dev};

/// One term `c · x1^a x2^b y1^c y2^d · exp(p/2 x1 + q/2 x2)` as source text.
fn term_src() -> impl Strategy<Value = String> {
    (
        (-5i64..=5).prop_filter("nonzero", |n| *n != 0),
        1i64..=4,
        proptest::collection::vec(0u32..=2, 4),
        -2i64..=2,
        -2i64..=2,
    )
        .prop_map(|(n, d, pw, p, q)| {
            format!(
                "({n})/{d}*x1^{}*x2^{}*y1^{}*y2^{}*exp(({p})/2*x1 + ({q})/2*x2)",
                pw[0], pw[1], pw[2], pw[3]
            )
        })
}

fn expr() -> impl Strategy<Value = CanonicalExpr> {
    proptest::collection::vec(term_src(), 0..4).prop_map(|ts| {
        let src = if ts.is_empty() { "0".to_string() } else { ts.join(" + ") };
        parse_expr(&src).unwrap()
    })
}

fn var() -> impl Strategy<Value = Var> {
    prop_oneof![Just(Var::X(1)), Just(Var::X(2)), Just(Var::Y(1)), Just(Var::Y(2))]
}

/// Generic rational points; a nonzero exp-polynomial cannot vanish at all
/// three of them except by coincidence of measure zero.
fn generic_points() -> Vec<BTreeMap<Var, Rational>> {
    [(37, 101, -59, 113, 71, 89, -43, 97), (-13, 17, 29, 31, -7, 11, 19, 23), (5, 3, -7, 4, 11, 6, 2, 9)]
        .iter()
        .map(|&(a, b, c, d, f, g, h, k)| {
            [
                (Var::X(1), rat(a, b)),
                (Var::X(2), rat(c, d)),
                (Var::Y(1), rat(f, g)),
                (Var::Y(2), rat(h, k)),
            ]
            .into_iter()
            .collect()
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn addition_is_commutative_and_associative(a in expr(), b in expr(), c in expr()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn multiplication_distributes(a in expr(), b in expr(), c in expr()) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &CanonicalExpr::one(), a.clone());
    }

    #[test]
    fn printing_then_parsing_is_identity(a in expr()) {
        prop_assert_eq!(parse_expr(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn partial_derivatives_commute(a in expr(), u in var(), v in var()) {
        prop_assert_eq!(a.diff(u).diff(v), a.diff(v).diff(u));
    }

    #[test]
    fn leibniz_rule(a in expr(), b in expr(), v in var()) {
        prop_assert_eq!((&a * &b).diff(v), &(&a.diff(v) * &b) + &(&a * &b.diff(v)));
    }

    #[test]
    fn evaluation_is_a_ring_homomorphism(a in expr(), b in expr()) {
        for p in generic_points() {
            let (x, y) = (eval(&a, &p), eval(&b, &p));
            prop_assert!(rel_dev(eval(&(&a + &b), &p), x + y) < 1e-9);
            prop_assert!(rel_dev(eval(&(&a * &b), &p), x * y) < 1e-9);
        }
    }

    #[test]
    fn canonical_zero_test_agrees_with_evaluation(a in expr(), b in expr()) {
        let d = &a - &b;
        let values: Vec<f64> = generic_points().iter().map(|p| eval(&d, p)).collect();
        if a == b {
            prop_assert!(values.iter().all(|v| *v == 0.0));
        } else {
            prop_assert!(values.iter().any(|v| v.abs() > 1e-12));
        }
    }

    #[test]
    fn derivative_matches_central_difference(a in expr(), v in var()) {
        let h = rat(1, 10000);
        for p in generic_points() {
            let plus = a.eval_shifted::<f64>(&p, v, &h).unwrap();
            let minus = a.eval_shifted::<f64>(&p, v, &-h.clone()).unwrap();
            let fd = (plus - minus) / 2e-4;
            prop_assert!(rel_dev(eval(&a.diff(v), &p), fd) <= 1e-6);
        }
    }
}

#[test]
fn exponentials_combine_and_cancel() {
    let a = parse_expr("exp(x1/2)*exp(-x1/2)").unwrap();
    assert_eq!(a, CanonicalExpr::one());
    let b = parse_expr("exp(x1)^2 - exp(2*x1)").unwrap();
    assert!(b.is_zero());
}

#[test]
fn division_by_a_non_unit_is_rejected() {
    assert!(parse_expr("1/(x1 + 1)").is_err());
    assert!(parse_expr("y1/(2*exp(x2))").is_ok());
}
