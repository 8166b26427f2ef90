mod common;

use liespray::fields::{bracket_base, bracket_tm, complete_lift, in_nullity, is_horizontal, lie_derivative_oneform};
use liespray::geom::{
    connection_form, curvature_potential, fn_bracket, identity, liouville, nijenhuis, projectors,
    tangent_structure, Geometry,
};
use liespray::{int, rat, CanonicalExpr, Var};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::*;

const RANDOM_METRIC_SEEDS: [u64; 5] = [11, 23, 37, 41, 59];

fn all_geometries() -> Vec<(String, Geometry)> {
    let mut out = vec![
        ("hyperbolic3".to_string(), hyperbolic3()),
        ("product_h2".to_string(), product_h2()),
        ("flat3".to_string(), flat3()),
    ];
    for seed in RANDOM_METRIC_SEEDS {
        out.push((format!("random metric seed {seed}"), Geometry::from_metric(random_diagonal_metric(seed)).unwrap()));
    }
    out
}

// Sprays frozen from an independent sympy computation of
// G^k = ¼ g^{kl}(2 ∂_i g_lj − ∂_l g_ij) y^i y^j.
#[test]
fn sprays_match_independent_computation() {
    let cases: [(Geometry, &[&str]); 3] = [
        (hyperbolic3(), &["y1*y3/2", "y2*y3/2", "-exp(x3)*(y1^2 + y2^2)/4"]),
        (product_h2(), &["y1*y2/2", "-exp(x2)*y1^2/4", "y3*y4/2", "-exp(x4)*y3^2/4"]),
        (flat3(), &["y1^2/4", "y2^2/4", "y3^2/4"]),
    ];
    for (g, expected) in cases {
        let want: Vec<CanonicalExpr> = expected.iter().map(|s| e(s)).collect();
        assert_eq!(g.spray.coefficients(), &want[..]);
    }
}

#[test]
fn spray_is_quadratic_and_connection_is_its_y_gradient() {
    for (name, g) in all_geometries() {
        let n = g.dim();
        for k in 0..n {
            assert!(g.spray.g(k).is_y_homogeneous(2), "{name}: G^{}", k + 1);
            for i in 0..n {
                assert_eq!(g.connection.gamma(k, i), &g.spray.g(k).diff(Var::Y(i as u32 + 1)), "{name}");
                for l in 0..n {
                    assert_eq!(g.connection.gamma2(k, i, l), g.connection.gamma2(k, l, i), "{name}");
                }
            }
        }
    }
}

#[test]
fn curvature_equals_half_nijenhuis_of_h_and_eighth_bracket_of_gamma() {
    for (name, g) in all_geometries() {
        let (h, _) = projectors(&g.connection);
        let gamma = connection_form(&g.connection);
        let r = g.curvature.as_two_form();
        assert!(r.is_antisymmetric(), "{name}");
        assert_eq!(r, nijenhuis(&h), "{name}: R vs ½[h,h]");
        assert_eq!(nijenhuis(&h), fn_bracket(&gamma, &gamma).scale(&rat(1, 8)), "{name}: ½[h,h] vs ⅛[Γ,Γ]");
    }
}

#[test]
fn liouville_spray_and_tangent_structure_brackets() {
    for (name, g) in all_geometries() {
        let n = g.dim();
        let s = g.spray.as_field();
        let c = liouville(n);
        let j = tangent_structure(n);
        let gamma = connection_form(&g.connection);
        assert_eq!(bracket_tm(&c, &s), s, "{name}: [C,S]");
        assert_eq!(lie_derivative_oneform(&c, &j), j.scale(&int(-1)), "{name}: [C,J]");
        // [J,S] = −L_S J
        assert_eq!(lie_derivative_oneform(&s, &j).scale(&int(-1)), gamma, "{name}: [J,S]");
    }
}

#[test]
fn projectors_are_complementary_idempotents() {
    for (name, g) in all_geometries() {
        let n = g.dim();
        let (h, v) = projectors(&g.connection);
        let gamma = connection_form(&g.connection);
        let j = tangent_structure(n);
        assert_eq!(h.compose(&h), h, "{name}");
        assert_eq!(v.compose(&v), v, "{name}");
        assert!(h.compose(&v).is_zero(), "{name}");
        assert_eq!(h.add(&v), identity(n), "{name}");
        assert_eq!(gamma.compose(&gamma), identity(n), "{name}");
        assert_eq!(j.compose(&h), j, "{name}: h is J-compatible");
        assert!(j.compose(&v).is_zero(), "{name}");
    }
}

#[test]
fn curvature_potential_is_contraction_with_spray() {
    for (name, g) in all_geometries() {
        let n = g.dim();
        let pot = curvature_potential(&g.spray, &g.curvature);
        for k in 0..n {
            for j in 0..n {
                let want: CanonicalExpr = (0..n)
                    .map(|i| g.curvature.r(k, i, j) * &CanonicalExpr::var(Var::Y(i as u32 + 1)))
                    .sum();
                assert_eq!(pot[k][j], want, "{name}");
            }
        }
    }
}

#[test]
fn identities_agree_pointwise() {
    for (name, g) in all_geometries() {
        let n = g.dim();
        let (h, _) = projectors(&g.connection);
        let gamma = connection_form(&g.connection);
        let r: Vec<CanonicalExpr> = g.curvature.as_two_form().entries().cloned().collect();
        let hh: Vec<CanonicalExpr> = nijenhuis(&h).entries().cloned().collect();
        let gg: Vec<CanonicalExpr> = fn_bracket(&gamma, &gamma).scale(&rat(1, 8)).entries().cloned().collect();
        for p in points(n, 10, 1729) {
            for ((a, b), c) in r.iter().zip(&hh).zip(&gg) {
                assert!(rel_dev(eval(a, &p), eval(b, &p)) <= 1e-12, "{name}");
                assert!(rel_dev(eval(b, &p), eval(c, &p)) <= 1e-12, "{name}");
            }
        }
    }
}

#[test]
fn spray_derivatives_match_central_differences() {
    let h = rat(1, 10000);
    for (name, g) in all_geometries() {
        let n = g.dim();
        for p in points(n, 10, 1729) {
            for k in 0..n {
                let gk = g.spray.g(k);
                for v in Var::frame(n) {
                    let fd = (gk.eval_shifted::<f64>(&p, v, &h).unwrap()
                        - gk.eval_shifted::<f64>(&p, v, &-h.clone()).unwrap())
                        / 2e-4;
                    assert!(rel_dev(eval(&gk.diff(v), &p), fd) <= 1e-6, "{name}: ∂G^{}/∂{v:?}", k + 1);
                }
            }
        }
    }
}

#[test]
fn complete_lift_is_a_bracket_homomorphism() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..50 {
        let x = random_base_field(&mut rng, 3);
        let y = random_base_field(&mut rng, 3);
        assert_eq!(complete_lift(&bracket_base(&x, &y)), bracket_tm(&complete_lift(&x), &complete_lift(&y)));
    }
}

#[test]
fn flat_example_has_horizontal_commuting_nullity_fields() {
    let g = flat3();
    assert!(g.curvature.is_zero());
    let fields = [
        field(&["exp(-x1/2)", "0", "0"]),
        field(&["0", "exp(-x2/2)", "0"]),
        field(&["0", "0", "exp(-x3/2)"]),
    ];
    for x in &fields {
        assert!(is_horizontal(x, &g.connection).holds);
        assert!(in_nullity(x, &g.curvature).holds);
        for y in &fields {
            assert!(bracket_base(x, y).is_zero());
        }
    }
}

#[test]
fn curved_examples_reject_constant_coordinate_fields() {
    for g in [hyperbolic3(), product_h2()] {
        let n = g.dim();
        for i in 0..n {
            let mut comps = vec!["0"; n];
            comps[i] = "1";
            assert!(!in_nullity(&field(&comps), &g.curvature).holds);
        }
    }
}
