mod common;

use liespray::liealg::{
    abelian_ideal_check, center, classify_subalgebra, derivations, derived_subalgebra, ideal_check,
    is_derivation, is_semisimple, is_simple, is_solvable, killing_form, levi_decomposition, radical,
    verify_levi, SimpleType, StructureConstants, Subspace,
};
use liespray::linalg::Matrix;
use liespray::{int, rat, Rational};
use proptest::prelude::*;

use common::*;

fn v(xs: &[i64]) -> Vec<Rational> {
    xs.iter().map(|&x| int(x)).collect()
}

fn example_algebras() -> Vec<(&'static str, StructureConstants)> {
    vec![
        ("hyperbolic3", constants(&hyperbolic3_fields(), "e")),
        ("product_h2", constants(&product_h2_fields(), "e")),
        ("flat3 spray", constants(&flat3_fields(), "e")),
        ("flat3 isometry", constants(&isometry_fields(), "g")),
    ]
}

#[test]
fn structure_constants_satisfy_jacobi_and_invariance() {
    for (name, sc) in example_algebras() {
        assert!(sc.jacobi_check().is_none(), "{name}");
        assert!(killing_form(&sc).is_ad_invariant(&sc), "{name}");
    }
}

#[test]
fn radical_is_a_solvable_ideal_with_a_levi_complement() {
    for (name, sc) in example_algebras() {
        let r = radical(&sc);
        assert!(ideal_check(&sc, &r), "{name}");
        assert!(is_solvable(&sc, &r), "{name}");
        let levi = levi_decomposition(&sc).unwrap();
        verify_levi(&sc, &levi).unwrap();
        assert_eq!(levi.radical.dim() + levi.levi.dim(), sc.dim(), "{name}");
        assert!(is_semisimple(&sc.restrict(&levi.levi).unwrap()), "{name}");
    }
}

#[test]
fn inner_derivations_are_derivations() {
    for (name, sc) in example_algebras() {
        let ders = derivations(&sc);
        for i in 0..sc.dim() {
            assert!(is_derivation(&sc, &sc.ad(i)), "{name}");
            assert!(ders.is_inner(&sc.ad(i)), "{name}");
        }
        assert_eq!(ders.inner_dim(), sc.dim() - center(&sc).dim(), "{name}");
    }
}

#[test]
fn algebra_verdicts() {
    let [h3, ph2, flat_s, flat_g] = <[_; 4]>::try_from(example_algebras()).ok().unwrap();
    assert!(is_simple(&h3.1));
    assert!(is_semisimple(&ph2.1) && !is_simple(&ph2.1));
    assert!(!is_semisimple(&flat_s.1) && !derived_subalgebra(&flat_s.1).is_whole());
    assert!(!is_semisimple(&flat_g.1) && derived_subalgebra(&flat_g.1).is_whole());

    let rad = Subspace::span(12, &[
        v(&[1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0]),
        v(&[0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0]),
        v(&[0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0]),
        v(&[0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    ]);
    assert_eq!(radical(&flat_s.1), rad);
    assert!(abelian_ideal_check(&flat_s.1, &Subspace::coordinate(12, &[2, 6, 11])));
    assert_eq!(derivations(&flat_s.1).outer_dim(), 0);

    let g = &flat_g.1;
    assert!(abelian_ideal_check(g, &Subspace::coordinate(6, &[1, 3, 5])));
    assert_eq!(classify_subalgebra(g, &Subspace::coordinate(6, &[0, 2, 4])), Ok(SimpleType::So3));
    let mut d = Matrix::<Rational>::zeros(6, 6);
    for i in [1, 3, 5] {
        d[(i, i)] = int(1);
    }
    assert!(is_derivation(g, &d));
    assert!(!derivations(g).is_inner(&d));

    for idx in [[0, 1, 2], [3, 4, 5]] {
        assert_eq!(classify_subalgebra(&ph2.1, &Subspace::coordinate(6, &idx)), Ok(SimpleType::Sl2));
    }
}

/// Integer change-of-basis matrices with nonzero determinant.
fn basis_change(m: usize) -> impl Strategy<Value = Vec<Vec<Rational>>> {
    proptest::collection::vec(proptest::collection::vec(-2i64..=2, m), m)
        .prop_map(|rows| rows.into_iter().map(|r| v(&r)).collect::<Vec<_>>())
        .prop_filter("invertible", move |rows: &Vec<Vec<Rational>>| {
            Matrix::from_rows(rows.clone(), m).determinant() != Rational::default()
        })
}

fn invariants(sc: &StructureConstants) -> Invariants {
    (
        is_semisimple(sc),
        is_simple(sc),
        derived_subalgebra(sc).dim(),
        radical(sc).dim(),
        center(sc).dim(),
        derivations(sc).outer_dim(),
    )
}

type Invariants = (bool, bool, usize, usize, usize, usize);

fn base_algebras() -> &'static [(StructureConstants, Invariants); 2] {
    static BASES: std::sync::OnceLock<[(StructureConstants, Invariants); 2]> = std::sync::OnceLock::new();
    BASES.get_or_init(|| {
        [constants(&hyperbolic3_fields(), "e"), constants(&isometry_fields(), "g")].map(|sc| {
            let inv = invariants(&sc);
            (sc, inv)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn invariants_survive_change_of_basis(idx in 0usize..2, rows in basis_change(6)) {
        let (sc, inv) = &base_algebras()[idx];
        let names = (1..=6).map(|i| format!("f{i}")).collect();
        let other = sc.rebase(&rows, names).unwrap();
        prop_assert!(other.jacobi_check().is_none());
        prop_assert!(killing_form(&other).is_ad_invariant(&other));
        prop_assert_eq!(&invariants(&other), inv);
        let levi = levi_decomposition(&other).unwrap();
        prop_assert!(verify_levi(&other, &levi).is_ok());
    }

    #[test]
    fn subspace_dimension_formula(
        a in proptest::collection::vec(proptest::collection::vec(-2i64..=2, 5), 0..4),
        b in proptest::collection::vec(proptest::collection::vec(-2i64..=2, 5), 0..4),
    ) {
        let u = Subspace::span(5, &a.iter().map(|r| v(r)).collect::<Vec<_>>());
        let w = Subspace::span(5, &b.iter().map(|r| v(r)).collect::<Vec<_>>());
        prop_assert_eq!(u.sum(&w).dim() + u.intersection(&w).dim(), u.dim() + w.dim());
        prop_assert!(u.sum(&w).contains_subspace(&u));
        prop_assert!(u.contains_subspace(&u.intersection(&w)));
    }
}

#[test]
fn killing_determinant_of_sl2_factor() {
    let ph2 = constants(&product_h2_fields(), "e");
    let k = killing_form(&ph2.restrict(&Subspace::coordinate(6, &[0, 1, 2])).unwrap());
    assert_ne!(k.determinant(), Rational::default());
    assert_eq!(k.value(&v(&[0, 1, 0]), &v(&[0, 1, 0])), rat(1, 2));
}
