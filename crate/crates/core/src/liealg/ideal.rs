use num_traits::Zero;

use crate::linalg::Matrix;
use crate::Rational;

use super::killing::killing_form;
use super::subspace::{unit, Subspace};
use super::{LieError, StructureConstants};

/// Bound on the dimension for the `2^m` coordinate subset searches.
pub const MAX_SEARCH_DIM: usize = 16;

fn brackets(sc: &StructureConstants, a: &Subspace, b: &Subspace) -> Subspace {
    let mut out = Vec::new();
    for x in a.basis() {
        for y in b.basis() {
            out.push(sc.bracket(x, y));
        }
    }
    Subspace::span(sc.dim(), &out)
}

/// `[g, g]`.
pub fn derived_subalgebra(sc: &StructureConstants) -> Subspace {
    let m = sc.dim();
    let mut out = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            out.push(sc.bracket_basis(i, j).to_vec());
        }
    }
    Subspace::span(m, &out)
}

/// Derived series `s ⊇ [s,s] ⊇ …` up to stabilization; the last entry is
/// zero exactly when `s` is solvable.
pub fn derived_series(sc: &StructureConstants, s: &Subspace) -> Vec<Subspace> {
    let mut series = vec![s.clone()];
    loop {
        let last = series.last().unwrap();
        let next = brackets(sc, last, last);
        if next.dim() == last.dim() {
            return series;
        }
        let done = next.is_zero();
        series.push(next);
        if done {
            return series;
        }
    }
}

pub fn is_solvable(sc: &StructureConstants, s: &Subspace) -> bool {
    derived_series(sc, s).last().is_some_and(Subspace::is_zero)
}

/// Kernel of the stacked `ad` maps.
pub fn center(sc: &StructureConstants) -> Subspace {
    let m = sc.dim();
    let mut rows = Vec::with_capacity(m * m);
    for j in 0..m {
        for k in 0..m {
            rows.push((0..m).map(|i| sc.constant(i, j, k).clone()).collect());
        }
    }
    Subspace::span(m, &Matrix::from_rows(rows, m).nullspace())
}

/// Radical as the κ-orthogonal complement of `[g, g]`.
pub fn radical(sc: &StructureConstants) -> Subspace {
    let m = sc.dim();
    let k = killing_form(sc).matrix;
    let rows: Vec<Vec<Rational>> =
        derived_subalgebra(sc).basis().iter().map(|d| k.mul_vec(d)).collect();
    if rows.is_empty() {
        return Subspace::whole(m);
    }
    Subspace::span(m, &Matrix::from_rows(rows, m).nullspace())
}

pub fn is_semisimple(sc: &StructureConstants) -> bool {
    sc.dim() > 0 && killing_form(sc).is_nondegenerate()
}

/// `[s, g] ⊆ s`.
pub fn ideal_check(sc: &StructureConstants, s: &Subspace) -> bool {
    let m = sc.dim();
    s.basis()
        .iter()
        .all(|v| (0..m).all(|j| s.contains(&sc.bracket(v, &unit(m, j)))))
}

/// `[s, g] ⊆ s` and `[s, s] = 0`.
pub fn abelian_ideal_check(sc: &StructureConstants, s: &Subspace) -> bool {
    let b = s.basis();
    let abelian = b
        .iter()
        .enumerate()
        .all(|(i, x)| b[i + 1..].iter().all(|y| sc.bracket(x, y).iter().all(Zero::is_zero)));
    abelian && ideal_check(sc, s)
}

/// Smallest ideal containing `s`.
pub fn ideal_generated(sc: &StructureConstants, s: &Subspace) -> Subspace {
    let m = sc.dim();
    let mut current = s.clone();
    loop {
        let mut vectors = current.basis().to_vec();
        for v in current.basis() {
            for j in 0..m {
                vectors.push(sc.bracket(v, &unit(m, j)));
            }
        }
        let next = Subspace::span(m, &vectors);
        if next.dim() == current.dim() {
            return current;
        }
        current = next;
    }
}

/// `span{b_i : i ∈ mask}` is an ideal iff `c^k_ij = 0` for `i ∈ mask`, `k ∉ mask`.
fn coordinate_ideal(sc: &StructureConstants, mask: u32) -> bool {
    let m = sc.dim();
    let inside = |i: usize| mask & (1 << i) != 0;
    (0..m).filter(|&i| inside(i)).all(|i| {
        (0..m).all(|j| (0..m).filter(|&k| !inside(k)).all(|k| sc.constant(i, j, k).is_zero()))
    })
}

fn coordinate_abelian(sc: &StructureConstants, mask: u32) -> bool {
    let m = sc.dim();
    let idx: Vec<usize> = (0..m).filter(|i| mask & (1 << i) != 0).collect();
    idx.iter()
        .all(|&i| idx.iter().all(|&j| sc.bracket_basis(i, j).iter().all(Zero::is_zero)))
}

fn coordinate_search(
    sc: &StructureConstants,
    accept: impl Fn(u32) -> bool,
) -> Result<Vec<Subspace>, LieError> {
    let m = sc.dim();
    if m > MAX_SEARCH_DIM {
        return Err(LieError::TooLarge {
            max: MAX_SEARCH_DIM,
            found: m,
        });
    }
    let mut out = Vec::new();
    for mask in 1u32..(1u32 << m) {
        if accept(mask) {
            let idx: Vec<usize> = (0..m).filter(|i| mask & (1 << i) != 0).collect();
            out.push(Subspace::coordinate(m, &idx));
        }
    }
    Ok(out)
}

/// Nonzero abelian ideals spanned by subsets of the given basis, in
/// subset-bitmask order. Ideals that are not coordinate-aligned are not
/// found.
pub fn find_abelian_ideals_coordinate(sc: &StructureConstants) -> Result<Vec<Subspace>, LieError> {
    coordinate_search(sc, |mask| coordinate_abelian(sc, mask) && coordinate_ideal(sc, mask))
}

/// Proper nonzero ideals spanned by subsets of the given basis.
pub fn find_ideals_coordinate(sc: &StructureConstants) -> Result<Vec<Subspace>, LieError> {
    let whole = (1u32 << sc.dim()) - 1;
    coordinate_search(sc, |mask| mask != whole && coordinate_ideal(sc, mask))
}

/// Centroid `{T : T ∘ ad x = ad x ∘ T}`, as a basis of `m × m` matrices.
pub fn centroid(sc: &StructureConstants) -> Vec<Matrix<Rational>> {
    let m = sc.dim();
    // unknown T[r][c] at index r*m + c; equation (T ad_i − ad_i T)[r][c] = 0
    let ads: Vec<Matrix<Rational>> = (0..m).map(|i| sc.ad(i)).collect();
    let mut rows = Vec::new();
    for a in &ads {
        for r in 0..m {
            for c in 0..m {
                let mut row = vec![Rational::zero(); m * m];
                for k in 0..m {
                    if !a[(k, c)].is_zero() {
                        row[r * m + k] += a[(k, c)].clone();
                    }
                    if !a[(r, k)].is_zero() {
                        row[k * m + c] -= a[(r, k)].clone();
                    }
                }
                if row.iter().any(|v| !v.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let kernel = if rows.is_empty() {
        Matrix::<Rational>::identity(m * m).to_rows()
    } else {
        Matrix::from_rows(rows, m * m).nullspace()
    };
    kernel
        .into_iter()
        .map(|v| Matrix::from_rows(v.chunks(m).map(<[Rational]>::to_vec).collect(), m))
        .collect()
}

/// Outcome of the simplicity test on a semisimple algebra.
#[derive(Clone, Debug, PartialEq)]
pub enum Simplicity {
    NotSemisimple,
    /// Centroid is `ℚ` or a quadratic field, so there is no proper ideal.
    Simple,
    /// A proper nonzero ideal.
    Decomposable(Subspace),
    /// Centroid too large for the exact test and no coordinate ideal exists.
    Undetermined,
}

/// For semisimple `g` the ideals are the sums of simple ideals, and each
/// proper one is cut out by an idempotent of the (commutative) centroid. A
/// centroid of dimension 1 is `ℚ`. For dimension 2 every non-scalar `T` has a
/// quadratic minimal polynomial, and `ker(T − r)` for a rational root `r` is
/// a proper ideal; no rational root means the centroid is a field.
pub fn simplicity(sc: &StructureConstants) -> Simplicity {
    if !is_semisimple(sc) {
        return Simplicity::NotSemisimple;
    }
    let m = sc.dim();
    let cent = centroid(sc);
    if cent.len() == 1 {
        return Simplicity::Simple;
    }
    if let Ok(ideals) = find_ideals_coordinate(sc) {
        if let Some(first) = ideals.into_iter().next() {
            return Simplicity::Decomposable(first);
        }
    }
    if cent.len() == 2 {
        let id = Matrix::<Rational>::identity(m);
        let t = cent
            .iter()
            .find(|t| !is_scalar(t))
            .expect("a 2-dimensional centroid has a non-scalar element");
        // t² = α t + β I
        let t2 = t.mul(t);
        let lhs: Vec<Vec<Rational>> = (0..m * m)
            .map(|p| vec![t[(p / m, p % m)].clone(), id[(p / m, p % m)].clone()])
            .collect();
        let rhs: Vec<Rational> = (0..m * m).map(|p| t2[(p / m, p % m)].clone()).collect();
        let ab = Matrix::from_rows(lhs, 2)
            .solve(&rhs)
            .expect("centroid of a semisimple algebra is a commutative algebra of dimension 2");
        let (alpha, beta) = (&ab[0], &ab[1]);
        // roots of t² − α t − β
        let disc = alpha * alpha + Rational::from_integer(4.into()) * beta;
        if let Some(sq) = rational_sqrt(&disc) {
            let two = Rational::from_integer(2.into());
            let r = (alpha + sq) / two;
            let shifted = sub_scalar(t, &r);
            let ker = Subspace::span(m, &shifted.nullspace());
            if !ker.is_zero() && !ker.is_whole() {
                return Simplicity::Decomposable(ker);
            }
        } else {
            return Simplicity::Simple;
        }
    }
    Simplicity::Undetermined
}

/// Simple iff semisimple with no proper nonzero ideal. See [`simplicity`];
/// an undetermined centroid falls back to the coordinate ideal search.
pub fn is_simple(sc: &StructureConstants) -> bool {
    matches!(simplicity(sc), Simplicity::Simple | Simplicity::Undetermined)
}

fn is_scalar(t: &Matrix<Rational>) -> bool {
    let m = t.rows();
    (0..m).all(|r| (0..m).all(|c| if r == c { t[(r, c)] == t[(0, 0)] } else { t[(r, c)].is_zero() }))
}

fn rational_sqrt(q: &Rational) -> Option<Rational> {
    use num_traits::Signed;
    if q.is_negative() {
        return None;
    }
    let (n, d) = (q.numer(), q.denom());
    let (sn, sd) = (n.sqrt(), d.sqrt());
    (&sn * &sn == *n && &sd * &sd == *d).then(|| Rational::new(sn, sd))
}

fn sub_scalar(t: &Matrix<Rational>, r: &Rational) -> Matrix<Rational> {
    let mut out = t.clone();
    for i in 0..t.rows() {
        out[(i, i)] = out[(i, i)].clone() - r;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::BaseField;
    use crate::symexpr::parse_expr;

    fn base(comps: &[&str]) -> BaseField {
        BaseField::new(comps.iter().map(|s| parse_expr(s).unwrap()).collect()).unwrap()
    }

    fn sc(fields: &[&[&str]]) -> StructureConstants {
        let f: Vec<BaseField> = fields.iter().map(|c| base(c)).collect();
        let names = (1..=f.len()).map(|i| format!("e{i}")).collect();
        StructureConstants::from_fields(&f, names).unwrap()
    }

    fn sl2() -> StructureConstants {
        sc(&[&["0", "-x1"], &["x2", "0"], &["x1", "-x2"]])
    }

    fn so3() -> StructureConstants {
        sc(&[
            &["0", "-x3", "x2"],
            &["x3", "0", "-x1"],
            &["-x2", "x1", "0"],
        ])
    }

    #[test]
    fn abelian_algebra() {
        let a = StructureConstants::abelian(2);
        assert!(derived_subalgebra(&a).is_zero());
        assert!(center(&a).is_whole());
        assert!(radical(&a).is_whole());
        assert_eq!(find_abelian_ideals_coordinate(&a).unwrap().len(), 3);
        assert!(!is_semisimple(&a));
    }

    #[test]
    fn simple_three_dimensional() {
        for g in [sl2(), so3()] {
            assert!(is_semisimple(&g));
            assert!(radical(&g).is_zero());
            assert!(derived_subalgebra(&g).is_whole());
            assert_eq!(simplicity(&g), Simplicity::Simple);
            assert!(find_abelian_ideals_coordinate(&g).unwrap().is_empty());
        }
    }

    #[test]
    fn affine_line_radical() {
        let g = sc(&[&["1"], &["x1"]]);
        assert_eq!(radical(&g), Subspace::whole(2));
        assert!(is_solvable(&g, &Subspace::whole(2)));
        assert_eq!(derived_series(&g, &Subspace::whole(2)).len(), 3);
        assert_eq!(ideal_generated(&g, &Subspace::coordinate(2, &[1])), Subspace::whole(2));
    }

    #[test]
    fn direct_sum_detected() {
        let g = sc(&[
            &["0", "-x1", "0", "0"],
            &["x2", "0", "0", "0"],
            &["x1", "-x2", "0", "0"],
            &["0", "0", "0", "-x3"],
            &["0", "0", "x4", "0"],
            &["0", "0", "x3", "-x4"],
        ]);
        assert!(is_semisimple(&g));
        assert!(matches!(simplicity(&g), Simplicity::Decomposable(_)));
        assert!(!is_simple(&g));
    }

    #[test]
    fn ideal_search_bound() {
        let big = StructureConstants::abelian(17);
        assert!(matches!(
            find_abelian_ideals_coordinate(&big),
            Err(LieError::TooLarge { .. })
        ));
    }
}
