use num_traits::Zero;

use crate::linalg::{span_basis, Matrix};
use crate::Rational;

use super::StructureConstants;

/// Derivation algebra with its inner part. Matrices act on coordinate
/// columns: `D b_i = D[k][i] b_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct DerivationSpace {
    pub basis: Vec<Matrix<Rational>>,
    /// Independent subset spanning `{ad x}`.
    pub inner: Vec<Matrix<Rational>>,
}

impl DerivationSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn inner_dim(&self) -> usize {
        self.inner.len()
    }

    pub fn outer_dim(&self) -> usize {
        self.dim() - self.inner_dim()
    }

    /// `d ∈ span{ad b_i}`.
    pub fn is_inner(&self, d: &Matrix<Rational>) -> bool {
        let m = d.rows();
        let mut rows: Vec<Vec<Rational>> = self.inner.iter().map(|a| flatten(a)).collect();
        let before = Matrix::from_rows(rows.clone(), m * m).rank();
        rows.push(flatten(d));
        Matrix::from_rows(rows, m * m).rank() == before
    }
}

fn flatten(a: &Matrix<Rational>) -> Vec<Rational> {
    a.to_rows().into_iter().flatten().collect()
}

fn unflatten(v: &[Rational], m: usize) -> Matrix<Rational> {
    Matrix::from_rows(v.chunks(m).map(<[Rational]>::to_vec).collect(), m)
}

/// `D[b_i, b_j] = [D b_i, b_j] + [b_i, D b_j]` on all basis pairs.
pub fn is_derivation(sc: &StructureConstants, d: &Matrix<Rational>) -> bool {
    let m = sc.dim();
    let col = |i: usize| (0..m).map(|k| d[(k, i)].clone()).collect::<Vec<_>>();
    let e = |i: usize| super::subspace::unit(m, i);
    (0..m).all(|i| {
        (i + 1..m).all(|j| {
            let lhs = d.mul_vec(sc.bracket_basis(i, j));
            let r1 = sc.bracket(&col(i), &e(j));
            let r2 = sc.bracket(&e(i), &col(j));
            lhs.iter().zip(r1.iter().zip(&r2)).all(|(l, (a, b))| (l - a - b).is_zero())
        })
    })
}

/// Solves the `m²`-unknown derivation system exactly.
pub fn derivations(sc: &StructureConstants) -> DerivationSpace {
    let m = sc.dim();
    let idx = |r: usize, c: usize| r * m + c;
    let mut rows = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            for s in 0..m {
                // Σ_k c^k_ij D[s][k] − Σ_k D[k][i] c^s_kj − Σ_k D[k][j] c^s_ik = 0
                let mut row = vec![Rational::zero(); m * m];
                for k in 0..m {
                    let a = sc.constant(i, j, k);
                    if !a.is_zero() {
                        row[idx(s, k)] += a;
                    }
                    let b = sc.constant(k, j, s);
                    if !b.is_zero() {
                        row[idx(k, i)] -= b;
                    }
                    let c = sc.constant(i, k, s);
                    if !c.is_zero() {
                        row[idx(k, j)] -= c;
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
    let ads: Vec<Vec<Rational>> = (0..m).map(|i| flatten(&sc.ad(i))).collect();
    DerivationSpace {
        basis: kernel.iter().map(|v| unflatten(v, m)).collect(),
        inner: span_basis(&ads, m * m).iter().map(|v| unflatten(v, m)).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::int;

    #[test]
    fn abelian_derivations_are_all_maps() {
        let d = derivations(&StructureConstants::abelian(2));
        assert_eq!(d.dim(), 4);
        assert_eq!(d.inner_dim(), 0);
        assert_eq!(d.outer_dim(), 4);
    }

    #[test]
    fn affine_line_is_complete() {
        // [e1, e2] = e1
        let mut c = vec![vec![vec![int(0); 2]; 2]; 2];
        c[0][1][0] = int(1);
        c[1][0][0] = int(-1);
        let sc = StructureConstants::with_default_names(c).unwrap();
        let d = derivations(&sc);
        assert_eq!((d.dim(), d.inner_dim()), (2, 2));
        for i in 0..2 {
            assert!(is_derivation(&sc, &sc.ad(i)));
            assert!(d.is_inner(&sc.ad(i)));
        }
        assert!(!is_derivation(&sc, &Matrix::identity(2)));
    }
}
