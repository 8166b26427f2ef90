use num_traits::{Signed, Zero};

use crate::linalg::Matrix;
use crate::Rational;

use super::StructureConstants;

/// `κ(b_i, b_j) = tr(ad b_i ∘ ad b_j) = c^l_ik c^k_jl`.
#[derive(Clone, Debug, PartialEq)]
pub struct KillingMatrix {
    pub matrix: Matrix<Rational>,
}

/// Inertia of a symmetric rational matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

pub fn killing_form(sc: &StructureConstants) -> KillingMatrix {
    let m = sc.dim();
    let mut k = Matrix::zeros(m, m);
    for i in 0..m {
        for j in i..m {
            let mut v = Rational::zero();
            for a in 0..m {
                for b in 0..m {
                    let x = sc.constant(i, a, b);
                    if !x.is_zero() {
                        v += x * sc.constant(j, b, a);
                    }
                }
            }
            k[(j, i)] = v.clone();
            k[(i, j)] = v;
        }
    }
    KillingMatrix { matrix: k }
}

impl KillingMatrix {
    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn determinant(&self) -> Rational {
        if self.dim() == 0 {
            return Rational::from_integer(1.into());
        }
        self.matrix.determinant()
    }

    pub fn is_nondegenerate(&self) -> bool {
        !self.determinant().is_zero()
    }

    pub fn is_zero(&self) -> bool {
        (0..self.dim()).all(|i| (0..self.dim()).all(|j| self.matrix[(i, j)].is_zero()))
    }

    pub fn value(&self, x: &[Rational], y: &[Rational]) -> Rational {
        let ky = self.matrix.mul_vec(y);
        x.iter().zip(&ky).map(|(a, b)| a * b).sum()
    }

    /// `κ([x,y],z) + κ(y,[x,z]) = 0` on all basis triples.
    pub fn is_ad_invariant(&self, sc: &StructureConstants) -> bool {
        let m = sc.dim();
        let e = |i: usize| super::subspace::unit(m, i);
        (0..m).all(|x| {
            (0..m).all(|y| {
                (0..m).all(|z| {
                    let l = self.value(sc.bracket_basis(x, y), &e(z));
                    let r = self.value(&e(y), sc.bracket_basis(x, z));
                    (l + r).is_zero()
                })
            })
        })
    }

    pub fn signature(&self) -> Signature {
        signature(&self.matrix)
    }
}

/// Inertia by symmetric Gaussian elimination (congruence), exact.
pub fn signature(a: &Matrix<Rational>) -> Signature {
    let mut a = a.clone();
    let n = a.rows();
    let mut sig = Signature {
        positive: 0,
        negative: 0,
        zero: 0,
    };
    let mut active: Vec<usize> = (0..n).collect();
    while !active.is_empty() {
        let pivot = active.iter().copied().find(|&i| !a[(i, i)].is_zero());
        let p = match pivot {
            Some(p) => p,
            None => {
                let pair = active.iter().flat_map(|&i| active.iter().map(move |&j| (i, j))).find(
                    |&(i, j)| i != j && !a[(i, j)].is_zero(),
                );
                let Some((i, j)) = pair else {
                    sig.zero += active.len();
                    break;
                };
                // row_i += row_j and col_i += col_j gives a_ii = 2 a_ij ≠ 0
                for c in 0..n {
                    let v = a[(j, c)].clone();
                    a[(i, c)] = a[(i, c)].clone() + v;
                }
                for r in 0..n {
                    let v = a[(r, j)].clone();
                    a[(r, i)] = a[(r, i)].clone() + v;
                }
                i
            }
        };
        let d = a[(p, p)].clone();
        if d.is_positive() {
            sig.positive += 1;
        } else {
            sig.negative += 1;
        }
        active.retain(|&i| i != p);
        for &r in &active {
            let f = a[(r, p)].clone() / &d;
            if f.is_zero() {
                continue;
            }
            for &c in &active {
                let v = a[(p, c)].clone();
                a[(r, c)] = a[(r, c)].clone() - &f * v;
            }
            a[(r, p)] = Rational::zero();
            a[(p, r)] = Rational::zero();
        }
    }
    sig
}
