use num_traits::Zero;

use crate::linalg::{span_basis, Matrix};
use crate::Rational;

/// Subspace of `ℚ^m`, stored by its reduced echelon basis, so equal
/// subspaces have equal representations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Rational>>,
}

impl Subspace {
    pub fn span(ambient: usize, vectors: &[Vec<Rational>]) -> Subspace {
        assert!(vectors.iter().all(|v| v.len() == ambient), "vector length must match ambient");
        Subspace {
            ambient,
            basis: span_basis(vectors, ambient),
        }
    }

    pub fn zero(ambient: usize) -> Subspace {
        Subspace {
            ambient,
            basis: vec![],
        }
    }

    pub fn whole(ambient: usize) -> Subspace {
        Subspace::span(ambient, &Matrix::<Rational>::identity(ambient).to_rows())
    }

    /// Span of the basis vectors with the given 0-based indices.
    pub fn coordinate(ambient: usize, indices: &[usize]) -> Subspace {
        let vectors: Vec<Vec<Rational>> = indices.iter().map(|&i| unit(ambient, i)).collect();
        Subspace::span(ambient, &vectors)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_whole(&self) -> bool {
        self.dim() == self.ambient
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        if v.iter().all(Zero::is_zero) {
            return true;
        }
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        Matrix::from_rows(rows, self.ambient).rank() == self.dim()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        Subspace::span(self.ambient, &rows)
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        // a·A = b·B  ⇔  (a, −b) ∈ ker [Aᵀ | −Bᵀ]
        let (p, q) = (self.dim(), other.dim());
        if p == 0 || q == 0 {
            return Subspace::zero(self.ambient);
        }
        let mut m = Matrix::zeros(self.ambient, p + q);
        for (j, v) in self.basis.iter().enumerate() {
            for (r, x) in v.iter().enumerate() {
                m[(r, j)] = x.clone();
            }
        }
        for (j, v) in other.basis.iter().enumerate() {
            for (r, x) in v.iter().enumerate() {
                m[(r, p + j)] = -x.clone();
            }
        }
        let vectors: Vec<Vec<Rational>> = m
            .nullspace()
            .iter()
            .map(|k| combine(&self.basis, &k[..p], self.ambient))
            .collect();
        Subspace::span(self.ambient, &vectors)
    }

    /// Basis vectors `e_i` completing `self` to the whole space, chosen
    /// greedily in index order.
    pub fn coordinate_complement(&self) -> Vec<usize> {
        let mut current = self.clone();
        let mut out = Vec::new();
        for i in 0..self.ambient {
            let e = unit(self.ambient, i);
            if !current.contains(&e) {
                current = current.sum(&Subspace::span(self.ambient, &[e]));
                out.push(i);
            }
        }
        out
    }

    /// Coordinates of `v` in the stored basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        if self.is_zero() {
            return v.iter().all(Zero::is_zero).then(Vec::new);
        }
        let mut m = Matrix::zeros(self.ambient, self.dim());
        for (j, b) in self.basis.iter().enumerate() {
            for (r, x) in b.iter().enumerate() {
                m[(r, j)] = x.clone();
            }
        }
        m.solve(v)
    }
}

pub(crate) fn unit(m: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); m];
    v[i] = Rational::from_integer(1.into());
    v
}

pub(crate) fn combine(vectors: &[Vec<Rational>], coeffs: &[Rational], m: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); m];
    for (v, c) in vectors.iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(v) {
            *o += c * x;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::int;

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn canonical_representation() {
        let a = Subspace::span(3, &[v(&[1, 1, 0]), v(&[0, 1, 0])]);
        let b = Subspace::coordinate(3, &[0, 1]);
        assert_eq!(a, b);
        assert!(a.contains(&v(&[3, -2, 0])));
        assert!(!a.contains(&v(&[0, 0, 1])));
        assert_eq!(a.coordinate_complement(), vec![2]);
    }

    #[test]
    fn intersection_and_sum() {
        let a = Subspace::coordinate(3, &[0, 1]);
        let b = Subspace::span(3, &[v(&[1, 0, 1]), v(&[0, 1, 0])]);
        assert_eq!(a.intersection(&b), Subspace::coordinate(3, &[1]));
        assert!(a.sum(&b).is_whole());
        assert!(a.intersection(&Subspace::zero(3)).is_zero());
    }

    #[test]
    fn coordinates_round_trip() {
        let a = Subspace::span(3, &[v(&[1, 2, 0]), v(&[0, 1, 1])]);
        let x = v(&[2, 5, 1]);
        let c = a.coordinates(&x).unwrap();
        assert_eq!(combine(a.basis(), &c, 3), x);
        assert_eq!(a.coordinates(&v(&[0, 0, 1])), None);
    }
}
