use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use crate::fields::{bracket_base, BaseField};
use crate::linalg::Matrix;
use crate::symexpr::TermKey;
use crate::Rational;

use super::subspace::Subspace;
use super::LieError;

/// Structure constants `[b_i, b_j] = c^k_ij b_k`, stored as `c[i][j][k]`.
#[derive(Clone, Debug, PartialEq)]
pub struct StructureConstants {
    names: Vec<String>,
    c: Vec<Vec<Vec<Rational>>>,
}

/// A failing Jacobi sum at basis triple `(i, j, k)`, coordinate `s`.
#[derive(Clone, Debug, PartialEq)]
pub struct JacobiViolation {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub s: usize,
    pub value: Rational,
}

impl StructureConstants {
    /// Checks shape and antisymmetry.
    pub fn new(names: Vec<String>, c: Vec<Vec<Vec<Rational>>>) -> Result<Self, LieError> {
        let m = names.len();
        if c.len() != m || c.iter().any(|r| r.len() != m || r.iter().any(|v| v.len() != m)) {
            return Err(LieError::Shape(format!("expected {m}×{m}×{m}")));
        }
        for i in 0..m {
            for j in i..m {
                if (0..m).any(|k| c[i][j][k] != -c[j][i][k].clone()) {
                    return Err(LieError::NotAntisymmetric(names[i].clone(), names[j].clone()));
                }
            }
        }
        Ok(StructureConstants { names, c })
    }

    /// Default names `e1, e2, …`.
    pub fn with_default_names(c: Vec<Vec<Vec<Rational>>>) -> Result<Self, LieError> {
        let names = (1..=c.len()).map(|i| format!("e{i}")).collect();
        Self::new(names, c)
    }

    pub fn abelian(m: usize) -> Self {
        let names = (1..=m).map(|i| format!("e{i}")).collect();
        StructureConstants {
            names,
            c: vec![vec![vec![Rational::zero(); m]; m]; m],
        }
    }

    /// Constants of the span of `generators` under the field bracket, found
    /// by exact coefficient matching.
    pub fn from_fields(generators: &[BaseField], names: Vec<String>) -> Result<Self, LieError> {
        let m = generators.len();
        if names.len() != m {
            return Err(LieError::Shape(format!("{} names for {m} generators", names.len())));
        }
        let coords = field_matrix(generators);
        if coords.rank() != m {
            return Err(LieError::DependentGenerators);
        }
        let mut c = vec![vec![vec![Rational::zero(); m]; m]; m];
        for i in 0..m {
            for j in i + 1..m {
                let b = bracket_base(&generators[i], &generators[j]);
                let rhs = project(&coords, &b);
                let sol = rhs.and_then(|r| coords.solve(&r)).ok_or_else(|| LieError::NonClosure {
                    left: names[i].clone(),
                    right: names[j].clone(),
                    bracket: b.to_string(),
                })?;
                for k in 0..m {
                    c[j][i][k] = -sol[k].clone();
                    c[i][j][k] = sol[k].clone();
                }
            }
        }
        Ok(StructureConstants { names, c })
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// `c^k_ij`.
    pub fn constant(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.c[i][j][k]
    }

    /// Coordinates of `[b_i, b_j]`.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &[Rational] {
        &self.c[i][j]
    }

    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let m = self.dim();
        let mut out = vec![Rational::zero(); m];
        for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let w = xi * yj;
                for (o, c) in out.iter_mut().zip(&self.c[i][j]) {
                    if !c.is_zero() {
                        *o += &w * c;
                    }
                }
            }
        }
        out
    }

    /// `ad b_i` with `(ad b_i)[k][j] = c^k_ij`.
    pub fn ad(&self, i: usize) -> Matrix<Rational> {
        let m = self.dim();
        let mut a = Matrix::zeros(m, m);
        for j in 0..m {
            for k in 0..m {
                a[(k, j)] = self.c[i][j][k].clone();
            }
        }
        a
    }

    pub fn ad_vec(&self, x: &[Rational]) -> Matrix<Rational> {
        let m = self.dim();
        let mut a = Matrix::<Rational>::zeros(m, m);
        for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for j in 0..m {
                for k in 0..m {
                    a[(k, j)] = a[(k, j)].clone() + xi * &self.c[i][j][k];
                }
            }
        }
        a
    }

    /// First failing Jacobi sum over `i < j < k`, or `None`.
    pub fn jacobi_check(&self) -> Option<JacobiViolation> {
        let m = self.dim();
        for i in 0..m {
            for j in i + 1..m {
                for k in j + 1..m {
                    for s in 0..m {
                        let mut v = Rational::zero();
                        for l in 0..m {
                            v += &self.c[i][j][l] * &self.c[l][k][s]
                                + &self.c[j][k][l] * &self.c[l][i][s]
                                + &self.c[k][i][l] * &self.c[l][j][s];
                        }
                        if !v.is_zero() {
                            return Some(JacobiViolation { i, j, k, s, value: v });
                        }
                    }
                }
            }
        }
        None
    }

    /// Constants of a subalgebra in its stored echelon basis.
    pub fn restrict(&self, sub: &Subspace) -> Result<StructureConstants, LieError> {
        let b = sub.basis();
        let d = b.len();
        let mut c = vec![vec![vec![Rational::zero(); d]; d]; d];
        for i in 0..d {
            for j in i + 1..d {
                let coords = sub.coordinates(&self.bracket(&b[i], &b[j])).ok_or(LieError::NotClosed)?;
                for k in 0..d {
                    c[j][i][k] = -coords[k].clone();
                    c[i][j][k] = coords[k].clone();
                }
            }
        }
        let names = b.iter().map(|v| format_combination(v, &self.names)).collect();
        Ok(StructureConstants { names, c })
    }

    /// `[b_i, b_j]` as a combination string, e.g. `-1/2*e4 + e6`.
    pub fn cell(&self, i: usize, j: usize) -> String {
        format_combination(&self.c[i][j], &self.names)
    }

    /// Basis change to `vectors` (which must span a subalgebra of the same
    /// dimension as the whole algebra).
    pub fn rebase(&self, vectors: &[Vec<Rational>], names: Vec<String>) -> Result<Self, LieError> {
        let m = self.dim();
        if vectors.len() != m || names.len() != m {
            return Err(LieError::WrongDimension { expected: m, found: vectors.len() });
        }
        let mut p = Matrix::zeros(m, m);
        for (j, v) in vectors.iter().enumerate() {
            for (r, x) in v.iter().enumerate() {
                p[(r, j)] = x.clone();
            }
        }
        if p.rank() != m {
            return Err(LieError::DependentGenerators);
        }
        let mut c = vec![vec![vec![Rational::zero(); m]; m]; m];
        for i in 0..m {
            for j in 0..m {
                let br = self.bracket(&vectors[i], &vectors[j]);
                c[i][j] = p.solve(&br).ok_or(LieError::NotClosed)?;
            }
        }
        Ok(StructureConstants { names, c })
    }
}

/// Linear combination in the grammar of expressions: `e1 - 1/2*e4`, or `0`.
pub fn format_combination(coeffs: &[Rational], names: &[String]) -> String {
    let mut out = String::new();
    for (c, name) in coeffs.iter().zip(names) {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let a = c.abs();
        if !a.is_one() {
            out.push_str(&format!("{a}*"));
        }
        out.push_str(name);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn field_matrix(fields: &[BaseField]) -> CoeffMatrix {
    let m = fields.len();
    let mut rows: BTreeMap<(usize, TermKey), Vec<Rational>> = BTreeMap::new();
    for (col, f) in fields.iter().enumerate() {
        for (slot, e) in f.components().iter().enumerate() {
            for (k, c) in e.terms() {
                rows.entry((slot, k.clone())).or_insert_with(|| vec![Rational::zero(); m])[col] =
                    c.clone();
            }
        }
    }
    let keys = rows.keys().cloned().collect();
    CoeffMatrix {
        keys,
        matrix: Matrix::from_rows(rows.into_values().collect(), m),
    }
}

struct CoeffMatrix {
    keys: Vec<(usize, TermKey)>,
    matrix: Matrix<Rational>,
}

impl CoeffMatrix {
    fn rank(&self) -> usize {
        self.matrix.rank()
    }

    fn solve(&self, rhs: &[Rational]) -> Option<Vec<Rational>> {
        self.matrix.solve(rhs)
    }
}

/// Right-hand side of the coefficient-matching system for `f`, or `None` if
/// `f` has a term no generator has.
fn project(coords: &CoeffMatrix, f: &BaseField) -> Option<Vec<Rational>> {
    let mut rhs = vec![Rational::zero(); coords.keys.len()];
    for (slot, e) in f.components().iter().enumerate() {
        for (k, c) in e.terms() {
            let pos = coords.keys.binary_search(&(slot, k.clone())).ok()?;
            rhs[pos] = c.clone();
        }
    }
    Some(rhs)
}
