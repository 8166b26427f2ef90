use num_traits::Zero;

use crate::linalg::Matrix;
use crate::Rational;

use super::ideal::{derived_series, ideal_check, is_semisimple, is_solvable, radical};
use super::subspace::{unit, Subspace};
use super::{LieError, StructureConstants};

/// `g = levi ⊕ radical` with `levi` a semisimple subalgebra.
#[derive(Clone, Debug, PartialEq)]
pub struct LeviResult {
    pub radical: Subspace,
    pub levi: Subspace,
}

/// Levi factor by lifting a complement of the radical one abelian layer
/// `R_l / R_{l+1}` of its derived series at a time.
pub fn levi_decomposition(sc: &StructureConstants) -> Result<LeviResult, LieError> {
    let m = sc.dim();
    let rad = radical(sc);
    let series = derived_series(sc, &rad);
    if !series.last().is_some_and(Subspace::is_zero) {
        return Err(LieError::LeviVerification("radical is not solvable".into()));
    }
    let comp = rad.coordinate_complement();
    let s = comp.len();
    let mut x: Vec<Vec<Rational>> = comp.iter().map(|&i| unit(m, i)).collect();

    // quotient constants: [x_i, x_j] ≡ c^k_ij x_k  (mod R)
    let full = basis_matrix(m, x.iter().chain(rad.basis()));
    let mut c = vec![vec![vec![Rational::zero(); s]; s]; s];
    for i in 0..s {
        for j in 0..s {
            let coords = full
                .solve(&sc.bracket(&x[i], &x[j]))
                .ok_or_else(|| LieError::LeviVerification("complement does not span".into()))?;
            c[i][j] = coords[..s].to_vec();
        }
    }

    for layer in 0..series.len().saturating_sub(1) {
        let (r_l, r_next) = (&series[layer], &series[layer + 1]);
        let w: Vec<Vec<Rational>> = r_next
            .coordinate_complement_within(r_l)
            .into_iter()
            .collect();
        let wd = w.len();
        if wd == 0 {
            continue;
        }
        // coordinates in R_l with the W part first
        let local = basis_matrix(m, w.iter().chain(r_next.basis()));
        let coord_w = |v: &[Rational]| -> Result<Vec<Rational>, LieError> {
            local
                .solve(v)
                .map(|c| c[..wd].to_vec())
                .ok_or(LieError::LiftInconsistent(layer))
        };
        // unknown u[i][a] at index i*wd + a, z_i = Σ_a u[i][a] w_a
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for i in 0..s {
            for j in i + 1..s {
                let mut resid = sc.bracket(&x[i], &x[j]);
                for k in 0..s {
                    for (r, xv) in resid.iter_mut().zip(&x[k]) {
                        *r -= &c[i][j][k] * xv;
                    }
                }
                let target = coord_w(&resid)?;
                // [x_i, z_j] − [x_j, z_i] − Σ_k c^k_ij z_k
                let mut block = vec![vec![Rational::zero(); s * wd]; wd];
                for a in 0..wd {
                    let xi_w = coord_w(&sc.bracket(&x[i], &w[a]))?;
                    let xj_w = coord_w(&sc.bracket(&x[j], &w[a]))?;
                    for (row, (p, q)) in block.iter_mut().zip(xi_w.iter().zip(&xj_w)) {
                        row[j * wd + a] += p;
                        row[i * wd + a] -= q;
                    }
                    for k in 0..s {
                        if !c[i][j][k].is_zero() {
                            block[a][k * wd + a] -= &c[i][j][k];
                        }
                    }
                }
                rows.extend(block);
                rhs.extend(target.into_iter().map(|v| -v));
            }
        }
        if rows.is_empty() {
            continue;
        }
        let u = Matrix::from_rows(rows, s * wd)
            .solve(&rhs)
            .ok_or(LieError::LiftInconsistent(layer))?;
        for i in 0..s {
            for a in 0..wd {
                let coef = &u[i * wd + a];
                if coef.is_zero() {
                    continue;
                }
                for (xv, wv) in x[i].iter_mut().zip(&w[a]) {
                    *xv += coef * wv;
                }
            }
        }
    }

    let result = LeviResult {
        radical: rad,
        levi: Subspace::span(m, &x),
    };
    verify_levi(sc, &result)?;
    Ok(result)
}

/// Checks that `levi` is a semisimple subalgebra complementary to the
/// solvable ideal `radical`.
pub fn verify_levi(sc: &StructureConstants, r: &LeviResult) -> Result<(), LieError> {
    let m = sc.dim();
    let fail = |msg: &str| Err(LieError::LeviVerification(msg.into()));
    if r.radical.dim() + r.levi.dim() != m {
        return fail("dimensions do not add up");
    }
    if !r.radical.intersection(&r.levi).is_zero() {
        return fail("levi meets the radical");
    }
    if !ideal_check(sc, &r.radical) || !is_solvable(sc, &r.radical) {
        return fail("radical is not a solvable ideal");
    }
    let Ok(sub) = sc.restrict(&r.levi) else {
        return fail("levi is not a subalgebra");
    };
    if !r.levi.is_zero() && !is_semisimple(&sub) {
        return fail("levi is not semisimple");
    }
    Ok(())
}

fn basis_matrix<'a>(m: usize, columns: impl Iterator<Item = &'a Vec<Rational>>) -> Matrix<Rational> {
    let cols: Vec<&Vec<Rational>> = columns.collect();
    let mut a = Matrix::zeros(m, cols.len());
    for (j, v) in cols.iter().enumerate() {
        for (r, x) in v.iter().enumerate() {
            a[(r, j)] = x.clone();
        }
    }
    a
}

impl Subspace {
    /// Vectors of `outer` completing `self` (contained in `outer`) to a basis
    /// of `outer`, chosen greedily from the stored basis of `outer`.
    pub(crate) fn coordinate_complement_within(&self, outer: &Subspace) -> Vec<Vec<Rational>> {
        let mut current = self.clone();
        let mut out = Vec::new();
        for v in outer.basis() {
            if !current.contains(v) {
                current = current.sum(&Subspace::span(self.ambient(), std::slice::from_ref(v)));
                out.push(v.clone());
            }
        }
        out
    }
}
