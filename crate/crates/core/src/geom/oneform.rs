use crate::fields::TMField;
use crate::symexpr::{CanonicalExpr, Var};
use crate::{int, rat, Rational};

use super::ConnectionData;

/// Endomorphism field on `TM`. Column `b` holds the components of `L(∂_b)`
/// in the frame `(∂/∂x, ∂/∂y)`.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorOneForm {
    dim: usize,
    columns: Vec<TMField>,
}

impl VectorOneForm {
    pub fn from_columns(columns: Vec<TMField>) -> VectorOneForm {
        let dim = columns.len() / 2;
        assert!(
            columns.iter().all(|c| c.dim() == dim),
            "vector 1-form columns must match the frame size"
        );
        VectorOneForm { dim, columns }
    }

    pub fn zero(dim: usize) -> VectorOneForm {
        VectorOneForm::from_columns(vec![TMField::zero(dim); 2 * dim])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `L(∂_slot)`.
    pub fn column(&self, slot: usize) -> &TMField {
        &self.columns[slot]
    }

    /// Entry `(row, col)`: component `row` of `L(∂_col)`.
    pub fn entry(&self, row: usize, col: usize) -> &CanonicalExpr {
        self.columns[col].component(row)
    }

    /// `L(X) = X^b L(∂_b)`.
    pub fn apply(&self, x: &TMField) -> TMField {
        let mut acc = TMField::zero(self.dim);
        for (b, c) in x.components().iter().enumerate() {
            if !c.is_zero() {
                acc = acc.add(&self.columns[b].mul_fn(c));
            }
        }
        acc
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &VectorOneForm) -> VectorOneForm {
        VectorOneForm::from_columns(other.columns.iter().map(|c| self.apply(c)).collect())
    }

    pub fn add(&self, other: &VectorOneForm) -> VectorOneForm {
        VectorOneForm::from_columns(
            self.columns.iter().zip(&other.columns).map(|(a, b)| a.add(b)).collect(),
        )
    }

    pub fn sub(&self, other: &VectorOneForm) -> VectorOneForm {
        VectorOneForm::from_columns(
            self.columns.iter().zip(&other.columns).map(|(a, b)| a.sub(b)).collect(),
        )
    }

    pub fn scale(&self, k: &Rational) -> VectorOneForm {
        VectorOneForm::from_columns(self.columns.iter().map(|c| c.scale(k)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(TMField::is_zero)
    }

    /// Entries in column-major order, for residual reporting.
    pub fn entries(&self) -> impl Iterator<Item = &CanonicalExpr> + '_ {
        self.columns.iter().flat_map(|c| c.components().iter())
    }
}

pub fn identity(dim: usize) -> VectorOneForm {
    VectorOneForm::from_columns((0..2 * dim).map(|s| TMField::coordinate(dim, s)).collect())
}

/// Tangent structure: `J(∂/∂x^i) = ∂/∂y^i`, `J(∂/∂y^i) = 0`.
pub fn tangent_structure(dim: usize) -> VectorOneForm {
    VectorOneForm::from_columns(
        (0..2 * dim)
            .map(|s| {
                if s < dim {
                    TMField::coordinate(dim, dim + s)
                } else {
                    TMField::zero(dim)
                }
            })
            .collect(),
    )
}

/// Liouville field `C = y^i ∂/∂y^i`.
pub fn liouville(dim: usize) -> TMField {
    let comps = (0..2 * dim)
        .map(|s| {
            if s < dim {
                CanonicalExpr::zero()
            } else {
                CanonicalExpr::var(Var::Y((s - dim) as u32 + 1))
            }
        })
        .collect();
    TMField::new(comps)
}

/// Horizontal and vertical projectors of a connection:
/// `h(∂/∂x^i) = ∂/∂x^i − Γ^j_i ∂/∂y^j`, `h(∂/∂y^j) = 0`, `v = I − h`.
pub fn projectors(c: &ConnectionData) -> (VectorOneForm, VectorOneForm) {
    let n = c.dim();
    let columns = (0..2 * n)
        .map(|s| {
            if s >= n {
                return TMField::zero(n);
            }
            let mut comps = vec![CanonicalExpr::zero(); 2 * n];
            comps[s] = CanonicalExpr::one();
            for j in 0..n {
                comps[n + j] = -c.gamma(j, s);
            }
            TMField::new(comps)
        })
        .collect();
    let h = VectorOneForm::from_columns(columns);
    let v = identity(n).sub(&h);
    (h, v)
}

/// The connection as an almost product structure `Γ = 2h − I`.
pub fn connection_form(c: &ConnectionData) -> VectorOneForm {
    let (h, _) = projectors(c);
    h.scale(&int(2)).sub(&identity(c.dim()))
}

/// Vector-valued 2-form tabulated on pairs of frame fields:
/// `values[a][b] = B(∂_a, ∂_b)`.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorTwoForm {
    dim: usize,
    values: Vec<Vec<TMField>>,
}

impl VectorTwoForm {
    pub fn from_table(values: Vec<Vec<TMField>>) -> VectorTwoForm {
        let dim = values.len() / 2;
        VectorTwoForm { dim, values }
    }

    pub fn zero(dim: usize) -> VectorTwoForm {
        VectorTwoForm {
            dim,
            values: vec![vec![TMField::zero(dim); 2 * dim]; 2 * dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn value(&self, a: usize, b: usize) -> &TMField {
        &self.values[a][b]
    }

    pub fn scale(&self, k: &Rational) -> VectorTwoForm {
        VectorTwoForm {
            dim: self.dim,
            values: self
                .values
                .iter()
                .map(|row| row.iter().map(|f| f.scale(k)).collect())
                .collect(),
        }
    }

    pub fn is_antisymmetric(&self) -> bool {
        let m = 2 * self.dim;
        (0..m).all(|a| {
            (a..m).all(|b| self.values[a][b] == self.values[b][a].scale(&int(-1)))
        })
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().flatten().all(TMField::is_zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = &CanonicalExpr> + '_ {
        self.values.iter().flatten().flat_map(|f| f.components().iter())
    }
}

/// Frölicher–Nijenhuis bracket of two vector 1-forms on coordinate pairs
/// (where `[∂_a, ∂_b] = 0`):
///
/// `[K,L](X,Y) = [KX,LY] + [LX,KY] − K[LX,Y] − L[KX,Y] − K[X,LY] − L[X,KY]`.
pub fn fn_bracket(k: &VectorOneForm, l: &VectorOneForm) -> VectorTwoForm {
    let n = k.dim();
    assert_eq!(n, l.dim(), "vector 1-forms on different bundles");
    let m = 2 * n;
    let minus = int(-1);
    let mut values = vec![vec![TMField::zero(n); m]; m];
    for a in 0..m {
        let (ka, la) = (k.column(a), l.column(a));
        for b in 0..m {
            let (kb, lb) = (k.column(b), l.column(b));
            // [Z, ∂_b] = −∂_b Z and [∂_a, Z] = ∂_a Z
            let la_b = la.diff_slot(b).scale(&minus);
            let ka_b = ka.diff_slot(b).scale(&minus);
            let a_lb = lb.diff_slot(a);
            let a_kb = kb.diff_slot(a);
            let v = ka
                .bracket(lb)
                .add(&la.bracket(kb))
                .sub(&k.apply(&la_b))
                .sub(&l.apply(&ka_b))
                .sub(&k.apply(&a_lb))
                .sub(&l.apply(&a_kb));
            values[a][b] = v;
        }
    }
    VectorTwoForm { dim: n, values }
}

/// Nijenhuis tensor `N_L = ½[L, L]`.
pub fn nijenhuis(l: &VectorOneForm) -> VectorTwoForm {
    fn_bracket(l, l).scale(&rat(1, 2))
}
