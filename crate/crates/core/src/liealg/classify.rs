use super::killing::killing_form;
use super::{LieError, StructureConstants, Subspace};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SimpleType {
    /// Killing form of signature `(2, 1)`.
    Sl2,
    /// Negative definite Killing form.
    So3,
    NotSimple,
}

impl std::fmt::Display for SimpleType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SimpleType::Sl2 => "sl2-type",
            SimpleType::So3 => "so3-type",
            SimpleType::NotSimple => "not-simple",
        })
    }
}

/// Real form of a 3-dimensional algebra, read off the Killing form inertia.
pub fn classify_3dim_simple(sc: &StructureConstants) -> Result<SimpleType, LieError> {
    if sc.dim() != 3 {
        return Err(LieError::WrongDimension {
            expected: 3,
            found: sc.dim(),
        });
    }
    let sig = killing_form(sc).signature();
    Ok(match (sig.positive, sig.negative, sig.zero) {
        (0, 3, 0) => SimpleType::So3,
        (2, 1, 0) => SimpleType::Sl2,
        _ => SimpleType::NotSimple,
    })
}

/// Classifies the subalgebra spanned by `sub`.
pub fn classify_subalgebra(sc: &StructureConstants, sub: &Subspace) -> Result<SimpleType, LieError> {
    classify_3dim_simple(&sc.restrict(sub)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::int;

    fn cross_product(sign: i64) -> StructureConstants {
        // [e1,e2] = s e3, [e2,e3] = e1, [e3,e1] = e2
        let mut c = vec![vec![vec![int(0); 3]; 3]; 3];
        let mut set = |i: usize, j: usize, k: usize, v: i64| {
            c[i][j][k] = int(v);
            c[j][i][k] = int(-v);
        };
        set(0, 1, 2, sign);
        set(1, 2, 0, 1);
        set(2, 0, 1, 1);
        StructureConstants::with_default_names(c).unwrap()
    }

    #[test]
    fn real_forms() {
        assert_eq!(classify_3dim_simple(&cross_product(1)).unwrap(), SimpleType::So3);
        assert_eq!(classify_3dim_simple(&cross_product(-1)).unwrap(), SimpleType::Sl2);
        assert_eq!(
            classify_3dim_simple(&StructureConstants::abelian(3)).unwrap(),
            SimpleType::NotSimple
        );
        assert!(matches!(
            classify_3dim_simple(&StructureConstants::abelian(2)),
            Err(LieError::WrongDimension { .. })
        ));
    }
}
