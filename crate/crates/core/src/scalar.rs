use std::fmt::Debug;
use std::ops::Neg;

use num_traits::{Float, NumOps, One, Signed, ToPrimitive, Zero};

use crate::Rational;

/// Field elements usable by the generic elimination routines in
/// [`crate::linalg`].
///
/// Exact types decide zero structurally; floating types decide it against a
/// tolerance scaled by the magnitude of the data being reduced.
pub trait Scalar: Clone + Debug + PartialEq + Zero + One + NumOps + Neg<Output = Self> {
    /// Whether arithmetic on this type is exact.
    const EXACT: bool;

    /// Magnitude used for pivot selection and tolerance scaling.
    fn magnitude(&self) -> f64;

    /// Whether the value counts as zero relative to `scale`.
    fn negligible(&self, scale: f64) -> bool;
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn magnitude(&self) -> f64 {
        self.abs().to_f64().unwrap_or(f64::INFINITY)
    }

    fn negligible(&self, _scale: f64) -> bool {
        self.is_zero()
    }
}

macro_rules! float_scalar {
    ($t:ty) => {
        impl Scalar for $t {
            const EXACT: bool = false;

            fn magnitude(&self) -> f64 {
                self.abs() as f64
            }

            fn negligible(&self, scale: f64) -> bool {
                let eps = <$t as Float>::epsilon() as f64;
                (self.abs() as f64) <= 1.0e3 * eps * scale.max(1.0)
            }
        }
    };
}

float_scalar!(f32);
float_scalar!(f64);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    #[test]
    fn rational_zero_is_exact() {
        assert!(Rational::zero().negligible(1e30));
        assert!(!rat(1, 1_000_000_000).negligible(1e30));
    }

    #[test]
    fn float_tolerance_scales() {
        assert!(1e-14_f64.negligible(1.0));
        assert!(!1e-6_f64.negligible(1.0));
        assert!(1e-4_f32.negligible(1.0e3));
    }
}
