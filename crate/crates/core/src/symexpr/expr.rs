use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{Float, FromPrimitive, One, Signed, ToPrimitive, Zero};

use super::term::{LinForm, Monomial, TermKey};
use super::{ExprError, Var};
use crate::Rational;

/// Normal form of an element of `Q[x, y] ⊗ exp(Q-linear forms in x)`.
///
/// A finite map from `(exponential, monomial)` keys to nonzero rational
/// coefficients. Two expressions are equal as functions iff their term maps
/// are identical; the zero expression is the empty map.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalExpr {
    terms: BTreeMap<TermKey, Rational>,
}

impl CanonicalExpr {
    pub fn zero() -> Self {
        CanonicalExpr::default()
    }

    pub fn one() -> Self {
        CanonicalExpr::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        CanonicalExpr::term(c, Monomial::one(), LinForm::zero())
    }

    pub fn int(n: i64) -> Self {
        CanonicalExpr::constant(crate::int(n))
    }

    pub fn var(v: Var) -> Self {
        CanonicalExpr::term(Rational::one(), Monomial::var(v), LinForm::zero())
    }

    /// `e^{ℓ}` for a linear form `ℓ` in the x variables.
    pub fn exp(l: LinForm) -> Self {
        CanonicalExpr::term(Rational::one(), Monomial::one(), l)
    }

    pub fn term(c: Rational, mono: Monomial, exp: LinForm) -> Self {
        let mut e = CanonicalExpr::zero();
        e.add_term(TermKey { exp, mono }, c);
        e
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (TermKey, Rational)>) -> Self {
        let mut e = CanonicalExpr::zero();
        for (k, c) in terms {
            e.add_term(k, c);
        }
        e
    }

    fn add_term(&mut self, key: TermKey, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&TermKey, &Rational)> + '_ {
        self.terms.iter()
    }

    /// The value if the expression is a rational constant (zero included).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (k, c) = self.terms.iter().next()?;
                (k.mono.is_one() && k.exp.is_zero()).then(|| c.clone())
            }
            _ => None,
        }
    }

    /// `(c, ℓ)` when the expression is `c·e^{ℓ}` with `c ≠ 0`: exactly the
    /// units of the ring.
    pub fn as_unit(&self) -> Option<(Rational, LinForm)> {
        if self.terms.len() != 1 {
            return None;
        }
        let (k, c) = self.terms.iter().next()?;
        k.mono.is_one().then(|| (c.clone(), k.exp.clone()))
    }

    pub fn inverse(&self) -> Result<CanonicalExpr, ExprError> {
        let (c, l) = self
            .as_unit()
            .ok_or_else(|| ExprError::NonUnitDivisor(self.to_string()))?;
        Ok(CanonicalExpr::term(c.recip(), Monomial::one(), l.neg()))
    }

    pub fn checked_div(&self, divisor: &CanonicalExpr) -> Result<CanonicalExpr, ExprError> {
        Ok(self * &divisor.inverse()?)
    }

    /// Integer power; negative exponents require a unit base.
    pub fn pow(&self, e: i64) -> Result<CanonicalExpr, ExprError> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut n = e.unsigned_abs();
        let mut acc = CanonicalExpr::one();
        let mut sq = base;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &sq;
            }
            n >>= 1;
            if n > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// The linear form `ℓ` if the expression is itself `ℓ(x)` (degree-one
    /// x-monomials only, no exponentials, no constant term).
    pub fn as_linear_form(&self) -> Option<LinForm> {
        let mut l = LinForm::zero();
        for (k, c) in &self.terms {
            if !k.exp.is_zero() || k.mono.degree() != 1 {
                return None;
            }
            let (v, _) = k.mono.iter().next()?;
            match v {
                Var::X(i) => l.add_coefficient(i, c.clone()),
                Var::Y(_) => return None,
            }
        }
        Some(l)
    }

    pub fn scale(&self, k: &Rational) -> CanonicalExpr {
        if k.is_zero() {
            return CanonicalExpr::zero();
        }
        CanonicalExpr {
            terms: self.terms.iter().map(|(t, c)| (t.clone(), c * k)).collect(),
        }
    }

    /// Exact partial derivative: power rule on the monomial plus `ℓ_v` times
    /// the term for the exponential factor.
    pub fn diff(&self, v: Var) -> CanonicalExpr {
        let mut out = CanonicalExpr::zero();
        for (k, c) in &self.terms {
            if let Some((m, mono)) = k.mono.diff(v) {
                out.add_term(
                    TermKey {
                        exp: k.exp.clone(),
                        mono,
                    },
                    c * Rational::from_integer(m.into()),
                );
            }
            if let Var::X(i) = v {
                let a = k.exp.coefficient(i);
                if !a.is_zero() {
                    out.add_term(k.clone(), c * a);
                }
            }
        }
        out
    }

    /// [`CanonicalExpr::diff`] with `v` checked against the dimension.
    pub fn diff_in(&self, v: Var, dim: usize) -> Result<CanonicalExpr, ExprError> {
        Ok(self.diff(v.check(dim)?))
    }

    pub fn variables(&self) -> BTreeSet<Var> {
        let mut vars = BTreeSet::new();
        for k in self.terms.keys() {
            vars.extend(k.mono.iter().map(|(v, _)| v));
            vars.extend(k.exp.iter().map(|(i, _)| Var::X(i)));
        }
        vars
    }

    pub fn is_x_only(&self) -> bool {
        self.terms.keys().all(|k| k.mono.y_degree() == 0)
    }

    /// Set of y-degrees occurring across terms.
    pub fn y_degrees(&self) -> BTreeSet<u32> {
        self.terms.keys().map(|k| k.mono.y_degree()).collect()
    }

    /// Zero, or every term has y-degree exactly `d`.
    pub fn is_y_homogeneous(&self, d: u32) -> bool {
        self.terms.keys().all(|k| k.mono.y_degree() == d)
    }

    /// Groups terms by their y-monomial; each value is x-only.
    pub fn split_y(&self) -> BTreeMap<Monomial, CanonicalExpr> {
        let mut out: BTreeMap<Monomial, CanonicalExpr> = BTreeMap::new();
        for (k, c) in &self.terms {
            let (x, y) = k.mono.split_xy();
            out.entry(y).or_default().add_term(
                TermKey {
                    exp: k.exp.clone(),
                    mono: x,
                },
                c.clone(),
            );
        }
        out
    }

    /// Floating-point value at a rational point. Each term is evaluated as
    /// coefficient times monomial, then multiplied by its exponential.
    pub fn eval_at<F: Float + FromPrimitive>(
        &self,
        point: &BTreeMap<Var, Rational>,
    ) -> Result<F, ExprError> {
        let value = |v: Var| -> Result<F, ExprError> {
            let q = point.get(&v).ok_or(ExprError::MissingAssignment(v))?;
            Ok(to_float(q))
        };
        let mut acc = F::zero();
        for (k, c) in &self.terms {
            let mut t: F = to_float(c);
            for (v, e) in k.mono.iter() {
                t = t * value(v)?.powi(e as i32);
            }
            let mut arg = F::zero();
            for (i, a) in k.exp.iter() {
                arg = arg + to_float::<F>(a) * value(Var::X(i))?;
            }
            acc = acc + t * arg.exp();
        }
        Ok(acc)
    }

    /// Value at `point` with coordinate `v` shifted by `h`.
    pub fn eval_shifted<F: Float + FromPrimitive>(
        &self,
        point: &BTreeMap<Var, Rational>,
        v: Var,
        h: &Rational,
    ) -> Result<F, ExprError> {
        let mut p = point.clone();
        let cur = p.get(&v).cloned().ok_or(ExprError::MissingAssignment(v))?;
        p.insert(v, cur + h);
        self.eval_at(&p)
    }
}

fn to_float<F: Float + FromPrimitive>(q: &Rational) -> F {
    F::from_f64(q.to_f64().unwrap_or(f64::NAN)).unwrap_or_else(F::nan)
}

impl Add for &CanonicalExpr {
    type Output = CanonicalExpr;

    fn add(self, rhs: &CanonicalExpr) -> CanonicalExpr {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }
}

impl Sub for &CanonicalExpr {
    type Output = CanonicalExpr;

    fn sub(self, rhs: &CanonicalExpr) -> CanonicalExpr {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(k.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &CanonicalExpr {
    type Output = CanonicalExpr;

    fn mul(self, rhs: &CanonicalExpr) -> CanonicalExpr {
        let mut out = CanonicalExpr::zero();
        for (ka, ca) in &self.terms {
            for (kb, cb) in &rhs.terms {
                out.add_term(
                    TermKey {
                        exp: ka.exp.add(&kb.exp),
                        mono: ka.mono.mul(&kb.mono),
                    },
                    ca * cb,
                );
            }
        }
        out
    }
}

impl Neg for &CanonicalExpr {
    type Output = CanonicalExpr;

    fn neg(self) -> CanonicalExpr {
        CanonicalExpr {
            terms: self.terms.iter().map(|(k, c)| (k.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for CanonicalExpr {
            type Output = CanonicalExpr;
            fn $m(self, rhs: CanonicalExpr) -> CanonicalExpr {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&CanonicalExpr> for CanonicalExpr {
            type Output = CanonicalExpr;
            fn $m(self, rhs: &CanonicalExpr) -> CanonicalExpr {
                (&self).$m(rhs)
            }
        }
        impl $tr<CanonicalExpr> for &CanonicalExpr {
            type Output = CanonicalExpr;
            fn $m(self, rhs: CanonicalExpr) -> CanonicalExpr {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for CanonicalExpr {
    type Output = CanonicalExpr;

    fn neg(self) -> CanonicalExpr {
        -&self
    }
}

impl std::iter::Sum for CanonicalExpr {
    fn sum<I: Iterator<Item = CanonicalExpr>>(iter: I) -> Self {
        let mut acc = CanonicalExpr::zero();
        for e in iter {
            for (k, c) in e.terms {
                acc.add_term(k, c);
            }
        }
        acc
    }
}

impl From<Rational> for CanonicalExpr {
    fn from(c: Rational) -> Self {
        CanonicalExpr::constant(c)
    }
}

impl fmt::Display for CanonicalExpr {
    /// Prints in the input grammar; parsing the output and canonicalizing
    /// gives back the same term map.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (n, (k, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (n, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = c.abs();
            let mut factors: Vec<String> = Vec::new();
            if !k.mono.is_one() {
                factors.push(k.mono.to_string());
            }
            if !k.exp.is_zero() {
                factors.push(format!("exp({})", k.exp));
            }
            if factors.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                f.write_str(&factors.join("*"))?;
            } else {
                write!(f, "{a}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}
