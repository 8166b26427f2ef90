use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use super::Var;
use crate::Rational;

/// Power product of coordinates. Zero exponents are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial(BTreeMap<Var, u32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(v: Var) -> Self {
        Monomial::power(v, 1)
    }

    pub fn power(v: Var, e: u32) -> Self {
        let mut m = BTreeMap::new();
        if e > 0 {
            m.insert(v, e);
        }
        Monomial(m)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0.get(&v).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Var, u32)> + '_ {
        self.0.iter().map(|(v, e)| (*v, *e))
    }

    pub fn degree(&self) -> u32 {
        self.0.values().sum()
    }

    pub fn y_degree(&self) -> u32 {
        self.iter().filter(|(v, _)| !v.is_x()).map(|(_, e)| e).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut m = self.0.clone();
        for (v, e) in other.iter() {
            *m.entry(v).or_insert(0) += e;
        }
        Monomial(m)
    }

    /// Splits into the x-only and y-only factors.
    pub fn split_xy(&self) -> (Monomial, Monomial) {
        let (x, y): (BTreeMap<_, _>, BTreeMap<_, _>) = self.0.iter().partition(|(v, _)| v.is_x());
        (Monomial(x), Monomial(y))
    }

    /// `∂/∂v` of the monomial as `(multiplicity, monomial)`, or `None` when
    /// `v` does not occur.
    pub fn diff(&self, v: Var) -> Option<(u32, Monomial)> {
        let e = self.exponent(v);
        if e == 0 {
            return None;
        }
        let mut m = self.0.clone();
        if e == 1 {
            m.remove(&v);
        } else {
            m.insert(v, e - 1);
        }
        Some((e, Monomial(m)))
    }
}

impl Ord for Monomial {
    /// Graded lexicographic: total degree first, then exponents compared in
    /// variable order `x1 < x2 < .. < y1 < ..`.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let mut a = self.0.iter().peekable();
            let mut b = other.0.iter().peekable();
            loop {
                match (a.peek(), b.peek()) {
                    (None, None) => return Ordering::Equal,
                    (Some(_), None) => return Ordering::Greater,
                    (None, Some(_)) => return Ordering::Less,
                    (Some((va, ea)), Some((vb, eb))) => match va.cmp(vb) {
                        Ordering::Less => return Ordering::Greater,
                        Ordering::Greater => return Ordering::Less,
                        Ordering::Equal => {
                            if ea != eb {
                                return ea.cmp(eb);
                            }
                            a.next();
                            b.next();
                        }
                    },
                }
            }
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (v, e) in self.iter() {
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Linear form `Σ a_i x^i` with rational coefficients and no constant term.
/// Keys are base-variable indices; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinForm(BTreeMap<u32, Rational>);

impl LinForm {
    pub fn zero() -> Self {
        LinForm::default()
    }

    pub fn single(index: u32, coefficient: Rational) -> Self {
        let mut l = LinForm::zero();
        l.add_coefficient(index, coefficient);
        l
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coefficient(&self, index: u32) -> Rational {
        self.0.get(&index).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, &Rational)> + '_ {
        self.0.iter().map(|(i, c)| (*i, c))
    }

    pub fn add_coefficient(&mut self, index: u32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.0.entry(index).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.0.remove(&index);
        }
    }

    pub fn add(&self, other: &LinForm) -> LinForm {
        let mut l = self.clone();
        for (i, c) in other.iter() {
            l.add_coefficient(i, c.clone());
        }
        l
    }

    pub fn neg(&self) -> LinForm {
        LinForm(self.0.iter().map(|(i, c)| (*i, -c)).collect())
    }

    pub fn scale(&self, k: &Rational) -> LinForm {
        if k.is_zero() {
            return LinForm::zero();
        }
        LinForm(self.0.iter().map(|(i, c)| (*i, c * k)).collect())
    }
}

impl fmt::Display for LinForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (n, (i, c)) in self.iter().enumerate() {
            let neg = c.is_negative();
            match (n, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = c.abs();
            if a.is_one() {
                write!(f, "x{i}")?;
            } else {
                write!(f, "{a}*x{i}")?;
            }
        }
        Ok(())
    }
}

/// Key of one term: the exponential factor, then the power product.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TermKey {
    pub exp: LinForm,
    pub mono: Monomial,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    #[test]
    fn graded_order() {
        let x1 = Monomial::var(Var::X(1));
        let x2 = Monomial::var(Var::X(2));
        let y1 = Monomial::var(Var::Y(1));
        assert!(Monomial::one() < x1);
        assert!(x2 < x1);
        assert!(y1 < x2);
        assert!(x1 < x2.mul(&x2));
    }

    #[test]
    fn linform_cancels() {
        let a = LinForm::single(1, rat(1, 2));
        let b = LinForm::single(1, rat(-1, 2));
        assert!(a.add(&b).is_zero());
        assert_eq!(LinForm::single(2, rat(1, 2)).add(&b).to_string(), "-1/2*x1 + 1/2*x2");
    }

    #[test]
    fn monomial_diff() {
        let m = Monomial::power(Var::Y(1), 2).mul(&Monomial::var(Var::X(3)));
        let (k, d) = m.diff(Var::Y(1)).unwrap();
        assert_eq!(k, 2);
        assert_eq!(d.to_string(), "x3*y1");
        assert!(m.diff(Var::X(1)).is_none());
    }
}
