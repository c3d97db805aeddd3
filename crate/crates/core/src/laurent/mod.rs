//! Exact arithmetic in the Laurent polynomial ring `Z[t_1^{±1}, ..., t_r^{±1}]`.

mod division;
mod monomial;
mod parse;
mod substitute;
mod unit;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use division::{divide_exact, divide_exact_factors};
pub use monomial::Monomial;
pub use parse::parse_poly;
pub use substitute::{substitute, Substitution};
pub use unit::{equal_up_to_unit, normalize_canonical, Sign, UnitFactor};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LaurentError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("variable t{var} exceeds arity {arity}")]
    VariableOutOfRange { var: usize, arity: usize },
    #[error("negative exponent at position {pos} applied to a non-monomial")]
    NegativePower { pos: usize },
    #[error("exponent at position {pos} is too large")]
    ExponentTooLarge { pos: usize },
    #[error("polynomial is not divisible by {divisor}")]
    Remainder { divisor: String },
    #[error("unsupported divisor {0}: expected an integer or a difference of two monomials")]
    DivisorUnsupported(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("substitution image {0} is not a signed monomial")]
    NotSignedMonomial(String),
    #[error("arity mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },
}

/// An element of `Z[t_1^{±1}, ..., t_arity^{±1}]`.
///
/// The term map never holds a zero coefficient and every variable index is at
/// most `arity`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LaurentPoly {
    arity: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl LaurentPoly {
    pub fn zero(arity: usize) -> Self {
        Self {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(arity: usize) -> Self {
        Self::constant(1, arity)
    }

    pub fn constant<C: Into<BigInt>>(c: C, arity: usize) -> Self {
        Self::term(c, Monomial::one(), arity)
    }

    /// `c * m`; panics if `m` mentions a variable beyond `arity`.
    pub fn term<C: Into<BigInt>>(c: C, m: Monomial, arity: usize) -> Self {
        assert!(m.max_var() <= arity, "monomial {m} exceeds arity {arity}");
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { arity, terms }
    }

    pub fn var(var: usize, arity: usize) -> Self {
        Self::term(1, Monomial::var(var), arity)
    }

    pub fn from_terms<I, C>(arity: usize, iter: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero(arity);
        for (m, c) in iter {
            assert!(m.max_var() <= arity, "monomial {m} exceeds arity {arity}");
            p.add_term(m, c.into());
        }
        p
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Same polynomial viewed in a ring with `arity` variables.
    pub fn with_arity(&self, arity: usize) -> Result<Self, LaurentError> {
        let used = self.max_var();
        if used > arity {
            return Err(LaurentError::VariableOutOfRange { var: used, arity });
        }
        Ok(Self {
            arity,
            terms: self.terms.clone(),
        })
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Lex-greatest term.
    pub fn leading_term(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn trailing_term(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next()
    }

    /// Largest variable index actually used.
    pub fn max_var(&self) -> usize {
        self.terms.keys().map(Monomial::max_var).max().unwrap_or(0)
    }

    /// Variables that appear with a nonzero exponent.
    pub fn variables(&self) -> Vec<usize> {
        let mut vars: Vec<usize> = self
            .terms
            .keys()
            .flat_map(|m| m.iter().map(|(v, _)| v))
            .collect();
        vars.sort_unstable();
        vars.dedup();
        vars
    }

    /// `(min, max)` exponent of `var` over all terms.
    pub fn exponent_range(&self, var: usize) -> Option<(i64, i64)> {
        let mut it = self.terms.keys().map(|m| m.exponent(var));
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), e| (lo.min(e), hi.max(e))))
    }

    /// If this is `c * m`, return `(c, m)`.
    pub fn as_term(&self) -> Option<(&BigInt, &Monomial)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(m, c)| (c, m))
        } else {
            None
        }
    }

    /// If this is a constant (possibly zero), return it.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => self
                .terms
                .iter()
                .next()
                .and_then(|(m, c)| m.is_one().then(|| c.clone())),
            _ => None,
        }
    }

    /// Sum of all coefficients, i.e. the value at `t_i = 1`.
    pub fn coefficient_sum(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        assert!(m.max_var() <= self.arity);
        Self {
            arity: self.arity,
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
        }
    }

    pub fn mul_scalar(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.arity);
        }
        Self {
            arity: self.arity,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.arity);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Whether every coefficient is divisible by `d`.
    pub fn coefficients_divisible_by(&self, d: &BigInt) -> bool {
        self.terms.values().all(|c| (c % d).is_zero())
    }

    fn binop_arity(&self, other: &Self) -> usize {
        self.arity.max(other.arity)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly {
            arity: self.binop_arity(rhs),
            terms: self.terms.clone(),
        };
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly {
            arity: self.binop_arity(rhs),
            terms: self.terms.clone(),
        };
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.binop_arity(rhs));
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            arity: self.arity,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $f:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $f(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $f(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$f(rhs)
            }
        }
        impl $tr<LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $f(self, rhs: LaurentPoly) -> LaurentPoly {
                self.$f(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

/// Canonical-order expansion, lex-greatest term first, e.g. `t1*t2 - t1 - t2 + 1`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            if m.is_one() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{a}*{m}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, r: usize) -> LaurentPoly {
        parse_poly(s, r).unwrap()
    }

    #[test]
    fn printing_is_canonical_order() {
        assert_eq!(p("(t1-1)*(t2-1)", 2).to_string(), "t1*t2 - t1 - t2 + 1");
        assert_eq!(p("-3*t1^-1 + 2", 1).to_string(), "2 - 3*t1^-1");
        assert_eq!(LaurentPoly::zero(3).to_string(), "0");
    }

    #[test]
    fn zero_annihilates() {
        let a = p("t1^2 - 7*t2*t3^-1", 3);
        assert!((&a * &LaurentPoly::zero(3)).is_zero());
        assert!((&a - &a).is_zero());
    }

    #[test]
    fn pow_matches_repeated_product() {
        let a = p("t1 - t2 + 2", 2);
        assert_eq!(a.pow(3), &(&a * &a) * &a);
        assert_eq!(a.pow(0), LaurentPoly::one(2));
    }

    #[test]
    fn exponent_range() {
        let a = p("t1^-2*t2 + t1^3", 2);
        assert_eq!(a.exponent_range(1), Some((-2, 3)));
        assert_eq!(a.exponent_range(2), Some((0, 1)));
        assert_eq!(LaurentPoly::zero(2).exponent_range(1), None);
    }
}
