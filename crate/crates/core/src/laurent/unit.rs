use std::fmt;
use std::ops::Neg;

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use super::{LaurentPoly, Monomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn from_i64(v: i64) -> Option<Sign> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn to_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn is_plus(self) -> bool {
        self == Sign::Plus
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl std::ops::Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.is_plus() { "+" } else { "-" })
    }
}

/// A unit `±m` of the Laurent ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UnitFactor {
    pub sign: Sign,
    pub monomial: Monomial,
}

impl UnitFactor {
    pub fn trivial() -> Self {
        Self {
            sign: Sign::Plus,
            monomial: Monomial::one(),
        }
    }

    pub fn inverse(&self) -> Self {
        Self {
            sign: self.sign,
            monomial: self.monomial.inv(),
        }
    }

    pub fn apply(&self, p: &LaurentPoly) -> LaurentPoly {
        let q = p.mul_monomial(&self.monomial);
        if self.sign.is_plus() {
            q
        } else {
            -q
        }
    }
}

impl fmt::Display for UnitFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.sign, self.monomial)
    }
}

/// The unit `u` with `p = u * q`, if one exists.
///
/// The leading terms must correspond because multiplying by a monomial
/// preserves lex order, so the only candidate is read off from them.
pub fn equal_up_to_unit(p: &LaurentPoly, q: &LaurentPoly) -> Option<UnitFactor> {
    match (p.leading_term(), q.leading_term()) {
        (None, None) => Some(UnitFactor::trivial()),
        (Some((mp, cp)), Some((mq, cq))) => {
            if p.num_terms() != q.num_terms() || cp.abs() != cq.abs() {
                return None;
            }
            let sign = if cp.is_negative() == cq.is_negative() {
                Sign::Plus
            } else {
                Sign::Minus
            };
            let u = UnitFactor {
                sign,
                monomial: mp.div(mq),
            };
            let lifted = u.apply(q);
            p.terms().eq(lifted.terms()).then_some(u)
        }
        _ => None,
    }
}

/// Canonical representative of the `≐`-class of `p`: every variable's minimum
/// exponent is shifted to 0 and the lex-leading coefficient is made positive.
pub fn normalize_canonical(p: &LaurentPoly) -> LaurentPoly {
    if p.is_zero() {
        return p.clone();
    }
    let shift = Monomial::from_exponents(
        (1..=p.arity()).filter_map(|v| p.exponent_range(v).map(|(lo, _)| (v, -lo))),
    );
    let q = p.mul_monomial(&shift);
    match q.leading_term() {
        Some((_, c)) if c.is_negative() => -q,
        _ => q,
    }
}
