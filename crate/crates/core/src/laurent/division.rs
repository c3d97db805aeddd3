use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{LaurentError, LaurentPoly, Monomial};

/// Exact quotient `p / d`.
///
/// `d` must be a nonzero integer constant or `c * (m1 - m2)` for distinct
/// monomials `m1`, `m2`. Use [`divide_exact_factors`] for products of such
/// factors.
pub fn divide_exact(p: &LaurentPoly, d: &LaurentPoly) -> Result<LaurentPoly, LaurentError> {
    if d.is_zero() {
        return Err(LaurentError::DivisionByZero);
    }
    let arity = p.arity().max(d.arity());
    let p = p.with_arity(arity).expect("arity only grows");
    if let Some(c) = d.as_constant() {
        return divide_by_integer(&p, &c, d);
    }
    if let Some((c, m)) = d.as_term() {
        // a unit monomial times an integer
        let q = divide_by_integer(&p, c, d)?;
        return Ok(q.mul_monomial(&m.inv()));
    }
    if d.num_terms() != 2 {
        return Err(LaurentError::DivisorUnsupported(d.to_string()));
    }
    let (lo, hi) = {
        let mut it = d.terms();
        let lo = it.next().expect("two terms");
        let hi = it.next().expect("two terms");
        (lo, hi)
    };
    if hi.1 != &-lo.1 {
        return Err(LaurentError::DivisorUnsupported(d.to_string()));
    }
    // d = c * (m1 - m2) = c * m1 * (1 - x) with x = m2 / m1
    let c = hi.1.clone();
    let m1 = hi.0;
    let x = lo.0.div(m1);
    let q = divide_by_integer(&p, &c, d)?;
    let q = divide_by_one_minus(&q, &x).ok_or_else(|| LaurentError::Remainder {
        divisor: d.to_string(),
    })?;
    Ok(q.mul_monomial(&m1.inv()))
}

/// Exact quotient of `p` by the product of `factors`, dividing one factor at a time.
pub fn divide_exact_factors(
    p: &LaurentPoly,
    factors: &[LaurentPoly],
) -> Result<LaurentPoly, LaurentError> {
    factors.iter().try_fold(p.clone(), |acc, f| divide_exact(&acc, f))
}

fn divide_by_integer(
    p: &LaurentPoly,
    c: &BigInt,
    d: &LaurentPoly,
) -> Result<LaurentPoly, LaurentError> {
    if c.is_zero() {
        return Err(LaurentError::DivisionByZero);
    }
    if c.is_one() {
        return Ok(p.clone());
    }
    let mut out = LaurentPoly::zero(p.arity());
    for (m, a) in p.terms() {
        let (q, r) = a.div_rem(c);
        if !r.is_zero() {
            return Err(LaurentError::Remainder {
                divisor: d.to_string(),
            });
        }
        out.add_term(m.clone(), q);
    }
    Ok(out)
}

/// Quotient of `p` by `1 - x` for a unit monomial `x != 1`, or `None` if it
/// does not divide.
///
/// The group ring splits over the cosets of `<x>`; within each coset `p` is a
/// univariate Laurent polynomial `P(s)` in `s = x`, which is divisible by
/// `1 - s` iff `P(1) = 0`, with quotient coefficients given by prefix sums.
fn divide_by_one_minus(p: &LaurentPoly, x: &Monomial) -> Option<LaurentPoly> {
    assert!(!x.is_one());
    let (pivot, step) = x.iter().next().expect("x is not 1");

    let mut cosets: BTreeMap<Monomial, BTreeMap<i64, BigInt>> = BTreeMap::new();
    for (m, c) in p.terms() {
        let k = m.exponent(pivot).div_euclid(step);
        let rep = m.mul(&x.pow(-k));
        *cosets.entry(rep).or_default().entry(k).or_default() += c;
    }

    let mut out = LaurentPoly::zero(p.arity());
    for (rep, coeffs) in cosets {
        let mut running = BigInt::zero();
        let mut prev: Option<i64> = None;
        for (&k, c) in &coeffs {
            // fill the gap (prev, k) with the constant running sum
            if let Some(pk) = prev {
                if !running.is_zero() {
                    for j in pk + 1..k {
                        out.add_term(rep.mul(&x.pow(j)), running.clone());
                    }
                }
            }
            running += c;
            if !running.is_zero() {
                out.add_term(rep.mul(&x.pow(k)), running.clone());
            }
            prev = Some(k);
        }
        if !running.is_zero() {
            return None;
        }
    }
    Some(out)
}
