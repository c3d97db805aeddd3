use std::collections::{BTreeMap, BTreeSet};

use num_traits::Signed;

use crate::index_set::IndexSet;
use crate::laurent::{
    divide_exact_factors, equal_up_to_unit, substitute, LaurentError, LaurentPoly, Sign,
    Substitution,
};
use crate::linkdata::{is_algebraically_split, LinkRecord};

use super::ObstructionError;

/// The symmetric factors `f_J` of an algebraically split link's sublinks,
/// keyed by index set `J` with `|J| ≥ 2`, together with the component knot
/// polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricFactorFamily {
    r: usize,
    factors: BTreeMap<IndexSet, LaurentPoly>,
    missing: BTreeSet<IndexSet>,
    knot_polys: Option<Vec<LaurentPoly>>,
    knot_polys_assumed: bool,
}

impl SymmetricFactorFamily {
    /// An empty family for an `r`-component link; every `f_J` starts missing.
    pub fn new(r: usize) -> Self {
        let missing = IndexSet::all_subsets(r)
            .into_iter()
            .filter(|j| j.len() >= 2)
            .collect();
        Self {
            r,
            factors: BTreeMap::new(),
            missing,
            knot_polys: None,
            knot_polys_assumed: false,
        }
    }

    /// Store `f_J`. It must live in the variables of `J` and satisfy
    /// `f_J(t^{-1}) = f_J(t)` exactly.
    pub fn insert(&mut self, set: IndexSet, f: LaurentPoly) -> Result<(), ObstructionError> {
        if set.len() < 2 || !set.is_subset(IndexSet::full(self.r)) {
            return Err(ObstructionError::InvalidSet(set));
        }
        let f = f
            .with_arity(self.r)
            .map_err(|e| ObstructionError::Laurent(set, e))?;
        if f.variables().into_iter().any(|v| !set.contains(v)) {
            return Err(ObstructionError::InvalidSet(set));
        }
        if !is_symmetric(&f) {
            return Err(ObstructionError::NotSymmetric(set));
        }
        self.missing.remove(&set);
        self.factors.insert(set, f);
        Ok(())
    }

    pub fn with_factor(mut self, set: IndexSet, f: LaurentPoly) -> Result<Self, ObstructionError> {
        self.insert(set, f)?;
        Ok(self)
    }

    /// Component knot polynomials; entry `i` is a polynomial in `t_{i+1}`.
    pub fn with_knot_polys(mut self, polys: Vec<LaurentPoly>) -> Self {
        assert_eq!(polys.len(), self.r);
        self.knot_polys = Some(polys);
        self.knot_polys_assumed = false;
        self
    }

    pub fn components(&self) -> usize {
        self.r
    }

    pub fn factor(&self, set: IndexSet) -> Option<&LaurentPoly> {
        self.factors.get(&set)
    }

    pub fn factors(&self) -> &BTreeMap<IndexSet, LaurentPoly> {
        &self.factors
    }

    /// Index sets with `|J| ≥ 2` whose factor is unknown.
    pub fn missing(&self) -> &BTreeSet<IndexSet> {
        &self.missing
    }

    pub fn is_complete(&self) -> bool {
        self.missing.is_empty()
    }

    pub fn knot_poly(&self, i: usize) -> Option<&LaurentPoly> {
        self.knot_polys.as_ref().and_then(|v| v.get(i - 1))
    }

    /// Whether the knot polynomials were defaulted to 1 rather than supplied.
    pub fn knot_polys_assumed(&self) -> bool {
        self.knot_polys_assumed
    }
}

/// `f(t^{-1}) = f(t)` exactly.
pub fn is_symmetric(f: &LaurentPoly) -> bool {
    let inv = substitute(f, &Substitution::inversion(f.arity())).expect("inversion is total");
    &inv == f
}

/// Recover the symmetric factor `f_J` from `Δ_{L_J} ≐ ∏_{i∈J}(t_i - 1) f_J`.
///
/// The quotient is shifted by the unique monomial making it invariant under
/// `t ↦ t^{-1}`, then signed so that its lex-leading coefficient is positive.
pub fn extract_symmetric_factor(
    delta: &LaurentPoly,
    set: IndexSet,
) -> Result<LaurentPoly, ObstructionError> {
    if set.len() < 2 {
        return Err(ObstructionError::InvalidSet(set));
    }
    if delta.is_zero() {
        return Ok(delta.clone());
    }
    let arity = delta.arity().max(set.max().unwrap_or(0));
    let delta = delta.with_arity(arity).expect("arity only grows");
    let one = LaurentPoly::one(arity);
    let divisors: Vec<LaurentPoly> = set.iter().map(|i| &LaurentPoly::var(i, arity) - &one).collect();
    let q = match divide_exact_factors(&delta, &divisors) {
        Ok(q) => q,
        Err(LaurentError::Remainder { .. }) => return Err(ObstructionError::NotDivisible(set)),
        Err(e) => return Err(ObstructionError::Laurent(set, e)),
    };
    let inv = substitute(&q, &Substitution::inversion(arity)).expect("inversion is total");
    // q = u * q(t^{-1}); a symmetric n*q needs u = +n^{-2}
    let unit = equal_up_to_unit(&q, &inv).ok_or(ObstructionError::NoSymmetricRep(set))?;
    if unit.sign != Sign::Plus {
        return Err(ObstructionError::NoSymmetricRep(set));
    }
    let shift = unit
        .monomial
        .inv()
        .sqrt()
        .ok_or(ObstructionError::NoSymmetricRep(set))?;
    let f = q.mul_monomial(&shift);
    debug_assert!(is_symmetric(&f));
    Ok(match f.leading_term() {
        Some((_, c)) if c.is_negative() => -f,
        _ => f,
    })
}

/// Extract every `f_J` the record supplies data for. Sets without a sublink
/// polynomial stay missing; absent knot polynomials default to 1.
pub fn build_family(rec: &LinkRecord) -> Result<SymmetricFactorFamily, ObstructionError> {
    if !is_algebraically_split(rec) {
        return Err(ObstructionError::NotAlgebraicallySplit);
    }
    let r = rec.components();
    let mut family = SymmetricFactorFamily::new(r);
    for set in IndexSet::all_subsets(r).into_iter().filter(|j| j.len() >= 2) {
        if let Some(delta) = rec.sublink(set) {
            let f = extract_symmetric_factor(delta, set)?;
            family.insert(set, f)?;
        }
    }
    match rec.knot_polys() {
        Some(k) => family = family.with_knot_polys(k.to_vec()),
        None => {
            family.knot_polys = Some(vec![LaurentPoly::one(r); r]);
            family.knot_polys_assumed = true;
        }
    }
    Ok(family)
}
