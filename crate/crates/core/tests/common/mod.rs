//! Shared helpers for integration tests: random symmetric families and a
//! brute-force evaluator for the surgery sums that shares no code with the
//! library's own summation.

#![allow(dead_code)]

use std::collections::BTreeMap;

use amphicheck::laurent::{LaurentPoly, Monomial, Sign};
use amphicheck::obstruction::SymmetricFactorFamily;
use amphicheck::IndexSet;
use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::Rng;

/// A polynomial as a map from dense exponent vectors to coefficients.
pub type Dense = BTreeMap<Vec<i64>, BigInt>;

pub fn to_dense(p: &LaurentPoly, r: usize) -> Dense {
    p.terms().map(|(m, c)| (m.dense(r), c.clone())).collect()
}

/// Random `f` in the variables `vars` with `f(t^{-1}) = f(t)`: a sum of
/// `c (m + m^{-1})` with exponents in [-3, 3] and `c` in [-5, 5].
pub fn random_symmetric(rng: &mut StdRng, vars: &[usize], r: usize) -> LaurentPoly {
    if rng.gen_bool(0.35) {
        return LaurentPoly::zero(r);
    }
    let mut f = LaurentPoly::zero(r);
    for _ in 0..rng.gen_range(1..=3) {
        let c: i64 = rng.gen_range(-5..=5);
        let m = Monomial::from_exponents(vars.iter().map(|&v| (v, rng.gen_range(-3..=3))));
        let pair = &LaurentPoly::term(c, m.clone(), r) + &LaurentPoly::term(c, m.inv(), r);
        f = &f + &pair;
    }
    f
}

/// A complete family for `r` components with random symmetric factors.
pub fn random_family(rng: &mut StdRng, r: usize) -> SymmetricFactorFamily {
    let mut fam = SymmetricFactorFamily::new(r);
    for set in IndexSet::all_subsets(r).into_iter().filter(|s| s.len() >= 2) {
        let f = random_symmetric(rng, &set.to_vec(), r);
        fam.insert(set, f).expect("random factor is symmetric");
    }
    fam.with_knot_polys(vec![LaurentPoly::one(r); r])
}

/// `(S_even, S_odd)` straight from the definitions: `k_J` counts the
/// `i ∈ J \ I` with `u_i = +1`, `η_J = (-1)^{k_J}`, and `F_J(I)` drops the
/// exponents of every variable in `J \ I`.
pub fn brute_force_sums(
    family: &SymmetricFactorFamily,
    subset: &[usize],
    u: &BTreeMap<usize, Sign>,
) -> (Dense, Dense) {
    let r = family.components();
    let mut even = Dense::new();
    let mut odd = Dense::new();
    for mask in 0u64..(1 << r) {
        let j: Vec<usize> = (1..=r).filter(|i| mask >> (i - 1) & 1 == 1).collect();
        if j.len() < 2 || !subset.iter().all(|i| j.contains(i)) {
            continue;
        }
        let outside: Vec<usize> = j.iter().copied().filter(|i| !subset.contains(i)).collect();
        let k = outside.iter().filter(|i| u[*i] == Sign::Plus).count();
        let eta: i64 = if k % 2 == 0 { 1 } else { -1 };
        let f = family
            .factor(IndexSet::from_indices(j.iter().copied()))
            .expect("complete family");
        let target = if outside.len() % 2 == 0 { &mut even } else { &mut odd };
        for (m, c) in f.terms() {
            let mut e = m.dense(r);
            for &i in &outside {
                e[i - 1] = 0;
            }
            *target.entry(e).or_default() += c * eta;
        }
    }
    even.retain(|_, c| *c != BigInt::from(0));
    odd.retain(|_, c| *c != BigInt::from(0));
    (even, odd)
}

/// Every `u` for the components outside `subset`.
pub fn all_u(r: usize, subset: &[usize]) -> Vec<BTreeMap<usize, Sign>> {
    let outside: Vec<usize> = (1..=r).filter(|i| !subset.contains(i)).collect();
    (0u64..1 << outside.len())
        .map(|bits| {
            outside
                .iter()
                .enumerate()
                .map(|(k, &i)| (i, if bits >> k & 1 == 1 { Sign::Minus } else { Sign::Plus }))
                .collect()
        })
        .collect()
}

/// Nonempty subsets of `{1..r}` as sorted vectors.
pub fn nonempty_subsets(r: usize) -> Vec<Vec<usize>> {
    (1u64..1 << r)
        .map(|mask| (1..=r).filter(|i| mask >> (i - 1) & 1 == 1).collect())
        .collect()
}
