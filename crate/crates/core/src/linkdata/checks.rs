use std::collections::VecDeque;

use crate::laurent::{
    divide_exact, equal_up_to_unit, substitute, LaurentPoly, Monomial, Sign, Substitution,
};

use super::{specialize_to_one, LinkRecord, Verdict, Witness};

pub const DUALITY_ID: &str = "duality";
pub const TORRES_ID: &str = "torres";
pub const LINKING_EVEN_ID: &str = "linking_even";
pub const LINKING_ODD_CYCLE_ID: &str = "linking_odd_cycle";
pub const INVERTIBILITY_NOTE_ID: &str = "invertibility_note";
pub const EPS_SYMMETRY_ID: &str = "eps_symmetry";

/// Every pairwise linking number vanishes. Vacuously true for knots.
pub fn is_algebraically_split(rec: &LinkRecord) -> bool {
    rec.linking_matrix().iter().flatten().all(|&lk| lk == 0)
}

/// Duality: `Δ(t) = (-1)^r t^a Δ(t^{-1})` with `a_i ≡ 1 + Σ_{j≠i} lk(K_i, K_j)`
/// (mod 2) for links, and `Δ(t) = t^a Δ(t^{-1})` with `a` even for knots.
///
/// The unit relating `Δ(t)` and `Δ(t^{-1})` is unique when `Δ ≠ 0`, so the
/// exponent search reduces to reading it off and checking sign and parity.
pub fn check_duality(rec: &LinkRecord) -> Verdict {
    let r = rec.components();
    let delta = rec.alexander();
    if delta.arity() != r {
        return Verdict::data_error(
            DUALITY_ID,
            format!("polynomial arity {} does not match {r} components", delta.arity()),
        );
    }
    if delta.is_zero() {
        return Verdict::pass(DUALITY_ID).with_message("vacuous: Alexander polynomial is zero");
    }
    let inverted = substitute(delta, &Substitution::inversion(r)).expect("inversion is total");
    let Some(unit) = equal_up_to_unit(delta, &inverted) else {
        return Verdict::fail(
            DUALITY_ID,
            "Δ(t) and Δ(t^-1) are not associated",
            Witness::UnitMismatch {
                left: delta.to_string(),
                right: inverted.to_string(),
            },
        );
    };
    let exponents = unit.monomial.dense(r);
    let witness = Witness::DualityExponents {
        sign: unit.sign,
        exponents: exponents.clone(),
    };
    if r == 1 {
        return if unit.sign.is_plus() && exponents[0] % 2 == 0 {
            Verdict::pass(DUALITY_ID).with_witness(witness)
        } else {
            Verdict::fail(DUALITY_ID, "knot polynomial needs a positive even-degree unit", witness)
        };
    }
    let expected_sign = if r % 2 == 0 { Sign::Plus } else { Sign::Minus };
    if unit.sign != expected_sign {
        return Verdict::fail(DUALITY_ID, format!("unit sign must be {expected_sign}"), witness);
    }
    for (k, &a) in exponents.iter().enumerate() {
        let i = k + 1;
        let lk_sum: i64 = (1..=r).filter(|&j| j != i).map(|j| rec.linking_number(i, j)).sum();
        if (a - 1 - lk_sum).rem_euclid(2) != 0 {
            return Verdict::fail(
                DUALITY_ID,
                format!("exponent a{i} = {a} has the wrong parity"),
                witness,
            );
        }
    }
    Verdict::pass(DUALITY_ID).with_witness(witness)
}

/// Torres condition for deleting component `deleted`:
/// `Δ_L(.., t_k = 1, ..) ≐ (∏_{i≠k} t_i^{ℓ_i} - 1) Δ_{L'}` for `r ≥ 3` and
/// `Δ_L(t_j, 1) ≐ (t_j^ℓ - 1)/(t_j - 1) Δ_{K_j}(t_j)` for `r = 2`, where `ℓ_i`
/// is the linking number with the deleted component.
///
/// The sublink polynomial is only required when the linking factor is nonzero.
pub fn check_torres(rec: &LinkRecord, deleted: usize) -> Verdict {
    let id = format!("{TORRES_ID}[-{deleted}]");
    let r = rec.components();
    if !(1..=r).contains(&deleted) {
        return Verdict::data_error(id, format!("no component {deleted}"));
    }
    if r == 1 {
        return Verdict::not_applicable(id, "a knot has no proper sublinks");
    }
    let delta = rec.alexander();
    if delta.is_zero() {
        return Verdict::pass(id).with_message("vacuous: Alexander polynomial is zero");
    }
    let left = specialize_to_one(delta, [deleted]);
    let others: Vec<usize> = (1..=r).filter(|&i| i != deleted).collect();

    let linking_factor = if r == 2 {
        let j = others[0];
        let l = rec.linking_number(j, deleted);
        if l == 0 {
            LaurentPoly::zero(r)
        } else {
            let num = &LaurentPoly::term(1, Monomial::var_pow(j, l), r) - &LaurentPoly::one(r);
            let den = &LaurentPoly::var(j, r) - &LaurentPoly::one(r);
            divide_exact(&num, &den).expect("t^l - 1 is divisible by t - 1")
        }
    } else {
        let m = Monomial::from_exponents(others.iter().map(|&i| (i, rec.linking_number(i, deleted))));
        &LaurentPoly::term(1, m, r) - &LaurentPoly::one(r)
    };

    let right = if linking_factor.is_zero() {
        LaurentPoly::zero(r)
    } else {
        let sub = if r == 2 {
            rec.knot_polys().map(|k| k[others[0] - 1].clone())
        } else {
            let set = crate::index_set::IndexSet::from_indices(others.iter().copied());
            rec.sublink(set).cloned()
        };
        match sub {
            Some(s) => &linking_factor * &s,
            None => {
                return Verdict::data_error(
                    id,
                    format!("polynomial of the sublink without component {deleted} is required"),
                )
            }
        }
    };

    if equal_up_to_unit(&left, &right).is_some() {
        Verdict::pass(id)
    } else {
        Verdict::fail(
            id,
            "specialized polynomial disagrees with the Torres identity",
            Witness::Torres {
                deleted,
                left: left.to_string(),
                right: right.to_string(),
            },
        )
    }
}

/// Screens that depend only on the linking matrix.
///
/// A 2-component link with nonzero even linking number is not
/// component-preservingly amphicheiral, and neither is a link containing an
/// odd cycle of components with all consecutive linking numbers nonzero. For
/// a 2-component link with nonzero linking number an informational note
/// records that only (−,−)-invertibility is possible.
pub fn linking_screen(rec: &LinkRecord) -> Vec<Verdict> {
    let r = rec.components();
    let mut out = Vec::new();

    if r == 2 {
        let lk = rec.linking_number(1, 2);
        if lk != 0 && lk % 2 == 0 {
            out.push(Verdict::fail(
                LINKING_EVEN_ID,
                "nonzero even linking number: not component-preservingly amphicheiral",
                Witness::LinkingNumber {
                    components: [1, 2],
                    value: lk,
                },
            ));
        } else {
            out.push(Verdict::pass(LINKING_EVEN_ID));
        }
    } else {
        out.push(Verdict::not_applicable(LINKING_EVEN_ID, "requires exactly 2 components"));
    }

    match odd_linking_cycle(rec) {
        Some(cycle) => {
            let n = cycle.len();
            let linking_numbers = (0..n)
                .map(|k| rec.linking_number(cycle[k], cycle[(k + 1) % n]))
                .collect();
            out.push(Verdict::fail(
                LINKING_ODD_CYCLE_ID,
                "odd cycle with nonzero linking numbers: not component-preservingly amphicheiral",
                Witness::LinkingCycle {
                    components: cycle,
                    linking_numbers,
                },
            ));
        }
        None => out.push(Verdict::pass(LINKING_ODD_CYCLE_ID)),
    }

    if r == 2 && rec.linking_number(1, 2) != 0 {
        out.push(
            Verdict::pass(INVERTIBILITY_NOTE_ID)
                .with_message("nonzero linking number: if invertible, only (-,-)-invertible"),
        );
    }
    out
}

/// An odd cycle in the graph whose edges join components with nonzero
/// linking number, found by a BFS 2-colouring.
fn odd_linking_cycle(rec: &LinkRecord) -> Option<Vec<usize>> {
    let r = rec.components();
    let adj = |i: usize| (1..=r).filter(move |&j| j != i && rec.linking_number(i, j) != 0);
    let mut depth: Vec<Option<usize>> = vec![None; r + 1];
    let mut parent = vec![0usize; r + 1];
    for root in 1..=r {
        if depth[root].is_some() {
            continue;
        }
        depth[root] = Some(0);
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            let du = depth[u].expect("queued vertices have depth");
            for v in adj(u) {
                match depth[v] {
                    None => {
                        depth[v] = Some(du + 1);
                        parent[v] = u;
                        queue.push_back(v);
                    }
                    Some(dv) if dv == du => {
                        // same BFS layer: climb to the common ancestor
                        let (mut a, mut b) = (u, v);
                        let mut left = vec![a];
                        let mut right = vec![b];
                        while a != b {
                            a = parent[a];
                            b = parent[b];
                            left.push(a);
                            right.push(b);
                        }
                        right.pop();
                        right.reverse();
                        left.extend(right);
                        // left = u .. lca .. v, closing edge v-u
                        return Some(left);
                    }
                    Some(_) => {}
                }
            }
        }
    }
    None
}

/// `Δ(t) ≐ Δ(t_1^{ε_1}, ..., t_r^{ε_r})`, necessary for `(ε)`-amphicheirality
/// and for `(ε)`-invertibility.
pub fn check_eps_symmetry(rec: &LinkRecord, eps: &[Sign]) -> Verdict {
    let label: String = eps.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(",");
    let id = format!("{EPS_SYMMETRY_ID}[{label}]");
    let r = rec.components();
    if eps.len() != r {
        return Verdict::not_applicable(id, format!("sign vector has {} entries, record has {r} components", eps.len()));
    }
    let delta = rec.alexander();
    if delta.is_zero() {
        return Verdict::pass(id).with_message("vacuous: Alexander polynomial is zero");
    }
    let sigma = eps
        .iter()
        .enumerate()
        .fold(Substitution::new(r), |s, (k, e)| s.set_power(k + 1, k + 1, e.to_i64()));
    let image = substitute(delta, &sigma).expect("sign substitution is total");
    if equal_up_to_unit(delta, &image).is_some() {
        Verdict::pass(id)
    } else {
        Verdict::fail(
            id,
            format!("not ({label})-amphicheiral and not ({label})-invertible"),
            Witness::UnitMismatch {
                left: delta.to_string(),
                right: image.to_string(),
            },
        )
    }
}
