use std::collections::BTreeMap;

use crate::index_set::IndexSet;
use crate::laurent::{
    divide_exact, substitute, LaurentError, LaurentPoly, Sign, Substitution,
};
use crate::linkdata::{specialize_to_one, Verdict, Witness};

use super::sums::supersets;
use super::{f_sub, SignAssignment, SubsetFrame, SymmetricFactorFamily};

pub const SURGERY_SUMS_ID: &str = "surgery_sums";
pub const KNOT_SPECIALIZATION_ID: &str = "knot_specialization";
pub const SUBLINK_SPECIALIZATION_ID: &str = "sublink_specialization";
pub const SQUARE_DIVISIBILITY_ID: &str = "square_divisibility";
pub const EPS_DIVISIBILITY_ID: &str = "eps_square_divisibility";
pub const DIAGONAL_VANISHING_ID: &str = "diagonal_vanishing";

/// Largest component count for the exhaustive sign search by default.
pub const DEFAULT_MAX_SEARCH_R: usize = 4;

/// Frames whose local sign search would exceed this many free signs are
/// skipped in the local fallback.
const MAX_LOCAL_FREE_SIGNS: usize = 16;

/// How the per-sublink signs of the `f_J` are treated.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub enum SignMode {
    /// Pass if some sign assignment satisfies every frame.
    #[default]
    Exists,
    /// Use the given (calibrated) signs.
    Fixed(SignAssignment),
}

/// One frame with its terms `η_J(u) F_J(I)` already computed.
struct FrameTerms {
    frame: SubsetFrame,
    /// `(J, η_J F_J(I), |J \ I| even)` for the nonzero terms.
    terms: Vec<(IndexSet, LaurentPoly, bool)>,
}

impl FrameTerms {
    fn new(family: &SymmetricFactorFamily, frame: SubsetFrame) -> Self {
        let r = family.components();
        let terms = supersets(r, frame.subset())
            .filter_map(|set| {
                let f = f_sub(family, set, frame.subset()).expect("family is complete");
                if f.is_zero() {
                    return None;
                }
                let f = if frame.eta(set).is_plus() { f } else { -f };
                let even = set.difference(frame.subset()).len() % 2 == 0;
                Some((set, f, even))
            })
            .collect();
        Self { frame, terms }
    }

    fn sums(&self, signs: &SignAssignment) -> (LaurentPoly, LaurentPoly) {
        let r = self.frame.components();
        let mut even = LaurentPoly::zero(r);
        let mut odd = LaurentPoly::zero(r);
        for (set, f, is_even) in &self.terms {
            let target = if *is_even { &mut even } else { &mut odd };
            *target = if signs.get(*set).is_plus() {
                &*target + f
            } else {
                &*target - f
            };
        }
        (even, odd)
    }

    /// `S_odd = 0` when `|I| = 1`; `S_even = 0` or `S_odd = 0` otherwise.
    fn satisfied(&self, signs: &SignAssignment) -> bool {
        let (even, odd) = self.sums(signs);
        odd.is_zero() || (self.frame.subset().len() >= 2 && even.is_zero())
    }

    fn witness(&self, signs: &SignAssignment) -> Witness {
        let (even, odd) = self.sums(signs);
        Witness::Frame {
            subset: self.frame.subset(),
            u: self.frame.u().clone(),
            s_even: even.to_string(),
            s_odd: odd.to_string(),
            signs: signs.as_map().clone(),
        }
    }
}

fn all_frames(family: &SymmetricFactorFamily) -> Vec<FrameTerms> {
    let r = family.components();
    IndexSet::all_subsets(r)
        .into_iter()
        .filter(|s| !s.is_empty() && s.len() < r)
        .flat_map(|s| SubsetFrame::all(r, s))
        .map(|frame| FrameTerms::new(family, frame))
        .collect()
}

/// Assignments of `±` to `free`, enumerated by bit mask.
fn assignment(free: &[IndexSet], bits: u64) -> SignAssignment {
    let mut signs = SignAssignment::trivial();
    for (k, &set) in free.iter().enumerate() {
        if bits >> k & 1 == 1 {
            signs.set(set, Sign::Minus);
        }
    }
    signs
}

/// Vanishing of the surgery sums: for every `I` with `1 ≤ |I| ≤ r-1` and every
/// `u(I)`, `S_odd = 0` when `|I| = 1` and `S_even = 0` or `S_odd = 0` when
/// `|I| ≥ 2`. A failure means the link is not an algebraically split
/// component-preservingly amphicheiral link.
///
/// Uses [`DEFAULT_MAX_SEARCH_R`] as the limit for the exhaustive sign search.
pub fn check_surgery_sums(family: &SymmetricFactorFamily, mode: &SignMode) -> Verdict {
    check_surgery_sums_limited(family, mode, DEFAULT_MAX_SEARCH_R)
}

/// As [`check_surgery_sums`], with an explicit component limit for the
/// exhaustive search. Above the limit only a per-frame search runs, which can
/// fail a link but never pass one.
pub fn check_surgery_sums_limited(
    family: &SymmetricFactorFamily,
    mode: &SignMode,
    max_search_r: usize,
) -> Verdict {
    let r = family.components();
    if r < 2 {
        return Verdict::not_applicable(SURGERY_SUMS_ID, "requires at least 2 components");
    }
    if !family.is_complete() {
        let missing: Vec<String> = family.missing().iter().map(|s| format!("{{{s}}}")).collect();
        return Verdict::not_applicable(
            SURGERY_SUMS_ID,
            format!("missing sublink data for {}", missing.join(" ")),
        );
    }
    let frames = all_frames(family);

    match mode {
        SignMode::Fixed(signs) => match frames.iter().find(|f| !f.satisfied(signs)) {
            None => Verdict::pass(SURGERY_SUMS_ID).with_message("fixed signs"),
            Some(f) => Verdict::fail(
                SURGERY_SUMS_ID,
                "surgery sums do not vanish under the given signs",
                f.witness(signs),
            ),
        },
        SignMode::Exists if r <= max_search_r => exists_search(family, &frames),
        SignMode::Exists => local_search(&frames, r, max_search_r),
    }
}

fn exists_search(family: &SymmetricFactorFamily, frames: &[FrameTerms]) -> Verdict {
    // A global sign flip preserves every vanishing condition, so the sign of
    // the largest nonzero factor is fixed to +.
    let mut free: Vec<IndexSet> = family
        .factors()
        .iter()
        .filter(|(_, f)| !f.is_zero())
        .map(|(&s, _)| s)
        .collect();
    free.pop();

    let mut best: Option<(usize, SignAssignment, usize)> = None;
    for bits in 0u64..1 << free.len() {
        let signs = assignment(&free, bits);
        let mut failures = 0;
        let mut first = None;
        for (k, f) in frames.iter().enumerate() {
            if !f.satisfied(&signs) {
                failures += 1;
                first.get_or_insert(k);
                if best.as_ref().is_some_and(|(b, _, _)| failures >= *b) {
                    break;
                }
            }
        }
        let Some(first) = first else {
            return Verdict::pass(SURGERY_SUMS_ID)
                .with_message(format!("satisfied by signs {}", describe_signs(&signs)));
        };
        if best.as_ref().is_none_or(|(b, _, _)| failures < *b) {
            best = Some((failures, signs, first));
        }
    }
    let (failures, signs, first) = best.expect("at least one assignment");
    Verdict::fail(
        SURGERY_SUMS_ID,
        format!(
            "no sign assignment makes the surgery sums vanish ({failures} frame(s) fail under the best one)"
        ),
        frames[first].witness(&signs),
    )
}

fn local_search(frames: &[FrameTerms], r: usize, max_search_r: usize) -> Verdict {
    let mut skipped = 0;
    for f in frames {
        let mut free: Vec<IndexSet> = f.terms.iter().map(|(s, _, _)| *s).collect();
        free.sort();
        free.dedup();
        free.pop();
        if free.len() > MAX_LOCAL_FREE_SIGNS {
            skipped += 1;
            continue;
        }
        let ok = (0u64..1 << free.len()).any(|bits| f.satisfied(&assignment(&free, bits)));
        if !ok {
            return Verdict::fail(
                SURGERY_SUMS_ID,
                "no signs satisfy this frame even locally",
                f.witness(&SignAssignment::trivial()),
            );
        }
    }
    Verdict::not_applicable(
        SURGERY_SUMS_ID,
        format!(
            "global sign search disabled for r = {r} > {max_search_r}; per-frame search found no obstruction ({skipped} frame(s) skipped)"
        ),
    )
}

fn describe_signs(signs: &SignAssignment) -> String {
    if signs.as_map().values().all(|s| s.is_plus()) {
        return "all +".to_string();
    }
    signs
        .as_map()
        .iter()
        .filter(|(_, s)| !s.is_plus())
        .map(|(set, s)| format!("{{{set}}}:{s}"))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Sign-independent consequences of the surgery sums.
///
/// `knot_specialization`: for even `r`, `F({i}) = 0` for every `i`.
/// `sublink_specialization`: for `I = {1..r} \ {i}`, not both `Δ_{L_I} ≠ 0`
/// and `F(I) ≠ 0`; for `r = 2` the sublink is a knot, whose polynomial never
/// vanishes.
pub fn check_specializations(family: &SymmetricFactorFamily) -> Vec<Verdict> {
    let r = family.components();
    let full = IndexSet::full(r);
    let Some(f) = family.factor(full) else {
        let reason = "symmetric factor of the whole link is unavailable";
        return vec![
            Verdict::not_applicable(KNOT_SPECIALIZATION_ID, reason),
            Verdict::not_applicable(SUBLINK_SPECIALIZATION_ID, reason),
        ];
    };
    if r < 2 {
        return vec![
            Verdict::not_applicable(KNOT_SPECIALIZATION_ID, "requires at least 2 components"),
            Verdict::not_applicable(SUBLINK_SPECIALIZATION_ID, "requires at least 2 components"),
        ];
    }

    let knot = if r % 2 == 1 {
        Verdict::not_applicable(KNOT_SPECIALIZATION_ID, "requires an even number of components")
    } else {
        let offenders: BTreeMap<usize, String> = (1..=r)
            .filter_map(|i| {
                let value = specialize_to_one(f, (1..=r).filter(|&j| j != i));
                (!value.is_zero()).then(|| (i, value.to_string()))
            })
            .collect();
        if offenders.is_empty() {
            Verdict::pass(KNOT_SPECIALIZATION_ID)
        } else {
            Verdict::fail(
                KNOT_SPECIALIZATION_ID,
                "F({i}) is nonzero: not component-preservingly amphicheiral",
                Witness::Specializations { offenders },
            )
        }
    };

    let mut offenders = BTreeMap::new();
    let mut skipped = Vec::new();
    for i in 1..=r {
        let rest = full.remove(i);
        let sublink_nonzero = if rest.len() == 1 {
            true
        } else {
            match family.factor(rest) {
                Some(g) => !g.is_zero(),
                None => {
                    skipped.push(i);
                    continue;
                }
            }
        };
        let value = specialize_to_one(f, [i]);
        if sublink_nonzero && !value.is_zero() {
            offenders.insert(i, value.to_string());
        }
    }
    let sublink = if skipped.len() == r {
        Verdict::not_applicable(SUBLINK_SPECIALIZATION_ID, "no (r-1)-component sublink data")
    } else if offenders.is_empty() {
        let v = Verdict::pass(SUBLINK_SPECIALIZATION_ID);
        if skipped.is_empty() {
            v
        } else {
            v.with_message(format!("components {skipped:?} skipped for lack of sublink data"))
        }
    } else {
        Verdict::fail(
            SUBLINK_SPECIALIZATION_ID,
            "f is not divisible by t_i - 1 although the sublink without K_i has nonzero polynomial",
            Witness::Specializations { offenders },
        )
    };
    vec![knot, sublink]
}

/// Which divisibility the 2-component check demands.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DivisibilityMode {
    /// `(t1-1)^2 (t2-1)^2`, necessary for component-preserving amphicheirality.
    Amphicheiral,
    /// additionally `(t1 t2 - 1)(t1 - t2)`, necessary for `(ε,ε)`-amphicheirality.
    EpsAmphicheiral,
}

/// Divisibility of a 2-variable Alexander polynomial by the factors forced by
/// amphicheirality. `Δ = 0` passes.
pub fn check_square_divisibility(delta: &LaurentPoly, mode: DivisibilityMode) -> Verdict {
    let id = match mode {
        DivisibilityMode::Amphicheiral => SQUARE_DIVISIBILITY_ID,
        DivisibilityMode::EpsAmphicheiral => EPS_DIVISIBILITY_ID,
    };
    if delta.arity() != 2 {
        return Verdict::not_applicable(id, "requires exactly 2 components");
    }
    if delta.is_zero() {
        return Verdict::pass(id).with_message("vacuous: Alexander polynomial is zero");
    }
    let p = |s: &str| crate::laurent::parse_poly(s, 2).expect("static factor");
    let mut factors = vec![p("t1 - 1"), p("t1 - 1"), p("t2 - 1"), p("t2 - 1")];
    if mode == DivisibilityMode::EpsAmphicheiral {
        factors.push(p("t1*t2 - 1"));
        factors.push(p("t1 - t2"));
    }
    let mut q = delta.clone();
    for factor in &factors {
        match divide_exact(&q, factor) {
            Ok(next) => q = next,
            Err(LaurentError::Remainder { .. }) => {
                return Verdict::fail(
                    id,
                    format!("not divisible by {}", describe_product(&factors)),
                    Witness::Divisibility {
                        factor: factor.to_string(),
                        quotient_so_far: q.to_string(),
                    },
                )
            }
            Err(e) => unreachable!("static divisors are admissible: {e}"),
        }
    }
    Verdict::pass(id)
}

fn describe_product(factors: &[LaurentPoly]) -> String {
    factors.iter().map(|f| format!("({f})")).collect::<Vec<_>>().join("")
}

/// For even `r`: `Δ(t^{η_1}, ..., t^{η_r}) = 0` for every sign vector `η`.
/// A failure means the link is not component-preservingly
/// `(ε)`-amphicheiral for either `ε`.
pub fn check_diagonal_vanishing(delta: &LaurentPoly) -> Verdict {
    let r = delta.arity();
    if r % 2 == 1 || r == 0 {
        return Verdict::not_applicable(
            DIAGONAL_VANISHING_ID,
            "requires an even number of components",
        );
    }
    if delta.is_zero() {
        return Verdict::pass(DIAGONAL_VANISHING_ID).with_message("vacuous: Alexander polynomial is zero");
    }
    // η and -η give images related by t ↦ t^{-1}, so η_1 = + suffices
    for bits in 0u64..1 << (r - 1) {
        let eta: Vec<Sign> = std::iter::once(Sign::Plus)
            .chain((0..r - 1).map(|k| if bits >> k & 1 == 0 { Sign::Plus } else { Sign::Minus }))
            .collect();
        let sigma = eta.iter().enumerate().fold(Substitution::new(1), |s, (k, e)| {
            s.set_power(k + 1, 1, e.to_i64())
        });
        let value = substitute(delta, &sigma).expect("diagonal substitution is total");
        if !value.is_zero() {
            return Verdict::fail(
                DIAGONAL_VANISHING_ID,
                "nonzero diagonal specialization: not component-preservingly (ε)-amphicheiral",
                Witness::SignVector {
                    eta,
                    value: value.to_string(),
                },
            );
        }
    }
    Verdict::pass(DIAGONAL_VANISHING_ID)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::parse_poly;
    use crate::linkdata::Status;

    fn poly(s: &str, r: usize) -> LaurentPoly {
        parse_poly(s, r).unwrap()
    }

    fn set(s: &str) -> IndexSet {
        s.parse().unwrap()
    }

    fn family(r: usize, factors: &[(&str, &str)]) -> SymmetricFactorFamily {
        let mut fam = SymmetricFactorFamily::new(r);
        for (s, f) in factors {
            fam.insert(set(s), poly(f, r)).unwrap();
        }
        fam
    }

    fn borromean() -> SymmetricFactorFamily {
        family(3, &[("1,2", "0"), ("1,3", "0"), ("2,3", "0"), ("1,2,3", "1")])
    }

    fn whitehead() -> SymmetricFactorFamily {
        family(2, &[("1,2", "1")])
    }

    fn ten_n_59() -> SymmetricFactorFamily {
        family(2, &[("1,2", "t1 + t1^-1 - t2 - t2^-1")])
    }

    #[test]
    fn borromean_passes_surgery_sums() {
        assert!(check_surgery_sums(&borromean(), &SignMode::Exists).is_pass());
        assert!(check_surgery_sums(&borromean(), &SignMode::Fixed(SignAssignment::trivial())).is_pass());
    }

    #[test]
    fn whitehead_fails_surgery_sums() {
        for mode in [SignMode::Exists, SignMode::Fixed(SignAssignment::trivial())] {
            let v = check_surgery_sums(&whitehead(), &mode);
            assert_eq!(v.status, Status::Fail);
            match v.witness {
                Some(Witness::Frame { subset, s_odd, .. }) => {
                    assert_eq!(subset.len(), 1);
                    assert!(s_odd == "1" || s_odd == "-1");
                }
                w => panic!("unexpected witness {w:?}"),
            }
        }
    }

    #[test]
    fn zero_family_passes() {
        let fam = family(4, &[]);
        let mut fam = fam;
        for s in IndexSet::all_subsets(4).into_iter().filter(|s| s.len() >= 2) {
            fam.insert(s, poly("0", 4)).unwrap();
        }
        assert!(check_surgery_sums(&fam, &SignMode::Exists).is_pass());
        assert!(check_specializations(&fam).iter().all(Verdict::is_pass));
    }

    #[test]
    fn incomplete_family_is_not_applicable() {
        let fam = family(3, &[("1,2,3", "1")]);
        let v = check_surgery_sums(&fam, &SignMode::Exists);
        assert_eq!(v.status, Status::NotApplicable);
        assert!(v.message.contains("{1,2}"));
    }

    #[test]
    fn sign_freedom_rescues_a_fixed_failure() {
        // r = 3, |I| = 2 frames: S_even = f_I, S_odd = ±F(I). With f_{12} = 1
        // and f = 1 both sums are nonzero whatever the signs, so this fails;
        // but for |I| = 1 with f_{12} = f_{13} = 1, S_odd = η_12 + η_13 can
        // vanish only with the right relative sign.
        let fam = family(3, &[("1,2", "1"), ("1,3", "1"), ("2,3", "1"), ("1,2,3", "0")]);
        let fixed = check_surgery_sums(&fam, &SignMode::Fixed(SignAssignment::trivial()));
        let exists = check_surgery_sums(&fam, &SignMode::Exists);
        assert_eq!(fixed.status, Status::Fail);
        assert_eq!(exists.status, Status::Fail);
    }

    #[test]
    fn exists_finds_nontrivial_signs() {
        // f_{12} = f_{13} = f_{23} = 0 except a pair that cancels only with a
        // relative minus sign: |I| = 1, I = {1}, u_2 = u_3:
        // S_odd = η_12 s_12 F_12 + η_13 s_13 F_13 with F = 1.
        let fam = family(3, &[("1,2", "1"), ("1,3", "1"), ("2,3", "0"), ("1,2,3", "0")]);
        let v = check_surgery_sums(&fam, &SignMode::Exists);
        // I = {1}, u = (+,-): η_12 = -1, η_13 = +1 → needs s_12 = s_13;
        // u = (+,+): η_12 = η_13 = -1 → needs s_12 = -s_13. Contradiction.
        assert_eq!(v.status, Status::Fail);
    }

    #[test]
    fn local_search_above_limit() {
        let v = check_surgery_sums_limited(&whitehead(), &SignMode::Exists, 1);
        assert_eq!(v.status, Status::Fail);
        let v = check_surgery_sums_limited(&borromean(), &SignMode::Exists, 2);
        assert_eq!(v.status, Status::NotApplicable);
    }

    #[test]
    fn specializations() {
        let v = check_specializations(&ten_n_59());
        assert_eq!(v[0].status, Status::Fail);
        match &v[0].witness {
            Some(Witness::Specializations { offenders }) => {
                assert_eq!(offenders.len(), 2);
                assert_eq!(offenders[&1], "t1 - 2 + t1^-1");
                assert_eq!(offenders[&2], "-t2 + 2 - t2^-1");
            }
            w => panic!("unexpected witness {w:?}"),
        }
        let v = check_specializations(&borromean());
        assert_eq!(v[0].status, Status::NotApplicable);
        assert_eq!(v[1].status, Status::Pass);
        let v = check_specializations(&family(2, &[("1,2", "0")]));
        assert!(v.iter().all(Verdict::is_pass));
    }

    #[test]
    fn divisibility() {
        let whitehead = poly("(t1-1)*(t2-1)", 2);
        for mode in [DivisibilityMode::Amphicheiral, DivisibilityMode::EpsAmphicheiral] {
            assert_eq!(check_square_divisibility(&whitehead, mode).status, Status::Fail);
        }
        let synth = poly("(t1-1)^2*(t2-1)^2*(t1*t2-1)*(t1-t2)", 2);
        for mode in [DivisibilityMode::Amphicheiral, DivisibilityMode::EpsAmphicheiral] {
            assert!(check_square_divisibility(&synth, mode).is_pass());
            assert!(check_square_divisibility(&poly("0", 2), mode).is_pass());
        }
        let caa = poly("3*(t1-1)*(t2-1)*(t1*t2+1)^2", 2);
        assert_eq!(
            check_square_divisibility(&caa, DivisibilityMode::Amphicheiral).status,
            Status::Fail
        );
        assert_eq!(
            check_square_divisibility(&poly("t1 - 1", 1), DivisibilityMode::Amphicheiral).status,
            Status::NotApplicable
        );
    }

    #[test]
    fn diagonal() {
        assert!(check_diagonal_vanishing(&poly("(t1-1)*(t2-1)*(t1-t2)*(t1*t2-1)", 2)).is_pass());
        let v = check_diagonal_vanishing(&poly("(t1-1)*(t2-1)", 2));
        assert_eq!(v.status, Status::Fail);
        match v.witness {
            Some(Witness::SignVector { eta, value }) => {
                assert_eq!(eta, vec![Sign::Plus, Sign::Plus]);
                assert_eq!(value, "t1^2 - 2*t1 + 1");
            }
            w => panic!("unexpected witness {w:?}"),
        }
        assert!(check_diagonal_vanishing(&poly("0", 2)).is_pass());
        assert_eq!(
            check_diagonal_vanishing(&poly("(t1-1)*(t2-1)*(t3-1)", 3)).status,
            Status::NotApplicable
        );
    }
}
