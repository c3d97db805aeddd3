use std::collections::BTreeMap;

use crate::index_set::IndexSet;
use crate::laurent::{equal_up_to_unit, LaurentPoly, Sign};
use crate::linkdata::specialize_to_one;

use super::{ObstructionError, SymmetricFactorFamily};

/// Per-set signs multiplying each `f_J`; sets not listed count as `+`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SignAssignment(BTreeMap<IndexSet, Sign>);

impl SignAssignment {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn from_map(map: BTreeMap<IndexSet, Sign>) -> Self {
        Self(map)
    }

    pub fn set(&mut self, set: IndexSet, sign: Sign) {
        self.0.insert(set, sign);
    }

    pub fn get(&self, set: IndexSet) -> Sign {
        self.0.get(&set).copied().unwrap_or(Sign::Plus)
    }

    pub fn as_map(&self) -> &BTreeMap<IndexSet, Sign> {
        &self.0
    }
}

/// A subset `I ⊆ {1..r}` with a sign `u_i` for every `i` outside it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubsetFrame {
    subset: IndexSet,
    u: BTreeMap<usize, Sign>,
}

impl SubsetFrame {
    /// `u` must be defined exactly on `{1..r} \ subset`.
    pub fn new(r: usize, subset: IndexSet, u: BTreeMap<usize, Sign>) -> Result<Self, ObstructionError> {
        let full = IndexSet::full(r);
        let domain = IndexSet::from_indices(u.keys().copied().filter(|&i| (1..=r).contains(&i)));
        if subset.is_empty()
            || !subset.is_subset(full)
            || domain.len() != u.len()
            || domain != full.difference(subset)
        {
            return Err(ObstructionError::InvalidFrame(subset));
        }
        Ok(Self { subset, u })
    }

    /// All `2^{r-|I|}` frames over `subset`, in a fixed order.
    pub fn all(r: usize, subset: IndexSet) -> Vec<SubsetFrame> {
        let outside: Vec<usize> = IndexSet::full(r).difference(subset).iter().collect();
        (0u64..1 << outside.len())
            .map(|bits| {
                let u = outside
                    .iter()
                    .enumerate()
                    .map(|(k, &i)| (i, if bits >> k & 1 == 0 { Sign::Plus } else { Sign::Minus }))
                    .collect();
                SubsetFrame { subset, u }
            })
            .collect()
    }

    pub fn subset(&self) -> IndexSet {
        self.subset
    }

    pub fn u(&self) -> &BTreeMap<usize, Sign> {
        &self.u
    }

    pub fn components(&self) -> usize {
        self.subset.len() + self.u.len()
    }

    /// `(-1)^k` where `k` counts the `i ∈ J \ I` with `u_i = +1`.
    pub fn eta(&self, set: IndexSet) -> Sign {
        let plus = set
            .difference(self.subset)
            .iter()
            .filter(|i| self.u.get(i) == Some(&Sign::Plus))
            .count();
        if plus % 2 == 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    /// `-u(I)`: every `u_i` negated.
    pub fn flip(&self) -> SubsetFrame {
        flip_frame(self)
    }
}

pub fn flip_frame(frame: &SubsetFrame) -> SubsetFrame {
    SubsetFrame {
        subset: frame.subset,
        u: frame.u.iter().map(|(&i, &s)| (i, -s)).collect(),
    }
}

/// `F_J(I)`: `f_J` with `t_i = 1` for every `i ∈ J \ I`.
pub fn f_sub(
    family: &SymmetricFactorFamily,
    set: IndexSet,
    subset: IndexSet,
) -> Result<LaurentPoly, ObstructionError> {
    if !subset.is_subset(set) {
        return Err(ObstructionError::NotSubset { subset, set });
    }
    let f = family
        .factor(set)
        .ok_or(ObstructionError::MissingFactor(set))?;
    Ok(specialize_to_one(f, set.difference(subset).iter()))
}

/// Index sets `J ⊇ I` with `|J| ≥ 2` inside `{1..r}`.
pub(crate) fn supersets(r: usize, subset: IndexSet) -> impl Iterator<Item = IndexSet> {
    IndexSet::full(r)
        .difference(subset)
        .subsets()
        .map(move |extra| subset.union(extra))
        .filter(|j| j.len() >= 2)
}

/// The sign-weighted sums over `J ⊇ I`, split by the parity of `|J \ I|`.
/// Each term is `signs(J) · η_J(u) · F_J(I)`.
pub fn s_sums(
    family: &SymmetricFactorFamily,
    frame: &SubsetFrame,
    signs: &SignAssignment,
) -> Result<(LaurentPoly, LaurentPoly), ObstructionError> {
    let r = family.components();
    if frame.components() != r {
        return Err(ObstructionError::InvalidFrame(frame.subset));
    }
    let mut even = LaurentPoly::zero(r);
    let mut odd = LaurentPoly::zero(r);
    for set in supersets(r, frame.subset) {
        let term = f_sub(family, set, frame.subset)?;
        let term = if (frame.eta(set) * signs.get(set)).is_plus() { term } else { -term };
        if set.difference(frame.subset).len() % 2 == 0 {
            even = &even + &term;
        } else {
            odd = &odd + &term;
        }
    }
    Ok((even, odd))
}

/// A torsion value `numerator / ∏ denominator_factors`, meaningful up to a unit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionExpr {
    pub numerator: LaurentPoly,
    pub denominator_factors: Vec<LaurentPoly>,
}

impl TorsionExpr {
    /// Equality up to a unit after cross-multiplying denominators.
    pub fn equivalent(&self, other: &TorsionExpr) -> bool {
        let lhs = other
            .denominator_factors
            .iter()
            .fold(self.numerator.clone(), |acc, d| &acc * d);
        let rhs = self
            .denominator_factors
            .iter()
            .fold(other.numerator.clone(), |acc, d| &acc * d);
        equal_up_to_unit(&lhs, &rhs).is_some()
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }
}

impl std::fmt::Display for TorsionExpr {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.numerator)?;
        for d in &self.denominator_factors {
            write!(f, " / ({d})")?;
        }
        Ok(())
    }
}

/// Torsion of the manifold surgered along the link with coefficients `u`
/// (components outside `I`) and the components of `I` left open.
///
/// For `I = {x}` this is `{Δ_{K_x}(t_x) + (t_x - 1)^2 Σ} / (t_x - 1)`, for
/// `2 ≤ |I| ≤ r-1` it is `∏_{i∈I}(t_i - 1) Σ`, where `Σ = S_even + S_odd`.
pub fn surgery_torsion(
    family: &SymmetricFactorFamily,
    frame: &SubsetFrame,
) -> Result<TorsionExpr, ObstructionError> {
    surgery_torsion_signed(family, frame, &SignAssignment::trivial())
}

pub fn surgery_torsion_signed(
    family: &SymmetricFactorFamily,
    frame: &SubsetFrame,
    signs: &SignAssignment,
) -> Result<TorsionExpr, ObstructionError> {
    let r = family.components();
    let size = frame.subset.len();
    if r < 2 || size == 0 || size >= r {
        return Err(ObstructionError::InvalidFrame(frame.subset));
    }
    let (even, odd) = s_sums(family, frame, signs)?;
    let total = &even + &odd;
    let one = LaurentPoly::one(r);
    if size == 1 {
        let x = frame.subset.iter().next().expect("nonempty");
        let knot = family.knot_poly(x).ok_or(ObstructionError::MissingKnotPoly(x))?;
        let tx = &LaurentPoly::var(x, r) - &one;
        let numerator = knot + &(&(&tx * &tx) * &total);
        Ok(TorsionExpr {
            numerator,
            denominator_factors: vec![tx],
        })
    } else {
        let numerator = frame
            .subset
            .iter()
            .fold(total, |acc, i| &acc * &(&LaurentPoly::var(i, r) - &one));
        Ok(TorsionExpr {
            numerator,
            denominator_factors: Vec::new(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::parse_poly;

    fn poly(s: &str, r: usize) -> LaurentPoly {
        parse_poly(s, r).unwrap()
    }

    fn set(s: &str) -> IndexSet {
        s.parse().unwrap()
    }

    pub(crate) fn borromean_family() -> SymmetricFactorFamily {
        SymmetricFactorFamily::new(3)
            .with_factor(set("1,2,3"), poly("1", 3))
            .unwrap()
            .with_factor(set("1,2"), poly("0", 3))
            .unwrap()
            .with_factor(set("1,3"), poly("0", 3))
            .unwrap()
            .with_factor(set("2,3"), poly("0", 3))
            .unwrap()
            .with_knot_polys(vec![poly("1", 3); 3])
    }

    fn frame(r: usize, subset: &str, u: &[(usize, Sign)]) -> SubsetFrame {
        SubsetFrame::new(r, set(subset), u.iter().copied().collect()).unwrap()
    }

    #[test]
    fn frame_validation() {
        assert!(SubsetFrame::new(3, set("1"), [(2, Sign::Plus)].into()).is_err());
        assert!(SubsetFrame::new(3, set("1"), [(1, Sign::Plus), (2, Sign::Plus)].into()).is_err());
        assert!(SubsetFrame::new(2, set(""), [(1, Sign::Plus), (2, Sign::Plus)].into()).is_err());
        assert_eq!(SubsetFrame::all(4, set("2")).len(), 8);
    }

    #[test]
    fn flip_is_an_involution() {
        let f = frame(3, "1", &[(2, Sign::Plus), (3, Sign::Minus)]);
        let g = flip_frame(&f);
        assert_eq!(g.u(), &[(2, Sign::Minus), (3, Sign::Plus)].into());
        assert_eq!(g.subset(), f.subset());
        assert_eq!(flip_frame(&g), f);
    }

    #[test]
    fn f_sub_examples() {
        let fam = borromean_family();
        assert!(f_sub(&fam, set("1,2,3"), set("1")).unwrap().is_one());
        let ten = SymmetricFactorFamily::new(2)
            .with_factor(set("1,2"), poly("t1 + t1^-1 - t2 - t2^-1", 2))
            .unwrap();
        assert_eq!(f_sub(&ten, set("1,2"), set("2")).unwrap(), poly("2 - t2 - t2^-1", 2));
        assert_eq!(
            f_sub(&ten, set("1,2"), set("1,2")).unwrap(),
            poly("t1 + t1^-1 - t2 - t2^-1", 2)
        );
        assert_eq!(
            f_sub(&SymmetricFactorFamily::new(2), set("1,2"), set("1")),
            Err(ObstructionError::MissingFactor(set("1,2")))
        );
    }

    #[test]
    fn borromean_sums() {
        let fam = borromean_family();
        let trivial = SignAssignment::trivial();
        let (e, o) = s_sums(&fam, &frame(3, "1,2", &[(3, Sign::Plus)]), &trivial).unwrap();
        assert!(e.is_zero());
        assert_eq!(o, poly("-1", 3));
        let (e, o) = s_sums(&fam, &frame(3, "1", &[(2, Sign::Plus), (3, Sign::Plus)]), &trivial).unwrap();
        assert!(e.is_one());
        assert!(o.is_zero());
    }

    #[test]
    fn whitehead_sums() {
        let fam = SymmetricFactorFamily::new(2)
            .with_factor(set("1,2"), poly("1", 2))
            .unwrap();
        let (e, o) = s_sums(&fam, &frame(2, "1", &[(2, Sign::Plus)]), &SignAssignment::trivial()).unwrap();
        assert!(e.is_zero());
        assert_eq!(o, poly("-1", 2));
    }

    #[test]
    fn borromean_torsion() {
        let fam = borromean_family();
        let t = surgery_torsion(&fam, &frame(3, "1,2", &[(3, Sign::Plus)])).unwrap();
        assert_eq!(t.numerator, poly("-(t1-1)*(t2-1)", 3));
        assert!(t.equivalent(&TorsionExpr {
            numerator: poly("(t1-1)*(t2-1)", 3),
            denominator_factors: vec![]
        }));
        let t = surgery_torsion(&fam, &frame(3, "1", &[(2, Sign::Plus), (3, Sign::Plus)])).unwrap();
        assert_eq!(t.numerator, poly("1 + (t1-1)^2", 3));
        assert_eq!(t.denominator_factors, vec![poly("t1 - 1", 3)]);
    }

    #[test]
    fn torsion_errors() {
        let fam = borromean_family();
        let full = SubsetFrame::new(3, set("1,2,3"), BTreeMap::new()).unwrap();
        assert!(matches!(surgery_torsion(&fam, &full), Err(ObstructionError::InvalidFrame(_))));
        let bare = SymmetricFactorFamily::new(2)
            .with_factor(set("1,2"), poly("1", 2))
            .unwrap();
        assert_eq!(
            surgery_torsion(&bare, &frame(2, "1", &[(2, Sign::Plus)])),
            Err(ObstructionError::MissingKnotPoly(1))
        );
    }

    #[test]
    fn zero_family_torsion_is_zero() {
        let mut fam = SymmetricFactorFamily::new(3);
        for s in ["1,2", "1,3", "2,3", "1,2,3"] {
            fam.insert(set(s), poly("0", 3)).unwrap();
        }
        let t = surgery_torsion(&fam, &frame(3, "2,3", &[(1, Sign::Minus)])).unwrap();
        assert!(t.is_zero());
    }

    #[test]
    fn torsion_equivalence_cross_multiplies() {
        let a = TorsionExpr {
            numerator: poly("t1^2 - 1", 2),
            denominator_factors: vec![poly("t1 - 1", 2)],
        };
        let b = TorsionExpr {
            numerator: poly("-t1^-1 - t1^-2", 2),
            denominator_factors: vec![],
        };
        assert!(a.equivalent(&b));
        assert!(!a.equivalent(&TorsionExpr {
            numerator: poly("t1 - 1", 2),
            denominator_factors: vec![]
        }));
    }
}
