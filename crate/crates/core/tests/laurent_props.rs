//! Algebraic identities of the Laurent polynomial ring.

use amphicheck::laurent::{
    divide_exact, equal_up_to_unit, normalize_canonical, parse_poly, substitute, LaurentPoly,
    Monomial, Sign, Substitution, UnitFactor,
};
use proptest::prelude::*;

const ARITY: usize = 3;

fn monomial() -> impl Strategy<Value = Monomial> {
    prop::collection::vec(-3i64..=3, ARITY)
        .prop_map(|e| Monomial::from_exponents(e.into_iter().enumerate().map(|(k, x)| (k + 1, x))))
}

fn poly() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-5i64..=5, monomial()), 0..6).prop_map(|terms| {
        terms
            .into_iter()
            .fold(LaurentPoly::zero(ARITY), |acc, (c, m)| &acc + &LaurentPoly::term(c, m, ARITY))
    })
}

fn nonzero_poly() -> impl Strategy<Value = LaurentPoly> {
    poly().prop_filter("nonzero", |p| !p.is_zero())
}

fn sign() -> impl Strategy<Value = Sign> {
    prop_oneof![Just(Sign::Plus), Just(Sign::Minus)]
}

/// Binomials `c (m1 - m2)` with `m1 != m2`, plus single terms.
fn divisor() -> impl Strategy<Value = LaurentPoly> {
    prop_oneof![
        (prop_oneof![-3i64..=-1, 1i64..=3], monomial(), monomial())
            .prop_filter("distinct", |(_, a, b)| a != b)
            .prop_map(|(c, a, b)| {
                (&LaurentPoly::term(1, a, ARITY) - &LaurentPoly::term(1, b, ARITY))
                    .mul_scalar(&c.into())
            }),
        (prop_oneof![-3i64..=-1, 1i64..=3], monomial())
            .prop_map(|(c, m)| LaurentPoly::term(c, m, ARITY)),
    ]
}

/// A substitution sending each variable to a signed monomial.
fn monomial_substitution() -> impl Strategy<Value = Substitution> {
    prop::collection::vec((sign(), monomial()), ARITY).prop_map(|images| {
        let mut sigma = Substitution::new(ARITY);
        for (k, (s, m)) in images.into_iter().enumerate() {
            sigma.assign_monomial(k + 1, s, m).unwrap();
        }
        sigma
    })
}

proptest! {
    #[test]
    fn addition_is_commutative_and_associative(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a + &LaurentPoly::zero(ARITY), a.clone());
    }

    #[test]
    fn multiplication_is_commutative_and_associative(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &LaurentPoly::one(ARITY), a.clone());
    }

    #[test]
    fn multiplication_distributes(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn division_round_trip(q in poly(), d in divisor()) {
        let p = &q * &d;
        prop_assert_eq!(divide_exact(&p, &d).unwrap(), q);
    }

    #[test]
    fn division_rejects_non_multiples(q in poly(), d in divisor(), m in monomial()) {
        // q d + m is a multiple of d only if m is
        let p = &(&q * &d) + &LaurentPoly::term(1, m.clone(), ARITY);
        match divide_exact(&p, &d) {
            Ok(quot) => prop_assert_eq!(&quot * &d, p),
            Err(_) => prop_assert!(divide_exact(&LaurentPoly::term(1, m, ARITY), &d).is_err()),
        }
    }

    #[test]
    fn substitution_is_a_ring_homomorphism(a in poly(), b in poly(), sigma in monomial_substitution()) {
        let s = |p: &LaurentPoly| substitute(p, &sigma).unwrap();
        prop_assert_eq!(s(&(&a + &b)), &s(&a) + &s(&b));
        prop_assert_eq!(s(&(&a * &b)), &s(&a) * &s(&b));
        prop_assert!(s(&LaurentPoly::one(ARITY)).is_one());
    }

    #[test]
    fn inversion_is_an_involution(a in poly()) {
        let inv = Substitution::inversion(ARITY);
        prop_assert_eq!(substitute(&substitute(&a, &inv).unwrap(), &inv).unwrap(), a);
    }

    #[test]
    fn unit_detection_recovers_the_unit(p in nonzero_poly(), s in sign(), m in monomial()) {
        let unit = UnitFactor { sign: s, monomial: m };
        let q = unit.apply(&p);
        let found = equal_up_to_unit(&q, &p).unwrap();
        prop_assert_eq!(found, unit);
    }

    #[test]
    fn unit_detection_rejects_scalar_multiples(p in nonzero_poly(), c in 2i64..=4) {
        prop_assert!(equal_up_to_unit(&p.mul_scalar(&c.into()), &p).is_none());
    }

    #[test]
    fn canonical_form_is_unit_invariant(p in poly(), s in sign(), m in monomial()) {
        let unit = UnitFactor { sign: s, monomial: m };
        let c = normalize_canonical(&p);
        prop_assert_eq!(normalize_canonical(&unit.apply(&p)), c.clone());
        prop_assert_eq!(normalize_canonical(&c), c);
    }

    #[test]
    fn display_parses_back(p in poly()) {
        prop_assert_eq!(parse_poly(&p.to_string(), ARITY).unwrap(), p);
    }
}
