//! Closed-form generators for the example links: Milnor links, the 2-bridge
//! links `C(2a, 2b, -2a)`, and a few hard-coded fixtures.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use thiserror::Error;

use crate::index_set::IndexSet;
use crate::laurent::{divide_exact, parse_poly, LaurentPoly, Monomial};
use crate::linkdata::LinkRecord;

pub const FIXTURE_NAMES: [&str; 4] = ["10n59", "11n247", "borromean", "whitehead"];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("Milnor links need at least 3 components, got {0}")]
    MilnorTooSmall(usize),
    #[error("C(2a, 2b, -2a) needs nonzero a and b")]
    ZeroParameter,
    #[error("unknown fixture {0:?}; known: 10n59, 11n247, borromean, whitehead")]
    UnknownFixture(String),
    #[error("unknown family {0:?}; known: milnor, caa, borromean, fixture")]
    UnknownFamily(String),
    #[error("bad parameters for {family}: {msg}")]
    BadParameters { family: String, msg: String },
}

/// A generator request.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilySpec {
    Milnor(usize),
    TwoBridgeCaa { a: i64, b: i64 },
    Borromean,
    NamedFixture(String),
}

impl FamilySpec {
    /// Parse a family name and its parameters, e.g. `("milnor", ["5"])` or
    /// `("caa", ["2", "-1"])`.
    pub fn parse(family: &str, params: &[String]) -> Result<Self, FamilyError> {
        let bad = |msg: &str| FamilyError::BadParameters {
            family: family.to_string(),
            msg: msg.to_string(),
        };
        // accept "2,-1" as well as separate arguments
        let params: Vec<&str> = params
            .iter()
            .flat_map(|p| p.split(','))
            .map(str::trim)
            .filter(|p| !p.is_empty())
            .collect();
        match family.to_ascii_lowercase().as_str() {
            "milnor" => match params.as_slice() {
                [n] => n.parse().map(FamilySpec::Milnor).map_err(|_| bad("expected a component count")),
                _ => Err(bad("expected one parameter: the number of components")),
            },
            "caa" | "two-bridge" | "two_bridge_caa" => match params.as_slice() {
                [a, b] => {
                    let a = a.parse().map_err(|_| bad("a must be an integer"))?;
                    let b = b.parse().map_err(|_| bad("b must be an integer"))?;
                    Ok(FamilySpec::TwoBridgeCaa { a, b })
                }
                _ => Err(bad("expected two parameters: a b")),
            },
            "borromean" if params.is_empty() => Ok(FamilySpec::Borromean),
            "borromean" => Err(bad("takes no parameters")),
            "fixture" => match params.as_slice() {
                [name] => Ok(FamilySpec::NamedFixture(name.to_string())),
                _ => Err(bad("expected one fixture name")),
            },
            other if FIXTURE_NAMES.contains(&other) && params.is_empty() => {
                Ok(FamilySpec::NamedFixture(other.to_string()))
            }
            other => Err(FamilyError::UnknownFamily(other.to_string())),
        }
    }

    pub fn record(&self) -> Result<LinkRecord, FamilyError> {
        match self {
            FamilySpec::Milnor(n) => milnor_record(*n),
            FamilySpec::TwoBridgeCaa { a, b } => two_bridge_caa_record(*a, *b),
            FamilySpec::Borromean => milnor_record(3),
            FamilySpec::NamedFixture(name) => named_fixture(name),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Milnor(n) => write!(f, "milnor {n}"),
            FamilySpec::TwoBridgeCaa { a, b } => write!(f, "caa {a} {b}"),
            FamilySpec::Borromean => f.write_str("borromean"),
            FamilySpec::NamedFixture(name) => write!(f, "fixture {name}"),
        }
    }
}

impl FromStr for FamilySpec {
    type Err = FamilyError;

    /// `"milnor 4"`, `"caa 2 -1"`, `"borromean"`, `"fixture 10n59"`.
    fn from_str(s: &str) -> Result<Self, FamilyError> {
        let mut words = s.split_whitespace();
        let family = words.next().unwrap_or_default();
        let params: Vec<String> = words.map(str::to_string).collect();
        FamilySpec::parse(family, &params)
    }
}

fn poly(text: &str, r: usize) -> LaurentPoly {
    parse_poly(text, r).expect("static polynomial")
}

/// The `λ`-component Milnor link. `M_3` is the Borromean rings; for `λ ≥ 4`
/// the Alexander polynomial vanishes and no sublink data is supplied.
pub fn milnor_record(components: usize) -> Result<LinkRecord, FamilyError> {
    if components < 3 {
        return Err(FamilyError::MilnorTooSmall(components));
    }
    let name = if components == 3 {
        "borromean".to_string()
    } else {
        format!("milnor-{components}")
    };
    let delta = if components == 3 {
        poly("(t1-1)*(t2-1)*(t3-1)", 3)
    } else {
        LaurentPoly::zero(components)
    };
    let mut rec = LinkRecord::algebraically_split(name, components, delta).expect("valid record");
    if components == 3 {
        for set in ["1,2", "1,3", "2,3"] {
            let set: IndexSet = set.parse().expect("static set");
            rec = rec.with_sublink(set, LaurentPoly::zero(3)).expect("valid sublink");
        }
    }
    Ok(rec
        .with_knot_polys(vec![LaurentPoly::one(components); components])
        .expect("trivial knot polynomials"))
}

/// `((t1 t2)^a - 1) / (t1 t2 - 1)`, a Laurent polynomial for every `a ≠ 0`.
fn caa_quotient(a: i64) -> LaurentPoly {
    let x = Monomial::from_exponents([(1, a), (2, a)]);
    let numerator = &LaurentPoly::term(1, x, 2) - &LaurentPoly::one(2);
    divide_exact(&numerator, &poly("t1*t2 - 1", 2)).expect("t1 t2 - 1 divides (t1 t2)^a - 1")
}

/// The 2-bridge link `C(2a, 2b, -2a)` with
/// `Δ = b (t1-1)(t2-1) {((t1 t2)^a - 1)/(t1 t2 - 1)}^2`.
pub fn two_bridge_caa_record(a: i64, b: i64) -> Result<LinkRecord, FamilyError> {
    if a == 0 || b == 0 {
        return Err(FamilyError::ZeroParameter);
    }
    let q = caa_quotient(a);
    let delta = (&poly("(t1-1)*(t2-1)", 2) * &(&q * &q)).mul_scalar(&BigInt::from(b));
    let rec = LinkRecord::algebraically_split(format!("C({},{},{})", 2 * a, 2 * b, -2 * a), 2, delta)
        .expect("valid record");
    Ok(rec)
}

/// A hard-coded record by name.
pub fn named_fixture(name: &str) -> Result<LinkRecord, FamilyError> {
    let rec = match name {
        "10n59" => LinkRecord::algebraically_split(
            "10n59",
            2,
            poly("(t1-1)*(t2-1)*(t1-t2)*(t1*t2-1)", 2),
        ),
        "11n247" => LinkRecord::algebraically_split("11n247", 2, LaurentPoly::zero(2)),
        "borromean" => return milnor_record(3),
        "whitehead" => {
            return two_bridge_caa_record(1, 1).map(|rec| {
                LinkRecord::algebraically_split("whitehead", 2, rec.alexander().clone())
                    .expect("valid record")
            })
        }
        other => return Err(FamilyError::UnknownFixture(other.to_string())),
    };
    Ok(rec.expect("valid record"))
}
