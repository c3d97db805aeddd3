use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::index_set::IndexSet;
use crate::laurent::Sign;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
    DataError,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::NotApplicable => "N.A.",
            Status::DataError => "DATA_ERROR",
        })
    }
}

/// Machine-readable evidence attached to a verdict. Polynomials are carried
/// in their printed form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// Exponents `a_i` of the duality unit.
    DualityExponents { sign: Sign, exponents: Vec<i64> },
    /// The two sides of an identity that should agree up to a unit.
    UnitMismatch { left: String, right: String },
    /// Deleting `deleted` breaks the Torres identity.
    Torres {
        deleted: usize,
        left: String,
        right: String,
    },
    /// An odd cycle of components with nonzero pairwise linking numbers.
    LinkingCycle {
        components: Vec<usize>,
        linking_numbers: Vec<i64>,
    },
    LinkingNumber { components: [usize; 2], value: i64 },
    /// A subset frame where the surgery sums do not vanish as required.
    Frame {
        subset: IndexSet,
        u: BTreeMap<usize, Sign>,
        s_even: String,
        s_odd: String,
        signs: BTreeMap<IndexSet, Sign>,
    },
    /// Components whose specialization is nonzero, with the offending values.
    Specializations { offenders: BTreeMap<usize, String> },
    /// A substitution `t_i -> t^{eta_i}` with a nonzero result.
    SignVector { eta: Vec<Sign>, value: String },
    /// The first factor that fails to divide.
    Divisibility { factor: String, quotient_so_far: String },
    Polynomial { label: String, poly: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub test_id: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub message: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl Verdict {
    pub fn pass(test_id: impl Into<String>) -> Self {
        Self {
            test_id: test_id.into(),
            status: Status::Pass,
            message: String::new(),
            witness: None,
        }
    }

    /// A failing verdict; failures always carry a witness.
    pub fn fail(test_id: impl Into<String>, message: impl Into<String>, witness: Witness) -> Self {
        Self {
            test_id: test_id.into(),
            status: Status::Fail,
            message: message.into(),
            witness: Some(witness),
        }
    }

    pub fn not_applicable(test_id: impl Into<String>, reason: impl Into<String>) -> Self {
        Self {
            test_id: test_id.into(),
            status: Status::NotApplicable,
            message: reason.into(),
            witness: None,
        }
    }

    pub fn data_error(test_id: impl Into<String>, message: impl Into<String>) -> Self {
        Self {
            test_id: test_id.into(),
            status: Status::DataError,
            message: message.into(),
            witness: None,
        }
    }

    pub fn with_message(mut self, message: impl Into<String>) -> Self {
        self.message = message.into();
        self
    }

    pub fn with_witness(mut self, witness: Witness) -> Self {
        self.witness = Some(witness);
        self
    }

    pub fn is_pass(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn is_fail(&self) -> bool {
        self.status == Status::Fail
    }
}
