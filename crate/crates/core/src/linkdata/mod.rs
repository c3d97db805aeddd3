//! Link records, their JSON form, and the classical screens that every
//! Alexander polynomial of a link must satisfy.

mod checks;
mod verdict;

use std::collections::BTreeMap;

use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::index_set::{IndexSet, MAX_COMPONENTS};
use crate::laurent::{parse_poly, substitute, LaurentError, LaurentPoly, Substitution};

pub use checks::{
    check_duality, check_eps_symmetry, check_torres, is_algebraically_split, linking_screen,
    DUALITY_ID, EPS_SYMMETRY_ID, INVERTIBILITY_NOTE_ID, LINKING_EVEN_ID, LINKING_ODD_CYCLE_ID,
    TORRES_ID,
};
pub use verdict::{Status, Verdict, Witness};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RecordError {
    #[error("component count must be between 1 and {MAX_COMPONENTS}, got {0}")]
    ComponentCount(usize),
    #[error("linking matrix must be {r}x{r}")]
    MatrixShape { r: usize },
    #[error("linking matrix is not symmetric at ({0}, {1})")]
    MatrixNotSymmetric(usize, usize),
    #[error("linking matrix has nonzero diagonal entry at {0}")]
    NonzeroDiagonal(usize),
    #[error("{field}: {source}")]
    Polynomial {
        field: String,
        #[source]
        source: LaurentError,
    },
    #[error("invalid sublink index set {0:?}")]
    SublinkIndex(String),
    #[error("sublink {set} polynomial uses variables outside the set")]
    SublinkVariables { set: IndexSet },
    #[error("expected {expected} knot polynomials, got {got}")]
    KnotPolyCount { expected: usize, got: usize },
    #[error("knot polynomial {index} must be a polynomial in t{index} alone")]
    KnotPolyVariable { index: usize },
    #[error("knot polynomial {index} must evaluate to ±1 at 1, got {value}")]
    KnotPolyNormalization { index: usize, value: String },
    #[error("malformed record: {0}")]
    Schema(String),
}

/// An `r`-component link described by its linking numbers and Alexander
/// polynomials. Sublink polynomials use the original variable indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkRecord {
    name: String,
    r: usize,
    linking_matrix: Vec<Vec<i64>>,
    alexander: LaurentPoly,
    sublinks: BTreeMap<IndexSet, LaurentPoly>,
    knot_polys: Option<Vec<LaurentPoly>>,
}

impl LinkRecord {
    pub fn new(
        name: impl Into<String>,
        r: usize,
        linking_matrix: Vec<Vec<i64>>,
        alexander: LaurentPoly,
    ) -> Result<Self, RecordError> {
        if r == 0 || r > MAX_COMPONENTS {
            return Err(RecordError::ComponentCount(r));
        }
        if linking_matrix.len() != r || linking_matrix.iter().any(|row| row.len() != r) {
            return Err(RecordError::MatrixShape { r });
        }
        for i in 0..r {
            if linking_matrix[i][i] != 0 {
                return Err(RecordError::NonzeroDiagonal(i + 1));
            }
            for j in 0..i {
                if linking_matrix[i][j] != linking_matrix[j][i] {
                    return Err(RecordError::MatrixNotSymmetric(i + 1, j + 1));
                }
            }
        }
        let alexander = alexander
            .with_arity(r)
            .map_err(|source| RecordError::Polynomial {
                field: "alexander".into(),
                source,
            })?;
        Ok(Self {
            name: name.into(),
            r,
            linking_matrix,
            alexander,
            sublinks: BTreeMap::new(),
            knot_polys: None,
        })
    }

    /// A record whose linking matrix is identically zero.
    pub fn algebraically_split(
        name: impl Into<String>,
        r: usize,
        alexander: LaurentPoly,
    ) -> Result<Self, RecordError> {
        Self::new(name, r, vec![vec![0; r]; r], alexander)
    }

    /// Attach `Δ_{L_I}` for a proper sub-index-set `I` with `|I| ≥ 2`.
    pub fn with_sublink(mut self, set: IndexSet, poly: LaurentPoly) -> Result<Self, RecordError> {
        if set.len() < 2 || set.len() >= self.r || set.max().is_some_and(|m| m > self.r) {
            return Err(RecordError::SublinkIndex(set.to_string()));
        }
        let poly = poly.with_arity(self.r).map_err(|source| RecordError::Polynomial {
            field: format!("sublinks[{set}]"),
            source,
        })?;
        if poly.variables().into_iter().any(|v| !set.contains(v)) {
            return Err(RecordError::SublinkVariables { set });
        }
        self.sublinks.insert(set, poly);
        Ok(self)
    }

    /// Attach the component knot polynomials; entry `i` is a polynomial in
    /// `t_{i+1}`. Each is normalized so that its value at 1 is 1.
    pub fn with_knot_polys(mut self, polys: Vec<LaurentPoly>) -> Result<Self, RecordError> {
        if polys.len() != self.r {
            return Err(RecordError::KnotPolyCount {
                expected: self.r,
                got: polys.len(),
            });
        }
        let mut out = Vec::with_capacity(self.r);
        for (k, poly) in polys.into_iter().enumerate() {
            let index = k + 1;
            let poly = poly.with_arity(self.r).map_err(|source| RecordError::Polynomial {
                field: format!("knot_polys[{k}]"),
                source,
            })?;
            if poly.variables().into_iter().any(|v| v != index) {
                return Err(RecordError::KnotPolyVariable { index });
            }
            let value = poly.coefficient_sum();
            if !value.abs().is_one() {
                return Err(RecordError::KnotPolyNormalization {
                    index,
                    value: value.to_string(),
                });
            }
            out.push(if value.is_negative() { -poly } else { poly });
        }
        self.knot_polys = Some(out);
        Ok(self)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn components(&self) -> usize {
        self.r
    }

    pub fn linking_matrix(&self) -> &[Vec<i64>] {
        &self.linking_matrix
    }

    /// `lk(K_i, K_j)` for 1-based indices.
    pub fn linking_number(&self, i: usize, j: usize) -> i64 {
        self.linking_matrix[i - 1][j - 1]
    }

    pub fn alexander(&self) -> &LaurentPoly {
        &self.alexander
    }

    pub fn sublinks(&self) -> &BTreeMap<IndexSet, LaurentPoly> {
        &self.sublinks
    }

    /// `Δ_{L_I}`: the full polynomial for `I = {1..r}`, otherwise the supplied
    /// sublink polynomial.
    pub fn sublink(&self, set: IndexSet) -> Option<&LaurentPoly> {
        if set == IndexSet::full(self.r) {
            Some(&self.alexander)
        } else {
            self.sublinks.get(&set)
        }
    }

    pub fn knot_polys(&self) -> Option<&[LaurentPoly]> {
        self.knot_polys.as_deref()
    }

    /// The JSON object form of this record.
    pub fn to_json(&self) -> RecordJson {
        RecordJson {
            name: self.name.clone(),
            components: self.r,
            linking_matrix: self.linking_matrix.clone(),
            alexander: self.alexander.to_string(),
            sublinks: self
                .sublinks
                .iter()
                .map(|(k, v)| (k.to_string(), v.to_string()))
                .collect(),
            knot_polys: self
                .knot_polys
                .as_ref()
                .map(|v| v.iter().map(ToString::to_string).collect()),
        }
    }
}

/// On-disk record layout. Index-set keys are comma-joined sorted 1-based
/// indices; every polynomial is an expression string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RecordJson {
    pub name: String,
    pub components: usize,
    pub linking_matrix: Vec<Vec<i64>>,
    pub alexander: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub sublinks: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub knot_polys: Option<Vec<String>>,
}

impl TryFrom<RecordJson> for LinkRecord {
    type Error = RecordError;

    fn try_from(j: RecordJson) -> Result<Self, RecordError> {
        let r = j.components;
        if r == 0 || r > MAX_COMPONENTS {
            return Err(RecordError::ComponentCount(r));
        }
        let poly = |field: String, text: &str| {
            parse_poly(text, r).map_err(|source| RecordError::Polynomial { field, source })
        };
        let alexander = poly("alexander".into(), &j.alexander)?;
        let mut rec = LinkRecord::new(j.name, r, j.linking_matrix, alexander)?;
        for (key, text) in &j.sublinks {
            let set: IndexSet = key
                .parse()
                .map_err(|_| RecordError::SublinkIndex(key.clone()))?;
            if set.max().is_some_and(|m| m > r) {
                return Err(RecordError::SublinkIndex(key.clone()));
            }
            let p = poly(format!("sublinks[{key}]"), text)?;
            rec = rec.with_sublink(set, p)?;
        }
        if let Some(kp) = &j.knot_polys {
            let polys = kp
                .iter()
                .enumerate()
                .map(|(k, text)| poly(format!("knot_polys[{k}]"), text))
                .collect::<Result<Vec<_>, _>>()?;
            rec = rec.with_knot_polys(polys)?;
        }
        Ok(rec)
    }
}

/// One entry of a record file: the record name (when recoverable) and either
/// the record or why it was rejected.
pub type ParsedRecord = (String, Result<LinkRecord, RecordError>);

/// Parse a JSON array of records. A malformed array is an error; a malformed
/// element only invalidates that element.
pub fn parse_records(text: &str) -> Result<Vec<ParsedRecord>, serde_json::Error> {
    let values: Vec<serde_json::Value> = serde_json::from_str(text)?;
    Ok(values
        .into_iter()
        .enumerate()
        .map(|(k, v)| {
            let name = v
                .get("name")
                .and_then(|n| n.as_str())
                .map(str::to_string)
                .unwrap_or_else(|| format!("record #{}", k + 1));
            let rec = serde_json::from_value::<RecordJson>(v)
                .map_err(|e| RecordError::Schema(e.to_string()))
                .and_then(LinkRecord::try_from);
            (name, rec)
        })
        .collect())
}

/// Serialize records as a pretty-printed JSON array.
pub fn records_to_json(records: &[LinkRecord]) -> String {
    let js: Vec<RecordJson> = records.iter().map(LinkRecord::to_json).collect();
    serde_json::to_string_pretty(&js).expect("records serialize")
}

/// `p` with `t_i = 1` for every `i` in `vars`.
pub(crate) fn specialize_to_one(p: &LaurentPoly, vars: impl IntoIterator<Item = usize>) -> LaurentPoly {
    let sigma = vars
        .into_iter()
        .fold(Substitution::new(p.arity()), |s, v| s.set_one(v));
    substitute(p, &sigma).expect("specialization stays in the ring")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(s: &str, r: usize) -> LaurentPoly {
        parse_poly(s, r).unwrap()
    }

    #[test]
    fn matrix_validation() {
        let a = poly("0", 2);
        assert_eq!(
            LinkRecord::new("x", 2, vec![vec![0, 1], vec![2, 0]], a.clone()),
            Err(RecordError::MatrixNotSymmetric(2, 1))
        );
        assert_eq!(
            LinkRecord::new("x", 2, vec![vec![1, 0], vec![0, 0]], a.clone()),
            Err(RecordError::NonzeroDiagonal(1))
        );
        assert_eq!(
            LinkRecord::new("x", 2, vec![vec![0, 0]], a.clone()),
            Err(RecordError::MatrixShape { r: 2 })
        );
        assert_eq!(
            LinkRecord::new("x", 0, vec![], LaurentPoly::zero(0)),
            Err(RecordError::ComponentCount(0))
        );
    }

    #[test]
    fn sublink_validation() {
        let rec = LinkRecord::algebraically_split("x", 3, poly("0", 3)).unwrap();
        let s13 = IndexSet::from_indices([1, 3]);
        assert!(rec.clone().with_sublink(s13, poly("t1 - t3", 3)).is_ok());
        assert_eq!(
            rec.clone().with_sublink(s13, poly("t2 - 1", 3)),
            Err(RecordError::SublinkVariables { set: s13 })
        );
        assert!(matches!(
            rec.clone().with_sublink(IndexSet::full(3), poly("0", 3)),
            Err(RecordError::SublinkIndex(_))
        ));
        assert!(matches!(
            rec.with_sublink(IndexSet::singleton(1), poly("0", 3)),
            Err(RecordError::SublinkIndex(_))
        ));
    }

    #[test]
    fn knot_polys_are_normalized() {
        let rec = LinkRecord::algebraically_split("x", 2, poly("0", 2)).unwrap();
        let rec = rec
            .with_knot_polys(vec![poly("-t1 + 1 - t1^-1", 2), poly("1", 2)])
            .unwrap();
        assert_eq!(rec.knot_polys().unwrap()[0], poly("t1 - 1 + t1^-1", 2));
        let rec2 = LinkRecord::algebraically_split("x", 2, poly("0", 2)).unwrap();
        assert_eq!(
            rec2.clone().with_knot_polys(vec![poly("t2", 2), poly("1", 2)]),
            Err(RecordError::KnotPolyVariable { index: 1 })
        );
        assert!(matches!(
            rec2.with_knot_polys(vec![poly("2", 2), poly("1", 2)]),
            Err(RecordError::KnotPolyNormalization { index: 1, .. })
        ));
    }

    #[test]
    fn json_schema() {
        let text = r#"[
            {"name": "borromean", "components": 3,
             "linking_matrix": [[0,0,0],[0,0,0],[0,0,0]],
             "alexander": "(t1-1)*(t2-1)*(t3-1)",
             "sublinks": {"1,2": "0", "1,3": "0", "2,3": "0"},
             "knot_polys": ["1", "1", "1"]},
            {"name": "bad", "components": 2, "linking_matrix": [[0,0],[0,0]], "alexander": "t3"},
            {"components": 2},
            {"name": "extra", "components": 1, "linking_matrix": [[0]], "alexander": "1", "colour": 3}
        ]"#;
        let recs = parse_records(text).unwrap();
        assert_eq!(recs.len(), 4);
        let b = recs[0].1.as_ref().unwrap();
        assert_eq!(b.sublinks().len(), 3);
        assert_eq!(recs[1].0, "bad");
        assert!(matches!(recs[1].1, Err(RecordError::Polynomial { .. })));
        assert_eq!(recs[2].0, "record #3");
        assert!(matches!(recs[2].1, Err(RecordError::Schema(_))));
        assert!(matches!(recs[3].1, Err(RecordError::Schema(_))));

        let again = parse_records(&records_to_json(std::slice::from_ref(b))).unwrap();
        assert_eq!(again[0].1.as_ref().unwrap(), b);

        assert!(parse_records("{}").is_err());
    }
}
