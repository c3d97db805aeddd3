//! The test battery over record files and its text and JSON reports.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::laurent::Sign;
use crate::linkdata::{
    check_duality, check_eps_symmetry, check_torres, is_algebraically_split, linking_screen,
    parse_records, LinkRecord, Status, Verdict, Witness,
};
use crate::obstruction::{
    build_family, check_diagonal_vanishing, check_specializations, check_square_divisibility,
    check_surgery_sums_limited, DivisibilityMode, SignMode, DEFAULT_MAX_SEARCH_R,
    DIAGONAL_VANISHING_ID, EPS_DIVISIBILITY_ID, KNOT_SPECIALIZATION_ID, SQUARE_DIVISIBILITY_ID,
    SUBLINK_SPECIALIZATION_ID, SURGERY_SUMS_ID,
};

/// Environment variable overriding the component limit of the exhaustive
/// sign search.
pub const MAX_R_ENV: &str = "AMPHICHECK_MAX_R";

const PARSE_ID: &str = "parse";
const FAMILY_ID: &str = "symmetric_factors";

/// Test groups selectable on the command line, in battery order.
pub const TEST_GROUPS: [&str; 8] = [
    "duality",
    "torres",
    "linking",
    "eps",
    "divisibility",
    "specializations",
    "surgery_sums",
    "diagonal",
];

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("record file is not a JSON array: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unknown test group {0:?}")]
    UnknownTest(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BatteryOptions {
    /// Selected groups; `None` runs everything.
    pub tests: Option<BTreeSet<String>>,
    /// Sign vectors for the ε-symmetry check.
    pub eps: Vec<Vec<Sign>>,
    pub sign_mode: SignMode,
    pub max_search_r: usize,
}

impl Default for BatteryOptions {
    fn default() -> Self {
        Self {
            tests: None,
            eps: Vec::new(),
            sign_mode: SignMode::Exists,
            max_search_r: DEFAULT_MAX_SEARCH_R,
        }
    }
}

impl BatteryOptions {
    /// Defaults, with the search limit taken from [`MAX_R_ENV`] when set.
    pub fn from_env() -> Self {
        let max_search_r = std::env::var(MAX_R_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .unwrap_or(DEFAULT_MAX_SEARCH_R);
        Self {
            max_search_r,
            ..Self::default()
        }
    }

    /// Restrict to the given comma-separated groups.
    pub fn with_tests(mut self, list: &str) -> Result<Self, ReportError> {
        let mut set = BTreeSet::new();
        for name in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            if !TEST_GROUPS.contains(&name) {
                return Err(ReportError::UnknownTest(name.to_string()));
            }
            set.insert(name.to_string());
        }
        self.tests = Some(set);
        Ok(self)
    }

    fn runs(&self, group: &str) -> bool {
        self.tests.as_ref().is_none_or(|t| t.contains(group))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum OverallStatus {
    Obstructed,
    Consistent,
    DataError,
}

impl std::fmt::Display for OverallStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            OverallStatus::Obstructed => "OBSTRUCTED",
            OverallStatus::Consistent => "CONSISTENT",
            OverallStatus::DataError => "DATA_ERROR",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecordReport {
    pub name: String,
    /// `None` when the record could not be parsed.
    pub components: Option<usize>,
    pub verdicts: Vec<Verdict>,
    pub overall_status: OverallStatus,
    /// Even component count, vanishing Alexander polynomial, nothing failed.
    pub conjecture_flag: bool,
    /// Even component count, nonzero Alexander polynomial, nothing failed:
    /// a record that would matter to the even-component vanishing question.
    pub conjecture_relevant: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Report {
    pub records: Vec<RecordReport>,
}

impl Report {
    /// 0 when every record is consistent, 1 when any is obstructed, 2 on any
    /// data error.
    pub fn exit_code(&self) -> i32 {
        let statuses: Vec<_> = self.records.iter().map(|r| r.overall_status).collect();
        if statuses.contains(&OverallStatus::DataError) {
            2
        } else if statuses.contains(&OverallStatus::Obstructed) {
            1
        } else {
            0
        }
    }
}

/// Run the battery over a JSON record file.
pub fn run_battery(path: &Path, options: &BatteryOptions) -> Result<Report, ReportError> {
    let text = std::fs::read_to_string(path).map_err(|source| ReportError::Io {
        path: path.display().to_string(),
        source,
    })?;
    run_battery_str(&text, options)
}

/// Run the battery over the text of a JSON record file.
pub fn run_battery_str(text: &str, options: &BatteryOptions) -> Result<Report, ReportError> {
    let records = parse_records(text)?
        .into_iter()
        .map(|(name, rec)| match rec {
            Ok(rec) => check_record(&rec, options),
            Err(e) => RecordReport {
                name,
                components: None,
                verdicts: vec![Verdict::data_error(PARSE_ID, e.to_string())],
                overall_status: OverallStatus::DataError,
                conjecture_flag: false,
                conjecture_relevant: false,
                notes: Vec::new(),
            },
        })
        .collect();
    Ok(Report { records })
}

/// Run every selected check on one record.
pub fn check_record(rec: &LinkRecord, options: &BatteryOptions) -> RecordReport {
    let r = rec.components();
    let delta = rec.alexander();
    let mut verdicts = Vec::new();
    let mut notes = Vec::new();
    let mut data_error = false;

    if options.runs("duality") {
        let v = check_duality(rec);
        data_error |= v.is_fail();
        verdicts.push(v);
    }
    if options.runs("torres") {
        for k in 1..=r {
            let mut v = check_torres(rec, k);
            if v.status == Status::DataError {
                // missing sublink data only limits what can be validated
                v.status = Status::NotApplicable;
            }
            data_error |= v.is_fail();
            verdicts.push(v);
        }
    }
    if options.runs("linking") {
        verdicts.extend(linking_screen(rec));
    }
    if options.runs("eps") {
        for eps in &options.eps {
            verdicts.push(check_eps_symmetry(rec, eps));
        }
    }
    if options.runs("divisibility") {
        for (id, mode) in [
            (SQUARE_DIVISIBILITY_ID, DivisibilityMode::Amphicheiral),
            (EPS_DIVISIBILITY_ID, DivisibilityMode::EpsAmphicheiral),
        ] {
            verdicts.push(if !is_algebraically_split(rec) {
                Verdict::not_applicable(id, "link is not algebraically split")
            } else {
                check_square_divisibility(delta, mode)
            });
        }
    }

    let wants_family = ["specializations", "surgery_sums"]
        .iter()
        .any(|g| options.runs(g));
    let family = if !wants_family {
        None
    } else if !is_algebraically_split(rec) {
        Some(Err("link is not algebraically split".to_string()))
    } else {
        match build_family(rec) {
            Ok(f) => Some(Ok(f)),
            Err(e) => {
                data_error = true;
                verdicts.push(Verdict::data_error(FAMILY_ID, e.to_string()));
                Some(Err(format!("symmetric factors unavailable: {e}")))
            }
        }
    };
    if let Some(Ok(f)) = &family {
        if f.knot_polys_assumed() {
            notes.push("component knot polynomials not supplied; taken to be 1".to_string());
        }
    }
    if options.runs("specializations") {
        match &family {
            Some(Ok(f)) => verdicts.extend(check_specializations(f)),
            Some(Err(reason)) => {
                verdicts.push(Verdict::not_applicable(KNOT_SPECIALIZATION_ID, reason.clone()));
                verdicts.push(Verdict::not_applicable(SUBLINK_SPECIALIZATION_ID, reason.clone()));
            }
            None => {}
        }
    }
    if options.runs("surgery_sums") {
        verdicts.push(match &family {
            Some(Ok(f)) => check_surgery_sums_limited(f, &options.sign_mode, options.max_search_r),
            Some(Err(reason)) => Verdict::not_applicable(SURGERY_SUMS_ID, reason.clone()),
            None => unreachable!("family is built when surgery sums run"),
        });
    }
    if options.runs("diagonal") {
        verdicts.push(if !is_algebraically_split(rec) {
            Verdict::not_applicable(DIAGONAL_VANISHING_ID, "link is not algebraically split")
        } else {
            check_diagonal_vanishing(delta)
        });
    }

    let any_fail = verdicts.iter().any(Verdict::is_fail);
    let overall_status = if data_error {
        OverallStatus::DataError
    } else if any_fail {
        OverallStatus::Obstructed
    } else {
        OverallStatus::Consistent
    };
    let consistent = overall_status == OverallStatus::Consistent;
    let even = r % 2 == 0;
    let conjecture_flag = consistent && even && delta.is_zero();
    let conjecture_relevant = consistent && even && !delta.is_zero() && is_algebraically_split(rec);
    if conjecture_relevant {
        notes.push(
            "even component count with nonzero Alexander polynomial and no obstruction found"
                .to_string(),
        );
    }
    if verdicts.iter().any(|v| v.is_fail() && v.test_id == SURGERY_SUMS_ID)
        && matches!(options.sign_mode, SignMode::Fixed(_))
    {
        notes.push("surgery sums failed under fixed signs; the sign-free search may differ".to_string());
    }

    RecordReport {
        name: rec.name().to_string(),
        components: Some(r),
        verdicts,
        overall_status,
        conjecture_flag,
        conjecture_relevant,
        notes,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Json,
}

/// Render a report. JSON is an array of record reports and parses back to
/// the same value.
pub fn emit_report(report: &Report, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report serializes");
            s.push('\n');
            s
        }
        ReportFormat::Text => emit_text(report),
    }
}

fn emit_text(report: &Report) -> String {
    let mut out = String::new();
    for rec in &report.records {
        let r = rec.components.map_or("?".to_string(), |r| r.to_string());
        let _ = writeln!(out, "{} (r = {}): {}", rec.name, r, rec.overall_status);
        for v in &rec.verdicts {
            let _ = write!(out, "  {:<26} {}", v.test_id, v.status);
            if !v.message.is_empty() {
                let _ = write!(out, "  {}", v.message);
            }
            out.push('\n');
            if let (true, Some(w)) = (v.is_fail(), &v.witness) {
                let _ = writeln!(out, "      witness: {}", describe_witness(w));
            }
        }
        if rec.conjecture_flag {
            let _ = writeln!(out, "  conjecture_flag: even component count with zero Alexander polynomial");
        }
        for note in &rec.notes {
            let _ = writeln!(out, "  note: {note}");
        }
    }
    let n = report.records.len();
    let _ = writeln!(out, "{n} record{}", if n == 1 { "" } else { "s" });
    out
}

fn describe_witness(w: &Witness) -> String {
    fn signs<K: std::fmt::Display>(m: impl IntoIterator<Item = (K, Sign)>) -> String {
        m.into_iter().map(|(k, s)| format!("{k}:{s}")).collect::<Vec<_>>().join(" ")
    }
    match w {
        Witness::DualityExponents { sign, exponents } => {
            format!("unit sign {sign}, exponents {exponents:?}")
        }
        Witness::UnitMismatch { left, right } => format!("{left}  vs  {right}"),
        Witness::Torres { deleted, left, right } => {
            format!("deleting K{deleted}: {left}  vs  {right}")
        }
        Witness::LinkingCycle {
            components,
            linking_numbers,
        } => format!("cycle {components:?} with linking numbers {linking_numbers:?}"),
        Witness::LinkingNumber { components, value } => {
            format!("lk(K{}, K{}) = {value}", components[0], components[1])
        }
        Witness::Frame {
            subset,
            u,
            s_even,
            s_odd,
            signs: s,
        } => {
            let mut text = format!(
                "I = {{{subset}}}, u = ({}), S_even = {s_even}, S_odd = {s_odd}",
                signs(u.iter().map(|(k, v)| (k, *v)))
            );
            let nontrivial: Vec<_> = s.iter().filter(|(_, v)| !v.is_plus()).collect();
            if !nontrivial.is_empty() {
                let _ = write!(
                    text,
                    ", signs ({})",
                    signs(nontrivial.into_iter().map(|(k, v)| (format!("{{{k}}}"), *v)))
                );
            }
            text
        }
        Witness::Specializations { offenders } => offenders
            .iter()
            .map(|(i, p)| format!("i = {i}: {p}"))
            .collect::<Vec<_>>()
            .join("; "),
        Witness::SignVector { eta, value } => {
            let eta: Vec<String> = eta.iter().map(Sign::to_string).collect();
            format!("eta = ({}): {value}", eta.join(","))
        }
        Witness::Divisibility {
            factor,
            quotient_so_far,
        } => format!("{factor} does not divide {quotient_so_far}"),
        Witness::Polynomial { label, poly } => format!("{label} = {poly}"),
    }
}
