//! Python bindings: polynomials, link records, generators and the test battery.

use pyo3::exceptions::{PyValueError, PyZeroDivisionError};
use pyo3::prelude::*;

use amphicheck::families::FamilySpec;
use amphicheck::laurent::{self, LaurentError, Sign, Substitution};
use amphicheck::linkdata::{self, records_to_json};
use amphicheck::obstruction::{self, SignAssignment, SignMode};
use amphicheck::report::{self, BatteryOptions, ReportFormat};
use amphicheck::IndexSet;

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn laurent_error(e: LaurentError) -> PyErr {
    match e {
        LaurentError::DivisionByZero => PyZeroDivisionError::new_err(e.to_string()),
        e => value_error(e),
    }
}

fn index_set(indices: Vec<usize>) -> PyResult<IndexSet> {
    if indices.iter().any(|&i| i == 0 || i > amphicheck::index_set::MAX_COMPONENTS) {
        return Err(PyValueError::new_err("component indices are 1-based and at most 63"));
    }
    Ok(IndexSet::from_indices(indices))
}

/// A Laurent polynomial with integer coefficients in t1, ..., t_arity.
#[pyclass(name = "LaurentPoly", module = "amphicheck_py", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyLaurentPoly(laurent::LaurentPoly);

#[pymethods]
impl PyLaurentPoly {
    #[new]
    #[pyo3(signature = (text, arity))]
    fn new(text: &str, arity: usize) -> PyResult<Self> {
        laurent::parse_poly(text, arity).map(Self).map_err(laurent_error)
    }

    #[getter]
    fn arity(&self) -> usize {
        self.0.arity()
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn num_terms(&self) -> usize {
        self.0.num_terms()
    }

    /// Terms as (coefficient, exponent list), highest first.
    fn terms(&self) -> Vec<(String, Vec<i64>)> {
        self.0
            .terms()
            .rev()
            .map(|(m, c)| (c.to_string(), m.dense(self.0.arity())))
            .collect()
    }

    /// Exact quotient; raises ValueError on a remainder.
    fn divide_exact(&self, divisor: &PyLaurentPoly) -> PyResult<Self> {
        laurent::divide_exact(&self.0, &divisor.0).map(Self).map_err(laurent_error)
    }

    /// The polynomial with every t_i replaced by its inverse.
    fn inverted(&self) -> Self {
        let sigma = Substitution::inversion(self.0.arity());
        Self(laurent::substitute(&self.0, &sigma).expect("inversion is total"))
    }

    /// Set t_i = 1 for the given 1-based variables.
    fn specialize_to_one(&self, variables: Vec<usize>) -> PyResult<Self> {
        let sigma = variables
            .into_iter()
            .fold(Substitution::new(self.0.arity()), |s, v| s.set_one(v));
        laurent::substitute(&self.0, &sigma).map(Self).map_err(laurent_error)
    }

    /// `(sign, exponents)` with self = sign * t^exponents * other, or None.
    fn unit_to(&self, other: &PyLaurentPoly) -> Option<(i64, Vec<i64>)> {
        let arity = self.0.arity().max(other.0.arity());
        laurent::equal_up_to_unit(&self.0, &other.0)
            .map(|u| (u.sign.to_i64(), u.monomial.dense(arity)))
    }

    /// Representative with minimal exponents 0 and positive leading coefficient.
    fn canonical(&self) -> Self {
        Self(laurent::normalize_canonical(&self.0))
    }

    fn __add__(&self, other: &PyLaurentPoly) -> Self {
        Self(&self.0 + &other.0)
    }

    fn __sub__(&self, other: &PyLaurentPoly) -> Self {
        Self(&self.0 - &other.0)
    }

    fn __mul__(&self, other: &PyLaurentPoly) -> Self {
        Self(&self.0 * &other.0)
    }

    fn __neg__(&self) -> Self {
        Self(-self.0.clone())
    }

    fn __eq__(&self, other: &PyLaurentPoly) -> bool {
        self.0 == other.0
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("LaurentPoly('{}', {})", self.0, self.0.arity())
    }
}

/// A validated link record.
#[pyclass(name = "LinkRecord", module = "amphicheck_py", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyLinkRecord(linkdata::LinkRecord);

#[pymethods]
impl PyLinkRecord {
    /// Parse a JSON array of records; raises ValueError naming the first bad one.
    #[staticmethod]
    fn parse_all(text: &str) -> PyResult<Vec<PyLinkRecord>> {
        linkdata::parse_records(text)
            .map_err(value_error)?
            .into_iter()
            .map(|(name, rec)| {
                rec.map(PyLinkRecord)
                    .map_err(|e| PyValueError::new_err(format!("{name}: {e}")))
            })
            .collect()
    }

    #[getter]
    fn name(&self) -> String {
        self.0.name().to_string()
    }

    #[getter]
    fn components(&self) -> usize {
        self.0.components()
    }

    #[getter]
    fn alexander(&self) -> PyLaurentPoly {
        PyLaurentPoly(self.0.alexander().clone())
    }

    #[getter]
    fn linking_matrix(&self) -> Vec<Vec<i64>> {
        self.0.linking_matrix().to_vec()
    }

    fn is_algebraically_split(&self) -> bool {
        linkdata::is_algebraically_split(&self.0)
    }

    /// Single-record JSON array in the record-file schema.
    fn to_json(&self) -> String {
        records_to_json(std::slice::from_ref(&self.0))
    }

    /// Run the full battery on this record; returns the record report as JSON.
    #[pyo3(signature = (sign_mode = "exists"))]
    fn check(&self, sign_mode: &str) -> PyResult<String> {
        let options = BatteryOptions {
            sign_mode: parse_sign_mode(sign_mode)?,
            ..BatteryOptions::from_env()
        };
        let rec = report::check_record(&self.0, &options);
        let report = report::Report { records: vec![rec] };
        Ok(report::emit_report(&report, ReportFormat::Json))
    }

    fn __repr__(&self) -> String {
        format!("LinkRecord('{}', r={})", self.0.name(), self.0.components())
    }
}

fn parse_sign_mode(mode: &str) -> PyResult<SignMode> {
    match mode {
        "exists" => Ok(SignMode::Exists),
        "fixed" => Ok(SignMode::Fixed(SignAssignment::trivial())),
        other => Err(PyValueError::new_err(format!(
            "sign_mode must be 'exists' or 'fixed', got {other:?}"
        ))),
    }
}

/// Generate an example record, e.g. generate("caa", ["2", "1"]).
#[pyfunction]
#[pyo3(signature = (family, params = Vec::new()))]
fn generate(family: &str, params: Vec<String>) -> PyResult<PyLinkRecord> {
    let spec = FamilySpec::parse(family, &params).map_err(value_error)?;
    spec.record().map(PyLinkRecord).map_err(value_error)
}

/// The symmetric factor f_J of a sublink polynomial, J given by 1-based indices.
#[pyfunction]
fn extract_symmetric_factor(delta: &PyLaurentPoly, indices: Vec<usize>) -> PyResult<PyLaurentPoly> {
    let set = index_set(indices)?;
    obstruction::extract_symmetric_factor(&delta.0, set)
        .map(PyLaurentPoly)
        .map_err(value_error)
}

/// Whether Δ(t^η) vanishes for every sign vector η; returns the verdict as
/// (status, message).
#[pyfunction]
fn diagonal_vanishing(delta: &PyLaurentPoly) -> (String, String) {
    let v = obstruction::check_diagonal_vanishing(&delta.0);
    (v.status.to_string(), v.message)
}

/// Run the battery on the text of a record file. Returns (exit_code, report).
#[pyfunction]
#[pyo3(signature = (text, tests = None, eps = Vec::new(), sign_mode = "exists", format = "json"))]
fn check_records(
    text: &str,
    tests: Option<&str>,
    eps: Vec<Vec<i64>>,
    sign_mode: &str,
    format: &str,
) -> PyResult<(i32, String)> {
    let mut options = BatteryOptions::from_env();
    if let Some(list) = tests {
        options = options.with_tests(list).map_err(value_error)?;
    }
    options.eps = eps
        .into_iter()
        .map(|v| {
            v.into_iter()
                .map(|s| Sign::from_i64(s).ok_or_else(|| PyValueError::new_err("eps entries must be +1 or -1")))
                .collect::<PyResult<Vec<_>>>()
        })
        .collect::<PyResult<_>>()?;
    options.sign_mode = parse_sign_mode(sign_mode)?;
    let format = match format {
        "json" => ReportFormat::Json,
        "text" => ReportFormat::Text,
        other => return Err(PyValueError::new_err(format!("unknown format {other:?}"))),
    };
    let report = report::run_battery_str(text, &options).map_err(value_error)?;
    Ok((report.exit_code(), report::emit_report(&report, format)))
}

#[pymodule]
fn amphicheck_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyLaurentPoly>()?;
    m.add_class::<PyLinkRecord>()?;
    m.add_function(wrap_pyfunction!(generate, m)?)?;
    m.add_function(wrap_pyfunction!(extract_symmetric_factor, m)?)?;
    m.add_function(wrap_pyfunction!(diagonal_vanishing, m)?)?;
    m.add_function(wrap_pyfunction!(check_records, m)?)?;
    Ok(())
}
