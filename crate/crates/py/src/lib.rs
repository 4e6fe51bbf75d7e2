//! Python bindings. Result records (verdicts, certificates, reports) are
//! returned as plain dicts in the same JSON schema the CLI emits.

use std::collections::BTreeSet;

use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyComplex, PyString};
use serde::Serialize;

use specrat::arith::{exp_sum_value, ExpSumValue};
use specrat::flags::{self, ThresholdMode};
use specrat::{oracle, pair, spectrum};

create_exception!(pyspecrat, SpecratError, PyValueError);
create_exception!(pyspecrat, UnsupportedModeError, SpecratError);

fn err(e: specrat::Error) -> PyErr {
    match e {
        specrat::Error::UnsupportedMode(_) => UnsupportedModeError::new_err(e.to_string()),
        _ => SpecratError::new_err(e.to_string()),
    }
}

fn to_py<'py, T: Serialize>(py: Python<'py>, v: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(v).map_err(|e| SpecratError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

fn json_text(obj: &Bound<'_, PyAny>) -> PyResult<String> {
    if let Ok(s) = obj.cast::<PyString>() {
        return Ok(s.to_str()?.to_owned());
    }
    let py = obj.py();
    py.import("json")?.call_method1("dumps", (obj,))?.extract()
}

fn threshold(mode: &str) -> PyResult<ThresholdMode> {
    match mode {
        "as-stated" => Ok(ThresholdMode::AsStated),
        "conservative" => Ok(ThresholdMode::Conservative),
        other => Err(SpecratError::new_err(format!("unknown threshold mode {other:?}"))),
    }
}

#[pyclass(name = "Cluster", frozen, from_py_object, module = "pyspecrat")]
#[derive(Clone)]
struct PyCluster(specrat::Cluster);

#[pymethods]
impl PyCluster {
    #[new]
    fn new(elements: Vec<i64>) -> PyResult<Self> {
        specrat::Cluster::new(&elements).map(PyCluster).map_err(err)
    }

    #[staticmethod]
    fn from_json(doc: &Bound<'_, PyAny>) -> PyResult<Self> {
        specrat::json::parse(&json_text(doc)?).map(PyCluster).map_err(err)
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.0).map_err(|e| SpecratError::new_err(e.to_string()))
    }

    #[getter]
    fn elements(&self) -> Vec<i64> {
        self.0.elements().to_vec()
    }

    #[getter]
    fn d(&self) -> usize {
        self.0.d()
    }

    fn difference_set(&self) -> Vec<i64> {
        self.0.difference_set().values().to_vec()
    }

    fn autocorrelation(&self, k: i64) -> u64 {
        self.0.autocorrelation(k)
    }

    /// Rational zeros of the mask polynomial in (0, 1) as (p, q) pairs.
    fn rational_mask_zeros(&self) -> Vec<(String, String)> {
        self.0
            .rational_mask_zeros()
            .iter()
            .map(|r| (r.numer().to_string(), r.denom().to_string()))
            .collect()
    }

    fn laba_rationality(&self) -> bool {
        self.0.laba_rationality()
    }

    fn __len__(&self) -> usize {
        self.0.d()
    }

    fn __repr__(&self) -> String {
        format!("Cluster({:?})", self.0.elements())
    }
}

#[pyclass(name = "Gamma", frozen, from_py_object, module = "pyspecrat")]
#[derive(Clone)]
struct PyGamma(specrat::Gamma);

#[pymethods]
impl PyGamma {
    /// Exact Γ from `(num, den)` pairs.
    #[new]
    fn new(fractions: Vec<(i64, i64)>) -> PyResult<Self> {
        specrat::Gamma::from_fractions(&fractions).map(PyGamma).map_err(err)
    }

    #[staticmethod]
    fn float(entries: Vec<f64>) -> PyResult<Self> {
        specrat::Gamma::float(entries).map(PyGamma).map_err(err)
    }

    #[staticmethod]
    fn from_json(doc: &Bound<'_, PyAny>) -> PyResult<Self> {
        specrat::json::parse(&json_text(doc)?).map(PyGamma).map_err(err)
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.0).map_err(|e| SpecratError::new_err(e.to_string()))
    }

    #[getter]
    fn mode(&self) -> String {
        self.0.mode().to_string()
    }

    /// `δ̂_Γ(k)` rendered exactly (cyclotomic or symbolic) or as a float.
    fn exp_sum(&self, k: i64) -> PyResult<String> {
        Ok(exp_sum_value(&self.0, k).map_err(err)?.to_string())
    }

    fn exp_sum_complex<'py>(&self, py: Python<'py>, k: i64) -> PyResult<Bound<'py, PyComplex>> {
        let v = exp_sum_value(&self.0, k).map_err(err)?;
        if let ExpSumValue::Symbolic(_) = v {
            return Err(UnsupportedModeError::new_err("symbolic values have no numeric embedding"));
        }
        let z = v.to_complex().expect("non-symbolic value");
        Ok(PyComplex::from_doubles(py, z.re, z.im))
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __repr__(&self) -> PyResult<String> {
        Ok(format!("Gamma({})", self.to_json()?))
    }
}

#[pyclass(name = "Flag", frozen, from_py_object, module = "pyspecrat")]
#[derive(Clone)]
struct PyFlag(specrat::Flag);

#[pymethods]
impl PyFlag {
    #[new]
    #[pyo3(signature = (m, r, n, s))]
    fn new(m: i64, r: i64, n: i64, s: i64) -> PyResult<Self> {
        specrat::Flag::new(m, r, n, s).map(PyFlag).map_err(err)
    }

    #[getter]
    fn m(&self) -> i64 {
        self.0.m()
    }

    #[getter]
    fn r(&self) -> i64 {
        self.0.r()
    }

    #[getter(N)]
    fn stride(&self) -> i64 {
        self.0.stride()
    }

    #[getter]
    fn s(&self) -> i64 {
        self.0.s()
    }

    fn members(&self) -> Vec<i64> {
        self.0.members()
    }

    fn __contains__(&self, x: i64) -> bool {
        self.0.contains(x)
    }

    fn __eq__(&self, other: &PyFlag) -> bool {
        self.0 == other.0
    }

    fn __repr__(&self) -> String {
        format!("Flag(m={}, r={}, N={}, s={})", self.0.m(), self.0.r(), self.0.stride(), self.0.s())
    }
}

#[pyfunction]
fn verify_pair<'py>(py: Python<'py>, cluster: &PyCluster, gamma: &PyGamma) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &pair::verify_pair(&cluster.0, &gamma.0).map_err(err)?)
}

#[pyfunction]
fn zero_report<'py>(py: Python<'py>, gamma: &PyGamma, lo: i64, hi: i64) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &spectrum::zero_report(&gamma.0, (lo, hi)).map_err(err)?)
}

#[pyfunction]
fn rational_classes<'py>(py: Python<'py>, gamma: &PyGamma) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &spectrum::rational_classes(&gamma.0).map_err(err)?)
}

#[pyfunction]
#[pyo3(signature = (set, r, s, n_max = None))]
fn find_flags(py: Python<'_>, set: Vec<i64>, r: i64, s: i64, n_max: Option<i64>) -> Vec<PyFlag> {
    let set: BTreeSet<i64> = set.into_iter().collect();
    py.detach(|| flags::find_flags(&set, r, s, None, n_max))
        .into_iter()
        .map(PyFlag)
        .collect()
}

#[pyfunction]
fn theorem6_verify_on<'py>(py: Python<'py>, gamma: &PyGamma, flag: &PyFlag) -> PyResult<Bound<'py, PyAny>> {
    let (ok, trace) = flags::theorem6_verify_on(&gamma.0, &flag.0).map_err(err)?;
    to_py(py, &serde_json::json!({ "holds": ok, "trace": trace }))
}

#[pyfunction]
#[pyo3(signature = (gamma, flag, threshold_mode = "as-stated"))]
fn theorem4_verify_on<'py>(
    py: Python<'py>,
    gamma: &PyGamma,
    flag: &PyFlag,
    threshold_mode: &str,
) -> PyResult<Bound<'py, PyAny>> {
    let cert = flags::theorem4_verify_on(&gamma.0, &flag.0, threshold(threshold_mode)?).map_err(err)?;
    to_py(py, &cert)
}

#[pyfunction]
fn theorem3_certificate<'py>(py: Python<'py>, cluster: &PyCluster, gamma: &PyGamma) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &pair::theorem3_certificate(&cluster.0, &gamma.0).map_err(err)?)
}

/// Certificate dict, or `None` when `A - A` holds no applicable flag.
#[pyfunction]
#[pyo3(signature = (cluster, threshold_mode = "as-stated"))]
fn theorem7_pipeline<'py>(
    py: Python<'py>,
    cluster: &PyCluster,
    threshold_mode: &str,
) -> PyResult<Option<Bound<'py, PyAny>>> {
    let mode = threshold(threshold_mode)?;
    let c = cluster.0.clone();
    let cert = py.detach(move || flags::theorem7_pipeline(&c, None, mode)).map_err(err)?;
    cert.map(|c| to_py(py, &c)).transpose()
}

#[pyfunction]
#[pyo3(signature = (cluster, den_max = None, threshold_mode = "as-stated"))]
fn decide_spectrality<'py>(
    py: Python<'py>,
    cluster: &PyCluster,
    den_max: Option<u64>,
    threshold_mode: &str,
) -> PyResult<Bound<'py, PyAny>> {
    let mode = threshold(threshold_mode)?;
    let c = cluster.0.clone();
    let v = py.detach(move || flags::decide_spectrality(&c, den_max, mode)).map_err(err)?;
    to_py(py, &v)
}

/// Re-validates a certificate or spectrality verdict (dict or JSON text).
#[pyfunction]
fn check_certificate(py: Python<'_>, document: &Bound<'_, PyAny>) -> PyResult<bool> {
    let text = json_text(document)?;
    let out = py.detach(move || specrat::cli::run(["check-certificate", text.as_str()]));
    match out.exit_code {
        0 => Ok(true),
        _ => Err(SpecratError::new_err(out.stderr.trim().to_string())),
    }
}

#[pyfunction]
fn enumerate_rational_spectra<'py>(py: Python<'py>, cluster: &PyCluster, den_max: u64) -> PyResult<Bound<'py, PyAny>> {
    let c = cluster.0.clone();
    let res = py.detach(move || oracle::enumerate_rational_spectra(&c, den_max)).map_err(err)?;
    to_py(py, &res)
}

#[pyfunction]
#[pyo3(signature = (gamma, lo, hi, tol = 1e-9))]
fn numeric_zero_scan(gamma: &PyGamma, lo: i64, hi: i64, tol: f64) -> PyResult<Vec<i64>> {
    oracle::numeric_zero_scan(&gamma.0, (lo, hi), tol).map_err(err)
}

#[pyfunction]
fn tiling_complements_mod(cluster: &PyCluster, n: u64) -> PyResult<Vec<Vec<u64>>> {
    oracle::tiling_complements_mod(&cluster.0, n).map_err(err)
}

/// Runs the command-line front end; returns `(exit_code, stdout, stderr)`.
#[pyfunction]
fn run_cli(py: Python<'_>, args: Vec<String>) -> (i32, String, String) {
    let r = py.detach(move || specrat::cli::run(args));
    (r.exit_code, r.stdout, r.stderr)
}

#[pymodule]
fn pyspecrat(m: &Bound<'_, PyModule>) -> PyResult<()> {
    let py = m.py();
    m.add("SpecratError", py.get_type::<SpecratError>())?;
    m.add("UnsupportedModeError", py.get_type::<UnsupportedModeError>())?;
    m.add_class::<PyCluster>()?;
    m.add_class::<PyGamma>()?;
    m.add_class::<PyFlag>()?;
    m.add_function(wrap_pyfunction!(verify_pair, m)?)?;
    m.add_function(wrap_pyfunction!(zero_report, m)?)?;
    m.add_function(wrap_pyfunction!(rational_classes, m)?)?;
    m.add_function(wrap_pyfunction!(find_flags, m)?)?;
    m.add_function(wrap_pyfunction!(theorem6_verify_on, m)?)?;
    m.add_function(wrap_pyfunction!(theorem4_verify_on, m)?)?;
    m.add_function(wrap_pyfunction!(theorem3_certificate, m)?)?;
    m.add_function(wrap_pyfunction!(theorem7_pipeline, m)?)?;
    m.add_function(wrap_pyfunction!(decide_spectrality, m)?)?;
    m.add_function(wrap_pyfunction!(check_certificate, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_rational_spectra, m)?)?;
    m.add_function(wrap_pyfunction!(numeric_zero_scan, m)?)?;
    m.add_function(wrap_pyfunction!(tiling_complements_mod, m)?)?;
    m.add_function(wrap_pyfunction!(run_cli, m)?)?;
    Ok(())
}
