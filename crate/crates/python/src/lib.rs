//! Python bindings: `import ztl`.
//!
//! High-precision values cross the boundary as decimal strings; inputs accept
//! either a float or a decimal string.

use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use ztl_core::hp::format::{format_real, parse_real};
use ztl_core::identities::{self, Identity, IdentityParams, CSV_HEADER, REPORT_DIGITS};
use ztl_core::psi::{self, PsiRequest, SeriesRequest, Strategy};
use ztl_core::selftest::{run_suites, DEFAULT_SEED};
use ztl_core::{with_precision, Error, HpReal, PrecisionContext};

create_exception!(ztl, ZtlError, PyException, "Base class for numerical failures.");
create_exception!(ztl, NonConvergenceError, ZtlError, "A series, quadrature or refinement did not converge.");
create_exception!(ztl, PoleError, ZtlError, "Evaluation at a pole.");

fn to_py(e: Error) -> PyErr {
    match e {
        Error::NonConvergence { .. } => NonConvergenceError::new_err(e.to_string()),
        Error::Pole { .. } => PoleError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

/// A float or a decimal string.
#[derive(FromPyObject)]
enum Number {
    Text(String),
    Float(f64),
}

impl Number {
    fn to_hp(&self, ctx: &PrecisionContext) -> PyResult<HpReal> {
        match self {
            Number::Text(s) => parse_real(s, ctx.bits()).map_err(to_py),
            Number::Float(f) if f.is_finite() => Ok(ctx.real(*f)),
            Number::Float(f) => Err(PyValueError::new_err(format!("expected a finite number, got {f}"))),
        }
    }
}

fn context(digits: u32) -> PyResult<PrecisionContext> {
    with_precision(digits).map_err(to_py)
}

/// Both sides of one identity at one parameter point.
#[pyclass(frozen, module = "ztl")]
struct VerificationReport {
    inner: identities::VerificationReport,
}

#[pymethods]
impl VerificationReport {
    #[getter]
    fn identity(&self) -> &'static str {
        self.inner.identity.name()
    }

    #[getter]
    fn k(&self) -> u32 {
        self.inner.k
    }

    #[getter]
    fn m(&self) -> i32 {
        self.inner.m
    }

    #[getter]
    fn theta(&self) -> String {
        format_real(&self.inner.theta, REPORT_DIGITS)
    }

    #[getter]
    fn lhs(&self) -> String {
        format_real(&self.inner.lhs, self.inner.digits as usize)
    }

    #[getter]
    fn rhs(&self) -> String {
        format_real(&self.inner.rhs, self.inner.digits as usize)
    }

    #[getter]
    fn abs_residual(&self) -> f64 {
        self.inner.abs_residual.to_f64()
    }

    #[getter]
    fn rel_residual(&self) -> f64 {
        self.inner.rel_residual.to_f64()
    }

    #[getter]
    fn tolerance(&self) -> f64 {
        self.inner.tolerance.to_f64()
    }

    #[getter]
    fn passed(&self) -> bool {
        self.inner.passed
    }

    #[getter]
    fn digits(&self) -> u32 {
        self.inner.digits
    }

    #[getter]
    fn elapsed(&self) -> f64 {
        self.inner.elapsed
    }

    /// Named intermediate terms as decimal strings.
    #[getter]
    fn terms<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let d = PyDict::new(py);
        for (name, value) in &self.inner.terms {
            d.set_item(name, format_real(value, self.inner.digits as usize))?;
        }
        Ok(d)
    }

    #[pyo3(signature = (timing = false))]
    fn csv_row(&self, timing: bool) -> String {
        self.inner.csv_row(timing)
    }

    #[pyo3(signature = (timing = false))]
    fn to_json(&self, timing: bool) -> String {
        self.inner.to_json(timing)
    }

    fn __bool__(&self) -> bool {
        self.inner.passed
    }

    fn __repr__(&self) -> String {
        format!(
            "VerificationReport(identity={:?}, k={}, m={}, theta={}, rel_residual={:e}, passed={})",
            self.inner.identity.name(),
            self.inner.k,
            self.inner.m,
            format_real(&self.inner.theta, 6),
            self.inner.rel_residual.to_f64(),
            if self.inner.passed { "True" } else { "False" }
        )
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }
}

/// An evaluated `Psi_{rho,k}(x)`.
#[pyclass(frozen, module = "ztl")]
struct PsiValue {
    #[pyo3(get)]
    value: String,
    #[pyo3(get)]
    error_estimate: f64,
    #[pyo3(get)]
    strategy: &'static str,
    #[pyo3(get)]
    terms: Option<usize>,
    trace: String,
}

#[pymethods]
impl PsiValue {
    /// The quadrature refinement trace as a JSON string; `"[]"` for summation strategies.
    fn trace_json(&self) -> String {
        self.trace.clone()
    }

    fn __float__(&self) -> f64 {
        self.value.parse().unwrap_or(f64::NAN)
    }

    fn __repr__(&self) -> String {
        format!("PsiValue(value={}, strategy={:?})", self.value, self.strategy)
    }
}

/// Verifies `identity` at `(k, m, theta)`; `alpha` replaces `theta` when given.
#[pyfunction]
#[pyo3(signature = (identity, k = 1, m = 1, theta = None, alpha = None, digits = 50))]
fn verify(
    py: Python<'_>,
    identity: &str,
    k: u32,
    m: i32,
    theta: Option<Number>,
    alpha: Option<Number>,
    digits: u32,
) -> PyResult<VerificationReport> {
    let identity: Identity = identity.parse().map_err(to_py)?;
    let ctx = context(digits)?;
    let params = match (theta, alpha) {
        (Some(_), Some(_)) => return Err(PyValueError::new_err("give either theta or alpha, not both")),
        (_, Some(a)) => IdentityParams::from_alpha(k, m, &a.to_hp(&ctx)?, &ctx).map_err(to_py)?,
        (t, None) => IdentityParams::new(k, m, t.map(|t| t.to_hp(&ctx)).transpose()?.unwrap_or_else(|| ctx.zero())),
    };
    let inner = py.detach(|| identities::verify(identity, &params, &ctx)).map_err(to_py)?;
    Ok(VerificationReport { inner })
}

/// Evaluates `Psi_{rho,k}(x)`.
#[pyfunction(name = "psi")]
#[pyo3(signature = (rho, k, x, strategy = "auto", digits = 50))]
fn psi_value(py: Python<'_>, rho: Number, k: u32, x: Number, strategy: &str, digits: u32) -> PyResult<PsiValue> {
    let ctx = context(digits)?;
    let strategy: Strategy = strategy.parse().map_err(to_py)?;
    let req = PsiRequest::new(rho.to_hp(&ctx)?, k, x.to_hp(&ctx)?).with_strategy(strategy);
    let v = py.detach(|| psi::psi(&req, &ctx)).map_err(to_py)?;
    Ok(PsiValue {
        value: format_real(&v.value, digits as usize),
        error_estimate: v.error_estimate.to_f64(),
        strategy: v.strategy.name(),
        terms: v.terms,
        trace: serde_json::to_string(&v.trace).expect("trace serializes"),
    })
}

/// `L_m(rho) = sum_n d_k(n) n^(-2m-1) Psi_{rho,k}(n)` as a decimal string.
#[pyfunction]
#[pyo3(signature = (rho, k, m, digits = 50))]
fn series_l(py: Python<'_>, rho: Number, k: u32, m: i32, digits: u32) -> PyResult<String> {
    let ctx = context(digits)?;
    let req = SeriesRequest::new(rho.to_hp(&ctx)?, k, m);
    let v = py.detach(|| psi::series_l(&req, &ctx)).map_err(to_py)?;
    Ok(format_real(&v.value, digits as usize))
}

/// Runs the property suites; returns one dict per suite.
#[pyfunction(name = "selftest")]
#[pyo3(signature = (filter = None, digits = 40, seed = DEFAULT_SEED))]
fn run_selftest<'py>(py: Python<'py>, filter: Option<&str>, digits: u32, seed: u64) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let ctx = context(digits)?;
    let reports = py.detach(|| run_suites(&ctx, filter, seed));
    reports
        .iter()
        .map(|r| {
            let d = PyDict::new(py);
            d.set_item("name", r.name)?;
            d.set_item("module", r.module)?;
            d.set_item("cases", r.cases)?;
            d.set_item("passed", r.passed())?;
            d.set_item("failures", r.failures.clone())?;
            d.set_item("error", r.error.clone())?;
            Ok(d)
        })
        .collect()
}

#[pymodule]
fn ztl(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("ZtlError", m.py().get_type::<ZtlError>())?;
    m.add("NonConvergenceError", m.py().get_type::<NonConvergenceError>())?;
    m.add("PoleError", m.py().get_type::<PoleError>())?;
    m.add("IDENTITIES", Identity::ALL.iter().map(|i| i.name()).collect::<Vec<_>>())?;
    m.add("CSV_HEADER", CSV_HEADER)?;
    m.add_class::<VerificationReport>()?;
    m.add_class::<PsiValue>()?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(psi_value, m)?)?;
    m.add_function(wrap_pyfunction!(series_l, m)?)?;
    m.add_function(wrap_pyfunction!(run_selftest, m)?)?;
    Ok(())
}
