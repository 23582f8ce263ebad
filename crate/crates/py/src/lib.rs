//! Python bindings. Matrices cross the boundary as nested lists of
//! complex numbers, reports as dicts.

use krein_csym::checks;
use krein_csym::expr::ExprWeyl;
use krein_csym::extensions::{self, ExtParams as CoreParams};
use krein_csym::krein::{self, CsymParams};
use krein_csym::model::{self, PointInteraction};
use krein_csym::oracle::{self, OracleConfig, OuterBoundary};
use krein_csym::weyl::{self, ComplexGrid, OpenInterval, SpectrumOptions, SpectrumReport, WeylFn};
use krein_csym::{CMat2, Complex64, Error};
use pyo3::exceptions::{PyArithmeticError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn to_py_err(e: Error) -> PyErr {
    match e {
        Error::NotStable { .. } | Error::Infeasible { .. } | Error::NotPositive { .. } | Error::Singular(_) => {
            PyArithmeticError::new_err(e.to_string())
        }
        _ => PyValueError::new_err(e.to_string()),
    }
}

type Mat = [[Complex64; 2]; 2];

fn mat(m: CMat2) -> Mat {
    [[m.a11(), m.a12()], [m.a21(), m.a22()]]
}

fn from_mat(m: Mat) -> CMat2 {
    CMat2::new(m[0][0], m[0][1], m[1][0], m[1][1])
}

/// Parameters `(zeta, phi, xi, omega)` of a boundary matrix.
#[pyclass(frozen, eq, from_py_object, name = "ExtParams")]
#[derive(Clone, Copy, PartialEq)]
pub struct PyExtParams(CoreParams);

#[pymethods]
impl PyExtParams {
    #[new]
    #[pyo3(signature = (zeta, phi, xi = 0.0, omega = 0.0))]
    fn new(zeta: f64, phi: f64, xi: f64, omega: f64) -> PyResult<Self> {
        CoreParams::new(zeta, phi, xi, omega).map(PyExtParams).map_err(to_py_err)
    }

    #[getter]
    fn zeta(&self) -> f64 {
        self.0.zeta
    }

    #[getter]
    fn phi(&self) -> f64 {
        self.0.phi
    }

    #[getter]
    fn xi(&self) -> f64 {
        self.0.xi
    }

    #[getter]
    fn omega(&self) -> f64 {
        self.0.omega
    }

    fn with_omega(&self, omega: f64) -> Self {
        PyExtParams(self.0.with_omega(omega))
    }

    fn __repr__(&self) -> String {
        let p = self.0;
        format!("ExtParams(zeta={}, phi={}, xi={}, omega={})", p.zeta, p.phi, p.xi, p.omega)
    }
}

#[pyfunction]
fn build_c(chi: f64, omega: f64) -> PyResult<Mat> {
    Ok(mat(krein::build_c(CsymParams::new(chi, omega).map_err(to_py_err)?)))
}

#[pyfunction]
fn build_r_omega(omega: f64) -> Mat {
    mat(krein::build_r_omega(omega))
}

#[pyfunction]
fn transition_from_c(c: Mat) -> PyResult<Mat> {
    krein::transition_from_c(&from_mat(c), &krein::fundamental_symmetry()).map(mat).map_err(to_py_err)
}

#[pyfunction]
fn limit_transition(omega: f64, chi: f64) -> f64 {
    krein::limit_transition(omega, chi)
}

#[pyfunction]
fn cayley_theta(m: Complex64) -> PyResult<Complex64> {
    krein::cayley_theta(m).map_err(to_py_err)
}

#[pyfunction]
fn build_k(p: PyExtParams) -> Mat {
    mat(extensions::build_k(&p.0))
}

#[pyfunction]
#[pyo3(signature = (p, tol = extensions::EXACT_TOL))]
fn classify<'py>(py: Python<'py>, p: PyExtParams, tol: f64) -> PyResult<Bound<'py, PyDict>> {
    let c = extensions::classify_with_tol(&p.0, tol);
    let d = PyDict::new(py);
    d.set_item("upsilon", c.in_upsilon)?;
    d.set_item("self_adjoint", c.is_self_adjoint)?;
    d.set_item("stable", c.is_stable)?;
    d.set_item("chi", c.chi)?;
    Ok(d)
}

/// `(k_plus, k_minus, t)`; `t` is `None` for unstable parameters.
#[pyfunction]
#[pyo3(signature = (p, tol = extensions::EXACT_TOL))]
fn k_eigenvalues(p: PyExtParams, tol: f64) -> (Complex64, Complex64, Option<f64>) {
    let e = extensions::k_eigenvalues_with_tol(&p.0, tol);
    (e.k_plus, e.k_minus, e.t)
}

#[pyfunction]
#[pyo3(signature = (p, tol = extensions::EXACT_TOL))]
fn csym_of_extension(p: PyExtParams, tol: f64) -> PyResult<Mat> {
    extensions::csym_of_extension_with_tol(&p.0, tol).map(mat).map_err(to_py_err)
}

fn report_dict<'py>(py: Python<'py>, rep: &SpectrumReport) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    let eig: Vec<(f64, u8, String, f64)> = rep
        .eigenvalues
        .iter()
        .map(|e| {
            let ch = match e.channel {
                weyl::Channel::Plus => "plus",
                weyl::Channel::Minus => "minus",
                weyl::Channel::Both => "both",
            };
            (e.r, e.mult, ch.to_string(), e.residual)
        })
        .collect();
    d.set_item("eigenvalues", eig)?;
    d.set_item("values", rep.values_with_multiplicity())?;
    d.set_item("interval", rep.interval)?;
    d.set_item("method", match rep.method {
        weyl::Method::ClosedForm => "closed_form",
        weyl::Method::Bisection => "bisection",
    })?;
    Ok(d)
}

#[pyfunction]
#[pyo3(signature = (p, tol = extensions::EXACT_TOL))]
fn closed_form_eigenvalues<'py>(py: Python<'py>, p: PyExtParams, tol: f64) -> PyResult<Bound<'py, PyDict>> {
    let rep = model::closed_form_eigenvalues_with_tol(&p.0, tol).map_err(to_py_err)?;
    report_dict(py, &rep)
}

/// Channel solver for the point-interaction model, or for a user
/// expression in `mu` when `expr` is given (then `interval` is required).
#[pyfunction]
#[pyo3(signature = (p, interval = None, expr = None, tol = extensions::EXACT_TOL))]
fn find_discrete_spectrum<'py>(
    py: Python<'py>,
    p: PyExtParams,
    interval: Option<(f64, f64)>,
    expr: Option<&str>,
    tol: f64,
) -> PyResult<Bound<'py, PyDict>> {
    let opts = SpectrumOptions { interval, exact_tol: tol, ..Default::default() };
    let rep = match expr {
        None => weyl::find_discrete_spectrum(&PointInteraction, &p.0, &opts),
        Some(src) => {
            let (lo, hi) = interval.ok_or_else(|| PyValueError::new_err("an expression needs an interval"))?;
            let m = ExprWeyl::new(src, vec![OpenInterval { lo, hi }]).map_err(to_py_err)?;
            weyl::find_discrete_spectrum(&m as &dyn WeylFn, &p.0, &opts)
        }
    }
    .map_err(to_py_err)?;
    report_dict(py, &rep)
}

#[pyfunction]
fn m_free(mu: Complex64) -> Complex64 {
    model::m_free(mu)
}

#[pyfunction]
#[pyo3(signature = (p, re = (-4.0, 4.0), im = (-4.0, 4.0), n = 81))]
fn nonreal_spectrum_probe(p: PyExtParams, re: (f64, f64), im: (f64, f64), n: usize) -> Vec<Complex64> {
    let grid = ComplexGrid { re, im, n_re: n, n_im: n };
    weyl::nonreal_spectrum_probe(&PointInteraction, &p.0, &grid)
}

/// Minimum eigenvalue of the Nevanlinna kernel Gram matrix of `m(μ) = 2i√μ`.
#[pyfunction]
fn kernel_gram_min_eig(points: Vec<Complex64>) -> PyResult<f64> {
    weyl::kernel_gram(&PointInteraction, &points).map(|g| g.min_eig).map_err(to_py_err)
}

#[pyfunction]
#[allow(clippy::too_many_arguments)]
#[pyo3(signature = (p, l = 20.0, n = 4000, scan = (-10.0, -1e-6), step = 1e-3, tol = 1e-12, dirichlet = false))]
fn oracle_scan<'py>(
    py: Python<'py>,
    p: PyExtParams,
    l: f64,
    n: usize,
    scan: (f64, f64),
    step: f64,
    tol: f64,
    dirichlet: bool,
) -> PyResult<Bound<'py, PyDict>> {
    let cfg = OracleConfig {
        l,
        n,
        scan,
        scan_step: step,
        bisect_tol: tol,
        outer: if dirichlet { OuterBoundary::Dirichlet } else { OuterBoundary::Decaying },
        keep_trace: false,
    };
    let rep = py.detach(|| oracle::scan_spectrum(&p.0, &cfg)).map_err(to_py_err)?;
    let d = PyDict::new(py);
    d.set_item("roots", rep.roots.clone())?;
    d.set_item("degenerate", rep.degenerate.clone())?;
    d.set_item("values", rep.with_multiplicity())?;
    Ok(d)
}

/// Run the acceptance criteria and module invariants; one dict per check.
#[pyfunction]
fn selftest<'py>(py: Python<'py>) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let all = py.detach(|| {
        let mut v = checks::acceptance_suite();
        v.extend(checks::invariant_suite());
        v
    });
    all.iter()
        .map(|c| {
            let d = PyDict::new(py);
            d.set_item("id", &c.id)?;
            d.set_item("name", &c.name)?;
            d.set_item("passed", c.passed)?;
            d.set_item("detail", &c.detail)?;
            d.set_item("elapsed_ms", c.elapsed_ms)?;
            Ok(d)
        })
        .collect()
}

#[pymodule(name = "krein_csym")]
pub fn py_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyExtParams>()?;
    m.add_function(wrap_pyfunction!(build_c, m)?)?;
    m.add_function(wrap_pyfunction!(build_r_omega, m)?)?;
    m.add_function(wrap_pyfunction!(transition_from_c, m)?)?;
    m.add_function(wrap_pyfunction!(limit_transition, m)?)?;
    m.add_function(wrap_pyfunction!(cayley_theta, m)?)?;
    m.add_function(wrap_pyfunction!(build_k, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(k_eigenvalues, m)?)?;
    m.add_function(wrap_pyfunction!(csym_of_extension, m)?)?;
    m.add_function(wrap_pyfunction!(closed_form_eigenvalues, m)?)?;
    m.add_function(wrap_pyfunction!(find_discrete_spectrum, m)?)?;
    m.add_function(wrap_pyfunction!(m_free, m)?)?;
    m.add_function(wrap_pyfunction!(nonreal_spectrum_probe, m)?)?;
    m.add_function(wrap_pyfunction!(kernel_gram_min_eig, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_scan, m)?)?;
    m.add_function(wrap_pyfunction!(selftest, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
