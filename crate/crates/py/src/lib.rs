//! Python module `pyeja`.

use pyo3::exceptions::{PyArithmeticError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyAny;

use eja::harness::{self, SuiteConfig};
use eja::majorize::{self, MajorizationVerdict};
use eja::means::{self, MeanKind};
use eja::{cone, peirce};

fn err(e: eja::Error) -> PyErr {
    match e {
        eja::Error::Numeric(_) => PyArithmeticError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

trait IntoPyResult<T> {
    fn py_err(self) -> PyResult<T>;
}

impl<T> IntoPyResult<T> for eja::Result<T> {
    fn py_err(self) -> PyResult<T> {
        self.map_err(err)
    }
}

#[pyclass(name = "Algebra", module = "pyeja", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyAlgebra(eja::Algebra);

#[pymethods]
impl PyAlgebra {
    /// Parse `realsym:N`, `herm:N`, `spin:D` or sums joined by `+`.
    #[new]
    fn new(spec: &str) -> PyResult<Self> {
        let a: eja::Algebra = spec.parse().py_err()?;
        a.validate().py_err()?;
        Ok(PyAlgebra(a))
    }

    #[getter]
    fn rank(&self) -> usize {
        self.0.rank()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.0.dim()
    }

    fn is_simple(&self) -> bool {
        self.0.is_simple()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Algebra('{}')", self.0)
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}

#[pyclass(name = "Element", module = "pyeja", skip_from_py_object)]
#[derive(Clone)]
struct PyElement(eja::Element);

#[pymethods]
impl PyElement {
    #[staticmethod]
    fn from_coords(alg: &PyAlgebra, coords: Vec<f64>) -> PyResult<Self> {
        Ok(PyElement(eja::Element::from_coords(&alg.0, &coords).py_err()?))
    }

    /// Real symmetric matrix from a list of rows.
    #[staticmethod]
    fn real_sym(rows: Vec<Vec<f64>>) -> PyResult<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(PyValueError::new_err("matrix must be square"));
        }
        let flat: Vec<f64> = rows.into_iter().flatten().collect();
        Ok(PyElement(eja::Element::real_sym_rows(n, &flat).py_err()?))
    }

    #[staticmethod]
    fn spin(x0: f64, bar: Vec<f64>) -> PyResult<Self> {
        Ok(PyElement(eja::Element::spin(x0, &bar).py_err()?))
    }

    #[staticmethod]
    fn unit(alg: &PyAlgebra) -> Self {
        PyElement(eja::Element::unit(&alg.0))
    }

    #[getter]
    fn algebra(&self) -> PyAlgebra {
        PyAlgebra(self.0.algebra())
    }

    fn coords(&self) -> Vec<f64> {
        self.0.coords()
    }

    fn eigenvalues(&self) -> PyResult<Vec<f64>> {
        self.0.eigenvalues().py_err()
    }

    /// `(eigenvalues, frame)`
    fn spectral(&self) -> PyResult<(Vec<f64>, PyFrame)> {
        let sd = self.0.spectral().py_err()?;
        Ok((sd.eigenvalues, PyFrame(sd.frame)))
    }

    fn trace(&self) -> f64 {
        self.0.trace()
    }

    fn det(&self) -> PyResult<f64> {
        self.0.det().py_err()
    }

    fn norm(&self) -> f64 {
        self.0.norm()
    }

    #[pyo3(signature = (p = 2.0))]
    fn p_norm(&self, p: f64) -> PyResult<f64> {
        self.0.p_norm(p).py_err()
    }

    fn inner(&self, other: &PyElement) -> PyResult<f64> {
        self.0.inner(&other.0).py_err()
    }

    fn jordan(&self, other: &PyElement) -> PyResult<PyElement> {
        Ok(PyElement(self.0.jordan(&other.0).py_err()?))
    }

    fn sqrt(&self) -> PyResult<PyElement> {
        Ok(PyElement(self.0.sqrt().py_err()?))
    }

    fn inverse(&self) -> PyResult<PyElement> {
        Ok(PyElement(self.0.inverse().py_err()?))
    }

    fn exp(&self) -> PyResult<PyElement> {
        Ok(PyElement(self.0.exp().py_err()?))
    }

    fn log(&self) -> PyResult<PyElement> {
        Ok(PyElement(self.0.log().py_err()?))
    }

    fn is_psd(&self) -> PyResult<bool> {
        self.0.is_psd(None).py_err()
    }

    fn __add__(&self, other: &PyElement) -> PyResult<PyElement> {
        Ok(PyElement(self.0.try_add(&other.0).py_err()?))
    }

    fn __sub__(&self, other: &PyElement) -> PyResult<PyElement> {
        Ok(PyElement(self.0.try_sub(&other.0).py_err()?))
    }

    fn __mul__(&self, s: f64) -> PyElement {
        PyElement(self.0.scale(s))
    }

    fn __rmul__(&self, s: f64) -> PyElement {
        PyElement(self.0.scale(s))
    }

    fn __repr__(&self) -> String {
        format!("Element({}, {})", self.0.algebra(), self.0)
    }
}

#[pyclass(name = "JordanFrame", module = "pyeja", skip_from_py_object)]
#[derive(Clone)]
struct PyFrame(eja::JordanFrame);

#[pymethods]
impl PyFrame {
    #[staticmethod]
    fn canonical(alg: &PyAlgebra) -> Self {
        PyFrame(eja::JordanFrame::canonical(&alg.0))
    }

    #[staticmethod]
    fn spin_direction(u: Vec<f64>) -> PyResult<Self> {
        Ok(PyFrame(eja::JordanFrame::spin_direction(&u).py_err()?))
    }

    fn idempotents(&self) -> Vec<PyElement> {
        self.0.idempotents().iter().cloned().map(PyElement).collect()
    }

    fn combine(&self, coeffs: Vec<f64>) -> PyResult<PyElement> {
        if coeffs.len() != self.0.len() {
            return Err(PyValueError::new_err(format!("expected {} coefficients", self.0.len())));
        }
        Ok(PyElement(self.0.combine(&coeffs)))
    }

    fn partial_unit(&self, subset: Vec<usize>) -> PyResult<PyElement> {
        if subset.iter().any(|&i| i >= self.0.len()) {
            return Err(PyValueError::new_err("subset index out of range"));
        }
        Ok(PyElement(self.0.partial_unit(&subset)))
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }
}

#[pyclass(name = "CoeffMatrix", module = "pyeja", skip_from_py_object)]
#[derive(Clone)]
struct PyCoeff(eja::CoeffMatrix);

#[pymethods]
impl PyCoeff {
    #[new]
    fn new(rows: Vec<Vec<f64>>) -> PyResult<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(PyValueError::new_err("matrix must be square"));
        }
        let flat: Vec<f64> = rows.into_iter().flatten().collect();
        Ok(PyCoeff(eja::CoeffMatrix::from_rows(n, &flat).py_err()?))
    }

    fn rows(&self) -> Vec<Vec<f64>> {
        let n = self.0.n();
        (0..n).map(|i| (0..n).map(|j| self.0.get(i, j)).collect()).collect()
    }

    #[pyo3(signature = (tol = 1e-9))]
    fn is_correlation(&self, tol: f64) -> bool {
        majorize::is_correlation(&self.0, tol)
    }

    fn eigenvalues(&self) -> PyResult<Vec<f64>> {
        self.0.eigenvalues().py_err()
    }
}

#[pyclass(name = "Verdict", module = "pyeja", frozen, get_all, skip_from_py_object)]
struct PyVerdict {
    holds: bool,
    slacks: Vec<f64>,
    trace_gap: f64,
    tol: f64,
    margin: f64,
}

impl From<MajorizationVerdict> for PyVerdict {
    fn from(v: MajorizationVerdict) -> Self {
        PyVerdict {
            holds: v.holds,
            margin: v.margin(),
            slacks: v.partial_sum_slacks,
            trace_gap: v.trace_gap,
            tol: v.tol_used,
        }
    }
}

#[pymethods]
impl PyVerdict {
    fn __bool__(&self) -> bool {
        self.holds
    }

    fn __repr__(&self) -> String {
        format!("Verdict(holds={}, margin={:e})", self.holds, self.margin)
    }
}

#[pyfunction]
fn schur_product(a: &PyCoeff, x: &PyElement, frame: &PyFrame) -> PyResult<PyElement> {
    Ok(PyElement(peirce::schur_product(&a.0, &x.0, &frame.0).py_err()?))
}

#[pyfunction]
fn quad_rep(a: &PyElement, x: &PyElement) -> PyResult<PyElement> {
    Ok(PyElement(peirce::quad_rep(&a.0, &x.0).py_err()?))
}

#[pyfunction]
fn lyapunov(a: &PyElement, x: &PyElement) -> PyResult<PyElement> {
    Ok(PyElement(peirce::lyapunov(&a.0, &x.0).py_err()?))
}

#[pyfunction]
#[pyo3(signature = (p, q, tol = None))]
fn majorizes(p: Vec<f64>, q: Vec<f64>, tol: Option<f64>) -> PyResult<PyVerdict> {
    Ok(majorize::majorizes(&p, &q, tol).py_err()?.into())
}

#[pyfunction]
#[pyo3(signature = (p, q, tol = None))]
fn weak_majorizes(p: Vec<f64>, q: Vec<f64>, tol: Option<f64>) -> PyResult<PyVerdict> {
    Ok(majorize::weak_majorizes(&p, &q, tol).py_err()?.into())
}

#[pyfunction]
#[pyo3(signature = (x, y, tol = None))]
fn majorizes_elements(x: &PyElement, y: &PyElement, tol: Option<f64>) -> PyResult<PyVerdict> {
    Ok(majorize::majorizes_elements(&x.0, &y.0, tol).py_err()?.into())
}

/// Doubly stochastic `D` (list of rows) with `D q = p`.
#[pyfunction]
fn ds_transfer_matrix(p: Vec<f64>, q: Vec<f64>) -> PyResult<Vec<Vec<f64>>> {
    let c = majorize::ds_transfer_matrix(&p, &q, None).py_err()?;
    let d = &c.product;
    Ok((0..d.nrows()).map(|i| (0..d.ncols()).map(|j| d[(i, j)]).collect()).collect())
}

/// `[(weight, permutation), ...]`
#[pyfunction]
fn birkhoff_decompose(rows: Vec<Vec<f64>>) -> PyResult<Vec<(f64, Vec<usize>)>> {
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(PyValueError::new_err("matrix must be square"));
    }
    let flat: Vec<f64> = rows.into_iter().flatten().collect();
    let d = nalgebra::DMatrix::from_row_slice(n, n, &flat);
    let bd = majorize::birkhoff_decompose(&d).py_err()?;
    Ok(bd.terms.into_iter().map(|t| (t.weight, t.permutation)).collect())
}

fn kind(name: &str) -> PyResult<MeanKind> {
    name.parse().py_err()
}

#[pyfunction]
fn mean_value(kind_name: &str, t: f64, s: f64) -> PyResult<f64> {
    means::mean_value(kind(kind_name)?, t, s).py_err()
}

#[pyfunction]
fn mean_transform(kind_name: &str, a: &PyElement, x: &PyElement) -> PyResult<PyElement> {
    Ok(PyElement(means::mean_transform(kind(kind_name)?, &a.0, &x.0).py_err()?))
}

#[pyfunction]
#[pyo3(signature = (a, x, nodes = means::DEFAULT_NODES))]
fn log_mean_integral(a: &PyElement, x: &PyElement, nodes: usize) -> PyResult<PyElement> {
    Ok(PyElement(means::log_mean_integral(&a.0, &x.0, nodes).py_err()?))
}

#[pyfunction]
fn delta2(u: &PyElement, v: &PyElement) -> PyResult<f64> {
    cone::delta2(&u.0, &v.0).py_err()
}

#[pyfunction]
#[pyo3(signature = (u, v, p = 2.0))]
fn log_distance(u: &PyElement, v: &PyElement, p: f64) -> PyResult<f64> {
    cone::log_distance(&u.0, &v.0, p).py_err()
}

/// `(length, error_budget)` of `exp((1−t) log u + t log v)`.
#[pyfunction]
#[pyo3(signature = (u, v, p = 2.0, samples = cone::DEFAULT_PATH_SAMPLES))]
fn geodesic_length(u: &PyElement, v: &PyElement, p: f64, samples: usize) -> PyResult<(f64, f64)> {
    let path = cone::geodesic_path(&u.0, &v.0, samples).py_err()?;
    let l = cone::path_length_with_budget(&path, p).py_err()?;
    Ok((l.value, l.error_budget))
}

#[pyfunction]
fn suite_names() -> Vec<&'static str> {
    harness::suite_names()
}

/// Runs a suite and returns the report as a dict.
#[pyfunction]
#[pyo3(signature = (name, algebras = None, trials = None, seed = harness::DEFAULT_SEED, tol = None))]
fn run_suite<'py>(
    py: Python<'py>,
    name: &str,
    algebras: Option<Vec<String>>,
    trials: Option<usize>,
    seed: u64,
    tol: Option<f64>,
) -> PyResult<Bound<'py, PyAny>> {
    let mut c = SuiteConfig::new(name, seed);
    c.algebras = algebras
        .unwrap_or_default()
        .iter()
        .map(|s| s.parse::<eja::Algebra>())
        .collect::<eja::Result<_>>()
        .py_err()?;
    c.trials = trials;
    c.tol = tol;
    let json = py.detach(|| harness::run_suite(&c)).py_err()?.to_json();
    py.import("json")?.call_method1("loads", (json,))
}

#[pyfunction]
fn demo(name: &str) -> PyResult<String> {
    harness::demo::run_demo(name).py_err()
}

#[pymodule]
fn pyeja(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyAlgebra>()?;
    m.add_class::<PyElement>()?;
    m.add_class::<PyFrame>()?;
    m.add_class::<PyCoeff>()?;
    m.add_class::<PyVerdict>()?;
    m.add_function(wrap_pyfunction!(schur_product, m)?)?;
    m.add_function(wrap_pyfunction!(quad_rep, m)?)?;
    m.add_function(wrap_pyfunction!(lyapunov, m)?)?;
    m.add_function(wrap_pyfunction!(majorizes, m)?)?;
    m.add_function(wrap_pyfunction!(weak_majorizes, m)?)?;
    m.add_function(wrap_pyfunction!(majorizes_elements, m)?)?;
    m.add_function(wrap_pyfunction!(ds_transfer_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(birkhoff_decompose, m)?)?;
    m.add_function(wrap_pyfunction!(mean_value, m)?)?;
    m.add_function(wrap_pyfunction!(mean_transform, m)?)?;
    m.add_function(wrap_pyfunction!(log_mean_integral, m)?)?;
    m.add_function(wrap_pyfunction!(delta2, m)?)?;
    m.add_function(wrap_pyfunction!(log_distance, m)?)?;
    m.add_function(wrap_pyfunction!(geodesic_length, m)?)?;
    m.add_function(wrap_pyfunction!(suite_names, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    m.add_function(wrap_pyfunction!(demo, m)?)?;
    Ok(())
}
