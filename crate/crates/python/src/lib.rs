//! Python bindings. Complex numbers cross the boundary as Python `complex`,
//! structures and matrices as JSON strings or plain lists, tensors as
//! `Tensor2` objects exposing their `N² × N²` operator matrix.

#![allow(clippy::useless_conversion)]

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use aybe_core::bd::{self, AssocBD, OrderedAssocBD};
use aybe_core::bundles::{self, SplittingMatrix};
use aybe_core::rmatrix::{self, ClassicalFun, MultRFun, RFun};
use aybe_core::tensor::{MatA, Tensor2};
use aybe_core::verify::{self, HKind, Report, SamplePlan, STarget};
use aybe_core::C64;

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn mat_from_rows(rows: Vec<Vec<C64>>) -> PyResult<MatA> {
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(PyValueError::new_err("matrix must be square"));
    }
    Ok(MatA::from_fn(n, |i, j| rows[i][j]))
}

#[pyclass(name = "Tensor2", module = "aybe")]
#[derive(Clone)]
struct PyTensor2(Tensor2);

#[pymethods]
impl PyTensor2 {
    #[staticmethod]
    fn unit(n: usize) -> Self {
        PyTensor2(Tensor2::unit2(n))
    }

    #[staticmethod]
    fn perm(n: usize) -> Self {
        PyTensor2(Tensor2::perm_p(n))
    }

    #[staticmethod]
    fn kron(a: Vec<Vec<C64>>, b: Vec<Vec<C64>>) -> PyResult<Self> {
        Ok(PyTensor2(Tensor2::kron(&mat_from_rows(a)?, &mat_from_rows(b)?).map_err(err)?))
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    /// Coefficient of `e_pq ⊗ e_rs` (0-based).
    fn coeff(&self, p: usize, q: usize, r: usize, s: usize) -> PyResult<C64> {
        let n = self.0.n();
        if [p, q, r, s].iter().any(|&i| i >= n) {
            return Err(PyValueError::new_err("index out of range"));
        }
        Ok(self.0.coeff(p, q, r, s))
    }

    /// The operator on `C^N ⊗ C^N` as a list of rows.
    fn op_matrix(&self) -> Vec<Vec<C64>> {
        let m = self.0.op_matrix();
        (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| m[(i, j)]).collect()).collect()
    }

    fn swap_factors(&self) -> Self {
        PyTensor2(self.0.swap_factors())
    }

    fn compose(&self, other: &PyTensor2) -> PyResult<Self> {
        Ok(PyTensor2(self.0.compose(&other.0).map_err(err)?))
    }

    fn project_sl(&self, slots: Vec<usize>) -> Self {
        PyTensor2(self.0.project_sl(&slots))
    }

    fn dist(&self, other: &PyTensor2) -> f64 {
        self.0.dist(&other.0)
    }

    fn max_abs(&self) -> f64 {
        self.0.max_abs()
    }

    fn __add__(&self, other: &PyTensor2) -> Self {
        PyTensor2(&self.0 + &other.0)
    }

    fn __sub__(&self, other: &PyTensor2) -> Self {
        PyTensor2(&self.0 - &other.0)
    }

    fn __mul__(&self, s: C64) -> Self {
        PyTensor2(self.0.scale(s))
    }

    fn __repr__(&self) -> String {
        format!("Tensor2(n={}, max_abs={:.6e})", self.0.n(), self.0.max_abs())
    }
}

#[pyclass(name = "AssocBD", module = "aybe")]
#[derive(Clone)]
struct PyAssocBD(AssocBD);

#[pymethods]
impl PyAssocBD {
    /// Builds a structure from 1-based images of `C0` and `C` and 1-based
    /// edges of `Γ1`.
    #[new]
    fn new(c0: Vec<usize>, c: Vec<usize>, gamma1: Vec<(usize, usize)>) -> PyResult<Self> {
        Ok(PyAssocBD(bd::from_one_based(&c0, &c, &gamma1).map_err(err)?))
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyAssocBD(serde_json::from_str(text).map_err(err)?))
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.0).map_err(err)
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    /// 1-based edges.
    #[getter]
    fn gamma1(&self) -> Vec<(usize, usize)> {
        self.0.gamma1().iter().map(|&(a, b)| (a + 1, b + 1)).collect()
    }

    #[getter]
    fn gamma2(&self) -> Vec<(usize, usize)> {
        self.0.gamma2().iter().map(|&(a, b)| (a + 1, b + 1)).collect()
    }

    fn nilpotency_depth(&self) -> usize {
        self.0.nilpotency_depth()
    }

    fn opposite(&self) -> Self {
        PyAssocBD(self.0.opposite())
    }

    fn inverse(&self) -> Self {
        PyAssocBD(self.0.inverse())
    }

    fn orders(&self) -> Vec<PyOrderedBD> {
        self.0.orders().into_iter().map(PyOrderedBD).collect()
    }

    fn __repr__(&self) -> String {
        format!("AssocBD({})", serde_json::to_string(&self.0).unwrap_or_default())
    }

    fn __eq__(&self, other: &PyAssocBD) -> bool {
        self.0 == other.0
    }
}

#[pyclass(name = "OrderedAssocBD", module = "aybe")]
#[derive(Clone)]
struct PyOrderedBD(OrderedAssocBD);

#[pymethods]
impl PyOrderedBD {
    #[new]
    fn new(bd: &PyAssocBD, alpha0: (usize, usize)) -> PyResult<Self> {
        if alpha0.0 == 0 || alpha0.1 == 0 {
            return Err(PyValueError::new_err("alpha0 is 1-based"));
        }
        Ok(PyOrderedBD(OrderedAssocBD::new(bd.0.clone(), (alpha0.0 - 1, alpha0.1 - 1)).map_err(err)?))
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyOrderedBD(serde_json::from_str(text).map_err(err)?))
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.0).map_err(err)
    }

    #[getter]
    fn bd(&self) -> PyAssocBD {
        PyAssocBD(self.0.bd().clone())
    }

    #[getter]
    fn alpha0(&self) -> (usize, usize) {
        let (a, b) = self.0.alpha0();
        (a + 1, b + 1)
    }

    fn alpha0_in_gamma1(&self) -> bool {
        self.0.alpha0_in_gamma1()
    }

    fn alpha0_in_gamma2(&self) -> bool {
        self.0.alpha0_in_gamma2()
    }

    fn canonical(&self) -> Self {
        PyOrderedBD(self.0.canonical())
    }

    fn __eq__(&self, other: &PyOrderedBD) -> bool {
        self.0 == other.0
    }

    fn __repr__(&self) -> String {
        format!("OrderedAssocBD({})", serde_json::to_string(&self.0).unwrap_or_default())
    }
}

/// A two-variable solution `r(u, v)`.
#[pyclass(name = "RFun", module = "aybe")]
#[derive(Clone)]
struct PyRFun(RFun);

#[pymethods]
impl PyRFun {
    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    #[getter]
    fn kind(&self) -> String {
        format!("{:?}", self.0.kind())
    }

    fn __call__(&self, u: C64, v: C64) -> PyResult<PyTensor2> {
        Ok(PyTensor2(self.0.eval(u, v).map_err(err)?))
    }

    fn pole_margin(&self, u: C64, v: C64) -> f64 {
        self.0.pole_margin(u, v)
    }

    fn perturbed(&self, delta: &PyTensor2) -> Self {
        PyRFun(self.0.perturbed(delta.0.clone()))
    }
}

/// A one-variable function `r(v)`.
#[pyclass(name = "ClassicalFun", module = "aybe")]
#[derive(Clone)]
struct PyClassicalFun(ClassicalFun);

#[pymethods]
impl PyClassicalFun {
    fn __call__(&self, v: C64) -> PyResult<PyTensor2> {
        Ok(PyTensor2(self.0.eval(v).map_err(err)?))
    }

    fn pole_margin(&self, v: C64) -> f64 {
        self.0.pole_margin(v)
    }
}

/// A solution in multiplicative coordinates `r(x; y, y′)`.
#[pyclass(name = "MultRFun", module = "aybe")]
#[derive(Clone)]
struct PyMultRFun(MultRFun);

#[pymethods]
impl PyMultRFun {
    fn __call__(&self, x: C64, y: C64, yp: C64) -> PyResult<PyTensor2> {
        Ok(PyTensor2(self.0.eval(x, y, yp).map_err(err)?))
    }

    fn pole_margin(&self, x: C64, y: C64, yp: C64) -> f64 {
        self.0.pole_margin(x, y, yp)
    }
}

#[pyclass(name = "Report", module = "aybe", get_all)]
#[derive(Clone)]
struct PyReport {
    suite: String,
    seed: u64,
    samples: usize,
    max_residual: f64,
    tol: f64,
    passed: bool,
}

impl From<Report> for PyReport {
    fn from(r: Report) -> Self {
        PyReport { suite: r.suite, seed: r.seed, samples: r.samples, max_residual: r.max_residual, tol: r.tol, passed: r.pass }
    }
}

#[pymethods]
impl PyReport {
    fn __bool__(&self) -> bool {
        self.passed
    }

    fn __repr__(&self) -> String {
        format!(
            "Report(suite={:?}, passed={}, max_residual={:.3e}, tol={:.1e}, samples={})",
            self.suite, self.passed, self.max_residual, self.tol, self.samples
        )
    }
}

#[pyclass(name = "SplittingMatrix", module = "aybe")]
#[derive(Clone)]
struct PySplittingMatrix(SplittingMatrix);

#[pymethods]
impl PySplittingMatrix {
    #[new]
    #[pyo3(signature = (rows, shift=1))]
    fn new(rows: Vec<Vec<i64>>, shift: usize) -> PyResult<Self> {
        Ok(PySplittingMatrix(SplittingMatrix::new(rows, shift).map_err(err)?))
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PySplittingMatrix(serde_json::from_str(text).map_err(err)?))
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.0).map_err(err)
    }

    #[getter]
    fn rows(&self) -> Vec<Vec<i64>> {
        self.0.rows().to_vec()
    }

    fn is_simple(&self) -> bool {
        self.0.is_simple()
    }

    /// `None` for simple matrices, otherwise a description of the failure.
    fn simplicity_witness(&self) -> Option<String> {
        self.0.simplicity().err()
    }

    fn row_sums(&self) -> Vec<i64> {
        self.0.row_sums()
    }

    fn check_row_sums(&self) -> bool {
        self.0.check_row_sums().is_ok()
    }

    fn hom_dim(&self, x: C64) -> usize {
        self.0.hom_dim(x)
    }

    fn negated(&self) -> Self {
        PySplittingMatrix(self.0.negated())
    }
}

#[pyfunction]
fn enumerate(n: usize) -> PyResult<Vec<PyAssocBD>> {
    Ok(bd::enumerate(n).map_err(err)?.into_iter().map(PyAssocBD).collect())
}

#[pyfunction]
fn trig_r(bd: &PyAssocBD) -> PyRFun {
    PyRFun(rmatrix::trig_r(&bd.0))
}

#[pyfunction]
fn quantum_r(bd: &PyAssocBD) -> PyRFun {
    PyRFun(rmatrix::quantum_r(&bd.0))
}

#[pyfunction]
fn classical_r0(bd: &PyAssocBD) -> PyClassicalFun {
    PyClassicalFun(rmatrix::classical_r0(&bd.0))
}

#[pyfunction]
fn r_multiplicative(obd: &PyOrderedBD) -> PyResult<PyMultRFun> {
    Ok(PyMultRFun(rmatrix::r_multiplicative(&obd.0).map_err(err)?))
}

#[pyfunction]
#[pyo3(signature = (n, c=C64::new(1.0, 0.0)))]
fn rational_r(n: usize, c: C64) -> PyResult<PyRFun> {
    Ok(PyRFun(rmatrix::rational_r(n, c).map_err(err)?))
}

#[pyfunction]
#[pyo3(signature = (a, c=C64::new(1.0, 0.0)))]
fn phi_a_r(a: Vec<Vec<C64>>, c: C64) -> PyResult<PyRFun> {
    Ok(PyRFun(rmatrix::phi_a_r(&mat_from_rows(a)?, c).map_err(err)?))
}

#[pyfunction]
fn nilpotent_r(omega: &PyTensor2, deg: u32) -> PyResult<PyRFun> {
    Ok(PyRFun(rmatrix::nilpotent_r(&omega.0, deg).map_err(err)?))
}

/// Diagonal entries of the symmetry for the 1-based base label `i0`.
#[pyfunction]
fn schedler_symmetry(bd: &PyAssocBD, i0: usize) -> PyResult<Vec<C64>> {
    if i0 == 0 {
        return Err(PyValueError::new_err("i0 is 1-based"));
    }
    Ok(rmatrix::schedler_symmetry(&bd.0, i0 - 1).map_err(err)?.diag())
}

#[pyfunction]
fn standard_perturbation(n: usize) -> PyTensor2 {
    PyTensor2(verify::standard_perturbation(n))
}

fn plan(seed: u64, samples: usize) -> SamplePlan {
    SamplePlan::new(seed, samples)
}

/// Runs a named suite on a two-variable function.
#[pyfunction]
#[pyo3(signature = (suite, r, tol=1e-8, seed=0, samples=32))]
fn verify_r(suite: &str, r: &PyRFun, tol: f64, seed: u64, samples: usize) -> PyResult<PyReport> {
    let p = plan(seed, samples);
    let rep = match suite {
        "aybe" => verify::residual_aybe(&r.0, &p, tol),
        "unitarity" => verify::residual_unitarity(&r.0, &p, tol),
        "qybe" => verify::residual_qybe(&r.0, verify::DEFAULT_QYBE_U, &p, tol),
        "qybe_unitarity" => verify::residual_qybe_unitarity(&r.0, &p, tol),
        "s_identity" => verify::residual_s_identity(&r.0, STarget::Trigonometric, &p, tol),
        "s_inverse_square" => verify::residual_s_identity(&r.0, STarget::InverseSquare, &p, tol),
        "cubic" => verify::residual_cubic(&r.0, &p, tol),
        "r0_r1" => verify::residual_r0_r1(
            &rmatrix::r0_numeric(&r.0, rmatrix::DEFAULT_EPS),
            &rmatrix::r1_numeric(&r.0, rmatrix::DEFAULT_EPS),
            &p,
            tol,
        ),
        other => return Err(PyValueError::new_err(format!("unknown suite {other:?}"))),
    };
    Ok(rep.map_err(err)?.into())
}

#[pyfunction]
#[pyo3(signature = (r0, tol=1e-8, seed=0, samples=32))]
fn verify_cybe(r0: &PyClassicalFun, tol: f64, seed: u64, samples: usize) -> PyResult<PyReport> {
    Ok(verify::residual_cybe(&r0.0, &plan(seed, samples), tol).map_err(err)?.into())
}

#[pyfunction]
#[pyo3(signature = (r, tol=1e-8, seed=0, samples=32))]
fn verify_aybe2(r: &PyMultRFun, tol: f64, seed: u64, samples: usize) -> PyResult<PyReport> {
    Ok(verify::residual_aybe2(&r.0, &plan(seed, samples), tol).map_err(err)?.into())
}

#[pyfunction]
#[pyo3(signature = (bd, tol=1e-10, seed=0, samples=32))]
fn verify_quasi_period(bd: &PyAssocBD, tol: f64, seed: u64, samples: usize) -> PyResult<PyReport> {
    let r = rmatrix::trig_r(&bd.0);
    Ok(verify::residual_quasi_period(&r, &bd.0, &plan(seed, samples), tol).map_err(err)?.into())
}

/// `h` is one of `inverse_v`, `half_coth`, `half_coth_linear`.
#[pyfunction]
#[pyo3(signature = (h, tol=1e-10, seed=0, samples=32))]
fn verify_h_equation(h: &str, tol: f64, seed: u64, samples: usize) -> PyResult<PyReport> {
    let kind = match h {
        "inverse_v" => HKind::InverseV,
        "half_coth" => HKind::HalfCoth,
        "half_coth_linear" => HKind::HalfCothLinear,
        other => return Err(PyValueError::new_err(format!("unknown h {other:?}"))),
    };
    Ok(verify::residual_h_equation(kind, &plan(seed, samples), tol).map_err(err)?.into())
}

#[pyfunction]
fn bd_from_matrix(m: &PySplittingMatrix) -> PyResult<PyOrderedBD> {
    Ok(PyOrderedBD(bundles::bd_from_matrix(&m.0).map_err(err)?))
}

#[pyfunction]
fn realizable(obd: &PyOrderedBD) -> bool {
    bundles::realizable(&obd.0)
}

#[pyfunction]
fn realize(obd: &PyOrderedBD) -> PyResult<PySplittingMatrix> {
    Ok(PySplittingMatrix(bundles::realize(&obd.0).map_err(err)?))
}

#[pyfunction]
fn matrix_from_sequence(big_n: usize, k: usize, a: Vec<usize>) -> PyResult<PySplittingMatrix> {
    Ok(PySplittingMatrix(bundles::matrix_from_sequence(big_n, k, &a).map_err(err)?))
}

#[pyfunction]
fn example_matrix(big_n: usize, n: usize) -> PyResult<PySplittingMatrix> {
    Ok(PySplittingMatrix(bundles::example_matrix(big_n, n).map_err(err)?))
}

#[pyfunction]
fn massey_tensor(m: &PySplittingMatrix) -> PyResult<PyMultRFun> {
    Ok(PyMultRFun(bundles::massey_tensor(&m.0).map_err(err)?))
}

/// Largest entrywise gap between the closed-form Massey map and the
/// linear-solve oracle at one point.
#[pyfunction]
fn massey_gap(m: &PySplittingMatrix, x: C64, y: C64, yp: C64) -> PyResult<f64> {
    let a = bundles::massey_closed(&m.0, x, y, yp).map_err(err)?;
    let b = bundles::massey_oracle(&m.0, x, y, yp).map_err(err)?;
    Ok(a.dist(&b))
}

#[pymodule]
fn aybe(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyTensor2>()?;
    m.add_class::<PyAssocBD>()?;
    m.add_class::<PyOrderedBD>()?;
    m.add_class::<PyRFun>()?;
    m.add_class::<PyClassicalFun>()?;
    m.add_class::<PyMultRFun>()?;
    m.add_class::<PyReport>()?;
    m.add_class::<PySplittingMatrix>()?;
    m.add_function(wrap_pyfunction!(enumerate, m)?)?;
    m.add_function(wrap_pyfunction!(trig_r, m)?)?;
    m.add_function(wrap_pyfunction!(quantum_r, m)?)?;
    m.add_function(wrap_pyfunction!(classical_r0, m)?)?;
    m.add_function(wrap_pyfunction!(r_multiplicative, m)?)?;
    m.add_function(wrap_pyfunction!(rational_r, m)?)?;
    m.add_function(wrap_pyfunction!(phi_a_r, m)?)?;
    m.add_function(wrap_pyfunction!(nilpotent_r, m)?)?;
    m.add_function(wrap_pyfunction!(schedler_symmetry, m)?)?;
    m.add_function(wrap_pyfunction!(standard_perturbation, m)?)?;
    m.add_function(wrap_pyfunction!(verify_r, m)?)?;
    m.add_function(wrap_pyfunction!(verify_cybe, m)?)?;
    m.add_function(wrap_pyfunction!(verify_aybe2, m)?)?;
    m.add_function(wrap_pyfunction!(verify_quasi_period, m)?)?;
    m.add_function(wrap_pyfunction!(verify_h_equation, m)?)?;
    m.add_function(wrap_pyfunction!(bd_from_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(realizable, m)?)?;
    m.add_function(wrap_pyfunction!(realize, m)?)?;
    m.add_function(wrap_pyfunction!(matrix_from_sequence, m)?)?;
    m.add_function(wrap_pyfunction!(example_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(massey_tensor, m)?)?;
    m.add_function(wrap_pyfunction!(massey_gap, m)?)?;
    Ok(())
}
