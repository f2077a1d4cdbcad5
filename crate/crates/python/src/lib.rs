//! Python bindings for the `surgery_cert` crate.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use surgery_cert::braid;
use surgery_cert::certify::{self, CertifyOptions, UnitStatus};
use surgery_cert::homfly::{self as hf, GammaEngine};
use surgery_cert::surgery;

fn err(e: surgery_cert::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Laurent polynomial in `a` with integer coefficients.
#[pyclass(name = "LaurentPoly", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyLaurentPoly(surgery_cert::LaurentPoly);

#[pymethods]
impl PyLaurentPoly {
    #[new]
    #[pyo3(signature = (text = "0"))]
    fn new(text: &str) -> PyResult<Self> {
        text.parse().map(Self).map_err(err)
    }

    /// `[(exponent, coefficient), ...]` in ascending exponent order.
    fn terms(&self) -> Vec<(i64, String)> {
        self.0.terms().map(|(e, c)| (e, c.to_string())).collect()
    }

    fn is_unit(&self) -> bool {
        self.0.is_unit()
    }

    /// Exact value at an integer point, as `(numerator, denominator)` strings.
    fn eval(&self, x: i64) -> PyResult<(String, String)> {
        let v = self.0.eval_int(x).map_err(err)?;
        Ok((v.numer().to_string(), v.denom().to_string()))
    }

    fn __add__(&self, o: &Self) -> Self {
        Self(&self.0 + &o.0)
    }

    fn __sub__(&self, o: &Self) -> Self {
        Self(&self.0 - &o.0)
    }

    fn __mul__(&self, o: &Self) -> Self {
        Self(&self.0 * &o.0)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("LaurentPoly('{}')", self.0)
    }
}

#[pyclass(name = "BraidWord", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyBraidWord(braid::BraidWord);

#[pymethods]
impl PyBraidWord {
    #[new]
    fn new(strands: usize, letters: Vec<i32>) -> PyResult<Self> {
        braid::BraidWord::new(strands, letters).map(Self).map_err(err)
    }

    /// Parses the `"n: l1 l2 ..."` text form.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        text.parse().map(Self).map_err(err)
    }

    #[getter]
    fn strands(&self) -> usize {
        self.0.strands()
    }

    #[getter]
    fn letters(&self) -> Vec<i32> {
        self.0.letters().to_vec()
    }

    fn components(&self) -> usize {
        self.0.closure_components()
    }

    fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    fn genus(&self) -> PyResult<i64> {
        braid::genus(&self.0).map_err(err)
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("BraidWord.parse('{}')", self.0)
    }
}

#[pyclass(name = "Certificate", frozen)]
struct PyCertificate(certify::Certificate);

#[pymethods]
impl PyCertificate {
    #[getter]
    fn slope(&self) -> (i64, i64) {
        (self.0.slope.p, self.0.slope.q)
    }

    /// `(p, q, r, s, t)`
    #[getter]
    fn params(&self) -> (i64, i64, i64, i64, i64) {
        let p = &self.0.params;
        (p.p, p.q, p.r, p.s, p.t)
    }

    #[getter]
    fn braid(&self) -> PyBraidWord {
        PyBraidWord(self.0.braid.clone())
    }

    #[getter]
    fn genus(&self) -> i64 {
        self.0.genus
    }

    #[getter]
    fn gamma_cr(&self) -> Option<PyLaurentPoly> {
        self.0.gamma_cr.clone().map(PyLaurentPoly)
    }

    /// `True`, `False`, or `None` when not computed.
    #[getter]
    fn gamma_cr_is_unit(&self) -> Option<bool> {
        match self.0.gamma_cr_is_unit {
            UnitStatus::Unit => Some(true),
            UnitStatus::NonUnit => Some(false),
            UnitStatus::NotComputed => None,
        }
    }

    #[getter]
    fn diff(&self) -> String {
        self.0.diff.to_string()
    }

    #[getter]
    fn reason(&self) -> String {
        self.0.diff_nonzero_reason.to_string()
    }

    #[getter]
    fn checks(&self) -> Vec<String> {
        self.0.checks.clone()
    }

    fn verify(&self) -> PyResult<()> {
        self.0.verify().map_err(err)
    }

    fn to_json(&self) -> String {
        self.0.to_json()
    }
}

/// HOMFLYPT polynomial of the closure as `{(v_exp, z_exp): coeff}`.
#[pyfunction]
fn homfly<'py>(py: Python<'py>, word: &PyBraidWord) -> PyResult<Bound<'py, PyDict>> {
    let h = hf::homfly_oracle(&word.0).map_err(err)?;
    let d = PyDict::new(py);
    for (k, c) in h.poly.terms() {
        d.set_item(k, c.to_string())?;
    }
    Ok(d)
}

/// `Γ` of the closure, via the full HOMFLYPT recursion.
#[pyfunction]
fn gamma_oracle(word: &PyBraidWord) -> PyResult<PyLaurentPoly> {
    let h = hf::homfly_oracle(&word.0).map_err(err)?;
    hf::zeroth_gamma(&h).map(PyLaurentPoly).map_err(err)
}

/// `(Γ, Γ̃)` of the closure of a positive braid.
#[pyfunction]
fn gamma_positive(word: &PyBraidWord) -> PyResult<(PyLaurentPoly, PyLaurentPoly)> {
    let g = GammaEngine::default().gamma_positive(&word.0).map_err(err)?;
    Ok((PyLaurentPoly(g.gamma), PyLaurentPoly(g.gamma_normalized)))
}

#[pyfunction]
fn torus_braid(r: i64, s: i64) -> PyResult<PyBraidWord> {
    braid::torus_braid(r, s).map(PyBraidWord).map_err(err)
}

/// `(p, q, r, s, t)` for slope `p/q`.
#[pyfunction]
#[pyo3(signature = (p, q, s_start = 1))]
fn choose_params(p: i64, q: i64, s_start: i64) -> PyResult<(i64, i64, i64, i64, i64)> {
    let sp = surgery::choose_params(p, q, s_start).map_err(err)?;
    Ok((sp.p, sp.q, sp.r, sp.s, sp.t))
}

#[pyfunction]
fn cable_braid(p: i64, q: i64, r: i64, s: i64) -> PyResult<PyBraidWord> {
    let sp = surgery::SlopeParams::new(p, q, r, s).map_err(err)?;
    braid::cable_braid(&sp).map(PyBraidWord).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (p, q, s_start = 1, gamma_budget = certify::DEFAULT_GAMMA_BUDGET, verify_oracle = false))]
fn certify_slope(p: i64, q: i64, s_start: i64, gamma_budget: usize, verify_oracle: bool) -> PyResult<PyCertificate> {
    let opts = CertifyOptions {
        s_start,
        gamma_budget,
        verify_oracle,
        ..Default::default()
    };
    certify::certify_slope(p, q, &opts).map(PyCertificate).map_err(err)
}

#[pymodule]
fn surgery_cert_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyLaurentPoly>()?;
    m.add_class::<PyBraidWord>()?;
    m.add_class::<PyCertificate>()?;
    m.add_function(wrap_pyfunction!(homfly, m)?)?;
    m.add_function(wrap_pyfunction!(gamma_oracle, m)?)?;
    m.add_function(wrap_pyfunction!(gamma_positive, m)?)?;
    m.add_function(wrap_pyfunction!(torus_braid, m)?)?;
    m.add_function(wrap_pyfunction!(choose_params, m)?)?;
    m.add_function(wrap_pyfunction!(cable_braid, m)?)?;
    m.add_function(wrap_pyfunction!(certify_slope, m)?)?;
    Ok(())
}
