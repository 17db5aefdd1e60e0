//! Python bindings. Ring elements cross the boundary as their JSON shapes
//! (ints, `"p/q"` strings, nested lists).

use ncsplit::catalog::{example1_suite, example2_suite};
use ncsplit::centralizer::centralizer_of_set;
use ncsplit::endo::{enumerate_endos, Battery, Extension};
use ncsplit::notation::parse_poly;
use ncsplit::ring::Value;
use ncsplit::search::{enumerate_splittings, find_roots as core_find_roots, SearchMode, SearchTask};
use ncsplit::splitting::SplittingWitness;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyString;
use serde_json::Value as Json;

fn err(e: ncsplit::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_json(obj: &Bound<'_, PyAny>) -> PyResult<Json> {
    let json = obj.py().import("json")?;
    let text: String = json.call_method1("dumps", (obj,))?.extract()?;
    serde_json::from_str(&text).map_err(|e| PyValueError::new_err(e.to_string()))
}

fn from_json<'py>(py: Python<'py>, j: &Json) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (j.to_string(),))
}

#[pyclass(name = "Ring", module = "ncsplit", frozen, eq, from_py_object)]
#[derive(Clone, PartialEq)]
struct PyRing(ncsplit::Ring);

#[pymethods]
impl PyRing {
    #[new]
    fn new(spec: &str) -> PyResult<Self> {
        ncsplit::Ring::parse_spec(spec).map(PyRing).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("Ring('{}')", self.0)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    /// Number of elements, or `None` when infinite.
    fn size(&self) -> Option<u128> {
        self.0.size()
    }

    fn is_commutative(&self) -> bool {
        self.0.is_commutative()
    }

    fn zero(&self) -> PyElement {
        PyElement(ncsplit::Element::zero(&self.0))
    }

    fn one(&self) -> PyElement {
        PyElement(ncsplit::Element::one(&self.0))
    }

    fn element(&self, value: &Bound<'_, PyAny>) -> PyResult<PyElement> {
        element(&self.0, value).map(PyElement)
    }

    #[pyo3(signature = (limit = 1 << 16))]
    fn elements(&self, limit: u128) -> PyResult<Vec<PyElement>> {
        let xs = self.0.element_list(limit).map_err(err)?;
        xs.into_iter().map(|v| ncsplit::Element::new(self.0.clone(), v).map(PyElement).map_err(err)).collect()
    }

    fn poly(&self, text: &str) -> PyResult<PyPoly> {
        parse_poly(&self.0, text).map(PyPoly).map_err(err)
    }
}

fn element(ring: &ncsplit::Ring, value: &Bound<'_, PyAny>) -> PyResult<ncsplit::Element> {
    if let Ok(e) = value.extract::<PyElement>() {
        return if e.0.ring() == ring { Ok(e.0) } else { Err(PyValueError::new_err("element of another ring")) };
    }
    let v = ring.parse_value(&to_json(value)?).map_err(err)?;
    ncsplit::Element::new(ring.clone(), v).map_err(err)
}

fn values(ring: &ncsplit::Ring, xs: &Bound<'_, PyAny>) -> PyResult<Vec<Value>> {
    xs.try_iter()?.map(|x| element(ring, &x?).map(ncsplit::Element::into_value)).collect()
}

#[pyclass(name = "Element", module = "ncsplit", frozen, eq, from_py_object)]
#[derive(Clone, PartialEq)]
struct PyElement(ncsplit::Element);

#[pymethods]
impl PyElement {
    #[new]
    fn new(ring: &PyRing, value: &Bound<'_, PyAny>) -> PyResult<Self> {
        element(&ring.0, value).map(PyElement)
    }

    #[getter]
    fn ring(&self) -> PyRing {
        PyRing(self.0.ring().clone())
    }

    /// The JSON shape of the value.
    fn value<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        from_json(py, &self.0.value().to_json())
    }

    fn __repr__(&self) -> String {
        format!("Element({}, {})", self.0.ring(), self.0)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __hash__(&self) -> u64 {
        use std::hash::{Hash, Hasher};
        let mut h = std::collections::hash_map::DefaultHasher::new();
        self.0.hash(&mut h);
        h.finish()
    }

    fn __add__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        self.0.add(&element(self.0.ring(), other)?).map(PyElement).map_err(err)
    }

    fn __sub__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        self.0.sub(&element(self.0.ring(), other)?).map(PyElement).map_err(err)
    }

    fn __mul__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        self.0.mul(&element(self.0.ring(), other)?).map(PyElement).map_err(err)
    }

    fn __neg__(&self) -> Self {
        PyElement(self.0.neg())
    }

    fn __pow__(&self, e: u64, _modulo: Option<u64>) -> Self {
        PyElement(self.0.pow(e))
    }

    fn commutator(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        self.0.commutator(&element(self.0.ring(), other)?).map(PyElement).map_err(err)
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

#[pyclass(name = "Poly", module = "ncsplit", frozen, eq, from_py_object)]
#[derive(Clone, PartialEq)]
struct PyPoly(ncsplit::NcPoly);

#[pymethods]
impl PyPoly {
    /// From surface text such as `"X^3 - 4"` or a list of coefficients,
    /// lowest degree first.
    #[new]
    fn new(ring: &PyRing, coeffs: &Bound<'_, PyAny>) -> PyResult<Self> {
        if let Ok(text) = coeffs.cast::<PyString>() {
            return parse_poly(&ring.0, text.to_str()?).map(PyPoly).map_err(err);
        }
        ncsplit::NcPoly::new(ring.0.clone(), values(&ring.0, coeffs)?).map(PyPoly).map_err(err)
    }

    #[getter]
    fn ring(&self) -> PyRing {
        PyRing(self.0.ring().clone())
    }

    fn coeffs(&self) -> Vec<PyElement> {
        let r = self.0.ring();
        self.0.coeffs().iter().map(|c| PyElement(ncsplit::Element::new(r.clone(), c.clone()).expect("own coefficient"))).collect()
    }

    fn degree(&self) -> Option<usize> {
        self.0.degree()
    }

    fn __repr__(&self) -> String {
        format!("Poly({}, '{}')", self.0.ring(), self.0)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __add__(&self, other: &PyPoly) -> PyResult<Self> {
        self.0.add(&other.0).map(PyPoly).map_err(err)
    }

    fn __sub__(&self, other: &PyPoly) -> PyResult<Self> {
        self.0.sub(&other.0).map(PyPoly).map_err(err)
    }

    fn __mul__(&self, other: &PyPoly) -> PyResult<Self> {
        self.0.mul(&other.0).map(PyPoly).map_err(err)
    }

    fn right_eval(&self, a: &Bound<'_, PyAny>) -> PyResult<PyElement> {
        let r = self.0.ring();
        let v = self.0.right_eval(element(r, a)?.value()).map_err(err)?;
        ncsplit::Element::new(r.clone(), v).map(PyElement).map_err(err)
    }

    fn left_eval(&self, a: &Bound<'_, PyAny>) -> PyResult<PyElement> {
        let r = self.0.ring();
        let v = self.0.left_eval(element(r, a)?.value()).map_err(err)?;
        ncsplit::Element::new(r.clone(), v).map(PyElement).map_err(err)
    }

    /// `(q, r)` with `f = q (X - a) + r`.
    fn right_divide(&self, a: &Bound<'_, PyAny>) -> PyResult<(PyPoly, PyElement)> {
        let r = self.0.ring();
        let (q, rem) = self.0.right_divide_linear(element(r, a)?.value()).map_err(err)?;
        Ok((PyPoly(q), PyElement(ncsplit::Element::new(r.clone(), rem).map_err(err)?)))
    }

    /// `(q, r)` with `f = (X - a) q + r`.
    fn left_divide(&self, a: &Bound<'_, PyAny>) -> PyResult<(PyPoly, PyElement)> {
        let r = self.0.ring();
        let (q, rem) = self.0.left_divide_linear(element(r, a)?.value()).map_err(err)?;
        Ok((PyPoly(q), PyElement(ncsplit::Element::new(r.clone(), rem).map_err(err)?)))
    }

    fn to_json<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        from_json(py, &self.0.to_json())
    }
}

fn witness(ring: &PyRing, pseudoroots: &Bound<'_, PyAny>) -> PyResult<SplittingWitness> {
    SplittingWitness::monic(ring.0.clone(), values(&ring.0, pseudoroots)?).map_err(err)
}

/// `(X - a_1) ... (X - a_n)`.
#[pyfunction]
fn expand(ring: &PyRing, pseudoroots: &Bound<'_, PyAny>) -> PyResult<PyPoly> {
    Ok(PyPoly(witness(ring, pseudoroots)?.expand()))
}

/// Pseudoroots shifted cyclically by `k`; `k = 1` moves the last to the front.
#[pyfunction]
#[pyo3(signature = (ring, pseudoroots, k = 1))]
fn rotate(ring: &PyRing, pseudoroots: &Bound<'_, PyAny>, k: i64) -> PyResult<Vec<PyElement>> {
    let w = witness(ring, pseudoroots)?.rotate(k);
    w.pseudoroots().iter().map(|v| ncsplit::Element::new(ring.0.clone(), v.clone()).map(PyElement).map_err(err)).collect()
}

/// Theorem report for a monic witness, as a dict.
#[pyfunction]
fn verify<'py>(py: Python<'py>, ring: &PyRing, pseudoroots: &Bound<'py, PyAny>) -> PyResult<Bound<'py, PyAny>> {
    let rep = ncsplit::verify_cyclic_theorem(&witness(ring, pseudoroots)?);
    let mut j = rep.to_json();
    j["theorem_holds"] = Json::Bool(rep.theorem_holds());
    from_json(py, &j)
}

/// Elements that are both right and left roots, in canonical order.
#[pyfunction]
fn find_roots(poly: &PyPoly) -> PyResult<Vec<PyElement>> {
    let r = poly.0.ring();
    core_find_roots(&poly.0)
        .map_err(err)?
        .into_iter()
        .map(|v| ncsplit::Element::new(r.clone(), v).map(PyElement).map_err(err))
        .collect()
}

/// JSON lines of an exhaustive splitting search.
#[pyfunction]
#[pyo3(signature = (poly, mode = "all", workers = None))]
fn search(poly: &PyPoly, mode: &str, workers: Option<usize>) -> PyResult<Vec<String>> {
    let mode: SearchMode = mode.parse().map_err(err)?;
    let mut task = SearchTask::new(poly.0.clone(), mode).map_err(err)?;
    if let Some(n) = workers {
        task = task.with_workers(n);
    }
    Ok(enumerate_splittings(&task).map_err(err)?.json_lines())
}

#[pyfunction]
fn centralizer<'py>(py: Python<'py>, ring: &PyRing, gens: &Bound<'py, PyAny>) -> PyResult<Bound<'py, PyAny>> {
    let desc = centralizer_of_set(&ring.0, &values(&ring.0, gens)?).map_err(err)?;
    let j = serde_json::to_value(&desc).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    from_json(py, &j)
}

/// Labels of the endomorphisms of the table algebra over Z/p.
#[pyfunction]
fn endos(p: u64) -> PyResult<Vec<String>> {
    let ext = Extension::new(p).map_err(err)?;
    Ok(enumerate_endos(&ext).map_err(err)?.iter().map(|e| e.label()).collect())
}

/// The full endomorphism battery over Z/p as a dict.
#[pyfunction]
fn battery<'py>(py: Python<'py>, p: u64) -> PyResult<Bound<'py, PyAny>> {
    from_json(py, &Battery::run(p).map_err(err)?.to_json())
}

#[pyfunction]
#[pyo3(signature = (ring = None))]
fn example1<'py>(py: Python<'py>, ring: Option<&PyRing>) -> PyResult<Bound<'py, PyAny>> {
    let r = ring.map_or_else(|| ncsplit::Ring::parse_spec("UT:2:Z").map_err(err), |r| Ok(r.0.clone()))?;
    from_json(py, &example1_suite(&r).map_err(err)?.to_json())
}

#[pyfunction]
#[pyo3(signature = (ring = None))]
fn example2<'py>(py: Python<'py>, ring: Option<&PyRing>) -> PyResult<Bound<'py, PyAny>> {
    let r = ring.map_or_else(|| ncsplit::Ring::parse_spec("Mat:3:Z").map_err(err), |r| Ok(r.0.clone()))?;
    from_json(py, &example2_suite(&r).map_err(err)?.to_json())
}

#[pymodule]
#[pyo3(name = "ncsplit")]
fn ncsplit_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyRing>()?;
    m.add_class::<PyElement>()?;
    m.add_class::<PyPoly>()?;
    for f in [
        wrap_pyfunction!(expand, m)?,
        wrap_pyfunction!(rotate, m)?,
        wrap_pyfunction!(verify, m)?,
        wrap_pyfunction!(find_roots, m)?,
        wrap_pyfunction!(search, m)?,
        wrap_pyfunction!(centralizer, m)?,
        wrap_pyfunction!(endos, m)?,
        wrap_pyfunction!(battery, m)?,
        wrap_pyfunction!(example1, m)?,
        wrap_pyfunction!(example2, m)?,
    ] {
        m.add_function(f)?;
    }
    Ok(())
}
