//! Python bindings. Structured results (reports, census entries, search
//! buckets) cross the boundary as plain dicts and lists via their JSON form.

use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;
use serde::Serialize;

use tight_chiral::classification::{self, CensusMode, Dedup};
use tight_chiral::structure::structure_report;
use tight_chiral::{self as tc, FamilySpec, GpParams};

create_exception!(tightchiral, TightChiralError, PyException);

fn to_py(e: tc::Error) -> PyErr {
    TightChiralError::new_err(format!("{}: {e}", e.tag()))
}

fn to_object<T: Serialize>(py: Python<'_>, value: &T) -> PyResult<Py<PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| TightChiralError::new_err(e.to_string()))?;
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

/// A presentation on `s1`, `s2`.
#[pyclass(name = "Presentation", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyPresentation(tc::Presentation);

#[pymethods]
impl PyPresentation {
    /// Parses the text format (`gp p q : i1 j1 i2 j2` or explicit relators).
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        tc::parse_presentation(text).map(Self).map_err(|e| to_py(e.into()))
    }

    /// The presentation with parameters `{p, q | i1, j1, i2, j2}`.
    #[staticmethod]
    fn gp(p: u64, q: u64, i1: i64, j1: i64, i2: i64, j2: i64) -> PyResult<Self> {
        let params = GpParams::new(p, q, i1, j1, i2, j2).map_err(to_py)?;
        tc::Presentation::family(params).map(Self).map_err(to_py)
    }

    fn dual(&self) -> Self {
        Self(self.0.dual())
    }

    fn enantiomorph(&self) -> Self {
        Self(self.0.enantiomorph())
    }

    /// `(p, q, i1, j1, i2, j2)` with canonical residues, or `None` for a
    /// presentation given by explicit relators.
    fn params(&self) -> Option<(u64, u64, u64, u64, u64, u64)> {
        self.0.params().map(|g| {
            let (i1, j1, i2, j2) = g.tuple();
            (g.p, g.q, i1, j1, i2, j2)
        })
    }

    #[pyo3(signature = (max_cosets=None))]
    fn realize(&self, max_cosets: Option<usize>) -> PyResult<PyGroup> {
        let limit = max_cosets.unwrap_or(self.0.default_max_cosets());
        tc::realize(&self.0, limit).map(PyGroup).map_err(to_py)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Presentation({:?})", self.0.to_string())
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}

/// A finite group given by two generating permutations.
#[pyclass(name = "Group", frozen)]
struct PyGroup(tc::Realization);

#[pymethods]
impl PyGroup {
    #[getter]
    fn order(&self) -> usize {
        self.0.order()
    }

    #[getter]
    fn generator_orders(&self) -> (usize, usize) {
        self.0.gen_orders()
    }

    /// Type, order, tightness, verdict and atomicity as a dict.
    fn classify(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        to_object(py, &tc::classify_group(&self.0))
    }

    /// The structural checks for a tight chiral group as a dict.
    fn structure(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        to_object(py, &structure_report(&self.0))
    }

    /// Whether `self` covers `other` sending generators to generators.
    fn covers(&self, other: &PyGroup) -> bool {
        tc::covers(&self.0, &other.0)
    }

    fn mix(&self, other: &PyGroup) -> PyGroup {
        PyGroup(tc::mix(&self.0, &other.0))
    }

    fn __repr__(&self) -> String {
        let (p, q) = self.0.gen_orders();
        format!("Group(order={}, type={{{p}, {q}}})", self.0.order())
    }
}

/// The presentation of `comix(a, b)`.
#[pyfunction]
fn comix(a: &PyPresentation, b: &PyPresentation) -> PyPresentation {
    PyPresentation(tc::comix(&a.0, &b.0))
}

/// Realizes a named family member such as `"odd-atomic m=3 beta=2 k=1"`.
#[pyfunction]
fn family(spec: &str) -> PyResult<PyGroup> {
    let spec: FamilySpec = spec.parse().map_err(to_py)?;
    spec.build().and_then(|b| b.realize()).map(PyGroup).map_err(to_py)
}

#[pyfunction]
fn admissible(p: u64, q: u64) -> bool {
    classification::admissible(p, q)
}

/// Text form of the witness construction for an admissible type.
#[pyfunction]
fn witness(p: u64, q: u64) -> PyResult<String> {
    classification::witness_for(p, q).map(|w| w.to_string()).map_err(to_py)
}

/// Admissible types with at most `max_flags` flags, as a list of dicts.
#[pyfunction]
#[pyo3(signature = (max_flags, verify=false))]
fn census(py: Python<'_>, max_flags: u64, verify: bool) -> PyResult<Py<PyAny>> {
    let mode = if verify { CensusMode::Verified } else { CensusMode::Predicate };
    let entries = classification::census(max_flags, mode).map_err(to_py)?;
    to_object(py, &entries)
}

/// Exhaustive search over one type; returns the result as a dict.
#[pyfunction]
#[pyo3(signature = (p, q, dedup="none", budget=classification::DEFAULT_SEARCH_BUDGET, jobs=1))]
fn search(py: Python<'_>, p: u64, q: u64, dedup: &str, budget: u64, jobs: usize) -> PyResult<Py<PyAny>> {
    let dedup: Dedup = dedup.parse().map_err(to_py)?;
    let result = py
        .detach(|| classification::exhaustive_search(p, q, dedup, budget, jobs.max(1)))
        .map_err(to_py)?;
    to_object(py, &result)
}

#[pymodule]
fn tightchiral(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("TightChiralError", m.py().get_type::<TightChiralError>())?;
    m.add_class::<PyPresentation>()?;
    m.add_class::<PyGroup>()?;
    m.add_function(wrap_pyfunction!(comix, m)?)?;
    m.add_function(wrap_pyfunction!(family, m)?)?;
    m.add_function(wrap_pyfunction!(admissible, m)?)?;
    m.add_function(wrap_pyfunction!(witness, m)?)?;
    m.add_function(wrap_pyfunction!(census, m)?)?;
    m.add_function(wrap_pyfunction!(search, m)?)?;
    Ok(())
}
