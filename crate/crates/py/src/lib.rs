//! Python bindings: `import pyg2enum`.

use g2enum::algebra::Rational;
use g2enum::genus2::{self, Genus2Report};
use g2enum::{ConstraintProfile, Error};
use num_bigint::BigInt;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn to_py_err(e: Error) -> PyErr {
    match e {
        Error::Consistency(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn fraction<'py>(py: Python<'py>, v: &Rational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?
        .getattr("Fraction")?
        .call1((v.numer().clone(), v.denom().clone()))
}

/// Memo table of genus-zero invariants; share one across calls to reuse work.
#[pyclass(frozen, name = "GwTable")]
struct PyGwTable {
    inner: g2enum::GwTable,
}

#[pymethods]
impl PyGwTable {
    #[new]
    fn new() -> Self {
        Self {
            inner: g2enum::GwTable::new(),
        }
    }

    /// Genus-zero invariant of `P^ambient` with the given exponents, as a Fraction.
    fn gw0<'py>(
        &self,
        py: Python<'py>,
        ambient: u8,
        degree: i64,
        insertions: Vec<u8>,
    ) -> PyResult<Bound<'py, PyAny>> {
        let v = self
            .inner
            .gw0(ambient, degree, &insertions)
            .map_err(to_py_err)?;
        fraction(py, &v)
    }

    fn n_plane(&self, degree: i64) -> PyResult<BigInt> {
        self.inner.n_plane(degree).map_err(to_py_err)
    }

    fn n_p3(&self, degree: i64, points: u32, lines: u32) -> PyResult<BigInt> {
        self.inner.n_p3(degree, points, lines).map_err(to_py_err)
    }

    /// `(entries, hits, misses)`.
    fn stats(&self) -> (usize, u64, u64) {
        let s = self.inner.stats();
        (s.entries, s.hits, s.misses)
    }

    fn save(&self, path: std::path::PathBuf) -> PyResult<()> {
        g2enum::cache::store(&self.inner, &path).map_err(to_py_err)
    }

    fn load(&self, path: std::path::PathBuf) -> PyResult<usize> {
        g2enum::cache::load(&self.inner, &path).map_err(to_py_err)
    }

    /// Genus-two count; for P^2 the points default to 3d - 2.
    #[pyo3(signature = (ambient, degree, points=None, lines=0))]
    fn n2<'py>(
        &self,
        py: Python<'py>,
        ambient: u8,
        degree: i64,
        points: Option<u32>,
        lines: u32,
    ) -> PyResult<Bound<'py, PyDict>> {
        let points = points.unwrap_or((3 * degree - 2).max(0) as u32);
        let profile = ConstraintProfile::new(ambient, degree, points, lines).map_err(to_py_err)?;
        let report = py
            .detach(|| genus2::compute(&self.inner, &profile))
            .map_err(to_py_err)?;
        report_dict(py, &report)
    }
}

fn report_dict<'py>(py: Python<'py>, r: &Genus2Report) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("ambient", r.ambient)?;
    d.set_item("degree", r.degree)?;
    d.set_item("points", r.points)?;
    d.set_item("lines", r.lines)?;
    d.set_item("rt", r.rt.clone())?;
    d.set_item("cr", r.cr.clone())?;
    d.set_item("n2", r.n2.clone())?;
    let inter = PyDict::new(py);
    for (k, v) in &r.intermediates {
        inter.set_item(k, fraction(py, v)?)?;
    }
    d.set_item("intermediates", inter)?;
    d.set_item("warnings", r.warnings.clone())?;
    Ok(d)
}

/// Closed-form genus-two count of plane curves through `3d - 2` points.
#[pyfunction]
fn n2_p2_closed(degree: i64) -> PyResult<BigInt> {
    genus2::n2_p2_closed(&g2enum::GwTable::new(), degree).map_err(to_py_err)
}

#[pyfunction]
fn binomial(n: u64, k: i64) -> BigInt {
    g2enum::binomial(n, k)
}

#[pymodule]
fn pyg2enum(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGwTable>()?;
    m.add_function(wrap_pyfunction!(n2_p2_closed, m)?)?;
    m.add_function(wrap_pyfunction!(binomial, m)?)?;
    Ok(())
}
