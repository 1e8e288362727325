//! Python module `pyextpow`.
//!
//! Matrices cross the boundary as nested lists of scalar strings (`"3/4"`,
//! `"1/2+1/2*sqrt(5)"`); reports come back as dictionaries decoded from the
//! same JSON the command-line tool prints.

use pyo3::exceptions::{PyKeyError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyAny;

use extpow::catalog;
use extpow::exterior;
use extpow::linalg::Matrix;
use extpow::reflect;
use extpow::repfile::{parse_rep_file, render_rep_file};
use extpow::repkit::{self, Generator, Representation};
use extpow::report::{analysis_json, theorem_json};
use extpow::theoremlab::{self, VerifyOptions};
use extpow::Scalar;

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_matrix(rows: Vec<Vec<String>>) -> PyResult<Matrix> {
    let parsed = rows
        .into_iter()
        .map(|r| r.iter().map(|x| x.parse::<Scalar>()).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(value_error)?;
    Matrix::from_rows(parsed).map_err(value_error)
}

fn to_python<'py>(py: Python<'py>, value: &serde_json::Value) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (value.to_string(),))
}

#[pyclass(name = "Representation", module = "pyextpow", frozen)]
struct PyRepresentation {
    inner: Representation,
}

#[pymethods]
impl PyRepresentation {
    /// Builds a representation from generator matrices; labels default to
    /// `s1, s2, ...`.
    #[new]
    #[pyo3(signature = (matrices, labels = None))]
    fn new(matrices: Vec<Vec<Vec<String>>>, labels: Option<Vec<String>>) -> PyResult<Self> {
        let mats = matrices.into_iter().map(parse_matrix).collect::<PyResult<Vec<_>>>()?;
        let labels = match labels {
            Some(l) if l.len() != mats.len() => {
                return Err(PyValueError::new_err("one label per generator is required"));
            }
            Some(l) => l,
            None => (1..=mats.len()).map(|i| format!("s{i}")).collect(),
        };
        let dim = mats.first().map_or(0, Matrix::rows);
        let generators = labels
            .into_iter()
            .zip(mats)
            .map(|(label, matrix)| Generator { label, matrix })
            .collect();
        Ok(PyRepresentation {
            inner: Representation::new(dim, generators).map_err(value_error)?,
        })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyRepresentation {
            inner: parse_rep_file(text).map_err(value_error)?,
        })
    }

    #[staticmethod]
    fn catalog(name: &str) -> PyResult<Self> {
        let e = catalog::entry(name).map_err(|e| PyKeyError::new_err(e.to_string()))?;
        Ok(PyRepresentation {
            inner: e.representation,
        })
    }

    fn to_json(&self) -> String {
        render_rep_file(&self.inner)
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn field(&self) -> String {
        self.inner.field().to_string()
    }

    #[getter]
    fn labels(&self) -> Vec<String> {
        self.inner.generators().iter().map(|g| g.label.clone()).collect()
    }

    #[getter]
    fn matrices(&self) -> Vec<Vec<Vec<String>>> {
        self.inner.generators().iter().map(|g| g.matrix.to_strings()).collect()
    }

    fn exterior(&self, d: usize) -> PyResult<Self> {
        Ok(PyRepresentation {
            inner: repkit::exterior_rep(&self.inner, d).map_err(value_error)?,
        })
    }

    fn dual(&self) -> PyResult<Self> {
        Ok(PyRepresentation {
            inner: repkit::dual_rep(&self.inner).map_err(value_error)?,
        })
    }

    fn hom_dim(&self, other: &PyRepresentation) -> PyResult<usize> {
        repkit::hom_dim(&self.inner, &other.inner).map_err(value_error)
    }

    /// Reflection data, graph and condition checks.
    fn analyze<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let h = theoremlab::check_hypotheses(&self.inner);
        to_python(py, &analysis_json(&h).map_err(value_error)?)
    }

    /// Full certification report.
    #[pyo3(signature = (trace = false, degrees = None))]
    fn verify<'py>(
        &self,
        py: Python<'py>,
        trace: bool,
        degrees: Option<Vec<usize>>,
    ) -> PyResult<Bound<'py, PyAny>> {
        let opts = VerifyOptions {
            trace,
            degrees,
            ..VerifyOptions::default()
        };
        let report = py
            .detach(|| theoremlab::verify_theorem_with(&self.inner, &opts))
            .map_err(value_error)?;
        to_python(py, &theorem_json(&report).map_err(value_error)?)
    }

    fn __repr__(&self) -> String {
        format!(
            "Representation(dim={}, generators={}, field={})",
            self.inner.dim(),
            self.inner.generators().len(),
            self.inner.field()
        )
    }
}

/// Matrix of `d x d` minors, rows and columns in lexicographic subset order.
#[pyfunction]
fn compound(matrix: Vec<Vec<String>>, d: usize) -> PyResult<Vec<Vec<String>>> {
    let m = parse_matrix(matrix)?;
    Ok(exterior::compound(&m, d).map_err(value_error)?.to_strings())
}

/// Coordinates of `v_1 ∧ .. ∧ v_d`.
#[pyfunction]
fn wedge(vectors: Vec<Vec<String>>) -> PyResult<Vec<String>> {
    let m = parse_matrix(vectors)?;
    if m.rows() == 0 {
        return Err(PyValueError::new_err("at least one vector is required"));
    }
    Ok(exterior::wedge(&m.row_vectors()).iter().map(ToString::to_string).collect())
}

#[pyfunction]
fn recognize_reflection<'py>(py: Python<'py>, matrix: Vec<Vec<String>>) -> PyResult<Bound<'py, PyAny>> {
    let m = parse_matrix(matrix)?;
    let data = reflect::recognize_reflection(&m).map_err(value_error)?;
    to_python(py, &serde_json::to_value(&data).map_err(value_error)?)
}

#[pyfunction]
fn catalog_names() -> Vec<String> {
    catalog::list_entries()
}

#[pymodule]
fn pyextpow(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyRepresentation>()?;
    m.add_function(wrap_pyfunction!(compound, m)?)?;
    m.add_function(wrap_pyfunction!(wedge, m)?)?;
    m.add_function(wrap_pyfunction!(recognize_reflection, m)?)?;
    m.add_function(wrap_pyfunction!(catalog_names, m)?)?;
    Ok(())
}
