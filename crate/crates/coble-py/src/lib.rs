//! Python bindings. Structured results are returned as plain dicts and lists.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use serde_json::{json, Value};

use coble::config::{covariant_vector, genericity_check, proportional, PointConfig};
use coble::covariants::coble_basis;
use coble::cuspidal::{d5_fields, x_hat};
use coble::lattice::{CartanType, RootSystem};
use coble::suites::{run_suites, SuiteOptions, SUITES};

fn err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py(py: Python<'_>, v: &Value) -> PyResult<Py<PyAny>> {
    let text = serde_json::to_string(v).map_err(err)?;
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

/// Points as sequences of three ints, `Fraction`s or "p/q" strings.
fn config(points: Vec<Vec<Bound<'_, PyAny>>>) -> PyResult<PointConfig> {
    let mut rows = Vec::new();
    for p in &points {
        if p.len() != 3 {
            return Err(PyValueError::new_err("each point needs 3 coordinates"));
        }
        let row: Vec<String> = p.iter().map(|x| Ok(x.str()?.to_string())).collect::<PyResult<_>>()?;
        rows.push(row);
    }
    PointConfig::from_json(&json!({ "points": rows })).map_err(err)
}

/// Number of roots of the root system attached to degree d.
#[pyfunction]
fn root_count(d: i64) -> PyResult<usize> {
    Ok(RootSystem::for_degree(d).map_err(err)?.len())
}

/// Number of root subsystems of the given Cartan type, e.g. "3A2".
#[pyfunction]
fn subsystem_count(d: i64, kind: &str) -> PyResult<usize> {
    let rs = RootSystem::for_degree(d).map_err(err)?;
    let t: CartanType = kind.parse().map_err(err)?;
    Ok(rs.enumerate_subsystems(&t).len())
}

/// Covariants of degree d with their span: keys d, degree, count, dimension, basis, covariants.
#[pyfunction]
fn covariants(py: Python<'_>, d: i64) -> PyResult<Py<PyAny>> {
    let (rc, space) = coble_basis(d).map_err(err)?;
    to_py(py, &space.to_json(&rc))
}

/// Covariant values on 9 − d points.
#[pyfunction]
fn evaluate(py: Python<'_>, d: i64, points: Vec<Vec<Bound<'_, PyAny>>>) -> PyResult<Py<PyAny>> {
    let c = config(points)?;
    let g = genericity_check(&c).map_err(err)?;
    let v = covariant_vector(&c, d).map_err(err)?;
    to_py(
        py,
        &json!({ "generic": g.is_generic(), "collinear": g.collinear, "conconic": g.conconic, "vector": v.to_json() }),
    )
}

/// Whether two configurations give proportional covariant vectors.
#[pyfunction]
fn same_projective_vector(d: i64, a: Vec<Vec<Bound<'_, PyAny>>>, b: Vec<Vec<Bound<'_, PyAny>>>) -> PyResult<bool> {
    let va = covariant_vector(&config(a)?, d).map_err(err)?;
    let vb = covariant_vector(&config(b)?, d).map_err(err)?;
    Ok(proportional(&va.values, &vb.values))
}

#[pyfunction]
fn vector_fields(py: Python<'_>) -> PyResult<Py<PyAny>> {
    let x = x_hat().map_err(err)?;
    let (x2, x3) = d5_fields().map_err(err)?;
    to_py(py, &json!({ "e6": { "x_hat": x.to_json() }, "d5": { "x2": x2.to_json(), "x3": x3.to_json() } }))
}

#[pyfunction]
fn suite_names() -> Vec<&'static str> {
    SUITES.to_vec()
}

/// Run suites by name ("all" for every suite); returns one report dict per suite.
#[pyfunction]
#[pyo3(signature = (names, seed = 7))]
fn verify(py: Python<'_>, names: Vec<String>, seed: u64) -> PyResult<Py<PyAny>> {
    let opts = SuiteOptions { seed, ..SuiteOptions::default() };
    let reports = py.detach(|| run_suites(&names, &opts)).map_err(err)?;
    to_py(py, &Value::Array(reports.iter().map(|r| r.to_json(false)).collect()))
}

#[pymodule]
fn coble_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(root_count, m)?)?;
    m.add_function(wrap_pyfunction!(subsystem_count, m)?)?;
    m.add_function(wrap_pyfunction!(covariants, m)?)?;
    m.add_function(wrap_pyfunction!(evaluate, m)?)?;
    m.add_function(wrap_pyfunction!(same_projective_vector, m)?)?;
    m.add_function(wrap_pyfunction!(vector_fields, m)?)?;
    m.add_function(wrap_pyfunction!(suite_names, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
