//! Python module `ocn`: digraphs, the three expression languages and the
//! coloring engines. Colors are 0-based lists indexed by vertex.

use ocn_core::cograph::{cograph_ocn as cograph_engine, is_oriented_cograph};
use ocn_core::coloring::{transitive_dag_coloring as transitive_engine, verify_oriented_coloring, Coloring, Violation};
use ocn_core::cw_solver::{cw_ocn as cw_engine, cw_ocn_at_most as cw_engine_at_most};
use ocn_core::expr::{
    dico_to_cw2, eval_cw, eval_dico, eval_msp, msp_to_cw7, parse_cw, parse_dico, parse_msp, CwExpr, DicoExpr,
    MspExpr,
};
use ocn_core::ilp::{emit_bip as emit, enumerate_check as check_model};
use ocn_core::instances::{self, Instance};
use ocn_core::io::{parse_edgelist, to_dot, write_edgelist};
use ocn_core::msp_solver::{msp_ocn as msp_engine, paley_coloring as paley, und_3coloring as und3};
use ocn_core::oracle::{ocn_decide as decide, ocn_exact_with_limit, DEFAULT_MAX_N};
use ocn_core::{Digraph, OcnError};
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

create_exception!(ocn, OcnInputError, PyValueError, "Invalid input or a failed precondition.");

fn err(e: OcnError) -> PyErr {
    OcnInputError::new_err(e.to_string())
}

#[pyclass(name = "Digraph", module = "ocn", frozen)]
struct PyDigraph {
    g: Digraph,
}

#[pymethods]
impl PyDigraph {
    /// `Digraph(n, arcs)` or `Digraph(n, arcs, names)`.
    #[new]
    #[pyo3(signature = (n, arcs, names = None))]
    fn new(n: usize, arcs: Vec<(usize, usize)>, names: Option<Vec<String>>) -> PyResult<Self> {
        let g = match names {
            Some(names) if names.len() != n => {
                return Err(OcnInputError::new_err(format!("{} names for {n} vertices", names.len())))
            }
            Some(names) => Digraph::with_names(names, arcs),
            None => Digraph::from_arcs(n, arcs),
        };
        Ok(PyDigraph { g: g.map_err(err)? })
    }

    #[staticmethod]
    fn from_edgelist(text: &str) -> PyResult<Self> {
        Ok(PyDigraph { g: parse_edgelist(text).map_err(err)? })
    }

    #[getter]
    fn vertex_count(&self) -> usize {
        self.g.vertex_count()
    }

    #[getter]
    fn arc_count(&self) -> usize {
        self.g.arc_count()
    }

    fn names(&self) -> Vec<String> {
        self.g.names().to_vec()
    }

    fn arcs(&self) -> Vec<(usize, usize)> {
        self.g.arcs().collect()
    }

    fn is_oriented(&self) -> bool {
        self.g.is_oriented()
    }

    fn is_acyclic(&self) -> bool {
        self.g.is_acyclic()
    }

    fn is_transitive(&self) -> bool {
        self.g.is_transitive()
    }

    fn is_oriented_cograph(&self) -> PyResult<bool> {
        is_oriented_cograph(&self.g).map_err(err)
    }

    fn to_edgelist(&self) -> String {
        write_edgelist(&self.g)
    }

    #[pyo3(signature = (colors = None))]
    fn to_dot(&self, colors: Option<Vec<usize>>) -> String {
        to_dot(&self.g, colors.map(Coloring::new).as_ref())
    }

    fn __repr__(&self) -> String {
        format!("Digraph(vertices={}, arcs={})", self.g.vertex_count(), self.g.arc_count())
    }
}

#[pyclass(name = "DicoExpr", module = "ocn", frozen)]
struct PyDicoExpr {
    e: DicoExpr,
}

#[pymethods]
impl PyDicoExpr {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        Ok(PyDicoExpr { e: parse_dico(text).map_err(err)? })
    }

    #[getter]
    fn leaf_count(&self) -> usize {
        self.e.leaf_count()
    }

    fn digraph(&self) -> PyDigraph {
        PyDigraph { g: eval_dico(&self.e) }
    }

    fn to_cw(&self) -> PyCwExpr {
        PyCwExpr { e: dico_to_cw2(&self.e) }
    }

    fn __str__(&self) -> String {
        self.e.to_text()
    }

    fn __repr__(&self) -> String {
        format!("DicoExpr({:?})", self.e.to_text())
    }
}

#[pyclass(name = "MspExpr", module = "ocn", frozen)]
struct PyMspExpr {
    e: MspExpr,
}

#[pymethods]
impl PyMspExpr {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        Ok(PyMspExpr { e: parse_msp(text).map_err(err)? })
    }

    #[getter]
    fn leaf_count(&self) -> usize {
        self.e.leaf_count()
    }

    fn digraph(&self) -> PyDigraph {
        PyDigraph { g: eval_msp(&self.e) }
    }

    fn to_cw(&self) -> PyCwExpr {
        PyCwExpr { e: msp_to_cw7(&self.e) }
    }

    fn __str__(&self) -> String {
        self.e.to_text()
    }

    fn __repr__(&self) -> String {
        format!("MspExpr({:?})", self.e.to_text())
    }
}

#[pyclass(name = "CwExpr", module = "ocn", frozen)]
struct PyCwExpr {
    e: CwExpr,
}

#[pymethods]
impl PyCwExpr {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        Ok(PyCwExpr { e: parse_cw(text).map_err(err)? })
    }

    /// Largest label used.
    #[getter]
    fn labels(&self) -> PyResult<usize> {
        Ok(self.e.validate().map_err(err)?.k as usize)
    }

    fn digraph(&self) -> PyResult<PyDigraph> {
        Ok(PyDigraph { g: eval_cw(&self.e).map_err(err)?.0 })
    }

    fn __str__(&self) -> String {
        self.e.to_text()
    }

    fn __repr__(&self) -> String {
        format!("CwExpr({:?})", self.e.to_text())
    }
}

/// `(chi_o, colors)` for a di-co expression.
#[pyfunction]
fn cograph_ocn(e: &PyDicoExpr) -> (usize, Vec<usize>) {
    let (chi, c) = cograph_engine(&e.e);
    (chi, c.into_vec())
}

/// `(chi_o, colors)` for an msp expression.
#[pyfunction]
fn msp_ocn(e: &PyMspExpr) -> (usize, Vec<usize>) {
    let (chi, c) = msp_engine(&e.e);
    (chi, c.into_vec())
}

/// A coloring into the Paley tournament on seven vertices.
#[pyfunction]
fn paley_coloring(e: &PyMspExpr) -> Vec<usize> {
    paley(&e.e).into_vec()
}

/// A proper 3-coloring of the underlying graph.
#[pyfunction]
fn und_3coloring(e: &PyMspExpr) -> Vec<usize> {
    und3(&e.e).into_vec()
}

#[pyfunction]
fn cw_ocn(e: &PyCwExpr) -> PyResult<usize> {
    cw_engine(&e.e).map_err(err)
}

/// `(feasible, fewest colors used)` for at most `r` colors.
#[pyfunction]
fn cw_ocn_at_most(e: &PyCwExpr, r: usize) -> PyResult<(bool, Option<usize>)> {
    cw_engine_at_most(&e.e, r).map_err(err)
}

/// `(chi_o, colors)` by exhaustive search.
#[pyfunction]
#[pyo3(signature = (g, max_n = DEFAULT_MAX_N))]
fn ocn_exact(g: &PyDigraph, max_n: usize) -> PyResult<(usize, Vec<usize>)> {
    let (chi, c) = ocn_exact_with_limit(&g.g, max_n).map_err(err)?;
    Ok((chi, c.into_vec()))
}

/// An oriented coloring with at most `r` colors, or `None`.
#[pyfunction]
fn ocn_decide(g: &PyDigraph, r: usize) -> PyResult<Option<Vec<usize>>> {
    Ok(decide(&g.g, r).map_err(err)?.map(Coloring::into_vec))
}

#[pyfunction]
fn transitive_dag_coloring(g: &PyDigraph) -> PyResult<Vec<usize>> {
    Ok(transitive_engine(&g.g).map_err(err)?.into_vec())
}

/// `None` for an oriented coloring, otherwise the offending arcs.
#[pyfunction]
fn verify_coloring(g: &PyDigraph, colors: Vec<usize>) -> PyResult<Option<Vec<(usize, usize)>>> {
    Ok(verify_oriented_coloring(&g.g, &Coloring::new(colors)).map_err(err)?.map(|v| match v {
        Violation::MonochromaticArc(a) => vec![a],
        Violation::OppositeArcs(a, b) => vec![a, b],
    }))
}

/// The integer program in LP text format.
#[pyfunction]
fn emit_bip(g: &PyDigraph) -> PyResult<String> {
    emit(&g.g).map_err(err)
}

#[pyfunction]
fn enumerate_check(g: &PyDigraph, r: usize) -> PyResult<bool> {
    check_model(&g.g, r).map_err(err)
}

/// A named instance: a `Digraph`, `DicoExpr` or `MspExpr`.
#[pyfunction]
#[pyo3(signature = (name, *params))]
fn gen_named(py: Python<'_>, name: &str, params: Vec<usize>) -> PyResult<Py<PyAny>> {
    Ok(match instances::gen_named(name, &params).map_err(err)? {
        Instance::Digraph(g) => Py::new(py, PyDigraph { g })?.into_any(),
        Instance::Dico(e) => Py::new(py, PyDicoExpr { e })?.into_any(),
        Instance::Msp(e) => Py::new(py, PyMspExpr { e })?.into_any(),
    })
}

fn positive(n: usize) -> PyResult<()> {
    if n == 0 {
        return Err(OcnInputError::new_err("an expression needs at least one leaf"));
    }
    Ok(())
}

#[pyfunction]
#[pyo3(signature = (n, seed = 0))]
fn random_msp(n: usize, seed: u64) -> PyResult<PyMspExpr> {
    positive(n)?;
    Ok(PyMspExpr { e: instances::random_msp(n, seed) })
}

#[pyfunction]
#[pyo3(signature = (n, seed = 0))]
fn random_dico(n: usize, seed: u64) -> PyResult<PyDicoExpr> {
    positive(n)?;
    Ok(PyDicoExpr { e: instances::random_dico(n, seed) })
}

#[pymodule]
fn ocn(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("OcnInputError", m.py().get_type::<OcnInputError>())?;
    m.add_class::<PyDigraph>()?;
    m.add_class::<PyDicoExpr>()?;
    m.add_class::<PyMspExpr>()?;
    m.add_class::<PyCwExpr>()?;
    m.add_function(wrap_pyfunction!(cograph_ocn, m)?)?;
    m.add_function(wrap_pyfunction!(msp_ocn, m)?)?;
    m.add_function(wrap_pyfunction!(paley_coloring, m)?)?;
    m.add_function(wrap_pyfunction!(und_3coloring, m)?)?;
    m.add_function(wrap_pyfunction!(cw_ocn, m)?)?;
    m.add_function(wrap_pyfunction!(cw_ocn_at_most, m)?)?;
    m.add_function(wrap_pyfunction!(ocn_exact, m)?)?;
    m.add_function(wrap_pyfunction!(ocn_decide, m)?)?;
    m.add_function(wrap_pyfunction!(transitive_dag_coloring, m)?)?;
    m.add_function(wrap_pyfunction!(verify_coloring, m)?)?;
    m.add_function(wrap_pyfunction!(emit_bip, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_check, m)?)?;
    m.add_function(wrap_pyfunction!(gen_named, m)?)?;
    m.add_function(wrap_pyfunction!(random_msp, m)?)?;
    m.add_function(wrap_pyfunction!(random_dico, m)?)?;
    Ok(())
}
