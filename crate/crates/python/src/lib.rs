//! Python bindings. Graphs are wrapped as `preclusion.Graph`; certificates
//! and verification reports come back as plain dicts with the same layout
//! as the CLI's JSON.

use std::str::FromStr;

use preclusion::generators;
use preclusion::hypercube;
use preclusion::io::{self, Format};
use preclusion::matching;
use preclusion::preclusion::{brute_force_solve, solve, PreclusionCertificate, ProblemKind, SolveOptions, SolveStats};
use preclusion::reduction;
use preclusion::suites;
use preclusion::Graph;
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;
use serde::Serialize;

create_exception!(
    preclusion,
    PreclusionError,
    PyValueError,
    "Invalid input, unmet precondition or exceeded search limit."
);

fn err(e: preclusion::Error) -> PyErr {
    PreclusionError::new_err(e.to_string())
}

fn to_py<'py>(py: Python<'py>, value: &impl Serialize) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PreclusionError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

fn problem_kind(mode: &str, s: Option<usize>) -> PyResult<ProblemKind> {
    match (mode, s) {
        ("mp", None) => Ok(ProblemKind::Mp),
        ("ak", None) => Ok(ProblemKind::Ak),
        ("mps", Some(s)) => Ok(ProblemKind::Mps { s }),
        ("mps", None) => Err(PreclusionError::new_err("mode 'mps' needs s")),
        ("mp" | "ak", Some(_)) => Err(PreclusionError::new_err("s only applies to mode 'mps'")),
        (other, _) => Err(PreclusionError::new_err(format!("unknown mode {other:?}; use mp, mps or ak"))),
    }
}

#[derive(Serialize)]
struct Solved<'a> {
    #[serde(flatten)]
    certificate: &'a PreclusionCertificate,
    stats: &'a SolveStats,
}

/// A simple undirected graph with canonical edge ids.
#[pyclass(name = "Graph", module = "preclusion", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
pub struct PyGraph {
    inner: Graph,
}

impl From<Graph> for PyGraph {
    fn from(inner: Graph) -> Self {
        PyGraph { inner }
    }
}

fn wrap(g: preclusion::Result<Graph>) -> PyResult<PyGraph> {
    g.map(PyGraph::from).map_err(err)
}

#[pymethods]
impl PyGraph {
    #[new]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        wrap(Graph::from_edges(n, edges))
    }

    /// Parses graph6, an "n m" edge list or JSON; `format` defaults to
    /// auto-detection.
    #[staticmethod]
    #[pyo3(signature = (text, format = None))]
    fn parse(text: &str, format: Option<&str>) -> PyResult<Self> {
        let bytes = text.as_bytes();
        match format {
            None => wrap(io::parse_auto(bytes)),
            Some(f) => wrap(io::parse(Format::from_str(f).map_err(err)?, bytes)),
        }
    }

    #[staticmethod]
    fn from_graph6(text: &str) -> PyResult<Self> {
        wrap(io::parse_graph6(text.as_bytes()))
    }

    #[staticmethod]
    fn hypercube(n: usize) -> PyResult<Self> {
        wrap(generators::hypercube(n))
    }

    #[staticmethod]
    fn complete(n: usize) -> PyResult<Self> {
        wrap(generators::complete(n))
    }

    #[staticmethod]
    fn complete_bipartite(a: usize, b: usize) -> PyResult<Self> {
        wrap(generators::complete_bipartite(a, b))
    }

    #[staticmethod]
    fn petersen() -> Self {
        generators::petersen().into()
    }

    #[staticmethod]
    fn cycle(n: usize) -> PyResult<Self> {
        wrap(generators::cycle(n))
    }

    #[staticmethod]
    fn path(n: usize) -> PyResult<Self> {
        wrap(generators::path(n))
    }

    /// G(n, p) with a fixed seed.
    #[staticmethod]
    #[pyo3(signature = (n, p, seed = 0))]
    fn random(n: usize, p: f64, seed: u64) -> PyResult<Self> {
        wrap(generators::random_graph(n, p, seed))
    }

    /// Balanced bipartite graph on 2t vertices containing the perfect
    /// matching u_i v_i, plus each other cross edge with probability p.
    #[staticmethod]
    #[pyo3(signature = (t, p, seed = 0))]
    fn random_bipartite(t: usize, p: f64, seed: u64) -> PyResult<Self> {
        wrap(generators::random_bipartite_with_pm(t, p, seed))
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.m()
    }

    #[getter]
    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges().to_vec()
    }

    fn degree(&self, v: usize) -> PyResult<usize> {
        self.inner.check_vertex(v).map_err(err)?;
        Ok(self.inner.degree(v))
    }

    fn is_connected(&self) -> bool {
        self.inner.is_connected()
    }

    fn is_bipartite(&self) -> bool {
        self.inner.two_colouring().is_some()
    }

    fn to_graph6(&self) -> String {
        io::to_graph6(&self.inner)
    }

    fn to_edge_list(&self) -> String {
        io::to_edge_list(&self.inner)
    }

    fn to_json(&self) -> String {
        io::to_json(&self.inner)
    }

    fn matching_number(&self) -> usize {
        matching::matching_number(&self.inner)
    }

    /// A maximum matching as a list of (u, v) pairs.
    fn max_matching(&self) -> Vec<(usize, usize)> {
        matching::max_matching(&self.inner).edges().endpoints(&self.inner)
    }

    fn has_perfect_matching(&self) -> bool {
        matching::has_perfect_matching(&self.inner)
    }

    /// min over 2-paths u-w-v of d(u) + d(v) - 2 - [u ~ v], an upper bound
    /// on mp_1. None when the graph has no 2-path.
    fn v_e(&self) -> Option<usize> {
        hypercube::compute_v_e(&self.inner)
    }

    /// Exact mp, mp_s or anti-Kekulé number with a witness; `budget`
    /// turns it into the decision "value <= budget".
    #[pyo3(signature = (mode, s = None, budget = None, deterministic = true, jobs = 1))]
    fn solve<'py>(
        &self,
        py: Python<'py>,
        mode: &str,
        s: Option<usize>,
        budget: Option<usize>,
        deterministic: bool,
        jobs: usize,
    ) -> PyResult<Bound<'py, PyAny>> {
        let kind = problem_kind(mode, s)?;
        let options = SolveOptions {
            budget,
            deterministic,
            jobs: jobs.max(1),
        };
        let sol = py.detach(|| solve(&self.inner, kind, &options)).map_err(err)?;
        to_py(
            py,
            &Solved {
                certificate: &sol.certificate,
                stats: &sol.stats,
            },
        )
    }

    /// The exhaustive oracle: subsets by size, then lexicographically.
    #[pyo3(signature = (mode, s = None))]
    fn brute_force<'py>(&self, py: Python<'py>, mode: &str, s: Option<usize>) -> PyResult<Bound<'py, PyAny>> {
        let kind = problem_kind(mode, s)?;
        let cert = py.detach(|| brute_force_solve(&self.inner, kind)).map_err(err)?;
        to_py(py, &cert)
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, m={})", self.inner.n(), self.inner.m())
    }
}

/// Builds the gadget G'. The dict holds the gadget as a Graph plus the
/// labels of u', u'', v', v'', e = u''v'' and e' = u'v'.
#[pyfunction]
fn reduce<'py>(py: Python<'py>, graph: &PyGraph) -> PyResult<Bound<'py, PyDict>> {
    let r = reduction::build_reduction(&graph.inner).map_err(err)?;
    let gadget = r.gadget();
    let a = r.added();
    let out = PyDict::new(py);
    out.set_item("gadget", PyGraph::from(gadget.clone()))?;
    out.set_item("t", r.t())?;
    out.set_item("left", r.left().to_vec())?;
    out.set_item("right", r.right().to_vec())?;
    out.set_item("u_prime", a.u_prime)?;
    out.set_item("u_double_prime", a.u_double_prime)?;
    out.set_item("v_prime", a.v_prime)?;
    out.set_item("v_double_prime", a.v_double_prime)?;
    out.set_item("e", gadget.edge(r.edge_e()))?;
    out.set_item("e_prime", gadget.edge(r.edge_e_prime()))?;
    Ok(out)
}

/// mp(G) ≤ k ⟺ ak(G') ≤ k+1 ⟺ mp_s(G') ≤ k+1, by the exhaustive oracle.
#[pyfunction]
#[pyo3(signature = (graph, k, s_values = vec![1, 2]))]
fn verify_equivalence<'py>(py: Python<'py>, graph: &PyGraph, k: usize, s_values: Vec<usize>) -> PyResult<Bound<'py, PyAny>> {
    let check = py
        .detach(|| reduction::verify_equivalence(&graph.inner, k, &s_values))
        .map_err(err)?;
    to_py(py, &check)
}

#[pyfunction]
#[pyo3(signature = (seed, count, max_t = 5))]
fn reduction_fuzz<'py>(py: Python<'py>, seed: u64, count: usize, max_t: usize) -> PyResult<Bound<'py, PyAny>> {
    let report = py.detach(|| reduction::reduction_fuzz(seed, count, max_t, &[1, 2])).map_err(err)?;
    to_py(py, &report)
}

#[pyfunction]
fn verify_hypercube<'py>(py: Python<'py>, n: usize, s: usize) -> PyResult<Bound<'py, PyAny>> {
    let report = py
        .detach(|| hypercube::verify_mps_hypercube(n, s, &SolveOptions::default()))
        .map_err(err)?;
    to_py(py, &report)
}

#[pyfunction]
#[pyo3(signature = (n, allow_long = false))]
fn verify_lemma4<'py>(py: Python<'py>, n: usize, allow_long: bool) -> PyResult<Bound<'py, PyAny>> {
    let report = py
        .detach(|| hypercube::verify_optimal_conditional_sets_trivial(n, allow_long))
        .map_err(err)?;
    to_py(py, &report)
}

#[pyfunction]
fn verify_stars<'py>(py: Python<'py>, n: usize) -> PyResult<Bound<'py, PyAny>> {
    let report = py.detach(|| hypercube::verify_optimal_mp_sets_are_stars(n)).map_err(err)?;
    to_py(py, &report)
}

#[pyfunction]
#[pyo3(signature = (n, samples = None, seed = 42))]
fn verify_lemma5<'py>(py: Python<'py>, n: usize, samples: Option<usize>, seed: u64) -> PyResult<Bound<'py, PyAny>> {
    let report = py
        .detach(|| hypercube::verify_edge_cut_property(n, samples, seed))
        .map_err(err)?;
    to_py(py, &report)
}

#[pyfunction]
fn verify_lemma6<'py>(py: Python<'py>, n: usize) -> PyResult<Bound<'py, PyAny>> {
    let report = py.detach(|| hypercube::verify_trivial_sets_connected(n)).map_err(err)?;
    to_py(py, &report)
}

#[pyfunction]
#[pyo3(signature = (seed, count, max_s = 3))]
fn chain_suite<'py>(py: Python<'py>, seed: u64, count: usize, max_s: usize) -> PyResult<Bound<'py, PyAny>> {
    let report = py
        .detach(|| suites::chain_suite(seed, count, max_s, &SolveOptions::default()))
        .map_err(err)?;
    to_py(py, &report)
}

#[pyfunction]
fn ve_bound_suite<'py>(py: Python<'py>, seed: u64, count: usize) -> PyResult<Bound<'py, PyAny>> {
    let report = py
        .detach(|| suites::ve_bound_suite(seed, count, &SolveOptions::default()))
        .map_err(err)?;
    to_py(py, &report)
}

#[pyfunction]
#[pyo3(signature = (seed, count, max_n = 12))]
fn matching_oracle_suite<'py>(py: Python<'py>, seed: u64, count: usize, max_n: usize) -> PyResult<Bound<'py, PyAny>> {
    let report = py
        .detach(|| suites::matching_oracle_suite(seed, count, max_n))
        .map_err(err)?;
    to_py(py, &report)
}

#[pymodule]
#[pyo3(name = "preclusion")]
fn preclusion_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add("PreclusionError", m.py().get_type::<PreclusionError>())?;
    m.add_class::<PyGraph>()?;
    m.add_function(wrap_pyfunction!(reduce, m)?)?;
    m.add_function(wrap_pyfunction!(verify_equivalence, m)?)?;
    m.add_function(wrap_pyfunction!(reduction_fuzz, m)?)?;
    m.add_function(wrap_pyfunction!(verify_hypercube, m)?)?;
    m.add_function(wrap_pyfunction!(verify_lemma4, m)?)?;
    m.add_function(wrap_pyfunction!(verify_stars, m)?)?;
    m.add_function(wrap_pyfunction!(verify_lemma5, m)?)?;
    m.add_function(wrap_pyfunction!(verify_lemma6, m)?)?;
    m.add_function(wrap_pyfunction!(chain_suite, m)?)?;
    m.add_function(wrap_pyfunction!(ve_bound_suite, m)?)?;
    m.add_function(wrap_pyfunction!(matching_oracle_suite, m)?)?;
    Ok(())
}
