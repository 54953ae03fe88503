//! Python bindings: graphs, exact and constructive burning, bounds,
//! simulation and the complement-product checks.

use graphburn::burn::{self, BurnSchedule, Strictness};
use graphburn::{bounds, exact, io, ng, BudgetSet, Error, ExactConfig, GenSpec};
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

create_exception!(pygraphburn, BurnError, PyValueError);
create_exception!(pygraphburn, CapExceeded, BurnError);

fn to_py(e: Error) -> PyErr {
    match e {
        Error::TooLarge { .. } => CapExceeded::new_err(e.to_string()),
        _ => BurnError::new_err(e.to_string()),
    }
}

/// Undirected simple graph on vertices `0..n`.
#[pyclass(name = "Graph", module = "pygraphburn", frozen)]
struct PyGraph {
    inner: graphburn::Graph,
}

#[pymethods]
impl PyGraph {
    #[new]
    #[pyo3(signature = (n, edges = Vec::new()))]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        Ok(Self { inner: graphburn::Graph::from_edges(n, &edges).map_err(to_py)? })
    }

    /// Parses the `p n m` edge-list format.
    #[staticmethod]
    fn from_edge_list(text: &str) -> PyResult<Self> {
        Ok(Self { inner: io::parse_edge_list(text).map_err(to_py)? })
    }

    #[staticmethod]
    fn from_graph6(text: &str) -> PyResult<Self> {
        Ok(Self { inner: io::parse_graph6(text).map_err(to_py)? })
    }

    /// Builds a graph from a generator spec such as `"spider 3 2"`.
    #[staticmethod]
    fn generate(spec: &str) -> PyResult<Self> {
        let spec: GenSpec = spec.parse().map_err(to_py)?;
        Ok(Self { inner: spec.generate().map_err(to_py)? })
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges().collect()
    }

    fn is_connected(&self) -> bool {
        self.inner.is_connected()
    }

    fn complement(&self) -> Self {
        Self { inner: graphburn::graph::complement(&self.inner) }
    }

    /// `(radius, diameter, center)` of a connected graph.
    fn metrics(&self) -> PyResult<(usize, usize, Vec<usize>)> {
        let m = graphburn::graph::metrics(&self.inner).map_err(to_py)?;
        Ok((m.radius, m.diameter, m.center))
    }

    fn to_edge_list(&self) -> String {
        io::write_edge_list(&self.inner)
    }

    fn __len__(&self) -> usize {
        self.inner.order()
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, m={})", self.inner.order(), self.inner.edge_count())
    }
}

/// Result of the constructive burner.
#[pyclass(module = "pygraphburn", frozen, get_all)]
struct Burning {
    rounds: usize,
    cover: Vec<(usize, usize)>,
    schedule: Vec<usize>,
    log: String,
}

#[pymethods]
impl Burning {
    fn __repr__(&self) -> String {
        format!("Burning(rounds={}, schedule={:?})", self.rounds, self.schedule)
    }
}

/// Exact burning number and a witness schedule of that length.
#[pyfunction]
#[pyo3(signature = (graph, cap = 40))]
fn burning_number(py: Python<'_>, graph: &PyGraph, cap: usize) -> PyResult<(usize, Vec<usize>)> {
    let r = py.detach(|| exact::burning_number_exact(&graph.inner, &ExactConfig { max_order: cap })).map_err(to_py)?;
    Ok((r.value, r.witness.sources().to_vec()))
}

/// Constructive schedule within the closed-form round bound.
#[pyfunction]
fn burn_graph(graph: &PyGraph) -> PyResult<Burning> {
    let b = graphburn::burn_graph(&graph.inner).map_err(to_py)?;
    Ok(Burning {
        rounds: b.rounds,
        cover: b.cover.entries().to_vec(),
        schedule: b.schedule.sources().to_vec(),
        log: b.construction.log_text(),
    })
}

/// Round each vertex catches fire (`None` if never) after running the schedule.
#[pyfunction]
#[pyo3(signature = (graph, schedule, strict = false))]
fn simulate(graph: &PyGraph, schedule: Vec<usize>, strict: bool) -> PyResult<Vec<Option<usize>>> {
    let s = BurnSchedule::new(schedule).map_err(to_py)?;
    let mode = if strict { Strictness::Strict } else { Strictness::Lenient };
    let trace = burn::simulate(&graph.inner, &s, mode).map_err(to_py)?;
    Ok(trace.burned_at.iter().map(|&t| (t != burn::NEVER).then_some(t)).collect())
}

/// Centers (paired with ascending budgets) of a covering ball system, or `None`.
#[pyfunction]
#[pyo3(signature = (graph, budgets, cap = 40))]
fn is_a_burnable(graph: &PyGraph, budgets: Vec<usize>, cap: usize) -> PyResult<Option<Vec<usize>>> {
    let budgets = BudgetSet::new(budgets).map_err(to_py)?;
    exact::is_a_burnable(&graph.inner, &budgets, &ExactConfig { max_order: cap }).map_err(to_py)
}

#[pyfunction]
fn burning_upper_bound(n: u64) -> PyResult<u64> {
    bounds::burning_upper_bound(n).map_err(to_py)
}

#[pyfunction]
fn capacity(k: u64) -> PyResult<u64> {
    if k == 0 {
        return Err(BurnError::new_err("k must be positive"));
    }
    Ok(bounds::capacity(k))
}

#[pyfunction]
fn capacity_rounds(n: u64) -> u64 {
    bounds::capacity_rounds(n)
}

/// `"not_applicable"`, `"holds"` or `"violated"`.
#[pyfunction]
fn complement_radius_check(graph: &PyGraph) -> PyResult<&'static str> {
    Ok(match ng::complement_radius_check(&graph.inner).map_err(to_py)? {
        ng::RadiusLaw::NotApplicable => "not_applicable",
        ng::RadiusLaw::Holds => "holds",
        ng::RadiusLaw::Violated => "violated",
    })
}

/// Summary of the exhaustive complement-product check at order `n`:
/// `(doubly_connected, max_product, violations, equality_masks)`.
#[pyfunction]
#[pyo3(signature = (n, workers = 1))]
fn ng_summary(py: Python<'_>, n: usize, workers: usize) -> PyResult<(usize, usize, usize, Vec<u64>)> {
    let r = py.detach(|| ng::ng_exhaustive(n, workers)).map_err(to_py)?;
    Ok((r.records.len(), r.max_product, r.violations, r.equality_masks))
}

#[pymodule]
fn pygraphburn(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("BurnError", m.py().get_type::<BurnError>())?;
    m.add("CapExceeded", m.py().get_type::<CapExceeded>())?;
    m.add_class::<PyGraph>()?;
    m.add_class::<Burning>()?;
    m.add_function(wrap_pyfunction!(burning_number, m)?)?;
    m.add_function(wrap_pyfunction!(burn_graph, m)?)?;
    m.add_function(wrap_pyfunction!(simulate, m)?)?;
    m.add_function(wrap_pyfunction!(is_a_burnable, m)?)?;
    m.add_function(wrap_pyfunction!(burning_upper_bound, m)?)?;
    m.add_function(wrap_pyfunction!(capacity, m)?)?;
    m.add_function(wrap_pyfunction!(capacity_rounds, m)?)?;
    m.add_function(wrap_pyfunction!(complement_radius_check, m)?)?;
    m.add_function(wrap_pyfunction!(ng_summary, m)?)?;
    Ok(())
}
