//! Python bindings. Rationals cross the boundary as `"p/q"` strings, so they
//! convert losslessly to and from `fractions.Fraction`. Qubits are 0-based.

use graphsep::classifier::{self, verify_verdict};
use graphsep::oracle::{oracle_crosscheck, OracleOptions};
use graphsep::rational::{self, Rational};
use graphsep::{json, ppt_mixture, threshold, witness};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn py_err(e: graphsep::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Accepts anything whose `str()` is a rational: `Fraction`, `int`, `"0.4"`.
fn rational_arg(obj: &Bound<'_, PyAny>) -> PyResult<Rational> {
    rational::parse_rational(&obj.str()?.to_string()).map_err(py_err)
}

fn fmt(r: &Rational) -> String {
    rational::format_rational(r)
}

#[pyclass(name = "Graph", module = "graphsep", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyGraph(graphsep::Graph);

#[pymethods]
impl PyGraph {
    #[new]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        graphsep::Graph::from_edges(n, &edges).map(Self).map_err(py_err)
    }

    #[staticmethod]
    fn builtin(name: &str) -> PyResult<Self> {
        graphsep::Graph::builtin(name).map(Self).map_err(py_err)
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.0.edges()
    }

    /// Cut rank across a bipartition written like `"AB|CD"`.
    fn cut_rank(&self, partition: &str) -> PyResult<usize> {
        let m = graphsep::Bipartition::parse(self.0.n(), partition).map_err(py_err)?;
        self.0.cut_rank(&m).map_err(py_err)
    }

    fn one_bp_partitions(&self) -> Vec<String> {
        self.0.one_bp_partitions().iter().map(|m| m.to_string()).collect()
    }

    fn local_complement(&self, vertex: usize) -> PyResult<Self> {
        self.0.local_complement(vertex).map(Self).map_err(py_err)
    }

    /// Largest deviation between exact transfer matrices and dense partial transposes.
    fn oracle_max_deviation(&self) -> PyResult<f64> {
        let options = OracleOptions {
            skip_witnesses: true,
            ..OracleOptions::default()
        };
        Ok(oracle_crosscheck(&self.0, &options).map_err(py_err)?.max_deviation())
    }

    /// `(lower, upper, exact)` white-noise threshold; `exact` is `None` when only bounds are known.
    fn white_noise_threshold(&self) -> PyResult<(String, String, Option<String>)> {
        let r = threshold::white_noise_threshold(&self.0).map_err(py_err)?;
        Ok((fmt(&r.lower), fmt(&r.upper), r.exact.as_ref().map(fmt)))
    }

    fn to_json(&self) -> String {
        json::graph_to_json(&self.0).to_string()
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0 == other.0
    }

    fn __repr__(&self) -> String {
        format!("Graph({})", self.0)
    }
}

#[pyclass(name = "State", module = "graphsep", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyState(graphsep::GraphDiagonalState);

#[pymethods]
impl PyState {
    /// Weights indexed by label integer; they must sum to one.
    #[new]
    fn new(graph: &PyGraph, weights: Vec<Bound<'_, PyAny>>) -> PyResult<Self> {
        let w = weights.iter().map(rational_arg).collect::<PyResult<Vec<_>>>()?;
        graphsep::GraphDiagonalState::new(graph.0.clone(), w)
            .map(Self)
            .map_err(py_err)
    }

    #[staticmethod]
    fn white_noise(graph: &PyGraph, p: &Bound<'_, PyAny>) -> PyResult<Self> {
        graphsep::GraphDiagonalState::white_noise(graph.0.clone(), &rational_arg(p)?)
            .map(Self)
            .map_err(py_err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let v = json::parse(text).map_err(py_err)?;
        json::state_from_json(&v).map(Self).map_err(py_err)
    }

    fn to_json(&self) -> String {
        json::state_to_json(&self.0).to_string()
    }

    #[getter]
    fn graph(&self) -> PyGraph {
        PyGraph(self.0.graph().clone())
    }

    fn weights(&self) -> Vec<String> {
        self.0.weights().iter().map(fmt).collect()
    }

    fn is_ppt(&self, partition: &str) -> PyResult<bool> {
        let m = graphsep::Bipartition::parse(self.0.n(), partition).map_err(py_err)?;
        graphsep::TransferMatrix::new(self.0.graph(), &m)
            .and_then(|t| t.is_ppt(self.0.weights()))
            .map_err(py_err)
    }

    /// Feasibility of the PPT-mixture program, optionally over cut-rank-one splits only.
    #[pyo3(signature = (restrict_1bp = false))]
    fn is_ppt_mixture(&self, restrict_1bp: bool) -> PyResult<bool> {
        let one_bp = self.0.graph().one_bp_partitions();
        let partitions = restrict_1bp.then_some(one_bp.as_slice());
        Ok(ppt_mixture::is_ppt_mixture(&self.0, partitions)
            .map_err(py_err)?
            .is_feasible())
    }

    fn __repr__(&self) -> String {
        format!("State({})", json::state_to_json(&self.0))
    }
}

#[pyclass(name = "Verdict", module = "graphsep", frozen)]
struct PyVerdict {
    state: graphsep::GraphDiagonalState,
    verdict: graphsep::Verdict,
}

#[pymethods]
impl PyVerdict {
    /// `"GME"`, `"BISEPARABLE"` or `"INCONCLUSIVE"`.
    #[getter]
    fn label(&self) -> &'static str {
        self.verdict.label()
    }

    #[getter]
    fn is_gme(&self) -> bool {
        self.verdict.is_gme()
    }

    #[getter]
    fn is_biseparable(&self) -> bool {
        self.verdict.is_biseparable()
    }

    /// Witness expectation value for GME verdicts.
    #[getter]
    fn witness_value(&self) -> Option<String> {
        match &self.verdict {
            graphsep::Verdict::Gme { value, .. } => Some(fmt(value)),
            _ => None,
        }
    }

    /// Number of separable components of a biseparable decomposition.
    #[getter]
    fn num_terms(&self) -> Option<usize> {
        match &self.verdict {
            graphsep::Verdict::Biseparable { decomposition } => Some(decomposition.terms.len()),
            _ => None,
        }
    }

    /// Re-checks the certificate from scratch.
    fn verify(&self) -> bool {
        verify_verdict(&self.verdict, &self.state).is_ok()
    }

    fn to_json(&self) -> String {
        json::verdict_to_json(&self.verdict, self.state.graph(), None).to_string()
    }

    fn __repr__(&self) -> String {
        format!("Verdict({})", self.verdict.label())
    }
}

#[pyfunction]
fn classify(state: &PyState) -> PyResult<PyVerdict> {
    let verdict = classifier::classify(&state.0).map_err(py_err)?;
    Ok(PyVerdict {
        state: state.0.clone(),
        verdict,
    })
}

/// Validity of a witness given as JSON, and its value on `state` if supplied.
#[pyfunction]
#[pyo3(signature = (witness_json, state = None))]
fn check_witness(witness_json: &str, state: Option<&PyState>) -> PyResult<(bool, Option<String>)> {
    let v = json::parse(witness_json).map_err(py_err)?;
    let w = json::witness_from_json(&v).map_err(py_err)?;
    let valid = witness::validate_witness(&w).map_err(py_err)?.is_valid();
    let value = state
        .map(|s| w.evaluate(&s.0).map(|x| fmt(&x)))
        .transpose()
        .map_err(py_err)?;
    Ok((valid, value))
}

#[pymodule]
#[pyo3(name = "graphsep")]
fn graphsep_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_class::<PyState>()?;
    m.add_class::<PyVerdict>()?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(check_witness, m)?)?;
    Ok(())
}
