//! Python bindings: graphs, core elements, decisions, K-theory and the verifier.

use num_bigint::BigInt;
use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;
use pyo3::types::PyAny;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use cklab_core::{corpus, dynamics, ktheory, lattice, report, symbolic, verifier};
use cklab_core::{Cycle, Error};

create_exception!(cklab, CklabError, PyException, "Raised for invalid input to a cklab operation.");
create_exception!(cklab, HypothesisError, CklabError, "The graph has a sink.");

fn to_py(e: Error) -> PyErr {
    match e {
        Error::HypothesisViolated(_) => HypothesisError::new_err(e.to_string()),
        _ => CklabError::new_err(e.to_string()),
    }
}

fn json_value<'py, T: serde::Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| CklabError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

/// A finite directed multigraph; edge `e` points from `s(e)` to `r(e)`.
#[pyclass(name = "Graph", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyGraph {
    inner: cklab_core::Graph,
}

#[pymethods]
impl PyGraph {
    /// Parses the line format (`e: v > w`) or a JSON document.
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        Ok(PyGraph {
            inner: cklab_core::Graph::parse(text).map_err(to_py)?,
        })
    }

    /// A built-in graph such as `o(2)`, `example5` or `cycle(2,3)`.
    #[staticmethod]
    fn corpus(name: &str) -> PyResult<Self> {
        Ok(PyGraph {
            inner: corpus::lookup(name).map_err(to_py)?,
        })
    }

    #[staticmethod]
    fn corpus_names() -> Vec<String> {
        corpus::corpus().into_iter().map(|e| e.name).collect()
    }

    #[getter]
    fn vertices(&self) -> Vec<String> {
        self.inner.vertices().map(|v| self.inner.vertex_name(v).to_string()).collect()
    }

    #[getter]
    fn edges(&self) -> Vec<(String, String, String)> {
        let g = &self.inner;
        g.edges()
            .map(|e| {
                (
                    g.edge_name(e).to_string(),
                    g.vertex_name(g.source(e)).to_string(),
                    g.vertex_name(g.range(e)).to_string(),
                )
            })
            .collect()
    }

    #[getter]
    fn fingerprint(&self) -> String {
        self.inner.fingerprint().to_string()
    }

    fn to_text(&self) -> String {
        self.inner.to_text()
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    fn validate<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        json_value(py, &cklab_core::validate(&self.inner))
    }

    /// Hereditary saturated sets, smallest first.
    fn lattice(&self) -> Vec<Vec<String>> {
        lattice::enumerate_lattice(&self.inner)
            .elements()
            .iter()
            .map(|h| h.names(&self.inner))
            .collect()
    }

    fn hs_closure(&self, vertices: Vec<String>) -> PyResult<Vec<String>> {
        let set = lattice::resolve_vertices(&self.inner, &vertices).map_err(to_py)?;
        Ok(lattice::hs_closure(&self.inner, &set).map_err(to_py)?.names(&self.inner))
    }

    /// `(holds, entryless_cycle)`.
    fn condition_l(&self) -> PyResult<(bool, Option<Vec<String>>)> {
        let l = dynamics::condition_l(&self.inner).map_err(to_py)?;
        Ok((l.holds, l.witness.map(|c| c.ids(&self.inner))))
    }

    fn is_simple(&self) -> PyResult<bool> {
        Ok(dynamics::is_simple(&self.inner).map_err(to_py)?.simple)
    }

    fn is_purely_infinite_simple(&self) -> PyResult<bool> {
        Ok(dynamics::is_purely_infinite_simple(&self.inner)
            .map_err(to_py)?
            .purely_infinite_simple)
    }

    fn weakly_properly_outer(&self) -> PyResult<bool> {
        dynamics::weakly_properly_outer(&self.inner).map_err(to_py)
    }

    /// `"Full"` or `"ProperClosedSubgroup"`.
    fn connes_spectrum(&self) -> PyResult<String> {
        Ok(format!("{:?}", dynamics::connes_spectrum_report(&self.inner).map_err(to_py)?.value))
    }

    fn beta_is_unitary(&self) -> PyResult<bool> {
        dynamics::beta_unitary_report(&self.inner).map_err(to_py)
    }

    /// `(K0, K1)` rendered as strings such as `"Z/3"`.
    fn ktheory(&self) -> PyResult<(String, String)> {
        let k = ktheory::graph_ktheory(&self.inner).map_err(to_py)?;
        Ok((k.k0.to_string(), k.k1.to_string()))
    }

    /// `[(vertex, k_{n,v})]`.
    fn core_dims(&self, n: u32) -> Vec<(String, BigInt)> {
        symbolic::core_dims(&self.inner, n)
            .into_iter()
            .map(|(v, k)| (self.inner.vertex_name(v).to_string(), k))
            .collect()
    }

    /// The full analysis report as a dict.
    #[pyo3(signature = (depth = 4))]
    fn analyze<'py>(&self, py: Python<'py>, depth: u32) -> PyResult<Bound<'py, PyAny>> {
        json_value(py, &report::analyze(&self.inner, depth).map_err(to_py)?)
    }

    /// Terms `(left, right, kappa, coeff)` of the inner witness for an entryless cycle.
    fn inner_witness(&self, cycle: Vec<String>, depth: usize) -> PyResult<Vec<(String, String, BigInt, String)>> {
        let g = &self.inner;
        let c = Cycle::from_ids(g, &cycle).map_err(to_py)?;
        let w = dynamics::inner_witness(g, &c, depth).map_err(to_py)?;
        Ok(w.terms
            .iter()
            .map(|t| (t.left.display(g), t.right.display(g), t.kappa.clone(), t.coeff.to_string()))
            .collect())
    }

    /// Relation checks and `β(x) = TxT*` on seeded random samples, as a dict.
    #[pyo3(signature = (depth, samples = 20, seed = 20240611))]
    fn verify<'py>(&self, py: Python<'py>, depth: usize, samples: usize, seed: u64) -> PyResult<Bound<'py, PyAny>> {
        if depth < 2 {
            return Err(CklabError::new_err("verify needs depth >= 2"));
        }
        let g = &self.inner;
        let rep = verifier::build_rep(g, depth).map_err(to_py)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let xs = verifier::random_core_samples(g, samples, (depth - 2).min(2), &mut rng).map_err(to_py)?;
        let ck = verifier::check_ck(&rep);
        let beta = verifier::check_beta(&rep, &xs).map_err(to_py)?;
        let out = json_value(py, &(ck, beta))?;
        let dict = pyo3::types::PyDict::new(py);
        dict.set_item("ck", out.get_item(0)?)?;
        dict.set_item("beta", out.get_item(1)?)?;
        dict.set_item("dimension", rep.dim())?;
        Ok(dict.into_any())
    }

    fn __repr__(&self) -> String {
        format!(
            "Graph({} vertices, {} edges, {})",
            self.inner.vertex_count(),
            self.inner.edge_count(),
            self.inner.fingerprint()
        )
    }

    fn __eq__(&self, other: &PyGraph) -> bool {
        self.inner == other.inner
    }
}

/// An element of the core: a combination of `S_η S_ρ^*` with `|η| = |ρ|`.
#[pyclass(name = "CoreElement", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyCoreElement {
    graph: cklab_core::Graph,
    inner: cklab_core::CoreElement,
}

impl PyCoreElement {
    fn wrap(&self, inner: cklab_core::CoreElement) -> Self {
        PyCoreElement {
            graph: self.graph.clone(),
            inner,
        }
    }
}

#[pymethods]
impl PyCoreElement {
    /// Parses terms such as `1/2 * S[a.b] S*[b.a]`, separated by newlines or `;`.
    #[new]
    fn new(graph: &PyGraph, text: &str) -> PyResult<Self> {
        Ok(PyCoreElement {
            graph: graph.inner.clone(),
            inner: cklab_core::CoreElement::parse(&graph.inner, text).map_err(to_py)?,
        })
    }

    #[staticmethod]
    fn unit(graph: &PyGraph) -> Self {
        PyCoreElement {
            graph: graph.inner.clone(),
            inner: cklab_core::CoreElement::unit(&graph.inner),
        }
    }

    fn beta(&self) -> PyResult<Self> {
        Ok(self.wrap(symbolic::beta_apply(&self.graph, &self.inner).map_err(to_py)?))
    }

    fn adjoint(&self) -> Self {
        self.wrap(symbolic::adjoint(&self.inner))
    }

    fn __mul__(&self, other: &PyCoreElement) -> PyResult<Self> {
        Ok(self.wrap(symbolic::multiply(&self.graph, &self.inner, &other.inner).map_err(to_py)?))
    }

    fn __add__(&self, other: &PyCoreElement) -> PyResult<Self> {
        Ok(self.wrap(self.inner.add(&other.inner).map_err(to_py)?))
    }

    fn __sub__(&self, other: &PyCoreElement) -> PyResult<Self> {
        Ok(self.wrap(self.inner.sub(&other.inner).map_err(to_py)?))
    }

    fn __eq__(&self, other: &PyCoreElement) -> bool {
        self.inner == other.inner
    }

    /// Equality modulo the second Cuntz-Krieger relation.
    fn ck2_equal(&self, other: &PyCoreElement) -> PyResult<bool> {
        symbolic::ck2_equal(&self.graph, &self.inner, &other.inner).map_err(to_py)
    }

    /// `‖x‖` in the path-space representation truncated at `depth`.
    fn norm(&self, depth: usize) -> PyResult<f64> {
        let rep = verifier::build_rep(&self.graph, depth).map_err(to_py)?;
        verifier::operator_norm(&rep, &self.inner).map_err(to_py)
    }

    #[getter]
    fn degree(&self) -> usize {
        self.inner.degree()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __str__(&self) -> String {
        self.inner.display(&self.graph)
    }

    fn __repr__(&self) -> String {
        format!("CoreElement({:?})", self.inner.display(&self.graph))
    }
}

/// `(K0, K1)` of the crossed product of the UHF algebra `m^∞` by the cyclic shift of order `n`.
#[pyfunction]
fn cyclic_uhf_ktheory(m: u32, n: u32) -> PyResult<(String, String)> {
    let k = ktheory::cyclic_uhf_ktheory(m, n).map_err(to_py)?;
    Ok((k.k0.to_string(), k.k1.to_string()))
}

/// Smith normal form diagonal of an integer matrix.
#[pyfunction]
fn smith_diagonal(rows: Vec<Vec<BigInt>>) -> PyResult<Vec<BigInt>> {
    let width = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != width) || width == 0 {
        return Err(CklabError::new_err("matrix must be a nonempty rectangle"));
    }
    Ok(cklab_core::smith_normal_form(&cklab_core::IntMatrix::from_rows(&rows)).diagonal())
}

#[pymodule]
fn cklab(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_class::<PyCoreElement>()?;
    m.add_function(wrap_pyfunction!(cyclic_uhf_ktheory, m)?)?;
    m.add_function(wrap_pyfunction!(smith_diagonal, m)?)?;
    m.add("CklabError", m.py().get_type::<CklabError>())?;
    m.add("HypothesisError", m.py().get_type::<HypothesisError>())?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
