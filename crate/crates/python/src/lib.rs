//! Python bindings: `Model` for a recursive max-linear model and
//! `CoefficientMatrix` for its coefficient matrix, both in floating point.
//! Node labels are 1-based, as in the Rust API.

use std::collections::BTreeMap;

use maxlin_core as core;
use maxlin_core::{Dag, MlCoefficientMatrix, NodeSet, NoiseSpec, RecursiveMlModel, Tolerance};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn err(e: core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn edge_list(dag: &Dag) -> Vec<(usize, usize)> {
    dag.edges().collect()
}

fn nodes(given: Vec<usize>) -> NodeSet {
    given.into_iter().collect()
}

type Terms = (BTreeMap<usize, f64>, BTreeMap<usize, f64>);
type Rows = Vec<Vec<f64>>;

#[pyclass(module = "maxlin", frozen)]
struct Model {
    inner: RecursiveMlModel<f64>,
}

#[pymethods]
impl Model {
    /// `edges` holds `(from, to, weight)` triples; `noise` defaults to ones.
    #[new]
    #[pyo3(signature = (d, edges, noise = None))]
    fn new(d: usize, edges: Vec<(usize, usize, f64)>, noise: Option<Vec<f64>>) -> PyResult<Self> {
        let dag = Dag::new(d, edges.iter().map(|&(k, i, _)| (k, i))).map_err(err)?;
        let weights = edges.iter().map(|&(k, i, w)| ((k, i), w));
        let inner = RecursiveMlModel::new(dag, weights, noise.unwrap_or_else(|| vec![1.0; d])).map_err(err)?;
        Ok(Model { inner })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let v: serde_json::Value = serde_json::from_str(text).map_err(|e| PyValueError::new_err(e.to_string()))?;
        Ok(Model { inner: RecursiveMlModel::from_json(&v).map_err(err)? })
    }

    fn to_json(&self) -> String {
        self.inner.to_json().to_string()
    }

    #[getter]
    fn d(&self) -> usize {
        self.inner.node_count()
    }

    #[getter]
    fn edges(&self) -> Vec<(usize, usize, f64)> {
        self.inner.weighted_edges().map(|((k, i), w)| (k, i, *w)).collect()
    }

    #[getter]
    fn noise(&self) -> Vec<f64> {
        self.inner.noise_weights().to_vec()
    }

    fn compute_b(&self) -> CoefficientMatrix {
        CoefficientMatrix { inner: self.inner.compute_b() }
    }

    /// Evaluates the structural equations on one noise vector.
    fn eval(&self, z: Vec<f64>) -> PyResult<Vec<f64>> {
        self.inner.eval_recursive(&z).map_err(err)
    }

    fn minimum_dag(&self) -> PyResult<Vec<(usize, usize)>> {
        let b = self.inner.compute_b();
        Ok(edge_list(&core::minimum_ml_dag_from_model(&self.inner, &b).map_err(err)?))
    }

    /// Edges of the polytree of max-weighted paths into `node`.
    fn polytree(&self, node: usize) -> PyResult<Vec<(usize, usize)>> {
        let b = self.inner.compute_b();
        Ok(edge_list(&core::max_weighted_polytree(&self.inner, &b, node).map_err(err)?.dag))
    }

    /// Returns `(Z, X)` as lists of rows.
    #[pyo3(signature = (n, seed = 0, dist = "frechet:1"))]
    fn simulate(&self, n: usize, seed: u64, dist: &str) -> PyResult<(Rows, Rows)> {
        let spec = NoiseSpec::new(dist.parse().map_err(err)?, seed).map_err(err)?;
        let batch = core::simulate(&self.inner, &spec, n).map_err(err)?;
        let rows = |m: &core::Matrix<f64>| m.iter_rows().map(<[f64]>::to_vec).collect();
        Ok((rows(&batch.z), rows(&batch.x)))
    }

    fn __repr__(&self) -> String {
        format!("Model(d={}, edges={})", self.inner.node_count(), self.inner.dag().edge_count())
    }
}

#[pyclass(module = "maxlin", frozen)]
struct CoefficientMatrix {
    inner: MlCoefficientMatrix<f64>,
}

fn representation(r: core::Representation<f64>) -> Terms {
    (r.node_terms, r.noise_terms)
}

#[pymethods]
impl CoefficientMatrix {
    /// Rejects matrices that are not coefficient matrices of any model.
    #[new]
    fn new(rows: Rows) -> PyResult<Self> {
        let m = core::Matrix::from_rows(rows).map_err(err)?;
        Ok(CoefficientMatrix { inner: MlCoefficientMatrix::from_matrix(m, Tolerance::from_env()).map_err(err)? })
    }

    #[getter]
    fn d(&self) -> usize {
        self.inner.node_count()
    }

    fn to_list(&self) -> Rows {
        self.inner.matrix().iter_rows().map(<[f64]>::to_vec).collect()
    }

    /// `b[j, i]` with 1-based labels.
    fn __getitem__(&self, index: (usize, usize)) -> PyResult<f64> {
        let (j, i) = index;
        self.inner.check_node(j).map_err(err)?;
        self.inner.check_node(i).map_err(err)?;
        Ok(*self.inner.coef(j, i))
    }

    fn minimum_dag(&self) -> Vec<(usize, usize)> {
        edge_list(&core::minimum_ml_dag_from_b(&self.inner))
    }

    #[pyo3(signature = (cap = core::DEFAULT_ADMISSIBLE_CAP))]
    fn admissible_dags(&self, cap: usize) -> Vec<Vec<(usize, usize)>> {
        core::admissible_dags(&self.inner, cap).map(|g| edge_list(&g)).collect()
    }

    fn has_max_weighted_path_through(&self, j: usize, i: usize, given: Vec<usize>) -> PyResult<bool> {
        core::has_max_weighted_path_through(&self.inner, j, i, &nodes(given)).map_err(err)
    }

    fn an_low(&self, i: usize, given: Vec<usize>) -> PyResult<Vec<usize>> {
        Ok(core::an_low(&self.inner, i, &nodes(given)).map_err(err)?.to_vec())
    }

    fn de_high(&self, i: usize, given: Vec<usize>) -> PyResult<Vec<usize>> {
        Ok(core::de_high(&self.inner, i, &nodes(given)).map_err(err)?.to_vec())
    }

    fn nmw_ancestors(&self, i: usize, given: Vec<usize>) -> PyResult<Vec<usize>> {
        Ok(core::nmw_ancestors(&self.inner, i, &nodes(given)).map_err(err)?.to_vec())
    }

    /// `(lower, upper)` for `X_i` given observations `{node: value}`;
    /// `upper` is `None` when unbounded.
    fn bounds(&self, i: usize, observed: BTreeMap<usize, f64>) -> PyResult<(f64, Option<f64>)> {
        let u: NodeSet = observed.keys().copied().collect();
        let b = core::bounds(&self.inner, i, &u, &observed).map_err(err)?;
        Ok((b.lower, b.upper))
    }

    /// `(node_terms, noise_terms)` of the minimal representation of `X_i`.
    fn minimal_representation(&self, i: usize, given: Vec<usize>) -> PyResult<Terms> {
        Ok(representation(core::minimal_representation(&self.inner, i, &nodes(given)).map_err(err)?))
    }

    fn parent_representation(&self, i: usize) -> PyResult<Terms> {
        Ok(representation(core::parent_representation(&self.inner, i).map_err(err)?))
    }

    fn __repr__(&self) -> String {
        format!("CoefficientMatrix(d={})", self.inner.node_count())
    }
}

/// `(valid, reason_codes)` for an arbitrary square matrix.
#[pyfunction]
fn validate_b(rows: Rows) -> PyResult<(bool, Vec<String>)> {
    let m = core::Matrix::from_rows(rows).map_err(err)?;
    let report = core::validate_b(&m, &Tolerance::from_env());
    Ok((report.is_valid(), report.codes()))
}

#[pymodule]
fn maxlin(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Model>()?;
    m.add_class::<CoefficientMatrix>()?;
    m.add_function(wrap_pyfunction!(validate_b, m)?)?;
    Ok(())
}
