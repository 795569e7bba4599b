//! Recursive max-linear models and their coefficient matrices.
//!
//! A model on a DAG assigns a positive weight `c_ki` to every edge `k -> i`
//! and a positive noise weight `c_ii` to every node:
//!
//! ```text
//! X_i = max( max_{k in pa(i)} c_ki X_k , c_ii Z_i )
//! ```
//!
//! Unrolling the recursion gives `X = Z ⊙ B` where `b_ji` is the largest
//! weight of a path from `j` to `i` (the path weight being the noise weight
//! of `j` times the edge weights along the path).

use serde_json::{json, Map, Value};

use crate::dag::{Dag, NodeSet};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::weight::{Tolerance, Weight};

/// Default upper bound on the number of paths enumerated by
/// [`RecursiveMlModel::compute_b_oracle`].
pub const DEFAULT_PATH_CAP: usize = 1_000_000;

/// A directed path given by its node sequence (1-based), at least one edge.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path(Vec<usize>);

impl Path {
    pub fn new(nodes: Vec<usize>) -> Result<Self> {
        if nodes.len() < 2 {
            return Err(Error::InvalidPath("a path needs at least two nodes".into()));
        }
        let mut seen = nodes.clone();
        seen.sort_unstable();
        if seen.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidPath(format!("repeated node in {nodes:?}")));
        }
        Ok(Path(nodes))
    }

    pub fn nodes(&self) -> &[usize] {
        &self.0
    }

    pub fn source(&self) -> usize {
        self.0[0]
    }

    pub fn target(&self) -> usize {
        *self.0.last().expect("non-empty")
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.0.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0.windows(2).map(|w| (w[0], w[1]))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RecursiveMlModel<T> {
    dag: Dag,
    // aligned with the sorted edge list of `dag`
    weights: Vec<T>,
    noise: Vec<T>,
}

impl<T: Weight> RecursiveMlModel<T> {
    /// Builds a model from 1-based edge weights. Every DAG edge needs exactly
    /// one positive weight; weights on non-edges are rejected.
    pub fn new(
        dag: Dag,
        edge_weights: impl IntoIterator<Item = ((usize, usize), T)>,
        noise: Vec<T>,
    ) -> Result<Self> {
        let d = dag.node_count();
        if noise.len() != d {
            return Err(Error::NoiseCount { expected: d, got: noise.len() });
        }
        for (idx, c) in noise.iter().enumerate() {
            if !c.is_admissible() || c.is_zero() {
                return Err(Error::NonPositiveNoiseWeight { node: idx + 1, value: c.to_string() });
            }
        }
        let mut weights: Vec<Option<T>> = vec![None; dag.edge_count()];
        for ((k, i), c) in edge_weights {
            let pos = dag
                .edges0()
                .binary_search(&(k.wrapping_sub(1), i.wrapping_sub(1)))
                .map_err(|_| Error::WeightOnNonEdge { from: k, to: i })?;
            if !c.is_admissible() || c.is_zero() {
                return Err(Error::NonPositiveEdgeWeight { from: k, to: i, value: c.to_string() });
            }
            if weights[pos].replace(c).is_some() {
                return Err(Error::DuplicateEdge(k, i));
            }
        }
        let weights = weights
            .into_iter()
            .zip(dag.edges())
            .map(|(w, (k, i))| w.ok_or(Error::MissingEdgeWeight { from: k, to: i }))
            .collect::<Result<Vec<_>>>()?;
        Ok(RecursiveMlModel { dag, weights, noise })
    }

    pub fn dag(&self) -> &Dag {
        &self.dag
    }

    pub fn node_count(&self) -> usize {
        self.dag.node_count()
    }

    pub fn edge_weight(&self, from: usize, to: usize) -> Option<&T> {
        let pos = self
            .dag
            .edges0()
            .binary_search(&(from.wrapping_sub(1), to.wrapping_sub(1)))
            .ok()?;
        Some(&self.weights[pos])
    }

    /// `c_ii`; panics when `i` is out of range.
    pub fn noise_weight(&self, i: usize) -> &T {
        &self.noise[i - 1]
    }

    pub fn noise_weights(&self) -> &[T] {
        &self.noise
    }

    /// `((from, to), c)` for every edge in `(from, to)` order.
    pub fn weighted_edges(&self) -> impl Iterator<Item = ((usize, usize), &T)> + '_ {
        self.dag.edges().zip(&self.weights)
    }

    pub fn map_weights<U: Weight>(&self, f: impl Fn(&T) -> U) -> Result<RecursiveMlModel<U>> {
        RecursiveMlModel::new(
            self.dag.clone(),
            self.weighted_edges().map(|(e, c)| (e, f(c))),
            self.noise.iter().map(&f).collect(),
        )
    }

    /// `diag(c_11, ..., c_dd)`.
    pub fn noise_matrix(&self) -> Matrix<T> {
        Matrix::diagonal(self.noise.clone())
    }

    /// Weighted adjacency matrix with entry `(k, i) = c_ki` on edges.
    pub fn adjacency_matrix(&self) -> Matrix<T> {
        self.edge_matrix(|_, c| c.clone())
    }

    /// Entry `(k, i) = c_kk * c_ki` on edges: the weight of the one-edge path.
    pub fn scaled_adjacency_matrix(&self) -> Matrix<T> {
        self.edge_matrix(|k, c| self.noise[k].mul(c))
    }

    fn edge_matrix(&self, f: impl Fn(usize, &T) -> T) -> Matrix<T> {
        let d = self.node_count();
        let mut data = vec![T::zero(); d * d];
        for (&(k, i), c) in self.dag.edges0().iter().zip(&self.weights) {
            data[k * d + i] = f(k, c);
        }
        Matrix::new(d, d, data).expect("weights are admissible")
    }

    /// Coefficient matrix via semiring powers:
    /// `B = A ∨ A1 ∨ A1⊙A0 ∨ ... ∨ A1⊙A0^(d-2)`, stopping early once a power
    /// vanishes.
    pub fn compute_b(&self) -> MlCoefficientMatrix<T> {
        let d = self.node_count();
        let a0 = self.adjacency_matrix();
        let mut term = self.scaled_adjacency_matrix();
        let mut b = self.noise_matrix().join(&term).expect("same shape");
        for _ in 1..d.saturating_sub(1) {
            term = term.max_times(&a0).expect("square");
            if term.is_zero() {
                break;
            }
            b = b.join(&term).expect("same shape");
        }
        MlCoefficientMatrix::new_unchecked(b)
    }

    /// `A1 ⊙ A0^(n-1)`: entry `(j, i)` is the largest weight of a path from
    /// `j` to `i` with exactly `n` edges, or zero when there is none.
    pub fn max_weight_by_length(&self, n: u32) -> Result<Matrix<T>> {
        if n == 0 {
            return Err(Error::InvalidPath("paths have at least one edge".into()));
        }
        self.scaled_adjacency_matrix()
            .max_times(&self.adjacency_matrix().max_times_power(n - 1)?)
    }

    /// Coefficient matrix by explicit enumeration of every path. Exponential;
    /// fails once more than `cap` paths have been visited.
    pub fn compute_b_oracle(&self, cap: usize) -> Result<MlCoefficientMatrix<T>> {
        let d = self.node_count();
        let mut data = vec![T::zero(); d * d];
        let mut visited = 0usize;
        for j in 0..d {
            data[j * d + j] = self.noise[j].clone();
            let mut stack: Vec<(usize, T)> = vec![(j, self.noise[j].clone())];
            while let Some((node, w)) = stack.pop() {
                for &c in self.dag.children0(node) {
                    visited += 1;
                    if visited > cap {
                        return Err(Error::PathCapExceeded(cap));
                    }
                    let next = w.mul(self.edge_weight(node + 1, c + 1).expect("edge"));
                    let slot = &mut data[j * d + c];
                    if next > *slot {
                        *slot = next.clone();
                    }
                    stack.push((c, next));
                }
            }
        }
        Ok(MlCoefficientMatrix::new_unchecked(Matrix::new(d, d, data)?))
    }

    /// `c_{k0 k0} * prod c_{k_l k_{l+1}}`.
    pub fn path_weight(&self, path: &Path) -> Result<T> {
        let d = self.node_count();
        let src = path.source();
        if src == 0 || src > d {
            return Err(Error::NodeOutOfRange { node: src, d });
        }
        let mut w = self.noise[src - 1].clone();
        for (k, i) in path.edges() {
            let c = self
                .edge_weight(k, i)
                .ok_or_else(|| Error::InvalidPath(format!("{k} -> {i} is not an edge")))?;
            w = w.mul(c);
        }
        Ok(w)
    }

    /// Evaluates the structural equations in topological order.
    pub fn eval_recursive(&self, z: &[T]) -> Result<Vec<T>> {
        let d = self.node_count();
        if z.len() != d {
            return Err(Error::DimensionMismatch { op: "eval_recursive", left: (1, z.len()), right: (d, d) });
        }
        if let Some(pos) = z.iter().position(|x| !x.is_admissible()) {
            return Err(Error::NegativeEntry { row: 0, col: pos });
        }
        let mut x = vec![T::zero(); d];
        for &i in self.dag.order0() {
            let mut v = self.noise[i].mul(&z[i]);
            for &k in self.dag.parents0(i) {
                let idx = self.dag.edges0().binary_search(&(k, i)).expect("edge");
                v = v.max(self.weights[idx].mul(&x[k]));
            }
            x[i] = v;
        }
        Ok(x)
    }

    /// Model restricted to the edges of `subdag` (same node labels), keeping
    /// all weights.
    pub fn restrict(&self, subdag: &Dag) -> Result<Self> {
        if !subdag.is_subgraph_of(&self.dag) {
            let extra = subdag
                .edges()
                .find(|&(k, i)| !self.dag.has_edge(k, i))
                .map(|(k, i)| format!("edge {k} -> {i} is not in the model"))
                .unwrap_or_else(|| "node count differs".into());
            return Err(Error::NotSubgraph(extra));
        }
        RecursiveMlModel::new(
            subdag.clone(),
            subdag.edges().map(|(k, i)| ((k, i), self.edge_weight(k, i).expect("subgraph").clone())),
            self.noise.clone(),
        )
    }

    /// `{"d": .., "edges": [{"from": k, "to": i, "weight": c}], "noise": [..]}`.
    pub fn to_json(&self) -> Value {
        json!({
            "d": self.node_count(),
            "edges": self.weighted_edges().map(|((k, i), c)| json!({"from": k, "to": i, "weight": c.to_json()})).collect::<Vec<_>>(),
            "noise": self.noise.iter().map(Weight::to_json).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let obj = v.as_object().ok_or_else(|| Error::Schema("model must be a JSON object".into()))?;
        let d = read_d(obj)?;
        let mut edges = Vec::new();
        let mut weights = Vec::new();
        for e in read_edge_list(obj)? {
            let (k, i) = read_endpoints(e)?;
            let w = e
                .get("weight")
                .ok_or_else(|| Error::Schema(format!("edge {k} -> {i} has no weight")))?;
            let w = T::from_json(w)?;
            if !w.is_admissible() || w.is_zero() {
                return Err(Error::NonPositiveEdgeWeight { from: k, to: i, value: w.to_string() });
            }
            edges.push((k, i));
            weights.push(((k, i), w));
        }
        let noise = obj
            .get("noise")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Schema("missing array field \"noise\"".into()))?
            .iter()
            .map(T::from_json)
            .collect::<Result<Vec<_>>>()?;
        let dag = Dag::new(d, edges)?;
        RecursiveMlModel::new(dag, weights, noise)
    }
}

fn read_d(obj: &Map<String, Value>) -> Result<usize> {
    obj.get("d")
        .and_then(Value::as_u64)
        .map(|d| d as usize)
        .ok_or_else(|| Error::Schema("missing integer field \"d\"".into()))
}

fn read_edge_list(obj: &Map<String, Value>) -> Result<&Vec<Value>> {
    match obj.get("edges") {
        None => Err(Error::Schema("missing array field \"edges\"".into())),
        Some(v) => v.as_array().ok_or_else(|| Error::Schema("\"edges\" must be an array".into())),
    }
}

fn read_endpoints(e: &Value) -> Result<(usize, usize)> {
    if let Some(pair) = e.as_array() {
        if let [k, i] = pair.as_slice() {
            if let (Some(k), Some(i)) = (k.as_u64(), i.as_u64()) {
                return Ok((k as usize, i as usize));
            }
        }
        return Err(Error::Schema(format!("edge {e} must be [from, to]")));
    }
    let from = e.get("from").and_then(Value::as_u64);
    let to = e.get("to").and_then(Value::as_u64);
    match (from, to) {
        (Some(k), Some(i)) => Ok((k as usize, i as usize)),
        _ => Err(Error::Schema(format!("edge {e} needs integer \"from\" and \"to\""))),
    }
}

/// Reads `{"d": n, "edges": [...]}` where edges are `{"from", "to"}` objects
/// (extra fields such as `weight` are ignored) or `[from, to]` pairs.
pub fn dag_from_json(v: &Value) -> Result<Dag> {
    let obj = v.as_object().ok_or_else(|| Error::Schema("DAG must be a JSON object".into()))?;
    let d = read_d(obj)?;
    let edges = read_edge_list(obj)?.iter().map(read_endpoints).collect::<Result<Vec<_>>>()?;
    Dag::new(d, edges)
}

pub fn dag_to_json(dag: &Dag) -> Value {
    json!({
        "d": dag.node_count(),
        "edges": dag.edges().map(|(k, i)| json!({"from": k, "to": i})).collect::<Vec<_>>(),
    })
}

/// Square coefficient matrix `B` of a recursive max-linear model, together
/// with the tolerance used whenever its entries are compared.
///
/// Node-labelled accessors are 1-based.
#[derive(Clone, Debug, PartialEq)]
pub struct MlCoefficientMatrix<T> {
    b: Matrix<T>,
    tol: Tolerance,
}

impl<T: Weight> MlCoefficientMatrix<T> {
    pub(crate) fn new_unchecked(b: Matrix<T>) -> Self {
        MlCoefficientMatrix { b, tol: Tolerance::default() }
    }

    /// Accepts `b` only if it is the coefficient matrix of some recursive
    /// max-linear model (see [`crate::structure::validate_b`]).
    pub fn from_matrix(b: Matrix<T>, tol: Tolerance) -> Result<Self> {
        let report = crate::structure::validate_b(&b, &tol);
        if !report.is_valid() {
            return Err(Error::InvalidCoefficientMatrix(report.codes()));
        }
        Ok(MlCoefficientMatrix { b, tol })
    }

    pub fn with_tolerance(mut self, tol: Tolerance) -> Self {
        self.tol = tol;
        self
    }

    pub fn tolerance(&self) -> &Tolerance {
        &self.tol
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.b
    }

    pub fn into_matrix(self) -> Matrix<T> {
        self.b
    }

    pub fn node_count(&self) -> usize {
        self.b.rows()
    }

    /// `b_ji`; panics when a label is out of range.
    pub fn coef(&self, j: usize, i: usize) -> &T {
        self.b.get(j - 1, i - 1)
    }

    pub(crate) fn at(&self, j: usize, i: usize) -> &T {
        self.b.get(j, i)
    }

    pub fn check_node(&self, node: usize) -> Result<()> {
        let d = self.node_count();
        if node == 0 || node > d {
            Err(Error::NodeOutOfRange { node, d })
        } else {
            Ok(())
        }
    }

    /// `b_ji / b_jj`.
    pub fn ratio(&self, j: usize, i: usize) -> T {
        self.coef(j, i).div(self.coef(j, j))
    }

    /// `b_jk * b_ki / b_kk` for 0-based indices: the best weight of a path
    /// from `j` to `i` routed through `k`.
    pub(crate) fn via0(&self, j: usize, k: usize, i: usize) -> T {
        let (a, c) = (self.at(j, k), self.at(k, i));
        if a.is_zero() || c.is_zero() {
            return T::zero();
        }
        a.mul(c).div(self.at(k, k))
    }

    /// Strict ancestors of `i` read off the sign pattern.
    pub fn ancestors(&self, i: usize) -> Result<NodeSet> {
        self.check_node(i)?;
        Ok((1..=self.node_count()).filter(|&j| j != i && !self.coef(j, i).is_zero()).collect())
    }

    /// Strict descendants of `i` read off the sign pattern.
    pub fn descendants(&self, i: usize) -> Result<NodeSet> {
        self.check_node(i)?;
        Ok((1..=self.node_count()).filter(|&l| l != i && !self.coef(i, l).is_zero()).collect())
    }

    /// `X = Z ⊙ B`, i.e. `X_i = max_j b_ji Z_j`.
    pub fn apply(&self, z: &[T]) -> Result<Vec<T>> {
        self.b.left_apply(z)
    }

    pub fn approx_eq(&self, other: &Self) -> bool {
        self.b.approx_eq(&other.b, &self.tol)
    }
}
