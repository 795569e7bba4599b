//! Which matrices arise as coefficient matrices, the minimum max-linear DAG,
//! and every DAG/weight combination that reproduces a given `B`.

use itertools::Itertools;
use serde_json::{json, Value};

use crate::dag::{dag_from_support, is_reachability_matrix, Dag};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::model::{MlCoefficientMatrix, RecursiveMlModel};
use crate::paths::routed_value;
use crate::weight::{Tolerance, Weight};

/// Default number of DAGs produced by [`admissible_dags`].
pub const DEFAULT_ADMISSIBLE_CAP: usize = 10_000;

/// A failed fixed-point identity at entry `(j, i)` (1-based): `lhs = b_ji`,
/// `rhs` the right-hand side of the fixed-point equation.
#[derive(Clone, Debug, PartialEq)]
pub struct Violation<T> {
    pub j: usize,
    pub i: usize,
    pub lhs: T,
    pub rhs: T,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Issue<T> {
    NotSquare { rows: usize, cols: usize },
    ZeroDiagonal { i: usize },
    NotReachability,
    FixedPoint(Violation<T>),
}

impl<T: Weight> Issue<T> {
    pub fn code(&self) -> &'static str {
        match self {
            Issue::NotSquare { .. } => "not_square",
            Issue::ZeroDiagonal { .. } => "zero_diagonal",
            Issue::NotReachability => "not_reachability",
            Issue::FixedPoint(_) => "fixed_point",
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Issue::NotSquare { rows, cols } => json!({"code": self.code(), "rows": rows, "cols": cols}),
            Issue::ZeroDiagonal { i } => json!({"code": self.code(), "node": i}),
            Issue::NotReachability => json!({"code": self.code()}),
            Issue::FixedPoint(v) => json!({
                "code": self.code(),
                "j": v.j,
                "i": v.i,
                "lhs": v.lhs.to_json(),
                "rhs": v.rhs.to_json(),
            }),
        }
    }
}

/// Verdict of a validation with every issue found.
#[derive(Clone, Debug, PartialEq)]
pub struct Validation<T> {
    pub issues: Vec<Issue<T>>,
}

impl<T: Weight> Validation<T> {
    pub fn is_valid(&self) -> bool {
        self.issues.is_empty()
    }

    pub fn violations(&self) -> impl Iterator<Item = &Violation<T>> {
        self.issues.iter().filter_map(|i| match i {
            Issue::FixedPoint(v) => Some(v),
            _ => None,
        })
    }

    /// Distinct reason codes in first-seen order.
    pub fn codes(&self) -> Vec<String> {
        self.issues.iter().map(|i| i.code().to_string()).unique().collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "valid": self.is_valid(),
            "reasons": self.codes(),
            "issues": self.issues.iter().map(Issue::to_json).collect::<Vec<_>>(),
        })
    }
}

fn compare<T: Weight>(b: &Matrix<T>, rhs: &Matrix<T>, tol: &Tolerance) -> Vec<Issue<T>> {
    let d = b.rows();
    let mut issues = Vec::new();
    for j in 0..d {
        for i in 0..d {
            let (l, r) = (b.get(j, i), rhs.get(j, i));
            if !tol.eq(l, r) {
                issues.push(Issue::FixedPoint(Violation { j: j + 1, i: i + 1, lhs: l.clone(), rhs: r.clone() }));
            }
        }
    }
    issues
}

/// `A0` with entry `(k, i) = b_ki / b_kk` for edges `k -> i` of `dag`.
fn normalized_adjacency<T: Weight>(b: &Matrix<T>, dag: &Dag) -> Matrix<T> {
    let d = b.rows();
    Matrix::from_fn(d, d, |k, i| {
        if dag.has_edge(k + 1, i + 1) {
            b.get(k, i).div(b.get(k, k))
        } else {
            T::zero()
        }
    })
    .expect("ratios of admissible entries")
}

/// `B0 = (b_ij / b_ii)`.
fn normalized_rows<T: Weight>(b: &Matrix<T>) -> Matrix<T> {
    let d = b.rows();
    Matrix::from_fn(d, d, |k, i| b.get(k, i).div(b.get(k, k))).expect("ratios of admissible entries")
}

fn diagonal_of<T: Weight>(b: &Matrix<T>) -> Matrix<T> {
    Matrix::diagonal((0..b.rows()).map(|i| b.get(i, i).clone()).collect())
}

/// Checks `B = A ∨ B ⊙ A0` on a given DAG, where `A = diag(B)` and
/// `A0 = (b_ki / b_kk)` on the edges of `dag`.
///
/// The sign pattern of `B` must equal the reachability matrix of `dag` and
/// the diagonal must be positive; otherwise an error is returned rather
/// than a negative verdict.
pub fn validate_on_dag<T: Weight>(b: &Matrix<T>, dag: &Dag, tol: &Tolerance) -> Result<Validation<T>> {
    if !b.is_square() {
        return Err(Error::NotSquare { rows: b.rows(), cols: b.cols() });
    }
    let d = dag.node_count();
    if b.rows() != d {
        return Err(Error::DimensionMismatch { op: "validate_on_dag", left: b.shape(), right: (d, d) });
    }
    if let Some(i) = (0..d).find(|&i| b.get(i, i).is_zero()) {
        return Err(Error::ZeroDiagonal(i + 1));
    }
    for j in 0..d {
        for i in 0..d {
            if b.get(j, i).is_zero() == dag.reaches0(j, i) {
                return Err(Error::ReachabilityMismatch { j: j + 1, i: i + 1 });
            }
        }
    }
    let rhs = diagonal_of(b)
        .join(&b.max_times(&normalized_adjacency(b, dag))?)?;
    Ok(Validation { issues: compare(b, &rhs, tol) })
}

/// Checks, without a DAG, that `b` is the coefficient matrix of some
/// recursive max-linear model: its sign pattern is a reachability matrix and
/// `B = B ⊙ B0` with `B0 = (b_ij / b_ii)`.
pub fn validate_b<T: Weight>(b: &Matrix<T>, tol: &Tolerance) -> Validation<T> {
    if !b.is_square() {
        return Validation { issues: vec![Issue::NotSquare { rows: b.rows(), cols: b.cols() }] };
    }
    let zero_diag: Vec<_> = (0..b.rows())
        .filter(|&i| b.get(i, i).is_zero())
        .map(|i| Issue::ZeroDiagonal { i: i + 1 })
        .collect();
    if !zero_diag.is_empty() {
        return Validation { issues: zero_diag };
    }
    if !is_reachability_matrix(b).expect("square") {
        return Validation { issues: vec![Issue::NotReachability] };
    }
    let rhs = b.max_times(&normalized_rows(b)).expect("square");
    Validation { issues: compare(b, &rhs, tol) }
}

/// Both DAG-free fixed-point maps: `B ⊙ B0` and `A ∨ B ⊙ (B0 - id)`.
/// For a matrix with positive diagonal they coincide.
pub fn dag_free_fixed_points<T: Weight>(b: &Matrix<T>) -> Result<(Matrix<T>, Matrix<T>)> {
    if !b.is_square() {
        return Err(Error::NotSquare { rows: b.rows(), cols: b.cols() });
    }
    let b0 = normalized_rows(b);
    let d = b.rows();
    let a0_tc = Matrix::from_fn(d, d, |k, i| if k == i { T::zero() } else { b0.get(k, i).clone() })?;
    let squared = b.max_times(&b0)?;
    let split = diagonal_of(b).join(&b.max_times(&a0_tc)?)?;
    Ok((squared, split))
}

/// Minimum ML DAG from a model and its coefficient matrix: keeps `k -> i`
/// iff `b_ki > max_{l in de(k) ∩ pa(i)} b_kl b_li / b_ll`.
pub fn minimum_ml_dag_from_model<T: Weight>(
    model: &RecursiveMlModel<T>,
    b: &MlCoefficientMatrix<T>,
) -> Result<Dag> {
    let dag = model.dag();
    let report = validate_on_dag(b.matrix(), dag, b.tolerance())
        .map_err(|e| Error::InconsistentModel(e.to_string()))?;
    if !report.is_valid() {
        return Err(Error::InconsistentModel(format!(
            "B violates the fixed-point equation on the model DAG at {} entries",
            report.issues.len()
        )));
    }
    let tol = b.tolerance();
    let kept = dag.edges0().iter().copied().filter(|&(k, i)| {
        let via = dag.parents0(i).iter().copied().filter(|&l| l != k && dag.reaches0(k, l));
        tol.gt(b.at(k, i), &routed_value(b, k, i, via))
    });
    Dag::new(dag.node_count(), kept.map(|(k, i)| (k + 1, i + 1)).collect::<Vec<_>>())
}

/// Minimum ML DAG read off `B` alone: edge `k -> i` iff `k != i` and
/// `b_ki > max_{l != i, k} b_kl b_li / b_ll`.
pub fn minimum_ml_dag_from_b<T: Weight>(b: &MlCoefficientMatrix<T>) -> Dag {
    let d = b.node_count();
    let tol = b.tolerance();
    let edges: Vec<_> = (0..d)
        .flat_map(|k| (0..d).map(move |i| (k, i)))
        .filter(|&(k, i)| k != i && !b.at(k, i).is_zero())
        .filter(|&(k, i)| {
            let via = (0..d).filter(|&l| l != k && l != i);
            tol.gt(b.at(k, i), &routed_value(b, k, i, via))
        })
        .map(|(k, i)| (k + 1, i + 1))
        .collect();
    Dag::new(d, edges).expect("edges follow a reachability order")
}

/// Edges of the transitive closure of `sgn(B)` that are not in the minimum
/// ML DAG, sorted.
pub fn optional_edges<T: Weight>(b: &MlCoefficientMatrix<T>) -> Vec<(usize, usize)> {
    let min = minimum_ml_dag_from_b(b);
    let closure = dag_from_support(b.matrix()).expect("valid B").transitive_closure();
    closure.edges().filter(|&(k, i)| !min.has_edge(k, i)).collect()
}

/// Every DAG that reproduces `B`: the minimum ML DAG plus any subset of the
/// optional edges. Subsets come fewest-edges first, lexicographically within
/// a size, and at most `cap` DAGs are produced.
pub fn admissible_dags<T: Weight>(
    b: &MlCoefficientMatrix<T>,
    cap: usize,
) -> impl Iterator<Item = Dag> + Clone {
    let d = b.node_count();
    let base: Vec<_> = minimum_ml_dag_from_b(b).edges().collect();
    let optional = optional_edges(b);
    let m = optional.len();
    (0..=m)
        .flat_map(move |size| (0..m).combinations(size))
        .map(move |pick| {
            let edges = base.iter().copied().chain(pick.iter().map(|&p| optional[p]));
            Dag::new(d, edges.collect::<Vec<_>>()).expect("subgraph of the closure")
        })
        .take(cap)
}

/// Admissible weight for one edge of a representing DAG.
#[derive(Clone, Debug, PartialEq)]
pub enum EdgeWeight<T> {
    /// Edge of the minimum ML DAG: `c_ki = b_ki / b_kk` exactly.
    Pinned { from: usize, to: usize, value: T },
    /// Any `c_ki` in the half-open interval `(0, upper]`.
    Free { from: usize, to: usize, upper: T },
}

impl<T: Weight> EdgeWeight<T> {
    pub fn endpoints(&self) -> (usize, usize) {
        match self {
            EdgeWeight::Pinned { from, to, .. } | EdgeWeight::Free { from, to, .. } => (*from, *to),
        }
    }

    /// Upper end of the admissible set; the only value for pinned edges.
    pub fn upper(&self) -> &T {
        match self {
            EdgeWeight::Pinned { value, .. } => value,
            EdgeWeight::Free { upper, .. } => upper,
        }
    }

    pub fn admits(&self, c: &T, tol: &Tolerance) -> bool {
        match self {
            EdgeWeight::Pinned { value, .. } => tol.eq(c, value),
            EdgeWeight::Free { upper, .. } => !c.is_zero() && c.is_admissible() && tol.ge(upper, c),
        }
    }
}

/// All weights under which a DAG represents `B`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightSpace<T> {
    pub dag: Dag,
    pub noise: Vec<T>,
    pub edges: Vec<EdgeWeight<T>>,
    tol: Tolerance,
}

impl<T: Weight> WeightSpace<T> {
    /// Model with every free weight at its upper endpoint.
    pub fn canonical(&self) -> RecursiveMlModel<T> {
        self.instantiate(|_, _, upper| upper.clone()).expect("upper endpoints are admissible")
    }

    /// Model with free weights chosen by `choose(from, to, upper)`; the choice
    /// must lie in `(0, upper]`.
    pub fn instantiate(&self, mut choose: impl FnMut(usize, usize, &T) -> T) -> Result<RecursiveMlModel<T>> {
        let mut weights = Vec::with_capacity(self.edges.len());
        for e in &self.edges {
            let (k, i) = e.endpoints();
            let c = match e {
                EdgeWeight::Pinned { value, .. } => value.clone(),
                EdgeWeight::Free { upper, .. } => choose(k, i, upper),
            };
            if !e.admits(&c, &self.tol) {
                return Err(Error::NotAdmissible(format!("weight {c} for {k} -> {i} is outside (0, {}]", e.upper())));
            }
            weights.push(((k, i), c));
        }
        RecursiveMlModel::new(self.dag.clone(), weights, self.noise.clone())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "noise": self.noise.iter().map(Weight::to_json).collect::<Vec<_>>(),
            "edges": self.edges.iter().map(|e| match e {
                EdgeWeight::Pinned { from, to, value } => json!({"from": from, "to": to, "value": value.to_json()}),
                EdgeWeight::Free { from, to, upper } => json!({"from": from, "to": to, "lower_exclusive": 0, "upper_inclusive": upper.to_json()}),
            }).collect::<Vec<_>>(),
        })
    }
}

/// Weight specification for an admissible DAG: `c_ii = b_ii`, edges of the
/// minimum ML DAG pinned to `b_ki / b_kk`, all others free in
/// `(0, b_ki / b_kk]`.
pub fn weight_space<T: Weight>(b: &MlCoefficientMatrix<T>, dag: &Dag) -> Result<WeightSpace<T>> {
    let d = b.node_count();
    if dag.node_count() != d {
        return Err(Error::NotAdmissible(format!("DAG has {} nodes, B has {d}", dag.node_count())));
    }
    if dag.reachability_matrix::<T>() != b.matrix().sign() {
        return Err(Error::NotAdmissible("reachability differs from the sign pattern of B".into()));
    }
    let min = minimum_ml_dag_from_b(b);
    if let Some((k, i)) = min.edges().find(|&(k, i)| !dag.has_edge(k, i)) {
        return Err(Error::NotAdmissible(format!("missing required edge {k} -> {i}")));
    }
    let edges = dag
        .edges()
        .map(|(k, i)| {
            let r = b.ratio(k, i);
            if min.has_edge(k, i) {
                EdgeWeight::Pinned { from: k, to: i, value: r }
            } else {
                EdgeWeight::Free { from: k, to: i, upper: r }
            }
        })
        .collect();
    Ok(WeightSpace {
        dag: dag.clone(),
        noise: (1..=d).map(|i| b.coef(i, i).clone()).collect(),
        edges,
        tol: *b.tolerance(),
    })
}
