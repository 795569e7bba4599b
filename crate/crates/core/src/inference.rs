//! Bounds on a component given observed components, and the smallest
//! max-linear representation of `X_i` in terms of observed `X_U` and noise.

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

use crate::dag::NodeSet;
use crate::error::{Error, Result};
use crate::model::MlCoefficientMatrix;
use crate::paths::routed_value;
use crate::structure::minimum_ml_dag_from_b;
use crate::weight::Weight;

fn check<T: Weight>(b: &MlCoefficientMatrix<T>, i: usize, u: &NodeSet) -> Result<()> {
    b.check_node(i)?;
    u.check_range(b.node_count())
}

/// Ancestors `j` of `i` in `U` such that no max-weighted path `j ⇝ i`
/// visits another node of `U`. Equals `{i}` when `i` is in `U`.
pub fn an_low<T: Weight>(b: &MlCoefficientMatrix<T>, i: usize, u: &NodeSet) -> Result<NodeSet> {
    check(b, i, u)?;
    if u.contains(i) {
        return Ok(NodeSet::from([i]));
    }
    let tol = b.tolerance();
    Ok(u.iter()
        .filter(|&j| j != i && !b.coef(j, i).is_zero())
        .filter(|&j| {
            let via = u.iter().filter(|&k| k != j).map(|k| k - 1);
            tol.gt(b.coef(j, i), &routed_value(b, j - 1, i - 1, via))
        })
        .collect())
}

/// Descendants `l` of `i` in `U` such that no max-weighted path `i ⇝ l`
/// visits another node of `U`. Equals `{i}` when `i` is in `U`.
pub fn de_high<T: Weight>(b: &MlCoefficientMatrix<T>, i: usize, u: &NodeSet) -> Result<NodeSet> {
    check(b, i, u)?;
    if u.contains(i) {
        return Ok(NodeSet::from([i]));
    }
    let tol = b.tolerance();
    Ok(u.iter()
        .filter(|&l| l != i && !b.coef(i, l).is_zero())
        .filter(|&l| {
            let via = u.iter().filter(|&k| k != l).map(|k| k - 1);
            tol.gt(b.coef(i, l), &routed_value(b, i - 1, l - 1, via))
        })
        .collect())
}

/// Strict ancestors `j` of `i` with no max-weighted path `j ⇝ i` through `U`
/// (endpoints included).
pub fn nmw_ancestors<T: Weight>(b: &MlCoefficientMatrix<T>, i: usize, u: &NodeSet) -> Result<NodeSet> {
    check(b, i, u)?;
    let tol = b.tolerance();
    Ok(b.ancestors(i)?
        .iter()
        .filter(|&j| tol.gt(b.coef(j, i), &routed_value(b, j - 1, i - 1, u.iter().map(|k| k - 1))))
        .collect())
}

/// Interval `[lower, upper]` containing `X_i`; `upper = None` is `+inf`.
#[derive(Clone, Debug, PartialEq)]
pub struct Bounds<T> {
    pub lower: T,
    pub upper: Option<T>,
}

impl<T: Weight> Bounds<T> {
    pub fn contains(&self, x: &T, tol: &crate::weight::Tolerance) -> bool {
        tol.ge(x, &self.lower) && self.upper.as_ref().is_none_or(|u| tol.ge(u, x))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "lower": self.lower.to_json(),
            "upper": self.upper.as_ref().map_or(Value::from("inf"), Weight::to_json),
        })
    }
}

fn observed<T: Weight>(x: &BTreeMap<usize, T>, node: usize) -> Result<&T> {
    x.get(&node).ok_or(Error::MissingObservation(node))
}

fn check_observations<T: Weight>(u: &NodeSet, x: &BTreeMap<usize, T>) -> Result<()> {
    for k in u.iter() {
        if !observed(x, k)?.is_admissible() {
            return Err(Error::NegativeObservation(k));
        }
    }
    Ok(())
}

fn fold_bounds<T: Weight>(
    b: &MlCoefficientMatrix<T>,
    i: usize,
    lower_set: &NodeSet,
    upper_set: &NodeSet,
    x: &BTreeMap<usize, T>,
) -> Result<Bounds<T>> {
    let mut lower = T::zero();
    for j in lower_set.iter() {
        lower = lower.max(b.ratio(j, i).mul(observed(x, j)?));
    }
    let mut upper: Option<T> = None;
    for l in upper_set.iter() {
        let v = b.coef(i, i).div(b.coef(i, l)).mul(observed(x, l)?);
        upper = Some(match upper {
            Some(u) => u.min(v),
            None => v,
        });
    }
    Ok(Bounds { lower, upper })
}

/// Tight bounds on `X_i` from the observations `x` of `X_U`, folded over
/// [`an_low`] and [`de_high`]. Observations are keyed by node label; their
/// mutual consistency with `B` is not checked.
pub fn bounds<T: Weight>(
    b: &MlCoefficientMatrix<T>,
    i: usize,
    u: &NodeSet,
    x: &BTreeMap<usize, T>,
) -> Result<Bounds<T>> {
    check(b, i, u)?;
    check_observations(u, x)?;
    fold_bounds(b, i, &an_low(b, i, u)?, &de_high(b, i, u)?, x)
}

/// The same bounds folded over all of `An(i) ∩ U` and `De(i) ∩ U`.
pub fn raw_bounds<T: Weight>(
    b: &MlCoefficientMatrix<T>,
    i: usize,
    u: &NodeSet,
    x: &BTreeMap<usize, T>,
) -> Result<Bounds<T>> {
    check(b, i, u)?;
    check_observations(u, x)?;
    let an: NodeSet = u.iter().filter(|&j| !b.coef(j, i).is_zero()).collect();
    let de: NodeSet = u.iter().filter(|&l| !b.coef(i, l).is_zero()).collect();
    fold_bounds(b, i, &an, &de, x)
}

/// `X_i = max_k node_terms[k] X_k ∨ max_j noise_terms[j] Z_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct Representation<T> {
    pub node: usize,
    pub node_terms: BTreeMap<usize, T>,
    pub noise_terms: BTreeMap<usize, T>,
}

impl<T: Weight> Representation<T> {
    /// Evaluates the right-hand side on full vectors `x` and `z` (index
    /// `k - 1` holds node `k`).
    pub fn eval(&self, x: &[T], z: &[T]) -> T {
        let nodes = self.node_terms.iter().map(|(&k, c)| c.mul(&x[k - 1]));
        let noise = self.noise_terms.iter().map(|(&j, c)| c.mul(&z[j - 1]));
        nodes.chain(noise).fold(T::zero(), T::max)
    }

    pub fn term_count(&self) -> usize {
        self.node_terms.len() + self.noise_terms.len()
    }

    pub fn to_json(&self) -> Value {
        let terms = |m: &BTreeMap<usize, T>| {
            Value::Object(m.iter().map(|(k, c)| (k.to_string(), c.to_json())).collect::<Map<_, _>>())
        };
        json!({"node_terms": terms(&self.node_terms), "noise_terms": terms(&self.noise_terms)})
    }
}

/// Representation of `X_i` using the fewest components of `X_U`: node terms
/// over [`an_low`] with coefficients `b_ki / b_kk`, noise terms `b_ji Z_j`
/// over `(nmw_ancestors ∪ {i}) \ U`.
pub fn minimal_representation<T: Weight>(
    b: &MlCoefficientMatrix<T>,
    i: usize,
    u: &NodeSet,
) -> Result<Representation<T>> {
    check(b, i, u)?;
    if u.contains(i) {
        return Ok(Representation {
            node: i,
            node_terms: BTreeMap::from([(i, T::one())]),
            noise_terms: BTreeMap::new(),
        });
    }
    let node_terms = an_low(b, i, u)?.iter().map(|k| (k, b.ratio(k, i))).collect();
    let mut noise = nmw_ancestors(b, i, u)?;
    noise.insert(i);
    let noise_terms = noise
        .iter()
        .filter(|&j| !u.contains(j))
        .map(|j| (j, b.coef(j, i).clone()))
        .collect();
    Ok(Representation { node: i, node_terms, noise_terms })
}

/// `X_i = max_{k in pa^B(i)} (b_ki / b_kk) X_k ∨ b_ii Z_i` with parents
/// taken in the minimum ML DAG.
pub fn parent_representation<T: Weight>(b: &MlCoefficientMatrix<T>, i: usize) -> Result<Representation<T>> {
    b.check_node(i)?;
    let parents = minimum_ml_dag_from_b(b).parents(i)?;
    Ok(Representation {
        node: i,
        node_terms: parents.iter().map(|k| (k, b.ratio(k, i))).collect(),
        noise_terms: BTreeMap::from([(i, b.coef(i, i).clone())]),
    })
}
