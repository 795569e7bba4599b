//! Max-weighted paths, routing through node sets, and polytree extraction.
//!
//! A path from `j` to `i` is max-weighted when its weight equals `b_ji`.
//! Whether some max-weighted path from `j` to `i` visits a node of `U` can be
//! read off `B` alone: it does iff
//!
//! ```text
//! b_ji = max_{k in De(j) ∩ U ∩ An(i)} b_jk * b_ki / b_kk
//! ```
//!
//! and otherwise `b_ji` is strictly larger (an empty maximum is zero).

use crate::dag::{Dag, NodeSet};
use crate::error::{Error, Result};
use crate::model::{MlCoefficientMatrix, Path, RecursiveMlModel};
use crate::weight::Weight;

/// True iff the weight of `path` equals `b_{source,target}` under the
/// tolerance carried by `b`.
pub fn is_max_weighted<T: Weight>(
    model: &RecursiveMlModel<T>,
    b: &MlCoefficientMatrix<T>,
    path: &Path,
) -> Result<bool> {
    check_dims(model, b)?;
    let w = model.path_weight(path)?;
    Ok(b.tolerance().eq(&w, b.coef(path.source(), path.target())))
}

/// Best weight of a path from `j` to `i` that visits `U`:
/// `max_{k in De(j) ∩ U ∩ An(i)} b_jk b_ki / b_kk` (0-based, zero if empty).
pub(crate) fn routed_value<T: Weight>(
    b: &MlCoefficientMatrix<T>,
    j: usize,
    i: usize,
    nodes: impl IntoIterator<Item = usize>,
) -> T {
    nodes
        .into_iter()
        .map(|k| b.via0(j, k, i))
        .fold(T::zero(), T::max)
}

/// True iff some max-weighted path from `j` to `i` passes through a node of
/// `u` (endpoints included). Requires `j` to be a strict ancestor of `i`.
pub fn has_max_weighted_path_through<T: Weight>(
    b: &MlCoefficientMatrix<T>,
    j: usize,
    i: usize,
    u: &NodeSet,
) -> Result<bool> {
    b.check_node(j)?;
    b.check_node(i)?;
    u.check_range(b.node_count())?;
    if j == i || b.coef(j, i).is_zero() {
        return Err(Error::NotAncestor { j, i });
    }
    let routed = routed_value(b, j - 1, i - 1, u.iter().map(|k| k - 1));
    Ok(b.tolerance().eq(b.coef(j, i), &routed))
}

/// A polytree on `An(root)` holding exactly one max-weighted path from every
/// ancestor to `root`. `dag` keeps the full node labelling of the model;
/// nodes outside `nodes` are isolated.
#[derive(Clone, Debug, PartialEq)]
pub struct Polytree {
    pub root: usize,
    pub nodes: NodeSet,
    pub dag: Dag,
}

/// Builds the polytree for `i` by giving every ancestor `j` one outgoing
/// edge `j -> s` such that the edge followed by a max-weighted path from `s`
/// reaches `b_ji`. Among admissible successors the smallest label wins.
pub fn max_weighted_polytree<T: Weight>(
    model: &RecursiveMlModel<T>,
    b: &MlCoefficientMatrix<T>,
    i: usize,
) -> Result<Polytree> {
    check_dims(model, b)?;
    b.check_node(i)?;
    let tol = b.tolerance();
    let ancestors = b.ancestors(i)?;
    let mut edges = Vec::with_capacity(ancestors.len());
    for j in ancestors.iter() {
        let start = model.noise_weight(j);
        let next = model
            .dag()
            .children(j)?
            .iter()
            .filter(|&s| s == i || !b.coef(s, i).is_zero())
            .find(|&s| {
                let c = model.edge_weight(j, s).expect("child edge");
                let w = start.mul(c).mul(&b.ratio(s, i));
                tol.eq(&w, b.coef(j, i))
            })
            .ok_or_else(|| {
                Error::InconsistentModel(format!("no max-weighted edge leaves {j} towards {i}"))
            })?;
        edges.push((j, next));
    }
    let mut nodes = ancestors;
    nodes.insert(i);
    let dag = Dag::new(model.node_count(), edges)?;
    Ok(Polytree { root: i, nodes, dag })
}

/// Submodel on the edges of `subdag` with the same edge and noise weights.
pub fn induced_submodel<T: Weight>(
    model: &RecursiveMlModel<T>,
    subdag: &Dag,
) -> Result<RecursiveMlModel<T>> {
    model.restrict(subdag)
}

fn check_dims<T: Weight>(model: &RecursiveMlModel<T>, b: &MlCoefficientMatrix<T>) -> Result<()> {
    if model.node_count() != b.node_count() {
        return Err(Error::InconsistentModel(format!(
            "model has {} nodes but B is {}x{}",
            model.node_count(),
            b.node_count(),
            b.node_count()
        )));
    }
    Ok(())
}
