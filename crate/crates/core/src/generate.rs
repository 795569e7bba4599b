//! Random DAGs and models for property checks and simulation studies.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::dag::Dag;
use crate::model::RecursiveMlModel;
use crate::weight::Rational;

/// Random DAG on `d` nodes: a hidden random node order, each forward pair
/// joined with probability `edge_prob`.
pub fn random_dag<R: Rng + ?Sized>(rng: &mut R, d: usize, edge_prob: f64) -> Dag {
    let mut order: Vec<usize> = (1..=d).collect();
    order.shuffle(rng);
    let mut edges = Vec::new();
    for a in 0..d {
        for b in a + 1..d {
            if rng.random_bool(edge_prob) {
                edges.push((order[a], order[b]));
            }
        }
    }
    Dag::new(d, edges).expect("forward edges of a permutation are acyclic")
}

/// Model on `dag` with every weight drawn uniformly from `(min_weight, max_weight]`.
pub fn random_model<R: Rng + ?Sized>(rng: &mut R, dag: Dag, min_weight: f64, max_weight: f64) -> RecursiveMlModel<f64> {
    let draw = |rng: &mut R| {
        // (min, max]
        max_weight - rng.random::<f64>() * (max_weight - min_weight)
    };
    let weights: Vec<_> = dag.edges().map(|e| (e, draw(rng))).collect();
    let noise = (0..dag.node_count()).map(|_| draw(rng)).collect();
    RecursiveMlModel::new(dag, weights, noise).expect("positive weights")
}

/// Model on `dag` with weights `p/q`, `q` uniform in `1..=max_denominator`
/// and `p` uniform in `1..=2q`, so weights lie in `(0, 2]`. Small
/// denominators make ties between distinct paths common.
pub fn random_rational_model<R: Rng + ?Sized>(
    rng: &mut R,
    dag: Dag,
    max_denominator: i64,
) -> RecursiveMlModel<Rational> {
    let draw = |rng: &mut R| {
        let q = rng.random_range(1..=max_denominator);
        let p = rng.random_range(1..=2 * q);
        Rational::new(p.into(), q.into())
    };
    let weights: Vec<_> = dag.edges().map(|e| (e, draw(rng))).collect();
    let noise = (0..dag.node_count()).map(|_| draw(rng)).collect();
    RecursiveMlModel::new(dag, weights, noise).expect("positive weights")
}
