#![allow(dead_code)]

use maxlin_core::generate::{random_dag, random_model, random_rational_model};
use maxlin_core::{Dag, RecursiveMlModel, Rational, Weight};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rational_model(seed: u64, d: usize, p: f64) -> RecursiveMlModel<Rational> {
    let mut r = rng(seed);
    let dag = random_dag(&mut r, d, p);
    random_rational_model(&mut r, dag, 6)
}

pub fn float_model(seed: u64, d: usize, p: f64) -> RecursiveMlModel<f64> {
    let mut r = rng(seed);
    let dag = random_dag(&mut r, d, p);
    random_model(&mut r, dag, 0.0, 2.0)
}

pub fn q(p: i64, d: i64) -> Rational {
    Rational::new(p.into(), d.into())
}

/// Every directed path (as 1-based node lists, at least one edge) from `j`
/// to `i`, found by depth-first search on the edge list.
pub fn all_paths(dag: &Dag, j: usize, i: usize) -> Vec<Vec<usize>> {
    fn go(dag: &Dag, at: usize, target: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        for (k, c) in dag.edges() {
            if k != at {
                continue;
            }
            cur.push(c);
            if c == target {
                out.push(cur.clone());
            } else {
                go(dag, c, target, cur, out);
            }
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(dag, j, i, &mut vec![j], &mut out);
    out
}

pub fn weight_of<T: Weight>(m: &RecursiveMlModel<T>, path: &[usize]) -> T {
    path.windows(2)
        .fold(m.noise_weight(path[0]).clone(), |w, e| w.mul(m.edge_weight(e[0], e[1]).unwrap()))
}

/// Largest path weight from `j` to `i` among paths selected by `keep`,
/// with `b_jj = c_jj` for `j == i`.
pub fn brute_b<T: Weight>(m: &RecursiveMlModel<T>, j: usize, i: usize, keep: impl Fn(&[usize]) -> bool) -> T {
    if j == i {
        return m.noise_weight(j).clone();
    }
    all_paths(m.dag(), j, i)
        .iter()
        .filter(|p| keep(p))
        .map(|p| weight_of(m, p))
        .fold(T::zero(), T::max)
}
