//! Small worked models used throughout the tests and documentation.

use crate::dag::Dag;
use crate::model::RecursiveMlModel;
use crate::weight::{Rational, Weight};

fn diamond_with<T: Weight>(w: [T; 4]) -> RecursiveMlModel<T> {
    let [c12, c13, c24, c34] = w;
    RecursiveMlModel::new(
        Dag::new(4, [(1, 2), (1, 3), (2, 4), (3, 4)]).expect("diamond"),
        [((1, 2), c12), ((1, 3), c13), ((2, 4), c24), ((3, 4), c34)],
        vec![T::one(); 4],
    )
    .expect("valid weights")
}

/// Diamond `1 -> {2, 3} -> 4` with unit noise weights and
/// `c12 = 0.5, c13 = 0.3, c24 = 0.8, c34 = 0.9`, so that `b14 = 0.4` is
/// attained only by `1 -> 2 -> 4`.
pub fn diamond() -> RecursiveMlModel<f64> {
    diamond_with([0.5, 0.3, 0.8, 0.9])
}

pub fn diamond_rational() -> RecursiveMlModel<Rational> {
    let q = |p: i64, d: i64| Rational::new(p.into(), d.into());
    diamond_with([q(1, 2), q(3, 10), q(4, 5), q(9, 10)])
}

fn triangle_with<T: Weight>(c12: T, c23: T, c13: T) -> RecursiveMlModel<T> {
    RecursiveMlModel::new(
        Dag::new(3, [(1, 2), (1, 3), (2, 3)]).expect("triangle"),
        [((1, 2), c12), ((2, 3), c23), ((1, 3), c13)],
        vec![T::one(); 3],
    )
    .expect("valid weights")
}

/// Triangle `1 -> 2 -> 3` plus `1 -> 3`, unit noise, `c12 = 0.5`,
/// `c23 = 0.6` and the given `c13`. The direct edge survives reduction iff
/// `c13 > 0.3`.
pub fn triangle(c13: f64) -> RecursiveMlModel<f64> {
    triangle_with(0.5, 0.6, c13)
}

pub fn triangle_rational(c13: Rational) -> RecursiveMlModel<Rational> {
    let q = |p: i64, d: i64| Rational::new(p.into(), d.into());
    triangle_with(q(1, 2), q(3, 5), c13)
}
