mod common;

use common::*;
use maxlin_core::{Dag, LogWeight, Matrix, RecursiveMlModel, Tolerance, Weight, DEFAULT_PATH_CAP};
use proptest::prelude::*;

#[test]
fn matches_path_enumeration_exactly() {
    for seed in 0..200 {
        let d = 1 + (seed as usize % 8);
        let m = rational_model(seed, d, 0.5);
        let b = m.compute_b();
        assert_eq!(b, m.compute_b_oracle(DEFAULT_PATH_CAP).unwrap(), "seed {seed}");
        for j in 1..=d {
            for i in 1..=d {
                assert_eq!(b.coef(j, i), &brute_b(&m, j, i, |_| true), "seed {seed} ({j},{i})");
            }
        }
    }
}

#[test]
fn matches_path_enumeration_in_floats() {
    let tol = Tolerance::default();
    for seed in 0..200 {
        let d = 1 + (seed as usize % 8);
        let m = float_model(1000 + seed, d, 0.6);
        let b = m.compute_b();
        for j in 1..=d {
            for i in 1..=d {
                assert!(tol.eq(b.coef(j, i), &brute_b(&m, j, i, |_| true)), "seed {seed} ({j},{i})");
            }
        }
    }
}

#[test]
fn powers_give_best_weight_per_length() {
    for seed in 0..60 {
        let d = 2 + (seed as usize % 6);
        let m = rational_model(seed + 500, d, 0.7);
        for n in 1..d as u32 {
            let by_len = m.max_weight_by_length(n).unwrap();
            for j in 1..=d {
                for i in 1..=d {
                    let want = if j == i {
                        Weight::zero()
                    } else {
                        brute_b(&m, j, i, |p| p.len() == n as usize + 1)
                    };
                    assert_eq!(by_len.get(j - 1, i - 1), &want, "seed {seed} n {n} ({j},{i})");
                }
            }
        }
        assert!(m.max_weight_by_length(d as u32).unwrap().is_zero());
    }
}

#[test]
fn oracle_enforces_its_cap() {
    let edges: Vec<_> = (1..=12).flat_map(|a| (a + 1..=12).map(move |b| (a, b))).collect();
    let dag = Dag::new(12, edges.clone()).unwrap();
    let m = RecursiveMlModel::new(dag, edges.iter().map(|&e| (e, 1.0)), vec![1.0; 12]).unwrap();
    assert!(m.compute_b_oracle(1000).is_err());
    assert_eq!(m.compute_b().matrix().get(0, 11), &1.0);
}

#[test]
fn log_domain_survives_underflow() {
    // a chain of 40 edges with weight 1e-10: the end-to-end weight 1e-400
    // is below the smallest positive f64
    let d = 41;
    let edges: Vec<_> = (1..d).map(|k| (k, k + 1)).collect();
    let dag = Dag::new(d, edges.clone()).unwrap();
    let lin = RecursiveMlModel::new(dag.clone(), edges.iter().map(|&e| (e, 1e-10)), vec![1.0; d]).unwrap();
    assert_eq!(lin.compute_b().coef(1, d), &0.0);

    let log = RecursiveMlModel::new(
        dag,
        edges.iter().map(|&e| (e, LogWeight::from_linear(1e-10))),
        vec![LogWeight::from_linear(1.0); d],
    )
    .unwrap();
    let b = log.compute_b();
    let expected = 40.0 * 1e-10f64.ln();
    assert!((b.coef(1, d).ln() - expected).abs() < 1e-9);
    assert!(!b.coef(1, d).is_zero());
    assert!(b.coef(d, 1).is_zero());
}

proptest! {
    #[test]
    fn log_domain_agrees_with_linear(seed in any::<u64>(), d in 1usize..7, p in 0.0f64..1.0) {
        let m = float_model(seed, d, p);
        let log = m.map_weights(|&w| LogWeight::from_linear(w)).unwrap();
        let b = m.compute_b();
        let lb = log.compute_b();
        for j in 0..d {
            for i in 0..d {
                let (x, y) = (b.matrix().get(j, i), lb.matrix().get(j, i));
                if *x == 0.0 {
                    prop_assert!(y.is_zero());
                } else {
                    prop_assert!((x.ln() - y.ln()).abs() < 1e-9);
                }
            }
        }
    }

    #[test]
    fn sign_of_b_is_reachability(seed in any::<u64>(), d in 1usize..8, p in 0.0f64..1.0) {
        let m = rational_model(seed, d, p);
        let b = m.compute_b();
        prop_assert_eq!(b.matrix().sign(), m.dag().reachability_matrix());
    }

    #[test]
    fn b_dominates_every_path(seed in any::<u64>(), d in 2usize..7, p in 0.0f64..1.0) {
        let m = rational_model(seed, d, p);
        let b = m.compute_b();
        for j in 1..=d {
            for i in 1..=d {
                for path in all_paths(m.dag(), j, i) {
                    prop_assert!(&weight_of(&m, &path) <= b.coef(j, i));
                }
            }
        }
    }

    #[test]
    fn matrix_and_recursive_evaluation_agree(seed in any::<u64>(), d in 1usize..8, p in 0.0f64..1.0,
                                             z in proptest::collection::vec(0u32..50, 8)) {
        let m = rational_model(seed, d, p);
        let z: Vec<_> = z[..d].iter().map(|&v| q(v as i64, 7)).collect();
        prop_assert_eq!(m.compute_b().apply(&z).unwrap(), m.eval_recursive(&z).unwrap());
    }

    #[test]
    fn json_round_trip(seed in any::<u64>(), d in 1usize..7, p in 0.0f64..1.0) {
        let m = rational_model(seed, d, p);
        prop_assert_eq!(RecursiveMlModel::from_json(&m.to_json()).unwrap(), m.clone());
        let b = m.compute_b().into_matrix();
        prop_assert_eq!(Matrix::from_json(&b.to_json()).unwrap(), b.clone());
        prop_assert_eq!(Matrix::from_csv(&b.to_csv()).unwrap(), b);
    }
}
