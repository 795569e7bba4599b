mod common;

use common::*;
use maxlin_core::{
    has_max_weighted_path_through, induced_submodel, is_max_weighted, max_weighted_polytree, minimum_ml_dag_from_b,
    validate_b, weight_space, NodeSet, Path, Tolerance,
};
use proptest::prelude::*;

proptest! {
    #[test]
    fn single_node_routing_matches_enumeration(seed in any::<u64>(), d in 2usize..8, p in 0.2f64..1.0) {
        let m = rational_model(seed, d, p);
        let b = m.compute_b();
        for i in 1..=d {
            for j in b.ancestors(i).unwrap().iter() {
                let best: Vec<_> = all_paths(m.dag(), j, i)
                    .into_iter()
                    .filter(|path| &weight_of(&m, path) == b.coef(j, i))
                    .collect();
                for k in 1..=d {
                    let brute = best.iter().any(|path| path.contains(&k));
                    prop_assert_eq!(has_max_weighted_path_through(&b, j, i, &NodeSet::from([k])).unwrap(), brute);
                }
            }
        }
    }

    #[test]
    fn subpaths_and_splices_stay_max_weighted(seed in any::<u64>(), d in 3usize..8, p in 0.3f64..1.0) {
        let m = rational_model(seed, d, p);
        let b = m.compute_b();
        let max_paths = |j, i| -> Vec<Vec<usize>> {
            all_paths(m.dag(), j, i)
                .into_iter()
                .filter(|path| is_max_weighted(&m, &b, &Path::new(path.clone()).unwrap()).unwrap())
                .collect()
        };
        for j in 1..=d {
            for i in 1..=d {
                for path in max_paths(j, i) {
                    for a in 0..path.len() {
                        for z in a + 1..path.len() {
                            let sub = Path::new(path[a..=z].to_vec()).unwrap();
                            prop_assert!(is_max_weighted(&m, &b, &sub).unwrap());
                            for other in max_paths(path[a], path[z]) {
                                let mut spliced = path[..a].to_vec();
                                spliced.extend_from_slice(&other);
                                spliced.extend_from_slice(&path[z + 1..]);
                                let spliced = Path::new(spliced).unwrap();
                                prop_assert!(is_max_weighted(&m, &b, &spliced).unwrap());
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn polytree_submodel_keeps_components(seed in any::<u64>(), d in 1usize..7, p in 0.0f64..1.0) {
        let m = rational_model(seed, d, p);
        let b = m.compute_b();
        let batch_z: Vec<Vec<_>> = (0..10)
            .map(|s| (0..d).map(|k| q(((seed % 97) as i64 + 3 * s + 7 * k as i64) % 13, 4)).collect())
            .collect();
        for i in 1..=d {
            let tree = max_weighted_polytree(&m, &b, i).unwrap();
            let sub = induced_submodel(&m, &tree.dag).unwrap();
            for j in tree.nodes.iter() {
                if tree.dag.ancestors(j).unwrap() != m.dag().ancestors(j).unwrap() {
                    continue;
                }
                for z in &batch_z {
                    prop_assert_eq!(&sub.eval_recursive(z).unwrap()[j - 1], &m.eval_recursive(z).unwrap()[j - 1]);
                }
            }
        }
    }

    #[test]
    fn validation_is_constructive(seed in any::<u64>(), d in 1usize..8, p in 0.0f64..1.0) {
        let b = rational_model(seed, d, p).compute_b();
        prop_assert!(validate_b(b.matrix(), &Tolerance::default()).is_valid());
        let min = minimum_ml_dag_from_b(&b);
        let rebuilt = weight_space(&b, &min).unwrap().canonical();
        let b2 = rebuilt.compute_b();
        prop_assert_eq!(&b2, &b);
        prop_assert_eq!(minimum_ml_dag_from_b(&b2), min);
    }

    #[test]
    fn b_is_upper_triangular_in_topological_order(seed in any::<u64>(), d in 1usize..9, p in 0.0f64..1.0) {
        let m = rational_model(seed, d, p);
        let b = m.compute_b();
        let order = m.dag().topological_order();
        for (a, &j) in order.iter().enumerate() {
            for &i in &order[..a] {
                prop_assert!(b.coef(j, i) == &q(0, 1));
            }
        }
    }
}

#[test]
fn diamond_evaluation() {
    let m = maxlin_core::fixtures::diamond();
    let b = m.compute_b();
    assert_eq!(b.apply(&[1.0; 4]).unwrap(), vec![1.0; 4]);
    assert_eq!(b.apply(&[0.0; 4]).unwrap(), vec![0.0; 4]);
    for j in 1..=4 {
        let mut e = vec![0.0; 4];
        e[j - 1] = 1.0;
        let x = b.apply(&e).unwrap();
        for i in 1..=4 {
            assert_eq!(x[i - 1], *b.coef(j, i));
        }
    }
    assert!(b.apply(&[1.0; 3]).is_err());
}
