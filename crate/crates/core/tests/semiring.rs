mod common;

use common::q;
use maxlin_core::{Matrix, Rational, Tolerance};
use proptest::prelude::*;

fn rational_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix<Rational>> {
    proptest::collection::vec((0i64..12, 1i64..6), rows * cols).prop_map(move |v| {
        let data = v.into_iter().map(|(p, d)| if p < 3 { q(0, 1) } else { q(p, d) }).collect();
        Matrix::new(rows, cols, data).unwrap()
    })
}

fn float_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix<f64>> {
    proptest::collection::vec(0.0f64..3.0, rows * cols).prop_map(move |v| Matrix::new(rows, cols, v).unwrap())
}

proptest! {
    #[test]
    fn associative_exactly(f in rational_matrix(3, 4), g in rational_matrix(4, 2), h in rational_matrix(2, 5)) {
        let left = f.max_times(&g).unwrap().max_times(&h).unwrap();
        let right = f.max_times(&g.max_times(&h).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn associative_in_floats(f in float_matrix(4, 4), g in float_matrix(4, 4), h in float_matrix(4, 4)) {
        let left = f.max_times(&g).unwrap().max_times(&h).unwrap();
        let right = f.max_times(&g.max_times(&h).unwrap()).unwrap();
        prop_assert!(left.approx_eq(&right, &Tolerance::default()));
    }

    #[test]
    fn transpose_reverses_products(f in rational_matrix(3, 4), g in rational_matrix(4, 2)) {
        prop_assert_eq!(
            f.max_times(&g).unwrap().transpose(),
            g.transpose().max_times(&f.transpose()).unwrap()
        );
    }

    #[test]
    fn monotone(f in rational_matrix(3, 3), g in rational_matrix(3, 3), df in rational_matrix(3, 3), dg in rational_matrix(3, 3)) {
        let (f2, g2) = (f.join(&df).unwrap(), g.join(&dg).unwrap());
        prop_assert!(f.max_times(&g).unwrap().le(&f2.max_times(&g2).unwrap()));
    }

    #[test]
    fn distributes_over_join(f in rational_matrix(2, 3), g in rational_matrix(3, 4), h in rational_matrix(3, 4)) {
        prop_assert_eq!(
            f.max_times(&g.join(&h).unwrap()).unwrap(),
            f.max_times(&g).unwrap().join(&f.max_times(&h).unwrap()).unwrap()
        );
    }

    #[test]
    fn join_is_idempotent_with_zero_unit(f in rational_matrix(3, 2)) {
        prop_assert_eq!(f.join(&f).unwrap(), f.clone());
        prop_assert_eq!(f.join(&Matrix::zeros(3, 2)).unwrap(), f);
    }

    #[test]
    fn powers_multiply(a in rational_matrix(4, 4), m in 0u32..4, n in 0u32..4) {
        prop_assert_eq!(
            a.max_times_power(m).unwrap().max_times(&a.max_times_power(n).unwrap()).unwrap(),
            a.max_times_power(m + n).unwrap()
        );
    }

    #[test]
    fn identity_is_neutral(a in rational_matrix(3, 3)) {
        let id = Matrix::identity(3);
        prop_assert_eq!(a.max_times(&id).unwrap(), a.clone());
        prop_assert_eq!(id.max_times(&a).unwrap(), a);
    }
}

#[test]
fn shape_errors() {
    let a = Matrix::<f64>::zeros(2, 3);
    assert!(a.max_times(&a).is_err());
    assert!(a.join(&Matrix::zeros(3, 2)).is_err());
    assert!(a.max_times_power(2).is_err());
}
