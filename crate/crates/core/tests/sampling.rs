use maxlin_core::fixtures;
use maxlin_core::{sample_noise, simulate, Distribution, NoiseSpec};

fn kolmogorov_distance(mut xs: Vec<f64>, cdf: impl Fn(f64) -> f64) -> f64 {
    xs.sort_by(f64::total_cmp);
    let n = xs.len() as f64;
    xs.iter()
        .enumerate()
        .map(|(k, &x)| {
            let f = cdf(x);
            (f - k as f64 / n).abs().max(((k + 1) as f64 / n - f).abs())
        })
        .fold(0.0, f64::max)
}

#[test]
fn frechet_matches_its_cdf() {
    for (alpha, seed) in [(1.0, 11), (2.5, 12)] {
        let z = sample_noise(&NoiseSpec::new(Distribution::Frechet { alpha }, seed).unwrap(), 1, 10_000).unwrap();
        let xs: Vec<f64> = z.iter_rows().map(|r| r[0]).collect();
        let ks = kolmogorov_distance(xs, |x| (-x.powf(-alpha)).exp());
        assert!(ks <= 0.02, "alpha {alpha}: {ks}");
    }
}

#[test]
fn columns_share_the_marginal() {
    let z = sample_noise(&NoiseSpec::default(), 5, 4000).unwrap();
    for c in 0..5 {
        let xs: Vec<f64> = z.iter_rows().map(|r| r[c]).collect();
        assert!(kolmogorov_distance(xs, |x| (-1.0 / x).exp()) <= 0.03);
    }
}

#[test]
fn exponential_and_uniform_match_their_cdfs() {
    let z = sample_noise(&NoiseSpec::new(Distribution::Exponential { lambda: 2.0 }, 5).unwrap(), 1, 10_000).unwrap();
    let xs: Vec<f64> = z.iter_rows().map(|r| r[0]).collect();
    assert!(kolmogorov_distance(xs, |x| 1.0 - (-2.0 * x).exp()) <= 0.02);
    let z = sample_noise(&NoiseSpec::new(Distribution::Uniform01, 6).unwrap(), 1, 10_000).unwrap();
    let xs: Vec<f64> = z.iter_rows().map(|r| r[0]).collect();
    assert!(kolmogorov_distance(xs, |x| x) <= 0.02);
}

#[test]
fn batches_do_not_depend_on_thread_count() {
    let m = fixtures::diamond();
    let spec = NoiseSpec::new(Distribution::default(), 99).unwrap();
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| simulate(&m, &spec, 3000).unwrap())
    };
    let one = run(1);
    assert_eq!(one, run(4));
    assert_eq!(one.to_csv(), run(3).to_csv());
}
