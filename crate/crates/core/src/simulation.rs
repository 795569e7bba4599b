//! Noise sampling and Monte Carlo evaluation of recursive max-linear models.
//!
//! Every sample row `r` draws from its own ChaCha8 stream (`seed`, stream
//! `r`), so batches do not depend on the number of worker threads.

use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution as _, Exp, Frechet};
use rayon::prelude::*;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::model::{MlCoefficientMatrix, RecursiveMlModel};
use crate::weight::Weight;

/// Generator name recorded in batch metadata.
pub const RNG_ALGORITHM: &str = "ChaCha8 (rand_chacha), seed_from_u64(seed), stream = sample index";

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Distribution {
    /// Fréchet with shape `alpha`, scale 1: `P(Z <= z) = exp(-z^-alpha)`.
    Frechet { alpha: f64 },
    /// Uniform on `[0, 1)`.
    Uniform01,
    /// Exponential with rate `lambda`.
    Exponential { lambda: f64 },
}

impl Default for Distribution {
    fn default() -> Self {
        Distribution::Frechet { alpha: 1.0 }
    }
}

impl Distribution {
    pub fn validate(&self) -> Result<()> {
        match *self {
            Distribution::Frechet { alpha } if !(alpha.is_finite() && alpha > 0.0) => {
                Err(Error::InvalidNoiseSpec(format!("Fréchet shape must be positive, got {alpha}")))
            }
            Distribution::Exponential { lambda } if !(lambda.is_finite() && lambda > 0.0) => {
                Err(Error::InvalidNoiseSpec(format!("exponential rate must be positive, got {lambda}")))
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for Distribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distribution::Frechet { alpha } => write!(f, "frechet:{alpha}"),
            Distribution::Uniform01 => f.write_str("uniform01"),
            Distribution::Exponential { lambda } => write!(f, "exponential:{lambda}"),
        }
    }
}

/// Parses `frechet[:alpha]`, `uniform01` (or `uniform`) and
/// `exponential[:lambda]`; missing parameters default to 1.
impl FromStr for Distribution {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, param) = match s.trim().split_once(':') {
            Some((n, p)) => (n.trim(), Some(p.trim())),
            None => (s.trim(), None),
        };
        let param = |default: f64| -> Result<f64> {
            param.map_or(Ok(default), |p| {
                p.parse().map_err(|_| Error::InvalidNoiseSpec(format!("bad parameter {p:?}")))
            })
        };
        let dist = match name.to_ascii_lowercase().as_str() {
            "frechet" | "fréchet" => Distribution::Frechet { alpha: param(1.0)? },
            "uniform" | "uniform01" if param_free(s) => Distribution::Uniform01,
            "exponential" | "exp" => Distribution::Exponential { lambda: param(1.0)? },
            _ => return Err(Error::InvalidNoiseSpec(format!("unknown distribution {s:?}"))),
        };
        dist.validate()?;
        Ok(dist)
    }
}

fn param_free(s: &str) -> bool {
    !s.contains(':')
}

#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct NoiseSpec {
    pub distribution: Distribution,
    pub seed: u64,
}

impl NoiseSpec {
    pub fn new(distribution: Distribution, seed: u64) -> Result<Self> {
        distribution.validate()?;
        Ok(NoiseSpec { distribution, seed })
    }

    fn row(&self, r: usize, d: usize) -> Vec<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(r as u64);
        match self.distribution {
            Distribution::Frechet { alpha } => {
                let dist = Frechet::new(0.0, 1.0, alpha).expect("validated shape");
                (0..d).map(|_| dist.sample(&mut rng)).collect()
            }
            Distribution::Uniform01 => (0..d).map(|_| rng.random::<f64>()).collect(),
            Distribution::Exponential { lambda } => {
                let dist = Exp::new(lambda).expect("validated rate");
                (0..d).map(|_| dist.sample(&mut rng)).collect()
            }
        }
    }
}

/// `n x d` matrix of independent draws from `spec`.
pub fn sample_noise(spec: &NoiseSpec, d: usize, n: usize) -> Result<Matrix<f64>> {
    spec.distribution.validate()?;
    if d == 0 {
        return Err(Error::EmptyGraph);
    }
    let rows: Vec<Vec<f64>> = (0..n).into_par_iter().map(|r| spec.row(r, d)).collect();
    Matrix::new(n, d, rows.into_iter().flatten().collect())
}

/// Noise draws `z` and the resulting components `x`, one sample per row.
#[derive(Clone, Debug, PartialEq)]
pub struct SampleBatch<T> {
    pub z: Matrix<T>,
    pub x: Matrix<T>,
}

impl<T: Weight> SampleBatch<T> {
    /// Evaluates `X = Z ⊙ B` row by row.
    pub fn from_noise(b: &MlCoefficientMatrix<T>, z: Matrix<T>) -> Result<Self> {
        let x = z.max_times(b.matrix())?;
        Ok(SampleBatch { z, x })
    }

    pub fn len(&self) -> usize {
        self.z.rows()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn dim(&self) -> usize {
        self.z.cols()
    }

    /// CSV with header `sample,Z1..Zd,X1..Xd`; samples are numbered from 0.
    pub fn to_csv(&self) -> String {
        let d = self.dim();
        let mut out = String::from("sample");
        for p in ["Z", "X"] {
            for k in 1..=d {
                write!(out, ",{p}{k}").unwrap();
            }
        }
        out.push('\n');
        for r in 0..self.len() {
            write!(out, "{r}").unwrap();
            for v in self.z.row(r).iter().chain(self.x.row(r)) {
                write!(out, ",{v}").unwrap();
            }
            out.push('\n');
        }
        out
    }
}

/// Draws `n` noise vectors and evaluates the model on them. Draws are
/// converted to the weight type before evaluation.
pub fn simulate<T: Weight>(model: &RecursiveMlModel<T>, spec: &NoiseSpec, n: usize) -> Result<SampleBatch<T>> {
    let d = model.node_count();
    let raw = sample_noise(spec, d, n)?;
    let z = raw.map(|&v| T::from_f64(v).expect("finite non-negative draw"))?;
    SampleBatch::from_noise(&model.compute_b(), z)
}

/// A sample where `(b_ji / b_jj) X_j <= X_i` fails: `lhs` is the scaled
/// ancestor value, `rhs = X_i`. Nodes are 1-based, samples 0-based.
#[derive(Clone, Debug, PartialEq)]
pub struct OrderViolation<T> {
    pub sample: usize,
    pub j: usize,
    pub i: usize,
    pub lhs: T,
    pub rhs: T,
}

/// Checks `(b_ji / b_jj) X_j <= X_i` for every sample and every strict
/// ancestor `j` of `i`.
pub fn check_order_relations<T: Weight>(
    batch: &SampleBatch<T>,
    b: &MlCoefficientMatrix<T>,
) -> Result<Vec<OrderViolation<T>>> {
    let d = b.node_count();
    if batch.dim() != d {
        return Err(Error::DimensionMismatch { op: "check_order_relations", left: batch.x.shape(), right: (d, d) });
    }
    let tol = b.tolerance();
    let pairs: Vec<(usize, usize, T)> = (1..=d)
        .flat_map(|j| (1..=d).map(move |i| (j, i)))
        .filter(|&(j, i)| j != i && !b.coef(j, i).is_zero())
        .map(|(j, i)| (j, i, b.ratio(j, i)))
        .collect();
    let mut out = Vec::new();
    for r in 0..batch.len() {
        let x = batch.x.row(r);
        for (j, i, ratio) in &pairs {
            let lhs = ratio.mul(&x[j - 1]);
            if tol.gt(&lhs, &x[i - 1]) {
                out.push(OrderViolation { sample: r, j: *j, i: *i, lhs, rhs: x[i - 1].clone() });
            }
        }
    }
    Ok(out)
}

/// Hex SHA-256 of the compact JSON serialization of the model.
pub fn model_hash<T: Weight>(model: &RecursiveMlModel<T>) -> String {
    let digest = Sha256::digest(model.to_json().to_string().as_bytes());
    digest.iter().fold(String::with_capacity(64), |mut s, b| {
        write!(s, "{b:02x}").unwrap();
        s
    })
}

/// Reproducibility record for a simulated batch.
pub fn metadata<T: Weight>(model: &RecursiveMlModel<T>, spec: &NoiseSpec, n: usize) -> Value {
    json!({
        "seed": spec.seed,
        "distribution": spec.distribution.to_string(),
        "n": n,
        "d": model.node_count(),
        "arithmetic": T::KIND,
        "model_sha256": model_hash(model),
        "rng": RNG_ALGORITHM,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn parse_distributions() {
        assert_eq!("frechet".parse::<Distribution>().unwrap(), Distribution::Frechet { alpha: 1.0 });
        assert_eq!("frechet:2.5".parse::<Distribution>().unwrap(), Distribution::Frechet { alpha: 2.5 });
        assert_eq!("uniform".parse::<Distribution>().unwrap(), Distribution::Uniform01);
        assert_eq!("exponential:3".parse::<Distribution>().unwrap(), Distribution::Exponential { lambda: 3.0 });
        for bad in ["frechet:0", "frechet:-1", "exponential:0", "gamma", "uniform:2", "frechet:x"] {
            assert!(bad.parse::<Distribution>().is_err(), "{bad}");
        }
        let d: Distribution = "exponential:0.5".parse().unwrap();
        assert_eq!(d.to_string().parse::<Distribution>().unwrap(), d);
    }

    #[test]
    fn deterministic_and_in_range() {
        let spec = NoiseSpec::new(Distribution::Uniform01, 7).unwrap();
        let a = sample_noise(&spec, 3, 500).unwrap();
        assert_eq!(a, sample_noise(&spec, 3, 500).unwrap());
        assert!(a.iter_rows().flatten().all(|&v| (0.0..1.0).contains(&v)));
        let other = sample_noise(&NoiseSpec::new(Distribution::Uniform01, 8).unwrap(), 3, 500).unwrap();
        assert_ne!(a, other);
        // a longer batch extends a shorter one
        let long = sample_noise(&spec, 3, 600).unwrap();
        assert_eq!(long.row(499), a.row(499));
    }

    #[test]
    fn frechet_and_exponential_are_positive() {
        for dist in [Distribution::default(), Distribution::Exponential { lambda: 2.0 }] {
            let z = sample_noise(&NoiseSpec::new(dist, 1).unwrap(), 4, 1000).unwrap();
            assert!(z.iter_rows().flatten().all(|&v| v > 0.0 && v.is_finite()));
        }
    }

    #[test]
    fn simulate_matches_recursion() {
        let m = fixtures::diamond();
        let batch = simulate(&m, &NoiseSpec::default(), 200).unwrap();
        for r in 0..batch.len() {
            let rec = m.eval_recursive(batch.z.row(r)).unwrap();
            assert_eq!(rec, batch.x.row(r));
        }
        assert!(check_order_relations(&batch, &m.compute_b()).unwrap().is_empty());
    }

    #[test]
    fn zero_noise_and_single_node() {
        let m = fixtures::diamond();
        let batch = SampleBatch::from_noise(&m.compute_b(), Matrix::zeros(1, 4)).unwrap();
        assert!(batch.x.is_zero());

        let one = RecursiveMlModel::new(crate::dag::Dag::empty(1).unwrap(), [], vec![2.5]).unwrap();
        let batch = simulate(&one, &NoiseSpec::default(), 10).unwrap();
        for r in 0..10 {
            assert_eq!(batch.x.row(r)[0], 2.5 * batch.z.row(r)[0]);
        }
    }

    #[test]
    fn rational_simulation_is_exact() {
        let m = fixtures::diamond_rational();
        let batch = simulate(&m, &NoiseSpec::new(Distribution::Exponential { lambda: 1.0 }, 3).unwrap(), 50).unwrap();
        for r in 0..batch.len() {
            assert_eq!(m.eval_recursive(batch.z.row(r)).unwrap(), batch.x.row(r));
        }
    }

    #[test]
    fn corrupted_sample_is_reported() {
        let m = fixtures::diamond();
        let b = m.compute_b();
        let mut batch = SampleBatch::from_noise(&b, Matrix::from_rows(vec![vec![0.1, 2.0, 0.1, 0.1]]).unwrap()).unwrap();
        // X2 = 2.0, so X4 must be at least 1.6
        batch.x = batch.x.with_entry(0, 3, 1.0).unwrap();
        let v = check_order_relations(&batch, &b).unwrap();
        assert!(v.iter().any(|v| (v.j, v.i) == (2, 4) && v.sample == 0));
        assert!(v.iter().all(|v| v.i == 4));
    }

    #[test]
    fn edgeless_model_has_no_violations() {
        let m = RecursiveMlModel::new(crate::dag::Dag::empty(3).unwrap(), [], vec![1.0; 3]).unwrap();
        let batch = simulate(&m, &NoiseSpec::default(), 20).unwrap();
        assert!(check_order_relations(&batch, &m.compute_b()).unwrap().is_empty());
    }

    #[test]
    fn csv_and_metadata() {
        let m = fixtures::diamond();
        let empty = simulate(&m, &NoiseSpec::default(), 0).unwrap();
        assert_eq!(empty.to_csv(), "sample,Z1,Z2,Z3,Z4,X1,X2,X3,X4\n");
        let batch = simulate(&m, &NoiseSpec::default(), 3).unwrap();
        assert_eq!(batch.to_csv().lines().count(), 4);
        let meta = metadata(&m, &NoiseSpec::default(), 3);
        assert_eq!(meta["seed"], 0);
        assert_eq!(meta["distribution"], "frechet:1");
        assert_eq!(meta["model_sha256"].as_str().unwrap().len(), 64);
        assert_eq!(model_hash(&m), model_hash(&fixtures::diamond()));
        assert_ne!(model_hash(&m), model_hash(&fixtures::triangle(0.2)));
    }
}
