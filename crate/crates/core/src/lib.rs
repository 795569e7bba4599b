//! Recursive max-linear structural equation models on DAGs.
//!
//! A model assigns every node `i` of a DAG the value
//! `X_i = max_{k in pa(i)} c_ki X_k ∨ c_ii Z_i` for independent non-negative
//! noise `Z`. Unrolling the recursion gives `X = Z ⊙ B` over the max-times
//! semiring, where `b_ji` is the largest path weight from `j` to `i` times
//! `c_jj`. This crate computes `B`, analyses which paths attain it, recovers
//! every DAG and weight choice that produce a given `B`, bounds components
//! from partial observations and simulates models.
//!
//! Node labels in the public API are 1-based; [`Matrix`] indices are 0-based.

pub mod dag;
pub mod error;
pub mod fixtures;
pub mod generate;
pub mod inference;
pub mod matrix;
pub mod model;
pub mod paths;
pub mod simulation;
pub mod structure;
pub mod weight;

pub use dag::{is_reachability_matrix, Dag, NodeSet};
pub use error::{Error, Result};
pub use inference::{
    an_low, bounds, de_high, minimal_representation, nmw_ancestors, parent_representation, raw_bounds, Bounds,
    Representation,
};
pub use matrix::Matrix;
pub use model::{dag_from_json, dag_to_json, MlCoefficientMatrix, Path, RecursiveMlModel, DEFAULT_PATH_CAP};
pub use paths::{has_max_weighted_path_through, induced_submodel, is_max_weighted, max_weighted_polytree, Polytree};
pub use simulation::{
    check_order_relations, metadata, model_hash, sample_noise, simulate, Distribution, NoiseSpec, OrderViolation,
    SampleBatch,
};
pub use structure::{
    admissible_dags, dag_free_fixed_points, minimum_ml_dag_from_b, minimum_ml_dag_from_model, optional_edges,
    validate_b, validate_on_dag, weight_space, EdgeWeight, Issue, Validation, Violation, WeightSpace,
    DEFAULT_ADMISSIBLE_CAP,
};
pub use weight::{LogWeight, Rational, Tolerance, Weight};
