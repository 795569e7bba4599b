use std::collections::BTreeMap;

use maxlin_core::{
    admissible_dags, bounds, dag_to_json, de_high, an_low, max_weighted_polytree, metadata, minimal_representation,
    minimum_ml_dag_from_b, minimum_ml_dag_from_model, parent_representation, simulate, validate_b, validate_on_dag,
    weight_space, Dag, Distribution, Error, Issue, MlCoefficientMatrix, NoiseSpec, Tolerance, Validation, Weight,
};
use serde_json::{json, Value};

use crate::input::{self, CliResult, ModelOrMatrix};
use crate::{Cli, Command, GraphFormat, MatrixFormat};

pub struct Outcome {
    pub text: String,
    pub code: u8,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, code: 0 }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn coefficient_matrix<T: Weight>(path: &std::path::Path, tol: Tolerance) -> CliResult<MlCoefficientMatrix<T>> {
    Ok(MlCoefficientMatrix::from_matrix(input::matrix(path)?, tol)?)
}

fn render_dag(dag: &Dag, format: GraphFormat, label: impl Fn(usize, usize) -> Option<String>) -> String {
    match format {
        GraphFormat::Dot => dag.to_dot(label),
        GraphFormat::Edges => dag.edges().map(|(k, i)| format!("{k} {i}\n")).collect(),
        GraphFormat::Json => {
            let mut v = dag_to_json(dag);
            v["dot"] = Value::from(dag.to_dot(label));
            pretty(&v)
        }
    }
}

fn describe<T: Weight>(report: &Validation<T>) -> String {
    if report.is_valid() {
        return "valid\n".into();
    }
    let mut out = format!("invalid: {}\n", report.codes().join(", "));
    for issue in &report.issues {
        match issue {
            Issue::FixedPoint(v) => out.push_str(&format!("  b_{},{} = {}, fixed point gives {}\n", v.j, v.i, v.lhs, v.rhs)),
            Issue::ZeroDiagonal { i } => out.push_str(&format!("  b_{i},{i} is zero\n")),
            Issue::NotSquare { rows, cols } => out.push_str(&format!("  matrix is {rows}x{cols}\n")),
            Issue::NotReachability => out.push_str("  sign pattern is not a reachability matrix\n"),
        }
    }
    out
}

pub fn run<T: Weight>(cli: &Cli) -> CliResult<Outcome> {
    let tol = Tolerance::from_env();
    match &cli.command {
        Command::ComputeB { model, format } => {
            let b = input::model::<T>(model)?.compute_b().into_matrix();
            Ok(Outcome::ok(match format {
                MatrixFormat::Csv => b.to_csv(),
                MatrixFormat::Json => pretty(&b.to_json()),
            }))
        }
        Command::MinDag { input, format } => {
            let (dag, b) = match input::model_or_matrix::<T>(input)? {
                ModelOrMatrix::Model(m) => {
                    let b = m.compute_b().with_tolerance(tol);
                    (minimum_ml_dag_from_model(&m, &b)?, b)
                }
                ModelOrMatrix::Matrix(raw) => {
                    let b = MlCoefficientMatrix::from_matrix(raw, tol)?;
                    (minimum_ml_dag_from_b(&b), b)
                }
            };
            Ok(Outcome::ok(render_dag(&dag, *format, |k, i| Some(b.ratio(k, i).to_string()))))
        }
        Command::Validate { b, dag, json } => {
            let raw = input::matrix::<T>(b)?;
            let report = match dag {
                Some(path) => validate_on_dag(&raw, &input::dag(path)?, &tol)?,
                None => validate_b(&raw, &tol),
            };
            let text = if *json { pretty(&report.to_json()) } else { describe(&report) };
            Ok(Outcome { text, code: if report.is_valid() { 0 } else { 1 } })
        }
        Command::Represent { b, node, given, parents } => {
            let b = coefficient_matrix::<T>(b, tol)?;
            let rep = if *parents {
                parent_representation(&b, *node)?
            } else {
                minimal_representation(&b, *node, given)?
            };
            Ok(Outcome::ok(pretty(&rep.to_json())))
        }
        Command::Bounds { b, node, given, values } => {
            let b = coefficient_matrix::<T>(b, tol)?;
            let x = match values {
                Some(path) => input::observations::<T>(path)?,
                None if given.is_empty() => BTreeMap::new(),
                None => return Err(Error::MissingObservation(given.iter().next().expect("non-empty")).into()),
            };
            let bd = bounds(&b, *node, given, &x)?;
            let mut v = bd.to_json();
            v["an_low"] = json!(an_low(&b, *node, given)?.to_vec());
            v["de_high"] = json!(de_high(&b, *node, given)?.to_vec());
            Ok(Outcome::ok(pretty(&v)))
        }
        Command::Polytree { model, node, format } => {
            let m = input::model::<T>(model)?;
            let b = m.compute_b().with_tolerance(tol);
            let tree = max_weighted_polytree(&m, &b, *node)?;
            let label = |k, i| m.edge_weight(k, i).map(ToString::to_string);
            Ok(Outcome::ok(render_dag(&tree.dag, *format, label)))
        }
        Command::Admissible { b, cap } => {
            let b = coefficient_matrix::<T>(b, tol)?;
            let dags = admissible_dags(&b, *cap)
                .map(|g| {
                    let ws = weight_space(&b, &g)?;
                    Ok(ws.to_json())
                })
                .collect::<CliResult<Vec<_>>>()?;
            Ok(Outcome::ok(pretty(&json!({"count": dags.len(), "dags": dags}))))
        }
        Command::Simulate { model, n, seed, dist, metadata: meta } => {
            let m = input::model::<T>(model)?;
            let spec = NoiseSpec::new(dist.parse::<Distribution>()?, *seed)?;
            let batch = simulate(&m, &spec, *n)?;
            if let Some(path) = meta {
                std::fs::write(path, pretty(&metadata(&m, &spec, *n)))
                    .map_err(|e| input::CliError::Io(format!("{}: {e}", path.display())))?;
            }
            Ok(Outcome::ok(batch.to_csv()))
        }
    }
}
