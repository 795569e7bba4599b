use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use maxlin_core::{dag_from_json, Dag, Error, Matrix, RecursiveMlModel, Weight};
use serde_json::Value;

#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(Error::Cycle(_) | Error::SelfLoop(_) | Error::DuplicateEdge(..)) => 3,
            CliError::Core(Error::InvalidCoefficientMatrix(_)) => 4,
            _ => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => e.fmt(f),
            CliError::Io(msg) => f.write_str(msg),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

pub type CliResult<T> = Result<T, CliError>;

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn read_json(path: &Path) -> CliResult<Value> {
    let text = read(path)?;
    serde_json::from_str(&text).map_err(|e| CliError::Core(Error::Parse(format!("{}: {e}", path.display()))))
}

pub fn model<T: Weight>(path: &Path) -> CliResult<RecursiveMlModel<T>> {
    Ok(RecursiveMlModel::from_json(&read_json(path)?)?)
}

pub fn dag(path: &Path) -> CliResult<Dag> {
    Ok(dag_from_json(&read_json(path)?)?)
}

/// A model file or a coefficient matrix.
pub enum ModelOrMatrix<T> {
    Model(RecursiveMlModel<T>),
    Matrix(Matrix<T>),
}

fn is_json(text: &str) -> bool {
    matches!(text.trim_start().chars().next(), Some('{' | '['))
}

fn matrix_from_value<T: Weight>(v: &Value) -> CliResult<Matrix<T>> {
    let rows = match v {
        Value::Object(obj) => obj
            .get("b")
            .or_else(|| obj.get("B"))
            .ok_or_else(|| Error::Schema("matrix object needs a \"b\" field".into()))?,
        other => other,
    };
    Ok(Matrix::from_json(rows)?)
}

pub fn model_or_matrix<T: Weight>(path: &Path) -> CliResult<ModelOrMatrix<T>> {
    let text = read(path)?;
    if !is_json(&text) {
        return Ok(ModelOrMatrix::Matrix(Matrix::from_csv(&text)?));
    }
    let v: Value = serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    if v.get("edges").is_some() {
        Ok(ModelOrMatrix::Model(RecursiveMlModel::from_json(&v)?))
    } else {
        Ok(ModelOrMatrix::Matrix(matrix_from_value(&v)?))
    }
}

/// B from CSV, a JSON array of rows, or `{"b": [[..]]}`.
pub fn matrix<T: Weight>(path: &Path) -> CliResult<Matrix<T>> {
    let text = read(path)?;
    if is_json(&text) {
        let v: Value = serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        matrix_from_value(&v)
    } else {
        Ok(Matrix::from_csv(&text)?)
    }
}

/// `{"2": 1.5, "4": "3/2"}`.
pub fn observations<T: Weight>(path: &Path) -> CliResult<BTreeMap<usize, T>> {
    let v = read_json(path)?;
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Schema("observations must be a JSON object keyed by node".into()))?;
    obj.iter()
        .map(|(k, x)| {
            let node = k
                .trim()
                .parse::<usize>()
                .map_err(|_| Error::Schema(format!("invalid node label {k:?}")))?;
            if x.as_f64().is_some_and(|v| v < 0.0) {
                return Err(Error::NegativeObservation(node).into());
            }
            let value = T::from_json(x)?;
            Ok((node, value))
        })
        .collect()
}
