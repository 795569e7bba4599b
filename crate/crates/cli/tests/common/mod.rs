#![allow(dead_code)]

use std::path::PathBuf;
use std::process::Command;

/// `(golden file stem, arguments, expected exit code)`; arguments are
/// relative to the fixtures directory.
pub const CASES: &[(&str, &[&str], i32)] = &[
    ("compute_b_diamond", &["compute-b", "diamond.json"], 0),
    ("compute_b_diamond_json", &["compute-b", "diamond.json", "--format", "json"], 0),
    ("compute_b_diamond_rational", &["--rational", "compute-b", "diamond.json"], 0),
    ("compute_b_single", &["compute-b", "single.json"], 0),
    ("compute_b_zero_weight", &["compute-b", "zero_weight.json"], 2),
    ("compute_b_cycle", &["compute-b", "cycle.json"], 3),
    ("compute_b_malformed", &["compute-b", "malformed.json"], 2),
    ("compute_b_missing", &["compute-b", "no_such_file.json"], 2),
    ("min_dag_triangle_b", &["min-dag", "triangle_b.csv"], 0),
    ("min_dag_triangle_b_rational", &["--rational", "min-dag", "triangle_b.csv"], 0),
    ("min_dag_triangle_weak", &["min-dag", "triangle_weak.json", "--format", "edges"], 0),
    ("min_dag_triangle_strong", &["min-dag", "triangle_strong.json", "--format", "edges"], 0),
    ("min_dag_diagonal", &["min-dag", "diagonal_b.csv"], 0),
    ("min_dag_diamond_json", &["min-dag", "diamond_b.json", "--format", "json"], 0),
    ("min_dag_lowered", &["min-dag", "diamond_b_lowered.csv"], 4),
    ("validate_diamond", &["validate", "diamond_b.json"], 0),
    ("validate_diamond_on_dag", &["validate", "diamond_b.json", "--dag", "diamond_dag.json"], 0),
    ("validate_raised", &["validate", "diamond_b_raised.json"], 0),
    ("validate_raised_on_dag", &["validate", "diamond_b_raised.json", "--dag", "diamond_dag.json", "--json"], 1),
    ("validate_raised_on_dag_rational", &["--rational", "validate", "diamond_b_raised.json", "--dag", "diamond_dag.json", "--json"], 1),
    ("validate_lowered", &["validate", "diamond_b_lowered.csv"], 1),
    ("validate_lowered_json", &["validate", "diamond_b_lowered.csv", "--json"], 1),
    ("validate_identity", &["validate", "identity_b.json"], 0),
    ("validate_sign_mismatch", &["validate", "diamond_b.json", "--dag", "chain_dag.json"], 2),
    ("represent_diamond", &["represent", "diamond_b.json", "--node", "4", "--given", "1,2"], 0),
    ("represent_diamond_rational", &["--rational", "represent", "diamond_b.json", "--node", "4", "--given", "1-2"], 0),
    ("represent_raised", &["represent", "diamond_b_raised.json", "--node", "4", "--given", "1,2"], 0),
    ("represent_parents", &["represent", "diamond_b.json", "--node", "4", "--parents"], 0),
    ("represent_bad_node", &["represent", "diamond_b.json", "--node", "9"], 2),
    ("bounds_diamond", &["bounds", "diamond_b.json", "--node", "4", "--given", "2", "--values", "x2.json"], 0),
    ("bounds_empty", &["bounds", "diamond_b.json", "--node", "4"], 0),
    ("bounds_negative", &["bounds", "diamond_b.json", "--node", "4", "--given", "2", "--values", "negative_obs.json"], 2),
    ("bounds_missing_values", &["bounds", "diamond_b.json", "--node", "4", "--given", "2"], 2),
    ("polytree_diamond", &["polytree", "diamond.json", "--node", "4"], 0),
    ("admissible_triangle", &["admissible", "triangle_b.csv"], 0),
    ("simulate_diamond", &["simulate", "diamond.json", "--n", "5", "--seed", "7"], 0),
    ("simulate_uniform", &["simulate", "diamond.json", "--n", "3", "--dist", "uniform01", "--seed", "1"], 0),
    ("simulate_empty", &["simulate", "diamond.json", "--n", "0"], 0),
    ("simulate_bad_dist", &["simulate", "diamond.json", "--dist", "gamma:2"], 2),
];

pub fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

pub struct Run {
    pub stdout: Vec<u8>,
    pub stderr: String,
    pub code: i32,
}

pub fn maxlin(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_maxlin"))
        .args(args)
        .current_dir(fixtures())
        .env_remove("MAXLIN_RTOL")
        .output()
        .expect("binary runs");
    Run {
        stdout: out.stdout,
        stderr: String::from_utf8_lossy(&out.stderr).into_owned(),
        code: out.status.code().expect("exit code"),
    }
}

/// Compares stdout with the golden file, or rewrites it when
/// `UPDATE_GOLDEN` is set. Returns a description of the first mismatch.
pub fn check_case(name: &str, args: &[&str], code: i32) -> Result<(), String> {
    let run = maxlin(args);
    if run.code != code {
        return Err(format!("{name}: exit {} (expected {code}); stderr: {}", run.code, run.stderr));
    }
    if code >= 2 && run.stderr.is_empty() {
        return Err(format!("{name}: error exit without a message"));
    }
    let path = golden_dir().join(format!("{name}.out"));
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &run.stdout).unwrap();
        return Ok(());
    }
    let want = std::fs::read(&path).map_err(|e| format!("{name}: {}: {e}", path.display()))?;
    if want != run.stdout {
        return Err(format!(
            "{name}: output differs from golden file\n--- want\n{}\n--- got\n{}",
            String::from_utf8_lossy(&want),
            String::from_utf8_lossy(&run.stdout)
        ));
    }
    let again = maxlin(args);
    if again.stdout != run.stdout || again.code != run.code {
        return Err(format!("{name}: repeated invocation differs"));
    }
    Ok(())
}
