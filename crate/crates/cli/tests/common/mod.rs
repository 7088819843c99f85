#![allow(dead_code)]

use std::path::PathBuf;
use std::process::{Command, Output};

pub const BIN: &str = env!("CARGO_BIN_EXE_gradal");

/// Golden file name and arguments.
pub const GOLDEN: [(&str, &[&str]); 7] = [
    ("demo_a90_n2", &["demo", "a90", "--n", "2"]),
    ("demo_a140", &["demo", "a140"]),
    ("classify_q_z2_coarse", &["classify", "Q[Z/2]coarse"]),
    ("classify_z_z2_fine", &["classify", "Z[Z^2]fine"]),
    ("classify_diagonal", &["classify", "coarsen(Q[Z^2]fine, [[1,1]])"]),
    ("classify_frac_laurent", &["classify", "Frac(Z[Z]fine)"]),
    ("classify_mixed", &["classify", "Q[Z/3]fine[Z]coarse"]),
];

pub fn gradal(args: &[&str]) -> Output {
    Command::new(BIN)
        .args(args)
        .env_remove("GRADAL_SEED")
        .output()
        .expect("binary runs")
}

pub fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(format!("{name}.jsonl"))
}
