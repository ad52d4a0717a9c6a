#![allow(dead_code)]

use std::path::PathBuf;
use std::process::{Command, Output};

pub fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

pub fn golden(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(format!("{name}.json"));
    std::fs::read_to_string(p).unwrap()
}

pub fn nssbound(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nssbound"))
        .args(args)
        .output()
        .unwrap()
}

/// Documented invocations: golden name, input file, arguments, exit code.
pub const DOCUMENTED: &[(&str, &str, &[&str], i32)] = &[
    ("mv_simplex2", "simplex2.json", &["mv"], 0),
    ("mv_scaled_diagonal", "scaled_diagonal.json", &["mv"], 0),
    (
        "mv_scaled_diagonal_oracle",
        "scaled_diagonal.json",
        &["mv", "--oracle", "--seed", "7"],
        0,
    ),
    ("nss_axis_family", "axis_family.json", &["bounds", "nss"], 0),
    (
        "nss_unmixed_diagonal_family",
        "diagonal_family.json",
        &["bounds", "nss", "--unmixed"],
        0,
    ),
    (
        "noether_scaled_diagonal",
        "scaled_diagonal.json",
        &["bounds", "noether"],
        0,
    ),
    (
        "cert_telescoping_minimal",
        "telescoping.json",
        &["certificate", "--cap", "auto", "--minimal"],
        0,
    ),
    (
        "cert_monomial_cap2",
        "monomial.json",
        &["certificate", "--cap", "2"],
        0,
    ),
    (
        "cert_common_zero",
        "common_zero.json",
        &["certificate", "--cap", "auto"],
        3,
    ),
];

pub fn run_documented(case: &(&str, &str, &[&str], i32)) -> (String, i32) {
    let (_, file, args, _) = case;
    let input = data(file);
    let mut full: Vec<&str> = vec!["--json", "--input", input.to_str().unwrap()];
    full.extend_from_slice(args);
    let out = nssbound(&full);
    (
        String::from_utf8(out.stdout).unwrap(),
        out.status.code().unwrap_or(-1),
    )
}
