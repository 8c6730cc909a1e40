use std::path::PathBuf;
use std::process::Command;

/// (golden file, arguments)
pub const GOLDEN: &[(&str, &[&str])] = &[
    ("classify_perron.json", &["classify", "x^5-x^4-x^2-x-1", "--format", "json"]),
    ("classify_garsia.txt", &["classify", "x^3-2*x-2"]),
    ("orbit_period7.dot", &["orbit", "tau2", "(18-3*b)/29", "--format", "dot"]),
    ("orbit_half.json", &["orbit", "tau2", "1/2", "--format", "json"]),
    ("mixture4.dot", &["mixture", "4", "--format", "dot"]),
    ("markov_golden.csv", &["markov", "tau2", "1/2", "--format", "csv"]),
    ("curve_third.txt", &["curve", "1/3", "--t", "3/5"]),
    ("tstar_37.json", &["tstar", "3/7", "--format", "json"]),
    ("tstar_kl.txt", &["tstar", "kl", "--bits", "20"]),
    ("intersect_s2.csv", &["intersect", "4/9", "8/15", "--format", "csv"]),
    ("network_example.csv", &["network", "e,10000,self", "e,01,reflection", "--format", "csv"]),
    ("density_half.csv", &["density", "0.5", "--bins", "100", "--iters", "1", "--format", "csv"]),
    ("density_golden.json", &["density", "t2", "--bins", "64", "--format", "json"]),
    ("grid.pgm", &["grid", "0.55", "0.6", "--nt", "12", "--bins", "240", "--format", "pgm"]),
    ("grid16.pgm", &["grid", "0.55", "0.6", "--nt", "6", "--bins", "120", "--format", "pgm16"]),
    ("grid.ppm", &["grid", "0.55", "0.6", "--nt", "6", "--bins", "120", "--xmin", "0.4", "--xmax", "0.6", "--format", "ppm"]),
    ("grid.csv", &["grid", "0.56", "0.58", "--nt", "3", "--bins", "20", "--format", "csv"]),
    ("holes_37.csv", &["holes", "3/7", "--depth", "16", "--format", "csv"]),
    ("holes_third.json", &["holes", "1/3", "--depth", "6", "--format", "json"]),
    ("central.csv", &["central", "1/2,29/50", "--n-max", "3", "--format", "csv"]),
    ("sidorov.csv", &["scan-two-address", "s2,t2", "--k-max", "4", "--format", "csv"]),
];

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

pub fn run(args: &[&str]) -> Vec<u8> {
    let out = Command::new(env!("CARGO_BIN_EXE_bernlab")).args(args).output().expect("spawn bernlab");
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    out.stdout
}
