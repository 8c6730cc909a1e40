mod common;

use std::process::Command;

use common::{golden_dir, run, GOLDEN};

/// Set `BERNLAB_BLESS=1` to rewrite the golden files.
#[test]
fn golden_outputs() {
    let bless = std::env::var_os("BERNLAB_BLESS").is_some();
    for (file, args) in GOLDEN {
        let path = golden_dir().join(file);
        let got = run(args);
        if bless {
            std::fs::write(&path, &got).unwrap();
            continue;
        }
        let want = std::fs::read(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert!(got == want, "{file} differs from {args:?}");
    }
}

fn status(args: &[&str]) -> Option<i32> {
    Command::new(env!("CARGO_BIN_EXE_bernlab")).args(args).output().unwrap().status.code()
}

#[test]
fn exit_codes() {
    assert_eq!(status(&["classify", "x^2-x-1"]), Some(0));
    assert_eq!(status(&["--help"]), Some(0));
    assert_eq!(status(&["classify", "x^2-1"]), Some(1));
    assert_eq!(status(&["frobnicate"]), Some(1));
    assert_eq!(status(&["tstar", "1/4"]), Some(1));
    assert_eq!(status(&["holes", "3/7", "--depth", "41"]), Some(2));
    assert_eq!(status(&["tstar", "kl", "--bits", "300"]), Some(1));
    // hitting the vertex cap gives a partial, open graph
    let out = String::from_utf8(run(&["orbit", "tau2", "1/(2*b-1)", "--max-vertices", "3"])).unwrap();
    assert!(out.contains("closed         false"));
    assert_eq!(status(&["mixture", "4", "--format", "pgm"]), Some(1));
}

#[test]
fn output_file() {
    let dir = std::env::temp_dir().join(format!("bernlab-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join("curve.csv");
    let code = status(&["curve", "2/5", "--format", "csv", "--output", p.to_str().unwrap()]);
    assert_eq!(code, Some(0));
    let s = std::fs::read_to_string(&p).unwrap();
    assert!(s.starts_with("address,numerator,denominator,t_star\n"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn image_headers() {
    let pgm = run(&["grid", "0.55", "0.6", "--nt", "4", "--bins", "50", "--format", "pgm"]);
    assert!(pgm.starts_with(b"P5\n4 50\n255\n"));
    assert_eq!(pgm.len(), b"P5\n4 50\n255\n".len() + 4 * 50);
    let ppm = run(&["grid", "0.55", "0.6", "--nt", "4", "--bins", "50", "--format", "ppm"]);
    assert!(ppm.starts_with(b"P6\n"));
    let jl = run(&["central", "1/2,29/50", "--n-max", "2", "--format", "json"]);
    for line in String::from_utf8(jl).unwrap().lines() {
        assert!(line.starts_with('{') && line.ends_with('}'));
    }
}
