//! Golden-file tests for the command line. Set `UPDATE_GOLDEN=1` to rewrite
//! the files under `tests/golden`.

use std::path::PathBuf;
use std::process::Command;

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn data(name: &str) -> String {
    root().join("data").join(name).to_string_lossy().into_owned()
}

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn fdim(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_fdim"))
        .args(args)
        .current_dir(root())
        .output()
        .expect("binary runs");
    Run {
        code: out.status.code().expect("exited normally"),
        stdout: String::from_utf8(out.stdout).expect("utf-8 stdout"),
        stderr: String::from_utf8(out.stderr).expect("utf-8 stderr"),
    }
}

/// Runs `args`, checks the exit code, and compares stdout (or stderr on
/// failure) with `tests/golden/<name>`.
fn golden(name: &str, args: &[&str], code: i32) -> Run {
    let run = fdim(args);
    assert_eq!(run.code, code, "{name}: stderr was {}", run.stderr);
    let text = if code == 0 { &run.stdout } else { &run.stderr };
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, text).expect("golden file is writable");
    } else {
        let want = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden file {name}"));
        assert_eq!(text, &want, "{name} differs from its golden file");
    }
    run
}

#[test]
fn compute_binary_quadratic() {
    let bq = data("binary_quadratic.json");
    golden("compute_bq_p5.txt", &["compute", "--algebra", &bq, "--p", "5", "--f", "1"], 0);
    let run = golden(
        "compute_bq_p5.json",
        &["compute", "--algebra", &bq, "--p", "5", "--format", "json"],
        0,
    );
    let v: serde_json::Value = serde_json::from_str(&run.stdout).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["value"], 10);
    assert_eq!(v["mode"], "exact");
    golden("compute_bq_p5.csv", &["compute", "--algebra", &bq, "--p", "5", "--format", "csv"], 0);
}

#[test]
fn refusal_names_the_bound() {
    let bq = data("binary_quadratic.json");
    let run = golden("compute_bq_p2.err", &["compute", "--algebra", &bq, "--p", "2", "--f", "1"], 2);
    assert!(run.stderr.contains("nilpotency class"));
}

#[test]
fn abelian_gives_f_times_l2() {
    let run = golden(
        "compute_abelian3.json",
        &["compute", "--algebra", &data("abelian3.json"), "--p", "7", "--f", "2", "--format", "json"],
        0,
    );
    let v: serde_json::Value = serde_json::from_str(&run.stdout).unwrap();
    assert_eq!(v["value"], 6);
}

#[test]
fn input_errors_exit_one() {
    golden("compute_missing.err", &["compute", "--algebra", "no/such/file.json", "--p", "5"], 1);
    golden("compute_not_prime.err", &["compute", "--algebra", &data("lee.json"), "--p", "9"], 1);
    assert_eq!(fdim(&["compute", "--p", "5"]).code, 1);
    assert_eq!(fdim(&["sweep", "--algebra", "lee", "--primes", "9..3"]).code, 1);
    assert_eq!(fdim(&["example", "--name", "nonsense", "--p", "5"]).code, 1);
}

#[test]
fn pattern_predictions() {
    golden(
        "pattern_chain5.txt",
        &["pattern", "--poset", &data("chain5.poset.json"), "--p", "7", "--check"],
        0,
    );
    golden(
        "pattern_heisenberg.json",
        &["pattern", "--poset", &data("heisenberg_poset3.poset.json"), "--p", "5", "--check", "--format", "json"],
        0,
    );
    golden(
        "pattern_antichain.txt",
        &["pattern", "--poset", &data("antichain3.poset.json"), "--p", "5", "--check"],
        0,
    );
    golden(
        "pattern_chain5_p3.err",
        &["pattern", "--poset", &data("chain5.poset.json"), "--p", "3"],
        2,
    );
}

#[test]
fn named_constructions() {
    golden("free_2_3_p7.txt", &["free", "--n", "2", "--c", "3", "--p", "7", "--f", "1"], 0);
    golden("metabelian_5_p7.csv", &["metabelian", "--c", "5", "--p", "7", "--format", "csv"], 0);
    golden("example_lee_p7.txt", &["example", "--name", "lee", "--p", "7", "--f", "1"], 0);
}

#[test]
fn sweeps() {
    golden("sweep_cubic.csv", &["sweep", "--algebra", "binary_cubic", "--primes", "3..30", "--format", "csv"], 0);
    let run = golden(
        "sweep_bq_file.json",
        &["sweep", "--algebra", &data("binary_quadratic.json"), "--primes", "3..13", "--format", "json"],
        0,
    );
    let v: serde_json::Value = serde_json::from_str(&run.stdout).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["rows"].as_array().unwrap().len(), 5);
    golden(
        "vertical_bq.csv",
        &["vertical", "--algebra", &data("binary_quadratic.json"), "--p", "3", "--fs", "1..3", "--format", "csv"],
        0,
    );
}

#[test]
fn output_is_deterministic() {
    let args = ["sweep", "--algebra", "lee", "--primes", "3..40", "--format", "json", "--threads", "2"];
    assert_eq!(fdim(&args).stdout, fdim(&args).stdout);
}

#[test]
fn sampling_mode_is_labelled() {
    let run = fdim(&["compute", "--algebra", "lee", "--p", "31", "--budget", "1000", "--format", "json"]);
    assert_eq!(run.code, 0);
    let v: serde_json::Value = serde_json::from_str(&run.stdout).unwrap();
    assert_eq!(v["mode"], "upper-bound");
    let exact = fdim(&["compute", "--algebra", "lee", "--p", "31", "--format", "json"]);
    let e: serde_json::Value = serde_json::from_str(&exact.stdout).unwrap();
    assert!(v["value"].as_u64().unwrap() >= e["value"].as_u64().unwrap());
}
