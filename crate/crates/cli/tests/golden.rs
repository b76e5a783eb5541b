use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ffelim"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name)
}

/// Compare stdout with the stored file; `BLESS=1` rewrites it.
fn check(name: &str, args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = String::from_utf8(out.stdout).unwrap();
    let path = golden_path(name);
    if std::env::var_os("BLESS").is_some() {
        std::fs::write(&path, &text).unwrap();
    }
    let want =
        std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing {}", path.display()));
    assert_eq!(text, want, "{name} drifted");
    text
}

fn json(text: &str) -> serde_json::Value {
    serde_json::from_str(text).unwrap()
}

fn exit_code(args: &[&str]) -> (i32, String) {
    let out = run(args);
    (
        out.status.code().unwrap(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

#[test]
fn res_small() {
    let v = json(&check(
        "res_small.json",
        &["res", "-p", "7", "-n", "2", "--var", "x1", "x1^2+1", "x1+1"],
    ));
    assert_eq!(v["resultant"], "2");
    assert_eq!(v["dim"], 3);
    assert_eq!(v["schema"], "1");
}

#[test]
fn res_leibniz_too_large() {
    let (code, err) = exit_code(&[
        "res",
        "-p",
        "7",
        "--strategy",
        "leibniz",
        "x1^5 + x0",
        "x1^4 + 1",
    ]);
    assert_eq!(code, 3);
    assert!(err.contains("dimension 9"), "{err}");
}

#[test]
fn res_parse_error() {
    let (code, err) = exit_code(&["res", "-p", "7", "x1^2 +", "x1"]);
    assert_eq!(code, 2);
    assert!(err.contains("position"), "{err}");
}

#[test]
fn eliminate_three() {
    let args = [
        "eliminate",
        "-p",
        "5",
        "-n",
        "3",
        "--order",
        "x2,x1",
        "x2 - x0",
        "x2 - x1",
        "x0 + x1 - 2",
    ];
    let v = json(&check("eliminate_three.json", &args));
    assert_eq!(v["final"], serde_json::json!(["3*x0 + 2"]));
}

#[test]
fn eliminate_single_input() {
    let v = json(&check(
        "eliminate_single.json",
        &["eliminate", "-p", "5", "-n", "2", "x1^2 + x0"],
    ));
    assert_eq!(v["final"], serde_json::json!(["x1^2 + x0"]));
}

#[test]
fn eliminate_min_degree_first() {
    let args = [
        "eliminate",
        "-p",
        "5",
        "-n",
        "3",
        "--order",
        "x2,x1",
        "--pair-strategy",
        "min-degree-first",
        "x2 - x0",
        "x2 - x1",
        "x0 + x1 - 2",
    ];
    let v = json(&check("eliminate_min_degree.json", &args));
    let zeros = json(&check(
        "oracle_zeros.json",
        &[
            "oracle",
            "zeros",
            "-p",
            "5",
            "-n",
            "3",
            "x2 - x0",
            "x2 - x1",
            "x0 + x1 - 2",
        ],
    ));
    assert_eq!(zeros["zeros"], serde_json::json!([[1, 1, 1]]));
    for g in v["final"].as_array().unwrap() {
        let p = ffelim::PrimeModulus::new(5).unwrap();
        let g = ffelim::MultiPoly::parse(g.as_str().unwrap(), 3, p).unwrap();
        assert_eq!(g.eval(&[1, 1, 1]), 0);
    }
}

#[test]
fn count_square() {
    let v = json(&check(
        "count_square.json",
        &["count", "-p", "5", "x1^2 - x0"],
    ));
    assert_eq!(v["distinct_t"], 3);
    assert_eq!(v["cumulative"]["1"], 3);
}

#[test]
fn count_per_degree() {
    let v = json(&check(
        "count_dmax2.json",
        &["count", "-p", "5", "--dmax", "2", "x1 - (x0^2 - 2)"],
    ));
    assert_eq!(v["exact"], serde_json::json!({"1": 5, "2": 4}));
}

#[test]
fn count_with_transcript() {
    let v = json(&check(
        "count_transcript.json",
        &["count", "-p", "5", "--transcript", "x - t^2"],
    ));
    assert!(v["transcript_len"].as_u64().unwrap() > 0);
    assert!(v["transcript"]["steps"].is_array());
}

#[test]
fn count_sylvester_guard() {
    let (code, _) = exit_code(&["count", "--route", "sylvester", "-p", "31", "x1^2 - x0"]);
    assert_eq!(code, 3);
}

#[test]
fn decide_no_zero() {
    let v = json(&check(
        "decide_true.json",
        &["decide", "-p", "5", "x1^2+x1+1 + x0^5 - x0"],
    ));
    assert_eq!(v["no_zero"], true);
    let v = json(&check("decide_false.json", &["decide", "-p", "5", "x - t"]));
    assert_eq!(v["no_zero"], false);
}

#[test]
fn decide_pair_and_subgroup() {
    let v = json(&check(
        "decide_pair.json",
        &["decide", "-p", "7", "--pair", "x^2 - 3", "x^2 - 5"],
    ));
    assert_eq!(v["no_common_zero"], true);
    let v = json(&check(
        "decide_nu.json",
        &["decide", "-p", "7", "--nu", "2", "x - 3"],
    ));
    assert_eq!(v["nonvanishing"], true);
}

#[test]
fn gen_nonresidue() {
    let text = check(
        "gen_nonresidue.txt",
        &["gen", "nonresidue", "-p", "7", "--factors", "1,3,2"],
    );
    assert_eq!(text, "x0^2 + 4\n");
    let (code, _) = exit_code(&["gen", "nonresidue", "-p", "7", "--factors", "1,2,2"]);
    assert_eq!(code, 3);
}

#[test]
fn gen_subst() {
    let text = check(
        "gen_subst.txt",
        &["gen", "subst", "-p", "5", "-r", "7", "t^2 + t + 1"],
    );
    assert_eq!(text, "x0^3 + x0^2 + 1\n");
}

#[test]
fn gen_eisenstein() {
    let args = [
        "gen",
        "eisenstein",
        "-p",
        "7",
        "--pi",
        "3",
        "--exponents",
        "1,4",
        "--seed",
        "5",
        "--format",
        "json",
    ];
    let v = json(&check("gen_eisenstein.json", &args));
    assert!(v["over_z"].is_string());
}

#[test]
fn bench_growth_rerun_identical() {
    let args = [
        "bench", "-p", "31", "-d", "3", "-L", "2", "--trials", "5", "--seed", "1",
    ];
    let first = check("bench_growth.csv", &args);
    assert!(first.starts_with("step,method,var,terms,maxdeg,micros\n"));
    assert_eq!(String::from_utf8(run(&args).stdout).unwrap(), first);
}

#[test]
fn bench_transcript() {
    let text = check(
        "bench_transcript.csv",
        &[
            "bench",
            "--kind",
            "transcript",
            "-d",
            "6",
            "--trials",
            "3",
            "--seed",
            "2",
        ],
    );
    assert_eq!(text.lines().count(), 1 + 9);
}

#[test]
fn oracle_roots_and_common() {
    let v = json(&check(
        "oracle_roots.json",
        &[
            "oracle",
            "roots",
            "-p",
            "5",
            "--dmax",
            "2",
            "x1 - (x0^2 - 2)",
        ],
    ));
    assert_eq!(v["exact"], serde_json::json!({"1": 5, "2": 4}));
    let v = json(&check(
        "oracle_common.json",
        &["oracle", "common", "-p", "7", "x^2 + 1", "x^3 + x"],
    ));
    assert_eq!(v["common_root"]["degree"], 2);
}

#[test]
fn output_file() {
    let dir = std::env::temp_dir().join(format!("ffelim-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("g.txt");
    let out = run(&[
        "gen",
        "nonresidue",
        "-p",
        "7",
        "--factors",
        "1,3,2",
        "-o",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), "x0^2 + 4\n");
    std::fs::remove_dir_all(&dir).unwrap();
}
