use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn nonavg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nonavg"))
        .args(args)
        .env_remove("NONAVG_OUTPUT")
        .env_remove("NONAVG_WORKERS")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn last_stderr_line(out: &Output) -> Value {
    let err = String::from_utf8(out.stderr.clone()).unwrap();
    serde_json::from_str(err.lines().last().expect("stderr is not empty"))
        .expect("final line is JSON")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn hmax_four_is_exact_json() {
    let out = nonavg(&["hmax", "--n", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "{\"n\":4,\"h\":3,\"witness\":[1,2,4]}\n");
}

#[test]
fn hmax_workers_match_serial() {
    let serial = nonavg(&["hmax", "--n", "18"]);
    let parallel = nonavg(&["hmax", "--n", "18", "--workers", "3"]);
    assert_eq!(stdout(&serial), stdout(&parallel));
    let table = stdout(&nonavg(&["hmax", "--n", "5", "--table"]));
    assert_eq!(
        table,
        "n,h,witness\n1,1,1\n2,2,1;2\n3,2,1;2\n4,3,1;2;4\n5,4,1;2;4;5\n"
    );
}

#[test]
fn construct_then_verify_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("b5.json");
    let file = file.to_str().unwrap();
    let out = nonavg(&["construct", "bosznay", "--q", "5", "--output", file]);
    assert_eq!(out.status.code(), Some(0));
    assert!(Path::new(&format!("{file}.manifest.json")).exists());

    let out = nonavg(&["verify", "--input", file, "--criterion"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["verdict"], "non-averaging");
    assert_eq!(v["criterion"]["holds"], true);

    let para = dir.path().join("p.json");
    let para = para.to_str().unwrap();
    nonavg(&[
        "construct",
        "paraboloid",
        "--d",
        "2",
        "--m",
        "6",
        "-o",
        para,
    ]);
    let v: Value = serde_json::from_str(&stdout(&nonavg(&["verify", "--input", para]))).unwrap();
    assert_eq!(v["verdict"], "non-averaging");
    assert_eq!(v["size"], 6);
}

#[test]
fn verify_reports_witness_and_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "s.json", "[1,2,3]");
    let out = nonavg(&["verify", "--input", &file]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["verdict"], "averaging");
    assert_eq!(v["witness"]["center"], 2);
    assert_eq!(v["witness"]["subset"], serde_json::json!([1, 3]));
}

#[test]
fn input_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.json", "{not json");
    let out = nonavg(&["verify", "--input", &bad]);
    assert_eq!(out.status.code(), Some(2));
    assert!(last_stderr_line(&out)["error"].is_string());

    let out = nonavg(&["construct", "bosznay", "--q", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(last_stderr_line(&out)["kind"], "input");

    let out = nonavg(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn budgets_exit_three_and_flags_apply() {
    let out = nonavg(&["hmax", "--n", "100"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(last_stderr_line(&out)["kind"], "budget");

    let out = nonavg(&["--max-search-n", "5", "hmax", "--n", "6"]);
    assert_eq!(out.status.code(), Some(3));

    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "big.json", "[1,1000000]");
    let out = nonavg(&["verify", "--input", &file, "--max-sum-range", "1000"]);
    assert_eq!(out.status.code(), Some(3));

    let out = Command::new(env!("CARGO_BIN_EXE_nonavg"))
        .args(["hmax", "--n", "6"])
        .env("NONAVG_MAX_SEARCH_N", "5")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn budget_failure_with_file_output_writes_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("h.json");
    let file = file.to_str().unwrap();
    let out = nonavg(&["hmax", "--n", "100", "-o", file]);
    assert_eq!(out.status.code(), Some(3));
    let manifest: Value =
        serde_json::from_str(&std::fs::read_to_string(format!("{file}.manifest.json")).unwrap())
            .unwrap();
    assert_eq!(manifest["budgets_hit"].as_array().unwrap().len(), 1);
    assert!(!Path::new(file).exists());
}

#[test]
fn other_searches() {
    let v: Value = serde_json::from_str(&stdout(&nonavg(&["Hmax", "--n", "6"]))).unwrap();
    assert_eq!(v["H"], 2);
    let v: Value = serde_json::from_str(&stdout(&nonavg(&["boxmax", "--dims", "3,3"]))).unwrap();
    assert_eq!(v["size"], 6);
    let v: Value =
        serde_json::from_str(&stdout(&nonavg(&["construct", "straus-pair", "--n", "20"]))).unwrap();
    assert_eq!(v["b1"], serde_json::json!([1, 2, 3, 4]));
    assert_eq!(v["condition_holds"], true);
}

#[test]
fn geometry_commands() {
    let dir = tempfile::tempdir().unwrap();
    let sq = write(
        dir.path(),
        "sq.json",
        r#"{"dim":2,"points":[[0,0],[2,0],[0,2],[2,2],[1,1]]}"#,
    );
    let v: Value = serde_json::from_str(&stdout(&nonavg(&[
        "geometry", "tukey", "--input", &sq, "--point", "1,1",
    ])))
    .unwrap();
    assert_eq!(v["depth"], 3);

    let out = nonavg(&["geometry", "delta", "--input", &sq, "--delta", "1/2"]);
    assert_eq!(out.status.code(), Some(1));
    let out = nonavg(&[
        "geometry",
        "delta",
        "--input",
        &sq,
        "--delta",
        "3/5",
        "--workers",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(0));

    let rational = write(
        dir.path(),
        "r.json",
        r#"{"dim":2,"rational":true,"points":[[[0,1],[0,1]],[[1,2],[0,1]],[[0,1],[1,3]]]}"#,
    );
    let v: Value = serde_json::from_str(&stdout(&nonavg(&[
        "geometry", "tukey", "--input", &rational,
    ])))
    .unwrap();
    assert_eq!(v["max_depth"], 1);

    let fit = write(dir.path(), "fit.json", r#"[[0,0],["1/2","1/4"],[1,1]]"#);
    let v: Value =
        serde_json::from_str(&stdout(&nonavg(&["geometry", "fit", "--input", &fit]))).unwrap();
    assert_eq!(v["intercept"], "-1/8");
    assert_eq!(v["error"], "1/8");

    let out = nonavg(&[
        "geometry", "lemma22", "--d", "2", "--m", "16", "--oracle", "square",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let out = nonavg(&["geometry", "lemma22", "--d", "2", "--m", "2"]);
    assert_eq!(out.status.code(), Some(2));

    let v: Value = serde_json::from_str(&stdout(&nonavg(&[
        "geometry",
        "increment",
        "--input",
        &sq,
        "--min",
        "-1,-1",
        "--max",
        "3,3",
    ])))
    .unwrap();
    assert_eq!(v["increment_found"], true);
}

#[test]
fn structure_commands() {
    let dir = tempfile::tempdir().unwrap();
    let gap = write(
        dir.path(),
        "gap.json",
        r#"{"ambient_dim":1,"base":[0],"generators":[[1],[2]],"bounds":[[0,1],[0,1]]}"#,
    );
    let v: Value = serde_json::from_str(&stdout(&nonavg(&[
        "structure",
        "gap-check",
        "--input",
        &gap,
        "--identify",
        "3",
    ])))
    .unwrap();
    assert_eq!(v["proper"], true);
    assert_eq!(v["identification"], serde_json::json!([1, 1]));

    let set = write(
        dir.path(),
        "set.json",
        r#"{"dim":2,"points":[[1,1],[2,4],[3,9]]}"#,
    );
    let out = nonavg(&["structure", "embed", "--input", &set, "--check-averaging"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["round_trip"], true);
    assert_eq!(v["non_averaging"], serde_json::json!([true, true]));

    let inst = write(
        dir.path(),
        "z.json",
        r#"{"vectors":[[1,0],[0,1],[1,1]],"widths":[2,2],"coefficients":["1/2","1/3","2/3"]}"#,
    );
    let a = stdout(&nonavg(&[
        "structure",
        "zonotope",
        "--input",
        &inst,
        "--seed",
        "9",
    ]));
    let b = stdout(&nonavg(&[
        "structure",
        "zonotope",
        "--input",
        &inst,
        "--seed",
        "9",
    ]));
    assert_eq!(a, b);
    let v: Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["seed"], 9);
}

#[test]
fn bounds_commands() {
    let csv = stdout(&nonavg(&["bounds", "alpha", "--d-max", "3"]));
    assert_eq!(csv, "d,alpha\n1,1/4\n2,1/3\n3,1/2\n");

    let out = nonavg(&["bounds", "obs41"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).lines().count(), 100);

    let one = stdout(&nonavg(&[
        "bounds",
        "obs41",
        "--zeta",
        "0.05",
        "--eps",
        "0",
        "--d-max",
        "1",
        "--gap-max",
        "1",
    ]));
    assert_eq!(one.lines().nth(1), Some("1/20,0,161/180,1,2,true"));

    let csv = stdout(&nonavg(&[
        "bounds",
        "exponents",
        "--paraboloid",
        "2:10",
        "--verify",
    ]));
    let row: Vec<&str> = csv.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(
        &row[2..],
        &["10", "1000", &(1.0f64 / 3.0).to_string(), "1/3", "0"]
    );
}

#[test]
fn output_is_deterministic() {
    let args = [
        "geometry",
        "lemma22",
        "--d",
        "3",
        "--m",
        "8",
        "--fraction",
        "1/4",
        "--seed",
        "4",
    ];
    assert_eq!(stdout(&nonavg(&args)), stdout(&nonavg(&args)));
}
