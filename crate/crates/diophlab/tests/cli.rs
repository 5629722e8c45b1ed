use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_diophlab"));
    c.env_remove("DIOPHLAB_BUDGET");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf8")
}

fn error_json(o: &Output) -> serde_json::Value {
    let s = String::from_utf8(o.stderr.clone()).expect("utf8");
    serde_json::from_str(s.lines().last().expect("an error line")).expect("error JSON")
}

#[test]
fn convergents_of_the_golden_prefix() {
    let o = run(&[
        "cf",
        "convergents",
        "--alpha",
        r#"{"cf":[0,1,1,1]}"#,
        "--depth",
        "5",
    ]);
    assert!(o.status.success());
    let mut r = csv::Reader::from_reader(o.stdout.as_slice());
    let q: Vec<u64> = r
        .records()
        .map(|x| x.unwrap()[2].parse().unwrap())
        .collect();
    assert_eq!(q, [1, 1, 2, 3]);
}

#[test]
fn convergents_of_a_surd_alternate() {
    let o = run(&[
        "cf",
        "convergents",
        "--alpha",
        r#"{"cf_rule":"sqrt2"}"#,
        "--depth",
        "8",
    ]);
    assert!(o.status.success());
    let mut r = csv::Reader::from_reader(o.stdout.as_slice());
    let rows: Vec<csv::StringRecord> = r.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 9);
    assert_eq!(&rows[7][2], "408");
    assert_eq!(&rows[8][2], "985");
    for (j, row) in rows.iter().enumerate() {
        let negative = row[3].starts_with('-');
        assert_eq!(negative, j % 2 == 1, "row {j}");
        assert_eq!(row[3].starts_with('-'), row[4].starts_with('-'));
    }
}

#[test]
fn malformed_json_reports_the_path() {
    let o = run(&[
        "cf",
        "convergents",
        "--alpha",
        r#"{"surd":{"a":"0","b":"1","D":"two"}}"#,
        "--depth",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(2));
    let e = error_json(&o);
    assert_eq!(e["error"], "schema");
    assert_eq!(e["path"], "surd.D");

    let o = run(&["cf", "convergents", "--alpha", "{not json", "--depth", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(error_json(&o)["error"], "schema");
}

#[test]
fn bad_parameters_exit_two() {
    let o = run(&[
        "ostrowski",
        "decode",
        "--alpha",
        r#"{"cf_rule":"golden"}"#,
        "--digits",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(error_json(&o)["exit_code"], 2);
    assert_eq!(run(&["selftest", "--level", "slow"]).status.code(), Some(2));
    assert_eq!(run(&["selftest", "--only", "12"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn budget_comes_from_the_environment() {
    let args = [
        "shiftred",
        "check",
        "--gamma",
        r#"{"rational":"22/7"}"#,
        "--eta",
        "1/2",
        "--n",
        "10",
        "--a",
        "3",
    ];
    let summary =
        |o: &Output| -> serde_json::Value { serde_json::from_slice(&o.stdout).expect("summary") };
    let plain = run(&args);
    assert!(plain.status.success());
    assert_eq!(summary(&plain)["config"]["refinement_budget"], 8);
    let flag = bin().args(args).args(["--budget", "3"]).output().unwrap();
    assert_eq!(summary(&flag)["config"]["refinement_budget"], 3);
    let env = bin()
        .args(args)
        .args(["--budget", "3"])
        .env("DIOPHLAB_BUDGET", "5")
        .output()
        .unwrap();
    assert_eq!(summary(&env)["config"]["refinement_budget"], 5);
    let bad = bin()
        .args(args)
        .env("DIOPHLAB_BUDGET", "0")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn tables_are_byte_identical_across_runs() {
    let args = [
        "bohr",
        "gap-enum",
        "--params",
        r#"{"b": 3, "a": [1, 7], "n": [5, 4], "shape": "asymmetric"}"#,
    ];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let s = [
        "shiftred",
        "phi",
        "--gamma",
        r#"{"surd":{"a":"0","b":"1","D":2}}"#,
        "--eta",
        "1/2",
        "--n-max",
        "300",
    ];
    assert_eq!(run(&s).stdout, run(&s).stdout);
}

#[test]
fn json_format_matches_csv() {
    let args = [
        "cf",
        "convergents",
        "--alpha",
        r#"{"cf_rule":"e"}"#,
        "--depth",
        "4",
    ];
    let csv_out = run(&args);
    let json_out = bin()
        .args(args)
        .args(["--format", "json"])
        .output()
        .unwrap();
    let rows: Vec<serde_json::Map<String, serde_json::Value>> =
        serde_json::from_slice(&json_out.stdout).unwrap();
    let mut r = csv::Reader::from_reader(csv_out.stdout.as_slice());
    for (rec, obj) in r.records().zip(&rows) {
        let rec = rec.unwrap();
        assert_eq!(obj["q_j"], rec[2].to_string());
    }
    assert_eq!(rows.len(), 5);
}

#[test]
fn figure1_writes_table_script_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("figure1.csv");
    let o = bin()
        .args(["sums", "figure1", "--H", "20000", "--stride", "1000"])
        .arg("--out")
        .arg(&out)
        .output()
        .unwrap();
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let summary: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(summary["H"], 20000);
    assert!(summary["c"].as_f64().unwrap() > 0.0);
    let table = std::fs::read_to_string(&out).unwrap();
    assert!(table.starts_with("N,S,fit\n"));
    assert_eq!(table.lines().count(), 21);
    let gp = std::fs::read_to_string(dir.path().join("figure1.gp")).unwrap();
    assert!(gp.contains("'figure1.csv'"));
    let side: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(dir.path().join("figure1.summary.json")).unwrap(),
    )
    .unwrap();
    assert_eq!(side["c"], summary["c"]);
}

#[test]
fn summary_file_leaves_stdout_for_the_table() {
    let dir = tempfile::tempdir().unwrap();
    let s = dir.path().join("s.json");
    let o = bin()
        .args([
            "shiftred",
            "phi",
            "--gamma",
            r#"{"rational":"1/3"}"#,
            "--eta",
            "1/2",
            "--n-max",
            "5",
        ])
        .arg("--summary")
        .arg(&s)
        .output()
        .unwrap();
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("n,phi,phi_shift,q_t,c_t\n"));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&s).unwrap()).unwrap();
    assert_eq!(v["rows"], 5);
    assert!(Path::new(&s).exists());
}

#[test]
fn threegap_agrees_with_sorting() {
    let o = run(&[
        "threegap",
        "--alpha",
        r#"{"surd":{"a":"0","b":"1","D":2}}"#,
        "--m",
        "50",
    ]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["agree"], true);
    assert!(v["distinct_gaps"].as_u64().unwrap() <= 3);
}

#[test]
fn fast_selftest_passes() {
    let dir = tempfile::tempdir().unwrap();
    let o = bin()
        .args(["selftest", "--level", "fast", "--only", "3,5,7"])
        .arg("--out")
        .arg(dir.path().join("r.csv"))
        .output()
        .unwrap();
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["passed"], true);
}

#[test]
fn help_describes_each_subcommand() {
    for sub in [
        "cf",
        "ostrowski",
        "threegap",
        "bohr",
        "shiftred",
        "measure",
        "sums",
        "selftest",
    ] {
        let o = run(&[sub, "--help"]);
        assert!(o.status.success(), "{sub}");
        assert!(stdout(&o).len() > 80, "{sub}");
    }
}
