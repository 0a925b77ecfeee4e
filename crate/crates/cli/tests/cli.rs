use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn oddstop(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_oddstop"))
        .args(args)
        .env_remove("ODDSTOP_TRIALS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON on stdout")
}

fn check(bounds: &Value, id: &str) -> Value {
    bounds["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["bound"] == id)
        .cloned()
        .unwrap()
}

#[test]
fn analyze_inline_extremal_sequence() {
    let o = oddstop(&["analyze", "0,0,0.5,0,0", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let doc = json(&o);
    assert_eq!(doc["threshold"]["s"], 3);
    assert_eq!(doc["win_probability"]["value"], 0.5);
    assert_eq!(doc["bounds"]["upper"], 0.5);
    assert_eq!(check(&doc["bounds"], "upper")["equality"], true);
}

#[test]
fn analyze_json_schema() {
    let doc = json(&oddstop(&["secretary", "10", "--format", "json"]));
    for key in [
        "n",
        "p",
        "odds",
        "suffix_sums",
        "threshold",
        "win_probability",
        "bounds",
    ] {
        assert!(doc.get(key).is_some(), "missing {key}");
    }
    for key in ["s", "r_s", "boundary_flag"] {
        assert!(
            doc["threshold"].get(key).is_some(),
            "missing threshold.{key}"
        );
    }
    for key in [
        "n",
        "s",
        "r_s",
        "v_n",
        "upper",
        "lower",
        "lower_strict_holds",
        "corollary",
        "corollary_applicable",
        "e_bound_applicable",
        "e_value",
        "allaart_islas",
        "checks",
    ] {
        assert!(doc["bounds"].get(key).is_some(), "missing bounds.{key}");
    }
    assert_eq!(doc["odds"][0], "inf");
    assert_eq!(doc["suffix_sums"][0], "inf");
    assert_eq!(doc["threshold"]["s"], 4);
    let v = doc["win_probability"]["value"].as_f64().unwrap();
    assert!((v - 0.39869).abs() < 1e-5);
    assert_eq!(doc["bounds"]["checks"].as_array().unwrap().len(), 5);
    assert_eq!(doc["bounds"]["lower"]["case"], 3);
}

#[test]
fn analyze_text_mentions_threshold() {
    let o = oddstop(&["analyze", "--secretary", "10"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("s = 4"));
    assert!(text.contains("0.398690476"));
}

#[test]
fn invalid_input_exits_2() {
    let o = oddstop(&["analyze", "1.5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("out of range"));

    let o = oddstop(&["analyze", "0.3,-0.1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("index 2"));

    assert_eq!(oddstop(&["analyze", "0.3,abc"]).status.code(), Some(2));
    assert_eq!(oddstop(&["analyze"]).status.code(), Some(2));
    assert_eq!(oddstop(&["secretary", "0"]).status.code(), Some(2));
    assert_eq!(
        oddstop(&["analyze", "--file", "/nonexistent/p.txt"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn file_inputs() {
    let dir = tempfile::tempdir().unwrap();
    let lines = dir.path().join("p.txt");
    std::fs::write(&lines, "0.2\n0.2\n\n0.2\n0.2\n").unwrap();
    let doc = json(&oddstop(&[
        "analyze",
        "--file",
        lines.to_str().unwrap(),
        "--format",
        "json",
    ]));
    assert_eq!(doc["bounds"]["lower"]["case"], 2);
    assert_eq!(check(&doc["bounds"], "lower")["equality"], true);

    let js = dir.path().join("p.json");
    std::fs::write(&js, r#"{"p": [0.25, 0.25, 0.25]}"#).unwrap();
    let doc = json(&oddstop(&[
        "analyze",
        "--file",
        js.to_str().unwrap(),
        "--format",
        "json",
    ]));
    assert_eq!(check(&doc["bounds"], "allaart_islas")["equality"], true);
}

#[test]
fn oracle_check_agrees() {
    let o = oddstop(&[
        "oracle-check",
        "0.5,0.5",
        "--trials",
        "100000",
        "--seed",
        "42",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("all oracles agree"));

    let o = oddstop(&["oracle-check", "0.3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let doc = json(&o);
    assert_eq!(doc["all_agree"], true);
    let dp = doc["dp"]["value"].as_f64().unwrap();
    assert!((dp - 0.3).abs() < 1e-15);
}

#[test]
fn oracle_check_skips_enumeration_above_cap() {
    let p = vec!["0.05"; 25].join(",");
    let o = oddstop(&["oracle-check", &p, "--trials", "20000"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("skipped: n = 25 exceeds 20"));
}

#[test]
fn trials_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_oddstop"))
        .args(["simulate", "0.5", "--format", "json"])
        .env("ODDSTOP_TRIALS", "1234")
        .output()
        .unwrap();
    assert_eq!(json(&o)["trials"], 1234);
}

#[test]
fn simulate_is_reproducible() {
    let args = [
        "simulate",
        "0.2,0.3,0.4",
        "--trials",
        "50000",
        "--seed",
        "9",
        "--format",
        "json",
    ];
    let a = oddstop(&args);
    let b = oddstop(&args);
    assert_eq!(a.stdout, b.stdout);
    let doc = json(&a);
    assert_eq!(doc["k"], 2);
    assert_eq!(doc["seed"], 9);
    assert_eq!(
        oddstop(&["simulate", "0.5", "--k", "3"]).status.code(),
        Some(2)
    );
    assert_eq!(
        oddstop(&["simulate", "0.5", "--trials", "0"]).status.code(),
        Some(2)
    );
}

#[test]
fn extremal_families() {
    let o = oddstop(&["extremal", "upper", "--n", "5", "--s", "3", "--rs", "1"]);
    assert_eq!(stdout(&o).lines().next(), Some("0,0,0.5,0,0"));

    let o = oddstop(&["extremal", "case2", "--n", "4", "--s", "1"]);
    assert_eq!(stdout(&o).lines().next(), Some("0.2,0.2,0.2,0.2"));

    let doc = json(&oddstop(&[
        "extremal", "case3", "--n", "2", "--s", "1", "--alpha", "0.5", "--format", "json",
    ]));
    let v = doc["v_n"].as_f64().unwrap();
    assert!((v - 5.0 / 9.0).abs() < 1e-15);
    assert_eq!(doc["attainment"], "limiting");

    let o = oddstop(&["extremal", "upper", "--n", "5", "--s", "2", "--rs", "0.5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("inconsistent input"));
    assert_eq!(
        oddstop(&["extremal", "case1", "--n", "3"]).status.code(),
        Some(2)
    );
    assert_eq!(
        oddstop(&["extremal", "case3", "--n", "3", "--s", "3"])
            .status
            .code(),
        Some(2)
    );
}

fn round_trip(dir: &Path, family_args: &[&str]) -> Value {
    let mut args = vec!["extremal"];
    args.extend_from_slice(family_args);
    args.extend_from_slice(&["--format", "json"]);
    let path = dir.join(format!("{}.json", family_args.join("_")));
    std::fs::write(&path, oddstop(&args).stdout).unwrap();
    json(&oddstop(&[
        "analyze",
        "--file",
        path.to_str().unwrap(),
        "--format",
        "json",
    ]))
}

#[test]
fn extremal_output_feeds_analyze() {
    let dir = tempfile::tempdir().unwrap();
    let doc = round_trip(
        dir.path(),
        &["upper", "--n", "6", "--s", "2", "--rs", "2.5"],
    );
    assert_eq!(check(&doc["bounds"], "upper")["equality"], true);

    let doc = round_trip(dir.path(), &["case1", "--n", "7", "--rs", "0.6"]);
    assert_eq!(doc["bounds"]["lower"]["case"], 1);
    assert_eq!(check(&doc["bounds"], "lower")["equality"], true);

    let doc = round_trip(dir.path(), &["case2", "--n", "9", "--s", "4"]);
    assert_eq!(doc["bounds"]["lower"]["case"], 2);
    assert_eq!(check(&doc["bounds"], "lower")["equality"], true);

    let doc = round_trip(
        dir.path(),
        &["case3", "--n", "9", "--s", "4", "--alpha", "0.99"],
    );
    assert_eq!(doc["bounds"]["lower"]["case"], 3);
    assert_eq!(doc["bounds"]["lower_strict_holds"], true);
    assert_eq!(check(&doc["bounds"], "lower")["equality"], false);
}

#[test]
fn sweep_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.csv");
    let o = oddstop(&[
        "sweep",
        "--n",
        "8..10",
        "--s",
        "1..10",
        "--rs",
        "0.5,1,2",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("skipping n=10 s=2 R_s=0.5"));
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,s,R_s,case,lower,upper,corollary,v_n"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    // n in 8..10: s = 1 gives 3 rows, s > 1 gives 2 rows each.
    assert_eq!(rows.len(), 3 * 3 + 2 * (7 + 8 + 9));
    let row = rows
        .iter()
        .find(|r| r[0] == "10" && r[1] == "4" && r[2].parse::<f64>().unwrap() == 1.0)
        .unwrap();
    let lower: f64 = row[4].parse().unwrap();
    assert!((lower - (8.0f64 / 7.0).powi(-7)).abs() < 1e-15);
    assert_eq!(row[5], "5.0000000000000000e-1");
    for r in &rows {
        let (lo, up): (f64, f64) = (r[4].parse().unwrap(), r[5].parse().unwrap());
        assert!(lo <= up + 1e-12);
        if r[0] == r[1] {
            assert_eq!(r[6], "5.0000000000000000e-1");
        }
    }
}

#[test]
fn sweep_errors() {
    let o = oddstop(&["sweep", "--n", "5..2", "--s", "1", "--rs", "1"]);
    assert_eq!(o.status.code(), Some(2));
    let o = oddstop(&[
        "sweep",
        "--n",
        "5",
        "--s",
        "1",
        "--rs",
        "1",
        "--out",
        "/nonexistent/dir/x.csv",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn machine_output_is_byte_identical() {
    for args in [
        &["analyze", "0.1,0.7,0.2,0.05", "--format", "json"][..],
        &[
            "oracle-check",
            "0.1,0.7,0.2",
            "--trials",
            "30000",
            "--seed",
            "5",
            "--format",
            "json",
        ][..],
        &["sweep", "--n", "1..6", "--s", "1..6", "--rs", "0.3,1,1.7,4"][..],
    ] {
        assert_eq!(oddstop(args).stdout, oddstop(args).stdout, "{args:?}");
    }
}
