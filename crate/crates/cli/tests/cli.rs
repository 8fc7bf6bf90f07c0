use std::process::{Command, Output};

use serde_json::{json, Value};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_littleadj"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_out(args: &[&str]) -> Value {
    let o = run(args);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    serde_json::from_str(&stdout(&o)).unwrap()
}

#[test]
fn f4_trivial_closed_is_factored() {
    let o = run(&[
        "gm", "--type", "F", "--rank", "4", "--lambda", "trivial", "--method", "closed",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("(1+q^9)(1+q^17)"));
}

#[test]
fn b2_all_routes_agree() {
    let o = run(&[
        "gm",
        "--type",
        "B",
        "--rank",
        "2",
        "--lambda",
        "little-adjoint",
        "--method",
        "all",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("verdict: AGREE"));
    for route in ["closed", "bruteforce", "ct", "formula-t"] {
        assert!(
            out.lines()
                .any(|l| l.trim_start().starts_with(route) && l.ends_with("q+q^4")),
            "{route} missing in {out}"
        );
    }
}

#[test]
fn misspelled_lambda_is_usage_error() {
    let o = run(&[
        "gm", "--type", "B", "--rank", "2", "--lambda", "trival", "--method", "closed",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn gates_exit_two() {
    let ct = run(&[
        "gm", "--type", "F", "--rank", "4", "--lambda", "trivial", "--method", "ct",
    ]);
    assert_eq!(ct.status.code(), Some(2));
    let big = run(&[
        "gm",
        "--type",
        "C",
        "--rank",
        "6",
        "--lambda",
        "trivial",
        "--method",
        "bruteforce",
    ]);
    assert_eq!(big.status.code(), Some(2));
    let rank = run(&["exponents", "--type", "G", "--rank", "3"]);
    assert_eq!(rank.status.code(), Some(2));
    let power = run(&["decompose", "--type", "B", "--rank", "2", "--power", "6"]);
    assert_eq!(power.status.code(), Some(2));
}

#[test]
fn exponents_lists() {
    for (ty, rank, want) in [
        ("C", "5", "h = [2, 4, 6, 8]"),
        ("G", "2", "h = [3]"),
        ("B", "3", "h = [3]"),
    ] {
        let o = run(&["exponents", "--type", ty, "--rank", rank]);
        assert!(stdout(&o).contains(want), "{ty}{rank}");
    }
    let v = json_out(&[
        "exponents",
        "--type",
        "F",
        "--rank",
        "4",
        "--format",
        "json",
    ]);
    assert_eq!(v["exponents"], json!([4, 8]));
    assert_eq!(v["boxes"], 12);
}

#[test]
fn decompose_examples() {
    let v = json_out(&[
        "decompose",
        "--type",
        "B",
        "--rank",
        "2",
        "--power",
        "2",
        "--format",
        "json",
    ]);
    let cs = v["constituents"].as_array().unwrap();
    assert_eq!(cs.len(), 1);
    assert_eq!(cs[0]["dimension"], 10);
    assert_eq!(cs[0]["multiplicity"], 1);
    for power in ["0", "5"] {
        let v = json_out(&[
            "decompose",
            "--type",
            "B",
            "--rank",
            "2",
            "--power",
            power,
            "--format",
            "json",
        ]);
        assert_eq!(
            v["constituents"],
            json!([{"highest_weight": [0, 0], "dimension": 1, "multiplicity": 1}])
        );
    }
}

#[test]
fn gm_json_schema() {
    let v = json_out(&[
        "gm",
        "--type",
        "C",
        "--rank",
        "3",
        "--lambda",
        "little-adjoint",
        "--format",
        "json",
    ]);
    assert_eq!(v["schema"], "littleadj.gm.v1");
    assert_eq!(v["type"], "C");
    assert_eq!(v["rank"], 3);
    assert_eq!(v["lambda"], json!([0, 1, 0]));
    assert_eq!(v["method"], "closed");
    assert_eq!(v["factored"], "(1+q^5)(q+q^4+q^5+q^8)");
    assert_eq!(v["checks"]["palindromic"], true);
    assert_eq!(v["checks"]["degree"], 13);
    assert_eq!(v["checks"]["value_at_1"], 8);
    let coeffs = v["coefficients"].as_array().unwrap();
    assert!(coeffs.iter().all(|p| p.as_array().unwrap().len() == 2));
}

#[test]
fn csv_round_trips_coefficients() {
    let args = [
        "gm", "--type", "G", "--rank", "2", "--lambda", "trivial", "--method", "all",
    ];
    let v = json_out(&[&args[..], &["--format", "json"]].concat());
    let o = run(&[&args[..], &["--format", "csv"]].concat());
    let mut rdr = csv::Reader::from_reader(o.stdout.as_slice());
    let rows: Vec<(String, i64, i64)> = rdr
        .records()
        .map(|r| {
            let r = r.unwrap();
            (
                r[0].to_string(),
                r[1].parse().unwrap(),
                r[2].parse().unwrap(),
            )
        })
        .collect();
    let from_json: Vec<(i64, i64)> = v["routes"][0]["coefficients"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| (p[0].as_i64().unwrap(), p[1].as_i64().unwrap()))
        .collect();
    let closed: Vec<(i64, i64)> = rows
        .iter()
        .filter(|r| r.0 == "closed")
        .map(|r| (r.1, r.2))
        .collect();
    assert_eq!(closed, from_json);
    assert_eq!(closed, vec![(0, 1), (3, 1), (4, 1), (7, 1)]);
}

#[test]
fn output_is_deterministic() {
    let gm = [
        "gm",
        "--type",
        "B",
        "--rank",
        "3",
        "--lambda",
        "little-adjoint",
        "--method",
        "all",
        "--format",
        "json",
    ];
    assert_eq!(run(&gm).stdout, run(&gm).stdout);
    let tables = ["tables", "--format", "json"];
    assert_eq!(run(&tables).stdout, run(&tables).stdout);
}

#[test]
fn verify_tables_and_daha_pass() {
    for suite in ["tables", "daha"] {
        let o = run(&["verify", "--suite", suite]);
        assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
        assert!(stdout(&o).contains("overall: PASS"));
    }
    let v = json_out(&["verify", "--suite", "poincare", "--format", "json"]);
    assert_eq!(v["schema"], "littleadj.verify.v1");
    assert_eq!(v["pass"], true);
}

#[test]
fn unknown_suite_is_usage_error() {
    assert_eq!(
        run(&["verify", "--suite", "everything"]).status.code(),
        Some(2)
    );
}
