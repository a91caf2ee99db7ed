use std::process::{Command, Output};

use janowski::bounds::{reevaluate_row, BoundRow, TableKind};
use num_rational::BigRational as Q;

fn janowski(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_janowski"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn rows(csv_text: &str) -> Vec<BoundRow> {
    csv::Reader::from_reader(csv_text.as_bytes())
        .deserialize()
        .collect::<Result<_, _>>()
        .unwrap()
}

#[test]
fn bounds_table() {
    let o = janowski(&[
        "bounds", "--A", "1", "--B", "-1", "--lambda", "2", "--l-max", "4", "--format", "csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let rows = rows(&stdout(&o));
    let bounds: Vec<&str> = rows.iter().map(|r| r.bound.as_str()).collect();
    assert_eq!(bounds, ["4", "6", "4", "3"]);
    assert!(rows.iter().all(|r| r.cutoff == Some(3)));
}

#[test]
fn inverse_bounds_are_catalan() {
    let o = janowski(&["inverse-bounds", "--A", "1", "--B", "-1", "--n-max", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let bounds: Vec<String> = rows(&stdout(&o)).into_iter().map(|r| r.bound).collect();
    assert_eq!(bounds, ["2", "5", "14"]);
}

#[test]
fn csv_and_json_round_trip() {
    for (cmd, kind, extra) in [
        ("bounds", TableKind::NegPower, ["--lambda", "7/3"]),
        ("inverse-bounds", TableKind::Inverse, ["--n-max", "9"]),
        ("mero-bounds", TableKind::MeroInverse, ["--n-max", "9"]),
    ] {
        let mut args = vec![cmd, "--A", "2/3", "--B", "-1/2"];
        args.extend(extra);
        let csv_out = stdout(&janowski(&args));
        for r in rows(&csv_out) {
            assert_eq!(reevaluate_row::<Q>(kind, &r).unwrap(), r);
        }
        args.extend(["--format", "json"]);
        let parsed: Vec<BoundRow> = serde_json::from_str(&stdout(&janowski(&args))).unwrap();
        assert_eq!(parsed, rows(&csv_out));
    }
}

#[test]
fn identity_check_passes() {
    let o = janowski(&[
        "identity-check",
        "--A",
        "1",
        "--B",
        "-1",
        "--lambda",
        "1",
        "--l-max",
        "20",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 21);
    assert!(stdout(&o).lines().skip(1).all(|l| l.ends_with(",true")));
}

#[test]
fn invalid_input_exits_with_2() {
    for args in [
        &["bounds", "--A", "-1", "--B", "1", "--lambda", "2"][..],
        &["bounds", "--A", "1", "--B", "-1", "--lambda", "-2"],
        &["bounds", "--A", "x", "--B", "-1", "--lambda", "2"],
        &["inverse-bounds", "--A", "1"],
        &["verify", "--order", "5", "--index-max", "5"],
        &[
            "coeffs",
            "--A",
            "1",
            "--B",
            "-1",
            "--spec",
            "/nonexistent.json",
        ],
    ] {
        let o = janowski(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(o.stdout.is_empty());
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn decimal_input_warns() {
    let o = janowski(&["mero-bounds", "--A", "0.5", "--B", "-0.25", "--n-max", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stderr).contains("float backend"));
}

#[test]
fn coeffs_and_invert_from_spec_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("specs.json");
    std::fs::write(
        &path,
        r#"[{"variant":"constant","parameters":{"c":"1"}},{"variant":"monomial","parameters":{"m":1}}]"#,
    )
    .unwrap();
    let spec = path.to_str().unwrap();
    let o = janowski(&[
        "coeffs", "--A", "1", "--B", "-1", "--spec", spec, "--order", "5", "--format", "jsonl",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let lines: Vec<serde_json::Value> = stdout(&o)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(
        lines[0]["member"]["coefficients"],
        serde_json::json!(["0", "1", "2", "3", "4", "5"])
    );

    let o = janowski(&[
        "invert", "--A", "1", "--B", "-1", "--order", "6", "--mero", "4",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(
        v[0]["inverse"]["coefficients"],
        serde_json::json!(["0", "1", "-2", "5", "-14", "42", "-132"])
    );
    assert_eq!(v[0]["inverse"]["method"], "direct-reversion");
    assert_eq!(v[0]["mero"], serde_json::json!(["2", "-1", "2", "-5"]));
}

#[test]
fn verify_is_deterministic_across_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for threads in ["1", "3"] {
        let path = dir.path().join(format!("records-{threads}.jsonl"));
        let o = Command::new(env!("CARGO_BIN_EXE_janowski"))
            .args([
                "verify",
                "--trials",
                "30",
                "--order",
                "8",
                "--index-max",
                "6",
                "--backend",
                "float",
            ])
            .args(["--records", path.to_str().unwrap()])
            .env("JANOWSKI_THREADS", threads)
            .output()
            .unwrap();
        assert_eq!(
            o.status.code(),
            Some(0),
            "{}",
            String::from_utf8_lossy(&o.stderr)
        );
        let summary: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        assert_eq!(summary["inverse"]["failures"], 0);
        outputs.push(std::fs::read(path).unwrap());
    }
    assert!(!outputs[0].is_empty());
    assert_eq!(outputs[0], outputs[1]);
}

#[test]
fn verify_rejects_specs_outside_the_disk() {
    // w = 2 is not a Schwarz function: invalid input, not a violation
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, r#"{"variant":"constant","parameters":{"c":"2"}}"#).unwrap();
    let o = janowski(&["verify", "--trials", "2", "--spec", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}
