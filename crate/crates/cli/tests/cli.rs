use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn sspade(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sspade"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(o: &Output) -> Value {
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).expect("json output")
}

fn write(dir: &Path, name: &str, text: &str) {
    std::fs::write(dir.join(name), text).unwrap();
}

const TF_SERIES: &str = r#"{"amplitude": 1, "alpha": 0, "step": 0.5,
  "coeffs": [1, 0, -1.588071, 1.3333333333333333, 0, -0.635228, 0.3333333333333333, 0.108084, -0.211743, 0.0899672]}"#;

#[test]
fn pade_of_constant_is_one() {
    let d = tempfile::tempdir().unwrap();
    write(d.path(), "s.json", r#"{"amplitude": 1, "alpha": 0, "step": 1, "coeffs": [1, 0, 0, 0, 0]}"#);
    let v = stdout_json(&sspade(d.path(), &["pade", "fit", "--series", "s.json", "-M", "2", "-N", "2", "--inf", "1", "--format", "json"]));
    assert_eq!(v["num"], serde_json::json!([1.0, 0.0, 0.0]));
    assert_eq!(v["den"], serde_json::json!([1.0, 0.0, 0.0]));
}

#[test]
fn tables_are_deterministic() {
    let d = tempfile::tempdir().unwrap();
    for out in ["a", "b"] {
        let o = sspade(d.path(), &["tables", "--out", out]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    }
    for t in 1..=8 {
        let a = std::fs::read(d.path().join(format!("a/table{t}.csv"))).unwrap();
        let b = std::fs::read(d.path().join(format!("b/table{t}.csv"))).unwrap();
        assert_eq!(a, b, "table {t}");
    }
    let csv = std::fs::read_to_string(d.path().join("a/table1.csv")).unwrap();
    let row = csv.lines().find(|l| l.starts_with("1,f8*,1e0,")).expect("f8* at x = 1");
    let value: f64 = row.split(',').nth(3).unwrap().parse().unwrap();
    assert!((value - 0.424).abs() < 5e-4, "{value}");
    let summary: Value = serde_json::from_str(&std::fs::read_to_string(d.path().join("a/summary.json")).unwrap()).unwrap();
    assert_eq!(summary.as_array().unwrap().len(), 8);
}

#[test]
fn rd_order_ten_bundle_and_deviation() {
    let d = tempfile::tempdir().unwrap();
    let v = stdout_json(&sspade(d.path(), &["rd", "--order", "10", "--format", "json"]));
    assert_eq!(v["approximant"]["label"], "f10*");
    let dev = v["summary"]["max_deviation"].as_f64().unwrap();
    // 0.0002 at the one significant figure it is quoted with
    assert!(dev < 2.5e-4, "{dev}");
}

#[test]
fn csv_and_json_carry_the_same_numbers() {
    let d = tempfile::tempdir().unwrap();
    let j = stdout_json(&sspade(d.path(), &["tf", "--format", "json"]));
    let c = sspade(d.path(), &["tf", "--format", "csv"]);
    assert!(c.status.success());
    let text = String::from_utf8(c.stdout).unwrap();
    let rows = j["rows"].as_array().unwrap();
    let lines: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), lines.len());
    for (r, l) in rows.iter().zip(lines) {
        let f: Vec<&str> = l.split(',').collect();
        for (i, key) in ["x", "value", "reference", "percent_error", "defect"].iter().enumerate() {
            let parsed: f64 = f[i + 1].parse().unwrap();
            assert_eq!(parsed, r[key].as_f64().unwrap(), "{key}");
        }
    }
}

#[test]
fn bundle_formats_agree() {
    let d = tempfile::tempdir().unwrap();
    write(d.path(), "s.json", r#"{"amplitude": 1, "alpha": 0, "step": 1, "coeffs": [1, -0.5, 0.25, -0.125, 0.0625]}"#);
    let j = stdout_json(&sspade(d.path(), &["pade", "fit", "--series", "s.json", "-M", "1", "-N", "1", "--format", "json"]));
    let c = sspade(d.path(), &["pade", "fit", "--series", "s.json", "-M", "1", "-N", "1"]);
    let text = String::from_utf8(c.stdout).unwrap();
    for line in text.lines().skip(1) {
        let (key, val) = line.split_once(',').unwrap();
        let mut node = &j;
        for part in key.split('.') {
            node = match part.parse::<usize>() {
                Ok(i) => &node[i],
                Err(_) => &node[part],
            };
        }
        assert_eq!(val.parse::<f64>().unwrap(), node.as_f64().unwrap(), "{key}");
    }
}

#[test]
fn root_match_and_corrected_round_trip() {
    let d = tempfile::tempdir().unwrap();
    write(d.path(), "s.json", TF_SERIES);
    write(d.path(), "l.json", r#"{"terms": [[144, -3], [1911.02, -3.772001873]]}"#);
    write(d.path(), "t.json", r#"[{"e": 1}, {"e": 1.5, "n": -2}]"#);
    let o = sspade(d.path(), &["root", "match", "--series", "s.json", "--large", "l.json", "--template", "t.json", "--format", "json", "--out", "r.json"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let r: Value = serde_json::from_str(&std::fs::read_to_string(d.path().join("r.json")).unwrap()).unwrap();
    let a1 = r["levels"][0]["A"].as_f64().unwrap();
    assert!((a1 - 0.443153).abs() < 5e-6, "{a1}");

    let o = sspade(d.path(), &["corrected", "build", "--series", "s.json", "--irr", "r.json", "-M", "2", "-N", "2", "--format", "json", "--out", "c.json"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v = stdout_json(&sspade(d.path(), &["corrected", "eval", "--bundle", "c.json", "--grid", "0:1:3", "--format", "json"]));
    assert_eq!(v[0]["value"].as_f64().unwrap(), 1.0);
    assert_eq!(v.as_array().unwrap().len(), 3);
}

#[test]
fn exponent_of_a_square() {
    let d = tempfile::tempdir().unwrap();
    write(d.path(), "s.json", r#"{"amplitude": 1, "alpha": 0, "step": 1, "coeffs": [1, 2, 1, 0, 0, 0, 0]}"#);
    let v = stdout_json(&sspade(d.path(), &["exponent", "--series", "s.json", "-N", "3", "--format", "json"]));
    assert!((v["beta"].as_f64().unwrap() - 2.0).abs() < 1e-10);
}

#[test]
fn config_file_supplies_defaults() {
    let d = tempfile::tempdir().unwrap();
    write(d.path(), "run.toml", "format = \"json\"\ngrid = \"0.1:0.3:3\"\nprecision = 3\n");
    let v = stdout_json(&sspade(d.path(), &["rd", "--config", "run.toml"]));
    assert_eq!(v["rows"].as_array().unwrap().len(), 3);
    // flags win over the file
    let o = sspade(d.path(), &["rd", "--config", "run.toml", "--format", "csv"]);
    assert!(String::from_utf8(o.stdout).unwrap().starts_with("approximant,x,"));
}

#[test]
fn exit_codes() {
    let d = tempfile::tempdir().unwrap();
    assert_eq!(sspade(d.path(), &["frobnicate"]).status.code(), Some(1));
    assert_eq!(sspade(d.path(), &["pade", "fit", "--series", "missing.json", "-M", "1", "-N", "1"]).status.code(), Some(1));
    assert_eq!(sspade(d.path(), &["tf", "--grid", "1:0:3"]).status.code(), Some(1));
    write(d.path(), "bad.toml", "colour = \"red\"\n");
    assert_eq!(sspade(d.path(), &["tf", "--config", "bad.toml"]).status.code(), Some(1));

    let o = sspade(d.path(), &["tf", "--order", "5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("sspade::problems"));
    // the critical time bounds the Ruina-Dieterich domain
    assert_eq!(sspade(d.path(), &["rd", "--grid", "0:0.5:3"]).status.code(), Some(2));
    write(d.path(), "s.json", r#"{"amplitude": 1, "alpha": 0, "step": 1, "coeffs": [1, 1]}"#);
    let o = sspade(d.path(), &["pade", "fit", "--series", "s.json", "-M", "2", "-N", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("sspade::pade"));
    assert_eq!(sspade(d.path(), &["--help"]).status.code(), Some(0));
}
