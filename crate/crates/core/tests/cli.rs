use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn spinclone(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spinclone")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn f(v: &Value) -> f64 {
    v.as_f64().expect("number")
}

#[test]
fn check_passes() {
    let out = spinclone(&["check", "--samples", "200"]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(out.status.code(), Some(0), "{text}");
    assert!(text.contains("PASS  povm completeness"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn check_catches_injected_sign_error() {
    let out = spinclone(&["check", "--samples", "50", "--inject-sign-error"]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(out.status.code(), Some(1));
    assert!(text.contains("FAIL  naimark orthonormality"), "{text}");
}

fn sweep_to(path: &Path, extra: &[&str]) -> Output {
    let mut args = vec!["sweep", "--alpha-steps", "5", "--eta-steps", "7", "--quad-res", "16", "--out"];
    let p = path.to_str().unwrap();
    args.push(p);
    args.extend_from_slice(extra);
    spinclone(&args)
}

#[test]
fn sweep_csv_is_deterministic_and_well_formed() {
    let dir = tempfile::tempdir().unwrap();
    let (p1, p2) = (dir.path().join("a.csv"), dir.path().join("b.csv"));
    assert_eq!(sweep_to(&p1, &[]).status.code(), Some(0));
    assert_eq!(sweep_to(&p2, &[]).status.code(), Some(0));
    let bytes = std::fs::read(&p1).unwrap();
    assert_eq!(bytes, std::fs::read(&p2).unwrap());

    let text = String::from_utf8(bytes).unwrap();
    assert!(text.starts_with(
        "alpha,beta,eta,p,epsilon,f_av_quad,f_av_closed,f_m_quad,f_a_quad,f_a_closed,f_b_closed,f_ma_closed,f_mb_closed,discrepancy_flags\r\n"
    ));
    let mut reader = csv::Reader::from_path(&p1).unwrap();
    let rows: Vec<_> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 35);
    // alpha-major: the first 7 rows share alpha = 0.
    assert!(rows[..7].iter().all(|r| r[0].parse::<f64>().unwrap() == 0.0));
    let last = &rows[34];
    assert_eq!(last[0].parse::<f64>().unwrap(), 1.0);
    assert_eq!(last[2].parse::<f64>().unwrap(), std::f64::consts::PI);
}

#[test]
fn sweep_json_uses_csv_keys() {
    let dir = tempfile::tempdir().unwrap();
    let (csv_path, json_path) = (dir.path().join("s.csv"), dir.path().join("s.json"));
    sweep_to(&csv_path, &[]);
    assert_eq!(sweep_to(&json_path, &["--format", "json"]).status.code(), Some(0));
    let rows: Vec<serde_json::Map<String, Value>> =
        serde_json::from_str(&std::fs::read_to_string(&json_path).unwrap()).unwrap();
    let mut reader = csv::Reader::from_path(&csv_path).unwrap();
    let header: Vec<String> = reader.headers().unwrap().iter().map(String::from).collect();
    let records: Vec<_> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), records.len());
    for (row, rec) in rows.iter().zip(&records) {
        let keys: Vec<&String> = row.keys().collect();
        assert_eq!(keys.len(), header.len());
        for (k, field) in header.iter().zip(rec.iter()) {
            match &row[k] {
                Value::String(s) => assert_eq!(s, field),
                v => assert_eq!(f(v), field.parse::<f64>().unwrap(), "{k}"),
            }
        }
    }
}

#[test]
fn sweep_degrees_match_radians() {
    let dir = tempfile::tempdir().unwrap();
    let (rad, deg) = (dir.path().join("r.csv"), dir.path().join("d.csv"));
    sweep_to(&rad, &["--eta-min", "0.5", "--eta-max", "1.5"]);
    let out = sweep_to(&deg, &["--degrees", "--eta-min", "28.64788975654116", "--eta-max", "85.94366926962348"]);
    assert_eq!(out.status.code(), Some(0));
    let read = |p: &Path| -> Vec<f64> {
        csv::Reader::from_path(p).unwrap().records().map(|r| r.unwrap()[2].parse().unwrap()).collect()
    };
    for (x, y) in read(&rad).iter().zip(read(&deg)) {
        assert!((x - y).abs() < 1e-14);
    }
}

#[test]
fn sweep_rejects_bad_config() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("x.csv");
    assert_eq!(sweep_to(&p, &["--eta-steps", "1"]).status.code(), Some(2));
    assert_eq!(sweep_to(&p, &["--eta-min", "2", "--eta-max", "1"]).status.code(), Some(2));
    assert_eq!(sweep_to(&p, &["--beta", "sharp"]).status.code(), Some(2));
    assert_eq!(spinclone(&["sweep", "--bogus"]).status.code(), Some(2));
    let unwritable = dir.path().join("missing").join("x.csv");
    assert_eq!(sweep_to(&unwritable, &[]).status.code(), Some(2));
}

#[test]
fn clone_a_plus_distribution() {
    let out = spinclone(&["clone", "--alpha", "0.6", "--eta", "90", "--degrees", "--theta", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let weights: Vec<f64> = v["weights"].as_array().unwrap().iter().map(f).collect();
    for (w, want) in weights.iter().zip([0.4, 0.4, 0.1, 0.1]) {
        assert!((w - want).abs() < 1e-12);
    }
    assert!((f(&v["geometry"]["beta"]) - 0.8).abs() < 1e-12);
    for key in ["a_component", "b_component", "normal_a", "normal_b", "weights_vs_born"] {
        assert!(f(&v["residuals"][key]).abs() < 1e-10, "{key}");
    }
    assert_eq!(v["lambdas"].as_array().unwrap().len(), 4);
    assert_eq!(v["outcomes"], serde_json::json!(["++", "+-", "-+", "--"]));
}

#[test]
fn clone_mixed_input_has_no_amplitudes() {
    let out = spinclone(&["clone", "--alpha", "0.3", "--eta", "1.0", "--theta", "0.4", "--radius", "0.5"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!(v["lambdas"].is_null());
    assert!(f(&v["residuals"]["weights_vs_born"]) < 1e-12);
}

#[test]
fn clone_non_saturating_reports_residual() {
    let out = spinclone(&["clone", "--alpha", "0.9", "--beta", "0.9", "--eta", "1.5707963267948966"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("not optimal"), "{err}");
    // 1.8 sqrt 2 - 2
    assert!(err.contains("5.455844"), "{err}");
}

#[test]
fn sample_single_shot_and_determinism() {
    let args = ["sample", "--alpha", "0.6", "--eta", "1.5707963267948966", "--theta", "1.0", "-n", "1", "--seed", "4"];
    let out = spinclone(&args);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let label = v["outcome"].as_str().unwrap();
    assert!(["++", "+-", "-+", "--"].contains(&label));
    assert_eq!(out.stdout, spinclone(&args).stdout);

    let many = ["sample", "--alpha", "0.6", "--eta", "1.2", "-n", "5000", "--seed", "9"];
    let first = spinclone(&many);
    assert!(json(&first).get("outcome").is_none());
    assert_eq!(first.stdout, spinclone(&many).stdout);
}

#[test]
fn sample_maximally_mixed_passes_chi_square() {
    let out = spinclone(&["sample", "--alpha", "0.5", "--eta", "2.0", "--radius", "0", "-n", "1000000"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!(f(&v["chi_square"]["p_value"]) > 0.001);
    let counts: u64 = v["counts"].as_array().unwrap().iter().map(|c| c.as_u64().unwrap()).sum();
    assert_eq!(counts, 1_000_000);
    // Maximally mixed: (p/2, (1-p)/2, (1-p)/2, p/2).
    let expected: Vec<f64> = v["expected"].as_array().unwrap().iter().map(f).collect();
    let p = f(&v["geometry"]["p"]);
    for (e, want) in expected.iter().zip([p / 2.0, (1.0 - p) / 2.0, (1.0 - p) / 2.0, p / 2.0]) {
        assert!((e - want).abs() < 1e-12);
    }
}
