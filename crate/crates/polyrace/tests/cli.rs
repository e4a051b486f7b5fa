//! End-to-end checks of the command-line interface.

use std::process::{Command, Output};

fn polyrace(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polyrace"))
        .args(args)
        .output()
        .expect("spawn polyrace")
}

fn stdout_of(out: &Output) -> String {
    assert!(
        out.status.success(),
        "exit {:?}, stderr: {}",
        out.status,
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).expect("utf-8")
}

const QUINTIC: [&str; 4] = ["--field", "q=5", "--modulus", "t^5+3t^4+4t^3+2t+2"];
const SEXTIC: [&str; 4] = ["--field", "q=5", "--modulus", "t^6+2t^4+3t+1"];

#[test]
fn verify_examples_passes_fast_checks() {
    let out = polyrace(&["verify-examples", "--n-max", "100", "--format", "csv"]);
    let text = stdout_of(&out);
    assert!(text.contains("PASS quintic_zero_angles"), "{text}");
    assert!(text.contains("PASS k_limit_classes"), "{text}");
    assert!(text.contains("SKIP table_Omega_k1"), "{text}");
    assert!(text.contains(", 0 failed"), "{text}");
}

#[test]
fn density_reports_exact_period() {
    let mut args = vec!["density"];
    args.extend(QUINTIC);
    args.extend(["--f", "omega", "--k", "1", "--format", "csv"]);
    let text = stdout_of(&polyrace(&args));
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("f,k,n,positive,negative,zero,density,period"));
    assert_eq!(lines.next(), Some("omega,1,10,7,3,0,0.700000000,10"));
}

#[test]
fn race_csv_oracle_agrees_with_recursion() {
    let dir = tempfile::tempdir().expect("tempdir");
    let sidecar = dir.path().join("params.json");
    let base: Vec<&str> = {
        let mut v = vec!["race"];
        v.extend(SEXTIC);
        v.extend(["--k", "1", "--x-max", "6", "--format", "csv"]);
        v
    };
    let mut with_sidecar = base.clone();
    let sidecar_str = sidecar.to_str().expect("utf-8 path");
    with_sidecar.extend(["--sidecar", sidecar_str]);
    let fast = stdout_of(&polyrace(&with_sidecar));
    let mut oracle_args = base.clone();
    oracle_args.push("--oracle");
    let slow = stdout_of(&polyrace(&oracle_args));

    let parse_rows = |text: &str| -> Vec<(u64, f64, i32)> {
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("X,delta,sign"));
        lines
            .map(|line| {
                let mut parts = line.split(',');
                (
                    parts.next().unwrap().parse().unwrap(),
                    parts.next().unwrap().parse().unwrap(),
                    parts.next().unwrap().parse().unwrap(),
                )
            })
            .collect()
    };
    let fast_rows = parse_rows(&fast);
    let slow_rows = parse_rows(&slow);
    assert_eq!(fast_rows.len(), 6);
    for ((x1, d1, s1), (x2, d2, s2)) in fast_rows.iter().zip(&slow_rows) {
        assert_eq!(x1, x2);
        assert_eq!(s1, s2);
        assert!((d1 - d2).abs() < 1e-9, "X={x1}: {d1} vs {d2}");
    }
    // Sidecar holds the run parameters.
    let params: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&sidecar).expect("sidecar")).expect("json");
    assert_eq!(params["schema"], 1);
    assert_eq!(params["k"], 1);
    assert_eq!(params["a"], "squares");
}

#[test]
fn lfunc_json_is_cached_and_stable() {
    let dir = tempfile::tempdir().expect("tempdir");
    let cache = dir.path().to_str().expect("utf-8 path");
    let mut args = vec!["lfunc"];
    args.extend(SEXTIC);
    args.extend(["--cache-dir", cache]);
    let first = stdout_of(&polyrace(&args));
    let cached: Vec<_> = std::fs::read_dir(dir.path().join("lfunc"))
        .expect("cache dir")
        .collect();
    assert_eq!(cached.len(), 3);
    let second = stdout_of(&polyrace(&args));
    assert_eq!(first, second);
    let parsed: serde_json::Value = serde_json::from_str(&first).expect("json");
    assert_eq!(parsed["schema"], 1);
    let entries = parsed["entries"].as_array().expect("entries");
    assert_eq!(entries.len(), 3);
    assert!(entries.iter().any(|e| {
        e["coeffs_int"]
            == serde_json::json!([1, 1, 9, -1, 15, -25])
    }));
}

#[test]
fn construct_modulus_writes_irreducible_cache_and_output_reparses() {
    let dir = tempfile::tempdir().expect("tempdir");
    let cache = dir.path().to_str().expect("utf-8 path");
    let args = [
        "construct-modulus", "--field", "q=5", "--omega", "3", "--c", "1.0",
        "--cache-dir", cache,
    ];
    let text = stdout_of(&polyrace(&args));
    let parsed: serde_json::Value = serde_json::from_str(&text).expect("json");
    assert_eq!(parsed["degrees"], serde_json::json!([1, 2, 5]));
    for d in [1, 2, 5] {
        assert!(dir.path().join(format!("irreducibles/q5_d{d}.json")).exists());
    }
    // A second run must reproduce the same modulus from the cache, and the
    // printed polynomial must reparse.
    let again = stdout_of(&polyrace(&args));
    assert_eq!(text, again);
    let modulus = parsed["modulus"].as_str().expect("string").replace('*', "");
    let classify = polyrace(&[
        "classify", "--field", "q=5", "--modulus", &modulus, "--k", "1",
    ]);
    let parsed: serde_json::Value =
        serde_json::from_str(&stdout_of(&classify)).expect("json");
    assert_eq!(parsed["k"], 1);
}

#[test]
fn main_term_json_matches_zero_count() {
    let mut args = vec!["main-term"];
    args.extend(SEXTIC);
    args.extend(["--k", "2"]);
    let parsed: serde_json::Value =
        serde_json::from_str(&stdout_of(&polyrace(&args))).expect("json");
    assert_eq!(parsed["schema"], 1);
    assert_eq!(parsed["sign"], 1.0);
    assert_eq!(parsed["oscillators"].as_array().expect("array").len(), 3);
}

#[test]
fn li_scan_flags_the_dependent_angles() {
    let mut args = vec!["li-scan"];
    args.extend(SEXTIC);
    args.extend(["--q-bound", "1"]);
    let parsed: serde_json::Value =
        serde_json::from_str(&stdout_of(&polyrace(&args))).expect("json");
    assert_eq!(parsed["independent_up_to_bound"], false);
    assert_eq!(parsed["relations"][0], serde_json::json!([1, -1, -1, 0]));
}

#[test]
fn bad_inputs_fail_cleanly() {
    let out = polyrace(&["lfunc", "--field", "q=5", "--modulus", "t^^2"]);
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("--modulus"), "{err}");

    let mut args = vec!["density"];
    args.extend(QUINTIC);
    args.extend(["--k", "17"]);
    assert!(!polyrace(&args).status.success());
}
