//! Binary-level behavior: exit codes, output schemas, determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

fn entwit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_entwit"))
        .args(args)
        .output()
        .expect("binary must run")
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join("entwit-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn stdout_str(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn usage_errors_exit_1() {
    assert_eq!(
        entwit(&["family", "--N", "5", "--thresholds"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(entwit(&["family", "--N", "4"]).status.code(), Some(1));
    assert_eq!(
        entwit(&["family", "--N", "4", "--lambda", "1.5"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(entwit(&["nonsense"]).status.code(), Some(1));
    assert_eq!(
        entwit(&["bench", "--d1", "2", "--d2", "2", "--ensemble", "bogus"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        entwit(&["generate-bound", "--N", "4", "--lambda", "0.25", "--out"])
            .status
            .code(),
        Some(1),
        "missing --out value"
    );
    // λ outside the PPT window.
    let out_file = tmp("never-written.json");
    assert_eq!(
        entwit(&[
            "generate-bound",
            "--N",
            "4",
            "--lambda",
            "0.25",
            "--out",
            out_file.to_str().unwrap()
        ])
        .status
        .code(),
        Some(1)
    );
    // Odd N rejected by verify-optimality.
    assert_eq!(
        entwit(&["verify-optimality", "--N", "5"]).status.code(),
        Some(1)
    );
}

#[test]
fn invalid_files_exit_2() {
    assert_eq!(
        entwit(&["analyze", "/definitely/not/a/file.json"])
            .status
            .code(),
        Some(2)
    );
    let bad = tmp("bad.json");
    std::fs::write(&bad, br#"{"dims": [2, 2], "re": [[1.0]], "im": [[0.0]]}"#).unwrap();
    assert_eq!(
        entwit(&["analyze", bad.to_str().unwrap()]).status.code(),
        Some(2)
    );

    // Valid JSON but not a state: trace is 2.
    let not_state = tmp("not-state.json");
    std::fs::write(
        &not_state,
        br#"{"dims": [1, 2], "re": [[1.0, 0.0], [0.0, 1.0]], "im": [[0.0, 0.0], [0.0, 0.0]]}"#,
    )
    .unwrap();
    assert_eq!(
        entwit(&["analyze", not_state.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn help_exits_0() {
    assert_eq!(entwit(&["--help"]).status.code(), Some(0));
    assert_eq!(entwit(&["family", "--help"]).status.code(), Some(0));
}

#[test]
fn analyze_maximally_mixed_is_all_inconclusive() {
    let path = tmp("mixed.json");
    let n = 16;
    let mut re = vec![vec![0.0_f64; n]; n];
    for (i, row) in re.iter_mut().enumerate() {
        row[i] = 1.0 / n as f64;
    }
    let body = serde_json::json!({
        "dims": [4, 4],
        "re": re,
        "im": vec![vec![0.0_f64; n]; n],
    });
    std::fs::write(&path, serde_json::to_vec(&body).unwrap()).unwrap();

    let out = entwit(&["analyze", path.to_str().unwrap(), "--json"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let report: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    let criteria = report["criteria"].as_array().unwrap();
    assert_eq!(criteria.len(), 6);
    for row in criteria {
        assert_eq!(row["verdict"], "Inconclusive", "row: {row}");
    }
    // tr(W · I/N²) = (N−2)/N since tr(W) = N(N−2).
    let expectation = report["witness_expectation"].as_f64().unwrap();
    assert!((expectation - 0.5).abs() < 1e-12);
}

#[test]
fn family_lambda_writes_state_passing_analyze() {
    let path = tmp("family-0.1.json");
    let out = entwit(&[
        "family",
        "--N",
        "4",
        "--lambda",
        "0.1",
        "--out",
        path.to_str().unwrap(),
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));

    let analyzed = entwit(&["analyze", path.to_str().unwrap(), "--json"]);
    assert_eq!(analyzed.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout_str(&analyzed)).unwrap();
    let criteria = report["criteria"].as_array().unwrap();
    let verdict_of = |name: &str| {
        criteria
            .iter()
            .find(|row| row["criterion"] == name)
            .map(|row| row["verdict"].as_str().unwrap().to_string())
            .unwrap()
    };
    assert_eq!(verdict_of("Phi"), "Entangled");
    assert_eq!(verdict_of("PPT"), "Inconclusive");
    let expectation = report["witness_expectation"].as_f64().unwrap();
    assert!((expectation + 0.2).abs() < 1e-9);
}

#[test]
fn family_lambda_one_writes_the_singlet_projector() {
    let path = tmp("family-1.json");
    let out = entwit(&[
        "family",
        "--N",
        "4",
        "--lambda",
        "1.0",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let (state, _) = entwit_cli::statefile::load(&path).unwrap();
    let sys = entwit_core::spin::SpinSystem::with_dimension(4).unwrap();
    assert!(state.matrix().max_diff(&sys.singlet_projector()) < 1e-15);
}

#[test]
fn sweep_csv_schema_and_file_output() {
    let out = entwit(&["family", "--N", "4", "--sweep", "0:0.2:0.1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_str(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "lambda,ppt_score,reduction1_score,reduction2_score,phi_score,realign_excess,major_violation,witness_expectation"
    );
    assert_eq!(lines.count(), 3, "0.0, 0.1, 0.2");

    let path = tmp("sweep.csv");
    let piped = entwit(&[
        "family",
        "--N",
        "4",
        "--sweep",
        "0:0.2:0.1",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(piped.status.code(), Some(0));
    let file_text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(file_text.lines().count(), 4);
    assert!(file_text.starts_with("lambda,"));
    // Same rows whether printed or written.
    assert_eq!(text.lines().nth(1), file_text.lines().nth(1));
}

#[test]
fn generate_bound_accepts_explicit_weights() {
    let path = tmp("bound-weights.json");
    let out = entwit(&[
        "generate-bound",
        "--N",
        "4",
        "--lambda",
        "0.1",
        "--weights",
        "0.05,0.05,0.05,0.05,0.05,0.05,0.05,0.05",
        "--out",
        path.to_str().unwrap(),
        "--json",
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let report: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert!(report["ppt_min_eigenvalue"].as_f64().unwrap() >= -1e-10);
    // tr(Wρ) = −λ(N−2)/(1 + Σw) = −0.2/1.4.
    let expectation = report["witness_expectation"].as_f64().unwrap();
    assert!((expectation + 0.2 / 1.4).abs() < 1e-9);

    // Wrong weight count is a usage error.
    let short = entwit(&[
        "generate-bound",
        "--N",
        "4",
        "--lambda",
        "0.1",
        "--weights",
        "0.05,0.05",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(short.status.code(), Some(1));
}

#[test]
fn generate_bound_is_bit_deterministic() {
    let a = tmp("bound-a.json");
    let b = tmp("bound-b.json");
    for path in [&a, &b] {
        let out = entwit(&[
            "generate-bound",
            "--N",
            "4",
            "--lambda",
            "0.1",
            "--seed",
            "7",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
    }
    let bytes_a = std::fs::read(&a).unwrap();
    let bytes_b = std::fs::read(&b).unwrap();
    assert_eq!(
        bytes_a, bytes_b,
        "same seed must give byte-identical output"
    );

    // Different seed, different state.
    let c = tmp("bound-c.json");
    entwit(&[
        "generate-bound",
        "--N",
        "4",
        "--lambda",
        "0.1",
        "--seed",
        "8",
        "--out",
        c.to_str().unwrap(),
    ]);
    assert_ne!(bytes_a, std::fs::read(&c).unwrap());
}

#[test]
fn generate_bound_output_analyzes_as_bound_entangled() {
    let path = tmp("bound-analyzed.json");
    let out = entwit(&[
        "generate-bound",
        "--N",
        "4",
        "--lambda",
        "0.1",
        "--seed",
        "7",
        "--out",
        path.to_str().unwrap(),
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert!(report["ppt_min_eigenvalue"].as_f64().unwrap() >= -1e-10);
    assert!(report["witness_expectation"].as_f64().unwrap() < 0.0);

    let analyzed = entwit(&["analyze", path.to_str().unwrap(), "--json"]);
    let report: serde_json::Value = serde_json::from_str(&stdout_str(&analyzed)).unwrap();
    let criteria = report["criteria"].as_array().unwrap();
    let phi = criteria.iter().find(|r| r["criterion"] == "Phi").unwrap();
    assert_eq!(phi["verdict"], "Entangled");
    let ppt = criteria.iter().find(|r| r["criterion"] == "PPT").unwrap();
    assert_eq!(ppt["verdict"], "Inconclusive");
}

#[test]
fn verify_optimality_json_and_exit() {
    let out = entwit(&["verify-optimality", "--N", "4", "--seed", "11", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    let section = &report["optimality"];
    assert_eq!(section["span_rank"], 16);
    assert_eq!(section["space_dim"], 16);
    assert_eq!(section["confirmed"], true);
    assert!(section["theta_residual"].as_f64().unwrap() <= 1e-10);

    let wide = entwit(&["verify-optimality", "--N", "8", "--json"]);
    assert_eq!(wide.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout_str(&wide)).unwrap();
    assert_eq!(report["optimality"]["span_rank"], 64);
    assert_eq!(report["optimality"]["space_dim"], 64);
}

#[test]
fn analyze_asymmetric_dims_skips_witness_and_phi_row_fires_where_applicable() {
    // I/8 on dims (2, 4): valid, separable, witness not applicable.
    let path = tmp("rect.json");
    let n = 8;
    let mut re = vec![vec![0.0_f64; n]; n];
    for (i, row) in re.iter_mut().enumerate() {
        row[i] = 1.0 / n as f64;
    }
    let body = serde_json::json!({
        "dims": [2, 4],
        "re": re,
        "im": vec![vec![0.0_f64; n]; n],
    });
    std::fs::write(&path, serde_json::to_vec(&body).unwrap()).unwrap();

    let out = entwit(&["analyze", path.to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert!(report.get("witness_expectation").is_none());
    // d2 = 4 is even and large enough, so the Phi row is a real verdict.
    let criteria = report["criteria"].as_array().unwrap();
    let phi = criteria.iter().find(|r| r["criterion"] == "Phi").unwrap();
    assert_eq!(phi["verdict"], "Inconclusive");
    assert!(!phi["detail"].as_str().unwrap().starts_with("skipped"));

    // Odd second factor: Phi row becomes a skipped marker, exit stays 0.
    let path_odd = tmp("rect-odd.json");
    let n = 6;
    let mut re = vec![vec![0.0_f64; n]; n];
    for (i, row) in re.iter_mut().enumerate() {
        row[i] = 1.0 / n as f64;
    }
    let body = serde_json::json!({
        "dims": [2, 3],
        "re": re,
        "im": vec![vec![0.0_f64; n]; n],
    });
    std::fs::write(&path_odd, serde_json::to_vec(&body).unwrap()).unwrap();
    let out = entwit(&["analyze", path_odd.to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    let criteria = report["criteria"].as_array().unwrap();
    let phi = criteria.iter().find(|r| r["criterion"] == "Phi").unwrap();
    assert!(phi["detail"].as_str().unwrap().starts_with("skipped"));
}

#[test]
fn bench_is_deterministic_and_sound_on_separable() {
    let run = || {
        let out = entwit(&[
            "bench",
            "--d1",
            "4",
            "--d2",
            "4",
            "--ensemble",
            "separable",
            "--k",
            "6",
            "--samples",
            "25",
            "--seed",
            "5",
            "--json",
        ]);
        assert_eq!(out.status.code(), Some(0));
        stdout_str(&out)
    };
    let first = run();
    let second = run();
    // Reports differ only in wall time; compare the bench sections.
    let parse = |s: &str| -> serde_json::Value {
        serde_json::from_str::<serde_json::Value>(s).unwrap()["bench"].clone()
    };
    assert_eq!(parse(&first), parse(&second));
    for row in parse(&first).as_array().unwrap() {
        assert_eq!(
            row["detections"], 0,
            "separable ensemble must stay clean: {row}"
        );
    }
}

#[test]
fn bench_haar_detects_pure_entangled_states() {
    let out = entwit(&[
        "bench",
        "--d1",
        "2",
        "--d2",
        "2",
        "--ensemble",
        "haar",
        "--samples",
        "30",
        "--seed",
        "1",
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    let rows = report["bench"].as_array().unwrap();
    let detections = |name: &str| {
        rows.iter().find(|r| r["criterion"] == name).unwrap()["detections"]
            .as_u64()
            .unwrap()
    };
    // Haar-random pure states on 2x2 are entangled almost surely and pure
    // entangled states are never PPT.
    assert_eq!(detections("PPT"), 30);
    assert_eq!(detections("Majorization"), 30);
}
