//! End-to-end tests of the command-line interface: configs in, reports and
//! exit codes out.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn scratch_dir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!(
        "fiberwise-cli-{}-{}",
        std::process::id(),
        name
    ));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fiberwise"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn angle_of_identical_delta_sets_is_one() {
    let dir = scratch_dir("angle-delta");
    let cfg = dir.join("cfg.json");
    fs::write(
        &cfg,
        r#"{
            "realization": "finite-group",
            "n": 4,
            "m": 2,
            "sets": { "A": [{"delta": 0}], "B": [{"delta": 0}] }
        }"#,
    )
    .unwrap();
    let out = run(&["angle", "--config", cfg.to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("ess-sup angle over omega: 1.0000000000000000e0"));
}

#[test]
fn angle_of_disjoint_bands_is_zero() {
    let dir = scratch_dir("angle-bands");
    let cfg = dir.join("cfg.json");
    fs::write(
        &cfg,
        r#"{
            "realization": "real-line",
            "grid_size": 16,
            "truncation": 4,
            "sets": {
                "A": [{"profile": "bandlimit", "lo": 0.0, "hi": 1.0}],
                "B": [{"profile": "bandlimit", "lo": 1.0, "hi": 2.0}]
            }
        }"#,
    )
    .unwrap();
    let csv = dir.join("out.csv");
    let out = run(&[
        "angle",
        "--config",
        cfg.to_str().unwrap(),
        "--csv",
        csv.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("ess-sup angle over omega: 0.0000000000000000e0"));
    let csv_text = fs::read_to_string(&csv).unwrap();
    assert!(csv_text.starts_with("fiber_index,x_value,dim_J_A,dim_J_B,angle,in_omega,in_omega_prime\n"));
    assert_eq!(csv_text.lines().count(), 17);
}

#[test]
fn angle_matches_in_process_library_value() {
    // The CLI must agree exactly with the library on an inline instance.
    let dir = scratch_dir("angle-inline");
    let cfg = dir.join("cfg.json");
    fs::write(
        &cfg,
        r#"{
            "realization": "finite-group",
            "n": 6,
            "m": 2,
            "sets": {
                "A": [[[0.3, 0.1], [-0.4, 0.9], [1.2, 0.0], [0.0, -0.7], [0.5, 0.5], [-1.0, 0.2]]],
                "B": [{"delta": 1}, {"delta": 4}]
            }
        }"#,
    )
    .unwrap();
    let out = run(&["angle", "--config", cfg.to_str().unwrap()]);
    assert!(out.status.success());

    use num_complex::Complex64;
    let pair = fiberwise_core::transforms::FiniteGroupPair::new(6, 2).unwrap();
    let gen_a: Vec<Complex64> = [
        (0.3, 0.1),
        (-0.4, 0.9),
        (1.2, 0.0),
        (0.0, -0.7),
        (0.5, 0.5),
        (-1.0, 0.2),
    ]
    .iter()
    .map(|&(re, im)| Complex64::new(re, im))
    .collect();
    let mut d1 = vec![Complex64::new(0.0, 0.0); 6];
    d1[1] = Complex64::new(1.0, 0.0);
    let mut d4 = vec![Complex64::new(0.0, 0.0); 6];
    d4[4] = Complex64::new(1.0, 0.0);
    let set_a = fiberwise_core::transforms::fiberize_group(&[gen_a], pair).unwrap();
    let set_b = fiberwise_core::transforms::fiberize_group(&[d1, d4], pair).unwrap();
    let tol = fiberwise_core::subspace::RankTolerance::default();
    let region = fiberwise_core::fiber::omega(
        &fiberwise_core::fiber::range_function(&set_a, tol),
        &fiberwise_core::fiber::range_function(&set_b, tol),
    )
    .unwrap();
    let profile = fiberwise_core::fiber::ess_sup_angle(&set_a, &set_b, &region, tol).unwrap();
    let expect = format!("ess-sup angle over omega: {:.16e}", profile.ess_sup);
    assert!(
        stdout(&out).contains(&expect),
        "CLI output {:?} lacks {expect:?}",
        stdout(&out)
    );
}

#[test]
fn closedness_of_disjoint_bands_is_closed() {
    let dir = scratch_dir("closed-bands");
    let cfg = dir.join("cfg.json");
    fs::write(
        &cfg,
        r#"{
            "realization": "real-line",
            "grid_size": 32,
            "truncation": 2,
            "sets": {
                "A": [{"profile": "bandlimit", "lo": 0.0, "hi": 1.0}],
                "B": [{"profile": "bandlimit", "lo": 1.0, "hi": 2.0}]
            }
        }"#,
    )
    .unwrap();
    let out = run(&["closedness", "--config", cfg.to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("verdict: closed"));
    assert!(text.contains("ess-sup angle over omega-prime: 0.0000000000000000e0"));
    assert!(text.contains("witness fibers: none"));
}

#[test]
fn closedness_of_table_profile_approaching_alignment() {
    // B's fiber direction (cos(πξ/2), sin(πξ/2)) leans into A's as ξ → 0;
    // on the midpoint grid with n = 4096 the first fiber angle is
    // cos(π/16384) ≈ 1 − 1.8e-8, above the 1 − 1e-6 cutoff.
    let dir = scratch_dir("closed-table");
    let table = dir.join("lean.csv");
    let mut rows = String::from("# u, value\n");
    let steps = 2000usize;
    for i in 0..=steps {
        let u = 2.0 * i as f64 / steps as f64;
        let v = if u <= 1.0 {
            (std::f64::consts::PI * u / 2.0).cos()
        } else {
            (std::f64::consts::PI * (u - 1.0) / 2.0).sin()
        };
        rows.push_str(&format!("{u},{v}\n"));
    }
    fs::write(&table, rows).unwrap();
    let cfg = dir.join("cfg.json");
    fs::write(
        &cfg,
        r#"{
            "realization": "real-line",
            "grid_size": 4096,
            "truncation": 1,
            "sets": {
                "A": [{"profile": "bandlimit", "lo": 0.0, "hi": 1.0}],
                "B": [{"profile": "custom-table", "path": "lean.csv"}]
            }
        }"#,
    )
    .unwrap();
    let out = run(&["closedness", "--config", cfg.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(text.contains("verdict: not closed"), "{text}");
    assert!(text.contains("witness fibers: 0"), "{text}");
}

#[test]
fn closedness_cutoff_override_flips_verdict() {
    // A 60-degree instance is closed by default but fails once the cutoff
    // tightens past the actual angle of 0.5.
    let dir = scratch_dir("closed-override");
    let cfg = dir.join("cfg.json");
    fs::write(
        &cfg,
        r#"{
            "realization": "finite-group",
            "n": 4,
            "m": 2,
            "sets": {
                "A": [{"delta": 0}],
                "B": [[[1.0, 0.0], [0.5, 0.0], [0.0, 0.0], [0.5, 0.0]]]
            }
        }"#,
    )
    .unwrap();
    let out_default = run(&["closedness", "--config", cfg.to_str().unwrap()]);
    assert!(out_default.status.success());
    assert!(stdout(&out_default).contains("verdict: closed"));
    let out_tight = run(&[
        "closedness",
        "--config",
        cfg.to_str().unwrap(),
        "--tol-close",
        "0.9",
    ]);
    assert!(out_tight.status.success());
    assert!(stdout(&out_tight).contains("verdict: not closed"));
}

#[test]
fn frame_bounds_of_orthonormal_generator() {
    let dir = scratch_dir("frame-bounds");
    let cfg = dir.join("cfg.json");
    fs::write(
        &cfg,
        r#"{
            "realization": "finite-group",
            "n": 4,
            "m": 2,
            "sets": { "A": [{"delta": 0}] }
        }"#,
    )
    .unwrap();
    let csv = dir.join("fb.csv");
    let out = run(&[
        "frame-bounds",
        "--config",
        cfg.to_str().unwrap(),
        "--csv",
        csv.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("lower frame bound over spectrum: 1.0000000000000000e0"));
    assert!(text.contains("upper frame bound over spectrum: 1.0000000000000000e0"));
    let csv_text = fs::read_to_string(&csv).unwrap();
    assert!(csv_text.starts_with("fiber_index,x_value,dim_J,lower,upper\n"));
}

#[test]
fn sampling_counterexample_reports_failing_fiber() {
    let dir = scratch_dir("sampling");
    let cfg = dir.join("cfg.json");
    fs::write(
        &cfg,
        r#"{
            "realization": "finite-group",
            "n": 4,
            "m": 2,
            "sets": {
                "measuring": [[[1.0, 0.0], [0.0, 0.0], [-1.0, 0.0], [0.0, 0.0]]],
                "targets": [[{"delta": 0}]]
            }
        }"#,
    )
    .unwrap();
    let out = run(&["sampling", "--config", cfg.to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("target 0: not injective"));
    assert!(text.contains("failing fiber 0"));
    assert!(text.contains("rank 0 < dim 1"));
}

#[test]
fn sampling_of_matching_deltas_is_injective() {
    let dir = scratch_dir("sampling-ok");
    let cfg = dir.join("cfg.json");
    fs::write(
        &cfg,
        r#"{
            "realization": "finite-group",
            "n": 4,
            "m": 2,
            "sets": { "measuring": [{"delta": 0}], "targets": [[{"delta": 0}]] }
        }"#,
    )
    .unwrap();
    let out = run(&["sampling", "--config", cfg.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("target 0: injective"));
}

#[test]
fn union_of_disjoint_band_targets_is_injective() {
    let dir = scratch_dir("union-ok");
    let cfg = dir.join("cfg.json");
    fs::write(
        &cfg,
        r#"{
            "realization": "real-line",
            "grid_size": 8,
            "truncation": 2,
            "sets": {
                "measuring": [
                    {"profile": "bandlimit", "lo": 0.0, "hi": 1.0},
                    {"profile": "bandlimit", "lo": 1.0, "hi": 2.0}
                ],
                "targets": [
                    [{"profile": "bandlimit", "lo": 0.0, "hi": 1.0}],
                    [{"profile": "bandlimit", "lo": 1.0, "hi": 2.0}]
                ]
            }
        }"#,
    )
    .unwrap();
    let out = run(&["union", "--config", cfg.to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("union verdict: injective"));
    assert!(text.contains("pair (0, 1): ess-sup over omega-prime = 0.0000000000000000e0"));
}

#[test]
fn union_with_violated_hypothesis_is_inapplicable() {
    let dir = scratch_dir("union-violated");
    let cfg = dir.join("cfg.json");
    fs::write(
        &cfg,
        r#"{
            "realization": "finite-group",
            "n": 4,
            "m": 2,
            "sets": {
                "measuring": [{"delta": 0}, {"delta": 1}],
                "targets": [
                    [{"delta": 0}],
                    [[[0.5, 0.0], [0.0005, 0.0], [0.5, 0.0], [0.0005, 0.0]]]
                ]
            }
        }"#,
    )
    .unwrap();
    let out = run(&["union", "--config", cfg.to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("union verdict: inapplicable"));
    assert!(text.contains("hypothesis violations: (0, 1)"));
    assert!(!text.contains("union verdict: injective"));
    assert!(!text.contains("union verdict: not injective"));
}

#[test]
fn crosscheck_passes_by_default_and_fails_when_corrupted() {
    let ok = run(&[
        "crosscheck",
        "--seed",
        "11",
        "--angle-count",
        "10",
        "--injectivity-count",
        "5",
    ]);
    assert!(ok.status.success());
    assert!(stdout(&ok).contains("crosscheck: PASS"));

    let corrupted = run(&[
        "crosscheck",
        "--seed",
        "11",
        "--angle-count",
        "10",
        "--injectivity-count",
        "5",
        "--max-deviation",
        "1e-20",
    ]);
    assert_eq!(corrupted.status.code(), Some(1));
    assert!(stdout(&corrupted).contains("crosscheck: FAIL"));
}

#[test]
fn config_errors_exit_with_code_2() {
    let missing = run(&["angle", "--config", "/nonexistent/cfg.json"]);
    assert_eq!(missing.status.code(), Some(2));

    let dir = scratch_dir("bad-configs");
    let bad_json = dir.join("bad.json");
    fs::write(&bad_json, "{ not json").unwrap();
    let out = run(&["angle", "--config", bad_json.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    let bad_delta = dir.join("delta.json");
    fs::write(
        &bad_delta,
        r#"{"realization": "finite-group", "n": 4, "m": 2,
            "sets": {"A": [{"delta": 9}], "B": [{"delta": 0}]}}"#,
    )
    .unwrap();
    let out = run(&["angle", "--config", bad_delta.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("delta index 9"));

    let bad_m = dir.join("m.json");
    fs::write(
        &bad_m,
        r#"{"realization": "finite-group", "n": 4, "m": 3,
            "sets": {"A": [{"delta": 0}], "B": [{"delta": 0}]}}"#,
    )
    .unwrap();
    let out = run(&["angle", "--config", bad_m.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    let missing_set = dir.join("noset.json");
    fs::write(
        &missing_set,
        r#"{"realization": "finite-group", "n": 4, "m": 2,
            "sets": {"A": [{"delta": 0}]}}"#,
    )
    .unwrap();
    let out = run(&["angle", "--config", missing_set.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("does not define set \"B\""));
}

#[test]
fn numerically_unusable_fibers_exit_with_code_3() {
    // Entries around 1e200 overflow the Gramian; the route check reports the
    // fiber as numerically unusable instead of emitting garbage.
    let dir = scratch_dir("overflow");
    let cfg = dir.join("cfg.json");
    fs::write(
        &cfg,
        r#"{
            "realization": "finite-group",
            "n": 2,
            "m": 1,
            "sets": {
                "A": [[[1e200, 0.0], [0.0, 0.0]]],
                "B": [[[1e200, 0.0], [1e200, 0.0]]]
            }
        }"#,
    )
    .unwrap();
    let out = run(&["angle", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("numerical inconsistency"));
}

#[test]
fn quiet_suppresses_report_but_not_csv() {
    let dir = scratch_dir("quiet");
    let cfg = dir.join("cfg.json");
    fs::write(
        &cfg,
        r#"{"realization": "finite-group", "n": 4, "m": 2,
            "sets": {"A": [{"delta": 0}], "B": [{"delta": 0}]}}"#,
    )
    .unwrap();
    let csv = dir.join("out.csv");
    let out = run(&[
        "angle",
        "--config",
        cfg.to_str().unwrap(),
        "--csv",
        csv.to_str().unwrap(),
        "--quiet",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).is_empty());
    assert!(csv.exists());
}
