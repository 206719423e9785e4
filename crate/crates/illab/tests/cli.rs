//! End-to-end checks of the `illab` binary: exit codes, report
//! reproducibility, config-file handling and the designed failure mode.

use std::process::Command;

fn illab() -> Command {
    Command::new(env!("CARGO_BIN_EXE_illab"))
}

#[test]
fn list_scenarios_names_the_catalog() {
    let out = illab().arg("list-scenarios").output().expect("spawn");
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    for name in [
        "generic_diagonal",
        "thm23_vertex",
        "prop44_ii2_k0",
        "membership_QPR",
        "oscillating_nonconvergent",
    ] {
        assert!(text.contains(name), "catalog missing {name}");
    }
}

#[test]
fn run_passes_and_reports_are_byte_identical() {
    let dir = std::env::temp_dir().join("illab_cli_test_reports");
    std::fs::create_dir_all(&dir).unwrap();
    let out1 = dir.join("a.json");
    let out2 = dir.join("b.json");
    for out in [&out1, &out2] {
        let status = illab()
            .args([
                "run",
                "--scenario",
                "generic_diagonal",
                "--json",
                out.to_str().unwrap(),
            ])
            .status()
            .expect("spawn");
        assert!(status.success());
    }
    let a = std::fs::read(&out1).unwrap();
    let b = std::fs::read(&out2).unwrap();
    assert_eq!(a, b, "reports differ between identical runs");
    assert!(!a.is_empty());
}

#[test]
fn unknown_scenario_and_bad_config_exit_2() {
    let out = illab()
        .args(["run", "--scenario", "no_such_thing"])
        .output()
        .expect("spawn");
    assert_eq!(out.status.code(), Some(2));

    let out = illab()
        .args(["run", "--config", "/definitely/not/here.conf"])
        .output()
        .expect("spawn");
    assert_eq!(out.status.code(), Some(2));

    let dir = std::env::temp_dir().join("illab_cli_test_badconf");
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.conf");
    std::fs::write(&bad, "key_without_section = 1\n").unwrap();
    let out = illab()
        .args(["run", "--config", bad.to_str().unwrap()])
        .output()
        .expect("spawn");
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn config_scenario_runs_end_to_end() {
    let dir = std::env::temp_dir().join("illab_cli_test_conf");
    std::fs::create_dir_all(&dir).unwrap();
    let conf = dir.join("square.conf");
    std::fs::write(
        &conf,
        r#"
[scenario]
name = config_square
expected_classification = Generic
expected_limit_ideal = z1^2 ; z2^2

[schedule]
eps0 = 0.1
ratio = 0.5
samples = 12

[family]
kind = expressions
p1 = 0 ; 0
p2 = eps ; 0
p3 = 0 ; eps
p4 = eps ; eps
"#,
    )
    .unwrap();
    let out = illab()
        .args(["run", "--config", conf.to_str().unwrap()])
        .output()
        .expect("spawn");
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(out.status.success(), "stdout: {text}");
    assert!(text.contains("result: PASS"));
}

#[test]
fn tightened_tolerance_is_a_designed_failure() {
    // demanding an extrapolation residual of 1e-15 is impossible for a
    // genuinely converging family; the verification must fail loudly
    // with exit code 3.
    let out = illab()
        .args([
            "run",
            "--scenario",
            "generic_skew",
            "--tol-gap-extrapolated",
            "1e-15",
        ])
        .output()
        .expect("spawn");
    assert_eq!(out.status.code(), Some(3));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("FAIL"));
}

#[test]
fn classify_subcommand_emits_json() {
    let out = illab()
        .args(["classify", "--scenario", "thm24_gamma2", "--json", "-"])
        .output()
        .expect("spawn");
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    let json_start = text.find('{').expect("json");
    let v: serde_json::Value = serde_json::from_str(&text[json_start..]).expect("valid json");
    assert_eq!(v["classification"]["tag"], "TripleCollinear_ManyDirections");
    assert_eq!(v["directions"].as_array().unwrap().len(), 6);
    assert_eq!(v["schema_version"], 1);
}

#[test]
fn green_gap_csv_has_sample_rows() {
    let dir = std::env::temp_dir().join("illab_cli_test_csv");
    std::fs::create_dir_all(&dir).unwrap();
    let csv = dir.join("gaps.csv");
    let out = illab()
        .args([
            "green-gap",
            "--scenario",
            "generic_diagonal",
            "--csv",
            csv.to_str().unwrap(),
        ])
        .output()
        .expect("spawn");
    assert!(out.status.success());
    let body = std::fs::read_to_string(&csv).unwrap();
    let mut lines = body.lines();
    assert_eq!(lines.next().unwrap(), "index,re_z1,im_z1,re_z2,im_z2,gap");
    // 64x64 torus + 1000 sphere points
    assert_eq!(body.lines().count(), 64 * 64 + 1000 + 1);
}

#[test]
fn verify_all_passes_on_a_clean_build() {
    let out = illab().arg("verify-all").output().expect("spawn");
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(out.status.success(), "{text}");
    assert!(text.contains("aggregate: PASS"));
    assert_eq!(text.matches("PASS").count(), 12); // 11 scenarios + aggregate
}

#[test]
fn verify_all_exits_3_under_an_impossible_tolerance() {
    let out = illab()
        .args(["verify-all", "--tol-gap-extrapolated", "1e-15"])
        .output()
        .expect("spawn");
    assert_eq!(out.status.code(), Some(3));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("aggregate: FAIL"));
}

#[test]
fn limit_ideal_subcommand_reports_certified_generators() {
    let out = illab()
        .args(["limit-ideal", "--scenario", "prop44_ii2_k0", "--json", "-"])
        .output()
        .expect("spawn");
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("certified: true"));
    let json_start = text.find('{').expect("json");
    let v: serde_json::Value = serde_json::from_str(&text[json_start..]).expect("valid json");
    assert_eq!(v["status"], "Converged");
    assert_eq!(v["certified"], true);
    assert_eq!(v["length"], 4);
    let gens: Vec<&str> = v["limit_generators"]
        .as_array()
        .unwrap()
        .iter()
        .map(|g| g.as_str().unwrap())
        .collect();
    assert!(gens.contains(&"z1*z2") && gens.contains(&"z1^2") && gens.contains(&"z2^3"));
}
