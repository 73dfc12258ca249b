use std::fs;

use eomech::cli::{
    dispatch, run, Command, Invocation, RunConfig, EXIT_NUMERICAL, EXIT_OK, EXIT_VALIDATION,
};
use serde_json::Value;

struct Outcome {
    code: i32,
    stdout: String,
    stderr: String,
}

fn eomech(args: &[&str]) -> Outcome {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("eomech").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    Outcome {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn json(o: &Outcome) -> Value {
    assert_eq!(o.code, EXIT_OK, "stderr: {}", o.stderr);
    serde_json::from_str(&o.stdout).expect("valid JSON")
}

fn num(v: &Value, key: &str) -> f64 {
    v[key]
        .as_f64()
        .unwrap_or_else(|| panic!("missing {key} in {v}"))
}

#[test]
fn efficiency_reports_reference_value() {
    let v = json(&eomech(&["efficiency"]));
    assert!((num(&v, "r0") - 0.328).abs() < 0.002);
    assert_eq!(num(&v, "r0"), num(&v, "r_omega"));
}

#[test]
fn capacity_with_occupancy_flag() {
    let v = json(&eomech(&["capacity", "--occupancy-extra-two-pi"]));
    assert!((num(&v, "p") - 0.304).abs() < 0.003);
    assert!(num(&v, "p") <= num(&v, "p_noiseless"));
}

#[test]
fn coeffs_agree_with_oracle() {
    let v = json(&eomech(&["coeffs", "--omega-hz", "2.5e5"]));
    assert!(num(&v, "oracle_max_rel_deviation") < 1e-10);
    assert!((num(&v, "total_weight") - 1.0).abs() < 1e-12);
}

#[test]
fn ln_includes_analytic_cross_check_at_zero_frequency() {
    let v = json(&eomech(&["ln", "--ns", "1", "--occupancy-extra-two-pi"]));
    assert!((num(&v, "ln_ctmg") - 0.247_906).abs() < 1e-6);
    assert!((num(&v, "xi_minus") - num(&v, "xi_minus_analytic")).abs() < 1e-12);
    let peak = &v["ratio_max"];
    assert!((num(peak, "ns") - 0.157).abs() < 0.01);
    assert!((num(peak, "ratio") - 0.178).abs() < 0.003);
}

#[test]
fn sweep_ns_emits_csv_grid() {
    let o = eomech(&["sweep-ns", "--points", "5", "--min", "0.01", "--max", "100"]);
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    let lines: Vec<&str> = o.stdout.lines().collect();
    assert_eq!(lines[0], "ns,ln_tmsv,ln_ctmg,ratio");
    assert_eq!(lines.len(), 6);
    assert!(!o.stdout.contains('\r'));
    let first: Vec<f64> = lines[1].split(',').map(|c| c.parse().unwrap()).collect();
    assert_eq!(first[0], 0.01);
    assert_eq!(
        lines[5].split(',').next().unwrap().parse::<f64>().unwrap(),
        100.0
    );
}

#[test]
fn sweep_loss_has_both_objectives() {
    let o = eomech(&[
        "sweep-loss",
        "--points",
        "3",
        "--min",
        "1e5",
        "--max",
        "1e7",
    ]);
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    let lines: Vec<&str> = o.stdout.lines().collect();
    assert_eq!(lines[0], "gamma_o_hz,gamma_e_hz,r0,ln");
    assert_eq!(lines.len(), 10);
}

#[test]
fn sweeps_are_byte_identical_across_runs() {
    let args = ["sweep-ns", "--points", "21", "--occupancy-extra-two-pi"];
    assert_eq!(eomech(&args).stdout, eomech(&args).stdout);
    let json_args = ["sweep-ns", "--points", "4", "--format", "json"];
    let a = eomech(&json_args);
    assert_eq!(a.code, EXIT_OK);
    let parsed: Value = serde_json::from_str(&a.stdout).unwrap();
    assert_eq!(parsed["columns"][0], "ns");
    assert_eq!(a.stdout, eomech(&json_args).stdout);
}

#[test]
fn invalid_input_exits_one() {
    let unknown = eomech(&["no-such-command"]);
    assert_eq!(unknown.code, EXIT_VALIDATION);
    assert!(unknown.stdout.is_empty());

    let negative = eomech(&["efficiency", "--ns", "-1"]);
    assert_eq!(negative.code, EXIT_VALIDATION, "{}", negative.stderr);
    assert!(negative.stderr.contains("error"));

    let bad_grid = eomech(&["sweep-ns", "--min", "10", "--max", "1"]);
    assert_eq!(bad_grid.code, EXIT_VALIDATION);
}

#[test]
fn config_errors_name_the_key() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    fs::write(&path, r#"{"conventions": {"gamma_m_extra_divison": true}}"#).unwrap();
    let o = eomech(&["info", "--config", path.to_str().unwrap()]);
    assert_eq!(o.code, EXIT_VALIDATION);
    assert!(o.stderr.contains("gamma_m_extra_divison"), "{}", o.stderr);

    fs::write(&path, r#"{"gamma_m_hz": -11}"#).unwrap();
    let o = eomech(&["info", "--config", path.to_str().unwrap()]);
    assert_eq!(o.code, EXIT_VALIDATION);
    assert!(o.stderr.contains("gamma_m_hz"), "{}", o.stderr);

    let missing = eomech(&["info", "--config", "/nonexistent/eomech.json"]);
    assert_eq!(missing.code, EXIT_VALIDATION);
}

#[test]
fn numerical_failure_exits_two() {
    // Lossless, matched and essentially undamped: R(0) rounds to 1 and the
    // noiseless bound diverges.
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("perfect.json");
    fs::write(
        &path,
        r#"{"g_o_hz": 1.0, "g_e_hz": 1.0, "gamma_o_hz": 1e6, "gamma_e_hz": 1e6,
            "gamma_o_int_hz": 1e-300, "gamma_e_int_hz": 1e-300, "gamma_m_hz": 1e-300,
            "n_pump_o": 1e8, "n_pump_e": 1e8, "temperature_k": 0.0}"#,
    )
    .unwrap();
    let o = eomech(&["capacity", "--config", path.to_str().unwrap()]);
    assert_eq!(o.code, EXIT_NUMERICAL, "{}", o.stderr);
    assert!(o.stdout.is_empty());
}

#[test]
fn config_file_and_out_path() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    let out = dir.path().join("r.csv");
    fs::write(
        &cfg,
        r#"{"temperature_k": 0.0, "output": {"format": "csv", "precision": 6}}"#,
    )
    .unwrap();
    let o = eomech(&[
        "capacity",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    assert!(o.stdout.is_empty());
    let text = fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().next(), Some("key,value"));
    let p: f64 = text
        .lines()
        .find_map(|l| l.strip_prefix("p,"))
        .unwrap()
        .parse()
        .unwrap();
    assert!((p - 0.678_497).abs() < 1e-6);
}

#[test]
fn config_round_trip() {
    let text = r#"{"temperature_k": 0.02, "n_pump_e": 2e8,
                   "conventions": {"gamma_m_extra_division": true},
                   "output": {"format": "json", "precision": 9}}"#;
    let cfg = RunConfig::from_json_str(text).unwrap();
    let again = RunConfig::from_json_str(&cfg.to_json_string().unwrap()).unwrap();
    assert_eq!(cfg, again);
    assert!(cfg.params.conventions.gamma_m_extra_division);
    assert!(!cfg.params.conventions.occupancy_extra_two_pi);
}

#[test]
fn dispatch_matches_run() {
    let inv = Invocation {
        ns: Some(0.5),
        ..Invocation::default()
    };
    let artifact = dispatch(Command::Efficiency, &RunConfig::default(), &inv).unwrap();
    let rendered = artifact.render(eomech::cli::Format::Json, 17);
    assert_eq!(rendered, eomech(&["efficiency", "--ns", "0.5"]).stdout);
}

#[test]
fn help_and_version_exit_zero() {
    let h = eomech(&["--help"]);
    assert_eq!(h.code, EXIT_OK);
    assert!(h.stdout.contains("sweep-ns"));
    assert_eq!(eomech(&["--version"]).code, EXIT_OK);
}
