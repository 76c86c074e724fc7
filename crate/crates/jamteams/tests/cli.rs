use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use jamteams::parse_scenario;

fn scenarios() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../scenarios")
}

fn jamteams(args: &[&str]) -> Output {
    jamteams_with_env(args, &[])
}

fn jamteams_with_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_jamteams"));
    cmd.args(args).env_remove("JAMTEAMS_THREADS");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn three_sizes() -> String {
    scenarios().join("three_sizes.toml").display().to_string()
}

fn write_variant(dir: &Path, name: &str, from: &str, to: &str) -> String {
    let text = fs::read_to_string(scenarios().join("three_sizes.toml")).unwrap();
    assert!(text.contains(from));
    let path = dir.join(name);
    fs::write(&path, text.replace(from, to)).unwrap();
    path.display().to_string()
}

#[test]
fn power_reports_fractions_and_value() {
    let o = jamteams(&["power", &three_sizes(), "--ma", "256", "--mb", "256"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    for label in ["1a,", "2a,", "1b,", "2b,", "value: ", "converged: true", "existence condition: holds"] {
        assert!(out.contains(label), "missing {label} in\n{out}");
    }
}

#[test]
fn power_iteration_cap_exits_2() {
    let o = jamteams(&["power", &three_sizes(), "--ma", "256", "--mb", "64", "--max-iter", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("converged: false"));
}

#[test]
fn malformed_key_exits_1_with_location() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_variant(dir.path(), "bad.toml", "p_max = 100.0", "pmax = 100.0");
    let o = jamteams(&["power", &path, "--ma", "16", "--mb", "16"]);
    assert_eq!(o.status.code(), Some(1));
    let err = stderr(&o);
    assert!(err.contains("line 18") && err.contains("pmax"), "{err}");
}

#[test]
fn invalid_value_names_the_key() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_variant(dir.path(), "bad.toml", "sigma2 = 1e-3", "sigma2 = -1e-3");
    let o = jamteams(&["check", &path]);
    assert_eq!(o.status.code(), Some(1));
    let err = stderr(&o);
    assert!(err.contains("channel.sigma2") && err.contains("line 13"), "{err}");
}

#[test]
fn bad_arguments_exit_1() {
    assert_eq!(jamteams(&["power", &three_sizes()]).status.code(), Some(1));
    assert_eq!(jamteams(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(jamteams(&["check", "/no/such/file.toml"]).status.code(), Some(1));
    assert_eq!(jamteams(&["--help"]).status.code(), Some(0));
}

#[test]
fn matrix_csv_and_report() {
    let o = jamteams(&["matrix", &three_sizes()]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "Ma/Mb,16,64,256");
    assert_eq!(lines.len(), 4);
    assert!(lines[3].starts_with("256,"));
    assert!(stderr(&o).contains("equilibrium: pure, {256,256}"), "{}", stderr(&o));
}

#[test]
fn matrix_strict_refusal_names_the_pair() {
    let o = jamteams(&["matrix", &three_sizes(), "--strict", "--max-iter", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).is_empty());
    assert!(stderr(&o).contains("modulation pair ("), "{}", stderr(&o));
}

#[test]
fn matrix_one_by_one() {
    let dir = tempfile::tempdir().unwrap();
    let text = fs::read_to_string(scenarios().join("three_sizes.toml"))
        .unwrap()
        .replace("team_a = [16, 64, 256]", "team_a = [64]")
        .replace("team_b = [16, 64, 256]", "team_b = [16]");
    let path = dir.path().join("one.toml");
    fs::write(&path, text).unwrap();
    let o = jamteams(&["matrix", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 2);
    assert!(stderr(&o).contains("pure, {64,16}"));
}

#[test]
fn matrix_from_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("pennies.csv");
    fs::write(&path, "Ma/Mb,4,16\n4,1,-1\n16,-1,1\n").unwrap();
    let o = jamteams(&["matrix", "--from-csv", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stderr(&o).contains("mixed, A [4:0.5 16:0.5], B [4:0.5 16:0.5], 0"), "{}", stderr(&o));
}

#[test]
fn sweep_empty_range_is_header_only() {
    let o = jamteams(&["sweep", &three_sizes(), "--snr-from", "50", "--snr-to", "40"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "snr_db,Ma,Mb,value,kind,certified\n");
}

#[test]
fn sweep_output_is_identical_across_thread_counts() {
    let args = ["sweep", &three_sizes(), "--snr-from", "10", "--snr-to", "40", "--snr-step", "5"];
    let one = jamteams_with_env(&args, &[("JAMTEAMS_THREADS", "1")]);
    let four = jamteams_with_env(&args, &[("JAMTEAMS_THREADS", "4")]);
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(stdout(&one).lines().count(), 8);
    let bad = jamteams_with_env(&args, &[("JAMTEAMS_THREADS", "zero")]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn run_static_trajectory() {
    let dir = tempfile::tempdir().unwrap();
    let scenario = write_variant(dir.path(), "short.toml", "energy = 100.0", "energy = 200.0");
    let traj = dir.path().join("static.csv");
    fs::write(&traj, "t,d11,d12,d21,d22,dA,dB\n0,17.7864,15.3376,19.8951,14.1128,20.6309,26.3224\n2,17.7864,15.3376,19.8951,14.1128,20.6309,26.3224\n").unwrap();
    let o = jamteams(&["run", &scenario, traj.to_str().unwrap(), "--bits", "1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "t,Ma,Mb,L,pi_cum,certified");
    let fields: Vec<&str> = lines[1].split(',').collect();
    let value: f64 = fields[3].parse().unwrap();
    let pi: f64 = fields[4].parse().unwrap();
    // horizon is 2 s
    assert!((pi - 2.0 * value).abs() <= 1e-9 * value.abs().max(1.0));
    assert_eq!(fields[5], "true");
}

#[test]
fn run_rejects_bad_trajectory() {
    let dir = tempfile::tempdir().unwrap();
    let traj = dir.path().join("bad.csv");
    fs::write(&traj, "t,d11,d12,d21,d22,dA,dB\n0,1,1,1,1,1,1\n0.5,1,1,oops,1,1,1\n").unwrap();
    let o = jamteams(&["run", &three_sizes(), traj.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));
}

#[test]
fn check_lists_every_pair() {
    let o = jamteams(&["check", &three_sizes()]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 10);
    assert!(out.lines().skip(1).all(|l| l.split(',').nth(2) == Some("true")));
}

#[test]
fn dump_config_round_trips() {
    let original = parse_scenario(&fs::read_to_string(scenarios().join("three_sizes.toml")).unwrap()).unwrap();
    let o = jamteams(&["check", "--dump-config", &three_sizes()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(parse_scenario(&stdout(&o)).unwrap(), original);

    // antenna gains are dumped as the constants they produce
    let dir = tempfile::tempdir().unwrap();
    let text = fs::read_to_string(scenarios().join("three_sizes.toml"))
        .unwrap()
        .replace("rho_a = 0.0570\n", "")
        .replace("[power]", "[channel.team_a]\ngain_tx = 2.0\ngain_rx = 1.5\nfreq_hz = 2.4e9\n\n[power]");
    let path = dir.path().join("gains.toml");
    fs::write(&path, &text).unwrap();
    let path = path.display().to_string();
    let parsed = parse_scenario(&text).unwrap();
    let o = jamteams(&["check", "--dump-config", &path]);
    assert_eq!(parse_scenario(&stdout(&o)).unwrap(), parsed);
}

#[test]
fn sweep_scenario_file_parses() {
    let text = fs::read_to_string(scenarios().join("snr_sweep.toml")).unwrap();
    let c = parse_scenario(&text).unwrap();
    assert_eq!(c.menu_a, vec![16, 20, 24, 28]);
}
