use std::path::Path;
use std::process::{Command, Output};

fn biolink(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_biolink")).args(args).env_remove("BIOLINK_SEED").output().expect("spawn biolink")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn table3_cfg() -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs/table3.cfg").display().to_string()
}

const FAST_MAC: &[&str] = &["--set", "trials=10", "--set", "cdma_n_motes=1,5,20", "--set", "cdma_code_lengths=16,32"];

#[test]
fn link_sweep_writes_csv() {
    let out = biolink(&["link-sweep"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("distance_m,p_re_dbm,snr_db"));
    assert_eq!(lines.count(), 10);
}

#[test]
fn every_subcommand_prints_its_header() {
    let cases: &[(&str, &str)] = &[
        ("table1", "resonance_freq_hz,mu,subcarrier_divider"),
        ("mac-cdma", "n_motes,code_len,family,mean_successes"),
        ("mac-compare", "n_motes,duration_slots,scheme,mean_successes"),
        ("mac-scenario1", "rate_bps,read_time_s,packet_bytes,max_motes"),
    ];
    for (sub, header) in cases {
        let mut args = vec![*sub];
        args.extend_from_slice(FAST_MAC);
        let out = biolink(&args);
        assert!(out.status.success(), "{sub}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(stdout(&out).starts_with(header), "{sub}");
    }
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.csv");
    let out = biolink(&["link-sweep", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    assert!(std::fs::read_to_string(&path).unwrap().starts_with("distance_m,"));
}

#[test]
fn config_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.cfg");
    std::fs::write(&bad, "# comment\nsweep_step_m = -1\n").unwrap();
    for args in [
        vec!["link-sweep", "--set", "bogus=1"],
        vec!["link-sweep", "--config", "/definitely/missing.cfg"],
        vec!["link-sweep", "--set", "reader_turns=abc"],
        vec!["link-sweep", "--config", bad.to_str().unwrap()],
    ] {
        let out = biolink(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(String::from_utf8_lossy(&out.stderr).starts_with("biolink: "));
    }
}

#[test]
fn runtime_errors_exit_with_three() {
    let out = biolink(&["link-sweep", "--set", "sweep_start_m=1e-6"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn reference_config_loads() {
    let out = biolink(&["link-sweep", "--config", &table3_cfg()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).contains("0.0500,-93.8"));
}

#[test]
fn set_overrides_config_file() {
    let out = biolink(&[
        "link-sweep",
        "--config",
        &table3_cfg(),
        "--set",
        "sweep_start_m=0.05",
        "--set",
        "sweep_stop_m=0.05",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().count(), 2);
}

#[test]
fn seed_flag_and_env_agree() {
    let mut args = vec!["mac-cdma", "--seed", "0x2a"];
    args.extend_from_slice(FAST_MAC);
    let by_flag = biolink(&args);

    let mut args = vec!["mac-cdma"];
    args.extend_from_slice(FAST_MAC);
    let by_env = Command::new(env!("CARGO_BIN_EXE_biolink")).args(&args).env("BIOLINK_SEED", "42").output().unwrap();
    let default = biolink(&args);

    assert!(by_flag.status.success() && by_env.status.success());
    assert_eq!(by_flag.stdout, by_env.stdout);
    assert_ne!(by_flag.stdout, default.stdout);
}

#[test]
fn repeated_runs_are_identical() {
    let mut args = vec!["mac-scenario2", "--set", "scenario2_n_motes=10:40:170", "--set", "read_times_s=4"];
    args.extend_from_slice(FAST_MAC);
    let a = biolink(&args);
    let b = biolink(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn help_lists_schemas_and_keys() {
    let out = biolink(&["--help"]);
    let text = stdout(&out);
    assert!(text.contains("distance_m,scheme,code,ber,bits"));
    assert!(text.contains("reader_turns"));
    assert!(text.contains("Exit status"));
}
