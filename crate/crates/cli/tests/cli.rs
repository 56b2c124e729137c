use std::fs;
use std::path::Path;
use std::process::{Command, Output};

const CHAIN: &str = "[chain]\nL = 2\nJ = 1.0\nDelta = 1.0\nOmega = 2.0\n";

fn lab(dir: &Path, args: &[&str], config: &str) -> Output {
    let cfg = dir.join("in.toml");
    fs::write(&cfg, config).unwrap();
    Command::new(env!("CARGO_BIN_EXE_lightcone-lab"))
        .args(args)
        .arg("--config")
        .arg(&cfg)
        .env_remove("LIGHTCONE_LAB_OUT")
        .current_dir(dir)
        .output()
        .unwrap()
}

fn with_out(dir: &Path, cmd: &str, config: &str) -> Output {
    let out = dir.join("out");
    lab(dir, &[cmd, "--jobs", "1", "--out", out.to_str().unwrap()], config)
}

fn small_identities(corrupt: bool) -> String {
    format!("{CHAIN}[identities]\nl = 2\ndeltas = [1.0]\ntimes = [0.5]\ndraws = 3\njw_max_l = 3\ncorrupt_c2 = {corrupt}\n")
}

#[test]
fn identities_pass_and_corruption_is_caught() {
    let dir = tempfile::tempdir().unwrap();
    let ok = with_out(dir.path(), "verify-identities", &small_identities(false));
    assert_eq!(ok.status.code(), Some(0), "{}", String::from_utf8_lossy(&ok.stderr));
    let table = fs::read_to_string(dir.path().join("out/identities.csv")).unwrap();
    assert!(table.starts_with("group,name,kind,value,target,tol,passed"));
    assert!(table.contains("interaction_picture"));

    let bad = with_out(dir.path(), "verify-identities", &small_identities(true));
    assert_eq!(bad.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("interaction_picture"));
}

#[test]
fn config_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let out = with_out(dir.path(), "lightcone", "[chain]\nL = 1\nJ = 1.0\nDelta = 0.0\nOmega = 1.0\n");
    assert_eq!(out.status.code(), Some(2));
    let out = with_out(dir.path(), "lightcone", "not toml [");
    assert_eq!(out.status.code(), Some(2));
    let missing = Command::new(env!("CARGO_BIN_EXE_lightcone-lab")).arg("lightcone").current_dir(dir.path()).output().unwrap();
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn scan_is_deterministic_and_checks_bounds() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = format!("{CHAIN}[run]\nrealizations = 4\nt_max = 2.0\npoints = 5\n[scan]\ndeltas = [0.5, 20.0]\nK = 4.0\nxi = 1.5\n");
    let first = with_out(dir.path(), "scan-delta", &cfg);
    assert_eq!(first.status.code(), Some(0), "{}", String::from_utf8_lossy(&first.stderr));
    let read = |name: &str| fs::read(dir.path().join("out").join(name)).unwrap();
    let (curves, bounds) = (read("scan_curves.csv"), read("scan_bounds.csv"));
    let again = with_out(dir.path(), "scan-delta", &cfg);
    assert_eq!(again.status.code(), Some(0));
    assert_eq!(curves, read("scan_curves.csv"));
    assert_eq!(bounds, read("scan_bounds.csv"));
    let text = String::from_utf8(bounds).unwrap();
    assert!(text.starts_with("t,lhs_mean,lhs_stderr,rhs,bound_id,l,d,Delta,Omega,J,R,seed"));
    assert_eq!(text.lines().count(), 1 + 2 * 2 * 5);
    assert!(String::from_utf8(read("scan.svg")).unwrap().contains("<polyline"));

    // a tiny K makes the small-Delta bound fail at t = 0
    let tight = cfg.replace("K = 4.0", "K = 1e-9");
    assert_eq!(with_out(dir.path(), "scan-delta", &tight).status.code(), Some(3));
}

#[test]
fn seed_flag_changes_output() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = format!("{CHAIN}[run]\nrealizations = 2\nt_max = 1.0\npoints = 3\n");
    let out = dir.path().join("out");
    let run = |seed: &str| {
        let o = lab(dir.path(), &["scan-delta", "--seed", seed, "--out", out.to_str().unwrap()], &cfg);
        assert_eq!(o.status.code(), Some(0));
        fs::read_to_string(out.join("scan_curves.csv")).unwrap()
    };
    assert_ne!(run("1"), run("2"));
    assert_eq!(run("5"), run("5"));
}

#[test]
fn output_directory_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("env-out");
    let cfg_path = dir.path().join("in.toml");
    fs::write(&cfg_path, format!("{CHAIN}[run]\nrealizations = 2\nt_max = 3.0\npoints = 31\n")).unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_lightcone-lab"))
        .args(["lightcone", "--config"])
        .arg(&cfg_path)
        .env("LIGHTCONE_LAB_OUT", &target)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let table = fs::read_to_string(target.join("lightcone.csv")).unwrap();
    assert_eq!(table.lines().count(), 1 + 4);
    assert!(target.join("lightcone.svg").exists());
    assert!(target.join("config.toml").exists());
}

#[test]
fn fit_writes_key_value_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = "[chain]\nL = 3\nJ = 1.0\nDelta = 0.0\nOmega = 8.0\n[run]\nt_max = 5.0\n[fit]\ndistances = [1, 2, 3, 4]\nrealizations = 20\npoints = 26\n";
    let o = with_out(dir.path(), "fit-anderson", cfg);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let fit: toml::Table = fs::read_to_string(dir.path().join("out/fit.toml")).unwrap().parse().unwrap();
    for key in ["K", "xi", "residual", "omega", "J", "R", "seed"] {
        assert!(fit.contains_key(key), "{key}");
    }
    assert!(fit["xi"].as_float().unwrap() > 0.0);

    // the fit file feeds the scan
    let scan = format!("[chain]\nL = 3\nJ = 1.0\nDelta = 1.0\nOmega = 8.0\n[run]\nrealizations = 3\nt_max = 1.0\npoints = 3\n[scan]\nfit_file = {:?}\n", dir.path().join("out/fit.toml"));
    let o = with_out(dir.path(), "scan-delta", &scan);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn unlocalized_fit_is_a_convergence_failure() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = "[chain]\nL = 3\nJ = 1.0\nDelta = 0.0\nOmega = 0.0\n[run]\nt_max = 20.0\n[fit]\ndistances = [1, 2, 3]\nrealizations = 1\npoints = 201\n";
    assert_eq!(with_out(dir.path(), "fit-anderson", cfg).status.code(), Some(4));
}

#[test]
fn induction_table_small() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = format!("{CHAIN}[induction]\nL = 3\ndts = [0.2]\nj_max = 2\n");
    let o = with_out(dir.path(), "appendix-induction", &cfg);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let table = fs::read_to_string(dir.path().join("out/induction.csv")).unwrap();
    assert_eq!(table.lines().count(), 1 + 2 * 2);
    assert!(table.lines().skip(1).all(|l| l.ends_with("true")));
}
