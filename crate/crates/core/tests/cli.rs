mod common;

use std::process::Command;

use freerank::catalog;
use freerank::report::{run_tower, Config, HomologyEntry, TowerReport};

fn freerank(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_freerank")).args(args).output().unwrap()
}

#[test]
fn exit_codes() {
    assert_eq!(freerank(&["ball", "--radius", "3"]).status.code(), Some(0));
    assert_eq!(freerank(&["level", "--p", "3", "--i", "1"]).status.code(), Some(0));
    assert_eq!(freerank(&["check", "claim2", "--radius", "2"]).status.code(), Some(0));
    // usage errors
    assert_eq!(freerank(&["ball"]).status.code(), Some(2));
    assert_eq!(freerank(&["nonsense"]).status.code(), Some(2));
    assert_eq!(freerank(&["level", "--p", "9", "--i", "1"]).status.code(), Some(2));
    assert_eq!(freerank(&["level", "--p", "2", "--i", "1"]).status.code(), Some(2));
    assert_eq!(freerank(&["ball", "--radius", "1", "--catalog", "trefoil"]).status.code(), Some(2));
}

#[test]
fn subcommand_output() {
    let out = freerank(&["field", "--min-poly", "1,-1,1", "--primes", "3,5,7"]);
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.contains("discriminant -3"), "{s}");
    assert!(s.contains("p = 5: factor"));
    let out = freerank(&["ball", "--radius", "3"]);
    assert!(String::from_utf8(out.stdout).unwrap().contains("[1, 4, 12, 36]"));
    let out = freerank(&["homology", "--p", "3", "--i", "1"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["dim_h1"], 36);
}

#[test]
fn tower_is_deterministic_and_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let args = ["tower", "--p", "3", "--levels", "1", "--r-max", "5", "--json", "--out", d];
    let a = freerank(&args);
    let b = freerank(&args);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
    let report: TowerReport = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(report.levels[0].n_i, 648);
    assert_eq!(report.to_json().unwrap().as_bytes(), &a.stdout[..]);
    let written = std::fs::read(dir.path().join("tower.json")).unwrap();
    assert_eq!(written, a.stdout);
    assert!(dir.path().join("tower.txt").exists());
}

#[test]
fn config_file_and_flags_layer() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.json");
    std::fs::write(&cfg, r#"{"p": 5, "levels": [1], "r_max": 4}"#).unwrap();
    let out = freerank(&["tower", "--config", cfg.to_str().unwrap(), "--p", "3", "--json"]);
    let report: TowerReport = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report.config.p, 3);
    assert_eq!(report.config.r_max, 4);
    std::fs::write(&cfg, r#"{"p": 3, "colour": "red"}"#).unwrap();
    let out = freerank(&["tower", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn no_presentation_means_no_certificate() {
    let json = common::SANOV_JSON.replace("\"free\": true,", "");
    let g = freerank::group::load_group(&json).unwrap();
    let over = serde_json::json!({"p": 3, "levels": [1], "r_max": 4});
    let cfg = Config::resolve(&g, over.as_object().unwrap()).unwrap();
    let r = run_tower(&g, &cfg).unwrap();
    let l = &r.levels[0];
    assert!(matches!(&l.dim_h1, HomologyEntry::NotAvailable(s) if s.starts_with("n/a")));
    assert!(l.certificate.is_none());
    assert!(l.conditional_free_rank.is_none());
    assert!(!r.has_falsification());
}

#[test]
fn library_tower_matches_cli() {
    let g = catalog::figure_eight();
    let over = serde_json::json!({"p": 3, "levels": [1], "r_max": 5});
    let cfg = Config::resolve(&g, over.as_object().unwrap()).unwrap();
    let r = run_tower(&g, &cfg).unwrap();
    let out = freerank(&["tower", "--p", "3", "--levels", "1", "--r-max", "5", "--json"]);
    assert_eq!(r.to_json().unwrap().as_bytes(), &out.stdout[..]);
    let l = &r.levels[0];
    assert!(matches!(&l.dim_h1, HomologyEntry::Computed(h) if h.dim_h1 == 36));
    assert_eq!(l.conditional_free_rank, Some(34));
    assert!(l.certificate.is_some());
}
