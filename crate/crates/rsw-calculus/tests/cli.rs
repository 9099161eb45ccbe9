use std::path::{Path, PathBuf};
use std::process::Command;

use rsw_calculus::cli::{self, load, save};
use rsw_calculus::model::{catalog, k3, RealFourManifold};
use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let mut full = vec!["rsw"];
    full.extend_from_slice(args);
    let code = cli::run(full, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(
        Path::new(env!("CARGO_MANIFEST_DIR"))
            .join("tests/golden")
            .join(name),
    )
    .unwrap()
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_rsw"))
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn check_catalog_entry_is_clean() {
    let (code, out, err) = run(&["check", "K3"]);
    assert_eq!(code, 0, "{err}");
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["sections"][0]["violations"], Value::Array(vec![]));
    assert!(err.is_empty());
}

#[test]
fn check_whole_catalog() {
    let names: Vec<String> = catalog().into_iter().map(|m| m.name).collect();
    let mut args = vec!["check"];
    args.extend(names.iter().map(String::as_str));
    let (code, out, _) = run(&args);
    assert_eq!(code, 0, "{out}");
}

#[test]
fn fibersum_matches_golden() {
    let (code, out, _) = run(&["fibersum", "K3", "K3"]);
    assert_eq!(code, 0);
    assert_eq!(out, golden("fibersum_K3_K3.json"));
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["sections"][0]["result"]["summary"]["sw_int"], "±(2)");
}

#[test]
fn text_reports_match_golden() {
    assert_eq!(
        run(&["exotic-family", "--a0", "2", "--n", "5", "--format", "text"]).1,
        golden("exotic_a0_2_n5.txt")
    );
    assert_eq!(
        run(&["check", "K3", "--format", "text"]).1,
        golden("check_K3.txt")
    );
}

#[test]
fn exotic_family_values() {
    let (code, out, _) = run(&["exotic-family", "--a0", "2", "--n", "5"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    let rows = &v["sections"][0]["result"]["rows"];
    let firsts: Vec<u64> = (0..=5)
        .map(|n| rows[n.to_string()][0].as_u64().unwrap())
        .collect();
    assert_eq!(firsts, [2, 6, 18, 54, 162, 486]);
    let (code, out, _) = run(&["exotic-family", "--from", "M2", "--n", "3"]);
    assert_eq!(code, 0);
    assert!(out.contains("\"r\": 3"), "{out}");
    assert_eq!(run(&["exotic-family", "--a0", "0", "--n", "3"]).0, 2);
}

#[test]
fn reports_are_deterministic() {
    for args in [
        &["check", "K3", "S4", "CP2bar"][..],
        &["sum", "K3", "CP2bar"],
        &["localize", "K3"],
        &["admissible", "K3"],
    ] {
        let a = run(args);
        let b = run(args);
        assert_eq!(a, b, "{args:?}");
    }
}

#[test]
fn load_save_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let (code, _, err) = run(&["catalog", "--dump", dir.path().to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    for m in catalog() {
        let p = dir.path().join(format!("{}.rswm.json", m.name));
        let first = std::fs::read_to_string(&p).unwrap();
        let loaded = load(&p).unwrap();
        assert_eq!(loaded, m);
        let q = dir.path().join("again.json");
        save(&loaded, &q).unwrap();
        assert_eq!(std::fs::read_to_string(&q).unwrap(), first);
    }
    let (_, printed, _) = run(&["catalog", "K3"]);
    assert_eq!(RealFourManifold::from_json(&printed).unwrap(), k3());
}

#[test]
fn malformed_field_reports_pointer() {
    let dir = tempfile::tempdir().unwrap();
    let text = k3().to_json().replace("\"c_squared\"", "\"c_sqared\"");
    let p = write(dir.path(), "typo.rswm.json", &text);
    let (code, out, err) = run(&["check", p.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.contains("/spinc/0/c_sqared"), "{err}");
}

#[test]
fn wrong_degree_is_a_violation() {
    let mut m = k3();
    let one = m.spinc[0].sw_mod2[&rsw_calculus::model::Chamber::Unique][&0].clone();
    m.spinc[0]
        .sw_mod2
        .get_mut(&rsw_calculus::model::Chamber::Unique)
        .unwrap()
        .insert(1, one);
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "bad.rswm.json", &m.to_json());
    let (code, out, err) = run(&["check", p.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(out.contains("sw_mod2.unique.1"), "{out}");
    assert!(err.contains("violation"));
}

#[test]
fn precondition_failures_exit_2() {
    let (code, out, err) = run(&["fibersum", "K3", "S4"]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.contains("S4") && err.contains("torus"), "{err}");
    assert_eq!(run(&["wallcross", "K3"]).0, 2);
    assert_eq!(run(&["check"]).0, 2);
    assert_eq!(run(&["check", "K3", "--bogus"]).0, 2);
    assert_eq!(run(&["sum", "K3", "K3", "--chamber", "positive"]).0, 2);
}

#[test]
fn sample_inputs() {
    let (code, out, _) = run(&["wallcross", &data("wall_d3.rswm.json")]);
    assert_eq!(code, 0, "{out}");
    let (code, out, _) = run(&["localize", &data("b1_one.rswm.json"), "--swr", "s0=1,s1=0"]);
    assert_eq!(code, 1, "{out}");
    let (code, out, _) = run(&["localize", &data("b1_one.rswm.json"), "--swr", "s0=1,s1=1"]);
    assert_eq!(code, 0);
    assert!(out.contains("ordinary_sw_mod2.0"));
    let dir = tempfile::tempdir().unwrap();
    let emitted = dir.path().join("xx.rswm.json");
    let (code, out, _) = run(&[
        "selfsum",
        &data("x_bplus3_d2.ordinary.json"),
        "--emit",
        emitted.to_str().unwrap(),
        "--format",
        "text",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("summary.sw_mod2.unique.1  1"), "{out}");
    assert_eq!(run(&["check", emitted.to_str().unwrap()]).0, 0);
}

#[test]
fn admissible_verdicts() {
    let (_, out, _) = run(&["admissible", "K3", "--format", "text"]);
    assert!(out.contains("witness.case           OddSW"), "{out}");
    assert!(out.contains("even_nonzero"));
    let (_, out, _) = run(&["admissible", "CP2bar"]);
    assert!(
        out.contains("\"CP2bar\"") && out.contains("\"odd\""),
        "{out}"
    );
}

#[test]
fn output_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("r.txt");
    let (code, out, _) = run(&[
        "check",
        "K3",
        "--format",
        "text",
        "--output",
        p.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    assert_eq!(std::fs::read_to_string(&p).unwrap(), golden("check_K3.txt"));
}

#[test]
fn binary_exit_codes_and_streams() {
    let o = bin()
        .args(["exotic-family", "--a0", "2", "--n", "5", "--format", "text"])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        String::from_utf8(o.stdout).unwrap(),
        golden("exotic_a0_2_n5.txt")
    );
    let o = bin().args(["check", "NoSuchThing"]).output().unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
    assert!(String::from_utf8(o.stderr).unwrap().contains("NoSuchThing"));
}

#[test]
fn catalog_dir_override() {
    let dir = tempfile::tempdir().unwrap();
    let mut m = k3();
    m.name = "MyK3".into();
    save(&m, &dir.path().join("mine.rswm.json")).unwrap();
    let o = bin()
        .env("RSW_CATALOG_DIR", dir.path())
        .args(["check", "MyK3"])
        .output()
        .unwrap();
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let o = bin()
        .env("RSW_CATALOG_DIR", dir.path())
        .args(["check", "K3"])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    let o = bin()
        .env("RSW_CATALOG_DIR", dir.path())
        .args(["catalog", "--format", "text"])
        .output()
        .unwrap();
    let listing = String::from_utf8(o.stdout).unwrap();
    assert!(
        listing.contains("MyK3") && !listing.contains("CP2bar"),
        "{listing}"
    );
}
