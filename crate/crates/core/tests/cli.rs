use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nucleus-kit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_on(args: &[&str], file: &str) -> Output {
    let path = data(file);
    let mut all: Vec<&str> = args.to_vec();
    all.push(path.to_str().unwrap());
    run(&all)
}

fn json(o: &Output) -> Value {
    assert!(
        o.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&o.stderr)
    );
    serde_json::from_slice(&o.stdout).expect("JSON on stdout")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn nucleus_examples() {
    assert_eq!(
        json(&run_on(&["nucleus"], "identity2.cxt"))["concepts"]
            .as_array()
            .unwrap()
            .len(),
        4
    );
    assert_eq!(
        json(&run_on(&["nucleus"], "empty.cxt"))["concepts"]
            .as_array()
            .unwrap()
            .len(),
        1
    );
    assert_eq!(
        json(&run_on(&["nucleus"], "ones3.cxt"))["concepts"]
            .as_array()
            .unwrap()
            .len(),
        1
    );
    let dot = run_on(&["nucleus", "--format", "dot"], "identity2.cxt");
    assert!(String::from_utf8_lossy(&dot.stdout).starts_with("digraph"));
}

#[test]
fn nucleus_golden() {
    let out = run_on(&["nucleus"], "identity2.cxt");
    let golden = std::fs::read_to_string(data("identity2.nucleus.json")).unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap(), golden);
}

#[test]
fn parse_errors_exit_two_with_position() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.cxt");
    std::fs::write(&bad, "B\n\n2\nx\n").unwrap();
    let o = run(&["nucleus", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 4, column 1"), "{}", stderr(&o));
    assert_eq!(run(&["nucleus", "/nonexistent.cxt"]).status.code(), Some(2));
}

#[test]
fn dm_examples() {
    assert_eq!(
        json(&run_on(&["dm"], "antichain2.json"))["cuts"]
            .as_array()
            .unwrap()
            .len(),
        4
    );
    assert_eq!(
        json(&run_on(&["dm"], "chain3.json"))["cuts"]
            .as_array()
            .unwrap()
            .len(),
        3
    );
    let o = run_on(&["dm"], "cyclic.json");
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("antisymmetric"));
}

#[test]
fn verify_zp_reports_the_example() {
    let r = json(&run(&["verify", "--suite", "zp", "--max-size", "2"]));
    let claims = r["claims"].as_array().unwrap();
    assert!(claims.iter().all(|c| c["pass"] == true));
    assert!(claims.iter().any(|c| c["id"] == "zp.example"));
}

#[test]
fn verify_posets_passes() {
    let r = json(&run(&["verify", "--suite", "posets", "--max-size", "5"]));
    assert!(r["claims"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["pass"] == true));
}

#[test]
fn conjectures_are_evidence_and_exit_zero() {
    let r = json(&run(&["verify", "--suite", "conjectures"]));
    let claims = r["claims"].as_array().unwrap();
    assert!(claims.len() >= 20);
    assert!(claims
        .iter()
        .all(|c| c["kind"] == "evidence" && c["evidence"].is_object()));
}

#[test]
fn constants_suite_exits_one() {
    // the tight readings for R = 0 and R = 2 do not give the expected cells
    let o = run(&["verify", "--suite", "constants"]);
    assert_eq!(o.status.code(), Some(1));
    let r: Value = serde_json::from_slice(&o.stdout).unwrap();
    let failing: Vec<&str> = r["claims"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["pass"] == false)
        .map(|c| c["id"].as_str().unwrap())
        .collect();
    assert_eq!(failing, ["constants.0.tight", "constants.2.tight"]);
}

#[test]
fn unknown_suite_and_bad_flags_exit_two() {
    assert_eq!(run(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(
        run(&["verify", "--suite", "zp", "--eps", "-1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn output_does_not_depend_on_jobs() {
    let one = run(&["verify", "--suite", "quantale", "--jobs", "1"]);
    let four = run(&["verify", "--suite", "quantale", "--jobs", "4"]);
    assert!(one.status.success());
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn extend_order_matrix_gives_the_cuts() {
    let e = json(&run_on(&["extend"], "order_n.json"));
    let tight: u64 = e["tight"]
        .as_array()
        .unwrap()
        .iter()
        .flat_map(|r| r.as_array().unwrap())
        .map(|v| v.as_u64().unwrap())
        .sum();
    // N has six cuts
    assert_eq!(tight, 6);
}

#[test]
fn extend_constant_two() {
    let e = json(&run_on(&["extend", "--max-set", "65536"], "constant2.json"));
    assert_eq!(e["tight"], e["loose"]);
    // past the default component cap
    assert_eq!(run_on(&["extend"], "constant2.json").status.code(), Some(3));
}

#[test]
fn extend_hom_z2_with_witnesses() {
    let cat = data("z2.category.json");
    let e = json(&run_on(
        &[
            "extend",
            "--algebras",
            "free",
            "--witnesses",
            "--category",
            cat.to_str().unwrap(),
        ],
        "hom_z2.json",
    ));
    let w = e["witnesses"].as_array().unwrap();
    assert!(!w.is_empty());
    assert!(w.iter().all(|c| !c["loose"].as_array().unwrap().is_empty()));
    assert_eq!(run_on(&["extend"], "hom_z2.json").status.code(), Some(2));
}

#[test]
fn qnucleus_exact() {
    let r = json(&run_on(&["qnucleus"], "q2.json"));
    assert_eq!(r["mode"], "exact");
    assert!(!r["pairs"].as_array().unwrap().is_empty());
}

#[test]
fn convert_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let j = run_on(&["convert", "--format", "json"], "identity2.cxt");
    assert!(j.status.success());
    let jp = dir.path().join("c.json");
    std::fs::write(&jp, &j.stdout).unwrap();
    let back = run(&["convert", "--format", "cxt", jp.to_str().unwrap()]);
    assert_eq!(
        String::from_utf8(back.stdout).unwrap(),
        std::fs::read_to_string(data("identity2.cxt")).unwrap()
    );
}

#[test]
fn emitted_json_reparses_to_equal_text() {
    for (args, file) in [
        (vec!["nucleus"], "identity2.cxt"),
        (vec!["dm"], "antichain2.json"),
        (vec!["extend"], "order_antichain2.json"),
        (vec!["qnucleus"], "q2.json"),
    ] {
        let o = run_on(&args, file);
        let text = String::from_utf8(o.stdout).unwrap();
        let v: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(
            serde_json::to_string_pretty(&v).unwrap() + "\n",
            text,
            "{file}"
        );
    }
}
