use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_silting")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut all = vec!["--format", "json"];
    all.extend_from_slice(args);
    let o = run(&all);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).expect("valid JSON")
}

/// A scratch directory unique to this test.
fn scratch(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("silting-cli-{tag}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn parse_builtin_algebra() {
    let o = run(&["parse", "ALG-A3"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("dimension: 6"), "{s}");
    assert!(s.contains("relations: none"), "{s}");
    let v = json(&["parse", "ALG-GEN4"]);
    assert_eq!(v["dim"], 8);
    assert_eq!(v["relations"].as_array().unwrap().len(), 2);
}

#[test]
fn parse_errors_carry_position_and_exit_2() {
    let dir = scratch("bad");
    let path = dir.join("bad.alg");
    std::fs::write(&path, "algebra X\nfield 2\nvertices 1 2\narrow a : 2 -> 7\n").unwrap();
    let o = run(&["parse", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains(":4:"), "{err}");
    assert_eq!(run(&["parse", "NO-SUCH-THING"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn indecomposables_of_a3() {
    let v = json(&["indec", "ALG-A3"]);
    assert_eq!(v["count"], 6);
    assert_eq!(v["complete"], true);
    let s = stdout(&run(&["indec", "ALG-A3"]));
    assert!(s.contains("{1, 2, 3}"), "{s}");
}

#[test]
fn text_and_json_verdicts_agree() {
    let s = stdout(&run(&["silting", "P-43"]));
    let text: BTreeSet<(String, String)> = s
        .lines()
        .filter_map(|l| l.trim().strip_prefix('['))
        .map(|l| {
            let (verdict, name) = l.split_once("] ").expect("verdict line");
            let verdict = verdict.split(' ').next().unwrap().to_string();
            (name.to_string(), verdict)
        })
        .collect();
    let v = json(&["silting", "P-43"]);
    let from_json: BTreeSet<(String, String)> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| (c["name"].as_str().unwrap().to_string(), c["verdict"]["verdict"].as_str().unwrap().to_string()))
        .collect();
    assert!(!text.is_empty());
    assert_eq!(text, from_json);
}

#[test]
fn verify_example_and_scan() {
    let o = run(&["verify", "--example", "P-43"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let s = stdout(&o);
    assert!(s.contains("tilting modules over ALG-A3: 5 (all), inducing T(P): 0"), "{s}");
    assert!(!s.contains("[fail"), "{s}");
    let v = json(&["verify", "--scan", "ALG-A3"]);
    assert_eq!(v["count"], 14);
    assert_eq!(run(&["verify"]).status.code(), Some(2));
}

#[test]
fn reference_names_b_modules() {
    let v = json(&["silting", "P-42", "--reference", "ALG-A3-TILDE"]);
    assert_eq!(v["b_isomorphic_to_reference"], true);
    assert_eq!(v["separating"], true);
    assert_eq!(v["rep_dim_b"]["value"], 3);
}

#[test]
fn repdim_and_tilting_scan() {
    let v = json(&["repdim", "ALG-A3"]);
    assert_eq!(v["rep_dim"]["value"], 2);
    let v = json(&["tilting-scan", "ALG-A3", "--against", "P-43"]);
    assert_eq!(v["modules"].as_array().unwrap().len(), 5);
    assert_eq!(v["matches"].as_array().unwrap().len(), 0);
}

#[test]
fn fixtures_dir_and_over_header() {
    let dir = scratch("fixtures");
    std::fs::write(
        dir.join("STALK.cpx"),
        "complex STALK over ALG-A3\ndeg -1: P(1) + P(2) + P(3)\ndeg 0:\n",
    )
    .unwrap();
    let d = dir.to_str().unwrap();
    let v = json(&["--fixtures-dir", d, "silting", "STALK"]);
    assert_eq!(v["silting"], true);
    assert_eq!(v["torsion"].as_array().unwrap().len(), 0);
    // not silting: a usage error
    std::fs::write(dir.join("HALF.cpx"), "complex HALF over ALG-A3\ndeg -1:\ndeg 0: P(1)\n").unwrap();
    assert_eq!(run(&["--fixtures-dir", d, "silting", "HALF"]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    for args in [&["indec", "ALG-GEN4"][..], &["silting", "P-42"], &["--format", "json", "verify", "--scan", "ALG-A3-SINK"]] {
        assert_eq!(stdout(&run(args)), stdout(&run(args)), "{args:?}");
    }
}

#[test]
fn field_override() {
    let v = json(&["--field", "3", "parse", "ALG-A3"]);
    assert_eq!(v["field"], 3);
    assert_eq!(run(&["--field", "4", "parse", "ALG-A3"]).status.code(), Some(2));
}
