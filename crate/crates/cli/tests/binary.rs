use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn nomrel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nomrel"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn script(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("scripts")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn temp_script(tag: &str, text: &str) -> String {
    let path = std::env::temp_dir().join(format!("nomrel-{}-{tag}.nr", std::process::id()));
    std::fs::File::create(&path)
        .unwrap()
        .write_all(text.as_bytes())
        .unwrap();
    path.to_string_lossy().into_owned()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json report")
}

fn without_millis(mut v: Value) -> Value {
    for s in v["statements"].as_array_mut().unwrap() {
        s.as_object_mut().unwrap().remove("millis");
    }
    v
}

#[test]
fn freshness_fixture_script_passes() {
    let out = nomrel(&["--format", "json", "run", &script("surj_not_epic.nr")]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    let stmts = report["statements"].as_array().unwrap();
    let outcome = |stmt: &str| {
        stmts
            .iter()
            .find(|s| s["stmt"] == stmt)
            .unwrap_or_else(|| panic!("{stmt}"))["outcome"]
            .clone()
    };
    assert_eq!(outcome("assert equal FF Full"), "pass");
    assert_eq!(outcome("assert distinct F Full"), "pass");
    for s in stmts {
        assert!(s["millis"].is_u64());
        assert!(s["kind"].is_string());
    }
}

#[test]
fn tour_passes_and_is_deterministic() {
    let path = script("tour.nr");
    let a = nomrel(&["--format", "json", "run", &path]);
    let b = nomrel(&["--format", "json", "run", &path]);
    assert_eq!(
        a.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&a.stdout)
    );
    assert_eq!(without_millis(json(&a)), without_millis(json(&b)));
}

#[test]
fn seeded_suites_are_deterministic() {
    let run = |seed: &str| {
        without_millis(json(&nomrel(&[
            "--format", "json", "--seed", seed, "--cases", "5", "suite", "binding",
        ])))
    };
    assert_eq!(run("3"), run("3"));
}

#[test]
fn failed_checks_exit_one_with_a_witness() {
    let path = temp_script(
        "fail",
        "set D = atoms\nrel F : D -> D = fresh\ncheck F reflexive\ncheck F transitive\nrel Full : D -> D = full\nassert subset Full F\n",
    );
    let out = nomrel(&["--format", "json", "run", &path]);
    assert_eq!(out.status.code(), Some(1));
    let report = json(&out);
    let fails: Vec<&Value> = report["statements"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|s| s["outcome"] == "fail")
        .collect();
    assert_eq!(fails.len(), 3);
    for f in fails {
        let w = f["witness"].as_str().unwrap();
        assert!(w.contains('('), "{w}");
        assert!(f["law"].is_string());
    }
}

#[test]
fn statement_errors_do_not_stop_later_statements() {
    let path = temp_script(
        "errors",
        "set D = atoms\ncheck R symmetric\nset D = unit\nrel F : D -> D = fresh\ncheck F frobnicating\ncheck F symmetric\n",
    );
    let out = nomrel(&["--format", "json", "run", &path]);
    assert_eq!(out.status.code(), Some(2));
    let report = json(&out);
    let outcomes: Vec<&str> = report["statements"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["outcome"].as_str().unwrap())
        .collect();
    assert_eq!(
        outcomes,
        ["defined", "error", "error", "defined", "error", "pass"]
    );
    let details: Vec<&str> = report["statements"]
        .as_array()
        .unwrap()
        .iter()
        .filter_map(|s| s["detail"].as_str())
        .collect();
    assert!(details.iter().any(|d| d.contains("not defined")));
    assert!(details.iter().any(|d| d.contains("already defined")));
}

#[test]
fn syntax_errors_exit_two_with_a_position() {
    let path = temp_script("syntax", "set D = atoms\nrel F : D => D = fresh\n");
    let out = nomrel(&["run", &path]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 2, column 12"), "{err}");
}

#[test]
fn demos_report_their_laws() {
    let out = nomrel(&["--format", "json", "demo", "surj-not-epic"]);
    assert_eq!(out.status.code(), Some(0));
    let out = nomrel(&["--format", "json", "demo", "discrepancy"]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert_eq!(report["statements"][0]["laws"].as_array().unwrap().len(), 2);
    assert_eq!(nomrel(&["demo", "nope"]).status.code(), Some(2));
}

#[test]
fn universe_flag_sets_the_oracle_size() {
    let path = temp_script(
        "universe",
        "set D = atoms\nrel F : D -> D = fresh\ncheck F symmetric\n",
    );
    let report = json(&nomrel(&[
        "--format",
        "json",
        "--universe",
        "9",
        "run",
        &path,
    ]));
    assert_eq!(report["statements"][2]["universe"], 9);
    let report = json(&nomrel(&["--format", "json", "run", &path]));
    assert_eq!(report["statements"][2]["universe"], 5);
}

#[test]
fn text_output_summarizes() {
    let out = nomrel(&["suite", "freshness"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("pass  fresh-compose-fresh"), "{text}");
    assert!(
        text.trim_end()
            .ends_with("1 statements: 1 pass, 0 fail, 0 error"),
        "{text}"
    );
}
