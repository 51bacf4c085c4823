use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn ainf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ainf")).args(args).output().expect("run ainf")
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("ainf-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn s(p: &PathBuf) -> &str {
    p.to_str().unwrap()
}

fn report(p: &PathBuf) -> Value {
    serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap()
}

#[test]
fn z4_lists_two_facets() {
    let out = ainf(&["strata", "--space", "Z", "--d", "2", "--list"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 2);
    let out = ainf(&["strata", "--space", "R", "--d", "3", "--list"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 2);
}

#[test]
fn generated_fixtures_are_reproducible_and_pass() {
    let (a, b) = (tmp("dg_a.json"), tmp("dg_b.json"));
    for p in [&a, &b] {
        assert_eq!(ainf(&["fixtures", "gen", "digraph-squares", "--vertices", "3", "--seed", "7", "--out", s(p)]).status.code(), Some(0));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(report(&a)["schema_version"], 1);
    assert_eq!(ainf(&["verify", "pontryagin", "--in", s(&a)]).status.code(), Some(0));

    let t = tmp("transferred.json");
    ainf(&["fixtures", "gen", "transferred-ainfty", "--seed", "2", "--out", s(&t)]);
    assert_eq!(ainf(&["verify", "ainfty", "--in", s(&t)]).status.code(), Some(0));

    let d = tmp("random_dg.json");
    ainf(&["fixtures", "gen", "random-dg", "--seed", "5", "--out", s(&d)]);
    assert_eq!(ainf(&["verify", "ainfty", "--in", s(&d), "--dmax", "3"]).status.code(), Some(0));

    let c = tmp("cubical.json");
    ainf(&["fixtures", "gen", "cubical", "--seed", "11", "--out", s(&c)]);
    assert_eq!(ainf(&["verify", "cubical", "--in", s(&c)]).status.code(), Some(0));
}

#[test]
fn frame_path_winding() {
    let p = tmp("line.csv");
    ainf(&["fixtures", "gen", "frame-path", "--samples", "256", "--out", s(&p)]);
    let r = tmp("maslov.json");
    assert_eq!(ainf(&["branes", "maslov", "--in", s(&p), "--closed", "--report", s(&r)]).status.code(), Some(0));
    assert_eq!(report(&r)["checks"][0]["witness"]["winding"], 1);

    let q = tmp("twisted.json");
    ainf(&["fixtures", "gen", "frame-path", "--n", "2", "--turns", "-3", "--samples", "400", "--seed", "4", "--out", s(&q)]);
    ainf(&["branes", "maslov", "--in", s(&q), "--closed", "--report", s(&r)]);
    assert_eq!(report(&r)["checks"][0]["witness"]["winding"], -3);

    let coarse = tmp("coarse.csv");
    ainf(&["fixtures", "gen", "frame-path", "--samples", "2", "--out", s(&coarse)]);
    assert_eq!(ainf(&["branes", "maslov", "--in", s(&coarse), "--closed"]).status.code(), Some(1));
}

#[test]
fn malformed_fixtures_exit_2() {
    let p = tmp("bad.json");
    std::fs::write(&p, r#"{"objects": []}"#).unwrap();
    assert_eq!(ainf(&["verify", "ainfty", "--in", s(&p)]).status.code(), Some(2));
    std::fs::write(&p, r#"{"schema_version": 7, "objects": [], "generators": []}"#).unwrap();
    assert_eq!(ainf(&["verify", "ainfty", "--in", s(&p)]).status.code(), Some(2));
    std::fs::write(&p, r#"{"schema_version": 1, "vertices": ["a"], "edges": [{"id": "e", "src": "a", "dst": "b"}]}"#).unwrap();
    assert_eq!(ainf(&["verify", "pontryagin", "--in", s(&p)]).status.code(), Some(2));
    let csv = tmp("bad.csv");
    std::fs::write(&csv, "1,0,0,1\n0,0,1,0\n").unwrap();
    assert_eq!(ainf(&["branes", "maslov", "--in", s(&csv)]).status.code(), Some(2));
}

#[test]
fn failing_cubical_fixture_exits_1_with_witness() {
    let p = tmp("broken_square.json");
    // The square's faces (1,0) and (2,0) meet at different vertices.
    std::fs::write(
        &p,
        r#"{"schema_version": 1,
            "cubes": [{"label": "a", "dim": 0}, {"label": "b", "dim": 0},
                      {"label": "x", "dim": 1}, {"label": "y", "dim": 1}, {"label": "s", "dim": 2}],
            "faces": {"x": {"1,0": {"cube": "a"}, "1,1": {"cube": "b"}},
                      "y": {"1,0": {"cube": "b"}, "1,1": {"cube": "b"}},
                      "s": {"1,0": {"cube": "x"}, "1,1": {"cube": "x"}, "2,0": {"cube": "y"}, "2,1": {"cube": "y"}}}}"#,
    )
    .unwrap();
    let r = tmp("broken_report.json");
    assert_eq!(ainf(&["verify", "cubical", "--in", s(&p), "--report", s(&r)]).status.code(), Some(1));
    let rep = report(&r);
    assert_eq!(rep["passed"], false);
    assert!(!rep["checks"][0]["witness"]["witness"].is_null());
}

#[test]
fn c0_report_lists_inequalities() {
    let r = tmp("c0.json");
    assert_eq!(ainf(&["c0", "verify", "--all", "--grid", "20000", "--report", s(&r)]).status.code(), Some(0));
    let rep = report(&r);
    let w = &rep["checks"][0]["witness"];
    assert!(w["bracket"]["max"].as_f64().unwrap() <= 200.0);
    let names: Vec<&str> = w["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    for n in ["psi_endpoints", "h_partials_fd", "boundary_inequality", "bracket_bound", "c_slope", "interior_sign"] {
        assert!(names.contains(&n), "{n}");
    }
}

#[test]
fn functor_convention_flag() {
    let out = ainf(&["verify", "functor", "--convention", "koszul"]);
    assert!(matches!(out.status.code(), Some(0) | Some(1)));
    let out = ainf(&["verify", "functor"]);
    assert_eq!(out.status.code(), Some(0));
}
