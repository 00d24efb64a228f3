use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn warmstart(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_warmstart"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> serde_json::Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

#[test]
fn gen_then_solve_with_check() {
    let dir = tempfile::tempdir().unwrap();
    json(&warmstart(&["gen", "--n", "6", "--sigma", "2", "--count", "3", "--seed", "4", "--out", "ds"], dir.path()));
    let files = fs::read_dir(dir.path().join("ds")).unwrap().count();
    assert_eq!(files, 3);

    let v = json(&warmstart(&["solve", "--instance", "ds/instance_00001.json", "--check"], dir.path()));
    assert!(v["check"].as_object().unwrap().values().all(|b| b == true), "{v}");
    assert!(v["iterations"].as_u64().unwrap() >= 1);
    assert_eq!(v["matching"].as_array().unwrap().len(), 3);

    fs::write(dir.path().join("p.json"), "[1.5, -0.5, 3, 0, 0, 0.25]").unwrap();
    let w = json(&warmstart(
        &["solve", "--instance", "ds/instance_00001.json", "--prediction", "p.json", "--long-step", "--check"],
        dir.path(),
    ));
    assert_eq!(w["optimum"], v["optimum"]);
}

#[test]
fn gen_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    for out in ["a", "b"] {
        json(&warmstart(&["gen", "--n", "10", "--sigma", "5", "--count", "2", "--seed", "9", "--out", out], dir.path()));
    }
    for f in ["instance_00000.json", "instance_00001.json"] {
        assert_eq!(
            fs::read(dir.path().join("a").join(f)).unwrap(),
            fs::read(dir.path().join("b").join(f)).unwrap()
        );
    }
}

#[test]
fn mu_reports_distance_and_subgradient() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(
        dir.path().join("sys.json"),
        r#"{"n": 2, "alpha": [0, -1], "beta": [1, 0], "gamma": [[2, 1, 2]]}"#,
    )
    .unwrap();
    fs::write(dir.path().join("p.json"), "[2, -2]").unwrap();
    fs::write(dir.path().join("w.json"), "[1, -1]").unwrap();
    let v = json(&warmstart(&["mu", "--system", "sys.json", "--point", "p.json"], dir.path()));
    assert_eq!(v["mu_bar"], 2.0);
    assert_eq!(v["subgradient"], serde_json::json!([1.0, -1.0]));
    let v = json(&warmstart(
        &["mu", "--system", "sys.json", "--point", "p.json", "--witness", "w.json"],
        dir.path(),
    ));
    assert_eq!(v["mu_bar"], 2.0);
}

#[test]
fn learn_writes_csv_with_schema() {
    let dir = tempfile::tempdir().unwrap();
    json(&warmstart(&["gen", "--n", "4", "--sigma", "1", "--count", "6", "--out", "ds"], dir.path()));
    for loss in ["mu", "l1", "linf", "cold"] {
        let out = format!("{loss}.csv");
        let v = json(&warmstart(
            &["learn", "--dataset", "ds", "--loss", loss, "--rho", "0.1", "--out", &out],
            dir.path(),
        ));
        assert_eq!(v["rounds"], 6);
        let text = fs::read_to_string(dir.path().join(&out)).unwrap();
        let mut lines = text.lines();
        assert_eq!(
            lines.next().unwrap(),
            "t,method,rho,sigma,seed,loss,iterations,mu_bar,cum_avg_iterations,wall_us"
        );
        assert_eq!(lines.count(), 6);
    }
}

#[test]
fn adversary_reports_regret_within_bound() {
    let dir = tempfile::tempdir().unwrap();
    let v = json(&warmstart(
        &["adversary", "--n", "4", "--C", "2", "--T", "64", "--seed", "1", "--out", "adv.csv"],
        dir.path(),
    ));
    assert!(v["regret"].as_f64().unwrap() <= v["bound"].as_f64().unwrap());
    let text = fs::read_to_string(dir.path().join("adv.csv")).unwrap();
    assert_eq!(text.lines().count(), 65);
}

#[test]
fn extract_argmin_both_ways() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(
        dir.path().join("inst.json"),
        r#"{"n_left": 2, "n_right": 2, "edges": [[1, 3, 2], [1, 4, 1], [2, 3, 1], [2, 4, 2]]}"#,
    )
    .unwrap();
    let v = json(&warmstart(&["extract-argmin", "--instance", "inst.json"], dir.path()));
    assert_eq!(v["n"], 4);
    let v = json(&warmstart(
        &["extract-argmin", "--instance", "inst.json", "--blackbox", "--out", "sys.json"],
        dir.path(),
    ));
    assert_eq!(v["min_value"], 4);
    assert!(dir.path().join("sys.json").exists());

    let out = warmstart(
        &["extract-argmin", "--instance", "inst.json", "--blackbox", "--max-n", "2"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    // no perfect matching: both left vertices only see right vertex 3
    fs::write(
        dir.path().join("bad.json"),
        r#"{"n_left": 2, "n_right": 2, "edges": [[1, 3, 1], [2, 3, 1]]}"#,
    )
    .unwrap();
    assert_eq!(warmstart(&["solve", "--instance", "bad.json"], dir.path()).status.code(), Some(2));

    // empty system
    fs::write(dir.path().join("empty.json"), r#"{"n": 1, "alpha": [2], "beta": [1], "gamma": []}"#).unwrap();
    fs::write(dir.path().join("p.json"), "[0]").unwrap();
    assert_eq!(
        warmstart(&["mu", "--system", "empty.json", "--point", "p.json"], dir.path()).status.code(),
        Some(2)
    );

    assert_eq!(warmstart(&["solve", "--instance", "missing.json"], dir.path()).status.code(), Some(3));
    assert_eq!(warmstart(&["solve", "--frobnicate"], dir.path()).status.code(), Some(3));
    fs::write(dir.path().join("p2.json"), "[0, 0, 0]").unwrap();
    assert_eq!(
        warmstart(&["mu", "--system", "empty.json", "--point", "p2.json"], dir.path()).status.code(),
        Some(3)
    );
    assert!(warmstart(&["--help"], dir.path()).status.success());
}
