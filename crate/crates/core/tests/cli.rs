use std::path::PathBuf;
use std::process::{Command, Output};

fn posettop(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_posettop")).args(args).env_remove("POSETTOP_THREADS").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("posettop-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn gen_output_feeds_every_command() {
    let gen = posettop(&["gen", "circle4"]);
    assert!(gen.status.success());
    let path = scratch("circle4.json");
    std::fs::write(&path, &gen.stdout).unwrap();
    let p = path.to_str().unwrap();
    for args in [
        vec!["homology", "-i", p, "--max-dim", "1"],
        vec!["compare", "-i", p, "--max-dim", "1"],
        vec!["loop", "validate", "b > d < a > c < b", "-i", p],
        vec!["mine", "-i", p, "--trials", "2", "--size", "4"],
    ] {
        let out = posettop(&args);
        assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
    let from_file = stdout(&posettop(&["homology", "-i", p, "--max-dim", "1", "--format", "json"]));
    let from_builtin = stdout(&posettop(&["homology", "--builtin", "circle4", "--max-dim", "1", "--format", "json"]));
    assert_eq!(from_file.replace(p, "X"), from_builtin.replace("builtin:circle4", "X"));
}

#[test]
fn homology_table() {
    let out = stdout(&posettop(&["homology", "--builtin", "circle4", "--max-dim", "1"]));
    assert_eq!(
        out,
        "# both homology of builtin:circle4\n\
         degree  betti_cube  torsion_cube  betti_simpl  torsion_simpl\n\
         0       1           -             1            -\n\
         1       1           -             1            -\n"
    );
    let json: serde_json::Value =
        serde_json::from_str(&stdout(&posettop(&["compare", "--builtin", "chain3", "--format", "json"]))).unwrap();
    assert_eq!(json["schema"], 1);
    assert!(json["degrees"].as_array().unwrap().iter().all(|d| d["psi_star"] == "iso"));
}

#[test]
fn loop_commands() {
    let h = stdout(&posettop(&["loop", "hurewicz", "b > d < a > c < b", "--builtin", "circle4", "--format", "json"]));
    let h: serde_json::Value = serde_json::from_str(&h).unwrap();
    assert_eq!(h["action"], "hurewicz");
    assert!(h["class_free"] == serde_json::json!(["1"]) || h["class_free"] == serde_json::json!(["-1"]));
    let r = stdout(&posettop(&[
        "loop",
        "reduce",
        "b > c < a > c < b",
        "--builtin",
        "circle4",
        "--radius-cap",
        "3",
        "--step-cap",
        "100000",
    ]));
    assert_eq!(r.lines().filter(|l| l.starts_with("row ")).count(), 3);
    let c = stdout(&posettop(&["loop", "hurewicz", "a", "--builtin", "sphere6", "--format", "json"]));
    assert!(c.contains("\"is_zero\": true"));
}

#[test]
fn exit_codes() {
    assert_eq!(posettop(&["gen", "torus"]).status.code(), Some(2));
    assert_eq!(posettop(&["loop", "hurewicz", "b > d > a", "--builtin", "circle4"]).status.code(), Some(2));
    assert_eq!(posettop(&["loop", "hurewicz", "b > q < b", "--builtin", "circle4"]).status.code(), Some(2));
    assert_eq!(posettop(&["homology", "--builtin", "qcube3", "--cap", "5"]).status.code(), Some(3));
    let bad = scratch("cycle.txt");
    std::fs::write(&bad, "a < b\nb < a\n").unwrap();
    assert_eq!(posettop(&["homology", "-i", bad.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(posettop(&["homology", "-i", "/nonexistent/poset.json"]).status.code(), Some(1));
}

#[test]
fn mining_is_reproducible() {
    let args = ["mine", "--trials", "20", "--size", "6", "--seed", "42", "--plant", "sphere6", "--format", "json"];
    let a = posettop(&args);
    let b = Command::new(env!("CARGO_BIN_EXE_posettop")).args(args).env("POSETTOP_THREADS", "3").output().unwrap();
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let chains = stdout(&posettop(&["mine", "--trials", "5", "--density", "1", "--format", "json"]));
    assert!(chains.contains("\"findings\": []"));
}
