use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_buildings")).args(args).output().unwrap()
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().unwrap()
}

fn text(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn build(dir: &Path, name: &str, args: &[&str]) -> String {
    let out = dir.join(name);
    let mut full = vec!["build", "--out", out.to_str().unwrap()];
    full.extend_from_slice(args);
    let result = run(&full);
    assert!(result.status.success(), "{}", String::from_utf8_lossy(&result.stderr));
    out.to_str().unwrap().to_string()
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.json");
    let out = out.to_str().unwrap();
    assert_eq!(code(&["--help"]), 0);
    assert_eq!(code(&["--version"]), 0);
    assert_eq!(code(&["build", "--family", "sph-a2", "--p", "2"]), 1);
    assert_eq!(code(&["build", "--family", "sph-b2", "--p", "2", "--radius", "1", "--out", out]), 1);
    assert_eq!(code(&["build", "--family", "sph-a2", "--p", "4", "--radius", "1", "--out", out]), 1);
    assert_eq!(code(&["build", "--family", "aff-a2", "--p", "2", "--radius", "1", "--embed-center", "--out", out]), 1);
    assert_eq!(code(&["build", "--family", "aff-a2", "--p", "2", "--radius", "9", "--out", out]), 3);
    assert_eq!(code(&["verify", "--case", "4,2"]), 3);
    assert_eq!(code(&["verify", "--case", "three"]), 1);
    assert_eq!(code(&["stats", "--scene", dir.path().join("missing.json").to_str().unwrap()]), 1);
    assert_eq!(code(&["build", "--family", "aff-a2", "--p", "2", "--radius", "1", "--out", dir.path().join("no/such/dir.json").to_str().unwrap()]), 1);
    assert!(!Path::new(out).exists());
}

#[test]
fn raising_the_radius_cap() {
    let dir = tempfile::tempdir().unwrap();
    let scene = build(dir.path(), "a1.json", &["--family", "aff-a1", "--p", "2", "--radius", "9", "--max-radius", "9"]);
    let stats: serde_json::Value = serde_json::from_slice(&run(&["stats", "--scene", &scene]).stdout).unwrap();
    assert_eq!(stats["chamber_count"], 1 + (1..=9).map(|r| 2 << r).sum::<u64>());
}

#[test]
fn stats_of_saved_and_generated_scenes_agree() {
    let dir = tempfile::tempdir().unwrap();
    let scene = build(dir.path(), "s.json", &["--family", "aff-a2", "--p", "3", "--radius", "2"]);
    let saved = text(&run(&["stats", "--scene", &scene]));
    let fresh = text(&run(&["stats", "--family", "aff-a2", "--p", "3", "--radius", "2"]));
    assert_eq!(saved, fresh);
    let stats: serde_json::Value = serde_json::from_str(&saved).unwrap();
    assert_eq!(stats["chamber_count"], 64);
    assert_eq!(stats["max_distance_from_base"], 2);
}

#[test]
fn path_output() {
    let dir = tempfile::tempdir().unwrap();
    let scene = build(dir.path(), "fano.json", &["--family", "sph-a2", "--p", "2", "--radius", "3"]);
    assert_eq!(text(&run(&["path", "--scene", &scene, "--from", "5", "--to", "5"])), "0, []\n");
    let out = text(&run(&["path", "--scene", &scene, "--from", "0", "--to", "20", "--chambers"]));
    let mut lines = out.lines();
    let first = lines.next().unwrap();
    let (distance, word) = first.split_once(", ").unwrap();
    let distance: usize = distance.parse().unwrap();
    let word: Vec<usize> = serde_json::from_str(word).unwrap();
    assert_eq!(word.len(), distance);
    let chambers: Vec<usize> = serde_json::from_str(lines.next().unwrap().strip_prefix("chambers: ").unwrap()).unwrap();
    assert_eq!((chambers[0], chambers[distance]), (0, 20));
    assert_eq!(code(&["path", "--scene", &scene, "--from", "0", "--to", "21"]), 1);
}

#[test]
fn obj_output() {
    let dir = tempfile::tempdir().unwrap();
    let obj = build(dir.path(), "gl4.obj", &["--family", "sph-a3", "--p", "2", "--radius", "6", "--format", "obj"]);
    let obj = std::fs::read_to_string(obj).unwrap();
    let count = |prefix: &str| obj.lines().filter(|l| l.starts_with(prefix)).count();
    assert_eq!((count("v "), count("f "), count("# chamber ")), (65, 315, 315));
    let scene = build(dir.path(), "fano.obj", &["--family", "sph-a2", "--p", "2", "--radius", "3", "--format", "obj", "--embed-center"]);
    let obj = std::fs::read_to_string(scene).unwrap();
    let count = |prefix: &str| obj.lines().filter(|l| l.starts_with(prefix)).count();
    assert_eq!((count("v "), count("l "), count("f ")), (15, 21, 21));
}

#[test]
fn verify_writes_a_report() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("r.json");
    let out = run(&["verify", "--case", "3,2", "--report", report.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(text(&out).starts_with("verify GL_3(F_2)\n"));
    let json: serde_json::Value = serde_json::from_slice(&std::fs::read(report).unwrap()).unwrap();
    assert_eq!(json["passed"], true);
    assert_eq!(json["cases"].as_array().unwrap().len(), 1);
    assert_eq!(json["cases"][0]["checks"].as_array().unwrap().len(), 8);
}
