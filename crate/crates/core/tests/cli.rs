use std::path::{Path, PathBuf};
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_ultrametrica");

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("ultrametrica-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(BIN).args(args).current_dir(dir).env_remove("ULTRAMETRICA_CONFIG").output().unwrap()
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    std::fs::write(dir.join(name), body).unwrap();
    name.to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).trim().to_string()
}

const PROFILE: &str = r#""profile":{"p":2,"radii":[{"free":2}]}"#;

#[test]
fn norm_of_one() {
    let dir = scratch("norm");
    let f = write(&dir, "one.json", &format!(r#"{{{PROFILE},"terms":[{{"t":"0","x":["0"]}}]}}"#));
    let o = run(&dir, &["norm", &f]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "⟨0;0⟩");
}

#[test]
fn invert_multiply_round_trip() {
    let dir = scratch("invert");
    let f = write(&dir, "f.json", &format!(r#"{{{PROFILE},"terms":[{{"t":"0","x":["0"]}},{{"t":"1","x":["1"]}},{{"t":"1/2","x":["-1/2"]}}]}}"#));
    assert_eq!(run(&dir, &["invert", &f, "--floor", "20", "--out", "g.json"]).status.code(), Some(0));
    assert_eq!(run(&dir, &["mul", &f, "g.json", "--out", "fg.json"]).status.code(), Some(0));
    let o = run(&dir, &["norm", "fg.json", "--minus-one"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "< ⟨20;0⟩");
}

#[test]
fn classify_rational_radius() {
    let dir = scratch("classify");
    let pt = write(&dir, "pt.json", &format!(r#"{{{PROFILE},"point":{{"disk":{{"radius":{{"a":"3/2","q":["0"]}}}}}}}}"#));
    let o = run(&dir, &["classify", &pt]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "II");
}

#[test]
fn gleason_build_writes_schedule() {
    let dir = scratch("gleason");
    let o = run(&dir, &["gleason", "build", "--n", "1", "--depth", "10", "--out", "schedule.json"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(dir.join("schedule.json")).unwrap()).unwrap();
    assert_eq!(doc["steps"].as_array().unwrap().len(), 10);
}

#[test]
fn abhyankar_bound_exit_codes() {
    let dir = scratch("abhyankar");
    assert_eq!(run(&dir, &["abhyankar", "--n-vars", "3", "--l", "1"]).status.code(), Some(0));
    assert_eq!(run(&dir, &["abhyankar", "--n-vars", "2", "--l", "2"]).status.code(), Some(1));
}

#[test]
fn surject_verify_is_deterministic() {
    let dir = scratch("surject");
    let cfg = write(&dir, "cfg.json", r#"{"trials": 5, "seed": 3}"#);
    for out in ["a.json", "b.json"] {
        let o = Command::new(BIN).args(["surject-verify", "--out", out]).current_dir(&dir).env("ULTRAMETRICA_CONFIG", &cfg).output().unwrap();
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    }
    let strip = |name: &str| {
        let mut doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(dir.join(name)).unwrap()).unwrap();
        doc.as_object_mut().unwrap().remove("wall_clock_ms");
        doc
    };
    let a = strip("a.json");
    assert_eq!(a, strip("b.json"));
    assert_eq!(a["passed"], 5);
    assert_eq!(std::fs::read_to_string(dir.join("a.tsv")).unwrap(), std::fs::read_to_string(dir.join("b.tsv")).unwrap());
}

#[test]
fn input_errors_exit_two() {
    let dir = scratch("errors");
    let bad = write(&dir, "bad.json", "{bad");
    assert_eq!(run(&dir, &["norm", &bad]).status.code(), Some(2));
    assert_eq!(run(&dir, &["norm", "missing.json"]).status.code(), Some(2));
    assert_eq!(run(&dir, &["surject-verify", "--config", &bad]).status.code(), Some(2));
    let unknown = write(&dir, "unknown.json", r#"{"depht": 3}"#);
    assert_eq!(run(&dir, &["surject-verify", "--config", &unknown]).status.code(), Some(2));
    assert_eq!(run(&dir, &["no-such-command"]).status.code(), Some(2));
}
