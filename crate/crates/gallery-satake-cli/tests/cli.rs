use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gallery-satake")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn unknown_preset_is_a_config_error() {
    assert_eq!(run(&["char", "--preset", "nosuch", "--mu", "1"]).status.code(), Some(2));
    assert_eq!(run(&["char", "--preset", "a2", "--mu", "1"]).status.code(), Some(2));
    assert_eq!(run(&["char", "--preset", "a1", "--mu", "-1"]).status.code(), Some(2));
}

#[test]
fn su3_weight_table() {
    let o = run(&["char", "--preset", "su3", "--mu", "1/2"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "weight\tmultiplicity\n-1/2\t1\n0\t1\n1/2\t1\n");
}

#[test]
fn verify_a1_passes() {
    let o = run(&["verify", "--preset", "a1", "--bound", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 11);
    assert!(out.lines().all(|l| l.contains(" PASS ") || l.contains(" SKIP ")));
}

#[test]
fn output_is_deterministic() {
    let args = ["mv-cells", "--preset", "b2", "--mu", "2,1", "--format", "json"];
    let a = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, run(&args).stdout);
}

#[test]
fn hecke_json_round_trips() {
    let o = run(&["hecke-mult", "--preset", "a1", "--left", "s1", "--right", "s1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v, serde_json::json!({"e": "q", "s1": "q-1"}));
    let again = run(&["hecke-mult", "--preset", "a1", "--left", &v.to_string(), "--right", "e", "--format", "json"]);
    assert_eq!(serde_json::from_str::<serde_json::Value>(&stdout(&again)).unwrap(), v);
}

#[test]
fn pgl2_satake() {
    let o = run(&["satake", "--preset", "pgl2", "--mu", "1"]);
    assert_eq!(stdout(&o), "weight\tcoefficient\n-1\t1\n1\tq\n");
    let z = run(&["bernstein-center", "--preset", "pgl2", "--mu", "1"]);
    assert!(z.status.success());
    assert!(String::from_utf8_lossy(&z.stderr).contains("central: true"));
}
