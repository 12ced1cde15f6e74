use std::process::{Command, Output};

fn hamel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hamel")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn list_is_stable() {
    let a = hamel(&["--list"]);
    assert!(a.status.success());
    let text = stdout(&a);
    assert!(text.contains("thm1.3 — proof of Theorem 1.3"));
    assert!(text.contains("lemma4.1a — Cauchy-but-escaping sequence"));
    assert_eq!(text, stdout(&hamel(&["--list"])));
}

#[test]
fn exit_codes() {
    assert_eq!(hamel(&["--demo", "thm1.3", "--depth", "1000"]).status.code(), Some(0));
    assert_eq!(hamel(&["--demo", "parallelogram"]).status.code(), Some(0));
    let unknown = hamel(&["--demo", "nosuch"]);
    assert_eq!(unknown.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&unknown.stderr).contains("lemma4.1b"));
    assert_eq!(hamel(&["--demo", "thm1.3", "--depth", "1"]).status.code(), Some(2));
    assert_eq!(hamel(&["--demo", "thm1.3", "--p", "0"]).status.code(), Some(2));
    assert_eq!(hamel(&["--demo", "thm1.3", "--format", "xml"]).status.code(), Some(2));
    assert_eq!(hamel(&[]).status.code(), Some(2));
}

#[test]
fn json_report() {
    let args = ["--demo", "parallelogram", "--format", "json"];
    let a = hamel(&args);
    assert_eq!(a.stdout, hamel(&args).stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["config"]["demo"], "parallelogram");
    let sup = &v["demos"][0];
    assert_eq!(sup["verdict"], "ViolatedAt(1)");
    assert_eq!(sup["rows"][0]["lhs"], "2");
    assert_eq!(sup["rows"][0]["rhs"], "4");
    assert_eq!(sup["params"]["expect"], "violation");
    assert_eq!(v["demos"][1]["verdict"], "AllHold");
}

#[test]
fn csv_report_to_file() {
    let dir = std::env::temp_dir().join(format!("hamel-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("out.csv");
    let o = hamel(&["--demo", "lemma4.1b", "--depth", "5", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("demo,claim_id,n,check,lhs,rhs,holds"));
    assert_eq!(lines.next(), Some("lemma4.1b,separation,1,\"k=1,j=2\",2,2,true"));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn seed_changes_samples() {
    let run = |seed: &str| hamel(&["--demo", "axioms", "--seed", seed, "--format", "json"]).stdout;
    assert_eq!(run("7"), run("7"));
    assert_ne!(run("7"), run("8"));
}
