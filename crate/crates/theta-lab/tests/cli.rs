use std::path::PathBuf;
use std::process::{Command, Output};

use theta_lab::kl::KlTableJson;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_theta-lab"));
    c.env_remove("THETA_LAB_CACHE");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("theta-lab-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn documented_examples() {
    let o = run(&["fourier", "phi", "--m", "2", "--n", "1"]);
    assert!(o.status.success());
    let text = stdout(&o);
    for line in ["Φ(∅) = 1>2", "Φ(2>1) = 1>1", "Φ(1>1) = ∅", "Φ(2>-1) = 1>-2", "Φ(1>-1) = 1>-1"] {
        assert!(text.lines().any(|l| l == line), "{line}");
    }
    assert_eq!(text.lines().count(), 5);

    let o = run(&["enumerate", "--model", "typeII", "--m", "2", "--n", "2"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 7);

    let o = run(&["theta", "--type", "II", "--m", "0", "--n", "0"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 1);

    let o = run(&["theta", "--type", "I", "--m", "1", "--n", "1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 3);
}

#[test]
fn kl_json_round_trips() {
    let o = run(&["kl", "--model", "typeI-m1", "--m", "2", "--n", "1", "--json"]);
    assert!(o.status.success());
    let t: KlTableJson = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(t.orbits.len(), 5);
    let again = serde_json::to_string(&t).unwrap();
    assert_eq!(serde_json::from_str::<KlTableJson>(&again).unwrap(), t);
}

#[test]
fn dot_output_is_stable() {
    let dir = scratch("dot");
    let (a, b) = (dir.join("a.dot"), dir.join("b.dot"));
    for p in [&a, &b] {
        let o = run(&["wgraph", "--model", "typeI", "--m", "2", "--n", "1", "--dot", p.to_str().unwrap()]);
        assert!(o.status.success());
    }
    let text = std::fs::read_to_string(&a).unwrap();
    assert_eq!(text, std::fs::read_to_string(&b).unwrap());
    assert!(text.starts_with("digraph") && text.trim_end().ends_with('}'));
    assert_eq!(text.matches("dir=both").count(), 1);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["enumerate", "--model", "typeIII", "--m", "1", "--n", "1"]).status.code(), Some(2));
    assert_eq!(run(&["fourier", "phi", "--m", "2"]).status.code(), Some(2));
    assert_eq!(run(&["kl", "--model", "typeII", "--m", "2", "--n", "2", "--sigma", "3>3"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--q", "9"]).status.code(), Some(2));
    let o = run(&["verify", "--suite", "all", "--max-rank", "2", "--q", "3", "--threads", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).lines().all(|l| !l.starts_with("FAIL")));
}

#[test]
fn verify_json_report() {
    let o = run(&["verify", "--suite", "transport", "--max-rank", "2", "--json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["passed"], true);
    let checks = v["suites"][0]["checks"].as_array().unwrap();
    assert_eq!(checks[0]["status"], "pass");
    assert_eq!(checks[1]["status"], "note");
}

#[test]
fn cache_and_seed_do_not_change_results() {
    let dir = scratch("cache");
    let first = bin().args(["fourier", "psi", "--m", "2", "--n", "2"]).env("THETA_LAB_CACHE", &dir).output().unwrap();
    assert!(first.status.success());
    assert_eq!(std::fs::read_dir(&dir).unwrap().count(), 1);
    let second = bin().args(["fourier", "psi", "--m", "2", "--n", "2"]).env("THETA_LAB_CACHE", &dir).output().unwrap();
    assert_eq!(first.stdout, second.stdout);
    let seeded = run(&["fourier", "psi", "--m", "2", "--n", "2", "--seed", "12345"]);
    assert_eq!(first.stdout, seeded.stdout);
}
