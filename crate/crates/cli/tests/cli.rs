use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn chaincond(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chaincond"))
        .args(args)
        .env("CHAINCOND_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn json_report(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.push("--json");
    let out = chaincond(&all);
    let report = serde_json::from_slice(&out.stdout).expect("stdout is a JSON report");
    (out.status.code().unwrap(), report)
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_owned()
}

#[test]
fn every_demo_passes() {
    for which in ["finite-cc", "bounded-cc", "linked:3", "linked:4", "centred"] {
        let (code, report) = json_report(&["demo", which, "--seed", "7"]);
        assert_eq!(code, 0, "{which}: {report}");
        assert_eq!(report["pass"], true);
        assert_eq!(report["seed"], 7);
        assert!(report["results"].as_array().unwrap().len() >= 2);
    }
}

#[test]
fn reports_replay_exactly() {
    let run = || {
        let (_, mut r) = json_report(&["demo", "bounded-cc", "--seed", "11", "--depth", "3"]);
        r.as_object_mut().unwrap().remove("duration_ms");
        r
    };
    assert_eq!(run(), run());
}

#[test]
fn failing_check_exits_1() {
    let (code, report) = json_report(&[
        "verify",
        "--kind",
        "hn:3",
        "--key",
        "[[0]]",
        "--property",
        "linked",
        "--arity",
        "3",
        "--depth",
        "3",
    ]);
    assert_eq!(code, 1);
    assert_eq!(report["pass"], false);
    assert!(report["results"][0]["details"]["witness"].is_object());
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(chaincond(&["demo", "linked:2"]).status.code(), Some(2));
    assert_eq!(chaincond(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(
        chaincond(&[
            "partition",
            "key",
            "--kind",
            "hn:2",
            "--condition",
            "[[],[1]]"
        ])
        .status
        .code(),
        Some(2)
    );
    let out = Command::new(env!("CARGO_BIN_EXE_chaincond"))
        .args(["demo", "centred"])
        .env("CHAINCOND_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn partition_commands() {
    let (code, r) = json_report(&[
        "partition",
        "key",
        "--kind",
        "hn:2",
        "--condition",
        "[[1],[0,1]]",
    ]);
    assert_eq!(code, 0);
    assert_eq!(
        r["results"][0]["details"]["key"]["nodes"],
        serde_json::json!([[0, 1], [1, 0]])
    );
    let (code, _) = json_report(&[
        "partition",
        "check-membership",
        "--kind",
        "hn:2",
        "--condition",
        "[[0,1,1],[1,0,1]]",
        "--key",
        "[[0,1],[1,0]]",
    ]);
    assert_eq!(code, 0);
    let (code, _) = json_report(&[
        "partition",
        "check-membership",
        "--kind",
        "hn:2",
        "--condition",
        "[[0,0,1],[1]]",
        "--key",
        "[[0,1],[1,0]]",
    ]);
    assert_eq!(code, 1);
}

#[test]
fn verify_properties() {
    let (code, r) = json_report(&[
        "verify",
        "--kind",
        "hn:2",
        "--key",
        "[[0,1],[1,0]]",
        "--property",
        "antichain",
        "--depth",
        "5",
    ]);
    assert_eq!(code, 0, "{r}");
    assert_eq!(r["results"][0]["details"]["bound"], 6);
    let (code, _) = json_report(&[
        "verify",
        "--kind",
        "h1inf",
        "--key",
        "[[0]]",
        "--property",
        "clique",
        "--depth",
        "5",
    ]);
    assert_eq!(code, 0);
    let out = chaincond(&[
        "verify",
        "--kind",
        "h0inf",
        "--key",
        "[[0,0,0,0]]",
        "--property",
        "linked",
        "--depth",
        "5",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn adversary_variants() {
    for kind in ["hn:2", "h0inf", "h1inf"] {
        let (code, r) = json_report(&[
            "adversary",
            "--kind",
            kind,
            "--depth",
            "3",
            "--palette",
            "4",
            "--seed",
            "2",
        ]);
        assert_eq!(code, 0, "{kind}: {r}");
    }
    let dir = tempfile::tempdir().unwrap();
    let table = write(
        dir.path(),
        "coloring.json",
        r#"{"kind":{"arity":2},"depth":1,"palette_size":2,"table":[{"word":[0],"color":1},{"word":[1],"color":0}]}"#,
    );
    let (code, r) = json_report(&["adversary", "--kind", "hn:2", "--coloring", &table]);
    assert_eq!(code, 0);
    assert_eq!(r["results"][0]["details"]["color"], 0);
    let partial = write(
        dir.path(),
        "partial.json",
        r#"{"kind":{"arity":2},"depth":1,"palette_size":2,"table":[{"word":[0],"color":1}]}"#,
    );
    assert_eq!(
        chaincond(&["adversary", "--kind", "hn:2", "--coloring", &partial])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn poset_and_hypergraph_files() {
    let dir = tempfile::tempdir().unwrap();
    let atoms = write(
        dir.path(),
        "atoms.json",
        r#"{"size":6,"leq":[[3,0],[3,1],[4,0],[4,2],[5,1],[5,2]]}"#,
    );
    let (code, r) = json_report(&["poset", "analyze", &atoms, "--condition", "centred"]);
    assert_eq!(code, 0);
    assert_eq!(r["results"][0]["details"]["parts"], 3);
    let (_, r) = json_report(&["poset", "analyze", &atoms, "--condition", "antichain-lt:3"]);
    assert_eq!(r["results"][0]["details"]["parts"], 2);

    let cyclic = write(
        dir.path(),
        "cyclic.json",
        r#"{"size":2,"leq":[[0,1],[1,0]]}"#,
    );
    let out = chaincond(&["poset", "analyze", &cyclic, "--condition", "linked"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("lie below each other"));

    let (code, _) = json_report(&["poset", "gh-demo"]);
    assert_eq!(code, 0);

    let h = write(
        dir.path(),
        "h.json",
        r#"{"vertices":4,"edges":[[0,1],[2,3]]}"#,
    );
    let (code, r) = json_report(&["hypergraph", "sigma-centred", &h]);
    assert_eq!(code, 0);
    assert_eq!(
        r["results"][0]["details"]["components"],
        serde_json::json!([3, 12])
    );
}

#[test]
fn suite_configs() {
    let dir = tempfile::tempdir().unwrap();
    let empty = write(dir.path(), "empty.json", r#"{"checks": []}"#);
    let (code, r) = json_report(&["suite", &empty]);
    assert_eq!(code, 0);
    assert_eq!(r["results"], serde_json::json!([]));

    let full = write(
        dir.path(),
        "full.json",
        r#"{"seed": 5, "checks": [
            {"check": "demo", "which": "linked:3", "depth": 2},
            {"check": "gh-demo"},
            {"check": "poset", "poset": {"size": 2, "leq": []}, "condition": "linked"}
        ]}"#,
    );
    let (code, r) = json_report(&["suite", &full]);
    assert_eq!(code, 0, "{r}");
    assert_eq!(r["results"].as_array().unwrap().len(), 5);
    assert_eq!(r["seed"], 5);

    let broken = write(
        dir.path(),
        "broken.json",
        "{\"checks\": [\n  {\"check\": \"what\"}\n]}",
    );
    let out = chaincond(&["suite", &broken]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn text_output_lists_checks() {
    let out = chaincond(&["poset", "gh-demo"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text
        .lines()
        .any(|l| l.starts_with("PASS amplified antichain")));
    assert!(text.lines().last().unwrap().starts_with("PASS overall"));
}
