use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn suig2(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_suig2"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const P5: &str = "0 1\n1 2\n2 3\n3 4\n";
const K15: &str = "0 1\n0 2\n0 3\n0 4\n0 5\n";

#[test]
fn path_is_accepted() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "p5.txt", P5);
    let out = suig2(&["recognize", s(&p)]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("ACCEPT\n"));
}

#[test]
fn star_with_five_leaves_is_rejected_with_certificate() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "k15.txt", K15);
    let out = suig2(&["recognize", s(&p), "--json"]);
    assert_eq!(code(&out), 1);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["certificate"]["kind"], "degree_exceeded");
    assert_eq!(doc["certificate"]["degree"], 5);
}

#[test]
fn malformed_input_is_a_usage_error() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "bad.txt", "0 1\n1 x\n");
    assert_eq!(code(&suig2(&["recognize", s(&p)])), 2);
    let cyc = write(&dir, "cycle.txt", "0 1\n1 2\n2 0\n");
    assert_eq!(code(&suig2(&["recognize", s(&cyc)])), 2);
    assert_eq!(code(&suig2(&["recognize", "/nonexistent/tree.txt"])), 2);
    let p5 = write(&dir, "p5.txt", P5);
    assert_eq!(code(&suig2(&["recognize", s(&p5), "--epsilon", "1/1"])), 2);
}

#[test]
fn recognized_json_verifies_and_tampering_fails() {
    let dir = TempDir::new().unwrap();
    let tree = write(
        &dir,
        "t.txt",
        "0 1\n1 2\n1 3\n1 4\n2 5\n3 6\n4 7\n6 8\n8 9\n",
    );
    let out = suig2(&["recognize", s(&tree), "--json", "--epsilon", "1/4"]);
    assert_eq!(code(&out), 0);
    let rep = write(&dir, "rep.json", &stdout(&out));
    let ok = suig2(&["verify", s(&tree), s(&rep)]);
    assert_eq!(code(&ok), 0);
    assert_eq!(stdout(&ok), "PASS\n");

    let mut doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    doc["squares"][0]["x"]["num"] = serde_json::json!(1000);
    let bad = write(&dir, "bad.json", &doc.to_string());
    let out = suig2(&["verify", s(&tree), s(&bad)]);
    assert_eq!(code(&out), 1);
    assert!(!stdout(&out).is_empty());
}

#[test]
fn five_cycle_from_coordinates() {
    let dir = TempDir::new().unwrap();
    let graph = write(&dir, "c5.txt", "0 1\n1 2\n2 3\n3 4\n4 0\n");
    let sq = |x: (i64, i64), y: (i64, i64), stab: &str, v: usize| serde_json::json!({"v": v, "x": {"num": x.0, "den": x.1}, "y": {"num": y.0, "den": y.1}, "stab": stab});
    let doc = serde_json::json!({
        "schema": "suig2/v1",
        "epsilon": {"num": 1, "den": 2},
        "squares": [
            sq((4, 1), (1, 5), "lower", 0),
            sq((24, 5), (0, 1), "lower", 1),
            sq((26, 5), (7, 10), "lower", 2),
            sq((22, 5), (3, 2), "upper", 3),
            sq((7, 2), (1, 1), "lower", 4),
        ],
    });
    let rep = write(&dir, "c5.json", &doc.to_string());
    let out = suig2(&["verify", s(&graph), s(&rep)]);
    assert_eq!(stdout(&out), "PASS\n");
    assert_eq!(code(&out), 0);
}

#[test]
fn oracle_decides_small_trees() {
    let dir = TempDir::new().unwrap();
    let k14 = write(&dir, "k14.txt", "0 1\n0 2\n0 3\n0 4\n");
    let out = suig2(&["oracle", s(&k14)]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("ACCEPT"));
    let k15 = write(&dir, "k15.txt", K15);
    assert_eq!(code(&suig2(&["oracle", s(&k15)])), 1);
    let big = write(
        &dir,
        "p12.txt",
        &(0..11)
            .map(|i| format!("{i} {}\n", i + 1))
            .collect::<String>(),
    );
    assert_eq!(code(&suig2(&["oracle", s(&big), "--max-n", "9"])), 2);
}

#[test]
fn oracle_time_budget() {
    let dir = TempDir::new().unwrap();
    // Eleven vertices with a degree-four red pair: rejected, so the search is exhaustive.
    let t = write(
        &dir,
        "t.txt",
        "0 1\n0 2\n0 3\n0 4\n1 5\n1 6\n1 7\n5 8\n6 9\n7 10\n",
    );
    let out = suig2(&["oracle", s(&t), "--max-n", "11", "--time-budget", "1ms"]);
    // Either the budget runs out, or the machine is fast enough to finish.
    assert!(matches!(code(&out), 0 | 1 | 3), "{out:?}");
    if code(&out) == 3 {
        assert!(stdout(&out).starts_with("UNKNOWN"));
    }
    let out = suig2(&["oracle", s(&t), "--time-budget", "soon"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn exhaustive_crosscheck() {
    let out = suig2(&["crosscheck", "--max-n", "6"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).lines().count(), 1 + 1 + 1 + 2 + 3 + 6);
    assert!(String::from_utf8_lossy(&out.stderr).contains("0 mismatches"));
    assert_eq!(code(&suig2(&["crosscheck", "--max-n", "13"])), 2);
}

#[test]
fn random_crosscheck_is_deterministic() {
    let args = ["crosscheck", "--random", "1000", "40", "--seed", "7"];
    let a = suig2(&args);
    assert_eq!(code(&a), 0);
    let log = stdout(&a);
    assert!(log.starts_with("seed 7 count 1000 size 40\n"));
    assert!(!log.contains("UNSOUND"));
    assert_eq!(log, stdout(&suig2(&args)));
}

#[test]
fn injected_fault_is_caught() {
    let out = suig2(&[
        "crosscheck",
        "--random",
        "50",
        "20",
        "--seed",
        "1",
        "--inject-fault",
    ]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("UNSOUND"));
}

#[test]
fn output_is_byte_identical_across_runs() {
    let dir = TempDir::new().unwrap();
    let tree = write(&dir, "t.txt", "0 1\n1 2\n1 3\n1 4\n2 5\n3 6\n4 7\n");
    let run = || stdout(&suig2(&["recognize", s(&tree), "--json"]));
    let first = run();
    assert!(first.contains("\"schema\": \"suig2/v1\""));
    assert_eq!(first, run());
}

#[test]
fn explain_and_svg() {
    let dir = TempDir::new().unwrap();
    let tree = write(
        &dir,
        "t.txt",
        "0 1\n1 2\n1 3\n1 4\n2 5\n3 6\n4 7\n0 8\n0 9\n",
    );
    let svg = dir.path().join("out.svg");
    let out = suig2(&["recognize", s(&tree), "--explain", "--svg", s(&svg)]);
    assert_eq!(code(&out), 0, "{out:?}");
    assert!(stdout(&out).contains("extended red path"));
    assert!(std::fs::read_to_string(&svg).unwrap().contains("<svg"));
}
