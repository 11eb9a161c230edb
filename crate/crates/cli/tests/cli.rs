use std::fs;
use std::process::{Command, Output};

use redic_core::formats::write_edge_list;
use redic_core::Graph;

fn redic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_redic"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON report")
}

#[test]
fn verify_exit_codes() {
    let claw = redic(&["verify", "--named", "star:3", "-d", "0,1,2,3"]);
    assert_eq!(claw.status.code(), Some(0), "{}", stdout(&claw));
    let c4 = redic(&["verify", "--named", "cycle:4", "-d", "0 1 2", "--json"]);
    assert_eq!(c4.status.code(), Some(1));
    let report = json(&c4);
    assert_eq!(report["outcome"], "fail");
    assert_eq!(
        report["details"]["violation"]["violation"],
        "undistinguished"
    );
    let missing = redic(&["verify", "/nonexistent/graph.g6", "-d", "0"]);
    assert_eq!(missing.status.code(), Some(2));
    let usage = redic(&["verify", "--named", "cycle:4"]);
    assert_eq!(usage.status.code(), Some(2));
    let out_of_range = redic(&["verify", "--named", "cycle:4", "-d", "9"]);
    assert_eq!(out_of_range.status.code(), Some(2));
}

#[test]
fn solve_reports() {
    let ladder = redic(&["solve", "--named", "ladder:5", "--json", "--deterministic"]);
    assert_eq!(ladder.status.code(), Some(0));
    let r = json(&ladder);
    assert_eq!(r["k"], 7);
    assert_eq!(r["outcome"], "optimal");
    let text = stdout(&ladder);
    let positions: Vec<usize> = [
        "command",
        "input_digest",
        "outcome",
        "\"k\"",
        "witness",
        "bounds",
        "stats",
    ]
    .iter()
    .map(|key| text.find(key).unwrap())
    .collect();
    assert!(positions.windows(2).all(|w| w[0] < w[1]), "{text}");
    let cyl = redic(&["solve", "--named", "cylinder:6"]);
    assert!(stdout(&cyl).contains("k = 8"));
    let path = redic(&["solve", "--named", "path:6"]);
    assert_eq!(path.status.code(), Some(1));
    assert!(
        stdout(&path).starts_with("no RED:IC: support vertex degree 2"),
        "{}",
        stdout(&path)
    );
    let ic = redic(&["solve", "--named", "path:6", "--kind", "ic"]);
    assert_eq!(ic.status.code(), Some(0));
    let bounded = redic(&[
        "solve",
        "--named",
        "torus:6,6",
        "--budget-nodes",
        "1",
        "--json",
    ]);
    assert_eq!(json(&bounded)["outcome"], "bounded");
}

#[test]
fn file_inputs_and_formats() {
    let dir = tempfile::tempdir().unwrap();
    let el = dir.path().join("ladder.txt");
    fs::write(&el, write_edge_list(&Graph::ladder(4).unwrap())).unwrap();
    let g6 = dir.path().join("claw.g6");
    fs::write(&g6, "Cs\n").unwrap();
    let a = json(&redic(&["solve", el.to_str().unwrap(), "--json"]));
    let b = json(&redic(&[
        "solve",
        el.to_str().unwrap(),
        "--edgelist",
        "--json",
    ]));
    assert_eq!(a["k"], 6);
    assert_eq!(a["input_digest"], b["input_digest"]);
    let claw = redic(&["solve", g6.to_str().unwrap(), "--graph6"]);
    assert!(stdout(&claw).contains("k = 4"), "{}", stdout(&claw));
    let wrong = redic(&["solve", el.to_str().unwrap(), "--graph6"]);
    assert_eq!(wrong.status.code(), Some(2));
}

#[test]
fn exists_reasons() {
    let k5 = redic(&["exists", "--named", "complete:5"]);
    assert_eq!(k5.status.code(), Some(1));
    assert!(stdout(&k5).starts_with("no: closed twins"));
    let q3 = json(&redic(&["exists", "--named", "hypercube:3", "--json"]));
    assert_eq!(q3["outcome"], "yes");
    assert_eq!(q3["k"], 8);
}

/// Every emitted witness goes back through `verify`.
#[test]
fn constructed_witnesses_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        vec!["star-even", "4"],
        vec!["star-odd", "5"],
        vec!["cycle-odd", "5"],
        vec!["multipartite", "8"],
        vec!["tree", "12"],
        vec!["dense-ring", "2"],
        vec!["sparse-ring", "2"],
        vec!["q5"],
    ] {
        let mut full = vec!["construct"];
        full.extend(&args);
        full.push("--json");
        let out = redic(&full);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
        let r = json(&out);
        let path = dir.path().join("g.g6");
        fs::write(&path, r["details"]["graph6"].as_str().unwrap()).unwrap();
        let witness: Vec<String> = r["witness"]
            .as_array()
            .unwrap()
            .iter()
            .map(|v| v.to_string())
            .collect();
        let check = redic(&[
            "verify",
            path.to_str().unwrap(),
            "--graph6",
            "-d",
            &witness.join(","),
        ]);
        assert_eq!(check.status.code(), Some(0), "{args:?}: {}", stdout(&check));
    }
    let star = json(&redic(&["construct", "star-even", "4", "--json"]));
    assert_eq!(star["details"]["vertices"], 7);
    assert_eq!(star["k"], 4);
    assert_eq!(
        star["details"]["certificate"]["certificate"],
        "bound_matches"
    );
    assert_eq!(
        redic(&["construct", "star-even", "5"]).status.code(),
        Some(2)
    );
    assert_eq!(redic(&["construct", "nonsense"]).status.code(), Some(2));
}

#[test]
fn reduce_single_clause() {
    let dir = tempfile::tempdir().unwrap();
    let cnf = dir.path().join("one.cnf");
    fs::write(&cnf, "c one clause\np cnf 3 1\n1 -2 3 0\n").unwrap();
    let out = redic(&["reduce", cnf.to_str().unwrap(), "--check", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["k"], 24);
    assert_eq!(r["outcome"], "holds");
    assert_eq!(r["details"]["sidecar"]["vertices"], 27);
    assert_eq!(r["details"]["sidecar"]["roles"][1], "x_neg1");
    fs::write(&cnf, "p cnf 3 1\n1 2 0\n").unwrap();
    assert_eq!(
        redic(&["reduce", cnf.to_str().unwrap()]).status.code(),
        Some(2)
    );
}

#[test]
fn tables_are_byte_identical_across_runs() {
    let a = redic(&[
        "table1",
        "--max-n",
        "12",
        "--deterministic",
        "--threads",
        "1",
    ]);
    let b = redic(&[
        "table1",
        "--max-n",
        "12",
        "--deterministic",
        "--threads",
        "3",
    ]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).contains("12\t551\t82\t0\t24\t58\tPASS"));
    let c = redic(&["table2", "--max-n", "12", "--deterministic"]);
    let d = redic(&[
        "table2",
        "--max-n",
        "12",
        "--deterministic",
        "--threads",
        "2",
    ]);
    assert_eq!(c.stdout, d.stdout);
    assert!(stdout(&c).contains("10\t19\t14\t6\t8\t6\tPASS"));
}

#[test]
fn table2_reads_a_graph6_corpus() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path().join("cubic10.g6");
    let lines: String = redic_core::generators::enum_cubic(10)
        .unwrap()
        .iter()
        .map(|g| redic_core::formats::write_graph6(g) + "\n")
        .collect();
    fs::write(&corpus, lines).unwrap();
    let out = redic(&[
        "table2",
        "--max-n",
        "10",
        "--corpus",
        corpus.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("10\t19\t14\t6\t8\t6\tPASS"));
    fs::write(&corpus, "Dhc\n").unwrap();
    let bad = redic(&[
        "table2",
        "--max-n",
        "10",
        "--corpus",
        corpus.to_str().unwrap(),
    ]);
    assert_eq!(bad.status.code(), Some(2));
}
