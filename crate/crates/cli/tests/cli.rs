use std::path::Path;
use std::process::{Command, Output};

use bihyp::format::{from_edge_list, from_json, to_edge_list, to_json};

fn bihyp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bihyp"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn gen_round_trips_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    for (args, file) in [
        (vec!["--family", "muc", "--n", "11"], "muc11.json"),
        (vec!["--family", "hk", "--k", "3"], "h3.txt"),
        (vec!["--family", "fano"], "fano.json"),
        (vec!["--family", "knlm", "--n", "6", "--l", "3", "--m", "3"], "k6.txt"),
    ] {
        let path = dir.path().join(file);
        let mut full = vec!["gen"];
        full.extend(&args);
        full.extend(["--out", path_str(&path)]);
        let out = bihyp(&full);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        let text = std::fs::read_to_string(&path).unwrap();
        let again = if file.ends_with(".json") {
            to_json(&from_json(&text).unwrap())
        } else {
            to_edge_list(&from_edge_list(&text).unwrap())
        };
        assert_eq!(text.trim_end(), again.trim_end(), "{file}");
        assert!(text.contains("provenance"));
    }
}

#[test]
fn gen_to_stdout_is_json() {
    let out = bihyp(&["gen", "--family", "knlm", "--n", "5", "--l", "3", "--m", "3"]);
    assert!(out.status.success());
    let inst = from_json(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!(inst.hypergraph.n(), 5);
    assert_eq!(inst.hypergraph.num_members(), 10);
}

#[test]
fn solve_reports_status() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.json");
    assert!(bihyp(&["gen", "--family", "muc", "--n", "8", "--out", path_str(&path)])
        .status
        .success());
    let out = bihyp(&["solve", path_str(&path), "--minimal"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["verdict"]["status"], "uncolorable");
    assert_eq!(v["minimal"]["minimal"], true);
}

#[test]
fn enumerate_exit_codes() {
    let held = bihyp(&["enumerate", "--n", "5", "--max-edges", "9"]);
    assert_eq!(held.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&held.stdout).unwrap();
    assert_eq!(v["uncolorable"], 0);

    let refuted = bihyp(&["enumerate", "--n", "5", "--max-edges", "10"]);
    assert_eq!(refuted.status.code(), Some(2));

    let bad = bihyp(&["enumerate", "--n", "5", "--r", "9", "--max-edges", "3"]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn enumerate_persists_to_store() {
    let dir = tempfile::tempdir().unwrap();
    let store = path_str(dir.path());
    let first = bihyp(&["enumerate", "--n", "5", "--max-edges", "4", "--store", store]);
    assert!(first.status.success());
    let v: serde_json::Value = serde_json::from_slice(&first.stdout).unwrap();
    assert!(v["persisted"].as_u64().unwrap() > 0);
    let second = bihyp(&["enumerate", "--n", "5", "--max-edges", "4", "--store", store]);
    let v: serde_json::Value = serde_json::from_slice(&second.stdout).unwrap();
    assert_eq!(v["persisted"], 0);
}

#[test]
fn reduce_rejects_adjacent_pair() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("k.json");
    bihyp(&["gen", "--family", "knlm", "--n", "4", "--l", "3", "--m", "3", "--out", path_str(&path)]);
    assert_eq!(bihyp(&["reduce", path_str(&path), "0", "1"]).status.code(), Some(1));
}

#[test]
fn bad_input_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.txt");
    std::fs::write(&path, "3 3\n0 1 5\n").unwrap();
    let out = bihyp(&["solve", path_str(&path)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
}

#[test]
fn quick_suite_passes() {
    let out = bihyp(&["verify", "--suite", "quick", "--claim", "1", "--claim", "2", "--claim", "9"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["claims"].as_array().unwrap().len(), 3);
}

#[test]
fn gen_family_sizes() {
    for (args, n, members) in [
        (vec!["--family", "hk", "--k", "3"], 9, 15),
        (vec!["--family", "muc", "--n", "8"], 8, 13),
    ] {
        let mut full = vec!["gen"];
        full.extend(args);
        let out = bihyp(&full);
        let inst = from_json(&String::from_utf8(out.stdout).unwrap()).unwrap();
        assert_eq!(inst.hypergraph.n(), n);
        assert_eq!(inst.hypergraph.num_members(), members);
    }
}

#[test]
fn edgeless_instance_has_chibar_n() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("empty.txt");
    std::fs::write(&path, "#bi\n4 0\n").unwrap();
    let out = bihyp(&["solve", path_str(&path), "--chibar"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["verdict"]["status"], "colorable");
    assert_eq!(v["chibar"]["value"], 4);
}

#[test]
fn repeated_verify_is_deterministic() {
    let run = || {
        let out = bihyp(&["verify", "--claim", "7", "--claim", "8", "--seed", "11"]);
        assert!(out.status.success());
        let mut v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        for c in v["claims"].as_array_mut().unwrap() {
            c.as_object_mut().unwrap().remove("elapsed_ms");
        }
        v
    };
    assert_eq!(run(), run());
}
