use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn cgt(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cgt")).env("COMPONENT_CACHE_DIR", cache).args(args).output().unwrap()
}

fn json(cache: &Path, args: &[&str]) -> (i32, Value) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let out = cgt(cache, &all);
    let v = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap(), v)
}

#[test]
fn delta_examples() {
    let dir = tempfile::tempdir().unwrap();
    let (code, v) = json(dir.path(), &["delta", "Sp(6,2)", "W2+V2"]);
    assert_eq!(code, 0);
    let r = &v["result"];
    assert_eq!(r["delta_order"], 64);
    assert_eq!(r["elementary_abelian"], true);
    assert_eq!(r["completeness"], "exact");

    let (_, v) = json(dir.path(), &["delta", "SL(3,2)", "J2 J1"]);
    assert_eq!(v["result"]["delta_order"], 168);
    let (_, v) = json(dir.path(), &["delta", "Sz(8)", "inv"]);
    assert_eq!(v["result"]["delta_order"], 8);
}

#[test]
fn delta_infinity_examples() {
    let dir = tempfile::tempdir().unwrap();
    for (group, label, orders) in [
        ("Sp(6,2)", "W2+V2", vec![64u64, 1451520]),
        ("SL(2,4)", "J2", vec![4]),
        ("SL(3,2)", "J2 J1", vec![168]),
    ] {
        let (code, v) = json(dir.path(), &["delta-inf", group, label]);
        assert_eq!(code, 0);
        let got: Vec<u64> =
            v["result"]["stages"].as_array().unwrap().iter().map(|s| s["delta_order"].as_u64().unwrap()).collect();
        assert_eq!(got, orders, "{group}");
    }
}

#[test]
fn class_graph_dot_is_stable() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.dot");
    let b = dir.path().join("b.dot");
    let out = cgt(dir.path(), &["class-graph", "Sp(6,2)", "--no-cache", "--dot", a.to_str().unwrap()]);
    assert!(out.status.success());
    cgt(dir.path(), &["class-graph", "Sp(6,2)", "--no-cache", "--dot", b.to_str().unwrap()]);
    let (da, db) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(da, db);
    assert!(String::from_utf8(da).unwrap().starts_with("digraph"));

    let (_, v) = json(dir.path(), &["class-graph", "Sz(8)"]);
    assert_eq!(v["result"]["white"], 1);
    assert_eq!(v["result"]["edges"].as_array().unwrap().len(), 0);
    let (_, v) = json(dir.path(), &["class-graph", "SL(3,2)"]);
    assert_eq!(v["result"]["white"], 0);
}

#[test]
fn binary_examples() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["binary", "SL(2,8)", "sylow:2", "--method", "ti"][..],
        &["binary", "SU(3,3)", "root:long", "--method", "ti"],
        &["binary", "Sz(8)", "--method", "ti"],
    ] {
        let (code, v) = json(dir.path(), args);
        assert_eq!(code, 0, "{args:?}");
        assert_eq!(v["result"]["binary"], true, "{args:?}");
    }
    let (code, v) = json(dir.path(), &["binary", "Sz(8)", "sylow-centre:2", "--method", "filter"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["verdict"]["verdict"], "pass");

    let (code, v) = json(dir.path(), &["binary", "SL(2,5)", "sylow:5", "--method", "bounded"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["binary"], false);
    assert_eq!(v["result"]["verdict"]["verdict"], "violation");
}

#[test]
fn gens_file_subgroup() {
    use cgt_core::binary::Transporter;
    use cgt_core::catalog::make_group;
    let dir = tempfile::tempdir().unwrap();
    let c = make_group(&"SL(3,2)".parse().unwrap()).unwrap();
    let mut tr = Transporter::new(c.group());
    let stab = tr.pointwise_stabilizer(&[0]).unwrap();
    let lines: Vec<String> = stab.iter().map(|g| g.cycles_string()).collect();
    let f = dir.path().join("h.txt");
    std::fs::write(&f, format!("# point stabilizer\n{}\n", lines.join("\n"))).unwrap();
    let arg = format!("gens:{}", f.display());
    let (code, v) = json(dir.path(), &["binary", "SL(3,2)", &arg, "--method", "bounded"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["degree"], 7);
    assert_eq!(v["result"]["subgroup_order"], 24);
    assert!(v["result"]["binary"].is_boolean());
    assert!(v["inputs"]["subgroup"].as_str().unwrap().starts_with("gens:"));

    std::fs::write(&f, "(1,2)\n").unwrap();
    assert_eq!(cgt(dir.path(), &["binary", "SL(3,2)", &arg]).status.code(), Some(2));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(cgt(dir.path(), &["delta", "Sp(7,2)", "W2"]).status.code(), Some(2));
    assert_eq!(cgt(dir.path(), &["delta", "Sp(6,2)", "J2"]).status.code(), Some(2));
    assert_eq!(cgt(dir.path(), &["delta", "2F4(2)'", "inv"]).status.code(), Some(2));
    assert_eq!(cgt(dir.path(), &["binary", "Sp(6,2)", "sylow:2"]).status.code(), Some(2));
    assert_eq!(cgt(dir.path(), &["bogus"]).status.code(), Some(2));
    assert_eq!(cgt(dir.path(), &["delta-inf", "Sp(6,2)", "W2+V2", "--budget", "10"]).status.code(), Some(0));
}

#[test]
fn cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["delta", "SL(3,4)", "J2 J1", "--mode", "rand", "--seed", "5", "--samples", "50"];
    let (_, first) = json(dir.path(), &args);
    let files: Vec<_> = walk(dir.path());
    assert_eq!(files.len(), 1);
    let (_, cached) = json(dir.path(), &args);
    assert_eq!(first, cached);
    let mut again = args.to_vec();
    again.push("--recompute");
    let (_, fresh) = json(dir.path(), &again);
    assert_eq!(first["result"].to_string(), fresh["result"].to_string());
    let mut other = args.to_vec();
    other[6] = "6";
    json(dir.path(), &other);
    assert_eq!(walk(dir.path()).len(), 2);
}

fn walk(p: &Path) -> Vec<std::path::PathBuf> {
    let mut out = Vec::new();
    for e in std::fs::read_dir(p).unwrap() {
        let path = e.unwrap().path();
        if path.is_dir() {
            out.extend(walk(&path));
        } else {
            out.push(path);
        }
    }
    out
}
