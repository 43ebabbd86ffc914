//! End-to-end runs of the `cwb` binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn family(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../families").join(name)
}

fn cwb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cwb")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn check_passes() {
    let o = cwb(&["check", path(&family("tsv_ab.lca"))]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("pass"));
}

#[test]
fn h2_at_a_point() {
    let o = cwb(&["h2", path(&family("tsv_ab.lca")), "--at", "a=0,b=0", "--no-explore"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("dim H2 = 3"), "{}", stdout(&o));
}

#[test]
fn cder_at_three_halves() {
    let o = cwb(&["cder", path(&family("tsv_ab.lca")), "--at", "a=3/2,b=7", "--no-explore"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("outer dim = 1"), "{out}");
    assert!(out.contains("R(L)=M"), "{out}");
}

#[test]
fn verification_failure_exits_one() {
    let o = cwb(&["gd", path(&family("tsv_c.lca"))]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("d^2"));
}

#[test]
fn usage_and_input_errors_exit_two() {
    assert_eq!(cwb(&["check", "no/such/file.lca"]).status.code(), Some(2));
    assert_eq!(cwb(&["check"]).status.code(), Some(2));
    assert_eq!(cwb(&["h2", path(&family("tsv_ab.lca")), "--at", "a=x"]).status.code(), Some(2));
    assert_eq!(cwb(&["h2", path(&family("tsv_ab.lca")), "--at", "q=1"]).status.code(), Some(2));
    assert_eq!(cwb(&["frobnicate"]).status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.lca");
    std::fs::write(&bad, "algebra V() {\n  generators: L, Y;\n  bracket L L = L*Y;\n}\n").unwrap();
    let o = cwb(&["check", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("3:"), "error names the line");
}

#[test]
fn report_is_deterministic_json() {
    let dir = tempfile::tempdir().unwrap();
    let (one, two) = (dir.path().join("one.json"), dir.path().join("two.json"));
    for out in [&one, &two] {
        let o = cwb(&["report", path(&family("tsv_c.lca")), "-o", out.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    }
    let (a, b) = (std::fs::read(&one).unwrap(), std::fs::read(&two).unwrap());
    assert_eq!(a, b);
    let json: serde_json::Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(json["algebra"], "TSVc");
    let commands: Vec<&str> = json["jobs"].as_array().unwrap().iter().map(|j| j["command"].as_str().unwrap()).collect();
    assert_eq!(commands, ["check", "h2", "cder", "coeff", "modules"]);
    assert_eq!(json["jobs"][1]["dims"]["H2"], 1);
}

#[test]
fn empty_job_list_gives_an_empty_report() {
    let dir = tempfile::tempdir().unwrap();
    let doc = dir.path().join("vir.lca");
    std::fs::write(&doc, "algebra Vir() { generators: L; bracket L L = (d + 2*l)*L; }\n").unwrap();
    let out = dir.path().join("r.json");
    let o = cwb(&["report", doc.to_str().unwrap(), "-o", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(json["jobs"].as_array().unwrap().len(), 0);

    let o = cwb(&["report", doc.to_str().unwrap(), "-o", out.to_str().unwrap(), "--all"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert!(json["jobs"].as_array().unwrap().len() >= 4);
}

#[test]
fn json_flag_on_single_commands() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("h2.json");
    let o = cwb(&["h2", path(&family("vir.lca")), "--json", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(json["jobs"][0]["dims"]["H2"], 1);
    assert_eq!(json["jobs"][0]["bases"][0], "a(L,L)=l^3");
}

#[test]
fn solve_reports_the_constraints() {
    let dir = tempfile::tempdir().unwrap();
    let doc = dir.path().join("ansatz.lca");
    std::fs::write(
        &doc,
        "algebra A(p,r) {\n  generators: L, Y, M;\n  bracket L L = (d + 2*l)*L;\n  bracket L Y = (d + p*l)*Y;\n  \
         bracket L M = (d + r*l)*M;\n  bracket Y Y = (d + 2*l)*M;\n}\n",
    )
    .unwrap();
    let o = cwb(&["solve", doc.to_str().unwrap(), "--unknowns", "r"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("r = 2*p - 2"), "{}", stdout(&o));
}
