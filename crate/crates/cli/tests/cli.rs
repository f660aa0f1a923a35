use std::process::{Command, Output};

fn cqdef(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cqdef")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn analyze_text() {
    let o = cqdef(&["analyze", "8", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("K (2 components)"));
    assert!(s.contains("deformations (7)"));
}

#[test]
fn analyze_json_counts() {
    let o = cqdef(&["analyze", "8", "3", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["deformations"].as_array().unwrap().len(), 7);
    assert_eq!(v["k"].as_array().unwrap().len(), 2);
    assert_eq!(v["schema_version"], 1);
}

#[test]
fn exit_codes() {
    let hyper = cqdef(&["analyze", "4", "3"]);
    assert_eq!(hyper.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&hyper.stderr).contains("hypersurface"));
    assert_eq!(cqdef(&["analyze", "6", "4"]).status.code(), Some(1));
    assert_eq!(cqdef(&["analyze", "eight", "3"]).status.code(), Some(1));
    assert_eq!(cqdef(&["scan", "--n-range", "3-9"]).status.code(), Some(1));
    assert_eq!(cqdef(&["--help"]).status.code(), Some(0));
}

#[test]
fn thread_variable() {
    let run = |v: &str| {
        Command::new(env!("CARGO_BIN_EXE_cqdef"))
            .args(["scan", "--n-range", "3:12"])
            .env("CQDEF_THREADS", v)
            .output()
            .unwrap()
    };
    let one = run("1");
    let four = run("4");
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(stdout(&one), stdout(&four));
    assert_eq!(run("lots").status.code(), Some(1));
}

#[test]
fn scan_rows() {
    let o = cqdef(&["scan", "--n-range", "3:10", "--csv"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    let mut lines = s.lines();
    assert_eq!(lines.next(), Some("n,q,e,k_count,deformations,smoothings,t_singularity,error"));
    assert!(s.lines().any(|l| l == "8,3,5,2,7,1,true,"), "{s}");
    // q = n - 1 is never a row
    assert!(!s.lines().any(|l| l.starts_with("8,7,")));
}

#[test]
fn empty_scan() {
    let o = cqdef(&["scan", "--n-range", "10:3", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "[]");
    let o = cqdef(&["scan", "--n-range", "10:3"]);
    assert_eq!(stdout(&o).lines().count(), 1);
}

#[test]
fn checkpoint_resume() {
    let dir = tempfile::tempdir().unwrap();
    let ck = dir.path().join("scan.ckpt");
    let ck = ck.to_str().unwrap();
    let full = stdout(&cqdef(&["scan", "--n-range", "3:20", "--json"]));
    let partial = cqdef(&["scan", "--n-range", "3:12", "--checkpoint", ck]);
    assert_eq!(partial.status.code(), Some(0));
    let resumed = stdout(&cqdef(&["scan", "--n-range", "3:20", "--json", "--checkpoint", ck]));
    assert_eq!(resumed, full);
    let again = stdout(&cqdef(&["scan", "--n-range", "3:20", "--json", "--checkpoint", ck]));
    assert_eq!(again, full);
    // each row is stored once
    let stored = std::fs::read_to_string(ck).unwrap().lines().count();
    let rows: Vec<serde_json::Value> = serde_json::from_str(&full).unwrap();
    assert_eq!(stored, rows.len());
}

#[test]
fn torn_checkpoint_line_is_recomputed() {
    let dir = tempfile::tempdir().unwrap();
    let ck = dir.path().join("scan.ckpt");
    cqdef(&["scan", "--n-range", "3:9", "--checkpoint", ck.to_str().unwrap()]);
    let mut text = std::fs::read_to_string(&ck).unwrap();
    text.truncate(text.len() - 10);
    std::fs::write(&ck, text).unwrap();
    let resumed = stdout(&cqdef(&["scan", "--n-range", "3:9", "--checkpoint", ck.to_str().unwrap()]));
    assert_eq!(resumed, stdout(&cqdef(&["scan", "--n-range", "3:9"])));
}

#[test]
fn svg_directory() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("figs");
    let o = cqdef(&["analyze", "8", "3", "--svg", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    for f in ["segments.svg", "decompositions.svg", "slices.svg"] {
        let s = std::fs::read_to_string(out.join(f)).unwrap();
        assert!(s.starts_with("<svg"), "{f}");
    }
}

#[test]
fn figure_command() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("seg.svg");
    let o = cqdef(&["figure", "8", "3", "segments", "-o", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(std::fs::read_to_string(&path).unwrap().contains("1/8(3,1)"));
    let o = cqdef(&["figure", "8", "3", "fans", "-o", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}
