use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn mms(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mms"))
        .args(args)
        .env("MMS_LOG", "error")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let out = mms(args);
    assert_eq!(code(&out), 0, "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    stdout(&out)
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// Lines after the `# ` provenance header.
fn csv_body(path: &Path) -> String {
    let text = fs::read_to_string(path).unwrap();
    assert!(text.starts_with("# tool: mms "), "{text}");
    text.lines().filter(|l| !l.starts_with("# ")).collect::<Vec<_>>().join("\n")
}

fn json(path: &Path) -> serde_json::Value {
    let text = fs::read_to_string(path).unwrap();
    assert!(text.starts_with("{\n  \"provenance\""));
    serde_json::from_str(&text).unwrap()
}

struct Workspace {
    dir: TempDir,
}

impl Workspace {
    fn new() -> Self {
        Workspace { dir: tempfile::tempdir().unwrap() }
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }

    fn write(&self, name: &str, text: &str) -> PathBuf {
        let p = self.path(name);
        fs::write(&p, text).unwrap();
        p
    }

    fn gen(&self, name: &str, args: &[&str]) -> PathBuf {
        let p = self.path(name);
        let mut full = vec!["gen"];
        full.extend_from_slice(args);
        full.extend_from_slice(&["--out", path_str(&p)]);
        ok(&full);
        p
    }
}

fn vertex_count(path: &Path) -> usize {
    json(path)["vertices"].as_array().unwrap().len()
}

#[test]
fn gen_sizes_and_bad_params() {
    let ws = Workspace::new();
    assert_eq!(vertex_count(&ws.gen("g.json", &["--kind", "grid", "--n", "16", "--dim", "2"])), 256);
    assert_eq!(vertex_count(&ws.gen("c.json", &["--kind", "carpet", "--level", "3"])), 512);
    let bad = ws.path("p1.json");
    assert_eq!(code(&mms(&["gen", "--kind", "path", "--n", "1", "--out", path_str(&bad)])), 2);
}

#[test]
fn energies_on_canonical_path() {
    let ws = Workspace::new();
    let g = ws.gen("p5.json", &["--kind", "path", "--n", "5"]);
    let omega = ws.write("omega.json", r#"{"x": "v0", "y": "v4", "omega": ["v0", "v1", "v2"]}"#);
    let out = ws.path("e.csv");
    ok(&["energies", "--graph", path_str(&g), "--omega", path_str(&omega), "--L", "1", "--out", path_str(&out)]);
    let body = csv_body(&out);
    let mut lines = body.lines();
    assert_eq!(
        lines.next().unwrap(),
        "x,y,L,p,bp,bp_r,bc,bmc,bmc0,bh_f,bh_g,mod1,witness_size,bam_local"
    );
    assert_eq!(lines.next().unwrap(), "v0,v4,1,1,2,2,2,2,2,4,4,2,3,4");

    let plain = ws.write("plain.json", r#"["v0", "v1", "v2"]"#);
    let stdout = ok(&["energies", "--graph", path_str(&g), "--omega", path_str(&plain), "--x", "v0", "--y", "v4", "--L", "1"]);
    assert!(stdout.contains("v0,v4,1,1,2,2,2,2,2,4,4,2,3,4"));
}

#[test]
fn energies_errors() {
    let ws = Workspace::new();
    let g = ws.gen("p5.json", &["--kind", "path", "--n", "5"]);
    let shallow = ws.write("o.json", r#"{"x": "v0", "y": "v4", "omega": ["v0"]}"#);
    let out = mms(&["energies", "--graph", path_str(&g), "--omega", path_str(&shallow)]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("one-hop interior"));

    let missing = ws.path("nope.json");
    assert_eq!(code(&mms(&["energies", "--graph", path_str(&missing), "--omega", path_str(&shallow)])), 4);
    let garbage = ws.write("bad.json", "{not json");
    assert_eq!(code(&mms(&["energies", "--graph", path_str(&garbage), "--omega", path_str(&shallow)])), 4);
}

#[test]
fn mincut_value_witness_and_errors() {
    let ws = Workspace::new();
    let g = ws.gen("p5.json", &["--kind", "path", "--n", "5"]);
    let w = ws.path("w.json");
    let printed = ok(&["mincut", "--graph", path_str(&g), "--x", "v0", "--y", "v4", "--L", "1", "--out", path_str(&w)]);
    assert_eq!(printed.trim(), "2");
    let witness = json(&w);
    assert_eq!(witness["omega"], serde_json::json!(["v0", "v1", "v2"]));
    assert_eq!(witness["value"], 2.0);

    let tri = ws.write(
        "tri.json",
        r#"{"vertices": [{"id": "a", "m": 1}, {"id": "b", "m": 1}, {"id": "c", "m": 1}],
            "edges": [{"u": "a", "v": "b", "len": 1}, {"u": "b", "v": "c", "len": 1}, {"u": "a", "v": "c", "len": 1}]}"#,
    );
    let out = mms(&["mincut", "--graph", path_str(&tri), "--x", "a", "--y", "b"]);
    assert_eq!(code(&out), 3);
    assert!(String::from_utf8_lossy(&out.stderr).contains("no valid separating set"));
    assert_eq!(code(&mms(&["mincut", "--graph", path_str(&g), "--x", "v0", "--y", "v4", "--L", "0.5"])), 2);
    assert_eq!(code(&mms(&["mincut", "--graph", path_str(&g), "--x", "v0", "--y", "zz"])), 2);
}

#[test]
fn graph_loader_rejects_invalid_values() {
    let ws = Workspace::new();
    let neg = ws.write(
        "neg.json",
        r#"{"vertices": [{"id": "a", "m": -1}, {"id": "b", "m": 1}], "edges": [{"u": "a", "v": "b", "len": 1}]}"#,
    );
    let zero = ws.write(
        "zero.json",
        r#"{"vertices": [{"id": "a", "m": 1}, {"id": "b", "m": 1}], "edges": [{"u": "a", "v": "b", "len": 0}]}"#,
    );
    for p in [neg, zero] {
        assert_eq!(code(&mms(&["riesz-dump", "--graph", path_str(&p), "--x", "a", "--y", "b"])), 2);
    }
}

#[test]
fn riesz_dump_columns() {
    let ws = Workspace::new();
    let g = ws.gen("p5.json", &["--kind", "path", "--n", "5"]);
    let out = ws.path("r.csv");
    ok(&["riesz-dump", "--graph", path_str(&g), "--x", "v0", "--y", "v4", "--L", "1", "--out", path_str(&out)]);
    let body = csv_body(&out);
    let lines: Vec<&str> = body.lines().collect();
    assert_eq!(lines[0], "vertex_id,d_x,d_y,R,in_ball,riesz_m");
    assert_eq!(lines[2], "v1,1,3,2,1,2");
    assert_eq!(lines.len(), 6);
}

#[test]
fn pi_scan_outputs_are_deterministic() {
    let ws = Workspace::new();
    let g = ws.gen("grid.json", &["--kind", "grid", "--n", "8"]);
    let run = |name: &str, threads: &str| {
        let out = ws.path(name);
        ok(&[
            "pi-scan", "--graph", path_str(&g), "--random", "6", "--seed", "11", "--suite", "8",
            "--threads", threads, "--out", path_str(&out),
        ]);
        out
    };
    let one = run("a.csv", "1");
    let four = run("b.csv", "4");
    let again = run("c.csv", "4");
    assert_eq!(csv_body(&one), csv_body(&four));
    assert_eq!(fs::read(&four).unwrap(), fs::read(&again).unwrap());

    let body = csv_body(&one);
    let mut lines = body.lines();
    assert_eq!(lines.next().unwrap(), "pair_id,x,y,L,c_cut,c_fn,bound_2_over_ccut,pass");
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 6);
    assert!(rows.iter().all(|r| r.ends_with(",true")));

    let summary = json(&one.with_extension("json"));
    assert_eq!(summary["n_pairs"], 6);
    assert_eq!(summary["seed"], 11);
    assert!(summary["min_c_cut"].as_f64().unwrap() > 0.0);
    assert!(summary["max_c_fn"].as_f64().unwrap() > 0.0);
    assert_eq!(summary["provenance"]["seed"], 11);
}

#[test]
fn pi_scan_pole_sources() {
    let ws = Workspace::new();
    let g = ws.gen("grid.json", &["--kind", "grid", "--n", "8"]);
    let out = ws.path("s.csv");
    ok(&["pi-scan", "--graph", path_str(&g), "--x", "1,1", "--y", "6,6", "--x", "0,0", "--y", "7,7", "--out", path_str(&out)]);
    assert_eq!(csv_body(&out).lines().count(), 3);
    ok(&["pi-scan", "--graph", path_str(&g), "--diameter", "--out", path_str(&out)]);
    let body = csv_body(&out);
    assert!(body.lines().nth(1).unwrap().starts_with("0,\"0,0\",\"7,7\","), "{body}");

    assert_eq!(code(&mms(&["pi-scan", "--graph", path_str(&g), "--out", path_str(&out)])), 2);
    assert_eq!(code(&mms(&["pi-scan", "--graph", path_str(&g), "--x", "0,0", "--out", path_str(&out)])), 2);
}

#[test]
fn selftest_passes_and_detects_injected_fault() {
    let out = ok(&["selftest"]);
    assert!(out.lines().count() >= 8);
    assert!(!out.contains("FAIL"));
    let broken = mms(&["selftest", "--inject-fault", "capacity"]);
    assert_ne!(code(&broken), 0);
    assert!(stdout(&broken).contains("FAIL"));
}
