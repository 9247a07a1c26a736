use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use ihara_classnum::report::VerificationReport;

fn ihara(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ihara"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn graph_file(dir: &Path, name: &str, json: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, json).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn zeta_formulas() {
    let dir = tempfile::tempdir().unwrap();
    let c3 = graph_file(
        dir.path(),
        "c3.json",
        r#"{"n":3,"edges":[[0,1],[1,2],[2,0]]}"#,
    );
    let out = ihara(&["zeta", s(&c3), "--formula", "both"]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out),
        "bass [1,0,0,-2,0,0,1]\nhashimoto [1,0,0,-2,0,0,1]\nEQUAL\n"
    );

    let k4 = graph_file(
        dir.path(),
        "k4.json",
        r#"{"n":4,"edges":[[0,1],[0,2],[0,3],[1,2],[1,3],[2,3]]}"#,
    );
    let out = ihara(&["zeta", s(&k4), "--formula", "bass"]);
    assert_eq!(stdout(&out), "[1,0,0,-8,-6,0,16,24,-3,-16,-24,0,16]\n");
}

#[test]
fn graph_file_errors() {
    let dir = tempfile::tempdir().unwrap();
    let p2 = graph_file(dir.path(), "p2.json", r#"{"n":2,"edges":[[0,1]]}"#);
    let out = ihara(&["zeta", s(&p2)]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("vertex 0"));

    let bad = graph_file(dir.path(), "bad.json", r#"{"n":2,"edges":[[0,1]"#);
    assert_eq!(ihara(&["zeta", s(&bad)]).status.code(), Some(2));
    let looped = graph_file(dir.path(), "loop.json", r#"{"n":2,"edges":[[0,0]]}"#);
    assert_eq!(
        ihara(&["cycles", s(&looped), "--m-max", "3"]).status.code(),
        Some(2)
    );
    assert_eq!(
        ihara(&["zeta", "/nonexistent/graph.json"]).status.code(),
        Some(2)
    );
}

#[test]
fn cycles_tables() {
    let dir = tempfile::tempdir().unwrap();
    let c3 = graph_file(
        dir.path(),
        "c3.json",
        r#"{"n":3,"edges":[[0,1],[1,2],[2,0]]}"#,
    );
    let out = stdout(&ihara(&["cycles", s(&c3), "--m-max", "6"]));
    assert!(out.contains("\n3,6,2,"));
    assert!(out.contains("\n6,6,0,"));

    let k4 = graph_file(
        dir.path(),
        "k4.json",
        r#"{"n":4,"edges":[[0,1],[0,2],[0,3],[1,2],[1,3],[2,3]]}"#,
    );
    let out = stdout(&ihara(&["cycles", s(&k4), "--m-max", "3"]));
    assert!(out.ends_with("\n3,24,8,3.000000\n"), "{out}");

    let q3 = graph_file(
        dir.path(),
        "q3.json",
        r#"{"n":8,"edges":[[0,1],[0,2],[0,4],[1,3],[1,5],[2,3],[2,6],[3,7],[4,5],[4,6],[5,7],[6,7]]}"#,
    );
    let out = stdout(&ihara(&["cycles", s(&q3), "--m-max", "7"]));
    for line in out.lines().skip(1) {
        let cols: Vec<&str> = line.split(',').collect();
        if cols[0].parse::<u32>().unwrap() % 2 == 1 {
            assert_eq!(&cols[1..], ["0", "0", "0.000000"]);
        }
    }

    // irregular graphs get no ratio column
    let lop = graph_file(
        dir.path(),
        "lop.json",
        r#"{"n":3,"edges":[[0,1],[1,2],[2,0],[0,1]]}"#,
    );
    let out = stdout(&ihara(&["cycles", s(&lop), "--m-max", "2"]));
    assert!(out.starts_with("m,N_m,pi_m\n"));
}

#[test]
fn classgroup_listing() {
    let out = ihara(&["classgroup", "-23"]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out),
        "D=-23 h=3\nforms\n0 (1,1,6)\n1 (2,1,3)\n2 (2,-1,3)\ntable\n0 1 2\n1 2 0\n2 0 1\n"
    );
    assert!(stdout(&ihara(&["classgroup", "-4"])).starts_with("D=-4 h=1\nforms\n0 (1,0,1)\n"));
    assert_eq!(ihara(&["classgroup", "-5"]).status.code(), Some(2));
    assert_eq!(ihara(&["classgroup", "abc"]).status.code(), Some(2));
}

#[test]
fn orders_table() {
    let out = ihara(&["orders", "-S", "13", "-p", "2", "--d-bound", "8"]);
    assert_eq!(
        stdout(&out),
        "D,d_F,f,h,f_S,l_p,h_inv\n-7,-7,1,1,2,1,1\n-8,-8,1,1,2,1,1\n"
    );
    assert_eq!(
        ihara(&["orders", "-S", "13", "-p", "13", "--d-bound", "8"])
            .status
            .code(),
        Some(2)
    );
    // 13 splits in Q(sqrt(-23)); 5 stays inert there
    let out = stdout(&ihara(&[
        "orders",
        "-S",
        "13",
        "-p",
        "2",
        "--d-bound",
        "25",
    ]));
    assert!(!out.contains("\n-23,"));
    let out = stdout(&ihara(&["orders", "-S", "5", "-p", "2", "--d-bound", "25"]));
    assert!(out.contains("\n-23,-23,1,3,2,3,1\n"), "{out}");
}

#[test]
fn verify_reports() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("r.csv");
    let json = dir.path().join("r.json");
    let out = ihara(&[
        "verify",
        "-p",
        "2",
        "-S",
        "13",
        "--m-max",
        "1",
        "-o",
        s(&csv),
        "--json",
        s(&json),
    ]);
    assert!(out.status.success());
    let text = fs::read_to_string(&csv).unwrap();
    assert_eq!(
        text,
        "m,T_m,target_num,target_den,ratio,h_sum,liminf_diag\n1,4,2,2,4.000000,2,1.000000\n"
    );
    assert!(stdout(&out).contains("ratio=4.000000"));
    let mirror = VerificationReport::from_json(&fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(mirror.to_csv(), text);
    assert_eq!(mirror.provenance.s, vec![13]);

    let out = ihara(&["verify", "-p", "2", "-S", "5", "--m-max", "2"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));

    assert_eq!(
        ihara(&["verify", "-p", "13", "-S", "13", "--m-max", "2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        ihara(&["verify", "-p", "2", "-S", "13", "--m-max", "0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        ihara(&["verify", "-p", "2", "-S", "13", "--m-max", "5", "--k-cap", "3"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn verify_json_and_threads() {
    let run = |threads: &str| {
        stdout(&ihara(&[
            "--threads",
            threads,
            "verify",
            "-p",
            "3",
            "-S",
            "13",
            "--m-max",
            "5",
            "--format",
            "json",
        ]))
    };
    let one = run("1");
    assert_eq!(one, run("4"));
    let report = VerificationReport::from_json(&one).unwrap();
    assert_eq!(report.rows.len(), 5);
    assert_eq!(report.rows[0].target_num.to_string(), "3");
    assert!(!one.contains("threads"));
}
