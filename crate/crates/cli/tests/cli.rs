use std::path::PathBuf;
use std::process::{Command, Output};

use qcpart::report::RunReport;

fn data(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("tests/data");
    p.push(name);
    p.display().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qcpart"))
        .args(args)
        .env_remove("QCPART_ORACLE_CAP")
        .output()
        .expect("failed to run qcpart")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json_report(args: &[&str]) -> RunReport {
    let out = run(args);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_str(&stdout(&out)).unwrap()
}

#[test]
fn partition_json_three_parts() {
    let fig7 = data("fig7.qc");
    let r = json_report(&[
        "partition",
        "--circuit",
        &fig7,
        "--parts",
        "3",
        "--format",
        "json",
    ]);
    assert_eq!(r.cost, 4);
    assert_eq!(r.assignment, vec![vec![1], vec![2], vec![3, 4]]);
    assert_eq!(r.ratio_r, "0.50");
    assert_eq!(r.circuit_name, "fig7");
    assert!(r.wall_time_ms.is_some());
}

#[test]
fn partition_single_part_costs_nothing() {
    let fig7 = data("fig7.qc");
    let r = json_report(&[
        "partition",
        "--circuit",
        &fig7,
        "--parts",
        "1",
        "--format",
        "json",
    ]);
    assert_eq!(r.cost, 0);
    assert_eq!(r.assignment, vec![vec![1, 2, 3, 4]]);
}

#[test]
fn partition_table_block() {
    let fig7 = data("fig7.qc");
    let out = run(&[
        "partition",
        "--circuit",
        &fig7,
        "--parts",
        "3",
        "--table",
        "--format",
        "csv",
        "--no-timing",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut blocks = text.split("\n\n");
    assert_eq!(
        blocks.next().unwrap(),
        "name,n,gates,k,cost,r,time_ms\nfig7,4,7,3,4,0.50,"
    );
    let table: Vec<&str> = blocks.next().unwrap().lines().collect();
    assert_eq!(table[0], "index,set,k=1,k=2,k=3");
    let k2: Vec<&str> = table[1..]
        .iter()
        .map(|row| row.rsplit(',').nth(1).unwrap())
        .collect();
    assert_eq!(
        k2,
        ["N.A", "N.A", "1", "N.A", "1", "2", "2", "N.A", "0", "0", "0", "3", "1", "2", "2"]
    );
    assert!(table[15].ends_with(",0,2,4"));
}

#[test]
fn partition_json_embeds_table_and_trace() {
    let fig9 = data("fig9.qc");
    let r = json_report(&[
        "partition",
        "--circuit",
        &fig9,
        "--parts",
        "2",
        "--table",
        "--trace",
        "--format",
        "json",
    ]);
    assert_eq!(r.cost, 1);
    assert_eq!(r.assignment, vec![vec![1, 2, 4], vec![3]]);
    let trace = r.trace.unwrap();
    assert_eq!(trace.len(), 9);
    assert_eq!(trace[1].rendering, "CNOT(q3,p1,q1,p0)");
    assert_eq!(r.dp_table.unwrap().len(), 15);
}

#[test]
fn no_timing_output_is_byte_identical() {
    let fig7 = data("fig7.qc");
    let args = [
        "partition",
        "--circuit",
        &fig7,
        "--parts",
        "1..4",
        "--format",
        "json",
        "--trace",
        "--no-timing",
    ];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let reports: Vec<RunReport> = serde_json::from_slice(&a.stdout).unwrap();
    let costs: Vec<u64> = reports.iter().map(|r| r.cost).collect();
    assert_eq!(costs, vec![0, 2, 4, 7]);
    assert!(reports.iter().all(|r| r.wall_time_ms.is_none()));
}

#[test]
fn text_output_with_trace() {
    let fig9 = data("fig9.qc");
    let out = run(&[
        "partition",
        "--circuit",
        &fig9,
        "--parts",
        "2",
        "--trace",
        "--no-timing",
    ]);
    let text = stdout(&out);
    assert!(text.contains("teleportations: 1"));
    assert!(text.contains("parts: p0={q1,q2,q4} p1={q3}"));
    assert!(text.contains("g2        | CNOT(q3,p1,q1,p0) | G"));
    assert!(!text.contains("time:"));
}

#[test]
fn oracle_values() {
    let fig7 = data("fig7.qc");
    let fig34 = data("fig34.qc");
    let r = json_report(&[
        "oracle",
        "--circuit",
        &fig7,
        "--parts",
        "3",
        "--format",
        "json",
    ]);
    assert_eq!(r.cost, 4);
    let r = json_report(&[
        "oracle",
        "--circuit",
        &fig7,
        "--parts",
        "4",
        "--format",
        "json",
        "--compare-dp",
    ]);
    assert_eq!(r.cost, 7);
    assert_eq!(r.matches_dp, Some(true));
    // Optimum for the three-qubit example isolates q2 (one cut gate).
    let r = json_report(&[
        "oracle",
        "--circuit",
        &fig34,
        "--parts",
        "2",
        "--format",
        "json",
    ]);
    assert_eq!(r.cost, 1);
}

#[test]
fn oracle_cap_env() {
    let out = run(&["oracle", "--gen", "qft:13", "--parts", "2"]);
    assert_eq!(out.status.code(), Some(3));
    let out = Command::new(env!("CARGO_BIN_EXE_qcpart"))
        .args(["oracle", "--gen", "qft:5", "--parts", "2"])
        .env("QCPART_ORACLE_CAP", "4")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert!(stdout(&out).is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("QCPART_ORACLE_CAP"));
}

#[test]
fn bench_generated_rows() {
    let out = run(&[
        "bench",
        "--gen",
        "qft:4..8",
        "--parts",
        "3,5",
        "--no-timing",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let rows: Vec<Vec<&str>> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').collect())
        .collect();
    assert_eq!(rows.len(), 10);
    for row in &rows {
        if !row[7].is_empty() {
            // qft4 cannot be split into 5 parts
            assert_eq!((row[0], row[3]), ("qft4", "5"));
            continue;
        }
        let n: u64 = row[1].parse().unwrap();
        let k: u64 = row[3].parse().unwrap();
        let cost: u64 = row[4].parse().unwrap();
        let closed = n * (n - 1) / 2 - (n - k + 1) * (n - k) / 2;
        assert_eq!(cost, closed);
        let hundredths = (cost * 200 + 2 * n) / (4 * n);
        assert_eq!(
            row[5],
            format!("{}.{:02}", hundredths / 100, hundredths % 100)
        );
    }
}

#[test]
fn bench_file_costs_monotone() {
    let fig7 = data("fig7.qc");
    let out = run(&[
        "bench",
        "--circuit",
        &fig7,
        "--parts",
        "1..4",
        "--no-timing",
    ]);
    let text = stdout(&out);
    let costs: Vec<&str> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(4).unwrap())
        .collect();
    assert_eq!(costs, vec!["0", "2", "4", "7"]);
}

#[test]
fn bench_without_circuits_is_header_only() {
    let out = run(&["bench", "--parts", "2"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "name,n,gates,k,cost,r,time_ms,error\n");
}

#[test]
fn bench_records_bad_file_and_continues() {
    let bad = data("selfloop.qc");
    let fig7 = data("fig7.qc");
    let out = run(&[
        "bench",
        "--circuit",
        &bad,
        "--circuit",
        &fig7,
        "--parts",
        "2",
        "--no-timing",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 3);
    assert!(lines[1].starts_with("selfloop,,,,,,,"));
    assert_eq!(lines[2], "fig7,4,7,2,2,0.25,,");
}

#[test]
fn gen_qft_files() {
    let out = run(&["gen", "qft", "--qubits", "3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 7);
    assert!(text.starts_with("qubits 3\n"));
    let c = qcpart::parse_circuit(&text).unwrap();
    assert_eq!(c.len(), 6);

    let out = run(&["gen", "qft", "--qubits", "1"]);
    assert_eq!(stdout(&out), "qubits 1\nh 1\n");

    let out = run(&["gen", "qft", "--qubits", "0"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["gen", "ghz", "--qubits", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn gen_to_file_then_partition() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("qft6.qc");
    let path_s = path.display().to_string();
    assert!(run(&["gen", "qft", "--qubits", "6", "--output", &path_s])
        .status
        .success());
    let r = json_report(&[
        "partition",
        "--circuit",
        &path_s,
        "--parts",
        "3",
        "--format",
        "json",
        "--threads",
        "2",
    ]);
    assert_eq!(r.cost, 15 - 6);
    assert_eq!(r.circuit_name, "qft6");
}

#[test]
fn error_exit_codes() {
    let bad = data("selfloop.qc");
    let out = run(&["partition", "--circuit", &bad, "--parts", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    assert!(stdout(&out).is_empty());

    let out = run(&["partition", "--circuit", "/nonexistent.qc", "--parts", "2"]);
    assert_eq!(out.status.code(), Some(1));

    let fig7 = data("fig7.qc");
    let out = run(&["partition", "--circuit", &fig7, "--parts", "5"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&[
        "partition",
        "--circuit",
        &fig7,
        "--parts",
        "2",
        "--max-part-size",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["partition", "--gen", "qft:25", "--parts", "2"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn capped_partition_flags_constraint() {
    let fig7 = data("fig7.qc");
    let r = json_report(&[
        "partition",
        "--circuit",
        &fig7,
        "--parts",
        "2",
        "--max-part-size",
        "2",
        "--format",
        "json",
    ]);
    assert_eq!(r.cost, 3);
    assert_eq!(r.assignment, vec![vec![1, 2], vec![3, 4]]);
    assert!(r.flags.constrained);
}

#[test]
fn real_import_needs_flag() {
    let real = data("toffoli.real");
    let out = run(&["partition", "--circuit", &real, "--parts", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("decompose_mct"));
    let r = json_report(&[
        "partition",
        "--circuit",
        &real,
        "--parts",
        "2",
        "--decompose-mct",
        "--format",
        "json",
    ]);
    assert!(r.flags.approximate);
    assert_eq!(r.gate_count, 3);
    // one CNOT on each pair (a,b), (a,c), (b,c)
    assert_eq!(r.cost, 2);
}

#[test]
fn dot_export() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("g.dot");
    let fig34 = data("fig34.qc");
    let out = run(&[
        "partition",
        "--circuit",
        &fig34,
        "--parts",
        "2",
        "--dot",
        &dot.display().to_string(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(dot).unwrap();
    assert!(text.starts_with("graph bigraph {"));
    assert_eq!(text.matches(" -- ").count(), 6);
}
