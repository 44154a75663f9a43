//! End-to-end tests of the binary: exit codes, round trips and
//! byte-determinism across runs and thread counts.

use std::path::PathBuf;
use std::process::{Command, Output};

use tightcycle_cli::format;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_tightcycle"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn tmpfile(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("tightcycle-test-{}-{}", std::process::id(), name));
    p
}

#[test]
fn gen_partition_verify_round_trip() {
    let inst = tmpfile("round-inst");
    let cert = tmpfile("round-cert");
    let out = run(&[
        "gen", "--k", "3", "--n", "6", "--r", "2", "--seed", "7", "--out",
        inst.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{:?}", out);
    let out = run(&[
        "partition", "--in", inst.to_str().unwrap(), "--out", cert.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{:?}", out);
    let out = run(&["verify", "--in", inst.to_str().unwrap(), "--cert", cert.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{:?}", out);
}

#[test]
fn corrupted_certificate_rejected() {
    let inst = tmpfile("corrupt-inst");
    let cert = tmpfile("corrupt-cert");
    assert!(run(&[
        "gen", "--k", "3", "--n", "7", "--r", "2", "--seed", "3", "--out",
        inst.to_str().unwrap(),
    ])
    .status
    .success());
    assert!(run(&[
        "partition", "--in", inst.to_str().unwrap(), "--out", cert.to_str().unwrap(),
    ])
    .status
    .success());
    // drop one vertex from the first cycle line
    let text = std::fs::read_to_string(&cert).unwrap();
    let mut lines: Vec<String> = text.lines().map(|s| s.to_string()).collect();
    let idx = lines.iter().position(|l| l.starts_with("cycle ")).unwrap();
    let mut toks: Vec<&str> = lines[idx].split_whitespace().collect();
    toks.pop();
    lines[idx] = toks.join(" ");
    std::fs::write(&cert, lines.join("\n") + "\n").unwrap();
    let out = run(&["verify", "--in", inst.to_str().unwrap(), "--cert", cert.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1), "{:?}", out);
}

#[test]
fn malformed_input_exits_64() {
    let bad = tmpfile("malformed");
    std::fs::write(&bad, "not an instance\n").unwrap();
    let out = run(&["partition", "--in", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(64));

    let bad_edge = tmpfile("malformed-edge");
    std::fs::write(
        &bad_edge,
        format!("{}\nk 3\nn 4\nr 1\nedge 1 0 1\n", format::INSTANCE_HEADER),
    )
    .unwrap();
    let out = run(&["partition", "--in", bad_edge.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(64));
    let msg = String::from_utf8_lossy(&out.stderr);
    assert!(msg.contains("line 5"), "error should carry a line number: {}", msg);
}

#[test]
fn size_limit_exits_65() {
    let out = run(&["scan", "--k", "2", "--r", "2", "--n", "9"]);
    assert_eq!(out.status.code(), Some(65));
}

#[test]
fn outputs_byte_identical_across_runs_and_threads() {
    let inst = tmpfile("det-inst");
    assert!(run(&[
        "gen", "--k", "3", "--n", "8", "--r", "2", "--model", "density", "--density", "0.6",
        "--seed", "11", "--out", inst.to_str().unwrap(),
    ])
    .status
    .success());
    let a = run(&["partition", "--in", inst.to_str().unwrap(), "--seed", "5"]);
    let b = run(&["partition", "--in", inst.to_str().unwrap(), "--seed", "5"]);
    assert_eq!(a.stdout, b.stdout);

    let s1 = run(&["scan", "--k", "2", "--r", "2", "--n", "4", "--prune", "--lehel", "--threads", "1"]);
    let s4 = run(&["scan", "--k", "2", "--r", "2", "--n", "4", "--prune", "--lehel", "--threads", "4"]);
    assert_eq!(s1.stdout, s4.stdout);
}

#[test]
fn emitted_files_reparse() {
    let inst = tmpfile("reparse-inst");
    assert!(run(&[
        "gen", "--k", "2", "--n", "6", "--r", "3", "--model", "density", "--density", "0.4",
        "--seed", "2", "--lehel", "--out", inst.to_str().unwrap(),
    ])
    .status
    .success());
    let text = std::fs::read_to_string(&inst).unwrap();
    let parsed = format::parse_instance(&text).unwrap();
    assert_eq!(format::write_instance(&parsed), text);
}

#[test]
fn crown_counts_and_embedding() {
    let out = run(&["crown", "--k", "3", "--t", "4"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("12 vertices"));
    assert!(text.contains("20 edges"));

    // a crown embeds into a 1-coloured complete host
    let inst = tmpfile("crown-host");
    assert!(run(&[
        "gen", "--k", "3", "--n", "12", "--r", "1", "--seed", "0", "--out",
        inst.to_str().unwrap(),
    ])
    .status
    .success());
    let out = run(&["crown", "--k", "3", "--t", "4", "--embed-in", inst.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{:?}", out);
}

#[test]
fn posa_blocks_transversal_commands() {
    let graph = tmpfile("posa-graph");
    assert!(run(&[
        "gen", "--k", "2", "--n", "8", "--r", "1", "--model", "density", "--density", "0.5",
        "--seed", "4", "--out", graph.to_str().unwrap(),
    ])
    .status
    .success());
    let out = run(&["posa", "--graph", graph.to_str().unwrap()]);
    assert!(out.status.success(), "{:?}", out);

    let family = tmpfile("family");
    let mut text = String::from(format::FAMILY_HEADER);
    text.push('\n');
    text.push_str("ground 8\n");
    for owner in 0..8 {
        text.push_str(&format!("member {} 0 1 2 3 4 5 6 7\n", owner));
    }
    std::fs::write(&family, text).unwrap();
    let out = run(&["blocks", "--family", family.to_str().unwrap(), "--eps", "1"]);
    assert!(out.status.success(), "{:?}", out);
    assert!(String::from_utf8_lossy(&out.stdout).contains("blocks 2"));

    let empty = tmpfile("transversal-host");
    assert!(run(&[
        "gen", "--k", "2", "--n", "6", "--r", "1", "--model", "density", "--density", "0",
        "--seed", "0", "--out", empty.to_str().unwrap(),
    ])
    .status
    .success());
    let out = run(&["transversal", "--in", empty.to_str().unwrap(), "--blocks", "0-1,2-3,4-5"]);
    assert!(out.status.success(), "{:?}", out);
    assert!(String::from_utf8_lossy(&out.stdout).contains("transversal 0 2 4"));
}

#[test]
fn power_reduce_and_partition() {
    let inst = tmpfile("power-inst");
    assert!(run(&[
        "gen", "--k", "2", "--n", "8", "--r", "2", "--seed", "9", "--out",
        inst.to_str().unwrap(),
    ])
    .status
    .success());
    let out = run(&["power", "--in", inst.to_str().unwrap(), "--p", "2", "reduce"]);
    assert!(out.status.success());
    let reduced = format::parse_instance(&String::from_utf8_lossy(&out.stdout)).unwrap();
    assert_eq!(reduced.graph.k(), 3);

    let cert = tmpfile("power-cert");
    let out = run(&[
        "power", "--in", inst.to_str().unwrap(), "--p", "2", "partition", "--out",
        cert.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{:?}", out);
    let (digest, p, items) =
        format::parse_power_certificate(&std::fs::read_to_string(&cert).unwrap()).unwrap();
    assert_eq!(p, 2);
    assert!(!items.is_empty());
    assert_eq!(digest.len(), 64);
}
