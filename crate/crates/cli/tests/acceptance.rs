//! Binary half of the round-trip criterion: every JSON document the CLI
//! prints deserializes into the owning module's type and passes that
//! module's validator again.

use omegalab::descent::{check_strict_descent, DescentTrace, TraceStatus};
use omegalab::dickson::{rank_bad_sequence, Monomial};
use omegalab::formula::{check_uniformization, parse_formula, UniformizationReport};
use omegalab::hierarchy::{ackermann, hardy, validate_trace, CallTree, TraceCheck};
use omegalab::Ordinal;
use serde::Deserialize;
use std::process::Command;
use std::time::Instant;

fn stdout_of(args: &[&str]) -> String {
    let out = Command::new(env!("CARGO_BIN_EXE_omegalab"))
        .args(args)
        .output()
        .expect("binary runs");
    assert!(out.status.success(), "expected success from {args:?}");
    String::from_utf8(out.stdout).expect("utf8 stdout")
}

#[test]
fn criterion_8_cli_outputs_revalidate() {
    let started = Instant::now();
    let mut documents = 0;

    // Arithmetic output is canonical text: it parses and re-renders to
    // itself, and matches the library computation.
    for (op, a, b) in [
        ("add", "w^2 + w*3", "w + 5"),
        ("add", "w*2 + 1", "w^3"),
        ("mul", "w + 1", "w"),
        ("mul", "w^2*2 + 3", "w*4 + 7"),
    ] {
        let text = stdout_of(&["ord", op, a, b]);
        let parsed: Ordinal = text.trim().parse().expect("CLI ordinal parses");
        assert_eq!(parsed.to_string(), text.trim());
        let (oa, ob): (Ordinal, Ordinal) =
            (a.parse().expect("parses"), b.parse().expect("parses"));
        let recomputed = if op == "add" { oa.add(&ob) } else { oa.mul(&ob) };
        assert_eq!(parsed, recomputed);
        documents += 1;
    }

    // Walk traces re-enter the descent checker.
    for (start, steps) in [
        ("w^2", "2,2,2"),
        ("w^2*2 + w*2", "2,2,2,2,2,2,2,2,2,2,2,2"),
        ("17", "1"),
    ] {
        let text = stdout_of(&["walk", start, "--steps", steps, "--json"]);
        let trace: DescentTrace = serde_json::from_str(text.trim()).expect("trace json");
        assert_eq!(trace.status, TraceStatus::Valid);
        let rechecked = check_strict_descent(&trace.entries, &trace.bound);
        assert_eq!(rechecked.status, TraceStatus::Valid);
        assert_eq!(rechecked.entries, trace.entries);
        documents += 1;
    }

    // Call trees re-enter the trace validator and match the evaluator.
    // Deep chains like the (3, 4) trace nest past the default JSON
    // recursion limit, so read them the way the binary itself does.
    for (m, n) in [(2, 3), (3, 4), (1, 9)] {
        let text = stdout_of(&["ack", &m.to_string(), &n.to_string(), "--trace"]);
        let mut de = serde_json::Deserializer::from_str(text.trim());
        de.disable_recursion_limit();
        let tree = CallTree::deserialize(serde_stacker::Deserializer::new(&mut de))
            .expect("tree json");
        assert_eq!(validate_trace(&tree), TraceCheck::Valid);
        assert_eq!(tree.value, ackermann(m, n).expect("within caps"));
        documents += 1;
    }

    // Hardy values match the library on the same index.
    let text = stdout_of(&["hardy", "w^2 + w", "3", "--json"]);
    let v: serde_json::Value = serde_json::from_str(text.trim()).expect("json");
    let alpha: Ordinal = v["alpha"].as_str().expect("alpha").parse().expect("parses");
    assert_eq!(
        v["value"].as_u64().expect("value"),
        hardy(&alpha, 3).expect("in range")
    );
    documents += 1;

    // Rank lists reparse as ordinals and match a fresh ranking.
    let text = stdout_of(&["dickson", "rank", "(1,1);(0,2);(3,0)", "--dim", "2", "--json"]);
    let v: serde_json::Value = serde_json::from_str(text.trim()).expect("json");
    let ranks: Vec<Ordinal> = v["ranks"]
        .as_array()
        .expect("array")
        .iter()
        .map(|r| r.as_str().expect("text").parse().expect("ordinal"))
        .collect();
    let seq: Vec<Monomial> = ["(1,1)", "(0,2)", "(3,0)"]
        .iter()
        .map(|s| s.parse().expect("monomial"))
        .collect();
    assert_eq!(ranks, rank_bad_sequence(&seq, 2).expect("bad sequence"));
    let bound = Ordinal::omega_pow(&Ordinal::from_u64(2));
    assert_eq!(check_strict_descent(&ranks, &bound).status, TraceStatus::Valid);
    documents += 1;

    // Uniformization reports deserialize and agree with a fresh check.
    let text = stdout_of(&["uniformize", "--theta", "x + x = y", "--X", "10", "--N", "300"]);
    let report: UniformizationReport = serde_json::from_str(text.trim()).expect("report json");
    let theta = parse_formula("x + x = y").expect("parses");
    let fresh = check_uniformization(&theta, 10, 300).expect("exact at this scale");
    assert_eq!(report, fresh);
    documents += 1;

    let took = started.elapsed();
    println!("criterion 8 PASS (CLI half): {documents} outputs revalidated in {took:?}");
}
