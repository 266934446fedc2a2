//! Text and JSON rendering of reports for the terminal.

use serde_json::json;

use qtsemi::analysis::{AnalysisReport, SymmetricClassTag};
use qtsemi::enumeration::{BruteForceOutcome, CountsReport, Table1Verification};
use qtsemi::table::OperationTable;

fn row(out: &mut String, key: &str, value: impl AsRef<str>) {
    out.push_str(&format!("{key:<20}{}\n", value.as_ref()));
}

fn opt_bool(v: Option<bool>) -> String {
    v.map(|b| b.to_string()).unwrap_or_else(|| "-".into())
}

fn one_based_set(elements: &[u8]) -> String {
    if elements.is_empty() {
        return "{}".into();
    }
    let inner: Vec<String> = elements.iter().map(|&e| (e as usize + 1).to_string()).collect();
    format!("{{{}}}", inner.join(", "))
}

pub fn analysis_text(report: &AnalysisReport) -> String {
    let mut out = String::new();
    row(&mut out, "k", report.table.k().to_string());
    row(&mut out, "n", report.table.n().to_string());
    row(&mut out, "idempotent", report.idempotent.to_string());
    row(&mut out, "quasitrivial", report.quasitrivial.to_string());
    row(&mut out, "symmetric", report.symmetric.to_string());
    row(&mut out, "associative", opt_bool(report.associative));
    row(&mut out, "bisymmetric", opt_bool(report.bisymmetric));
    row(&mut out, "neutral_elements", one_based_set(&report.neutral_elements));
    row(
        &mut out,
        "annihilator",
        report.annihilator.map(|z| (z as usize + 1).to_string()).unwrap_or_else(|| "-".into()),
    );
    let counts: Vec<String> =
        report.preimage_sequence.counts().iter().map(|c| c.to_string()).collect();
    row(&mut out, "preimage_sequence", format!("({})", counts.join(", ")));
    row(
        &mut out,
        "reductions",
        match &report.reductions {
            None => "-".into(),
            Some(rs) => format!("{}{}", rs.reductions.len(), if rs.complete { " (complete)" } else { "" }),
        },
    );
    row(
        &mut out,
        "kimura_ordering",
        report.kimura_ordering.as_ref().map(|w| w.to_string()).unwrap_or_else(|| "-".into()),
    );
    row(
        &mut out,
        "symmetric_class",
        match &report.symmetric_class {
            None => "-".into(),
            Some(SymmetricClassTag::NotApplicable) => "not-applicable".into(),
            Some(SymmetricClassTag::TwoNeutral) => "two-neutral".into(),
            Some(SymmetricClassTag::MaxTotalOrder(w)) => format!("max of {w}"),
        },
    );
    out
}

pub fn counts_text(report: &CountsReport) -> String {
    let mut out = String::new();
    row(&mut out, "k", report.k.to_string());
    row(&mut out, "n_parity", report.parity.as_str());
    for (name, value) in [
        ("q2", &report.q2),
        ("q2_1", &report.q2_1),
        ("a2_1", &report.a2_1),
        ("qn_0", &report.qn_0),
        ("qn_1", &report.qn_1),
        ("qn_2", &report.qn_2),
        ("qn", &report.qn),
        ("qs2", &report.qs2),
        ("qsn_1", &report.qsn_1),
        ("qsn_2", &report.qsn_2),
        ("qsn", &report.qsn),
        ("as2_1", &report.as2_1),
    ] {
        row(&mut out, name, value.to_string());
    }
    out
}

pub fn brute_json(outcome: &BruteForceOutcome) -> serde_json::Value {
    json!({
        "schema": 1,
        "k": outcome.k,
        "n": outcome.n,
        "source": "brute_force",
        "candidates": outcome.candidate_count.to_string(),
        "associative": outcome.associative,
        "neutral_buckets": outcome.neutral_buckets,
        "neutral_overflow": outcome.neutral_overflow,
        "symmetric": outcome.symmetric,
        "symmetric_neutral_buckets": outcome.symmetric_neutral_buckets,
    })
}

pub fn brute_text(outcome: &BruteForceOutcome) -> String {
    let mut out = String::new();
    row(&mut out, "candidates", outcome.candidate_count.to_string());
    row(&mut out, "associative", outcome.associative.to_string());
    row(&mut out, "neutral_buckets", format!("{:?}", outcome.neutral_buckets));
    row(&mut out, "symmetric", outcome.symmetric.to_string());
    row(
        &mut out,
        "symmetric_buckets",
        format!("{:?}", outcome.symmetric_neutral_buckets),
    );
    out
}

pub fn table1_json(verification: &Table1Verification) -> serde_json::Value {
    let cells: Vec<serde_json::Value> = verification
        .cells
        .iter()
        .map(|c| {
            json!({
                "k": c.k,
                "sequence": c.column,
                "expected": c.expected.to_string(),
                "computed": c.computed.to_string(),
                "match": c.matches(),
            })
        })
        .collect();
    json!({ "schema": 1, "all_match": verification.all_match(), "cells": cells })
}

pub fn table1_text(verification: &Table1Verification) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "{:<4}{:<10}{:>10}{:>10}  {}\n",
        "k", "sequence", "expected", "computed", "status"
    ));
    for c in &verification.cells {
        out.push_str(&format!(
            "{:<4}{:<10}{:>10}{:>10}  {}\n",
            c.k,
            c.column,
            c.expected.to_string(),
            c.computed.to_string(),
            if c.matches() { "ok" } else { "MISMATCH" }
        ));
    }
    out
}

pub fn grid_text(table: &OperationTable, order: &[u8]) -> String {
    let mut out = String::new();
    for &x in order {
        let cells: Vec<String> = order
            .iter()
            .map(|&y| (table.evaluate(&[x, y]).expect("validated") as usize + 1).to_string())
            .collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

pub fn dot_text(table: &OperationTable) -> String {
    let mut out = String::from("graph contour {\n");
    let len = table.values().len();
    for idx in 0..len {
        let tuple = table.tuple_of_index(idx);
        let label: Vec<String> = tuple.iter().map(|&x| (x as usize + 1).to_string()).collect();
        out.push_str(&format!("  t{idx} [label=\"{}\"];\n", label.join(",")));
    }
    // one spanning path per kernel class; transitivity supplies the rest
    for class in table.contour_components().classes {
        for pair in class.tuple_indices.windows(2) {
            out.push_str(&format!("  t{} -- t{};\n", pair[0], pair[1]));
        }
    }
    out.push_str("}\n");
    out
}
