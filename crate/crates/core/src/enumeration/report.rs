//! The aggregated counting report and its JSON / CSV serializations.
//! Counts are serialized as decimal strings so arbitrary precision survives
//! the trip through JSON.

use num_bigint::BigUint;
use serde_json::json;

use crate::Result;

use super::brute::BruteForceOutcome;
use super::formulas::{
    count_a2_1, count_q2, count_q2_1, count_qn, count_qn_0, count_qn_1, count_qn_2,
    count_qs_family, NParity,
};
use super::golden::TABLE1_OEIS;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountSource {
    Formula,
    BruteForce,
}

/// Exact values of every counting sequence at one `(k, n-parity)` pair.
#[derive(Debug, Clone)]
pub struct CountsReport {
    pub k: u64,
    pub parity: NParity,
    pub source: CountSource,
    pub q2: BigUint,
    pub q2_1: BigUint,
    pub a2_1: BigUint,
    pub qn_0: BigUint,
    pub qn_1: BigUint,
    pub qn_2: BigUint,
    pub qn: BigUint,
    pub qs2: BigUint,
    pub qsn_1: BigUint,
    pub qsn_2: BigUint,
    pub qsn: BigUint,
    pub as2_1: BigUint,
}

/// Evaluates all closed-form counts for `k >= 1`.
pub fn formula_counts_report(k: u64, parity: NParity) -> Result<CountsReport> {
    let qs = count_qs_family(k, parity)?;
    Ok(CountsReport {
        k,
        parity,
        source: CountSource::Formula,
        q2: count_q2(k),
        q2_1: count_q2_1(k)?,
        a2_1: count_a2_1(k)?,
        qn_0: count_qn_0(k)?,
        qn_1: count_qn_1(k)?,
        qn_2: count_qn_2(k, parity)?,
        qn: count_qn(k, parity)?,
        qs2: qs.qs2,
        qsn_1: qs.qsn_1,
        qsn_2: qs.qsn_2,
        qsn: qs.qsn,
        as2_1: qs.as2_1,
    })
}

impl CountsReport {
    pub fn to_json(&self) -> serde_json::Value {
        let oeis: serde_json::Map<String, serde_json::Value> = TABLE1_OEIS
            .iter()
            .map(|(seq, id)| (seq.to_string(), json!(id)))
            .collect();
        json!({
            "schema": 1,
            "k": self.k,
            "n_parity": self.parity.as_str(),
            "source": match self.source {
                CountSource::Formula => "formula",
                CountSource::BruteForce => "brute_force",
            },
            "counts": {
                "q2": self.q2.to_string(),
                "q2_1": self.q2_1.to_string(),
                "a2_1": self.a2_1.to_string(),
                "qn_0": self.qn_0.to_string(),
                "qn_1": self.qn_1.to_string(),
                "qn_2": self.qn_2.to_string(),
                "qn": self.qn.to_string(),
                "qs2": self.qs2.to_string(),
                "qsn_1": self.qsn_1.to_string(),
                "qsn_2": self.qsn_2.to_string(),
                "qsn": self.qsn.to_string(),
                "as2_1": self.as2_1.to_string(),
            },
            "oeis": oeis,
        })
    }

    pub fn csv_header() -> &'static str {
        "k,q2,q2_1,qn_0,qn_2,qn,a2_1"
    }

    /// One CSV row in the published column order.
    pub fn to_csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            self.k, self.q2, self.q2_1, self.qn_0, self.qn_2, self.qn, self.a2_1
        )
    }
}

/// Differences between formula-level counts and a brute-force outcome on
/// the same `(k, n)`; empty means full agreement.
pub fn compare_formula_brute(report: &CountsReport, brute: &BruteForceOutcome) -> Vec<String> {
    let mut mismatches = Vec::new();
    let mut check = |name: &str, formula: &BigUint, observed: u64| {
        if *formula != BigUint::from(observed) {
            mismatches.push(format!("{name}: formula {formula}, brute force {observed}"));
        }
    };
    let total = if brute.n == 2 { &report.q2 } else { &report.qn };
    check("associative total", total, brute.associative);
    check("no neutral element", &report.qn_0, brute.neutral_buckets[0]);
    check("one neutral element", &report.qn_1, brute.neutral_buckets[1]);
    check("two neutral elements", &report.qn_2, brute.neutral_buckets[2]);
    let symmetric_total = if brute.n == 2 { &report.qs2 } else { &report.qsn };
    check("symmetric associative total", symmetric_total, brute.symmetric);
    check("symmetric, one neutral", &report.qsn_1, brute.symmetric_neutral_buckets[1]);
    let qsn_2 = if brute.n == 2 { BigUint::from(0u32) } else { report.qsn_2.clone() };
    check("symmetric, two neutrals", &qsn_2, brute.symmetric_neutral_buckets[2]);
    check("symmetric, no neutral", &BigUint::from(0u32), brute.symmetric_neutral_buckets[0]);
    if brute.neutral_overflow != 0 {
        mismatches.push(format!(
            "{} associative tables with three or more neutral elements",
            brute.neutral_overflow
        ));
    }
    mismatches
}
