//! The embedded golden dataset: the six published counting sequences for
//! k = 1..6, with their OEIS identifiers, and the recompute-and-diff check.

use num_bigint::BigUint;

use super::formulas::{count_a2_1, count_q2, count_q2_1, count_qn, count_qn_0, count_qn_2, NParity};

/// Column keys in the frozen order.
pub const TABLE1_COLUMNS: [&str; 6] = ["q2", "q2_1", "qn_0", "qn_2", "qn", "a2_1"];

/// OEIS identifier per column.
pub const TABLE1_OEIS: [(&str, &str); 6] = [
    ("q2", "A292932"),
    ("q2_1", "A292933"),
    ("qn_0", "A308352"),
    ("qn_2", "A308354"),
    ("qn", "A308362"),
    ("a2_1", "A308351"),
];

/// One golden row: `k` followed by the six columns in the frozen order.
/// The `qn_2` and `qn` columns are the odd-arity values.
pub const TABLE1_GOLDEN: [[u64; 7]; 6] = [
    [1, 1, 1, 0, 0, 1, 1],
    [2, 4, 2, 2, 1, 5, 4],
    [3, 20, 12, 8, 3, 23, 18],
    [4, 138, 80, 58, 24, 162, 128],
    [5, 1182, 690, 492, 200, 1382, 1090],
    [6, 12166, 7092, 5074, 2070, 14236, 11232],
];

/// Returns the golden dataset as `(k, column, value)` triples.
pub fn table1_golden() -> Vec<(u64, &'static str, u64)> {
    let mut out = Vec::with_capacity(36);
    for row in TABLE1_GOLDEN {
        for (c, &column) in TABLE1_COLUMNS.iter().enumerate() {
            out.push((row[0], column, row[c + 1]));
        }
    }
    out
}

#[derive(Debug, Clone)]
pub struct Table1Cell {
    pub k: u64,
    pub column: &'static str,
    pub expected: BigUint,
    pub computed: BigUint,
}

impl Table1Cell {
    pub fn matches(&self) -> bool {
        self.expected == self.computed
    }
}

#[derive(Debug, Clone)]
pub struct Table1Verification {
    pub cells: Vec<Table1Cell>,
}

impl Table1Verification {
    pub fn all_match(&self) -> bool {
        self.cells.iter().all(Table1Cell::matches)
    }

    pub fn mismatches(&self) -> Vec<&Table1Cell> {
        self.cells.iter().filter(|c| !c.matches()).collect()
    }
}

fn compute_column(k: u64, column: &str) -> BigUint {
    match column {
        "q2" => count_q2(k),
        "q2_1" => count_q2_1(k).expect("k >= 1"),
        "qn_0" => count_qn_0(k).expect("k >= 1"),
        "qn_2" => count_qn_2(k, NParity::Odd).expect("k >= 1"),
        "qn" => count_qn(k, NParity::Odd).expect("k >= 1"),
        "a2_1" => count_a2_1(k).expect("k >= 1"),
        other => unreachable!("unknown column {other}"),
    }
}

/// Recomputes all 36 golden cells from the formulas and diffs them.
pub fn verify_table1() -> Table1Verification {
    verify_table1_with_fault(None)
}

/// Variant with an injected off-by-one fault at `(column, k)`, used to test
/// that the verification actually fails when a cell disagrees.
pub fn verify_table1_with_fault(fault: Option<(&str, u64)>) -> Table1Verification {
    let mut cells = Vec::with_capacity(36);
    for (k, column, expected) in table1_golden() {
        let mut computed = compute_column(k, column);
        if fault == Some((column, k)) {
            computed += 1u32;
        }
        cells.push(Table1Cell { k, column, expected: BigUint::from(expected), computed });
    }
    Table1Verification { cells }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_columns_match_formulas() {
        let verification = verify_table1();
        assert_eq!(verification.cells.len(), 36);
        assert!(verification.all_match());
    }

    #[test]
    fn specific_golden_columns() {
        let q2: Vec<u64> = TABLE1_GOLDEN.iter().map(|r| r[1]).collect();
        assert_eq!(q2, vec![1, 4, 20, 138, 1182, 12166]);
        let qn_2: Vec<u64> = TABLE1_GOLDEN.iter().map(|r| r[4]).collect();
        assert_eq!(qn_2, vec![0, 1, 3, 24, 200, 2070]);
        let a2_1: Vec<u64> = TABLE1_GOLDEN.iter().map(|r| r[6]).collect();
        assert_eq!(a2_1, vec![1, 4, 18, 128, 1090, 11232]);
    }

    #[test]
    fn fault_injection_is_detected() {
        let verification = verify_table1_with_fault(Some(("qn", 4)));
        assert!(!verification.all_match());
        let bad = verification.mismatches();
        assert_eq!(bad.len(), 1);
        assert_eq!((bad[0].k, bad[0].column), (4, "qn"));
    }
}
