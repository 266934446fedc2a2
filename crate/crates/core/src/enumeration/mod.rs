//! Exact counting formulas, deterministic generators, brute-force counting
//! oracles, and the published golden dataset.

mod brute;
mod formulas;
mod generate;
mod golden;
mod report;

pub use brute::{
    brute_force_counts, oracle_agreement, AssocOracle, BruteForceOptions, BruteForceOutcome,
    OracleAgreement, SearchStrategy,
};
pub use formulas::{
    binomial, count_a2_1, count_q2, count_q2_1, count_qn, count_qn_0, count_qn_1, count_qn_2,
    count_qs_family, factorial, fubini, stirling2, stirling2_alternating, NParity, QsCounts,
};
pub use generate::{
    generate_quasitrivial_associative_binary, generate_quasitrivial_tables,
    quasitrivial_candidate_count, quasitrivial_table_at, scan_quasitrivial_fold, ExecMode,
    QtTables, DEFAULT_SEARCH_BUDGET,
};
pub use golden::{
    table1_golden, verify_table1, verify_table1_with_fault, Table1Cell, Table1Verification,
    TABLE1_COLUMNS, TABLE1_GOLDEN, TABLE1_OEIS,
};
pub use report::{compare_formula_brute, formula_counts_report, CountSource, CountsReport};
