//! End-to-end tests of the binary: documented behaviours and exit codes.

use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output};

fn qtsemi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qtsemi")).args(args).output().expect("binary runs")
}

fn qtsemi_with_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qtsemi"))
        .args(args)
        .env(key, value)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn write_table(name: &str, contents: &str) -> PathBuf {
    let mut path = std::env::temp_dir();
    path.push(format!("qtsemi-cli-test-{}-{name}", std::process::id()));
    let mut f = std::fs::File::create(&path).unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    path
}

fn sum3_file() -> PathBuf {
    write_table("sum3.tbl", &qtsemi::fixtures::sum_mod2(3).to_string())
}

#[test]
fn check_reports_two_neutral_elements_for_the_mod2_sum() {
    let path = sum3_file();
    let out = qtsemi(&["check", path.to_str().unwrap(), "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["neutral_elements"], serde_json::json!([1, 2]));
    assert_eq!(v["associative"], serde_json::json!(true));
    assert_eq!(v["symmetric_class"]["type"], "two-neutral");
}

#[test]
fn check_max_ternary_is_associative_and_symmetric() {
    let path = write_table("max33.tbl", &qtsemi::fixtures::max_natural(3, 3).to_string());
    let out = qtsemi(&["check", path.to_str().unwrap(), "--json", "--fast", "--verify"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["associative"], serde_json::json!(true));
    assert_eq!(v["symmetric"], serde_json::json!(true));
    assert_eq!(v["annihilator"], serde_json::json!(3));
}

#[test]
fn check_rejects_malformed_table_with_exit_2() {
    let path = write_table("short.tbl", "2 3\n1 1 1 1 1 1 1\n");
    let out = qtsemi(&["check", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn check_rejects_missing_file_with_exit_2() {
    let out = qtsemi(&["check", "/nonexistent/qtsemi.tbl"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn reduce_prints_both_reductions_of_the_mod2_sum() {
    let path = sum3_file();
    let out = qtsemi(&["reduce", path.to_str().unwrap(), "--all", "--no-header"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.matches("# reduction: from-neutral").count(), 2);
    assert!(text.contains("from-neutral e=1"));
    assert!(text.contains("from-neutral e=2"));
}

#[test]
fn reduce_of_quinary_max_is_the_binary_max() {
    let path = write_table("max52.tbl", &qtsemi::fixtures::max_natural(2, 5).to_string());
    let out = qtsemi(&["reduce", path.to_str().unwrap(), "--no-header"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let expected = qtsemi::fixtures::max_natural(2, 2).to_string();
    assert!(text.contains(&expected));
    assert_eq!(text.matches("# reduction").count(), 1);
}

#[test]
fn reduce_ternary_flag_produces_a_ternary_reduction() {
    let path = write_table("sum5.tbl", &qtsemi::fixtures::sum_mod2(5).to_string());
    let out = qtsemi(&["reduce", path.to_str().unwrap(), "--ternary", "--no-header"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains(&qtsemi::fixtures::sum_mod2(3).to_string()));
}

#[test]
fn reduce_rejects_non_quasitrivial_input_with_exit_1() {
    let path = write_table("diff3.tbl", &qtsemi::fixtures::diff_mod3().to_string());
    let out = qtsemi(&["reduce", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn count_both_matches_for_k3_n3() {
    let out = qtsemi(&["count", "--k", "3", "--n", "3", "--both", "--json"]);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["matches"], serde_json::json!(true));
    assert_eq!(v["counts"]["qn"], "23");
    assert_eq!(v["brute_force"]["neutral_buckets"], serde_json::json!([8, 12, 3]));
}

#[test]
fn count_both_matches_for_even_arity() {
    let out = qtsemi(&["count", "--k", "2", "--n", "4", "--both", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["counts"]["qn"], "4");
    assert_eq!(v["brute_force"]["associative"], 4);
    assert_eq!(v["brute_force"]["neutral_buckets"][2], 0);
}

#[test]
fn count_brute_over_budget_exits_3() {
    let out = qtsemi(&["count", "--k", "5", "--n", "3", "--brute"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn count_csv_row_matches_published_column_order() {
    let out = qtsemi(&["count", "--k", "6", "--n", "3", "--csv"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "k,q2,q2_1,qn_0,qn_2,qn,a2_1\n6,12166,7092,5074,2070,14236,11232\n");
}

#[test]
fn enumerate_binary_assoc_qt_counts() {
    for (k, expected) in [("1", 1usize), ("2", 4), ("3", 20)] {
        let out = qtsemi(&["enumerate", "--k", k, "--binary-assoc-qt", "--no-header"]);
        assert!(out.status.success());
        let text = stdout(&out);
        let tables = text.split("---\n").count();
        assert_eq!(tables, expected, "k = {k}");
    }
}

#[test]
fn enumerate_respects_limit() {
    let out = qtsemi(&["enumerate", "--k", "3", "--binary-assoc-qt", "--limit", "5", "--no-header"]);
    assert_eq!(stdout(&out).split("---\n").count(), 5);
}

#[test]
fn enumerate_qt_over_budget_exits_3() {
    let out = qtsemi_with_env(
        &["enumerate", "--k", "2", "--n", "3", "--qt"],
        "COST_BUDGET",
        "10",
    );
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn enumerated_tables_round_trip_through_check() {
    let out = qtsemi(&["enumerate", "--k", "3", "--binary-assoc-qt", "--no-header"]);
    let text = stdout(&out);
    for (i, block) in text.split("---\n").enumerate() {
        let path = write_table(&format!("rt-{i}.tbl"), block);
        let check = qtsemi(&["check", path.to_str().unwrap(), "--json"]);
        assert!(check.status.success());
        let v: serde_json::Value = serde_json::from_str(&stdout(&check)).unwrap();
        assert_eq!(v["associative"], serde_json::json!(true), "table {i}");
        assert_eq!(v["quasitrivial"], serde_json::json!(true), "table {i}");
    }
}

#[test]
fn verify_table1_passes_and_detects_injected_fault() {
    let out = qtsemi(&["verify-table1", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["all_match"], serde_json::json!(true));
    assert_eq!(v["cells"].as_array().unwrap().len(), 36);

    let out = qtsemi(&["verify-table1", "--inject-fault", "q2:3"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("q2") && err.contains("k=3"), "stderr: {err}");
}

#[test]
fn contour_grid_of_binary_max() {
    let path = write_table("max22.tbl", &qtsemi::fixtures::max_natural(2, 2).to_string());
    let out = qtsemi(&["contour", path.to_str().unwrap(), "--grid", "--no-header"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "1 2\n2 2\n");

    // axes permuted by a reversed total ordering
    let out = qtsemi(&[
        "contour",
        path.to_str().unwrap(),
        "--grid",
        "--order",
        "2 < 1",
        "--no-header",
    ]);
    assert_eq!(stdout(&out), "2 2\n2 1\n");
}

#[test]
fn contour_grid_rejects_nonbinary_tables() {
    let path = sum3_file();
    let out = qtsemi(&["contour", path.to_str().unwrap(), "--grid"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn contour_grid_rejects_mismatched_ordering() {
    let path = write_table("max22b.tbl", &qtsemi::fixtures::max_natural(2, 2).to_string());
    let out = qtsemi(&["contour", path.to_str().unwrap(), "--grid", "--order", "1 < 2 < 3"]);
    assert_eq!(out.status.code(), Some(2));
    let out = qtsemi(&["contour", path.to_str().unwrap(), "--grid", "--order", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn contour_dot_has_one_node_per_tuple_and_spanning_paths() {
    let path = write_table("max23.tbl", &qtsemi::fixtures::max_natural(3, 2).to_string());
    let out = qtsemi(&["contour", path.to_str().unwrap(), "--dot"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.matches("label=").count(), 9);
    // kernel classes of sizes 1, 3 and 5 yield 0 + 2 + 4 spanning edges
    assert_eq!(text.matches(" -- ").count(), 6);
    assert!(text.starts_with("graph contour {"));
}

#[test]
fn identical_invocations_are_byte_identical() {
    let a = qtsemi(&["enumerate", "--k", "3", "--binary-assoc-qt"]);
    let b = qtsemi(&["enumerate", "--k", "3", "--binary-assoc-qt"]);
    assert_eq!(a.stdout, b.stdout);
    let a = qtsemi(&["verify-table1"]);
    let b = qtsemi(&["verify-table1"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(qtsemi(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(qtsemi(&["count"]).status.code(), Some(2));
    assert_eq!(qtsemi(&["enumerate", "--k", "2"]).status.code(), Some(2));
    assert_eq!(qtsemi(&["enumerate", "--k", "2", "--qt"]).status.code(), Some(2));
    assert_eq!(qtsemi(&["contour", "/tmp/x.tbl"]).status.code(), Some(2));
    assert!(qtsemi(&["--help"]).status.success());
}
