use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn qtl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qtl")).args(args).output().expect("binary runs")
}

fn qtl_threads(threads: &str, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qtl")).env("QTL_THREADS", threads).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

#[test]
fn contract_prints_raw_and_right_record() {
    let o = qtl(&["contract", "--sigma", "(1726)(354)", "--layout", "3,2"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("(1 6' 3' 5)(2 7' 4)\n"));
    assert!(out.contains("right record: (6 1' 5' 3)(7 2' 4')"));
}

#[test]
fn contract_with_dimension_expands() {
    let o = qtl(&["--format", "json", "contract", "--sigma", "(1)(2)", "--layout", "2,0", "--dim", "2"]);
    let v = json(&o);
    assert_eq!(v["result"]["raw"], "(1)(2)");
    assert_eq!(v["result"]["terms"], 4);
}

#[test]
fn contract_from_a_quiver_file() {
    let p = data("example1.json");
    let o = qtl(&[
        "--format",
        "json",
        "contract",
        "--sigma",
        "(12)",
        "--spec",
        p.to_str().unwrap(),
        "--multidegree",
        "0,0,1,1",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v = json(&o);
    assert_eq!((v["result"]["t"].as_u64(), v["result"]["s"].as_u64()), (Some(0), Some(1)));
    assert!(v["result"]["polynomial"].as_str().is_some());
}

#[test]
fn contract_refuses_a_non_member() {
    let p = data("example1.json");
    let o = qtl(&[
        "contract",
        "--sigma",
        "(1)(2)",
        "--spec",
        p.to_str().unwrap(),
        "--multidegree",
        "0,0,1,1",
        "--layout",
        "2,0",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).starts_with("error[LayoutMismatch]"));
}

#[test]
fn span_check_one_loop_degree_two() {
    let p = data("one_loop.json");
    let o = qtl(&["--format", "json", "span-check", p.to_str().unwrap(), "--multidegree", "a=2"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v = json(&o);
    assert_eq!(v["schema"], "qtl.span-check.v1");
    assert_eq!(v["result"]["oracle_dim"], 2);
    assert_eq!(v["result"]["span_dim"], 2);
    assert_eq!(v["result"]["pass"], true);
    assert_eq!(v["config"]["seed"], 0);
    assert_eq!(v["config"]["field"], "Q");
}

#[test]
fn span_check_needs_characteristic_zero() {
    let p = data("one_loop.json");
    let o = qtl(&["--field", "F101", "span-check", p.to_str().unwrap(), "--multidegree", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("UnsupportedCharacteristic"));
}

#[test]
fn malformed_pair_is_a_partition_violation() {
    let p = data("malformed_pair.json");
    let o = qtl(&["describe", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).starts_with("error[PartitionViolation]"));
    let o = qtl(&["--format", "json", "describe", p.to_str().unwrap()]);
    let v: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(v["error"]["kind"], "PartitionViolation");
    assert_eq!(v["schema"], "qtl.error.v1");
}

#[test]
fn parse_errors() {
    let dir = tempfile::tempdir().unwrap();
    let unknown = dir.path().join("unknown.json");
    std::fs::write(&unknown, r#"{"vertices": 1, "ordinary": [1], "dims": [{"size": 1}], "colour": 3}"#).unwrap();
    let empty = dir.path().join("empty.json");
    std::fs::write(&empty, "").unwrap();
    for p in [&unknown, &empty] {
        let o = qtl(&["describe", p.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(1));
        assert!(stderr(&o).starts_with("error[Parse]"), "{}", stderr(&o));
    }
    let o = qtl(&["describe", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn example_one_structure() {
    let p = data("example1.json");
    let v = json(&qtl(&["--format", "json", "describe", p.to_str().unwrap()]));
    let factors = v["result"]["factors"].as_array().unwrap();
    assert_eq!(factors.len(), 1);
    assert_eq!(v["result"]["arrows"].as_array().unwrap().len(), 2 + 2);
}

#[test]
fn fourth_case_normalization_is_reported() {
    let p = data("fourth_case.json");
    let v = json(&qtl(&["--format", "json", "describe", p.to_str().unwrap()]));
    assert_eq!(v["result"]["transposed"], serde_json::json!(["x"]));
    let x = &v["result"]["normalized_arrows"][0];
    assert_eq!((x["from"].as_u64(), x["to"].as_u64(), x["case"].as_u64()), (Some(3), Some(1), Some(1)));
}

#[test]
fn doubled_quiver_lists_bars() {
    let p = data("one_loop.json");
    let o = qtl(&["double", p.to_str().unwrap()]);
    let out = stdout(&o);
    assert!(out.contains("a: 1 -> 1"));
    assert!(out.contains("a_bar: 1* -> 1*"), "{out}");
}

#[test]
fn verify_is_deterministic_across_thread_counts() {
    let p = data("example1.json");
    let args = ["--format", "json", "--seed", "17", "verify", p.to_str().unwrap(), "--trials", "5", "--max-len", "3"];
    let one = qtl_threads("1", &args);
    let four = qtl_threads("4", &args);
    assert!(one.status.success(), "{}", stderr(&one));
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(one.stdout, qtl(&args).stdout);
    let v = json(&one);
    assert_eq!(v["config"]["field"], "F101");
    assert_eq!(v["config"]["seed"], 17);
    assert_eq!(v["result"]["failures"], 0);
}

#[test]
fn bad_thread_count() {
    let p = data("one_loop.json");
    let o = qtl_threads("zero", &["describe", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("QTL_THREADS"));
}

#[test]
fn term_budget_fails_loudly() {
    let p = data("example1.json");
    let o = qtl(&["--max-terms", "3", "generate", p.to_str().unwrap(), "--max-len", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).starts_with("error[BudgetExceeded]"));
}

#[test]
fn supermixed_reduction_and_verification() {
    let p = data("example2_sp.json");
    let o = qtl(&["--format", "json", "reduce-supermixed", p.to_str().unwrap(), "--trials", "5", "--max-len", "2"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v = json(&o);
    assert_eq!(v["result"]["qprime"]["pairs"], serde_json::json!([[1, 2]]));
    assert_eq!(v["result"]["forms"][0]["group"], "Sp");
    let c = v["result"]["substitutions"].as_array().unwrap().iter().find(|s| s["arrow"] == "c").unwrap();
    assert_eq!(c["entries"], serde_json::json!(["0", "-1", "1", "0"]));
    assert_eq!(v["result"]["verification"]["passed"], true);
    let o = qtl(&["verify", p.to_str().unwrap(), "--trials", "5", "--max-len", "2"]);
    assert!(o.status.success(), "{}", stderr(&o));
}

#[test]
fn reduction_needs_a_supermixed_block() {
    let p = data("one_loop.json");
    let o = qtl(&["reduce-supermixed", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).starts_with("error[Usage]"));
}

#[test]
fn csv_tables() {
    let p = data("one_loop.json");
    let o = qtl(&["--format", "csv", "generate", p.to_str().unwrap(), "--max-len", "1"]);
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("word,j,terms,polynomial"));
    assert_eq!(lines.next(), Some("a,1,2,y[a][1][1] + y[a][2][2]"));
}

#[test]
fn paths_count() {
    let p = data("one_loop.json");
    let v = json(&qtl(&["--format", "json", "paths", p.to_str().unwrap(), "--max-len", "3", "--dedupe", "rotation"]));
    // a, a_bar, then aa, a_bar a_bar, then aaa, a_bar^3 on an ordinary loop
    assert_eq!(v["result"]["count"], 6);
}
