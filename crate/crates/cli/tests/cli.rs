use std::process::{Command, Output};

use serde_json::Value;

fn zzlie(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zzlie"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn vir_bracket_that_vanishes() {
    let out = zzlie(&["bracket", "--family", "vir", "--alpha", "1", "--left", "1,0", "--right", "0,1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out), serde_json::json!({"terms": []}));
}

#[test]
fn c_bracket_uses_factorial_ratio() {
    let out = zzlie(&["bracket", "--family", "c", "--alpha", "1", "--left", "0,1", "--right", "3,-4"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        json(&out),
        serde_json::json!({"terms": [{"basis": {"kind": "L", "i": 3, "j": -3}, "coeff": "2/1"}]})
    );
}

#[test]
fn negative_flag_values_parse() {
    let out = zzlie(&["bracket", "--family", "d", "--alpha", "-1/2", "--beta", "3", "--left", "-1,1", "--right", "2,-1"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn symbolic_central_parameters() {
    let out = zzlie(&[
        "bracket", "--family", "block", "--alpha", "1", "--beta", "2", "--a1", "sym", "--a2", "sym", "--a2p", "sym",
        "--left", "0,1", "--right", "-1,1", "--format", "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "basis,coeff\nc1,1/1*a1\n");
}

#[test]
fn jacobi_sweep_passes_on_c() {
    let out = zzlie(&["verify", "jacobi", "--family", "c", "--alpha", "2/3", "--window", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["check"], "jacobi");
    assert_eq!(v["witnesses"], serde_json::json!([]));
}

#[test]
fn literal_c_index_exits_with_violation() {
    let out = zzlie(&["verify", "grading", "--family", "c", "--alpha", "2/3", "--window", "2", "--literal-c-index"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!json(&out)["witnesses"].as_array().unwrap().is_empty());
}

#[test]
fn verify_all_and_symbolic() {
    let out = zzlie(&["verify", "all", "--family", "bplus+", "--alpha", "1", "--a1", "1", "--a2", "1", "--a2p", "1", "--window", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["reports"].as_array().unwrap().len(), 3);
    let out = zzlie(&["verify", "symbolic", "--family", "d"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["zero_polynomial"], true);
}

#[test]
fn quotient_isomorphism() {
    let out = zzlie(&["verify", "quotient", "--alpha", "1", "--window", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["status"], "found");
    assert_eq!(v["central_line"], serde_json::json!({"i": 1, "j": -1}));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["bracket", "--family", "nope", "--left", "1,0", "--right", "0,1"][..],
        &["bracket", "--alpha", "1/0", "--left", "1,0", "--right", "0,1"],
        &["bracket", "--alpha", "0", "--left", "1,0", "--right", "0,1"],
        &["bracket", "--family", "block", "--alpha", "1", "--beta", "2", "--left", "-1,2", "--right", "0,1"],
        &["bracket", "--left", "x", "--right", "0,1"],
        &["table", "--window", "0"],
        &["verify", "everything"],
    ] {
        let out = zzlie(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn table_formats_carry_the_same_rows() {
    let base = ["table", "--family", "vir", "--alpha", "1/2", "--window", "1"];
    let j = json(&zzlie(&base));
    let rows = j.as_array().unwrap();
    assert_eq!(rows.len(), 81);
    let nonzero_terms: usize = rows.iter().map(|r| r["result"]["terms"].as_array().unwrap().len()).sum();
    let zero_rows = rows.iter().filter(|r| r["result"]["terms"].as_array().unwrap().is_empty()).count();

    let csv = stdout(&zzlie(&[&base[..], &["--format", "csv"]].concat()));
    assert_eq!(csv.lines().count(), 1 + nonzero_terms + zero_rows);
    assert!(csv.starts_with("left_i,left_j,right_i,right_j,basis,coeff\n"));

    let text = stdout(&zzlie(&[&base[..], &["--format", "text"]].concat()));
    assert_eq!(text.lines().count(), 1 + nonzero_terms + zero_rows);
}

#[test]
fn output_is_byte_stable() {
    let args = ["table", "--family", "c", "--alpha", "2/3", "--window", "1"];
    assert_eq!(zzlie(&args).stdout, zzlie(&args).stdout);
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("zzlie-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bracket.json");
    let out = zzlie(&[
        "bracket", "--family", "vir", "--alpha", "1", "--left", "2,0", "--right", "0,1", "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!(v["terms"].is_array());
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn module_commands() {
    let out = zzlie(&["module", "act", "--module", "a", "--alpha", "1", "--left", "2", "--right", "0"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out), serde_json::json!({"2": "6/1"}));

    let out = zzlie(&["module", "axiom", "--module", "b", "--alpha", "-2", "--window", "3"]);
    assert_eq!(out.status.code(), Some(0));

    let out = zzlie(&["module", "subquotient", "--alpha", "0", "--beta", "0"]);
    assert_eq!(json(&out)["module"]["removed"], 0);

    let out = zzlie(&["module", "intertwine", "--alpha", "1/2", "--beta", "0", "--beta2", "1", "--window", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["status"], "found");

    let out = zzlie(&["module", "intertwine", "--alpha", "0", "--beta", "0", "--beta2", "1", "--window", "4"]);
    assert_eq!(out.status.code(), Some(1));

    let out = zzlie(&["module", "intertwine", "--alpha", "0", "--beta", "0", "--beta2", "1", "--window", "4", "--subquotient"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn classify_solve_and_certificates() {
    let out = zzlie(&["classify", "solve", "--alpha", "1", "--beta1", "2", "--betam1", "-4", "--window", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["outcome"]["unique"], true);
    let c11 = v["outcome"]["values"]
        .as_array()
        .unwrap()
        .iter()
        .find(|x| x["i"] == 1 && x["j"] == 1)
        .unwrap();
    assert_eq!(c11["value"], "8/1");

    let out = zzlie(&["classify", "solve", "--alpha", "1", "--beta1", "1", "--betam1", "1", "--window", "3"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["outcome"]["status"], "infeasible");

    let out = zzlie(&["classify", "impossibility", "--alpha", "2/5", "--window", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["status"], "only_zero_solution");
}

#[test]
fn classify_constraints_lists_relations() {
    let out = zzlie(&["classify", "constraints"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!(v["p4"]["factors"].is_array());
    assert!(v["p6"]["factors"].is_array());
    let texts: Vec<&str> = v["relations"].as_array().unwrap().iter().map(|r| r["text"].as_str().unwrap()).collect();
    assert!(texts.contains(&"beta1 = betam1"));
    assert!(texts.contains(&"beta1 = -betam1"));
    assert_eq!(texts.len(), 8);
}

#[test]
fn classify_recurrence_symbolic() {
    let out = zzlie(&[
        "classify", "recurrence", "--alpha", "sym", "--beta1", "sym", "--betam1", "sym", "--left", "1,2", "--k", "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["status"], "relation");
    assert_eq!(v["terms"].as_array().unwrap().len(), 3);
}

#[test]
fn flattened_text_for_reports() {
    let out = zzlie(&["verify", "antisymmetry", "--family", "vir", "--alpha", "1/2", "--window", "1", "--format", "text"]);
    assert_eq!(stdout(&out), "check = antisymmetry\nchecked_count = 81\nwitnesses = []\n");
    let out = zzlie(&["verify", "antisymmetry", "--family", "vir", "--alpha", "1/2", "--window", "1", "--format", "csv"]);
    assert_eq!(stdout(&out), "path,value\ncheck,antisymmetry\nchecked_count,81\nwitnesses,[]\n");
}
