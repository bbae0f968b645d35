use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_psmac")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn e_is_monic() {
    let o = run(&["e", "--comp", "1,0"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), r#"[{"exponents":[1,0],"coeff":"1 / 1"}]"#);
}

#[test]
fn bijection_both_ways() {
    let o = run(&["bijection", "--mu", "2,1", "--w", "q^0*t^1,q^1*t^0"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), r#"{"lambda":[],"gamma":[0,1]}"#);
    let o = run(&["bijection", "--gamma", "0,1"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["mu"], serde_json::json!([2, 1]));
}

#[test]
fn pieri_rows() {
    let o = run(&["pieri", "--gamma", "0,1"]);
    assert_eq!(o.status.code(), Some(0));
    let rows: Vec<serde_json::Value> = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(rows.len(), 2);
    for r in &rows {
        assert_eq!(r["match"], true);
        assert!(r["target"]["lambda"].is_array() && r["target"]["gamma"].is_array());
        assert!(r["A"].is_string() && r["C"].is_string() && r["c_r"].is_i64());
    }
    let o = run(&["pieri", "--gamma", "1,0", "--side", "closed"]);
    let rows: Vec<serde_json::Value> = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(rows.len(), 3);
}

#[test]
fn verify_y2_passes_with_failing_control() {
    let o = run(&["verify", "y2"]);
    assert_eq!(o.status.code(), Some(0));
    let rows: Vec<serde_json::Value> = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[2]["suite"], "y2-control");
    assert_eq!(rows[2]["ok"], false);
}

#[test]
fn table_format() {
    let o = run(&["pieri", "--gamma", "0,1", "--format", "table"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().next().unwrap().starts_with("target"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["e", "--comp", "1,x"]).status.code(), Some(2));
    assert_eq!(run(&["nonsense"]).status.code(), Some(2));
    assert_eq!(run(&["bijection", "--mu", "2,2", "--w", "q*t,t"]).status.code(), Some(2));
}
