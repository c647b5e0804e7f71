use std::process::{Command, Output};

fn irred(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_irred")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn cyclic_group_constants() {
    let o = irred(&["group", "--invariants", "3", "--emit", "M"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "4.5");
    let o = irred(&["group", "--invariants", "2,2", "--emit", "D"]);
    assert_eq!(stdout(&o).trim(), "3");
}

#[test]
fn worked_example_constants() {
    let o = irred(&["constants", "--d", "-23", "--modulus", "3", "--alpha", "1,1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), r#"{"C_prime":{"num":1,"den":27},"L":2}"#);
    let o = irred(&["constants", "--d", "-23", "--modulus", "3", "--alpha", "0,1", "--alpha-basis", "omega"]);
    assert_eq!(stdout(&o).trim(), r#"{"C_prime":{"num":1,"den":27},"L":2}"#);
}

#[test]
fn bad_input_exits_with_one() {
    for args in [
        &["group", "--invariants", "2,3"][..],
        &["constants", "--d", "4"],
        &["constants", "--d", "-23", "--modulus", "3"],
        &["constants", "--d", "-23", "--modulus", "3", "--alpha", "1,2"],
        &["count", "--d", "-1", "--experiment", "landau", "--xgrid", "100000000"],
        &["frobnicate"],
    ] {
        let o = irred(args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn help_exits_cleanly() {
    let o = irred(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("constants"));
}

#[test]
fn verify_passes() {
    let o = irred(&["verify"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn field_listing() {
    let o = irred(&["field", "--d", "-23"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["class_number"], 3);
    assert_eq!(v["invariant_factors"], serde_json::json!([3]));
}
