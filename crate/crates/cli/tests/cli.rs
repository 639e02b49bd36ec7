use std::process::{Command, Output};

fn ucplab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ucplab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn verify_passes_and_reports_json() {
    let o = ucplab(&["verify", "--algebra", "R", "--dim", "2", "--trials", "5", "--seed", "3"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["pass"], true);
    assert_eq!(v["config"]["model"], "H_2(R)");
    assert!(v["checks"].as_array().unwrap().len() > 10);
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        &["verify", "--algebra", "O", "--dim", "4"][..],
        &["verify", "--trials", "0"],
        &["i3", "--tol", "-1"],
        &["search", "--block-size-min", "1"],
        &["nonsense"],
    ] {
        assert_eq!(code(&ucplab(args)), 2, "{args:?}");
    }
}

#[test]
fn corridor_csv_has_one_row_per_trial() {
    let o = ucplab(&["corridor", "--algebra", "C", "--dim", "2", "--trials", "1", "--format", "csv"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "p,q,lower_ok,upper_ok,model,seed,trial");
    assert_eq!(lines.len(), 2);
    assert!(lines[1].ends_with(",true,true,H_2(C),0,0"));
}

#[test]
fn check_reports_failures_with_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("repeated.txt");
    std::fs::write(&bad, "block: 1 1 2\n").unwrap();
    let o = ucplab(&["check", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["OS3"], "fail");

    let good = dir.path().join("boolean.txt");
    std::fs::write(&good, "# three outcomes\nblock: 1 2 3\n").unwrap();
    assert_eq!(code(&ucplab(&["check", good.to_str().unwrap()])), 0);

    let garbled = dir.path().join("garbled.txt");
    std::fs::write(&garbled, "blok 1 2\n").unwrap();
    assert_eq!(code(&ucplab(&["check", garbled.to_str().unwrap()])), 2);
}

#[test]
fn table_lists_every_unit_product() {
    let o = ucplab(&["table"]);
    assert_eq!(code(&o), 0);
    assert_eq!(String::from_utf8(o.stdout).unwrap().lines().count(), 9);
}
