use std::process::{Command, Output};

fn polyrep(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polyrep")).args(args).env_remove("POLYREP_FUEL").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn show_prints_relations() {
    let o = polyrep(&["show", "DIV"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("4*X1^3 - 2*beta*E*X1 + (1/2 - 2*alpha*c4)*X1"));
}

#[test]
fn verify_emits_json_report() {
    let o = polyrep(&["verify", "DI", "--suites", "jacobi,casimir"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    for key in ["tool", "version", "schema", "algebra", "presentation_hash", "suites", "ranges", "summary", "findings"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert!(v.get("timings").is_none());
    assert_eq!(v["summary"]["MISMATCH"], 0);
    let again = polyrep(&["verify", "DI", "--suites", "jacobi,casimir"]);
    assert_eq!(o.stdout, again.stdout);
}

#[test]
fn strict_fails_on_mismatch() {
    let o = polyrep(&["verify", "DI", "--suites", "lemma23", "--range", "n=1..2", "--strict"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn bad_input_exits_2() {
    assert_eq!(polyrep(&["show", "NOSUCH"]).status.code(), Some(2));
    assert_eq!(polyrep(&["verify", "DI", "--suites", "bogus"]).status.code(), Some(2));
    assert_eq!(polyrep(&["act", "DI", "--op", "X1 +", "--state", "F"]).status.code(), Some(2));
    assert_eq!(polyrep(&["verify", "DI", "--range", "m=9..1"]).status.code(), Some(2));
}

#[test]
fn fuel_exhaustion_exits_3() {
    let o = polyrep(&["--fuel", "3", "act", "QUINTIC", "--op", "K^3*Y2^2", "--state", "K^4"]);
    assert_eq!(o.status.code(), Some(3), "{}", String::from_utf8_lossy(&o.stderr));
    let o = Command::new(env!("CARGO_BIN_EXE_polyrep"))
        .args(["act", "QUINTIC", "--op", "K^3*Y2^2", "--state", "K^4"])
        .env("POLYREP_FUEL", "3")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn act_formats() {
    let o = polyrep(&["act", "DI", "--op", "X2", "--state", "F^5", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["terms"].as_array().unwrap().len(), 6);
    let o = polyrep(&["act", "DI", "--op", "X1", "--state", "F^2", "--format", "csv"]);
    assert!(stdout(&o).starts_with("index,state,coeff\n"));
}

#[test]
fn band_and_seq_write_csv() {
    let o = polyrep(&["band", "DI", "--op", "X2", "--range", "F=0..4"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).lines().count() > 5);
    let o = polyrep(&["seq", "a", "--k", "0..2", "--p", "1..3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next().unwrap(), "family,i,j,provenance,claimed,oracle,match");
}

#[test]
fn out_flag_writes_a_file() {
    let path = std::env::temp_dir().join(format!("polyrep-cli-{}.json", std::process::id()));
    let o = polyrep(&["verify", "DIV", "--suites", "jacobi", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("\"algebra\": \"DIV\""));
    std::fs::remove_file(path).unwrap();
}
