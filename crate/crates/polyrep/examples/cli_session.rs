// The `polyrep` command line driven in-process: `show`, `act`, `band`,
// `seq` and `verify`, with their exit codes.

use std::error::Error;

use polyrep::cli::run;

fn call(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["polyrep"];
    full.extend_from_slice(args);
    let code = run(full, &mut out, &mut err);
    (code, String::from_utf8_lossy(&out).into_owned() + &String::from_utf8_lossy(&err))
}

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let (code, text) = call(&["show", "DIV"]);
    assert_eq!(code, 0);
    assert!(text.contains("4*X1^3 - 2*beta*E*X1 + (1/2 - 2*alpha*c4)*X1"));
    println!("{text}");
    for args in [
        &["act", "DI", "--op", "X2", "--state", "F^5"][..],
        &["act", "DI", "--op", "[X1,[X1,F]]", "--state", "F^0"],
        &["band", "DI", "--op", "F", "--range", "0..3"],
        &["seq", "a", "--k", "0..1", "--p", "1..2"],
    ] {
        let (code, text) = call(args);
        println!("$ polyrep {}\n{text}", args.join(" "));
        assert_eq!(code, 0);
    }
    let (code, _) = call(&["verify", "DI", "--suites", "jacobi,casimir", "--strict"]);
    assert_eq!(code, 0);
    let (code, text) = call(&["show", "no/such/file.alg"]);
    println!("exit {code}: {text}");
    assert_eq!(code, 2);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("cli_session example");
}
