// A verification report: suites run in order, findings carry the engine
// value and the claimed value side by side, and the JSON is deterministic.

use std::error::Error;

use polyrep::algebras::builtin;
use polyrep::findings::{Ranges, Suite, Verdict};
use polyrep::report::verify;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let p = builtin("DI").ok_or("DI is built in")?;
    let ranges = Ranges::parse("m=4..6")?;
    let report = verify(&p, &[Suite::Jacobi, Suite::Propositions], &ranges, false)?;
    for f in report.findings.iter().filter(|f| f.verdict == Verdict::Mismatch).take(4) {
        println!("{} {}\n   engine {}\n   claimed  {}", f.verdict, f.id, f.engine, f.claimed);
    }
    println!("{:?}", report.summary);
    let again = verify(&p, &[Suite::Jacobi, Suite::Propositions], &ranges, false)?;
    assert_eq!(report.to_json(), again.to_json());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("verify_report example");
}
