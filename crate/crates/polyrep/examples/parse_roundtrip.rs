// Parsing and printing: every normal-ordered element prints to text that
// parses back to the same element.

use std::error::Error;

use polyrep::algebras::builtin;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let p = builtin("QUINTIC").ok_or("QUINTIC is built in")?;
    for text in [
        "K^2 - rho1*K - rho3",
        "{Y1^2, Y2} + 3/2*c1*[Y2, K]",
        "(c0*E + 3*c1*lambda)*Y1^3 - slambda*K/(2*c0)",
    ] {
        let e = p.normal_order(&p.parse(text)?)?;
        let printed = e.to_string();
        let back = p.normal_order(&p.parse(&printed)?)?;
        println!("{text}\n  -> {printed}");
        assert_eq!(back, e);
    }
    let bad = p.parse("Y1 + (");
    println!("error: {}", bad.unwrap_err());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("parse_roundtrip example");
}
