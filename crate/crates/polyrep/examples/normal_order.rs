// Normal ordering in the D_I cubic algebra: products, commutators and
// nested brackets come back as sorted words over `Q[params, E]`.

use std::error::Error;

use polyrep::algebras::builtin;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let p = builtin("DI").ok_or("DI is built in")?;
    let f_x1 = p.normal_order(&p.parse("F*X1")?)?;
    println!("F*X1          = {f_x1}");
    assert_eq!(f_x1, p.normal_order(&p.parse("X1*F - 1/2*alpha*E")?)?);

    let x2f = p.rules.commutator(&p.parse("X2")?, &p.parse("F")?)?;
    println!("[X2,F]        = {x2f}");

    // [X1,F] is central, so the second nested bracket vanishes
    let nested = p.normal_order(&p.parse("[X1,[X1,F]]")?)?;
    println!("[X1,[X1,F]]   = {nested}");
    assert!(nested.is_zero());

    let x1 = p.parse("X1")?;
    let f = p.parse("F")?;
    for n in 1..=4 {
        let c = p.rules.power_commutator_direct(&x1, &f, n)?;
        println!("[X1^{n},F]     = {c}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("normal_order example");
}
