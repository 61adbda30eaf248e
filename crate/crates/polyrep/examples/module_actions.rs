// Generator actions on the cyclic module `psi_{m+1} = F^m Psi` of D_I,
// and on the two-index modules of D_III and D_IV.

use std::error::Error;

use polyrep::algebras::builtin;
use polyrep::repspace::{Module, StateCombo};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let p = builtin("DI").ok_or("DI is built in")?;
    let module = Module::new(&p)?;
    for g in ["X1", "F", "X2"] {
        let op = p.parse(g)?;
        let s = module.parse_state("F^4")?;
        let img = module.act(&op, &StateCombo::basis(s))?;
        println!("{g} F^4*Psi = {}", module.format_combo(&img));
    }
    // X1 lowers by one with coefficient m*alpha*E/2 plus the diagonal sqrt(r)
    let img = module.act(&p.parse("X1")?, &StateCombo::basis(module.parse_state("F^4")?))?;
    assert_eq!(img.coeff(&[3]), p.parse_scalar("2*alpha*E")?);
    assert_eq!(img.coeff(&[4]), p.parse_scalar("sr")?);

    // the Casimir acts by its stored eigenvalue
    let c = module.act(&p.casimir, &StateCombo::basis(module.parse_state("F^6")?))?;
    assert!(c.is_zero());

    let d3 = builtin("DIII").ok_or("DIII is built in")?;
    let m3 = Module::new(&d3)?;
    let img = m3.act(&d3.parse("F")?, &StateCombo::basis(m3.parse_state("F^2*X2^3")?))?;
    println!("DIII: F F^2*X2^3*Psi = {}", m3.format_combo(&img));

    let d4 = builtin("DIV").ok_or("DIV is built in")?;
    let m4 = Module::new(&d4)?;
    let img = m4.act(&d4.parse("X1")?, &StateCombo::basis(m4.parse_state("X2*F")?))?;
    println!("DIV: X1 X2*F*Psi = {}", m4.format_combo(&img));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("module_actions example");
}
