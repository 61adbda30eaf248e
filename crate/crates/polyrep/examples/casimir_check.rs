// Structural checks on every built-in presentation: Jacobi residuals,
// the rewriting weight guard and centrality of the stored Casimir.

use std::error::Error;

use polyrep::algebras::{builtin, BUILTIN_NAMES};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    for name in BUILTIN_NAMES {
        let p = builtin(name).ok_or("built-in")?;
        let jacobi_zero = p.jacobi_residuals().into_iter().all(|r| matches!(r, Ok((_, _, _, e)) if e.is_zero()));
        let guard = p.rules.weight_guard_violations().is_empty();
        let central = p.casimir_residuals().into_iter().all(|(_, r)| matches!(r, Ok(e) if e.is_zero()));
        println!("{name:<8} jacobi {jacobi_zero}  weight-guard {guard}  casimir central {central}");
        println!("         C = {}", p.casimir);
        assert!(jacobi_zero && guard && central);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("casimir_check example");
}
