// A presentation file with D_I's commutation table exactly as printed.
// It is consistent, and its Casimir K1 acts by `-2(r^2 + d r)`; the
// built-in D_I follows the operator realization instead.

use std::error::Error;
use std::path::Path;

use polyrep::algebras::{builtin, Presentation};
use polyrep::repspace::{Eigen, Module};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/presentations/DI_printed.alg");
    let p = std::sync::Arc::new(Presentation::load_file(&path)?);
    let module = Module::new(&p)?;
    let probe = module.indices(&[10]);
    match module.casimir_eigenvalue(&p.casimir, &probe)? {
        Eigen::Scalar(v) => {
            println!("printed table: K1 = {v} on psi_1 .. psi_11");
            assert_eq!(v, p.parse_scalar("-2*(r^2 + d*r)")?);
        }
        Eigen::NotScalar { .. } => return Err("K1 should be scalar".into()),
    }
    let di = builtin("DI").ok_or("DI is built in")?;
    println!("printed [X2,F]  = {}", p.rules.bracket(1, 2));
    println!("realized [X2,F] = {}", di.rules.bracket(1, 2));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("printed_variant example");
}
