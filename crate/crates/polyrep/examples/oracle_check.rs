// The differential-operator realization as an independent oracle: apply
// each integral to `R^m Psi` as a pair `A XY + B X'Y`, write the result in
// the basis `R^j Psi`, and compare with the abstract module.

use std::error::Error;

use polyrep::algebras::builtin;
use polyrep::realization::{Realization, System};
use polyrep::repspace::{Module, StateIndex};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    for (name, system, raising) in [("DI", System::DI, "F"), ("QUINTIC", System::Quintic, "K")] {
        let p = builtin(name).ok_or("built-in")?;
        let module = Module::new(&p)?;
        let real = Realization::new(system);
        let basis = real.basis(raising, 6)?;
        for b in &basis {
            assert!(real.schrodinger_residual(b).is_zero());
        }
        let mut agree = 0;
        for g in real.integral_names() {
            for m in 0..=3u32 {
                let st = real.apply(real.integral(g)?, &basis[m as usize]);
                let combo = real.express_combo(&st, &basis)?;
                let eng = module.act_gen(p.gens.index(g).ok_or("gen")?, &StateIndex::from_elem(m, 1))?;
                assert_eq!(combo, *eng);
                agree += 1;
            }
        }
        println!("{name}: {agree} generator actions agree with the module; H R^m Psi = E R^m Psi for m <= 6");
        let fpsi = real.to_x(&real.apply(real.integral(raising)?, &real.psi()));
        println!("{name}: {raising} Psi = ({}) XY + ({}) X'Y", fpsi.a, fpsi.b);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("oracle_check example");
}
