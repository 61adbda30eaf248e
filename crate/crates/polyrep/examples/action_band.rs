// The matrix of `X2` on `psi_1 .. psi_11` in D_I: a band from
// `psi_{m-3}` to `psi_{m+3}`, which thins out to three diagonals at `r = 0`.

use std::collections::HashMap;
use std::error::Error;

use polyrep::algebras::builtin;
use polyrep::coeffring::Scalar;
use polyrep::repspace::{Module, StateIndex};

fn support(module: &Module, m: u32) -> Result<Vec<u32>, Box<dyn Error>> {
    let g = module.gens().index("X2").ok_or("X2")?;
    let img = module.act_gen(g, &StateIndex::from_elem(m, 1))?;
    Ok(img.terms().keys().map(|k| k[0] + 1).collect())
}

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let p = builtin("DI").ok_or("DI is built in")?;
    let module = Module::new(&p)?;
    let mut r0 = HashMap::new();
    r0.insert("r".to_string(), Scalar::zero());
    let flat = Module::with_bindings(&p, &r0)?;
    for m in 4..=10 {
        let s = support(&module, m)?;
        let s0 = support(&flat, m)?;
        println!("X2 psi_{:<2}: generic {:?}   r=0 {:?}", m + 1, s, s0);
        assert!(s.iter().all(|j| (m - 3..=m + 3).contains(j)));
        assert_eq!((s[0], *s.last().unwrap()), (m - 3, m + 3));
        assert_eq!(s0, vec![m - 3, m - 1, m + 3]);
    }
    let cols: Vec<StateIndex> = (0..=3).map(|m| StateIndex::from_elem(m, 1)).collect();
    let band = module.action_band(&p.parse("F")?, &cols)?;
    print!("{}", band.to_csv());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("action_band example");
}
