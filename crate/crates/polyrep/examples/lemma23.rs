// `[A^n, B]` three ways: direct expansion, the telescoping sum
// `sum_j A^(n-j) [A,B] A^(j-1)`, and the binomial rearrangement into
// `A^l ad_A^(n-j)(B)` terms taken literally.

use std::error::Error;

use polyrep::algebras::builtin;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let p = builtin("DII").ok_or("DII is built in")?;
    let (a, b) = (p.parse("F")?, p.parse("X1")?);
    for n in 1..=5 {
        let direct = p.rules.power_commutator_direct(&a, &b, n)?;
        let remark = p.rules.power_commutator_remark(&a, &b, n)?;
        let expand = p.rules.lemma23_expand(&a, &b, n)?;
        assert_eq!(direct, remark);
        println!("n={n}: telescoping sum agrees; binomial form agrees: {}", direct == expand);
        if direct != expand {
            println!("      difference {}", expand.sub(&direct)?);
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("lemma23 example");
}
