// The D_II coefficient families `a^(k)(p)`: closed forms and recurrences
// next to the values read off `ad_F^(2p)(X1)`.

use std::error::Error;

use polyrep::coeffring::Coeff;
use polyrep::sequences::{a_seq, dii_ab, family_table, seed_consistency};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let (a, b) = dii_ab()?;
    println!("[F, X1] = a + b X1^2 with a = {a}, b = {b}");
    for p in 1..=12u32 {
        let four = Coeff::from_integer(num_bigint::BigInt::from(4).pow(p));
        assert_eq!(a_seq(1, p)?, four / Coeff::from_integer(3.into()));
        assert_eq!(a_seq(0, p + 1)?, Coeff::from_integer(num_bigint::BigInt::from(2).pow(2 * p + 1)));
    }
    assert!(seed_consistency(12));
    let t = family_table("a", 0..=2, 1..=3)?;
    print!("{}", t.to_csv());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("sequences example");
}
