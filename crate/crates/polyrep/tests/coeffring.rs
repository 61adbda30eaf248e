use std::collections::HashMap;

use polyrep::coeffring::{CoeffError, Scalar};
use polyrep::parser::parse_scalar;
use proptest::prelude::*;

const NAMES: [&str; 3] = ["a1", "a2", "c2"];

fn small_poly() -> impl Strategy<Value = Scalar> {
    prop::collection::vec((-4i64..=4, 0usize..3, 0i64..3, 0usize..3, 0i64..2), 1..4).prop_map(|terms| {
        terms.into_iter().fold(Scalar::zero(), |acc, (c, v1, e1, v2, e2)| {
            let t = Scalar::from_int(c)
                .mul(&Scalar::param(NAMES[v1]).pow(e1).unwrap())
                .mul(&Scalar::param(NAMES[v2]).pow(e2).unwrap());
            acc.add(&t)
        })
    })
}

fn scalar() -> impl Strategy<Value = Scalar> {
    (small_poly(), small_poly()).prop_map(|(n, d)| if d.is_zero() { n } else { n.div(&d).unwrap() })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn field_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
        if !a.is_zero() {
            prop_assert!(a.div(&a).unwrap().is_one());
            prop_assert_eq!(b.mul(&a).div(&a).unwrap(), b.clone());
        }
    }

    #[test]
    fn text_round_trip(a in scalar()) {
        let back = parse_scalar(&a.to_string()).unwrap();
        prop_assert_eq!(back, a);
    }
}

#[test]
fn division_by_zero_is_an_error() {
    let a = Scalar::param("a1");
    assert_eq!(a.div(&a.sub(&a)), Err(CoeffError::DivisionByZero));
}

#[test]
fn fractions_reduce_to_lowest_terms() {
    let a = Scalar::param("a1");
    let b = Scalar::param("a2");
    let x = a.mul(&a).sub(&b.mul(&b)).div(&a.sub(&b)).unwrap();
    assert_eq!(x, a.add(&b));
    assert!(x.is_polynomial());
}

#[test]
fn radicals_fold_even_powers() {
    let p = polyrep::algebras::builtin("DI").unwrap();
    let sr = p.parse_scalar("sr").unwrap();
    assert_eq!(sr.mul(&sr).to_string(), "r");
    assert_eq!(sr.pow(3).unwrap().to_string(), "r*sr");
    let mut b = HashMap::new();
    b.insert("r".to_string(), Scalar::from_int(4));
    assert_eq!(sr.substitute(&b).unwrap(), Scalar::from_int(2));
    b.insert("r".to_string(), Scalar::from_int(2));
    assert!(matches!(sr.substitute(&b), Err(CoeffError::InconsistentRadical(_))));
}
