use std::collections::HashMap;

use polyrep::algebras::{builtin, builtin_source, Presentation, BUILTIN_NAMES};
use polyrep::coeffring::Scalar;
use polyrep::freealg::{AlgElement, AlgError, GenSet, Generator, Rules, Strategy as Order};
use proptest::prelude::*;

fn word(n: u8) -> impl Strategy<Value = Vec<u8>> {
    prop::collection::vec(0..n, 0..5)
}

fn element(p: &polyrep::algebras::Presentation, words: Vec<(Vec<u8>, i64)>) -> AlgElement {
    AlgElement::from_terms(&p.gens, words.into_iter().map(|(w, c)| (w.into_iter().collect(), Scalar::from_int(c))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normal_ordering_is_idempotent_and_multiplicative(
        alg in 0usize..5,
        a in prop::collection::vec((word(3), -3i64..4), 1..3),
        b in prop::collection::vec((word(3), -3i64..4), 1..3),
    ) {
        let p = builtin(BUILTIN_NAMES[alg]).unwrap();
        let (a, b) = (element(&p, a), element(&p, b));
        let na = p.normal_order(&a).unwrap();
        prop_assert!(na.is_normal());
        prop_assert_eq!(p.normal_order(&na).unwrap(), na.clone());
        let nb = p.normal_order(&b).unwrap();
        let direct = p.normal_order(&a.mul(&b).unwrap()).unwrap();
        let via = p.normal_order(&na.mul(&nb).unwrap()).unwrap();
        prop_assert_eq!(direct, via);
    }

    #[test]
    fn rewriting_is_confluent(alg in 0usize..5, w in word(3)) {
        let p = builtin(BUILTIN_NAMES[alg]).unwrap();
        let e = AlgElement::word(&p.gens, &w);
        let nf = p.normal_order(&e).unwrap();
        let left = p.rules.rewrite_naive(&e, Order::Leftmost, 1 << 20).unwrap();
        let right = p.rules.rewrite_naive(&e, Order::Rightmost, 1 << 20).unwrap();
        prop_assert_eq!(&left, &nf);
        prop_assert_eq!(&right, &nf);
    }
}

#[test]
fn remark_form_equals_direct_expansion() {
    for name in BUILTIN_NAMES {
        let p = builtin(name).unwrap();
        let n = p.gens.len() as u8;
        for a in 0..n {
            for b in 0..n {
                for k in 1..=4 {
                    let (ea, eb) = (AlgElement::gen(&p.gens, a), AlgElement::gen(&p.gens, b));
                    let d = p.rules.power_commutator_direct(&ea, &eb, k).unwrap();
                    let r = p.rules.power_commutator_remark(&ea, &eb, k).unwrap();
                    assert_eq!(d, r, "{name} a={a} b={b} n={k}");
                }
            }
        }
    }
}

#[test]
fn dii_bracket_of_f_and_x1() {
    // [F, X1] = -2(a1 E + c2) - 2 X1^2, read off the stored table
    let p = builtin("DII").unwrap();
    let c = p.rules.ad_power(&p.parse("F").unwrap(), &p.parse("X1").unwrap(), 1).unwrap();
    assert_eq!(c, p.normal_order(&p.parse("-2*(a1*E + c2) - 2*X1^2").unwrap()).unwrap());
}

#[test]
fn missing_rule_is_reported() {
    let gens = GenSet::new(vec![
        Generator { name: "A".into(), weight: 1 },
        Generator { name: "B".into(), weight: 1 },
    ]);
    assert_eq!(Rules::new(&gens, HashMap::new()).err(), Some(AlgError::IncompleteCommTable("A".into(), "B".into())));
}

#[test]
fn fuel_exhaustion_is_an_error() {
    // a fresh load, so no memoised products are shared with other tests
    let p = Presentation::load(builtin_source("QUINTIC").unwrap()).unwrap();
    let w = p.parse("K^3*Y2^3*Y1^3").unwrap();
    assert_eq!(p.rules.normal_order_with(&w, 5), Err(AlgError::FuelExhausted(5)));
}
