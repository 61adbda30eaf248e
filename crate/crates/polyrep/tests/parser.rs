use polyrep::algebras::{builtin, BUILTIN_NAMES};
use polyrep::coeffring::Scalar;
use polyrep::freealg::{AlgElement, Word};
use polyrep::parser::{parse, parse_element, ParseError, Permissive, Pos};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn random_scalar(rng: &mut StdRng, params: &[String]) -> Scalar {
    let mut s = Scalar::from_int(rng.gen_range(-5..=5));
    for _ in 0..rng.gen_range(0..3) {
        let mut t = Scalar::ratio(rng.gen_range(-6..=6), rng.gen_range(1..=4));
        if !params.is_empty() {
            t = t.mul(&Scalar::param(&params[rng.gen_range(0..params.len())]).pow(rng.gen_range(0..3)).unwrap());
        }
        s = s.add(&t);
    }
    if rng.gen_bool(0.2) && !params.is_empty() {
        let d = Scalar::param(&params[rng.gen_range(0..params.len())]).add(&Scalar::from_int(rng.gen_range(1..4)));
        s = s.div(&d).unwrap();
    }
    if s.is_zero() {
        Scalar::one()
    } else {
        s
    }
}

/// A random normal-form element of weight at most 10.
fn random_normal(rng: &mut StdRng, p: &polyrep::algebras::Presentation) -> AlgElement {
    let n = p.gens.len() as u8;
    let terms = (0..rng.gen_range(1..5)).map(|_| {
        let mut w = Word::new();
        for g in 0..n {
            for _ in 0..rng.gen_range(0..3) {
                if p.gens.word_weight(&w) + p.gens.weight(g) <= 10 {
                    w.push(g);
                }
            }
        }
        (w, random_scalar(rng, &p.params))
    });
    AlgElement::from_terms(&p.gens, terms.collect::<Vec<_>>())
}

#[test]
fn print_parse_round_trip() {
    let mut rng = StdRng::seed_from_u64(7);
    for i in 0..1000 {
        let p = builtin(BUILTIN_NAMES[i % BUILTIN_NAMES.len()]).unwrap();
        let e = random_normal(&mut rng, &p);
        assert!(e.is_normal());
        let text = e.to_string();
        let back = p.parse(&text).unwrap_or_else(|err| panic!("{text}: {err}"));
        assert_eq!(back, e, "{text}");
    }
}

#[test]
fn fuzzed_input_never_panics() {
    const PIECES: &[&str] = &[
        "X1", "X2", "F", "E", "sr", "a1", "2", "0", "17", "+", "-", "*", "/", "^", "^3", "^99", "(", ")", "[", "]", ",",
        "{", "}", " ", "\n", "#", "é", "_", "1/0", "((", "^-1",
    ];
    let p = builtin("DI").unwrap();
    let mut rng = StdRng::seed_from_u64(11);
    let mut accepted = 0;
    for _ in 0..100_000 {
        let len = rng.gen_range(0..12);
        let text: String = (0..len).map(|_| PIECES[rng.gen_range(0..PIECES.len())]).collect();
        if parse_element(&text, &p.gens, &Permissive(&p.gens)).is_ok() {
            accepted += 1;
        }
    }
    assert!(accepted > 0);
}

#[test]
fn deep_nesting_is_rejected() {
    let text = format!("{}X1{}", "(".repeat(1000), ")".repeat(1000));
    assert!(matches!(parse(&text), Err(ParseError::TooDeep { .. })));
}

#[test]
fn errors_carry_positions() {
    let p = builtin("DI").unwrap();
    match p.parse("X1 + \n  Q7") {
        Err(ParseError::UnknownIdent { pos, name, .. }) => {
            assert_eq!(name, "Q7");
            assert_eq!(pos, Pos { line: 2, col: 3 });
        }
        other => panic!("{other:?}"),
    }
    assert!(matches!(p.parse("X1 / X2"), Err(ParseError::NonScalarDivisor { .. })));
    assert!(matches!(p.parse("X1^1000"), Err(ParseError::ExponentTooLarge { .. })));
    assert!(matches!(p.parse("X1 +"), Err(ParseError::Syntax { .. })));
}

#[test]
fn brackets_lower_to_commutators() {
    let p = builtin("DIV").unwrap();
    let c = p.normal_order(&p.parse("[X2, F]").unwrap()).unwrap();
    let d = p.normal_order(&p.parse("X2*F - F*X2").unwrap()).unwrap();
    assert_eq!(c, d);
    let a = p.normal_order(&p.parse("{X1, F}").unwrap()).unwrap();
    assert_eq!(a, p.normal_order(&p.parse("X1*F + F*X1").unwrap()).unwrap());
}
