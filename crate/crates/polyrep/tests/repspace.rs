use std::collections::HashMap;

use polyrep::algebras::{builtin, BUILTIN_NAMES};
use polyrep::coeffring::Scalar;
use polyrep::repspace::{Eigen, Module, StateCombo};

#[test]
fn generators_act_as_a_representation() {
    for name in BUILTIN_NAMES {
        let p = builtin(name).unwrap();
        let m = Module::new(&p).unwrap();
        let k = if m.arity() == 1 { 6 } else { 3 };
        let n = p.gens.len() as u8;
        for idx in m.indices(&vec![k; m.arity()]) {
            for i in 0..n {
                for j in i + 1..n {
                    let r = m.representation_residual(i, j, &idx).unwrap();
                    assert!(r.is_zero(), "{name} [{},{}] on {idx:?}: {}", p.gens.name(i), p.gens.name(j), m.format_combo(&r));
                }
            }
        }
    }
}

#[test]
fn products_act_as_composites() {
    let p = builtin("DI").unwrap();
    let m = Module::new(&p).unwrap();
    let s = StateCombo::basis(m.parse_state("F^3").unwrap());
    let x1 = p.parse("X1").unwrap();
    let x2 = p.parse("X2").unwrap();
    let composite = m.act(&x1.mul(&x2).unwrap(), &s).unwrap();
    let stepwise = m.act(&x1, &m.act(&x2, &s).unwrap()).unwrap();
    assert_eq!(composite, stepwise);
}

#[test]
fn x1_lowers_the_raising_index() {
    let p = builtin("DI").unwrap();
    let m = Module::new(&p).unwrap();
    let img = m.act(&p.parse("X1").unwrap(), &StateCombo::basis(m.parse_state("F^5").unwrap())).unwrap();
    assert_eq!(img.terms().len(), 2);
    assert_eq!(img.coeff(&[5]), p.parse_scalar("sr").unwrap());
    assert_eq!(img.coeff(&[4]), p.parse_scalar("5/2*alpha*E").unwrap());
}

#[test]
fn casimir_is_scalar_on_cyclic_modules() {
    for name in ["DI", "DII", "QUINTIC"] {
        let p = builtin(name).unwrap();
        let m = Module::new(&p).unwrap();
        let probe = m.indices(&[5]);
        match m.casimir_eigenvalue(&p.casimir, &probe).unwrap() {
            Eigen::Scalar(v) => {
                if let Some(e) = &p.casimir_eigenvalue {
                    assert_eq!(&v, e, "{name}");
                }
            }
            other => panic!("{name}: {other:?}"),
        }
    }
}

#[test]
fn specializing_r_to_zero() {
    let p = builtin("DI").unwrap();
    let mut b = HashMap::new();
    b.insert("r".to_string(), Scalar::zero());
    let m = Module::with_bindings(&p, &b).unwrap();
    let img = m.act(&p.parse("X1").unwrap(), &StateCombo::basis(m.parse_state("F^2").unwrap())).unwrap();
    assert!(img.coeff(&[2]).is_zero());
    assert!(!img.coeff(&[1]).is_zero());
    for idx in m.indices(&[4]) {
        assert!(m.representation_residual(0, 2, &idx).unwrap().is_zero());
    }
}

#[test]
fn state_text_parses_in_template_order() {
    let p = builtin("DIII").unwrap();
    let m = Module::new(&p).unwrap();
    let idx = m.parse_state("F^2*X2^3").unwrap();
    assert_eq!(m.format_index(&idx), "F^2*X2^3*Psi");
    assert_eq!(m.parse_state("Psi").unwrap(), m.lowest_index());
    assert!(m.parse_state("X2*F").is_err());
    assert!(m.parse_state("Q^2").is_err());
    assert!(m.parse_state("F^x").is_err());
}

#[test]
fn band_columns_match_actions() {
    let p = builtin("DI").unwrap();
    let m = Module::new(&p).unwrap();
    let op = p.parse("X2").unwrap();
    let cols = m.indices(&[6]);
    let band = m.action_band(&op, &cols).unwrap();
    for c in &cols {
        let img = m.act(&op, &StateCombo::basis(c.clone())).unwrap();
        let n = band.entries.iter().filter(|e| e.col == c.to_vec()).count();
        assert_eq!(n, img.terms().len());
    }
    let json: serde_json::Value = serde_json::from_str(&band.to_json()).unwrap();
    assert_eq!(json["operator"], "X2");
    assert!(band.to_csv().lines().next().unwrap().contains("value"));
}
