use polyrep::algebras::builtin;
use polyrep::coeffring::Scalar;
use polyrep::realization::{DiffOp, OracleError, PairState, Realization, System};
use polyrep::repspace::{Module, StateCombo};

fn generic_state(r: &Realization) -> PairState {
    let (w, y) = (Scalar::var(r.w), Scalar::var(r.y));
    PairState::new(w.mul(&w).mul(&y).add(&Scalar::param("beta")), y.mul(&y).sub(&w))
}

#[test]
fn partial_derivatives_commute() {
    for sys in [System::DI, System::Quintic] {
        let r = Realization::new(sys);
        let s = generic_state(&r);
        let dw = DiffOp::term(1, 0, Scalar::one());
        let dy = DiffOp::term(0, 1, Scalar::one());
        assert_eq!(r.apply(&dw, &r.apply(&dy, &s)), r.apply(&dy, &r.apply(&dw, &s)));
        assert_eq!(r.apply(&DiffOp::term(1, 1, Scalar::one()), &s), r.apply(&dw, &r.apply(&dy, &s)));
    }
}

#[test]
fn integrals_commute_with_the_hamiltonian() {
    let cases = [(System::DI, "DI", "F"), (System::Quintic, "QUINTIC", "K")];
    for (sys, name, raising) in cases {
        let r = Realization::new(sys);
        let fid = r.fidelity(&builtin(name).unwrap(), raising, 3).unwrap();
        for f in fid.iter().filter(|f| f.check.starts_with("[H,")) {
            assert!(f.holds, "{name}: {}", f.check);
        }
    }
}

#[test]
fn raised_states_solve_the_schrodinger_equation() {
    for (sys, raising) in [(System::DI, "F"), (System::Quintic, "K")] {
        let r = Realization::new(sys);
        for s in r.basis(raising, 4).unwrap() {
            assert!(r.schrodinger_residual(&s).is_zero());
        }
    }
}

#[test]
fn states_outside_the_span_are_reported() {
    let r = Realization::new(System::DI);
    let basis = r.basis("F", 2).unwrap();
    let stray = PairState::new(Scalar::var(r.y), Scalar::zero());
    assert!(matches!(r.express_in_basis(&stray, &basis), Err(OracleError::NotInSpan(_))));
    assert!(matches!(r.integral("Q"), Err(OracleError::Unknown(_))));
}

#[test]
fn oracle_agrees_with_the_module_on_x1() {
    let p = builtin("DI").unwrap();
    let m = Module::new(&p).unwrap();
    let r = Realization::new(System::DI);
    let basis = r.basis("F", 6).unwrap();
    let x1 = p.parse("X1").unwrap();
    for k in 0..6u32 {
        let img = r.apply(r.integral("X1").unwrap(), &basis[k as usize]);
        let combo = r.express_combo(&img, &basis).unwrap();
        let direct = m.act(&x1, &StateCombo::basis(m.parse_state(&format!("F^{k}")).unwrap())).unwrap();
        assert_eq!(combo, direct, "F^{k}");
    }
}

#[test]
fn pair_states_serialize_as_text() {
    let s = PairState::new(Scalar::ratio(1, 2), Scalar::param("sr"));
    let v: serde_json::Value = serde_json::from_str(&s.to_json()).unwrap();
    assert_eq!(v["A"], "1/2");
    assert_eq!(v["B"], "sr");
    assert_eq!(serde_json::to_value(&s).unwrap(), v);
}
