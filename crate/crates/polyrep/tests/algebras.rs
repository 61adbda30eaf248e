use polyrep::algebras::{builtin, builtin_source, resolve_algebra, Failure, LoadError, Presentation, BUILTIN_NAMES};

fn di_with(from: &str, to: &str) -> String {
    let src = builtin_source("DI").unwrap();
    assert!(src.contains(from));
    src.replace(from, to)
}

fn failures(src: &str) -> Vec<Failure> {
    match Presentation::load(src) {
        Err(LoadError::Invalid(fs)) => fs,
        other => panic!("expected a validation failure, got {other:?}"),
    }
}

#[test]
fn builtins_validate() {
    for name in BUILTIN_NAMES {
        let p = builtin(name).unwrap();
        assert!(p.validate().is_empty(), "{name}");
        assert!(p.jacobi_residuals().into_iter().all(|r| r.unwrap().3.is_zero()), "{name}");
        assert!(p.casimir_residuals().into_iter().all(|(_, r)| r.unwrap().is_zero()), "{name}");
    }
}

#[test]
fn jacobi_violation_is_rejected() {
    let fs = failures(&di_with("[X1,F] = 1/2*alpha*E", "[X1,F] = X1"));
    assert!(fs.iter().any(|f| matches!(f, Failure::JacobiViolation(..))), "{fs:?}");
}

#[test]
fn incomplete_table_is_rejected() {
    let fs = failures(&di_with("[X1,F] = 1/2*alpha*E\n", ""));
    assert!(fs.contains(&Failure::IncompleteCommTable("X1".into(), "F".into())), "{fs:?}");
}

#[test]
fn weight_guard_is_enforced() {
    let fs = failures(&di_with("[X1,X2] = F", "[X1,X2] = F^2"));
    assert!(fs.iter().any(|f| matches!(f, Failure::WeightGuardViolation(..))), "{fs:?}");
}

#[test]
fn non_central_casimir_is_rejected() {
    let fs = failures(&di_with("element = F^2 + X1^4", "element = F^2 + 2*X1^4"));
    assert!(fs.iter().any(|f| matches!(f, Failure::CasimirNotCentral(..))), "{fs:?}");
}

#[test]
fn unknown_identifier_is_a_parse_error() {
    let err = Presentation::load(&di_with("[X1,X2] = F", "[X1,X2] = F + zeta")).unwrap_err();
    assert!(matches!(err, LoadError::Parse(_)), "{err:?}");
    assert!(err.to_string().contains("zeta"));
}

#[test]
fn save_load_round_trip() {
    for name in BUILTIN_NAMES {
        let p = builtin(name).unwrap();
        let text = p.save();
        let q = Presentation::load(&text).unwrap();
        assert_eq!(*p, q, "{name}");
        assert_eq!(p.hash(), q.hash(), "{name}");
        assert_eq!(q.save(), text, "{name}");
    }
}

#[test]
fn show_lists_printed_relations() {
    let p = builtin("DIV").unwrap();
    assert!(p.show().contains("4*X1^3 - 2*beta*E*X1 + (1/2 - 2*alpha*c4)*X1"));
}

#[test]
fn algebras_resolve_by_name_or_path() {
    assert_eq!(resolve_algebra("DIII").unwrap().name, "DIII");
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/presentations/DI_printed.alg");
    let p = resolve_algebra(path).unwrap();
    assert!(p.validate().is_empty());
    assert_ne!(p.hash(), builtin("DI").unwrap().hash());
    assert!(matches!(resolve_algebra("/no/such/file.alg"), Err(LoadError::Io(..))));
}
