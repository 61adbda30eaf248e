use std::collections::BTreeMap;

use polyrep::algebras::{builtin, BUILTIN_NAMES};
use polyrep::findings::{anchor, run_suite, Ranges, Suite, Verdict};
use polyrep::report::verify;

fn verdicts(name: &str, suite: Suite) -> BTreeMap<String, Vec<Verdict>> {
    let p = builtin(name).unwrap();
    let mut out: BTreeMap<String, Vec<Verdict>> = BTreeMap::new();
    for f in run_suite(&p, suite, &Ranges::default()).unwrap() {
        out.entry(f.claim).or_default().push(f.verdict);
    }
    out
}

fn all(v: &BTreeMap<String, Vec<Verdict>>, claim: &str, verdict: Verdict) -> bool {
    v.get(claim).is_some_and(|xs| !xs.is_empty() && xs.iter().all(|&x| x == verdict))
}

fn any(v: &BTreeMap<String, Vec<Verdict>>, claim: &str, verdict: Verdict) -> bool {
    v.get(claim).is_some_and(|xs| xs.contains(&verdict))
}

#[test]
fn structural_suites_pass_on_builtins() {
    for name in BUILTIN_NAMES {
        for suite in [Suite::Jacobi, Suite::Casimir] {
            let v = verdicts(name, suite);
            assert!(v.values().flatten().all(|&x| x != Verdict::Mismatch), "{name} {suite:?}: {v:?}");
        }
    }
}

#[test]
fn lemma_remark_always_agrees_and_binomial_form_does_not() {
    let v = verdicts("DI", Suite::Lemma23);
    assert!(all(&v, "lemma23.remark", Verdict::Match));
    assert!(all(&v, "lemma23.expansion", Verdict::Mismatch));
}

#[test]
fn di_proposition_verdicts() {
    let v = verdicts("DI", Suite::Propositions);
    for c in ["DI.base-rule", "DI.band-shape", "DI.r0-band", "DI.x1n-f"] {
        assert!(all(&v, c, Verdict::Match), "{c}");
    }
    for c in ["DI.f-shift", "DI.x1-action", "DI.x2-action", "DI.k1-eigenvalue", "DI.r0-x1"] {
        assert!(all(&v, c, Verdict::Mismatch), "{c}");
    }
    assert!(any(&v, "DI.k1-central", Verdict::Mismatch));
}

#[test]
fn other_proposition_verdicts() {
    let v = verdicts("DII", Suite::Propositions);
    assert!(all(&v, "DII.x1-diagonal", Verdict::Mismatch));
    assert!(all(&v, "DII.ab-convention", Verdict::Mismatch));
    assert!(all(&v, "DII.base-rule", Verdict::Match));
    let v = verdicts("DIII", Suite::Propositions);
    assert!(all(&v, "DIII.f-shift", Verdict::Mismatch));
    assert!(all(&v, "DIII.casimir-forms", Verdict::Mismatch));
    let v = verdicts("DIV", Suite::Propositions);
    assert!(all(&v, "DIV.x2-shift", Verdict::Match));
    assert!(all(&v, "DIV.k4-central", Verdict::Mismatch));
    let v = verdicts("QUINTIC", Suite::Propositions);
    assert!(all(&v, "QUINTIC.k-shift", Verdict::Match));
    assert!(all(&v, "QUINTIC.rho1", Verdict::Match));
    assert!(all(&v, "QUINTIC.rho2", Verdict::Mismatch));
}

#[test]
fn oracle_suite_agrees_with_engine() {
    let v = verdicts("DI", Suite::Oracle);
    for c in ["oracle.eigenspace", "oracle.agreement", "oracle.fidelity"] {
        assert!(all(&v, c, Verdict::Match), "{c}");
    }
    assert!(all(&v, "DI.f-psi", Verdict::Mismatch));
    let v = verdicts("DIII", Suite::Oracle);
    assert!(v.values().flatten().all(|&x| x == Verdict::NotApplicable));
}

#[test]
fn every_finding_has_an_anchor() {
    for name in BUILTIN_NAMES {
        let p = builtin(name).unwrap();
        let r = verify(&p, &Suite::ALL, &Ranges::parse("m=1..3,n=1..3,p=1..3").unwrap(), false).unwrap();
        for f in &r.findings {
            assert!(anchor(&f.claim).is_some(), "{name}: orphan claim {}", f.claim);
            assert!(f.id.starts_with(&format!("{name}/{}", f.claim)));
        }
        assert_eq!(r.summary.total, r.findings.len());
    }
}

#[test]
fn reports_are_deterministic() {
    let p = builtin("DI").unwrap();
    let ranges = Ranges::default();
    let a = verify(&p, &Suite::ALL, &ranges, false).unwrap().to_json();
    let b = verify(&p, &Suite::ALL, &ranges, false).unwrap().to_json();
    assert_eq!(a, b);
}

#[test]
fn ranges_parse_and_reject() {
    let r = Ranges::parse("m=2..4,n=0..1").unwrap();
    assert_eq!(r.get("m", (0, 9)), 2..=4);
    assert_eq!(r.get("p", (1, 5)), 1..=5);
    assert_eq!(Ranges::parse("3..5").unwrap().get("m", (0, 0)), 3..=5);
    assert!(Ranges::parse("m=4..2").is_err());
    assert!(Ranges::parse("m=x").is_err());
    assert!("nosuch".parse::<Suite>().is_err());
}
