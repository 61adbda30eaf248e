// Acceptance run: one PASS/FAIL line per criterion. Criteria listed in
// `EXPECTED_FAIL` fail for reasons recorded next to them; any other failure
// makes the run exit non-zero.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use polyrep::algebras::{builtin, Presentation, BUILTIN_NAMES};
use polyrep::coeffring::{Coeff, Scalar};
use polyrep::findings::{run_suite, Finding, Ranges, Suite, Verdict};
use polyrep::freealg::AlgElement;
use polyrep::parser::{parse_element, Permissive};
use polyrep::report::verify;
use polyrep::repspace::{Module, StateCombo};
use polyrep::sequences::a_seq;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const EXPECTED_FAIL: &[(u32, &str)] = &[
    (4, "three printed values disagree with the engine (K1 sign convention, rho2, F Psi)"),
    (7, "the psi_{m+2} coefficient of X2 psi_{m+1} is identically zero, so the support cannot be all seven states"),
];

type Criterion = (u32, &'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn within(t: Duration, limit: u64) -> bool {
    t < Duration::from_secs(limit)
}

fn findings(p: &str, suite: Suite, ranges: &str) -> Vec<Finding> {
    run_suite(&builtin(p).unwrap(), suite, &Ranges::parse(ranges).unwrap()).unwrap()
}

fn by_claim<'a>(fs: &'a [Finding], claim: &str) -> Vec<&'a Finding> {
    fs.iter().filter(|f| f.claim == claim).collect()
}

fn all_match(fs: &[&Finding]) -> bool {
    !fs.is_empty() && fs.iter().all(|f| f.verdict == Verdict::Match)
}

fn structural() -> Outcome {
    let t = Instant::now();
    let mut bad = Vec::new();
    for name in BUILTIN_NAMES {
        let p = builtin(name).unwrap();
        let jac = p.jacobi_residuals().into_iter().all(|r| r.is_ok_and(|r| r.3.is_zero()));
        let guard = p.rules.weight_guard_violations().is_empty();
        let cas = p.casimir_residuals().into_iter().all(|(_, r)| r.is_ok_and(|r| r.is_zero()));
        if !(jac && guard && cas) {
            bad.push(name);
        }
    }
    let dt = t.elapsed();
    outcome(bad.is_empty() && within(dt, 10), format!("failing {bad:?}, {:.2}s", dt.as_secs_f64()))
}

fn representation() -> Outcome {
    let t = Instant::now();
    let mut bad = 0usize;
    let mut checked = 0usize;
    for name in BUILTIN_NAMES {
        let p = builtin(name).unwrap();
        let m = Module::new(&p).unwrap();
        let k = if matches!(name, "DI" | "QUINTIC") { 10 } else { 5 };
        let n = p.gens.len() as u8;
        for idx in m.indices(&vec![k; m.arity()]) {
            for i in 0..n {
                for j in i + 1..n {
                    checked += 1;
                    if !m.representation_residual(i, j, &idx).unwrap().is_zero() {
                        bad += 1;
                    }
                }
            }
        }
    }
    let dt = t.elapsed();
    outcome(bad == 0 && within(dt, 120), format!("{checked} checks, {bad} nonzero residuals, {:.2}s", dt.as_secs_f64()))
}

fn oracle() -> Outcome {
    let t = Instant::now();
    let mut detail = Vec::new();
    let mut pass = true;
    for name in ["DI", "QUINTIC"] {
        let fs = findings(name, Suite::Oracle, "m=0..6");
        let agree = by_claim(&fs, "oracle.agreement");
        pass &= all_match(&agree);
        detail.push(format!("{name}: {} actions", agree.len()));
    }
    let dt = t.elapsed();
    outcome(pass && within(dt, 120), format!("{}, {:.2}s", detail.join(", "), dt.as_secs_f64()))
}

fn cyclic_eigenvalue(p: &Presentation, casimir: &str, value: &str) -> bool {
    let m = Module::new(p).unwrap();
    let k = p.normal_order(&p.parse(casimir).unwrap()).unwrap();
    let v = p.parse_scalar(value).unwrap();
    (4..=10).all(|i| {
        let s = StateCombo::basis(m.parse_state(&format!("F^{i}")).unwrap());
        m.act(&k, &s).unwrap() == s.scale(&v)
    })
}

fn claimed_values() -> Outcome {
    let di = findings("DI", Suite::Propositions, "m=4..10");
    let k1 = all_match(&by_claim(&di, "DI.k1-eigenvalue"));
    let base = all_match(&by_claim(&di, "DI.base-rule"));
    let q = findings("QUINTIC", Suite::Propositions, "m=1..3");
    let rho2 = all_match(&by_claim(&q, "QUINTIC.rho2"));
    let o = findings("DI", Suite::Oracle, "m=0..2");
    let fpsi = all_match(&by_claim(&o, "DI.f-psi"));
    let seq = (1..=12u32).all(|p| {
        let four = Coeff::from_integer(4.into()).pow(p as i32);
        let two = Coeff::from_integer(2.into()).pow(2 * p as i32 + 1);
        // the two closed forms must satisfy the k = 0 row of the recurrence
        let row = a_seq(0, p + 1).unwrap() * Coeff::from_integer(2.into())
            == (Coeff::from_integer(4.into()).pow(p as i32) + a_seq(1, p).unwrap() * Coeff::from_integer(3.into()))
                * Coeff::from_integer(2.into());
        a_seq(1, p).unwrap() == four / Coeff::from_integer(3.into()) && a_seq(0, p + 1).unwrap() == two && row
    });
    // the printed sign convention reproduces K1; informational only
    let printed_path = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/presentations/DI_printed.alg");
    let printed = Presentation::load_file(std::path::Path::new(printed_path)).unwrap();
    let k1_printed = cyclic_eigenvalue(&printed, "F^2 - alpha*E*X2 - d*X1^2 - X1^4", "-2*(r^2 + d*r)");
    let mark = |b: bool| if b { "ok" } else { "no" };
    outcome(
        k1 && base && rho2 && fpsi && seq,
        format!(
            "K1 {} (printed-sign variant {}), base rule {}, rho2 {}, F Psi {}, a-sequence closed forms {}",
            mark(k1),
            mark(k1_printed),
            mark(base),
            mark(rho2),
            mark(fpsi),
            mark(seq)
        ),
    )
}

fn discrepancy_audit() -> Outcome {
    let wanted = [
        ("DI", "DI.x1-action"),
        ("DI", "DI.f-shift"),
        ("DIII", "DIII.f-shift"),
        ("DII", "DII.x1-diagonal"),
        ("DIII", "DIII.casimir-forms"),
        ("DII", "DII.ab-convention"),
    ];
    let mut bad = Vec::new();
    for (alg, claim) in wanted {
        let fs = findings(alg, Suite::Propositions, "");
        let hits = by_claim(&fs, claim);
        let shown = hits.iter().all(|f| !f.engine.is_empty() && !f.claimed.is_empty());
        if hits.is_empty() || !shown || hits.iter().any(|f| f.verdict == Verdict::Match) {
            bad.push(claim);
        }
    }
    outcome(bad.is_empty(), format!("{} tensions reported, problems with {bad:?}", wanted.len()))
}

fn lemma_audit() -> Outcome {
    let mut expansion = [0usize; 2];
    let mut remark_bad = 0;
    let mut total = 0;
    for name in BUILTIN_NAMES {
        let fs = findings(name, Suite::Lemma23, "n=1..6");
        for f in by_claim(&fs, "lemma23.expansion") {
            total += 1;
            expansion[(f.verdict == Verdict::Match) as usize] += 1;
        }
        remark_bad += by_claim(&fs, "lemma23.remark").iter().filter(|f| f.verdict != Verdict::Match).count();
    }
    outcome(
        total > 0 && remark_bad == 0,
        format!(
            "{total} cases: expansion {} MATCH / {} MISMATCH; remark form disagrees in {remark_bad}",
            expansion[1], expansion[0]
        ),
    )
}

fn support(m: &Module, op: &AlgElement, i: u32) -> Vec<u32> {
    let s = StateCombo::basis(m.parse_state(&format!("F^{i}")).unwrap());
    m.act(op, &s).unwrap().terms().keys().map(|k| k[0] + 1).collect()
}

fn band_shape() -> Outcome {
    let p = builtin("DI").unwrap();
    let x2 = p.parse("X2").unwrap();
    let m = Module::new(&p).unwrap();
    let mut r0 = HashMap::new();
    r0.insert("r".to_string(), Scalar::zero());
    let m0 = Module::with_bindings(&p, &r0).unwrap();
    let mut exact = true;
    let mut collapsed = true;
    let mut seen = Vec::new();
    for i in 4..=10u32 {
        let got = support(&m, &x2, i);
        exact &= got == (i - 3..=i + 3).collect::<Vec<_>>();
        collapsed &= support(&m0, &x2, i) == vec![i - 3, i - 1, i + 3];
        if i == 4 {
            seen = got;
        }
    }
    outcome(exact && collapsed, format!("support at m=4 is psi{seen:?}; r=0 collapse {}", if collapsed { "ok" } else { "no" }))
}

fn parser() -> Outcome {
    let mut rng = StdRng::seed_from_u64(2024);
    let mut trips = 0;
    for i in 0..1000 {
        let p = builtin(BUILTIN_NAMES[i % BUILTIN_NAMES.len()]).unwrap();
        let n = p.gens.len() as u8;
        let mut e = AlgElement::zero(&p.gens);
        for _ in 0..rng.gen_range(1..5) {
            let mut w: Vec<u8> = (0..rng.gen_range(0..6)).map(|_| rng.gen_range(0..n)).collect();
            w.sort();
            while p.gens.word_weight(&w) > 10 {
                w.pop();
            }
            let c = Scalar::ratio(rng.gen_range(-9..=9), rng.gen_range(1..=5));
            let c = match p.params.get(rng.gen_range(0..p.params.len().max(1))) {
                Some(name) if rng.gen_bool(0.5) => c.add(&Scalar::param(name)),
                _ => c,
            };
            e = e.add(&AlgElement::word(&p.gens, &w).scale(&c)).unwrap();
        }
        if p.parse(&e.to_string()).is_ok_and(|b| b == e) {
            trips += 1;
        }
    }
    let di = builtin("DI").unwrap();
    let fuzz = std::panic::catch_unwind(|| {
        let mut rng = StdRng::seed_from_u64(99);
        for _ in 0..100_000 {
            let bytes: Vec<u8> = (0..rng.gen_range(0..24)).map(|_| rng.gen()).collect();
            let _ = parse_element(&String::from_utf8_lossy(&bytes), &di.gens, &Permissive(&di.gens));
            let ascii: String = (0..rng.gen_range(0..24)).map(|_| rng.gen_range(32u8..127) as char).collect();
            let _ = parse_element(&ascii, &di.gens, &Permissive(&di.gens));
        }
    })
    .is_ok();
    outcome(trips == 1000 && fuzz, format!("{trips}/1000 round trips, fuzz {}", if fuzz { "clean" } else { "panicked" }))
}

fn determinism() -> Outcome {
    let p = builtin("DI").unwrap();
    let ranges = Ranges::default();
    let a = verify(&p, &Suite::ALL, &ranges, false).unwrap().to_json();
    let b = verify(&p, &Suite::ALL, &ranges, false).unwrap().to_json();
    outcome(a == b, format!("{} bytes", a.len()))
}

fn main() {
    let criteria: [Criterion; 9] = [
        (1, "structural soundness", structural),
        (2, "representation property", representation),
        (3, "oracle equivalence", oracle),
        (4, "stated values", claimed_values),
        (5, "discrepancy audit", discrepancy_audit),
        (6, "commutator-power audit", lemma_audit),
        (7, "band shape", band_shape),
        (8, "parser", parser),
        (9, "determinism", determinism),
    ];
    let mut unexpected = 0;
    for (n, name, check) in criteria {
        let o = check();
        let xfail = EXPECTED_FAIL.iter().find(|(k, _)| *k == n);
        let status = if o.pass { "PASS" } else { "FAIL" };
        println!("{status} {n} {name}: {}", o.detail);
        match (o.pass, xfail) {
            (false, Some((_, why))) => println!("     expected: {why}"),
            (false, None) => unexpected += 1,
            (true, Some(_)) => println!("     note: listed as an expected failure but passed"),
            (true, None) => {}
        }
    }
    if unexpected > 0 {
        eprintln!("{unexpected} unexpected failure(s)");
        std::process::exit(1);
    }
}
