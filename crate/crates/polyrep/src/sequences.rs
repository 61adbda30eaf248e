//! Number sequences of the D_II nested commutators and the coefficient
//! families of the D_II and quintic `X1`/`Y1` actions.
//!
//! Every family is double-entry: the closed form or recurrence next to the
//! value extracted from the engine.

use std::collections::HashMap;
use std::ops::RangeInclusive;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::algebras::{builtin, Presentation};
use crate::coeffring::{Coeff, Scalar};
use crate::freealg::{binomial, AlgElement, AlgError};
use crate::parser::param;
use crate::repspace::{Module, RepError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeqError {
    #[error("{0} is not determined by the seeds")]
    Unreachable(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("{0}")]
    Alg(#[from] AlgError),
    #[error("{0}")]
    Rep(#[from] RepError),
    #[error("presentation {0} is unavailable")]
    Presentation(String),
    #[error("unknown sequence family `{0}` (expected a, b, xi, upsilon)")]
    UnknownFamily(String),
}

fn pow2(e: u32) -> Coeff {
    Coeff::from_integer(BigInt::one() << e)
}

fn memo() -> &'static RwLock<HashMap<(u32, u32), Coeff>> {
    static M: OnceLock<RwLock<HashMap<(u32, u32), Coeff>>> = OnceLock::new();
    M.get_or_init(RwLock::default)
}

/// `a^(k)(p)`: `a^(0)(p) = 2^(2p-1)`, `a^(1)(p) = 4^p/3`, and `a^(k+1)(p)`
/// solved from
/// `a^(k)(p+1) = 2k(2k-1) a^(k-1)(p) + 2(2k+1)^2 a^(k)(p) + (2k+3) a^(k+1)(p)`
/// (for `k = 1` with the displayed `2^(2p+1)` in place of `2 a^(0)(p)`).
pub fn a_seq(k: u32, p: u32) -> Result<Coeff, SeqError> {
    if p == 0 {
        return Err(SeqError::Unreachable(format!("a^({k})(0)")));
    }
    if let Some(v) = memo().read().unwrap().get(&(k, p)) {
        return Ok(v.clone());
    }
    let v = match k {
        0 => pow2(2 * p - 1),
        1 => pow2(2 * p) / Coeff::from_integer(3.into()),
        2 => {
            // a^(1)(p+1) = 2^(2p+1) + 18 a^(1)(p) + 20 a^(2)(p)
            (a_seq(1, p + 1)? - pow2(2 * p + 1) - Coeff::from_integer(18.into()) * a_seq(1, p)?)
                / Coeff::from_integer(20.into())
        }
        _ => {
            let j = k - 1;
            let c = |n: u32| Coeff::from_integer(n.into());
            (a_seq(j, p + 1)? - c(2 * j * (2 * j - 1)) * a_seq(j - 1, p)? - c(2 * (2 * j + 1).pow(2)) * a_seq(j, p)?)
                / c(2 * j + 3)
        }
    };
    memo().write().unwrap().insert((k, p), v.clone());
    Ok(v)
}

/// `b^(k)(p) = a^(k-1)(p+1)`.
pub fn b_seq(k: u32, p: u32) -> Result<Coeff, SeqError> {
    if k == 0 || p == 0 {
        return Err(SeqError::Unreachable(format!("b^({k})({p})")));
    }
    a_seq(k - 1, p + 1)
}

/// Where a value came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    ClosedForm,
    Recurrence,
    CommutatorExtraction,
}

/// One index of a family, with both provenances side by side.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SeqEntry {
    pub index: (u32, u32),
    pub claimed: Option<String>,
    pub provenance: Provenance,
    pub oracle: Option<String>,
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SeqTable {
    pub family: String,
    pub entries: Vec<SeqEntry>,
}

impl SeqTable {
    pub fn new(family: &str) -> Self {
        SeqTable { family: family.into(), entries: Vec::new() }
    }

    pub fn push(&mut self, index: (u32, u32), claimed: Result<Scalar, SeqError>, prov: Provenance, oracle: Option<Scalar>) {
        let matches = matches!((&claimed, &oracle), (Ok(a), Some(b)) if a == b);
        self.entries.push(SeqEntry {
            index,
            claimed: claimed.ok().map(|s| s.to_string()),
            provenance: prov,
            oracle: oracle.map(|s| s.to_string()),
            matches,
        });
    }

    pub fn all_match(&self) -> bool {
        self.entries.iter().all(|e| e.matches)
    }

    /// CSV with columns `family,i,j,provenance,claimed,oracle,match`.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["family", "i", "j", "provenance", "claimed", "oracle", "match"]).unwrap();
        for e in &self.entries {
            let prov = serde_json::to_value(e.provenance).unwrap();
            w.write_record([
                self.family.as_str(),
                &e.index.0.to_string(),
                &e.index.1.to_string(),
                prov.as_str().unwrap(),
                e.claimed.as_deref().unwrap_or(""),
                e.oracle.as_deref().unwrap_or(""),
                if e.matches { "true" } else { "false" },
            ])
            .unwrap();
        }
        String::from_utf8(w.into_inner().unwrap()).unwrap()
    }
}

fn dii() -> Result<std::sync::Arc<Presentation>, SeqError> {
    builtin("DII").ok_or_else(|| SeqError::Presentation("DII".into()))
}

/// `a`, `b` with `[F, X1] = a + b X1^2` in the D_II engine.
pub fn dii_ab() -> Result<(Scalar, Scalar), SeqError> {
    let p = dii()?;
    let f = AlgElement::gen(&p.gens, p.gens.index("F").unwrap());
    let x1 = AlgElement::gen(&p.gens, p.gens.index("X1").unwrap());
    let c = p.rules.commutator(&f, &x1)?;
    let a = c.coeff(&[]);
    let b = c.coeff(&[0, 0]);
    Ok((a, b))
}

/// Coefficients of `ad_F^n(X1)` by power of `X1`.
pub fn nested_commutator(n: u32) -> Result<Vec<Scalar>, SeqError> {
    let p = dii()?;
    let f = AlgElement::gen(&p.gens, p.gens.index("F").unwrap());
    let x1 = AlgElement::gen(&p.gens, p.gens.index("X1").unwrap());
    let e = p.rules.ad_power(&f, &x1, n)?;
    let deg = e.terms().keys().map(|w| w.len()).max().unwrap_or(0);
    let mut v = vec![Scalar::zero(); deg + 1];
    for (w, c) in e.terms() {
        assert!(w.iter().all(|&g| g == 0), "ad_F^n(X1) leaves the X1 subalgebra");
        v[w.len()] = c.clone();
    }
    Ok(v)
}

fn ab_pow(a: &Scalar, b: &Scalar, ea: i64, eb: i64) -> Scalar {
    a.pow(ea).unwrap().mul(&b.pow(eb).unwrap())
}

/// `a^(k)(p)` for `k <= p` and `b^(k)(p)` for `1 <= k <= p`, read off
/// `ad_F^(2p)(X1)` and `ad_F^(2p+1)(X1)`: `a^(k)(p)` is the `X1^(2k+1)`
/// coefficient over `a^(p-k) b^(p+k)`, `b^(k)(p)` the `X1^(2k)` coefficient
/// over `a^(p+1-k) b^(p+k)`.
pub fn extract_seq_from_commutators(p_max: u32) -> Result<(SeqTable, SeqTable), SeqError> {
    let (a, b) = dii_ab()?;
    let mut ta = SeqTable::new("a");
    let mut tb = SeqTable::new("b");
    for p in 1..=p_max {
        let even = nested_commutator(2 * p)?;
        let odd = nested_commutator(2 * p + 1)?;
        for k in 0..=p {
            let c = even.get(2 * k as usize + 1).cloned().unwrap_or_else(Scalar::zero);
            let norm = ab_pow(&a, &b, p as i64 - k as i64, (p + k) as i64);
            let oracle = c.div(&norm).unwrap();
            let prov = if k <= 1 { Provenance::ClosedForm } else { Provenance::Recurrence };
            ta.push((k, p), a_seq(k, p).map(Scalar::from_rational), prov, Some(oracle));
        }
        for k in 1..=p {
            let c = odd.get(2 * k as usize).cloned().unwrap_or_else(Scalar::zero);
            let norm = ab_pow(&a, &b, (p + 1 - k) as i64, (p + k) as i64);
            let oracle = c.div(&norm).unwrap();
            tb.push((k, p), b_seq(k, p).map(Scalar::from_rational), Provenance::Recurrence, Some(oracle));
        }
    }
    Ok((ta, tb))
}

/// `T(q) = 2^(2q) a^(q+1) b^q + 2^(2q) a^q b^q sqrt(t)
///   + sum_{k=1..q} (b^(k)(q) t^k + a^(k)(q) t^(k+1/2)) a^(q-k) b^(q+k)`.
fn xi_bracket(q: u32, a: &Scalar, b: &Scalar) -> Result<Scalar, SeqError> {
    let st = param("st");
    let t = param("t");
    let c4 = Scalar::from_rational(pow2(2 * q));
    let mut s = c4.mul(&ab_pow(a, b, q as i64 + 1, q as i64)).add(&c4.mul(&ab_pow(a, b, q as i64, q as i64)).mul(&st));
    for k in 1..=q {
        let w = ab_pow(a, b, (q - k) as i64, (q + k) as i64);
        let tk = t.pow(k as i64).unwrap();
        s = s.add(&Scalar::from_rational(b_seq(k, q)?).mul(&w).mul(&tk));
        s = s.add(&Scalar::from_rational(a_seq(k, q)?).mul(&w).mul(&tk).mul(&st));
    }
    Ok(s)
}

/// the stated `Xi_l` for `psi_{m+1}`:
/// `sum_{j=0}^{m-l} (-1)^j C(m-1,j) C(j,l) T(m-j)`, with `a`, `b` as printed
/// (`a = -2(a2 H + c2)`, `b = -2`).
pub fn xi_coeff(l: u32, m: u32) -> Result<Scalar, SeqError> {
    if l >= m {
        return Err(SeqError::IndexOutOfRange(format!("Xi_{l} needs l < m = {m}")));
    }
    let a = param("a2").mul(&param("E")).add(&param("c2")).mul(&Scalar::from_int(-2));
    let b = Scalar::from_int(-2);
    let mut s = Scalar::zero();
    for j in 0..=(m - l) {
        let c = binomial(m - 1, j) * binomial(j, l);
        if c.is_zero() {
            continue;
        }
        let c = if j % 2 == 1 { -c } else { c };
        s = s.add(&xi_bracket(m - j, &a, &b)?.scale(&Coeff::from_integer(c)));
    }
    Ok(s)
}

/// the stated `Upsilon_l` for `psi_{m+1}`, the displayed sum taken literally:
/// `(-1)^m sum_{j=0}^{m-l} C(m,j) C(j,l) sum_{i=0}^{m-l} (c0 E)^(m-l-i) c1^i lambda^(i+1/2)`.
pub fn upsilon_coeff(l: u32, m: u32) -> Result<Scalar, SeqError> {
    if l >= m {
        return Err(SeqError::IndexOutOfRange(format!("Upsilon_{l} needs l < m = {m}")));
    }
    let n = m - l;
    let c0e = param("c0").mul(&param("E"));
    let c1 = param("c1");
    let sl = param("slambda");
    let mut g = Scalar::zero();
    for i in 0..=n {
        g = g.add(&c0e.pow((n - i) as i64).unwrap().mul(&c1.pow(i as i64).unwrap()).mul(&sl.pow(2 * i as i64 + 1).unwrap()));
    }
    let mut c = BigInt::zero();
    for j in 0..=n {
        c += binomial(m, j) * binomial(j, l);
    }
    if m % 2 == 1 {
        c = -c;
    }
    Ok(g.scale(&Coeff::from_integer(c)))
}

/// `-coef of R^l Psi in G R^m Psi` for `l < m`: the engine's reading of a
/// family defined by `G psi_{m+1} = rho psi_{m+1} - sum_l X_l psi_{l+1}`.
fn engine_lower(p: &Presentation, g: &str, m: u32) -> Result<Vec<Scalar>, SeqError> {
    let module = Module::new(p)?;
    let gi = p.gens.index(g).unwrap();
    let img = module.act_gen(gi, &crate::repspace::StateIndex::from_elem(m, 1))?;
    Ok((0..m).map(|l| img.coeff(&[l]).neg()).collect())
}

/// Ξ: stated formula vs the engine's `[F^m, X1] Psi` coefficients.
pub fn xi_table(m_max: u32) -> Result<SeqTable, SeqError> {
    let p = dii()?;
    let mut t = SeqTable::new("Xi");
    for m in 1..=m_max {
        let eng = engine_lower(&p, "X1", m)?;
        for l in 0..m {
            t.push((l, m), xi_coeff(l, m), Provenance::ClosedForm, Some(eng[l as usize].clone()));
        }
    }
    Ok(t)
}

/// Υ: stated formula vs the engine's `[K^m, Y1] Psi` coefficients.
pub fn upsilon_table(m_max: u32) -> Result<SeqTable, SeqError> {
    let p = builtin("QUINTIC").ok_or_else(|| SeqError::Presentation("QUINTIC".into()))?;
    let mut t = SeqTable::new("Upsilon");
    for m in 1..=m_max {
        let eng = engine_lower(&p, "Y1", m)?;
        for l in 0..m {
            t.push((l, m), upsilon_coeff(l, m), Provenance::ClosedForm, Some(eng[l as usize].clone()));
        }
    }
    Ok(t)
}

/// The seeds and recurrences as tables: `a^(k)(p)` for `k <= k_max`, `p <= p_max`.
pub fn a_table(k_max: u32, p_max: u32) -> SeqTable {
    let mut t = SeqTable::new("a");
    for k in 0..=k_max {
        for p in 1..=p_max {
            let prov = if k <= 1 { Provenance::ClosedForm } else { Provenance::Recurrence };
            t.push((k, p), a_seq(k, p).map(Scalar::from_rational), prov, None);
        }
    }
    t
}

/// `2^(2p+2) = 2(2^(2p) + 3 a^(1)(p))` for `p <= p_max`.
pub fn seed_consistency(p_max: u32) -> bool {
    (1..=p_max).all(|p| {
        a_seq(1, p)
            .map(|a1| pow2(2 * p + 2) == (pow2(2 * p) + a1 * Coeff::from_integer(3.into())) * Coeff::from_integer(2.into()))
            .unwrap_or(false)
    })
}

/// A family (`a`, `b`, `xi`, `upsilon`) over index ranges, with the stated
/// value and the engine value side by side. For `a`/`b` the ranges are
/// `k` and `p`; for `xi`/`upsilon` they are `l` and `m`.
pub fn family_table(family: &str, first: RangeInclusive<u32>, second: RangeInclusive<u32>) -> Result<SeqTable, SeqError> {
    let keep = |t: SeqTable| SeqTable {
        family: t.family,
        entries: t.entries.into_iter().filter(|e| first.contains(&e.index.0) && second.contains(&e.index.1)).collect(),
    };
    match family.to_ascii_lowercase().as_str() {
        "a" => Ok(keep(extract_seq_from_commutators(*second.end())?.0)),
        "b" => Ok(keep(extract_seq_from_commutators(*second.end())?.1)),
        "xi" => Ok(keep(xi_table(*second.end())?)),
        "upsilon" => Ok(keep(upsilon_table(*second.end())?)),
        other => Err(SeqError::UnknownFamily(other.into())),
    }
}
