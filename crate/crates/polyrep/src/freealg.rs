//! Free associative algebra over [`Scalar`] and normal ordering.
//!
//! Words are sequences of generator indices; the index order is the normal
//! order. A [`Rules`] value holds the commutation table
//! `[g_i, g_j]` for `i < j`, used to rewrite `g_j g_i -> g_i g_j - [g_i, g_j]`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_traits::Signed;
use smallvec::SmallVec;
use thiserror::Error;

use crate::coeffring::{CoeffError, Coeff, Scalar};

pub type Word = SmallVec<[u8; 16]>;

/// Default rewrite budget per call.
pub const DEFAULT_FUEL: u64 = 1_000_000;

static FUEL: std::sync::atomic::AtomicU64 = std::sync::atomic::AtomicU64::new(DEFAULT_FUEL);

/// The per-call rewrite budget used when none is given.
pub fn default_fuel() -> u64 {
    FUEL.load(std::sync::atomic::Ordering::Relaxed)
}

/// Sets the per-call rewrite budget used when none is given.
pub fn set_default_fuel(n: u64) {
    FUEL.store(n, std::sync::atomic::Ordering::Relaxed)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgError {
    #[error("elements belong to different generator sets")]
    MixedPresentation,
    #[error("rewriting exceeded the fuel budget of {0} steps")]
    FuelExhausted(u64),
    #[error("no commutation rule for [{0}, {1}]")]
    IncompleteCommTable(String, String),
    #[error(transparent)]
    Coeff(#[from] CoeffError),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub weight: u32,
}

/// Ordered generators; the order is the normal order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GenSet {
    gens: Vec<Generator>,
}

impl GenSet {
    pub fn new(gens: Vec<Generator>) -> Arc<Self> {
        assert!(gens.len() < 256, "too many generators");
        Arc::new(GenSet { gens })
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn gens(&self) -> &[Generator] {
        &self.gens
    }

    pub fn name(&self, i: u8) -> &str {
        &self.gens[i as usize].name
    }

    pub fn weight(&self, i: u8) -> u32 {
        self.gens[i as usize].weight
    }

    pub fn index(&self, name: &str) -> Option<u8> {
        self.gens.iter().position(|g| g.name == name).map(|i| i as u8)
    }

    pub fn word_weight(&self, w: &[u8]) -> u32 {
        w.iter().map(|&g| self.weight(g)).sum()
    }
}

pub fn inversions(w: &[u8]) -> usize {
    let mut n = 0;
    for i in 0..w.len() {
        for j in i + 1..w.len() {
            if w[i] > w[j] {
                n += 1;
            }
        }
    }
    n
}

pub fn is_sorted(w: &[u8]) -> bool {
    w.windows(2).all(|p| p[0] <= p[1])
}

/// A finite linear combination of words.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct AlgElement {
    gens: Arc<GenSet>,
    terms: BTreeMap<Word, Scalar>,
}

fn accumulate(map: &mut BTreeMap<Word, Scalar>, w: Word, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match map.entry(w) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            let s = e.get().add(&c);
            if s.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = s;
            }
        }
    }
}

impl AlgElement {
    pub fn zero(gens: &Arc<GenSet>) -> Self {
        AlgElement { gens: gens.clone(), terms: BTreeMap::new() }
    }

    pub fn scalar(gens: &Arc<GenSet>, c: Scalar) -> Self {
        AlgElement::term(gens, Word::new(), c)
    }

    pub fn one(gens: &Arc<GenSet>) -> Self {
        AlgElement::scalar(gens, Scalar::one())
    }

    pub fn gen(gens: &Arc<GenSet>, i: u8) -> Self {
        AlgElement::term(gens, Word::from_slice(&[i]), Scalar::one())
    }

    pub fn word(gens: &Arc<GenSet>, w: &[u8]) -> Self {
        AlgElement::term(gens, Word::from_slice(w), Scalar::one())
    }

    pub fn term(gens: &Arc<GenSet>, w: Word, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(w, c);
        }
        AlgElement { gens: gens.clone(), terms }
    }

    pub fn from_terms(gens: &Arc<GenSet>, it: impl IntoIterator<Item = (Word, Scalar)>) -> Self {
        let mut terms = BTreeMap::new();
        for (w, c) in it {
            accumulate(&mut terms, w, c);
        }
        AlgElement { gens: gens.clone(), terms }
    }

    pub fn gens(&self) -> &Arc<GenSet> {
        &self.gens
    }

    pub fn terms(&self) -> &BTreeMap<Word, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &[u8]) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    /// The value if the element is a pure scalar.
    pub fn as_scalar(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => self.terms.get(&Word::new()).cloned(),
            _ => None,
        }
    }

    /// Maximum word weight (0 for scalars and zero).
    pub fn weight(&self) -> u32 {
        self.terms.keys().map(|w| self.gens.word_weight(w)).max().unwrap_or(0)
    }

    pub fn is_normal(&self) -> bool {
        self.terms.keys().all(|w| is_sorted(w))
    }

    fn check(&self, o: &AlgElement) -> Result<(), AlgError> {
        if Arc::ptr_eq(&self.gens, &o.gens) || self.gens == o.gens {
            Ok(())
        } else {
            Err(AlgError::MixedPresentation)
        }
    }

    pub fn add(&self, o: &AlgElement) -> Result<AlgElement, AlgError> {
        self.check(o)?;
        let mut terms = self.terms.clone();
        for (w, c) in &o.terms {
            accumulate(&mut terms, w.clone(), c.clone());
        }
        Ok(AlgElement { gens: self.gens.clone(), terms })
    }

    pub fn sub(&self, o: &AlgElement) -> Result<AlgElement, AlgError> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> AlgElement {
        self.scale(&Scalar::from_int(-1))
    }

    pub fn scale(&self, c: &Scalar) -> AlgElement {
        if c.is_zero() {
            return AlgElement::zero(&self.gens);
        }
        AlgElement {
            gens: self.gens.clone(),
            terms: self.terms.iter().map(|(w, d)| (w.clone(), d.mul(c))).collect(),
        }
    }

    /// Concatenation product (no normal ordering).
    pub fn mul(&self, o: &AlgElement) -> Result<AlgElement, AlgError> {
        self.check(o)?;
        let mut terms = BTreeMap::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &o.terms {
                let mut w = a.clone();
                w.extend_from_slice(b);
                accumulate(&mut terms, w, ca.mul(cb));
            }
        }
        Ok(AlgElement { gens: self.gens.clone(), terms })
    }

    pub fn pow(&self, n: u32) -> AlgElement {
        let mut acc = AlgElement::one(&self.gens);
        for _ in 0..n {
            acc = acc.mul(self).unwrap();
        }
        acc
    }

    /// Applies `f` to every coefficient.
    pub fn map_coeffs(
        &self,
        mut f: impl FnMut(&Scalar) -> Result<Scalar, CoeffError>,
    ) -> Result<AlgElement, CoeffError> {
        let mut terms = BTreeMap::new();
        for (w, c) in &self.terms {
            accumulate(&mut terms, w.clone(), f(c)?);
        }
        Ok(AlgElement { gens: self.gens.clone(), terms })
    }

    /// Terms in display order: heavier words first, then by word.
    pub fn display_terms(&self) -> Vec<(&Word, &Scalar)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| {
            let (wa, wb) = (self.gens.word_weight(a.0), self.gens.word_weight(b.0));
            wb.cmp(&wa).then_with(|| a.0.cmp(b.0))
        });
        v
    }
}

/// Writes a word as `X1^2*F`.
pub fn format_word(gens: &GenSet, w: &[u8]) -> String {
    let mut parts = Vec::new();
    let mut i = 0;
    while i < w.len() {
        let mut j = i;
        while j < w.len() && w[j] == w[i] {
            j += 1;
        }
        let name = gens.name(w[i]);
        if j - i == 1 {
            parts.push(name.to_string());
        } else {
            parts.push(format!("{name}^{}", j - i));
        }
        i = j;
    }
    parts.join("*")
}

/// Formats `c * word` as a signed term; returns (negative, body).
fn format_term(gens: &GenSet, w: &[u8], c: &Scalar) -> (bool, String) {
    let word = format_word(gens, w);
    // A single-term numerator carries the sign out to the join.
    let neg = c.num().len() == 1 && c.num().leading().is_some_and(|(_, k)| k.is_negative());
    let a = if neg { c.neg() } else { c.clone() };
    let cs = if a.is_polynomial() && a.num().len() > 1 { format!("({a})") } else { a.to_string() };
    let body = if w.is_empty() {
        cs
    } else if a.is_one() {
        word
    } else {
        format!("{cs}*{word}")
    };
    (neg, body)
}

impl fmt::Display for AlgElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (w, c)) in self.display_terms().into_iter().enumerate() {
            let (neg, body) = format_term(&self.gens, w, c);
            match (i, neg) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => f.write_str(&body)?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

type Terms = Arc<Vec<(Word, Scalar)>>;

/// A commutation table with a memo of sorted-word-times-generator products.
#[derive(Debug)]
pub struct Rules {
    gens: Arc<GenSet>,
    /// `table[i][j]` for `i < j` is the normal form of `[g_i, g_j]`.
    table: Vec<Vec<Option<AlgElement>>>,
    memo: RwLock<HashMap<(Word, u8), Terms>>,
}

impl Clone for Rules {
    fn clone(&self) -> Self {
        Rules { gens: self.gens.clone(), table: self.table.clone(), memo: RwLock::default() }
    }
}

impl PartialEq for Rules {
    fn eq(&self, o: &Self) -> bool {
        self.gens == o.gens && self.table == o.table
    }
}

/// Rewriting order for the naive engine.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Leftmost,
    Rightmost,
}

impl Rules {
    /// `brackets` maps `(i, j)`, `i < j`, to `[g_i, g_j]` in normal form.
    #[allow(clippy::needless_range_loop)]
    pub fn new(gens: &Arc<GenSet>, brackets: HashMap<(u8, u8), AlgElement>) -> Result<Self, AlgError> {
        let n = gens.len();
        let mut table = vec![vec![None; n]; n];
        for i in 0..n {
            for j in i + 1..n {
                let e = brackets.get(&(i as u8, j as u8)).ok_or_else(|| {
                    AlgError::IncompleteCommTable(gens.name(i as u8).into(), gens.name(j as u8).into())
                })?;
                table[i][j] = Some(e.clone());
            }
        }
        Ok(Rules { gens: gens.clone(), table, memo: RwLock::default() })
    }

    /// A table that may miss entries; only for reporting what is missing.
    pub fn new_partial(gens: &Arc<GenSet>, brackets: HashMap<(u8, u8), AlgElement>) -> Self {
        let n = gens.len();
        let mut table = vec![vec![None; n]; n];
        for ((i, j), e) in brackets {
            table[i as usize][j as usize] = Some(e);
        }
        Rules { gens: gens.clone(), table, memo: RwLock::default() }
    }

    pub fn has(&self, i: u8, j: u8) -> bool {
        self.table[i as usize][j as usize].is_some()
    }

    pub fn gens(&self) -> &Arc<GenSet> {
        &self.gens
    }

    /// `[g_i, g_j]` for `i < j`.
    pub fn bracket(&self, i: u8, j: u8) -> &AlgElement {
        self.table[i as usize][j as usize].as_ref().expect("complete table")
    }

    /// `[g_i, g_j]` for any pair.
    pub fn gen_bracket(&self, i: u8, j: u8) -> AlgElement {
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.bracket(i, j).clone(),
            std::cmp::Ordering::Greater => self.bracket(j, i).neg(),
            std::cmp::Ordering::Equal => AlgElement::zero(&self.gens),
        }
    }

    pub fn normal_order(&self, a: &AlgElement) -> Result<AlgElement, AlgError> {
        self.normal_order_with(a, default_fuel())
    }

    /// Normal form with an explicit rewrite budget.
    pub fn normal_order_with(&self, a: &AlgElement, fuel: u64) -> Result<AlgElement, AlgError> {
        if a.gens != self.gens && !Arc::ptr_eq(&a.gens, &self.gens) {
            return Err(AlgError::MixedPresentation);
        }
        let mut ctx = Ctx { rules: self, fuel, budget: fuel };
        let mut out = BTreeMap::new();
        for (w, c) in &a.terms {
            for (v, d) in ctx.mul_word(&Word::new(), w)? {
                accumulate(&mut out, v, d.mul(c));
            }
        }
        Ok(AlgElement { gens: self.gens.clone(), terms: out })
    }

    /// Normal form of `a * b` for normal-form inputs.
    pub fn mul_normal(&self, a: &AlgElement, b: &AlgElement, fuel: u64) -> Result<AlgElement, AlgError> {
        a.check(b)?;
        let mut ctx = Ctx { rules: self, fuel, budget: fuel };
        let mut out = BTreeMap::new();
        for (wa, ca) in &a.terms {
            for (wb, cb) in &b.terms {
                let c = ca.mul(cb);
                for (v, d) in ctx.mul_word(wa, wb)? {
                    accumulate(&mut out, v, d.mul(&c));
                }
            }
        }
        Ok(AlgElement { gens: self.gens.clone(), terms: out })
    }

    /// Naive rewriting: repeatedly resolve one inversion chosen by `strategy`.
    pub fn rewrite_naive(&self, a: &AlgElement, strategy: Strategy, fuel: u64) -> Result<AlgElement, AlgError> {
        let mut terms = a.terms.clone();
        let mut steps = 0u64;
        loop {
            let pick = match strategy {
                Strategy::Leftmost => terms.keys().find(|w| !is_sorted(w)).cloned(),
                Strategy::Rightmost => terms.keys().rev().find(|w| !is_sorted(w)).cloned(),
            };
            let Some(w) = pick else { break };
            steps += 1;
            if steps > fuel {
                return Err(AlgError::FuelExhausted(fuel));
            }
            let c = terms.remove(&w).unwrap();
            let positions = (0..w.len() - 1).filter(|&k| w[k] > w[k + 1]);
            let k = match strategy {
                Strategy::Leftmost => positions.min(),
                Strategy::Rightmost => positions.max(),
            }
            .unwrap();
            let (hi, lo) = (w[k], w[k + 1]);
            let mut swapped = w.clone();
            swapped.swap(k, k + 1);
            accumulate(&mut terms, swapped, c.clone());
            for (x, d) in &self.bracket(lo, hi).terms {
                let mut v = Word::from_slice(&w[..k]);
                v.extend_from_slice(x);
                v.extend_from_slice(&w[k + 2..]);
                accumulate(&mut terms, v, d.mul(&c).neg());
            }
        }
        Ok(AlgElement { gens: self.gens.clone(), terms })
    }

    pub fn commutator(&self, a: &AlgElement, b: &AlgElement) -> Result<AlgElement, AlgError> {
        self.normal_order(&a.mul(b)?.sub(&b.mul(a)?)?)
    }

    pub fn anticommutator(&self, a: &AlgElement, b: &AlgElement) -> Result<AlgElement, AlgError> {
        self.normal_order(&a.mul(b)?.add(&b.mul(a)?)?)
    }

    /// `ad_a^k(b) = [a, [a, ..., [a, b]]]`.
    pub fn ad_power(&self, a: &AlgElement, b: &AlgElement, k: u32) -> Result<AlgElement, AlgError> {
        let a = self.normal_order(a)?;
        let mut acc = self.normal_order(b)?;
        for _ in 0..k {
            let l = self.mul_normal(&a, &acc, default_fuel())?;
            let r = self.mul_normal(&acc, &a, default_fuel())?;
            acc = l.sub(&r)?;
        }
        Ok(acc)
    }

    /// `a^n b - b a^n` by direct expansion.
    pub fn power_commutator_direct(&self, a: &AlgElement, b: &AlgElement, n: u32) -> Result<AlgElement, AlgError> {
        let an = self.normal_order(&a.pow(n))?;
        let b = self.normal_order(b)?;
        let l = self.mul_normal(&an, &b, default_fuel())?;
        let r = self.mul_normal(&b, &an, default_fuel())?;
        l.sub(&r)
    }

    /// `sum_{j=1}^n a^{n-j} [a, b] a^{j-1}`.
    pub fn power_commutator_remark(&self, a: &AlgElement, b: &AlgElement, n: u32) -> Result<AlgElement, AlgError> {
        let ab = self.commutator(a, b)?;
        let mut acc = AlgElement::zero(&self.gens);
        for j in 1..=n {
            let t = a.pow(n - j).mul(&ab)?.mul(&a.pow(j - 1))?;
            acc = acc.add(&self.normal_order(&t)?)?;
        }
        Ok(acc)
    }

    /// The double sum
    /// `sum_{l=0}^{n-1} sum_{j=0}^{n-l} (-1)^j C(n,j) C(j,l) a^l ad_a^{n-j}(b)`,
    /// evaluated literally.
    pub fn lemma23_expand(&self, a: &AlgElement, b: &AlgElement, n: u32) -> Result<AlgElement, AlgError> {
        let ads: Vec<AlgElement> = {
            let mut v = vec![self.normal_order(b)?];
            let na = self.normal_order(a)?;
            for _ in 0..n {
                let last = v.last().unwrap();
                let l = self.mul_normal(&na, last, default_fuel())?;
                let r = self.mul_normal(last, &na, default_fuel())?;
                v.push(l.sub(&r)?);
            }
            v
        };
        let mut acc = AlgElement::zero(&self.gens);
        for l in 0..n {
            let al = self.normal_order(&a.pow(l))?;
            for j in 0..=(n - l) {
                let c = binomial(n, j) * binomial(j, l);
                if c == BigInt::from(0) {
                    continue;
                }
                let sign = if j % 2 == 0 { 1 } else { -1 };
                let coef = Scalar::from_rational(Coeff::from_integer(c * sign));
                let t = self.mul_normal(&al, &ads[(n - j) as usize], default_fuel())?;
                acc = acc.add(&t.scale(&coef))?;
            }
        }
        Ok(acc)
    }

    /// `[[a,b],c] + [[b,c],a] + [[c,a],b]` in normal form.
    pub fn jacobi(&self, a: &AlgElement, b: &AlgElement, c: &AlgElement) -> Result<AlgElement, AlgError> {
        let t1 = self.commutator(&self.commutator(a, b)?, c)?;
        let t2 = self.commutator(&self.commutator(b, c)?, a)?;
        let t3 = self.commutator(&self.commutator(c, a)?, b)?;
        t1.add(&t2)?.add(&t3)
    }

    /// Pairs whose bracket violates the weight filtration.
    pub fn weight_guard_violations(&self) -> Vec<(u8, u8, Word)> {
        let mut out = Vec::new();
        for i in 0..self.gens.len() as u8 {
            for j in i + 1..self.gens.len() as u8 {
                let lhs = self.gens.weight(i) + self.gens.weight(j);
                for w in self.bracket(i, j).terms.keys() {
                    let wt = self.gens.word_weight(w);
                    let ok = wt < lhs || (wt == lhs && (w.len() < 2 || inversions(w) < 1));
                    if !ok {
                        out.push((i, j, w.clone()));
                    }
                }
            }
        }
        out
    }
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let mut r = BigInt::from(1);
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

struct Ctx<'a> {
    rules: &'a Rules,
    fuel: u64,
    budget: u64,
}

impl Ctx<'_> {
    fn spend(&mut self) -> Result<(), AlgError> {
        if self.fuel == 0 {
            return Err(AlgError::FuelExhausted(self.budget));
        }
        self.fuel -= 1;
        Ok(())
    }

    /// Normal form of `u * v` for sorted `u` and arbitrary `v`.
    fn mul_word(&mut self, u: &Word, v: &[u8]) -> Result<Vec<(Word, Scalar)>, AlgError> {
        let mut cur: BTreeMap<Word, Scalar> = BTreeMap::new();
        cur.insert(u.clone(), Scalar::one());
        for &g in v {
            let mut next = BTreeMap::new();
            for (w, c) in &cur {
                for (x, d) in self.mul_gen(w, g)?.iter() {
                    accumulate(&mut next, x.clone(), d.mul(c));
                }
            }
            cur = next;
        }
        Ok(cur.into_iter().collect())
    }

    /// Normal form of `u * g` for sorted `u`.
    fn mul_gen(&mut self, u: &Word, g: u8) -> Result<Terms, AlgError> {
        if u.last().is_none_or(|&h| h <= g) {
            let mut w = u.clone();
            w.push(g);
            return Ok(Arc::new(vec![(w, Scalar::one())]));
        }
        let key = (u.clone(), g);
        if let Some(t) = self.rules.memo.read().unwrap().get(&key) {
            return Ok(t.clone());
        }
        self.spend()?;
        // u g = w' h g = (w' g) h - w' [g, h]
        let h = *u.last().unwrap();
        let prefix = Word::from_slice(&u[..u.len() - 1]);
        let mut out = BTreeMap::new();
        for (x, c) in self.mul_gen(&prefix, g)?.iter() {
            for (y, d) in self.mul_gen(x, h)?.iter() {
                accumulate(&mut out, y.clone(), d.mul(c));
            }
        }
        let br = self.rules.bracket(g, h).clone();
        for (bw, bc) in &br.terms {
            for (y, d) in self.mul_word(&prefix, bw)? {
                accumulate(&mut out, y, d.mul(bc).neg());
            }
        }
        let t: Terms = Arc::new(out.into_iter().collect());
        self.rules.memo.write().unwrap().insert(key, t.clone());
        Ok(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn heisenberg() -> Rules {
        let gens = GenSet::new(vec![
            Generator { name: "P".into(), weight: 1 },
            Generator { name: "Q".into(), weight: 1 },
        ]);
        let mut b = HashMap::new();
        b.insert((0, 1), AlgElement::one(&gens));
        Rules::new(&gens, b).unwrap()
    }

    #[test]
    fn swaps_with_bracket() {
        let r = heisenberg();
        let g = r.gens().clone();
        let qp = AlgElement::word(&g, &[1, 0]);
        let nf = r.normal_order(&qp).unwrap();
        assert_eq!(nf.to_string(), "P*Q - 1");
        let p2q = r.power_commutator_direct(&AlgElement::gen(&g, 0), &AlgElement::gen(&g, 1), 2).unwrap();
        assert_eq!(p2q.to_string(), "2*P");
    }

    #[test]
    fn fuel_is_enforced() {
        let r = heisenberg();
        let g = r.gens().clone();
        let w = AlgElement::word(&g, &[1, 1, 1, 1, 0, 0, 0, 0]);
        assert_eq!(r.normal_order_with(&w, 2), Err(AlgError::FuelExhausted(2)));
    }
}
