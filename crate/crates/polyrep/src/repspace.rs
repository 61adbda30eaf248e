//! The module generated from the lowest state Psi.
//!
//! A basis state is indexed by the exponents of the raising template: for the
//! template `(R_1, .., R_k)` the index `(e_1, .., e_k)` is
//! `R_1^{e_1} .. R_k^{e_k} Psi`. A generator acts by pushing it to the right
//! through the raising word,
//! `g R_i s' = R_i (g s') + [g, R_i] s'`,
//! and applying the lowest-state rules at Psi.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::sync::{Arc, RwLock};

use rayon::prelude::*;
use serde::Serialize;
use num_traits::Signed;
use smallvec::SmallVec;
use thiserror::Error;

use crate::algebras::{ModuleSpec, Presentation};
use crate::coeffring::{CoeffError, Scalar};
use crate::freealg::{format_word, AlgElement, AlgError, GenSet, Rules};

pub type StateIndex = SmallVec<[u32; 2]>;

/// Deepest recursion of the action before the module is declared non-closing.
const MAX_DEPTH: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepError {
    #[error("lowest-state rule for {0} has a vanishing denominator")]
    BaseRuleDenominatorZero(String),
    #[error("the action does not close: {0}")]
    NonClosing(String),
    #[error(transparent)]
    Alg(#[from] AlgError),
    #[error(transparent)]
    Coeff(#[from] CoeffError),
}

/// A finite combination of basis states.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct StateCombo {
    terms: BTreeMap<StateIndex, Scalar>,
}

impl StateCombo {
    pub fn zero() -> Self {
        StateCombo::default()
    }

    pub fn basis(idx: StateIndex) -> Self {
        StateCombo::term(idx, Scalar::one())
    }

    pub fn term(idx: StateIndex, c: Scalar) -> Self {
        let mut s = StateCombo::zero();
        s.add_term(idx, c);
        s
    }

    pub fn terms(&self) -> &BTreeMap<StateIndex, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, idx: &[u32]) -> Scalar {
        self.terms.get(idx).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, idx: StateIndex, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&idx) {
            Some(x) => {
                let s = x.add(&c);
                if s.is_zero() {
                    self.terms.remove(&idx);
                } else {
                    *x = s;
                }
            }
            None => {
                self.terms.insert(idx, c);
            }
        }
    }

    pub fn add_scaled(&mut self, o: &StateCombo, c: &Scalar) {
        for (k, v) in &o.terms {
            self.add_term(k.clone(), v.mul(c));
        }
    }

    pub fn add(&self, o: &StateCombo) -> StateCombo {
        let mut r = self.clone();
        r.add_scaled(o, &Scalar::one());
        r
    }

    pub fn sub(&self, o: &StateCombo) -> StateCombo {
        let mut r = self.clone();
        r.add_scaled(o, &Scalar::from_int(-1));
        r
    }

    pub fn scale(&self, c: &Scalar) -> StateCombo {
        let mut r = StateCombo::zero();
        r.add_scaled(self, c);
        r
    }

    /// `c` if `self = c * basis(idx)`.
    pub fn ratio_to(&self, idx: &[u32]) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => self.terms.get(idx).cloned(),
            _ => None,
        }
    }

    pub fn map_coeffs(&self, mut f: impl FnMut(&Scalar) -> Result<Scalar, CoeffError>) -> Result<StateCombo, CoeffError> {
        let mut r = StateCombo::zero();
        for (k, v) in &self.terms {
            r.add_term(k.clone(), f(v)?);
        }
        Ok(r)
    }
}

/// The sparse matrix of an operator on a range of basis states.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ActionBand {
    pub operator: String,
    pub columns: Vec<Vec<u32>>,
    /// `(row, column) -> coefficient`, in canonical text.
    pub entries: Vec<BandEntry>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BandEntry {
    pub row: Vec<u32>,
    pub col: Vec<u32>,
    pub value: String,
}

impl ActionBand {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable") + "\n"
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["operator", "row", "col", "value"]).expect("in-memory write");
        let idx = |v: &[u32]| v.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(";");
        for e in &self.entries {
            w.write_record([self.operator.as_str(), &idx(&e.row), &idx(&e.col), &e.value]).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
    }
}

type Memo = RwLock<HashMap<(u8, StateIndex), Arc<StateCombo>>>;

/// A module over a presentation, with a memo of generator actions.
pub struct Module {
    gens: Arc<GenSet>,
    rules: Arc<Rules>,
    spec: ModuleSpec,
    /// Lowest-state rules after bindings, as combos on the basis.
    lowest: BTreeMap<u8, AlgElement>,
    bindings: HashMap<String, Scalar>,
    memo: Memo,
    lowest_memo: RwLock<HashMap<u8, Arc<StateCombo>>>,
}

impl Module {
    pub fn new(p: &Presentation) -> Result<Module, RepError> {
        Module::with_bindings(p, &HashMap::new())
    }

    /// A module with some params specialized (e.g. `r -> 0`).
    pub fn with_bindings(p: &Presentation, bindings: &HashMap<String, Scalar>) -> Result<Module, RepError> {
        let name = |g: u8| p.gens.name(g).to_string();
        let mut lowest = BTreeMap::new();
        for (g, e) in &p.module.lowest {
            let e = if bindings.is_empty() {
                e.clone()
            } else {
                e.map_coeffs(|c| c.substitute(bindings)).map_err(|err| match err {
                    CoeffError::DivisionByZero => RepError::BaseRuleDenominatorZero(name(*g)),
                    other => RepError::Coeff(other),
                })?
            };
            lowest.insert(*g, e);
        }
        let rules = if bindings.is_empty() {
            p.rules.clone()
        } else {
            let n = p.gens.len() as u8;
            let mut table = HashMap::new();
            for i in 0..n {
                for j in i + 1..n {
                    table.insert((i, j), p.rules.bracket(i, j).map_coeffs(|c| c.substitute(bindings))?);
                }
            }
            Arc::new(Rules::new(&p.gens, table)?)
        };
        Ok(Module {
            gens: p.gens.clone(),
            rules,
            spec: p.module.clone(),
            lowest,
            bindings: bindings.clone(),
            memo: RwLock::default(),
            lowest_memo: RwLock::default(),
        })
    }

    pub fn gens(&self) -> &Arc<GenSet> {
        &self.gens
    }

    pub fn rules(&self) -> &Arc<Rules> {
        &self.rules
    }

    pub fn spec(&self) -> &ModuleSpec {
        &self.spec
    }

    pub fn bindings(&self) -> &HashMap<String, Scalar> {
        &self.bindings
    }

    pub fn arity(&self) -> usize {
        self.spec.template.len()
    }

    pub fn lowest_index(&self) -> StateIndex {
        SmallVec::from_elem(0, self.arity())
    }

    pub fn lowest_state(&self) -> StateCombo {
        StateCombo::basis(self.lowest_index())
    }

    /// Specializes a scalar with the module's bindings.
    pub fn specialize(&self, s: &Scalar) -> Result<Scalar, CoeffError> {
        s.substitute(&self.bindings)
    }

    /// The action of one generator on one basis state.
    pub fn act_gen(&self, g: u8, idx: &StateIndex) -> Result<Arc<StateCombo>, RepError> {
        self.act_gen_depth(g, idx, 0)
    }

    fn act_gen_depth(&self, g: u8, idx: &StateIndex, depth: usize) -> Result<Arc<StateCombo>, RepError> {
        if depth > MAX_DEPTH {
            return Err(RepError::NonClosing(format!(
                "{} on {} recursed more than {MAX_DEPTH} levels",
                self.gens.name(g),
                self.format_index(idx)
            )));
        }
        let key = (g, idx.clone());
        if let Some(r) = self.memo.read().unwrap().get(&key) {
            return Ok(r.clone());
        }
        let tmpl = &self.spec.template;
        let first = idx.iter().position(|&e| e > 0);
        let slot = tmpl.iter().position(|&t| t == g);
        let result = match (first, slot) {
            (None, Some(j)) => {
                let mut n = idx.clone();
                n[j] += 1;
                StateCombo::basis(n)
            }
            (None, None) => (*self.lowest_action(g, depth)?).clone(),
            (Some(i), Some(j)) if j <= i => {
                let mut n = idx.clone();
                n[j] += 1;
                StateCombo::basis(n)
            }
            (Some(i), _) => {
                // g R_i s' = R_i (g s') + [g, R_i] s'
                let ri = tmpl[i];
                let mut rest = idx.clone();
                rest[i] -= 1;
                let inner = self.act_gen_depth(g, &rest, depth + 1)?;
                let mut out = self.act_gen_on_combo(ri, &inner, depth + 1)?;
                let br = self.rules.gen_bracket(g, ri);
                let s = StateCombo::basis(rest);
                out = out.add(&self.act_normal(&br, &s, depth + 1)?);
                out
            }
        };
        let r = Arc::new(result);
        self.memo.write().unwrap().insert(key, r.clone());
        Ok(r)
    }

    fn lowest_action(&self, g: u8, depth: usize) -> Result<Arc<StateCombo>, RepError> {
        if let Some(r) = self.lowest_memo.read().unwrap().get(&g) {
            return Ok(r.clone());
        }
        let rule = self.lowest.get(&g).ok_or_else(|| {
            RepError::NonClosing(format!("no lowest-state rule for {}", self.gens.name(g)))
        })?;
        let r = Arc::new(self.act_normal(rule, &self.lowest_state(), depth + 1)?);
        self.lowest_memo.write().unwrap().insert(g, r.clone());
        Ok(r)
    }

    fn act_gen_on_combo(&self, g: u8, s: &StateCombo, depth: usize) -> Result<StateCombo, RepError> {
        let mut out = StateCombo::zero();
        for (idx, c) in &s.terms {
            out.add_scaled(&*self.act_gen_depth(g, idx, depth)?, c);
        }
        Ok(out)
    }

    /// Action of a normal-ordered element.
    fn act_normal(&self, op: &AlgElement, s: &StateCombo, depth: usize) -> Result<StateCombo, RepError> {
        let mut out = StateCombo::zero();
        for (w, c) in op.terms() {
            let mut cur = s.clone();
            for &g in w.iter().rev() {
                cur = self.act_gen_on_combo(g, &cur, depth)?;
                if cur.is_zero() {
                    break;
                }
            }
            out.add_scaled(&cur, c);
        }
        if !self.bindings.is_empty() {
            out = out.map_coeffs(|c| c.substitute(&self.bindings))?;
        }
        Ok(out)
    }

    /// Action of an arbitrary element (normal-ordered first).
    pub fn act(&self, op: &AlgElement, s: &StateCombo) -> Result<StateCombo, RepError> {
        let nf = self.rules.normal_order(op)?;
        self.act_normal(&nf, s, 0)
    }

    pub fn act_on_lowest(&self, op: &AlgElement) -> Result<StateCombo, RepError> {
        self.act(op, &self.lowest_state())
    }

    /// All indices with `idx[k] <= bounds[k]`, in lexicographic order.
    pub fn indices(&self, bounds: &[u32]) -> Vec<StateIndex> {
        let mut out = vec![StateIndex::new()];
        for &b in bounds {
            out = out
                .into_iter()
                .flat_map(|p| {
                    (0..=b).map(move |e| {
                        let mut q = p.clone();
                        q.push(e);
                        q
                    })
                })
                .collect();
        }
        out
    }

    /// Every generator on every state with exponents up to `k`.
    pub fn closure_probe(&self, k: u32) -> Result<(), RepError> {
        let bounds = vec![k; self.arity()];
        for idx in self.indices(&bounds) {
            for g in 0..self.gens.len() as u8 {
                self.act_gen(g, &idx)?;
            }
        }
        Ok(())
    }

    /// Column `j` is `op` applied to `columns[j]`.
    pub fn action_band(&self, op: &AlgElement, columns: &[StateIndex]) -> Result<ActionBand, RepError> {
        let nf = self.rules.normal_order(op)?;
        let cols: Vec<Result<StateCombo, RepError>> =
            columns.par_iter().map(|c| self.act_normal(&nf, &StateCombo::basis(c.clone()), 0)).collect();
        let mut entries = Vec::new();
        for (c, r) in columns.iter().zip(cols) {
            for (row, v) in r?.terms() {
                entries.push(BandEntry { row: row.to_vec(), col: c.to_vec(), value: v.to_string() });
            }
        }
        Ok(ActionBand { operator: op.to_string(), columns: columns.iter().map(|c| c.to_vec()).collect(), entries })
    }

    /// `act(casimir)` on each probed state; the common eigenvalue if every
    /// image is a scalar multiple of its state.
    pub fn casimir_eigenvalue(&self, casimir: &AlgElement, probe: &[StateIndex]) -> Result<Eigen, RepError> {
        let images: Vec<Result<StateCombo, RepError>> =
            probe.par_iter().map(|i| self.act(casimir, &StateCombo::basis(i.clone()))).collect();
        let mut value: Option<Scalar> = None;
        let mut offending = Vec::new();
        for (i, img) in probe.iter().zip(images) {
            let img = img?;
            match img.ratio_to(i) {
                Some(c) => match &value {
                    None => value = Some(c),
                    Some(v) if *v == c => {}
                    Some(_) => offending.push((i.clone(), img)),
                },
                None => offending.push((i.clone(), img)),
            }
        }
        Ok(match (value, offending.is_empty()) {
            (Some(v), true) => Eigen::Scalar(v),
            (v, _) => Eigen::NotScalar { first: v, offending },
        })
    }

    /// `g_i(g_j s) - g_j(g_i s) - [g_i, g_j] s`.
    pub fn representation_residual(&self, i: u8, j: u8, idx: &StateIndex) -> Result<StateCombo, RepError> {
        let s = StateCombo::basis(idx.clone());
        let gi = AlgElement::gen(&self.gens, i);
        let gj = AlgElement::gen(&self.gens, j);
        let a = self.act(&gi, &self.act(&gj, &s)?)?;
        let b = self.act(&gj, &self.act(&gi, &s)?)?;
        let c = self.act(&self.rules.gen_bracket(i, j), &s)?;
        Ok(a.sub(&b).sub(&c))
    }

    pub fn format_index(&self, idx: &[u32]) -> String {
        let mut w = Vec::new();
        for (k, &e) in idx.iter().enumerate() {
            for _ in 0..e {
                w.push(self.spec.template[k]);
            }
        }
        if w.is_empty() {
            "Psi".into()
        } else {
            format!("{}*Psi", format_word(&self.gens, &w))
        }
    }

    /// Text such as `sr*F*Psi + 1/2*alpha*E*Psi`.
    pub fn format_combo(&self, s: &StateCombo) -> String {
        if s.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (idx, c)) in s.terms.iter().rev().enumerate() {
            let st = self.format_index(idx);
            let simple = c.is_polynomial() && c.num().len() == 1;
            let (neg, body) = if simple {
                let neg = c.num().leading().is_some_and(|(_, k)| k.is_negative());
                let a = if neg { c.neg() } else { c.clone() };
                (neg, if a.is_one() { st } else { format!("{a}*{st}") })
            } else if c.is_polynomial() {
                (false, format!("({c})*{st}"))
            } else {
                (false, format!("{c}*{st}"))
            };
            let _ = match (i, neg) {
                (0, true) => write!(out, "-{body}"),
                (0, false) => write!(out, "{body}"),
                (_, true) => write!(out, " - {body}"),
                (_, false) => write!(out, " + {body}"),
            };
        }
        out
    }

    /// `{"terms": [{"index": [..], "state": "..", "coeff": ".."}, ..]}`.
    pub fn combo_json(&self, c: &StateCombo) -> String {
        let terms: Vec<serde_json::Value> = c
            .terms()
            .iter()
            .map(|(i, v)| serde_json::json!({ "index": i.to_vec(), "state": self.format_index(i), "coeff": v.to_string() }))
            .collect();
        serde_json::to_string_pretty(&serde_json::json!({ "terms": terms })).expect("serializable") + "\n"
    }

    /// CSV with columns `index,state,coeff`.
    pub fn combo_csv(&self, c: &StateCombo) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["index", "state", "coeff"]).expect("in-memory write");
        for (i, v) in c.terms() {
            let ix = i.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(";");
            w.write_record([ix, self.format_index(i), v.to_string()]).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
    }

    /// Parses a state such as `F^2*X2^3` (or `Psi`) into an index.
    pub fn parse_state(&self, text: &str) -> Result<StateIndex, String> {
        let t = text.trim();
        let mut idx = self.lowest_index();
        if t.is_empty() || t == "Psi" || t == "1" {
            return Ok(idx);
        }
        let t = t.strip_suffix("*Psi").unwrap_or(t);
        let mut last_slot = 0usize;
        for part in t.split('*') {
            let part = part.trim();
            let (name, exp) = match part.split_once('^') {
                Some((n, e)) => (n.trim(), e.trim().parse::<u32>().map_err(|_| format!("bad exponent in `{part}`"))?),
                None => (part, 1),
            };
            let g = self.gens.index(name).ok_or_else(|| format!("unknown generator `{name}`"))?;
            let slot = self
                .spec
                .template
                .iter()
                .position(|&x| x == g)
                .ok_or_else(|| format!("`{name}` is not a raising generator"))?;
            if slot < last_slot {
                return Err("state factors must follow the raising template order".into());
            }
            last_slot = slot;
            idx[slot] += exp;
        }
        Ok(idx)
    }
}

/// Outcome of the Casimir eigenvalue probe.
#[derive(Clone, Debug, PartialEq)]
pub enum Eigen {
    Scalar(Scalar),
    NotScalar { first: Option<Scalar>, offending: Vec<(StateIndex, StateCombo)> },
}

/// Checks that `X2^n F^m`-type words on Psi land in the single-index span.
pub fn span_reduction_check(module: &Module, words: &[AlgElement]) -> Result<Vec<StateCombo>, RepError> {
    if module.arity() != 1 {
        return Err(RepError::NonClosing("span reduction needs a one-index basis".into()));
    }
    words.iter().map(|w| module.act_on_lowest(w)).collect()
}
