//! Presentations: generators, commutation tables, Casimirs, functional
//! relations and lowest-state rules, loaded from `.alg` files.
//!
//! ```text
//! name = DI
//! [generators]   order = X1, X2, F
//! [weights]      X1 = 1 ...
//! [params]       params = alpha, E     radical sr = r     derived d = c1 - beta*E
//! [relations]    [X1,X2] = F ...
//! [casimir]      element = ...         eigenvalue = ...   (optional)
//! [functional_relations]               one expression per line
//! [module]       raising = F           X1 = sr ...        free = true
//! ```
//!
//! `#` starts a comment. The built-in catalog ships as embedded files and is
//! loaded through the same validator as user files.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock};

use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::coeffring::{declare_radical, CoeffError, Scalar};
use crate::freealg::{format_word, AlgElement, AlgError, GenSet, Generator, Rules};
use crate::parser::{self, ParseError, Pos, Resolver, Sym};

pub const BUILTIN_NAMES: [&str; 5] = ["DI", "DII", "DIII", "DIV", "QUINTIC"];

const SOURCES: [(&str, &str); 5] = [
    ("DI", include_str!("catalog/DI.alg")),
    ("DII", include_str!("catalog/DII.alg")),
    ("DIII", include_str!("catalog/DIII.alg")),
    ("DIV", include_str!("catalog/DIV.alg")),
    ("QUINTIC", include_str!("catalog/QUINTIC.alg")),
];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LoadError {
    #[error("line {line}: {msg}")]
    Format { line: usize, msg: String },
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{}", .0.iter().map(|f| f.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Failure>),
    #[error("cannot read {0}: {1}")]
    Io(String, String),
}

/// One validation failure.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Failure {
    #[error("incomplete commutation table: no rule for [{0},{1}]")]
    IncompleteCommTable(String, String),
    #[error("weight guard: [{0},{1}] produces {2}")]
    WeightGuardViolation(String, String, String),
    #[error("Jacobi violation for ({0},{1},{2}): residual {3}")]
    JacobiViolation(String, String, String, String),
    #[error("Casimir does not commute with {0}: residual {1}")]
    CasimirNotCentral(String, String),
    #[error("functional relation {0} normal-orders to zero")]
    TrivialRelation(usize),
    #[error("module: {0}")]
    Module(String),
    #[error("rewriting: {0}")]
    Rewrite(AlgError),
}

/// The module generated from the lowest state.
#[derive(Debug, Clone, PartialEq)]
pub struct ModuleSpec {
    /// Raising generators; state `(e_1, .., e_k)` is `R_1^{e_1} .. R_k^{e_k} Psi`.
    pub template: Vec<u8>,
    /// Action of each non-raising generator on Psi, in raising generators.
    pub lowest: BTreeMap<u8, AlgElement>,
    /// Universal module on Psi: no rule eliminates any raising generator.
    pub free: bool,
    /// The separation radical (eigenvalue of the linear integral).
    pub eigen: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Derived {
    pub name: String,
    pub text: String,
    pub value: Scalar,
}

/// A validated presentation.
#[derive(Debug, Clone)]
pub struct Presentation {
    pub name: String,
    pub gens: Arc<GenSet>,
    pub rules: Arc<Rules>,
    /// Relation texts as written, by pair.
    pub relation_text: Vec<((u8, u8), String)>,
    pub params: Vec<String>,
    pub radicals: Vec<(String, String)>,
    pub derived: Vec<Derived>,
    pub casimir: AlgElement,
    pub casimir_text: String,
    pub casimir_eigenvalue: Option<Scalar>,
    pub functional_relations: Vec<AlgElement>,
    pub functional_text: Vec<String>,
    pub module: ModuleSpec,
    pub module_text: Vec<(String, String)>,
}

impl PartialEq for Presentation {
    /// Mathematical content only; source texts are ignored.
    fn eq(&self, o: &Self) -> bool {
        self.name == o.name
            && self.gens == o.gens
            && *self.rules == *o.rules
            && self.casimir == o.casimir
            && self.casimir_eigenvalue == o.casimir_eigenvalue
            && self.functional_relations == o.functional_relations
            && self.module == o.module
    }
}

struct PresResolver<'a> {
    gens: &'a GenSet,
    known: &'a HashMap<String, Scalar>,
    name: &'a str,
}

impl Resolver for PresResolver<'_> {
    fn resolve(&self, name: &str) -> Option<Sym> {
        if let Some(i) = self.gens.index(name) {
            return Some(Sym::Gen(i));
        }
        let key = if name == "H" { "E" } else { name };
        self.known.get(key).cloned().map(Sym::Param)
    }

    fn context(&self) -> Option<String> {
        Some(self.name.to_string())
    }
}

#[derive(Default)]
struct Raw {
    name: Option<String>,
    sections: Vec<(String, Vec<(usize, String)>)>,
}

fn strip_comment(s: &str) -> &str {
    s.split('#').next().unwrap_or("")
}

fn split_sections(src: &str) -> Result<Raw, LoadError> {
    let mut raw = Raw::default();
    for (i, line) in src.lines().enumerate() {
        let n = i + 1;
        let l = strip_comment(line).trim();
        if l.is_empty() {
            continue;
        }
        let is_header = l.starts_with('[') && l.ends_with(']') && !l.contains(',') && !l.contains('=');
        if is_header {
            raw.sections.push((l[1..l.len() - 1].trim().to_string(), Vec::new()));
            continue;
        }
        match raw.sections.last_mut() {
            Some((_, lines)) => lines.push((n, line.to_string())),
            None => match l.split_once('=') {
                Some((k, v)) if k.trim() == "name" => raw.name = Some(v.trim().to_string()),
                _ => return Err(LoadError::Format { line: n, msg: format!("unexpected `{l}` before any section") }),
            },
        }
    }
    Ok(raw)
}

/// Position of `frag` inside `line`, 1-based, on line `n`.
fn pos_in(line: &str, frag: &str, n: usize) -> Pos {
    let off = frag.as_ptr() as usize - line.as_ptr() as usize;
    Pos { line: n, col: line[..off].chars().count() + 1 }
}

fn key_value(line: &str, n: usize) -> Result<(&str, &str), LoadError> {
    let body = strip_comment(line);
    match body.split_once('=') {
        Some((k, v)) => Ok((k.trim(), v.trim())),
        None => Err(LoadError::Format { line: n, msg: format!("expected `key = value`, found `{}`", body.trim()) }),
    }
}

fn parse_at(text: &str, line: &str, n: usize, gens: &Arc<GenSet>, r: &dyn Resolver) -> Result<AlgElement, LoadError> {
    parser::parse_element(text, gens, r).map_err(|e| LoadError::Parse(e.offset(pos_in(line, text, n))))
}

fn parse_scalar_at(text: &str, line: &str, n: usize, r: &dyn Resolver) -> Result<Scalar, LoadError> {
    let at = pos_in(line, text, n);
    let e = parser::parse(text).map_err(|e| e.offset(at))?;
    Ok(parser::lower_scalar(&e, r).map_err(|e| e.offset(at))?)
}

fn list(v: &str) -> Vec<String> {
    v.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect()
}

impl Presentation {
    /// Parses and validates a presentation file.
    pub fn load(src: &str) -> Result<Presentation, LoadError> {
        let p = Presentation::parse_unchecked(src)?;
        let failures = p.validate();
        if failures.is_empty() {
            Ok(p)
        } else {
            Err(LoadError::Invalid(failures))
        }
    }

    pub fn load_file(path: &std::path::Path) -> Result<Presentation, LoadError> {
        let src = std::fs::read_to_string(path)
            .map_err(|e| LoadError::Io(path.display().to_string(), e.to_string()))?;
        Presentation::load(&src)
    }

    /// Parses without the algebraic validation.
    pub fn parse_unchecked(src: &str) -> Result<Presentation, LoadError> {
        let raw = split_sections(src)?;
        let section = |name: &str| -> &[(usize, String)] {
            raw.sections.iter().find(|(s, _)| s == name).map(|(_, l)| l.as_slice()).unwrap_or(&[])
        };
        for (s, lines) in &raw.sections {
            let known = ["generators", "weights", "params", "relations", "casimir", "functional_relations", "module"];
            if !known.contains(&s.as_str()) {
                let line = lines.first().map(|l| l.0).unwrap_or(0);
                return Err(LoadError::Format { line, msg: format!("unknown section [{s}]") });
            }
        }
        let name = raw.name.clone().unwrap_or_else(|| "unnamed".into());

        // generators and weights
        let mut order = Vec::new();
        for (n, line) in section("generators") {
            let (k, v) = key_value(line, *n)?;
            if k != "order" {
                return Err(LoadError::Format { line: *n, msg: format!("unknown key `{k}` in [generators]") });
            }
            order = list(v);
        }
        if order.is_empty() {
            return Err(LoadError::Format { line: 0, msg: "no generators declared".into() });
        }
        if order.len() > 8 {
            return Err(LoadError::Format { line: 0, msg: "at most 8 generators are supported".into() });
        }
        let mut weights: HashMap<String, u32> = HashMap::new();
        for (n, line) in section("weights") {
            let (k, v) = key_value(line, *n)?;
            let w: u32 = v
                .parse()
                .ok()
                .filter(|&w| w >= 1)
                .ok_or_else(|| LoadError::Format { line: *n, msg: format!("weight of {k} must be a positive integer") })?;
            if !order.iter().any(|g| g == k) {
                return Err(LoadError::Format { line: *n, msg: format!("weight for undeclared generator {k}") });
            }
            weights.insert(k.to_string(), w);
        }
        let mut gl = Vec::new();
        for g in &order {
            if !g.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') || g.starts_with(|c: char| c.is_ascii_digit()) {
                return Err(LoadError::Format { line: 0, msg: format!("invalid generator name `{g}`") });
            }
            let w = *weights
                .get(g)
                .ok_or_else(|| LoadError::Format { line: 0, msg: format!("no weight for generator {g}") })?;
            gl.push(Generator { name: g.clone(), weight: w });
        }
        let gens = GenSet::new(gl);

        // params
        let mut known: HashMap<String, Scalar> = HashMap::new();
        let (mut params, mut radicals, mut derived) = (Vec::new(), Vec::new(), Vec::new());
        for (n, line) in section("params") {
            let (k, v) = key_value(line, *n)?;
            let words: Vec<&str> = k.split_whitespace().collect();
            match words.as_slice() {
                ["params"] => {
                    for p in list(v) {
                        known.insert(p.clone(), parser::param(&p));
                        params.push(p);
                    }
                }
                ["radical", rad] => {
                    declare_radical(rad, v).map_err(|e| LoadError::Format { line: *n, msg: e.to_string() })?;
                    known.insert(rad.to_string(), Scalar::param(rad));
                    known.insert(v.to_string(), Scalar::param(v));
                    radicals.push((rad.to_string(), v.to_string()));
                }
                ["derived", d] => {
                    let r = PresResolver { gens: &GenSet::new(Vec::new()), known: &known, name: &name };
                    let value = parse_scalar_at(v, line, *n, &r)?;
                    known.insert(d.to_string(), value.clone());
                    derived.push(Derived { name: d.to_string(), text: v.to_string(), value });
                }
                _ => return Err(LoadError::Format { line: *n, msg: format!("unknown key `{k}` in [params]") }),
            }
        }
        known.entry("E".into()).or_insert_with(|| Scalar::param("E"));
        let res = PresResolver { gens: &gens, known: &known, name: &name };

        // relations
        let mut raw_table: HashMap<(u8, u8), AlgElement> = HashMap::new();
        let mut relation_text = Vec::new();
        for (n, line) in section("relations") {
            let body = strip_comment(line);
            let (lhs, rhs) = body
                .split_once('=')
                .ok_or_else(|| LoadError::Format { line: *n, msg: "expected `[A,B] = expr`".into() })?;
            let l = lhs.trim();
            let pair = l
                .strip_prefix('[')
                .and_then(|s| s.strip_suffix(']'))
                .and_then(|s| s.split_once(','))
                .map(|(a, b)| (a.trim(), b.trim()));
            let (a, b) = pair.ok_or_else(|| LoadError::Format { line: *n, msg: format!("expected `[A,B]`, found `{l}`") })?;
            let gi = |g: &str| {
                gens.index(g).ok_or_else(|| LoadError::Format { line: *n, msg: format!("`{g}` is not a generator") })
            };
            let (i, j) = (gi(a)?, gi(b)?);
            if i == j {
                return Err(LoadError::Format { line: *n, msg: format!("[{a},{a}] is always zero") });
            }
            let rhs_t = rhs.trim();
            let mut e = parse_at(rhs_t, line, *n, &gens, &res)?;
            let key = if i < j { (i, j) } else { (j, i) };
            if i > j {
                e = e.neg();
            }
            if raw_table.insert(key, e).is_some() {
                return Err(LoadError::Format { line: *n, msg: format!("duplicate rule for [{a},{b}]") });
            }
            relation_text.push(((i, j), rhs_t.to_string()));
        }

        // casimir
        let mut casimir_text = String::from("0");
        let mut casimir = AlgElement::zero(&gens);
        let mut casimir_eigenvalue = None;
        for (n, line) in section("casimir") {
            let (k, v) = key_value(line, *n)?;
            match k {
                "element" => {
                    casimir = parse_at(v, line, *n, &gens, &res)?;
                    casimir_text = v.to_string();
                }
                "eigenvalue" => casimir_eigenvalue = Some(parse_scalar_at(v, line, *n, &res)?),
                _ => return Err(LoadError::Format { line: *n, msg: format!("unknown key `{k}` in [casimir]") }),
            }
        }

        let mut functional_raw = Vec::new();
        let mut functional_text = Vec::new();
        for (n, line) in section("functional_relations") {
            let t = strip_comment(line).trim();
            functional_raw.push(parse_at(t, line, *n, &gens, &res)?);
            functional_text.push(t.to_string());
        }

        // module
        let mut template = Vec::new();
        let mut lowest_raw = BTreeMap::new();
        let mut module_text = Vec::new();
        let mut free = false;
        for (n, line) in section("module") {
            let (k, v) = key_value(line, *n)?;
            match k {
                "raising" => {
                    for g in list(v) {
                        let i = gens.index(&g).ok_or_else(|| LoadError::Format {
                            line: *n,
                            msg: format!("raising generator `{g}` is not a generator"),
                        })?;
                        template.push(i);
                    }
                }
                "free" => {
                    free = match v {
                        "true" => true,
                        "false" => false,
                        _ => return Err(LoadError::Format { line: *n, msg: "free must be true or false".into() }),
                    }
                }
                g => {
                    let i = gens.index(g).ok_or_else(|| LoadError::Format {
                        line: *n,
                        msg: format!("unknown key `{g}` in [module]"),
                    })?;
                    lowest_raw.insert(i, parse_at(v, line, *n, &gens, &res)?);
                    module_text.push((g.to_string(), v.to_string()));
                }
            }
        }
        if template.is_empty() {
            return Err(LoadError::Format { line: 0, msg: "[module] needs `raising = ...`".into() });
        }
        let eigen = lowest_raw.values().find_map(|e| {
            let s = e.as_scalar()?;
            let v: Vec<_> = s.vars().into_iter().collect();
            match (s.num().len(), v.as_slice()) {
                (1, [x]) if x.radical_base().is_some() => Some(x.name().to_string()),
                _ => None,
            }
        });

        // normal-order everything with the raw table, then rebuild the rules
        let pre = Rules::new(&gens, raw_table.clone());
        let nf = |e: &AlgElement, rules: &Rules| rules.normal_order(e);
        let (rules, casimir, functional_relations, lowest) = match pre {
            Err(_) => {
                // Incomplete table: keep the raw data; validation reports it.
                let rules = Rules::new_partial(&gens, raw_table);
                (rules, casimir, functional_raw, lowest_raw)
            }
            Ok(pre) => {
                let guard_ok = pre.weight_guard_violations().is_empty();
                if !guard_ok {
                    (pre, casimir, functional_raw, lowest_raw)
                } else {
                    let mut table = HashMap::new();
                    for (k, v) in &raw_table {
                        table.insert(*k, nf(v, &pre).map_err(rewrite_err)?);
                    }
                    let rules = Rules::new(&gens, table).expect("complete table");
                    let casimir = nf(&casimir, &rules).map_err(rewrite_err)?;
                    let fr = functional_raw.iter().map(|e| nf(e, &rules)).collect::<Result<Vec<_>, _>>();
                    let mut low = BTreeMap::new();
                    for (k, v) in &lowest_raw {
                        low.insert(*k, nf(v, &rules).map_err(rewrite_err)?);
                    }
                    (rules, casimir, fr.map_err(rewrite_err)?, low)
                }
            }
        };

        Ok(Presentation {
            name,
            gens,
            rules: Arc::new(rules),
            relation_text,
            params,
            radicals,
            derived,
            casimir,
            casimir_text,
            casimir_eigenvalue,
            functional_relations,
            functional_text,
            module: ModuleSpec { template, lowest, free, eigen },
            module_text,
        })
    }

    /// All load-time checks; empty when the presentation is valid.
    pub fn validate(&self) -> Vec<Failure> {
        let mut out = Vec::new();
        let n = self.gens.len() as u8;
        let name = |i: u8| self.gens.name(i).to_string();
        for i in 0..n {
            for j in i + 1..n {
                if !self.rules.has(i, j) {
                    out.push(Failure::IncompleteCommTable(name(i), name(j)));
                }
            }
        }
        if !out.is_empty() {
            return out;
        }
        for (i, j, w) in self.rules.weight_guard_violations() {
            out.push(Failure::WeightGuardViolation(name(i), name(j), format_word(&self.gens, &w)));
        }
        if !out.is_empty() {
            return out;
        }
        for f in self.jacobi_residuals() {
            match f {
                Ok((i, j, k, r)) if !r.is_zero() => {
                    out.push(Failure::JacobiViolation(name(i), name(j), name(k), r.to_string()))
                }
                Ok(_) => {}
                Err(e) => out.push(Failure::Rewrite(e)),
            }
        }
        for (g, r) in self.casimir_residuals() {
            match r {
                Ok(r) if !r.is_zero() => out.push(Failure::CasimirNotCentral(name(g), r.to_string())),
                Ok(_) => {}
                Err(e) => out.push(Failure::Rewrite(e)),
            }
        }
        for (k, f) in self.functional_relations.iter().enumerate() {
            if f.is_zero() {
                out.push(Failure::TrivialRelation(k + 1));
            }
        }
        out.extend(self.module_failures());
        out
    }

    fn module_failures(&self) -> Vec<Failure> {
        let mut out = Vec::new();
        let m = &self.module;
        let mut seen = std::collections::HashSet::new();
        for &g in &m.template {
            if !seen.insert(g) {
                out.push(Failure::Module(format!("{} repeats in the raising template", self.gens.name(g))));
            }
        }
        for g in 0..self.gens.len() as u8 {
            let raising = m.template.contains(&g);
            match (raising, m.lowest.get(&g)) {
                (true, Some(_)) => out.push(Failure::Module(format!(
                    "{} is raising and also has a lowest-state rule",
                    self.gens.name(g)
                ))),
                (false, None) => {
                    out.push(Failure::Module(format!("no lowest-state rule for {}", self.gens.name(g))))
                }
                _ => {}
            }
        }
        for (g, e) in &m.lowest {
            for w in e.terms().keys() {
                if w.iter().any(|x| !m.template.contains(x)) || !in_template_order(w, &m.template) {
                    out.push(Failure::Module(format!(
                        "rule for {} must be written in the raising generators",
                        self.gens.name(*g)
                    )));
                    break;
                }
            }
        }
        if !out.is_empty() {
            return out;
        }
        match crate::repspace::Module::new(self) {
            Err(e) => out.push(Failure::Module(e.to_string())),
            Ok(module) => {
                if let Err(e) = module.closure_probe(3) {
                    out.push(Failure::Module(format!("closure probe: {e}")));
                }
                if !m.free {
                    for (k, f) in self.functional_relations.iter().enumerate() {
                        match module.act_on_lowest(f) {
                            Ok(v) if v.is_zero() => {}
                            Ok(v) => out.push(Failure::Module(format!(
                                "functional relation {} does not vanish on the lowest state: {}",
                                k + 1,
                                module.format_combo(&v)
                            ))),
                            Err(e) => out.push(Failure::Module(e.to_string())),
                        }
                    }
                }
            }
        }
        out
    }

    /// Jacobi residual for every generator triple `i < j < k`.
    pub fn jacobi_residuals(&self) -> Vec<Result<(u8, u8, u8, AlgElement), AlgError>> {
        let n = self.gens.len() as u8;
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let g = |x| AlgElement::gen(&self.gens, x);
                    out.push(self.rules.jacobi(&g(i), &g(j), &g(k)).map(|r| (i, j, k, r)));
                }
            }
        }
        out
    }

    /// `[casimir, g]` for every generator.
    pub fn casimir_residuals(&self) -> Vec<(u8, Result<AlgElement, AlgError>)> {
        (0..self.gens.len() as u8)
            .map(|g| (g, self.rules.commutator(&self.casimir, &AlgElement::gen(&self.gens, g))))
            .collect()
    }

    pub fn gen(&self, name: &str) -> Option<AlgElement> {
        self.gens.index(name).map(|i| AlgElement::gen(&self.gens, i))
    }

    pub fn resolver(&self) -> impl Resolver + '_ {
        OwnedResolver { pres: self, known: self.known_params() }
    }

    fn known_params(&self) -> HashMap<String, Scalar> {
        let mut known = HashMap::new();
        for p in &self.params {
            known.insert(p.clone(), parser::param(p));
        }
        for (r, b) in &self.radicals {
            known.insert(r.clone(), Scalar::param(r));
            known.insert(b.clone(), Scalar::param(b));
        }
        for d in &self.derived {
            known.insert(d.name.clone(), d.value.clone());
        }
        known.entry("E".into()).or_insert_with(|| Scalar::param("E"));
        known
    }

    /// Parses an expression against this presentation, without normal ordering.
    pub fn parse(&self, text: &str) -> Result<AlgElement, ParseError> {
        let r = self.resolver();
        parser::parse_element(text, &self.gens, &r)
    }

    pub fn parse_scalar(&self, text: &str) -> Result<Scalar, ParseError> {
        let r = self.resolver();
        parser::lower_scalar(&parser::parse(text)?, &r)
    }

    pub fn normal_order(&self, e: &AlgElement) -> Result<AlgElement, AlgError> {
        self.rules.normal_order(e)
    }

    /// Canonical file text; loading it gives back an equal presentation.
    pub fn save(&self) -> String {
        let mut s = String::new();
        let g = |i: u8| self.gens.name(i).to_string();
        s.push_str(&format!("name = {}\n\n[generators]\norder = ", self.name));
        s.push_str(&self.gens.gens().iter().map(|x| x.name.clone()).collect::<Vec<_>>().join(", "));
        s.push_str("\n\n[weights]\n");
        for x in self.gens.gens() {
            s.push_str(&format!("{} = {}\n", x.name, x.weight));
        }
        s.push_str("\n[params]\n");
        if !self.params.is_empty() {
            s.push_str(&format!("params = {}\n", self.params.join(", ")));
        }
        for (r, b) in &self.radicals {
            s.push_str(&format!("radical {r} = {b}\n"));
        }
        for d in &self.derived {
            s.push_str(&format!("derived {} = {}\n", d.name, d.value));
        }
        s.push_str("\n[relations]\n");
        let n = self.gens.len() as u8;
        for i in 0..n {
            for j in i + 1..n {
                s.push_str(&format!("[{},{}] = {}\n", g(i), g(j), self.rules.bracket(i, j)));
            }
        }
        s.push_str(&format!("\n[casimir]\nelement = {}\n", self.casimir));
        if let Some(e) = &self.casimir_eigenvalue {
            s.push_str(&format!("eigenvalue = {e}\n"));
        }
        s.push_str("\n[functional_relations]\n");
        for f in &self.functional_relations {
            s.push_str(&format!("{f}\n"));
        }
        s.push_str("\n[module]\nraising = ");
        s.push_str(&self.module.template.iter().map(|&x| g(x)).collect::<Vec<_>>().join(", "));
        s.push('\n');
        for (k, v) in &self.module.lowest {
            s.push_str(&format!("{} = {}\n", g(*k), v));
        }
        if self.module.free {
            s.push_str("free = true\n");
        }
        s
    }

    /// SHA-256 of the canonical text.
    pub fn hash(&self) -> String {
        let d = Sha256::digest(self.save().as_bytes());
        d.iter().map(|b| format!("{b:02x}")).collect()
    }

    /// Human-readable summary in parser syntax.
    pub fn show(&self) -> String {
        let g = |i: u8| self.gens.name(i).to_string();
        let mut s = format!("presentation {}\n", self.name);
        let gl: Vec<String> =
            self.gens.gens().iter().map(|x| format!("{} (weight {})", x.name, x.weight)).collect();
        s.push_str(&format!("generators: {}\n", gl.join(", ")));
        if !self.params.is_empty() {
            s.push_str(&format!("params: {}\n", self.params.join(", ")));
        }
        for (r, b) in &self.radicals {
            s.push_str(&format!("radical: {r}^2 = {b}\n"));
        }
        for d in &self.derived {
            s.push_str(&format!("derived: {} = {}\n", d.name, d.text));
        }
        s.push_str("relations:\n");
        for ((i, j), t) in &self.relation_text {
            s.push_str(&format!("  [{},{}] = {}\n", g(*i), g(*j), t));
        }
        s.push_str("normal-ordered relations:\n");
        let n = self.gens.len() as u8;
        for i in 0..n {
            for j in i + 1..n {
                s.push_str(&format!("  [{},{}] = {}\n", g(i), g(j), self.rules.bracket(i, j)));
            }
        }
        s.push_str(&format!("casimir: {}\n", self.casimir_text));
        s.push_str(&format!("casimir (normal form): {}\n", self.casimir));
        match &self.casimir_eigenvalue {
            Some(e) => s.push_str(&format!("casimir eigenvalue: {e}\n")),
            None => s.push_str("casimir eigenvalue: computed on the module\n"),
        }
        s.push_str("functional relations:\n");
        for t in &self.functional_text {
            s.push_str(&format!("  {t} = 0\n"));
        }
        let tmpl: Vec<String> = self.module.template.iter().map(|&i| g(i)).collect();
        s.push_str(&format!("module: raising {}{}\n", tmpl.join(", "), if self.module.free { " (free)" } else { "" }));
        for (k, v) in &self.module_text {
            s.push_str(&format!("  {k} Psi = ({v}) Psi\n"));
        }
        s
    }
}

fn in_template_order(w: &[u8], template: &[u8]) -> bool {
    let pos: Vec<usize> = w.iter().map(|x| template.iter().position(|t| t == x).unwrap_or(usize::MAX)).collect();
    pos.windows(2).all(|p| p[0] <= p[1])
}

fn rewrite_err(e: AlgError) -> LoadError {
    LoadError::Invalid(vec![Failure::Rewrite(e)])
}

struct OwnedResolver<'a> {
    pres: &'a Presentation,
    known: HashMap<String, Scalar>,
}

impl Resolver for OwnedResolver<'_> {
    fn resolve(&self, name: &str) -> Option<Sym> {
        PresResolver { gens: &self.pres.gens, known: &self.known, name: &self.pres.name }.resolve(name)
    }

    fn context(&self) -> Option<String> {
        Some(self.pres.name.clone())
    }
}

/// The source text of a built-in presentation.
pub fn builtin_source(name: &str) -> Option<&'static str> {
    SOURCES.iter().find(|(n, _)| n.eq_ignore_ascii_case(name)).map(|(_, s)| *s)
}

/// A validated built-in presentation (loaded once).
pub fn builtin(name: &str) -> Option<Arc<Presentation>> {
    static CACHE: OnceLock<Vec<(String, Arc<Presentation>)>> = OnceLock::new();
    let all = CACHE.get_or_init(|| {
        SOURCES
            .iter()
            .map(|(n, src)| {
                let p = Presentation::load(src).unwrap_or_else(|e| panic!("built-in {n} failed to load: {e}"));
                (n.to_string(), Arc::new(p))
            })
            .collect()
    });
    all.iter().find(|(n, _)| n.eq_ignore_ascii_case(name)).map(|(_, p)| p.clone())
}

/// A built-in name or a path to an `.alg` file.
pub fn resolve_algebra(spec: &str) -> Result<Arc<Presentation>, LoadError> {
    if let Some(p) = builtin(spec) {
        return Ok(p);
    }
    Presentation::load_file(std::path::Path::new(spec)).map(Arc::new)
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.show())
    }
}

impl From<CoeffError> for LoadError {
    fn from(e: CoeffError) -> Self {
        LoadError::Format { line: 0, msg: e.to_string() }
    }
}
