//! Process-wide parameter names and the radical table.
//!
//! A radical `s` over a base param `b` is stored by eliminating `b`: every
//! occurrence of `b` is represented as `s^2`. The coefficient ring is then an
//! ordinary polynomial ring (no quotient), so gcd and exact division stay
//! canonical. The textual form folds even powers of `s` back into `b`.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use crate::coeffring::CoeffError;

/// An interned parameter name.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Var(pub(crate) u32);

#[derive(Default)]
struct Table {
    names: Vec<Arc<str>>,
    index: HashMap<Arc<str>, u32>,
    /// base var -> radical var
    radical_of: HashMap<u32, u32>,
    /// radical var -> base var
    base_of: HashMap<u32, u32>,
    /// vars that have appeared as plain polynomial variables
    used_plain: Vec<bool>,
}

impl Table {
    fn intern(&mut self, name: &str) -> u32 {
        if let Some(&i) = self.index.get(name) {
            return i;
        }
        let i = self.names.len() as u32;
        let name: Arc<str> = Arc::from(name);
        self.names.push(name.clone());
        self.index.insert(name, i);
        self.used_plain.push(false);
        i
    }
}

/// Radicals every session starts with: the separation radicals and `sE`.
pub const DEFAULT_RADICALS: &[(&str, &str)] = &[
    ("sE", "E"),
    ("sr", "r"),
    ("st", "t"),
    ("skappa", "kappa"),
    ("ss", "s"),
    ("slambda", "lambda"),
];

fn table() -> &'static RwLock<Table> {
    static TABLE: OnceLock<RwLock<Table>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = Table::default();
        for (rad, base) in DEFAULT_RADICALS {
            let r = t.intern(rad);
            let b = t.intern(base);
            t.radical_of.insert(b, r);
            t.base_of.insert(r, b);
        }
        RwLock::new(t)
    })
}

impl Var {
    /// Interns `name` without any radical interpretation.
    pub fn named(name: &str) -> Var {
        {
            let t = table().read().unwrap();
            if let Some(&i) = t.index.get(name) {
                return Var(i);
            }
        }
        Var(table().write().unwrap().intern(name))
    }

    pub fn name(self) -> Arc<str> {
        table().read().unwrap().names[self.0 as usize].clone()
    }

    /// The base param if `self` is a radical.
    pub fn radical_base(self) -> Option<Var> {
        table().read().unwrap().base_of.get(&self.0).map(|&b| Var(b))
    }

    /// The radical declared over `self`, if any.
    pub fn radical(self) -> Option<Var> {
        table().read().unwrap().radical_of.get(&self.0).map(|&r| Var(r))
    }

    pub(crate) fn mark_plain(self) {
        let seen = table().read().unwrap().used_plain[self.0 as usize];
        if !seen {
            table().write().unwrap().used_plain[self.0 as usize] = true;
        }
    }
}

/// How a param name is represented inside polynomials.
pub enum Resolved {
    Plain(Var),
    /// The name is a radical base: it stands for `radical^2`.
    Squared(Var),
}

/// Resolves a param name to its polynomial representation.
pub fn resolve(name: &str) -> Resolved {
    let v = Var::named(name);
    match v.radical() {
        Some(r) => Resolved::Squared(r),
        None => {
            v.mark_plain();
            Resolved::Plain(v)
        }
    }
}

/// Declares `radical^2 = base`. Idempotent for an identical declaration.
pub fn declare_radical(radical: &str, base: &str) -> Result<(), CoeffError> {
    if radical == base {
        return Err(CoeffError::InconsistentRadical(format!("{radical} cannot be its own base")));
    }
    let mut t = table().write().unwrap();
    let r = t.intern(radical);
    let b = t.intern(base);
    match (t.base_of.get(&r), t.radical_of.get(&b)) {
        (Some(&b0), _) if b0 == b => return Ok(()),
        (Some(&b0), _) => {
            return Err(CoeffError::InconsistentRadical(format!(
                "{radical} is already the radical of {}",
                t.names[b0 as usize]
            )))
        }
        (None, Some(&r0)) => {
            return Err(CoeffError::InconsistentRadical(format!(
                "{base} already has radical {}",
                t.names[r0 as usize]
            )))
        }
        (None, None) => {}
    }
    if t.used_plain[b as usize] {
        return Err(CoeffError::InconsistentRadical(format!(
            "{base} is already in use as a plain parameter"
        )));
    }
    if t.base_of.contains_key(&b) || t.radical_of.contains_key(&r) {
        return Err(CoeffError::InconsistentRadical(format!(
            "radical chains are not supported ({radical} over {base})"
        )));
    }
    t.radical_of.insert(b, r);
    t.base_of.insert(r, b);
    Ok(())
}
