//! Sparse multivariate polynomials over exact rationals.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use super::var::Var;

pub type Coeff = BigRational;

/// A power product, stored as `(var, exponent)` pairs sorted by var with
/// positive exponents.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial(SmallVec<[(Var, u32); 4]>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(SmallVec::new())
    }

    pub fn var(v: Var, e: u32) -> Self {
        let mut m = Monomial::one();
        if e > 0 {
            m.0.push((v, e));
        }
        m
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn exp(&self, v: Var) -> u32 {
        self.0
            .binary_search_by(|&(w, _)| w.cmp(&v))
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &o.0);
        let mut out = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// `self / o` if `o` divides `self`.
    pub fn div(&self, o: &Monomial) -> Option<Monomial> {
        let mut out = SmallVec::with_capacity(self.0.len());
        let mut j = 0;
        for &(v, e) in &self.0 {
            if j < o.0.len() && o.0[j].0 < v {
                return None;
            }
            if j < o.0.len() && o.0[j].0 == v {
                let f = o.0[j].1;
                j += 1;
                match e.cmp(&f) {
                    Ordering::Less => return None,
                    Ordering::Equal => continue,
                    Ordering::Greater => out.push((v, e - f)),
                }
            } else {
                out.push((v, e));
            }
        }
        if j < o.0.len() {
            return None;
        }
        Some(Monomial(out))
    }

    pub fn gcd(&self, o: &Monomial) -> Monomial {
        let mut out = SmallVec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < o.0.len() {
            match self.0[i].0.cmp(&o.0[j].0) {
                Ordering::Less => i += 1,
                Ordering::Greater => j += 1,
                Ordering::Equal => {
                    out.push((self.0[i].0, self.0[i].1.min(o.0[j].1)));
                    i += 1;
                    j += 1;
                }
            }
        }
        Monomial(out)
    }

    /// Removes `v`, returning its exponent and the rest.
    pub fn split(&self, v: Var) -> (u32, Monomial) {
        match self.0.binary_search_by(|&(w, _)| w.cmp(&v)) {
            Ok(i) => {
                let mut rest = self.0.clone();
                let (_, e) = rest.remove(i);
                (e, Monomial(rest))
            }
            Err(_) => (0, self.clone()),
        }
    }
}

impl Ord for Monomial {
    /// Pure lex with the smallest var id most significant.
    fn cmp(&self, o: &Self) -> Ordering {
        for (a, b) in self.0.iter().zip(o.0.iter()) {
            if a.0 != b.0 {
                return if a.0 < b.0 { Ordering::Greater } else { Ordering::Less };
            }
            if a.1 != b.1 {
                return a.1.cmp(&b.1);
            }
        }
        self.0.len().cmp(&o.0.len())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// A polynomial; terms sorted by descending monomial, no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly {
    terms: Vec<(Monomial, Coeff)>,
}

fn from_map(map: HashMap<Monomial, Coeff>) -> Poly {
    let mut terms: Vec<_> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
    Poly { terms }
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Coeff::one())
    }

    pub fn constant(c: Coeff) -> Self {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { terms: vec![(Monomial::one(), c)] }
        }
    }

    pub fn term(m: Monomial, c: Coeff) -> Self {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    pub fn var(v: Var) -> Self {
        Poly::term(Monomial::var(v, 1), Coeff::one())
    }

    /// Builds from arbitrary terms, combining duplicates.
    pub fn from_terms(it: impl IntoIterator<Item = (Monomial, Coeff)>) -> Self {
        let mut map: HashMap<Monomial, Coeff> = HashMap::new();
        for (m, c) in it {
            *map.entry(m).or_insert_with(Coeff::zero) += c;
        }
        from_map(map)
    }

    pub fn terms(&self) -> &[(Monomial, Coeff)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_constant(&self) -> Option<Coeff> {
        match self.terms.as_slice() {
            [] => Some(Coeff::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn is_one(&self) -> bool {
        matches!(self.terms.as_slice(), [(m, c)] if m.is_one() && c.is_one())
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn leading(&self) -> Option<&(Monomial, Coeff)> {
        self.terms.first()
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.terms
            .iter()
            .flat_map(|(m, _)| m.factors().iter().map(|&(v, _)| v))
            .collect()
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.iter().map(|(m, _)| m.exp(v)).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    pub fn neg(&self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        self.merge(o, false)
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.merge(o, true)
    }

    fn merge(&self, o: &Poly, negate: bool) -> Poly {
        let (a, b) = (&self.terms, &o.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        let sign = |c: &Coeff| if negate { -c } else { c.clone() };
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b[j].0.clone(), sign(&b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| (m.clone(), sign(c))));
        Poly { terms: out }
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        if let [(m, c)] = o.terms.as_slice() {
            return self.mul_term(m, c);
        }
        if let [(m, c)] = self.terms.as_slice() {
            return o.mul_term(m, c);
        }
        let mut map: HashMap<Monomial, Coeff> =
            HashMap::with_capacity(self.terms.len() * o.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                match map.get_mut(&m) {
                    Some(x) => *x += c,
                    None => {
                        map.insert(m, c);
                    }
                }
            }
        }
        from_map(map)
    }

    /// Multiplication by a single term preserves the order.
    pub fn mul_term(&self, m: &Monomial, c: &Coeff) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(mm, cc)| (mm.mul(m), cc * c)).collect() }
    }

    pub fn scale(&self, c: &Coeff) -> Poly {
        self.mul_term(&Monomial::one(), c)
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(Poly::zero());
        }
        if let Some(c) = d.as_constant() {
            return Some(self.scale(&c.recip()));
        }
        if let [(m, c)] = d.terms.as_slice() {
            let inv = c.recip();
            let mut terms = Vec::with_capacity(self.terms.len());
            for (mm, cc) in &self.terms {
                terms.push((mm.div(m)?, cc * &inv));
            }
            return Some(Poly { terms });
        }
        let (lm, lc) = d.terms[0].clone();
        let inv = lc.recip();
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((rm, rc)) = rem.terms.first().cloned() {
            let qm = rm.div(&lm)?;
            let qc = rc * &inv;
            rem = rem.sub(&d.mul_term(&qm, &qc));
            quot.push((qm, qc));
        }
        quot.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        Some(Poly { terms: quot })
    }

    /// Coefficients with respect to `v`: entry `i` multiplies `v^i`.
    pub fn coeffs_in(&self, v: Var) -> Vec<Poly> {
        let deg = self.degree_in(v) as usize;
        let mut out: Vec<Vec<(Monomial, Coeff)>> = vec![Vec::new(); deg + 1];
        for (m, c) in &self.terms {
            let (e, rest) = m.split(v);
            out[e as usize].push((rest, c.clone()));
        }
        out.into_iter().map(|terms| Poly { terms }).collect()
    }

    pub fn from_coeffs_in(v: Var, coeffs: &[Poly]) -> Poly {
        Poly::from_terms(coeffs.iter().enumerate().flat_map(|(i, p)| {
            let vm = Monomial::var(v, i as u32);
            p.terms.iter().map(move |(m, c)| (m.mul(&vm), c.clone()))
        }))
    }

    /// Leading coefficient with respect to `v`.
    pub fn lc_in(&self, v: Var) -> Poly {
        let d = self.degree_in(v);
        Poly {
            terms: self
                .terms
                .iter()
                .filter_map(|(m, c)| {
                    let (e, rest) = m.split(v);
                    (e == d).then(|| (rest, c.clone()))
                })
                .collect(),
        }
    }

    pub fn derivative(&self, v: Var) -> Poly {
        Poly::from_terms(self.terms.iter().filter_map(|(m, c)| {
            let (e, rest) = m.split(v);
            (e > 0).then(|| (rest.mul(&Monomial::var(v, e - 1)), c * Coeff::from_integer(e.into())))
        }))
    }

    /// Monomial dividing every term with maximal exponents.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.iter();
        let Some((first, _)) = it.next() else { return Monomial::one() };
        let mut g = first.clone();
        for (m, _) in it {
            if g.is_one() {
                break;
            }
            g = g.gcd(m);
        }
        g
    }

    /// Rational content with the sign of the leading coefficient, so that
    /// `self / content` has coprime integer coefficients and a positive
    /// leading coefficient.
    pub fn rational_content(&self) -> Coeff {
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for (_, c) in &self.terms {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        let mut content = BigRational::new(num, den);
        if self.terms.first().is_some_and(|(_, c)| c.is_negative()) {
            content = -content;
        }
        content
    }

    /// Primitive integral form with positive leading coefficient.
    pub fn normalized(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let c = self.rational_content();
        if c.is_one() {
            self.clone()
        } else {
            self.scale(&c.recip())
        }
    }

    fn remove_monomial(&self, m: &Monomial) -> Poly {
        if m.is_one() {
            return self.clone();
        }
        Poly { terms: self.terms.iter().map(|(mm, c)| (mm.div(m).unwrap(), c.clone())).collect() }
    }
}

/// Normalized gcd of two polynomials over Q; `gcd(0, 0) = 0`.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.normalized();
    }
    if b.is_zero() {
        return a.normalized();
    }
    if a.as_constant().is_some() || b.as_constant().is_some() {
        return Poly::one();
    }
    let (ma, mb) = (a.monomial_content(), b.monomial_content());
    let m = ma.gcd(&mb);
    let g = gcd_no_monomial(&a.remove_monomial(&ma), &b.remove_monomial(&mb));
    g.mul_term(&m, &Coeff::one())
}

fn gcd_no_monomial(a: &Poly, b: &Poly) -> Poly {
    if a.as_constant().is_some() || b.as_constant().is_some() {
        return Poly::one();
    }
    if a.is_monomial() || b.is_monomial() {
        // Monomial content has been removed, so a monomial here is a constant.
        return Poly::one();
    }
    let (va, vb) = (a.vars(), b.vars());
    let common: Vec<Var> = va.intersection(&vb).copied().collect();
    if common.is_empty() {
        return Poly::one();
    }
    // A variable present in only one operand must be absent from the gcd:
    // the gcd divides the content of that operand with respect to such a var.
    if let Some(&v) = va.symmetric_difference(&vb).next() {
        let (with, without) = if va.contains(&v) { (a, b) } else { (b, a) };
        let mut g = without.normalized();
        for c in with.coeffs_in(v) {
            if c.is_zero() {
                continue;
            }
            g = gcd(&g, &c);
            if g.is_one() {
                break;
            }
        }
        return g;
    }
    let v = *common
        .iter()
        .min_by_key(|&&v| (a.degree_in(v).max(b.degree_in(v)), v))
        .unwrap();
    let (ca, cb) = (a.coeffs_in(v), b.coeffs_in(v));
    let cont_b = gcd_list(&cb);
    let mut cont = cont_b.clone();
    for c in &ca {
        if cont.is_one() {
            break;
        }
        if !c.is_zero() {
            cont = gcd(&cont, c);
        }
    }
    let pb = b.div_exact(&cont_b).unwrap();
    let h = prs_gcd(a.clone(), pb, v);
    h.mul(&cont).normalized()
}

fn gcd_list(ps: &[Poly]) -> Poly {
    let mut g = Poly::zero();
    for p in ps {
        if p.is_zero() {
            continue;
        }
        g = gcd(&g, p);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Primitive part with respect to `v`.
fn pp_in(p: &Poly, v: Var) -> Poly {
    let c = gcd_list(&p.coeffs_in(v));
    p.div_exact(&c).unwrap().normalized()
}

/// Primitive-part gcd by the primitive pseudo-remainder sequence in `v`.
fn prs_gcd(mut a: Poly, mut b: Poly, v: Var) -> Poly {
    if a.degree_in(v) < b.degree_in(v) {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        if b.degree_in(v) == 0 {
            return Poly::one();
        }
        let r = prem(&a, &b, v);
        if r.is_zero() {
            return pp_in(&b, v);
        }
        a = b;
        b = pp_in(&r, v);
    }
}

/// Pseudo-remainder of `a` by `b` in `v` (without the final lc power).
fn prem(a: &Poly, b: &Poly, v: Var) -> Poly {
    let db = b.degree_in(v);
    let lb = b.lc_in(v);
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(v) >= db {
        let dr = r.degree_in(v);
        let lr = r.lc_in(v);
        let shift = Monomial::var(v, dr - db);
        let t = lr.mul(b).mul_term(&shift, &Coeff::one());
        r = r.mul(&lb).sub(&t);
    }
    r
}
