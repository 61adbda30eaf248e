//! Canonical fractions of polynomials.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::poly::{gcd, Coeff, Monomial, Poly};
use super::var::{resolve, Resolved, Var};
use super::CoeffError;

/// `num / den` with `gcd(num, den) = 1` and `den` primitive over the
/// integers with a positive leading coefficient in the name order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Scalar {
    num: Poly,
    den: Poly,
}

/// Name-based display key of a monomial: radicals folded into their bases.
fn display_factors(m: &Monomial) -> Vec<(Arc<str>, u32)> {
    let mut out: Vec<(Arc<str>, u32)> = Vec::with_capacity(m.factors().len() + 1);
    for &(v, e) in m.factors() {
        match v.radical_base() {
            Some(b) => {
                if e / 2 > 0 {
                    out.push((b.name(), e / 2));
                }
                if e % 2 == 1 {
                    out.push((v.name(), 1));
                }
            }
            None => out.push((v.name(), e)),
        }
    }
    out.sort();
    out
}

fn display_order(a: &[(Arc<str>, u32)], b: &[(Arc<str>, u32)]) -> Ordering {
    let da: u32 = a.iter().map(|f| f.1).sum();
    let db: u32 = b.iter().map(|f| f.1).sum();
    db.cmp(&da).then_with(|| {
        for (x, y) in a.iter().zip(b) {
            let o = x.0.cmp(&y.0).then(y.1.cmp(&x.1));
            if o != Ordering::Equal {
                return o;
            }
        }
        b.len().cmp(&a.len())
    })
}

/// Leading coefficient in the interner-independent name order.
fn name_leading_coeff(p: &Poly) -> Coeff {
    match p.terms() {
        [] => Coeff::zero(),
        [(_, c)] => c.clone(),
        terms => {
            let keyed: Vec<_> = terms.iter().map(|(m, c)| (display_factors(m), c)).collect();
            keyed
                .iter()
                .min_by(|a, b| display_order(&a.0, &b.0))
                .map(|(_, c)| (*c).clone())
                .unwrap()
        }
    }
}

fn canonical_den_factor(den: &Poly) -> Coeff {
    let mut c = den.rational_content().abs();
    if name_leading_coeff(den).is_negative() {
        c = -c;
    }
    c
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        Scalar::from_poly(Poly::one())
    }

    pub fn from_rational(c: Coeff) -> Self {
        Scalar::from_poly(Poly::constant(c))
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_rational(Coeff::from_integer(BigInt::from(n)))
    }

    pub fn ratio(p: i64, q: i64) -> Self {
        Scalar::from_rational(Coeff::new(p.into(), q.into()))
    }

    pub fn from_poly(num: Poly) -> Self {
        Scalar { num, den: Poly::one() }
    }

    /// The param called `name`; a radical base becomes the radical squared.
    pub fn param(name: &str) -> Self {
        match resolve(name) {
            Resolved::Plain(v) => Scalar::from_poly(Poly::var(v)),
            Resolved::Squared(r) => Scalar::from_poly(Poly::term(Monomial::var(r, 2), Coeff::one())),
        }
    }

    pub fn var(v: Var) -> Self {
        Scalar::from_poly(Poly::var(v))
    }

    /// Builds `num / den`, bringing it to canonical form.
    pub fn from_fraction(num: Poly, den: Poly) -> Result<Self, CoeffError> {
        if den.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        Ok(reduce(num, den))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_rational(&self) -> Option<Coeff> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    /// True if the value is a single rational multiple of a power product.
    pub fn is_monomial(&self) -> bool {
        self.num.len() <= 1 && self.den.is_monomial()
    }

    pub fn vars(&self) -> std::collections::BTreeSet<Var> {
        let mut v = self.num.vars();
        v.extend(self.den.vars());
        v
    }

    pub fn neg(&self) -> Scalar {
        Scalar { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn add(&self, o: &Scalar) -> Scalar {
        self.combine(o, false)
    }

    pub fn sub(&self, o: &Scalar) -> Scalar {
        self.combine(o, true)
    }

    fn combine(&self, o: &Scalar, negate: bool) -> Scalar {
        let join = |a: &Poly, b: &Poly| if negate { a.sub(b) } else { a.add(b) };
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate { o.neg() } else { o.clone() };
        }
        if self.den == o.den {
            if self.den.is_one() {
                return Scalar::from_poly(join(&self.num, &o.num));
            }
            return reduce(join(&self.num, &o.num), self.den.clone());
        }
        if self.den.is_one() {
            // gcd(a*d + c, d) = gcd(c, d) = 1
            return normalize_den(join(&self.num.mul(&o.den), &o.num), o.den.clone());
        }
        if o.den.is_one() {
            return normalize_den(join(&self.num, &o.num.mul(&self.den)), self.den.clone());
        }
        let g = gcd(&self.den, &o.den);
        let b1 = self.den.div_exact(&g).unwrap();
        let d1 = o.den.div_exact(&g).unwrap();
        let num = join(&self.num.mul(&d1), &o.num.mul(&b1));
        let den = b1.mul(&o.den);
        if g.is_one() {
            normalize_den(num, den)
        } else {
            // Only factors of g can survive in common.
            let h = gcd(&num, &g);
            if h.is_one() {
                normalize_den(num, den)
            } else {
                normalize_den(num.div_exact(&h).unwrap(), den.div_exact(&h).unwrap())
            }
        }
    }

    pub fn mul(&self, o: &Scalar) -> Scalar {
        if self.is_zero() || o.is_zero() {
            return Scalar::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return Scalar::from_poly(self.num.mul(&o.num));
        }
        let g1 = gcd(&self.num, &o.den);
        let g2 = gcd(&o.num, &self.den);
        let (a, d) = if g1.is_one() {
            (self.num.clone(), o.den.clone())
        } else {
            (self.num.div_exact(&g1).unwrap(), o.den.div_exact(&g1).unwrap())
        };
        let (c, b) = if g2.is_one() {
            (o.num.clone(), self.den.clone())
        } else {
            (o.num.div_exact(&g2).unwrap(), self.den.div_exact(&g2).unwrap())
        };
        normalize_den(a.mul(&c), b.mul(&d))
    }

    pub fn scale(&self, c: &Coeff) -> Scalar {
        if c.is_zero() {
            return Scalar::zero();
        }
        Scalar { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn inv(&self) -> Result<Scalar, CoeffError> {
        if self.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        Ok(normalize_den(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, o: &Scalar) -> Result<Scalar, CoeffError> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, e: i64) -> Result<Scalar, CoeffError> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        let e = e as u32;
        Ok(Scalar { num: self.num.pow(e), den: self.den.pow(e) })
    }

    /// Re-runs canonicalization; a no-op on values built through this API.
    pub fn canonical(&self) -> Scalar {
        reduce(self.num.clone(), self.den.clone())
    }

    /// Partial derivative in `v` (quotient rule).
    pub fn derivative(&self, v: Var) -> Scalar {
        let dn = self.num.derivative(v);
        if self.den.is_one() {
            return Scalar::from_poly(dn);
        }
        let dd = self.den.derivative(v);
        if dd.is_zero() {
            return reduce(dn, self.den.clone());
        }
        reduce(dn.mul(&self.den).sub(&self.num.mul(&dd)), self.den.mul(&self.den))
    }

    /// Exact square root for the values the radical machinery can name:
    /// zero, rational squares, and monomial perfect squares (which include
    /// declared radical bases, stored as radical squared).
    pub fn sqrt_exact(&self) -> Option<Scalar> {
        if self.is_zero() {
            return Some(Scalar::zero());
        }
        if !self.is_monomial() {
            return None;
        }
        let (nm, nc) = self.num.leading().cloned()?;
        let (dm, dc) = self.den.leading().cloned()?;
        let c = nc / dc;
        if c.is_negative() {
            return None;
        }
        let sq = |n: &BigInt| {
            let r = n.sqrt();
            (&r * &r == *n).then_some(r)
        };
        let rc = Coeff::new(sq(c.numer())?, sq(c.denom())?);
        let half = |m: &Monomial| -> Option<Monomial> {
            let mut out = Monomial::one();
            for &(v, e) in m.factors() {
                if e % 2 == 1 {
                    return None;
                }
                out = out.mul(&Monomial::var(v, e / 2));
            }
            Some(out)
        };
        let (hn, hd) = (half(&nm)?, half(&dm)?);
        Some(reduce(Poly::term(hn, rc), Poly::term(hd, Coeff::one())))
    }

    /// Replaces params by values. A bound radical base also determines the
    /// radical: odd powers of the radical need an exact square root of the
    /// bound value; if both are bound they must satisfy `rad^2 = base`.
    pub fn substitute(&self, bindings: &HashMap<String, Scalar>) -> Result<Scalar, CoeffError> {
        if bindings.is_empty() {
            return Ok(self.clone());
        }
        let vars = self.vars();
        let mut direct: HashMap<Var, Scalar> = HashMap::new();
        let mut squared: HashMap<Var, Scalar> = HashMap::new();
        for &v in &vars {
            let name = v.name();
            if let Some(base) = v.radical_base() {
                let own = bindings.get(&*name);
                let of_base = bindings.get(&*base.name());
                match (own, of_base) {
                    (Some(s), Some(b)) => {
                        if s.mul(s) != *b {
                            return Err(CoeffError::InconsistentRadical(format!(
                                "{name} = {s} does not square to {} = {b}",
                                base.name()
                            )));
                        }
                        direct.insert(v, s.clone());
                    }
                    (Some(s), None) => {
                        direct.insert(v, s.clone());
                    }
                    (None, Some(b)) => match b.sqrt_exact() {
                        Some(s) => {
                            direct.insert(v, s);
                        }
                        None => {
                            squared.insert(v, b.clone());
                        }
                    },
                    (None, None) => {}
                }
            } else if let Some(s) = bindings.get(&*name) {
                direct.insert(v, s.clone());
            }
        }
        if direct.is_empty() && squared.is_empty() {
            return Ok(self.clone());
        }
        let num = eval_poly(&self.num, &direct, &squared)?;
        let den = eval_poly(&self.den, &direct, &squared)?;
        num.div(&den)
    }
}

fn eval_poly(
    p: &Poly,
    direct: &HashMap<Var, Scalar>,
    squared: &HashMap<Var, Scalar>,
) -> Result<Scalar, CoeffError> {
    let mut powers: HashMap<(Var, u32), Scalar> = HashMap::new();
    let mut acc = Scalar::zero();
    let mut untouched = Vec::new();
    for (m, c) in p.terms() {
        let mut value = Scalar::from_rational(c.clone());
        let mut rest = Monomial::one();
        let mut hit = false;
        for &(v, e) in m.factors() {
            if let Some(s) = direct.get(&v) {
                hit = true;
                let pw = powers.entry((v, e)).or_insert_with(|| s.pow(e as i64).unwrap());
                value = value.mul(pw);
            } else if let Some(b) = squared.get(&v) {
                if e % 2 == 1 {
                    return Err(CoeffError::InconsistentRadical(format!(
                        "{} has no exact square root for {} = {b}",
                        v.name(),
                        v.radical_base().map(|x| x.name()).unwrap_or_default()
                    )));
                }
                hit = true;
                let pw = powers.entry((v, e)).or_insert_with(|| b.pow((e / 2) as i64).unwrap());
                value = value.mul(pw);
            } else {
                rest = rest.mul(&Monomial::var(v, e));
            }
        }
        if hit {
            acc = acc.add(&value.mul(&Scalar::from_poly(Poly::term(rest, Coeff::one()))));
        } else {
            untouched.push((m.clone(), c.clone()));
        }
    }
    Ok(acc.add(&Scalar::from_poly(Poly::from_terms(untouched))))
}

/// Scales a coprime pair so the denominator is in canonical form.
fn normalize_den(num: Poly, den: Poly) -> Scalar {
    if num.is_zero() {
        return Scalar::zero();
    }
    if let Some(c) = den.as_constant() {
        return Scalar { num: num.scale(&c.recip()), den: Poly::one() };
    }
    let c = canonical_den_factor(&den);
    if c.is_one() {
        Scalar { num, den }
    } else {
        let inv = c.recip();
        Scalar { num: num.scale(&inv), den: den.scale(&inv) }
    }
}

fn reduce(num: Poly, den: Poly) -> Scalar {
    if num.is_zero() {
        return Scalar::zero();
    }
    if den.as_constant().is_some() {
        return normalize_den(num, den);
    }
    let g = gcd(&num, &den);
    if g.is_one() {
        normalize_den(num, den)
    } else {
        normalize_den(num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<Coeff> for Scalar {
    fn from(c: Coeff) -> Self {
        Scalar::from_rational(c)
    }
}

fn fmt_rational(c: &Coeff) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn fmt_poly(p: &Poly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut terms: Vec<_> = p.terms().iter().map(|(m, c)| (display_factors(m), c)).collect();
    terms.sort_by(|a, b| display_order(&a.0, &b.0));
    let mut out = String::new();
    for (i, (factors, c)) in terms.iter().enumerate() {
        let neg = c.is_negative();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let a = c.abs();
        let mut parts: Vec<String> = Vec::new();
        if !a.is_one() || factors.is_empty() {
            parts.push(fmt_rational(&a));
        }
        for (name, e) in factors {
            if *e == 1 {
                parts.push(name.to_string());
            } else {
                parts.push(format!("{name}^{e}"));
            }
        }
        out.push_str(&parts.join("*"));
    }
    out
}

impl fmt::Display for Scalar {
    /// Canonical text: terms in name order, rationals as `p/q`, fractions as
    /// `num/den`, parenthesized unless a single term (numerator) or a single
    /// power (denominator).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return f.write_str(&fmt_poly(&self.num));
        }
        let num = fmt_poly(&self.num);
        let den = fmt_poly(&self.den);
        let num = if self.num.len() == 1 { num } else { format!("({num})") };
        let single_power = matches!(self.den.terms(), [(m, c)] if c.is_one() && m.factors().len() == 1);
        let den = if single_power { den } else { format!("({den})") };
        write!(f, "{num}/{den}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: &str) -> Scalar {
        Scalar::param(n)
    }

    #[test]
    fn radical_squares_fold() {
        let sr = p("sr");
        assert_eq!(sr.mul(&sr), p("r"));
        assert_eq!(sr.mul(&sr).to_string(), "r");
        assert_eq!(sr.pow(3).unwrap().to_string(), "r*sr");
    }

    #[test]
    fn fraction_cancels() {
        let a = p("alpha");
        let e = p("E");
        let x = a.mul(&e).add(&a);
        let y = e.add(&Scalar::one());
        assert_eq!(x.div(&y).unwrap(), a);
        assert_eq!(p("E").sub(&p("E")), Scalar::zero());
    }

    #[test]
    fn denominator_sign_is_canonical() {
        let a = p("a1");
        let b = p("a2");
        let x = Scalar::one().div(&a.sub(&b)).unwrap();
        let y = Scalar::one().div(&b.sub(&a)).unwrap().neg();
        assert_eq!(x, y);
        assert_eq!(x.to_string(), "1/(a1 - a2)");
    }

    #[test]
    fn substitute_binds_radicals() {
        let mut b = HashMap::new();
        b.insert("r".to_string(), Scalar::zero());
        assert_eq!(p("sr").substitute(&b).unwrap(), Scalar::zero());
        let mut b = HashMap::new();
        b.insert("r".to_string(), Scalar::from_int(4));
        assert_eq!(p("sr").add(&p("r")).substitute(&b).unwrap(), Scalar::from_int(6));
        let mut b = HashMap::new();
        b.insert("r".to_string(), p("alpha"));
        assert!(matches!(p("sr").substitute(&b), Err(CoeffError::InconsistentRadical(_))));
        assert_eq!(p("r").substitute(&b).unwrap(), p("alpha"));
    }

    #[test]
    fn derivative_quotient_rule() {
        let x = Var::named("x");
        let s = Scalar::one().div(&Scalar::var(x)).unwrap();
        let d = s.derivative(x);
        assert_eq!(d, Scalar::from_int(-1).div(&Scalar::var(x).mul(&Scalar::var(x))).unwrap());
    }
}
