//! Differential-operator oracle for D_I and the quintic system.
//!
//! States are `A XY + B X'Y` with `Y' = rho Y` (rho the separation radical)
//! and `X'' = q X`. Each system works in a coordinate in which every
//! coefficient denominator is a monomial:
//!
//! * D_I: `w = alpha x + beta`, `d/dx = alpha d/dw`, `phi = 1/w`.
//! * quintic: `u = c2 + c1 x`, `d/dx = c1 d/du`.
//!
//! `X'` is the derivative in the working coordinate.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::algebras::Presentation;
use crate::coeffring::{gcd, Coeff, Monomial, Poly, Scalar, Var};
use crate::freealg::{binomial, AlgElement};
use crate::parser::param;
use crate::repspace::StateCombo;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("state is not in the span of the basis; residual {0}")]
    NotInSpan(String),
    #[error("no realization of {0}")]
    Unknown(String),
}

/// `sum coeff(w, y) d_w^a d_y^b`.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct DiffOp {
    terms: BTreeMap<(u32, u32), Scalar>,
}

/// `A XY + B X'Y`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PairState {
    #[serde(rename = "A", serialize_with = "ser_scalar")]
    pub a: Scalar,
    #[serde(rename = "B", serialize_with = "ser_scalar")]
    pub b: Scalar,
}

fn ser_scalar<S: serde::Serializer>(s: &Scalar, ser: S) -> Result<S::Ok, S::Error> {
    ser.serialize_str(&s.to_string())
}

impl PairState {
    pub fn new(a: Scalar, b: Scalar) -> Self {
        PairState { a, b }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn add(&self, o: &PairState) -> PairState {
        PairState { a: self.a.add(&o.a), b: self.b.add(&o.b) }
    }

    pub fn sub(&self, o: &PairState) -> PairState {
        PairState { a: self.a.sub(&o.a), b: self.b.sub(&o.b) }
    }

    pub fn scale(&self, c: &Scalar) -> PairState {
        PairState { a: self.a.mul(c), b: self.b.mul(c) }
    }

    /// JSON `{"A": .., "B": ..}`.
    pub fn to_json(&self) -> String {
        serde_json::json!({ "A": self.a.to_string(), "B": self.b.to_string() }).to_string()
    }
}

impl DiffOp {
    pub fn zero() -> Self {
        DiffOp::default()
    }

    pub fn term(a: u32, b: u32, c: Scalar) -> Self {
        let mut d = DiffOp::zero();
        d.add_term((a, b), c);
        d
    }

    pub fn mult(c: Scalar) -> Self {
        DiffOp::term(0, 0, c)
    }

    pub fn terms(&self) -> &BTreeMap<(u32, u32), Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, k: (u32, u32), c: Scalar) {
        if c.is_zero() {
            return;
        }
        let s = match self.terms.remove(&k) {
            Some(x) => x.add(&c),
            None => c,
        };
        if !s.is_zero() {
            self.terms.insert(k, s);
        }
    }

    pub fn add(&self, o: &DiffOp) -> DiffOp {
        let mut r = self.clone();
        for (k, c) in &o.terms {
            r.add_term(*k, c.clone());
        }
        r
    }

    pub fn sub(&self, o: &DiffOp) -> DiffOp {
        self.add(&o.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> DiffOp {
        let mut r = DiffOp::zero();
        for (k, d) in &self.terms {
            r.add_term(*k, d.mul(c));
        }
        r
    }

    /// `self o other`, by the Leibniz rule.
    pub fn compose(&self, o: &DiffOp, w: Var, y: Var) -> DiffOp {
        let mut r = DiffOp::zero();
        let mut derivs: HashMap<(usize, u32, u32), Scalar> = HashMap::new();
        let others: Vec<_> = o.terms.iter().collect();
        for (&(a, b), c) in &self.terms {
            for (idx, (&(p, q), d)) in others.iter().enumerate() {
                for i in 0..=a {
                    for j in 0..=b {
                        let dd = derivs
                            .entry((idx, i, j))
                            .or_insert_with(|| {
                                let mut x = (*d).clone();
                                for _ in 0..i {
                                    x = x.derivative(w);
                                }
                                for _ in 0..j {
                                    x = x.derivative(y);
                                }
                                x
                            })
                            .clone();
                        if dd.is_zero() {
                            continue;
                        }
                        let k = Coeff::from_integer(binomial(a, i) * binomial(b, j));
                        r.add_term((a - i + p, b - j + q), c.mul(&dd).scale(&k));
                    }
                }
            }
        }
        r
    }

    pub fn commutator(&self, o: &DiffOp, w: Var, y: Var) -> DiffOp {
        self.compose(o, w, y).sub(&o.compose(self, w, y))
    }

    pub fn anticommutator(&self, o: &DiffOp, w: Var, y: Var) -> DiffOp {
        self.compose(o, w, y).add(&o.compose(self, w, y))
    }
}

/// One commutator-fidelity check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fidelity {
    pub check: String,
    pub holds: bool,
}

/// Which analytic system.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum System {
    DI,
    Quintic,
}

/// A realized system: integrals as operators plus the ODE reduction data.
pub struct Realization {
    pub system: System,
    /// Working coordinate and `y`.
    pub w: Var,
    pub y: Var,
    /// `X'' = q X` in the working coordinate.
    pub q: Scalar,
    /// `Y' = rho Y`.
    pub rho: Scalar,
    pub hamiltonian: DiffOp,
    integrals: Vec<(String, DiffOp)>,
    /// `d/dx` in units of `d/dw`.
    pub dx_scale: Scalar,
    /// `w` as a function of `x`.
    pub w_of_x: Scalar,
    /// The integrals exactly as displayed, where they differ from the realized ones.
    pub displayed: Vec<(String, DiffOp)>,
}

fn p(n: &str) -> Scalar {
    param(n)
}

fn int(n: i64) -> Scalar {
    Scalar::from_int(n)
}

fn rat(a: i64, b: i64) -> Scalar {
    Scalar::ratio(a, b)
}

impl Realization {
    pub fn new(system: System) -> Realization {
        match system {
            System::DI => Realization::di(),
            System::Quintic => Realization::quintic(),
        }
    }

    fn di() -> Realization {
        let w = Var::named("w");
        let y = Var::named("y");
        let (alpha, beta, c1, e) = (p("alpha"), p("beta"), p("c1"), p("E"));
        let sr = p("sr");
        let r = p("r");
        let wv = Scalar::var(w);
        let yv = Scalar::var(y);
        let phi = Scalar::one().div(&wv).unwrap();
        let x = wv.sub(&beta).div(&alpha).unwrap();
        let lap = DiffOp::term(2, 0, alpha.mul(&alpha)).add(&DiffOp::term(0, 2, Scalar::one()));
        let h = DiffOp::mult(phi.clone()).compose(&lap.add(&DiffOp::mult(c1.clone())), w, y);
        let x1 = DiffOp::term(0, 1, Scalar::one());
        // printed X2, then X2 = -(printed) so that [X1,F] = +alpha/2 H
        let printed = DiffOp::term(1, 1, yv.mul(&alpha))
            .sub(&DiffOp::term(0, 2, x.clone()))
            .add(&DiffOp::term(1, 0, alpha.mul(&rat(1, 2))))
            .sub(&DiffOp::mult(rat(1, 4).mul(&alpha).mul(&yv).mul(&yv).mul(&phi)).compose(&lap, w, y))
            .sub(&DiffOp::mult(rat(1, 4).mul(&c1).mul(&alpha).mul(&phi).mul(&yv).mul(&yv)));
        let x2 = printed.scale(&int(-1));
        let f = x1.commutator(&x2, w, y);
        let q = e.mul(&wv).sub(&r).sub(&c1).div(&alpha.mul(&alpha)).unwrap();
        Realization {
            system: System::DI,
            w,
            y,
            q,
            rho: sr,
            hamiltonian: h,
            integrals: vec![("X1".into(), x1), ("X2".into(), x2), ("F".into(), f)],
            dx_scale: alpha.clone(),
            w_of_x: alpha.mul(&Scalar::param("x")).add(&beta),
            displayed: vec![("X2".into(), printed)],
        }
    }

    fn quintic() -> Realization {
        let u = Var::named("u");
        let y = Var::named("y");
        let (c0, c1, c2, e) = (p("c0"), p("c1"), p("c2"), p("E"));
        let lambda = p("lambda");
        let uv = Scalar::var(u);
        let yv = Scalar::var(y);
        let x = uv.sub(&c2).div(&c1).unwrap();
        let pref = c0.mul(&c0).mul(&uv).mul(&uv).div(&c1.mul(&c1)).unwrap();
        let lap = DiffOp::term(2, 0, c1.mul(&c1)).add(&DiffOp::term(0, 2, Scalar::one()));
        let h = DiffOp::mult(pref).compose(&lap, u, y);
        let dy = DiffOp::term(0, 1, Scalar::one());
        let dy2 = DiffOp::term(0, 2, Scalar::one());
        let l1 = DiffOp::term(1, 0, c1.clone());
        let l3 = DiffOp::term(1, 0, yv.mul(&c1)).sub(&DiffOp::term(0, 1, x.clone()));
        let l4 = DiffOp::term(1, 0, x.mul(&c1)).add(&DiffOp::term(0, 1, yv.clone()));
        let l6 = DiffOp::term(1, 0, int(2).mul(&x).mul(&yv).mul(&c1))
            .add(&DiffOp::term(0, 1, yv.mul(&yv).sub(&x.mul(&x))));
        let b = c0.mul(&uv).div(&c1).unwrap();
        let b1 = c0.mul(&x).mul(&x).mul(&rat(1, 2));
        let c = |a: &DiffOp, o: &DiffOp| a.compose(o, u, y);
        let ac = |a: &DiffOp, o: &DiffOp| a.anticommutator(o, u, y);
        let m = DiffOp::mult;
        let yh = c(&m(yv.clone()), &h);
        let y2h = c(&m(yv.mul(&yv)), &h);
        let bh = c(&m(b), &h);
        // [Y1, Y2] = K with
        let k = ac(&dy, &yh)
            .scale(&c0.mul(&rat(1, 2)))
            .add(&ac(&l4, &dy2).scale(&c1.mul(&rat(1, 2))))
            .add(&c(&l1, &dy2).scale(&c2))
            .add(&ac(&bh, &l1).scale(&rat(1, 2)));
        let y2 = ac(&dy, &y2h)
            .scale(&c0.mul(&rat(1, 4)))
            .add(&ac(&l6, &dy2).scale(&c1.mul(&rat(1, 4))))
            .add(&ac(&l3, &dy2).scale(&c2.mul(&rat(1, 2))))
            .add(&ac(&bh, &l3).scale(&rat(1, 2)))
            .add(&c(&c(&m(b1.clone()), &h), &dy));
        // displayed K: the realized Y2 with y H in place of y^2 H
        let shown_k = ac(&dy, &yh)
            .scale(&c0.mul(&rat(1, 4)))
            .add(&ac(&l6, &dy2).scale(&c1.mul(&rat(1, 4))))
            .add(&ac(&l3, &dy2).scale(&c2.mul(&rat(1, 2))))
            .add(&ac(&bh, &l3).scale(&rat(1, 2)))
            .add(&c(&c(&m(b1), &h), &dy));
        let q = e
            .div(&c0.mul(&c0).mul(&uv).mul(&uv))
            .unwrap()
            .sub(&lambda.div(&c1.mul(&c1)).unwrap());
        Realization {
            system: System::Quintic,
            w: u,
            y,
            q,
            rho: p("slambda"),
            hamiltonian: h,
            integrals: vec![("Y1".into(), dy), ("Y2".into(), y2), ("K".into(), k.clone())],
            dx_scale: c1.clone(),
            w_of_x: c2.add(&c1.mul(&Scalar::param("x"))),
            displayed: vec![("Y2".into(), k), ("K".into(), shown_k)],
        }
    }

    /// The operator realizing a generator.
    pub fn integral(&self, name: &str) -> Result<&DiffOp, OracleError> {
        self.integrals
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, d)| d)
            .ok_or_else(|| OracleError::Unknown(name.into()))
    }

    pub fn integral_names(&self) -> Vec<&str> {
        self.integrals.iter().map(|(n, _)| n.as_str()).collect()
    }

    pub fn compose(&self, a: &DiffOp, b: &DiffOp) -> DiffOp {
        a.compose(b, self.w, self.y)
    }

    /// The lowest state Psi = XY.
    pub fn psi(&self) -> PairState {
        PairState::new(Scalar::one(), Scalar::zero())
    }

    fn d_w(&self, s: &PairState) -> PairState {
        PairState::new(s.a.derivative(self.w).add(&self.q.mul(&s.b)), s.a.add(&s.b.derivative(self.w)))
    }

    fn d_y(&self, s: &PairState) -> PairState {
        PairState::new(
            s.a.derivative(self.y).add(&self.rho.mul(&s.a)),
            s.b.derivative(self.y).add(&self.rho.mul(&s.b)),
        )
    }

    /// Applies an operator, reducing `X''` by `q` and `Y'` by `rho`.
    pub fn apply(&self, op: &DiffOp, s: &PairState) -> PairState {
        let mut by_y: BTreeMap<u32, Vec<(u32, &Scalar)>> = BTreeMap::new();
        for (&(a, b), c) in &op.terms {
            by_y.entry(b).or_default().push((a, c));
        }
        let mut out = PairState::new(Scalar::zero(), Scalar::zero());
        let mut cur_y = s.clone();
        let mut at_y = 0;
        for (b, list) in by_y {
            while at_y < b {
                cur_y = self.d_y(&cur_y);
                at_y += 1;
            }
            let mut list = list;
            list.sort_by_key(|t| t.0);
            let mut cur = cur_y.clone();
            let mut at_w = 0;
            for (a, c) in list {
                while at_w < a {
                    cur = self.d_w(&cur);
                    at_w += 1;
                }
                out = out.add(&cur.scale(c));
            }
        }
        out
    }

    /// Applies a word of generators, rightmost first.
    pub fn apply_word(&self, names: &[&str], s: &PairState) -> Result<PairState, OracleError> {
        let mut cur = s.clone();
        for n in names.iter().rev() {
            cur = self.apply(self.integral(n)?, &cur);
        }
        Ok(cur)
    }

    /// Applies an algebra element with scalar coefficients (valid on states
    /// of energy E).
    pub fn apply_element(&self, e: &AlgElement, s: &PairState) -> Result<PairState, OracleError> {
        let mut out = PairState::new(Scalar::zero(), Scalar::zero());
        for (w, c) in e.terms() {
            let names: Vec<&str> = w.iter().map(|&g| e.gens().name(g)).collect();
            out = out.add(&self.apply_word(&names, s)?.scale(c));
        }
        Ok(out)
    }

    /// `H s - E s`.
    pub fn schrodinger_residual(&self, s: &PairState) -> PairState {
        self.apply(&self.hamiltonian, s).sub(&s.scale(&param("E")))
    }

    /// The states `R^j Psi` for `j = 0..=n`.
    pub fn basis(&self, raising: &str, n: usize) -> Result<Vec<PairState>, OracleError> {
        let r = self.integral(raising)?;
        let mut v = vec![self.psi()];
        for _ in 0..n {
            let next = self.apply(r, v.last().unwrap());
            v.push(next);
        }
        Ok(v)
    }

    /// Rewrites a state in the original coordinate `x` with `X'` = dX/dx.
    pub fn to_x(&self, s: &PairState) -> PairState {
        let mut b = HashMap::new();
        b.insert(self.w.name().to_string(), self.w_of_x.clone());
        let a = s.a.substitute(&b).expect("polynomial substitution");
        let bb = s.b.substitute(&b).expect("polynomial substitution").div(&self.dx_scale).unwrap();
        PairState::new(a, bb)
    }

    /// `[H, G] = 0` as operators, and every commutation relation of `p`
    /// on the states `R^j Psi`, `j < depth`.
    pub fn fidelity(&self, p: &Presentation, raising: &str, depth: usize) -> Result<Vec<Fidelity>, OracleError> {
        let mut out = Vec::new();
        for (n, g) in &self.integrals {
            let c = self.hamiltonian.commutator(g, self.w, self.y);
            out.push(Fidelity { check: format!("[H,{n}] = 0"), holds: c.is_zero() });
        }
        let basis = self.basis(raising, depth.saturating_sub(1))?;
        let n = p.gens.len() as u8;
        for i in 0..n {
            for j in i + 1..n {
                let (a, b) = (p.gens.name(i), p.gens.name(j));
                let op = self.integral(a)?.commutator(self.integral(b)?, self.w, self.y);
                let rhs = p.rules.bracket(i, j);
                let holds = basis
                    .iter()
                    .map(|s| Ok(self.apply(&op, s).sub(&self.apply_element(rhs, s)?).is_zero()))
                    .collect::<Result<Vec<_>, OracleError>>()?
                    .into_iter()
                    .all(|x| x);
                out.push(Fidelity { check: format!("[{a},{b}] = {rhs}"), holds });
            }
        }
        Ok(out)
    }

    /// Coefficients of `s` over `basis`, or `NotInSpan`.
    pub fn express_in_basis(&self, s: &PairState, basis: &[PairState]) -> Result<Vec<Scalar>, OracleError> {
        express_in_basis(s, basis, &[self.w, self.y])
    }

    /// `c_j` with `s = sum c_j R^j Psi`, as a module combination.
    pub fn express_combo(&self, s: &PairState, basis: &[PairState]) -> Result<StateCombo, OracleError> {
        let c = self.express_in_basis(s, basis)?;
        let mut out = StateCombo::zero();
        for (j, v) in c.into_iter().enumerate() {
            out.add_term(smallvec::smallvec![j as u32], v);
        }
        Ok(out)
    }
}

fn lcm(a: &Poly, b: &Poly) -> Poly {
    let g = gcd(a, b);
    a.div_exact(&g).unwrap().mul(b)
}

/// Splits a polynomial by its monomials in `coords`.
fn split_coords(p: &Poly, coords: &[Var]) -> BTreeMap<Monomial, Poly> {
    let mut out: BTreeMap<Monomial, Vec<(Monomial, Coeff)>> = BTreeMap::new();
    for (m, c) in p.terms() {
        let mut key = Monomial::one();
        let mut rest = Monomial::one();
        for &(v, e) in m.factors() {
            if coords.contains(&v) {
                key = key.mul(&Monomial::var(v, e));
            } else {
                rest = rest.mul(&Monomial::var(v, e));
            }
        }
        out.entry(key).or_default().push((rest, c.clone()));
    }
    out.into_iter().map(|(k, v)| (k, Poly::from_terms(v))).collect()
}

/// Solves `s = sum c_k basis_k` with `c_k` free of `coords`.
#[allow(clippy::needless_range_loop)]
pub fn express_in_basis(s: &PairState, basis: &[PairState], coords: &[Var]) -> Result<Vec<Scalar>, OracleError> {
    // clear denominators
    let mut den = Poly::one();
    for st in basis.iter().chain(std::iter::once(s)) {
        for x in [&st.a, &st.b] {
            if !x.is_zero() && !x.den().is_one() {
                den = lcm(&den, x.den());
            }
        }
    }
    let cleared = |x: &Scalar| -> Poly {
        if x.is_zero() {
            Poly::zero()
        } else {
            x.num().mul(&den.div_exact(x.den()).unwrap())
        }
    };
    let cols: Vec<[Poly; 2]> = basis.par_iter().map(|b| [cleared(&b.a), cleared(&b.b)]).collect();
    let rhs = [cleared(&s.a), cleared(&s.b)];
    // one equation per (component, coordinate monomial)
    let mut rows: BTreeMap<(usize, Monomial), (Vec<Poly>, Poly)> = BTreeMap::new();
    let n = basis.len();
    for (k, col) in cols.iter().enumerate() {
        for comp in 0..2 {
            for (m, c) in split_coords(&col[comp], coords) {
                let e = rows.entry((comp, m)).or_insert_with(|| (vec![Poly::zero(); n], Poly::zero()));
                e.0[k] = c;
            }
        }
    }
    for comp in 0..2 {
        for (m, c) in split_coords(&rhs[comp], coords) {
            let e = rows.entry((comp, m)).or_insert_with(|| (vec![Poly::zero(); n], Poly::zero()));
            e.1 = c;
        }
    }
    let residual_text = |sol: &[Scalar]| -> String {
        let mut r = s.clone();
        for (c, b) in sol.iter().zip(basis) {
            r = r.sub(&b.scale(c));
        }
        format!("A = {}, B = {}", r.a, r.b)
    };
    // Gaussian elimination over the params, pivoting on the simplest entry.
    let mut m: Vec<(Vec<Scalar>, Scalar)> = rows
        .into_values()
        .map(|(r, v)| (r.into_iter().map(Scalar::from_poly).collect(), Scalar::from_poly(v)))
        .collect();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut used = vec![false; m.len()];
    for col in 0..n {
        let cand = (0..m.len())
            .filter(|&r| !used[r] && !m[r].0[col].is_zero())
            .min_by_key(|&r| (m[r].0[col].num().len() + m[r].0[col].den().len(), r));
        let Some(pr) = cand else { continue };
        used[pr] = true;
        let piv = m[pr].0[col].clone();
        let (prow, pval) = {
            let inv = piv.inv().unwrap();
            let row: Vec<Scalar> = m[pr].0.iter().map(|x| x.mul(&inv)).collect();
            (row, m[pr].1.mul(&inv))
        };
        m[pr] = (prow.clone(), pval.clone());
        for r in 0..m.len() {
            if r == pr || m[r].0[col].is_zero() {
                continue;
            }
            let f = m[r].0[col].clone();
            for c in col..n {
                if !prow[c].is_zero() {
                    m[r].0[c] = m[r].0[c].sub(&f.mul(&prow[c]));
                }
            }
            m[r].1 = m[r].1.sub(&f.mul(&pval));
        }
        pivots.push((pr, col));
        if pivots.len() == n {
            break;
        }
    }
    let mut sol = vec![Scalar::zero(); n];
    for &(r, c) in &pivots {
        sol[c] = m[r].1.clone();
    }
    // inconsistent rows
    if m.iter().enumerate().any(|(r, row)| !used[r] && row.0.iter().all(|x| x.is_zero()) && !row.1.is_zero()) {
        return Err(OracleError::NotInSpan(residual_text(&sol)));
    }
    // exact polynomial residual with denominators cleared
    let mut d = Poly::one();
    for c in &sol {
        if !c.is_zero() && !c.den().is_one() {
            d = lcm(&d, c.den());
        }
    }
    for comp in 0..2 {
        let mut acc = rhs[comp].mul(&d);
        for (k, c) in sol.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let ck = c.num().mul(&d.div_exact(c.den()).unwrap());
            acc = acc.sub(&ck.mul(&cols[k][comp]));
        }
        if !acc.is_zero() {
            return Err(OracleError::NotInSpan(residual_text(&sol)));
        }
    }
    Ok(sol)
}
