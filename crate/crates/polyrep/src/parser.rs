//! Expression grammar shared by presentation files and the CLI.
//!
//! ```text
//! expr   := ('+'|'-')? term (('+'|'-') term)*
//! term   := factor (('*'|'/')? factor)*
//! factor := atom ('^' uint)?
//! atom   := uint | ident | '[' expr ',' expr ']' | '{' expr ',' expr '}' | '(' expr ')'
//! ```
//!
//! Juxtaposition multiplies; products of generators keep their order. `/`
//! takes a scalar divisor only.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use thiserror::Error;

use crate::coeffring::{Coeff, CoeffError, Scalar};
use crate::freealg::{AlgElement, GenSet};

/// Deepest bracket nesting accepted.
pub const MAX_DEPTH: usize = 256;
/// Largest exponent accepted when lowering.
pub const MAX_EXPONENT: u32 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{pos}: syntax error: expected {expected}, found {found}")]
    Syntax { pos: Pos, expected: String, found: String },
    #[error("{pos}: unknown identifier `{name}`{}", context.as_ref().map(|c| format!(" in {c}")).unwrap_or_default())]
    UnknownIdent { pos: Pos, name: String, context: Option<String> },
    #[error("{pos}: divisor must be a scalar")]
    NonScalarDivisor { pos: Pos },
    #[error("{pos}: exponent {exp} exceeds the limit of {MAX_EXPONENT}")]
    ExponentTooLarge { pos: Pos, exp: String },
    #[error("{pos}: nesting deeper than {MAX_DEPTH}")]
    TooDeep { pos: Pos },
    #[error("{pos}: expected a scalar expression")]
    NotScalar { pos: Pos },
    #[error("{pos}: {err}")]
    Coeff { pos: Pos, err: CoeffError },
}

impl ParseError {
    pub fn pos(&self) -> Pos {
        match self {
            ParseError::Syntax { pos, .. }
            | ParseError::UnknownIdent { pos, .. }
            | ParseError::NonScalarDivisor { pos }
            | ParseError::ExponentTooLarge { pos, .. }
            | ParseError::TooDeep { pos }
            | ParseError::NotScalar { pos }
            | ParseError::Coeff { pos, .. } => *pos,
        }
    }

    /// Shifts the position of an error in a fragment that starts at `at`.
    pub fn offset(self, at: Pos) -> ParseError {
        let shift = |p: Pos| {
            if p.line == 1 {
                Pos { line: at.line, col: at.col + p.col - 1 }
            } else {
                Pos { line: at.line + p.line - 1, col: p.col }
            }
        };
        match self {
            ParseError::Syntax { pos, expected, found } => ParseError::Syntax { pos: shift(pos), expected, found },
            ParseError::UnknownIdent { pos, name, context } => {
                ParseError::UnknownIdent { pos: shift(pos), name, context }
            }
            ParseError::NonScalarDivisor { pos } => ParseError::NonScalarDivisor { pos: shift(pos) },
            ParseError::ExponentTooLarge { pos, exp } => ParseError::ExponentTooLarge { pos: shift(pos), exp },
            ParseError::TooDeep { pos } => ParseError::TooDeep { pos: shift(pos) },
            ParseError::NotScalar { pos } => ParseError::NotScalar { pos: shift(pos) },
            ParseError::Coeff { pos, err } => ParseError::Coeff { pos: shift(pos), err },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MulOp {
    Mul,
    Div,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Num(BigInt),
    Ident(String, Pos),
    /// Signed summands; `true` marks subtraction.
    Sum(Vec<(bool, Expr)>),
    Product(Vec<(MulOp, Expr, Pos)>),
    Pow(Box<Expr>, String, Pos),
    Commutator(Box<Expr>, Box<Expr>),
    Anticommutator(Box<Expr>, Box<Expr>),
    Paren(Box<Expr>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Num(String),
    Ident(String),
    Sym(char),
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Num(n) => write!(f, "number `{n}`"),
            Tok::Ident(s) => write!(f, "identifier `{s}`"),
            Tok::Sym(c) => write!(f, "`{}`", c.escape_debug()),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

fn lex(src: &str) -> Result<Vec<(Tok, Pos)>, ParseError> {
    let mut out = Vec::new();
    let (mut line, mut col) = (1usize, 1usize);
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, col };
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            col += 1;
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            col += i - start;
            out.push((Tok::Num(chars[start..i].iter().collect()), pos));
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            col += i - start;
            out.push((Tok::Ident(chars[start..i].iter().collect()), pos));
            continue;
        }
        if "+-*/^[]{}(),".contains(c) {
            out.push((Tok::Sym(c), pos));
            col += 1;
            i += 1;
            continue;
        }
        return Err(ParseError::Syntax {
            pos,
            expected: "an expression".into(),
            found: format!("character `{}`", c.escape_debug()),
        });
    }
    out.push((Tok::Eof, Pos { line, col }));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
    depth: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn error(&self, expected: &str) -> ParseError {
        ParseError::Syntax { pos: self.pos(), expected: expected.into(), found: self.peek().to_string() }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if *self.peek() == Tok::Sym(c) {
            self.bump();
            Ok(())
        } else {
            Err(self.error(&format!("`{c}`")))
        }
    }

    fn enter(&mut self) -> Result<(), ParseError> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            Err(ParseError::TooDeep { pos: self.pos() })
        } else {
            Ok(())
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        self.enter()?;
        let mut terms = Vec::new();
        let mut neg = false;
        match self.peek() {
            Tok::Sym('-') => {
                self.bump();
                neg = true;
            }
            Tok::Sym('+') => {
                self.bump();
            }
            _ => {}
        }
        terms.push((neg, self.term()?));
        loop {
            match self.peek() {
                Tok::Sym('+') => {
                    self.bump();
                    terms.push((false, self.term()?));
                }
                Tok::Sym('-') => {
                    self.bump();
                    terms.push((true, self.term()?));
                }
                _ => break,
            }
        }
        self.depth -= 1;
        if terms.len() == 1 && !terms[0].0 {
            return Ok(terms.pop().unwrap().1);
        }
        Ok(Expr::Sum(terms))
    }

    fn starts_atom(&self) -> bool {
        matches!(self.peek(), Tok::Num(_) | Tok::Ident(_) | Tok::Sym('[') | Tok::Sym('{') | Tok::Sym('('))
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let p = self.pos();
        let mut factors = vec![(MulOp::Mul, self.factor()?, p)];
        loop {
            let p = self.pos();
            let op = match self.peek() {
                Tok::Sym('*') => {
                    self.bump();
                    MulOp::Mul
                }
                Tok::Sym('/') => {
                    self.bump();
                    MulOp::Div
                }
                _ if self.starts_atom() => MulOp::Mul,
                _ => break,
            };
            factors.push((op, self.factor()?, p));
        }
        if factors.len() == 1 {
            return Ok(factors.pop().unwrap().1);
        }
        Ok(Expr::Product(factors))
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if *self.peek() == Tok::Sym('^') {
            self.bump();
            let p = self.pos();
            match self.bump() {
                Tok::Num(n) => Ok(Expr::Pow(Box::new(base), n, p)),
                t => Err(ParseError::Syntax { pos: p, expected: "an exponent".into(), found: t.to_string() }),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let p = self.pos();
        match self.peek().clone() {
            Tok::Num(n) => {
                self.bump();
                Ok(Expr::Num(n.parse().expect("digits")))
            }
            Tok::Ident(s) => {
                self.bump();
                Ok(Expr::Ident(s, p))
            }
            Tok::Sym(open @ ('[' | '{')) => {
                self.bump();
                let a = self.expr()?;
                self.expect(',')?;
                let b = self.expr()?;
                if open == '[' {
                    self.expect(']')?;
                    Ok(Expr::Commutator(Box::new(a), Box::new(b)))
                } else {
                    self.expect('}')?;
                    Ok(Expr::Anticommutator(Box::new(a), Box::new(b)))
                }
            }
            Tok::Sym('(') => {
                self.bump();
                let e = self.expr()?;
                self.expect(')')?;
                Ok(Expr::Paren(Box::new(e)))
            }
            _ => Err(self.error("a number, identifier, `(`, `[` or `{`")),
        }
    }
}

/// Parses `text` into an AST.
pub fn parse(text: &str) -> Result<Expr, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, at: 0, depth: 0 };
    let e = p.expr()?;
    if *p.peek() != Tok::Eof {
        return Err(p.error("an operator or end of input"));
    }
    Ok(e)
}

/// What an identifier denotes.
#[derive(Debug, Clone)]
pub enum Sym {
    Gen(u8),
    Param(Scalar),
}

pub trait Resolver {
    fn resolve(&self, name: &str) -> Option<Sym>;
    fn context(&self) -> Option<String> {
        None
    }
}

/// Generators by name; every other identifier is a param.
pub struct Permissive<'a>(pub &'a GenSet);

impl Resolver for Permissive<'_> {
    fn resolve(&self, name: &str) -> Option<Sym> {
        match self.0.index(name) {
            Some(i) => Some(Sym::Gen(i)),
            None => Some(Sym::Param(param(name))),
        }
    }
}

/// Params only: for scalar expressions.
pub struct Params;

impl Resolver for Params {
    fn resolve(&self, name: &str) -> Option<Sym> {
        Some(Sym::Param(param(name)))
    }
}

/// `H` is accepted as an alias for the energy `E`.
pub fn param(name: &str) -> Scalar {
    Scalar::param(if name == "H" { "E" } else { name })
}

fn uint_exp(s: &str, pos: Pos) -> Result<u32, ParseError> {
    match s.parse::<u32>() {
        Ok(e) if e <= MAX_EXPONENT => Ok(e),
        _ => Err(ParseError::ExponentTooLarge { pos, exp: s.into() }),
    }
}

fn first_pos(e: &Expr) -> Pos {
    match e {
        Expr::Num(_) => Pos { line: 1, col: 1 },
        Expr::Ident(_, p) => *p,
        Expr::Sum(v) => v.first().map(|t| first_pos(&t.1)).unwrap_or(Pos { line: 1, col: 1 }),
        Expr::Product(v) => v.first().map(|t| t.2).unwrap_or(Pos { line: 1, col: 1 }),
        Expr::Pow(b, _, _) => first_pos(b),
        Expr::Commutator(a, _) | Expr::Anticommutator(a, _) | Expr::Paren(a) => first_pos(a),
    }
}

/// Lowers an AST to an (unordered) algebra element.
pub fn lower(e: &Expr, gens: &Arc<GenSet>, r: &dyn Resolver) -> Result<AlgElement, ParseError> {
    Ok(match e {
        Expr::Num(n) => AlgElement::scalar(gens, Scalar::from_rational(Coeff::from_integer(n.clone()))),
        Expr::Ident(name, pos) => match r.resolve(name) {
            Some(Sym::Gen(i)) => AlgElement::gen(gens, i),
            Some(Sym::Param(s)) => AlgElement::scalar(gens, s),
            None => {
                return Err(ParseError::UnknownIdent { pos: *pos, name: name.clone(), context: r.context() })
            }
        },
        Expr::Sum(ts) => {
            let mut acc = AlgElement::zero(gens);
            for (neg, t) in ts {
                let v = lower(t, gens, r)?;
                acc = if *neg { acc.sub(&v) } else { acc.add(&v) }.expect("same generator set");
            }
            acc
        }
        Expr::Product(fs) => {
            let mut acc = AlgElement::one(gens);
            for (op, f, pos) in fs {
                let v = lower(f, gens, r)?;
                acc = match op {
                    MulOp::Mul => acc.mul(&v).expect("same generator set"),
                    MulOp::Div => {
                        let s = v.as_scalar().ok_or(ParseError::NonScalarDivisor { pos: *pos })?;
                        let inv = s.inv().map_err(|err| ParseError::Coeff { pos: *pos, err })?;
                        acc.scale(&inv)
                    }
                };
            }
            acc
        }
        Expr::Pow(b, exp, pos) => {
            let n = uint_exp(exp, *pos)?;
            let v = lower(b, gens, r)?;
            match v.as_scalar() {
                Some(s) => AlgElement::scalar(gens, s.pow(n as i64).expect("nonnegative power")),
                None => v.pow(n),
            }
        }
        Expr::Commutator(a, b) => {
            let (a, b) = (lower(a, gens, r)?, lower(b, gens, r)?);
            a.mul(&b).and_then(|x| x.sub(&b.mul(&a)?)).expect("same generator set")
        }
        Expr::Anticommutator(a, b) => {
            let (a, b) = (lower(a, gens, r)?, lower(b, gens, r)?);
            a.mul(&b).and_then(|x| x.add(&b.mul(&a)?)).expect("same generator set")
        }
        Expr::Paren(e) => lower(e, gens, r)?,
    })
}

/// Lowers an AST that must denote a scalar.
pub fn lower_scalar(e: &Expr, r: &dyn Resolver) -> Result<Scalar, ParseError> {
    let empty = GenSet::new(Vec::new());
    let v = lower(e, &empty, r)?;
    v.as_scalar().ok_or(ParseError::NotScalar { pos: first_pos(e) })
}

/// Parses and lowers in one step.
pub fn parse_element(text: &str, gens: &Arc<GenSet>, r: &dyn Resolver) -> Result<AlgElement, ParseError> {
    lower(&parse(text)?, gens, r)
}

/// Parses a scalar expression (every identifier is a param).
pub fn parse_scalar(text: &str) -> Result<Scalar, ParseError> {
    lower_scalar(&parse(text)?, &Params)
}

/// Canonical text of an element.
pub fn format(e: &AlgElement) -> String {
    e.to_string()
}

pub fn format_scalar(s: &Scalar) -> String {
    s.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::Generator;

    fn gens() -> Arc<GenSet> {
        GenSet::new(vec![
            Generator { name: "X1".into(), weight: 1 },
            Generator { name: "X2".into(), weight: 2 },
            Generator { name: "F".into(), weight: 3 },
        ])
    }

    #[test]
    fn top_level_terms() {
        let e = parse("F^2 + X1^4 + d*X1^2 - alpha*E*X2").unwrap();
        match e {
            Expr::Sum(t) => assert_eq!(t.len(), 4),
            _ => panic!("expected a sum"),
        }
    }

    #[test]
    fn brackets_lower() {
        let g = gens();
        let e = parse_element("{X1^2, X2}", &g, &Permissive(&g)).unwrap();
        assert_eq!(e.len(), 2);
        let e = parse_element("2 (X1 F)", &g, &Permissive(&g)).unwrap();
        assert_eq!(e.to_string(), "2*X1*F");
    }

    #[test]
    fn errors_carry_positions() {
        let err = parse("X1 +\n  * F").unwrap_err();
        assert_eq!(err.pos(), Pos { line: 2, col: 3 });
        let g = gens();
        let err = parse_element("X1 / X2", &g, &Permissive(&g)).unwrap_err();
        assert!(matches!(err, ParseError::NonScalarDivisor { .. }));
        assert!(parse("X1^99999999999").is_ok());
        assert!(parse_element("X1^99999999999", &g, &Permissive(&g)).is_err());
    }

    #[test]
    fn depth_is_limited() {
        let deep = "(".repeat(10_000) + &")".repeat(10_000);
        assert!(matches!(parse(&deep), Err(ParseError::TooDeep { .. })));
    }
}
