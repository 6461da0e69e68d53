//! The line-oriented singularity description format.
//!
//! ```text
//! # the cusp
//! ring x, y
//! weights 2, 3
//! jet 10
//! order 4
//! f1 = x^3 - y^2
//! ```

use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use crate::cotangent::SingularityInput;
use crate::error::{Error, Result};
use crate::ring::{format_rational, Poly, Rational, RingContext};

pub const DEFAULT_ORDER: u32 = 4;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Num(Rational),
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

impl Expr {
    /// Upper bound for the total degree, read off the syntax.
    pub fn degree(&self) -> u32 {
        match self {
            Expr::Num(_) => 0,
            Expr::Var(_) => 1,
            Expr::Neg(e) => e.degree(),
            Expr::Add(a, b) | Expr::Sub(a, b) => a.degree().max(b.degree()),
            Expr::Mul(a, b) => a.degree() + b.degree(),
            Expr::Pow(e, k) => e.degree() * k,
        }
    }

    pub fn eval(&self, ctx: &Arc<RingContext>) -> Result<Poly> {
        Ok(match self {
            Expr::Num(c) => Poly::constant(ctx, c.clone()),
            Expr::Var(name) => {
                let i = ctx
                    .var_names()
                    .iter()
                    .position(|v| v == name)
                    .ok_or_else(|| Error::InvalidRing(format!("unknown variable {name}")))?;
                Poly::var(ctx, i)
            }
            Expr::Neg(e) => -&e.eval(ctx)?,
            Expr::Add(a, b) => &a.eval(ctx)? + &b.eval(ctx)?,
            Expr::Sub(a, b) => &a.eval(ctx)? - &b.eval(ctx)?,
            Expr::Mul(a, b) => &a.eval(ctx)? * &b.eval(ctx)?,
            Expr::Pow(e, k) => {
                let base = e.eval(ctx)?;
                (0..*k).fold(Poly::one(ctx), |acc, _| &acc * &base)
            }
        })
    }

    fn is_sum(&self) -> bool {
        matches!(self, Expr::Add(..) | Expr::Sub(..))
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |f: &mut fmt::Formatter<'_>, e: &Expr, paren: bool| {
            if paren {
                write!(f, "({e})")
            } else {
                write!(f, "{e}")
            }
        };
        match self {
            Expr::Num(c) => write!(f, "{}", format_rational(c)),
            Expr::Var(v) => write!(f, "{v}"),
            Expr::Neg(e) => {
                write!(f, "-")?;
                wrap(f, e, e.is_sum() || matches!(**e, Expr::Mul(..)))
            }
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                write!(f, "{a} {} ", if matches!(self, Expr::Add(..)) { '+' } else { '-' })?;
                wrap(f, b, b.is_sum())
            }
            Expr::Mul(a, b) => {
                wrap(f, a, a.is_sum())?;
                write!(f, "*")?;
                wrap(f, b, b.is_sum() || matches!(**b, Expr::Mul(..)))
            }
            Expr::Pow(e, k) => {
                let atomic = match &**e {
                    Expr::Var(_) => true,
                    Expr::Num(c) => c.is_integer() && *c >= Rational::zero(),
                    _ => false,
                };
                wrap(f, e, !atomic)?;
                write!(f, "^{k}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equation {
    pub name: String,
    pub expr: Expr,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct InputDocument {
    pub variables: Vec<String>,
    pub weights: Option<Vec<u32>>,
    pub jet: Option<u32>,
    pub order: Option<u32>,
    pub equations: Vec<Equation>,
}

impl InputDocument {
    pub fn max_degree(&self) -> u32 {
        self.equations.iter().map(|e| e.expr.degree()).max().unwrap_or(0)
    }

    /// Explicit override, then the document's `jet` line, then 2·maxdeg + 4.
    pub fn jet_order(&self, overridden: Option<u32>) -> u32 {
        overridden.or(self.jet).unwrap_or(2 * self.max_degree() + 4)
    }

    pub fn base_order(&self, overridden: Option<u32>) -> u32 {
        overridden.or(self.order).unwrap_or(DEFAULT_ORDER)
    }

    pub fn ring(&self, jet: Option<u32>) -> Result<Arc<RingContext>> {
        RingContext::new(self.variables.clone(), self.jet_order(jet), self.weights.clone())
    }

    pub fn singularity(&self, jet: Option<u32>) -> Result<SingularityInput> {
        let ctx = self.ring(jet)?;
        let equations = self.equations.iter().map(|e| e.expr.eval(&ctx)).collect::<Result<Vec<_>>>()?;
        SingularityInput::new(&ctx, equations)
    }
}

impl fmt::Display for InputDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ring {}", self.variables.join(", "))?;
        if let Some(w) = &self.weights {
            writeln!(f, "weights {}", w.iter().map(u32::to_string).collect::<Vec<_>>().join(", "))?;
        }
        if let Some(j) = self.jet {
            writeln!(f, "jet {j}")?;
        }
        if let Some(q) = self.order {
            writeln!(f, "order {q}")?;
        }
        for e in &self.equations {
            writeln!(f, "{} = {}", e.name, e.expr)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(String),
    Sym(char),
}

struct Lexer {
    line: usize,
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
}

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, column, message: message.into() }
}

impl Lexer {
    fn new(text: &str, line: usize) -> Result<Self> {
        let chars: Vec<char> = text.chars().collect();
        let mut toks = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let col = i + 1;
            if c.is_whitespace() {
                i += 1;
            } else if c.is_ascii_alphabetic() || c == '_' {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                toks.push((Tok::Ident(chars[start..i].iter().collect()), col));
            } else if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                toks.push((Tok::Int(chars[start..i].iter().collect()), col));
            } else if "+-*^/(),=".contains(c) {
                toks.push((Tok::Sym(c), col));
                i += 1;
            } else {
                return Err(parse_err(line, col, format!("unexpected character `{c}`")));
            }
        }
        Ok(Lexer { line, toks, pos: 0, end: chars.len() + 1 })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn column(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(_, c)| *c)
    }

    fn next(&mut self) -> Option<(Tok, usize)> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn error(&self, message: impl Into<String>) -> Error {
        parse_err(self.line, self.column(), message)
    }

    fn expect_end(&self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(t) => Err(self.error(format!("unexpected {}", describe(t)))),
        }
    }

    fn uint(&mut self) -> Result<u32> {
        match self.next() {
            Some((Tok::Int(s), col)) => {
                s.parse().map_err(|_| parse_err(self.line, col, format!("integer `{s}` is too large")))
            }
            Some((Tok::Sym('-'), col)) => Err(Error::NegativeExponent { line: self.line, column: col }),
            Some((t, col)) => Err(parse_err(self.line, col, format!("expected an integer, found {}", describe(&t)))),
            None => Err(parse_err(self.line, self.end, "expected an integer")),
        }
    }

    fn list<T>(&mut self, mut item: impl FnMut(&mut Self) -> Result<T>) -> Result<Vec<T>> {
        let mut out = vec![item(self)?];
        while self.peek().is_some() {
            self.eat(',');
            out.push(item(self)?);
        }
        Ok(out)
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) | Tok::Int(s) => format!("`{s}`"),
        Tok::Sym(c) => format!("`{c}`"),
    }
}

struct ExprParser<'a> {
    lex: Lexer,
    vars: &'a [String],
}

impl ExprParser<'_> {
    fn sum(&mut self) -> Result<Expr> {
        let mut acc = self.product()?;
        loop {
            if self.lex.eat('+') {
                acc = Expr::Add(Box::new(acc), Box::new(self.product()?));
            } else if self.lex.eat('-') {
                acc = Expr::Sub(Box::new(acc), Box::new(self.product()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn product(&mut self) -> Result<Expr> {
        let mut acc = self.unary()?;
        while self.lex.eat('*') {
            acc = Expr::Mul(Box::new(acc), Box::new(self.unary()?));
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.lex.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        let base = self.atom()?;
        if self.lex.eat('^') {
            return Ok(Expr::Pow(Box::new(base), self.lex.uint()?));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        let line = self.lex.line;
        match self.lex.next() {
            Some((Tok::Int(p), _)) => {
                let mut value: Rational = Rational::from_integer(p.parse().expect("digits"));
                if self.lex.eat('/') {
                    let col = self.lex.column();
                    match self.lex.next() {
                        Some((Tok::Int(q), _)) => {
                            let q: num_bigint::BigInt = q.parse().expect("digits");
                            if q.is_zero() {
                                return Err(parse_err(line, col, "zero denominator"));
                            }
                            value /= Rational::from_integer(q);
                        }
                        _ => return Err(parse_err(line, col, "expected an integer denominator")),
                    }
                }
                Ok(Expr::Num(value))
            }
            Some((Tok::Ident(name), col)) => {
                if self.vars.contains(&name) {
                    Ok(Expr::Var(name))
                } else {
                    Err(Error::UndeclaredVariable { name, line, column: col })
                }
            }
            Some((Tok::Sym('('), _)) => {
                let e = self.sum()?;
                if !self.lex.eat(')') {
                    return Err(self.lex.error("expected `)`"));
                }
                Ok(e)
            }
            Some((t, col)) => Err(parse_err(line, col, format!("unexpected {}", describe(&t)))),
            None => Err(parse_err(line, self.lex.end, "unexpected end of line")),
        }
    }
}

fn is_equation_name(s: &str) -> bool {
    s.len() > 1 && s.starts_with('f') && s[1..].chars().all(|c| c.is_ascii_digit())
}

/// Parses a single expression over the given variables.
pub fn parse_expr(text: &str, vars: &[String]) -> Result<Expr> {
    let mut p = ExprParser { lex: Lexer::new(text, 1)?, vars };
    let e = p.sum()?;
    p.lex.expect_end()?;
    Ok(e)
}

pub fn parse(text: &str) -> Result<InputDocument> {
    let mut doc = InputDocument::default();
    let mut have_ring = false;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let mut lex = Lexer::new(content, line)?;
        let Some((Tok::Ident(head), col)) = lex.next() else {
            if lex.toks.is_empty() {
                continue;
            }
            return Err(parse_err(line, lex.toks[0].1, "expected a declaration"));
        };
        match head.as_str() {
            "ring" => {
                if have_ring {
                    return Err(parse_err(line, col, "duplicate ring declaration"));
                }
                doc.variables = lex
                    .list(|l| match l.next() {
                        Some((Tok::Ident(v), c)) => {
                            if is_equation_name(&v) || ["ring", "weights", "jet", "order"].contains(&v.as_str()) {
                                Err(parse_err(line, c, format!("`{v}` is reserved")))
                            } else {
                                Ok((v, c))
                            }
                        }
                        Some((t, c)) => {
                            Err(parse_err(line, c, format!("expected a variable name, found {}", describe(&t))))
                        }
                        None => Err(parse_err(line, l.end, "expected a variable name")),
                    })?
                    .into_iter()
                    .try_fold(Vec::new(), |mut acc: Vec<String>, (v, c)| {
                        if acc.contains(&v) {
                            return Err(parse_err(line, c, format!("variable `{v}` declared twice")));
                        }
                        acc.push(v);
                        Ok(acc)
                    })?;
                have_ring = true;
            }
            "weights" => {
                if doc.weights.is_some() {
                    return Err(parse_err(line, col, "duplicate weights declaration"));
                }
                doc.weights = Some(lex.list(Lexer::uint)?);
            }
            "jet" | "order" => {
                let slot = if head == "jet" { &mut doc.jet } else { &mut doc.order };
                if slot.is_some() {
                    return Err(parse_err(line, col, format!("duplicate {head} declaration")));
                }
                *slot = Some(lex.uint()?);
                lex.expect_end()?;
            }
            name if is_equation_name(name) => {
                if !have_ring {
                    return Err(parse_err(line, col, "equation before the ring declaration"));
                }
                if doc.equations.iter().any(|e| e.name == name) {
                    return Err(parse_err(line, col, format!("equation `{name}` defined twice")));
                }
                if !lex.eat('=') {
                    return Err(lex.error("expected `=`"));
                }
                let mut p = ExprParser { lex, vars: &doc.variables };
                let expr = p.sum()?;
                p.lex.expect_end()?;
                doc.equations.push(Equation { name: name.to_string(), expr });
            }
            _ => return Err(parse_err(line, col, format!("unknown declaration `{head}`"))),
        }
    }
    if !have_ring {
        return Err(parse_err(1, 1, "missing ring declaration"));
    }
    if let Some(w) = &doc.weights {
        if w.len() != doc.variables.len() {
            return Err(Error::InvalidRing(format!("{} weights for {} variables", w.len(), doc.variables.len())));
        }
    }
    if doc.equations.is_empty() {
        return Err(parse_err(text.lines().count().max(1), 1, "no equations"));
    }
    if doc.equations.len() > doc.variables.len() {
        return Err(Error::TooManyEquations { equations: doc.equations.len(), variables: doc.variables.len() });
    }
    Ok(doc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cusp() {
        let doc = parse("ring x, y\nf1 = x^3 - y^2").unwrap();
        assert_eq!(doc.variables, ["x", "y"]);
        assert_eq!(doc.equations.len(), 1);
        assert_eq!(doc.jet_order(None), 10);
        let s = doc.singularity(None).unwrap();
        assert_eq!(s.f().entries()[0].to_string(), "-y^2 + x^3");
    }

    #[test]
    fn weighted() {
        let doc = parse("ring x\nweights 2\nf1 = x^2").unwrap();
        assert_eq!(doc.weights, Some(vec![2]));
    }

    #[test]
    fn undeclared() {
        let e = parse("ring x, y\nf1 = x + z").unwrap_err();
        assert_eq!(e, Error::UndeclaredVariable { name: "z".into(), line: 2, column: 10 });
    }

    #[test]
    fn errors() {
        assert!(matches!(parse("ring x\nf1 = x^-2"), Err(Error::NegativeExponent { line: 2, column: 8 })));
        assert!(matches!(parse("ring x\nf1 = x $ 2"), Err(Error::Parse { line: 2, column: 8, .. })));
        assert!(matches!(parse("ring x\nf1 = x\nf2 = x^2"), Err(Error::TooManyEquations { .. })));
        assert!(matches!(parse("ring x\nf1 = (x"), Err(Error::Parse { .. })));
    }

    #[test]
    fn rationals_and_printing() {
        let doc = parse("# c\nring x, y\njet 6\nf1 = 3/2*x^2 - -(x + y)*y   # tail").unwrap();
        let printed = doc.to_string();
        assert_eq!(printed, "ring x, y\njet 6\nf1 = 3/2*x^2 - -(x + y)*y\n");
        assert_eq!(parse(&printed).unwrap(), doc);
        let p = doc.singularity(None).unwrap();
        assert_eq!(p.f().entries()[0].to_string(), "3/2*x^2 + x*y + y^2");
    }
}
