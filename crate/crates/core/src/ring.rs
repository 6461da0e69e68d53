//! Exact sparse polynomials over the rationals in a jet-truncated local ring.
//!
//! A [`RingContext`] has two blocks of variables: the space variables
//! `x_1..x_n`, truncated at total degree `jet_order`, and an optional block
//! of parameters `s_1..s_m` truncated at `param_order`. Deformation families
//! live over the combined ring; everything about the special fibre uses a
//! context without parameters.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Exact textual form `p/q` (or `p` for integers).
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    match text.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(Rational::new(p, q))
        }
        None => Some(Rational::from_integer(text.parse().ok()?)),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingContext {
    var_names: Vec<String>,
    jet_order: u32,
    weights: Option<Vec<u32>>,
    param_names: Vec<String>,
    param_order: u32,
}

impl RingContext {
    pub fn new(var_names: Vec<String>, jet_order: u32, weights: Option<Vec<u32>>) -> Result<Arc<Self>> {
        if var_names.is_empty() {
            return Err(Error::InvalidRing("at least one variable is required".into()));
        }
        if let Some(w) = &weights {
            if w.len() != var_names.len() {
                return Err(Error::InvalidRing(format!("{} weights given for {} variables", w.len(), var_names.len())));
            }
            if w.contains(&0) {
                return Err(Error::InvalidRing("weights must be positive".into()));
            }
        }
        let ctx = RingContext { var_names, jet_order, weights, param_names: Vec::new(), param_order: 0 };
        ctx.check_names()?;
        Ok(Arc::new(ctx))
    }

    /// The combined ring of `self` (parameters dropped) and a parameter block
    /// truncated at `param_order`.
    pub fn with_params(&self, param_names: Vec<String>, param_order: u32) -> Result<Arc<Self>> {
        let ctx = RingContext {
            var_names: self.var_names.clone(),
            jet_order: self.jet_order,
            weights: self.weights.clone(),
            param_names,
            param_order,
        };
        ctx.check_names()?;
        Ok(Arc::new(ctx))
    }

    pub fn with_jet_order(&self, jet_order: u32) -> Arc<Self> {
        Arc::new(RingContext { jet_order, ..self.clone() })
    }

    pub fn with_param_order(&self, param_order: u32) -> Arc<Self> {
        Arc::new(RingContext { param_order, ..self.clone() })
    }

    /// Same space variables, no parameters.
    pub fn fiber(&self) -> Arc<Self> {
        Arc::new(RingContext { param_names: Vec::new(), param_order: 0, ..self.clone() })
    }

    fn check_names(&self) -> Result<()> {
        let mut seen = HashSet::new();
        for name in self.var_names.iter().chain(&self.param_names) {
            if name.is_empty() || !seen.insert(name.as_str()) {
                return Err(Error::InvalidRing(format!("duplicate or empty variable name `{name}`")));
            }
        }
        Ok(())
    }

    pub fn num_vars(&self) -> usize {
        self.var_names.len()
    }

    pub fn num_params(&self) -> usize {
        self.param_names.len()
    }

    pub fn total_vars(&self) -> usize {
        self.var_names.len() + self.param_names.len()
    }

    pub fn jet_order(&self) -> u32 {
        self.jet_order
    }

    pub fn param_order(&self) -> u32 {
        self.param_order
    }

    pub fn weights(&self) -> Option<&[u32]> {
        self.weights.as_deref()
    }

    pub fn var_names(&self) -> &[String] {
        &self.var_names
    }

    pub fn param_names(&self) -> &[String] {
        &self.param_names
    }

    pub fn name_of(&self, index: usize) -> &str {
        if index < self.var_names.len() {
            &self.var_names[index]
        } else {
            &self.param_names[index - self.var_names.len()]
        }
    }

    /// Whether a monomial survives truncation in this ring.
    pub fn admits(&self, m: &Monomial) -> bool {
        m.x_degree(self.num_vars()) <= self.jet_order && m.param_degree(self.num_vars()) <= self.param_order
    }

    /// All parameter-free monomials of degree at most the jet order, in local order.
    pub fn space_monomials(&self) -> Vec<Monomial> {
        let n = self.num_vars();
        let mut out = Vec::new();
        for deg in 0..=self.jet_order {
            let mut block = Vec::new();
            monomials_of_degree(n, deg, &mut vec![0; n], 0, &mut block);
            for exps in block {
                let mut full = exps;
                full.resize(self.total_vars(), 0);
                out.push(Monomial(full));
            }
        }
        out.sort();
        out
    }
}

/// Exponent vectors of length `n` and total degree `deg`.
pub(crate) fn monomials_of_degree(n: usize, deg: u32, cur: &mut Vec<u16>, pos: usize, out: &mut Vec<Vec<u16>>) {
    if pos + 1 == n {
        cur[pos] = deg as u16;
        out.push(cur.clone());
        cur[pos] = 0;
        return;
    }
    for e in (0..=deg).rev() {
        cur[pos] = e as u16;
        monomials_of_degree(n, deg - e, cur, pos + 1, out);
    }
    cur[pos] = 0;
}

/// Exponent vector over all variables of a context (space variables first).
///
/// Ordered by total degree ascending, then by a larger exponent of an earlier
/// variable first (`x^2 < xy < y^2`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u16>);

impl Monomial {
    pub fn one(len: usize) -> Self {
        Monomial(vec![0; len])
    }

    pub fn var(len: usize, index: usize) -> Self {
        let mut e = vec![0; len];
        e[index] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn x_degree(&self, n: usize) -> u32 {
        self.0[..n].iter().map(|&e| e as u32).sum()
    }

    pub fn param_degree(&self, n: usize) -> u32 {
        self.0[n..].iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// The space part with the parameter exponents zeroed.
    pub fn x_part(&self, n: usize) -> Monomial {
        let mut e = self.0.clone();
        e[n..].iter_mut().for_each(|v| *v = 0);
        Monomial(e)
    }

    pub fn param_part(&self, n: usize) -> Vec<u16> {
        self.0[n..].to_vec()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Σ wᵢ·αᵢ over the space variables.
pub fn weighted_degree(m: &Monomial, ctx: &RingContext) -> Result<u32> {
    let w = ctx.weights().ok_or(Error::NoWeights)?;
    Ok(w.iter().zip(&m.0).map(|(&w, &e)| w * e as u32).sum())
}

#[derive(Debug, Clone)]
pub struct Poly {
    ctx: Arc<RingContext>,
    terms: BTreeMap<Monomial, Rational>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        same_ctx(&self.ctx, &other.ctx) && self.terms == other.terms
    }
}

impl Eq for Poly {}

fn same_ctx(a: &Arc<RingContext>, b: &Arc<RingContext>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl Poly {
    pub fn zero(ctx: &Arc<RingContext>) -> Self {
        Poly { ctx: ctx.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(ctx: &Arc<RingContext>, c: Rational) -> Self {
        Self::term(ctx, Monomial::one(ctx.total_vars()), c)
    }

    pub fn one(ctx: &Arc<RingContext>) -> Self {
        Self::constant(ctx, Rational::one())
    }

    /// The variable with index `index` over all variables (space variables first).
    pub fn var(ctx: &Arc<RingContext>, index: usize) -> Self {
        Self::term(ctx, Monomial::var(ctx.total_vars(), index), Rational::one())
    }

    pub fn param(ctx: &Arc<RingContext>, index: usize) -> Self {
        Self::var(ctx, ctx.num_vars() + index)
    }

    pub fn term(ctx: &Arc<RingContext>, m: Monomial, c: Rational) -> Self {
        let mut p = Poly::zero(ctx);
        p.add_term(m, c);
        p
    }

    pub fn from_terms(ctx: &Arc<RingContext>, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Poly::zero(ctx);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn ctx(&self) -> &Arc<RingContext> {
        &self.ctx
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `c·m`, dropping it if it falls outside the jet bound.
    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() || !self.ctx.admits(&m) {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        let mut out = Poly::zero(&self.ctx);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                if self.ctx.admits(&m) {
                    out.add_term(m, ca * cb);
                }
            }
        }
        Ok(out)
    }

    fn check(&self, other: &Poly) -> Result<()> {
        if same_ctx(&self.ctx, &other.ctx) {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ctx);
        }
        Poly { ctx: self.ctx.clone(), terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Poly {
        let mut out = Poly::zero(&self.ctx);
        if c.is_zero() {
            return out;
        }
        for (mm, v) in &self.terms {
            out.add_term(mm.mul(m), v * c);
        }
        out
    }

    /// Formal derivative by the variable with index `index` over all variables.
    pub fn derivative(&self, index: usize) -> Result<Poly> {
        if index >= self.ctx.total_vars() {
            return Err(Error::IndexOutOfRange { index, num_vars: self.ctx.total_vars() });
        }
        let mut out = Poly::zero(&self.ctx);
        for (m, c) in &self.terms {
            let e = m.0[index];
            if e > 0 {
                let mut d = m.clone();
                d.0[index] -= 1;
                out.add_term(d, c * rat(e as i64));
            }
        }
        Ok(out)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&Monomial::one(self.ctx.total_vars()))
    }

    /// Lowest total degree of a term (`None` for zero).
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).min()
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn max_x_degree(&self) -> Option<u32> {
        let n = self.ctx.num_vars();
        self.terms.keys().map(|m| m.x_degree(n)).max()
    }

    pub fn min_x_degree(&self) -> Option<u32> {
        let n = self.ctx.num_vars();
        self.terms.keys().map(|m| m.x_degree(n)).min()
    }

    /// Re-expresses the polynomial in another context with the same variable
    /// layout, truncating as required. Missing parameters are appended with
    /// exponent zero; parameters absent from the target must have exponent zero.
    pub fn to_ctx(&self, target: &Arc<RingContext>) -> Poly {
        let n = self.ctx.num_vars();
        debug_assert_eq!(n, target.num_vars());
        let len = target.total_vars();
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            if m.0[len.min(m.0.len())..].iter().any(|&e| e > 0) {
                continue;
            }
            let mut e = m.0.clone();
            e.resize(len, 0);
            out.add_term(Monomial(e), c.clone());
        }
        out
    }

    /// Sets every parameter to zero and returns the result over `fiber`.
    pub fn at_params_zero(&self, fiber: &Arc<RingContext>) -> Poly {
        let n = self.ctx.num_vars();
        let mut out = Poly::zero(fiber);
        for (m, c) in &self.terms {
            if m.param_degree(n) == 0 {
                let mut e = m.0.clone();
                e.truncate(fiber.total_vars());
                out.add_term(Monomial(e), c.clone());
            }
        }
        out
    }

    /// Keeps the terms whose monomial satisfies `keep`.
    pub fn filter(&self, keep: impl Fn(&Monomial) -> bool) -> Poly {
        Poly {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// Truncates space degree at `d` (dropping terms of higher degree).
    pub fn truncate_x(&self, d: u32) -> Poly {
        let n = self.ctx.num_vars();
        self.filter(|m| m.x_degree(n) <= d)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mono = format_monomial(m, &self.ctx);
            if mono.is_empty() {
                write!(f, "{}", format_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{}*{mono}", format_rational(&abs))?;
            }
        }
        Ok(())
    }
}

pub fn format_monomial(m: &Monomial, ctx: &RingContext) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.0.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(ctx.name_of(i).to_string()),
            _ => parts.push(format!("{}^{}", ctx.name_of(i), e)),
        }
    }
    parts.join("*")
}

fn assert_same(a: &Poly, b: &Poly) {
    assert!(same_ctx(&a.ctx, &b.ctx), "polynomials belong to different ring contexts");
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        assert_same(self, rhs);
        self.checked_add(rhs).expect("checked")
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        assert_same(self, rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert_same(self, rhs);
        self.checked_mul(rhs).expect("checked")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&rat(-1))
    }
}

pub fn poly_add(a: &Poly, b: &Poly) -> Result<Poly> {
    a.checked_add(b)
}

pub fn poly_mul(a: &Poly, b: &Poly) -> Result<Poly> {
    a.checked_mul(b)
}

/// ∂a/∂xᵢ for a space variable index `i` (0-based).
pub fn partial(a: &Poly, i: usize) -> Result<Poly> {
    let n = a.ctx.num_vars();
    if i >= n {
        return Err(Error::IndexOutOfRange { index: i, num_vars: n });
    }
    a.derivative(i)
}

/// Element of a free module of rank k over one ring context.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyVector {
    entries: Vec<Poly>,
}

impl PolyVector {
    pub fn new(entries: Vec<Poly>) -> Result<Self> {
        if let Some(first) = entries.first() {
            if entries.iter().any(|p| !same_ctx(&p.ctx, &first.ctx)) {
                return Err(Error::ContextMismatch);
            }
        }
        Ok(PolyVector { entries })
    }

    pub fn zeros(ctx: &Arc<RingContext>, rank: usize) -> Self {
        PolyVector { entries: vec![Poly::zero(ctx); rank] }
    }

    pub fn unit(ctx: &Arc<RingContext>, rank: usize, j: usize) -> Self {
        let mut v = Self::zeros(ctx, rank);
        v.entries[j] = Poly::one(ctx);
        v
    }

    /// `c·m·e_j`.
    pub fn monomial(ctx: &Arc<RingContext>, rank: usize, m: Monomial, j: usize) -> Self {
        let mut v = Self::zeros(ctx, rank);
        v.entries[j] = Poly::term(ctx, m, Rational::one());
        v
    }

    pub fn entries(&self) -> &[Poly] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Poly> {
        self.entries
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn ctx(&self) -> Option<&Arc<RingContext>> {
        self.entries.first().map(|p| &p.ctx)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Poly::is_zero)
    }

    pub fn add(&self, other: &PolyVector) -> PolyVector {
        PolyVector { entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &PolyVector) -> PolyVector {
        PolyVector { entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, c: &Rational) -> PolyVector {
        PolyVector { entries: self.entries.iter().map(|p| p.scale(c)).collect() }
    }

    pub fn mul_poly(&self, p: &Poly) -> PolyVector {
        PolyVector { entries: self.entries.iter().map(|e| e * p).collect() }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> PolyVector {
        PolyVector { entries: self.entries.iter().map(|e| e.mul_term(m, c)).collect() }
    }

    pub fn map(&self, f: impl Fn(&Poly) -> Poly) -> PolyVector {
        PolyVector { entries: self.entries.iter().map(f).collect() }
    }

    /// Lowest degree among the entries' terms.
    pub fn order(&self) -> Option<u32> {
        self.entries.iter().filter_map(Poly::order).min()
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.entries.iter().filter_map(Poly::max_degree).max()
    }
}

impl fmt::Display for PolyVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// A derivation Σ gᵢ ∂/∂xᵢ together with a matrix h such that δ(f) = h·f.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    pub coefficients: Vec<Poly>,
    pub multiplier: Vec<Vec<Poly>>,
}

impl Derivation {
    pub fn new(coefficients: Vec<Poly>, multiplier: Vec<Vec<Poly>>) -> Self {
        Derivation { coefficients, multiplier }
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(Poly::is_zero)
    }

    /// δ applied to a single polynomial.
    pub fn apply_poly(&self, p: &Poly) -> Poly {
        let mut out = Poly::zero(p.ctx());
        for (i, g) in self.coefficients.iter().enumerate() {
            if g.is_zero() {
                continue;
            }
            let d = p.derivative(i).expect("space variable");
            if !d.is_zero() {
                out = &out + &(g * &d);
            }
        }
        out
    }

    /// h·v for a vector of rank k.
    pub fn multiply(&self, v: &PolyVector) -> PolyVector {
        let ctx = v.ctx().expect("nonempty vector").clone();
        let entries = self
            .multiplier
            .iter()
            .map(|row| row.iter().zip(v.entries()).fold(Poly::zero(&ctx), |acc, (h, e)| &acc + &(h * e)))
            .collect();
        PolyVector { entries }
    }

    /// Whether δ(f) = h·f holds within the jet bound.
    pub fn satisfies(&self, f: &PolyVector) -> bool {
        apply_derivation(self, f).map(|lhs| lhs == self.multiply(f)).unwrap_or(false)
    }

    /// δ(f) − h·f.
    pub fn defect(&self, f: &PolyVector) -> PolyVector {
        apply_derivation(self, f).expect("shared context").sub(&self.multiply(f))
    }

    pub fn to_ctx(&self, target: &Arc<RingContext>) -> Derivation {
        Derivation {
            coefficients: self.coefficients.iter().map(|p| p.to_ctx(target)).collect(),
            multiplier: self.multiplier.iter().map(|r| r.iter().map(|p| p.to_ctx(target)).collect()).collect(),
        }
    }
}

/// Componentwise Σᵢ gᵢ·∂v/∂xᵢ.
pub fn apply_derivation(delta: &Derivation, v: &PolyVector) -> Result<PolyVector> {
    if let (Some(g), Some(c)) = (delta.coefficients.first(), v.ctx()) {
        if !same_ctx(g.ctx(), c) {
            return Err(Error::ContextMismatch);
        }
    }
    Ok(PolyVector { entries: v.entries().iter().map(|p| delta.apply_poly(p)).collect() })
}

/// The weighted degree of each component if every component is weighted
/// homogeneous; `None` otherwise (including for zero components).
pub fn is_quasihomogeneous(f: &PolyVector, ctx: &RingContext) -> Option<Vec<u32>> {
    let w = ctx.weights()?;
    let mut degrees = Vec::with_capacity(f.rank());
    for p in f.entries() {
        let mut deg = None;
        for (m, _) in p.terms() {
            let d: u32 = w.iter().zip(&m.0).map(|(&w, &e)| w * e as u32).sum();
            match deg {
                None => deg = Some(d),
                Some(prev) if prev != d => return None,
                _ => {}
            }
        }
        degrees.push(deg?);
    }
    Some(degrees)
}

/// Σ wᵢ xᵢ ∂/∂xᵢ as a coefficient list.
pub fn euler_coefficients(ctx: &Arc<RingContext>) -> Result<Vec<Poly>> {
    let w = ctx.weights().ok_or(Error::NoWeights)?;
    Ok(w.iter().enumerate().map(|(i, &wi)| Poly::var(ctx, i).scale(&rat(wi as i64))).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(names: &[&str], d: u32) -> Arc<RingContext> {
        RingContext::new(names.iter().map(|s| s.to_string()).collect(), d, None).unwrap()
    }

    fn x(c: &Arc<RingContext>) -> Poly {
        Poly::var(c, 0)
    }

    fn y(c: &Arc<RingContext>) -> Poly {
        Poly::var(c, 1)
    }

    #[test]
    fn additive_inverse_and_merge() {
        let c = ctx(&["x", "y"], 5);
        assert!((&x(&c) + &-&x(&c)).is_zero());
        let a = &(&x(&c) * &x(&c)) + &y(&c);
        let sum = &a + &y(&c);
        assert_eq!(sum, &(&x(&c) * &x(&c)) + &y(&c).scale(&rat(2)));
    }

    #[test]
    fn multiplication_truncates() {
        let c = ctx(&["x", "y"], 4);
        let p = &(&x(&c) + &y(&c)) * &(&x(&c) - &y(&c));
        assert_eq!(p, &(&x(&c) * &x(&c)) - &(&y(&c) * &y(&c)));
        let c1 = ctx(&["x"], 1);
        assert!((&x(&c1) * &x(&c1)).is_zero());
        let c3 = ctx(&["x"], 3);
        let one = Poly::one(&c3);
        let xx = x(&c3);
        let a = &one + &xx;
        let b = &(&one - &xx) + &(&xx * &xx);
        let cube = &(&xx * &xx) * &xx;
        assert_eq!(&a * &b, &one + &cube);
    }

    #[test]
    fn context_mismatch() {
        let a = ctx(&["x"], 3);
        let b = ctx(&["y"], 3);
        assert_eq!(poly_add(&x(&a), &x(&b)), Err(Error::ContextMismatch));
        assert_eq!(poly_mul(&x(&a), &x(&b)), Err(Error::ContextMismatch));
    }

    #[test]
    fn partial_derivatives() {
        let c = ctx(&["x", "y"], 5);
        let f = &(&(&x(&c) * &x(&c)) * &x(&c)) - &(&y(&c) * &y(&c));
        assert_eq!(partial(&f, 0).unwrap(), (&x(&c) * &x(&c)).scale(&rat(3)));
        assert_eq!(partial(&f, 1).unwrap(), y(&c).scale(&rat(-2)));
        assert!(partial(&Poly::constant(&c, rat(5)), 0).unwrap().is_zero());
        assert!(matches!(partial(&f, 2), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn weighted_degrees() {
        let c = RingContext::new(vec!["x".into(), "y".into()], 6, Some(vec![1, 1])).unwrap();
        assert_eq!(weighted_degree(&Monomial(vec![2, 2]), &c).unwrap(), 4);
        let c23 = RingContext::new(vec!["x".into(), "y".into()], 6, Some(vec![2, 3])).unwrap();
        assert_eq!(weighted_degree(&Monomial(vec![1, 0]), &c23).unwrap(), 2);
        assert_eq!(weighted_degree(&Monomial(vec![0, 0]), &c23).unwrap(), 0);
        let plain = ctx(&["x"], 3);
        assert_eq!(weighted_degree(&Monomial(vec![1]), &plain), Err(Error::NoWeights));
    }

    #[test]
    fn quasihomogeneity() {
        let c = RingContext::new(vec!["x".into(), "y".into()], 8, Some(vec![2, 3])).unwrap();
        let (xx, yy) = (x(&c), y(&c));
        let cusp = &(&(&xx * &xx) * &xx) - &(&yy * &yy);
        assert_eq!(is_quasihomogeneous(&PolyVector::new(vec![cusp.clone()]).unwrap(), &c), Some(vec![6]));
        let mixed = &(&cusp + &(&yy * &yy).scale(&rat(2))) + &(&(&yy * &yy) * &yy);
        assert_eq!(is_quasihomogeneous(&PolyVector::new(vec![mixed]).unwrap(), &c), None);
        let c11 = RingContext::new(vec!["x".into(), "y".into()], 8, Some(vec![1, 1])).unwrap();
        let x4 = {
            let x2 = &x(&c11) * &x(&c11);
            &x2 * &x2
        };
        let y4 = {
            let y2 = &y(&c11) * &y(&c11);
            &y2 * &y2
        };
        assert_eq!(is_quasihomogeneous(&PolyVector::new(vec![&x4 + &y4]).unwrap(), &c11), Some(vec![4]));
    }

    #[test]
    fn derivations() {
        let c = RingContext::new(vec!["x".into(), "y".into()], 8, Some(vec![2, 3])).unwrap();
        let (xx, yy) = (x(&c), y(&c));
        let f = PolyVector::new(vec![&(&(&xx * &xx) * &xx) - &(&yy * &yy)]).unwrap();
        let euler = Derivation::new(euler_coefficients(&c).unwrap(), vec![vec![Poly::constant(&c, rat(6))]]);
        assert_eq!(apply_derivation(&euler, &f).unwrap(), f.scale(&rat(6)));
        assert!(euler.satisfies(&f));
        let zero = Derivation::new(vec![Poly::zero(&c); 2], vec![vec![Poly::zero(&c)]]);
        assert!(apply_derivation(&zero, &f).unwrap().is_zero());
        let ham = Derivation::new(vec![yy.scale(&rat(-2)), (&xx * &xx).scale(&rat(-3))], vec![vec![Poly::zero(&c)]]);
        assert!(apply_derivation(&ham, &f).unwrap().is_zero());
    }

    #[test]
    fn display_uses_local_order() {
        let c = ctx(&["x", "y"], 5);
        let f = &(&(&x(&c) * &x(&c)) * &x(&c)) - &(&y(&c) * &y(&c)).scale(&rat_frac(3, 2));
        assert_eq!(f.to_string(), "-3/2*y^2 + x^3");
    }
}
