//! Linear algebra on jet spaces: quotient bases, normal forms, membership
//! and syzygies for submodules of free modules over a truncated ring.

use std::collections::HashMap;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{Echelon, SparseVec};
use crate::ring::{monomials_of_degree, Monomial, Poly, PolyVector, Rational, RingContext};

/// Every monomial admitted by a context, sorted in the local order.
pub fn admitted_monomials(ctx: &RingContext) -> Vec<Monomial> {
    let n = ctx.num_vars();
    let m = ctx.num_params();
    let mut xs = Vec::new();
    for deg in 0..=ctx.jet_order() {
        monomials_of_degree(n, deg, &mut vec![0; n], 0, &mut xs);
    }
    let mut ss = Vec::new();
    if m == 0 {
        ss.push(Vec::new());
    } else {
        for deg in 0..=ctx.param_order() {
            monomials_of_degree(m, deg, &mut vec![0; m], 0, &mut ss);
        }
    }
    let mut out = Vec::with_capacity(xs.len() * ss.len());
    for x in &xs {
        for s in &ss {
            let mut e = x.clone();
            e.extend_from_slice(s);
            out.push(Monomial(e));
        }
    }
    out.sort();
    out
}

/// Coordinates of the truncated free module `R^rank`: column
/// `monomial_index · rank + component`, so columns follow
/// (degree, local order, component).
#[derive(Debug, Clone)]
pub struct JetSpace {
    ctx: Arc<RingContext>,
    rank: usize,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl JetSpace {
    pub fn new(ctx: &Arc<RingContext>, rank: usize) -> Self {
        let monomials = admitted_monomials(ctx);
        let index = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        JetSpace { ctx: ctx.clone(), rank, monomials, index }
    }

    pub fn ctx(&self) -> &Arc<RingContext> {
        &self.ctx
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn dim(&self) -> usize {
        self.monomials.len() * self.rank
    }

    pub fn column(&self, m: &Monomial, comp: usize) -> Option<usize> {
        self.index.get(m).map(|i| i * self.rank + comp)
    }

    pub fn label(&self, col: usize) -> (&Monomial, usize) {
        (&self.monomials[col / self.rank], col % self.rank)
    }

    pub fn to_sparse(&self, v: &PolyVector) -> SparseVec {
        let mut out: SparseVec = Vec::new();
        for (comp, p) in v.entries().iter().enumerate() {
            for (m, c) in p.terms() {
                out.push((self.column(m, comp).expect("admitted monomial"), c.clone()));
            }
        }
        out.sort_by_key(|(c, _)| *c);
        out
    }

    pub fn from_sparse(&self, v: &SparseVec) -> PolyVector {
        let mut entries = vec![Poly::zero(&self.ctx); self.rank];
        for (col, c) in v {
            let (m, comp) = self.label(*col);
            entries[comp].add_term(m.clone(), c.clone());
        }
        PolyVector::new(entries).expect("one context")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubmodulePresentation {
    ctx: Arc<RingContext>,
    rank: usize,
    generators: Vec<PolyVector>,
}

impl SubmodulePresentation {
    pub fn new(ctx: &Arc<RingContext>, rank: usize, generators: Vec<PolyVector>) -> Result<Self> {
        for g in &generators {
            if g.rank() != rank {
                return Err(Error::InvalidRing(format!("generator of rank {} in a rank {rank} module", g.rank())));
            }
            if g.ctx().is_some_and(|c| **c != **ctx) {
                return Err(Error::ContextMismatch);
            }
        }
        let generators = generators.into_iter().map(|g| g.map(|p| p.to_ctx(ctx))).collect();
        Ok(SubmodulePresentation { ctx: ctx.clone(), rank, generators })
    }

    pub fn ctx(&self) -> &Arc<RingContext> {
        &self.ctx
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn generators(&self) -> &[PolyVector] {
        &self.generators
    }

    /// The same generators in another context with the same variables.
    pub fn to_ctx(&self, ctx: &Arc<RingContext>) -> SubmodulePresentation {
        SubmodulePresentation {
            ctx: ctx.clone(),
            rank: self.rank,
            generators: self.generators.iter().map(|g| g.map(|p| p.to_ctx(ctx))).collect(),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct QuotientBasis {
    pub basis: Vec<(Monomial, usize)>,
    pub stabilized: bool,
    pub determinacy_exponent: Option<u32>,
}

impl QuotientBasis {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }
}

/// Row-reduced span of all monomial multiples of a presentation's generators.
#[derive(Debug, Clone)]
pub struct SubmoduleQuotient {
    space: JetSpace,
    echelon: Echelon,
    multiples: Vec<(usize, Monomial)>,
    basis_cols: Vec<usize>,
    basis: QuotientBasis,
}

impl SubmoduleQuotient {
    pub fn new(m: &SubmodulePresentation) -> Self {
        Self::build(m, false)
    }

    /// Like [`SubmoduleQuotient::new`] but records membership witnesses.
    pub fn with_witnesses(m: &SubmodulePresentation) -> Self {
        Self::build(m, true)
    }

    fn build(m: &SubmodulePresentation, witnesses: bool) -> Self {
        let space = JetSpace::new(&m.ctx, m.rank);
        let mut echelon = if witnesses { Echelon::with_witnesses() } else { Echelon::new() };
        let mut multiples = Vec::new();
        let one = Rational::one();
        for mono in space.monomials() {
            for (gi, g) in m.generators.iter().enumerate() {
                let prod = g.mul_term(mono, &one);
                if prod.is_zero() {
                    continue;
                }
                echelon.insert(&space.to_sparse(&prod));
                multiples.push((gi, mono.clone()));
            }
        }
        let basis_cols: Vec<usize> = (0..space.dim()).filter(|c| !echelon.is_pivot(*c)).collect();
        let determinacy_exponent = (0..=m.ctx.jet_order()).find(|&e| {
            space
                .monomials()
                .iter()
                .filter(|mono| mono.degree() == e)
                .all(|mono| (0..m.rank).all(|j| echelon.is_pivot(space.column(mono, j).expect("admitted"))))
        });
        let stabilized = m.rank == 0 || determinacy_exponent.is_some();
        let basis = QuotientBasis {
            basis: basis_cols.iter().map(|&c| (space.label(c).0.clone(), space.label(c).1)).collect(),
            stabilized,
            determinacy_exponent: if m.rank == 0 { Some(0) } else { determinacy_exponent },
        };
        SubmoduleQuotient { space, echelon, multiples, basis_cols, basis }
    }

    pub fn space(&self) -> &JetSpace {
        &self.space
    }

    pub fn basis(&self) -> &QuotientBasis {
        &self.basis
    }

    pub fn dimension(&self) -> usize {
        self.basis_cols.len()
    }

    pub fn contains(&self, v: &PolyVector) -> bool {
        self.echelon.contains(&self.space.to_sparse(v)).0
    }

    pub fn contains_sparse(&self, v: &SparseVec) -> bool {
        self.echelon.contains(v).0
    }

    pub fn reduce_sparse(&self, v: &SparseVec) -> SparseVec {
        self.echelon.reduce(v).remainder
    }

    /// Representative supported on the basis; requires stabilization.
    pub fn normal_form(&self, v: &PolyVector) -> Result<PolyVector> {
        if !self.basis.stabilized {
            return Err(Error::Unstabilized);
        }
        Ok(self.space.from_sparse(&self.reduce_sparse(&self.space.to_sparse(v))))
    }

    /// Coordinates of the class of `v` in basis order.
    pub fn coordinates(&self, v: &PolyVector) -> Vec<Rational> {
        self.coordinates_sparse(&self.space.to_sparse(v))
    }

    pub fn coordinates_sparse(&self, v: &SparseVec) -> Vec<Rational> {
        let rem = self.reduce_sparse(v);
        let pos: HashMap<usize, usize> = self.basis_cols.iter().enumerate().map(|(i, c)| (*c, i)).collect();
        let mut out = vec![Rational::zero(); self.basis_cols.len()];
        for (col, c) in rem {
            out[pos[&col]] = c;
        }
        out
    }

    pub fn basis_vector(&self, i: usize) -> PolyVector {
        self.space.from_sparse(&vec![(self.basis_cols[i], Rational::one())])
    }

    pub fn basis_columns(&self) -> &[usize] {
        &self.basis_cols
    }

    /// Coefficients cᵢ with Σ cᵢ·gᵢ = v, when `v` is in the submodule.
    /// Requires the quotient to have been built with witnesses.
    pub fn witness(&self, v: &PolyVector, num_generators: usize) -> Option<Vec<Poly>> {
        let (inside, w) = self.echelon.contains(&self.space.to_sparse(v));
        if !inside {
            return None;
        }
        let w = w.expect("quotient built with witnesses");
        let mut coeffs = vec![Poly::zero(self.space.ctx()); num_generators];
        for (idx, c) in w {
            let (gi, mono) = &self.multiples[idx];
            coeffs[*gi].add_term(mono.clone(), c);
        }
        Some(coeffs)
    }
}

pub fn quotient_basis(m: &SubmodulePresentation) -> QuotientBasis {
    SubmoduleQuotient::new(m).basis
}

pub fn normal_form(v: &PolyVector, m: &SubmodulePresentation, q: &QuotientBasis) -> Result<PolyVector> {
    if !q.stabilized {
        return Err(Error::Unstabilized);
    }
    SubmoduleQuotient::new(m).normal_form(v)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Membership {
    pub member: bool,
    pub witness: Option<Vec<Poly>>,
}

pub fn membership(v: &PolyVector, m: &SubmodulePresentation) -> Membership {
    let q = SubmoduleQuotient::with_witnesses(m);
    let v = v.map(|p| p.to_ctx(m.ctx()));
    let witness = q.witness(&v, m.generators.len());
    Membership { member: witness.is_some(), witness }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyzygyBasis {
    pub syzygies: Vec<PolyVector>,
    pub order_bound: u32,
}

/// Minimal generators of the module of relations among the generators of
/// `m`, computed over the ring truncated at `order_bound`: coefficients have
/// degree at most `order_bound` and relations hold modulo degree > `order_bound`.
pub fn syzygies(m: &SubmodulePresentation, order_bound: u32) -> SyzygyBasis {
    let ctx = m.ctx.with_jet_order(order_bound);
    let num = m.generators.len();
    if num == 0 {
        return SyzygyBasis { syzygies: Vec::new(), order_bound };
    }
    let gens: Vec<PolyVector> = m.generators.iter().map(|g| g.map(|p| p.to_ctx(&ctx))).collect();
    let target = JetSpace::new(&ctx, m.rank);
    let source = JetSpace::new(&ctx, num);
    let one = Rational::one();
    // Images of the source coordinate vectors x^α·eᵢ, indexed by source column.
    let mut images = vec![Vec::new(); source.dim()];
    for mono in source.monomials() {
        for (i, g) in gens.iter().enumerate() {
            let col = source.column(mono, i).expect("admitted");
            images[col] = target.to_sparse(&g.mul_term(mono, &one));
        }
    }
    let kernel: Vec<SparseVec> = crate::linalg::kernel(&images);
    let mut vectors: Vec<PolyVector> = kernel.iter().map(|k| source.from_sparse(k)).collect();
    vectors.sort_by_key(|v| (v.order(), v.max_degree(), v.entries().iter().map(Poly::num_terms).sum::<usize>()));

    // m·K spans the non-minimal part; keep elements of K independent modulo it.
    let mut span = Echelon::new();
    for v in &vectors {
        for i in 0..ctx.total_vars() {
            let prod = v.mul_term(&Monomial::var(ctx.total_vars(), i), &one);
            if !prod.is_zero() {
                span.insert(&source.to_sparse(&prod));
            }
        }
    }
    let mut syz = Vec::new();
    for v in vectors {
        if span.insert(&source.to_sparse(&v)).is_none() {
            syz.push(v);
        }
    }
    SyzygyBasis { syzygies: syz, order_bound }
}

/// Σ cᵢ·gᵢ.
pub fn combine(coeffs: &[Poly], gens: &[PolyVector]) -> PolyVector {
    let mut acc = PolyVector::zeros(coeffs[0].ctx(), gens[0].rank());
    for (c, g) in coeffs.iter().zip(gens) {
        if !c.is_zero() {
            acc = acc.add(&g.mul_poly(c));
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rat;

    fn ctx(names: &[&str], d: u32) -> Arc<RingContext> {
        RingContext::new(names.iter().map(|s| s.to_string()).collect(), d, None).unwrap()
    }

    fn single(c: &Arc<RingContext>, gens: Vec<Poly>) -> SubmodulePresentation {
        SubmodulePresentation::new(c, 1, gens.into_iter().map(|g| PolyVector::new(vec![g]).unwrap()).collect()).unwrap()
    }

    fn x_pow(c: &Arc<RingContext>, e: u16) -> Poly {
        Poly::term(c, Monomial(vec![e]), rat(1))
    }

    #[test]
    fn quotient_of_linear_ideal() {
        let c = ctx(&["x"], 5);
        let q = quotient_basis(&single(&c, vec![x_pow(&c, 1).scale(&rat(2))]));
        assert_eq!(q.basis, vec![(Monomial(vec![0]), 0)]);
        assert_eq!(q.determinacy_exponent, Some(1));
        assert!(q.stabilized);
    }

    #[test]
    fn quotient_of_square() {
        let c = ctx(&["x"], 5);
        let q = quotient_basis(&single(&c, vec![x_pow(&c, 2).scale(&rat(3))]));
        assert_eq!(q.dimension(), 2);
        assert_eq!(q.determinacy_exponent, Some(2));
        let whole = quotient_basis(&single(&c, vec![Poly::one(&c)]));
        assert_eq!(whole.dimension(), 0);
    }

    #[test]
    fn empty_presentation_is_unstabilized() {
        let c = ctx(&["x"], 3);
        let q = quotient_basis(&SubmodulePresentation::new(&c, 1, vec![]).unwrap());
        assert_eq!(q.dimension(), 4);
        assert!(!q.stabilized);
    }

    #[test]
    fn normal_forms() {
        let c = ctx(&["x"], 5);
        let m = single(&c, vec![x_pow(&c, 2).scale(&rat(3))]);
        let q = quotient_basis(&m);
        let v = PolyVector::new(vec![x_pow(&c, 2)]).unwrap();
        assert!(normal_form(&v, &m, &q).unwrap().is_zero());
        let b = PolyVector::new(vec![x_pow(&c, 1)]).unwrap();
        assert_eq!(normal_form(&b, &m, &q).unwrap(), b);
        let empty = SubmodulePresentation::new(&c, 1, vec![]).unwrap();
        let qe = quotient_basis(&empty);
        assert_eq!(normal_form(&b, &empty, &qe), Err(Error::Unstabilized));
    }

    #[test]
    fn memberships() {
        let c = ctx(&["x"], 5);
        let m = single(&c, vec![x_pow(&c, 2).scale(&rat(3))]);
        let w = membership(&PolyVector::new(vec![x_pow(&c, 2)]).unwrap(), &m);
        assert!(w.member);
        assert_eq!(w.witness.unwrap()[0], Poly::constant(&c, crate::ring::rat_frac(1, 3)));
        let m2 = single(&c, vec![x_pow(&c, 2)]);
        assert!(!membership(&PolyVector::new(vec![x_pow(&c, 1)]).unwrap(), &m2).member);
    }

    #[test]
    fn euler_membership_in_jacobian() {
        let c = ctx(&["x", "y"], 8);
        let x = Poly::var(&c, 0);
        let y = Poly::var(&c, 1);
        let f = &(&(&x * &x) * &x) - &(&y * &y);
        let m = single(&c, vec![crate::ring::partial(&f, 0).unwrap(), crate::ring::partial(&f, 1).unwrap()]);
        let w = membership(&PolyVector::new(vec![f.scale(&rat(6))]).unwrap(), &m);
        assert!(w.member);
        let w = w.witness.unwrap();
        assert_eq!(w, vec![x.scale(&rat(2)), y.scale(&rat(3))]);
    }

    #[test]
    fn koszul_and_units() {
        let c = ctx(&["x", "y"], 6);
        let x = Poly::var(&c, 0);
        let y = Poly::var(&c, 1);
        let m = single(&c, vec![x.clone(), y.clone()]);
        let s = syzygies(&m, 4);
        let koszul = PolyVector::new(vec![y.clone(), -&x]).unwrap();
        let module = SubmodulePresentation::new(&c.with_jet_order(4), 2, s.syzygies.clone()).unwrap();
        assert!(membership(&koszul.map(|p| p.to_ctx(module.ctx())), &module).member);
        assert!(s.syzygies.iter().all(|v| v.order() >= Some(1)));
        assert_eq!(s.syzygies.iter().filter(|v| v.order() == Some(1)).count(), 1);
        let unit = single(&c, vec![Poly::one(&c)]);
        assert!(syzygies(&unit, 4).syzygies.is_empty());
    }

    #[test]
    fn euler_relation_is_a_syzygy() {
        let c = ctx(&["x", "y"], 8);
        let x = Poly::var(&c, 0);
        let y = Poly::var(&c, 1);
        let f = &(&(&x * &x) * &x) - &(&y * &y);
        let gens = vec![f.clone(), crate::ring::partial(&f, 0).unwrap(), crate::ring::partial(&f, 1).unwrap()];
        let m = single(&c, gens.clone());
        let s = syzygies(&m, 6);
        let bc = c.with_jet_order(6);
        let euler = PolyVector::new(vec![
            Poly::constant(&bc, rat(-6)),
            x.to_ctx(&bc).scale(&rat(2)),
            y.to_ctx(&bc).scale(&rat(3)),
        ])
        .unwrap();
        let module = SubmodulePresentation::new(&bc, 3, s.syzygies.clone()).unwrap();
        assert!(membership(&euler, &module).member);
        let gens: Vec<PolyVector> = gens.iter().map(|g| PolyVector::new(vec![g.to_ctx(&bc)]).unwrap()).collect();
        for z in &s.syzygies {
            assert!(combine(z.entries(), &gens).is_zero());
        }
    }
}
