//! Artinian quotients `ℚ[s]/I` of a truncated parameter ring.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::linalg::{sparse_from_map, Echelon, SparseVec};
use crate::ring::{monomials_of_degree, Monomial, Poly, PolyVector, Rational, RingContext};

/// `ℚ[s_1..s_m]/I` with `(s)^{order+1} ⊆ I`, held as the row-reduced span of
/// `I` among the monomials of degree at most `order`.
#[derive(Debug, Clone)]
pub struct ArtinianBase {
    num_params: usize,
    order: u32,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    echelon: Echelon,
    standard: Vec<usize>,
    nf: Vec<SparseVec>,
}

impl ArtinianBase {
    fn empty(num_params: usize, order: u32) -> Self {
        let mut monomials = Vec::new();
        for deg in 0..=order {
            let mut block = Vec::new();
            if num_params == 0 {
                if deg == 0 {
                    block.push(Vec::new());
                }
            } else {
                monomials_of_degree(num_params, deg, &mut vec![0; num_params], 0, &mut block);
            }
            monomials.extend(block.into_iter().map(Monomial));
        }
        monomials.sort();
        let index = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        ArtinianBase {
            num_params,
            order,
            monomials,
            index,
            echelon: Echelon::new(),
            standard: Vec::new(),
            nf: Vec::new(),
        }
    }

    /// `ℚ[s]/(s)^{order+1}`.
    pub fn truncated(num_params: usize, order: u32) -> Self {
        let mut a = Self::empty(num_params, order);
        a.finish();
        a
    }

    /// The residue field ℚ.
    pub fn point(num_params: usize) -> Self {
        Self::truncated(num_params, 0)
    }

    /// `ℚ[s]/((s_j)_{j≠i}, s_i²)`.
    pub fn double_point(num_params: usize, i: usize) -> Self {
        let mut gens = Vec::new();
        for j in 0..num_params {
            if j != i {
                gens.push(vec![(Monomial::var(num_params, j), Rational::one())]);
            }
        }
        Self::from_generators(num_params, 1, &gens)
    }

    /// The quotient by the ideal generated by `gens` (and `(s)^{order+1}`).
    pub fn from_generators(num_params: usize, order: u32, gens: &[Vec<(Monomial, Rational)>]) -> Self {
        let mut a = Self::empty(num_params, order);
        let vectors: Vec<SparseVec> = gens.iter().map(|g| a.vector(g)).collect();
        let monos = a.monomials.clone();
        for v in &vectors {
            for m in &monos {
                let prod = a.shift(v, m);
                if !prod.is_empty() {
                    a.echelon.insert(&prod);
                }
            }
        }
        a.finish();
        a
    }

    /// The quotient whose ideal has exactly the given ℚ-span; the caller
    /// guarantees closure under multiplication.
    pub fn from_span(num_params: usize, order: u32, span: &[SparseVec]) -> Self {
        let mut a = Self::empty(num_params, order);
        for v in span {
            a.echelon.insert(v);
        }
        a.finish();
        a
    }

    fn finish(&mut self) {
        self.standard = (0..self.monomials.len()).filter(|&i| !self.echelon.is_pivot(i)).collect();
        self.nf =
            (0..self.monomials.len()).map(|i| self.echelon.reduce(&vec![(i, Rational::one())]).remainder).collect();
    }

    /// Adds elements to the ideal; they must keep it closed under multiplication.
    pub fn with_span(&self, extra: &[SparseVec]) -> Self {
        let mut a = self.clone();
        for v in extra {
            a.echelon.insert(v);
        }
        a.finish();
        a
    }

    /// `ℚ[s]/(𝔪·I + (s)^{order+2})`: the largest small extension of `self`
    /// one order up.
    pub fn small_extension_cover(&self) -> Self {
        let order = self.order + 1;
        let mut a = Self::empty(self.num_params, order);
        for (i, m) in self.monomials.iter().enumerate() {
            if !self.echelon.is_pivot(i) {
                continue;
            }
            let mut elem: Vec<(Monomial, Rational)> = vec![(m.clone(), Rational::one())];
            for (j, c) in &self.nf[i] {
                elem.push((self.monomials[*j].clone(), -c.clone()));
            }
            for p in 0..self.num_params {
                let var = Monomial::var(self.num_params, p);
                let shifted: Vec<(Monomial, Rational)> = elem.iter().map(|(m, c)| (m.mul(&var), c.clone())).collect();
                let v = a.vector(&shifted);
                if !v.is_empty() {
                    a.echelon.insert(&v);
                }
            }
        }
        a.finish();
        a
    }

    pub fn num_params(&self) -> usize {
        self.num_params
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.standard.len()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn monomial_index(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn standard(&self) -> &[usize] {
        &self.standard
    }

    pub fn standard_monomials(&self) -> Vec<Monomial> {
        self.standard.iter().map(|&i| self.monomials[i].clone()).collect()
    }

    pub fn is_standard(&self, m: &Monomial) -> bool {
        self.monomial_index(m).is_some_and(|i| !self.echelon.is_pivot(i))
    }

    /// Normal form of a monomial (zero beyond the order).
    pub fn normal_form_of(&self, m: &Monomial) -> &[(usize, Rational)] {
        match self.monomial_index(m) {
            Some(i) => &self.nf[i],
            None => &[],
        }
    }

    /// Sparse vector of an element; terms beyond the order are dropped.
    pub fn vector(&self, terms: &[(Monomial, Rational)]) -> SparseVec {
        let mut map = BTreeMap::new();
        for (m, c) in terms {
            if let Some(i) = self.monomial_index(m) {
                *map.entry(i).or_insert_with(Rational::zero) += c;
            }
        }
        sparse_from_map(map)
    }

    fn shift(&self, v: &SparseVec, m: &Monomial) -> SparseVec {
        let terms: Vec<(Monomial, Rational)> = v.iter().map(|(i, c)| (self.monomials[*i].mul(m), c.clone())).collect();
        self.vector(&terms)
    }

    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        self.echelon.reduce(v).remainder
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.echelon.contains(v).0
    }

    /// Whether two quotients of the same parameter ring have the same ideal.
    pub fn same_ideal(&self, other: &ArtinianBase) -> bool {
        self.num_params == other.num_params
            && self.order == other.order
            && self.echelon.rank() == other.echelon.rank()
            && self.ideal_basis().iter().all(|v| other.contains(v))
    }

    /// A ℚ-basis of the ideal: `s^β − NF(s^β)` over the non-standard β.
    pub fn ideal_basis(&self) -> Vec<SparseVec> {
        (0..self.monomials.len()).filter(|&i| self.echelon.is_pivot(i)).map(|i| self.leading_element(i)).collect()
    }

    fn leading_element(&self, i: usize) -> SparseVec {
        let mut v = vec![(i, Rational::one())];
        v.extend(self.nf[i].iter().map(|(j, c)| (*j, -c.clone())));
        v.sort_by_key(|(j, _)| *j);
        v
    }

    /// Canonical generators `s^β − NF(s^β)` over the minimal non-standard β
    /// of degree at most the order (the ideal also contains `(s)^{order+1}`).
    pub fn ideal_generators(&self) -> Vec<SparseVec> {
        let pivots: Vec<usize> = (0..self.monomials.len()).filter(|&i| self.echelon.is_pivot(i)).collect();
        pivots
            .iter()
            .filter(|&&i| {
                let m = &self.monomials[i];
                !pivots.iter().any(|&j| j != i && self.monomials[j].divides(m))
            })
            .map(|&i| self.leading_element(i))
            .collect()
    }

    /// Number of standard monomials of degree one: the embedding dimension.
    pub fn tangent_dim(&self) -> usize {
        self.standard.iter().filter(|&&i| self.monomials[i].degree() == 1).count()
    }

    /// Reduces the parameter part of every term of a polynomial over a total
    /// context whose parameter block matches this base.
    pub fn reduce_poly(&self, p: &Poly) -> Poly {
        let n = p.ctx().num_vars();
        let mut out = Poly::zero(p.ctx());
        for (m, c) in p.terms() {
            let s = Monomial(m.param_part(n));
            if let Some(i) = self.monomial_index(&s) {
                for (j, v) in &self.nf[i] {
                    let mut e = m.0[..n].to_vec();
                    e.extend_from_slice(&self.monomials[*j].0);
                    out.add_term(Monomial(e), c * v);
                }
            }
        }
        out
    }

    pub fn reduce_vector(&self, v: &PolyVector) -> PolyVector {
        v.map(|p| self.reduce_poly(p))
    }

    /// A base element as a polynomial over `total` (no space variables).
    pub fn to_poly(&self, v: &SparseVec, total: &Arc<RingContext>) -> Poly {
        let n = total.num_vars();
        Poly::from_terms(
            total,
            v.iter().map(|(i, c)| {
                let mut e = vec![0u16; n];
                e.extend_from_slice(&self.monomials[*i].0);
                (Monomial(e), c.clone())
            }),
        )
    }

    /// The base element of a polynomial without space variables.
    pub fn from_poly(&self, p: &Poly) -> SparseVec {
        let n = p.ctx().num_vars();
        let terms: Vec<(Monomial, Rational)> = p
            .terms()
            .filter(|(m, _)| m.x_degree(n) == 0)
            .map(|(m, c)| (Monomial(m.param_part(n)), c.clone()))
            .collect();
        self.vector(&terms)
    }
}

/// Splits a reduced polynomial vector by parameter monomial: `v = Σ_b s^b·u_b`
/// with `u_b` over the fibre context.
pub fn split_by_param(v: &PolyVector, fiber: &Arc<RingContext>) -> BTreeMap<Monomial, PolyVector> {
    let ctx = v.ctx().expect("nonempty").clone();
    let n = ctx.num_vars();
    let k = v.rank();
    let mut out: BTreeMap<Monomial, Vec<Poly>> = BTreeMap::new();
    for (j, p) in v.entries().iter().enumerate() {
        for (m, c) in p.terms() {
            let entry = out.entry(Monomial(m.param_part(n))).or_insert_with(|| vec![Poly::zero(fiber); k]);
            entry[j].add_term(Monomial(m.0[..n].to_vec()), c.clone());
        }
    }
    out.into_iter().map(|(m, e)| (m, PolyVector::new(e).expect("one context"))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rat;

    fn mono(e: &[u16]) -> Monomial {
        Monomial(e.to_vec())
    }

    #[test]
    fn truncated_and_points() {
        assert_eq!(ArtinianBase::truncated(2, 2).dim(), 6);
        assert_eq!(ArtinianBase::point(3).dim(), 1);
        let d = ArtinianBase::double_point(3, 1);
        assert_eq!(d.standard_monomials(), vec![mono(&[0, 0, 0]), mono(&[0, 1, 0])]);
    }

    #[test]
    fn normal_forms_follow_the_local_order() {
        let a = ArtinianBase::from_generators(2, 3, &[vec![(mono(&[1, 0]), rat(1)), (mono(&[0, 2]), rat(-1))]]);
        assert_eq!(a.standard_monomials(), vec![mono(&[0, 0]), mono(&[0, 1]), mono(&[0, 2]), mono(&[0, 3])]);
        let nf = a.normal_form_of(&mono(&[1, 1]));
        assert_eq!(nf, &[(a.monomial_index(&mono(&[0, 3])).unwrap(), rat(1))]);
        assert_eq!(a.ideal_generators().len(), 1);
    }

    #[test]
    fn small_extension_cover() {
        let a = ArtinianBase::from_generators(2, 1, &[vec![(mono(&[1, 0]), rat(1))]]);
        let cover = a.small_extension_cover();
        assert_eq!(cover.standard_monomials(), vec![mono(&[0, 0]), mono(&[1, 0]), mono(&[0, 1]), mono(&[0, 2])]);
        assert!(!cover.same_ideal(&ArtinianBase::from_generators(2, 2, &[vec![(mono(&[1, 0]), rat(1))]])));
    }
}
