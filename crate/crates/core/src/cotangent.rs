//! T⁰ and T¹ of isolated complete intersection singularities, with and
//! without section, and the invariants μ, τ, τˢ.

use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::jet::{combine, syzygies, QuotientBasis, SubmodulePresentation, SubmoduleQuotient};
use crate::linalg::{rank, SparseVec};
use crate::ring::{
    euler_coefficients, is_quasihomogeneous, partial, rat, weighted_degree, Derivation, Monomial, Poly, PolyVector,
    RingContext,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    Plain,
    Section,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Hypersurface,
    Icis,
}

/// Defining equations `f = (f_1..f_k)` of a germ with finite-dimensional T¹.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularityInput {
    ctx: Arc<RingContext>,
    f: PolyVector,
    t1: QuotientBasis,
}

impl SingularityInput {
    pub fn new(ctx: &Arc<RingContext>, equations: Vec<Poly>) -> Result<Self> {
        if ctx.num_params() > 0 {
            return Err(Error::InvalidInput("the ring of a singularity has no parameters".into()));
        }
        let k = equations.len();
        if k == 0 {
            return Err(Error::InvalidInput("at least one equation is required".into()));
        }
        if k > ctx.num_vars() {
            return Err(Error::TooManyEquations { equations: k, variables: ctx.num_vars() });
        }
        for (i, f) in equations.iter().enumerate() {
            if **f.ctx() != **ctx {
                return Err(Error::ContextMismatch);
            }
            if !f.constant_term().is_zero() {
                return Err(Error::InvalidInput(format!("equation f{} has a nonzero constant term", i + 1)));
            }
        }
        let f = PolyVector::new(equations.into_iter().map(|p| p.to_ctx(ctx)).collect())?;
        let mut s = SingularityInput { ctx: ctx.clone(), f, t1: QuotientBasis::default() };
        let t1 = SubmoduleQuotient::new(&s.t1_presentation(Variant::Plain)).basis().clone();
        if !t1.stabilized {
            return Err(insufficient("the T1 quotient", ctx));
        }
        s.t1 = t1;
        Ok(s)
    }

    pub fn ctx(&self) -> &Arc<RingContext> {
        &self.ctx
    }

    pub fn f(&self) -> &PolyVector {
        &self.f
    }

    pub fn n(&self) -> usize {
        self.ctx.num_vars()
    }

    pub fn k(&self) -> usize {
        self.f.rank()
    }

    pub fn kind(&self) -> Kind {
        if self.k() == 1 {
            Kind::Hypersurface
        } else {
            Kind::Icis
        }
    }

    /// `J[i][l] = ∂f_i/∂x_l`.
    pub fn jacobian(&self) -> Vec<Vec<Poly>> {
        jacobian_of(&self.f, self.n())
    }

    /// The column ∂f/∂x_l as a vector of rank k.
    pub fn jacobian_column(&self, l: usize) -> PolyVector {
        PolyVector::new(self.f.entries().iter().map(|p| partial(p, l).expect("space variable")).collect())
            .expect("one context")
    }

    /// Generators `f_i·e_j`, in the order j-major then i.
    pub fn f_multiples(&self) -> Vec<PolyVector> {
        let k = self.k();
        let mut out = Vec::with_capacity(k * k);
        for j in 0..k {
            for i in 0..k {
                let mut e = PolyVector::zeros(&self.ctx, k).into_entries();
                e[j] = self.f.entries()[i].clone();
                out.push(PolyVector::new(e).expect("one context"));
            }
        }
        out
    }

    /// `(f_i e_j) + (J columns)` resp. `(f_i e_j) + (x_l·J columns)` in R^k.
    pub fn t1_presentation(&self, variant: Variant) -> SubmodulePresentation {
        let mut gens = self.f_multiples();
        match variant {
            Variant::Plain => gens.extend((0..self.n()).map(|l| self.jacobian_column(l))),
            Variant::Section => {
                for l in 0..self.n() {
                    let x = Poly::var(&self.ctx, l);
                    for i in 0..self.n() {
                        gens.push(self.jacobian_column(i).mul_poly(&x));
                    }
                }
            }
        }
        SubmodulePresentation::new(&self.ctx, self.k(), gens).expect("consistent generators")
    }

    pub fn weights_degrees(&self) -> Option<Vec<u32>> {
        is_quasihomogeneous(&self.f, &self.ctx)
    }
}

pub(crate) fn jacobian_of(f: &PolyVector, n: usize) -> Vec<Vec<Poly>> {
    f.entries().iter().map(|p| (0..n).map(|l| p.derivative(l).expect("space variable")).collect()).collect()
}

pub(crate) fn insufficient(what: &str, ctx: &RingContext) -> Error {
    Error::InsufficientJet {
        what: what.to_string(),
        jet_order: ctx.jet_order(),
        suggested: (2 * ctx.jet_order()).max(ctx.jet_order() + 4),
    }
}

fn stabilized_quotient(m: &SubmodulePresentation, what: &str) -> Result<SubmoduleQuotient> {
    let q = SubmoduleQuotient::new(m);
    if q.basis().stabilized {
        Ok(q)
    } else {
        Err(insufficient(what, m.ctx()))
    }
}

fn require_hypersurface(s: &SingularityInput) -> Result<()> {
    if s.k() == 1 {
        Ok(())
    } else {
        Err(Error::NotHypersurface(s.k()))
    }
}

fn ideal(ctx: &Arc<RingContext>, gens: Vec<Poly>) -> SubmodulePresentation {
    let gens = gens.into_iter().map(|g| PolyVector::new(vec![g]).expect("single")).collect();
    SubmodulePresentation::new(ctx, 1, gens).expect("rank one")
}

fn jacobian_ideal(s: &SingularityInput) -> Vec<Poly> {
    (0..s.n()).map(|l| partial(&s.f.entries()[0], l).expect("space variable")).collect()
}

fn m_times(s: &SingularityInput, gens: &[Poly]) -> Vec<Poly> {
    let mut out = Vec::new();
    for l in 0..s.n() {
        let x = Poly::var(&s.ctx, l);
        out.extend(gens.iter().map(|g| &x * g));
    }
    out
}

/// dim R/J(f) for a hypersurface.
pub fn milnor_number(s: &SingularityInput) -> Result<usize> {
    require_hypersurface(s)?;
    Ok(stabilized_quotient(&ideal(&s.ctx, jacobian_ideal(s)), "the Milnor algebra")?.dimension())
}

pub fn t1_basis(s: &SingularityInput) -> QuotientBasis {
    s.t1.clone()
}

pub fn tjurina_number(s: &SingularityInput) -> usize {
    s.t1.dimension()
}

/// Basis of `m^k/(mJ(f) + (f_i e_j))`: the positive-degree part of the quotient
/// of R^k by the section presentation.
pub fn t1_section_basis(s: &SingularityInput) -> Result<QuotientBasis> {
    let full = section_fiber_basis(s)?;
    let units = full.basis.iter().filter(|(m, _)| m.is_one()).count();
    if units != s.k() {
        return Err(Error::Internal("unit vectors are dependent modulo the section presentation".into()));
    }
    Ok(QuotientBasis {
        basis: full.basis.into_iter().filter(|(m, _)| !m.is_one()).collect(),
        stabilized: full.stabilized,
        determinacy_exponent: full.determinacy_exponent,
    })
}

/// Basis of `R^k/(mJ(f) + (f_i e_j))` including the unit vectors.
pub fn section_fiber_basis(s: &SingularityInput) -> Result<QuotientBasis> {
    Ok(stabilized_quotient(&s.t1_presentation(Variant::Section), "the section T1 quotient")?.basis().clone())
}

pub fn tjurina_section_number(s: &SingularityInput) -> Result<usize> {
    Ok(t1_section_basis(s)?.dimension())
}

/// Combined generator list whose syzygies give T⁰: derivation columns first,
/// then the `f_i e_j`.
pub(crate) fn t0_matrix(s: &SingularityInput, variant: Variant) -> (Vec<PolyVector>, usize) {
    let mut gens = Vec::new();
    match variant {
        Variant::Plain => gens.extend((0..s.n()).map(|l| s.jacobian_column(l))),
        Variant::Section => {
            for l in 0..s.n() {
                let x = Poly::var(&s.ctx, l);
                for i in 0..s.n() {
                    gens.push(s.jacobian_column(i).mul_poly(&x));
                }
            }
        }
    }
    let offset = gens.len();
    gens.extend(s.f_multiples());
    (gens, offset)
}

/// Reads a derivation off a syzygy of the T⁰ matrix.
pub(crate) fn derivation_from_syzygy(s: &SingularityInput, variant: Variant, syz: &PolyVector) -> Derivation {
    let (n, k) = (s.n(), s.k());
    let c = syz.entries();
    let ctx = c[0].ctx().clone();
    let (coefficients, offset) = match variant {
        Variant::Plain => (c[..n].to_vec(), n),
        Variant::Section => {
            let g = (0..n)
                .map(|i| (0..n).fold(Poly::zero(&ctx), |acc, l| &acc + &(&Poly::var(&ctx, l) * &c[l * n + i])))
                .collect();
            (g, n * n)
        }
    };
    let multiplier = (0..k).map(|j| (0..k).map(|i| -&c[offset + j * k + i]).collect()).collect();
    Derivation::new(coefficients, multiplier)
}

/// Generators of T⁰(X₀) (plain) resp. of the derivations with coefficients in
/// 𝔪 (section), as derivations with multiplier; zero derivations are omitted.
pub fn t0_generators(s: &SingularityInput, variant: Variant) -> Vec<Derivation> {
    let (gens, _) = t0_matrix(s, variant);
    let m = SubmodulePresentation::new(&s.ctx, s.k(), gens).expect("consistent generators");
    syzygies(&m, s.ctx.jet_order())
        .syzygies
        .iter()
        .map(|z| derivation_from_syzygy(s, variant, z))
        .filter(|d| !d.is_zero())
        .collect()
}

pub(crate) fn determinant(m: &[Vec<Poly>], ctx: &Arc<RingContext>) -> Poly {
    match m.len() {
        0 => Poly::one(ctx),
        1 => m[0][0].clone(),
        size => {
            let mut acc = Poly::zero(ctx);
            for a in 0..size {
                if m[0][a].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Poly>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|(c, _)| *c != a).map(|(_, p)| p.clone()).collect())
                    .collect();
                let term = &m[0][a] * &determinant(&minor, ctx);
                acc = if a % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            acc
        }
    }
}

fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, size, &mut Vec::new(), &mut out);
    out
}

/// Cofactor expansions along the symbolic row (∂/∂x_{i₀}, …, ∂/∂x_{i_k}) over
/// the partials of f, one per (k+1)-subset of the variables.
pub fn hamiltonian_derivations(s: &SingularityInput) -> Vec<Derivation> {
    let (n, k) = (s.n(), s.k());
    let jac = s.jacobian();
    let zero_h = vec![vec![Poly::zero(&s.ctx); k]; k];
    subsets(n, k + 1)
        .into_iter()
        .map(|idx| {
            let mut coefficients = vec![Poly::zero(&s.ctx); n];
            for (a, &var) in idx.iter().enumerate() {
                let minor: Vec<Vec<Poly>> = jac
                    .iter()
                    .map(|row| idx.iter().enumerate().filter(|(b, _)| *b != a).map(|(_, &l)| row[l].clone()).collect())
                    .collect();
                let det = determinant(&minor, &s.ctx);
                coefficients[var] = if a % 2 == 0 { det } else { -&det };
            }
            Derivation::new(coefficients, zero_h.clone())
        })
        .collect()
}

/// Σ wᵢxᵢ∂/∂xᵢ.
pub fn euler_derivation(ctx: &Arc<RingContext>) -> Result<Vec<Poly>> {
    euler_coefficients(ctx)
}

/// The Euler derivation paired with `h = diag(d_1..d_k)`.
pub fn euler_with_multiplier(s: &SingularityInput) -> Result<Derivation> {
    let coefficients = euler_derivation(&s.ctx)?;
    let degrees = s.weights_degrees().ok_or(Error::NotQuasihomogeneous)?;
    let k = s.k();
    let multiplier = (0..k)
        .map(|j| {
            (0..k)
                .map(|i| if i == j { Poly::constant(&s.ctx, rat(degrees[j] as i64)) } else { Poly::zero(&s.ctx) })
                .collect()
        })
        .collect();
    Ok(Derivation::new(coefficients, multiplier))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedClass {
    pub monomial: Monomial,
    pub component: usize,
    pub eigenvalue: i64,
}

/// Labels each basis element x^α·e_j with ν = wdeg(x^α) − d_j.
pub fn t1_grading(s: &SingularityInput, basis: &QuotientBasis) -> Result<Vec<GradedClass>> {
    s.ctx.weights().ok_or(Error::NoWeights)?;
    let degrees = s.weights_degrees().ok_or(Error::NotQuasihomogeneous)?;
    basis
        .basis
        .iter()
        .map(|(m, j)| {
            Ok(GradedClass {
                monomial: m.clone(),
                component: *j,
                eigenvalue: weighted_degree(m, &s.ctx)? as i64 - degrees[*j] as i64,
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BulletDims {
    pub plain: usize,
    pub section: usize,
    /// dim R/(f, (x)J(f)).
    pub f_and_mj: usize,
    /// dim R/(x)J(f).
    pub mj: usize,
}

/// Kernel dimensions of multiplication by f on R/J(f), into R/J(f) and into R/(x)J(f).
pub fn t0_bullet_dims(s: &SingularityInput) -> Result<BulletDims> {
    require_hypersurface(s)?;
    let f = &s.f.entries()[0];
    let j = jacobian_ideal(s);
    let mj = m_times(s, &j);
    let qj = stabilized_quotient(&ideal(&s.ctx, j), "the Milnor algebra")?;
    let qmj = stabilized_quotient(&ideal(&s.ctx, mj.clone()), "R/(x)J(f)")?;
    let mut with_f = mj;
    with_f.push(f.clone());
    let qfmj = stabilized_quotient(&ideal(&s.ctx, with_f), "R/(f,(x)J(f))")?;
    let kernel_dim = |target: &SubmoduleQuotient| -> usize {
        let images: Vec<SparseVec> = (0..qj.dimension())
            .map(|i| {
                let b = qj.basis_vector(i);
                let fb = b.mul_poly(f);
                target.reduce_sparse(&target.space().to_sparse(&fb))
            })
            .collect();
        qj.dimension() - rank(&images)
    };
    Ok(BulletDims {
        plain: kernel_dim(&qj),
        section: kernel_dim(&qmj),
        f_and_mj: qfmj.dimension(),
        mj: qmj.dimension(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CotangentReport {
    pub milnor: Option<usize>,
    pub tjurina: usize,
    pub tjurina_section: usize,
    pub t1_basis: QuotientBasis,
    pub t1_section_basis: QuotientBasis,
    pub t0_generators: Vec<Derivation>,
    pub t0_bullet_dim: Option<usize>,
    pub t0_bullet_section_dim: Option<usize>,
    /// Whether τˢ = τ + n − k held for this input.
    pub section_formula_holds: bool,
}

pub fn cotangent_report(s: &SingularityInput) -> Result<CotangentReport> {
    let hyper = s.kind() == Kind::Hypersurface;
    let milnor = if hyper { Some(milnor_number(s)?) } else { None };
    let t1_section = t1_section_basis(s)?;
    let bullet = if hyper { Some(t0_bullet_dims(s)?) } else { None };
    let tjurina = tjurina_number(s);
    let tjurina_section = t1_section.dimension();
    Ok(CotangentReport {
        milnor,
        tjurina,
        tjurina_section,
        t1_basis: t1_basis(s),
        t1_section_basis: t1_section,
        t0_generators: t0_generators(s, Variant::Plain),
        t0_bullet_dim: bullet.map(|b| b.plain),
        t0_bullet_section_dim: bullet.map(|b| b.section),
        section_formula_holds: tjurina_section + s.k() == tjurina + s.n(),
    })
}

/// Whether every vector of `a` lies in the submodule generated by `b`
/// (both over the same context), optionally modulo 𝔪^{t+1}.
pub fn generates_within(a: &[PolyVector], b: &[PolyVector], rank: usize, ctx: &Arc<RingContext>) -> bool {
    let m = SubmodulePresentation::new(ctx, rank, b.to_vec()).expect("consistent generators");
    let q = SubmoduleQuotient::new(&m);
    a.iter().all(|v| q.contains(&v.map(|p| p.to_ctx(ctx))))
}

/// Coefficient vectors (g_1..g_n) of derivations.
pub fn coefficient_vectors(ds: &[Derivation]) -> Vec<PolyVector> {
    ds.iter().map(|d| PolyVector::new(d.coefficients.clone()).expect("one context")).collect()
}

/// The trivial derivations f_i·∂/∂x_l, as coefficient vectors.
pub fn trivial_coefficient_vectors(s: &SingularityInput) -> Vec<PolyVector> {
    let mut out = Vec::new();
    for fi in s.f.entries() {
        for l in 0..s.n() {
            let mut e = PolyVector::zeros(&s.ctx, s.n()).into_entries();
            e[l] = fi.clone();
            out.push(PolyVector::new(e).expect("one context"));
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorIdentity {
    /// Comparison happens modulo 𝔪^{truncation+1}.
    pub truncation: u32,
    /// Euler and Hamiltonians lie in the span of the computed T⁰ generators.
    pub known_in_computed: bool,
    /// Computed T⁰ generators lie in the span of Euler and Hamiltonians.
    pub computed_in_known: bool,
}

impl GeneratorIdentity {
    pub fn holds(&self) -> bool {
        self.known_in_computed && self.computed_in_known
    }
}

/// Compares T⁰ of quasihomogeneous input with {Euler, Hamiltonians}, both
/// modulo the trivial derivations f_i·∂/∂x_l, at the largest truncation t
/// with t·w_max + deg f ≤ d·w_min.
pub fn generator_identity(s: &SingularityInput) -> Result<GeneratorIdentity> {
    let degrees = s.weights_degrees().ok_or(Error::NotQuasihomogeneous)?;
    let w = s.ctx.weights().ok_or(Error::NoWeights)?;
    let (wmin, wmax) = (*w.iter().min().expect("variables") as i64, *w.iter().max().expect("variables") as i64);
    let dmax = *degrees.iter().max().expect("equations") as i64;
    let d = s.ctx.jet_order();
    let t = (d as i64 * wmin - dmax).div_euclid(wmax);
    if t < 1 {
        return Err(insufficient("the graded T0 comparison", &s.ctx));
    }
    let ctx = s.ctx.with_jet_order(t as u32);
    let trivial = trivial_coefficient_vectors(s);
    let mut known = vec![euler_with_multiplier(s)?];
    known.extend(hamiltonian_derivations(s));
    let mut known = coefficient_vectors(&known);
    let mut computed = coefficient_vectors(&t0_generators(s, Variant::Plain));
    known.extend(trivial.iter().cloned());
    computed.extend(trivial);
    let cut = |v: &[PolyVector]| v.iter().map(|g| g.map(|p| p.to_ctx(&ctx))).collect::<Vec<_>>();
    let (known, computed) = (cut(&known), cut(&computed));
    Ok(GeneratorIdentity {
        truncation: t as u32,
        known_in_computed: generates_within(&known, &computed, s.n(), &ctx),
        computed_in_known: generates_within(&computed, &known, s.n(), &ctx),
    })
}

/// Σ cᵢ·gᵢ for a syzygy against the T⁰ matrix, exposed for verification.
pub fn t0_matrix_product(s: &SingularityInput, variant: Variant, syz: &PolyVector) -> PolyVector {
    let (gens, _) = t0_matrix(s, variant);
    let ctx = syz.ctx().expect("nonempty").clone();
    let gens: Vec<PolyVector> = gens.iter().map(|g| g.map(|p| p.to_ctx(&ctx))).collect();
    combine(syz.entries(), &gens)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn input(
        names: &[&str],
        weights: Option<Vec<u32>>,
        d: u32,
        build: impl Fn(&[Poly]) -> Vec<Poly>,
    ) -> SingularityInput {
        let ctx = RingContext::new(names.iter().map(|s| s.to_string()).collect(), d, weights).unwrap();
        let vars: Vec<Poly> = (0..names.len()).map(|i| Poly::var(&ctx, i)).collect();
        SingularityInput::new(&ctx, build(&vars)).unwrap()
    }

    fn pow(p: &Poly, e: u32) -> Poly {
        (0..e).fold(Poly::one(p.ctx()), |acc, _| &acc * p)
    }

    fn cusp() -> SingularityInput {
        input(&["x", "y"], Some(vec![2, 3]), 10, |v| vec![&pow(&v[0], 3) - &pow(&v[1], 2)])
    }

    #[test]
    fn milnor_numbers() {
        assert_eq!(milnor_number(&input(&["x"], None, 6, |v| vec![pow(&v[0], 2)])).unwrap(), 1);
        assert_eq!(milnor_number(&cusp()).unwrap(), 2);
        assert_eq!(milnor_number(&input(&["x"], None, 6, |v| vec![v[0].clone()])).unwrap(), 0);
    }

    #[test]
    fn tjurina_bases() {
        let c = cusp();
        let b = t1_basis(&c);
        assert_eq!(b.basis, vec![(Monomial(vec![0, 0]), 0), (Monomial(vec![1, 0]), 0)]);
        let node = input(&["x", "y"], None, 8, |v| vec![&pow(&v[0], 2) + &pow(&v[1], 2)]);
        assert_eq!(tjurina_number(&node), 1);
        assert_eq!(tjurina_number(&input(&["x"], None, 6, |v| vec![v[0].clone()])), 0);
    }

    #[test]
    fn section_bases() {
        let a1 = input(&["x"], None, 6, |v| vec![pow(&v[0], 2)]);
        assert_eq!(t1_section_basis(&a1).unwrap().basis, vec![(Monomial(vec![1]), 0)]);
        assert_eq!(tjurina_section_number(&cusp()).unwrap(), 3);
        let a2 = input(&["x"], None, 6, |v| vec![pow(&v[0], 3)]);
        assert_eq!(t1_section_basis(&a2).unwrap().basis, vec![(Monomial(vec![1]), 0), (Monomial(vec![2]), 0)]);
    }

    #[test]
    fn t0_of_cusp_contains_euler_and_hamiltonian() {
        let c = cusp();
        let gens = t0_generators(&c, Variant::Plain);
        for d in &gens {
            assert!(d.satisfies(c.f()));
        }
        let euler = euler_with_multiplier(&c).unwrap();
        assert!(euler.satisfies(c.f()));
        let ham = &hamiltonian_derivations(&c)[0];
        assert!(ham.satisfies(c.f()));
        let mut with_trivial = coefficient_vectors(&gens);
        with_trivial.extend(trivial_coefficient_vectors(&c));
        assert!(generates_within(&coefficient_vectors(&[euler, ham.clone()]), &with_trivial, 2, c.ctx()));
    }

    #[test]
    fn t0_of_smooth_point() {
        let s = input(&["x"], None, 6, |v| vec![v[0].clone()]);
        let gens = t0_generators(&s, Variant::Plain);
        assert!(gens.iter().all(|d| d.satisfies(s.f())));
        let x_dx = PolyVector::new(vec![Poly::var(s.ctx(), 0)]).unwrap();
        assert!(generates_within(&[x_dx], &coefficient_vectors(&gens), 1, s.ctx()));
    }

    #[test]
    fn hamiltonians() {
        let c = cusp();
        let h = hamiltonian_derivations(&c);
        let (x, y) = (Poly::var(c.ctx(), 0), Poly::var(c.ctx(), 1));
        assert_eq!(h[0].coefficients, vec![y.scale(&rat(-2)), (&x * &x).scale(&rat(-3))]);
        let lines = input(&["x", "y", "z"], None, 6, |v| vec![v[0].clone(), v[1].clone()]);
        let h = hamiltonian_derivations(&lines);
        let ctx = lines.ctx();
        assert_eq!(h[0].coefficients, vec![Poly::zero(ctx), Poly::zero(ctx), Poly::one(ctx)]);
    }

    #[test]
    fn grading() {
        let c = cusp();
        let g = t1_grading(&c, &t1_basis(&c)).unwrap();
        assert_eq!(g.iter().map(|c| c.eigenvalue).collect::<Vec<_>>(), vec![-6, -4]);
        let x4y4 = input(&["x", "y"], Some(vec![1, 1]), 12, |v| vec![&pow(&v[0], 4) + &pow(&v[1], 4)]);
        let g = t1_grading(&x4y4, &t1_basis(&x4y4)).unwrap();
        let x2y2 = g.iter().find(|c| c.monomial == Monomial(vec![2, 2])).unwrap();
        assert_eq!(x2y2.eigenvalue, 0);
    }

    #[test]
    fn bullet_dims() {
        let b = t0_bullet_dims(&cusp()).unwrap();
        assert_eq!((b.plain, b.section), (2, 2));
        assert_eq!(b.f_and_mj, 2 + 2);
        let a1 = input(&["x"], None, 6, |v| vec![pow(&v[0], 2)]);
        let b = t0_bullet_dims(&a1).unwrap();
        assert_eq!((b.plain, b.section), (1, 1));
    }

    #[test]
    fn generator_identity_for_qh_inputs() {
        let g = generator_identity(&cusp()).unwrap();
        assert_eq!(g.truncation, 4);
        assert!(g.holds());
        let x4y4 = input(&["x", "y"], Some(vec![1, 1]), 12, |v| vec![&pow(&v[0], 4) + &pow(&v[1], 4)]);
        let g = generator_identity(&x4y4).unwrap();
        assert_eq!(g.truncation, 8);
        assert!(g.holds());
    }
}
