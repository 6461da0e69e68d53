//! Modular strata: the bracket criterion at first order, the order-by-order
//! flattening stratum, the quasihomogeneous shortcut and flatness checks.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::artinian::{split_by_param, ArtinianBase};
use crate::cotangent::{
    derivation_from_syzygy, determinant, euler_derivation, jacobian_of, t0_generators, t0_matrix, t1_grading, Kind,
    SingularityInput, Variant,
};
use crate::deformation::{
    one_parameter_family, tilde_t1_presentation, versal_family, DeformationFamily, FamilyKind, RelativePresentation,
};
use crate::error::{Error, Result};
use crate::jet::{admitted_monomials, syzygies, QuotientBasis, SubmodulePresentation, SubmoduleQuotient};
use crate::linalg::{kernel, sparse_axpy, Echelon, SparseVec};
use crate::ring::{rat, Derivation, Monomial, Poly, PolyVector, Rational, RingContext};

/// The derivation type whose lifting defines the stratum of a family kind.
pub fn variant_for(kind: FamilyKind) -> Variant {
    match kind {
        FamilyKind::Plain => Variant::Plain,
        _ => Variant::Section,
    }
}

fn fiber_quotient(s: &SingularityInput, variant: Variant) -> (SubmoduleQuotient, usize) {
    let (gens, _) = t0_matrix(s, variant);
    let count = gens.len();
    let m = SubmodulePresentation::new(s.ctx(), s.k(), gens).expect("consistent generators");
    (SubmoduleQuotient::with_witnesses(&m), count)
}

/// Coordinates in the fibre T¹ basis of the class of δ(g) − h·g.
pub fn bracket_action(
    delta: &Derivation,
    g: &PolyVector,
    f: &PolyVector,
    quotient: &SubmoduleQuotient,
) -> Result<Vec<Rational>> {
    if !delta.satisfies(f) {
        return Err(Error::Precondition("the derivation does not satisfy δ(f) = h·f".into()));
    }
    Ok(quotient.coordinates(&delta.defect(g)))
}

/// Entry `[δ][j]` holds the coordinates of the bracket of δ with the class of parameter j.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BracketMatrix {
    pub basis: QuotientBasis,
    pub rows: Vec<Vec<Vec<Rational>>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModularTangent {
    pub matrix: BracketMatrix,
    /// Basis of the common kernel, as vectors in parameter coordinates.
    pub basis: Vec<Vec<Rational>>,
}

pub fn modular_tangent(fam: &DeformationFamily, variant: Variant) -> Result<ModularTangent> {
    let s = &fam.fiber;
    let (quotient, _) = fiber_quotient(s, variant);
    let gens = t0_generators(s, variant);
    let mut rows = Vec::with_capacity(gens.len());
    for d in &gens {
        let row = fam.ks.iter().map(|e| bracket_action(d, &e.class, s.f(), &quotient)).collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    let width = quotient.dimension();
    let columns: Vec<SparseVec> = (0..fam.num_params())
        .map(|j| {
            rows.iter()
                .enumerate()
                .flat_map(|(r, row)| row[j].iter().enumerate().map(move |(t, c)| (r * width + t, c.clone())))
                .filter(|(_, c)| !c.is_zero())
                .collect()
        })
        .collect();
    let basis = kernel(&columns)
        .into_iter()
        .map(|v| {
            let mut dense = vec![Rational::zero(); fam.num_params()];
            for (i, c) in v {
                dense[i] = c;
            }
            dense
        })
        .collect();
    Ok(ModularTangent { matrix: BracketMatrix { basis: quotient.basis().clone(), rows }, basis })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StratumOrder {
    pub order: u32,
    /// Generators of the ideal modulo `(s)^{order+1}`, over the family's total ring.
    pub generators: Vec<Poly>,
    pub base_dim: usize,
    pub tangent_dim: usize,
    /// Every generator is a linear form.
    pub linear: bool,
    /// `dim A = C(t + order, order)` for the tangent dimension t.
    pub smooth: bool,
}

#[derive(Debug, Clone)]
pub struct StratumIdeal {
    pub kind: FamilyKind,
    pub variant: Variant,
    pub total: Arc<RingContext>,
    pub orders: Vec<StratumOrder>,
    pub bases: Vec<ArtinianBase>,
    /// Lifts of the fibre T⁰ generators over the final base.
    pub lifts: Vec<Derivation>,
    /// Exponent e with 𝔪^e·O_A^k inside the relative submodule over the final base.
    pub relative_determinacy: Option<u32>,
}

impl StratumIdeal {
    pub fn final_base(&self) -> &ArtinianBase {
        self.bases.last().expect("at least the base point")
    }

    pub fn base_at(&self, order: u32) -> &ArtinianBase {
        &self.bases[order as usize]
    }
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// `(b, κ_b)` for the standard monomials b of `new` that are not standard in
/// `prev`, with κ_b = s^b − NF_prev(s^b) in the coordinates of `new`.
fn kernel_basis(prev: &ArtinianBase, new: &ArtinianBase) -> Vec<(Monomial, SparseVec)> {
    let mut out = Vec::new();
    for &i in new.standard() {
        let b = &new.monomials()[i];
        if prev.is_standard(b) {
            continue;
        }
        let mut terms = vec![(b.clone(), Rational::one())];
        for (j, c) in prev.normal_form_of(b) {
            terms.push((prev.monomials()[*j].clone(), -c.clone()));
        }
        out.push((b.clone(), new.vector(&terms)));
    }
    out
}

/// Writes a reduced element of O'⊗K as Σ κ_b ⊗ u_b.
fn decompose(
    ob: &PolyVector,
    kernel: &[(Monomial, SparseVec)],
    base: &ArtinianBase,
    fiber: &Arc<RingContext>,
) -> Result<Vec<(usize, PolyVector)>> {
    let parts = split_by_param(ob, fiber);
    let k = ob.rank();
    let mut out = Vec::new();
    let mut rebuilt: BTreeMap<Monomial, PolyVector> = BTreeMap::new();
    for (bi, (b, kappa)) in kernel.iter().enumerate() {
        let Some(u) = parts.get(b) else { continue };
        if u.is_zero() {
            continue;
        }
        for (idx, c) in kappa {
            let m = base.monomials()[*idx].clone();
            let entry = rebuilt.entry(m).or_insert_with(|| PolyVector::zeros(fiber, k));
            *entry = entry.add(&u.scale(c));
        }
        out.push((bi, u.clone()));
    }
    rebuilt.retain(|_, v| !v.is_zero());
    let parts: BTreeMap<Monomial, PolyVector> = parts.into_iter().filter(|(_, v)| !v.is_zero()).collect();
    if rebuilt != parts {
        return Err(Error::Internal("obstruction does not lie in the kernel of the small extension".into()));
    }
    Ok(out)
}

fn add_scaled(d: &mut Derivation, kappa: &Poly, corr: &Derivation, ctx: &Arc<RingContext>) {
    for (g, c) in d.coefficients.iter_mut().zip(&corr.coefficients) {
        if !c.is_zero() {
            *g = &*g + &(kappa * &c.to_ctx(ctx));
        }
    }
    for (row, crow) in d.multiplier.iter_mut().zip(&corr.multiplier) {
        for (h, c) in row.iter_mut().zip(crow) {
            if !c.is_zero() {
                *h = &*h + &(kappa * &c.to_ctx(ctx));
            }
        }
    }
}

fn reduce_derivation(d: &Derivation, base: &ArtinianBase) -> Derivation {
    Derivation::new(
        d.coefficients.iter().map(|p| base.reduce_poly(p)).collect(),
        d.multiplier.iter().map(|r| r.iter().map(|p| base.reduce_poly(p)).collect()).collect(),
    )
}

/// The stratum over which the fibre T⁰ generators of the given variant lift,
/// computed as the largest admissible small extension at each order up to `q`.
pub fn flattening_stratum(fam: &DeformationFamily, variant: Variant, q: u32) -> Result<StratumIdeal> {
    if q > fam.base_order() {
        return Err(Error::Precondition(format!("order {q} exceeds the family's truncation {}", fam.base_order())));
    }
    if variant == Variant::Section && fam.section_ideal.is_none() {
        return Err(Error::Precondition("the section variant needs a family with section".into()));
    }
    let s = &fam.fiber;
    let fiber = s.ctx();
    let m = fam.num_params();
    let (n0, num_gens) = fiber_quotient(s, variant);
    let mut base = ArtinianBase::point(m);
    let mut lifts: Vec<Derivation> =
        t0_generators(s, variant).iter().map(|d| d.to_ctx(&fam.total.with_param_order(0))).collect();
    let mut bases = vec![base.clone()];
    let mut orders = Vec::new();
    for r in 1..=q {
        let ctx = fam.total.with_param_order(r);
        let f = fam.equations.map(|p| p.to_ctx(&ctx));
        for d in lifts.iter_mut() {
            *d = d.to_ctx(&ctx);
        }
        let cover = base.small_extension_cover();
        let kappas = kernel_basis(&base, &cover);
        let mut w_all: Vec<SparseVec> = Vec::new();
        for d in &lifts {
            let ob = cover.reduce_vector(&d.defect(&f));
            let parts = decompose(&ob, &kappas, &cover, fiber)?;
            let mut w: Vec<SparseVec> = vec![Vec::new(); n0.dimension()];
            for (bi, u) in parts {
                for (t, c) in n0.coordinates(&u).iter().enumerate() {
                    if !c.is_zero() {
                        w[t] = sparse_axpy(&w[t], c, &kappas[bi].1);
                    }
                }
            }
            w_all.extend(w.into_iter().filter(|v| !v.is_empty()));
        }
        let next = cover.with_span(&w_all);
        let kappas = kernel_basis(&base, &next);
        for d in lifts.iter_mut() {
            let ob = next.reduce_vector(&d.defect(&f));
            for (bi, u) in decompose(&ob, &kappas, &next, fiber)? {
                let c = n0
                    .witness(&u, num_gens)
                    .ok_or_else(|| Error::Internal("obstruction class survives in the stratum".into()))?;
                let neg = PolyVector::new(c.iter().map(|p| -p).collect())?;
                let corr = derivation_from_syzygy(s, variant, &neg);
                let kappa = next.to_poly(&kappas[bi].1, &ctx);
                add_scaled(d, &kappa, &corr, &ctx);
            }
            *d = reduce_derivation(d, &next);
            if !next.reduce_vector(&d.defect(&f)).is_zero() {
                return Err(Error::Internal(format!("derivation lift failed to close at order {r}")));
            }
        }
        base = next;
        let generators: Vec<Poly> = base.ideal_generators().iter().map(|v| base.to_poly(v, &fam.total)).collect();
        let tangent_dim = base.tangent_dim();
        orders.push(StratumOrder {
            order: r,
            linear: generators.iter().all(|g| g.max_degree() == Some(1)),
            smooth: base.dim() == binomial(tangent_dim + r as usize, r as usize),
            generators,
            base_dim: base.dim(),
            tangent_dim,
        });
        bases.push(base.clone());
    }
    let presentation = tilde_t1_presentation(fam, variant)?;
    let relative_determinacy = relative_module(&presentation, &base)?.determinacy;
    Ok(StratumIdeal { kind: fam.kind, variant, total: fam.total.clone(), orders, bases, lifts, relative_determinacy })
}

/// The modular stratum of the versal family of the given kind, up to order `q`.
pub fn modular_stratum_jet(s: &SingularityInput, kind: FamilyKind, q: u32) -> Result<StratumIdeal> {
    let fam = versal_family(s, kind, q)?;
    flattening_stratum(&fam, variant_for(kind), q)
}

/// Coordinates of O'⊗A: (space monomial, standard base monomial, component).
struct ReducedSpace {
    n: usize,
    rank: usize,
    x_index: HashMap<Vec<u16>, usize>,
    x_monomials: Vec<Vec<u16>>,
    b_index: HashMap<Vec<u16>, usize>,
    standard: Vec<Monomial>,
}

impl ReducedSpace {
    fn new(fiber: &RingContext, base: &ArtinianBase, rank: usize) -> Self {
        let x_monomials: Vec<Vec<u16>> = admitted_monomials(fiber).into_iter().map(|m| m.0).collect();
        let x_index = x_monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let standard = base.standard_monomials();
        let b_index = standard.iter().enumerate().map(|(i, m)| (m.0.clone(), i)).collect();
        ReducedSpace { n: fiber.num_vars(), rank, x_index, x_monomials, b_index, standard }
    }

    fn column(&self, x: usize, b: usize, comp: usize) -> usize {
        (x * self.standard.len() + b) * self.rank + comp
    }

    fn dim(&self) -> usize {
        self.x_monomials.len() * self.standard.len() * self.rank
    }

    fn to_sparse(&self, v: &PolyVector) -> SparseVec {
        let mut map = BTreeMap::new();
        for (comp, p) in v.entries().iter().enumerate() {
            for (m, c) in p.terms() {
                let x = self.x_index[&m.0[..self.n]];
                let b = self.b_index[&m.0[self.n..]];
                *map.entry(self.column(x, b, comp)).or_insert_with(Rational::zero) += c;
            }
        }
        crate::linalg::sparse_from_map(map)
    }
}

/// Products `x^α·s^b·C` of the presentation columns, reduced over the base.
fn column_images(
    p: &RelativePresentation,
    base: &ArtinianBase,
    space: &ReducedSpace,
    ctx: &Arc<RingContext>,
    skip_unit: bool,
) -> Echelon {
    let cols: Vec<PolyVector> = p.columns.iter().map(|c| base.reduce_vector(&c.map(|q| q.to_ctx(ctx)))).collect();
    let mut echelon = Echelon::new();
    for b in &space.standard {
        if skip_unit && b.is_one() {
            continue;
        }
        for x in &space.x_monomials {
            let mut e = x.clone();
            e.extend_from_slice(&b.0);
            let mono = Monomial(e);
            for c in &cols {
                let img = base.reduce_vector(&c.mul_term(&mono, &Rational::one()));
                if !img.is_zero() {
                    echelon.insert(&space.to_sparse(&img));
                }
            }
        }
    }
    echelon
}

fn base_ctx(p: &RelativePresentation, base: &ArtinianBase) -> Result<Arc<RingContext>> {
    let ctx = p.ctx();
    if base.num_params() != ctx.num_params() {
        return Err(Error::Precondition("base and presentation have different parameters".into()));
    }
    if base.order() > ctx.param_order() {
        return Err(Error::Precondition(format!(
            "base order {} exceeds the parameter truncation {}",
            base.order(),
            ctx.param_order()
        )));
    }
    Ok(ctx.with_param_order(base.order()))
}

/// Whether every fibre syzygy of the presentation lifts to a syzygy over the base.
pub fn flatness_check(p: &RelativePresentation, base: &ArtinianBase) -> Result<bool> {
    let ctx = base_ctx(p, base)?;
    let fiber = ctx.fiber();
    let space = ReducedSpace::new(&fiber, base, p.rank);
    let lifting = column_images(p, base, &space, &ctx, true);
    let fiber_syz = syzygies(&p.fiber(&fiber), fiber.jet_order());
    let cols: Vec<PolyVector> = p.columns.iter().map(|c| base.reduce_vector(&c.map(|q| q.to_ctx(&ctx)))).collect();
    for z in &fiber_syz.syzygies {
        let mut acc = PolyVector::zeros(&ctx, p.rank);
        for (zc, col) in z.entries().iter().zip(&cols) {
            if !zc.is_zero() {
                acc = acc.add(&col.mul_poly(&zc.to_ctx(&ctx)));
            }
        }
        let rhs = base.reduce_vector(&acc);
        if !lifting.contains(&space.to_sparse(&rhs)).0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether every fibre T⁰ generator lifts to a relative derivation over the base.
pub fn t0_lifts(fam: &DeformationFamily, variant: Variant, base: &ArtinianBase) -> Result<bool> {
    let p = tilde_t1_presentation(fam, variant)?;
    let ctx = base_ctx(&p, base)?;
    let fiber = ctx.fiber();
    let space = ReducedSpace::new(&fiber, base, p.rank);
    let lifting = column_images(&p, base, &space, &ctx, true);
    let f = base.reduce_vector(&fam.equations.map(|q| q.to_ctx(&ctx)));
    for d in t0_generators(&fam.fiber, variant) {
        let rhs = base.reduce_vector(&d.to_ctx(&ctx).defect(&f));
        if !lifting.contains(&space.to_sparse(&rhs)).0 {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelativeModule {
    /// dim_ℚ of O'_A^k modulo the relative submodule.
    pub dim: usize,
    /// Smallest e with every x^α·s^b·e_j, |α| = e, inside the submodule.
    pub determinacy: Option<u32>,
}

pub fn relative_module(p: &RelativePresentation, base: &ArtinianBase) -> Result<RelativeModule> {
    let ctx = base_ctx(p, base)?;
    let fiber = ctx.fiber();
    let space = ReducedSpace::new(&fiber, base, p.rank);
    let span = column_images(p, base, &space, &ctx, false);
    let determinacy = (0..=fiber.jet_order()).find(|&e| {
        space.x_monomials.iter().enumerate().filter(|(_, x)| x.iter().map(|&v| v as u32).sum::<u32>() == e).all(
            |(xi, _)| {
                (0..space.standard.len())
                    .all(|b| (0..p.rank).all(|j| span.contains(&vec![(space.column(xi, b, j), Rational::one())]).0))
            },
        )
    });
    Ok(RelativeModule { dim: space.dim() - span.rank(), determinacy })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QhStratum {
    pub eigenvalues: Vec<i64>,
    /// Parameters whose class has eigenvalue zero.
    pub zero_params: Vec<usize>,
    /// The coordinate forms s_j with ν_j ≠ 0.
    pub generators: Vec<Poly>,
    /// The Euler derivation with h = diag(d) annihilates the defect over the restricted family.
    pub euler_lift_verified: bool,
    /// Every relative Hamiltonian derivation annihilates F over the full base.
    pub hamiltonians_lift_verified: bool,
}

impl QhStratum {
    /// Whether the engine's stratum equals the coordinate subspace at every order.
    pub fn agrees_with(&self, stratum: &StratumIdeal) -> bool {
        let m = stratum.total.num_params();
        let gens: Vec<Vec<(Monomial, Rational)>> = (0..m)
            .filter(|j| !self.zero_params.contains(j))
            .map(|j| vec![(Monomial::var(m, j), Rational::one())])
            .collect();
        stratum
            .orders
            .iter()
            .all(|o| ArtinianBase::from_generators(m, o.order, &gens).same_ideal(stratum.base_at(o.order)))
    }
}

/// Relative Hamiltonian derivations of the family equations.
pub fn relative_hamiltonians(fam: &DeformationFamily) -> Vec<Derivation> {
    let n = fam.total.num_vars();
    let k = fam.equations.rank();
    let jac = jacobian_of(&fam.equations, n);
    let zero_h = vec![vec![Poly::zero(&fam.total); k]; k];
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..=k).collect();
    if k + 1 > n {
        return out;
    }
    loop {
        let mut coefficients = vec![Poly::zero(&fam.total); n];
        for (a, &var) in idx.iter().enumerate() {
            let minor: Vec<Vec<Poly>> = jac
                .iter()
                .map(|row| idx.iter().enumerate().filter(|(b, _)| *b != a).map(|(_, &l)| row[l].clone()).collect())
                .collect();
            let det = determinant(&minor, &fam.total);
            coefficients[var] = if a % 2 == 0 { det } else { -&det };
        }
        out.push(Derivation::new(coefficients, zero_h.clone()));
        let mut pos = k as isize;
        while pos >= 0 && idx[pos as usize] == n - (k + 1) + pos as usize {
            pos -= 1;
        }
        if pos < 0 {
            break;
        }
        idx[pos as usize] += 1;
        for j in pos as usize + 1..=k {
            idx[j] = idx[j - 1] + 1;
        }
    }
    out
}

/// The stratum predicted for quasihomogeneous input: the span of the
/// eigenvalue-zero directions, with lifting certificates.
pub fn qh_modular_stratum(s: &SingularityInput, kind: FamilyKind, q: u32) -> Result<QhStratum> {
    let degrees = s.weights_degrees().ok_or(Error::NotQuasihomogeneous)?;
    let fam = versal_family(s, kind, q)?;
    let basis = QuotientBasis {
        basis: fam.ks.iter().map(|e| e.monomial.clone().expect("monomial family")).collect(),
        stabilized: true,
        determinacy_exponent: None,
    };
    let eigenvalues: Vec<i64> = t1_grading(s, &basis)?.iter().map(|c| c.eigenvalue).collect();
    let zero_params: Vec<usize> = (0..eigenvalues.len()).filter(|&j| eigenvalues[j] == 0).collect();
    let generators =
        (0..eigenvalues.len()).filter(|j| !zero_params.contains(j)).map(|j| Poly::param(&fam.total, j)).collect();
    let restricted = fam.restrict(&zero_params)?;
    let k = s.k();
    let euler = Derivation::new(
        euler_derivation(&restricted.total)?,
        (0..k)
            .map(|j| {
                (0..k)
                    .map(|i| {
                        if i == j {
                            Poly::constant(&restricted.total, rat(degrees[j] as i64))
                        } else {
                            Poly::zero(&restricted.total)
                        }
                    })
                    .collect()
            })
            .collect(),
    );
    let euler_lift_verified = euler.defect(&restricted.equations).is_zero();
    let hamiltonians_lift_verified = relative_hamiltonians(&fam).iter().all(|h| h.defect(&fam.equations).is_zero());
    Ok(QhStratum { eigenvalues, zero_params, generators, euler_lift_verified, hamiltonians_lift_verified })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrataComparison {
    pub equal: bool,
    /// First order at which the strata differ, with a description.
    pub witness: Option<String>,
}

#[derive(Debug, Clone)]
pub struct ComparisonReport {
    pub functors: Option<StrataComparison>,
    pub singular_section: Option<StrataComparison>,
    pub plain: Option<StratumIdeal>,
    pub section: Option<StratumIdeal>,
    pub singular_plain: Option<StratumIdeal>,
    pub singular_section_stratum: Option<StratumIdeal>,
}

/// Restricts every order of a stratum to the listed parameters after checking
/// the others lie in the ideal; `None` when they do not.
fn restrict_to(stratum: &StratumIdeal, keep: &[usize], order: u32) -> std::result::Result<ArtinianBase, String> {
    let base = stratum.base_at(order);
    let m = base.num_params();
    for j in 0..m {
        if !keep.contains(&j) {
            let v = base.vector(&[(Monomial::var(m, j), Rational::one())]);
            if !base.contains(&v) {
                return Err(format!("parameter {} is not in the ideal", stratum.total.param_names()[j]));
            }
        }
    }
    let gens: Vec<Vec<(Monomial, Rational)>> = base
        .ideal_generators()
        .iter()
        .map(|g| {
            g.iter()
                .filter_map(|(i, c)| {
                    let e = &base.monomials()[*i].0;
                    let dropped = e.iter().enumerate().any(|(j, &x)| x > 0 && !keep.contains(&j));
                    (!dropped).then(|| (Monomial(keep.iter().map(|&j| e[j]).collect()), c.clone()))
                })
                .collect()
        })
        .collect();
    Ok(ArtinianBase::from_generators(keep.len(), order, &gens))
}

fn compare_orders(a: &StratumIdeal, a_keep: &[usize], b: &StratumIdeal, b_keep: &[usize]) -> StrataComparison {
    for o in &a.orders {
        let ra = restrict_to(a, a_keep, o.order);
        let rb = restrict_to(b, b_keep, o.order);
        match (ra, rb) {
            (Ok(x), Ok(y)) if x.same_ideal(&y) => {}
            (Ok(_), Ok(_)) => {
                return StrataComparison { equal: false, witness: Some(format!("ideals differ at order {}", o.order)) }
            }
            (Err(e), _) | (_, Err(e)) => {
                return StrataComparison { equal: false, witness: Some(format!("order {}: {e}", o.order)) }
            }
        }
    }
    StrataComparison { equal: true, witness: None }
}

/// Compares the plain and section strata of quasihomogeneous input on shared
/// parameters, and for hypersurfaces the two flattening strata over the
/// singular-section family.
pub fn compare_strata(s: &SingularityInput, q: u32) -> Result<ComparisonReport> {
    let qh = s.weights_degrees().is_some();
    let hyper = s.kind() == Kind::Hypersurface;
    if !qh && !hyper {
        return Err(Error::Precondition("comparison needs quasihomogeneous input or a hypersurface".into()));
    }
    let mut report = ComparisonReport {
        functors: None,
        singular_section: None,
        plain: None,
        section: None,
        singular_plain: None,
        singular_section_stratum: None,
    };
    if qh {
        let plain_fam = versal_family(s, FamilyKind::Plain, q)?;
        let sec_fam = versal_family(s, FamilyKind::Section, q)?;
        let plain = flattening_stratum(&plain_fam, Variant::Plain, q)?;
        let section = flattening_stratum(&sec_fam, Variant::Section, q)?;
        let mut plain_keep = Vec::new();
        let mut sec_keep = Vec::new();
        for (i, e) in plain_fam.ks.iter().enumerate() {
            if let Some(j) = sec_fam.ks.iter().position(|x| x.monomial == e.monomial) {
                plain_keep.push(i);
                sec_keep.push(j);
            }
        }
        report.functors = Some(compare_orders(&plain, &plain_keep, &section, &sec_keep));
        report.plain = Some(plain);
        report.section = Some(section);
    }
    if hyper {
        let fam = versal_family(s, FamilyKind::SingularSection, q)?;
        let a = flattening_stratum(&fam, Variant::Plain, q)?;
        let b = flattening_stratum(&fam, Variant::Section, q)?;
        let all: Vec<usize> = (0..fam.num_params()).collect();
        report.singular_section = Some(compare_orders(&a, &all, &b, &all));
        report.singular_plain = Some(a);
        report.singular_section_stratum = Some(b);
    }
    Ok(report)
}

/// Flatness of the family `f + ε·g` over the double point, for g in (f, J(f)).
pub fn trivial_deformation_flat(s: &SingularityInput, g: &Poly) -> Result<bool> {
    if s.k() != 1 {
        return Err(Error::NotHypersurface(s.k()));
    }
    let f = &s.f().entries()[0];
    let mut gens = vec![PolyVector::new(vec![f.clone()])?];
    for l in 0..s.n() {
        gens.push(PolyVector::new(vec![f.derivative(l)?])?);
    }
    let ideal = SubmodulePresentation::new(s.ctx(), 1, gens)?;
    let g = PolyVector::new(vec![g.to_ctx(s.ctx())])?;
    if !SubmoduleQuotient::new(&ideal).contains(&g) {
        return Err(Error::Precondition("g is not in the ideal (f, J(f))".into()));
    }
    let fam = one_parameter_family(s, &g, 1)?;
    flatness_check(&tilde_t1_presentation(&fam, Variant::Plain)?, &ArtinianBase::double_point(1, 0))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointComparison {
    pub label: String,
    pub t1_flat: bool,
    pub t0_flat: bool,
}

impl PointComparison {
    pub fn implication_holds(&self) -> bool {
        !self.t1_flat || self.t0_flat
    }

    pub fn is_strict(&self) -> bool {
        self.t0_flat && !self.t1_flat
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlatnessComparison {
    pub points: Vec<PointComparison>,
    pub all_implications_hold: bool,
    /// Index of a point where T⁰ is flat and T¹ is not.
    pub strictness_witness: Option<usize>,
}

/// Compares flatness of T¹ and T⁰ over the double point along each basis
/// direction of T¹(X₀) and at the special point.
pub fn t0_flatness_comparison(s: &SingularityInput) -> Result<FlatnessComparison> {
    let mut points = Vec::new();
    let fam = versal_family(s, FamilyKind::Plain, 1)?;
    if fam.num_params() > 0 {
        let p = tilde_t1_presentation(&fam, Variant::Plain)?;
        let point = ArtinianBase::point(fam.num_params());
        points.push(PointComparison {
            label: "special point".into(),
            t1_flat: flatness_check(&p, &point)?,
            t0_flat: t0_lifts(&fam, Variant::Plain, &point)?,
        });
    }
    for entry in &fam.ks {
        let line = one_parameter_family(s, &entry.class, 1)?;
        let p = tilde_t1_presentation(&line, Variant::Plain)?;
        let dp = ArtinianBase::double_point(1, 0);
        points.push(PointComparison {
            label: format!("double point along {}", entry.class),
            t1_flat: flatness_check(&p, &dp)?,
            t0_flat: t0_lifts(&line, Variant::Plain, &dp)?,
        });
    }
    let all_implications_hold = points.iter().all(PointComparison::implication_holds);
    let strictness_witness = points.iter().position(PointComparison::is_strict);
    Ok(FlatnessComparison { points, all_implications_hold, strictness_witness })
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

    fn x4y4() -> SingularityInput {
        input(&["x", "y"], Some(vec![1, 1]), 12, |v| vec![&pow(&v[0], 4) + &pow(&v[1], 4)])
    }

    #[test]
    fn brackets_for_x4y4() {
        let s = x4y4();
        let (q, _) = fiber_quotient(&s, Variant::Plain);
        let euler = crate::cotangent::euler_with_multiplier(&s).unwrap();
        let ctx = s.ctx();
        let x2y2 = PolyVector::monomial(ctx, 1, Monomial(vec![2, 2]), 0);
        assert!(bracket_action(&euler, &x2y2, s.f(), &q).unwrap().iter().all(Zero::is_zero));
        let xy = PolyVector::monomial(ctx, 1, Monomial(vec![1, 1]), 0);
        let coords = bracket_action(&euler, &xy, s.f(), &q).unwrap();
        let pos = q.basis().basis.iter().position(|b| b.0 == Monomial(vec![1, 1])).unwrap();
        assert_eq!(coords[pos], rat(-2));
        assert_eq!(coords.iter().filter(|c| !c.is_zero()).count(), 1);
        let zero = PolyVector::zeros(ctx, 1);
        assert!(bracket_action(&euler, &zero, s.f(), &q).unwrap().iter().all(Zero::is_zero));
    }

    #[test]
    fn cusp_tangent_is_trivial() {
        for kind in [FamilyKind::Plain, FamilyKind::Section] {
            let fam = versal_family(&cusp(), kind, 1).unwrap();
            assert!(modular_tangent(&fam, variant_for(kind)).unwrap().basis.is_empty());
        }
    }

    #[test]
    fn x4y4_section_tangent_is_the_x2y2_line() {
        let fam = versal_family(&x4y4(), FamilyKind::Section, 1).unwrap();
        let t = modular_tangent(&fam, Variant::Section).unwrap();
        assert_eq!(t.basis.len(), 1);
        let j = fam.ks.iter().position(|e| e.monomial.as_ref().unwrap().0 == Monomial(vec![2, 2])).unwrap();
        assert!(t.basis[0].iter().enumerate().all(|(i, c)| (i == j) != c.is_zero()));
    }

    #[test]
    fn cusp_section_stratum_is_the_point() {
        let st = modular_stratum_jet(&cusp(), FamilyKind::Section, 3).unwrap();
        for o in &st.orders {
            assert_eq!(o.base_dim, 1);
            assert_eq!(o.generators.len(), 3);
            assert!(o.linear);
        }
    }

    #[test]
    fn double_point_flatness_for_the_cusp() {
        let s = cusp();
        let fam = versal_family(&s, FamilyKind::Section, 1).unwrap();
        let p = tilde_t1_presentation(&fam, Variant::Section).unwrap();
        for i in 0..fam.num_params() {
            assert!(!flatness_check(&p, &ArtinianBase::double_point(3, i)).unwrap());
        }
        assert!(flatness_check(&p, &ArtinianBase::point(3)).unwrap());
    }

    #[test]
    fn trivial_deformations() {
        let s = cusp();
        let f = s.f().entries()[0].clone();
        assert!(trivial_deformation_flat(&s, &f).unwrap());
        let x = Poly::var(s.ctx(), 0);
        let g = (&(&x * &x) * &x).scale(&rat(3));
        assert!(trivial_deformation_flat(&s, &g).unwrap());
        assert!(matches!(trivial_deformation_flat(&s, &Poly::one(s.ctx())), Err(Error::Precondition(_))));
    }
}
