//! Semi-universal deformation families over truncated parameter rings and
//! the relative presentations of T̃¹ built from them.

use std::sync::Arc;

use num_traits::{One, Zero};

use crate::cotangent::{jacobian_of, t1_basis, t1_section_basis, SingularityInput, Variant};
use crate::error::{Error, Result};
use crate::jet::{QuotientBasis, SubmodulePresentation, SubmoduleQuotient};
use crate::linalg::Echelon;
use crate::ring::{Monomial, Poly, PolyVector, Rational, RingContext};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyKind {
    Plain,
    Section,
    SingularSection,
    FiberProduct,
}

/// One base parameter and the fibre class it deforms along.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KsEntry {
    pub param: String,
    pub class: PolyVector,
    /// The monomial basis element, when the class is one.
    pub monomial: Option<(Monomial, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeformationFamily {
    pub kind: FamilyKind,
    pub fiber: SingularityInput,
    pub total: Arc<RingContext>,
    pub equations: PolyVector,
    /// Generators of J_σ in the total ring, when the family carries a section.
    pub section_ideal: Option<Vec<Poly>>,
    pub ks: Vec<KsEntry>,
    /// Set when the fibre-product normalization could not place every unit vector.
    pub exchange_note: Option<String>,
}

impl DeformationFamily {
    pub fn base_order(&self) -> u32 {
        self.total.param_order()
    }

    pub fn num_params(&self) -> usize {
        self.total.num_params()
    }

    pub fn param_names(&self) -> &[String] {
        self.total.param_names()
    }

    /// The equations with every parameter set to zero.
    pub fn specialize(&self) -> PolyVector {
        self.equations.map(|p| p.at_params_zero(self.fiber.ctx()))
    }

    /// The same family with the parameters outside `keep` set to zero and removed.
    pub fn restrict(&self, keep: &[usize]) -> Result<DeformationFamily> {
        let names = keep.iter().map(|&i| self.param_names()[i].clone()).collect();
        let total = self.fiber.ctx().with_params(names, self.base_order())?;
        let n = self.total.num_vars();
        let map = |p: &Poly| {
            Poly::from_terms(
                &total,
                p.terms().filter_map(|(m, c)| {
                    let params = m.param_part(n);
                    let dropped = params.iter().enumerate().any(|(i, &e)| e > 0 && !keep.contains(&i));
                    if dropped {
                        return None;
                    }
                    let mut e = m.0[..n].to_vec();
                    e.extend(keep.iter().map(|&i| params[i]));
                    Some((Monomial(e), c.clone()))
                }),
            )
        };
        Ok(DeformationFamily {
            kind: self.kind,
            fiber: self.fiber.clone(),
            total: total.clone(),
            equations: self.equations.map(map),
            section_ideal: self.section_ideal.as_ref().map(|g| g.iter().map(map).collect()),
            ks: keep.iter().map(|&i| self.ks[i].clone()).collect(),
            exchange_note: self.exchange_note.clone(),
        })
    }
}

/// `count` parameter names `<prefix>1..`, avoiding the given names.
fn fresh_names(taken: &[String], count: usize, prefixes: &[&str], first: usize) -> Vec<String> {
    for p in prefixes {
        let names: Vec<String> = (first..first + count).map(|i| format!("{p}{i}")).collect();
        if names.iter().all(|n| !taken.contains(n)) {
            return names;
        }
    }
    (first..first + count).map(|i| format!("param_{i}")).collect()
}

fn monomial_vector(ctx: &Arc<RingContext>, k: usize, m: &Monomial, j: usize) -> PolyVector {
    PolyVector::monomial(ctx, k, m.clone(), j)
}

fn basis_for(s: &SingularityInput, kind: FamilyKind) -> Result<QuotientBasis> {
    match kind {
        FamilyKind::Plain => Ok(t1_basis(s)),
        FamilyKind::Section => t1_section_basis(s),
        FamilyKind::SingularSection => {
            if s.k() != 1 {
                return Err(Error::NotHypersurface(s.k()));
            }
            let b = t1_section_basis(s)?;
            Ok(QuotientBasis { basis: b.basis.into_iter().filter(|(m, _)| m.degree() >= 2).collect(), ..b })
        }
        FamilyKind::FiberProduct => Err(Error::Precondition("use fiber_product_family".into())),
    }
}

/// `F = f + Σ s_i g^{(i)}` over the monomial basis of T¹(X₀), T¹(X₀,𝔪) or 𝔪·T¹(X₀,𝔪).
pub fn versal_family(s: &SingularityInput, kind: FamilyKind, q: u32) -> Result<DeformationFamily> {
    let basis = basis_for(s, kind)?;
    let names = fresh_names(s.ctx().var_names(), basis.dimension(), &["s", "t", "a"], 1);
    let total = s.ctx().with_params(names.clone(), q)?;
    let k = s.k();
    let mut equations = s.f().map(|p| p.to_ctx(&total));
    let mut ks = Vec::new();
    for (i, (m, j)) in basis.basis.iter().enumerate() {
        let mut mono = m.0.clone();
        mono.resize(total.total_vars(), 0);
        mono[total.num_vars() + i] = 1;
        equations = equations.add(&monomial_vector(&total, k, &Monomial(mono), *j));
        ks.push(KsEntry {
            param: names[i].clone(),
            class: monomial_vector(s.ctx(), k, m, *j),
            monomial: Some((m.clone(), *j)),
        });
    }
    let section_ideal = match kind {
        FamilyKind::Plain => None,
        _ => Some((0..s.n()).map(|l| Poly::var(&total, l)).collect()),
    };
    Ok(DeformationFamily { kind, fiber: s.clone(), total, equations, section_ideal, ks, exchange_note: None })
}

/// `F = f + ε·g` over a single parameter.
pub fn one_parameter_family(s: &SingularityInput, g: &PolyVector, q: u32) -> Result<DeformationFamily> {
    if g.rank() != s.k() {
        return Err(Error::Precondition(format!("direction of rank {} for {} equations", g.rank(), s.k())));
    }
    let names = fresh_names(s.ctx().var_names(), 1, &["e", "eps", "t"], 1);
    let total = s.ctx().with_params(names.clone(), q)?;
    let eps = Poly::param(&total, 0);
    let equations = s.f().map(|p| p.to_ctx(&total)).add(&g.map(|p| &p.to_ctx(&total) * &eps));
    let ks = vec![KsEntry { param: names[0].clone(), class: g.map(|p| p.to_ctx(s.ctx())), monomial: None }];
    Ok(DeformationFamily {
        kind: FamilyKind::Plain,
        fiber: s.clone(),
        total,
        equations,
        section_ideal: None,
        ks,
        exchange_note: None,
    })
}

/// Substitutes the space variables by the parameters u (which follow them).
fn at_u(p: &Poly, total: &Arc<RingContext>, u_offset: usize) -> Poly {
    let n = total.num_vars();
    Poly::from_terms(
        total,
        p.terms().map(|(m, c)| {
            let mut e = vec![0u16; total.total_vars()];
            for l in 0..n {
                e[n + u_offset + l] = m.0[l];
            }
            (Monomial(e), c.clone())
        }),
    )
}

/// The fibre product family `f(x) − f(u) + Σ_{i>k} s_i (g^{(i)}(x) − g^{(i)}(u))`
/// with section x ↦ u.
pub fn fiber_product_family(s: &SingularityInput, q: u32) -> Result<DeformationFamily> {
    let (n, k) = (s.n(), s.k());
    let quotient = SubmoduleQuotient::new(&s.t1_presentation(Variant::Plain));
    let tau = quotient.dimension();
    let mut chosen: Vec<(Monomial, usize)> = Vec::new();
    let mut span = Echelon::new();
    let mut missing = Vec::new();
    for j in 0..k {
        let unit = PolyVector::unit(s.ctx(), k, j);
        let coords = quotient.coordinates(&unit);
        let sparse = coords.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
        if span.insert(&sparse).is_none() {
            chosen.push((Monomial::one(n), j));
        } else {
            missing.push(j + 1);
        }
    }
    let units = chosen.len();
    for (i, (m, j)) in quotient.basis().basis.iter().enumerate() {
        if span.rank() == tau {
            break;
        }
        if span.insert(&vec![(i, Rational::one())]).is_none() {
            chosen.push((m.clone(), *j));
        }
    }
    let exchange_note = if missing.is_empty() {
        None
    } else {
        Some(format!("unit vectors e{missing:?} vanish or are dependent in T1 and were not placed"))
    };
    let mut names = fresh_names(s.ctx().var_names(), n, &["u", "v", "w"], 1);
    let s_names = fresh_names(s.ctx().var_names(), chosen.len() - units, &["s", "t", "a"], units + 1);
    names.extend(s_names.iter().cloned());
    let total = s.ctx().with_params(names.clone(), q)?;
    let mut equations: Vec<Poly> = s.f().entries().iter().map(|p| &p.to_ctx(&total) - &at_u(p, &total, 0)).collect();
    let mut ks = Vec::new();
    for (i, (m, j)) in chosen.iter().enumerate().skip(units) {
        let g = Poly::term(s.ctx(), m.clone(), Rational::one());
        let diff = &g.to_ctx(&total) - &at_u(&g, &total, 0);
        let param = Poly::param(&total, n + i - units);
        equations[*j] = &equations[*j] + &(&param * &diff);
        ks.push(KsEntry {
            param: names[n + i - units].clone(),
            class: monomial_vector(s.ctx(), k, m, *j),
            monomial: Some((m.clone(), *j)),
        });
    }
    let mut all_ks: Vec<KsEntry> = (0..n)
        .map(|l| KsEntry {
            param: names[l].clone(),
            class: PolyVector::new(s.f().entries().iter().map(|p| p.derivative(l).expect("space variable")).collect())
                .expect("one context"),
            monomial: None,
        })
        .collect();
    all_ks.extend(ks);
    let section_ideal = Some((0..n).map(|l| &Poly::var(&total, l) - &Poly::param(&total, l)).collect());
    Ok(DeformationFamily {
        kind: FamilyKind::FiberProduct,
        fiber: s.clone(),
        total,
        equations: PolyVector::new(equations)?,
        section_ideal,
        ks: all_ks,
        exchange_note,
    })
}

/// Substitutes x_l ↦ x_l + u_l (u the first n parameters).
pub fn translate_by_u(p: &Poly) -> Poly {
    let ctx = p.ctx().clone();
    let n = ctx.num_vars();
    let shifted: Vec<Poly> = (0..n).map(|l| &Poly::var(&ctx, l) + &Poly::param(&ctx, l)).collect();
    let mut out = Poly::zero(&ctx);
    for (m, c) in p.terms() {
        let mut term = Poly::constant(&ctx, c.clone());
        let mut rest = m.0.clone();
        for (l, sh) in shifted.iter().enumerate() {
            for _ in 0..m.0[l] {
                term = &term * sh;
            }
            rest[l] = 0;
        }
        out = &out + &term.mul_term(&Monomial(rest), &Rational::one());
    }
    out
}

/// Coefficient of the parameter `i` (to first order, other parameters zero).
pub fn first_order_class(f: &PolyVector, i: usize, fiber: &Arc<RingContext>) -> PolyVector {
    let ctx = f.ctx().expect("nonempty").clone();
    let n = ctx.num_vars();
    f.map(|p| {
        Poly::from_terms(
            fiber,
            p.terms().filter_map(|(m, c)| {
                let params = m.param_part(n);
                let is_unit = params.iter().enumerate().all(|(j, &e)| e == u16::from(j == i));
                is_unit.then(|| (Monomial(m.0[..n].to_vec()), c.clone()))
            }),
        )
    })
}

/// First-order Kodaira–Spencer classes of a family, after moving its section to zero.
pub fn first_order_ks(d: &DeformationFamily) -> Vec<PolyVector> {
    let eqs = match d.kind {
        FamilyKind::FiberProduct => d.equations.map(translate_by_u),
        _ => d.equations.clone(),
    };
    (0..d.num_params()).map(|i| first_order_class(&eqs, i, d.fiber.ctx())).collect()
}

/// `J[i][l] = ∂F_i/∂x_l`.
pub fn relative_jacobian(d: &DeformationFamily) -> Vec<Vec<Poly>> {
    jacobian_of(&d.equations, d.total.num_vars())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelativePresentation {
    pub variant: Variant,
    pub rank: usize,
    pub columns: Vec<PolyVector>,
}

impl RelativePresentation {
    pub fn ctx(&self) -> &Arc<RingContext> {
        self.columns[0].ctx().expect("nonempty")
    }

    pub fn submodule(&self) -> SubmodulePresentation {
        SubmodulePresentation::new(self.ctx(), self.rank, self.columns.clone()).expect("consistent columns")
    }

    /// The presentation at s = 0 over the fibre ring.
    pub fn fiber(&self, fiber: &Arc<RingContext>) -> SubmodulePresentation {
        let cols = self.columns.iter().map(|c| c.map(|p| p.at_params_zero(fiber))).collect();
        SubmodulePresentation::new(fiber, self.rank, cols).expect("consistent columns")
    }
}

/// Columns of J(F) resp. J_σ·J(F), together with the F_i e_j.
pub fn tilde_t1_presentation(d: &DeformationFamily, variant: Variant) -> Result<RelativePresentation> {
    let k = d.equations.rank();
    let jac = relative_jacobian(d);
    let column = |l: usize| PolyVector::new(jac.iter().map(|row| row[l].clone()).collect()).expect("one context");
    let n = d.total.num_vars();
    let mut columns = Vec::new();
    match variant {
        Variant::Plain => columns.extend((0..n).map(column)),
        Variant::Section => {
            let sigma = d
                .section_ideal
                .as_ref()
                .ok_or_else(|| Error::Precondition("the section variant needs a family with section".into()))?;
            for g in sigma {
                for l in 0..n {
                    columns.push(column(l).mul_poly(g));
                }
            }
        }
    }
    for j in 0..k {
        for i in 0..k {
            let mut e = PolyVector::zeros(&d.total, k).into_entries();
            e[j] = d.equations.entries()[i].clone();
            columns.push(PolyVector::new(e)?);
        }
    }
    Ok(RelativePresentation { variant, rank: k, columns })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn input(names: &[&str], d: u32, build: impl Fn(&[Poly]) -> Vec<Poly>) -> SingularityInput {
        let ctx = RingContext::new(names.iter().map(|s| s.to_string()).collect(), d, None).unwrap();
        let vars: Vec<Poly> = (0..names.len()).map(|i| Poly::var(&ctx, i)).collect();
        SingularityInput::new(&ctx, build(&vars)).unwrap()
    }

    fn pow(p: &Poly, e: u32) -> Poly {
        (0..e).fold(Poly::one(p.ctx()), |acc, _| &acc * p)
    }

    #[test]
    fn versal_a1() {
        let a1 = input(&["x"], 6, |v| vec![pow(&v[0], 2)]);
        let plain = versal_family(&a1, FamilyKind::Plain, 4).unwrap();
        assert_eq!(plain.equations.to_string(), "(s1 + x^2)");
        let sec = versal_family(&a1, FamilyKind::Section, 4).unwrap();
        assert_eq!(sec.equations.to_string(), "(x^2 + x*s1)");
        assert!(sec.section_ideal.is_some());
        assert_eq!(plain.specialize(), *a1.f());
    }

    #[test]
    fn cusp_section_family_has_three_parameters() {
        let c = input(&["x", "y"], 10, |v| vec![&pow(&v[0], 3) - &pow(&v[1], 2)]);
        let fam = versal_family(&c, FamilyKind::Section, 3).unwrap();
        assert_eq!(fam.num_params(), 3);
        assert!(fam.ks.iter().all(|e| e.monomial.as_ref().unwrap().0.degree() >= 1));
    }

    #[test]
    fn fiber_products() {
        let a1 = input(&["x"], 6, |v| vec![pow(&v[0], 2)]);
        let fp = fiber_product_family(&a1, 4).unwrap();
        assert_eq!(fp.equations.to_string(), "(x^2 - u1^2)");
        let a2 = input(&["x"], 6, |v| vec![pow(&v[0], 3)]);
        let fp = fiber_product_family(&a2, 4).unwrap();
        assert_eq!(fp.param_names(), &["u1".to_string(), "s2".to_string()]);
        assert_eq!(fp.equations.to_string(), "(x*s2 - u1*s2 + x^3 - u1^3)");
        assert_eq!(fp.specialize(), *a2.f());
    }

    #[test]
    fn relative_jacobians_and_presentations() {
        let a1 = input(&["x"], 6, |v| vec![pow(&v[0], 2)]);
        let sec = versal_family(&a1, FamilyKind::Section, 4).unwrap();
        assert_eq!(relative_jacobian(&sec)[0][0].to_string(), "2*x + s1");
        let p = tilde_t1_presentation(&sec, Variant::Section).unwrap();
        assert_eq!(p.columns.iter().map(|c| c.to_string()).collect::<Vec<_>>(), vec!["(2*x^2 + x*s1)", "(x^2 + x*s1)"]);
        let plain = versal_family(&a1, FamilyKind::Plain, 4).unwrap();
        assert!(tilde_t1_presentation(&plain, Variant::Section).is_err());
        let p = tilde_t1_presentation(&plain, Variant::Plain).unwrap();
        assert_eq!(p.columns.iter().map(|c| c.to_string()).collect::<Vec<_>>(), vec!["(2*x)", "(s1 + x^2)"]);
        let fiber = SubmoduleQuotient::new(&p.fiber(a1.ctx()));
        assert_eq!(fiber.dimension(), 1);
    }
}
