use std::sync::Arc;

use crate::cotangent::{tjurina_number, SingularityInput};
use crate::jet::{combine, syzygies, SubmodulePresentation, SubmoduleQuotient};
use crate::parse::{parse, parse_expr, Expr};
use crate::ring::{rat, Monomial, Poly, PolyVector, Rational, RingContext};
use num_traits::Zero;
use proptest::prelude::*;

fn ring(d: u32) -> Arc<RingContext> {
    RingContext::new(vec!["x".into(), "y".into()], d, Some(vec![2, 3])).unwrap()
}

fn poly_from(ctx: &Arc<RingContext>, terms: &[((u16, u16), i64)]) -> Poly {
    Poly::from_terms(ctx, terms.iter().map(|&((a, b), c)| (Monomial(vec![a, b]), rat(c))))
}

fn terms(min_deg: u16, max_deg: u16, len: usize) -> impl Strategy<Value = Vec<((u16, u16), i64)>> {
    prop::collection::vec(((0..=max_deg, 0..=max_deg), -4i64..=4), 0..len)
        .prop_map(move |v| v.into_iter().filter(|((a, b), _)| a + b >= min_deg && a + b <= max_deg).collect())
}

/// Rank of a dense rational matrix by plain Gaussian elimination.
fn dense_rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else { continue };
        rows.swap(rank, p);
        let pivot = rows[rank][c].clone();
        let prow: Vec<Rational> = rows[rank].iter().map(|v| v / &pivot).collect();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&prow) {
                    *x -= &f * y;
                }
            }
        }
        rows[rank] = prow;
        rank += 1;
    }
    rank
}

/// dim_ℚ of ℚ[x,y]/(I + 𝔪^{d+1}) by enumerating x^a·y^b·g for every generator.
fn dense_quotient_dim(gens: &[Poly], d: u16) -> usize {
    let monos: Vec<(u16, u16)> = (0..=d).flat_map(|t| (0..=t).map(move |a| (a, t - a))).collect();
    let mut rows = Vec::new();
    for g in gens {
        for &(a, b) in &monos {
            let mut row = vec![Rational::zero(); monos.len()];
            for (m, c) in g.terms() {
                let (p, q) = (m.0[0] + a, m.0[1] + b);
                if let Some(i) = monos.iter().position(|&x| x == (p, q)) {
                    row[i] += c;
                }
            }
            rows.push(row);
        }
    }
    monos.len() - dense_rank(rows)
}

fn ideal(ctx: &Arc<RingContext>, gens: &[Poly]) -> SubmodulePresentation {
    SubmodulePresentation::new(ctx, 1, gens.iter().map(|g| PolyVector::new(vec![g.clone()]).unwrap()).collect())
        .unwrap()
}

fn expr_strategy() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        (0i64..20, 1i64..5).prop_map(|(p, q)| Expr::Num(Rational::new(p.into(), q.into()))),
        prop_oneof![Just("x"), Just("y")].prop_map(|v| Expr::Var(v.to_string())),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|e| Expr::Neg(Box::new(e))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Sub(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
            (inner, 0u32..4).prop_map(|(a, k)| Expr::Pow(Box::new(a), k)),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ring_axioms(a in terms(0, 5, 6), b in terms(0, 5, 6), c in terms(0, 5, 6)) {
        let ctx = ring(6);
        let (a, b, c) = (poly_from(&ctx, &a), poly_from(&ctx, &b), poly_from(&ctx, &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &Poly::one(&ctx), a.clone());
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn leibniz(a in terms(0, 5, 6), b in terms(0, 5, 6), i in 0usize..2) {
        let ctx = ring(6);
        let low = ctx.with_jet_order(5);
        let (a, b) = (poly_from(&ctx, &a), poly_from(&ctx, &b));
        let lhs = (&a * &b).derivative(i).unwrap().to_ctx(&low);
        let rhs = (&(&a.derivative(i).unwrap() * &b) + &(&a * &b.derivative(i).unwrap())).to_ctx(&low);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn euler_identity(coeffs in prop::collection::vec(-5i64..=5, 4), weighted_degree in 6u32..13) {
        let ctx = ring(8);
        // Monomials x^a y^b with 2a + 3b = D and a + b within the jet.
        let monos: Vec<(u16, u16)> = (0..=8u16)
            .flat_map(|a| (0..=8u16).map(move |b| (a, b)))
            .filter(|&(a, b)| 2 * a as u32 + 3 * b as u32 == weighted_degree && a + b <= 8)
            .collect();
        let f = Poly::from_terms(&ctx, monos.iter().zip(coeffs.iter().cycle()).map(|(&(a, b), &c)| (Monomial(vec![a, b]), rat(c))));
        let x = Poly::var(&ctx, 0);
        let y = Poly::var(&ctx, 1);
        let euler = &(&x * &f.derivative(0).unwrap()).scale(&rat(2)) + &(&y * &f.derivative(1).unwrap()).scale(&rat(3));
        prop_assert_eq!(euler, f.scale(&rat(weighted_degree as i64)));
    }

    #[test]
    fn truncation_is_a_ring_map(a in terms(0, 6, 6), b in terms(0, 6, 6), low in 0u32..6) {
        let ctx = ring(6);
        let lo = ctx.with_jet_order(low);
        let (a, b) = (poly_from(&ctx, &a), poly_from(&ctx, &b));
        prop_assert_eq!((&a * &b).to_ctx(&lo), &a.to_ctx(&lo) * &b.to_ctx(&lo));
        prop_assert_eq!((&a + &b).to_ctx(&lo), &a.to_ctx(&lo) + &b.to_ctx(&lo));
    }

    #[test]
    fn quotient_dimension_matches_dense_rank(g in prop::collection::vec(terms(1, 4, 4), 1..4), d in 3u16..7) {
        let ctx = ring(d as u32);
        let gens: Vec<Poly> = g.iter().map(|t| poly_from(&ctx, t)).collect();
        let q = SubmoduleQuotient::new(&ideal(&ctx, &gens));
        prop_assert_eq!(q.dimension(), dense_quotient_dim(&gens, d));
    }

    #[test]
    fn normal_form_idempotent_and_linear(
        g in prop::collection::vec(terms(1, 4, 4), 0..3),
        v in terms(0, 8, 8),
        w in terms(0, 8, 8),
        c in -3i64..=3,
    ) {
        let ctx = ring(8);
        let mut gens: Vec<Poly> = g.iter().map(|t| poly_from(&ctx, t)).collect();
        gens.push(poly_from(&ctx, &[((4, 0), 1)]));
        gens.push(poly_from(&ctx, &[((0, 4), 1)]));
        let m = ideal(&ctx, &gens);
        let q = SubmoduleQuotient::new(&m);
        prop_assert!(q.basis().stabilized);
        let v = PolyVector::new(vec![poly_from(&ctx, &v)]).unwrap();
        let w = PolyVector::new(vec![poly_from(&ctx, &w)]).unwrap();
        let nv = q.normal_form(&v).unwrap();
        prop_assert_eq!(q.normal_form(&nv).unwrap(), nv.clone());
        prop_assert!(q.contains(&v.sub(&nv)));
        let nw = q.normal_form(&w).unwrap();
        let combo = v.scale(&rat(c)).add(&w);
        prop_assert_eq!(q.normal_form(&combo).unwrap(), nv.scale(&rat(c)).add(&nw));
    }

    #[test]
    fn syzygies_are_relations(g in prop::collection::vec(terms(1, 3, 4), 1..4), bound in 2u32..5) {
        let ctx = ring(6);
        let gens: Vec<Poly> = g.iter().map(|t| poly_from(&ctx, t)).collect();
        let m = ideal(&ctx, &gens);
        let syz = syzygies(&m, bound);
        for z in &syz.syzygies {
            prop_assert!(!z.is_zero());
            let zc = z.ctx().unwrap().clone();
            let lifted: Vec<PolyVector> = m.generators().iter().map(|g| g.map(|p| p.to_ctx(&zc))).collect();
            prop_assert!(combine(z.entries(), &lifted).is_zero());
        }
    }

    #[test]
    fn tjurina_stable_under_raising_jet(a in 2u16..6, b in 2u16..6, extra in terms(2, 6, 3)) {
        let build = |d: u32| {
            let ctx = ring(d);
            let mut t = extra.clone();
            t.push(((a, 0), 1));
            t.push(((0, b), 1));
            SingularityInput::new(&ctx, vec![poly_from(&ctx, &t)])
        };
        let d = 2 * (a.max(b) as u32) + 4;
        if let (Ok(lo), Ok(hi)) = (build(d), build(d + 3)) {
            prop_assert_eq!(tjurina_number(&lo), tjurina_number(&hi));
        }
    }

    #[test]
    fn expressions_round_trip(e in expr_strategy()) {
        let vars = vec!["x".to_string(), "y".to_string()];
        let printed = e.to_string();
        prop_assert_eq!(parse_expr(&printed, &vars).unwrap(), e);
    }
}

#[test]
fn corpus_documents_round_trip() {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/../../corpus");
    let mut seen = 0;
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_some_and(|e| e == "sing") {
            let doc = parse(&std::fs::read_to_string(&path).unwrap()).unwrap();
            assert_eq!(parse(&doc.to_string()).unwrap(), doc, "{}", path.display());
            seen += 1;
        }
    }
    assert!(seen >= 8);
}
