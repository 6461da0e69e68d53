//! Serializable reports. Rationals are "p/q" strings and monomials are exponent vectors.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::deformation::{DeformationFamily, FamilyKind};
use crate::error::Error;
use crate::jet::QuotientBasis;
use crate::modular::StratumIdeal;
use crate::ring::{format_rational, Derivation, Poly, PolyVector};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub monomial: Vec<u16>,
    pub coefficient: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyOut {
    pub text: String,
    pub terms: Vec<Term>,
}

impl From<&Poly> for PolyOut {
    fn from(p: &Poly) -> Self {
        PolyOut {
            text: p.to_string(),
            terms: p.terms().map(|(m, c)| Term { monomial: m.0.clone(), coefficient: format_rational(c) }).collect(),
        }
    }
}

fn vector_out(v: &PolyVector) -> Vec<PolyOut> {
    v.entries().iter().map(PolyOut::from).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisElement {
    pub monomial: Vec<u16>,
    pub component: usize,
    #[serde(default)]
    pub eigenvalue: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisOut {
    pub dimension: usize,
    pub elements: Vec<BasisElement>,
    pub stabilized: bool,
    pub determinacy_exponent: Option<u32>,
}

impl BasisOut {
    pub fn new(b: &QuotientBasis, eigenvalues: Option<Vec<i64>>) -> Self {
        BasisOut {
            dimension: b.dimension(),
            elements: b
                .basis
                .iter()
                .enumerate()
                .map(|(i, (m, j))| BasisElement {
                    monomial: m.0.clone(),
                    component: *j,
                    eigenvalue: eigenvalues.as_ref().map(|e| e[i]),
                })
                .collect(),
            stabilized: b.stabilized,
            determinacy_exponent: b.determinacy_exponent,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivationOut {
    pub coefficients: Vec<PolyOut>,
    pub multiplier: Vec<Vec<PolyOut>>,
}

impl From<&Derivation> for DerivationOut {
    fn from(d: &Derivation) -> Self {
        DerivationOut {
            coefficients: d.coefficients.iter().map(PolyOut::from).collect(),
            multiplier: d.multiplier.iter().map(|r| r.iter().map(PolyOut::from).collect()).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputEcho {
    pub command: String,
    pub document: String,
    pub variables: Vec<String>,
    pub weights: Option<Vec<u32>>,
    pub jet_order: u32,
    pub base_order: u32,
    pub equations: Vec<PolyOut>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Invariants {
    pub kind: String,
    pub milnor: Option<usize>,
    pub tjurina: usize,
    pub tjurina_section: usize,
    pub t0_bullet: Option<usize>,
    pub t0_bullet_section: Option<usize>,
    pub section_formula_holds: bool,
    pub quasihomogeneous_degrees: Option<Vec<u32>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Bases {
    pub t1: Option<BasisOut>,
    pub t1_section: Option<BasisOut>,
    pub t0: Option<Vec<DerivationOut>>,
    pub t0_section: Option<Vec<DerivationOut>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KsOut {
    pub param: String,
    pub class: Vec<PolyOut>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyOut {
    pub kind: FamilyKind,
    pub parameters: Vec<String>,
    pub base_order: u32,
    pub equations: Vec<PolyOut>,
    pub section_ideal: Option<Vec<PolyOut>>,
    pub kodaira_spencer: Vec<KsOut>,
    pub exchange_note: Option<String>,
}

impl From<&DeformationFamily> for FamilyOut {
    fn from(f: &DeformationFamily) -> Self {
        FamilyOut {
            kind: f.kind,
            parameters: f.param_names().to_vec(),
            base_order: f.base_order(),
            equations: vector_out(&f.equations),
            section_ideal: f.section_ideal.as_ref().map(|g| g.iter().map(PolyOut::from).collect()),
            kodaira_spencer: f
                .ks
                .iter()
                .map(|e| KsOut { param: e.param.clone(), class: vector_out(&e.class) })
                .collect(),
            exchange_note: f.exchange_note.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumOrderOut {
    pub order: u32,
    pub generators: Vec<PolyOut>,
    pub base_dim: usize,
    pub tangent_dim: usize,
    pub linear: bool,
    pub smooth: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumOut {
    pub label: String,
    pub family: FamilyKind,
    pub variant: crate::cotangent::Variant,
    pub orders: Vec<StratumOrderOut>,
    pub relative_determinacy: Option<u32>,
    /// Lifts of the fibre T⁰ generators over the final base.
    pub lifts: Vec<DerivationOut>,
}

impl StratumOut {
    pub fn new(label: &str, s: &StratumIdeal) -> Self {
        StratumOut {
            label: label.to_string(),
            family: s.kind,
            variant: s.variant,
            orders: s
                .orders
                .iter()
                .map(|o| StratumOrderOut {
                    order: o.order,
                    generators: o.generators.iter().map(PolyOut::from).collect(),
                    base_dim: o.base_dim,
                    tangent_dim: o.tangent_dim,
                    linear: o.linear,
                    smooth: o.smooth,
                })
                .collect(),
            relative_determinacy: s.relative_determinacy,
            lifts: s.lifts.iter().map(DerivationOut::from).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QhOut {
    pub quasihomogeneous: bool,
    pub degrees: Option<Vec<u32>>,
    pub eigenvalues: Vec<i64>,
    pub zero_parameters: Vec<String>,
    pub predicted_generators: Vec<PolyOut>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComparisonOut {
    pub label: String,
    pub equal: bool,
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct StratumSection {
    pub strata: Vec<StratumOut>,
    pub quasihomogeneous: Option<QhOut>,
    pub comparisons: Vec<ComparisonOut>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub name: String,
    pub holds: bool,
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorOut {
    pub module: String,
    pub message: String,
}

impl From<&Error> for ErrorOut {
    fn from(e: &Error) -> Self {
        ErrorOut { module: e.module().to_string(), message: e.to_string() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Report {
    pub input: Option<InputEcho>,
    pub invariants: Option<Invariants>,
    pub bases: Option<Bases>,
    pub family: Option<FamilyOut>,
    pub stratum: Option<StratumSection>,
    pub certificates: Vec<Certificate>,
    /// Phases in execution order.
    pub timing: Vec<String>,
    pub error: Option<ErrorOut>,
}

impl Report {
    pub fn certify(&mut self, name: &str, holds: bool, detail: Option<String>) {
        self.certificates.push(Certificate { name: name.to_string(), holds, detail });
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn is_ok(&self) -> bool {
        self.error.is_none()
    }

    /// Plain-text rendering with aligned tables.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(i) = &self.input {
            let _ = writeln!(out, "command      {}", i.command);
            let _ = writeln!(out, "variables    {}", i.variables.join(", "));
            if let Some(w) = &i.weights {
                let _ = writeln!(out, "weights      {}", join(w));
            }
            let _ = writeln!(out, "jet order    {}", i.jet_order);
            let _ = writeln!(out, "base order   {}", i.base_order);
            for (k, e) in i.equations.iter().enumerate() {
                let _ = writeln!(out, "f{:<11} {}", k + 1, e.text);
            }
            out.push('\n');
        }
        if let Some(v) = &self.invariants {
            let rows = [
                ("kind", v.kind.clone()),
                ("mu", opt(&v.milnor)),
                ("tau", v.tjurina.to_string()),
                ("tau_section", v.tjurina_section.to_string()),
                ("t0_bullet", opt(&v.t0_bullet)),
                ("t0_bullet_section", opt(&v.t0_bullet_section)),
                ("tau_s = tau + n - k", v.section_formula_holds.to_string()),
                ("qh degrees", v.quasihomogeneous_degrees.as_ref().map_or("-".into(), |d| join(d))),
            ];
            table(&mut out, "invariant", "value", rows.iter().map(|(a, b)| (a.to_string(), b.clone())));
        }
        if let Some(b) = &self.bases {
            for (name, basis) in [("T1", &b.t1), ("T1 with section", &b.t1_section)] {
                if let Some(basis) = basis {
                    let _ = writeln!(
                        out,
                        "{name} basis (dim {}, determinacy {})",
                        basis.dimension,
                        opt(&basis.determinacy_exponent)
                    );
                    table(
                        &mut out,
                        "monomial",
                        "component / eigenvalue",
                        basis.elements.iter().map(|e| {
                            (format!("{:?}", e.monomial), format!("{} / {}", e.component + 1, opt(&e.eigenvalue)))
                        }),
                    );
                }
            }
            for (name, gens) in [("T0", &b.t0), ("T0 with section", &b.t0_section)] {
                if let Some(gens) = gens {
                    let _ = writeln!(out, "{name} generators ({})", gens.len());
                    for g in gens {
                        let c: Vec<&str> = g.coefficients.iter().map(|p| p.text.as_str()).collect();
                        let _ = writeln!(out, "  ({})", c.join(", "));
                    }
                    out.push('\n');
                }
            }
        }
        if let Some(f) = &self.family {
            let _ = writeln!(out, "family ({:?}, order {})", f.kind, f.base_order);
            for e in &f.equations {
                let _ = writeln!(out, "  F = {}", e.text);
            }
            if let Some(s) = &f.section_ideal {
                let t: Vec<&str> = s.iter().map(|p| p.text.as_str()).collect();
                let _ = writeln!(out, "  section ideal ({})", t.join(", "));
            }
            table(
                &mut out,
                "parameter",
                "class",
                f.kodaira_spencer
                    .iter()
                    .map(|k| (k.param.clone(), k.class.iter().map(|p| p.text.as_str()).collect::<Vec<_>>().join(", "))),
            );
        }
        if let Some(s) = &self.stratum {
            for st in &s.strata {
                let _ = writeln!(out, "stratum {} (relative determinacy {})", st.label, opt(&st.relative_determinacy));
                table(
                    &mut out,
                    "order",
                    "dim A / tangent / linear / smooth / generators",
                    st.orders.iter().map(|o| {
                        let g: Vec<&str> = o.generators.iter().map(|p| p.text.as_str()).collect();
                        (
                            o.order.to_string(),
                            format!(
                                "{} / {} / {} / {} / {}",
                                o.base_dim,
                                o.tangent_dim,
                                o.linear,
                                o.smooth,
                                g.join(", ")
                            ),
                        )
                    }),
                );
            }
            if let Some(q) = &s.quasihomogeneous {
                let _ = writeln!(out, "quasihomogeneous: {}", q.quasihomogeneous);
                if q.quasihomogeneous {
                    let _ = writeln!(out, "  eigenvalues {}", join(&q.eigenvalues));
                    let _ = writeln!(out, "  eigenvalue-zero parameters: {}", q.zero_parameters.join(", "));
                }
                out.push('\n');
            }
            for c in &s.comparisons {
                let _ = writeln!(
                    out,
                    "{}: {}{}",
                    c.label,
                    if c.equal { "equal" } else { "differ" },
                    c.witness.as_ref().map_or(String::new(), |w| format!(" ({w})"))
                );
            }
            if !s.comparisons.is_empty() {
                out.push('\n');
            }
        }
        if !self.certificates.is_empty() {
            table(
                &mut out,
                "certificate",
                "holds",
                self.certificates.iter().map(|c| {
                    (
                        c.name.clone(),
                        format!("{}{}", c.holds, c.detail.as_ref().map_or(String::new(), |d| format!("  {d}"))),
                    )
                }),
            );
        }
        if let Some(e) = &self.error {
            let _ = writeln!(out, "error [{}]: {}", e.module, e.message);
        }
        out
    }
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or("-".into(), T::to_string)
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(", ")
}

fn table(out: &mut String, h1: &str, h2: &str, rows: impl Iterator<Item = (String, String)>) {
    let rows: Vec<(String, String)> = rows.collect();
    let w = rows.iter().map(|(a, _)| a.chars().count()).chain([h1.len()]).max().unwrap_or(0);
    let _ = writeln!(out, "{h1:<w$}  {h2}");
    let _ = writeln!(out, "{}  {}", "-".repeat(w), "-".repeat(h2.chars().count()));
    for (a, b) in rows {
        let _ = writeln!(out, "{a:<w$}  {b}");
    }
    out.push('\n');
}
