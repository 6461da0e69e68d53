//! Command dispatch from a parsed document to a [`Report`].

use std::fmt;
use std::str::FromStr;

use crate::cotangent::{
    cotangent_report, generator_identity, t0_generators, t1_basis, t1_grading, t1_section_basis, SingularityInput,
    Variant,
};
use crate::deformation::{versal_family, DeformationFamily, FamilyKind};
use crate::error::{Error, Result};
use crate::jet::QuotientBasis;
use crate::modular::{compare_strata, flattening_stratum, qh_modular_stratum, variant_for, StrataComparison};
use crate::parse::InputDocument;
use crate::report::{
    Bases, BasisOut, ComparisonOut, DerivationOut, FamilyOut, InputEcho, Invariants, PolyOut, QhOut, Report,
    StratumOut, StratumSection,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Command {
    Invariants,
    T1,
    T1Section,
    T0,
    Versal,
    VersalSection,
    VersalSingularSection,
    Modular,
    ModularSection,
    ModularSingularSection,
    Compare,
    CheckQh,
}

impl Command {
    pub const ALL: [Command; 12] = [
        Command::Invariants,
        Command::T1,
        Command::T1Section,
        Command::T0,
        Command::Versal,
        Command::VersalSection,
        Command::VersalSingularSection,
        Command::Modular,
        Command::ModularSection,
        Command::ModularSingularSection,
        Command::Compare,
        Command::CheckQh,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Invariants => "invariants",
            Command::T1 => "t1",
            Command::T1Section => "t1-section",
            Command::T0 => "t0",
            Command::Versal => "versal",
            Command::VersalSection => "versal-section",
            Command::VersalSingularSection => "versal-singular-section",
            Command::Modular => "modular",
            Command::ModularSection => "modular-section",
            Command::ModularSingularSection => "modular-singular-section",
            Command::Compare => "compare",
            Command::CheckQh => "check-qh",
        }
    }

    fn family_kind(self) -> Option<FamilyKind> {
        match self {
            Command::Versal | Command::Modular => Some(FamilyKind::Plain),
            Command::VersalSection | Command::ModularSection => Some(FamilyKind::Section),
            Command::VersalSingularSection | Command::ModularSingularSection => Some(FamilyKind::SingularSection),
            _ => None,
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Command {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Command::ALL.into_iter().find(|c| c.name() == s).ok_or_else(|| {
            format!("unknown command `{s}`; expected one of {}", Command::ALL.map(Command::name).join(", "))
        })
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Options {
    pub jet: Option<u32>,
    pub order: Option<u32>,
}

/// Runs a command. Domain errors end up in the report's `error` field.
pub fn run(cmd: Command, doc: &InputDocument, opts: &Options) -> Report {
    let mut report = Report::default();
    if let Err(e) = execute(cmd, doc, opts, &mut report) {
        report.error = Some((&e).into());
    }
    report
}

fn eigenvalues(s: &SingularityInput, b: &QuotientBasis) -> Result<Option<Vec<i64>>> {
    if s.weights_degrees().is_none() {
        return Ok(None);
    }
    Ok(Some(t1_grading(s, b)?.iter().map(|c| c.eigenvalue).collect()))
}

fn execute(cmd: Command, doc: &InputDocument, opts: &Options, r: &mut Report) -> Result<()> {
    let ctx = doc.ring(opts.jet)?;
    let q = doc.base_order(opts.order);
    let equations = doc.equations.iter().map(|e| e.expr.eval(&ctx)).collect::<Result<Vec<_>>>()?;
    r.input = Some(InputEcho {
        command: cmd.name().to_string(),
        document: doc.to_string(),
        variables: doc.variables.clone(),
        weights: doc.weights.clone(),
        jet_order: ctx.jet_order(),
        base_order: q,
        equations: equations.iter().map(PolyOut::from).collect(),
    });
    r.timing.push("parse".into());
    let s = SingularityInput::new(&ctx, equations)?;
    let t1 = t1_basis(&s);
    r.certify(
        "t1 quotient stabilized",
        t1.stabilized,
        t1.determinacy_exponent.map(|e| format!("determinacy exponent {e}")),
    );
    r.timing.push("t1".into());

    if cmd == Command::CheckQh {
        return check_qh(&s, q, r);
    }

    let rep = cotangent_report(&s)?;
    r.invariants = Some(Invariants {
        kind: format!("{:?}", s.kind()).to_lowercase(),
        milnor: rep.milnor,
        tjurina: rep.tjurina,
        tjurina_section: rep.tjurina_section,
        t0_bullet: rep.t0_bullet_dim,
        t0_bullet_section: rep.t0_bullet_section_dim,
        section_formula_holds: rep.section_formula_holds,
        quasihomogeneous_degrees: s.weights_degrees(),
    });
    r.certify(
        "section quotient stabilized",
        rep.t1_section_basis.stabilized,
        rep.t1_section_basis.determinacy_exponent.map(|e| format!("determinacy exponent {e}")),
    );
    r.timing.push("invariants".into());

    match cmd {
        Command::Invariants | Command::CheckQh => {}
        Command::T1 => {
            r.bases = Some(Bases { t1: Some(BasisOut::new(&t1, eigenvalues(&s, &t1)?)), ..Bases::default() });
        }
        Command::T1Section => {
            let b = t1_section_basis(&s)?;
            r.bases = Some(Bases { t1_section: Some(BasisOut::new(&b, eigenvalues(&s, &b)?)), ..Bases::default() });
        }
        Command::T0 => {
            let plain = t0_generators(&s, Variant::Plain);
            let section = t0_generators(&s, Variant::Section);
            r.certify(
                "t0 generators satisfy δ(f) = h·f",
                plain.iter().chain(&section).all(|d| d.satisfies(s.f())),
                None,
            );
            r.bases = Some(Bases {
                t0: Some(plain.iter().map(DerivationOut::from).collect()),
                t0_section: Some(section.iter().map(DerivationOut::from).collect()),
                ..Bases::default()
            });
            r.timing.push("t0".into());
        }
        Command::Versal | Command::VersalSection | Command::VersalSingularSection => {
            let fam = versal_family(&s, cmd.family_kind().expect("family command"), q)?;
            certify_family(&fam, &s, r);
            r.family = Some(FamilyOut::from(&fam));
            r.timing.push("family".into());
        }
        Command::Modular | Command::ModularSection | Command::ModularSingularSection => {
            let kind = cmd.family_kind().expect("family command");
            let fam = versal_family(&s, kind, q)?;
            certify_family(&fam, &s, r);
            r.family = Some(FamilyOut::from(&fam));
            r.timing.push("family".into());
            let st = flattening_stratum(&fam, variant_for(kind), q)?;
            r.timing.push("stratum".into());
            r.certify(
                "relative determinacy",
                st.relative_determinacy.is_some(),
                st.relative_determinacy.map(|e| format!("exponent {e} over the final base")),
            );
            let mut section = StratumSection { strata: vec![StratumOut::new(cmd.name(), &st)], ..Default::default() };
            if s.weights_degrees().is_some() {
                let qh = qh_modular_stratum(&s, kind, q)?;
                r.certify("euler derivation lifts", qh.euler_lift_verified, None);
                r.certify("hamiltonians lift", qh.hamiltonians_lift_verified, None);
                r.certify("stratum equals eigenvalue-zero subspace", qh.agrees_with(&st), None);
                section.quasihomogeneous = Some(qh_out(&fam, &s, &qh));
                r.timing.push("quasihomogeneous".into());
            }
            r.stratum = Some(section);
        }
        Command::Compare => {
            let c = compare_strata(&s, q)?;
            let mut section = StratumSection::default();
            for (label, st) in [
                ("plain", &c.plain),
                ("section", &c.section),
                ("singular-section plain", &c.singular_plain),
                ("singular-section with section", &c.singular_section_stratum),
            ] {
                if let Some(st) = st {
                    section.strata.push(StratumOut::new(label, st));
                }
            }
            let mut push = |label: &str, cmp: &Option<StrataComparison>| {
                if let Some(cmp) = cmp {
                    section.comparisons.push(ComparisonOut {
                        label: label.into(),
                        equal: cmp.equal,
                        witness: cmp.witness.clone(),
                    });
                }
            };
            push("plain vs section", &c.functors);
            push("singular-section flattening strata", &c.singular_section);
            r.stratum = Some(section);
            r.timing.push("compare".into());
        }
    }
    Ok(())
}

fn certify_family(fam: &DeformationFamily, s: &SingularityInput, r: &mut Report) {
    let special = fam.equations.map(|p| p.at_params_zero(s.ctx()));
    r.certify("family specializes to f", &special == s.f(), None);
}

fn qh_out(fam: &DeformationFamily, s: &SingularityInput, qh: &crate::modular::QhStratum) -> QhOut {
    QhOut {
        quasihomogeneous: true,
        degrees: s.weights_degrees(),
        eigenvalues: qh.eigenvalues.clone(),
        zero_parameters: qh.zero_params.iter().map(|&j| fam.param_names()[j].clone()).collect(),
        predicted_generators: qh.generators.iter().map(PolyOut::from).collect(),
    }
}

fn check_qh(s: &SingularityInput, q: u32, r: &mut Report) -> Result<()> {
    if s.ctx().weights().is_none() {
        return Err(Error::NoWeights);
    }
    let mut section = StratumSection::default();
    if s.weights_degrees().is_none() {
        section.quasihomogeneous = Some(QhOut {
            quasihomogeneous: false,
            degrees: None,
            eigenvalues: Vec::new(),
            zero_parameters: Vec::new(),
            predicted_generators: Vec::new(),
        });
        r.stratum = Some(section);
        return Ok(());
    }
    let fam = versal_family(s, FamilyKind::Plain, q)?;
    let qh = qh_modular_stratum(s, FamilyKind::Plain, q)?;
    r.certify("euler derivation lifts", qh.euler_lift_verified, None);
    r.certify("hamiltonians lift", qh.hamiltonians_lift_verified, None);
    let id = generator_identity(s)?;
    r.certify(
        "t0 generated by euler and hamiltonians",
        id.holds(),
        Some(format!("modulo trivial derivations and m^{}", id.truncation + 1)),
    );
    section.quasihomogeneous = Some(qh_out(&fam, s, &qh));
    r.stratum = Some(section);
    r.timing.push("quasihomogeneous".into());
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse;

    fn go(cmd: Command, text: &str) -> Report {
        run(cmd, &parse(text).unwrap(), &Options::default())
    }

    #[test]
    fn names_round_trip() {
        for c in Command::ALL {
            assert_eq!(c.name().parse::<Command>().unwrap(), c);
        }
        assert!("bogus".parse::<Command>().is_err());
    }

    #[test]
    fn invariants_of_cusp() {
        let r = go(Command::Invariants, "ring x, y\nf1 = x^3 - y^2");
        let v = r.invariants.unwrap();
        assert_eq!((v.milnor, v.tjurina, v.tjurina_section), (Some(2), 2, 3));
    }

    #[test]
    fn modular_section_of_x4y4() {
        let r = go(Command::ModularSection, "ring x, y\nweights 1, 1\nf1 = x^4 + y^4");
        assert!(r.is_ok(), "{:?}", r.error);
        let st = &r.stratum.as_ref().unwrap().strata[0];
        assert!(st.orders.iter().all(|o| o.linear && o.tangent_dim == 1 && o.smooth));
        assert!(r.certificates.iter().all(|c| c.holds), "{:?}", r.certificates);
    }

    #[test]
    fn check_qh_rejects_mixed_weights() {
        let r = go(Command::CheckQh, "ring x, y\nweights 2, 3\nf1 = x^3 + y^2 + y^3");
        assert!(r.is_ok());
        assert!(!r.stratum.unwrap().quasihomogeneous.unwrap().quasihomogeneous);
    }

    #[test]
    fn errors_carry_provenance() {
        let r = go(Command::Invariants, "ring x, y\nf1 = x*y^2");
        let e = r.error.unwrap();
        assert_eq!(e.module, "cotangent");
        assert!(e.message.contains("--jet"));
    }

    #[test]
    fn json_round_trips() {
        let r = go(Command::Modular, "ring x, y\nweights 2, 3\nf1 = x^3 - y^2");
        let j = r.to_json();
        assert_eq!(Report::from_json(&j).unwrap(), r);
        assert_eq!(go(Command::Modular, "ring x, y\nweights 2, 3\nf1 = x^3 - y^2").to_json(), j);
    }
}
