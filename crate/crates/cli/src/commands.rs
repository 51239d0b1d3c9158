use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};
use serde_json::json;

use propcalc::gradedlinear::{homology, ComplexJson, MapJson};
use propcalc::lifting::{
    check_zigzag, functorial_path_action, lift, lift_from_solutions, Lift, LiftProblem, LiftSolution,
    QuasiFreePresentation, ZigzagReport,
};
use propcalc::pathobject::path_object_unchecked;
use propcalc::pdiagramprops::{
    build_end_zp, build_pdiagram_props, check_pi_acyclic_fibration, pi_morphism, pushout_product_witness,
    PDiagramProps, PiFault,
};
use propcalc::propcore::{
    biarity_key, check_algebra, check_prop_axioms, tabulate, AlgebraJson, AxiomReport, MorphismReport, PAlgebra,
    Presentation, Prop, PropJson, PropMorphism, TruncatedProp,
};
use propcalc::{ChainMap, Error, Rational};

use crate::inputs::{self, detect, load_complex, load_presentation, load_prop, read, typed, Kind};
use crate::report::{canonical_json, RunReport};

/// Result of a command: its report and, for builders, a file to write to `--out`.
pub struct Outcome {
    pub report: RunReport,
    pub artifact: Option<String>,
}

impl From<RunReport> for Outcome {
    fn from(report: RunReport) -> Outcome {
        Outcome { report, artifact: None }
    }
}

/// A saved lift: enough to rebuild `l: P → End_𝒴(P)` without re-solving.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LiftFile {
    pub target: String,
    pub prop: PropJson,
    pub presentation: Presentation,
    pub solutions: Vec<LiftSolution>,
}

fn first_violation(laws: &[propcalc::propcore::LawReport]) -> serde_json::Value {
    laws.iter()
        .flat_map(|l| l.violations.first())
        .next()
        .map(|v| serde_json::to_value(v).unwrap_or_default())
        .unwrap_or_default()
}

fn axiom_check(report: &mut RunReport, name: &str, r: &AxiomReport) {
    let counts: BTreeMap<&str, usize> = r.laws.iter().map(|l| (l.law.as_str(), l.checked)).collect();
    report.data(&format!("{name}.instances"), counts);
    report.skipped(r.laws.iter().flat_map(|l| l.skipped_by_truncation.iter().cloned()));
    report.check(name, r.ok(), first_violation(&r.laws));
}

fn morphism_check(report: &mut RunReport, name: &str, r: &MorphismReport) -> bool {
    report.check(name, r.ok(), first_violation(&r.laws))
}

fn dims_of(p: &dyn Prop) -> BTreeMap<String, usize> {
    p.bound().biarities().into_iter().map(|b| (biarity_key(b), p.dim(b))).collect()
}

fn map_table(f: &ChainMap) -> BTreeMap<String, BTreeMap<String, Rational>> {
    let mut t: BTreeMap<String, BTreeMap<String, Rational>> = BTreeMap::new();
    for j in 0..f.source.dim() {
        for (i, c) in f.matrix.col(j).iter() {
            t.entry(f.source.label(j).to_string()).or_default().insert(f.target.label(i).to_string(), c.clone());
        }
    }
    t
}

/// An error that is a verdict about the input rather than a malformed file.
fn verdict_error(e: &Error) -> bool {
    matches!(
        e,
        Error::SquareZeroViolation { .. }
            | Error::NotChainMap(_)
            | Error::NotClosed { .. }
            | Error::NoSolution { .. }
            | Error::InconsistentPresentation(_)
            | Error::ZigzagViolation { .. }
            | Error::CompatibilityFailure(_)
            | Error::FactorizationFailure(_)
    )
}

fn error_witness(e: &Error) -> serde_json::Value {
    json!({ "error": e.to_string() })
}

pub fn validate(path: &Path, prop: Option<&Path>, bound: Option<usize>) -> Result<Outcome> {
    let mut report = RunReport::new("validate");
    let l = read(path)?;
    let kind = detect(&l.value)?;
    report.input(kind.name(), &l.bytes);
    report.data("kind", kind.name());
    // construction failures that are about the mathematics become checks
    let built = |report: &mut RunReport, name: &str, r: propcalc::Result<()>| -> Result<()> {
        match r {
            Ok(()) => {
                report.check(name, true, ());
                Ok(())
            }
            Err(e) if verdict_error(&e) => {
                report.check(name, false, error_witness(&e));
                Ok(())
            }
            Err(e) => Err(e.into()),
        }
    };
    match kind {
        Kind::Complex => {
            let j: ComplexJson = typed(&l, "complex")?;
            built(&mut report, "complex.d_squared_zero", j.to_complex().map(|_| ()))?;
        }
        Kind::Map => {
            let j: MapJson = typed(&l, "morphism")?;
            built(&mut report, "morphism.chain_map", j.to_map().map(|_| ()))?;
        }
        Kind::BiObject => {
            let mut v = l.value.clone();
            v["units"] = json!({});
            let mut j: PropJson = serde_json::from_value(v).context("not a valid biobject file")?;
            if let Some(b) = bound {
                j = inputs::truncate(j, b)?;
            }
            let p = TruncatedProp::from_json(&j)?;
            let bad = p.biobject.action_violations();
            report.check("biobject.actions", bad.is_empty(), bad.first());
        }
        Kind::Prop => {
            let mut j: PropJson = typed(&l, "prop")?;
            if let Some(b) = bound {
                j = inputs::truncate(j, b)?;
            }
            let p = TruncatedProp::from_json(&j)?;
            report.data("dims", dims_of(&p));
            axiom_check(&mut report, "prop.axioms", &check_prop_axioms(&p));
            if let Some(v) = &p.presentation {
                let pres: Presentation = serde_json::from_value(v.clone()).context("malformed presentation block")?;
                presentation_checks(&mut report, &p, pres)?;
            }
        }
        Kind::Presentation => {
            let pres: Presentation = typed(&l, "presentation")?;
            match prop {
                Some(pp) => {
                    let p = load_prop(pp, bound, &mut report)?;
                    presentation_checks(&mut report, &p, pres)?;
                }
                None => {
                    pres.generator_biarities()?;
                    report.check("presentation.parses", true, ());
                }
            }
        }
        Kind::Algebra => {
            let pp = prop.context("validating an algebra needs --prop")?;
            let p = load_prop(pp, bound, &mut report)?;
            let pres = load_presentation(None, &p, &mut report)?;
            let j: AlgebraJson = typed(&l, "algebra")?;
            let a = j.to_algebra(p, &pres)?;
            morphism_check(&mut report, "algebra.prop_morphism", &check_algebra(&a));
        }
        Kind::Lift => {
            let f: LiftFile = typed(&l, "lift")?;
            let p = Arc::new(TruncatedProp::from_json(&f.prop)?);
            let props = build_pdiagram_props(p.clone(), PiFault::None);
            rebuild_lift(&mut report, &props, p, f)?;
        }
    }
    Ok(report.into())
}

fn presentation_checks(report: &mut RunReport, p: &TruncatedProp, pres: Presentation) -> Result<()> {
    match pres.check(p) {
        Ok(skipped) => {
            report.check("presentation.words", true, ());
            report.skipped(skipped);
        }
        Err(e) if verdict_error(&e) => {
            report.check("presentation.words", false, error_witness(&e));
        }
        Err(e) => return Err(e.into()),
    }
    Ok(())
}

pub fn homology_cmd(complex: &Path) -> Result<Outcome> {
    let mut report = RunReport::new("homology");
    let x = load_complex(complex, &mut report)?;
    report.data("dims", x.dims());
    report.data("homology", homology(&x));
    Ok(report.into())
}

pub fn path_object_cmd(complex: &Path) -> Result<Outcome> {
    let mut report = RunReport::new("path-object");
    let x = load_complex(complex, &mut report)?;
    let f = path_object_unchecked(x)?;
    for v in &f.verdicts {
        report.check(&v.check, v.pass, json!({ "map": v.check }));
    }
    let artifact = json!({
        "x": ComplexJson::from_complex(&f.x),
        "zx": ComplexJson::from_complex(&f.zx),
        "s": map_table(&f.s),
        "d0": map_table(&f.d0),
        "d1": map_table(&f.d1),
    });
    report.data("zx_dims", f.zx.dims());
    report.data("zx_homology", homology(&f.zx));
    Ok(Outcome { report, artifact: Some(canonical_json(&artifact)) })
}

/// Which of the three props to materialize.
#[derive(Clone, Copy, Debug)]
pub enum Built {
    Zp,
    CalZp,
    Yp,
}

pub fn build_cmd(which: Built, prop: &Path, bound: Option<usize>, fault: PiFault, write: bool) -> Result<Outcome> {
    let name = match which {
        Built::Zp => "build-zp",
        Built::CalZp => "build-calzp",
        Built::Yp => "build-yp",
    };
    let mut report = RunReport::new(name);
    let p: Arc<dyn Prop> = load_prop(prop, bound, &mut report)?;
    let built: Arc<dyn Prop> = match which {
        Built::Zp => {
            let zp = report.stage("build", |_| build_end_zp(p.clone()));
            let bad: Vec<String> = p
                .bound()
                .biarities()
                .into_iter()
                .filter(|&(m, n)| zp.prop.dim((m, n)) != 5usize.pow((m + n) as u32) * p.dim((m, n)))
                .map(biarity_key)
                .collect();
            report.check("zp.dimension_formula", bad.is_empty(), &bad);
            zp.prop
        }
        Built::CalZp | Built::Yp => {
            let props = report.stage("build", |_| build_pdiagram_props(p.clone(), fault));
            match which {
                Built::CalZp => props.cal_z,
                _ => props.cal_y,
            }
        }
    };
    report.data("dims", dims_of(built.as_ref()));
    let artifact = if write {
        let t = report.stage("tabulate", |_| tabulate(built.as_ref()))?;
        Some(canonical_json(&t.to_json()))
    } else {
        None
    };
    Ok(Outcome { report, artifact })
}

fn pi_checks(report: &mut RunReport, props: &PDiagramProps) -> bool {
    let r = check_pi_acyclic_fibration(props);
    let failing: Vec<_> = r.components.iter().filter(|c| !(c.surjective && c.quasi_iso)).collect();
    report.data("pi.components", &r.components);
    let a = report.check("pi.acyclic_fibration", r.acyclic_fibration(), failing.first());
    let missing: Vec<usize> = r.units.iter().filter(|(_, ok)| !**ok).map(|(n, _)| *n).collect();
    let b = report.check("pi.units", r.units_ok(), json!({ "missing_units": missing }));
    a && b
}

pub fn check_pi_cmd(prop: &Path, bound: Option<usize>, fault: PiFault) -> Result<Outcome> {
    let mut report = RunReport::new("check-pi");
    let p = load_prop(prop, bound, &mut report)?;
    let props = report.stage("build", |_| build_pdiagram_props(p, fault));
    report.stage("check-pi", |r| pi_checks(r, &props));
    Ok(report.into())
}

pub fn pushout_product_cmd(max: usize) -> Result<Outcome> {
    let mut report = RunReport::new("pushout-product");
    for m in 0..=max {
        for n in 0..=max {
            let w = pushout_product_witness(m, n)?;
            report.check(&format!("pushout_product.{m},{n}"), w.ok(), &w);
        }
    }
    Ok(report.into())
}

fn lift_checks(report: &mut RunReport, l: &Lift) -> bool {
    report.data("lift.generators", &l.generators);
    let a = report.check("lift.commutes", l.commutes, json!({ "detail": "π∘l ≠ id" }));
    let b = morphism_check(report, "lift.prop_morphism", &l.check);
    a && b
}

fn solve_lift(report: &mut RunReport, props: &PDiagramProps, pres: Presentation) -> Result<Option<Lift>> {
    let p = props.p().clone();
    let qp = match QuasiFreePresentation::new(p.clone(), pres) {
        Ok(q) => q,
        Err(e) if verdict_error(&e) => {
            report.check("lift.presentation", false, error_witness(&e));
            return Ok(None);
        }
        Err(e) => return Err(e.into()),
    };
    report.check("lift.presentation", true, ());
    let problem = LiftProblem { presentation: qp, q: pi_morphism(props)?, base: PropMorphism::identity(p) };
    match lift(&problem) {
        Ok(l) => {
            report.check("lift.solved", true, ());
            Ok(lift_checks(report, &l).then_some(l))
        }
        Err(e @ Error::NoSolution { .. }) => {
            report.check("lift.solved", false, error_witness(&e));
            Ok(None)
        }
        Err(e) => Err(e.into()),
    }
}

fn rebuild_lift(report: &mut RunReport, props: &PDiagramProps, p: Arc<TruncatedProp>, f: LiftFile) -> Result<Lift> {
    if f.target != "yp" {
        bail!("unsupported lift target {:?}", f.target);
    }
    let qp = QuasiFreePresentation::new(p.clone(), f.presentation)?;
    let problem = LiftProblem { presentation: qp, q: pi_morphism(props)?, base: PropMorphism::identity(p) };
    let l = lift_from_solutions(&problem, f.solutions)?;
    lift_checks(report, &l);
    Ok(l)
}

pub fn lift_cmd(prop: &Path, presentation: Option<&Path>, bound: Option<usize>, fault: PiFault) -> Result<Outcome> {
    let mut report = RunReport::new("lift");
    let p = load_prop(prop, bound, &mut report)?;
    let pres = load_presentation(presentation, &p, &mut report)?;
    let props = report.stage("build", |_| build_pdiagram_props(p.clone(), fault));
    let l = report.stage("lift", |r| solve_lift(r, &props, pres.clone()))?;
    let artifact = l.map(|l| {
        canonical_json(&LiftFile {
            target: "yp".into(),
            prop: p.to_json(),
            presentation: pres,
            solutions: l.generators,
        })
    });
    Ok(Outcome { report, artifact })
}

fn zigzag_checks(report: &mut RunReport, props: &PDiagramProps, l: &Lift, a: &PAlgebra) -> Result<bool> {
    let z = functorial_path_action(props, &l.morphism, a)?;
    let r: ZigzagReport = check_zigzag(&z, a);
    report.data("zigzag.zx_dims", z.zx.dims());
    let mut ok = report.check("zigzag.vertex_actions", r.vertex_actions_match, ());
    ok &= report.check(
        "zigzag.maps_commute",
        r.violations.is_empty(),
        r.violations.first().map(|(g, a)| json!({ "operation": g, "arrow": a })),
    );
    ok &= report.check("zigzag.d0_quasi_iso", r.d0_quasi_iso, ());
    ok &= report.check("zigzag.d1_quasi_iso", r.d1_quasi_iso, ());
    ok &= report.check("zigzag.z_action_is_algebra", r.z_action_is_algebra, ());
    Ok(ok)
}

pub fn zigzag_cmd(lift_path: &Path, algebra: &Path) -> Result<Outcome> {
    let mut report = RunReport::new("zigzag");
    let l = read(lift_path)?;
    report.input("lift", &l.bytes);
    let f: LiftFile = typed(&l, "lift")?;
    let p = Arc::new(TruncatedProp::from_json(&f.prop)?);
    let pres = f.presentation.clone();
    let props = report.stage("build", |_| build_pdiagram_props(p.clone(), PiFault::None));
    let lifted = rebuild_lift(&mut report, &props, p.clone(), f)?;
    let la = read(algebra)?;
    report.input("algebra", &la.bytes);
    let a = typed::<AlgebraJson>(&la, "algebra")?.to_algebra(p, &pres)?;
    morphism_check(&mut report, "algebra.prop_morphism", &check_algebra(&a));
    report.stage("zigzag", |r| zigzag_checks(r, &props, &lifted, &a))?;
    Ok(report.into())
}

pub struct PipelineArgs {
    pub prop: PathBuf,
    pub algebra: PathBuf,
    pub presentation: Option<PathBuf>,
    pub bound: Option<usize>,
    pub fault: PiFault,
}

/// Axioms, the three props, `π`, the lift and the zigzag, in that order.
/// A failing stage stops the run.
pub fn pipeline(args: &PipelineArgs) -> Result<Outcome> {
    let mut report = RunReport::new("pipeline");
    let p = load_prop(&args.prop, args.bound, &mut report)?;
    let pres = load_presentation(args.presentation.as_deref(), &p, &mut report)?;
    let la = read(&args.algebra)?;
    report.input("algebra", &la.bytes);
    let a = typed::<AlgebraJson>(&la, "algebra")?.to_algebra(p.clone(), &pres)?;
    report.data("bound", p.bound().0);
    report.data("prop.dims", dims_of(p.as_ref()));

    let mut stages = vec!["axioms"];
    report.stage("axioms", |r| {
        axiom_check(r, "prop.axioms", &check_prop_axioms(p.as_ref()));
        morphism_check(r, "algebra.prop_morphism", &check_algebra(&a));
    });
    if !report.pass {
        return Ok(finish(report, stages));
    }
    stages.push("build");
    let props = report.stage("build", |_| build_pdiagram_props(p.clone(), args.fault));
    report.data("zp.dims", dims_of(props.zp.prop.as_ref()));
    report.data("cal_z.dims", dims_of(props.cal_z.as_ref()));
    report.data("cal_y.dims", dims_of(props.cal_y.as_ref()));
    stages.push("check-pi");
    if !report.stage("check-pi", |r| pi_checks(r, &props)) {
        return Ok(finish(report, stages));
    }
    stages.push("lift");
    let Some(l) = report.stage("lift", |r| solve_lift(r, &props, pres))? else {
        return Ok(finish(report, stages));
    };
    stages.push("zigzag");
    report.stage("zigzag", |r| zigzag_checks(r, &props, &l, &a))?;
    Ok(finish(report, stages))
}

fn finish(mut report: RunReport, stages: Vec<&str>) -> Outcome {
    report.data("stages_run", stages);
    report.into()
}
