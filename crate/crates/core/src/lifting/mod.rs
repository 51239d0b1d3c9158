//! Lifting quasi-freely presented props against componentwise acyclic
//! fibrations, the functorial `P`-action on the path object, and the zigzag
//! checks.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::biobject::Biarity;
use crate::error::{Error, Result};
use crate::gradedlinear::{is_fibration, is_quasi_iso, kron_power, ChainComplex, ChainMap};
use crate::linalg::{left_kernel, solve, Matrix, SparseVec};
use crate::pdiagramprops::{build_ev, PDiagramProps};
use crate::propcore::{
    check_prop_morphism, evaluate_word, EndomorphismProp, MorphismReport, PAlgebra, Presentation, Prop, PropMorphism,
};

/// A quasi-free presentation bound to the prop it presents. Generators are
/// well-ordered by degree, then name; each differential word may only use
/// strictly earlier generators.
pub struct QuasiFreePresentation {
    pub prop: Arc<dyn Prop>,
    pub presentation: Presentation,
    /// `(name, biarity, basis index, degree)` in the well-order.
    pub order: Vec<(String, Biarity, usize, i32)>,
}

impl QuasiFreePresentation {
    pub fn new(prop: Arc<dyn Prop>, presentation: Presentation) -> Result<QuasiFreePresentation> {
        let order = presentation.generators_by_degree(prop.as_ref())?;
        for (k, (g, _, _, _)) in order.iter().enumerate() {
            if let Some(w) = presentation.dwords.get(g) {
                let mut used = Vec::new();
                w.generators(&mut used);
                let earlier: Vec<&String> = order[..k].iter().map(|o| &o.0).collect();
                if let Some(bad) = used.iter().find(|u| !earlier.contains(u)) {
                    return Err(Error::InconsistentPresentation(format!(
                        "d{g} uses {bad}, which is not an earlier generator"
                    )));
                }
            }
        }
        let skipped = presentation.check(prop.as_ref())?;
        if let Some(s) = skipped.first() {
            return Err(Error::InconsistentPresentation(format!(
                "word for {s} leaves the truncation bound; lifting needs every word evaluable"
            )));
        }
        Ok(QuasiFreePresentation { prop, presentation, order })
    }
}

/// Lift `base: P → B` through `q: E → B`.
pub struct LiftProblem {
    pub presentation: QuasiFreePresentation,
    pub q: PropMorphism,
    pub base: PropMorphism,
}

/// A generator whose linear system has no solution, with a functional `y`
/// on the stacked target `B(b) ⊕ E(b)` that kills every `(q(x), dx)` but
/// not the right-hand side.
#[derive(Clone, Debug, Serialize)]
pub struct Inconsistency {
    pub generator: String,
    pub functional: Vec<(usize, String)>,
    pub pairing: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, serde::Deserialize)]
pub struct LiftSolution {
    pub generator: String,
    pub biarity: Biarity,
    pub value: Vec<(usize, String)>,
}

pub struct Lift {
    pub morphism: PropMorphism,
    pub generators: Vec<LiftSolution>,
    pub check: MorphismReport,
    pub commutes: bool,
}

fn entries(v: &SparseVec) -> Vec<(usize, String)> {
    v.iter().map(|(i, c)| (i, c.to_string())).collect()
}

/// Solves the generators in order: `q(ĝ) = base(g)`, `dĝ = ` the
/// differential word evaluated on earlier lifts, `ĝ` homogeneous of degree
/// `|g|`. Among the solutions the basic one (free variables zero, so
/// supported on the earliest pivot columns) is taken. Extends along the
/// basis words and verifies `q∘l = base` and the morphism laws.
pub fn lift(problem: &LiftProblem) -> Result<Lift> {
    let pres = &problem.presentation;
    let p = pres.prop.clone();
    let (e, b_prop) = (problem.q.source.clone(), problem.q.target.clone());
    if problem.base.source.bound() != p.bound() || problem.base.target.bound() != b_prop.bound() {
        return Err(Error::ShapeMismatch("lift problem with mismatched bounds".into()));
    }
    let mut assignment: BTreeMap<String, (Biarity, SparseVec)> = BTreeMap::new();
    let mut solutions = Vec::new();
    for (g, b, i, deg) in &pres.order {
        let comp = e.component(*b);
        let cols: Vec<usize> = comp.in_degree(*deg).to_vec();
        let qm = &problem.q.maps[b];
        let dm = comp.d();
        let nb = qm.nrows();
        // stacked system [q; d] restricted to degree-|g| unknowns
        let a = Matrix::from_columns(
            nb + comp.dim(),
            cols.iter().map(|&c| qm.col(c).add(&dm.col(c).shifted(nb))).collect(),
        );
        let target_b = problem.base.apply(*b, &SparseVec::unit(*i));
        let target_d = match pres.presentation.dwords.get(g) {
            Some(w) => evaluate_word(w, e.as_ref(), &assignment)?.1,
            None => SparseVec::new(),
        };
        let rhs = target_b.add(&target_d.shifted(nb));
        match solve(&a, &rhs) {
            Some(x) => {
                let v = x.reindex(|k| Some(cols[k]));
                solutions.push(LiftSolution { generator: g.clone(), biarity: *b, value: entries(&v) });
                assignment.insert(g.clone(), (*b, v));
            }
            None => {
                let w = inconsistency(g, &a, &rhs);
                return Err(Error::NoSolution {
                    generator: g.clone(),
                    detail: format!("functional {:?} pairs to {} with the target", w.functional, w.pairing),
                });
            }
        }
    }
    let morphism = extend_along_words(pres, e.clone(), &assignment)?;
    let commutes = problem.q.after(&morphism).maps == problem.base.maps;
    let check = check_prop_morphism(&morphism);
    Ok(Lift { morphism, generators: solutions, check, commutes })
}

/// The morphism `P → E` determined by generator values, evaluating the
/// word of every basis element.
pub fn extend_along_words(
    pres: &QuasiFreePresentation,
    e: Arc<dyn Prop>,
    assignment: &BTreeMap<String, (Biarity, SparseVec)>,
) -> Result<PropMorphism> {
    let p = pres.prop.clone();
    PropMorphism::from_fn(p.clone(), e.clone(), |b, k| {
        let w = pres.presentation.word(p.as_ref(), b, k)?;
        let (wb, v) = evaluate_word(w, e.as_ref(), assignment)?;
        if wb != b {
            return Err(Error::InconsistentPresentation(format!("word {w} has biarity {wb:?}, expected {b:?}")));
        }
        Ok(v)
    })
}

/// Rebuilds a lift from stored generator values and re-runs its checks.
pub fn lift_from_solutions(problem: &LiftProblem, solutions: Vec<LiftSolution>) -> Result<Lift> {
    let e = problem.q.source.clone();
    let mut assignment = BTreeMap::new();
    for s in &solutions {
        let mut entries = Vec::new();
        for (i, c) in &s.value {
            entries.push((*i, c.parse()?));
        }
        assignment.insert(s.generator.clone(), (s.biarity, SparseVec::from_entries(entries)));
    }
    for (g, ..) in &problem.presentation.order {
        if !assignment.contains_key(g) {
            return Err(Error::NoSolution { generator: g.clone(), detail: "no stored value".into() });
        }
    }
    let morphism = extend_along_words(&problem.presentation, e, &assignment)?;
    let commutes = problem.q.after(&morphism).maps == problem.base.maps;
    let check = check_prop_morphism(&morphism);
    Ok(Lift { morphism, generators: solutions, check, commutes })
}

/// Certificate that `a x = rhs` is infeasible.
pub fn inconsistency(generator: &str, a: &Matrix, rhs: &SparseVec) -> Inconsistency {
    let lk = left_kernel(a);
    let y = lk
        .basis
        .iter()
        .find(|y| !y.dot(rhs).is_zero())
        .cloned()
        .expect("an infeasible system has a separating functional");
    Inconsistency { generator: generator.into(), pairing: y.dot(rhs).to_string(), functional: entries(&y) }
}

/// `P → End_{𝒴(X)}` read off as actions on each vertex, with the maps of the zigzag
/// `X₀ ← Z(X) → X₁` and `s: X → Z(X)`.
pub struct Zigzag {
    pub x: Arc<ChainComplex>,
    pub zx: Arc<ChainComplex>,
    pub s: ChainMap,
    pub d0: ChainMap,
    pub d1: ChainMap,
    /// Actions on `Z(X), X₀, X₁, X`.
    pub actions: Vec<PropMorphism>,
    pub ends: Vec<Arc<EndomorphismProp>>,
    pub vertex_names: Vec<String>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ZigzagReport {
    /// The `X₀`, `X₁` and `X` actions equal the input action.
    pub vertex_actions_match: bool,
    /// `(generator, arrow)` pairs where the arrow fails to commute with the operation.
    pub violations: Vec<(String, String)>,
    pub d0_quasi_iso: bool,
    pub d1_quasi_iso: bool,
    pub z_action_is_algebra: bool,
}

impl ZigzagReport {
    pub fn ok(&self) -> bool {
        self.vertex_actions_match
            && self.violations.is_empty()
            && self.d0_quasi_iso
            && self.d1_quasi_iso
            && self.z_action_is_algebra
    }
}

/// `f^{⊗n}∘φ_s(p) = φ_t(p)∘f^{⊗m}` for an arrow `f` between vertices.
fn commutes_with(f: &Matrix, src: &Matrix, tgt: &Matrix, (m, n): Biarity) -> bool {
    kron_power(f, n).compose(src) == tgt.compose(&kron_power(f, m))
}

/// Composes `l: P → End_{𝒴(P)}` with `ev_X`.
pub fn functorial_path_action(props: &PDiagramProps, l: &PropMorphism, alg: &PAlgebra) -> Result<Zigzag> {
    let ev = build_ev(props, alg)?;
    let act = ev.cal_y.morphism.after(l);
    let target = ev.cal_y.target.clone();
    let bound = props.p().bound();
    let mut actions = Vec::new();
    for (o, end) in target.ends.iter().enumerate() {
        let maps = bound
            .biarities()
            .into_iter()
            .map(|b| {
                let cols = (0..props.p().dim(b))
                    .map(|k| target.family(b, &act.apply(b, &SparseVec::unit(k))).swap_remove(o))
                    .collect();
                (b, Matrix::from_columns(end.dim(b), cols))
            })
            .collect();
        actions.push(PropMorphism::new(props.p().clone(), end.clone(), maps)?);
    }
    let path = ev.z.path;
    Ok(Zigzag {
        x: path.x.clone(),
        zx: path.zx.clone(),
        s: path.s,
        d0: path.d0,
        d1: path.d1,
        actions,
        ends: target.ends.clone(),
        vertex_names: target.shape.objects.iter().map(|(n, _)| n.clone()).collect(),
    })
}

/// Checks the zigzag against the input action on every basis element of `P`.
pub fn check_zigzag(z: &Zigzag, alg: &PAlgebra) -> ZigzagReport {
    let bound = alg.prop.bound();
    let vertex_actions_match =
        (1..4).all(|o| bound.biarities().into_iter().all(|b| z.actions[o].maps[&b] == alg.action.maps[&b]));
    let mut violations = Vec::new();
    let arrows: [(&str, &ChainMap, usize, usize); 3] = [("d0", &z.d0, 0, 1), ("d1", &z.d1, 0, 2), ("s", &z.s, 3, 0)];
    for b in bound.biarities() {
        let labels = alg.prop.component(b);
        for k in 0..labels.dim() {
            for (name, f, s, t) in arrows {
                let op = |o: usize| z.ends[o].matrix_of(b, &z.actions[o].apply(b, &SparseVec::unit(k)));
                if !commutes_with(&f.matrix, &op(s), &op(t), b) {
                    violations.push((format!("{}@{},{}", labels.label(k), b.0, b.1), name.to_string()));
                }
            }
        }
    }
    ZigzagReport {
        vertex_actions_match,
        violations,
        d0_quasi_iso: is_quasi_iso(&z.d0),
        d1_quasi_iso: is_quasi_iso(&z.d1),
        z_action_is_algebra: check_prop_morphism(&z.actions[0]).ok(),
    }
}

/// `Err(ZigzagViolation)` at the first failing generator and arrow.
pub fn require_zigzag(r: &ZigzagReport) -> Result<()> {
    if let Some((g, a)) = r.violations.first() {
        return Err(Error::ZigzagViolation { generator: g.clone(), arrow: a.clone() });
    }
    Ok(())
}

/// Outcome of [`verify_homotopy_zigzag`]: the two components
/// `φ*(X) ← Z(X) → ψ*(X)` at `X`.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct HomotopyReport {
    pub d0_algebra_morphism: bool,
    pub d1_algebra_morphism: bool,
    pub d0_weak_equivalence: bool,
    pub d1_weak_equivalence: bool,
    pub d0_fibration: bool,
    pub d1_fibration: bool,
}

impl HomotopyReport {
    pub fn ok(&self) -> bool {
        self.d0_algebra_morphism && self.d1_algebra_morphism && self.d0_weak_equivalence && self.d1_weak_equivalence
    }
}

/// Given `m: P → End_{𝒵(P)}` with `u*∘m = (φ, ψ)`, evaluates on `X` and
/// checks that `d₀: Z(X) → φ*(X)` and `d₁: Z(X) → ψ*(X)` are `P`-algebra weak
/// equivalences.
pub fn verify_homotopy_zigzag(
    props: &PDiagramProps,
    m: &PropMorphism,
    phi: &PropMorphism,
    psi: &PropMorphism,
    alg: &PAlgebra,
) -> Result<HomotopyReport> {
    let tp = props.t_prop();
    let bound = props.p().bound();
    for b in bound.biarities() {
        for k in 0..props.p().dim(b) {
            let parts = props.cal_z_parts(b, &m.apply(b, &SparseVec::unit(k)));
            let want = tp.assemble(b, &[phi.apply(b, &SparseVec::unit(k)), psi.apply(b, &SparseVec::unit(k))]);
            if tp.assemble(b, &parts[1..]) != want {
                return Err(Error::CompatibilityFailure(format!("u*∘m ≠ (φ, ψ) on basis {k} of {b:?}")));
            }
        }
    }
    let ev = build_ev(props, alg)?;
    let act = ev.cal_z.morphism.after(m);
    let target = &ev.cal_z.target;
    let path = &ev.z.path;
    let (mut ok0, mut ok1) = (true, true);
    for b in bound.biarities() {
        for k in 0..props.p().dim(b) {
            let fam = target.family(b, &act.apply(b, &SparseVec::unit(k)));
            let mz = target.ends[0].matrix_of(b, &fam[0]);
            // φ*(X) and ψ*(X): the input action pulled back along φ, ψ
            let m0 = alg.operation(b, &phi.apply(b, &SparseVec::unit(k)));
            let m1 = alg.operation(b, &psi.apply(b, &SparseVec::unit(k)));
            ok0 &= commutes_with(&path.d0.matrix, &mz, &m0, b);
            ok1 &= commutes_with(&path.d1.matrix, &mz, &m1, b);
        }
    }
    Ok(HomotopyReport {
        d0_algebra_morphism: ok0,
        d1_algebra_morphism: ok1,
        d0_weak_equivalence: is_quasi_iso(&path.d0),
        d1_weak_equivalence: is_quasi_iso(&path.d1),
        d0_fibration: is_fibration(&path.d0),
        d1_fibration: is_fibration(&path.d1),
    })
}
