//! Evaluation morphisms `ev_X: End_{𝒟(P)} → End_{𝒟(X)}` induced by a
//! `P`-algebra structure on `X`, and the diagrams `𝒟(X)` themselves.

use std::sync::Arc;

use super::{EndZP, PDiagramProps};
use crate::biobject::{tuple_digits, tuple_index, Biarity};
use crate::error::{Error, Result};
use crate::gradedlinear::{ChainComplex, ChainMap};
use crate::linalg::{Accumulator, Matrix, SparseVec};
use crate::pathobject::{path_object, PathFactorization};
use crate::propcore::{
    diagram_endomorphism_prop, DiagramProp, DiagramShape, EndomorphismProp, PAlgebra, Prop, PropMorphism,
};

/// The shapes of diagram handled here.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiagramTag {
    /// `Z(X)` alone.
    Z,
    /// `X₀ ← Z(X) → X₁`.
    CalZ,
    /// `X₀ ← Z(X) → X₁` with `s: X → Z(X)`.
    CalY,
    /// `X₀ ← X → X₁`, both arrows identities.
    V,
    /// `X₀, X₁`, no arrows.
    T,
}

/// `𝒟(X)` as a diagram of complexes. Objects are listed in the order
/// `Z(X), X₀, X₁, X` (restricted to those present).
pub fn diagram_of(tag: DiagramTag, f: &PathFactorization) -> Result<DiagramShape> {
    let x = f.x.clone();
    let zx = f.zx.clone();
    let obj = |n: &str, c: &Arc<ChainComplex>| (n.to_string(), c.clone());
    Ok(match tag {
        DiagramTag::Z => DiagramShape::new(vec![obj("Z(X)", &zx)]),
        DiagramTag::CalZ => DiagramShape::new(vec![obj("Z(X)", &zx), obj("X₀", &x), obj("X₁", &x)])
            .arrow("d0", 0, 1, f.d0.clone())?
            .arrow("d1", 0, 2, f.d1.clone())?,
        DiagramTag::CalY => DiagramShape::new(vec![obj("Z(X)", &zx), obj("X₀", &x), obj("X₁", &x), obj("X", &x)])
            .arrow("d0", 0, 1, f.d0.clone())?
            .arrow("d1", 0, 2, f.d1.clone())?
            .arrow("s", 3, 0, f.s.clone())?,
        DiagramTag::V => DiagramShape::new(vec![obj("X", &x), obj("X₀", &x), obj("X₁", &x)])
            .arrow("=₀", 0, 1, ChainMap::identity(x.clone()))?
            .arrow("=₁", 0, 2, ChainMap::identity(x.clone()))?,
        DiagramTag::T => DiagramShape::new(vec![obj("X₀", &x), obj("X₁", &x)]),
    })
}

/// Sign of `(a₁⊗b₁)⊗…⊗(a_k⊗b_k) ↦ (a₁⊗…⊗a_k)⊗(b₁⊗…⊗b_k)`; the inverse
/// shuffle has the same sign.
fn shuffle_sign(a: &[i32], b: &[i32]) -> bool {
    let mut odd = 0i64;
    for k in 0..b.len() {
        for l in k + 1..a.len() {
            odd += (b[k] * a[l]) as i64;
        }
    }
    odd.rem_euclid(2) == 1
}

/// `ev_X` on `End_{Z(P)}`: `z_j*⊗z'_i⊗p ↦ unshuffle ∘ (E_ij ⊗ φ(p)) ∘ shuffle`
/// in `End_{Z⊗X}`, with the tensor of maps `(f⊗g)(a⊗b) = (−1)^{|g||a|} f(a)⊗g(b)`.
pub struct EvZ {
    pub path: PathFactorization,
    pub target: Arc<EndomorphismProp>,
    pub morphism: PropMorphism,
}

pub fn ev_z(zp: &EndZP, alg: &PAlgebra) -> Result<EvZ> {
    let path = path_object(alg.x().clone())?;
    let z = zp.end_z.base().clone();
    let x = alg.x().clone();
    let (dz, dx) = (z.dim(), x.dim());
    let target = Arc::new(EndomorphismProp::new(path.zx.clone(), zp.prop.bound()));
    let p = zp.p.clone();
    let morphism = PropMorphism::from_fn(zp.prop.clone(), target.clone(), |b, k| {
        let (m, n) = b;
        let (j, i, q) = zp.split(b, k);
        let phi = alg.operation(b, &SparseVec::unit(q));
        let deg_p = p.component(b).degree(q);
        let zin = tuple_digits(j, dz, m);
        let zout = tuple_digits(i, dz, n);
        let zin_deg: Vec<i32> = zin.iter().map(|&t| z.degree(t)).collect();
        let zout_deg: Vec<i32> = zout.iter().map(|&t| z.degree(t)).collect();
        let a_deg: i32 = zin_deg.iter().sum();
        let out_dim = (dz * dx).pow(n as u32);
        let mut acc = Accumulator::new();
        for w in 0..dx.pow(m as u32) {
            let col = phi.col(w);
            if col.is_zero() {
                continue;
            }
            let xin = tuple_digits(w, dx, m);
            let xin_deg: Vec<i32> = xin.iter().map(|&t| x.degree(t)).collect();
            let src: Vec<usize> = zin.iter().zip(&xin).map(|(&a, &c)| a * dx + c).collect();
            let src = tuple_index(&src, dz * dx);
            let sign = shuffle_sign(&zin_deg, &xin_deg) ^ ((deg_p * a_deg).rem_euclid(2) == 1);
            for (v, c) in col.iter() {
                let xout = tuple_digits(v, dx, n);
                let xout_deg: Vec<i32> = xout.iter().map(|&t| x.degree(t)).collect();
                let s2 = sign ^ shuffle_sign(&zout_deg, &xout_deg);
                let tgt: Vec<usize> = zout.iter().zip(&xout).map(|(&a, &c)| a * dx + c).collect();
                let tgt = tuple_index(&tgt, dz * dx);
                let coeff = if s2 { -c.clone() } else { c.clone() };
                acc.add(src * out_dim + tgt, &coeff);
            }
        }
        Ok(acc.finish())
    })?;
    Ok(EvZ { path, target, morphism })
}

/// An evaluation morphism into the endomorphism prop of a diagram.
pub struct EvDiagram {
    pub tag: DiagramTag,
    pub target: Arc<DiagramProp>,
    pub morphism: PropMorphism,
}

/// Evaluates each factor of a family and assembles the result.
fn ev_family(
    tag: DiagramTag,
    source: Arc<dyn Prop>,
    shape: DiagramShape,
    bound: crate::biobject::BiarityBound,
    factors: impl Fn(Biarity, usize) -> Result<Vec<SparseVec>> + Sync,
) -> Result<EvDiagram> {
    let target = Arc::new(diagram_endomorphism_prop(shape, bound));
    let t = target.clone();
    let morphism = PropMorphism::from_fn(source, target.clone(), move |b, k| {
        let fam = factors(b, k)?;
        t.from_family(b, &fam).map_err(|e| match e {
            Error::NotClosed { biarity, detail } => {
                Error::NotClosed { biarity, detail: format!("ev of basis {k}: {detail}") }
            }
            e => e,
        })
    })?;
    Ok(EvDiagram { tag, target, morphism })
}

/// All five evaluation morphisms for one algebra.
pub struct Evaluations {
    pub z: EvZ,
    pub cal_z: EvDiagram,
    pub cal_y: EvDiagram,
    pub v: EvDiagram,
    pub t: EvDiagram,
}

pub fn build_ev(props: &PDiagramProps, alg: &PAlgebra) -> Result<Evaluations> {
    let z = ev_z(&props.zp, alg)?;
    let bound = props.p().bound();
    let phi = |b: Biarity, v: &SparseVec| alg.action.apply(b, v);
    let evz = &z.morphism;

    let cal_z =
        ev_family(DiagramTag::CalZ, props.cal_z.clone(), diagram_of(DiagramTag::CalZ, &z.path)?, bound, |b, k| {
            let parts = props.cal_z_parts(b, &SparseVec::unit(k));
            Ok(vec![evz.apply(b, &parts[0]), phi(b, &parts[1]), phi(b, &parts[2])])
        })?;
    let cal_y =
        ev_family(DiagramTag::CalY, props.cal_y.clone(), diagram_of(DiagramTag::CalY, &z.path)?, bound, |b, k| {
            let parts = props.cal_y_parts(b, &SparseVec::unit(k));
            Ok(vec![evz.apply(b, &parts[0]), phi(b, &parts[1]), phi(b, &parts[2]), phi(b, &parts[3])])
        })?;
    let v = ev_family(DiagramTag::V, props.p().clone(), diagram_of(DiagramTag::V, &z.path)?, bound, |b, k| {
        let e = phi(b, &SparseVec::unit(k));
        Ok(vec![e.clone(), e.clone(), e])
    })?;
    let t_source = props.t_prop();
    let ts = t_source.clone();
    let t = ev_family(DiagramTag::T, t_source, diagram_of(DiagramTag::T, &z.path)?, bound, move |b, k| {
        let u = SparseVec::unit(k);
        Ok(vec![phi(b, &ts.part(b, &u, 0)), phi(b, &ts.part(b, &u, 1))])
    })?;
    Ok(Evaluations { z, cal_z, cal_y, v, t })
}

/// `D(f)(i)^{⊗n} ∘ φ_X(i) = φ_Y(i) ∘ D(f)(i)^{⊗m}` for one element and one
/// object, with `D(f)(i)` given as a matrix.
pub fn naturality_holds(phi_x: &Matrix, phi_y: &Matrix, f: &Matrix, (m, n): Biarity) -> bool {
    let fm = crate::gradedlinear::kron_power(f, m);
    let fn_ = crate::gradedlinear::kron_power(f, n);
    fn_.compose(phi_x) == phi_y.compose(&fm)
}

/// A failed naturality square.
#[derive(Clone, Debug, serde::Serialize, PartialEq, Eq)]
pub struct NaturalityFailure {
    pub biarity: Biarity,
    pub basis: usize,
    pub object: String,
}

/// Checks every naturality square of `ev` along an algebra morphism
/// `f: X → Y`, on every basis element of the source and every object.
pub fn check_naturality(ev_x: &EvDiagram, ev_y: &EvDiagram, f: &ChainMap) -> Vec<NaturalityFailure> {
    let shape = &ev_x.target.shape;
    let id_z = Matrix::identity(crate::pathobject::make_z().complex.dim());
    // D(f) is id_Z ⊗ f on Z(X) and f elsewhere
    let df: Vec<Matrix> = shape
        .objects
        .iter()
        .map(|(name, _)| if name == "Z(X)" { crate::gradedlinear::kron(&id_z, &f.matrix) } else { f.matrix.clone() })
        .collect();
    let mut out = Vec::new();
    for b in ev_x.morphism.source.bound().biarities() {
        for k in 0..ev_x.morphism.source.dim(b) {
            let u = SparseVec::unit(k);
            let fx = ev_x.target.family(b, &ev_x.morphism.apply(b, &u));
            let fy = ev_y.target.family(b, &ev_y.morphism.apply(b, &u));
            for (o, (name, _)) in shape.objects.iter().enumerate() {
                let mx = ev_x.target.ends[o].matrix_of(b, &fx[o]);
                let my = ev_y.target.ends[o].matrix_of(b, &fy[o]);
                if !naturality_holds(&mx, &my, &df[o], b) {
                    out.push(NaturalityFailure { biarity: b, basis: k, object: name.clone() });
                }
            }
        }
    }
    out
}

/// The same for `ev` on `End_{Z(P)}`, where `D(f) = id_Z ⊗ f`.
pub fn check_naturality_z(ev_x: &EvZ, ev_y: &EvZ, f: &ChainMap) -> Vec<NaturalityFailure> {
    let id_z = Matrix::identity(crate::pathobject::make_z().complex.dim());
    let df = crate::gradedlinear::kron(&id_z, &f.matrix);
    let mut out = Vec::new();
    for b in ev_x.morphism.source.bound().biarities() {
        for k in 0..ev_x.morphism.source.dim(b) {
            let u = SparseVec::unit(k);
            let mx = ev_x.target.matrix_of(b, &ev_x.morphism.apply(b, &u));
            let my = ev_y.target.matrix_of(b, &ev_y.morphism.apply(b, &u));
            if !naturality_holds(&mx, &my, &df, b) {
                out.push(NaturalityFailure { biarity: b, basis: k, object: "Z(X)".into() });
            }
        }
    }
    out
}
