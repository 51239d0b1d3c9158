//! Verifiers: `π` as an acyclic fibration, the pushout-product witness,
//! the square relating `π` and `ev_X`, and the corner square.

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use super::{Evaluations, PDiagramProps};
use crate::biobject::Biarity;
use crate::error::Result;
use crate::gradedlinear::{
    hom_complex, hom_post, hom_pre, is_cofibration, is_fibration, is_quasi_iso, pullback, quasi_iso_report,
    tensor_power, ChainComplex, GradedDims,
};
use crate::linalg::{rank, Matrix, SparseVec};
use crate::pathobject::{d_power, f_s, g_d0_d1, make_z, p0_p1};
use crate::propcore::{restriction_morphism, PropMorphism};

/// `J` for `d̄_c` by applying `d_c^{⊗m}` to every basis tensor and keeping
/// those sent to 1. Independent of [`super::dbar_index_set`].
pub fn dbar_index_set_brute(c: usize, m: usize) -> Vec<usize> {
    let row = d_power(c, m);
    (0..row.ncols()).filter(|&j| row.get(0, j).is_one()).collect()
}

/// One component of the `π` report.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct PiComponent {
    pub component: Biarity,
    pub surjective: bool,
    pub homology_source: GradedDims,
    pub homology_target: GradedDims,
    pub quasi_iso: bool,
    /// `P(m, n) ≠ 0` with `m ≥ 1, n = 0`: no elements of the pullback lie
    /// over it, since `(d₀^{⊗0}, d₁^{⊗0}): ℚ → ℚ²` is the diagonal.
    pub empty_outputs: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct PiReport {
    pub components: Vec<PiComponent>,
    /// `(1, 1, 1, 1)` lies in `End_{𝒴(P)}(n, n)`, for each `n`.
    pub units: BTreeMap<usize, bool>,
}

impl PiReport {
    pub fn acyclic_fibration(&self) -> bool {
        self.components.iter().all(|c| c.surjective && c.quasi_iso)
    }

    pub fn units_ok(&self) -> bool {
        self.units.values().all(|&b| b)
    }

    pub fn ok(&self) -> bool {
        self.acyclic_fibration() && self.units_ok()
    }

    pub fn failing(&self) -> Vec<Biarity> {
        self.components.iter().filter(|c| !(c.surjective && c.quasi_iso)).map(|c| c.component).collect()
    }
}

pub fn check_pi_acyclic_fibration(props: &PDiagramProps) -> PiReport {
    let p = props.p();
    let components = p
        .bound()
        .biarities()
        .into_par_iter()
        .map(|b| {
            let pi = props.pi(b);
            let q = quasi_iso_report(&pi);
            PiComponent {
                component: b,
                surjective: is_fibration(&pi),
                homology_source: q.homology_source,
                homology_target: q.homology_target,
                quasi_iso: q.quasi_iso,
                empty_outputs: b.0 >= 1 && b.1 == 0 && p.dim(b) > 0,
            }
        })
        .collect();
    let units = (0..=p.bound().0 / 2).map(|n| (n, props.canonical_unit(n).is_some())).collect();
    PiReport { components, units }
}

/// The dual pushout-product at `(m, n)`:
/// `Hom(Z^{⊗m}, Z^{⊗n}) → Hom(ℚ, Z^{⊗n}) ×_{Hom(ℚ, ℚ²)} Hom(Z^{⊗m}, ℚ²)`,
/// `α ↦ (α∘f_s, g∘α)`, with `f_s: ℚ → Z^{⊗m}` and `g = g_{d₀,d₁}: Z^{⊗n} → ℚ²`.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct PushoutProductWitness {
    pub m: usize,
    pub n: usize,
    pub f_s_cofibration: bool,
    pub f_s_quasi_iso: bool,
    pub g_fibration: bool,
    pub induced_fibration: bool,
    pub induced_quasi_iso: bool,
}

impl PushoutProductWitness {
    pub fn ok(&self) -> bool {
        self.f_s_cofibration
            && self.f_s_quasi_iso
            && self.g_fibration
            && self.induced_fibration
            && self.induced_quasi_iso
    }
}

pub fn pushout_product_witness(m: usize, n: usize) -> Result<PushoutProductWitness> {
    let z = make_z().complex;
    let (zm, zn) = (tensor_power(&z, m), tensor_power(&z, n));
    let q = ChainComplex::unit();
    let two = p0_p1();
    let (fs, g) = (f_s(m), g_d0_d1(n));
    let top = Arc::new(hom_complex(&zm, &zn));
    // the two legs into Hom(ℚ, ℚ²)
    let leg_a = hom_post(&q, &g);
    let leg_b = hom_pre(&fs, &two);
    let pb = pullback(&leg_a, &leg_b)?;
    let to_a = hom_pre(&fs, &zn);
    let to_b = hom_post(&zm, &g);
    debug_assert_eq!(to_a.source.as_ref(), top.as_ref());
    let induced = pb.factor(&to_a, &to_b)?;
    Ok(PushoutProductWitness {
        m,
        n,
        f_s_cofibration: is_cofibration(&fs),
        f_s_quasi_iso: is_quasi_iso(&fs),
        g_fibration: is_fibration(&g),
        induced_fibration: is_fibration(&induced),
        induced_quasi_iso: is_quasi_iso(&induced),
    })
}

/// `π` as a prop morphism `End_{𝒴(P)} → P`.
pub fn pi_morphism(props: &PDiagramProps) -> Result<PropMorphism> {
    let maps = props.p().bound().biarities().into_iter().map(|b| (b, props.pi(b).matrix)).collect();
    PropMorphism::new(props.cal_y.clone(), props.p().clone(), maps)
}

/// Basis elements on which two morphisms with the same ends disagree.
pub fn disagreements(f: &PropMorphism, g: &PropMorphism) -> Vec<(Biarity, usize)> {
    let mut out = Vec::new();
    for (b, m) in &f.maps {
        for k in 0..m.ncols() {
            if m.col(k) != g.maps[b].col(k) {
                out.push((*b, k));
            }
        }
    }
    out
}

/// `ev_X ∘ π` against `res ∘ ev_X`, where `res: End_{𝒴(X)} → End_{𝒱(X)}`
/// restricts along `𝒱 ⊂ 𝒴`.
#[derive(Clone, Debug, Serialize)]
pub struct EvPiSquare {
    pub disagreements: Vec<(Biarity, usize)>,
}

impl EvPiSquare {
    pub fn commutes(&self) -> bool {
        self.disagreements.is_empty()
    }
}

pub fn ev_pi_square(props: &PDiagramProps, ev: &Evaluations) -> Result<EvPiSquare> {
    // 𝒱(X) = [X, X₀, X₁] sits in 𝒴(X) = [Z(X), X₀, X₁, X] as objects 3, 1, 2
    let res = restriction_morphism(&ev.cal_y.target, &ev.v.target, &[3, 1, 2])?;
    let left = ev.v.morphism.after(&pi_morphism(props)?);
    let right = res.after(&ev.cal_y.morphism);
    Ok(EvPiSquare { disagreements: disagreements(&left, &right) })
}

/// The corner square `u*∘w* = t*∘v*` with `v* = π`.
pub struct CornerSquare {
    pub v: PropMorphism,
    pub w: PropMorphism,
    pub t: PropMorphism,
    pub u: PropMorphism,
}

#[derive(Clone, Debug, Serialize)]
pub struct CornerReport {
    pub disagreements: Vec<(Biarity, usize)>,
    /// Biarities where `u*` fails to be degreewise surjective.
    pub u_not_surjective: Vec<Biarity>,
}

impl CornerReport {
    pub fn ok(&self) -> bool {
        self.disagreements.is_empty() && self.u_not_surjective.is_empty()
    }
}

pub fn build_corner_square(props: &PDiagramProps) -> Result<CornerSquare> {
    let tp = props.t_prop();
    let v = pi_morphism(props)?;
    let w = PropMorphism::from_fn(props.cal_y.clone(), props.cal_z.clone(), |b, k| {
        let parts = props.cal_y_parts(b, &SparseVec::unit(k));
        let amb = props.cal_z_ambient.assemble(b, &parts[..3]);
        props.cal_z.project(b, &amb, "w*")
    })?;
    let tq = tp.clone();
    let u = PropMorphism::from_fn(props.cal_z.clone(), tp.clone(), move |b, k| {
        let parts = props.cal_z_parts(b, &SparseVec::unit(k));
        Ok(tq.assemble(b, &parts[1..]))
    })?;
    let tq = tp.clone();
    let t = PropMorphism::from_fn(props.p().clone(), tp, move |b, k| {
        let e = SparseVec::unit(k);
        Ok(tq.assemble(b, &[e.clone(), e]))
    })?;
    Ok(CornerSquare { v, w, t, u })
}

pub fn check_corner_square(sq: &CornerSquare) -> CornerReport {
    let disagreements = disagreements(&sq.u.after(&sq.w), &sq.t.after(&sq.v));
    let u_not_surjective = sq.u.maps.keys().filter(|&&b| !is_fibration(&sq.u.chain_map(b))).copied().collect();
    CornerReport { disagreements, u_not_surjective }
}

/// Dimension of `{(α, a, b) : d̄_pair(α) = d̄₀*(a) + d̄₁*(b)}` by direct
/// elimination on the stacked matrix, for the kernel oracle.
pub fn cal_z_dim_oracle(props: &PDiagramProps, b: Biarity) -> usize {
    let m: Matrix = super::cal_z_constraint(&props.zp, b);
    m.ncols() - rank(&m)
}
