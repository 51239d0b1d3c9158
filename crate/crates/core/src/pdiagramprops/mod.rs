//! Props of P-diagrams: `End_{Z(P)}`, `End_{𝒵(P)}`, `End_{𝒴(P)}`, the
//! projection `π`, evaluation morphisms and the corner square.
//!
//! Layout. `End_{Z(P)} = End_Z ⊗_H P`; a basis element `E_ji ⊗ p` (input
//! word `j` of `Z^{⊗m}`, output word `i` of `Z^{⊗n}`) sits at
//! `(j·5^n + i)·dim P + p`. `End_{𝒵(P)}` and `End_{𝒴(P)}` are sub-props of
//! the products `[End_{Z(P)}, P₀, P₁]` and `[End_{Z(P)}, P₀, P₁, P]`, the
//! factors listed in the order of the objects `Z(X), X₀, X₁, X`.

mod checks;
mod ev;

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;

pub use checks::*;
pub use ev::*;

use crate::biobject::Biarity;
use crate::error::Result;
use crate::gradedlinear::{hom_complex, tensor, tensor_power, ChainComplex, ChainMap, SubComplex};
use crate::linalg::{Matrix, Rational, SparseVec};
use crate::pathobject::{d_power, make_z, p0_p1};
use crate::propcore::{EndomorphismProp, Hadamard, ProductProp, Prop, SubProp};

fn pow5(k: usize) -> usize {
    5usize.pow(k as u32)
}

/// `End_{Z(P)}` together with the `End_Z` it is built from.
pub struct EndZP {
    pub p: Arc<dyn Prop>,
    pub end_z: Arc<EndomorphismProp>,
    pub prop: Arc<Hadamard>,
}

pub fn build_end_zp(p: Arc<dyn Prop>) -> EndZP {
    let end_z = Arc::new(EndomorphismProp::new(make_z().complex, p.bound()));
    let prop = Arc::new(Hadamard::new(end_z.clone(), p.clone()));
    EndZP { p, end_z, prop }
}

impl EndZP {
    /// Basis index of `(z_j)* ⊗ z'_i ⊗ p`.
    pub fn index(&self, b: Biarity, j: usize, i: usize, p: usize) -> usize {
        (j * pow5(b.1) + i) * self.p.dim(b) + p
    }

    /// Inverse of [`index`](Self::index).
    pub fn split(&self, b: Biarity, k: usize) -> (usize, usize, usize) {
        let dp = self.p.dim(b);
        let (e, p) = (k / dp, k % dp);
        (e / pow5(b.1), e % pow5(b.1), p)
    }
}

/// Basis tensors `j` of `Z^{⊗m}` with `d_c^{⊗m}(z_j) = 1`: all-`τ` for
/// `c = 0`, words in `{τ, ρ₀}` for `c = 1`. Closed form; `d_c` is 0/1-valued
/// on the basis, so every other tensor is sent to 0.
pub fn dbar_index_set(c: usize, m: usize) -> Vec<usize> {
    let allowed: &[usize] = if c == 0 { &[0] } else { &[0, 1] };
    let mut out = vec![0usize];
    for _ in 0..m {
        out = out.iter().flat_map(|&w| allowed.iter().map(move |&a| w * 5 + a)).collect();
    }
    out.sort_unstable();
    out
}

/// `(Z^{⊗m})* ⊗ (ℚp₀ ⊕ ℚp₁) ⊗ P(m, n)`, realized as `Hom(Z^{⊗m}, ℚp₀⊕ℚp₁) ⊗ P(m, n)`.
pub fn dbar_target(p: &dyn Prop, b: Biarity) -> ChainComplex {
    let zm = tensor_power(&make_z().complex, b.0);
    tensor(&hom_complex(&zm, &p0_p1()), &p.component(b))
}

/// `Z^{⊗n} ⊗ P(m, n)`.
pub fn sbar_target(p: &dyn Prop, b: Biarity) -> ChainComplex {
    tensor(&tensor_power(&make_z().complex, b.1), &p.component(b))
}

/// `d̄_c^*: P(m,n) → (Z^{⊗m})*⊗(ℚp₀⊕ℚp₁)⊗P(m,n)`, `ξ ↦ (Σ_{j∈J} z_j*)⊗p_c⊗ξ`.
pub fn dbar_matrix(p: &dyn Prop, c: usize, b: Biarity) -> Matrix {
    let dp = p.dim(b);
    let rows = pow5(b.0) * 2 * dp;
    let js = dbar_index_set(c, b.0);
    let cols =
        (0..dp).map(|q| SparseVec::from_entries(js.iter().map(|&j| ((j * 2 + c) * dp + q, Rational::one())))).collect();
    Matrix::from_columns(rows, cols)
}

pub fn map_dbar(p: Arc<dyn Prop>, c: usize, b: Biarity) -> Result<ChainMap> {
    let m = dbar_matrix(p.as_ref(), c, b);
    ChainMap::new(p.component(b), Arc::new(dbar_target(p.as_ref(), b)), m)
}

/// `d̄_pair: (Z^{⊗m})*⊗Z^{⊗n}⊗P → (Z^{⊗m})*⊗(ℚp₀⊕ℚp₁)⊗P`, postcomposition
/// of the `Z`-part with `(d₀^{⊗n}, d₁^{⊗n})`.
pub fn dbar_pair_matrix(zp: &EndZP, b: Biarity) -> Matrix {
    let dp = zp.p.dim(b);
    let (g0, g1) = (d_power(0, b.1), d_power(1, b.1));
    let rows = pow5(b.0) * 2 * dp;
    let cols = (0..zp.prop.dim(b))
        .map(|k| {
            let (j, i, q) = zp.split(b, k);
            let mut e = Vec::new();
            for (c, g) in [(0, &g0), (1, &g1)] {
                let v = g.get(0, i);
                if !v.is_zero() {
                    e.push(((j * 2 + c) * dp + q, v));
                }
            }
            SparseVec::from_entries(e)
        })
        .collect();
    Matrix::from_columns(rows, cols)
}

pub fn map_dbar_pair(zp: &EndZP, b: Biarity) -> Result<ChainMap> {
    ChainMap::new(zp.prop.component(b), Arc::new(dbar_target(zp.p.as_ref(), b)), dbar_pair_matrix(zp, b))
}

/// `s̄_lower: P → Z^{⊗n}⊗P`, `ξ ↦ τ^{⊗n}⊗ξ`.
pub fn sbar_lower_matrix(p: &dyn Prop, b: Biarity) -> Matrix {
    let dp = p.dim(b);
    Matrix::from_columns(pow5(b.1) * dp, (0..dp).map(SparseVec::unit).collect())
}

/// `s̄_upper` on `End_{Z(P)}`: `z_j*⊗z'_i⊗ξ ↦ z'_i⊗ξ` if `z_j = τ^{⊗m}`, else 0.
pub fn sbar_upper_matrix(zp: &EndZP, b: Biarity) -> Matrix {
    let dp = zp.p.dim(b);
    let cols = (0..zp.prop.dim(b))
        .map(|k| {
            let (j, i, q) = zp.split(b, k);
            if j == 0 {
                SparseVec::unit(i * dp + q)
            } else {
                SparseVec::new()
            }
        })
        .collect();
    Matrix::from_columns(pow5(b.1) * dp, cols)
}

pub fn map_sbar_lower(p: Arc<dyn Prop>, b: Biarity) -> Result<ChainMap> {
    let m = sbar_lower_matrix(p.as_ref(), b);
    ChainMap::new(p.component(b), Arc::new(sbar_target(p.as_ref(), b)), m)
}

pub fn map_sbar_upper(zp: &EndZP, b: Biarity) -> Result<ChainMap> {
    ChainMap::new(zp.prop.component(b), Arc::new(sbar_target(zp.p.as_ref(), b)), sbar_upper_matrix(zp, b))
}

/// Deliberate corruptions of the `𝒴` pullback, for exercising the checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum PiFault {
    #[default]
    None,
    /// `−s̄_upper`: an isomorphic pullback, but the unit leaves it.
    SbarUpperSign,
    /// `s̄_upper = 0`: forces `ξ = 0`, so `π` is no longer onto.
    DropSbarUpper,
}

/// Horizontal block matrix `[A₁ | A₂ | …]`.
fn hcat(blocks: &[Matrix]) -> Matrix {
    let rows = blocks[0].nrows();
    let cols = blocks.iter().flat_map(|b| b.columns().iter().cloned()).collect();
    Matrix::from_columns(rows, cols)
}

fn zero(rows: usize, cols: usize) -> Matrix {
    Matrix::zeros(rows, cols)
}

/// The four props of the corner square and the pullbacks defining them.
pub struct PDiagramProps {
    pub zp: EndZP,
    pub cal_z_ambient: Arc<ProductProp>,
    pub cal_z: Arc<SubProp>,
    pub cal_y_ambient: Arc<ProductProp>,
    pub cal_y: Arc<SubProp>,
    pub fault: PiFault,
}

/// Constraint matrix of `End_{𝒵(P)}(m,n)` on `[End_{Z(P)}, P₀, P₁]`:
/// `d̄_pair(α) − d̄₀*(a) − d̄₁*(b)`.
pub fn cal_z_constraint(zp: &EndZP, b: Biarity) -> Matrix {
    let p = zp.p.as_ref();
    hcat(&[
        dbar_pair_matrix(zp, b),
        dbar_matrix(p, 0, b).scale(&Rational::from_int(-1)),
        dbar_matrix(p, 1, b).scale(&Rational::from_int(-1)),
    ])
}

/// Constraint matrix of `End_{𝒴(P)}(m,n)` on `[End_{Z(P)}, P₀, P₁, P]`.
pub fn cal_y_constraint(zp: &EndZP, b: Biarity, fault: PiFault) -> Matrix {
    let p = zp.p.as_ref();
    let (dz, dp) = (zp.prop.dim(b), p.dim(b));
    let top = hcat(&[cal_z_constraint(zp, b), zero(pow5(b.0) * 2 * dp, dp)]);
    let upper = match fault {
        PiFault::None => sbar_upper_matrix(zp, b),
        PiFault::SbarUpperSign => sbar_upper_matrix(zp, b).scale(&Rational::from_int(-1)),
        PiFault::DropSbarUpper => zero(pow5(b.1) * dp, dz),
    };
    let rows = pow5(b.1) * dp;
    let bottom = hcat(&[upper, zero(rows, dp), zero(rows, dp), sbar_lower_matrix(p, b).scale(&Rational::from_int(-1))]);
    top.vstack(&bottom)
}

pub fn build_end_cal_zp(zp: &EndZP) -> (Arc<ProductProp>, Arc<SubProp>) {
    let p = zp.p.clone();
    let ambient = Arc::new(ProductProp::new(vec![zp.prop.clone(), p.clone(), p]));
    let subs: BTreeMap<Biarity, SubComplex> = ambient
        .bound()
        .biarities()
        .into_par_iter()
        .map(|b| (b, SubComplex::kernel_of(ambient.component(b), &cal_z_constraint(zp, b))))
        .collect();
    let sub = Arc::new(SubProp::new(ambient.clone(), subs));
    (ambient, sub)
}

pub fn build_end_cal_yp(zp: &EndZP, fault: PiFault) -> (Arc<ProductProp>, Arc<SubProp>) {
    let p = zp.p.clone();
    let ambient = Arc::new(ProductProp::new(vec![zp.prop.clone(), p.clone(), p.clone(), p]));
    let subs: BTreeMap<Biarity, SubComplex> = ambient
        .bound()
        .biarities()
        .into_par_iter()
        .map(|b| (b, SubComplex::kernel_of(ambient.component(b), &cal_y_constraint(zp, b, fault))))
        .collect();
    let sub = Arc::new(SubProp::new(ambient.clone(), subs));
    (ambient, sub)
}

pub fn build_pdiagram_props(p: Arc<dyn Prop>, fault: PiFault) -> PDiagramProps {
    let zp = build_end_zp(p);
    let (cal_z_ambient, cal_z) = build_end_cal_zp(&zp);
    let (cal_y_ambient, cal_y) = build_end_cal_yp(&zp, fault);
    PDiagramProps { zp, cal_z_ambient, cal_z, cal_y_ambient, cal_y, fault }
}

impl PDiagramProps {
    pub fn p(&self) -> &Arc<dyn Prop> {
        &self.zp.p
    }

    /// `P₀ × P₁`, the prop of `P`-diagrams of the discrete shape `𝒯`.
    pub fn t_prop(&self) -> Arc<ProductProp> {
        Arc::new(ProductProp::new(vec![self.p().clone(), self.p().clone()]))
    }

    /// Factors `[α, a, b, ξ]` of an element of `End_{𝒴(P)}(m,n)`.
    pub fn cal_y_parts(&self, b: Biarity, v: &SparseVec) -> Vec<SparseVec> {
        let amb = self.cal_y.embed(b, v);
        (0..4).map(|k| self.cal_y_ambient.part(b, &amb, k)).collect()
    }

    /// Factors `[α, a, b]` of an element of `End_{𝒵(P)}(m,n)`.
    pub fn cal_z_parts(&self, b: Biarity, v: &SparseVec) -> Vec<SparseVec> {
        let amb = self.cal_z.embed(b, v);
        (0..3).map(|k| self.cal_z_ambient.part(b, &amb, k)).collect()
    }

    /// Matrix of `End_{𝒴(P)}(m,n) → k`-th factor.
    pub fn cal_y_factor(&self, b: Biarity, k: usize) -> Matrix {
        let sub = &self.cal_y.subs[&b];
        let rows = self.cal_y_ambient.factors[k].dim(b);
        let cols = (0..sub.dim()).map(|i| self.cal_y_parts(b, &SparseVec::unit(i)).swap_remove(k)).collect();
        Matrix::from_columns(rows, cols)
    }

    /// `π(m,n): End_{𝒴(P)}(m,n) → P(m,n)`.
    pub fn pi(&self, b: Biarity) -> ChainMap {
        ChainMap::new(self.cal_y.component(b), self.p().component(b), self.cal_y_factor(b, 3))
            .expect("π is a projection")
    }

    /// The canonical element `(1_Z⊗1_P, 1, 1, 1)` of `End_{𝒴(P)}(n,n)`, if it lies there.
    pub fn canonical_unit(&self, n: usize) -> Option<SparseVec> {
        self.cal_y.subs.get(&(n, n))?.project(&self.cal_y_ambient.unit_raw(n))
    }
}
