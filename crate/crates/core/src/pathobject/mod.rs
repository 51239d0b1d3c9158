//! The five-dimensional complex `Z` and the path object `Z⊗X`.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gradedlinear::{
    diagonal, homology, is_acyclic, is_cofibration, is_fibration, is_quasi_iso, kron, kron_power, pair_maps, tensor,
    tensor_power, ChainComplex, ChainMap, GradedDims, SubComplex,
};
use crate::linalg::{Matrix, Rational, SparseVec};

/// Basis labels of `Z`, in storage order.
pub const TAU: &str = "τ";
pub const RHO0: &str = "ρ₀";
pub const RHO1: &str = "ρ₁";
pub const SIGMA0: &str = "σ₀";
pub const SIGMA1: &str = "σ₁";
pub const Z_LABELS: [&str; 5] = [TAU, RHO0, RHO1, SIGMA0, SIGMA1];

/// `Z` with its structure maps at the level of the ground field:
/// `s: ℚ → Z`, `d₀, d₁: Z → ℚ`.
#[derive(Clone, Debug)]
pub struct PathComplexZ {
    pub complex: Arc<ChainComplex>,
    pub s: ChainMap,
    pub d0: ChainMap,
    pub d1: ChainMap,
}

pub fn make_z() -> PathComplexZ {
    let one = Rational::one();
    let basis: BTreeMap<i32, Vec<String>> =
        BTreeMap::from([(0, vec![TAU.into(), RHO0.into(), RHO1.into()]), (-1, vec![SIGMA0.into(), SIGMA1.into()])]);
    let d = vec![(RHO0.to_string(), SIGMA0.to_string(), one.clone()), (RHO1.to_string(), SIGMA1.to_string(), one)];
    let z = Arc::new(ChainComplex::from_degrees(&basis, &d).expect("Z is a complex"));
    let q = Arc::new(ChainComplex::unit());
    let s = ChainMap::new(q.clone(), z.clone(), Matrix::from_dense(&[vec![1], vec![0], vec![0], vec![0], vec![0]]));
    let d0 = ChainMap::new(z.clone(), q.clone(), Matrix::from_dense(&[vec![1, 0, 0, 0, 0]]));
    let d1 = ChainMap::new(z.clone(), q, Matrix::from_dense(&[vec![1, 1, 0, 0, 0]]));
    PathComplexZ {
        complex: z,
        s: s.expect("s is a chain map"),
        d0: d0.expect("d0 is a chain map"),
        d1: d1.expect("d1 is a chain map"),
    }
}

/// `d_i^{⊗m}: Z^{⊗m} → ℚ` as a `1 × 5^m` row.
pub fn d_power(i: usize, m: usize) -> Matrix {
    let z = make_z();
    let d = if i == 0 { z.d0 } else { z.d1 };
    kron_power(&d.matrix, m)
}

/// `g_{d₀,d₁} = (d₀^{⊗n}, d₁^{⊗n}): Z^{⊗n} → ℚp₀ ⊕ ℚp₁`.
pub fn g_d0_d1(n: usize) -> ChainMap {
    let zn = Arc::new(tensor_power(&make_z().complex, n));
    let p = Arc::new(p0_p1());
    ChainMap::new(zn, p, d_power(0, n).vstack(&d_power(1, n))).expect("g is a chain map")
}

/// `f_s: ℚ → Z^{⊗n}`, `1 ↦ τ^{⊗n}`.
pub fn f_s(n: usize) -> ChainMap {
    let zn = Arc::new(tensor_power(&make_z().complex, n));
    let dim = zn.dim();
    // τ is basis 0, so τ^{⊗n} is basis 0 of the power
    ChainMap::new(Arc::new(ChainComplex::unit()), zn, Matrix::from_columns(dim, vec![SparseVec::unit(0)]))
        .expect("f_s is a chain map")
}

/// `ℚp₀ ⊕ ℚp₁`, both generators in degree 0.
pub fn p0_p1() -> ChainComplex {
    let basis = BTreeMap::from([(0, vec!["p₀".to_string(), "p₁".to_string()])]);
    ChainComplex::from_degrees(&basis, &[]).expect("two points")
}

/// Basis tensors of `Z^{⊗m}` as words in the `Z` labels; index `k` is read in base 5.
pub fn z_word(m: usize, mut k: usize) -> Vec<&'static str> {
    let mut w = vec![TAU; m];
    for slot in (0..m).rev() {
        w[slot] = Z_LABELS[k % 5];
        k /= 5;
    }
    w
}

pub fn z_word_index(w: &[&str]) -> Option<usize> {
    w.iter().try_fold(0, |acc, l| Some(acc * 5 + Z_LABELS.iter().position(|z| z == l)?))
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Verdict {
    pub check: String,
    pub pass: bool,
}

impl Verdict {
    fn new(check: &str, pass: bool) -> Verdict {
        Verdict { check: check.into(), pass }
    }
}

/// `X ↣ Z⊗X ↠ X⊕X` with its verdicts.
#[derive(Clone, Debug)]
pub struct PathFactorization {
    pub x: Arc<ChainComplex>,
    pub zx: Arc<ChainComplex>,
    pub s: ChainMap,
    pub d0: ChainMap,
    pub d1: ChainMap,
    pub pair: ChainMap,
    pub diag: ChainMap,
    pub verdicts: Vec<Verdict>,
}

impl PathFactorization {
    pub fn ok(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }
}

/// `Z⊗X` with `s = s_Z⊗id`, `d_i = d_i^Z⊗id`. Fails with `FactorizationFailure`
/// if any of the expected properties does not hold.
pub fn path_object(x: Arc<ChainComplex>) -> Result<PathFactorization> {
    let f = path_object_unchecked(x)?;
    if let Some(v) = f.verdicts.iter().find(|v| !v.pass) {
        return Err(Error::FactorizationFailure(v.check.clone()));
    }
    Ok(f)
}

/// As [`path_object`] but returning the verdicts even when some fail.
pub fn path_object_unchecked(x: Arc<ChainComplex>) -> Result<PathFactorization> {
    let z = make_z();
    let zx = Arc::new(tensor(&z.complex, &x));
    let id = Matrix::identity(x.dim());
    let s = ChainMap::new(x.clone(), zx.clone(), kron(&z.s.matrix, &id))?;
    let d0 = ChainMap::new(zx.clone(), x.clone(), kron(&z.d0.matrix, &id))?;
    let d1 = ChainMap::new(zx.clone(), x.clone(), kron(&z.d1.matrix, &id))?;
    let pair = pair_maps(&d0, &d1)?;
    let diag = diagonal(x.clone());
    let verdicts = vec![
        Verdict::new("(d0,d1)∘s = Δ", pair.matrix.compose(&s.matrix) == diag.matrix),
        Verdict::new("s degreewise injective", is_cofibration(&s)),
        Verdict::new("s quasi-iso", is_quasi_iso(&s)),
        Verdict::new("(d0,d1) degreewise surjective", is_fibration(&pair)),
        Verdict::new("d0 quasi-iso", is_quasi_iso(&d0)),
        Verdict::new("d1 quasi-iso", is_quasi_iso(&d1)),
    ];
    Ok(PathFactorization { x, zx, s, d0, d1, pair, diag, verdicts })
}

/// `Z = Z̃ ⊕ ℚτ` with `Z̃` spanned by `ρ₀, ρ₁, σ₀, σ₁`.
#[derive(Clone, Debug)]
pub struct ZSplit {
    pub tilde: SubComplex,
    pub tau: ChainMap,
}

pub fn split_z() -> ZSplit {
    let z = make_z();
    // Z̃ = ker d₀ (d₀ reads off the τ coordinate)
    let tilde = SubComplex::kernel_of(z.complex.clone(), &z.d0.matrix);
    ZSplit { tilde, tau: z.s }
}

/// `Z^{⊗m} = S_m ⊕ ℚτ^{⊗m}`: `S_m` is the span of every basis tensor other
/// than `τ^{⊗m}`, which is a subcomplex since nothing hits or leaves `τ^{⊗m}`.
#[derive(Clone, Debug)]
pub struct ZPowerSplit {
    pub power: Arc<ChainComplex>,
    pub s_m: SubComplex,
    pub tau_power: ChainMap,
}

pub fn split_z_power(m: usize) -> ZPowerSplit {
    let tau_power = f_s(m);
    let power = tau_power.target.clone();
    // the τ^{⊗m} coordinate is d₀^{⊗m}
    let s_m = SubComplex::kernel_of(power.clone(), &d_power(0, m));
    ZPowerSplit { power, s_m, tau_power }
}

/// Summary used by the acceptance harness and the CLI.
#[derive(Clone, Debug, Serialize)]
pub struct ZReport {
    pub dims: GradedDims,
    pub homology: GradedDims,
    pub tilde_acyclic: bool,
    pub s_m_acyclic: BTreeMap<usize, bool>,
}

pub fn z_report(max_m: usize) -> ZReport {
    let z = make_z();
    ZReport {
        dims: z.complex.dims(),
        homology: homology(&z.complex),
        tilde_acyclic: is_acyclic(&split_z().tilde.complex),
        s_m_acyclic: (1..=max_m).map(|m| (m, is_acyclic(&split_z_power(m).s_m.complex))).collect(),
    }
}
