//! Kernels, pullbacks and equalizers of chain maps.

use std::sync::Arc;

use super::complex::{ChainComplex, ChainMap};
use super::ops::direct_sum;
use crate::error::{Error, Result};
use crate::linalg::{kernel, Kernel, Matrix, SparseVec};

/// A subcomplex cut out as the kernel of a degree-0 chain map. Basis vector
/// `k` is the kernel vector with a 1 at free column `free_cols[k]` and zeros at
/// the other free columns; it inherits that column's label.
#[derive(Clone, Debug)]
pub struct SubComplex {
    pub ambient: Arc<ChainComplex>,
    pub complex: Arc<ChainComplex>,
    pub kernel: Kernel,
}

impl SubComplex {
    /// Kernel of `m: ambient → C`. `m` must commute with differentials.
    pub fn kernel_of(ambient: Arc<ChainComplex>, m: &Matrix) -> SubComplex {
        let ker = kernel(m);
        SubComplex::from_kernel(ambient, ker)
    }

    /// Subcomplex spanned by an already computed kernel basis, which must be
    /// homogeneous and closed under `d`.
    pub fn from_kernel(ambient: Arc<ChainComplex>, ker: Kernel) -> SubComplex {
        let basis: Vec<(String, i32)> =
            ker.free_cols.iter().map(|&f| (ambient.label(f).to_string(), ambient.degree(f))).collect();
        let cols = ker.basis.iter().map(|v| ker.coords_unchecked(&ambient.apply_d(v))).collect();
        let n = basis.len();
        let complex =
            ChainComplex::new(basis, Matrix::from_columns(n, cols)).expect("kernel of a chain map is a subcomplex");
        SubComplex { ambient, complex: Arc::new(complex), kernel: ker }
    }

    pub fn dim(&self) -> usize {
        self.kernel.dim()
    }

    pub fn embed(&self, v: &SparseVec) -> SparseVec {
        let mut acc = crate::linalg::Accumulator::new();
        for (k, c) in v.iter() {
            acc.add_vec(&self.kernel.basis[k], c);
        }
        acc.finish()
    }

    /// Coordinates of an ambient vector, or `None` if it is not in the subcomplex.
    pub fn project(&self, v: &SparseVec) -> Option<SparseVec> {
        self.kernel.coords(v)
    }

    pub fn inclusion(&self) -> ChainMap {
        ChainMap {
            source: self.complex.clone(),
            target: self.ambient.clone(),
            matrix: self.kernel.embedding(self.ambient.dim()),
        }
    }
}

/// Pullback of `f: A → C` and `g: B → C` with its two projections.
#[derive(Clone, Debug)]
pub struct Pullback {
    pub sub: SubComplex,
    pub to_a: ChainMap,
    pub to_b: ChainMap,
}

impl Pullback {
    pub fn complex(&self) -> &Arc<ChainComplex> {
        &self.sub.complex
    }

    /// Unique map from a cone `(p: W → A, q: W → B)` with `f∘p = g∘q`.
    pub fn factor(&self, p: &ChainMap, q: &ChainMap) -> Result<ChainMap> {
        let stacked = p.matrix.vstack(&q.matrix);
        let cols = stacked
            .columns()
            .iter()
            .map(|v| {
                self.sub.project(v).ok_or_else(|| Error::ShapeMismatch("cone does not land in the pullback".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        ChainMap::new(p.source.clone(), self.sub.complex.clone(), Matrix::from_columns(self.sub.dim(), cols))
    }
}

/// Degreewise kernel of `(a, b) ↦ f(a) − g(b)` on `A ⊕ B`.
pub fn pullback(f: &ChainMap, g: &ChainMap) -> Result<Pullback> {
    if *f.target != *g.target {
        return Err(Error::ShapeMismatch("pullback of maps with different targets".into()));
    }
    let sum = Arc::new(direct_sum(&f.source, &g.source));
    let m = f.matrix.hstack(&g.matrix.scale(&crate::linalg::Rational::minus_one()));
    let sub = SubComplex::kernel_of(sum, &m);
    let na = f.source.dim();
    let emb = sub.kernel.embedding(sub.ambient.dim());
    let rows = emb.rows();
    let proj = |lo: usize, hi: usize| Matrix::from_columns(sub.dim(), rows[lo..hi].to_vec()).transpose();
    let to_a = ChainMap { source: sub.complex.clone(), target: f.source.clone(), matrix: proj(0, na) };
    let to_b = ChainMap { source: sub.complex.clone(), target: g.source.clone(), matrix: proj(na, sub.ambient.dim()) };
    Ok(Pullback { sub, to_a, to_b })
}

/// Equalizer of `f, g: A → B` with its inclusion into `A`.
pub fn equalizer(f: &ChainMap, g: &ChainMap) -> Result<SubComplex> {
    if *f.source != *g.source || *f.target != *g.target {
        return Err(Error::ShapeMismatch("equalizer of maps with different ends".into()));
    }
    Ok(SubComplex::kernel_of(f.source.clone(), &f.matrix.sub(&g.matrix)))
}
