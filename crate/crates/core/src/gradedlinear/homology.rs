use std::collections::BTreeMap;

use serde::Serialize;

use super::complex::{ChainComplex, ChainMap, GradedDims};
use crate::linalg::{kernel, rank, Echelon, Matrix, SparseVec};

/// Homology of one degree: boundaries plus chosen representatives, all kept
/// in one echelon basis so classes can be read off by reduction.
#[derive(Clone, Debug)]
pub struct DegreeHomology {
    echelon: Echelon,
    /// Pivot of each representative row, in basis order.
    rep_pivots: Vec<usize>,
}

impl DegreeHomology {
    pub fn dim(&self) -> usize {
        self.rep_pivots.len()
    }

    /// Representative cycles, in global coordinates of the complex.
    pub fn representatives(&self) -> Vec<SparseVec> {
        self.rep_pivots.iter().map(|p| self.echelon.row(*p).expect("pivot").clone()).collect()
    }

    /// Class of a cycle in the representative basis.
    pub fn class_of(&self, cycle: &SparseVec) -> SparseVec {
        let slot: BTreeMap<usize, usize> = self.rep_pivots.iter().enumerate().map(|(k, p)| (*p, k)).collect();
        let mut out = Vec::new();
        let rest = self.echelon.reduce_tracking(cycle, |p, c| {
            if let Some(&k) = slot.get(&p) {
                out.push((k, c.clone()));
            }
        });
        debug_assert!(rest.is_zero(), "class_of called on a non-cycle");
        SparseVec::from_entries(out)
    }
}

/// Full homology data of a complex.
#[derive(Clone, Debug)]
pub struct Homology {
    pub degrees: BTreeMap<i32, DegreeHomology>,
}

impl Homology {
    pub fn compute(c: &ChainComplex) -> Homology {
        let mut degrees = BTreeMap::new();
        for n in c.support() {
            let idx = c.in_degree(n);
            let mut e = Echelon::new();
            // Boundaries first so that representatives are reduced modulo them.
            for &j in c.in_degree(n + 1) {
                e.insert(c.d().col(j));
            }
            let dn = c.d().submatrix(c.in_degree(n - 1), idx);
            let cycles = kernel(&dn);
            let mut rep_pivots = Vec::new();
            for z in &cycles.basis {
                let global = z.reindex(|k| Some(idx[k]));
                if let Some(p) = e.insert(&global) {
                    rep_pivots.push(p);
                }
            }
            if !rep_pivots.is_empty() {
                degrees.insert(n, DegreeHomology { echelon: e, rep_pivots });
            }
        }
        Homology { degrees }
    }

    pub fn dims(&self) -> GradedDims {
        GradedDims(self.degrees.iter().map(|(k, v)| (*k, v.dim())).collect())
    }

    pub fn in_degree(&self, n: i32) -> Option<&DegreeHomology> {
        self.degrees.get(&n)
    }
}

/// `dim H_n = dim ker d_n − rank d_{n+1}`, by ranks only.
pub fn homology(c: &ChainComplex) -> GradedDims {
    let mut out = BTreeMap::new();
    for n in c.support() {
        let dim = c.in_degree(n).len();
        let h = dim - rank(&c.d_block(n)) - rank(&c.d_block(n + 1));
        if h > 0 {
            out.insert(n, h);
        }
    }
    GradedDims(out)
}

pub fn is_acyclic(c: &ChainComplex) -> bool {
    homology(c).is_zero()
}

/// Induced maps on homology, degree by degree, in representative bases.
#[derive(Clone, Debug)]
pub struct InducedMap {
    pub source: Homology,
    pub target: Homology,
    pub blocks: BTreeMap<i32, Matrix>,
}

impl InducedMap {
    pub fn compute(f: &ChainMap) -> InducedMap {
        let source = Homology::compute(&f.source);
        let target = Homology::compute(&f.target);
        let mut blocks = BTreeMap::new();
        for n in f.degrees() {
            let (hs, ht) = (source.in_degree(n), target.in_degree(n));
            let rows = ht.map_or(0, |h| h.dim());
            let cols = match hs {
                None => Vec::new(),
                Some(hs) => hs
                    .representatives()
                    .iter()
                    .map(|z| match ht {
                        Some(ht) => ht.class_of(&f.matrix.apply(z)),
                        None => SparseVec::new(),
                    })
                    .collect(),
            };
            if rows > 0 || !cols.is_empty() {
                blocks.insert(n, Matrix::from_columns(rows, cols));
            }
        }
        InducedMap { source, target, blocks }
    }

    pub fn is_iso(&self) -> bool {
        self.blocks.values().all(|m| m.nrows() == m.ncols() && rank(m) == m.nrows())
    }
}

/// Per-degree verdict used in reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuasiIsoReport {
    pub quasi_iso: bool,
    pub homology_source: GradedDims,
    pub homology_target: GradedDims,
    pub induced_ranks: BTreeMap<i32, usize>,
}

pub fn quasi_iso_report(f: &ChainMap) -> QuasiIsoReport {
    let ind = InducedMap::compute(f);
    QuasiIsoReport {
        quasi_iso: ind.is_iso(),
        homology_source: ind.source.dims(),
        homology_target: ind.target.dims(),
        induced_ranks: ind.blocks.iter().map(|(k, m)| (*k, rank(m))).collect(),
    }
}

pub fn is_quasi_iso(f: &ChainMap) -> bool {
    InducedMap::compute(f).is_iso()
}

/// Mapping cone: `C_n = A_{n−1} ⊕ B_n`, `d(a, b) = (−da, f(a) + db)`.
pub fn mapping_cone(f: &ChainMap) -> ChainComplex {
    let (a, b) = (&f.source, &f.target);
    let na = a.dim();
    let mut basis = Vec::with_capacity(na + b.dim());
    basis.extend((0..na).map(|i| (format!("s|{}", a.label(i)), a.degree(i) + 1)));
    basis.extend((0..b.dim()).map(|i| (format!("t|{}", b.label(i)), b.degree(i))));
    let mut cols = Vec::with_capacity(basis.len());
    for i in 0..na {
        let top = a.d().col(i).neg();
        cols.push(top.add(&f.matrix.col(i).shifted(na)));
    }
    for j in 0..b.dim() {
        cols.push(b.d().col(j).shifted(na));
    }
    let n = basis.len();
    ChainComplex::new(basis, Matrix::from_columns(n, cols)).expect("cone of a chain map")
}

/// Degreewise surjective.
pub fn is_fibration(f: &ChainMap) -> bool {
    f.degrees().into_iter().all(|n| rank(&f.block(n)) == f.target.in_degree(n).len())
}

/// Degreewise injective.
pub fn is_cofibration(f: &ChainMap) -> bool {
    f.degrees().into_iter().all(|n| rank(&f.block(n)) == f.source.in_degree(n).len())
}

pub fn is_acyclic_fibration(f: &ChainMap) -> bool {
    is_fibration(f) && is_quasi_iso(f)
}

pub fn block_rank(f: &ChainMap, n: i32) -> usize {
    rank(&f.block(n))
}
