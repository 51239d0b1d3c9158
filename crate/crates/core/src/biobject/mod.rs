//! Σ-biobjects truncated at a biarity bound.

mod perm;

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

pub use perm::{factorial, Perm};

use crate::error::{Error, Result};
use crate::gradedlinear::{is_cofibration, is_fibration, is_quasi_iso, ChainComplex, ChainMap, SEP};
use crate::linalg::{Matrix, Rational, SparseVec};

/// `(m, n)`: `m` inputs, `n` outputs.
pub type Biarity = (usize, usize);

/// Truncation: components `(m, n)` with `m + n ≤ A` are materialized.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BiarityBound(pub usize);

impl BiarityBound {
    pub fn contains(&self, (m, n): Biarity) -> bool {
        m + n <= self.0
    }

    pub fn check(&self, b: Biarity) -> Result<()> {
        if self.contains(b) {
            Ok(())
        } else {
            Err(Error::TruncationExceeded { biarity: b, bound: self.0 })
        }
    }

    /// All biarities within the bound, ordered by `(m, n)`.
    pub fn biarities(&self) -> Vec<Biarity> {
        let a = self.0;
        let mut v = Vec::new();
        for m in 0..=a {
            for n in 0..=(a - m) {
                v.push((m, n));
            }
        }
        v
    }
}

/// Mixed-radix index of a tuple of basis indices of `X^{⊗m}`.
pub fn tuple_index(digits: &[usize], base: usize) -> usize {
    digits.iter().fold(0, |acc, &d| acc * base + d)
}

pub fn tuple_digits(mut index: usize, base: usize, m: usize) -> Vec<usize> {
    let mut v = vec![0; m];
    for slot in v.iter_mut().rev() {
        *slot = index % base;
        index /= base;
    }
    v
}

/// Sign picked up when graded factors of the given degrees are permuted by `σ`.
pub fn permutation_sign(degrees: &[i32], sigma: &Perm) -> Rational {
    let mut odd = false;
    for i in 0..degrees.len() {
        for j in i + 1..degrees.len() {
            if sigma.apply(i) > sigma.apply(j) && (degrees[i] * degrees[j]).rem_euclid(2) == 1 {
                odd = !odd;
            }
        }
    }
    Rational::sign(odd)
}

/// Matrix of `σ_*` on `X^{⊗m}`: the factor in position `i` moves to
/// position `σ(i)`, with the Koszul sign. This is a left action.
pub fn permutation_matrix(x: &ChainComplex, sigma: &Perm) -> Matrix {
    let m = sigma.len();
    let base = x.dim();
    let total = base.pow(m as u32);
    let inv = sigma.inverse();
    let cols = (0..total)
        .map(|idx| {
            let digits = tuple_digits(idx, base, m);
            let degs: Vec<i32> = digits.iter().map(|&k| x.degree(k)).collect();
            let out: Vec<usize> = (0..m).map(|p| digits[inv.apply(p)]).collect();
            SparseVec::single(tuple_index(&out, base), permutation_sign(&degs, sigma))
        })
        .collect();
    Matrix::from_columns(total, cols)
}

/// `σ_*` as a chain map on `X^{⊗m}`.
pub fn symmetric_power_action(x: &ChainComplex, sigma: &Perm) -> ChainMap {
    let xm = Arc::new(crate::gradedlinear::tensor_power(x, sigma.len()));
    ChainMap { source: xm.clone(), target: xm, matrix: permutation_matrix(x, sigma) }
}

/// A truncated double sequence of complexes with commuting actions, stored
/// through adjacent-transposition generators.
#[derive(Clone, Debug)]
pub struct BiObject {
    pub bound: BiarityBound,
    components: BTreeMap<Biarity, Arc<ChainComplex>>,
    /// `right[(m,n)][k−1]` is the matrix of `a ↦ a·s_k`, `s_k ∈ Σ_m`.
    right: BTreeMap<Biarity, Vec<Matrix>>,
    /// `left[(m,n)][k−1]` is the matrix of `a ↦ s_k·a`, `s_k ∈ Σ_n`.
    left: BTreeMap<Biarity, Vec<Matrix>>,
}

impl BiObject {
    /// Builds and validates (shapes, chain maps, Coxeter relations, commuting actions).
    pub fn new(
        bound: BiarityBound,
        components: BTreeMap<Biarity, Arc<ChainComplex>>,
        right: BTreeMap<Biarity, Vec<Matrix>>,
        left: BTreeMap<Biarity, Vec<Matrix>>,
    ) -> Result<BiObject> {
        let b = BiObject::new_unchecked(bound, components, right, left)?;
        if let Some(v) = b.action_violations().into_iter().next() {
            return Err(Error::ShapeMismatch(v));
        }
        Ok(b)
    }

    /// Fills missing components with zero and missing generators with the
    /// identity; checks only shapes and the bound.
    pub fn new_unchecked(
        bound: BiarityBound,
        mut components: BTreeMap<Biarity, Arc<ChainComplex>>,
        mut right: BTreeMap<Biarity, Vec<Matrix>>,
        mut left: BTreeMap<Biarity, Vec<Matrix>>,
    ) -> Result<BiObject> {
        for b in components.keys().chain(right.keys()).chain(left.keys()) {
            bound.check(*b)?;
        }
        let zero = Arc::new(ChainComplex::zero());
        for b in bound.biarities() {
            let c = components.entry(b).or_insert_with(|| zero.clone()).clone();
            let dim = c.dim();
            for (gens, k) in [(right.entry(b).or_default(), b.0), (left.entry(b).or_default(), b.1)] {
                if gens.is_empty() {
                    *gens = (1..k).map(|_| Matrix::identity(dim)).collect();
                }
                if gens.len() != k.saturating_sub(1) {
                    return Err(Error::ShapeMismatch(format!(
                        "component {b:?}: expected {} generators, got {}",
                        k.saturating_sub(1),
                        gens.len()
                    )));
                }
                if gens.iter().any(|g| g.nrows() != dim || g.ncols() != dim) {
                    return Err(Error::ShapeMismatch(format!("component {b:?}: generator shape")));
                }
            }
        }
        Ok(BiObject { bound, components, right, left })
    }

    pub fn component(&self, b: Biarity) -> Result<&Arc<ChainComplex>> {
        self.bound.check(b)?;
        Ok(&self.components[&b])
    }

    pub fn components(&self) -> &BTreeMap<Biarity, Arc<ChainComplex>> {
        &self.components
    }

    pub fn right_generators(&self, b: Biarity) -> &[Matrix] {
        &self.right[&b]
    }

    pub fn left_generators(&self, b: Biarity) -> &[Matrix] {
        &self.left[&b]
    }

    /// Matrix of `a ↦ a·σ` for `σ ∈ Σ_m`.
    pub fn right_action(&self, b: Biarity, sigma: &Perm) -> Matrix {
        let dim = self.components[&b].dim();
        let mut acc = Matrix::identity(dim);
        // σ = s_{k1}∘⋯∘s_{kr} and a·σ = (⋯(a·s_{k1})⋯)·s_{kr}
        for k in sigma.adjacent_word() {
            acc = self.right[&b][k - 1].compose(&acc);
        }
        acc
    }

    /// Matrix of `a ↦ τ·a` for `τ ∈ Σ_n`.
    pub fn left_action(&self, b: Biarity, tau: &Perm) -> Matrix {
        let dim = self.components[&b].dim();
        let mut acc = Matrix::identity(dim);
        for k in tau.adjacent_word() {
            acc = acc.compose(&self.left[&b][k - 1]);
        }
        acc
    }

    /// Every failed action law, as text. Checks chain-map conditions and
    /// Coxeter relations on generators, commuting actions, and (for arities
    /// ≤ 3) the group law on the whole group.
    pub fn action_violations(&self) -> Vec<String> {
        let checks: Vec<Vec<String>> = self
            .components
            .par_iter()
            .map(|(&b, c)| {
                let mut out = Vec::new();
                let dim = c.dim();
                if dim == 0 {
                    return out;
                }
                let id = Matrix::identity(dim);
                for (side, gens) in [("right", &self.right[&b]), ("left", &self.left[&b])] {
                    for (k, g) in gens.iter().enumerate() {
                        if c.d().compose(g) != g.compose(c.d()) {
                            out.push(format!("{b:?}: {side} s{} is not a chain map", k + 1));
                        }
                        if g.compose(g) != id {
                            out.push(format!("{b:?}: {side} s{} does not square to 1", k + 1));
                        }
                        if let Some(h) = gens.get(k + 1) {
                            let gh = g.compose(h);
                            if gh.compose(&gh).compose(&gh) != id {
                                out.push(format!("{b:?}: {side} braid relation s{} s{}", k + 1, k + 2));
                            }
                        }
                        for (l, h) in gens.iter().enumerate().skip(k + 2) {
                            if g.compose(h) != h.compose(g) {
                                out.push(format!("{b:?}: {side} s{} and s{} do not commute", k + 1, l + 1));
                            }
                        }
                    }
                }
                for (i, r) in self.right[&b].iter().enumerate() {
                    for (j, l) in self.left[&b].iter().enumerate() {
                        if r.compose(l) != l.compose(r) {
                            out.push(format!("{b:?}: right s{} and left s{} do not commute", i + 1, j + 1));
                        }
                    }
                }
                let (m, n) = b;
                if m <= 3 {
                    for s in Perm::all(m) {
                        for t in Perm::all(m) {
                            let lhs = self.right_action(b, &s.compose(&t));
                            let rhs = self.right_action(b, &t).compose(&self.right_action(b, &s));
                            if lhs != rhs {
                                out.push(format!("{b:?}: right action law fails at {s}, {t}"));
                            }
                        }
                    }
                }
                if n <= 3 {
                    for s in Perm::all(n) {
                        for t in Perm::all(n) {
                            let lhs = self.left_action(b, &s.compose(&t));
                            let rhs = self.left_action(b, &s).compose(&self.left_action(b, &t));
                            if lhs != rhs {
                                out.push(format!("{b:?}: left action law fails at {s}, {t}"));
                            }
                        }
                    }
                }
                out
            })
            .collect();
        checks.into_iter().flatten().collect()
    }

    /// Non-empty inputs: `M(0, n) = 0` for `n > 0`, and `M(0, 0)` is ℚ in
    /// degree 0 unless `exempt_unit` is set, in which case it is not inspected.
    pub fn has_nonempty_inputs(&self, exempt_unit: bool) -> bool {
        self.components.iter().filter(|((m, _), _)| *m == 0).all(|(&(_, n), c)| {
            if n > 0 {
                c.is_zero()
            } else {
                exempt_unit || c.dims() == crate::gradedlinear::GradedDims::from_pairs(&[(0, 1)])
            }
        })
    }
}

/// `φ_!M`: component `(m, n)` is `m!·n!` copies of `M(m, n)` indexed by
/// `(τ, σ) ∈ Σ_n × Σ_m` (copy `rank(τ)·m! + rank(σ)`), acting by
/// `τ'·(τ, x, σ)·σ' = (τ'τ, x, σσ')`.
pub fn free_biobject(bound: BiarityBound, m: &BTreeMap<Biarity, ChainComplex>) -> Result<BiObject> {
    let mut components = BTreeMap::new();
    let mut right = BTreeMap::new();
    let mut left = BTreeMap::new();
    for (&b, c) in m {
        bound.check(b)?;
        let (mi, ni) = b;
        let (sm, sn) = (Perm::all(mi), Perm::all(ni));
        let copies = sm.len() * sn.len();
        let d = c.dim();
        let mut basis = Vec::with_capacity(copies * d);
        let mut dm = Matrix::zeros(0, 0);
        for t in &sn {
            for s in &sm {
                for i in 0..d {
                    basis.push((format!("{t}{SEP}{}{SEP}{s}", c.label(i)), c.degree(i)));
                }
                dm = dm.direct_sum(c.d());
            }
        }
        let comp = ChainComplex::new(basis, dm)?;
        let copy_matrix = |f: &dyn Fn(&Perm, &Perm) -> (Perm, Perm)| {
            let mut cols = Vec::with_capacity(copies * d);
            for t in &sn {
                for s in &sm {
                    let (t2, s2) = f(t, s);
                    let target = t2.rank() * sm.len() + s2.rank();
                    for i in 0..d {
                        cols.push(SparseVec::unit(target * d + i));
                    }
                }
            }
            Matrix::from_columns(copies * d, cols)
        };
        let r: Vec<Matrix> =
            (1..mi).map(|k| copy_matrix(&|t, s| (t.clone(), s.compose(&Perm::adjacent(mi, k))))).collect();
        let l: Vec<Matrix> =
            (1..ni).map(|k| copy_matrix(&|t, s| (Perm::adjacent(ni, k).compose(t), s.clone()))).collect();
        components.insert(b, Arc::new(comp));
        right.insert(b, r);
        left.insert(b, l);
    }
    BiObject::new(bound, components, right, left)
}

/// The double sequence with ℚ in biarity `b` and zero elsewhere.
pub fn generator_sequence(b: Biarity) -> BTreeMap<Biarity, ChainComplex> {
    BTreeMap::from([(b, ChainComplex::unit())])
}

/// Componentwise chain maps between biobjects.
#[derive(Clone, Debug)]
pub struct BiObjectMorphism {
    pub source: Arc<BiObject>,
    pub target: Arc<BiObject>,
    pub maps: BTreeMap<Biarity, Matrix>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentClass {
    pub weak_equiv: bool,
    pub fibration: bool,
    pub cofibration: bool,
}

impl BiObjectMorphism {
    pub fn identity(b: Arc<BiObject>) -> BiObjectMorphism {
        let maps = b.components.iter().map(|(k, c)| (*k, Matrix::identity(c.dim()))).collect();
        BiObjectMorphism { source: b.clone(), target: b, maps }
    }

    pub fn zero(source: Arc<BiObject>, target: Arc<BiObject>) -> BiObjectMorphism {
        let maps =
            source.components.iter().map(|(k, c)| (*k, Matrix::zeros(target.components[k].dim(), c.dim()))).collect();
        BiObjectMorphism { source, target, maps }
    }

    pub fn chain_map(&self, b: Biarity) -> ChainMap {
        ChainMap {
            source: self.source.components[&b].clone(),
            target: self.target.components[&b].clone(),
            matrix: self.maps[&b].clone(),
        }
    }

    /// Chain-map and equivariance failures, as text.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (&b, f) in &self.maps {
            let (s, t) = (&self.source.components[&b], &self.target.components[&b]);
            if t.d().compose(f) != f.compose(s.d()) {
                out.push(format!("{b:?}: not a chain map"));
            }
            for (k, (gs, gt)) in self.source.right[&b].iter().zip(&self.target.right[&b]).enumerate() {
                if f.compose(gs) != gt.compose(f) {
                    out.push(format!("{b:?}: not equivariant for right s{}", k + 1));
                }
            }
            for (k, (gs, gt)) in self.source.left[&b].iter().zip(&self.target.left[&b]).enumerate() {
                if f.compose(gs) != gt.compose(f) {
                    out.push(format!("{b:?}: not equivariant for left s{}", k + 1));
                }
            }
        }
        out
    }
}

/// Weak equivalence / fibration / cofibration flags per component.
pub fn classify_morphism(f: &BiObjectMorphism) -> BTreeMap<Biarity, ComponentClass> {
    f.maps
        .par_iter()
        .map(|(&b, _)| {
            let c = f.chain_map(b);
            (
                b,
                ComponentClass {
                    weak_equiv: is_quasi_iso(&c),
                    fibration: is_fibration(&c),
                    cofibration: is_cofibration(&c),
                },
            )
        })
        .collect()
}
