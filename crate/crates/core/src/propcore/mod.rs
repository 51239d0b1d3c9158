//! Truncated props: the trait, concrete props, axiom checks and morphisms.

mod algebra;
mod axioms;
mod diagram;
mod endomorphism;
mod hadamard;
mod morphism;
mod product;
mod subprop;
mod table;
mod word;

use std::sync::Arc;

pub use crate::biobject::{Biarity, BiarityBound, Perm};
pub use algebra::{check_algebra, AlgebraJson, PAlgebra};
pub use axioms::{check_prop_axioms, AxiomReport, LawReport, Violation};
pub use diagram::{
    coreflexive_section, diagram_endomorphism_prop, diagram_family_ok, equalizer_maps, restriction_morphism, Arrow,
    DiagramProp, DiagramShape,
};
pub use endomorphism::EndomorphismProp;
pub use hadamard::Hadamard;
pub use morphism::{check_prop_morphism, MorphismReport, PropMorphism};
pub use product::ProductProp;
pub use subprop::SubProp;
pub use table::{
    biarity_key, element_from_json, element_to_json, parse_biarity, tabulate, unit_prop, ElementJson, PropJson,
    TruncatedProp,
};
pub use word::{evaluate_word, GeneratorSpec, GeneratorWord, Presentation};

use crate::error::{Error, Result};
use crate::gradedlinear::ChainComplex;
use crate::linalg::{Accumulator, Rational, SparseVec};

/// A prop truncated at a biarity bound. Elements of `P(m, n)` are vectors in
/// the basis of `component((m, n))`. The `*_raw` methods may assume their
/// arguments are in range and arities match; callers go through the checked
/// wrappers.
pub trait Prop: Send + Sync {
    fn bound(&self) -> BiarityBound;

    /// Component within the bound.
    fn component(&self, b: Biarity) -> Arc<ChainComplex>;

    /// `a ∘_v b` for `a ∈ P(k, n)`, `b ∈ P(m, k)`.
    fn vertical_raw(&self, outer: Biarity, a: &SparseVec, inner: Biarity, b: &SparseVec) -> Result<SparseVec>;

    /// `a ∘_h b` for `a ∈ P(m₁, n₁)`, `b ∈ P(m₂, n₂)`.
    fn horizontal_raw(&self, left: Biarity, a: &SparseVec, right: Biarity, b: &SparseVec) -> Result<SparseVec>;

    fn unit_raw(&self, n: usize) -> SparseVec;

    /// `a·σ`, `σ ∈ Σ_m`.
    fn right_action_raw(&self, b: Biarity, a: &SparseVec, sigma: &Perm) -> Result<SparseVec>;

    /// `τ·a`, `τ ∈ Σ_n`.
    fn left_action_raw(&self, b: Biarity, tau: &Perm, a: &SparseVec) -> Result<SparseVec>;

    fn differential(&self, b: Biarity, a: &SparseVec) -> SparseVec {
        self.component(b).apply_d(a)
    }

    fn dim(&self, b: Biarity) -> usize {
        if self.bound().contains(b) {
            self.component(b).dim()
        } else {
            0
        }
    }

    fn vertical(&self, outer: Biarity, a: &SparseVec, inner: Biarity, b: &SparseVec) -> Result<SparseVec> {
        let out = vertical_biarity(outer, inner)?;
        for x in [outer, inner, out] {
            self.bound().check(x)?;
        }
        self.vertical_raw(outer, a, inner, b)
    }

    fn horizontal(&self, left: Biarity, a: &SparseVec, right: Biarity, b: &SparseVec) -> Result<SparseVec> {
        let out = horizontal_biarity(left, right);
        for x in [left, right, out] {
            self.bound().check(x)?;
        }
        self.horizontal_raw(left, a, right, b)
    }

    fn unit(&self, n: usize) -> Result<SparseVec> {
        self.bound().check((n, n))?;
        Ok(self.unit_raw(n))
    }

    fn right_action(&self, b: Biarity, a: &SparseVec, sigma: &Perm) -> Result<SparseVec> {
        self.bound().check(b)?;
        if sigma.len() != b.0 {
            return Err(Error::ArityMismatch(format!("right action of Σ_{} on {b:?}", sigma.len())));
        }
        self.right_action_raw(b, a, sigma)
    }

    fn left_action(&self, b: Biarity, tau: &Perm, a: &SparseVec) -> Result<SparseVec> {
        self.bound().check(b)?;
        if tau.len() != b.1 {
            return Err(Error::ArityMismatch(format!("left action of Σ_{} on {b:?}", tau.len())));
        }
        self.left_action_raw(b, tau, a)
    }
}

/// Result biarity of `P(k, n) ∘_v P(m, k)`.
pub fn vertical_biarity(outer: Biarity, inner: Biarity) -> Result<Biarity> {
    if outer.0 != inner.1 {
        return Err(Error::ArityMismatch(format!(
            "vertical composition of {outer:?} after {inner:?}: {} inputs against {} outputs",
            outer.0, inner.1
        )));
    }
    Ok((inner.0, outer.1))
}

pub fn horizontal_biarity(left: Biarity, right: Biarity) -> Biarity {
    (left.0 + right.0, left.1 + right.1)
}

/// Extends a basis-level bilinear operation to vectors.
pub fn bilinear(
    a: &SparseVec,
    b: &SparseVec,
    mut op: impl FnMut(usize, usize) -> Result<SparseVec>,
) -> Result<SparseVec> {
    let mut acc = Accumulator::new();
    for (i, x) in a.iter() {
        for (j, y) in b.iter() {
            let r = op(i, j)?;
            if !r.is_zero() {
                acc.add_vec(&r, &(x * y));
            }
        }
    }
    Ok(acc.finish())
}

/// Extends a basis-level linear operation to vectors.
pub fn linear(a: &SparseVec, mut op: impl FnMut(usize) -> Result<SparseVec>) -> Result<SparseVec> {
    let mut acc = Accumulator::new();
    for (i, x) in a.iter() {
        let r = op(i)?;
        acc.add_vec(&r, x);
    }
    Ok(acc.finish())
}

/// Degree of a homogeneous element (0 for the zero vector).
pub fn element_degree(c: &ChainComplex, v: &SparseVec) -> i32 {
    v.indices().next().map_or(0, |i| c.degree(i))
}

pub(crate) fn sign_of(odd: bool) -> Rational {
    Rational::sign(odd)
}

/// `true` when `a·b` is odd.
pub(crate) fn odd_product(a: i32, b: i32) -> bool {
    (a * b).rem_euclid(2) == 1
}
