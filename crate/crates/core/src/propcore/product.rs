use std::collections::BTreeMap;
use std::sync::Arc;

use super::Prop;
use crate::biobject::{Biarity, BiarityBound, Perm};
use crate::error::Result;
use crate::gradedlinear::{direct_sum_many, ChainComplex};
use crate::linalg::{Accumulator, SparseVec};

/// Componentwise product `∏ P_i`: `P(m, n) = ⊕_i P_i(m, n)` with the
/// structure maps acting factorwise.
pub struct ProductProp {
    pub factors: Vec<Arc<dyn Prop>>,
    bound: BiarityBound,
    components: BTreeMap<Biarity, Arc<ChainComplex>>,
}

impl ProductProp {
    pub fn new(factors: Vec<Arc<dyn Prop>>) -> ProductProp {
        let bound = BiarityBound(factors.iter().map(|p| p.bound().0).min().unwrap_or(0));
        let components = bound
            .biarities()
            .into_iter()
            .map(|b| {
                let parts: Vec<Arc<ChainComplex>> = factors.iter().map(|p| p.component(b)).collect();
                let refs: Vec<&ChainComplex> = parts.iter().map(|c| c.as_ref()).collect();
                (b, Arc::new(direct_sum_many(&refs)))
            })
            .collect();
        ProductProp { factors, bound, components }
    }

    pub fn offsets(&self, b: Biarity) -> Vec<usize> {
        let mut v = vec![0];
        for p in &self.factors {
            v.push(v.last().unwrap() + p.dim(b));
        }
        v
    }

    /// The `k`-th coordinate of an element.
    pub fn part(&self, b: Biarity, v: &SparseVec, k: usize) -> SparseVec {
        let off = self.offsets(b);
        v.window(off[k], off[k + 1])
    }

    /// Assembles an element from its coordinates.
    pub fn assemble(&self, b: Biarity, parts: &[SparseVec]) -> SparseVec {
        let off = self.offsets(b);
        let mut acc = Accumulator::new();
        for (k, p) in parts.iter().enumerate() {
            acc.add_vec(&p.shifted(off[k]), &crate::Rational::one());
        }
        acc.finish()
    }

    fn each(&self, out: Biarity, f: impl Fn(usize, &Arc<dyn Prop>) -> Result<SparseVec>) -> Result<SparseVec> {
        let parts = self.factors.iter().enumerate().map(|(k, p)| f(k, p)).collect::<Result<Vec<_>>>()?;
        Ok(self.assemble(out, &parts))
    }
}

impl Prop for ProductProp {
    fn bound(&self) -> BiarityBound {
        self.bound
    }

    fn component(&self, b: Biarity) -> Arc<ChainComplex> {
        self.components[&b].clone()
    }

    fn vertical_raw(&self, outer: Biarity, a: &SparseVec, inner: Biarity, b: &SparseVec) -> Result<SparseVec> {
        self.each((inner.0, outer.1), |k, p| {
            p.vertical_raw(outer, &self.part(outer, a, k), inner, &self.part(inner, b, k))
        })
    }

    fn horizontal_raw(&self, l: Biarity, a: &SparseVec, r: Biarity, b: &SparseVec) -> Result<SparseVec> {
        self.each((l.0 + r.0, l.1 + r.1), |k, p| p.horizontal_raw(l, &self.part(l, a, k), r, &self.part(r, b, k)))
    }

    fn unit_raw(&self, n: usize) -> SparseVec {
        let parts: Vec<SparseVec> = self.factors.iter().map(|p| p.unit_raw(n)).collect();
        self.assemble((n, n), &parts)
    }

    fn right_action_raw(&self, b: Biarity, a: &SparseVec, sigma: &Perm) -> Result<SparseVec> {
        self.each(b, |k, p| p.right_action_raw(b, &self.part(b, a, k), sigma))
    }

    fn left_action_raw(&self, b: Biarity, tau: &Perm, a: &SparseVec) -> Result<SparseVec> {
        self.each(b, |k, p| p.left_action_raw(b, tau, &self.part(b, a, k)))
    }
}
