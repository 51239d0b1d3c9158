use std::collections::BTreeMap;
use std::sync::Arc;

use super::{odd_product, sign_of, Prop};
use crate::biobject::{Biarity, BiarityBound, Perm};
use crate::error::Result;
use crate::gradedlinear::{tensor, ChainComplex};
use crate::linalg::{Accumulator, SparseVec};

/// Componentwise tensor product `P ⊗_H Q`. Basis `p⊗q` sits at
/// `p·dim Q + q`; `(a⊗b)∘(a'⊗b') = (−1)^{|b||a'|}(a∘a')⊗(b∘b')`, the same
/// for `∘_h`; symmetric groups act diagonally.
pub struct Hadamard {
    pub left: Arc<dyn Prop>,
    pub right: Arc<dyn Prop>,
    bound: BiarityBound,
    components: BTreeMap<Biarity, Arc<ChainComplex>>,
}

impl Hadamard {
    pub fn new(left: Arc<dyn Prop>, right: Arc<dyn Prop>) -> Hadamard {
        let bound = BiarityBound(left.bound().0.min(right.bound().0));
        let components = bound
            .biarities()
            .into_iter()
            .map(|b| (b, Arc::new(tensor(&left.component(b), &right.component(b)))))
            .collect();
        Hadamard { left, right, bound, components }
    }

    /// Splits an element into `(p, q, coefficient)` triples.
    fn split<'a>(&self, b: Biarity, v: &'a SparseVec) -> impl Iterator<Item = (usize, usize, &'a crate::Rational)> {
        let dq = self.right.dim(b);
        v.iter().map(move |(i, c)| (i / dq, i % dq, c))
    }

    /// `p ⊗ q` for vectors.
    pub fn pure(&self, b: Biarity, p: &SparseVec, q: &SparseVec) -> SparseVec {
        outer(p, q, self.right.dim(b))
    }

    fn binary(
        &self,
        x: Biarity,
        a: &SparseVec,
        y: Biarity,
        b: &SparseVec,
        out: Biarity,
        op_l: impl Fn(&SparseVec, &SparseVec) -> Result<SparseVec>,
        op_r: impl Fn(&SparseVec, &SparseVec) -> Result<SparseVec>,
    ) -> Result<SparseVec> {
        let ql = self.right.component(x);
        let pl = self.left.component(y);
        let dq = self.right.dim(out);
        let mut acc = Accumulator::new();
        for (p, q, c) in self.split(x, a) {
            for (p2, q2, c2) in self.split(y, b) {
                let l = op_l(&SparseVec::unit(p), &SparseVec::unit(p2))?;
                if l.is_zero() {
                    continue;
                }
                let r = op_r(&SparseVec::unit(q), &SparseVec::unit(q2))?;
                if r.is_zero() {
                    continue;
                }
                let s = sign_of(odd_product(ql.degree(q), pl.degree(p2)));
                acc.add_vec(&outer(&l, &r, dq), &(&(c * c2) * &s));
            }
        }
        Ok(acc.finish())
    }
}

fn outer(p: &SparseVec, q: &SparseVec, dq: usize) -> SparseVec {
    let mut acc = Accumulator::new();
    for (i, x) in p.iter() {
        for (j, y) in q.iter() {
            acc.add(i * dq + j, &(x * y));
        }
    }
    acc.finish()
}

impl Prop for Hadamard {
    fn bound(&self) -> BiarityBound {
        self.bound
    }

    fn component(&self, b: Biarity) -> Arc<ChainComplex> {
        self.components[&b].clone()
    }

    fn vertical_raw(&self, outer_b: Biarity, a: &SparseVec, inner: Biarity, b: &SparseVec) -> Result<SparseVec> {
        let out = (inner.0, outer_b.1);
        self.binary(
            outer_b,
            a,
            inner,
            b,
            out,
            |x, y| self.left.vertical_raw(outer_b, x, inner, y),
            |x, y| self.right.vertical_raw(outer_b, x, inner, y),
        )
    }

    fn horizontal_raw(&self, l: Biarity, a: &SparseVec, r: Biarity, b: &SparseVec) -> Result<SparseVec> {
        let out = (l.0 + r.0, l.1 + r.1);
        self.binary(
            l,
            a,
            r,
            b,
            out,
            |x, y| self.left.horizontal_raw(l, x, r, y),
            |x, y| self.right.horizontal_raw(l, x, r, y),
        )
    }

    fn unit_raw(&self, n: usize) -> SparseVec {
        outer(&self.left.unit_raw(n), &self.right.unit_raw(n), self.right.dim((n, n)))
    }

    fn right_action_raw(&self, b: Biarity, a: &SparseVec, sigma: &Perm) -> Result<SparseVec> {
        let dq = self.right.dim(b);
        let mut acc = Accumulator::new();
        for (p, q, c) in self.split(b, a) {
            let l = self.left.right_action_raw(b, &SparseVec::unit(p), sigma)?;
            let r = self.right.right_action_raw(b, &SparseVec::unit(q), sigma)?;
            acc.add_vec(&outer(&l, &r, dq), c);
        }
        Ok(acc.finish())
    }

    fn left_action_raw(&self, b: Biarity, tau: &Perm, a: &SparseVec) -> Result<SparseVec> {
        let dq = self.right.dim(b);
        let mut acc = Accumulator::new();
        for (p, q, c) in self.split(b, a) {
            let l = self.left.left_action_raw(b, tau, &SparseVec::unit(p))?;
            let r = self.right.left_action_raw(b, tau, &SparseVec::unit(q))?;
            acc.add_vec(&outer(&l, &r, dq), c);
        }
        Ok(acc.finish())
    }
}
