use std::collections::BTreeMap;
use std::sync::Arc;

use super::Prop;
use crate::biobject::{Biarity, BiarityBound, Perm};
use crate::error::{Error, Result};
use crate::gradedlinear::{ChainComplex, SubComplex};
use crate::linalg::SparseVec;

/// A sub-prop cut out componentwise by subcomplexes of an ambient prop.
/// Structure maps embed, compute in the ambient prop and project back;
/// a result outside the subcomplex is reported as [`Error::NotClosed`].
pub struct SubProp {
    pub ambient: Arc<dyn Prop>,
    pub subs: BTreeMap<Biarity, SubComplex>,
}

impl SubProp {
    pub fn new(ambient: Arc<dyn Prop>, subs: BTreeMap<Biarity, SubComplex>) -> SubProp {
        debug_assert!(ambient.bound().biarities().iter().all(|b| subs.contains_key(b)));
        SubProp { ambient, subs }
    }

    pub fn embed(&self, b: Biarity, v: &SparseVec) -> SparseVec {
        self.subs[&b].embed(v)
    }

    pub fn project(&self, b: Biarity, v: &SparseVec, what: &str) -> Result<SparseVec> {
        self.subs[&b]
            .project(v)
            .ok_or_else(|| Error::NotClosed { biarity: b, detail: format!("{what} leaves the sub-prop") })
    }
}

impl Prop for SubProp {
    fn bound(&self) -> BiarityBound {
        self.ambient.bound()
    }

    fn component(&self, b: Biarity) -> Arc<ChainComplex> {
        self.subs[&b].complex.clone()
    }

    fn vertical_raw(&self, outer: Biarity, a: &SparseVec, inner: Biarity, b: &SparseVec) -> Result<SparseVec> {
        let r = self.ambient.vertical_raw(outer, &self.embed(outer, a), inner, &self.embed(inner, b))?;
        self.project((inner.0, outer.1), &r, "vertical composite")
    }

    fn horizontal_raw(&self, l: Biarity, a: &SparseVec, r: Biarity, b: &SparseVec) -> Result<SparseVec> {
        let x = self.ambient.horizontal_raw(l, &self.embed(l, a), r, &self.embed(r, b))?;
        self.project((l.0 + r.0, l.1 + r.1), &x, "horizontal composite")
    }

    fn unit_raw(&self, n: usize) -> SparseVec {
        // a unit outside the sub-prop is reported by the axiom check as a zero unit
        match self.subs.get(&(n, n)) {
            Some(sub) => sub.project(&self.ambient.unit_raw(n)).unwrap_or_default(),
            None => SparseVec::new(),
        }
    }

    fn right_action_raw(&self, b: Biarity, a: &SparseVec, sigma: &Perm) -> Result<SparseVec> {
        let r = self.ambient.right_action_raw(b, &self.embed(b, a), sigma)?;
        self.project(b, &r, "right action")
    }

    fn left_action_raw(&self, b: Biarity, tau: &Perm, a: &SparseVec) -> Result<SparseVec> {
        let r = self.ambient.left_action_raw(b, tau, &self.embed(b, a))?;
        self.project(b, &r, "left action")
    }
}
