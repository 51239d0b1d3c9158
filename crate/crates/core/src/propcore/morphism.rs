use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use super::axioms::{LawReport, Violation};
use super::Prop;
use crate::biobject::{Biarity, Perm};
use crate::error::{Error, Result};
use crate::gradedlinear::ChainMap;
use crate::linalg::{Matrix, SparseVec};

/// Componentwise linear maps between two props over the same bound.
#[derive(Clone)]
pub struct PropMorphism {
    pub source: Arc<dyn Prop>,
    pub target: Arc<dyn Prop>,
    pub maps: BTreeMap<Biarity, Matrix>,
}

impl PropMorphism {
    pub fn new(source: Arc<dyn Prop>, target: Arc<dyn Prop>, maps: BTreeMap<Biarity, Matrix>) -> Result<PropMorphism> {
        if source.bound() != target.bound() {
            return Err(Error::ShapeMismatch(format!(
                "morphism between bounds {} and {}",
                source.bound().0,
                target.bound().0
            )));
        }
        for b in source.bound().biarities() {
            let m = maps.get(&b).ok_or_else(|| Error::ShapeMismatch(format!("no map in biarity {b:?}")))?;
            if m.ncols() != source.dim(b) || m.nrows() != target.dim(b) {
                return Err(Error::ShapeMismatch(format!("map in biarity {b:?} has the wrong shape")));
            }
        }
        Ok(PropMorphism { source, target, maps })
    }

    /// Builds the matrices by applying `f` to basis elements.
    pub fn from_fn(
        source: Arc<dyn Prop>,
        target: Arc<dyn Prop>,
        f: impl Fn(Biarity, usize) -> Result<SparseVec> + Sync,
    ) -> Result<PropMorphism> {
        let maps = source
            .bound()
            .biarities()
            .into_par_iter()
            .map(|b| {
                let cols = (0..source.dim(b)).map(|i| f(b, i)).collect::<Result<Vec<_>>>()?;
                Ok((b, Matrix::from_columns(target.dim(b), cols)))
            })
            .collect::<Result<BTreeMap<_, _>>>()?;
        PropMorphism::new(source, target, maps)
    }

    pub fn identity(p: Arc<dyn Prop>) -> PropMorphism {
        let maps = p.bound().biarities().into_iter().map(|b| (b, Matrix::identity(p.dim(b)))).collect();
        PropMorphism { source: p.clone(), target: p, maps }
    }

    pub fn apply(&self, b: Biarity, v: &SparseVec) -> SparseVec {
        self.maps[&b].apply(v)
    }

    pub fn chain_map(&self, b: Biarity) -> ChainMap {
        ChainMap { source: self.source.component(b), target: self.target.component(b), matrix: self.maps[&b].clone() }
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &PropMorphism) -> PropMorphism {
        let maps = self.maps.iter().map(|(b, m)| (*b, m.compose(&first.maps[b]))).collect();
        PropMorphism { source: first.source.clone(), target: self.target.clone(), maps }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MorphismReport {
    pub laws: Vec<LawReport>,
}

impl MorphismReport {
    pub fn ok(&self) -> bool {
        self.laws.iter().all(|l| l.violations.is_empty())
    }

    pub fn violation_count(&self) -> usize {
        self.laws.iter().map(|l| l.violations.len()).sum()
    }
}

fn cmp(law: &str, ops: impl FnOnce() -> Vec<String>, sides: Result<(SparseVec, SparseVec)>) -> Option<Violation> {
    match sides {
        Ok((l, r)) if l == r => None,
        Ok((l, r)) => Some(Violation { law: law.into(), operands: ops(), detail: format!("{l:?} ≠ {r:?}") }),
        Err(e) => Some(Violation { law: law.into(), operands: ops(), detail: e.to_string() }),
    }
}

fn report(law: &str, parts: Vec<(usize, Vec<Violation>)>) -> LawReport {
    LawReport {
        law: law.into(),
        checked: parts.iter().map(|p| p.0).sum(),
        violations: parts.into_iter().flat_map(|p| p.1).collect(),
        skipped_by_truncation: Vec::new(),
    }
}

/// Checks that `f` commutes with differentials, both compositions, units
/// and the symmetric group actions, on all basis elements and pairs.
pub fn check_prop_morphism(f: &PropMorphism) -> MorphismReport {
    let (p, q) = (&f.source, &f.target);
    let bound = p.bound();
    let bs = bound.biarities();
    let name = |b: Biarity, i: usize| format!("{}@({},{})", p.component(b).label(i), b.0, b.1);
    let e = SparseVec::unit;

    let chain = bs
        .par_iter()
        .map(|&b| {
            let mut viol = Vec::new();
            let n = p.dim(b);
            for i in 0..n {
                let sides = Ok((f.apply(b, &p.differential(b, &e(i))), q.differential(b, &f.apply(b, &e(i)))));
                viol.extend(cmp("chain map", || vec![name(b, i)], sides));
                let di = f.apply(b, &e(i));
                if di.indices().any(|j| q.component(b).degree(j) != p.component(b).degree(i)) {
                    viol.push(Violation {
                        law: "chain map".into(),
                        operands: vec![name(b, i)],
                        detail: "not degree 0".into(),
                    });
                }
            }
            (n, viol)
        })
        .collect();

    let mut pairs = Vec::new();
    for &x in &bs {
        for &y in &bs {
            pairs.push((x, y));
        }
    }
    let comps: Vec<((usize, Vec<Violation>), (usize, Vec<Violation>))> = pairs
        .par_iter()
        .map(|&(x, y)| {
            let mut v = (0, Vec::new());
            let mut h = (0, Vec::new());
            let do_v = x.0 == y.1 && bound.contains((y.0, x.1));
            let hout = (x.0 + y.0, x.1 + y.1);
            let do_h = bound.contains(hout);
            for i in 0..p.dim(x) {
                let fa = f.apply(x, &e(i));
                for j in 0..p.dim(y) {
                    let fb = f.apply(y, &e(j));
                    if do_v {
                        v.0 += 1;
                        let out = (y.0, x.1);
                        let sides = (|| {
                            Ok((f.apply(out, &p.vertical_raw(x, &e(i), y, &e(j))?), q.vertical_raw(x, &fa, y, &fb)?))
                        })();
                        v.1.extend(cmp("vertical", || vec![name(x, i), name(y, j)], sides));
                    }
                    if do_h {
                        h.0 += 1;
                        let sides = (|| {
                            Ok((
                                f.apply(hout, &p.horizontal_raw(x, &e(i), y, &e(j))?),
                                q.horizontal_raw(x, &fa, y, &fb)?,
                            ))
                        })();
                        h.1.extend(cmp("horizontal", || vec![name(x, i), name(y, j)], sides));
                    }
                }
            }
            (v, h)
        })
        .collect();
    let (vert, horiz): (Vec<_>, Vec<_>) = comps.into_iter().unzip();

    let mut unit = (0, Vec::new());
    for n in 0..=bound.0 / 2 {
        unit.0 += 1;
        let sides = Ok((f.apply((n, n), &p.unit_raw(n)), q.unit_raw(n)));
        unit.1.extend(cmp("units", || vec![format!("1_{n}")], sides));
    }

    let actions = bs
        .par_iter()
        .map(|&b| {
            let mut cnt = 0;
            let mut viol = Vec::new();
            for i in 0..p.dim(b) {
                let fx = f.apply(b, &e(i));
                for g in 1..b.0 {
                    cnt += 1;
                    let s = Perm::adjacent(b.0, g);
                    let sides =
                        (|| Ok((f.apply(b, &p.right_action_raw(b, &e(i), &s)?), q.right_action_raw(b, &fx, &s)?)))();
                    viol.extend(cmp("actions", || vec![name(b, i), format!("right s{g}")], sides));
                }
                for g in 1..b.1 {
                    cnt += 1;
                    let s = Perm::adjacent(b.1, g);
                    let sides =
                        (|| Ok((f.apply(b, &p.left_action_raw(b, &s, &e(i))?), q.left_action_raw(b, &s, &fx)?)))();
                    viol.extend(cmp("actions", || vec![name(b, i), format!("left s{g}")], sides));
                }
            }
            (cnt, viol)
        })
        .collect();

    MorphismReport {
        laws: vec![
            report("chain map", chain),
            report("vertical", vert),
            report("horizontal", horiz),
            report("units", vec![unit]),
            report("actions", actions),
        ],
    }
}
