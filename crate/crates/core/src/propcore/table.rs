use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::Prop;
use crate::biobject::{BiObject, Biarity, BiarityBound, Perm};
use crate::error::{Error, Result};
use crate::gradedlinear::{labelled_matrix, ChainComplex, ComplexJson};
use crate::linalg::{Matrix, Rational, SparseVec};

type Key = (Biarity, usize, Biarity, usize);

/// A prop given by explicit structure tables on basis elements. Missing
/// table entries are zero.
#[derive(Clone, Debug)]
pub struct TruncatedProp {
    pub biobject: BiObject,
    vertical: HashMap<Key, SparseVec>,
    horizontal: HashMap<Key, SparseVec>,
    units: BTreeMap<usize, SparseVec>,
    /// Raw presentation block, interpreted by the lifting code.
    pub presentation: Option<serde_json::Value>,
}

/// Label-keyed element: basis label → coefficient.
pub type ElementJson = BTreeMap<String, Rational>;

/// On-disk prop.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PropJson {
    pub bound: usize,
    /// `"m,n"` → component. Missing components are zero.
    pub components: BTreeMap<String, ComplexJson>,
    /// `"m,n"` → `"s<k>"` → source label → target label → coefficient.
    /// Missing generators act as the identity.
    #[serde(default)]
    pub right_actions: BTreeMap<String, BTreeMap<String, BTreeMap<String, ElementJson>>>,
    #[serde(default)]
    pub left_actions: BTreeMap<String, BTreeMap<String, BTreeMap<String, ElementJson>>>,
    /// `"n"` → `1_n`.
    pub units: BTreeMap<String, ElementJson>,
    /// `"k,n|m,k"` → `"a|b"` → `a ∘_v b`.
    #[serde(default)]
    pub vertical: BTreeMap<String, BTreeMap<String, ElementJson>>,
    /// `"m1,n1|m2,n2"` → `"a|b"` → `a ∘_h b`.
    #[serde(default)]
    pub horizontal: BTreeMap<String, BTreeMap<String, ElementJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub presentation: Option<serde_json::Value>,
}

pub fn parse_biarity(s: &str) -> Result<Biarity> {
    let bad = || Error::Parse(format!("biarity key {s:?}"));
    let (m, n) = s.split_once(',').ok_or_else(bad)?;
    Ok((m.trim().parse().map_err(|_| bad())?, n.trim().parse().map_err(|_| bad())?))
}

pub fn biarity_key((m, n): Biarity) -> String {
    format!("{m},{n}")
}

pub fn element_from_json(c: &ChainComplex, e: &ElementJson) -> Result<SparseVec> {
    let mut entries = Vec::new();
    for (l, x) in e {
        let i = c.index_of(l).ok_or_else(|| Error::InvalidLabel(l.clone()))?;
        entries.push((i, x.clone()));
    }
    Ok(SparseVec::from_entries(entries))
}

pub fn element_to_json(c: &ChainComplex, v: &SparseVec) -> ElementJson {
    v.iter().map(|(i, x)| (c.label(i).to_string(), x.clone())).collect()
}

fn actions_from_json(
    bound: BiarityBound,
    components: &BTreeMap<Biarity, Arc<ChainComplex>>,
    table: &BTreeMap<String, BTreeMap<String, BTreeMap<String, ElementJson>>>,
    right: bool,
) -> Result<BTreeMap<Biarity, Vec<Matrix>>> {
    let mut out = BTreeMap::new();
    for (k, gens) in table {
        let b = parse_biarity(k)?;
        bound.check(b)?;
        let c = components.get(&b).cloned().unwrap_or_else(|| Arc::new(ChainComplex::zero()));
        let arity = if right { b.0 } else { b.1 };
        let mut mats: Vec<Matrix> = (1..arity).map(|_| Matrix::identity(c.dim())).collect();
        for (g, m) in gens {
            let idx: usize = g
                .strip_prefix('s')
                .and_then(|x| x.parse().ok())
                .filter(|&x: &usize| x >= 1 && x < arity)
                .ok_or_else(|| Error::UnknownGenerator(format!("{g} in component {k}")))?;
            mats[idx - 1] = labelled_matrix(&c, &c, m)?;
        }
        out.insert(b, mats);
    }
    Ok(out)
}

fn split_pair(s: &str) -> Result<(&str, &str)> {
    s.split_once('|').ok_or_else(|| Error::Parse(format!("expected a pair key, got {s:?}")))
}

impl TruncatedProp {
    pub fn from_json(j: &PropJson) -> Result<TruncatedProp> {
        let bound = BiarityBound(j.bound);
        let mut components = BTreeMap::new();
        for (k, c) in &j.components {
            let b = parse_biarity(k)?;
            bound.check(b)?;
            components.insert(b, Arc::new(c.to_derived_complex()?));
        }
        let right = actions_from_json(bound, &components, &j.right_actions, true)?;
        let left = actions_from_json(bound, &components, &j.left_actions, false)?;
        let biobject = BiObject::new(bound, components, right, left)?;
        let comp = |b: Biarity| biobject.component(b).map(|c| c.as_ref().clone());
        let mut units = BTreeMap::new();
        for (k, e) in &j.units {
            let n: usize = k.parse().map_err(|_| Error::Parse(format!("unit key {k:?}")))?;
            units.insert(n, element_from_json(&comp((n, n))?, e)?);
        }
        let table = |t: &BTreeMap<String, BTreeMap<String, ElementJson>>, vertical: bool| {
            let mut out = HashMap::new();
            for (bk, entries) in t {
                let (x, y) = split_pair(bk)?;
                let (x, y) = (parse_biarity(x)?, parse_biarity(y)?);
                let r = if vertical { super::vertical_biarity(x, y)? } else { super::horizontal_biarity(x, y) };
                let (cx, cy, cr) = (comp(x)?, comp(y)?, comp(r)?);
                for (lk, e) in entries {
                    let (la, lb) = split_pair(lk)?;
                    let i = cx.index_of(la).ok_or_else(|| Error::InvalidLabel(la.into()))?;
                    let jj = cy.index_of(lb).ok_or_else(|| Error::InvalidLabel(lb.into()))?;
                    let v = element_from_json(&cr, e)?;
                    if !v.is_zero() {
                        out.insert((x, i, y, jj), v);
                    }
                }
            }
            Ok::<_, Error>(out)
        };
        let vertical = table(&j.vertical, true)?;
        let horizontal = table(&j.horizontal, false)?;
        Ok(TruncatedProp { biobject, vertical, horizontal, units, presentation: j.presentation.clone() })
    }

    pub fn from_json_str(s: &str) -> Result<TruncatedProp> {
        let j: PropJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        TruncatedProp::from_json(&j)
    }

    pub fn to_json(&self) -> PropJson {
        let bound = self.biobject.bound;
        let comp = |b: Biarity| self.biobject.component(b).expect("within bound").clone();
        let mut components = BTreeMap::new();
        let mut right_actions = BTreeMap::new();
        let mut left_actions = BTreeMap::new();
        for b in bound.biarities() {
            let c = comp(b);
            if c.is_zero() {
                continue;
            }
            components.insert(biarity_key(b), ComplexJson::from_complex(&c));
            for (gens, dst) in [
                (self.biobject.right_generators(b), &mut right_actions),
                (self.biobject.left_generators(b), &mut left_actions),
            ] {
                let mut g = BTreeMap::new();
                for (k, m) in gens.iter().enumerate() {
                    if *m == Matrix::identity(c.dim()) {
                        continue;
                    }
                    let t: BTreeMap<String, ElementJson> =
                        (0..c.dim()).map(|j| (c.label(j).to_string(), element_to_json(&c, m.col(j)))).collect();
                    g.insert(format!("s{}", k + 1), t);
                }
                if !g.is_empty() {
                    dst.insert(biarity_key(b), g);
                }
            }
        }
        let units = self.units.iter().map(|(n, v)| (n.to_string(), element_to_json(&comp((*n, *n)), v))).collect();
        let table = |t: &HashMap<Key, SparseVec>, vertical: bool| {
            let mut out: BTreeMap<String, BTreeMap<String, ElementJson>> = BTreeMap::new();
            for (&(x, i, y, j), v) in t {
                let r = if vertical { (y.0, x.1) } else { (x.0 + y.0, x.1 + y.1) };
                let (cx, cy, cr) = (comp(x), comp(y), comp(r));
                out.entry(format!("{}|{}", biarity_key(x), biarity_key(y)))
                    .or_default()
                    .insert(format!("{}|{}", cx.label(i), cy.label(j)), element_to_json(&cr, v));
            }
            out
        };
        PropJson {
            bound: bound.0,
            components,
            right_actions,
            left_actions,
            units,
            vertical: table(&self.vertical, true),
            horizontal: table(&self.horizontal, false),
            presentation: self.presentation.clone(),
        }
    }

    /// Number of nonzero table entries (vertical, horizontal).
    pub fn table_sizes(&self) -> (usize, usize) {
        (self.vertical.len(), self.horizontal.len())
    }

    /// Overwrites one vertical table entry; used for fault injection.
    pub fn set_vertical(&mut self, outer: Biarity, i: usize, inner: Biarity, j: usize, v: SparseVec) {
        self.vertical.insert((outer, i, inner, j), v);
    }

    pub fn set_horizontal(&mut self, left: Biarity, i: usize, right: Biarity, j: usize, v: SparseVec) {
        self.horizontal.insert((left, i, right, j), v);
    }

    pub fn vertical_entry(&self, outer: Biarity, i: usize, inner: Biarity, j: usize) -> SparseVec {
        self.vertical.get(&(outer, i, inner, j)).cloned().unwrap_or_default()
    }

    pub fn horizontal_entry(&self, left: Biarity, i: usize, right: Biarity, j: usize) -> SparseVec {
        self.horizontal.get(&(left, i, right, j)).cloned().unwrap_or_default()
    }

    /// Assembles a table prop from its parts; the axioms are not checked.
    pub fn from_parts(
        biobject: BiObject,
        units: BTreeMap<usize, SparseVec>,
        vertical: impl IntoIterator<Item = (Key, SparseVec)>,
        horizontal: impl IntoIterator<Item = (Key, SparseVec)>,
    ) -> TruncatedProp {
        let keep = |it: &mut dyn Iterator<Item = (Key, SparseVec)>| -> HashMap<Key, SparseVec> {
            it.filter(|(_, v)| !v.is_zero()).collect()
        };
        TruncatedProp {
            biobject,
            units,
            vertical: keep(&mut vertical.into_iter()),
            horizontal: keep(&mut horizontal.into_iter()),
            presentation: None,
        }
    }
}

impl Prop for TruncatedProp {
    fn bound(&self) -> BiarityBound {
        self.biobject.bound
    }

    fn component(&self, b: Biarity) -> Arc<ChainComplex> {
        self.biobject.component(b).expect("within bound").clone()
    }

    fn vertical_raw(&self, outer: Biarity, a: &SparseVec, inner: Biarity, b: &SparseVec) -> Result<SparseVec> {
        super::bilinear(a, b, |i, j| Ok(self.vertical_entry(outer, i, inner, j)))
    }

    fn horizontal_raw(&self, l: Biarity, a: &SparseVec, r: Biarity, b: &SparseVec) -> Result<SparseVec> {
        super::bilinear(a, b, |i, j| Ok(self.horizontal_entry(l, i, r, j)))
    }

    fn unit_raw(&self, n: usize) -> SparseVec {
        self.units.get(&n).cloned().unwrap_or_default()
    }

    fn right_action_raw(&self, b: Biarity, a: &SparseVec, sigma: &Perm) -> Result<SparseVec> {
        let mut v = a.clone();
        // a·σ = a·s_{k1}·s_{k2}⋯ for σ = s_{k1}∘s_{k2}∘⋯
        for k in sigma.adjacent_word() {
            v = self.biobject.right_generators(b)[k - 1].apply(&v);
        }
        Ok(v)
    }

    fn left_action_raw(&self, b: Biarity, tau: &Perm, a: &SparseVec) -> Result<SparseVec> {
        let mut v = a.clone();
        for k in tau.adjacent_word().into_iter().rev() {
            v = self.biobject.left_generators(b)[k - 1].apply(&v);
        }
        Ok(v)
    }
}

/// Tabulates any prop: structure tables on all basis pairs within the bound.
pub fn tabulate(p: &dyn Prop) -> Result<TruncatedProp> {
    let bound = p.bound();
    let bs = bound.biarities();
    let components: BTreeMap<Biarity, Arc<ChainComplex>> = bs.iter().map(|&b| (b, p.component(b))).collect();
    let mut right = BTreeMap::new();
    let mut left = BTreeMap::new();
    for &b in &bs {
        let dim = components[&b].dim();
        let gen = |k: usize, r: bool| -> Result<Matrix> {
            let cols = (0..dim)
                .map(|i| {
                    let e = SparseVec::unit(i);
                    if r {
                        p.right_action_raw(b, &e, &Perm::adjacent(b.0, k))
                    } else {
                        p.left_action_raw(b, &Perm::adjacent(b.1, k), &e)
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Matrix::from_columns(dim, cols))
        };
        right.insert(b, (1..b.0).map(|k| gen(k, true)).collect::<Result<Vec<_>>>()?);
        left.insert(b, (1..b.1).map(|k| gen(k, false)).collect::<Result<Vec<_>>>()?);
    }
    let biobject = BiObject::new_unchecked(bound, components.clone(), right, left)?;
    let units = (0..=bound.0 / 2).map(|n| (n, p.unit_raw(n))).collect();
    let mut vpairs = Vec::new();
    let mut hpairs = Vec::new();
    for &x in &bs {
        for &y in &bs {
            if x.0 == y.1 && bound.contains((y.0, x.1)) {
                vpairs.push((x, y));
            }
            if bound.contains((x.0 + y.0, x.1 + y.1)) {
                hpairs.push((x, y));
            }
        }
    }
    let run = |pairs: &[(Biarity, Biarity)], vertical: bool| -> Result<Vec<(Key, SparseVec)>> {
        let per: Vec<Vec<(Key, SparseVec)>> = pairs
            .par_iter()
            .map(|&(x, y)| {
                let mut out = Vec::new();
                for i in 0..components[&x].dim() {
                    for j in 0..components[&y].dim() {
                        let (a, b) = (SparseVec::unit(i), SparseVec::unit(j));
                        let v = if vertical { p.vertical_raw(x, &a, y, &b)? } else { p.horizontal_raw(x, &a, y, &b)? };
                        if !v.is_zero() {
                            out.push(((x, i, y, j), v));
                        }
                    }
                }
                Ok(out)
            })
            .collect::<Result<_>>()?;
        Ok(per.into_iter().flatten().collect())
    };
    let vertical = run(&vpairs, true)?;
    let horizontal = run(&hpairs, false)?;
    Ok(TruncatedProp::from_parts(biobject, units, vertical, horizontal))
}

/// The initial prop: `ℚ[Σ_n]` in biarity `(n, n)`, zero elsewhere;
/// compositions are products and block sums of permutations.
pub fn unit_prop(bound: BiarityBound) -> TruncatedProp {
    let mut components = BTreeMap::new();
    let mut right = BTreeMap::new();
    let mut left = BTreeMap::new();
    let perms: BTreeMap<usize, Vec<Perm>> = (0..=bound.0 / 2).map(|n| (n, Perm::all(n))).collect();
    for (&n, ps) in &perms {
        let basis = ps.iter().map(|p| (p.to_string(), 0)).collect();
        let c = ChainComplex::new(basis, Matrix::zeros(ps.len(), ps.len())).expect("discrete");
        let act = |f: &dyn Fn(&Perm) -> Perm| {
            Matrix::from_columns(ps.len(), ps.iter().map(|p| SparseVec::unit(f(p).rank())).collect())
        };
        right.insert((n, n), (1..n).map(|k| act(&|p| p.compose(&Perm::adjacent(n, k)))).collect());
        left.insert((n, n), (1..n).map(|k| act(&|p| Perm::adjacent(n, k).compose(p))).collect());
        components.insert((n, n), Arc::new(c));
    }
    let biobject = BiObject::new_unchecked(bound, components, right, left).expect("unit prop biobject");
    let units = perms.keys().map(|&n| (n, SparseVec::unit(0))).collect();
    let mut vertical = Vec::new();
    let mut horizontal = Vec::new();
    for (&n, ps) in &perms {
        for (i, p) in ps.iter().enumerate() {
            for (j, q) in ps.iter().enumerate() {
                vertical.push((((n, n), i, (n, n), j), SparseVec::unit(p.compose(q).rank())));
            }
        }
        for (&n2, ps2) in &perms {
            if !bound.contains((n + n2, n + n2)) {
                continue;
            }
            for (i, p) in ps.iter().enumerate() {
                for (j, q) in ps2.iter().enumerate() {
                    horizontal.push((((n, n), i, (n2, n2), j), SparseVec::unit(p.block_sum(q).rank())));
                }
            }
        }
    }
    TruncatedProp::from_parts(biobject, units, vertical, horizontal)
}
