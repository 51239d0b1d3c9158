use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;

use super::{EndomorphismProp, ProductProp, PropMorphism, SubProp};
use crate::biobject::{Biarity, BiarityBound};
use crate::error::{Error, Result};
use crate::gradedlinear::{kron_power, ChainComplex, ChainMap, SubComplex};
use crate::linalg::{Matrix, SparseVec};

/// A chain map `u: X_source → X_target` between objects of a diagram.
#[derive(Clone, Debug)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
    pub map: ChainMap,
}

/// A small diagram of complexes: objects and generating arrows. Identity
/// arrows are implicit; composites impose no further constraint.
#[derive(Clone, Debug)]
pub struct DiagramShape {
    pub objects: Vec<(String, Arc<ChainComplex>)>,
    pub arrows: Vec<Arrow>,
}

impl DiagramShape {
    pub fn new(objects: Vec<(String, Arc<ChainComplex>)>) -> DiagramShape {
        DiagramShape { objects, arrows: Vec::new() }
    }

    pub fn arrow(mut self, name: &str, source: usize, target: usize, map: ChainMap) -> Result<DiagramShape> {
        let (s, t) = (&self.objects[source].1, &self.objects[target].1);
        if map.source.as_ref() != s.as_ref() || map.target.as_ref() != t.as_ref() {
            return Err(Error::ShapeMismatch(format!("arrow {name} does not match its endpoints")));
        }
        self.arrows.push(Arrow { name: name.into(), source, target, map });
        Ok(self)
    }

    pub fn object(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|(n, _)| n == name)
    }
}

/// Postcomposition `f ↦ g∘f` on `Hom(A, B)` in the elementary basis.
fn post_matrix(na: usize, g: &Matrix) -> Matrix {
    let (nb, nb2) = (g.ncols(), g.nrows());
    let cols = (0..na * nb).map(|k| g.col(k % nb).reindex(|l| Some((k / nb) * nb2 + l))).collect();
    Matrix::from_columns(na * nb2, cols)
}

/// Precomposition `f ↦ f∘u` on `Hom(A, B)` for `u: A' → A`.
fn pre_matrix(u: &Matrix, nb: usize) -> Matrix {
    let rows = u.rows();
    let na2 = u.ncols();
    let cols = (0..u.nrows() * nb)
        .map(|k| {
            let (j, i) = (k / nb, k % nb);
            rows[j].reindex(|kk| Some(kk * nb + i))
        })
        .collect();
    Matrix::from_columns(na2 * nb, cols)
}

/// Endomorphism prop of a diagram: the equalizer of
/// `∏_i End_{X_i} ⇉ ∏_u Hom(X_s^{⊗m}, X_t^{⊗n})`, as a sub-prop of the product.
pub struct DiagramProp {
    pub shape: DiagramShape,
    pub ends: Vec<Arc<EndomorphismProp>>,
    pub product: Arc<ProductProp>,
    pub prop: Arc<SubProp>,
}

fn dims_pow(x: &ChainComplex, m: usize) -> usize {
    x.dim().pow(m as u32)
}

/// The cosimplicial maps `d⁰ = u_*`, `d¹ = u^*` over all arrows, identities
/// first, and the section `s⁰` projecting onto the identity arrows.
pub fn equalizer_maps(shape: &DiagramShape, (m, n): Biarity) -> (Matrix, Matrix, Matrix) {
    let objs = &shape.objects;
    let obj_dims: Vec<usize> = objs.iter().map(|(_, x)| dims_pow(x, m) * dims_pow(x, n)).collect();
    let src_total: usize = obj_dims.iter().sum();
    let src_off: Vec<usize> = obj_dims
        .iter()
        .scan(0, |s, d| {
            let o = *s;
            *s += d;
            Some(o)
        })
        .collect();
    // arrows: identities, then generators
    let mut blocks: Vec<(usize, usize, Option<&Matrix>)> = (0..objs.len()).map(|i| (i, i, None)).collect();
    blocks.extend(shape.arrows.iter().map(|a| (a.source, a.target, Some(&a.map.matrix))));
    let mut d0_cols = vec![Vec::new(); src_total];
    let mut d1_cols = vec![Vec::new(); src_total];
    let mut row_off = 0;
    let mut s0_cols = Vec::new();
    for &(s, t, u) in &blocks {
        let (xs, xt) = (&objs[s].1, &objs[t].1);
        let (ms, nt) = (dims_pow(xs, m), dims_pow(xt, n));
        let (d0, d1) = match u {
            None => (Matrix::identity(ms * nt), Matrix::identity(ms * nt)),
            Some(u) => (post_matrix(ms, &kron_power(u, n)), pre_matrix(&kron_power(u, m), nt)),
        };
        for (cols, mat, obj) in [(&mut d0_cols, &d0, s), (&mut d1_cols, &d1, t)] {
            for k in 0..mat.ncols() {
                for (r, c) in mat.col(k).iter() {
                    cols[src_off[obj] + k].push((row_off + r, c.clone()));
                }
            }
        }
        if u.is_none() {
            for k in 0..ms * nt {
                s0_cols.push((row_off + k, src_off[s] + k));
            }
        }
        row_off += ms * nt;
    }
    let finish = |cols: Vec<Vec<(usize, crate::Rational)>>| {
        Matrix::from_columns(row_off, cols.into_iter().map(SparseVec::from_entries).collect())
    };
    let mut s0 = vec![SparseVec::new(); row_off];
    for (r, c) in s0_cols {
        s0[r] = SparseVec::unit(c);
    }
    (finish(d0_cols), finish(d1_cols), Matrix::from_columns(src_total, s0))
}

/// `s⁰` in biarity `b`: projection of `∏_u Hom(…)` onto the identity arrows.
pub fn coreflexive_section(shape: &DiagramShape, b: Biarity) -> Matrix {
    equalizer_maps(shape, b).2
}

pub fn diagram_endomorphism_prop(shape: DiagramShape, bound: BiarityBound) -> DiagramProp {
    let ends: Vec<Arc<EndomorphismProp>> =
        shape.objects.par_iter().map(|(_, x)| Arc::new(EndomorphismProp::new(x.clone(), bound))).collect();
    let product = Arc::new(ProductProp::new(ends.iter().map(|e| e.clone() as Arc<dyn super::Prop>).collect()));
    let subs: BTreeMap<Biarity, SubComplex> = bound
        .biarities()
        .into_par_iter()
        .map(|b| {
            use super::Prop;
            let amb = product.component(b);
            if shape.arrows.is_empty() {
                return (b, SubComplex::kernel_of(amb.clone(), &Matrix::zeros(0, amb.dim())));
            }
            // only the generating arrows constrain: identities give d⁰ = d¹
            let (d0, d1, _) = equalizer_maps(&shape, b);
            (b, SubComplex::kernel_of(amb, &d0.sub(&d1)))
        })
        .collect();
    let prop = Arc::new(SubProp::new(product.clone(), subs));
    DiagramProp { shape, ends, product, prop }
}

impl DiagramProp {
    /// `{φ(i)}` of an element, as elements of the `End_{X_i}`.
    pub fn family(&self, b: Biarity, v: &SparseVec) -> Vec<SparseVec> {
        let amb = self.prop.embed(b, v);
        (0..self.ends.len()).map(|k| self.product.part(b, &amb, k)).collect()
    }

    pub fn from_family(&self, b: Biarity, parts: &[SparseVec]) -> Result<SparseVec> {
        self.prop.project(b, &self.product.assemble(b, parts), "family")
    }
}

/// Direct matrix check of `u^{⊗n}∘φ(s) = φ(t)∘u^{⊗m}` for every arrow.
pub fn diagram_family_ok(d: &DiagramProp, b: Biarity, family: &[SparseVec]) -> bool {
    d.shape.arrows.iter().all(|a| {
        let fs = d.ends[a.source].matrix_of(b, &family[a.source]);
        let ft = d.ends[a.target].matrix_of(b, &family[a.target]);
        kron_power(&a.map.matrix, b.1).compose(&fs) == ft.compose(&kron_power(&a.map.matrix, b.0))
    })
}

/// `α*: End_D → End_{D∘α}` for a functor `α` given on objects by
/// `object_map[i] = α(i)`; the target diagram must have `X_i = X_{α(i)}`.
pub fn restriction_morphism(source: &DiagramProp, target: &DiagramProp, object_map: &[usize]) -> Result<PropMorphism> {
    for (i, &j) in object_map.iter().enumerate() {
        if target.shape.objects[i].1.as_ref() != source.shape.objects[j].1.as_ref() {
            return Err(Error::ShapeMismatch(format!("object {i} is not sent to an equal complex")));
        }
    }
    PropMorphism::from_fn(source.prop.clone(), target.prop.clone(), |b, k| {
        let fam = source.family(b, &SparseVec::unit(k));
        let img: Vec<SparseVec> = object_map.iter().map(|&j| fam[j].clone()).collect();
        target.from_family(b, &img)
    })
}

impl super::Prop for DiagramProp {
    fn bound(&self) -> BiarityBound {
        self.prop.bound()
    }
    fn component(&self, b: Biarity) -> Arc<ChainComplex> {
        self.prop.component(b)
    }
    fn vertical_raw(&self, x: Biarity, a: &SparseVec, y: Biarity, b: &SparseVec) -> Result<SparseVec> {
        self.prop.vertical_raw(x, a, y, b)
    }
    fn horizontal_raw(&self, x: Biarity, a: &SparseVec, y: Biarity, b: &SparseVec) -> Result<SparseVec> {
        self.prop.horizontal_raw(x, a, y, b)
    }
    fn unit_raw(&self, n: usize) -> SparseVec {
        self.prop.unit_raw(n)
    }
    fn right_action_raw(&self, b: Biarity, a: &SparseVec, s: &crate::biobject::Perm) -> Result<SparseVec> {
        self.prop.right_action_raw(b, a, s)
    }
    fn left_action_raw(&self, b: Biarity, t: &crate::biobject::Perm, a: &SparseVec) -> Result<SparseVec> {
        self.prop.left_action_raw(b, t, a)
    }
}
