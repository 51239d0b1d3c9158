use std::collections::BTreeMap;
use std::sync::Arc;

use super::word::{evaluate_word, Presentation};
use super::{check_prop_morphism, EndomorphismProp, MorphismReport, Prop, PropMorphism};
use crate::biobject::tuple_index;
use crate::biobject::{Biarity, BiarityBound};
use crate::error::{Error, Result};
use crate::gradedlinear::{ChainComplex, ComplexJson};
use crate::linalg::{Matrix, Rational, SparseVec};
use serde::{Deserialize, Serialize};

/// A `P`-algebra structure on `X`: a prop morphism `P → End_X`.
#[derive(Clone)]
pub struct PAlgebra {
    pub prop: Arc<dyn Prop>,
    pub end: Arc<EndomorphismProp>,
    pub action: PropMorphism,
}

impl PAlgebra {
    pub fn new(prop: Arc<dyn Prop>, end: Arc<EndomorphismProp>, maps: BTreeMap<Biarity, Matrix>) -> Result<PAlgebra> {
        let action = PropMorphism::new(prop.clone(), end.clone(), maps)?;
        Ok(PAlgebra { prop, end, action })
    }

    pub fn x(&self) -> &Arc<ChainComplex> {
        self.end.base()
    }

    /// Extends generator images `g ↦ φ(g) ∈ End_X` along the words of a
    /// presentation. Nothing is checked here; see [`check_algebra`].
    ///
    /// Words may pass through biarities beyond the bound (`g∘(g⊗1)` goes
    /// through (3,2)); those are evaluated in a larger `End_X`, which has
    /// the same elementary basis in every shared biarity.
    pub fn from_generators(
        prop: Arc<dyn Prop>,
        end: Arc<EndomorphismProp>,
        pres: &Presentation,
        images: &BTreeMap<String, SparseVec>,
    ) -> Result<PAlgebra> {
        let gb = pres.generator_biarities()?;
        let mut assignment = BTreeMap::new();
        for (g, b) in &gb {
            let v = images.get(g).ok_or_else(|| Error::UnknownGenerator(format!("no image for {g}")))?;
            assignment.insert(g.clone(), (*b, v.clone()));
        }
        let mut reach = end.bound().0;
        for b in prop.bound().biarities() {
            for i in 0..prop.dim(b) {
                reach = reach.max(pres.word(prop.as_ref(), b, i)?.reach(&gb)?);
            }
        }
        let work = if reach > end.bound().0 {
            Arc::new(EndomorphismProp::new(end.base().clone(), BiarityBound(reach)))
        } else {
            end.clone()
        };
        let action = PropMorphism::from_fn(prop.clone(), end.clone(), |b, i| {
            let (wb, v) = evaluate_word(pres.word(prop.as_ref(), b, i)?, work.as_ref(), &assignment)?;
            if wb != b {
                return Err(Error::ArityMismatch(format!("word for basis {i} of {b:?} has biarity {wb:?}")));
            }
            Ok(v)
        })?;
        Ok(PAlgebra { prop, end, action })
    }

    /// The action of an element as a matrix `X^{⊗m} → X^{⊗n}`.
    pub fn operation(&self, b: Biarity, v: &SparseVec) -> Matrix {
        self.end.matrix_of(b, &self.action.apply(b, v))
    }
}

pub fn check_algebra(a: &PAlgebra) -> MorphismReport {
    check_prop_morphism(&a.action)
}

/// On-disk algebra over a presented prop. Each generator's operation is a
/// table from input tuples to output tuples, a tuple being basis labels of
/// the complex joined by `|` (the empty tuple is `""`).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub complex: ComplexJson,
    #[serde(default)]
    pub operations: BTreeMap<String, BTreeMap<String, BTreeMap<String, Rational>>>,
}

fn tuple_of(x: &ChainComplex, key: &str, len: usize) -> Result<usize> {
    let labels: Vec<&str> = if key.is_empty() { Vec::new() } else { key.split('|').collect() };
    if labels.len() != len {
        return Err(Error::ArityMismatch(format!("tuple {key:?} should have {len} factors")));
    }
    let digits = labels
        .iter()
        .map(|l| x.index_of(l.trim()).ok_or_else(|| Error::InvalidLabel(l.to_string())))
        .collect::<Result<Vec<_>>>()?;
    Ok(tuple_index(&digits, x.dim()))
}

fn tuple_key(x: &ChainComplex, index: usize, len: usize) -> String {
    crate::biobject::tuple_digits(index, x.dim(), len)
        .into_iter()
        .map(|d| x.label(d).to_string())
        .collect::<Vec<_>>()
        .join("|")
}

impl AlgebraJson {
    pub fn to_algebra(&self, prop: Arc<dyn Prop>, pres: &Presentation) -> Result<PAlgebra> {
        let x = Arc::new(self.complex.to_complex()?);
        let end = Arc::new(EndomorphismProp::new(x.clone(), prop.bound()));
        let gb = pres.generator_biarities()?;
        if let Some(g) = self.operations.keys().find(|g| !gb.contains_key(*g)) {
            return Err(Error::UnknownGenerator(g.clone()));
        }
        let mut images = BTreeMap::new();
        for (g, &(m, n)) in &gb {
            let rows = x.dim().pow(n as u32);
            let mut cols = vec![Vec::new(); x.dim().pow(m as u32)];
            for (src, row) in self.operations.get(g).into_iter().flatten() {
                let j = tuple_of(&x, src, m)?;
                for (tgt, c) in row {
                    cols[j].push((tuple_of(&x, tgt, n)?, c.clone()));
                }
            }
            let f = Matrix::from_columns(rows, cols.into_iter().map(SparseVec::from_entries).collect());
            images.insert(g.clone(), end.element_from_matrix((m, n), &f));
        }
        PAlgebra::from_generators(prop, end, pres, &images)
    }

    /// Writes the generator operations of `a`.
    pub fn from_algebra(a: &PAlgebra, pres: &Presentation) -> Result<AlgebraJson> {
        let x = a.x();
        let mut operations = BTreeMap::new();
        for (g, (b, v)) in pres.generator_elements(a.prop.as_ref())? {
            let f = a.operation(b, &v);
            let mut table: BTreeMap<String, BTreeMap<String, Rational>> = BTreeMap::new();
            for j in 0..f.ncols() {
                for (i, c) in f.col(j).iter() {
                    table.entry(tuple_key(x, j, b.0)).or_default().insert(tuple_key(x, i, b.1), c.clone());
                }
            }
            operations.insert(g, table);
        }
        Ok(AlgebraJson { complex: ComplexJson::from_complex(x), operations })
    }
}
