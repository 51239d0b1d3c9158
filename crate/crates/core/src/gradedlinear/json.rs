use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::complex::{ChainComplex, ChainMap};
use crate::error::{Error, Result};
use crate::linalg::Rational;

/// On-disk complex: degree → labels, and source → target → coefficient.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub degrees: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub differential: BTreeMap<String, BTreeMap<String, Rational>>,
}

impl ComplexJson {
    pub fn to_complex(&self) -> Result<ChainComplex> {
        let (basis, diff) = self.parts()?;
        ChainComplex::from_degrees(&basis, &diff)
    }

    /// For components of props, whose labels are built from tensor and dual labels.
    pub fn to_derived_complex(&self) -> Result<ChainComplex> {
        let (basis, diff) = self.parts()?;
        ChainComplex::from_degrees_derived(&basis, &diff)
    }

    #[allow(clippy::type_complexity)]
    fn parts(&self) -> Result<(BTreeMap<i32, Vec<String>>, Vec<(String, String, Rational)>)> {
        let mut basis = BTreeMap::new();
        for (k, v) in &self.degrees {
            let deg: i32 = k.trim().parse().map_err(|_| Error::Parse(format!("degree key {k:?}")))?;
            basis.insert(deg, v.clone());
        }
        let mut diff = Vec::new();
        for (src, row) in &self.differential {
            for (tgt, c) in row {
                diff.push((src.clone(), tgt.clone(), c.clone()));
            }
        }
        Ok((basis, diff))
    }

    pub fn from_complex(c: &ChainComplex) -> ComplexJson {
        let degrees = c.basis_by_degree().into_iter().map(|(k, v)| (k.to_string(), v)).collect();
        let mut differential: BTreeMap<String, BTreeMap<String, Rational>> = BTreeMap::new();
        for j in 0..c.dim() {
            let col = c.d().col(j);
            if col.is_zero() {
                continue;
            }
            let row = differential.entry(c.label(j).to_string()).or_default();
            for (i, v) in col.iter() {
                row.insert(c.label(i).to_string(), v.clone());
            }
        }
        ComplexJson { degrees, differential }
    }
}

/// On-disk chain map between two labelled complexes: source label → target label → coefficient.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MapJson {
    pub source: ComplexJson,
    pub target: ComplexJson,
    #[serde(default)]
    pub matrix: BTreeMap<String, BTreeMap<String, Rational>>,
}

impl MapJson {
    pub fn to_map(&self) -> Result<ChainMap> {
        let s = std::sync::Arc::new(self.source.to_complex()?);
        let t = std::sync::Arc::new(self.target.to_complex()?);
        let m = labelled_matrix(&s, &t, &self.matrix)?;
        ChainMap::new(s, t, m)
    }
}

/// Builds a matrix from a label-keyed table.
pub fn labelled_matrix(
    source: &ChainComplex,
    target: &ChainComplex,
    table: &BTreeMap<String, BTreeMap<String, Rational>>,
) -> Result<crate::linalg::Matrix> {
    let mut cols = vec![Vec::new(); source.dim()];
    for (src, row) in table {
        let j = source.index_of(src).ok_or_else(|| Error::ShapeMismatch(format!("unknown source label {src}")))?;
        for (tgt, c) in row {
            let i = target.index_of(tgt).ok_or_else(|| Error::ShapeMismatch(format!("unknown target label {tgt}")))?;
            cols[j].push((i, c.clone()));
        }
    }
    Ok(crate::linalg::Matrix::from_columns(
        target.dim(),
        cols.into_iter().map(crate::linalg::SparseVec::from_entries).collect(),
    ))
}
