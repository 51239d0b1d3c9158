use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Rational, SparseVec};

/// Separator for composite labels (tensor words, hom pairs).
pub const SEP: &str = "⋆";
/// Suffix marking dual basis vectors.
pub const DUAL: &str = "*";

/// Dimension per degree, zero entries omitted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GradedDims(pub BTreeMap<i32, usize>);

impl GradedDims {
    pub fn get(&self, degree: i32) -> usize {
        self.0.get(&degree).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.0.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn from_pairs(pairs: &[(i32, usize)]) -> GradedDims {
        GradedDims(pairs.iter().copied().filter(|(_, d)| *d > 0).collect())
    }
}

impl fmt::Display for GradedDims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(k, v)| format!("{k}:{v}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Bounded chain complex over ℚ with a labelled basis. The differential has
/// degree −1 and is stored as one square matrix over the whole basis.
#[derive(Clone)]
pub struct ChainComplex {
    labels: Vec<String>,
    degrees: Vec<i32>,
    d: Matrix,
    index: HashMap<String, usize>,
    by_degree: BTreeMap<i32, Vec<usize>>,
    local: Vec<usize>,
}

impl PartialEq for ChainComplex {
    fn eq(&self, other: &ChainComplex) -> bool {
        self.labels == other.labels && self.degrees == other.degrees && self.d == other.d
    }
}

impl fmt::Debug for ChainComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ChainComplex(dims {})", self.dims())
    }
}

impl ChainComplex {
    /// Builds a complex from `(label, degree)` pairs and the differential,
    /// checking shape, homogeneity, label uniqueness and `d∘d = 0`.
    pub fn new(basis: Vec<(String, i32)>, d: Matrix) -> Result<ChainComplex> {
        let n = basis.len();
        if d.nrows() != n || d.ncols() != n {
            return Err(Error::ShapeMismatch(format!(
                "differential is {}x{}, basis has {n} elements",
                d.nrows(),
                d.ncols()
            )));
        }
        let (labels, degrees): (Vec<String>, Vec<i32>) = basis.into_iter().unzip();
        let mut index = HashMap::with_capacity(n);
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::InvalidLabel(format!("duplicate label {l}")));
            }
        }
        for (j, col) in d.columns().iter().enumerate() {
            for (i, _) in col.iter() {
                if degrees[i] != degrees[j] - 1 {
                    return Err(Error::ShapeMismatch(format!(
                        "differential sends {} (degree {}) to {} (degree {})",
                        labels[j], degrees[j], labels[i], degrees[i]
                    )));
                }
            }
        }
        let dd = d.compose(&d);
        if let Some(j) = (0..n).find(|&j| !dd.col(j).is_zero()) {
            return Err(Error::SquareZeroViolation { degree: degrees[j], label: labels[j].clone() });
        }
        let mut by_degree: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
        let mut local = vec![0; n];
        for (i, &deg) in degrees.iter().enumerate() {
            let v = by_degree.entry(deg).or_default();
            local[i] = v.len();
            v.push(i);
        }
        Ok(ChainComplex { labels, degrees, d, index, by_degree, local })
    }

    /// User-facing constructor: per-degree label lists (ordered by descending
    /// degree) and a differential given as `(source, target, coefficient)`.
    pub fn from_degrees(
        basis: &BTreeMap<i32, Vec<String>>,
        differential: &[(String, String, Rational)],
    ) -> Result<ChainComplex> {
        Self::from_degrees_checked(basis, differential, validate_input_label)
    }

    /// As [`from_degrees`](Self::from_degrees) but accepting derived labels
    /// such as `a*⋆b`; only `|` and the empty label are refused.
    pub fn from_degrees_derived(
        basis: &BTreeMap<i32, Vec<String>>,
        differential: &[(String, String, Rational)],
    ) -> Result<ChainComplex> {
        Self::from_degrees_checked(basis, differential, |l| {
            if l.is_empty() || l.contains('|') {
                return Err(Error::InvalidLabel(l.to_string()));
            }
            Ok(())
        })
    }

    fn from_degrees_checked(
        basis: &BTreeMap<i32, Vec<String>>,
        differential: &[(String, String, Rational)],
        validate: impl Fn(&str) -> Result<()>,
    ) -> Result<ChainComplex> {
        let mut flat = Vec::new();
        for (deg, labels) in basis.iter().rev() {
            for l in labels {
                validate(l)?;
                flat.push((l.clone(), *deg));
            }
        }
        let index: HashMap<&str, usize> = flat.iter().enumerate().map(|(i, (l, _))| (l.as_str(), i)).collect();
        let mut cols: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); flat.len()];
        for (src, tgt, c) in differential {
            let s = *index
                .get(src.as_str())
                .ok_or_else(|| Error::ShapeMismatch(format!("differential mentions unknown label {src}")))?;
            let t = *index
                .get(tgt.as_str())
                .ok_or_else(|| Error::ShapeMismatch(format!("differential mentions unknown label {tgt}")))?;
            cols[s].push((t, c.clone()));
        }
        let n = flat.len();
        let d = Matrix::from_columns(n, cols.into_iter().map(SparseVec::from_entries).collect());
        ChainComplex::new(flat, d)
    }

    pub fn zero() -> ChainComplex {
        ChainComplex::new(Vec::new(), Matrix::zeros(0, 0)).expect("zero complex")
    }

    /// ℚ concentrated in degree 0, basis label `1`.
    pub fn unit() -> ChainComplex {
        ChainComplex::concentrated("1", 0)
    }

    pub fn concentrated(label: &str, degree: i32) -> ChainComplex {
        ChainComplex::new(vec![(label.to_string(), degree)], Matrix::zeros(1, 1)).expect("1-dim")
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn is_zero(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn degree(&self, i: usize) -> i32 {
        self.degrees[i]
    }

    pub fn degrees(&self) -> &[i32] {
        &self.degrees
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn d(&self) -> &Matrix {
        &self.d
    }

    /// Degrees with a nonzero component, ascending.
    pub fn support(&self) -> Vec<i32> {
        self.by_degree.keys().copied().collect()
    }

    /// Global indices of the basis vectors in `degree`.
    pub fn in_degree(&self, degree: i32) -> &[usize] {
        self.by_degree.get(&degree).map(|v| v.as_slice()).unwrap_or(&[])
    }

    /// Position of basis vector `i` within its degree.
    pub fn local_index(&self, i: usize) -> usize {
        self.local[i]
    }

    pub fn dims(&self) -> GradedDims {
        GradedDims(self.by_degree.iter().map(|(k, v)| (*k, v.len())).collect())
    }

    /// `d_n : C_n → C_{n−1}` as a matrix in local coordinates.
    pub fn d_block(&self, degree: i32) -> Matrix {
        self.d.submatrix(self.in_degree(degree - 1), self.in_degree(degree))
    }

    pub fn apply_d(&self, v: &SparseVec) -> SparseVec {
        self.d.apply(v)
    }

    /// Degree of a homogeneous vector; `None` for zero or mixed vectors.
    pub fn degree_of(&self, v: &SparseVec) -> Option<i32> {
        let mut it = v.indices().map(|i| self.degrees[i]);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// Pretty-prints a vector with basis labels.
    pub fn show(&self, v: &SparseVec) -> String {
        if v.is_zero() {
            return "0".to_string();
        }
        v.iter()
            .map(|(i, c)| if c.is_one() { self.labels[i].clone() } else { format!("{c}·{}", self.labels[i]) })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Per-degree basis lists, the shape of the JSON format.
    pub fn basis_by_degree(&self) -> BTreeMap<i32, Vec<String>> {
        self.by_degree.iter().map(|(k, v)| (*k, v.iter().map(|&i| self.labels[i].clone()).collect())).collect()
    }
}

/// Rejects labels that contain reserved separators.
pub fn validate_input_label(l: &str) -> Result<()> {
    if l.is_empty() || l.contains(SEP) || l.contains(DUAL) || l.contains('|') {
        return Err(Error::InvalidLabel(l.to_string()));
    }
    Ok(())
}

/// Degree-0 linear map commuting with the differentials.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainMap {
    pub source: Arc<ChainComplex>,
    pub target: Arc<ChainComplex>,
    pub matrix: Matrix,
}

impl ChainMap {
    pub fn new(source: Arc<ChainComplex>, target: Arc<ChainComplex>, matrix: Matrix) -> Result<ChainMap> {
        if matrix.nrows() != target.dim() || matrix.ncols() != source.dim() {
            return Err(Error::ShapeMismatch(format!(
                "map matrix is {}x{}, expected {}x{}",
                matrix.nrows(),
                matrix.ncols(),
                target.dim(),
                source.dim()
            )));
        }
        for (j, col) in matrix.columns().iter().enumerate() {
            for (i, _) in col.iter() {
                if target.degree(i) != source.degree(j) {
                    return Err(Error::NotChainMap(format!(
                        "{} ↦ {} changes degree",
                        source.label(j),
                        target.label(i)
                    )));
                }
            }
        }
        let lhs = target.d().compose(&matrix);
        let rhs = matrix.compose(source.d());
        if let Some(j) = (0..source.dim()).find(|&j| lhs.col(j) != rhs.col(j)) {
            return Err(Error::NotChainMap(format!(
                "d∘f ≠ f∘d on {}: {} vs {}",
                source.label(j),
                target.show(lhs.col(j)),
                target.show(rhs.col(j))
            )));
        }
        Ok(ChainMap { source, target, matrix })
    }

    pub fn identity(c: Arc<ChainComplex>) -> ChainMap {
        let n = c.dim();
        ChainMap { source: c.clone(), target: c, matrix: Matrix::identity(n) }
    }

    pub fn zero(source: Arc<ChainComplex>, target: Arc<ChainComplex>) -> ChainMap {
        let matrix = Matrix::zeros(target.dim(), source.dim());
        ChainMap { source, target, matrix }
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &ChainMap) -> Result<ChainMap> {
        if *first.target != *self.source {
            return Err(Error::ShapeMismatch("composing maps with mismatched ends".into()));
        }
        Ok(ChainMap {
            source: first.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.compose(&first.matrix),
        })
    }

    /// The block `A_n → B_n` in local coordinates.
    pub fn block(&self, degree: i32) -> Matrix {
        self.matrix.submatrix(self.target.in_degree(degree), self.source.in_degree(degree))
    }

    /// Degrees where either end is nonzero.
    pub fn degrees(&self) -> Vec<i32> {
        let mut v = self.source.support();
        v.extend(self.target.support());
        v.sort_unstable();
        v.dedup();
        v
    }
}
