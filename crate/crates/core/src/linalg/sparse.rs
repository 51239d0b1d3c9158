use std::collections::BTreeMap;
use std::fmt;

use super::Rational;

/// Sparse vector: strictly increasing indices, no stored zeros.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct SparseVec {
    entries: Vec<(usize, Rational)>,
}

impl SparseVec {
    pub fn new() -> SparseVec {
        SparseVec { entries: Vec::new() }
    }

    pub fn unit(i: usize) -> SparseVec {
        SparseVec { entries: vec![(i, Rational::one())] }
    }

    pub fn single(i: usize, c: Rational) -> SparseVec {
        if c.is_zero() {
            SparseVec::new()
        } else {
            SparseVec { entries: vec![(i, c)] }
        }
    }

    /// Builds from unordered entries, summing duplicates.
    pub fn from_entries<I: IntoIterator<Item = (usize, Rational)>>(it: I) -> SparseVec {
        let mut acc = Accumulator::new();
        for (i, c) in it {
            acc.add(i, &c);
        }
        acc.finish()
    }

    /// Entries must already be sorted, distinct and nonzero.
    pub(crate) fn from_sorted(entries: Vec<(usize, Rational)>) -> SparseVec {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(entries.iter().all(|(_, c)| !c.is_zero()));
        SparseVec { entries }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Rational)> + '_ {
        self.entries.iter().map(|(i, c)| (*i, c))
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries.iter().map(|(i, _)| *i)
    }

    pub fn get(&self, i: usize) -> Rational {
        match self.entries.binary_search_by_key(&i, |(j, _)| *j) {
            Ok(pos) => self.entries[pos].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    pub fn leading(&self) -> Option<(usize, &Rational)> {
        self.entries.first().map(|(i, c)| (*i, c))
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|(i, _)| *i)
    }

    pub fn scale(&self, c: &Rational) -> SparseVec {
        if c.is_zero() {
            return SparseVec::new();
        }
        SparseVec { entries: self.entries.iter().map(|(i, x)| (*i, x * c)).collect() }
    }

    pub fn neg(&self) -> SparseVec {
        SparseVec { entries: self.entries.iter().map(|(i, x)| (*i, -x)).collect() }
    }

    /// `self + c * other`, by merging.
    pub fn add_scaled(&self, other: &SparseVec, c: &Rational) -> SparseVec {
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, x)), Some((j, y))) => {
                    if i < j {
                        out.push((*i, x.clone()));
                        a.next();
                    } else if j < i {
                        out.push((*j, y * c));
                        b.next();
                    } else {
                        let v = x + &(y * c);
                        if !v.is_zero() {
                            out.push((*i, v));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some((i, x)), None) => {
                    out.push((*i, x.clone()));
                    a.next();
                }
                (None, Some((j, y))) => {
                    out.push((*j, y * c));
                    b.next();
                }
                (None, None) => break,
            }
        }
        SparseVec { entries: out }
    }

    pub fn add(&self, other: &SparseVec) -> SparseVec {
        self.add_scaled(other, &Rational::one())
    }

    pub fn sub(&self, other: &SparseVec) -> SparseVec {
        self.add_scaled(other, &Rational::minus_one())
    }

    pub fn dot(&self, other: &SparseVec) -> Rational {
        let mut acc = Rational::zero();
        let (mut a, mut b) = (0, 0);
        while a < self.entries.len() && b < other.entries.len() {
            let (i, x) = &self.entries[a];
            let (j, y) = &other.entries[b];
            if i < j {
                a += 1;
            } else if j < i {
                b += 1;
            } else {
                acc += &(x * y);
                a += 1;
                b += 1;
            }
        }
        acc
    }

    /// Re-index through `f`; entries mapped to `None` are dropped.
    pub fn reindex(&self, f: impl Fn(usize) -> Option<usize>) -> SparseVec {
        SparseVec::from_entries(self.entries.iter().filter_map(|(i, c)| f(*i).map(|j| (j, c.clone()))))
    }

    /// Shift every index by `offset`.
    pub fn shifted(&self, offset: usize) -> SparseVec {
        SparseVec { entries: self.entries.iter().map(|(i, c)| (i + offset, c.clone())).collect() }
    }

    /// Entries with index in `[lo, hi)`, shifted down by `lo`.
    pub fn window(&self, lo: usize, hi: usize) -> SparseVec {
        SparseVec {
            entries: self
                .entries
                .iter()
                .filter(|(i, _)| *i >= lo && *i < hi)
                .map(|(i, c)| (i - lo, c.clone()))
                .collect(),
        }
    }
}

impl fmt::Debug for SparseVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.entries.iter().map(|(i, c)| (i, c))).finish()
    }
}

/// Collects scattered contributions into a `SparseVec`.
#[derive(Clone, Default)]
pub struct Accumulator {
    map: BTreeMap<usize, Rational>,
}

impl Accumulator {
    pub fn new() -> Accumulator {
        Accumulator::default()
    }

    pub fn add(&mut self, i: usize, c: &Rational) {
        if c.is_zero() {
            return;
        }
        match self.map.get_mut(&i) {
            Some(x) => {
                *x += c;
                if x.is_zero() {
                    self.map.remove(&i);
                }
            }
            None => {
                self.map.insert(i, c.clone());
            }
        }
    }

    pub fn add_vec(&mut self, v: &SparseVec, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (i, x) in v.iter() {
            self.add(i, &(x * c));
        }
    }

    pub fn finish(self) -> SparseVec {
        SparseVec { entries: self.map.into_iter().collect() }
    }
}

/// Column-major sparse matrix; column `j` is the image of the `j`-th source basis vector.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: Vec<SparseVec>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix { rows, cols: vec![SparseVec::new(); cols] }
    }

    pub fn identity(n: usize) -> Matrix {
        Matrix { rows: n, cols: (0..n).map(SparseVec::unit).collect() }
    }

    pub fn from_columns(rows: usize, cols: Vec<SparseVec>) -> Matrix {
        debug_assert!(cols.iter().all(|c| c.max_index().map_or(true, |m| m < rows)));
        Matrix { rows, cols }
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Matrix {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let cols = (0..ncols)
            .map(|j| SparseVec::from_entries((0..nrows).map(|i| (i, Rational::from_int(rows[i][j])))))
            .collect();
        Matrix { rows: nrows, cols }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn col(&self, j: usize) -> &SparseVec {
        &self.cols[j]
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.cols
    }

    pub fn set_col(&mut self, j: usize, v: SparseVec) {
        debug_assert!(v.max_index().map_or(true, |m| m < self.rows));
        self.cols[j] = v;
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        self.cols[j].get(i)
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_zero())
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(|c| c.nnz()).sum()
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut acc = Accumulator::new();
        for (j, c) in v.iter() {
            acc.add_vec(&self.cols[j], c);
        }
        acc.finish()
    }

    /// `self ∘ rhs`.
    pub fn compose(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.ncols(), rhs.nrows(), "compose: inner dimensions differ");
        Matrix { rows: self.rows, cols: rhs.cols.iter().map(|c| self.apply(c)).collect() }
    }

    pub fn transpose(&self) -> Matrix {
        let mut rows: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); self.rows];
        for (j, col) in self.cols.iter().enumerate() {
            for (i, c) in col.iter() {
                rows[i].push((j, c.clone()));
            }
        }
        Matrix { rows: self.cols.len(), cols: rows.into_iter().map(SparseVec::from_sorted).collect() }
    }

    /// Rows of the matrix as sparse vectors over column indices.
    pub fn rows(&self) -> Vec<SparseVec> {
        self.transpose().cols
    }

    pub fn scale(&self, c: &Rational) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols.iter().map(|v| v.scale(c)).collect() }
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.nrows(), self.ncols()), (other.nrows(), other.ncols()));
        Matrix { rows: self.rows, cols: self.cols.iter().zip(&other.cols).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.nrows(), self.ncols()), (other.nrows(), other.ncols()));
        Matrix { rows: self.rows, cols: self.cols.iter().zip(&other.cols).map(|(a, b)| a.sub(b)).collect() }
    }

    /// `[self; other]`: same source, targets stacked.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.ncols(), other.ncols());
        Matrix {
            rows: self.rows + other.rows,
            cols: self
                .cols
                .iter()
                .zip(&other.cols)
                .map(|(a, b)| {
                    let mut e: Vec<_> = a.iter().map(|(i, c)| (i, c.clone())).collect();
                    e.extend(b.iter().map(|(i, c)| (i + self.rows, c.clone())));
                    SparseVec::from_sorted(e)
                })
                .collect(),
        }
    }

    /// `[self | other]`: sources concatenated, same target.
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.nrows(), other.nrows());
        let mut cols = self.cols.clone();
        cols.extend(other.cols.iter().cloned());
        Matrix { rows: self.rows, cols }
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &Matrix) -> Matrix {
        let mut cols = self.cols.clone();
        cols.extend(other.cols.iter().map(|c| c.shifted(self.rows)));
        Matrix { rows: self.rows + other.rows, cols }
    }

    /// Submatrix on the given rows and columns, in the given orders.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        let mut pos = vec![usize::MAX; self.rows];
        for (k, &r) in rows.iter().enumerate() {
            pos[r] = k;
        }
        Matrix {
            rows: rows.len(),
            cols: cols
                .iter()
                .map(|&j| self.cols[j].reindex(|i| if pos[i] == usize::MAX { None } else { Some(pos[i]) }))
                .collect(),
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        let mut out = vec![vec![Rational::zero(); self.ncols()]; self.rows];
        for (j, col) in self.cols.iter().enumerate() {
            for (i, c) in col.iter() {
                out[i][j] = c.clone();
            }
        }
        out
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.ncols())?;
        for row in self.to_dense() {
            let cells: Vec<String> = row.iter().map(|c| c.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        Ok(())
    }
}
