//! Exact Gaussian elimination on sparse rows.

use std::collections::BTreeMap;

use super::{Matrix, Rational, SparseVec};

/// Row-echelon basis keyed by leading index. Every stored vector has leading
/// coefficient 1.
#[derive(Clone, Default, Debug)]
pub struct Echelon {
    pivots: BTreeMap<usize, SparseVec>,
}

impl Echelon {
    pub fn new() -> Echelon {
        Echelon::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    /// Eliminates every entry of `v` sitting on a pivot, scanning left to right.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        self.reduce_tracking(v, |_, _| {})
    }

    /// Like [`Echelon::reduce`], reporting each `(pivot, coefficient)` that was subtracted.
    pub fn reduce_tracking(&self, v: &SparseVec, mut on_step: impl FnMut(usize, &Rational)) -> SparseVec {
        if self.pivots.is_empty() || v.is_zero() {
            return v.clone();
        }
        let mut work: BTreeMap<usize, Rational> = v.iter().map(|(i, c)| (i, c.clone())).collect();
        let mut cursor = 0usize;
        loop {
            let next = work.range(cursor..).map(|(i, _)| *i).find(|i| self.pivots.contains_key(i));
            let Some(p) = next else { break };
            let coef = work.remove(&p).expect("present");
            on_step(p, &coef);
            let row = &self.pivots[&p];
            for (i, c) in row.iter().skip(1) {
                let delta = c * &coef;
                match work.get_mut(&i) {
                    Some(x) => {
                        *x -= &delta;
                        if x.is_zero() {
                            work.remove(&i);
                        }
                    }
                    None => {
                        work.insert(i, -delta);
                    }
                }
            }
            cursor = p + 1;
        }
        SparseVec::from_sorted(work.into_iter().collect())
    }

    /// Reduces and stores `v`; returns the pivot it created, if any.
    pub fn insert(&mut self, v: &SparseVec) -> Option<usize> {
        let r = self.reduce(v);
        let (lead, c) = r.leading()?;
        let normalized = r.scale(&c.recip());
        self.pivots.insert(lead, normalized);
        Some(lead)
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    pub fn row(&self, pivot: usize) -> Option<&SparseVec> {
        self.pivots.get(&pivot)
    }

    /// Back-substitutes so every stored row vanishes on all other pivots.
    pub fn into_reduced(self) -> Rref {
        let mut done: BTreeMap<usize, SparseVec> = BTreeMap::new();
        for (p, row) in self.pivots.into_iter().rev() {
            let mut acc = row.clone();
            for (i, c) in row.iter().skip(1) {
                if let Some(other) = done.get(&i) {
                    acc = acc.add_scaled(other, &(-c));
                }
            }
            done.insert(p, acc);
        }
        Rref { pivots: done }
    }
}

/// Fully reduced row-echelon form.
#[derive(Clone, Debug)]
pub struct Rref {
    pivots: BTreeMap<usize, SparseVec>,
}

impl Rref {
    pub fn from_rows<'a>(rows: impl IntoIterator<Item = &'a SparseVec>) -> Rref {
        let mut e = Echelon::new();
        for r in rows {
            e.insert(r);
        }
        e.into_reduced()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_cols(&self) -> Vec<usize> {
        self.pivots.keys().copied().collect()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivots.contains_key(&col)
    }

    pub fn rows(&self) -> impl Iterator<Item = (usize, &SparseVec)> + '_ {
        self.pivots.iter().map(|(p, r)| (*p, r))
    }

    pub fn free_cols(&self, ncols: usize) -> Vec<usize> {
        (0..ncols).filter(|c| !self.pivots.contains_key(c)).collect()
    }

    /// Null-space basis in free-column form: the vector for free column `f`
    /// has a 1 at `f` and 0 at every other free column.
    pub fn null_space(&self, ncols: usize) -> Kernel {
        let free = self.free_cols(ncols);
        let mut slot = vec![usize::MAX; ncols];
        for (k, &f) in free.iter().enumerate() {
            slot[f] = k;
        }
        let mut entries: Vec<Vec<(usize, Rational)>> = free.iter().map(|&f| vec![(f, Rational::one())]).collect();
        for (p, row) in &self.pivots {
            for (j, c) in row.iter().skip(1) {
                let k = slot[j];
                debug_assert!(k != usize::MAX, "reduced row touches another pivot");
                entries[k].push((*p, -c));
            }
        }
        let basis = entries.into_iter().map(SparseVec::from_entries).collect();
        Kernel { free_cols: free, basis }
    }
}

/// A null space together with the free columns that index it.
#[derive(Clone, Debug)]
pub struct Kernel {
    pub free_cols: Vec<usize>,
    pub basis: Vec<SparseVec>,
}

impl Kernel {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of `v` in this basis, assuming `v` lies in the span.
    pub fn coords_unchecked(&self, v: &SparseVec) -> SparseVec {
        SparseVec::from_entries(self.free_cols.iter().enumerate().map(|(k, &f)| (k, v.get(f))))
    }

    /// Coordinates of `v`, or `None` when `v` is not in the span.
    pub fn coords(&self, v: &SparseVec) -> Option<SparseVec> {
        let coords = self.coords_unchecked(v);
        let mut back = v.clone();
        for (k, c) in coords.iter() {
            back = back.add_scaled(&self.basis[k], &(-c));
        }
        back.is_zero().then_some(coords)
    }

    /// Embedding matrix from kernel coordinates into the ambient space.
    pub fn embedding(&self, ambient_dim: usize) -> Matrix {
        Matrix::from_columns(ambient_dim, self.basis.clone())
    }
}

pub fn rank(m: &Matrix) -> usize {
    // Fewer, longer vectors is usually cheaper; either side gives the rank.
    let mut e = Echelon::new();
    if m.ncols() <= m.nrows() {
        for c in m.columns() {
            e.insert(c);
        }
    } else {
        for r in m.rows() {
            e.insert(&r);
        }
    }
    e.rank()
}

pub fn kernel(m: &Matrix) -> Kernel {
    let rows = m.rows();
    Rref::from_rows(rows.iter()).null_space(m.ncols())
}

/// Vectors `y` with `yᵀ m = 0`.
pub fn left_kernel(m: &Matrix) -> Kernel {
    kernel(&m.transpose())
}

/// Basic solution of `m x = b` (free variables zero), if one exists.
pub fn solve(m: &Matrix, b: &SparseVec) -> Option<SparseVec> {
    let n = m.ncols();
    let mut rows = m.rows();
    for (i, c) in b.iter() {
        rows[i] = rows[i].add(&SparseVec::single(n, c.clone()));
    }
    let rref = Rref::from_rows(rows.iter());
    if rref.is_pivot(n) {
        return None;
    }
    Some(SparseVec::from_entries(rref.rows().map(|(p, row)| (p, row.get(n)))))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_free_column_form() {
        // x + y + z = 0, y - z = 0
        let m = Matrix::from_dense(&[vec![1, 1, 1], vec![0, 1, -1]]);
        let k = kernel(&m);
        assert_eq!(k.free_cols, vec![2]);
        assert_eq!(k.dim(), 1);
        let v = &k.basis[0];
        assert_eq!(m.apply(v), SparseVec::new());
        assert_eq!(v.get(2), Rational::one());
        assert_eq!(
            k.coords(&v.scale(&Rational::from_int(3))).unwrap(),
            SparseVec::unit(0).scale(&Rational::from_int(3))
        );
        assert!(k.coords(&SparseVec::unit(0)).is_none());
    }

    #[test]
    fn solve_and_inconsistency() {
        let m = Matrix::from_dense(&[vec![1, 1], vec![2, 2]]);
        let b = SparseVec::from_entries([(0, Rational::one()), (1, Rational::from_int(2))]);
        let x = solve(&m, &b).unwrap();
        assert_eq!(m.apply(&x), b);
        let bad = SparseVec::unit(0);
        assert!(solve(&m, &bad).is_none());
        let y = left_kernel(&m);
        assert!(y.basis.iter().any(|w| !w.dot(&bad).is_zero()));
    }

    #[test]
    fn rank_both_orientations() {
        let m = Matrix::from_dense(&[vec![1, 2, 3], vec![2, 4, 6]]);
        assert_eq!(rank(&m), 1);
        assert_eq!(rank(&m.transpose()), 1);
    }
}
