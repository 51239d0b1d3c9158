#![allow(dead_code)]

use std::sync::Arc;

use propcalc::linalg::kernel;
use propcalc::{ChainComplex, Matrix, Rational, SparseVec};
use proptest::prelude::*;

/// A complex in degrees 1, 0, −1 with dimensions `dims`, `d₁ = a` and `d₀`
/// built from rows in the left kernel of `a`, so `d∘d = 0` by construction.
pub fn complex_from(dims: [usize; 3], a: &[i64], mix: &[i64]) -> ChainComplex {
    let [n1, n0, nm] = dims;
    let a = Matrix::from_columns(
        n0,
        (0..n1)
            .map(|j| SparseVec::from_entries((0..n0).map(|i| (i, Rational::from_int(a[(i * n1 + j) % a.len()])))))
            .collect(),
    );
    // rows r with r·a = 0 are the kernel of aᵀ
    let left = kernel(&a.transpose()).basis;
    let rows: Vec<SparseVec> = (0..nm)
        .map(|r| {
            left.iter().enumerate().fold(SparseVec::new(), |acc, (k, v)| {
                acc.add(&v.scale(&Rational::from_int(mix[(r * 7 + k) % mix.len()])))
            })
        })
        .collect();
    let b = Matrix::from_columns(n0, rows).transpose();
    let mut basis = Vec::new();
    basis.extend((0..n1).map(|i| (format!("u{i}"), 1)));
    basis.extend((0..n0).map(|i| (format!("v{i}"), 0)));
    basis.extend((0..nm).map(|i| (format!("w{i}"), -1)));
    let n = n1 + n0 + nm;
    let mut cols = Vec::with_capacity(n);
    for j in 0..n1 {
        cols.push(a.col(j).shifted(n1));
    }
    for j in 0..n0 {
        cols.push(b.col(j).shifted(n1 + n0));
    }
    cols.extend((0..nm).map(|_| SparseVec::new()));
    ChainComplex::new(basis, Matrix::from_columns(n, cols)).expect("d∘d = 0 by construction")
}

pub fn small_complex() -> impl Strategy<Value = Arc<ChainComplex>> {
    ([0usize..3, 0usize..3, 0usize..3], prop::collection::vec(-2i64..3, 1..9), prop::collection::vec(-2i64..3, 1..9))
        .prop_map(|(dims, a, mix)| Arc::new(complex_from(dims, &a, &mix)))
}
