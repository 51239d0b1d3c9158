//! Tensor products, duals, internal homs and direct sums.

use std::sync::Arc;

use super::complex::{ChainComplex, ChainMap, DUAL, SEP};
use crate::error::{Error, Result};
use crate::linalg::{Accumulator, Matrix, Rational, SparseVec};

/// Koszul sign `(−1)^{a·b}`.
pub fn koszul(a: i32, b: i32) -> Rational {
    Rational::sign((a * b).rem_euclid(2) == 1)
}

fn parity(a: i32) -> bool {
    a.rem_euclid(2) == 1
}

/// `A⊗B` with basis `a⋆b` at index `i·dim B + j` and the Koszul differential
/// `d(a⊗b) = da⊗b + (−1)^{|a|} a⊗db`.
pub fn tensor(a: &ChainComplex, b: &ChainComplex) -> ChainComplex {
    let nb = b.dim();
    let mut basis = Vec::with_capacity(a.dim() * nb);
    for i in 0..a.dim() {
        for j in 0..nb {
            basis.push((format!("{}{SEP}{}", a.label(i), b.label(j)), a.degree(i) + b.degree(j)));
        }
    }
    let mut cols = Vec::with_capacity(basis.len());
    for i in 0..a.dim() {
        let sign = Rational::sign(parity(a.degree(i)));
        for j in 0..nb {
            let mut acc = Accumulator::new();
            for (k, c) in a.d().col(i).iter() {
                acc.add(k * nb + j, c);
            }
            for (l, c) in b.d().col(j).iter() {
                acc.add(i * nb + l, &(c * &sign));
            }
            cols.push(acc.finish());
        }
    }
    let n = basis.len();
    ChainComplex::new(basis, Matrix::from_columns(n, cols)).expect("tensor of complexes")
}

/// `X^{⊗m}`; the empty power is the unit complex.
pub fn tensor_power(x: &ChainComplex, m: usize) -> ChainComplex {
    match m {
        0 => ChainComplex::unit(),
        _ => {
            let mut acc = x.clone();
            for _ in 1..m {
                acc = tensor(&acc, x);
            }
            acc
        }
    }
}

/// Kronecker product of two matrices, matching the `tensor` index layout.
/// No signs: for degree-0 maps the Koszul rule is trivial.
pub fn kron(f: &Matrix, g: &Matrix) -> Matrix {
    let (fr, gr) = (f.nrows(), g.nrows());
    let mut cols = Vec::with_capacity(f.ncols() * g.ncols());
    for i in 0..f.ncols() {
        for j in 0..g.ncols() {
            let mut e = Vec::with_capacity(f.col(i).nnz() * g.col(j).nnz());
            for (k, a) in f.col(i).iter() {
                for (l, b) in g.col(j).iter() {
                    e.push((k * gr + l, a * b));
                }
            }
            cols.push(SparseVec::from_entries(e));
        }
    }
    Matrix::from_columns(fr * gr, cols)
}

/// `f⊗g` for degree-0 chain maps.
pub fn tensor_maps(f: &ChainMap, g: &ChainMap) -> ChainMap {
    ChainMap {
        source: Arc::new(tensor(&f.source, &g.source)),
        target: Arc::new(tensor(&f.target, &g.target)),
        matrix: kron(&f.matrix, &g.matrix),
    }
}

/// `f^{⊗m}` as a bare matrix on the tensor-power bases.
pub fn kron_power(f: &Matrix, m: usize) -> Matrix {
    let mut acc = Matrix::identity(1);
    for _ in 0..m {
        acc = kron(&acc, f);
    }
    acc
}

pub fn tensor_power_map(f: &ChainMap, m: usize) -> ChainMap {
    ChainMap {
        source: Arc::new(tensor_power(&f.source, m)),
        target: Arc::new(tensor_power(&f.target, m)),
        matrix: kron_power(&f.matrix, m),
    }
}

/// `A*` with basis `a*` in degree `−|a|` and `d(f) = −(−1)^{|f|} f∘d_A`.
pub fn dual(a: &ChainComplex) -> ChainComplex {
    let n = a.dim();
    let basis = (0..n).map(|i| (format!("{}{DUAL}", a.label(i)), -a.degree(i))).collect();
    // Column i of d_{A*} is row i of d_A, scaled.
    let rows = a.d().rows();
    let cols = rows
        .into_iter()
        .enumerate()
        .map(|(i, r)| {
            let s = Rational::sign(!parity(-a.degree(i)));
            r.scale(&s)
        })
        .collect();
    ChainComplex::new(basis, Matrix::from_columns(n, cols)).expect("dual complex")
}

/// The pairing `A*⊗A → ℚ`, as a chain map out of `tensor(dual(A), A)`.
pub fn evaluation_pairing(a: &ChainComplex) -> ChainMap {
    let da = Arc::new(dual(a));
    let src = Arc::new(tensor(&da, a));
    let n = a.dim();
    let cols = (0..n * n).map(|k| if k / n == k % n { SparseVec::unit(0) } else { SparseVec::new() }).collect();
    ChainMap { source: src, target: Arc::new(ChainComplex::unit()), matrix: Matrix::from_columns(1, cols) }
}

/// `Hom(A, B)`. The elementary map `a_j ↦ b_i` sits at index `j·dim B + i`
/// with label `a_j*⋆b_i` and degree `|b_i| − |a_j|`;
/// `d(f) = d_B∘f − (−1)^{|f|} f∘d_A`.
pub fn hom_complex(a: &ChainComplex, b: &ChainComplex) -> ChainComplex {
    let nb = b.dim();
    let mut basis = Vec::with_capacity(a.dim() * nb);
    for j in 0..a.dim() {
        for i in 0..nb {
            basis.push((format!("{}{DUAL}{SEP}{}", a.label(j), b.label(i)), b.degree(i) - a.degree(j)));
        }
    }
    let rows_a = a.d().rows();
    let mut cols = Vec::with_capacity(basis.len());
    for j in 0..a.dim() {
        for i in 0..nb {
            let deg = b.degree(i) - a.degree(j);
            let mut acc = Accumulator::new();
            for (l, c) in b.d().col(i).iter() {
                acc.add(j * nb + l, c);
            }
            // (E_ij ∘ d_A)(a_k) = d_A[j,k] b_i
            let s = -Rational::sign(parity(deg));
            for (k, c) in rows_a[j].iter() {
                acc.add(k * nb + i, &(c * &s));
            }
            cols.push(acc.finish());
        }
    }
    let n = basis.len();
    ChainComplex::new(basis, Matrix::from_columns(n, cols)).expect("hom complex")
}

/// The natural isomorphism `A*⊗B → Hom(A,B)`,
/// `a_j*⊗b_i ↦ (−1)^{|a_j||b_i|} E_ij`.
pub fn dual_tensor_to_hom(a: &ChainComplex, b: &ChainComplex) -> ChainMap {
    let src = Arc::new(tensor(&dual(a), b));
    let tgt = Arc::new(hom_complex(a, b));
    let nb = b.dim();
    let cols = (0..a.dim() * nb).map(|k| SparseVec::single(k, koszul(a.degree(k / nb), b.degree(k % nb)))).collect();
    let n = tgt.dim();
    ChainMap { source: src, target: tgt, matrix: Matrix::from_columns(n, cols) }
}

/// Matrix of an element of `Hom(A,B)` as a linear map `A → B`.
pub fn hom_element_matrix(a: &ChainComplex, b: &ChainComplex, f: &SparseVec) -> Matrix {
    let nb = b.dim();
    let mut cols: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); a.dim()];
    for (k, c) in f.iter() {
        cols[k / nb].push((k % nb, c.clone()));
    }
    Matrix::from_columns(nb, cols.into_iter().map(SparseVec::from_entries).collect())
}

/// Inverse of [`hom_element_matrix`].
pub fn matrix_to_hom_element(b_dim: usize, m: &Matrix) -> SparseVec {
    SparseVec::from_entries(
        m.columns().iter().enumerate().flat_map(|(j, col)| col.iter().map(move |(i, c)| (j * b_dim + i, c.clone()))),
    )
}

/// Postcomposition `g_* : Hom(A,B) → Hom(A,B')` for a degree-0 map `g`.
pub fn hom_post(a: &ChainComplex, g: &ChainMap) -> ChainMap {
    let (b, b2) = (&g.source, &g.target);
    let src = Arc::new(hom_complex(a, b));
    let tgt = Arc::new(hom_complex(a, b2));
    let (nb, nb2) = (b.dim(), b2.dim());
    let cols = (0..src.dim()).map(|k| g.matrix.col(k % nb).reindex(|l| Some((k / nb) * nb2 + l))).collect();
    let n = tgt.dim();
    ChainMap { source: src, target: tgt, matrix: Matrix::from_columns(n, cols) }
}

/// Precomposition `f^* : Hom(A,B) → Hom(A',B)` for a degree-0 map `f: A' → A`.
pub fn hom_pre(f: &ChainMap, b: &ChainComplex) -> ChainMap {
    let (a2, a) = (&f.source, &f.target);
    let src = Arc::new(hom_complex(a, b));
    let tgt = Arc::new(hom_complex(a2, b));
    let nb = b.dim();
    let rows = f.matrix.rows();
    // E_ij ∘ f sends a'_k to f[j,k] b_i.
    let cols = (0..src.dim())
        .map(|k| {
            let (j, i) = (k / nb, k % nb);
            rows[j].reindex(|kk| Some(kk * nb + i))
        })
        .collect();
    let n = tgt.dim();
    ChainMap { source: src, target: tgt, matrix: Matrix::from_columns(n, cols) }
}

/// `A ⊕ B` with labels `0|a`, `1|b`.
pub fn direct_sum(a: &ChainComplex, b: &ChainComplex) -> ChainComplex {
    direct_sum_many(&[a, b])
}

pub fn direct_sum_many(parts: &[&ChainComplex]) -> ChainComplex {
    let mut basis = Vec::new();
    let mut d = Matrix::zeros(0, 0);
    for (k, c) in parts.iter().enumerate() {
        basis.extend((0..c.dim()).map(|i| (format!("{k}|{}", c.label(i)), c.degree(i))));
        d = d.direct_sum(c.d());
    }
    ChainComplex::new(basis, d).expect("direct sum")
}

/// Inclusion of summand `k` into a direct sum of complexes with the given dims.
pub fn summand_inclusion(dims: &[usize], k: usize) -> Matrix {
    let offset: usize = dims[..k].iter().sum();
    let total: usize = dims.iter().sum();
    Matrix::from_columns(total, (0..dims[k]).map(|i| SparseVec::unit(offset + i)).collect())
}

/// Projection of a direct sum onto summand `k`.
pub fn summand_projection(dims: &[usize], k: usize) -> Matrix {
    summand_inclusion(dims, k).transpose()
}

/// `(f, g): A → B ⊕ C`.
pub fn pair_maps(f: &ChainMap, g: &ChainMap) -> Result<ChainMap> {
    if *f.source != *g.source {
        return Err(Error::ShapeMismatch("pairing maps with different sources".into()));
    }
    Ok(ChainMap {
        source: f.source.clone(),
        target: Arc::new(direct_sum(&f.target, &g.target)),
        matrix: f.matrix.vstack(&g.matrix),
    })
}

/// The diagonal `X → X ⊕ X`.
pub fn diagonal(x: Arc<ChainComplex>) -> ChainMap {
    let id = ChainMap::identity(x);
    pair_maps(&id, &id).expect("same source")
}

/// `A → A**`, `a ↦ (−1)^{|a|} a**`. Under the dual convention above the
/// double dual carries `−d_A`, so the bare identity on labels is not a chain
/// map unless `d_A = 0`; the alternating sign repairs it.
pub fn double_dual_iso(a: &ChainComplex) -> ChainMap {
    let src = Arc::new(a.clone());
    let tgt = Arc::new(dual(&dual(a)));
    let cols = (0..a.dim()).map(|i| SparseVec::single(i, Rational::sign(parity(a.degree(i))))).collect();
    let n = a.dim();
    ChainMap { source: src, target: tgt, matrix: Matrix::from_columns(n, cols) }
}
