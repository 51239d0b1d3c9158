use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use rayon::prelude::*;

use super::{odd_product, sign_of, Prop};
use crate::biobject::{permutation_sign, tuple_digits, tuple_index, Biarity, BiarityBound, Perm};
use crate::error::Result;
use crate::gradedlinear::{hom_complex, tensor_power, ChainComplex};
use crate::linalg::{Accumulator, SparseVec};

/// `End_X(m, n) = Hom(X^{⊗m}, X^{⊗n})` in the elementary basis: `E_ij`
/// (source tuple `j`, target tuple `i`) sits at `j·dim X^{⊗n} + i`.
pub struct EndomorphismProp {
    x: Arc<ChainComplex>,
    bound: BiarityBound,
    /// Degrees of the tuples of `X^{⊗m}`.
    tuple_degrees: Vec<Vec<i32>>,
    components: BTreeMap<Biarity, Arc<ChainComplex>>,
}

impl EndomorphismProp {
    pub fn new(x: Arc<ChainComplex>, bound: BiarityBound) -> EndomorphismProp {
        let powers: Vec<ChainComplex> = (0..=bound.0).map(|m| tensor_power(&x, m)).collect();
        let tuple_degrees = powers.iter().map(|p| p.degrees().to_vec()).collect();
        let components = bound
            .biarities()
            .into_par_iter()
            .map(|(m, n)| ((m, n), Arc::new(hom_complex(&powers[m], &powers[n]))))
            .collect();
        EndomorphismProp { x, bound, tuple_degrees, components }
    }

    pub fn base(&self) -> &Arc<ChainComplex> {
        &self.x
    }

    fn power_dim(&self, m: usize) -> usize {
        self.tuple_degrees[m].len()
    }

    /// `σ_*` on a tuple: the factor at position `p` moves to `σ(p)`.
    fn permute_tuple(&self, m: usize, t: usize, sigma: &Perm) -> (usize, crate::Rational) {
        let base = self.x.dim();
        let digits = tuple_digits(t, base, m);
        let degs: Vec<i32> = digits.iter().map(|&k| self.x.degree(k)).collect();
        let inv = sigma.inverse();
        let out: Vec<usize> = (0..m).map(|p| digits[inv.apply(p)]).collect();
        (tuple_index(&out, base), permutation_sign(&degs, sigma))
    }

    /// Element of `End_X(m, n)` from a matrix `X^{⊗m} → X^{⊗n}`.
    pub fn element_from_matrix(&self, (m, n): Biarity, f: &crate::Matrix) -> SparseVec {
        let _ = m;
        crate::gradedlinear::matrix_to_hom_element(self.power_dim(n), f)
    }

    /// Matrix `X^{⊗m} → X^{⊗n}` of an element.
    pub fn matrix_of(&self, (m, n): Biarity, a: &SparseVec) -> crate::Matrix {
        let nn = self.power_dim(n);
        let mut cols = vec![Accumulator::new(); self.power_dim(m)];
        for (e, c) in a.iter() {
            cols[e / nn].add(e % nn, c);
        }
        crate::Matrix::from_columns(nn, cols.into_iter().map(Accumulator::finish).collect())
    }
}

impl Prop for EndomorphismProp {
    fn bound(&self) -> BiarityBound {
        self.bound
    }

    fn component(&self, b: Biarity) -> Arc<ChainComplex> {
        self.components[&b].clone()
    }

    fn vertical_raw(&self, outer: Biarity, a: &SparseVec, inner: Biarity, b: &SparseVec) -> Result<SparseVec> {
        let nk = self.power_dim(outer.0);
        let nn = self.power_dim(outer.1);
        // b entries grouped by their target tuple
        let mut by_target: HashMap<usize, Vec<(usize, &crate::Rational)>> = HashMap::new();
        for (e, c) in b.iter() {
            by_target.entry(e % nk).or_default().push((e / nk, c));
        }
        let _ = inner;
        let mut acc = Accumulator::new();
        for (e, c) in a.iter() {
            let (j, i) = (e / nn, e % nn);
            if let Some(list) = by_target.get(&j) {
                for &(j2, c2) in list {
                    acc.add(j2 * nn + i, &(c * c2));
                }
            }
        }
        Ok(acc.finish())
    }

    fn horizontal_raw(&self, left: Biarity, a: &SparseVec, right: Biarity, b: &SparseVec) -> Result<SparseVec> {
        let (m1, n1) = left;
        let (m2, n2) = right;
        let dn1 = self.power_dim(n1);
        let dn2 = self.power_dim(n2);
        let dm2 = self.power_dim(m2);
        let dn = dn1 * dn2;
        let mut acc = Accumulator::new();
        for (e, c) in a.iter() {
            let (j, i) = (e / dn1, e % dn1);
            let xj = self.tuple_degrees[m1][j];
            for (f, c2) in b.iter() {
                let (l, k) = (f / dn2, f % dn2);
                let g = self.tuple_degrees[n2][k] - self.tuple_degrees[m2][l];
                let s = sign_of(odd_product(g, xj));
                let src = j * dm2 + l;
                let tgt = i * dn2 + k;
                acc.add(src * dn + tgt, &(&(c * c2) * &s));
            }
        }
        Ok(acc.finish())
    }

    fn unit_raw(&self, n: usize) -> SparseVec {
        let d = self.power_dim(n);
        SparseVec::from_entries((0..d).map(|t| (t * d + t, crate::Rational::one())))
    }

    fn right_action_raw(&self, (m, n): Biarity, a: &SparseVec, sigma: &Perm) -> Result<SparseVec> {
        // E_ij ∘ σ_* = ε E_{i j'} where σ_*(x_{j'}) = ε x_j
        let nn = self.power_dim(n);
        let inv = sigma.inverse();
        let mut acc = Accumulator::new();
        for (e, c) in a.iter() {
            let (j, i) = (e / nn, e % nn);
            let (j2, _) = self.permute_tuple(m, j, &inv);
            let (back, s) = self.permute_tuple(m, j2, sigma);
            debug_assert_eq!(back, j);
            acc.add(j2 * nn + i, &(c * &s));
        }
        Ok(acc.finish())
    }

    fn left_action_raw(&self, (_, n): Biarity, tau: &Perm, a: &SparseVec) -> Result<SparseVec> {
        let nn = self.power_dim(n);
        let mut acc = Accumulator::new();
        for (e, c) in a.iter() {
            let (j, i) = (e / nn, e % nn);
            let (i2, s) = self.permute_tuple(n, i, tau);
            acc.add(j * nn + i2, &(c * &s));
        }
        Ok(acc.finish())
    }
}
