mod common;

use std::sync::Arc;

use propcalc::fixtures;
use propcalc::gradedlinear::{homology, is_acyclic, is_cofibration, is_fibration, is_quasi_iso};
use propcalc::pathobject::*;
use propcalc::{ChainComplex, GradedDims, Rational, SparseVec};
use proptest::prelude::*;

fn dims(p: &[(i32, usize)]) -> GradedDims {
    GradedDims::from_pairs(p)
}

#[test]
fn z_complex() {
    let z = make_z();
    assert_eq!(z.complex.dims(), dims(&[(0, 3), (-1, 2)]));
    assert_eq!(z.complex.labels(), &Z_LABELS.map(String::from));
    assert_eq!(homology(&z.complex), dims(&[(0, 1)]));
    let at = |l: &str| SparseVec::unit(z.complex.index_of(l).unwrap());
    assert_eq!(z.complex.apply_d(&at(RHO0)), at(SIGMA0));
    assert_eq!(z.complex.apply_d(&at(RHO1)), at(SIGMA1));
    assert!(z.complex.apply_d(&at(TAU)).is_zero());
    // d₁(ρ₀⊗x) = x, d₀(ρ₀⊗x) = 0
    assert_eq!(z.d1.matrix.apply(&at(RHO0)), SparseVec::unit(0));
    assert!(z.d0.matrix.apply(&at(RHO0)).is_zero());
    assert_eq!(z.d0.matrix.compose(&z.s.matrix), z.d1.matrix.compose(&z.s.matrix));
    assert_eq!(z.d0.matrix.apply(&z.s.matrix.col(0).clone()), SparseVec::unit(0));
}

#[test]
fn splittings() {
    let sp = split_z();
    assert_eq!(sp.tilde.dim(), 4);
    assert!(is_acyclic(&sp.tilde.complex));
    let mut labels: Vec<&str> = sp.tilde.complex.labels().iter().map(|s| s.as_str()).collect();
    labels.sort();
    assert_eq!(labels, {
        let mut v = vec![RHO0, RHO1, SIGMA0, SIGMA1];
        v.sort();
        v
    });
    for m in 1..=4 {
        let s = split_z_power(m);
        assert_eq!(s.s_m.dim(), 5usize.pow(m as u32) - 1);
        assert!(is_acyclic(&s.s_m.complex), "S_{m}");
        assert!(is_cofibration(&s.tau_power) && is_quasi_iso(&s.tau_power));
    }
    assert_eq!(split_z_power(2).s_m.dim(), 24);
}

#[test]
fn words() {
    assert_eq!(z_word(2, 0), vec![TAU, TAU]);
    assert_eq!(z_word(2, 6), vec![RHO0, RHO0]);
    for k in 0..125 {
        assert_eq!(z_word_index(&z_word(3, k)), Some(k));
    }
    // labels of the tensor power agree with the words
    let z3 = propcalc::gradedlinear::tensor_power(&make_z().complex, 3);
    for k in 0..125 {
        assert_eq!(z3.label(k), z_word(3, k).join("⋆"));
    }
}

#[test]
fn factorization_on_corpus() {
    let mut xs: Vec<(&str, ChainComplex)> = fixtures::test_complexes();
    xs.push(("zero", ChainComplex::zero()));
    for (name, x) in xs {
        let f = path_object(Arc::new(x)).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert!(f.ok(), "{name}: {:?}", f.verdicts);
        assert_eq!(f.zx.dim(), 5 * f.x.dim());
        // oracle: τ⊗x_i ↦ (x_i, x_i), straight from labels
        for i in 0..f.x.dim() {
            let img = f.s.matrix.apply(&SparseVec::unit(i));
            assert_eq!(img, SparseVec::unit(f.zx.index_of(&format!("τ⋆{}", f.x.label(i))).unwrap()));
            let n = f.x.dim();
            assert_eq!(
                f.pair.matrix.apply(&img),
                SparseVec::from_entries([(i, Rational::one()), (n + i, Rational::one())])
            );
        }
    }
}

#[test]
fn factorization_examples() {
    let f = path_object(Arc::new(fixtures::q())).unwrap();
    assert_eq!(f.zx.dims(), make_z().complex.dims());
    assert_eq!(homology(&f.zx), dims(&[(0, 1)]));
    let f = path_object(Arc::new(fixtures::two_term_acyclic())).unwrap();
    assert!(homology(&f.zx).is_zero());
    assert!(is_quasi_iso(&f.s));
}

#[test]
fn g_and_f_s() {
    let g = g_d0_d1(1);
    assert!(is_fibration(&g));
    // τ ↦ p₀+p₁, ρ₀ ↦ p₁
    assert_eq!(g.matrix.col(0), &SparseVec::from_entries([(0, Rational::one()), (1, Rational::one())]));
    assert_eq!(g.matrix.col(1), &SparseVec::unit(1));
    // n = 0: ℚ → ℚ², 1 ↦ (1,1) cannot be onto
    assert!(!is_fibration(&g_d0_d1(0)));
    for n in 1..=3 {
        assert!(is_fibration(&g_d0_d1(n)));
        assert!(is_cofibration(&f_s(n)) && is_quasi_iso(&f_s(n)));
    }
}

#[test]
fn z_report_fields() {
    let r = z_report(4);
    assert!(r.tilde_acyclic && r.s_m_acyclic.values().all(|&b| b));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn factorization_on_random_complexes(x in common::small_complex()) {
        let f = path_object_unchecked(x).unwrap();
        prop_assert!(f.ok(), "{:?}", f.verdicts);
        // Z⊗X = (Z̃⊗X) ⊕ X, so the homology of Z⊗X is that of X
        prop_assert_eq!(homology(&f.zx), homology(&f.x));
    }
}
