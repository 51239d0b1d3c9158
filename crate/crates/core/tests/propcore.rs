use std::collections::BTreeMap;
use std::sync::Arc;

use propcalc::biobject::{permutation_matrix, BiarityBound, Perm};
use propcalc::fixtures::{self, free_binary_prop, presentation_of};
use propcalc::gradedlinear::{kron_power, ChainComplex, ChainMap, GradedDims};
use propcalc::propcore::*;
use propcalc::{Error, Matrix, Rational, SparseVec};
use proptest::prelude::*;

fn b(n: usize) -> BiarityBound {
    BiarityBound(n)
}

fn r(n: i64) -> Rational {
    Rational::from_int(n)
}

fn z() -> ChainComplex {
    let by: BTreeMap<i32, Vec<String>> = BTreeMap::from([
        (0, vec!["tau".into(), "rho0".into(), "rho1".into()]),
        (-1, vec!["sig0".into(), "sig1".into()]),
    ]);
    let d = [("tau", "sig0", 1), ("tau", "sig1", 1), ("rho0", "sig0", 1), ("rho1", "sig1", 1)];
    let d: Vec<_> = d.iter().map(|(a, c, x)| (a.to_string(), c.to_string(), r(*x))).collect();
    ChainComplex::from_degrees(&by, &d).unwrap()
}

#[test]
fn end_of_q_is_one_dimensional() {
    let e = EndomorphismProp::new(Arc::new(fixtures::q()), b(4));
    for bi in e.bound().biarities() {
        assert_eq!(e.component(bi).dims(), GradedDims::from_pairs(&[(0, 1)]), "{bi:?}");
    }
    assert!(check_prop_axioms(&e).ok());
}

#[test]
fn end_z_dims() {
    let e = EndomorphismProp::new(Arc::new(z()), b(2));
    assert_eq!(e.component((1, 1)).dims(), GradedDims::from_pairs(&[(-1, 6), (0, 13), (1, 6)]));
}

fn random_matrix(rows: usize, cols: usize, seed: &[i64]) -> Matrix {
    let dense: Vec<Vec<i64>> =
        (0..rows).map(|i| (0..cols).map(|j| seed[(i * cols + j) % seed.len()]).collect()).collect();
    Matrix::from_dense(&dense)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    // oracle: vertical composition in End_{ℚ²} is matrix multiplication
    #[test]
    fn end_q2_vertical_is_matrix_product(s1 in prop::collection::vec(-3i64..4, 8), s2 in prop::collection::vec(-3i64..4, 8)) {
        let e = fixtures::end_q2(b(4));
        let f = random_matrix(4, 2, &s1); // X → X^{⊗2}
        let g = random_matrix(2, 4, &s2); // X^{⊗2} → X
        let ef = e.element_from_matrix((1, 2), &f);
        let eg = e.element_from_matrix((2, 1), &g);
        let c = e.vertical((2, 1), &eg, (1, 2), &ef).unwrap();
        prop_assert_eq!(e.matrix_of((1, 1), &c), g.compose(&f));
        let c2 = e.vertical((1, 2), &ef, (2, 1), &eg).unwrap();
        prop_assert_eq!(e.matrix_of((2, 2), &c2), f.compose(&g));
    }

    // oracle: horizontal composition of degree-0 maps is the Kronecker product
    #[test]
    fn end_q2_horizontal_is_kron(s1 in prop::collection::vec(-3i64..4, 4), s2 in prop::collection::vec(-3i64..4, 8)) {
        let e = fixtures::end_q2(b(5));
        let f = random_matrix(2, 2, &s1);
        let g = random_matrix(2, 4, &s2);
        let h = e.horizontal((1, 1), &e.element_from_matrix((1, 1), &f), (2, 1), &e.element_from_matrix((2, 1), &g)).unwrap();
        prop_assert_eq!(e.matrix_of((3, 2), &h), propcalc::gradedlinear::kron(&f, &g));
    }

    // evaluate_word is invariant under re-association
    #[test]
    fn words_reassociate(s in prop::collection::vec(-2i64..3, 8)) {
        let e = fixtures::end_q2(b(7));
        let g = e.element_from_matrix((2, 1), &random_matrix(2, 4, &s));
        let asg = BTreeMap::from([("g".to_string(), ((2, 1), g))]);
        let w1: GeneratorWord = "(g ⊗ 1_1) ⊗ 1_1".parse().unwrap();
        let w2: GeneratorWord = "g ⊗ (1_1 ⊗ 1_1)".parse().unwrap();
        prop_assert_eq!(evaluate_word(&w1, &e, &asg).unwrap(), evaluate_word(&w2, &e, &asg).unwrap());
        let v1: GeneratorWord = "(g ∘ (g ⊗ 1_1)) ∘ (1_2 ⊗ 1_1)".parse().unwrap();
        let v2: GeneratorWord = "g ∘ ((g ⊗ 1_1) ∘ 1_3)".parse().unwrap();
        prop_assert_eq!(evaluate_word(&v1, &e, &asg).unwrap(), evaluate_word(&v2, &e, &asg).unwrap());
    }
}

#[test]
fn end_actions_match_permutation_matrices() {
    let x = Arc::new(fixtures::four_term());
    let e = EndomorphismProp::new(x.clone(), b(4));
    let id = e.unit_raw(2);
    for s in Perm::all(2) {
        let l = e.left_action((2, 2), &s, &id).unwrap();
        assert_eq!(e.matrix_of((2, 2), &l), permutation_matrix(&x, &s));
        let rr = e.right_action((2, 2), &id, &s).unwrap();
        assert_eq!(e.matrix_of((2, 2), &rr), permutation_matrix(&x, &s));
    }
}

#[test]
fn endomorphism_props_satisfy_axioms() {
    for x in [fixtures::q2(), fixtures::two_term_acyclic(), fixtures::four_term()] {
        let e = EndomorphismProp::new(Arc::new(x), b(3));
        let rep = check_prop_axioms(&e);
        assert!(rep.ok(), "{rep}");
        assert!(rep.laws.iter().all(|l| l.checked > 0 || l.law == "symmetry"));
    }
    let e = EndomorphismProp::new(Arc::new(z()), b(2));
    let rep = check_prop_axioms(&e);
    assert!(rep.ok(), "{rep}");
    assert!(!rep.law("interchange").unwrap().skipped_by_truncation.is_empty());
}

#[test]
fn unit_prop_axioms() {
    let u = unit_prop(b(4));
    assert_eq!(u.dim((2, 2)), 2);
    assert_eq!(u.dim((1, 2)), 0);
    let rep = check_prop_axioms(&u);
    assert!(rep.ok(), "{rep}");
}

#[test]
fn free_binary_prop_dims_and_axioms() {
    let p = free_binary_prop(b(4));
    let dims: Vec<((usize, usize), usize)> =
        p.bound().biarities().into_iter().map(|x| (x, p.dim(x))).filter(|x| x.1 > 0).collect();
    assert_eq!(dims, vec![((0, 0), 1), ((1, 1), 1), ((2, 1), 2), ((2, 2), 2), ((3, 1), 12)]);
    let rep = check_prop_axioms(&p);
    assert!(rep.ok(), "{rep}");
    // the 3-leaf trees are built through (3,2), beyond the bound
    let skipped = presentation_of(&p).unwrap().check(&p).unwrap();
    assert_eq!(skipped.len(), 12);
    assert!(skipped.iter().all(|s| s.ends_with("@3,1")));
    let big = free_binary_prop(b(5));
    let skipped = presentation_of(&big).unwrap().check(&big).unwrap();
    assert!(skipped.iter().all(|s| s.ends_with("@4,1") || s.ends_with("@3,2")));
}

#[test]
fn corrupted_interchange_is_reported() {
    let e = EndomorphismProp::new(Arc::new(fixtures::q()), b(5));
    let mut t = tabulate(&e).unwrap();
    assert!(check_prop_axioms(&t).ok());
    // (1,0) ⊗ (0,1) lands in (1,1); perturb it
    t.set_horizontal((1, 0), 0, (0, 1), 0, SparseVec::single(0, r(2)));
    let rep = check_prop_axioms(&t);
    assert!(!rep.law("interchange").unwrap().violations.is_empty());
    assert!(rep.law("vertical associativity").unwrap().violations.is_empty());
}

#[test]
fn json_roundtrip() {
    let e = fixtures::end_q2(b(2));
    let t = tabulate(&e).unwrap();
    let j = serde_json::to_string(&t.to_json()).unwrap();
    let back = TruncatedProp::from_json_str(&j).unwrap();
    assert_eq!(back.to_json(), t.to_json());
    assert!(check_prop_axioms(&back).ok());
    let f = free_binary_prop(b(3));
    let back = TruncatedProp::from_json_str(&serde_json::to_string(&f.to_json()).unwrap()).unwrap();
    assert!(presentation_of(&back).unwrap().check(&back).unwrap().is_empty());
}

#[test]
fn json_rejects_bad_tables() {
    let mut j = unit_prop(b(2)).to_json();
    j.vertical.insert("1,1|1,1".into(), BTreeMap::from([("nope|[1]".into(), BTreeMap::new())]));
    assert!(matches!(TruncatedProp::from_json(&j), Err(Error::InvalidLabel(_))));
    let mut j = unit_prop(b(2)).to_json();
    j.components.insert("2,1".into(), j.components["1,1"].clone());
    assert!(matches!(TruncatedProp::from_json(&j), Err(Error::TruncationExceeded { .. })));
}

#[test]
fn checked_operations() {
    let e = fixtures::end_q2(b(3));
    let g = e.unit_raw(1);
    assert!(matches!(e.vertical((2, 1), &g, (1, 1), &g), Err(Error::ArityMismatch(_))));
    assert!(matches!(e.horizontal((1, 1), &g, (1, 1), &g), Err(Error::TruncationExceeded { .. })));
}

#[test]
fn words() {
    let e = EndomorphismProp::new(Arc::new(fixtures::q()), b(5));
    let mu = fixtures::q_multiplication(&e);
    let asg = BTreeMap::from([("g".to_string(), ((2, 1), mu.clone()))]);
    let (bi, u) = evaluate_word(&"1_1".parse().unwrap(), &e, &asg).unwrap();
    assert_eq!((bi, u), ((1, 1), e.unit_raw(1)));
    let (bi, v) = evaluate_word(&"g ∘ (1_1 ⊗ g)".parse().unwrap(), &e, &asg).unwrap();
    assert_eq!(bi, (3, 1));
    // ℚ³ → ℚ, x⊗y⊗z ↦ xyz
    assert_eq!(e.matrix_of((3, 1), &v), Matrix::from_dense(&[vec![1]]));
    let bad = evaluate_word(&"g ∘ g".parse().unwrap(), &e, &asg);
    assert!(matches!(bad, Err(Error::ArityMismatch(_))));
}

#[test]
fn morphism_checks() {
    let e: Arc<dyn Prop> = Arc::new(fixtures::end_q2(b(2)));
    assert!(check_prop_morphism(&PropMorphism::identity(e.clone())).ok());
    let mut f = PropMorphism::identity(e.clone());
    f.maps.insert((1, 1), Matrix::identity(e.dim((1, 1))).scale(&r(-1)));
    let rep = check_prop_morphism(&f);
    let units = rep.laws.iter().find(|l| l.law == "units").unwrap();
    assert!(!units.violations.is_empty());
}

#[test]
fn algebras() {
    let x = Arc::new(fixtures::four_term());
    let a = fixtures::unit_algebra(b(3), x);
    assert!(check_algebra(&a).ok());

    let p = Arc::new(free_binary_prop(b(3)));
    let a = fixtures::free_binary_algebra(p.clone(), Arc::new(fixtures::q()), fixtures::q_multiplication);
    assert!(check_algebra(&a).ok());
    let a = fixtures::free_binary_algebra(p.clone(), Arc::new(fixtures::q2()), fixtures::q2_left_product);
    assert!(check_algebra(&a).ok());

    // g ↦ a degree-0 map that does not commute with d
    let x = Arc::new(fixtures::two_term_acyclic());
    let a = fixtures::free_binary_algebra(p, x, |end| {
        // a⊗a ↦ a is degree 2 → 1: not degree 0; use b⊗b ↦ b instead and a⊗b ↦ a (degree 0)
        fixtures::product_element(end, &[((1, 1), vec![(1, 1)]), ((0, 1), vec![(0, 1)])])
    });
    let rep = check_algebra(&a);
    let chain = rep.laws.iter().find(|l| l.law == "chain map").unwrap();
    assert!(!chain.violations.is_empty());
}

fn q_arrow(x: &Arc<ChainComplex>, y: &Arc<ChainComplex>, m: Matrix) -> ChainMap {
    ChainMap::new(x.clone(), y.clone(), m).unwrap()
}

#[test]
fn diagram_props() {
    let x = Arc::new(fixtures::q2());
    let bound = b(2);
    let end = fixtures::end_q2(bound);

    let single = diagram_endomorphism_prop(DiagramShape::new(vec![("X".into(), x.clone())]), bound);
    for bi in bound.biarities() {
        assert_eq!(single.dim(bi), end.dim(bi));
    }

    let t =
        diagram_endomorphism_prop(DiagramShape::new(vec![("X0".into(), x.clone()), ("X1".into(), x.clone())]), bound);
    for bi in bound.biarities() {
        assert_eq!(t.dim(bi), 2 * end.dim(bi));
    }

    let id = DiagramShape::new(vec![("X".into(), x.clone()), ("X'".into(), x.clone())])
        .arrow("id", 1, 0, ChainMap::identity(x.clone()))
        .unwrap();
    let idp = diagram_endomorphism_prop(id.clone(), bound);
    for bi in bound.biarities() {
        assert_eq!(idp.dim(bi), end.dim(bi));
        let (d0, d1, s0) = equalizer_maps(&id, bi);
        let n = d0.ncols();
        assert_eq!(s0.compose(&d0), Matrix::identity(n));
        assert_eq!(s0.compose(&d1), Matrix::identity(n));
        assert_eq!(coreflexive_section(&id, bi), s0);
    }
    assert!(check_prop_axioms(&idp).ok());

    // a projection onto the first coordinate
    let y = Arc::new(fixtures::q());
    let p = q_arrow(&x, &y, Matrix::from_dense(&[vec![1, 0]]));
    let shape = DiagramShape::new(vec![("X".into(), x.clone()), ("Y".into(), y.clone())]).arrow("p", 0, 1, p).unwrap();
    let dp = diagram_endomorphism_prop(shape, bound);
    for bi in bound.biarities() {
        for i in 0..dp.dim(bi) {
            let fam = dp.family(bi, &SparseVec::unit(i));
            assert!(diagram_family_ok(&dp, bi, &fam));
        }
    }
    assert!(check_prop_axioms(&dp).ok());

    // restriction to the object X
    let only_x = diagram_endomorphism_prop(DiagramShape::new(vec![("X".into(), x.clone())]), bound);
    let alpha = restriction_morphism(&dp, &only_x, &[0]).unwrap();
    assert!(check_prop_morphism(&alpha).ok());
    let _ = kron_power(&Matrix::identity(1), 2);
}
