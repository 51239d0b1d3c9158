use std::sync::Arc;

use propcalc::biobject::BiarityBound;
use propcalc::fixtures;
use propcalc::lifting::*;
use propcalc::pdiagramprops::*;
use propcalc::propcore::{unit_prop, Prop, PropMorphism};
use propcalc::{Error, SparseVec};

fn free(bound: usize) -> Arc<propcalc::propcore::TruncatedProp> {
    Arc::new(fixtures::free_binary_prop(BiarityBound(bound)))
}

fn free_presentation(p: &Arc<propcalc::propcore::TruncatedProp>) -> QuasiFreePresentation {
    QuasiFreePresentation::new(p.clone(), fixtures::presentation_of(p).unwrap()).unwrap()
}

fn lift_identity(props: &PDiagramProps, pres: QuasiFreePresentation) -> propcalc::Result<Lift> {
    let q = pi_morphism(props).unwrap();
    let base = PropMorphism::identity(props.p().clone());
    lift(&LiftProblem { presentation: pres, q, base })
}

#[test]
fn identity_fibration_returns_base() {
    let p = free(3);
    let alg = fixtures::free_binary_algebra(p.clone(), Arc::new(fixtures::q2()), fixtures::q2_group_product);
    // E = B = End_ℚ², q = id, base = the action
    let q = PropMorphism::identity(alg.end.clone());
    let l = lift(&LiftProblem { presentation: free_presentation(&p), q, base: alg.action.clone() }).unwrap();
    assert!(l.commutes && l.check.ok());
    assert_eq!(l.morphism.maps, alg.action.maps);
}

#[test]
fn lift_through_pi_free_prop() {
    let p = free(3);
    let props = build_pdiagram_props(p.clone(), PiFault::None);
    let l = lift_identity(&props, free_presentation(&p)).unwrap();
    assert!(l.commutes);
    assert!(l.check.ok(), "{:?}", l.check);
    assert_eq!(l.generators.len(), 1);
    // the lift of g lives over (g, g, g) in P₀, P₁, P
    let (b, i) = ((2, 1), p.component((2, 1)).index_of("(1,2)").unwrap_or(0));
    let parts = props.cal_y_parts(b, &l.morphism.apply(b, &SparseVec::unit(i)));
    assert_eq!(parts[1], SparseVec::unit(i));
    assert_eq!(parts[2], SparseVec::unit(i));
    assert_eq!(parts[3], SparseVec::unit(i));
}

#[test]
fn lift_is_deterministic() {
    let p = free(3);
    let props = build_pdiagram_props(p.clone(), PiFault::None);
    let a = lift_identity(&props, free_presentation(&p)).unwrap();
    let b = lift_identity(&props, free_presentation(&p)).unwrap();
    assert_eq!(a.morphism.maps, b.morphism.maps);
}

#[test]
fn lift_fails_against_a_non_surjection() {
    let p = free(3);
    let props = build_pdiagram_props(p.clone(), PiFault::DropSbarUpper);
    match lift_identity(&props, free_presentation(&p)) {
        Err(Error::NoSolution { generator, detail }) => {
            assert_eq!(generator, "g");
            assert!(detail.contains("functional"));
        }
        Err(e) => panic!("{e}"),
        Ok(_) => panic!("lift should not exist"),
    }
}

#[test]
fn inconsistency_witness_by_hand() {
    // x = 1 and x = 2
    let a = propcalc::Matrix::from_dense(&[vec![1], vec![1]]);
    let rhs = SparseVec::from_entries([(0, 1.into()), (1, 2.into())]);
    let w = inconsistency("g", &a, &rhs);
    assert_eq!(w.functional, vec![(0, "-1".to_string()), (1, "1".to_string())]);
    assert_eq!(w.pairing, "1");
}

#[test]
fn presentation_validation() {
    // words beyond the bound cannot be lifted
    let p = free(4);
    match QuasiFreePresentation::new(p.clone(), fixtures::presentation_of(&p).unwrap()) {
        Err(Error::InconsistentPresentation(m)) => assert!(m.contains("bound"), "{m}"),
        _ => panic!("expected a truncation complaint"),
    }
    // a differential word using a later generator
    let p = free(3);
    let mut pres = fixtures::presentation_of(&p).unwrap();
    pres.dwords.insert("g".into(), "g".parse().unwrap());
    assert!(matches!(QuasiFreePresentation::new(p, pres), Err(Error::InconsistentPresentation(_))));
}

#[test]
fn zigzag_free_prop_on_q2() {
    let p = free(3);
    let props = build_pdiagram_props(p.clone(), PiFault::None);
    let l = lift_identity(&props, free_presentation(&p)).unwrap();
    for product in [fixtures::q2_group_product, fixtures::q2_left_product] {
        let alg = fixtures::free_binary_algebra(p.clone(), Arc::new(fixtures::q2()), product);
        let z = functorial_path_action(&props, &l.morphism, &alg).unwrap();
        let r = check_zigzag(&z, &alg);
        assert!(r.ok(), "{r:?}");
        require_zigzag(&r).unwrap();
    }
    let alg = fixtures::free_binary_algebra(p.clone(), Arc::new(fixtures::q()), fixtures::q_multiplication);
    let z = functorial_path_action(&props, &l.morphism, &alg).unwrap();
    assert!(check_zigzag(&z, &alg).ok());
    assert_eq!(z.zx.dim(), 5);
}

#[test]
fn zigzag_unit_prop() {
    let bound = BiarityBound(2);
    let p: Arc<dyn Prop> = Arc::new(unit_prop(bound));
    let props = build_pdiagram_props(p.clone(), PiFault::None);
    let pres = QuasiFreePresentation::new(p, fixtures::unit_presentation(bound)).unwrap();
    let l = lift_identity(&props, pres).unwrap();
    assert!(l.commutes && l.check.ok());
    let alg = fixtures::unit_algebra(bound, Arc::new(fixtures::four_term()));
    let z = functorial_path_action(&props, &l.morphism, &alg).unwrap();
    assert!(check_zigzag(&z, &alg).ok());
    // the identity of P(1,1) acts by identities everywhere
    for (o, end) in z.ends.iter().enumerate() {
        let m = end.matrix_of((1, 1), &z.actions[o].apply((1, 1), &SparseVec::unit(0)));
        assert_eq!(m, propcalc::Matrix::identity(end.base().dim()));
    }
}

#[test]
fn zigzag_naturality() {
    let p = free(3);
    let props = build_pdiagram_props(p.clone(), PiFault::None);
    let l = lift_identity(&props, free_presentation(&p)).unwrap();
    for fx in fixtures::algebra_morphisms(p.clone()).into_iter().filter(|f| f.name.starts_with("free")) {
        let zx = functorial_path_action(&props, &l.morphism, &fx.source).unwrap();
        let zy = functorial_path_action(&props, &l.morphism, &fx.target).unwrap();
        let zf = propcalc::gradedlinear::kron(&propcalc::Matrix::identity(5), &fx.map.matrix);
        for b in p.bound().biarities() {
            for k in 0..p.dim(b) {
                let mx = zx.ends[0].matrix_of(b, &zx.actions[0].apply(b, &SparseVec::unit(k)));
                let my = zy.ends[0].matrix_of(b, &zy.actions[0].apply(b, &SparseVec::unit(k)));
                assert!(naturality_holds(&mx, &my, &zf, b), "{} {b:?} {k}", fx.name);
            }
        }
    }
}

#[test]
fn homotopy_zigzag() {
    let p = free(3);
    let props = build_pdiagram_props(p.clone(), PiFault::None);
    let l = lift_identity(&props, free_presentation(&p)).unwrap();
    let sq = build_corner_square(&props).unwrap();
    let m = sq.w.after(&l.morphism);
    let id = PropMorphism::identity(p.clone() as Arc<dyn Prop>);
    let alg = fixtures::free_binary_algebra(p.clone(), Arc::new(fixtures::q2()), fixtures::q2_left_product);
    let r = verify_homotopy_zigzag(&props, &m, &id, &id, &alg).unwrap();
    assert!(r.ok(), "{r:?}");

    // m violating u*∘m = (φ, ψ)
    let zero = PropMorphism::new(
        p.clone(),
        props.cal_z.clone(),
        p.bound().biarities().into_iter().map(|b| (b, propcalc::Matrix::zeros(props.cal_z.dim(b), p.dim(b)))).collect(),
    )
    .unwrap();
    assert!(matches!(verify_homotopy_zigzag(&props, &zero, &id, &id, &alg), Err(Error::CompatibilityFailure(_))));

    // X = 0
    let x0 = Arc::new(propcalc::ChainComplex::zero());
    let alg0 = fixtures::free_binary_algebra(p.clone(), x0, |_| SparseVec::new());
    let r = verify_homotopy_zigzag(&props, &m, &id, &id, &alg0).unwrap();
    assert!(r.ok());
}
