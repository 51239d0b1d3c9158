use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use propcalc::biobject::BiarityBound;
use propcalc::fixtures;
use propcalc::gradedlinear::{homology, tensor_power};
use propcalc::lifting::{lift, LiftProblem, QuasiFreePresentation};
use propcalc::pathobject::make_z;
use propcalc::pdiagramprops::{build_end_zp, build_pdiagram_props, check_pi_acyclic_fibration, pi_morphism, PiFault};
use propcalc::propcore::{check_prop_axioms, unit_prop, Prop, PropMorphism};

fn z_powers(c: &mut Criterion) {
    let z = make_z().complex;
    let mut g = c.benchmark_group("homology of Z^m");
    for m in 1..=4 {
        let zm = tensor_power(&z, m);
        g.bench_with_input(BenchmarkId::from_parameter(m), &zm, |b, zm| b.iter(|| homology(zm)));
    }
    g.finish();
}

fn end_zp_axioms(c: &mut Criterion) {
    let p: Arc<dyn Prop> = Arc::new(unit_prop(BiarityBound(2)));
    let zp = build_end_zp(p);
    c.bench_function("axioms of End_Z(P), unit prop, bound 2", |b| b.iter(|| check_prop_axioms(zp.prop.as_ref())));
}

fn diagram_props(c: &mut Criterion) {
    let mut g = c.benchmark_group("End_𝒴(P) and π");
    g.sample_size(10);
    for bound in [2, 3, 4] {
        let p: Arc<dyn Prop> = Arc::new(fixtures::free_binary_prop(BiarityBound(bound)));
        g.bench_with_input(BenchmarkId::new("build", bound), &p, |b, p| {
            b.iter(|| build_pdiagram_props(p.clone(), PiFault::None))
        });
        let props = build_pdiagram_props(p, PiFault::None);
        g.bench_with_input(BenchmarkId::new("check π", bound), &props, |b, props| {
            b.iter(|| check_pi_acyclic_fibration(props))
        });
    }
    g.finish();
}

fn lifting(c: &mut Criterion) {
    let p = Arc::new(fixtures::free_binary_prop(BiarityBound(3)));
    let props = build_pdiagram_props(p.clone(), PiFault::None);
    let pres = fixtures::presentation_of(&p).expect("presentation");
    c.bench_function("lift id through π, free prop, bound 3", |b| {
        b.iter(|| {
            let problem = LiftProblem {
                presentation: QuasiFreePresentation::new(p.clone(), pres.clone()).expect("presentation"),
                q: pi_morphism(&props).expect("π"),
                base: PropMorphism::identity(p.clone()),
            };
            lift(&problem).expect("lift")
        })
    });
}

criterion_group!(benches, z_powers, end_zp_axioms, diagram_props, lifting);
criterion_main!(benches);
