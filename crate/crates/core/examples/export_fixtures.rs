//! Regenerates the JSON fixtures shipped with the CLI from the in-code
//! fixtures. Run from the workspace root:
//! `cargo run -p propcalc-core --example export_fixtures`.

use propcalc::biobject::BiarityBound;
use propcalc::fixtures::*;
use propcalc::gradedlinear::ComplexJson;
use propcalc::pathobject::make_z;
use propcalc::propcore::*;
use std::sync::Arc;

fn write<T: serde::Serialize>(name: &str, v: &T) {
    let v = serde_json::to_value(v).unwrap();
    std::fs::write(format!("crates/cli/fixtures/{name}"), serde_json::to_string_pretty(&v).unwrap() + "\n").unwrap();
}

fn main() {
    write("Z.json", &ComplexJson::from_complex(&make_z().complex));
    for (n, c) in [
        ("q", q()),
        ("q2", q2()),
        ("two_term", two_term_acyclic()),
        ("three_term", three_term()),
        ("four_term", four_term()),
    ] {
        write(&format!("{n}.json"), &ComplexJson::from_complex(&c));
    }
    let mut u = unit_prop(BiarityBound(2)).to_json();
    u.presentation = Some(serde_json::to_value(unit_presentation(BiarityBound(2))).unwrap());
    write("unit_prop.json", &u);
    let fp = Arc::new(free_binary_prop(BiarityBound(3)));
    write("free_prop.json", &fp.to_json());
    let pres = presentation_of(&fp).unwrap();
    write("free_presentation.json", &pres);
    let e = tabulate(&end_q2(BiarityBound(2))).unwrap().to_json();
    write("end_q2.json", &e);
    let mut bad = e.clone();
    let (_, t) = bad.horizontal.iter_mut().find(|(k, _)| k.as_str() == "1,0|0,1").unwrap();
    let (_, v) = t.iter_mut().next().unwrap();
    for c in v.values_mut() {
        *c = c.clone() + c.clone();
    }
    write("bad_interchange.json", &bad);
    for (n, x, f) in [
        ("alg_q_mult", q(), q_multiplication as fn(&EndomorphismProp) -> propcalc::SparseVec),
        ("alg_q2_left", q2(), q2_left_product),
        ("alg_q2_group", q2(), q2_group_product),
    ] {
        let a = free_binary_algebra(fp.clone(), Arc::new(x), f);
        write(&format!("{n}.json"), &AlgebraJson::from_algebra(&a, &pres).unwrap());
    }
    // d∘d ≠ 0, written by hand
    std::fs::write(
        "crates/cli/fixtures/bad_d2.json",
        "{\"degrees\":{\"1\":[\"a\"],\"0\":[\"b\"],\"-1\":[\"c\"]},\"differential\":{\"a\":{\"b\":\"1\"},\"b\":{\"c\":\"1\"}}}\n",
    )
    .unwrap();
    write("alg_unit_q.json", &AlgebraJson { complex: ComplexJson::from_complex(&q()), operations: Default::default() });
}
