//! Acceptance harness: one PASS/FAIL line per criterion, all exact.
//!
//! Runs without the libtest harness so the lines land in the test output.
//! The process fails only when a result departs from what is documented in
//! the README; a criterion that is known not to hold prints FAIL together
//! with the reason.

use std::path::Path;
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use propcalc::biobject::{tuple_index, BiarityBound};
use propcalc::fixtures;
use propcalc::gradedlinear::{equalizer, homology, pullback, tensor, tensor_power, ChainComplex, ChainMap, GradedDims};
use propcalc::lifting::{check_zigzag, functorial_path_action, lift, LiftProblem, QuasiFreePresentation};
use propcalc::pathobject::{g_d0_d1, make_z, path_object_unchecked, z_report};
use propcalc::pdiagramprops::{
    build_end_zp, build_ev, build_pdiagram_props, cal_y_constraint, cal_z_constraint, check_naturality,
    check_naturality_z, check_pi_acyclic_fibration, dbar_index_set, dbar_index_set_brute, dbar_pair_matrix,
    pi_morphism, pushout_product_witness, PiFault,
};
use propcalc::propcore::{check_prop_axioms, diagram_endomorphism_prop, unit_prop, DiagramShape, Prop, PropMorphism};
use propcalc::{Matrix, Rational, SparseVec};

// dense exact linear algebra, kept apart from the library's sparse echelon code

type Dense = Vec<Vec<Rational>>;

fn dense(m: &Matrix) -> Dense {
    (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| m.get(i, j)).collect()).collect()
}

fn rank(mut a: Dense) -> usize {
    let cols = a.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv = a[r][c].recip();
        let pivot: Vec<Rational> = a[r].iter().map(|x| x * &inv).collect();
        for (i, row) in a.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x -= &(&f * y);
                }
            }
        }
        a[r] = pivot;
        r += 1;
    }
    r
}

fn nullity(a: &Dense, cols: usize) -> usize {
    cols - rank(a.clone())
}

fn dkron(a: &Dense, b: &Dense) -> Dense {
    let (bc, ac) = (b.first().map_or(0, |r| r.len()), a.first().map_or(0, |r| r.len()));
    let mut out = vec![vec![Rational::zero(); ac * bc]; a.len() * b.len()];
    for (i, ar) in a.iter().enumerate() {
        for (j, x) in ar.iter().enumerate() {
            for (k, br) in b.iter().enumerate() {
                for (l, y) in br.iter().enumerate() {
                    out[i * b.len() + k][j * bc + l] = x * y;
                }
            }
        }
    }
    out
}

fn dpower(a: &Dense, n: usize) -> Dense {
    (0..n).fold(vec![vec![Rational::one()]], |acc, _| dkron(&acc, a))
}

fn columns(vs: &[SparseVec], len: usize) -> Dense {
    (0..len).map(|i| vs.iter().map(|v| v.get(i)).collect()).collect()
}

struct Outcome {
    pass: bool,
    detail: String,
    /// The result is the one documented; `false` fails the harness.
    as_documented: bool,
}

fn ok(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail, as_documented: pass }
}

fn within(pass: bool, t: Duration, limit: f64) -> bool {
    pass && t.as_secs_f64() < limit
}

fn criterion1() -> Outcome {
    let t = Instant::now();
    let r = z_report(4);
    let exact = r.dims == GradedDims::from_pairs(&[(0, 3), (-1, 2)])
        && r.homology == GradedDims::from_pairs(&[(0, 1)])
        && r.tilde_acyclic
        && r.s_m_acyclic.len() == 4
        && r.s_m_acyclic.values().all(|&b| b);
    let e = t.elapsed();
    ok(within(exact, e, 1.0), format!("dims {:?}, homology {:?}, S_1..S_4 acyclic, {e:.2?}", r.dims.0, r.homology.0))
}

fn criterion2() -> Outcome {
    let t = Instant::now();
    let mut pass = homology(&fixtures::three_term()).0.values().filter(|&&d| d > 0).count() == 2;
    let mut names = Vec::new();
    for (name, x) in fixtures::test_complexes() {
        let f = path_object_unchecked(Arc::new(x)).expect("factorization");
        let want = ["(d0,d1)∘s = Δ", "s degreewise injective", "s quasi-iso", "(d0,d1) degreewise surjective"];
        pass &= want.iter().all(|w| f.verdicts.iter().any(|v| v.check == *w && v.pass));
        names.push(name);
    }
    let e = t.elapsed();
    ok(within(pass, e, 5.0), format!("X in {names:?}, {e:.2?}"))
}

fn criterion3() -> Outcome {
    let mut pass = true;
    for (m, size) in [(1, 2), (2, 4), (3, 8)] {
        // words over {τ, ρ₀} = digits {0, 1}
        let mut closed: Vec<usize> = (0..1usize << m)
            .map(|bits| tuple_index(&(0..m).map(|k| (bits >> (m - 1 - k)) & 1).collect::<Vec<_>>(), 5))
            .collect();
        closed.sort();
        let j = dbar_index_set(1, m);
        pass &= j.len() == size && j == closed && dbar_index_set_brute(1, m) == closed;
    }
    // d̄_pair on every basis triple (j, i, p): e_j*⊗e_i⊗p ↦ Σ_c g(e_i)_c e_j*⊗p_c⊗p
    let mut triples = 0;
    for (_, p) in props(2) {
        let zp = build_end_zp(p.clone());
        for m in 0..=2 {
            for n in 0..=2 {
                let b = (m, n);
                if !p.bound().contains(b) {
                    continue;
                }
                let g = g_d0_d1(n).matrix;
                let dp = p.dim(b);
                let mat = dbar_pair_matrix(&zp, b);
                for j in 0..5usize.pow(m as u32) {
                    for i in 0..5usize.pow(n as u32) {
                        for q in 0..dp {
                            let want = SparseVec::from_entries((0..2).map(|c| ((j * 2 + c) * dp + q, g.get(c, i))));
                            pass &= mat.col(zp.index(b, j, i, q)) == &want;
                            triples += 1;
                        }
                    }
                }
            }
        }
    }
    ok(pass, format!("J sizes 2, 4, 8 both ways; d̄_pair on {triples} basis triples"))
}

fn props(bound: usize) -> Vec<(&'static str, Arc<dyn Prop>)> {
    let b = BiarityBound(bound);
    vec![
        ("unit", Arc::new(unit_prop(b))),
        ("End_Q2", Arc::new(fixtures::end_q2(b))),
        ("free", Arc::new(fixtures::free_binary_prop(b))),
    ]
}

fn criterion4() -> Outcome {
    let t = Instant::now();
    let mut pass = true;
    let mut checked = 0;
    for (_, p) in props(2) {
        let zp = build_end_zp(p.clone());
        let r = check_prop_axioms(zp.prop.as_ref());
        checked += r.laws.iter().map(|l| l.checked).sum::<usize>();
        pass &= r.ok();
        pass &= p
            .bound()
            .biarities()
            .into_iter()
            .all(|(m, n)| zp.prop.dim((m, n)) == 5usize.pow((m + n) as u32) * p.dim((m, n)));
    }
    let e = t.elapsed();
    ok(within(pass, e, 60.0), format!("{checked} axiom instances, dimension formula, {e:.2?}"))
}

fn criterion5() -> Outcome {
    let t = Instant::now();
    let mut pass = true;
    let mut documented = true;
    let mut failing = Vec::new();
    for (name, p) in props(4) {
        let r = check_pi_acyclic_fibration(&build_pdiagram_props(p, PiFault::None));
        pass &= r.ok();
        // documented: π fails exactly where P(m, 0) ≠ 0 with m ≥ 1
        for c in &r.components {
            let good = c.surjective && c.quasi_iso;
            documented &= good != c.empty_outputs;
            if !good {
                failing.push(format!("{name}({},{})", c.component.0, c.component.1));
            }
        }
        documented &= r.units_ok();
    }
    let mut pp_failing = Vec::new();
    for m in 0..=2 {
        for n in 0..=2 {
            let w = pushout_product_witness(m, n).expect("witness");
            pass &= w.ok();
            documented &= w.ok() == (n > 0);
            if !w.ok() {
                pp_failing.push(format!("({m},{n})"));
            }
        }
    }
    let e = t.elapsed();
    let pass = within(pass, e, 300.0);
    let detail = if pass {
        format!("π and pushout-product pass, {e:.2?}")
    } else {
        format!(
            "π fails at {} (no elements lie over P(m,0) when n = 0); pushout-product fails at {} (g is not onto for n = 0); all n ≥ 1 pass, {e:.2?}",
            failing.join(" "),
            pp_failing.join(" ")
        )
    };
    Outcome { pass, detail, as_documented: documented && t.elapsed().as_secs_f64() < 300.0 }
}

fn criterion6() -> Outcome {
    let p = Arc::new(fixtures::free_binary_prop(BiarityBound(3)));
    let props = build_pdiagram_props(p.clone(), PiFault::None);
    let pres = QuasiFreePresentation::new(p.clone(), fixtures::presentation_of(&p).expect("presentation"))
        .expect("presentation");
    let problem =
        LiftProblem {
            presentation: pres, q: pi_morphism(&props).expect("π"), base: PropMorphism::identity(p.clone())
        };
    let l = match lift(&problem) {
        Ok(l) => l,
        Err(e) => return ok(false, e.to_string()),
    };
    let alg = fixtures::free_binary_algebra(p, Arc::new(fixtures::q2()), fixtures::q2_left_product);
    let z = functorial_path_action(&props, &l.morphism, &alg).expect("zigzag");
    let r = check_zigzag(&z, &alg);
    ok(
        l.commutes && l.check.ok() && r.ok(),
        format!(
            "lift of id_P through π at bound 3; X = Q2 with e1·e1 = e1, e1·e2 = e2; {} violations",
            r.violations.len()
        ),
    )
}

fn criterion7() -> Outcome {
    let free = Arc::new(fixtures::free_binary_prop(BiarityBound(3)));
    let mut pass = true;
    let mut names = Vec::new();
    for fx in fixtures::algebra_morphisms(free) {
        let props = build_pdiagram_props(fx.source.prop.clone(), PiFault::None);
        let ex = build_ev(&props, &fx.source).expect("ev");
        let ey = build_ev(&props, &fx.target).expect("ev");
        pass &= check_naturality_z(&ex.z, &ey.z, &fx.map).is_empty();
        for (a, b) in [(&ex.cal_z, &ey.cal_z), (&ex.cal_y, &ey.cal_y), (&ex.v, &ey.v), (&ex.t, &ey.t)] {
            pass &= check_naturality(a, b, &fx.map).is_empty();
        }
        names.push(fx.name);
    }
    ok(pass, format!("{} algebra morphisms, diagrams Z, 𝒵, 𝒴, 𝒱, 𝒯", names.len()))
}

/// The pullback of `f, g` as a subspace of `A ⊕ B` against the kernel of
/// `[f | −g]`, degree by degree.
fn pullback_matches(f: &ChainMap, g: &ChainMap) -> bool {
    let pb = pullback(f, g).expect("pullback");
    let (a, b, pc) = (&f.source, &g.source, pb.complex().clone());
    let vs: Vec<SparseVec> =
        (0..pc.dim()).map(|k| pb.to_a.matrix.col(k).add(&pb.to_b.matrix.col(k).shifted(a.dim()))).collect();
    let (fd, gd) = (dense(&f.matrix), dense(&g.matrix));
    let mut degrees: Vec<i32> = a.support().into_iter().chain(b.support()).collect();
    degrees.sort();
    degrees.dedup();
    degrees.into_iter().all(|deg| {
        let (ia, ib) = (a.in_degree(deg), b.in_degree(deg));
        let rows = f.target.dim();
        let block: Dense = (0..rows)
            .map(|r| ia.iter().map(|&j| fd[r][j].clone()).chain(ib.iter().map(|&j| -gd[r][j].clone())).collect())
            .collect();
        let cols = ia.len() + ib.len();
        let mine: Vec<&SparseVec> = pc.in_degree(deg).iter().map(|&k| &vs[k]).collect();
        let restricted: Vec<SparseVec> = mine
            .iter()
            .map(|v| {
                let idx = ia.iter().copied().chain(ib.iter().map(|&j| a.dim() + j));
                SparseVec::from_entries(idx.enumerate().map(|(c, i)| (c, v.get(i))))
            })
            .collect();
        let in_kernel = restricted.iter().all(|v| {
            block
                .iter()
                .all(|row| row.iter().enumerate().fold(Rational::zero(), |acc, (c, x)| acc + x * &v.get(c)).is_zero())
        });
        let count = if rows == 0 { cols } else { nullity(&block, cols) };
        in_kernel && mine.len() == count && rank(columns(&restricted, cols)) == count
    })
}

fn equalizer_matches(f: &ChainMap, g: &ChainMap) -> bool {
    let e = equalizer(f, g).expect("equalizer");
    let d = dense(&f.matrix);
    let gd = dense(&g.matrix);
    let a = &f.source;
    a.support().into_iter().all(|deg| {
        let ia = a.in_degree(deg);
        let block: Dense = (0..f.target.dim()).map(|r| ia.iter().map(|&j| &d[r][j] - &gd[r][j]).collect()).collect();
        let count = if block.is_empty() { ia.len() } else { nullity(&block, ia.len()) };
        let mine: Vec<SparseVec> = e
            .complex
            .in_degree(deg)
            .iter()
            .map(|&k| {
                SparseVec::from_entries(ia.iter().enumerate().map(|(c, &j)| (c, e.embed(&SparseVec::unit(k)).get(j))))
            })
            .collect();
        let in_kernel = mine.iter().all(|v| {
            block
                .iter()
                .all(|row| row.iter().enumerate().fold(Rational::zero(), |acc, (c, x)| acc + x * &v.get(c)).is_zero())
        });
        in_kernel && mine.len() == count && rank(columns(&mine, ia.len())) == count
    })
}

fn arrow(x: &Arc<ChainComplex>, y: &Arc<ChainComplex>, m: &[Vec<i64>]) -> ChainMap {
    ChainMap::new(x.clone(), y.clone(), Matrix::from_dense(m)).expect("chain map")
}

/// Components of the diagram prop against the solution space of
/// `f^{⊗n}φ_s = φ_t f^{⊗m}` over all families of matrices.
fn diagram_matches(shape: DiagramShape, bound: usize) -> bool {
    let dp = diagram_endomorphism_prop(shape.clone(), BiarityBound(bound));
    let dims: Vec<usize> = shape.objects.iter().map(|(_, x)| x.dim()).collect();
    BiarityBound(bound).biarities().into_iter().all(|(m, n)| {
        let sizes: Vec<(usize, usize)> = dims.iter().map(|d| (d.pow(n as u32), d.pow(m as u32))).collect();
        let offsets: Vec<usize> = sizes
            .iter()
            .scan(0, |acc, (r, c)| {
                let o = *acc;
                *acc += r * c;
                Some(o)
            })
            .collect();
        let unknowns: usize = sizes.iter().map(|(r, c)| r * c).sum();
        let mut system: Dense = Vec::new();
        for a in &shape.arrows {
            let f = dense(&a.map.matrix);
            let (fm, fn_) = (dpower(&f, m), dpower(&f, n));
            let (s, t) = (a.source, a.target);
            for r in 0..sizes[t].0 {
                for c in 0..sizes[s].1 {
                    let mut row = vec![Rational::zero(); unknowns];
                    for k in 0..sizes[s].0 {
                        row[offsets[s] + k * sizes[s].1 + c] += &fn_[r][k];
                    }
                    for k in 0..sizes[t].1 {
                        row[offsets[t] + r * sizes[t].1 + k] -= &fm[k][c];
                    }
                    system.push(row);
                }
            }
        }
        let count = if system.is_empty() { unknowns } else { nullity(&system, unknowns) };
        // the prop's basis, flattened to families of matrices
        let fams: Vec<SparseVec> = (0..dp.dim((m, n)))
            .map(|i| {
                let fam = dp.family((m, n), &SparseVec::unit(i));
                let mut entries = Vec::new();
                for (o, v) in fam.iter().enumerate() {
                    let mat = dp.ends[o].matrix_of((m, n), v);
                    for r in 0..sizes[o].0 {
                        for c in 0..sizes[o].1 {
                            entries.push((offsets[o] + r * sizes[o].1 + c, mat.get(r, c)));
                        }
                    }
                }
                SparseVec::from_entries(entries)
            })
            .collect();
        let solves = fams.iter().all(|v| {
            system
                .iter()
                .all(|row| row.iter().enumerate().fold(Rational::zero(), |acc, (c, x)| acc + x * &v.get(c)).is_zero())
        });
        fams.len() == count && solves && rank(columns(&fams, unknowns)) == count
    })
}

fn criterion8() -> Outcome {
    let mut pass = true;
    let mut cases = 0;
    let z = Arc::new(make_z().complex);
    let complexes: Vec<Arc<ChainComplex>> = fixtures::test_complexes().into_iter().map(|(_, c)| Arc::new(c)).collect();
    for x in &complexes {
        let f = path_object_unchecked(x.clone()).expect("path object");
        pass &= pullback_matches(&f.d0, &f.d1);
        pass &= pullback_matches(&f.pair, &f.diag);
        pass &= equalizer_matches(&f.d0, &f.d1);
        pass &= equalizer_matches(&f.s.after(&f.d0).expect("composite"), &ChainMap::identity(f.zx.clone()));
        cases += 4;
        for y in &complexes {
            let o = Arc::new(ChainComplex::zero());
            pass &= pullback_matches(&ChainMap::zero(x.clone(), o.clone()), &ChainMap::zero(y.clone(), o));
            cases += 1;
        }
    }
    for n in 0..=2 {
        let zn = Arc::new(tensor_power(&z, n));
        let g = g_d0_d1(n);
        let g = ChainMap::new(zn.clone(), g.target.clone(), g.matrix.clone()).expect("g");
        pass &= pullback_matches(&g, &g);
        let zz = Arc::new(tensor(&zn, &z));
        pass &= equalizer_matches(&ChainMap::identity(zz.clone()), &ChainMap::identity(zz));
        cases += 2;
    }
    // the pullbacks defining 𝒵 and 𝒴 at bound 2
    for (_, p) in props(2) {
        let props = build_pdiagram_props(p.clone(), PiFault::None);
        for b in p.bound().biarities() {
            let cz = cal_z_constraint(&props.zp, b);
            let cy = cal_y_constraint(&props.zp, b, PiFault::None);
            pass &= props.cal_z.dim(b) == nullity(&dense(&cz), cz.ncols());
            pass &= props.cal_y.dim(b) == nullity(&dense(&cy), cy.ncols());
            cases += 2;
        }
    }
    let (q, q2, tt) = (Arc::new(fixtures::q()), Arc::new(fixtures::q2()), Arc::new(fixtures::two_term_acyclic()));
    let obj = |n: &str, x: &Arc<ChainComplex>| (n.to_string(), x.clone());
    let shapes = vec![
        Ok(DiagramShape::new(vec![obj("X", &q2)])),
        DiagramShape::new(vec![obj("X", &q2), obj("Y", &q)]).arrow("p", 0, 1, arrow(&q2, &q, &[vec![1, 0]])),
        DiagramShape::new(vec![obj("X", &q2), obj("Y", &q2)])
            .arrow("id", 0, 1, arrow(&q2, &q2, &[vec![1, 0], vec![0, 1]]))
            .and_then(|s| s.arrow("u", 0, 1, arrow(&q2, &q2, &[vec![1, 1], vec![0, 1]]))),
        DiagramShape::new(vec![obj("X", &q2), obj("X0", &q), obj("X1", &q)])
            .arrow("p0", 0, 1, arrow(&q2, &q, &[vec![1, 0]]))
            .and_then(|s| s.arrow("p1", 0, 2, arrow(&q2, &q, &[vec![0, 1]]))),
        DiagramShape::new(vec![obj("A", &q), obj("B", &q2), obj("C", &q2)])
            .arrow("i", 0, 1, arrow(&q, &q2, &[vec![1], vec![1]]))
            .and_then(|s| s.arrow("u", 1, 2, arrow(&q2, &q2, &[vec![1, 1], vec![0, 1]]))),
        DiagramShape::new(vec![obj("T", &tt), obj("Q", &q), obj("T'", &tt)])
            .arrow("e", 1, 0, arrow(&q, &tt, &[vec![0], vec![1]]))
            .and_then(|s| s.arrow("two", 0, 2, arrow(&tt, &tt, &[vec![2, 0], vec![0, 2]]))),
    ];
    let mut diagrams = 0;
    for s in shapes {
        let s = s.expect("diagram");
        pass &= diagram_matches(s, 3);
        diagrams += 1;
    }
    ok(pass, format!("{cases} pullbacks and equalizers, {diagrams} diagrams up to bound 3"))
}

fn criterion9() -> Outcome {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let run = |threads: usize| {
        let o = Command::new(env!("CARGO_BIN_EXE_propcalc"))
            .args(["pipeline", "--prop", "free_prop.json", "--algebra", "alg_q2_left.json", "--canonical"])
            .current_dir(&dir)
            .env("PROPCALC_THREADS", threads.to_string())
            .output()
            .expect("propcalc runs");
        (o.status.success(), o.stdout)
    };
    let runs = [run(1), run(1), run(4), run(4)];
    let pass = runs.iter().all(|(s, out)| *s && out == &runs[0].1 && !out.is_empty());
    ok(pass, format!("4 canonical pipeline reports, {} bytes each, threads 1 and 4", runs[0].1.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("Z fixture", criterion1),
        ("path object of X", criterion2),
        ("d̄ index sets and d̄_pair", criterion3),
        ("End_Z(P) axioms and dimensions", criterion4),
        ("π acyclic fibration and pushout-product", criterion5),
        ("lift and zigzag", criterion6),
        ("naturality of ev_X", criterion7),
        ("limits and diagram props against oracles", criterion8),
        ("determinism", criterion9),
    ];
    let mut unexpected = Vec::new();
    for (k, (name, f)) in criteria.iter().enumerate() {
        let o = f();
        println!("criterion {}: {} {name}: {}", k + 1, if o.pass { "PASS" } else { "FAIL" }, o.detail);
        if !o.as_documented {
            unexpected.push(k + 1);
        }
    }
    if !unexpected.is_empty() {
        eprintln!("criteria departing from the documented results: {unexpected:?}");
        std::process::exit(1);
    }
}
