//! Small complexes, props and algebras used by tests, benches and the CLI.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::biobject::{BiObject, Biarity, BiarityBound, Perm};
use crate::gradedlinear::ChainComplex;
use crate::linalg::{Matrix, Rational, SparseVec};
use crate::propcore::{
    biarity_key, EndomorphismProp, GeneratorSpec, GeneratorWord, PAlgebra, Presentation, Prop, TruncatedProp,
};

fn complex(basis: &[(i32, &[&str])], d: &[(&str, &str, i64)]) -> ChainComplex {
    let by_deg: BTreeMap<i32, Vec<String>> =
        basis.iter().map(|(k, v)| (*k, v.iter().map(|s| s.to_string()).collect())).collect();
    let diff: Vec<(String, String, Rational)> =
        d.iter().map(|(a, b, c)| (a.to_string(), b.to_string(), Rational::from_int(*c))).collect();
    ChainComplex::from_degrees(&by_deg, &diff).expect("fixture complex")
}

/// ℚ in degree 0.
pub fn q() -> ChainComplex {
    complex(&[(0, &["x"])], &[])
}

/// ℚ² in degree 0.
pub fn q2() -> ChainComplex {
    complex(&[(0, &["e1", "e2"])], &[])
}

/// `a ↦ b` with `|a| = 1`: acyclic.
pub fn two_term_acyclic() -> ChainComplex {
    complex(&[(1, &["a"]), (0, &["b"])], &[("a", "b", 1)])
}

/// Three generators, zero differential, homology in degrees 1 and 0.
pub fn three_term() -> ChainComplex {
    complex(&[(1, &["u"]), (0, &["v", "w"])], &[])
}

/// A complex with an odd generator and homology in two degrees.
pub fn four_term() -> ChainComplex {
    complex(&[(1, &["p", "q"]), (0, &["r", "s"])], &[("p", "r", 1)])
}

/// The carriers used by the path-object suite.
pub fn test_complexes() -> Vec<(&'static str, ChainComplex)> {
    vec![("Q", q()), ("Q2", q2()), ("acyclic", two_term_acyclic()), ("three", three_term())]
}

pub fn end_q2(bound: BiarityBound) -> EndomorphismProp {
    EndomorphismProp::new(Arc::new(q2()), bound)
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Tree {
    Leaf(usize),
    Node(Box<Tree>, Box<Tree>),
}

impl Tree {
    fn label(&self) -> String {
        match self {
            Tree::Leaf(i) => (i + 1).to_string(),
            Tree::Node(a, b) => format!("g({},{})", a.label(), b.label()),
        }
    }

    fn leaves(&self, out: &mut Vec<usize>) {
        match self {
            Tree::Leaf(i) => out.push(*i),
            Tree::Node(a, b) => {
                a.leaves(out);
                b.leaves(out);
            }
        }
    }

    fn map_leaves(&self, f: &dyn Fn(usize) -> Tree) -> Tree {
        match self {
            Tree::Leaf(i) => f(*i),
            Tree::Node(a, b) => Tree::Node(Box::new(a.map_leaves(f)), Box::new(b.map_leaves(f))),
        }
    }

    /// Word with leaves read left to right as inputs `1..k`.
    fn shape_word(&self) -> GeneratorWord {
        match self {
            Tree::Leaf(_) => GeneratorWord::Unit(1),
            Tree::Node(a, b) if matches!((&**a, &**b), (Tree::Leaf(_), Tree::Leaf(_))) => GeneratorWord::gen("g"),
            Tree::Node(a, b) => {
                GeneratorWord::vert(GeneratorWord::gen("g"), GeneratorWord::horiz(a.shape_word(), b.shape_word()))
            }
        }
    }
}

/// All planar binary trees whose leaves are exactly `leaves`, in any order.
fn trees_on(leaves: &[usize]) -> Vec<Tree> {
    fn shapes(seq: &[usize]) -> Vec<Tree> {
        if seq.len() == 1 {
            return vec![Tree::Leaf(seq[0])];
        }
        let mut out = Vec::new();
        for k in 1..seq.len() {
            for l in shapes(&seq[..k]) {
                for r in shapes(&seq[k..]) {
                    out.push(Tree::Node(Box::new(l.clone()), Box::new(r)));
                }
            }
        }
        out
    }
    let mut out = Vec::new();
    for p in Perm::all(leaves.len()) {
        let seq: Vec<usize> = p.images().iter().map(|&i| leaves[i]).collect();
        out.extend(shapes(&seq));
    }
    out
}

/// Ordered lists of `n` trees whose leaf sets partition `0..m`.
fn forests(m: usize, n: usize) -> Vec<Vec<Tree>> {
    if n == 0 {
        return if m == 0 { vec![vec![]] } else { vec![] };
    }
    // assign each leaf to an output, every output nonempty
    let mut out = BTreeSet::new();
    let total = n.pow(m as u32);
    for code in 0..total {
        let mut blocks = vec![Vec::new(); n];
        let mut c = code;
        for leaf in 0..m {
            blocks[c % n].push(leaf);
            c /= n;
        }
        if blocks.iter().any(|b| b.is_empty()) {
            continue;
        }
        let mut partial: Vec<Vec<Tree>> = vec![vec![]];
        for b in &blocks {
            let ts = trees_on(b);
            partial = partial
                .into_iter()
                .flat_map(|f| {
                    ts.iter().map(move |t| {
                        let mut g = f.clone();
                        g.push(t.clone());
                        g
                    })
                })
                .collect();
        }
        out.extend(partial);
    }
    out.into_iter().collect()
}

fn forest_label(f: &[Tree]) -> String {
    if f.is_empty() {
        return "e".into();
    }
    f.iter().map(Tree::label).collect::<Vec<_>>().join(";")
}

/// The free prop on one non-symmetric degree-0 generator `g` of biarity
/// `(2, 1)`, truncated at `bound`. `P(m, n)` has a basis of ordered lists of
/// `n` binary trees whose leaves partition the `m` inputs; `dim P(k, 1) =
/// k!·Cat(k−1)`. Comes with its quasi-free presentation.
pub fn free_binary_prop(bound: BiarityBound) -> TruncatedProp {
    let bs = bound.biarities();
    let bases: BTreeMap<Biarity, Vec<Vec<Tree>>> = bs.iter().map(|&(m, n)| ((m, n), forests(m, n))).collect();
    let index: BTreeMap<Biarity, BTreeMap<Vec<Tree>, usize>> =
        bases.iter().map(|(b, fs)| (*b, fs.iter().cloned().enumerate().map(|(i, f)| (f, i)).collect())).collect();
    let components: BTreeMap<Biarity, Arc<ChainComplex>> = bases
        .iter()
        .map(|(b, fs)| {
            let basis = fs.iter().map(|f| (forest_label(f), 0)).collect();
            (*b, Arc::new(ChainComplex::new(basis, Matrix::zeros(fs.len(), fs.len())).expect("forests")))
        })
        .collect();
    let lookup = |b: Biarity, f: &Vec<Tree>| SparseVec::unit(index[&b][f]);
    let mut right = BTreeMap::new();
    let mut left = BTreeMap::new();
    for (&(m, n), fs) in &bases {
        let act_r = |s: &Perm| -> Matrix {
            let inv = s.inverse();
            let cols = fs
                .iter()
                .map(|f| {
                    let g: Vec<Tree> = f.iter().map(|t| t.map_leaves(&|p| Tree::Leaf(inv.apply(p)))).collect();
                    lookup((m, n), &g)
                })
                .collect();
            Matrix::from_columns(fs.len(), cols)
        };
        let act_l = |s: &Perm| -> Matrix {
            let cols = fs
                .iter()
                .map(|f| {
                    let mut g = f.clone();
                    for (j, t) in f.iter().enumerate() {
                        g[s.apply(j)] = t.clone();
                    }
                    lookup((m, n), &g)
                })
                .collect();
            Matrix::from_columns(fs.len(), cols)
        };
        right.insert((m, n), (1..m).map(|k| act_r(&Perm::adjacent(m, k))).collect());
        left.insert((m, n), (1..n).map(|k| act_l(&Perm::adjacent(n, k))).collect());
    }
    let biobject = BiObject::new(bound, components, right, left).expect("free prop biobject");
    let units: BTreeMap<usize, SparseVec> =
        (0..=bound.0 / 2).map(|n| (n, lookup((n, n), &(0..n).map(Tree::Leaf).collect()))).collect();
    let mut vertical = Vec::new();
    let mut horizontal = Vec::new();
    for &x in &bs {
        for &y in &bs {
            if x.0 == y.1 && bound.contains((y.0, x.1)) {
                for (i, a) in bases[&x].iter().enumerate() {
                    for (j, b) in bases[&y].iter().enumerate() {
                        let c: Vec<Tree> = a.iter().map(|t| t.map_leaves(&|p| b[p].clone())).collect();
                        vertical.push(((x, i, y, j), lookup((y.0, x.1), &c)));
                    }
                }
            }
            let out = (x.0 + y.0, x.1 + y.1);
            if bound.contains(out) {
                for (i, a) in bases[&x].iter().enumerate() {
                    for (j, b) in bases[&y].iter().enumerate() {
                        let mut c = a.clone();
                        c.extend(b.iter().map(|t| t.map_leaves(&|p| Tree::Leaf(p + x.0))));
                        horizontal.push(((x, i, y, j), lookup(out, &c)));
                    }
                }
            }
        }
    }
    let mut p = TruncatedProp::from_parts(biobject, units, vertical, horizontal);
    let mut words: BTreeMap<String, BTreeMap<String, GeneratorWord>> = BTreeMap::new();
    for (&(m, n), fs) in &bases {
        let t = words.entry(biarity_key((m, n))).or_default();
        for f in fs {
            t.insert(forest_label(f), forest_word(m, n, f));
        }
    }
    let mut generators = BTreeMap::new();
    if bound.contains((2, 1)) {
        generators.insert("g".to_string(), GeneratorSpec { biarity: "2,1".into(), label: "g(1,2)".into() });
    }
    let pres = Presentation { generators, words, dwords: BTreeMap::new() };
    p.presentation = Some(serde_json::to_value(&pres).expect("presentation"));
    p
}

fn forest_word(m: usize, n: usize, f: &[Tree]) -> GeneratorWord {
    if n == 0 {
        return GeneratorWord::Unit(0);
    }
    let mut w = f[0].shape_word();
    for t in &f[1..] {
        w = GeneratorWord::horiz(w, t.shape_word());
    }
    let mut leaves = Vec::new();
    for t in f {
        t.leaves(&mut leaves);
    }
    // leaf read at position p must carry input L[p]; the right action sends
    // leaf p to σ⁻¹(p), so σ(L[p]) = p.
    let mut sigma = vec![0; m];
    for (p, &l) in leaves.iter().enumerate() {
        sigma[l] = p;
    }
    let sigma = Perm::new(sigma).expect("leaf permutation");
    if sigma.is_identity() {
        w
    } else {
        GeneratorWord::Right(Box::new(w), sigma)
    }
}

pub fn presentation_of(p: &TruncatedProp) -> Option<Presentation> {
    p.presentation.as_ref().and_then(|v| serde_json::from_value(v.clone()).ok())
}

/// A bilinear product on `x` as an element of `End_x(2, 1)`, from
/// `products[(i, j)] = x_i·x_j`.
pub fn product_element(end: &EndomorphismProp, products: &[((usize, usize), Vec<(usize, i64)>)]) -> SparseVec {
    let d = end.base().dim();
    let mut cols = vec![SparseVec::new(); d * d];
    for ((i, j), v) in products {
        cols[i * d + j] = SparseVec::from_entries(v.iter().map(|(k, c)| (*k, Rational::from_int(*c))));
    }
    end.element_from_matrix((2, 1), &Matrix::from_columns(d, cols))
}

/// Multiplication on ℚ.
pub fn q_multiplication(end: &EndomorphismProp) -> SparseVec {
    product_element(end, &[((0, 0), vec![(0, 1)])])
}

/// The group algebra ℚ[C₂] on ℚ² with `e1` the unit and `e2² = e1`.
pub fn q2_group_product(end: &EndomorphismProp) -> SparseVec {
    product_element(
        end,
        &[((0, 0), vec![(0, 1)]), ((0, 1), vec![(1, 1)]), ((1, 0), vec![(1, 1)]), ((1, 1), vec![(0, 1)])],
    )
}

/// A non-commutative product on ℚ²: `e1·e1 = e1`, `e1·e2 = e2`, others 0.
pub fn q2_left_product(end: &EndomorphismProp) -> SparseVec {
    product_element(end, &[((0, 0), vec![(0, 1)]), ((0, 1), vec![(1, 1)])])
}

/// An algebra over the free (2,1)-generator prop from a product on `x`.
pub fn free_binary_algebra(
    prop: Arc<TruncatedProp>,
    x: Arc<ChainComplex>,
    product: impl Fn(&EndomorphismProp) -> SparseVec,
) -> PAlgebra {
    let end = Arc::new(EndomorphismProp::new(x, prop.bound()));
    let pres = presentation_of(&prop).expect("free prop has a presentation");
    let images = BTreeMap::from([("g".to_string(), product(&end))]);
    PAlgebra::from_generators(prop, end, &pres, &images).expect("free algebra")
}

/// The initial prop acting on `x` through `σ ↦ σ_*`.
pub fn unit_algebra(bound: BiarityBound, x: Arc<ChainComplex>) -> PAlgebra {
    let prop = Arc::new(crate::propcore::unit_prop(bound));
    let end = Arc::new(EndomorphismProp::new(x, bound));
    let maps = bound
        .biarities()
        .into_iter()
        .map(|b| {
            let cols = if b.0 == b.1 {
                Perm::all(b.0).iter().map(|s| end.left_action_raw(b, s, &end.unit_raw(b.0)).expect("action")).collect()
            } else {
                Vec::new()
            };
            (b, Matrix::from_columns(end.dim(b), cols))
        })
        .collect();
    PAlgebra::new(prop, end, maps).expect("unit algebra")
}

/// A morphism of `P`-algebras `f: X → Y`, for naturality checks.
pub struct AlgebraMorphismFixture {
    pub name: &'static str,
    pub source: PAlgebra,
    pub target: PAlgebra,
    pub map: crate::gradedlinear::ChainMap,
}

fn chain_map(x: &Arc<ChainComplex>, y: &Arc<ChainComplex>, rows: &[Vec<i64>]) -> crate::gradedlinear::ChainMap {
    crate::gradedlinear::ChainMap::new(x.clone(), y.clone(), Matrix::from_dense(rows)).expect("fixture chain map")
}

/// Algebra morphisms over the unit prop (any chain map) and over the free
/// (2,1) prop (maps of algebras). `prop` must be [`free_binary_prop`].
pub fn algebra_morphisms(prop: Arc<TruncatedProp>) -> Vec<AlgebraMorphismFixture> {
    let bound = prop.bound();
    let (q, q2) = (Arc::new(q()), Arc::new(q2()));
    let (acyc, four) = (Arc::new(two_term_acyclic()), Arc::new(four_term()));
    let mul_q = || free_binary_algebra(prop.clone(), q.clone(), q_multiplication);
    let group = || free_binary_algebra(prop.clone(), q2.clone(), q2_group_product);
    let left = || free_binary_algebra(prop.clone(), q2.clone(), q2_left_product);
    vec![
        AlgebraMorphismFixture {
            name: "unit: a↦p, b↦r",
            source: unit_algebra(bound, acyc.clone()),
            target: unit_algebra(bound, four.clone()),
            map: chain_map(&acyc, &four, &[vec![1, 0], vec![0, 0], vec![0, 1], vec![0, 0]]),
        },
        AlgebraMorphismFixture {
            name: "unit: ℚ² → ℚ, sum",
            source: unit_algebra(bound, q2.clone()),
            target: unit_algebra(bound, q.clone()),
            map: chain_map(&q2, &q, &[vec![1, 1]]),
        },
        AlgebraMorphismFixture {
            name: "free: ℚ → ℚ[C₂], 1 ↦ e1",
            source: mul_q(),
            target: group(),
            map: chain_map(&q, &q2, &[vec![1], vec![0]]),
        },
        AlgebraMorphismFixture {
            name: "free: ℚ[C₂] → ℚ, augmentation",
            source: group(),
            target: mul_q(),
            map: chain_map(&q2, &q, &[vec![1, 1]]),
        },
        AlgebraMorphismFixture {
            name: "free: id on ℚ² with the left product",
            source: left(),
            target: left(),
            map: chain_map(&q2, &q2, &[vec![1, 0], vec![0, 1]]),
        },
    ]
}

/// The unit prop has no generators: `σ = σ·1_n`.
pub fn unit_presentation(bound: BiarityBound) -> Presentation {
    let words = (0..=bound.0 / 2)
        .map(|n| {
            let table = Perm::all(n)
                .into_iter()
                .map(|s| (s.to_string(), GeneratorWord::Left(s, Box::new(GeneratorWord::Unit(n)))))
                .collect();
            (biarity_key((n, n)), table)
        })
        .collect();
    Presentation { generators: BTreeMap::new(), words, dwords: BTreeMap::new() }
}
