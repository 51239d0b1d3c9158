use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use super::{odd_product, sign_of, Prop};
use crate::biobject::{Biarity, Perm};
use crate::error::Result;
use crate::linalg::SparseVec;

#[derive(Clone, Debug, Serialize)]
pub struct Violation {
    pub law: String,
    /// Operands as `label@(m,n)`.
    pub operands: Vec<String>,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct LawReport {
    pub law: String,
    /// Number of basis instances compared.
    pub checked: usize,
    pub violations: Vec<Violation>,
    /// Operand biarities inside the bound whose composite falls outside it.
    pub skipped_by_truncation: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomReport {
    pub bound: usize,
    pub laws: Vec<LawReport>,
}

impl AxiomReport {
    pub fn ok(&self) -> bool {
        self.laws.iter().all(|l| l.violations.is_empty())
    }

    pub fn violations(&self) -> impl Iterator<Item = &Violation> {
        self.laws.iter().flat_map(|l| l.violations.iter())
    }

    pub fn law(&self, name: &str) -> Option<&LawReport> {
        self.laws.iter().find(|l| l.law == name)
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.laws {
            writeln!(
                f,
                "{:<24} checked {:>8}  violations {:>4}  skipped {}",
                l.law,
                l.checked,
                l.violations.len(),
                l.skipped_by_truncation.len()
            )?;
            for v in l.violations.iter().take(5) {
                writeln!(f, "    {} : {}", v.operands.join(", "), v.detail)?;
            }
        }
        Ok(())
    }
}

struct Ctx<'a> {
    p: &'a dyn Prop,
}

impl Ctx<'_> {
    fn dim(&self, b: Biarity) -> usize {
        self.p.dim(b)
    }

    fn deg(&self, b: Biarity, i: usize) -> i32 {
        self.p.component(b).degree(i)
    }

    fn name(&self, b: Biarity, i: usize) -> String {
        format!("{}@({},{})", self.p.component(b).label(i), b.0, b.1)
    }

    fn show(&self, b: Biarity, v: &SparseVec) -> String {
        self.p.component(b).show(v)
    }

    fn v(&self, x: Biarity, a: &SparseVec, y: Biarity, b: &SparseVec) -> Result<SparseVec> {
        self.p.vertical_raw(x, a, y, b)
    }

    fn h(&self, x: Biarity, a: &SparseVec, y: Biarity, b: &SparseVec) -> Result<SparseVec> {
        self.p.horizontal_raw(x, a, y, b)
    }
}

fn e(i: usize) -> SparseVec {
    SparseVec::unit(i)
}

/// One comparison: `Ok(None)` when both sides agree.
fn compare(
    ctx: &Ctx,
    law: &str,
    out: Biarity,
    operands: impl FnOnce() -> Vec<String>,
    sides: Result<(SparseVec, SparseVec)>,
) -> Option<Violation> {
    match sides {
        Ok((l, r)) if l == r => None,
        Ok((l, r)) => Some(Violation {
            law: law.into(),
            operands: operands(),
            detail: format!("{} ≠ {}", ctx.show(out, &l), ctx.show(out, &r)),
        }),
        Err(err) => Some(Violation { law: law.into(), operands: operands(), detail: err.to_string() }),
    }
}

fn law_report(law: &str, parts: Vec<(usize, Vec<Violation>)>, skipped: Vec<String>) -> LawReport {
    let checked = parts.iter().map(|p| p.0).sum();
    let violations = parts.into_iter().flat_map(|p| p.1).collect();
    LawReport { law: law.into(), checked, violations, skipped_by_truncation: skipped }
}

fn fmt_b(bs: &[Biarity]) -> String {
    bs.iter().map(|(m, n)| format!("({m},{n})")).collect::<Vec<_>>().join("")
}

/// Checks every prop axiom on all basis tuples whose composites stay within
/// the bound. Composites leaving the bound are listed as skipped.
pub fn check_prop_axioms(p: &dyn Prop) -> AxiomReport {
    let ctx = Ctx { p };
    let bound = p.bound();
    let bs = bound.biarities();
    let inb = |b: Biarity| bound.contains(b);
    let laws = vec![
        differential(&ctx, &bs),
        actions(&ctx, &bs),
        vertical_assoc(&ctx, &bs, &inb),
        horizontal_assoc(&ctx, &bs, &inb),
        interchange(&ctx, &bs, &inb),
        units(&ctx, &bs, &inb),
        vertical_equivariance(&ctx, &bs, &inb),
        horizontal_equivariance(&ctx, &bs, &inb),
        symmetry(&ctx, &bs, &inb),
    ];
    AxiomReport { bound: bound.0, laws }
}

fn differential(ctx: &Ctx, bs: &[Biarity]) -> LawReport {
    let p = ctx.p;
    let law = "differential";
    let bound = p.bound();
    let mut combos = Vec::new();
    for &x in bs {
        for &y in bs {
            combos.push((x, y));
        }
    }
    let parts: Vec<(usize, Vec<Violation>)> = combos
        .par_iter()
        .map(|&(x, y)| {
            let mut n = 0;
            let mut viol = Vec::new();
            let vout = (y.0, x.1);
            let hout = (x.0 + y.0, x.1 + y.1);
            let do_v = x.0 == y.1 && bound.contains(vout);
            let do_h = bound.contains(hout);
            for i in 0..ctx.dim(x) {
                let (a, da) = (e(i), p.differential(x, &e(i)));
                let s = sign_of(ctx.deg(x, i).rem_euclid(2) == 1);
                for j in 0..ctx.dim(y) {
                    let (b, db) = (e(j), p.differential(y, &e(j)));
                    let ops = || vec![ctx.name(x, i), ctx.name(y, j)];
                    // d(a∘b) = da∘b + (−1)^{|a|} a∘db
                    let check = |out, f: &dyn Fn(&SparseVec, &SparseVec) -> Result<SparseVec>| {
                        let sides = (|| {
                            let l = p.differential(out, &f(&a, &b)?);
                            let r = f(&da, &b)?.add_scaled(&f(&a, &db)?, &s);
                            Ok((l, r))
                        })();
                        compare(ctx, law, out, ops, sides)
                    };
                    if do_v {
                        n += 1;
                        viol.extend(check(vout, &|u, w| ctx.v(x, u, y, w)));
                    }
                    if do_h {
                        n += 1;
                        viol.extend(check(hout, &|u, w| ctx.h(x, u, y, w)));
                    }
                }
            }
            (n, viol)
        })
        .collect();
    let mut parts = parts;
    // actions and units commute with d
    for &b in bs {
        let mut n = 0;
        let mut viol = Vec::new();
        for i in 0..ctx.dim(b) {
            let da = p.differential(b, &e(i));
            for (k, r) in [(b.0, true), (b.1, false)] {
                for g in 1..k {
                    let s = Perm::adjacent(k, g);
                    n += 1;
                    let act = |v: &SparseVec| {
                        if r {
                            p.right_action_raw(b, v, &s)
                        } else {
                            p.left_action_raw(b, &s, v)
                        }
                    };
                    let sides = act(&e(i)).and_then(|x| Ok((p.differential(b, &x), act(&da)?)));
                    viol.extend(compare(ctx, law, b, || vec![ctx.name(b, i), format!("s{g}")], sides));
                }
            }
        }
        if b.0 == b.1 {
            n += 1;
            let u = p.unit_raw(b.0);
            let du = p.differential(b, &u);
            if !du.is_zero() || u.indices().any(|i| ctx.deg(b, i) != 0) {
                viol.push(Violation {
                    law: law.into(),
                    operands: vec![format!("1_{}", b.0)],
                    detail: "unit is not a degree-0 cycle".into(),
                });
            }
        }
        parts.push((n, viol));
    }
    law_report(law, parts, Vec::new())
}

fn actions(ctx: &Ctx, bs: &[Biarity]) -> LawReport {
    let p = ctx.p;
    let law = "actions";
    let parts = bs
        .par_iter()
        .map(|&b| {
            let mut n = 0;
            let mut viol = Vec::new();
            let r = |v: &SparseVec, k: usize| p.right_action_raw(b, v, &Perm::adjacent(b.0, k));
            let l = |v: &SparseVec, k: usize| p.left_action_raw(b, &Perm::adjacent(b.1, k), v);
            for i in 0..ctx.dim(b) {
                let x = e(i);
                let mut chk = |what: String, sides: Result<(SparseVec, SparseVec)>| {
                    n += 1;
                    viol.extend(compare(ctx, law, b, || vec![ctx.name(b, i), what], sides));
                };
                for (act, k) in [(&r as &dyn Fn(&SparseVec, usize) -> Result<SparseVec>, b.0), (&l, b.1)] {
                    for g in 1..k {
                        chk(format!("s{g}²"), act(&x, g).and_then(|y| Ok((act(&y, g)?, x.clone()))));
                        for h in g + 1..k {
                            let sides = if h == g + 1 {
                                (|| {
                                    let lhs = act(&act(&act(&x, g)?, h)?, g)?;
                                    let rhs = act(&act(&act(&x, h)?, g)?, h)?;
                                    Ok((lhs, rhs))
                                })()
                            } else {
                                (|| Ok((act(&act(&x, g)?, h)?, act(&act(&x, h)?, g)?)))()
                            };
                            chk(format!("s{g},s{h}"), sides);
                        }
                    }
                }
                for g in 1..b.0 {
                    for h in 1..b.1 {
                        let sides = (|| Ok((l(&r(&x, g)?, h)?, r(&l(&x, h)?, g)?)))();
                        chk(format!("right s{g}, left s{h}"), sides);
                    }
                }
            }
            (n, viol)
        })
        .collect();
    law_report(law, parts, Vec::new())
}

fn vertical_assoc(ctx: &Ctx, bs: &[Biarity], inb: &dyn Fn(Biarity) -> bool) -> LawReport {
    let law = "vertical associativity";
    let mut combos = Vec::new();
    let mut skipped = Vec::new();
    for &a in bs {
        for &b in bs.iter().filter(|b| b.1 == a.0) {
            for &c in bs.iter().filter(|c| c.1 == b.0) {
                let (ab, bc, abc) = ((b.0, a.1), (c.0, b.1), (c.0, a.1));
                if inb(ab) && inb(bc) && inb(abc) {
                    combos.push((a, b, c));
                } else {
                    skipped.push(fmt_b(&[a, b, c]));
                }
            }
        }
    }
    let parts = combos
        .par_iter()
        .map(|&(x, y, z)| {
            let mut n = 0;
            let mut viol = Vec::new();
            let (xy, yz, out) = ((y.0, x.1), (z.0, y.1), (z.0, x.1));
            for i in 0..ctx.dim(x) {
                for j in 0..ctx.dim(y) {
                    let ab = ctx.v(x, &e(i), y, &e(j));
                    for k in 0..ctx.dim(z) {
                        n += 1;
                        let sides = (|| {
                            let l = ctx.v(xy, ab.as_ref().map_err(Clone::clone)?, z, &e(k))?;
                            let bc = ctx.v(y, &e(j), z, &e(k))?;
                            Ok((l, ctx.v(x, &e(i), yz, &bc)?))
                        })();
                        viol.extend(compare(
                            ctx,
                            law,
                            out,
                            || vec![ctx.name(x, i), ctx.name(y, j), ctx.name(z, k)],
                            sides,
                        ));
                    }
                }
            }
            (n, viol)
        })
        .collect();
    law_report(law, parts, skipped)
}

fn horizontal_assoc(ctx: &Ctx, bs: &[Biarity], inb: &dyn Fn(Biarity) -> bool) -> LawReport {
    let law = "horizontal associativity";
    let add = |a: Biarity, b: Biarity| (a.0 + b.0, a.1 + b.1);
    let mut combos = Vec::new();
    let mut skipped = Vec::new();
    for &a in bs {
        for &b in bs {
            for &c in bs {
                if inb(add(add(a, b), c)) {
                    combos.push((a, b, c));
                } else if inb(add(a, b)) || inb(add(b, c)) {
                    skipped.push(fmt_b(&[a, b, c]));
                }
            }
        }
    }
    let parts = combos
        .par_iter()
        .map(|&(x, y, z)| {
            let mut n = 0;
            let mut viol = Vec::new();
            let (xy, yz, out) = (add(x, y), add(y, z), add(add(x, y), z));
            for i in 0..ctx.dim(x) {
                for j in 0..ctx.dim(y) {
                    let ab = ctx.h(x, &e(i), y, &e(j));
                    for k in 0..ctx.dim(z) {
                        n += 1;
                        let sides = (|| {
                            let l = ctx.h(xy, ab.as_ref().map_err(Clone::clone)?, z, &e(k))?;
                            let bc = ctx.h(y, &e(j), z, &e(k))?;
                            Ok((l, ctx.h(x, &e(i), yz, &bc)?))
                        })();
                        viol.extend(compare(
                            ctx,
                            law,
                            out,
                            || vec![ctx.name(x, i), ctx.name(y, j), ctx.name(z, k)],
                            sides,
                        ));
                    }
                }
            }
            (n, viol)
        })
        .collect();
    law_report(law, parts, skipped)
}

fn interchange(ctx: &Ctx, bs: &[Biarity], inb: &dyn Fn(Biarity) -> bool) -> LawReport {
    let law = "interchange";
    let mut combos = Vec::new();
    let mut skipped = Vec::new();
    // a (k1,n1), b (k2,n2), c (m1,k1), d (m2,k2)
    for &a in bs {
        for &b in bs {
            for &c in bs.iter().filter(|c| c.1 == a.0) {
                for &d in bs.iter().filter(|d| d.1 == b.0) {
                    let needed = [
                        (a.0 + b.0, a.1 + b.1),
                        (c.0 + d.0, c.1 + d.1),
                        (c.0, a.1),
                        (d.0, b.1),
                        (c.0 + d.0, a.1 + b.1),
                    ];
                    if needed.iter().all(|&x| inb(x)) {
                        combos.push((a, b, c, d));
                    } else {
                        skipped.push(fmt_b(&[a, b, c, d]));
                    }
                }
            }
        }
    }
    let parts = combos
        .par_iter()
        .map(|&(xa, xb, xc, xd)| {
            let mut n = 0;
            let mut viol = Vec::new();
            let (ab, cd, ac, bd) = ((xa.0 + xb.0, xa.1 + xb.1), (xc.0 + xd.0, xc.1 + xd.1), (xc.0, xa.1), (xd.0, xb.1));
            let out = (cd.0, ab.1);
            let table = |dx: usize, dy: usize, f: &dyn Fn(usize, usize) -> Result<SparseVec>| {
                (0..dx).map(|i| (0..dy).map(|j| f(i, j)).collect::<Vec<_>>()).collect::<Vec<_>>()
            };
            let (na, nb, nc, nd) = (ctx.dim(xa), ctx.dim(xb), ctx.dim(xc), ctx.dim(xd));
            if na * nb * nc * nd == 0 {
                return (0, viol);
            }
            let t_ab = table(na, nb, &|i, j| ctx.h(xa, &e(i), xb, &e(j)));
            let t_cd = table(nc, nd, &|i, j| ctx.h(xc, &e(i), xd, &e(j)));
            let t_ac = table(na, nc, &|i, j| ctx.v(xa, &e(i), xc, &e(j)));
            let t_bd = table(nb, nd, &|i, j| ctx.v(xb, &e(i), xd, &e(j)));
            for i in 0..na {
                for j in 0..nb {
                    for k in 0..nc {
                        let s = sign_of(odd_product(ctx.deg(xb, j), ctx.deg(xc, k)));
                        for l in 0..nd {
                            n += 1;
                            let sides = (|| {
                                let lhs = ctx.v(
                                    ab,
                                    t_ab[i][j].as_ref().map_err(Clone::clone)?,
                                    cd,
                                    t_cd[k][l].as_ref().map_err(Clone::clone)?,
                                )?;
                                let rhs = ctx.h(
                                    ac,
                                    t_ac[i][k].as_ref().map_err(Clone::clone)?,
                                    bd,
                                    t_bd[j][l].as_ref().map_err(Clone::clone)?,
                                )?;
                                Ok((lhs, rhs.scale(&s)))
                            })();
                            viol.extend(compare(
                                ctx,
                                law,
                                out,
                                || vec![ctx.name(xa, i), ctx.name(xb, j), ctx.name(xc, k), ctx.name(xd, l)],
                                sides,
                            ));
                        }
                    }
                }
            }
            (n, viol)
        })
        .collect();
    law_report(law, parts, skipped)
}

fn units(ctx: &Ctx, bs: &[Biarity], inb: &dyn Fn(Biarity) -> bool) -> LawReport {
    let p = ctx.p;
    let law = "units";
    let mut parts = Vec::new();
    let mut skipped = Vec::new();
    let u0 = p.unit_raw(0);
    for &b in bs {
        let (m, n) = b;
        let mut cnt = 0;
        let mut viol = Vec::new();
        let (um, un) = (p.unit_raw(m), p.unit_raw(n));
        let has_m = inb((m, m));
        let has_n = inb((n, n));
        if !has_m || !has_n {
            skipped.push(fmt_b(&[b]));
        }
        for i in 0..ctx.dim(b) {
            let x = e(i);
            if has_n {
                cnt += 1;
                let sides = ctx.v((n, n), &un, b, &x).map(|l| (l, x.clone()));
                viol.extend(compare(ctx, law, b, || vec![format!("1_{n}"), ctx.name(b, i)], sides));
            }
            if has_m {
                cnt += 1;
                let sides = ctx.v(b, &x, (m, m), &um).map(|l| (l, x.clone()));
                viol.extend(compare(ctx, law, b, || vec![ctx.name(b, i), format!("1_{m}")], sides));
            }
            cnt += 2;
            let sides = ctx.h((0, 0), &u0, b, &x).map(|l| (l, x.clone()));
            viol.extend(compare(ctx, law, b, || vec!["1_0".into(), ctx.name(b, i)], sides));
            let sides = ctx.h(b, &x, (0, 0), &u0).map(|l| (l, x.clone()));
            viol.extend(compare(ctx, law, b, || vec![ctx.name(b, i), "1_0".into()], sides));
        }
        parts.push((cnt, viol));
    }
    // 1_m ⊗ 1_n = 1_{m+n}
    let top = p.bound().0 / 2;
    let mut cnt = 0;
    let mut viol = Vec::new();
    for m in 0..=top {
        for n in 0..=top - m {
            cnt += 1;
            let out = (m + n, m + n);
            let sides = ctx.h((m, m), &p.unit_raw(m), (n, n), &p.unit_raw(n)).map(|l| (l, p.unit_raw(m + n)));
            viol.extend(compare(ctx, law, out, || vec![format!("1_{m}"), format!("1_{n}")], sides));
        }
    }
    parts.push((cnt, viol));
    law_report(law, parts, skipped)
}

fn vertical_equivariance(ctx: &Ctx, bs: &[Biarity], inb: &dyn Fn(Biarity) -> bool) -> LawReport {
    let p = ctx.p;
    let law = "vertical equivariance";
    let mut combos = Vec::new();
    let mut skipped = Vec::new();
    for &a in bs {
        for &b in bs.iter().filter(|b| b.1 == a.0) {
            if inb((b.0, a.1)) {
                combos.push((a, b));
            } else {
                skipped.push(fmt_b(&[a, b]));
            }
        }
    }
    let parts = combos
        .par_iter()
        .map(|&(x, y)| {
            let (k, nn, m) = (x.0, x.1, y.0);
            let out = (m, nn);
            let mut cnt = 0;
            let mut viol = Vec::new();
            for i in 0..ctx.dim(x) {
                for j in 0..ctx.dim(y) {
                    let (a, b) = (e(i), e(j));
                    let mut chk = |what: String, sides: Result<(SparseVec, SparseVec)>| {
                        cnt += 1;
                        viol.extend(compare(ctx, law, out, || vec![ctx.name(x, i), ctx.name(y, j), what], sides));
                    };
                    for g in 1..k {
                        let s = Perm::adjacent(k, g);
                        let sides = (|| {
                            let l = ctx.v(x, &p.right_action_raw(x, &a, &s)?, y, &b)?;
                            Ok((l, ctx.v(x, &a, y, &p.left_action_raw(y, &s, &b)?)?))
                        })();
                        chk(format!("middle s{g}"), sides);
                    }
                    for g in 1..nn {
                        let s = Perm::adjacent(nn, g);
                        let sides = (|| {
                            let l = ctx.v(x, &p.left_action_raw(x, &s, &a)?, y, &b)?;
                            Ok((l, p.left_action_raw(out, &s, &ctx.v(x, &a, y, &b)?)?))
                        })();
                        chk(format!("outer s{g}"), sides);
                    }
                    for g in 1..m {
                        let s = Perm::adjacent(m, g);
                        let sides = (|| {
                            let l = ctx.v(x, &a, y, &p.right_action_raw(y, &b, &s)?)?;
                            Ok((l, p.right_action_raw(out, &ctx.v(x, &a, y, &b)?, &s)?))
                        })();
                        chk(format!("inner s{g}"), sides);
                    }
                }
            }
            (cnt, viol)
        })
        .collect();
    law_report(law, parts, skipped)
}

fn horizontal_equivariance(ctx: &Ctx, bs: &[Biarity], inb: &dyn Fn(Biarity) -> bool) -> LawReport {
    let p = ctx.p;
    let law = "horizontal equivariance";
    let mut combos = Vec::new();
    for &a in bs {
        for &b in bs {
            if inb((a.0 + b.0, a.1 + b.1)) {
                combos.push((a, b));
            }
        }
    }
    let parts = combos
        .par_iter()
        .map(|&(x, y)| {
            let out = (x.0 + y.0, x.1 + y.1);
            let mut cnt = 0;
            let mut viol = Vec::new();
            for i in 0..ctx.dim(x) {
                for j in 0..ctx.dim(y) {
                    let (a, b) = (e(i), e(j));
                    let ab = ctx.h(x, &a, y, &b);
                    let mut chk = |what: String, sides: Result<(SparseVec, SparseVec)>| {
                        cnt += 1;
                        viol.extend(compare(ctx, law, out, || vec![ctx.name(x, i), ctx.name(y, j), what], sides));
                    };
                    let ab = || ab.clone();
                    for g in 1..x.0 {
                        let s = Perm::adjacent(x.0, g);
                        let big = s.block_sum(&Perm::identity(y.0));
                        let sides = (|| {
                            let l = ctx.h(x, &p.right_action_raw(x, &a, &s)?, y, &b)?;
                            Ok((l, p.right_action_raw(out, &ab()?, &big)?))
                        })();
                        chk(format!("left input s{g}"), sides);
                    }
                    for g in 1..y.0 {
                        let s = Perm::adjacent(y.0, g);
                        let big = Perm::identity(x.0).block_sum(&s);
                        let sides = (|| {
                            let l = ctx.h(x, &a, y, &p.right_action_raw(y, &b, &s)?)?;
                            Ok((l, p.right_action_raw(out, &ab()?, &big)?))
                        })();
                        chk(format!("right input s{g}"), sides);
                    }
                    for g in 1..x.1 {
                        let s = Perm::adjacent(x.1, g);
                        let big = s.block_sum(&Perm::identity(y.1));
                        let sides = (|| {
                            let l = ctx.h(x, &p.left_action_raw(x, &s, &a)?, y, &b)?;
                            Ok((l, p.left_action_raw(out, &big, &ab()?)?))
                        })();
                        chk(format!("left output s{g}"), sides);
                    }
                    for g in 1..y.1 {
                        let s = Perm::adjacent(y.1, g);
                        let big = Perm::identity(x.1).block_sum(&s);
                        let sides = (|| {
                            let l = ctx.h(x, &a, y, &p.left_action_raw(y, &s, &b)?)?;
                            Ok((l, p.left_action_raw(out, &big, &ab()?)?))
                        })();
                        chk(format!("right output s{g}"), sides);
                    }
                }
            }
            (cnt, viol)
        })
        .collect();
    law_report(law, parts, Vec::new())
}

/// `b ∘_h a = (−1)^{|a||b|} c_{n1,n2}·(a ∘_h b)·c_{m2,m1}` with `c_{p,q}` the
/// block transposition moving the first `p` points past the last `q`.
fn symmetry(ctx: &Ctx, bs: &[Biarity], inb: &dyn Fn(Biarity) -> bool) -> LawReport {
    let p = ctx.p;
    let law = "symmetry";
    let mut combos = Vec::new();
    for &a in bs {
        for &b in bs {
            if inb((a.0 + b.0, a.1 + b.1)) {
                combos.push((a, b));
            }
        }
    }
    let parts = combos
        .par_iter()
        .map(|&(x, y)| {
            let out = (x.0 + y.0, x.1 + y.1);
            let outer = Perm::block_swap(x.1, y.1);
            let inner = Perm::block_swap(y.0, x.0);
            let mut cnt = 0;
            let mut viol = Vec::new();
            for i in 0..ctx.dim(x) {
                for j in 0..ctx.dim(y) {
                    cnt += 1;
                    let s = sign_of(odd_product(ctx.deg(x, i), ctx.deg(y, j)));
                    let sides = (|| {
                        let ba = ctx.h(y, &e(j), x, &e(i))?;
                        let ab = ctx.h(x, &e(i), y, &e(j))?;
                        let r = p.right_action_raw(out, &p.left_action_raw(out, &outer, &ab)?, &inner)?;
                        Ok((ba, r.scale(&s)))
                    })();
                    viol.extend(compare(ctx, law, out, || vec![ctx.name(x, i), ctx.name(y, j)], sides));
                }
            }
            (cnt, viol)
        })
        .collect();
    law_report(law, parts, Vec::new())
}
