//! Words in prop generators, with a small text syntax:
//!
//! ```text
//! expr  := ["-"] term (("+" | "-") term)*
//! term  := [rational "*"] vert
//! vert  := horiz (("∘" | ".") horiz)*        left-associative
//! horiz := act (("⊗" | "#") act)*
//! act   := perm "·" act | atom ("·" perm)*
//! atom  := name | "1_" n | "0_" m "," n | "(" expr ")"
//! ```
//!
//! Permutations are 1-based one-line, e.g. `[2 1 3]`; `·` may be written `^`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::table::{biarity_key, parse_biarity};
use super::Prop;
use crate::biobject::{Biarity, Perm};
use crate::error::{Error, Result};
use crate::linalg::{Rational, SparseVec};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeneratorWord {
    Gen(String),
    Unit(usize),
    Zero(Biarity),
    Vert(Box<GeneratorWord>, Box<GeneratorWord>),
    Horiz(Box<GeneratorWord>, Box<GeneratorWord>),
    Right(Box<GeneratorWord>, Perm),
    Left(Perm, Box<GeneratorWord>),
    Lin(Vec<(Rational, GeneratorWord)>),
}

impl GeneratorWord {
    pub fn gen(name: &str) -> GeneratorWord {
        GeneratorWord::Gen(name.into())
    }

    pub fn vert(a: GeneratorWord, b: GeneratorWord) -> GeneratorWord {
        GeneratorWord::Vert(Box::new(a), Box::new(b))
    }

    pub fn horiz(a: GeneratorWord, b: GeneratorWord) -> GeneratorWord {
        GeneratorWord::Horiz(Box::new(a), Box::new(b))
    }

    /// Biarity, given the biarities of the generators.
    pub fn biarity(&self, gens: &BTreeMap<String, Biarity>) -> Result<Biarity> {
        use GeneratorWord::*;
        Ok(match self {
            Gen(g) => *gens.get(g).ok_or_else(|| Error::UnknownGenerator(g.clone()))?,
            Unit(n) => (*n, *n),
            Zero(b) => *b,
            Vert(a, b) => super::vertical_biarity(a.biarity(gens)?, b.biarity(gens)?)?,
            Horiz(a, b) => super::horizontal_biarity(a.biarity(gens)?, b.biarity(gens)?),
            Right(a, s) => {
                let b = a.biarity(gens)?;
                if s.len() != b.0 {
                    return Err(Error::ArityMismatch(format!("{s} acting on the inputs of {self}")));
                }
                b
            }
            Left(s, a) => {
                let b = a.biarity(gens)?;
                if s.len() != b.1 {
                    return Err(Error::ArityMismatch(format!("{s} acting on the outputs of {self}")));
                }
                b
            }
            Lin(terms) => {
                let mut it = terms.iter();
                let first = it.next().ok_or_else(|| Error::Parse("empty linear combination".into()))?;
                let b = first.1.biarity(gens)?;
                for (_, w) in it {
                    if w.biarity(gens)? != b {
                        return Err(Error::ArityMismatch(format!("terms of {self} have different biarities")));
                    }
                }
                b
            }
        })
    }

    /// Largest `m + n` among the subterms: the bound a prop needs to evaluate this word.
    pub fn reach(&self, gens: &BTreeMap<String, Biarity>) -> Result<usize> {
        use GeneratorWord::*;
        let (m, n) = self.biarity(gens)?;
        let inner = match self {
            Gen(_) | Unit(_) | Zero(_) => 0,
            Vert(a, b) | Horiz(a, b) => a.reach(gens)?.max(b.reach(gens)?),
            Right(a, _) | Left(_, a) => a.reach(gens)?,
            Lin(t) => t.iter().map(|(_, w)| w.reach(gens)).collect::<Result<Vec<_>>>()?.into_iter().max().unwrap_or(0),
        };
        Ok(inner.max(m + n))
    }

    pub fn generators(&self, out: &mut Vec<String>) {
        use GeneratorWord::*;
        match self {
            Gen(g) => {
                if !out.contains(g) {
                    out.push(g.clone())
                }
            }
            Unit(_) | Zero(_) => {}
            Vert(a, b) | Horiz(a, b) => {
                a.generators(out);
                b.generators(out);
            }
            Right(a, _) | Left(_, a) => a.generators(out),
            Lin(t) => t.iter().for_each(|(_, w)| w.generators(out)),
        }
    }
}

/// Evaluates a word in `p`, each generator sent to an element of the given biarity.
pub fn evaluate_word(
    w: &GeneratorWord,
    p: &dyn Prop,
    assignment: &BTreeMap<String, (Biarity, SparseVec)>,
) -> Result<(Biarity, SparseVec)> {
    use GeneratorWord::*;
    let ev = |x: &GeneratorWord| evaluate_word(x, p, assignment);
    match w {
        Gen(g) => assignment.get(g).cloned().ok_or_else(|| Error::UnknownGenerator(g.clone())),
        Unit(n) => Ok(((*n, *n), p.unit(*n)?)),
        Zero(b) => {
            p.bound().check(*b)?;
            Ok((*b, SparseVec::new()))
        }
        Vert(a, b) => {
            let ((x, va), (y, vb)) = (ev(a)?, ev(b)?);
            let out = super::vertical_biarity(x, y)?;
            Ok((out, p.vertical(x, &va, y, &vb)?))
        }
        Horiz(a, b) => {
            let ((x, va), (y, vb)) = (ev(a)?, ev(b)?);
            Ok((super::horizontal_biarity(x, y), p.horizontal(x, &va, y, &vb)?))
        }
        Right(a, s) => {
            let (x, va) = ev(a)?;
            Ok((x, p.right_action(x, &va, s)?))
        }
        Left(s, a) => {
            let (x, va) = ev(a)?;
            Ok((x, p.left_action(x, s, &va)?))
        }
        Lin(terms) => {
            let mut out: Option<(Biarity, SparseVec)> = None;
            for (c, t) in terms {
                let (x, v) = ev(t)?;
                out = Some(match out {
                    None => (x, v.scale(c)),
                    Some((b, acc)) if b == x => (b, acc.add_scaled(&v, c)),
                    Some((b, _)) => return Err(Error::ArityMismatch(format!("adding {x:?} to {b:?} in {w}"))),
                });
            }
            out.ok_or_else(|| Error::Parse("empty linear combination".into()))
        }
    }
}

impl fmt::Display for GeneratorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use GeneratorWord::*;
        match self {
            Gen(g) => write!(f, "{g}"),
            Unit(n) => write!(f, "1_{n}"),
            Zero((m, n)) => write!(f, "0_{m},{n}"),
            Vert(a, b) => write!(f, "({a} ∘ {b})"),
            Horiz(a, b) => write!(f, "({a} ⊗ {b})"),
            Right(a, s) => write!(f, "({a} · {s})"),
            Left(s, a) => write!(f, "({s} · {a})"),
            Lin(t) => {
                write!(f, "(")?;
                for (i, (c, w)) in t.iter().enumerate() {
                    let neg = c.is_negative();
                    let c = if neg { -c } else { c.clone() };
                    match (i, neg) {
                        (0, true) => write!(f, "-")?,
                        (0, false) => {}
                        (_, true) => write!(f, " - ")?,
                        (_, false) => write!(f, " + ")?,
                    }
                    write!(f, "{c}*{w}")?;
                }
                write!(f, ")")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Name(String),
    Num(Rational),
    Unit(usize),
    Zero(Biarity),
    Perm(Perm),
    LParen,
    RParen,
    Plus,
    Minus,
    Star,
    Vert,
    Horiz,
    Dot,
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let bad = |m: &str| Error::Parse(format!("word {s:?}: {m}"));
    let cs: Vec<char> = s.chars().collect();
    let mut i = 0;
    let mut out = Vec::new();
    let read_int = |i: &mut usize| -> Option<usize> {
        let st = *i;
        while *i < cs.len() && cs[*i].is_ascii_digit() {
            *i += 1;
        }
        cs[st..*i].iter().collect::<String>().parse().ok()
    };
    while i < cs.len() {
        let c = cs[i];
        match c {
            ' ' | '\t' | '\n' => i += 1,
            '(' => {
                out.push(Tok::LParen);
                i += 1
            }
            ')' => {
                out.push(Tok::RParen);
                i += 1
            }
            '+' => {
                out.push(Tok::Plus);
                i += 1
            }
            '-' => {
                out.push(Tok::Minus);
                i += 1
            }
            '*' => {
                out.push(Tok::Star);
                i += 1
            }
            '∘' | '.' => {
                out.push(Tok::Vert);
                i += 1
            }
            '⊗' | '#' => {
                out.push(Tok::Horiz);
                i += 1
            }
            '·' | '^' => {
                out.push(Tok::Dot);
                i += 1
            }
            '[' => {
                let end = cs[i..].iter().position(|&x| x == ']').ok_or_else(|| bad("unclosed ["))? + i;
                let body: String = cs[i + 1..end].iter().collect();
                let imgs = body
                    .split_whitespace()
                    .map(|t| t.parse::<usize>().ok().and_then(|x| x.checked_sub(1)))
                    .collect::<Option<Vec<_>>>()
                    .ok_or_else(|| bad("bad permutation"))?;
                out.push(Tok::Perm(Perm::new(imgs)?));
                i = end + 1;
            }
            d if d.is_ascii_digit() => {
                let a = read_int(&mut i).ok_or_else(|| bad("number"))?;
                if i < cs.len() && cs[i] == '_' {
                    i += 1;
                    let b = read_int(&mut i).ok_or_else(|| bad("arity"))?;
                    match a {
                        1 => out.push(Tok::Unit(b)),
                        0 => {
                            if i >= cs.len() || cs[i] != ',' {
                                return Err(bad("zero needs 0_m,n"));
                            }
                            i += 1;
                            let n = read_int(&mut i).ok_or_else(|| bad("arity"))?;
                            out.push(Tok::Zero((b, n)));
                        }
                        _ => return Err(bad("only 1_n and 0_m,n are constants")),
                    }
                } else if i < cs.len() && cs[i] == '/' {
                    i += 1;
                    let b = read_int(&mut i).ok_or_else(|| bad("denominator"))?;
                    out.push(Tok::Num(format!("{a}/{b}").parse()?));
                } else {
                    out.push(Tok::Num(Rational::from_int(a as i64)));
                }
            }
            a if a.is_alphabetic() => {
                let st = i;
                while i < cs.len() && (cs[i].is_alphanumeric() || cs[i] == '_' || cs[i] == '\'') {
                    i += 1;
                }
                out.push(Tok::Name(cs[st..i].iter().collect()));
            }
            _ => return Err(bad(&format!("unexpected {c:?}"))),
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn err(&self, m: &str) -> Error {
        Error::Parse(format!("word: {m} at token {}", self.pos))
    }

    fn expr(&mut self) -> Result<GeneratorWord> {
        let mut terms = Vec::new();
        let mut sign = if self.eat(&Tok::Minus) { Rational::minus_one() } else { Rational::one() };
        loop {
            let (c, w) = self.term()?;
            terms.push((&c * &sign, w));
            if self.eat(&Tok::Plus) {
                sign = Rational::one();
            } else if self.eat(&Tok::Minus) {
                sign = Rational::minus_one();
            } else {
                break;
            }
        }
        if terms.len() == 1 && terms[0].0.is_one() {
            return Ok(terms.pop().unwrap().1);
        }
        Ok(GeneratorWord::Lin(terms))
    }

    fn term(&mut self) -> Result<(Rational, GeneratorWord)> {
        if let Some(Tok::Num(c)) = self.peek().cloned() {
            self.pos += 1;
            if !self.eat(&Tok::Star) {
                return Err(self.err("expected * after coefficient"));
            }
            return Ok((c, self.vert()?));
        }
        Ok((Rational::one(), self.vert()?))
    }

    fn vert(&mut self) -> Result<GeneratorWord> {
        let mut w = self.horiz()?;
        while self.eat(&Tok::Vert) {
            w = GeneratorWord::vert(w, self.horiz()?);
        }
        Ok(w)
    }

    fn horiz(&mut self) -> Result<GeneratorWord> {
        let mut w = self.act()?;
        while self.eat(&Tok::Horiz) {
            w = GeneratorWord::horiz(w, self.act()?);
        }
        Ok(w)
    }

    fn act(&mut self) -> Result<GeneratorWord> {
        if let Some(Tok::Perm(p)) = self.peek().cloned() {
            self.pos += 1;
            if !self.eat(&Tok::Dot) {
                return Err(self.err("expected · after permutation"));
            }
            return Ok(GeneratorWord::Left(p, Box::new(self.act()?)));
        }
        let mut w = self.atom()?;
        while self.eat(&Tok::Dot) {
            match self.peek().cloned() {
                Some(Tok::Perm(p)) => {
                    self.pos += 1;
                    w = GeneratorWord::Right(Box::new(w), p);
                }
                _ => return Err(self.err("expected permutation after ·")),
            }
        }
        Ok(w)
    }

    fn atom(&mut self) -> Result<GeneratorWord> {
        let t = self.peek().cloned().ok_or_else(|| self.err("unexpected end"))?;
        self.pos += 1;
        match t {
            Tok::Name(n) => Ok(GeneratorWord::Gen(n)),
            Tok::Unit(n) => Ok(GeneratorWord::Unit(n)),
            Tok::Zero(b) => Ok(GeneratorWord::Zero(b)),
            Tok::LParen => {
                let w = self.expr()?;
                if !self.eat(&Tok::RParen) {
                    return Err(self.err("expected )"));
                }
                Ok(w)
            }
            _ => Err(self.err("expected a generator, constant or (")),
        }
    }
}

impl FromStr for GeneratorWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<GeneratorWord> {
        let mut p = Parser { toks: tokenize(s)?, pos: 0 };
        let w = p.expr()?;
        if p.pos != p.toks.len() {
            return Err(p.err("trailing input"));
        }
        Ok(w)
    }
}

impl Serialize for GeneratorWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for GeneratorWord {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// A quasi-free presentation: generators (basis elements of the prop, named
/// by label), a word for every basis element, and a word for the
/// differential of each generator.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Presentation {
    /// generator name → where it lives in the prop.
    pub generators: BTreeMap<String, GeneratorSpec>,
    /// `"m,n"` → basis label → word.
    pub words: BTreeMap<String, BTreeMap<String, GeneratorWord>>,
    /// generator → word for its differential.
    #[serde(default)]
    pub dwords: BTreeMap<String, GeneratorWord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    /// `"m,n"`.
    pub biarity: String,
    /// Basis label of the generator in that component.
    pub label: String,
}

impl Presentation {
    pub fn generator_biarities(&self) -> Result<BTreeMap<String, Biarity>> {
        self.generators.iter().map(|(g, s)| Ok((g.clone(), parse_biarity(&s.biarity)?))).collect()
    }

    /// Generators in order of increasing degree in `p`, ties by name.
    pub fn generators_by_degree(&self, p: &dyn Prop) -> Result<Vec<(String, Biarity, usize, i32)>> {
        let mut v = Vec::new();
        for (g, b) in self.generator_biarities()? {
            let c = p.component(b);
            let label = &self.generators[&g].label;
            let i = c.index_of(label).ok_or_else(|| {
                Error::InconsistentPresentation(format!(
                    "generator {g}: no basis element {label} in {}",
                    biarity_key(b)
                ))
            })?;
            v.push((g, b, i, c.degree(i)));
        }
        v.sort_by(|a, b| a.3.cmp(&b.3).then(a.0.cmp(&b.0)));
        Ok(v)
    }

    /// The generators as elements of `p`.
    pub fn generator_elements(&self, p: &dyn Prop) -> Result<BTreeMap<String, (Biarity, SparseVec)>> {
        Ok(self.generators_by_degree(p)?.into_iter().map(|(g, b, i, _)| (g, (b, SparseVec::unit(i)))).collect())
    }

    /// Every basis element equals its word, and `d` of each generator
    /// equals its differential word. Words passing through biarities beyond
    /// the bound cannot be evaluated in `p`; their labels are returned.
    pub fn check(&self, p: &dyn Prop) -> Result<Vec<String>> {
        let gens = self.generator_elements(p)?;
        let gb = self.generator_biarities()?;
        let bad = |m: String| Error::InconsistentPresentation(m);
        let mut skipped = Vec::new();
        for b in p.bound().biarities() {
            let c = p.component(b);
            let table = self.words.get(&biarity_key(b));
            for i in 0..c.dim() {
                let w = table
                    .and_then(|t| t.get(c.label(i)))
                    .ok_or_else(|| bad(format!("no word for {} in {}", c.label(i), biarity_key(b))))?;
                if w.reach(&gb)? > p.bound().0 {
                    skipped.push(format!("{}@{}", c.label(i), biarity_key(b)));
                    continue;
                }
                let (wb, v) = evaluate_word(w, p, &gens)?;
                if wb != b || v != SparseVec::unit(i) {
                    return Err(bad(format!("word {w} does not evaluate to {}", c.label(i))));
                }
            }
        }
        for (g, (b, e)) in &gens {
            let dg = p.differential(*b, e);
            let dv = match self.dwords.get(g) {
                Some(w) => evaluate_word(w, p, &gens)?.1,
                None => SparseVec::new(),
            };
            if dg != dv {
                return Err(bad(format!("d{g} disagrees with its differential word")));
            }
        }
        Ok(skipped)
    }

    /// The word for basis element `i` of biarity `b`.
    pub fn word(&self, p: &dyn Prop, b: Biarity, i: usize) -> Result<&GeneratorWord> {
        let label = p.component(b).label(i).to_string();
        self.words
            .get(&biarity_key(b))
            .and_then(|t| t.get(&label))
            .ok_or_else(|| Error::InconsistentPresentation(format!("no word for {label}")))
    }
}
