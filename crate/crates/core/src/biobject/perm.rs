use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Permutation of `{0, …, n−1}` in one-line notation: `p[i] = σ(i)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn new(images: Vec<usize>) -> Result<Perm> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::Parse(format!("{images:?} is not a permutation")));
            }
            seen[i] = true;
        }
        Ok(Perm(images))
    }

    pub fn identity(n: usize) -> Perm {
        Perm((0..n).collect())
    }

    /// `s_k` for `1 ≤ k < n`: swaps positions `k−1` and `k`.
    pub fn adjacent(n: usize, k: usize) -> Perm {
        assert!(k >= 1 && k < n, "s{k} not in Σ_{n}");
        let mut v: Vec<usize> = (0..n).collect();
        v.swap(k - 1, k);
        Perm(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.len(), other.len());
        Perm(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut v = vec![0; self.len()];
        for (i, &j) in self.0.iter().enumerate() {
            v[j] = i;
        }
        Perm(v)
    }

    /// `σ × τ` acting on `{0..a} ⊔ {a..a+b}`.
    pub fn block_sum(&self, other: &Perm) -> Perm {
        let a = self.len();
        let mut v = self.0.clone();
        v.extend(other.0.iter().map(|&i| i + a));
        Perm(v)
    }

    /// The block transposition moving the first `a` points past the last `b`.
    pub fn block_swap(a: usize, b: usize) -> Perm {
        Perm((0..a).map(|i| i + b).chain((0..b).map(|i| i)).collect())
    }

    /// Word `[k_1, …, k_r]` with `σ = s_{k_1} ∘ ⋯ ∘ s_{k_r}`.
    pub fn adjacent_word(&self) -> Vec<usize> {
        // Bubble sort the one-line form; each swap peels one generator off the left.
        let mut v = self.0.clone();
        let mut word = Vec::new();
        let n = v.len();
        loop {
            let Some(k) = (1..n).find(|&k| v[k - 1] > v[k]) else { break };
            v.swap(k - 1, k);
            word.push(k);
        }
        // v has been sorted by right-multiplication: σ ∘ s_{k_1} ∘ ⋯ = id.
        word.reverse();
        word
    }

    /// All of `Σ_n` in lexicographic order.
    pub fn all(n: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(n);
        let mut used = vec![false; n];
        fn go(n: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Perm>) {
            if cur.len() == n {
                out.push(Perm(cur.clone()));
                return;
            }
            for i in 0..n {
                if !used[i] {
                    used[i] = true;
                    cur.push(i);
                    go(n, cur, used, out);
                    cur.pop();
                    used[i] = false;
                }
            }
        }
        go(n, &mut cur, &mut used, &mut out);
        out
    }

    /// Position of this permutation in [`Perm::all`].
    pub fn rank(&self) -> usize {
        let n = self.len();
        let mut r = 0;
        for i in 0..n {
            let smaller = self.0[i + 1..].iter().filter(|&&x| x < self.0[i]).count();
            r += smaller * factorial(n - 1 - i);
        }
        r
    }
}

pub fn factorial(n: usize) -> usize {
    (1..=n).product()
}

impl TryFrom<Vec<usize>> for Perm {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Perm> {
        Perm::new(v)
    }
}

impl From<Perm> for Vec<usize> {
    fn from(p: Perm) -> Vec<usize> {
        p.0
    }
}

impl fmt::Display for Perm {
    /// 1-based one-line notation, e.g. `[2 1 3]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "[{}]", s.join(" "))
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn adjacent_words_recompose() {
        for n in 0..5 {
            for p in Perm::all(n) {
                let mut acc = Perm::identity(n);
                for k in p.adjacent_word() {
                    acc = acc.compose(&Perm::adjacent(n, k));
                }
                assert_eq!(acc, p);
            }
        }
    }

    #[test]
    fn rank_matches_enumeration() {
        for (i, p) in Perm::all(4).iter().enumerate() {
            assert_eq!(p.rank(), i);
        }
    }

    #[test]
    fn inverse_and_blocks() {
        let p = Perm::new(vec![2, 0, 1]).unwrap();
        assert!(p.compose(&p.inverse()).is_identity());
        assert_eq!(Perm::block_swap(1, 2).images(), &[2, 0, 1]);
        assert_eq!(p.block_sum(&Perm::identity(1)).images(), &[2, 0, 1, 3]);
        assert!(Perm::new(vec![0, 0]).is_err());
    }
}
