use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Permutation of `{0, ..., n-1}` stored as its image array.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::Parse {
                    location: "permutation".into(),
                    message: format!("{images:?} is not a bijection of 0..{n}"),
                });
            }
            seen[i] = true;
        }
        Ok(Permutation(images))
    }

    /// Builds a permutation of `n` points from disjoint cycles.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut img: Vec<usize> = (0..n).collect();
        for c in cycles {
            for k in 0..c.len() {
                let (a, b) = (c[k], c[(k + 1) % c.len()]);
                if a >= n || b >= n {
                    return Err(Error::Parse {
                        location: "cycle".into(),
                        message: format!("point out of range in {c:?}"),
                    });
                }
                img[a] = b;
            }
        }
        Self::from_images(img)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
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

    /// Composition `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&j| self.0[j]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Permutation(inv)
    }

    /// `g self g^{-1}`.
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        g.compose(self).compose(&g.inverse())
    }

    /// Cycle lengths in decreasing order, fixed points included.
    pub fn cycle_type(&self) -> Vec<usize> {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut len = 0;
            let mut j = s;
            while !seen[j] {
                seen[j] = true;
                j = self.0[j];
                len += 1;
            }
            out.push(len);
        }
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }

    pub fn order(&self) -> usize {
        self.cycle_type().into_iter().fold(1, num_integer::lcm)
    }

    /// Direct sum acting on `0..a` and `a..a+b`.
    pub fn direct_sum(&self, other: &Permutation) -> Permutation {
        let a = self.0.len();
        Permutation(self.0.iter().copied().chain(other.0.iter().map(|&j| j + a)).collect())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// All permutations of `n` points in lexicographic order.
pub fn symmetric_group(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(Permutation(cur.clone()));
        // next lexicographic permutation
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
    out
}

/// One representative per conjugacy class of `S_n` (one per cycle type).
pub fn class_representatives(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    for part in partitions(n) {
        let mut img: Vec<usize> = (0..n).collect();
        let mut start = 0;
        for len in part {
            for k in 0..len {
                img[start + k] = start + (k + 1) % len;
            }
            start += len;
        }
        out.push(Permutation(img));
    }
    out.sort();
    out
}

fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rem == 0 {
            out.push(cur.clone());
            return;
        }
        for k in (1..=rem.min(max)).rev() {
            cur.push(k);
            go(rem - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// A finite permutation group, elements sorted so that index 0 is the
/// identity.
#[derive(Clone, Debug)]
pub struct FiniteGroupTable {
    elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
}

impl FiniteGroupTable {
    /// Closure of `gens` under composition, on `degree` points.
    pub fn generated_by(degree: usize, gens: &[Permutation]) -> Self {
        let mut elements = closure(degree, gens, usize::MAX);
        elements.sort();
        let index = elements.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        FiniteGroupTable { elements, index }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn degree(&self) -> usize {
        self.elements[0].degree()
    }

    /// Index of `elements[a] ∘ elements[b]`.
    pub fn product(&self, a: usize, b: usize) -> usize {
        self.index[&self.elements[a].compose(&self.elements[b])]
    }
}

/// Breadth-first closure; stops early once more than `limit` elements are
/// found.
pub(crate) fn closure(degree: usize, gens: &[Permutation], limit: usize) -> Vec<Permutation> {
    let id = Permutation::identity(degree);
    let mut seen: HashMap<Permutation, ()> = HashMap::new();
    seen.insert(id.clone(), ());
    let mut out = vec![id];
    let mut head = 0;
    while head < out.len() {
        let g = out[head].clone();
        head += 1;
        for s in gens {
            let h = g.compose(s);
            if seen.insert(h.clone(), ()).is_none() {
                out.push(h);
                if out.len() > limit {
                    return out;
                }
            }
        }
    }
    out
}
