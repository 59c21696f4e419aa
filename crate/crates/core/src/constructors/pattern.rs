//! Posets on `[n]` and their pattern algebras.

use std::path::Path;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lie::algebra::ZLieAlgebra;

/// A strict partial order on `{1, ..., n}` compatible with the usual order.
/// Stored 0-based and transitively closed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    n: usize,
    less: Vec<bool>,
}

#[derive(Serialize, Deserialize)]
struct PosetFile {
    n: usize,
    relations: Vec<[usize; 2]>,
}

impl Poset {
    /// From 1-based pairs `(i, j)` meaning `i ≺ j`; requires `i < j`.
    pub fn new(n: usize, relations: &[(usize, usize)]) -> Result<Self> {
        let mut less = vec![false; n * n];
        for &(i, j) in relations {
            if i == 0 || j == 0 || i > n || j > n {
                return Err(Error::input(format!("relation ({i}, {j}) is outside [1, {n}]")));
            }
            if i >= j {
                return Err(Error::input(format!(
                    "relation ({i}, {j}) violates the convention i < j"
                )));
            }
            less[(i - 1) * n + (j - 1)] = true;
        }
        // Warshall closure; i < k < j keeps it compatible with the order.
        for k in 0..n {
            for i in 0..k {
                if !less[i * n + k] {
                    continue;
                }
                for j in k + 1..n {
                    if less[k * n + j] {
                        less[i * n + j] = true;
                    }
                }
            }
        }
        Ok(Poset { n, less })
    }

    pub fn chain(n: usize) -> Self {
        let rel: Vec<(usize, usize)> = (1..n).map(|i| (i, i + 1)).collect();
        Poset::new(n, &rel).expect("chain is valid")
    }

    pub fn antichain(n: usize) -> Self {
        Poset::new(n, &[]).expect("antichain is valid")
    }

    /// `1 ≺ 2, ..., k+1 ≺ k+2`.
    pub fn heisenberg(k: usize) -> Self {
        let top = k + 2;
        let mut rel = Vec::new();
        for mid in 2..=k + 1 {
            rel.push((1, mid));
            rel.push((mid, top));
        }
        Poset::new(top, &rel).expect("Heisenberg poset is valid")
    }

    /// Each pair `i < j` is related independently with probability `density`,
    /// then closed.
    pub fn random<R: Rng>(n: usize, density: f64, rng: &mut R) -> Self {
        let mut rel = Vec::new();
        for i in 1..=n {
            for j in i + 1..=n {
                if rng.gen_bool(density) {
                    rel.push((i, j));
                }
            }
        }
        Poset::new(n, &rel).expect("random relations respect i < j")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// 0-based strict comparison.
    pub fn lt(&self, i: usize, j: usize) -> bool {
        self.less[i * self.n + j]
    }

    /// All relations as 1-based pairs in lexicographic order.
    pub fn relations(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                if self.lt(i, j) {
                    out.push((i + 1, j + 1));
                }
            }
        }
        out
    }

    fn is_minimal(&self, i: usize) -> bool {
        (0..self.n).all(|k| !self.lt(k, i))
    }

    fn is_maximal(&self, j: usize) -> bool {
        (0..self.n).all(|k| !self.lt(j, k))
    }

    /// Comparable pairs `(i, j)` with `i` minimal and `j` maximal, 1-based.
    pub fn extreme_pairs(&self) -> Vec<(usize, usize)> {
        self.relations()
            .into_iter()
            .filter(|&(i, j)| self.is_minimal(i - 1) && self.is_maximal(j - 1))
            .collect()
    }

    /// `#{k : i ≺ k ≺ j}` for a comparable 1-based pair.
    pub fn alpha(&self, i: usize, j: usize) -> Result<usize> {
        if i == 0 || j == 0 || i > self.n || j > self.n || !self.lt(i - 1, j - 1) {
            return Err(Error::input(format!("({i}, {j}) is not a comparable pair")));
        }
        Ok((0..self.n)
            .filter(|&k| self.lt(i - 1, k) && self.lt(k, j - 1))
            .count())
    }

    /// Number of edges in a longest chain.
    pub fn length(&self) -> usize {
        // Longest path ending at each element, in increasing order.
        let mut best = vec![0usize; self.n];
        for j in 0..self.n {
            for i in 0..j {
                if self.lt(i, j) {
                    best[j] = best[j].max(best[i] + 1);
                }
            }
        }
        best.into_iter().max().unwrap_or(0)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: PosetFile = serde_json::from_str(text)?;
        let rel: Vec<(usize, usize)> = file.relations.iter().map(|r| (r[0], r[1])).collect();
        Poset::new(file.n, &rel)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Poset::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> String {
        let file = PosetFile {
            n: self.n,
            relations: self.relations().into_iter().map(|(i, j)| [i, j]).collect(),
        };
        serde_json::to_string(&file).expect("poset serializes")
    }
}

/// `Span_Z{e_ij : i ≺ j}` with `[e_ij, e_kl] = δ_jk e_il - δ_li e_kj`. Basis
/// in lexicographic order of `(i, j)`.
pub fn pattern_algebra(poset: &Poset) -> Result<ZLieAlgebra> {
    let pairs = poset.relations();
    let index = |i: usize, j: usize| pairs.iter().position(|&p| p == (i, j));
    let mut brackets = Vec::new();
    for (a, &(i, j)) in pairs.iter().enumerate() {
        for (b, &(k, l)) in pairs.iter().enumerate().skip(a + 1) {
            let mut r = Vec::new();
            if j == k {
                r.push((index(i, l).expect("closure contains i ≺ l"), 1));
            }
            if l == i {
                r.push((index(k, j).expect("closure contains k ≺ j"), -1));
            }
            if !r.is_empty() {
                brackets.push((a, b, r));
            }
        }
    }
    let names = pairs.iter().map(|&(i, j)| format!("e{i}_{j}")).collect();
    ZLieAlgebra::new(names, brackets)
}

/// `Σ_{(i,j) extreme} f q^{α(i,j)}`; needs `p > length`.
pub fn pattern_prediction(poset: &Poset, p: u64, f: u32) -> Result<u128> {
    let length = poset.length();
    if p <= length as u64 {
        return Err(Error::PrimeTooSmall {
            p,
            bound: length as u64,
            constant: "the poset length",
        });
    }
    let q = (p as u128).pow(f);
    poset
        .extreme_pairs()
        .into_iter()
        .map(|(i, j)| Ok(f as u128 * q.pow(poset.alpha(i, j)? as u32)))
        .sum()
}
