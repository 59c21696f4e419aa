//! Hall bases of free Lie algebras and the free nilpotent and free metabelian
//! algebras built on them.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::lie::algebra::{Sparse, ZLieAlgebra};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HallTree {
    Letter(usize),
    /// Bracket of two earlier Hall words, by index into the basis.
    Pair(usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HallWord {
    pub tree: HallTree,
    pub length: usize,
}

/// Hall words of length at most `c` on `n` letters, in the Hall order:
/// shorter words first, and within a length by (left index, right index).
#[derive(Clone, Debug)]
pub struct HallBasis {
    n: usize,
    c: usize,
    words: Vec<HallWord>,
    index: HashMap<(usize, usize), usize>,
}

impl HallBasis {
    pub fn new(n: usize, c: usize) -> Result<Self> {
        if n == 0 || c == 0 {
            return Err(Error::input("Hall basis needs n >= 1 and c >= 1"));
        }
        let mut words: Vec<HallWord> = (0..n)
            .map(|i| HallWord {
                tree: HallTree::Letter(i),
                length: 1,
            })
            .collect();
        let mut index = HashMap::new();
        for len in 2..=c {
            let mut fresh: Vec<(usize, usize)> = Vec::new();
            for a in 0..words.len() {
                for b in a + 1..words.len() {
                    if words[a].length + words[b].length != len {
                        continue;
                    }
                    let ok = match words[b].tree {
                        HallTree::Letter(_) => true,
                        HallTree::Pair(b1, _) => b1 <= a,
                    };
                    if ok {
                        fresh.push((a, b));
                    }
                }
            }
            fresh.sort();
            for (a, b) in fresh {
                index.insert((a, b), words.len());
                words.push(HallWord {
                    tree: HallTree::Pair(a, b),
                    length: len,
                });
            }
        }
        Ok(HallBasis { n, c, words, index })
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> &[HallWord] {
        &self.words
    }

    /// Number of words of each length `1..=c`.
    pub fn group_sizes(&self) -> Vec<usize> {
        (1..=self.c)
            .map(|k| self.words.iter().filter(|w| w.length == k).count())
            .collect()
    }

    pub fn find(&self, left: usize, right: usize) -> Option<usize> {
        self.index.get(&(left, right)).copied()
    }

    /// Bracket notation such as `[x1,[x1,x2]]`.
    pub fn render(&self, i: usize) -> String {
        match self.words[i].tree {
            HallTree::Letter(k) => format!("x{}", k + 1),
            HallTree::Pair(a, b) => format!("[{},{}]", self.render(a), self.render(b)),
        }
    }

    /// Looks up a word given in bracket notation.
    pub fn parse(&self, text: &str) -> Option<usize> {
        (0..self.len()).find(|&i| self.render(i) == text)
    }

    pub fn generators(&self) -> usize {
        self.n
    }
}

impl fmt::Display for HallBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len() {
            writeln!(f, "{}", self.render(i))?;
        }
        Ok(())
    }
}

/// Expresses brackets of Hall words in the Hall basis of `f_{n,c}`.
struct Rewriter<'a> {
    basis: &'a HallBasis,
    memo: HashMap<(usize, usize), Sparse>,
    limit: usize,
}

fn add_scaled(acc: &mut Vec<(usize, i64)>, v: &Sparse, k: i64) {
    for &(i, c) in v {
        acc.push((i, c * k));
    }
}

fn collect(mut v: Vec<(usize, i64)>) -> Sparse {
    v.sort_by_key(|&(i, _)| i);
    let mut out: Sparse = Vec::new();
    for (i, c) in v {
        match out.last_mut() {
            Some((j, d)) if *j == i => *d += c,
            _ => out.push((i, c)),
        }
    }
    out.retain(|&(_, c)| c != 0);
    out
}

impl<'a> Rewriter<'a> {
    fn word(&mut self, a: usize, b: usize, depth: usize) -> Result<Sparse> {
        if depth > self.limit {
            return Err(Error::internal(format!(
                "Hall rewriting exceeded depth {} on ({a}, {b})",
                self.limit
            )));
        }
        if a == b {
            return Ok(Sparse::new());
        }
        if a > b {
            let v = self.word(b, a, depth + 1)?;
            return Ok(v.into_iter().map(|(i, c)| (i, -c)).collect());
        }
        let words = &self.basis.words;
        if words[a].length + words[b].length > self.basis.c {
            return Ok(Sparse::new());
        }
        if let Some(v) = self.memo.get(&(a, b)) {
            return Ok(v.clone());
        }
        let result = match words[b].tree {
            HallTree::Letter(_) => vec![(self.find(a, b)?, 1)],
            HallTree::Pair(b1, _) if b1 <= a => vec![(self.find(a, b)?, 1)],
            HallTree::Pair(b1, b2) => {
                // [a,[b1,b2]] = -[b2,[a,b1]] + [b1,[a,b2]].
                let ab1 = self.word(a, b1, depth + 1)?;
                let ab2 = self.word(a, b2, depth + 1)?;
                let mut acc = Vec::new();
                for (t, c) in ab1 {
                    let v = self.word(b2, t, depth + 1)?;
                    add_scaled(&mut acc, &v, -c);
                }
                for (t, c) in ab2 {
                    let v = self.word(b1, t, depth + 1)?;
                    add_scaled(&mut acc, &v, c);
                }
                collect(acc)
            }
        };
        self.memo.insert((a, b), result.clone());
        Ok(result)
    }

    fn find(&self, a: usize, b: usize) -> Result<usize> {
        self.basis
            .find(a, b)
            .ok_or_else(|| Error::internal(format!("expected a Hall word for ({a}, {b})")))
    }
}

/// Witt's necklace count `r_n(c) = (1/c) Σ_{d | c} μ(d) n^{c/d}`.
pub fn witt(n: u64, c: u64) -> u64 {
    let mut total: i128 = 0;
    for d in 1..=c {
        if c % d == 0 {
            total += mobius(d) as i128 * (n as i128).pow((c / d) as u32);
        }
    }
    (total / c as i128) as u64
}

fn mobius(mut n: u64) -> i64 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// `f_{n,c}` on its Hall basis, graded by word length.
pub fn free_nilpotent(n: usize, c: usize) -> Result<ZLieAlgebra> {
    if n < 2 || c < 2 {
        return Err(Error::input("free nilpotent algebras need n >= 2 and c >= 2"));
    }
    let basis = HallBasis::new(n, c)?;
    if basis.len() > 400 {
        return Err(Error::input(format!(
            "f_{{{n},{c}}} has dimension {}, beyond the supported size",
            basis.len()
        )));
    }
    let mut rw = Rewriter {
        basis: &basis,
        memo: HashMap::new(),
        limit: 10 * c,
    };
    let d = basis.len();
    let mut brackets = Vec::new();
    for i in 0..d {
        for j in i + 1..d {
            let v = rw.word(i, j, 0)?;
            if !v.is_empty() {
                brackets.push((i, j, v));
            }
        }
    }
    let names = (0..d).map(|i| basis.render(i)).collect();
    let degrees = basis.words().iter().map(|w| w.length).collect();
    ZLieAlgebra::new(names, brackets)?.with_degrees(degrees)
}

/// The free metabelian algebra `m_{2,c}` on `x1, x2, y^k_l` with
/// `[x1,x2] = y^2_1`, `[x1, y^k_l] = y^{k+1}_l`, `[x2, y^k_l] = y^{k+1}_{l+1}`.
pub fn free_metabelian_2(c: usize) -> Result<ZLieAlgebra> {
    if c < 2 {
        return Err(Error::input("free metabelian algebras need c >= 2"));
    }
    let mut names = vec!["x1".to_string(), "x2".to_string()];
    let mut degrees = vec![1, 1];
    let mut index = HashMap::new();
    for k in 2..=c {
        for l in 1..k {
            index.insert((k, l), names.len());
            names.push(format!("y{k}_{l}"));
            degrees.push(k);
        }
    }
    let mut brackets = vec![(0, 1, vec![(index[&(2, 1)], 1)])];
    for k in 2..c {
        for l in 1..k {
            let y = index[&(k, l)];
            brackets.push((0, y, vec![(index[&(k + 1, l)], 1)]));
            brackets.push((1, y, vec![(index[&(k + 1, l + 1)], 1)]));
        }
    }
    ZLieAlgebra::new(names, brackets)?.with_degrees(degrees)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::commutator::forms::reduced_commutator_matrix;

    #[test]
    fn witt_numbers() {
        assert_eq!(witt(3, 3), 8);
        assert_eq!(witt(2, 1), 2);
        assert_eq!(witt(2, 6), 9);
        assert_eq!((1..=6).map(|k| witt(2, k)).collect::<Vec<_>>(), vec![2, 1, 2, 3, 6, 9]);
    }

    #[test]
    fn hall_sizes_match_witt() {
        for n in 1..=3usize {
            for c in 1..=6usize {
                let b = HallBasis::new(n, c).unwrap();
                let expected: Vec<usize> = (1..=c).map(|k| witt(n as u64, k as u64) as usize).collect();
                assert_eq!(b.group_sizes(), expected, "n={n} c={c}");
            }
        }
    }

    #[test]
    fn hall_words_of_f33() {
        let b = HallBasis::new(3, 3).unwrap();
        let rendered: Vec<String> = (0..b.len()).map(|i| b.render(i)).collect();
        assert_eq!(
            rendered,
            vec![
                "x1", "x2", "x3", "[x1,x2]", "[x1,x3]", "[x2,x3]",
                "[x1,[x1,x2]]", "[x1,[x1,x3]]", "[x2,[x1,x2]]", "[x2,[x1,x3]]",
                "[x2,[x2,x3]]", "[x3,[x1,x2]]", "[x3,[x1,x3]]", "[x3,[x2,x3]]",
            ]
        );
        assert_eq!(HallBasis::new(2, 2).unwrap().len(), 3);
    }

    #[test]
    fn free_algebras_satisfy_jacobi() {
        for (n, c) in [(2, 2), (2, 3), (2, 4), (2, 5), (2, 6), (3, 2), (3, 3), (4, 2)] {
            let g = free_nilpotent(n, c).unwrap();
            g.validate().unwrap();
            assert_eq!(g.nilpotency_class().unwrap(), c, "n={n} c={c}");
            let top = witt(n as u64, c as u64) as usize;
            assert_eq!(g.center().rank(), top);
        }
    }

    #[test]
    fn f22_is_heisenberg() {
        let g = free_nilpotent(2, 2).unwrap();
        assert_eq!(g.dim(), 3);
        assert_eq!(g.bracket_basis(0, 1), &vec![(2, 1)]);
    }

    #[test]
    fn f33_reduced_matrix_matches_display() {
        let g = free_nilpotent(3, 3).unwrap();
        let f = reduced_commutator_matrix(&g).unwrap();
        // Rows x1..x3, columns [x1,x2], [x1,x3], [x2,x3]; T_k = k-th word of length 3.
        let block: Vec<Vec<String>> = (0..3).map(|i| (3..6).map(|j| f.render(i, j)).collect()).collect();
        let expected = [
            ["T1", "T2", "T4 - T6"],
            ["T3", "T4", "T5"],
            ["T6", "T7", "T8"],
        ];
        for (row, exp) in block.iter().zip(expected) {
            assert_eq!(row, &exp.map(String::from).to_vec());
        }
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(f.render(i, j), "0");
            }
        }
    }

    #[test]
    fn f26_reduced_blocks() {
        let g = free_nilpotent(2, 6).unwrap();
        let f = reduced_commutator_matrix(&g).unwrap();
        assert_eq!((f.n(), f.m()), (14, 9));
        let degrees = g.degrees().unwrap();
        // Only blocks with degree sum six are nonzero.
        for i in 0..14 {
            for j in 0..14 {
                if degrees[i] + degrees[j] != 6 {
                    assert!(f.form(i, j).iter().all(|&c| c == 0));
                }
            }
        }
        // Degree 2 row against the three degree-4 columns: three distinct single variables.
        let row: Vec<String> = (5..8).map(|j| f.render(2, j)).collect();
        assert!(row.iter().all(|s| s.starts_with('T') && !s.contains(' ')), "{row:?}");
        // The degree-3 block is [[0, t], [-t, 0]] for one variable t.
        assert_eq!(f.render(3, 3), "0");
        assert_eq!(f.render(3, 4), format!("-{}", f.render(4, 3)).replace("--", ""));
        assert!(!f.render(3, 4).contains(' '));
    }

    #[test]
    fn metabelian_structure() {
        for c in 2..=6 {
            let g = free_metabelian_2(c).unwrap();
            g.validate().unwrap();
            assert_eq!(g.dim(), 2 + (2..=c).map(|k| k - 1).sum::<usize>());
            assert_eq!(g.nilpotency_class().unwrap(), c);
            let derived = g.derived();
            let basis = derived.basis_i64();
            for x in &basis {
                for y in &basis {
                    assert!(g.bracket(x, y).iter().all(|&v| v == 0));
                }
            }
        }
        assert_eq!(free_metabelian_2(2).unwrap().dim(), 3);
    }
}
