//! The Campbell–Baker–Hausdorff series truncated at a given degree.

use std::collections::BTreeMap;

use num_rational::Ratio;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::field::{Field, FiniteField};

/// Letter of a bracket word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    X,
    Y,
}

/// Right-nested word `[l_1, [l_2, ... [l_{k-1}, l_k]]]`.
pub type Word = Vec<Letter>;

fn factorial(n: usize) -> i64 {
    (1..=n as i64).product()
}

/// Terms of `log(e^X e^Y)` of degree at most `c` with rational coefficients,
/// from the Dynkin form
/// `Σ_n (-1)^{n+1}/n Σ [X^{a_1} Y^{b_1} ... X^{a_n} Y^{b_n}] / (N Π a_i! b_i!)`,
/// `a_i + b_i >= 1`, `N = Σ (a_i + b_i)`. Words whose last two letters agree
/// vanish and are dropped, words ending in `Y X` are flipped to `X Y`, and equal
/// words are merged.
pub fn rational_terms(c: usize) -> BTreeMap<Word, Ratio<i64>> {
    let mut terms: BTreeMap<Word, Ratio<i64>> = BTreeMap::new();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    fn walk(
        c: usize,
        used: usize,
        pairs: &mut Vec<(usize, usize)>,
        terms: &mut BTreeMap<Word, Ratio<i64>>,
    ) {
        if !pairs.is_empty() {
            let n = pairs.len() as i64;
            let total = used as i64;
            let mut denom = n * total;
            let mut word = Vec::with_capacity(used);
            for &(a, b) in pairs.iter() {
                denom *= factorial(a) * factorial(b);
                word.extend(std::iter::repeat(Letter::X).take(a));
                word.extend(std::iter::repeat(Letter::Y).take(b));
            }
            let k = word.len();
            if k == 1 || word[k - 1] != word[k - 2] {
                let mut sign = if n % 2 == 1 { 1 } else { -1 };
                // [.., [Y, X]] = -[.., [X, Y]].
                if k >= 2 && word[k - 2] == Letter::Y {
                    word.swap(k - 2, k - 1);
                    sign = -sign;
                }
                *terms.entry(word).or_insert_with(Ratio::zero) += Ratio::new(sign, denom);
            }
        }
        for a in 0..=c - used {
            for b in 0..=c - used - a {
                if a + b == 0 {
                    continue;
                }
                pairs.push((a, b));
                walk(c, used + a + b, pairs, terms);
                pairs.pop();
            }
        }
    }
    walk(c, 0, &mut pairs, &mut terms);
    terms.retain(|_, v| !v.is_zero());
    terms
}

/// The series reduced into a field of characteristic `p > c`.
#[derive(Clone, Debug)]
pub struct BchSeries {
    class: usize,
    terms: Vec<(Word, u32)>,
}

impl BchSeries {
    pub fn new(class: usize, field: &Field) -> Result<Self> {
        let p = field.characteristic();
        if p <= class as u64 {
            return Err(Error::PrimeTooSmall {
                p,
                bound: class as u64,
                constant: "the nilpotency class c",
            });
        }
        let terms = rational_terms(class.max(1))
            .into_iter()
            .map(|(w, r)| {
                let num = field.from_i64(*r.numer());
                let den = field.from_i64(*r.denom());
                (w, field.mul(num, field.inv(den)))
            })
            .filter(|(_, c)| *c != 0)
            .collect();
        Ok(BchSeries { class, terms })
    }

    pub fn class(&self) -> usize {
        self.class
    }

    pub fn terms(&self) -> &[(Word, u32)] {
        &self.terms
    }

    /// `Σ coeff · word(x, y)` with `bracket` supplying the Lie bracket.
    pub fn evaluate(
        &self,
        field: &Field,
        x: &[u32],
        y: &[u32],
        bracket: impl Fn(&[u32], &[u32]) -> Vec<u32>,
    ) -> Vec<u32> {
        let d = x.len();
        let mut out = vec![0u32; d];
        let mut memo: BTreeMap<&[Letter], Vec<u32>> = BTreeMap::new();
        for (word, coeff) in &self.terms {
            let value = nested(word, x, y, &bracket, &mut memo);
            for t in 0..d {
                out[t] = field.add(out[t], field.mul(*coeff, value[t]));
            }
        }
        out
    }
}

fn nested<'w>(
    word: &'w [Letter],
    x: &[u32],
    y: &[u32],
    bracket: &impl Fn(&[u32], &[u32]) -> Vec<u32>,
    memo: &mut BTreeMap<&'w [Letter], Vec<u32>>,
) -> Vec<u32> {
    if let Some(v) = memo.get(word) {
        return v.clone();
    }
    let head = match word[0] {
        Letter::X => x,
        Letter::Y => y,
    };
    let value = if word.len() == 1 {
        head.to_vec()
    } else {
        let tail = nested(&word[1..], x, y, bracket, memo);
        bracket(head, &tail)
    };
    memo.insert(word, value.clone());
    value
}
