//! Minimum-weight regular sets by the matroid greedy algorithm.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::commutator::{LinearFormMatrix, ReducedForms};
use crate::engine::points::{affine_count, ProjectiveRange};
use crate::engine::signature::RankSignature;
use crate::error::{Error, Result};
use crate::exact::field::{ExtensionField, Field, FiniteField, PrimeField};
use crate::exact::matrix::{EchelonBasis, FieldMatrix};

pub const DEFAULT_BUDGET: u64 = 100_000_000;

const CHUNK: usize = 1 << 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Exact,
    UpperBound,
}

impl Mode {
    pub fn as_str(&self) -> &'static str {
        match self {
            Mode::Exact => "exact",
            Mode::UpperBound => "upper-bound",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MinimizeOptions {
    /// Exact enumeration runs when `q^m <= budget`; otherwise this many
    /// random points are sampled.
    pub budget: u64,
    pub seed: u64,
}

impl Default for MinimizeOptions {
    fn default() -> Self {
        MinimizeOptions {
            budget: DEFAULT_BUDGET,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaithfulDimResult {
    pub value: u128,
    pub signature: RankSignature,
    /// `l1` points of F_q^m in greedy order, as field encodings.
    pub witness: Vec<Vec<u32>>,
    pub mode: Mode,
    pub p: u64,
    pub f: u32,
    pub q: u64,
    pub l1: usize,
    pub l2: usize,
}

fn weight_value(halves: &[u32], q: u64, l2: usize, f: u32) -> Result<(RankSignature, u128)> {
    let sig = RankSignature::new(halves.to_vec());
    let value = sig
        .value(q, l2, f)
        .ok_or_else(|| Error::input("faithful dimension overflows 128 bits"))?;
    Ok((sig, value))
}

fn odd_rank(rank: usize) -> Error {
    Error::internal(format!("specialized commutator matrix has odd rank {rank}"))
}

/// Half-ranks of `F` at representatives `0..range.len()`.
fn projective_half_ranks<F: FiniteField>(
    reduced: &ReducedForms,
    field: &F,
    range: &ProjectiveRange,
    m: usize,
) -> Result<Vec<u8>> {
    let n = reduced.n();
    let mut halves = vec![0u8; range.len() as usize];
    let odd = halves
        .par_chunks_mut(CHUNK)
        .enumerate()
        .map(|(c, out)| {
            let mut point = vec![0u32; m];
            let mut buf = vec![0u32; n * n];
            let mut odd = None;
            for (k, h) in out.iter_mut().enumerate() {
                range.point((c * CHUNK + k) as u64, &mut point);
                let r = reduced.rank_at(&point, field, &mut buf);
                if r % 2 == 1 {
                    odd.get_or_insert(r);
                }
                *h = (r / 2) as u8;
            }
            odd
        })
        .reduce(|| None, |a, b| a.or(b));
    match odd {
        Some(r) => Err(odd_rank(r)),
        None => Ok(halves),
    }
}

fn exact_greedy<F: FiniteField>(
    forms: &LinearFormMatrix,
    field: &F,
    l1: usize,
) -> Result<(Vec<u32>, Vec<Vec<u32>>)> {
    let m = forms.m();
    let reduced = forms.reduce(field);
    let range = ProjectiveRange::new(field.order(), m, l1);
    let halves = projective_half_ranks(&reduced, field, &range, m)?;
    let mut basis = EchelonBasis::new(l1);
    let mut chosen_halves = Vec::with_capacity(l1);
    let mut witness = Vec::with_capacity(l1);
    let mut point = vec![0u32; m];
    'levels: for level in 0..=(forms.n() / 2) as u8 {
        for (idx, _) in halves.iter().enumerate().filter(|(_, &h)| h == level) {
            range.point(idx as u64, &mut point);
            if basis.insert(&point[..l1], field) {
                chosen_halves.push(level as u32);
                witness.push(point.clone());
                if basis.is_full() {
                    break 'levels;
                }
            }
        }
    }
    if !basis.is_full() {
        return Err(Error::internal("exhaustive enumeration did not span the leading coordinates"));
    }
    Ok((chosen_halves, witness))
}

/// Coefficients `c` with `Σ c_i rows[i] = v`, if any.
fn express<F: FiniteField>(rows: &[Vec<u32>], v: &[u32], field: &F) -> Option<Vec<u32>> {
    let (k, dim) = (rows.len(), v.len());
    // Columns are the given rows; augmented by `v`.
    let mut a = FieldMatrix::zeros(dim, k + 1);
    for (j, row) in rows.iter().enumerate() {
        for i in 0..dim {
            a.set(i, j, row[i]);
        }
    }
    for i in 0..dim {
        a.set(i, k, v[i]);
    }
    let pivots = a.reduce_rows(field);
    if pivots.contains(&k) {
        return None;
    }
    let mut c = vec![0u32; k];
    for (r, &pc) in pivots.iter().enumerate() {
        c[pc] = a.get(r, k);
    }
    Some(c)
}

/// Minimum-weight independent set of the points seen so far, maintained by
/// circuit exchange. Keys `(half, order)` are distinct, so the result is the
/// basis the offline greedy would pick.
struct OnlineBasis {
    l1: usize,
    members: Vec<(u32, u64, Vec<u32>)>,
}

impl OnlineBasis {
    fn offer<F: FiniteField>(&mut self, half: u32, order: u64, point: &[u32], field: &F) {
        if self.members.len() == self.l1 {
            let worst = self.members.iter().map(|m| m.0).max().unwrap_or(0);
            if half >= worst {
                return;
            }
        }
        let proj: Vec<Vec<u32>> = self.members.iter().map(|m| m.2[..self.l1].to_vec()).collect();
        match express(&proj, &point[..self.l1], field) {
            None => self.members.push((half, order, point.to_vec())),
            Some(c) => {
                let out = (0..self.members.len())
                    .filter(|&i| c[i] != 0)
                    .max_by_key(|&i| (self.members[i].0, self.members[i].1));
                if let Some(i) = out {
                    if (self.members[i].0, self.members[i].1) > (half, order) {
                        self.members[i] = (half, order, point.to_vec());
                    }
                }
            }
        }
    }
}

fn sampled_greedy<F: FiniteField>(
    forms: &LinearFormMatrix,
    field: &F,
    l1: usize,
    opts: &MinimizeOptions,
) -> Result<(Vec<u32>, Vec<Vec<u32>>)> {
    let (m, n) = (forms.m(), forms.n());
    let q = field.order();
    let reduced = forms.reduce(field);
    let mut online = OnlineBasis {
        l1,
        members: Vec::new(),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let batch = CHUNK * 16;
    let mut order = 0u64;
    // Axis points come first, then the random sample.
    let mut pending: Vec<Vec<u32>> = (0..m)
        .map(|i| (0..m).map(|j| u32::from(i == j)).collect())
        .collect();
    let mut drawn = 0u64;
    loop {
        while pending.len() < batch && drawn < opts.budget {
            drawn += 1;
            let mut x: Vec<u32> = (0..m).map(|_| rng.gen_range(0..q) as u32).collect();
            let Some(lead) = x[..l1].iter().position(|&c| c != 0) else {
                continue;
            };
            let inv = field.inv(x[lead]);
            x.iter_mut().for_each(|c| *c = field.mul(*c, inv));
            pending.push(x);
        }
        if pending.is_empty() {
            break;
        }
        let halves: Vec<usize> = pending
            .par_iter()
            .map_init(
                || vec![0u32; n * n],
                |buf, x| reduced.rank_at(x, field, buf),
            )
            .collect();
        for (x, r) in pending.drain(..).zip(halves) {
            if r % 2 == 1 {
                return Err(odd_rank(r));
            }
            online.offer((r / 2) as u32, order, &x, field);
            order += 1;
        }
    }
    if online.members.len() < l1 {
        return Err(Error::NoWitness { l1 });
    }
    online.members.sort_by_key(|m| (m.0, m.1));
    Ok((
        online.members.iter().map(|m| m.0).collect(),
        online.members.into_iter().map(|m| m.2).collect(),
    ))
}

/// Generic core of [`minimize`].
pub fn minimize_in<F: FiniteField>(
    forms: &LinearFormMatrix,
    field: &F,
    l1: usize,
    l2: usize,
    opts: &MinimizeOptions,
) -> Result<FaithfulDimResult> {
    let m = forms.m();
    if l1 > m {
        return Err(Error::input(format!("l1 = {l1} exceeds the {m} variables")));
    }
    let (p, f, q) = (field.characteristic(), field.degree(), field.order());
    let exact = affine_count(q, m) <= opts.budget;
    let (halves, witness) = if l1 == 0 {
        (Vec::new(), Vec::new())
    } else if exact {
        exact_greedy(forms, field, l1)?
    } else {
        sampled_greedy(forms, field, l1, opts)?
    };
    let (signature, value) = weight_value(&halves, q, l2, f)?;
    Ok(FaithfulDimResult {
        value,
        signature,
        witness,
        mode: if exact { Mode::Exact } else { Mode::UpperBound },
        p,
        f,
        q,
        l1,
        l2,
    })
}

/// `min f Σ q^{rk F(a_i)/2} + f l2` over regular sets `a_1..a_l1`, with the
/// leading `l1` coordinates of the points spanning F_q^{l1}.
pub fn minimize(
    forms: &LinearFormMatrix,
    field: &Field,
    l1: usize,
    l2: usize,
    opts: &MinimizeOptions,
) -> Result<FaithfulDimResult> {
    match field {
        Field::Prime(k) => minimize_in::<PrimeField>(forms, k, l1, l2, opts),
        Field::Extension(k) => minimize_in::<ExtensionField>(forms, k, l1, l2, opts),
    }
}

/// Re-evaluates the witness: ranks must reproduce the signature and the
/// leading block must be invertible.
pub fn verify_witness(forms: &LinearFormMatrix, field: &Field, result: &FaithfulDimResult) -> Result<()> {
    let l1 = result.l1;
    if result.witness.len() != l1 {
        return Err(Error::internal("witness has the wrong number of points"));
    }
    let mut halves = Vec::with_capacity(l1);
    let mut lead = FieldMatrix::zeros(l1, l1);
    for (i, a) in result.witness.iter().enumerate() {
        let r = forms.specialize(a, field)?.rank(field);
        if r % 2 == 1 {
            return Err(odd_rank(r));
        }
        halves.push((r / 2) as u32);
        for j in 0..l1 {
            lead.set(i, j, a[j]);
        }
    }
    if RankSignature::new(halves) != result.signature {
        return Err(Error::internal("witness ranks disagree with the signature"));
    }
    if l1 > 0 && lead.determinant(field) == 0 {
        return Err(Error::internal("witness leading block is singular"));
    }
    let (_, value) = weight_value(result.signature.halves(), result.q, result.l2, result.f)?;
    if value != result.value {
        return Err(Error::internal("value disagrees with the signature"));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::commutator::{adapted_basis, commutator_matrix};
    use crate::constructors::examples;

    fn run(g: &crate::lie::ZLieAlgebra, p: u64, f: u32, opts: &MinimizeOptions) -> FaithfulDimResult {
        let basis = adapted_basis(g).unwrap();
        let forms = commutator_matrix(g, &basis).unwrap();
        let field = Field::new(p, f).unwrap();
        let r = minimize(&forms, &field, basis.l1, basis.l2, opts).unwrap();
        verify_witness(&forms, &field, &r).unwrap();
        r
    }

    #[test]
    fn binary_quadratic_values() {
        let g = examples::binary_quadratic();
        let opts = MinimizeOptions::default();
        let r = run(&g, 5, 1, &opts);
        assert_eq!((r.value, r.signature.halves()), (10, &[1, 1][..]));
        assert_eq!(r.mode, Mode::Exact);
        let r = run(&g, 7, 1, &opts);
        assert_eq!((r.value, r.signature.halves()), (98, &[2, 2][..]));
        assert_eq!(run(&g, 3, 2, &opts).value, 36);
    }

    #[test]
    fn abelian_is_f_l2() {
        let g = crate::lie::ZLieAlgebra::abelian(3);
        let r = run(&g, 7, 2, &MinimizeOptions::default());
        assert_eq!(r.value, 6);
        assert!(r.witness.is_empty());
    }

    #[test]
    fn sampling_is_an_upper_bound() {
        let g = examples::lee();
        let exact = run(&g, 7, 1, &MinimizeOptions::default());
        for seed in 0..3 {
            let opts = MinimizeOptions { budget: 40, seed };
            let s = run(&g, 7, 1, &opts);
            assert_eq!(s.mode, Mode::UpperBound);
            assert!(s.value >= exact.value);
        }
        // A large sample finds the optimum.
        let s = run(&g, 7, 1, &MinimizeOptions { budget: 300, seed: 1 });
        assert_eq!(s.value, exact.value);
    }

    #[test]
    fn express_finds_coefficients() {
        let k = PrimeField::new(7).unwrap();
        let rows = vec![vec![1, 0, 2], vec![0, 1, 3]];
        let c = express(&rows, &[2, 3, 6], &k).unwrap();
        assert_eq!(c, vec![2, 3]);
        assert!(express(&rows, &[0, 0, 1], &k).is_none());
    }
}
