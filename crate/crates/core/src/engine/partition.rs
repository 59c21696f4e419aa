//! Splitting F_p-bases into F_q-bases, and scaling regular sets into
//! admissible ones.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::exact::field::{FiniteField, PrimeField};
use crate::exact::matrix::FieldMatrix;

fn rank_over<F: FiniteField>(rows: &[&[u32]], dim: usize, field: &F) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let data: Vec<u32> = rows.iter().flat_map(|r| r[..dim].iter().copied()).collect();
    FieldMatrix::from_vec(rows.len(), dim, data).rank(field)
}

/// Coordinates over F_p of the first `dim` entries, `f` digits each.
fn prime_coordinates<F: FiniteField>(v: &[u32], dim: usize, field: &F) -> Vec<u32> {
    v[..dim].iter().flat_map(|&x| field.digits(x)).collect()
}

/// Rank over F_p of vectors of F_q^dim viewed in F_p^{dim f}.
pub fn prime_rank<F: FiniteField>(vectors: &[Vec<u32>], dim: usize, field: &F) -> Result<usize> {
    let prime = PrimeField::new(field.characteristic())?;
    let flat: Vec<Vec<u32>> = vectors.iter().map(|v| prime_coordinates(v, dim, field)).collect();
    let refs: Vec<&[u32]> = flat.iter().map(|v| v.as_slice()).collect();
    Ok(rank_over(&refs, dim * field.degree() as usize, &prime))
}

/// Partitions an F_p-basis `S` of F_q^{m'} into `f` blocks, each an F_q-basis.
/// Returns indices into `S`.
///
/// This is matroid partitioning: elements are placed one at a time, and when
/// no block accepts the new element a shortest exchange sequence is found by
/// breadth-first search, moving one element out of each block along it.
pub fn rado_horn_partition<F: FiniteField>(s: &[Vec<u32>], field: &F) -> Result<Vec<Vec<usize>>> {
    let f = field.degree() as usize;
    if s.len() % f != 0 {
        return Err(Error::input(format!("{} vectors cannot fill {f} blocks", s.len())));
    }
    let dim = s.len() / f;
    if s.iter().any(|v| v.len() != dim) {
        return Err(Error::input(format!("vectors must have length {dim}")));
    }
    if prime_rank(s, dim, field)? != s.len() {
        return Err(Error::input("vectors are not independent over the prime field"));
    }
    let mut blocks: Vec<Vec<usize>> = vec![Vec::new(); f];
    let independent_with = |block: &[usize], add: usize, drop: Option<usize>| -> bool {
        let mut rows: Vec<&[u32]> = block
            .iter()
            .filter(|&&e| Some(e) != drop)
            .map(|&e| s[e].as_slice())
            .collect();
        rows.push(&s[add]);
        rank_over(&rows, dim, field) == rows.len()
    };
    let mut owner: Vec<Option<usize>> = vec![None; s.len()];
    for x in 0..s.len() {
        // label[y] = (u, i): u enters block i, which y leaves.
        let mut label: Vec<Option<(usize, usize)>> = vec![None; s.len()];
        let mut seen = vec![false; s.len()];
        seen[x] = true;
        let mut queue = VecDeque::from([x]);
        let mut found = None;
        'bfs: while let Some(u) = queue.pop_front() {
            for i in 0..f {
                if owner[u] == Some(i) {
                    continue;
                }
                if independent_with(&blocks[i], u, None) {
                    found = Some((u, i));
                    break 'bfs;
                }
                for &y in &blocks[i] {
                    if !seen[y] && independent_with(&blocks[i], u, Some(y)) {
                        seen[y] = true;
                        label[y] = Some((u, i));
                        queue.push_back(y);
                    }
                }
            }
        }
        let (mut cur, i) = found.ok_or_else(|| Error::internal("no augmenting exchange exists"))?;
        if let Some(old) = owner[cur] {
            blocks[old].retain(|&e| e != cur);
        }
        blocks[i].push(cur);
        owner[cur] = Some(i);
        while cur != x {
            let (prev, blk) = label[cur].expect("path is labelled");
            // `cur` left `blk` above; `prev` takes its place.
            if let Some(old) = owner[prev] {
                blocks[old].retain(|&e| e != prev);
            }
            blocks[blk].push(prev);
            owner[prev] = Some(blk);
            cur = prev;
        }
    }
    for block in &mut blocks {
        block.sort_unstable();
        let rows: Vec<&[u32]> = block.iter().map(|&e| s[e].as_slice()).collect();
        if rows.len() != dim || rank_over(&rows, dim, field) != dim {
            return Err(Error::internal("partition block is not a basis"));
        }
    }
    Ok(blocks)
}

/// `1, T, ..., T^{f-1}` as encodings.
pub fn power_basis<F: FiniteField>(field: &F) -> Vec<u32> {
    let p = field.characteristic() as u32;
    (0..field.degree()).map(|i| p.pow(i)).collect()
}

/// Whether the projections of `points` to the first `lead` coordinates form
/// an F_p-basis of F_q^lead.
pub fn is_admissible<F: FiniteField>(points: &[Vec<u32>], lead: usize, field: &F) -> Result<bool> {
    let f = field.degree() as usize;
    Ok(points.len() == lead * f && prime_rank(points, lead, field)? == lead * f)
}

/// `{ω_i a_l}` for a regular set `a_1..a_lead` and an F_p-basis `ω` of F_q.
pub fn admissible_from_regular<F: FiniteField>(
    regular: &[Vec<u32>],
    lead: usize,
    omega: &[u32],
    field: &F,
) -> Result<Vec<Vec<u32>>> {
    let f = field.degree() as usize;
    if regular.len() != lead || regular.iter().any(|a| a.len() < lead) {
        return Err(Error::input(format!("a regular set needs {lead} points of length >= {lead}")));
    }
    let refs: Vec<&[u32]> = regular.iter().map(|a| a.as_slice()).collect();
    if rank_over(&refs, lead, field) != lead {
        return Err(Error::input("leading coordinates do not form a basis"));
    }
    let omega_rows: Vec<Vec<u32>> = omega.iter().map(|&w| vec![w]).collect();
    if omega.len() != f || prime_rank(&omega_rows, 1, field)? != f {
        return Err(Error::input("ω is not a basis of F_q over F_p"));
    }
    let out: Vec<Vec<u32>> = regular
        .iter()
        .flat_map(|a| omega.iter().map(move |&w| a.iter().map(|&x| field.mul(w, x)).collect()))
        .collect();
    if !is_admissible(&out, lead, field)? {
        return Err(Error::internal("scaled family is not admissible"));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::field::Field;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn single_block_when_f_is_one() {
        let k = Field::new(5, 1).unwrap();
        let s = vec![vec![1, 2], vec![0, 3]];
        assert_eq!(rado_horn_partition(&s, &k).unwrap(), vec![vec![0, 1]]);
    }

    #[test]
    fn nine_elements() {
        let k = Field::new(3, 2).unwrap();
        let w = 3; // T
        assert_eq!(
            rado_horn_partition(&[vec![1], vec![w]], &k).unwrap(),
            vec![vec![0], vec![1]]
        );
        let s = vec![vec![1, 0], vec![w, 0], vec![0, 1], vec![0, w]];
        let blocks = rado_horn_partition(&s, &k).unwrap();
        for b in &blocks {
            let m = FieldMatrix::from_rows(&[s[b[0]].clone(), s[b[1]].clone()]);
            assert_ne!(m.determinant(&k), 0);
        }
    }

    #[test]
    fn random_inputs_partition() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for (p, f) in [(3u64, 2u32), (3, 3), (5, 2)] {
            let k = Field::new(p, f).unwrap();
            for dim in 1..=3usize {
                let total = dim * f as usize;
                let s = loop {
                    let s: Vec<Vec<u32>> = (0..total)
                        .map(|_| (0..dim).map(|_| rng.gen_range(0..k.order() as u32)).collect())
                        .collect();
                    if prime_rank(&s, dim, &k).unwrap() == total {
                        break s;
                    }
                };
                let blocks = rado_horn_partition(&s, &k).unwrap();
                let mut all: Vec<usize> = blocks.concat();
                all.sort_unstable();
                assert_eq!(all, (0..total).collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn rejects_dependent_input() {
        let k = Field::new(3, 2).unwrap();
        assert!(rado_horn_partition(&[vec![1], vec![2]], &k).is_err());
    }

    #[test]
    fn scaling_gives_admissible_sets() {
        let k = Field::new(3, 2).unwrap();
        let regular = vec![vec![1, 0, 5], vec![2, 1, 0]];
        let out = admissible_from_regular(&regular, 2, &power_basis(&k), &k).unwrap();
        assert_eq!(out.len(), 4);
        assert!(is_admissible(&out, 2, &k).unwrap());
        let p = Field::new(7, 1).unwrap();
        let id = admissible_from_regular(&[vec![3]], 1, &[1], &p).unwrap();
        assert_eq!(id, vec![vec![3]]);
        assert!(admissible_from_regular(&[vec![1, 1], vec![2, 2]], 2, &[1], &p).is_err());
    }
}
