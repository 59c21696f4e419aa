use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::commutator::LinearFormMatrix;
use crate::engine::points::{affine_count, ProjectiveRange};
use crate::error::{Error, Result};
use crate::exact::field::{Field, FiniteField};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Stratum {
    pub count: u64,
    pub samples: Vec<Vec<u32>>,
}

/// Points of F_q^m grouped by the half-rank of `F` there.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StrataIndex {
    pub strata: BTreeMap<u32, Stratum>,
    /// `false` when counts come from a sample.
    pub exhaustive: bool,
}

impl StrataIndex {
    pub fn count(&self, half: u32) -> u64 {
        self.strata.get(&half).map_or(0, |s| s.count)
    }

    pub fn total(&self) -> u64 {
        self.strata.values().map(|s| s.count).sum()
    }
}

/// Keeps at most this many sample points per stratum.
pub const SAMPLE_CAP: usize = 8;

pub fn rank_strata(forms: &LinearFormMatrix, field: &Field, budget: u64) -> Result<StrataIndex> {
    let (q, m, n) = (field.order(), forms.m(), forms.n());
    let reduced = forms.reduce(field);
    let mut strata: BTreeMap<u32, Stratum> = BTreeMap::new();
    let mut buf = vec![0u32; n * n];
    let mut record = |point: &[u32], weight: u64, buf: &mut Vec<u32>| -> Result<()> {
        let r = reduced.rank_at(point, field, buf);
        if r % 2 == 1 {
            return Err(Error::internal(format!("odd rank {r}")));
        }
        let s = strata.entry((r / 2) as u32).or_default();
        s.count += weight;
        if s.samples.len() < SAMPLE_CAP {
            s.samples.push(point.to_vec());
        }
        Ok(())
    };
    let exhaustive = affine_count(q, m) <= budget;
    if exhaustive {
        record(&vec![0; m], 1, &mut buf)?;
        // Each projective class contributes its q - 1 nonzero multiples.
        let range = ProjectiveRange::new(q, m, m);
        let mut point = vec![0u32; m];
        for idx in 0..range.len() {
            range.point(idx, &mut point);
            record(&point, q - 1, &mut buf)?;
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for _ in 0..budget {
            let point: Vec<u32> = (0..m).map(|_| rng.gen_range(0..q) as u32).collect();
            record(&point, 1, &mut buf)?;
        }
    }
    Ok(StrataIndex { strata, exhaustive })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::commutator::{adapted_basis, commutator_matrix};
    use crate::constructors::examples;

    fn strata(p: u64) -> StrataIndex {
        let g = examples::binary_quadratic();
        let forms = commutator_matrix(&g, &adapted_basis(&g).unwrap()).unwrap();
        rank_strata(&forms, &Field::new(p, 1).unwrap(), 1 << 20).unwrap()
    }

    #[test]
    fn binary_quadratic_strata() {
        // T1^2 + T2^2 = 0 has 2(p - 1) nonzero solutions when p = 1 mod 4.
        let s5 = strata(5);
        assert!(s5.exhaustive);
        assert_eq!(s5.total(), 25);
        assert_eq!(s5.count(0), 1);
        assert_eq!(s5.count(1), 8);
        assert_eq!(s5.count(2), 16);
        let s7 = strata(7);
        assert_eq!(s7.count(1), 0);
        assert_eq!(s7.count(2), 48);
        assert_eq!(s7.strata[&0].samples, vec![vec![0, 0]]);
    }

    #[test]
    fn sampled_strata_are_flagged() {
        let g = examples::lee();
        let forms = commutator_matrix(&g, &adapted_basis(&g).unwrap()).unwrap();
        let s = rank_strata(&forms, &Field::new(101, 1).unwrap(), 500).unwrap();
        assert!(!s.exhaustive);
        assert_eq!(s.total(), 500);
    }
}
