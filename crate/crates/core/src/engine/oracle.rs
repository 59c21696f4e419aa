//! Brute-force minimisation over regular sets, independent of the matroid
//! argument.

use crate::commutator::LinearFormMatrix;
use crate::engine::points::ProjectiveRange;
use crate::error::{Error, Result};
use crate::exact::field::{Field, FiniteField};
use crate::exact::matrix::{EchelonBasis, FieldMatrix};

/// Largest number of projective classes the oracle will enumerate.
pub const EXHAUSTIVE_LIMIT: u64 = 2_000_000;

/// Minimum of `f Σ q^{rk F(a_i)/2} + f l2` over all `l1`-tuples with an
/// invertible leading block.
///
/// Scaling a point changes neither its rank nor the invertibility of the
/// block, and a repeated class makes the block singular, so it suffices to
/// range over sets of `l1` distinct projective classes. The search is a
/// depth-first enumeration of those sets in weight order, cut off only when
/// the partial sum plus the cheapest possible completion cannot beat the best
/// value found.
pub fn exhaustive_min(forms: &LinearFormMatrix, field: &Field, l1: usize, l2: usize) -> Result<u128> {
    let (q, f) = (field.order(), field.degree());
    let m = forms.m();
    if l1 > m {
        return Err(Error::input(format!("l1 = {l1} exceeds the {m} variables")));
    }
    let range = ProjectiveRange::new(q, m, l1);
    if range.len() > EXHAUSTIVE_LIMIT {
        return Err(Error::TooLarge {
            estimate: range.len() as f64,
            limit: EXHAUSTIVE_LIMIT as f64,
        });
    }
    let mut points: Vec<(u128, Vec<u32>)> = Vec::with_capacity(range.len() as usize);
    let mut buf = vec![0u32; m];
    for idx in 0..range.len() {
        range.point(idx, &mut buf);
        let r = forms.specialize(&buf, field)?.rank(field);
        let w = (q as u128)
            .checked_pow((r / 2) as u32)
            .ok_or_else(|| Error::input("weight overflows 128 bits"))?;
        points.push((w, buf[..l1].to_vec()));
    }
    points.sort_by_key(|p| p.0);

    struct Search<'a> {
        points: &'a [(u128, Vec<u32>)],
        field: &'a Field,
        l1: usize,
        best: Option<u128>,
    }
    impl Search<'_> {
        fn walk(&mut self, start: usize, chosen: usize, sum: u128, basis: &EchelonBasis) {
            if chosen == self.l1 {
                self.best = Some(self.best.map_or(sum, |b| b.min(sum)));
                return;
            }
            let need = (self.l1 - chosen) as u128;
            for k in start..self.points.len() {
                let (w, proj) = &self.points[k];
                if let Some(b) = self.best {
                    if sum + need * w >= b {
                        break;
                    }
                }
                let mut next = basis.clone();
                if next.insert(proj, self.field) {
                    self.walk(k + 1, chosen + 1, sum + w, &next);
                }
            }
        }
    }
    let mut search = Search {
        points: &points,
        field,
        l1,
        best: None,
    };
    search.walk(0, 0, 0, &EchelonBasis::new(l1));
    let best = search
        .best
        .ok_or_else(|| Error::internal("no regular set exists"))?;
    Ok(f as u128 * (best + l2 as u128))
}

/// Whether the leading `l1 x l1` block of `points` is invertible.
pub fn is_regular(points: &[Vec<u32>], l1: usize, field: &Field) -> bool {
    if points.len() != l1 {
        return false;
    }
    let mut lead = FieldMatrix::zeros(l1, l1);
    for (i, a) in points.iter().enumerate() {
        for j in 0..l1 {
            lead.set(i, j, a[j]);
        }
    }
    lead.rank(field) == l1
}
