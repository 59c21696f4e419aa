//! Projective representatives of F_q^m: vectors whose first nonzero
//! coordinate is 1, indexed in lexicographic order of their encodings.

/// Representatives with leading position in `0..lead`, i.e. with a nonzero
/// coordinate among the first `lead`. Lexicographic order lists larger leading
/// positions first, so block `s` holds the `q^(m-s-1)` vectors
/// `(0, ..., 0, 1, *)` with the 1 at position `s`.
#[derive(Clone, Debug)]
pub struct ProjectiveRange {
    q: u64,
    m: usize,
    /// `(position, first index)` in enumeration order.
    blocks: Vec<(usize, u64)>,
    total: u64,
}

impl ProjectiveRange {
    pub fn new(q: u64, m: usize, lead: usize) -> Self {
        assert!(lead <= m);
        let mut blocks = Vec::with_capacity(lead);
        let mut total = 0u64;
        for s in (0..lead).rev() {
            blocks.push((s, total));
            total += q.pow((m - s - 1) as u32);
        }
        ProjectiveRange { q, m, blocks, total }
    }

    pub fn len(&self) -> u64 {
        self.total
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    /// Writes representative number `idx` into `out`.
    pub fn point(&self, idx: u64, out: &mut [u32]) {
        debug_assert!(idx < self.total);
        let k = self.blocks.partition_point(|&(_, start)| start <= idx) - 1;
        let (s, start) = self.blocks[k];
        out[..s].iter_mut().for_each(|x| *x = 0);
        out[s] = 1;
        let mut rest = idx - start;
        for j in (s + 1..self.m).rev() {
            out[j] = (rest % self.q) as u32;
            rest /= self.q;
        }
    }
}

/// Number of points of `F_q^m`, saturating.
pub fn affine_count(q: u64, m: usize) -> u64 {
    (0..m).fold(1u64, |acc, _| acc.saturating_mul(q))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumerates_sorted_representatives() {
        let (q, m) = (3u64, 3usize);
        let range = ProjectiveRange::new(q, m, m);
        assert_eq!(range.len(), (27 - 1) / 2);
        let mut prev: Option<Vec<u32>> = None;
        let mut buf = vec![0; m];
        for idx in 0..range.len() {
            range.point(idx, &mut buf);
            let lead = buf.iter().position(|&x| x != 0).unwrap();
            assert_eq!(buf[lead], 1);
            if let Some(p) = prev {
                assert!(p < buf);
            }
            prev = Some(buf.clone());
        }
    }

    #[test]
    fn leading_restriction() {
        let range = ProjectiveRange::new(5, 3, 1);
        assert_eq!(range.len(), 25);
        let mut buf = vec![0; 3];
        range.point(0, &mut buf);
        assert_eq!(buf, vec![1, 0, 0]);
        assert!(ProjectiveRange::new(5, 3, 0).is_empty());
    }
}
