use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Sorted half-ranks `a_1 <= ... <= a_l1` of the commutator matrix at the
/// chosen points.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RankSignature {
    halves: Vec<u32>,
}

impl RankSignature {
    pub fn new(mut halves: Vec<u32>) -> Self {
        halves.sort_unstable();
        RankSignature { halves }
    }

    pub fn halves(&self) -> &[u32] {
        &self.halves
    }

    pub fn len(&self) -> usize {
        self.halves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.halves.is_empty()
    }

    /// `f (Σ q^{a_i} + l2)`, or `None` on overflow.
    pub fn value(&self, q: u64, l2: usize, f: u32) -> Option<u128> {
        let mut sum = l2 as u128;
        for &a in &self.halves {
            sum = sum.checked_add((q as u128).checked_pow(a)?)?;
        }
        sum.checked_mul(f as u128)
    }
}

impl std::fmt::Display for RankSignature {
    fn fmt(&self, out: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.halves.iter().map(|a| a.to_string()).collect();
        write!(out, "({})", parts.join(","))
    }
}

/// Recovers the signature from `value = f (Σ q^{a_i} + l2)` by reading the
/// base-q digits of `value/f - l2`; unique when `q > l1`.
pub fn decode_signature(value: u128, q: u64, l1: usize, l2: usize, f: u32) -> Result<RankSignature> {
    let fail = |reason: String| Error::Decode { value, reason };
    if q as u128 <= l1 as u128 {
        return Err(fail(format!("q = {q} must exceed l1 = {l1}")));
    }
    if f == 0 || value % f as u128 != 0 {
        return Err(fail(format!("not divisible by f = {f}")));
    }
    let mut rest = (value / f as u128)
        .checked_sub(l2 as u128)
        .ok_or_else(|| fail(format!("smaller than f * l2 = {}", f as u128 * l2 as u128)))?;
    let mut halves = Vec::new();
    let mut exponent = 0u32;
    while rest > 0 {
        let digit = rest % q as u128;
        halves.extend(std::iter::repeat(exponent).take(digit as usize));
        rest /= q as u128;
        exponent += 1;
    }
    if halves.len() != l1 {
        return Err(fail(format!(
            "base-{q} digits sum to {}, expected l1 = {l1}",
            halves.len()
        )));
    }
    Ok(RankSignature::new(halves))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn decodes_examples() {
        assert_eq!(decode_signature(98, 7, 2, 0, 1).unwrap().halves(), &[2, 2]);
        assert!(decode_signature(6, 3, 0, 3, 2).unwrap().is_empty());
        assert_eq!(decode_signature(75, 5, 3, 0, 1).unwrap().halves(), &[2, 2, 2]);
        assert_eq!(decode_signature(36, 9, 2, 0, 2).unwrap().halves(), &[1, 1]);
    }

    #[test]
    fn rejects_bad_values() {
        assert!(decode_signature(99, 7, 2, 0, 1).is_err());
        assert!(decode_signature(97, 7, 2, 0, 2).is_err());
        assert!(decode_signature(10, 2, 2, 0, 1).is_err());
        assert!(decode_signature(1, 5, 0, 3, 1).is_err());
    }

    proptest! {
        #[test]
        fn decode_inverts_value(q in 3u64..40, l2 in 0usize..4, f in 1u32..4,
                                raw in proptest::collection::vec(0u32..6, 0..3)) {
            let l1 = raw.len();
            prop_assume!(q > l1 as u64);
            let sig = RankSignature::new(raw);
            let v = sig.value(q, l2, f).unwrap();
            prop_assert_eq!(decode_signature(v, q, l1, l2, f).unwrap(), sig);
        }
    }
}
