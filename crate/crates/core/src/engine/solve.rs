use crate::commutator::{adapted_basis, commutator_matrix, reduced_commutator_matrix, LinearFormMatrix};
use crate::engine::minimize::{minimize, FaithfulDimResult, MinimizeOptions};
use crate::error::{Error, Result};
use crate::exact::arith::is_prime;
use crate::exact::field::Field;
use crate::lie::algebra::ZLieAlgebra;
use crate::lie::bound::bad_prime_bound;

/// Which commutator matrix the minimisation runs on.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Reduction {
    /// The full matrix over an adapted basis.
    #[default]
    Full,
    /// The reduced matrix in the top-degree variables. Valid for the free
    /// nilpotent and free metabelian constructions.
    TopDegree,
}

/// Commutator matrix with its `l1` and `l2`.
pub fn prepare(g: &ZLieAlgebra, reduction: Reduction) -> Result<(LinearFormMatrix, usize, usize)> {
    match reduction {
        Reduction::Full => {
            let basis = adapted_basis(g)?;
            let forms = commutator_matrix(g, &basis)?;
            Ok((forms, basis.l1, basis.l2))
        }
        Reduction::TopDegree => {
            let forms = reduced_commutator_matrix(g)?;
            let l1 = forms.m();
            Ok((forms, l1, 0))
        }
    }
}

/// Faithful dimension of `exp(g ⊗ F_q)`, `q = p^f`.
pub fn faithful_dimension(
    g: &ZLieAlgebra,
    p: u64,
    f: u32,
    reduction: Reduction,
    opts: &MinimizeOptions,
) -> Result<FaithfulDimResult> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    bad_prime_bound(g)?.check_reduction(p)?;
    let field = Field::new(p, f)?;
    let (forms, l1, l2) = prepare(g, reduction)?;
    minimize(&forms, &field, l1, l2, opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::{examples, hall};

    #[test]
    fn refuses_small_primes() {
        let g = examples::binary_quadratic();
        let err = faithful_dimension(&g, 2, 1, Reduction::Full, &MinimizeOptions::default()).unwrap_err();
        assert!(matches!(err, Error::PrimeTooSmall { .. }));
        let f23 = hall::free_nilpotent(2, 3).unwrap();
        let err = faithful_dimension(&f23, 3, 1, Reduction::TopDegree, &MinimizeOptions::default()).unwrap_err();
        assert!(matches!(err, Error::PrimeTooSmall { bound: 3, .. }));
        assert!(matches!(
            faithful_dimension(&g, 9, 1, Reduction::Full, &MinimizeOptions::default()),
            Err(Error::NotPrime(9))
        ));
    }

    #[test]
    fn reduced_equals_full_on_small_free_algebras() {
        let opts = MinimizeOptions::default();
        for (g, p) in [
            (hall::free_nilpotent(2, 3).unwrap(), 5),
            (hall::free_nilpotent(3, 2).unwrap(), 3),
            (hall::free_metabelian_2(4).unwrap(), 5),
        ] {
            let full = faithful_dimension(&g, p, 1, Reduction::Full, &opts).unwrap();
            let reduced = faithful_dimension(&g, p, 1, Reduction::TopDegree, &opts).unwrap();
            assert_eq!(full.value, reduced.value);
        }
    }
}
