use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::commutator::{adapted_basis, commutator_matrix};
use crate::error::{Error, Result};
use crate::exact::intmat::IntMatrix;
use crate::lie::algebra::ZLieAlgebra;
use crate::lie::submodule::Submodule;

/// The constants that decide which primes are admissible.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BadPrimeBound {
    pub l1: u64,
    /// Nilpotency class.
    pub c: u64,
    pub c1: u64,
    pub c2: u64,
    pub c3: u64,
}

impl BadPrimeBound {
    /// `C = max{l1, c, C1, C2, C3}`.
    pub fn value(&self) -> u64 {
        self.l1.max(self.reduction_bound())
    }

    /// `max{c, C1, C2, C3}`: primes above this give a valid reduction and
    /// the rank-minimisation formula. `l1` only matters for decoding values.
    pub fn reduction_bound(&self) -> u64 {
        self.c.max(self.c1).max(self.c2).max(self.c3)
    }

    /// Rejects `p` unless it exceeds every constant of `reduction_bound`.
    pub fn check_reduction(&self, p: u64) -> Result<()> {
        for (bound, constant) in [
            (self.c, "the nilpotency class c"),
            (self.c1, "C1"),
            (self.c2, "C2"),
            (self.c3, "C3"),
        ] {
            if p <= bound {
                return Err(Error::PrimeTooSmall { p, bound, constant });
            }
        }
        if p == 2 {
            return Err(Error::PrimeTooSmall {
                p,
                bound: 2,
                constant: "the odd-characteristic requirement",
            });
        }
        Ok(())
    }
}

/// Largest prime factor by trial division; 1 for units and zero.
pub fn largest_prime_factor(n: &BigInt) -> u64 {
    let mut n = n.magnitude().clone();
    if n.is_zero() || n.is_one() {
        return 1;
    }
    let mut largest = 1u64;
    let mut d = 2u64;
    loop {
        let dd = num_bigint::BigUint::from(d);
        if &dd * &dd > n {
            break;
        }
        while (&n % &dd).is_zero() {
            n /= &dd;
            largest = d;
        }
        d += 1;
    }
    if !n.is_one() {
        largest = largest.max(n.to_u64().unwrap_or(u64::MAX));
    }
    largest
}

/// Largest prime dividing any invariant factor (the torsion exponent).
fn torsion_prime(sub: &Submodule) -> u64 {
    sub.quotient_torsion()
        .iter()
        .map(largest_prime_factor)
        .max()
        .unwrap_or(1)
}

/// The matrix `X` with rows indexed by `(j, k)` and columns by `i`, holding
/// the coefficient of `w_k` in `[v_i, v_j]`.
pub fn bracket_coefficient_matrix(g: &ZLieAlgebra) -> Result<IntMatrix> {
    let basis = adapted_basis(g)?;
    let f = commutator_matrix(g, &basis)?;
    let (n, m) = (f.n(), f.m());
    let mut x = IntMatrix::zeros(n * m, n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..m {
                x.set(j * m + k, i, BigInt::from(f.coeff(i, j, k)));
            }
        }
    }
    Ok(x)
}

/// Stand-in for `m(X)`: the largest prime dividing the gcd of the maximal
/// minors of `X`, i.e. the product of its invariant factors. Reduction mod `p`
/// keeps `X` at full column rank exactly when `p` exceeds this value.
pub fn minor_prime_surrogate(x: &IntMatrix) -> u64 {
    let s = x.smith();
    let product = s.divisors().iter().fold(BigInt::one(), |acc, d| acc * d);
    largest_prime_factor(&product)
}

/// `m(X) = min over maximal minors X' of the largest prime dividing det X'`,
/// by enumerating row subsets. Only feasible for small `X`.
pub fn minor_prime_exact(x: &IntMatrix) -> Option<u64> {
    let (rows, cols) = (x.rows(), x.cols());
    if cols == 0 {
        return Some(1);
    }
    let nonzero_rows: Vec<usize> = (0..rows)
        .filter(|&r| (0..cols).any(|c| !x.get(r, c).is_zero()))
        .collect();
    let mut best: Option<u64> = None;
    let mut chosen = Vec::with_capacity(cols);
    fn walk(
        x: &IntMatrix,
        rows: &[usize],
        start: usize,
        chosen: &mut Vec<usize>,
        best: &mut Option<u64>,
    ) {
        let cols = x.cols();
        if chosen.len() == cols {
            let sub: Vec<Vec<BigInt>> = chosen
                .iter()
                .map(|&r| (0..cols).map(|c| x.get(r, c).clone()).collect())
                .collect();
            let det = IntMatrix::from_rows(&sub).determinant();
            if !det.is_zero() {
                let m = largest_prime_factor(&det);
                *best = Some(best.map_or(m, |b| b.min(m)));
            }
            return;
        }
        if best == &Some(1) {
            return;
        }
        for k in start..rows.len() {
            chosen.push(rows[k]);
            walk(x, rows, k + 1, chosen, best);
            chosen.pop();
        }
    }
    walk(x, &nonzero_rows, 0, &mut chosen, &mut best);
    best
}

pub fn bad_prime_bound(g: &ZLieAlgebra) -> Result<BadPrimeBound> {
    let c = g.nilpotency_class()? as u64;
    let basis = adapted_basis(g)?;
    let x = bracket_coefficient_matrix(g)?;
    // sat[g,g] is a submodule of a free module, so e([g,g]) = 1.
    let e_derived = 1;
    let e_abelianization = torsion_prime(&g.bracket_lattice());
    let c1 = minor_prime_surrogate(&x).max(e_derived).max(e_abelianization);
    let c2 = torsion_prime(&Submodule::span(g.dim(), &basis.wz()));
    let c3 = torsion_prime(&g.center());
    Ok(BadPrimeBound {
        l1: basis.l1 as u64,
        c,
        c1,
        c2,
        c3,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::examples;

    #[test]
    fn examples_have_trivial_constants() {
        for g in [
            examples::elliptic(1).unwrap(),
            examples::binary_quadratic(),
            examples::binary_cubic(),
            examples::lee(),
        ] {
            let b = bad_prime_bound(&g).unwrap();
            assert_eq!((b.c1, b.c2, b.c3), (1, 1, 1));
            assert_eq!(b.value(), b.l1.max(b.c));
        }
        let b = bad_prime_bound(&examples::lee()).unwrap();
        assert_eq!(b.value(), 3);
        assert_eq!(b.reduction_bound(), 2);
    }

    #[test]
    fn abelian_bound_is_one() {
        let b = bad_prime_bound(&ZLieAlgebra::abelian(3)).unwrap();
        assert_eq!(b.value(), 1);
        assert_eq!(b.l1, 0);
    }

    #[test]
    fn doubled_bracket_raises_c1() {
        let g = ZLieAlgebra::new(ZLieAlgebra::default_names(3), vec![(0, 1, vec![(2, 2)])]).unwrap();
        let b = bad_prime_bound(&g).unwrap();
        assert!(b.c1 >= 2);
        assert!(b.check_reduction(3).is_ok());
        assert!(matches!(b.check_reduction(2), Err(Error::PrimeTooSmall { .. })));
    }

    #[test]
    fn surrogate_never_exceeds_exact_minor_prime() {
        let gs = [
            examples::binary_quadratic(),
            examples::lee(),
            examples::binary_cubic(),
            crate::constructors::pattern::pattern_algebra(&crate::constructors::pattern::Poset::chain(4))
                .unwrap(),
            ZLieAlgebra::new(ZLieAlgebra::default_names(3), vec![(0, 1, vec![(2, 6)])]).unwrap(),
        ];
        for g in gs {
            let x = bracket_coefficient_matrix(&g).unwrap();
            let exact = minor_prime_exact(&x).unwrap();
            assert!(minor_prime_surrogate(&x) <= exact);
        }
    }

    #[test]
    fn largest_prime() {
        assert_eq!(largest_prime_factor(&BigInt::from(1)), 1);
        assert_eq!(largest_prime_factor(&BigInt::from(12)), 3);
        assert_eq!(largest_prime_factor(&BigInt::from(-26)), 13);
        assert_eq!(largest_prime_factor(&BigInt::from(97)), 97);
    }
}
