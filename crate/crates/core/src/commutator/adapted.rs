use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::intmat::IntMatrix;
use crate::lie::algebra::ZLieAlgebra;
use crate::lie::submodule::{extend_saturated, to_i64, Submodule};

/// Basis of Z^d split along the centre and the derived subalgebra.
///
/// * `w[..l1]` is the Hermite basis of `Z(g) ∩ sat[g,g]`, `w[l1..]` extends it
///   to `sat[g,g]` (`m` vectors in all);
/// * `z` extends `w[..l1]` to `Z(g)` (`l2` vectors);
/// * `u` extends `sat(w, z)` to Z^d (`l3` vectors);
/// * `v` complements `Z(g)` in Z^d (`n` vectors).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdaptedBasis {
    pub w: Vec<Vec<i64>>,
    pub z: Vec<Vec<i64>>,
    pub u: Vec<Vec<i64>>,
    pub v: Vec<Vec<i64>>,
    pub l1: usize,
    pub l2: usize,
    pub l3: usize,
    pub m: usize,
    pub n: usize,
}

impl AdaptedBasis {
    pub fn dim(&self) -> usize {
        self.n + self.l1 + self.l2
    }

    /// The `w` and `z` vectors as rows.
    pub fn wz(&self) -> Vec<Vec<i64>> {
        self.w.iter().chain(&self.z).cloned().collect()
    }
}

fn big_rows(rows: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

fn small_rows(rows: &[Vec<BigInt>]) -> Vec<Vec<i64>> {
    rows.iter().map(|r| to_i64(r)).collect()
}

pub fn adapted_basis(g: &ZLieAlgebra) -> Result<AdaptedBasis> {
    let d = g.dim();
    let derived = g.derived();
    let centre = g.center();
    let central_derived = centre.intersect_saturated(&derived);

    let w_central = central_derived.basis();
    let w_rest = extend_saturated(&w_central, &derived);
    let z = extend_saturated(&w_central, &centre);

    let mut wz: Vec<Vec<BigInt>> = w_central.clone();
    wz.extend(w_rest.iter().cloned());
    wz.extend(z.iter().cloned());
    let wz_sat = Submodule::span(d, &wz).saturation();
    let u = extend_saturated(&wz_sat.basis(), &Submodule::whole(d));
    let v = extend_saturated(&centre.basis(), &Submodule::whole(d));

    let l1 = w_central.len();
    let m = l1 + w_rest.len();
    let l2 = z.len();
    let l3 = u.len();
    let n = v.len();
    if m != derived.rank() || l1 + l2 != centre.rank() || n + l1 + l2 != d || m + l2 + l3 != d {
        return Err(Error::internal(format!(
            "adapted basis ranks are inconsistent: d={d}, m={m}, l1={l1}, l2={l2}, l3={l3}, n={n}"
        )));
    }
    let mut w = small_rows(&w_central);
    w.extend(small_rows(&w_rest));
    Ok(AdaptedBasis {
        w,
        z: small_rows(&z),
        u: small_rows(&u),
        v: small_rows(&v),
        l1,
        l2,
        l3,
        m,
        n,
    })
}

/// Solver for coordinates with respect to the `w` vectors.
pub(crate) struct WCoordinates {
    smith: crate::exact::intmat::Smith,
}

impl WCoordinates {
    pub(crate) fn new(basis: &AdaptedBasis, d: usize) -> Self {
        let w = IntMatrix::from_rows_with_cols(&big_rows(&basis.w), d);
        WCoordinates { smith: w.smith() }
    }

    pub(crate) fn solve(&self, y: &[i64]) -> Option<Vec<i64>> {
        let big: Vec<BigInt> = y.iter().map(|&x| BigInt::from(x)).collect();
        self.smith.solve_left(&big).map(|x| to_i64(&x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::examples;

    #[test]
    fn binary_quadratic_ranks() {
        let b = adapted_basis(&examples::binary_quadratic()).unwrap();
        assert_eq!((b.l1, b.l2, b.l3, b.m, b.n), (2, 0, 4, 2, 4));
    }

    #[test]
    fn elliptic_ranks() {
        let b = adapted_basis(&examples::elliptic(1).unwrap()).unwrap();
        assert_eq!((b.l1, b.l2, b.m, b.n), (3, 0, 3, 6));
        let unit = |k: usize| (0..9).map(|j| i64::from(j == k)).collect::<Vec<_>>();
        assert_eq!(b.w, vec![unit(6), unit(7), unit(8)]);
        assert_eq!(b.v, (0..6).map(unit).collect::<Vec<_>>());
    }

    #[test]
    fn abelian_ranks() {
        let b = adapted_basis(&ZLieAlgebra::abelian(3)).unwrap();
        assert_eq!((b.l1, b.l2, b.l3, b.m, b.n), (0, 3, 0, 0, 0));
    }

    #[test]
    fn non_central_derived_part() {
        // f_{2,3}: [g,g] has rank 3, the centre is the degree-3 part.
        let g = crate::constructors::hall::free_nilpotent(2, 3).unwrap();
        let b = adapted_basis(&g).unwrap();
        assert_eq!((b.l1, b.l2, b.m, b.n), (2, 0, 3, 3));
    }
}
