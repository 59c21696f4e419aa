use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::exact::intmat::{exponent, IntMatrix};

/// A Z-submodule of Z^d, stored by its row Hermite normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Submodule {
    ambient: usize,
    basis: IntMatrix,
}

impl Submodule {
    pub fn span<T: Into<BigInt> + Clone>(ambient: usize, rows: &[Vec<T>]) -> Self {
        let m = IntMatrix::from_rows_with_cols(rows, ambient);
        Submodule {
            ambient,
            basis: m.hnf(),
        }
    }

    pub fn from_matrix(m: &IntMatrix) -> Self {
        Submodule {
            ambient: m.cols(),
            basis: m.hnf(),
        }
    }

    pub fn zero(ambient: usize) -> Self {
        Submodule {
            ambient,
            basis: IntMatrix::zeros(0, ambient),
        }
    }

    pub fn whole(ambient: usize) -> Self {
        Submodule {
            ambient,
            basis: IntMatrix::identity(ambient),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.rank() == 0
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn basis(&self) -> Vec<Vec<BigInt>> {
        self.basis.row_vecs()
    }

    /// Basis as machine integers. Panics only on absurd coefficient growth.
    pub fn basis_i64(&self) -> Vec<Vec<i64>> {
        self.basis
            .to_i64_rows()
            .expect("submodule basis exceeds i64 range")
    }

    /// Invariant factors of the torsion subgroup of `Z^d / self`.
    pub fn quotient_torsion(&self) -> Vec<BigInt> {
        self.basis
            .smith()
            .divisors()
            .into_iter()
            .filter(|x| !x.is_one())
            .collect()
    }

    /// Exponent of the torsion of `Z^d / self`.
    pub fn quotient_exponent(&self) -> BigInt {
        exponent(&self.quotient_torsion())
    }

    pub fn is_saturated(&self) -> bool {
        self.quotient_torsion().is_empty()
    }

    pub fn saturation(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        Submodule {
            ambient: self.ambient,
            basis: self.basis.saturation(),
        }
    }

    pub fn sum(&self, other: &Submodule) -> Self {
        assert_eq!(self.ambient, other.ambient, "ambient mismatch");
        Submodule::from_matrix(&self.basis.vstack(&other.basis))
    }

    /// Vectors `y` with `<b, y> = 0` for every basis vector `b`, as rows.
    pub fn annihilator(&self) -> IntMatrix {
        if self.is_zero() {
            return IntMatrix::identity(self.ambient);
        }
        self.basis.kernel()
    }

    /// Intersection of two saturated submodules, itself saturated.
    pub fn intersect_saturated(&self, other: &Submodule) -> Self {
        let stacked = self.annihilator().vstack(&other.annihilator());
        if stacked.rows() == 0 {
            return Submodule::whole(self.ambient);
        }
        Submodule::from_matrix(&stacked.kernel())
    }

    pub fn contains_i64(&self, v: &[i64]) -> bool {
        self.contains(&v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>())
    }

    /// Membership by reduction against the Hermite basis.
    pub fn contains(&self, v: &[BigInt]) -> bool {
        assert_eq!(v.len(), self.ambient, "length mismatch");
        let mut w = v.to_vec();
        for r in 0..self.basis.rows() {
            let Some(c) = (0..self.ambient).find(|&j| !self.basis.get(r, j).is_zero()) else {
                continue;
            };
            let pivot = self.basis.get(r, c);
            if (&w[c] % pivot) != BigInt::zero() {
                return false;
            }
            let k = &w[c] / pivot;
            for j in c..self.ambient {
                w[j] -= &k * self.basis.get(r, j);
            }
        }
        w.iter().all(Zero::is_zero)
    }

    pub fn contains_submodule(&self, other: &Submodule) -> bool {
        other.basis().iter().all(|b| self.contains(b))
    }
}

/// Extends the saturated submodule `inner` to a basis of the saturated module
/// `outer ⊇ inner`. Returns the new vectors only.
///
/// Unit vectors `e_1, e_2, ...` lying in `outer` are tried first, then the
/// Hermite rows of `outer`, each accepted when the enlarged span stays
/// saturated. If that stalls, a complement is read off a Smith decomposition.
pub fn extend_saturated(inner: &[Vec<BigInt>], outer: &Submodule) -> Vec<Vec<BigInt>> {
    let d = outer.ambient_dim();
    let target = outer.rank();
    let mut current: Vec<Vec<BigInt>> = inner.to_vec();
    let mut added = Vec::new();
    let units = (0..d).map(|j| {
        let mut e = vec![BigInt::zero(); d];
        e[j] = BigInt::one();
        e
    });
    let candidates: Vec<Vec<BigInt>> = units
        .filter(|e| outer.contains(e))
        .chain(outer.basis())
        .collect();
    for cand in candidates {
        if current.len() == target {
            break;
        }
        let mut trial = current.clone();
        trial.push(cand.clone());
        let m = IntMatrix::from_rows_with_cols(&trial, d);
        let s = m.smith();
        if s.rank() == trial.len() && s.divisors().iter().all(One::is_one) {
            current = trial;
            added.push(cand);
        }
    }
    if current.len() == target {
        return added;
    }

    // Smith fallback: write `inner` in coordinates of `outer`'s basis; the
    // trailing rows of V^{-1} complete it.
    let outer_basis = outer.matrix();
    let solver = outer_basis.smith();
    let coords: Vec<Vec<BigInt>> = inner
        .iter()
        .map(|v| solver.solve_left(v).expect("inner lies in outer"))
        .collect();
    let c = IntMatrix::from_rows_with_cols(&coords, target);
    let s = c.smith();
    let r = s.rank();
    let complement: Vec<Vec<BigInt>> = (r..target)
        .map(|i| {
            let row = s.v_inv.row(i);
            (0..d)
                .map(|j| (0..target).fold(BigInt::zero(), |acc, k| acc + &row[k] * outer_basis.get(k, j)))
                .collect()
        })
        .collect();
    complement
}

pub(crate) fn to_i64(v: &[BigInt]) -> Vec<i64> {
    v.iter()
        .map(|x| x.to_i64().expect("coefficient exceeds i64 range"))
        .collect()
}
