//! Integer matrices: Smith and Hermite normal forms, kernels and saturation.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

/// `U * M * V = D` with `U`, `V` unimodular and `D` diagonal, `d_i | d_{i+1}`.
#[derive(Clone, Debug)]
pub struct Smith {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    /// Inverse of `v`, maintained alongside it.
    pub v_inv: IntMatrix,
}

impl Smith {
    /// Nonzero diagonal entries, all positive.
    pub fn divisors(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols))
            .map(|i| self.d.get(i, i).clone())
            .filter(|x| !x.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.divisors().len()
    }

    /// Solves `x * M = y` over Z for the original matrix `M`, if possible.
    /// When `M` has dependent rows the solution with zero weight on the
    /// trailing Smith coordinates is returned.
    pub fn solve_left(&self, y: &[BigInt]) -> Option<Vec<BigInt>> {
        let (rows, cols) = (self.u.rows, self.v.rows);
        assert_eq!(y.len(), cols, "length mismatch");
        let r = self.rank();
        let yv: Vec<BigInt> = (0..cols)
            .map(|j| (0..cols).fold(BigInt::zero(), |acc, i| acc + &y[i] * self.v.get(i, j)))
            .collect();
        if yv[r..].iter().any(|x| !x.is_zero()) {
            return None;
        }
        let mut z = vec![BigInt::zero(); rows];
        for k in 0..r {
            let (quot, rem) = yv[k].div_rem(self.d.get(k, k));
            if !rem.is_zero() {
                return None;
            }
            z[k] = quot;
        }
        Some(
            (0..rows)
                .map(|j| (0..rows).fold(BigInt::zero(), |acc, i| acc + &z[i] * self.u.get(i, j)))
                .collect(),
        )
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows_with_cols(rows, cols)
    }

    /// Like `from_rows` but keeps the column count when there are no rows.
    pub fn from_rows_with_cols<T: Into<BigInt> + Clone>(rows: &[Vec<T>], cols: usize) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged rows");
            for (j, x) in r.iter().enumerate() {
                m.set(i, j, x.clone().into());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<BigInt> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn row_vecs(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Stacks the rows of `self` above the rows of `other`.
    pub fn vstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.cols, "column mismatch");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        IntMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Determinant by fraction-free elimination (Bareiss).
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.data.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            let Some(pr) = (k..n).find(|&i| !a[i * n + k].is_zero()) else {
                return BigInt::zero();
            };
            if pr != k {
                for j in 0..n {
                    a.swap(pr * n + j, k * n + j);
                }
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[i * n + j] * &a[k * n + k] - &a[i * n + k] * &a[k * n + j]) / &prev;
                    a[i * n + j] = v;
                }
            }
            prev = a[k * n + k].clone();
        }
        sign * &a[n * n - 1]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[dst] += k * row[src]`.
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        for j in 0..self.cols {
            let delta = k * &self.data[src * self.cols + j];
            self.data[dst * self.cols + j] += delta;
        }
    }

    /// `col[dst] += k * col[src]`.
    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        for i in 0..self.rows {
            let delta = k * &self.data[i * self.cols + src];
            self.data[i * self.cols + dst] += delta;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -&self.data[r * self.cols + j];
            self.data[r * self.cols + j] = v;
        }
    }

    /// Smith normal form. Pivots are nonzero entries of least absolute value,
    /// ties broken by row-major position.
    pub fn smith(&self) -> Smith {
        let (rows, cols) = (self.rows, self.cols);
        let mut d = self.clone();
        let mut u = IntMatrix::identity(rows);
        let mut v = IntMatrix::identity(cols);
        let mut v_inv = IntMatrix::identity(cols);

        // Column operations update v by the same operation and v_inv by its inverse.
        let col_swap = |d: &mut IntMatrix, v: &mut IntMatrix, vi: &mut IntMatrix, a, b| {
            d.swap_cols(a, b);
            v.swap_cols(a, b);
            vi.swap_rows(a, b);
        };
        let col_add = |d: &mut IntMatrix, v: &mut IntMatrix, vi: &mut IntMatrix, dst, src, k: &BigInt| {
            d.add_col(dst, src, k);
            v.add_col(dst, src, k);
            vi.add_row(src, dst, &-k);
        };

        for t in 0..rows.min(cols) {
            loop {
                let Some((pi, pj)) = min_abs_position(&d, t) else {
                    return Smith { u, d, v, v_inv };
                };
                d.swap_rows(t, pi);
                u.swap_rows(t, pi);
                col_swap(&mut d, &mut v, &mut v_inv, t, pj);

                let pivot = d.get(t, t).clone();
                let mut clean = true;
                for i in t + 1..rows {
                    if d.get(i, t).is_zero() {
                        continue;
                    }
                    let k = -d.get(i, t).div_floor(&pivot);
                    d.add_row(i, t, &k);
                    u.add_row(i, t, &k);
                    if !d.get(i, t).is_zero() {
                        clean = false;
                    }
                }
                for j in t + 1..cols {
                    if d.get(t, j).is_zero() {
                        continue;
                    }
                    let k = -d.get(t, j).div_floor(&pivot);
                    col_add(&mut d, &mut v, &mut v_inv, j, t, &k);
                    if !d.get(t, j).is_zero() {
                        clean = false;
                    }
                }
                if !clean {
                    continue;
                }
                // Row and column are clear; enforce divisibility of the rest.
                let offender = (t + 1..rows)
                    .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                    .find(|&(i, j)| !(d.get(i, j) % &pivot).is_zero());
                match offender {
                    Some((i, _)) => {
                        d.add_row(t, i, &BigInt::one());
                        u.add_row(t, i, &BigInt::one());
                    }
                    None => break,
                }
            }
            if d.get(t, t).is_negative() {
                d.negate_row(t);
                u.negate_row(t);
            }
        }
        Smith { u, d, v, v_inv }
    }

    /// Row Hermite normal form of the lattice spanned by the rows: nonzero rows
    /// only, positive pivots, entries above each pivot reduced into `[0, pivot)`.
    pub fn hnf(&self) -> IntMatrix {
        let mut a = self.clone();
        let (rows, cols) = (a.rows, a.cols);
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            loop {
                let best = (r..rows)
                    .filter(|&i| !a.get(i, c).is_zero())
                    .min_by(|&x, &y| a.get(x, c).abs().cmp(&a.get(y, c).abs()));
                let Some(pi) = best else {
                    break;
                };
                a.swap_rows(r, pi);
                let pivot = a.get(r, c).clone();
                let mut done = true;
                for i in r + 1..rows {
                    if a.get(i, c).is_zero() {
                        continue;
                    }
                    let k = -a.get(i, c).div_floor(&pivot);
                    a.add_row(i, r, &k);
                    if !a.get(i, c).is_zero() {
                        done = false;
                    }
                }
                if done {
                    break;
                }
            }
            if a.get(r, c).is_zero() {
                continue;
            }
            if a.get(r, c).is_negative() {
                a.negate_row(r);
            }
            let pivot = a.get(r, c).clone();
            for i in 0..r {
                let k = -a.get(i, c).div_floor(&pivot);
                if !k.is_zero() {
                    a.add_row(i, r, &k);
                }
            }
            r += 1;
        }
        let data = a.data[..r * cols].to_vec();
        IntMatrix { rows: r, cols, data }
    }

    /// Basis (as rows) of the integer right kernel `{x in Z^cols : M x = 0}`.
    /// The kernel is always saturated.
    pub fn kernel(&self) -> IntMatrix {
        let s = self.smith();
        let r = s.rank();
        let basis: Vec<Vec<BigInt>> = (r..self.cols)
            .map(|j| (0..self.cols).map(|i| s.v.get(i, j).clone()).collect())
            .collect();
        IntMatrix::from_rows_with_cols(&basis, self.cols).hnf()
    }

    /// Basis (as rows) of the saturation `(Q L) ∩ Z^cols` of the row lattice `L`.
    pub fn saturation(&self) -> IntMatrix {
        let s = self.smith();
        let r = s.rank();
        let basis: Vec<Vec<BigInt>> = (0..r).map(|i| s.v_inv.row(i)).collect();
        IntMatrix::from_rows_with_cols(&basis, self.cols).hnf()
    }

    /// Largest entry magnitude, for diagnostics.
    pub fn max_abs(&self) -> BigInt {
        self.data.iter().map(|x| x.abs()).max().unwrap_or_default()
    }

    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).to_i64()).collect())
            .collect()
    }
}

fn min_abs_position(m: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for i in t..m.rows {
        for j in t..m.cols {
            let x = m.get(i, j);
            if x.is_zero() {
                continue;
            }
            let a = x.abs();
            if best.as_ref().map_or(true, |(_, _, b)| a < *b) {
                best = Some((i, j, a));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

/// Exponent of the finite abelian group with the given invariant factors; the
/// trivial group has exponent 1.
pub fn exponent(divisors: &[BigInt]) -> BigInt {
    divisors
        .iter()
        .fold(BigInt::one(), |acc, d| acc.lcm(&d.abs()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn check_smith(m: &IntMatrix) -> Smith {
        let s = m.smith();
        assert_eq!(s.u.mul(m).mul(&s.v), s.d);
        assert_eq!(s.v.mul(&s.v_inv), IntMatrix::identity(m.cols()));
        assert_eq!(s.u.determinant().abs(), BigInt::one());
        assert_eq!(s.v.determinant().abs(), BigInt::one());
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                if i != j {
                    assert!(s.d.get(i, j).is_zero());
                }
            }
        }
        let divs = s.divisors();
        for w in divs.windows(2) {
            assert!((&w[1] % &w[0]).is_zero());
        }
        assert!(divs.iter().all(|x| x.is_positive()));
        s
    }

    #[test]
    fn smith_examples() {
        let s = check_smith(&IntMatrix::from_rows(&[vec![2, 0], vec![0, 6]]));
        assert_eq!(s.divisors(), vec![BigInt::from(2), BigInt::from(6)]);
        let s = check_smith(&IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]]));
        assert_eq!(s.divisors(), vec![BigInt::from(2), BigInt::from(4)]);
        let s = check_smith(&IntMatrix::zeros(2, 3));
        assert!(s.divisors().is_empty());
        assert!(s.d.is_zero());
    }

    #[test]
    fn hnf_is_canonical() {
        let a = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        let h = a.hnf();
        let b = IntMatrix::from_rows(&[vec![-6, 6, 12], vec![4, 8, 8], vec![12, 0, -12]]);
        assert_eq!(h, b.vstack(&a).hnf());
        assert_eq!(h.get(0, 0), &BigInt::from(2));
    }

    #[test]
    fn kernel_and_saturation() {
        let m = IntMatrix::from_rows(&[vec![1, 1, 0]]);
        let k = m.kernel();
        assert_eq!(k.rows(), 2);
        assert!(m.mul(&k.transpose()).is_zero());
        let lattice = IntMatrix::from_rows(&[vec![2, 0, 0], vec![0, 3, 3]]);
        let sat = lattice.saturation();
        assert_eq!(sat, IntMatrix::from_rows(&[vec![1, 0, 0], vec![0, 1, 1]]));
    }

    #[test]
    fn solve_left_roundtrip() {
        let m = IntMatrix::from_rows(&[vec![1, 2, 3], vec![0, 2, 4]]);
        let s = m.smith();
        let x = s.solve_left(&[1, 6, 11].map(BigInt::from)).unwrap();
        assert_eq!(x, vec![BigInt::from(1), BigInt::from(2)]);
        assert!(s.solve_left(&[0, 1, 2].map(BigInt::from)).is_none());
        assert!(s.solve_left(&[0, 0, 1].map(BigInt::from)).is_none());
    }

    #[test]
    fn exponent_of_groups() {
        assert_eq!(exponent(&[]), BigInt::one());
        assert_eq!(exponent(&[BigInt::from(2), BigInt::from(6)]), BigInt::from(6));
    }

    proptest! {
        #[test]
        fn smith_invariants(rows in 1usize..5, cols in 1usize..5, seed in proptest::collection::vec(-9i64..10, 16)) {
            let data: Vec<Vec<i64>> = (0..rows).map(|i| (0..cols).map(|j| seed[i * 4 + j]).collect()).collect();
            let m = IntMatrix::from_rows(&data);
            let s = check_smith(&m);
            if rows == cols {
                let prod = s.divisors().iter().fold(BigInt::one(), |a, d| a * d);
                let det = m.determinant().abs();
                if s.rank() == rows {
                    prop_assert_eq!(prod, det);
                } else {
                    prop_assert!(det.is_zero());
                }
            }
            let k = m.kernel();
            prop_assert_eq!(k.rows() + s.rank(), cols);
            prop_assert!(k.rows() == 0 || m.mul(&k.transpose()).is_zero());
        }

        #[test]
        fn hnf_spans_same_lattice(seed in proptest::collection::vec(-6i64..7, 9)) {
            let data: Vec<Vec<i64>> = seed.chunks(3).map(|c| c.to_vec()).collect();
            let m = IntMatrix::from_rows(&data);
            let h = m.hnf();
            prop_assert_eq!(h.clone(), h.hnf());
            prop_assert_eq!(h.vstack(&m).hnf(), h);
        }
    }
}
