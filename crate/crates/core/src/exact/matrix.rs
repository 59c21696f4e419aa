//! Dense matrices over a finite field.

use crate::exact::field::FiniteField;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldMatrix {
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl FieldMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        FieldMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from rows of equal length.
    ///
    /// # Panics
    /// If the rows have different lengths.
    pub fn from_rows(rows: &[Vec<u32>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend_from_slice(r);
        }
        FieldMatrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<u32>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count does not match shape");
        FieldMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn data_mut(&mut self) -> &mut [u32] {
        &mut self.data
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul<F: FiniteField>(&self, other: &FieldMatrix, field: &F) -> FieldMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = field.add(out.get(i, j), field.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec<F: FiniteField>(&self, v: &[u32], field: &F) -> Vec<u32> {
        assert_eq!(v.len(), self.cols, "shape mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| field.add(acc, field.mul(a, b)))
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn rank<F: FiniteField>(&self, field: &F) -> usize {
        let mut scratch = self.data.clone();
        rank_in_place(&mut scratch, self.rows, self.cols, field)
    }

    /// Basis of the right kernel `{x : M x = 0}`.
    pub fn kernel_basis<F: FiniteField>(&self, field: &F) -> Vec<Vec<u32>> {
        let mut a = self.clone();
        let pivots = a.reduce_rows(field);
        let mut is_pivot = vec![None; self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            is_pivot[c] = Some(r);
        }
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free].is_some() {
                continue;
            }
            let mut v = vec![0u32; self.cols];
            v[free] = 1;
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = field.neg(a.get(r, free));
            }
            basis.push(v);
        }
        basis
    }

    /// Reduced row echelon form in place; returns pivot columns.
    pub fn reduce_rows<F: FiniteField>(&mut self, field: &F) -> Vec<usize> {
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(pr) = (r..rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..cols {
                    self.data.swap(pr * cols + j, r * cols + j);
                }
            }
            let inv = field.inv(self.get(r, c));
            for j in c..cols {
                let v = field.mul(self.get(r, j), inv);
                self.set(r, j, v);
            }
            for i in 0..rows {
                let factor = self.get(i, c);
                if i == r || factor == 0 {
                    continue;
                }
                for j in c..cols {
                    let v = field.sub(self.get(i, j), field.mul(factor, self.get(r, j)));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn determinant<F: FiniteField>(&self, field: &F) -> u32 {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut a = self.data.clone();
        let mut det = 1u32;
        for c in 0..n {
            let Some(pr) = (c..n).find(|&i| a[i * n + c] != 0) else {
                return 0;
            };
            if pr != c {
                for j in 0..n {
                    a.swap(pr * n + j, c * n + j);
                }
                det = field.neg(det);
            }
            let pivot = a[c * n + c];
            det = field.mul(det, pivot);
            let inv = field.inv(pivot);
            for i in c + 1..n {
                let factor = field.mul(a[i * n + c], inv);
                if factor == 0 {
                    continue;
                }
                for j in c..n {
                    a[i * n + j] = field.sub(a[i * n + j], field.mul(factor, a[c * n + j]));
                }
            }
        }
        det
    }
}

/// Rank of a row-major `rows x cols` buffer, destroying its contents.
pub fn rank_in_place<F: FiniteField>(a: &mut [u32], rows: usize, cols: usize, field: &F) -> usize {
    debug_assert_eq!(a.len(), rows * cols);
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| a[i * cols + c] != 0) else {
            continue;
        };
        if pr != r {
            for j in c..cols {
                a.swap(pr * cols + j, r * cols + j);
            }
        }
        let inv = field.neg(field.inv(a[r * cols + c]));
        for i in r + 1..rows {
            let lead = a[i * cols + c];
            if lead == 0 {
                continue;
            }
            let factor = field.mul(lead, inv);
            for j in c + 1..cols {
                let top = a[r * cols + j];
                if top != 0 {
                    a[i * cols + j] = field.add(a[i * cols + j], field.mul(factor, top));
                }
            }
            a[i * cols + c] = 0;
        }
        r += 1;
    }
    r
}

/// Incrementally maintained echelon basis of a subspace of F_q^n.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    dim: usize,
    /// Stored rows, each normalized with a leading one at `pivots[k]`.
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl EchelonBasis {
    pub fn new(dim: usize) -> Self {
        EchelonBasis {
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.dim
    }

    fn reduce<F: FiniteField>(&self, v: &[u32], field: &F) -> Vec<u32> {
        let mut w = v.to_vec();
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let factor = w[pc];
            if factor == 0 {
                continue;
            }
            for j in pc..self.dim {
                w[j] = field.sub(w[j], field.mul(factor, row[j]));
            }
        }
        w
    }

    pub fn contains<F: FiniteField>(&self, v: &[u32], field: &F) -> bool {
        self.reduce(v, field).iter().all(|&x| x == 0)
    }

    /// Adds `v` if it enlarges the span; returns whether it did.
    pub fn insert<F: FiniteField>(&mut self, v: &[u32], field: &F) -> bool {
        assert_eq!(v.len(), self.dim, "vector length mismatch");
        let mut w = self.reduce(v, field);
        let Some(pc) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = field.inv(w[pc]);
        for x in w.iter_mut() {
            *x = field.mul(*x, inv);
        }
        // Keep rows sorted by pivot so reduction is a single pass.
        let pos = self.pivots.partition_point(|&p| p < pc);
        for (row, &rp) in self.rows.iter_mut().zip(&self.pivots) {
            let factor = row[pc];
            if factor != 0 {
                for j in rp..self.dim {
                    row[j] = field.sub(row[j], field.mul(factor, w[j]));
                }
            }
        }
        self.rows.insert(pos, w);
        self.pivots.insert(pos, pc);
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::field::{Field, PrimeField};
    use proptest::prelude::*;

    #[test]
    fn identity_and_zero() {
        let f7 = PrimeField::new(7).unwrap();
        assert_eq!(FieldMatrix::identity(4).rank(&f7), 4);
        assert!(FieldMatrix::identity(4).kernel_basis(&f7).is_empty());
        assert_eq!(FieldMatrix::zeros(3, 5).rank(&f7), 0);
        let f3 = PrimeField::new(3).unwrap();
        assert_eq!(FieldMatrix::zeros(2, 2).kernel_basis(&f3).len(), 2);
    }

    #[test]
    fn binary_quadratic_at_one_zero() {
        // Rows (0,T1,0,T2 / -T1,0,T2,0 / 0,-T2,0,T1 / -T2,0,-T1,0) at (1,0).
        let f5 = PrimeField::new(5).unwrap();
        let m = FieldMatrix::from_rows(&[
            vec![0, 1, 0, 0],
            vec![4, 0, 0, 0],
            vec![0, 0, 0, 1],
            vec![0, 0, 4, 0],
        ]);
        assert_eq!(m.rank(&f5), 4);
        // At (1, 2): T1^2 + T2^2 = 5 = 0, so the matrix drops to rank 2.
        let m = FieldMatrix::from_rows(&[
            vec![0, 1, 0, 2],
            vec![4, 0, 2, 0],
            vec![0, 3, 0, 1],
            vec![3, 0, 4, 0],
        ]);
        assert_eq!(m.rank(&f5), 2);
        let kernel = m.kernel_basis(&f5);
        assert_eq!(kernel.len(), 2);
        for v in &kernel {
            assert!(m.mul_vec(v, &f5).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn determinant_small() {
        let f7 = PrimeField::new(7).unwrap();
        let m = FieldMatrix::from_rows(&[vec![1, 2], vec![3, 4]]);
        assert_eq!(m.determinant(&f7), f7.from_i64(-2));
        let singular = FieldMatrix::from_rows(&[vec![1, 2], vec![2, 4]]);
        assert_eq!(singular.determinant(&f7), 0);
    }

    #[test]
    fn echelon_basis_tracks_span() {
        let f5 = PrimeField::new(5).unwrap();
        let mut b = EchelonBasis::new(3);
        assert!(b.insert(&[0, 1, 2], &f5));
        assert!(!b.insert(&[0, 2, 4], &f5));
        assert!(b.insert(&[1, 1, 1], &f5));
        assert!(b.contains(&[1, 2, 3], &f5));
        assert!(!b.contains(&[0, 0, 1], &f5));
        assert!(b.insert(&[0, 0, 1], &f5));
        assert!(b.is_full());
    }

    fn arb_matrix(q: u32) -> impl Strategy<Value = (usize, usize, Vec<u32>)> {
        (1usize..7, 1usize..7).prop_flat_map(move |(r, c)| {
            (Just(r), Just(c), proptest::collection::vec(0..q, r * c))
        })
    }

    proptest! {
        #[test]
        fn rank_plus_nullity((r, c, data) in arb_matrix(9)) {
            let field = Field::new(3, 2).unwrap();
            let m = FieldMatrix::from_vec(r, c, data);
            let rank = m.rank(&field);
            let kernel = m.kernel_basis(&field);
            prop_assert_eq!(rank + kernel.len(), c);
            prop_assert_eq!(m.transpose().rank(&field), rank);
            for v in &kernel {
                prop_assert!(m.mul_vec(v, &field).iter().all(|&x| x == 0));
            }
        }

        #[test]
        fn echelon_rank_matches_matrix_rank((r, c, data) in arb_matrix(7)) {
            let f7 = PrimeField::new(7).unwrap();
            let m = FieldMatrix::from_vec(r, c, data);
            let mut b = EchelonBasis::new(c);
            for i in 0..r {
                b.insert(m.row(i), &f7);
            }
            prop_assert_eq!(b.rank(), m.rank(&f7));
        }

        #[test]
        fn determinant_nonzero_iff_full_rank(data in proptest::collection::vec(0u32..5, 9)) {
            let f5 = PrimeField::new(5).unwrap();
            let m = FieldMatrix::from_vec(3, 3, data);
            prop_assert_eq!(m.determinant(&f5) != 0, m.rank(&f5) == 3);
        }
    }
}
