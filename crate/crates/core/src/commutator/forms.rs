use serde::Serialize;

use crate::commutator::adapted::{AdaptedBasis, WCoordinates};
use crate::error::{Error, Result};
use crate::exact::field::FiniteField;
use crate::exact::matrix::FieldMatrix;
use crate::lie::algebra::ZLieAlgebra;

/// Skew-symmetric `n x n` matrix whose entries are integer linear forms in
/// `m` variables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinearFormMatrix {
    n: usize,
    m: usize,
    /// `forms[(i * n + j) * m + k]` is the coefficient of `T_{k+1}` in entry `(i, j)`.
    forms: Vec<i64>,
}

impl LinearFormMatrix {
    /// Builds the matrix from its strictly upper triangle; the rest follows
    /// by skew-symmetry. `upper(i, j)` is called for `i < j`.
    pub fn from_upper(n: usize, m: usize, mut upper: impl FnMut(usize, usize) -> Vec<i64>) -> Self {
        let mut forms = vec![0i64; n * n * m];
        for i in 0..n {
            for j in i + 1..n {
                let f = upper(i, j);
                assert_eq!(f.len(), m, "form length mismatch");
                for k in 0..m {
                    forms[(i * n + j) * m + k] = f[k];
                    forms[(j * n + i) * m + k] = -f[k];
                }
            }
        }
        LinearFormMatrix { n, m, forms }
    }

    /// Validates a full table of forms, given as `entries[i][j][k]`.
    pub fn from_entries(entries: &[Vec<Vec<i64>>], m: usize) -> Result<Self> {
        let n = entries.len();
        let mut forms = vec![0i64; n * n * m];
        for (i, row) in entries.iter().enumerate() {
            if row.len() != n {
                return Err(Error::input("commutator matrix must be square"));
            }
            for (j, f) in row.iter().enumerate() {
                if f.len() != m {
                    return Err(Error::input("form length mismatch"));
                }
                forms[(i * n + j) * m..(i * n + j + 1) * m].copy_from_slice(f);
            }
        }
        let out = LinearFormMatrix { n, m, forms };
        out.check_skew()?;
        Ok(out)
    }

    /// `[[0, M], [-M^T, 0]]` for an `r x s` block `M` of forms.
    pub fn from_block(block: &[Vec<Vec<i64>>], m: usize) -> Self {
        let r = block.len();
        let s = block.first().map_or(0, |row| row.len());
        LinearFormMatrix::from_upper(r + s, m, |i, j| {
            if i < r && j >= r {
                block[i][j - r].clone()
            } else {
                vec![0; m]
            }
        })
    }

    pub fn check_skew(&self) -> Result<()> {
        for i in 0..self.n {
            for j in 0..self.n {
                for k in 0..self.m {
                    if self.coeff(i, j, k) != -self.coeff(j, i, k) {
                        return Err(Error::input(format!(
                            "commutator matrix is not skew-symmetric at ({}, {})",
                            i + 1,
                            j + 1
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn coeff(&self, i: usize, j: usize, k: usize) -> i64 {
        self.forms[(i * self.n + j) * self.m + k]
    }

    pub fn form(&self, i: usize, j: usize) -> &[i64] {
        &self.forms[(i * self.n + j) * self.m..(i * self.n + j + 1) * self.m]
    }

    /// Entries as nested vectors `[i][j][k]`.
    pub fn entries(&self) -> Vec<Vec<Vec<i64>>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.form(i, j).to_vec()).collect())
            .collect()
    }

    /// Renders entry `(i, j)` as a form such as `T1 - 2T3`.
    pub fn render(&self, i: usize, j: usize) -> String {
        let mut out = String::new();
        for (k, &c) in self.form(i, j).iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else { "+" };
            if out.is_empty() {
                if c < 0 {
                    out.push('-');
                }
            } else {
                out.push_str(&format!(" {sign} "));
            }
            if c.abs() != 1 {
                out.push_str(&c.abs().to_string());
            }
            out.push_str(&format!("T{}", k + 1));
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    /// `F(a)` over the field.
    pub fn specialize<F: FiniteField>(&self, a: &[u32], field: &F) -> Result<FieldMatrix> {
        if a.len() != self.m {
            return Err(Error::input(format!(
                "point has {} coordinates, the matrix has {} variables",
                a.len(),
                self.m
            )));
        }
        let reduced = self.reduce(field);
        let mut out = FieldMatrix::zeros(self.n, self.n);
        reduced.specialize_into(a, field, out.data_mut());
        Ok(out)
    }

    /// Coefficients reduced into the field, in sparse upper-triangular form.
    pub fn reduce<F: FiniteField>(&self, field: &F) -> ReducedForms {
        let mut entries = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                let terms: Vec<(usize, u32)> = self
                    .form(i, j)
                    .iter()
                    .enumerate()
                    .map(|(k, &c)| (k, field.from_i64(c)))
                    .filter(|&(_, c)| c != 0)
                    .collect();
                if !terms.is_empty() {
                    entries.push((i, j, terms));
                }
            }
        }
        ReducedForms { n: self.n, entries }
    }

    /// Restricts to the first `k` variables (the others set to zero).
    pub fn truncate_variables(&self, k: usize) -> Self {
        assert!(k <= self.m, "cannot keep more variables than exist");
        LinearFormMatrix::from_upper(self.n, k, |i, j| self.form(i, j)[..k].to_vec())
    }
}

/// A commutator matrix prepared for repeated specialization over one field.
#[derive(Clone, Debug)]
pub struct ReducedForms {
    n: usize,
    entries: Vec<(usize, usize, Vec<(usize, u32)>)>,
}

impl ReducedForms {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Writes `F(a)` into an `n * n` row-major buffer.
    #[inline]
    pub fn specialize_into<F: FiniteField>(&self, a: &[u32], field: &F, buf: &mut [u32]) {
        buf.iter_mut().for_each(|x| *x = 0);
        let n = self.n;
        for (i, j, terms) in &self.entries {
            let mut acc = 0u32;
            for &(k, c) in terms {
                let x = a[k];
                if x != 0 {
                    acc = field.add(acc, field.mul(c, x));
                }
            }
            buf[i * n + j] = acc;
            buf[j * n + i] = field.neg(acc);
        }
    }

    /// Rank of `F(a)` using `buf` as scratch.
    #[inline]
    pub fn rank_at<F: FiniteField>(&self, a: &[u32], field: &F, buf: &mut [u32]) -> usize {
        self.specialize_into(a, field, buf);
        crate::exact::matrix::rank_in_place(buf, self.n, self.n, field)
    }
}

/// `F_g` relative to an adapted basis: `[v_i, v_j] = Σ_k λ_ij^k w_k`.
pub fn commutator_matrix(g: &ZLieAlgebra, basis: &AdaptedBasis) -> Result<LinearFormMatrix> {
    let solver = WCoordinates::new(basis, g.dim());
    let m = basis.m;
    let mut failure = None;
    let out = LinearFormMatrix::from_upper(basis.n, m, |i, j| {
        let y = g.bracket(&basis.v[i], &basis.v[j]);
        if y.iter().all(|&x| x == 0) {
            return vec![0; m];
        }
        match solver.solve(&y) {
            Some(coords) => coords,
            None => {
                failure.get_or_insert((i, j));
                vec![0; m]
            }
        }
    });
    if let Some((i, j)) = failure {
        return Err(Error::internal(format!(
            "[v_{}, v_{}] does not decompose over the w-basis",
            i + 1,
            j + 1
        )));
    }
    Ok(out)
}

/// Commutator matrix of a graded algebra whose centre is its top-degree
/// component: rows and columns are the basis vectors of degree below the top
/// in their given order, variables are the top-degree basis vectors, and all
/// lower-degree variables are set to zero.
pub fn reduced_commutator_matrix(g: &ZLieAlgebra) -> Result<LinearFormMatrix> {
    let degrees = g
        .degrees()
        .ok_or_else(|| Error::input("reduced commutator matrix needs a graded algebra"))?;
    let d = g.dim();
    let top = degrees.iter().copied().max().unwrap_or(0);
    for i in 0..d {
        for j in 0..d {
            for &(k, _) in g.bracket_basis(i, j) {
                if degrees[k] != degrees[i] + degrees[j] {
                    return Err(Error::input("grading is not respected by the brackets"));
                }
            }
        }
    }
    let top_idx: Vec<usize> = (0..d).filter(|&i| degrees[i] == top).collect();
    let low_idx: Vec<usize> = (0..d).filter(|&i| degrees[i] < top).collect();
    let top_span = crate::lie::submodule::Submodule::span(
        d,
        &top_idx
            .iter()
            .map(|&k| (0..d).map(|j| i64::from(j == k)).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    );
    if g.center() != top_span {
        return Err(Error::input("centre is not the top-degree component"));
    }
    let m = top_idx.len();
    Ok(LinearFormMatrix::from_upper(low_idx.len(), m, |i, j| {
        let b = g.bracket_basis(low_idx[i], low_idx[j]);
        top_idx
            .iter()
            .map(|&k| b.iter().find(|&&(t, _)| t == k).map_or(0, |&(_, c)| c))
            .collect()
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::commutator::adapted::adapted_basis;
    use crate::constructors::examples;
    use crate::exact::field::{Field, PrimeField};

    fn form_of(block: &[Vec<&str>]) -> Vec<Vec<String>> {
        block.iter().map(|r| r.iter().map(|s| s.to_string()).collect()).collect()
    }

    fn upper_right(f: &LinearFormMatrix, r: usize) -> Vec<Vec<String>> {
        (0..r)
            .map(|i| (r..f.n()).map(|j| f.render(i, j)).collect())
            .collect()
    }

    #[test]
    fn binary_quadratic_display() {
        let g = examples::binary_quadratic();
        let f = commutator_matrix(&g, &adapted_basis(&g).unwrap()).unwrap();
        let rendered: Vec<Vec<String>> =
            (0..4).map(|i| (0..4).map(|j| f.render(i, j)).collect()).collect();
        assert_eq!(
            rendered,
            form_of(&[
                vec!["0", "T1", "0", "T2"],
                vec!["-T1", "0", "T2", "0"],
                vec!["0", "-T2", "0", "T1"],
                vec!["-T2", "0", "-T1", "0"],
            ])
        );
    }

    #[test]
    fn elliptic_display() {
        let g = examples::elliptic(5).unwrap();
        let f = commutator_matrix(&g, &adapted_basis(&g).unwrap()).unwrap();
        assert_eq!(
            upper_right(&f, 3),
            form_of(&[
                vec!["T1", "T2", "5T3"],
                vec!["T3", "T1", "T2"],
                vec!["T3", "0", "T1"],
            ])
        );
    }

    #[test]
    fn lee_display() {
        let g = examples::lee();
        let f = commutator_matrix(&g, &adapted_basis(&g).unwrap()).unwrap();
        assert_eq!(
            upper_right(&f, 3),
            form_of(&[vec!["T1", "T2"], vec!["T3", "T1"], vec!["2T2", "T3"]])
        );
    }

    #[test]
    fn binary_cubic_display() {
        let g = examples::binary_cubic();
        let f = commutator_matrix(&g, &adapted_basis(&g).unwrap()).unwrap();
        assert_eq!(
            upper_right(&f, 3),
            form_of(&[
                vec!["T1", "T2", "0"],
                vec!["0", "T1", "T2"],
                vec!["-T2", "T2", "T1"],
            ])
        );
    }

    #[test]
    fn specializations() {
        let g = examples::binary_quadratic();
        let f = commutator_matrix(&g, &adapted_basis(&g).unwrap()).unwrap();
        let f5 = PrimeField::new(5).unwrap();
        assert!(f.specialize(&[0, 0], &f5).unwrap().is_zero());
        assert_eq!(f.specialize(&[1, 0], &f5).unwrap().rank(&f5), 4);
        assert_eq!(f.specialize(&[2, 1], &f5).unwrap().rank(&f5), 2);
        let f13 = PrimeField::new(13).unwrap();
        // 5^2 = 25 = -1 mod 13.
        assert_eq!(f.specialize(&[5, 1], &f13).unwrap().rank(&f13), 2);
        assert!(f.specialize(&[1], &f13).is_err());
    }

    #[test]
    fn specialize_is_skew() {
        let g = examples::lee();
        let f = commutator_matrix(&g, &adapted_basis(&g).unwrap()).unwrap();
        let k = Field::new(3, 2).unwrap();
        for a in [[1, 2, 3], [4, 5, 8], [0, 7, 1]] {
            let s = f.specialize(&a, &k).unwrap();
            let t = s.transpose();
            for i in 0..s.rows() {
                for j in 0..s.cols() {
                    assert_eq!(k.add(s.get(i, j), t.get(i, j)), 0);
                }
            }
            assert_eq!(s.rank(&k) % 2, 0);
        }
    }

    #[test]
    fn metabelian_reduced_windows() {
        let g = crate::constructors::hall::free_metabelian_2(4).unwrap();
        let f = reduced_commutator_matrix(&g).unwrap();
        assert_eq!(f.n(), 2 + 1 + 2);
        // Rows x1, x2 against the degree-3 basis vectors y^3_1, y^3_2.
        let block: Vec<Vec<String>> = (0..2).map(|i| (3..5).map(|j| f.render(i, j)).collect()).collect();
        assert_eq!(block, form_of(&[vec!["T1", "T2"], vec!["T2", "T3"]]));
    }

    #[test]
    fn reduced_requires_grading() {
        assert!(reduced_commutator_matrix(&examples::binary_quadratic()).is_err());
    }
}
