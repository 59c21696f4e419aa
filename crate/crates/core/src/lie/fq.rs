use crate::error::{Error, Result};
use crate::exact::field::{Field, FiniteField};
use crate::exact::matrix::FieldMatrix;
use crate::lie::algebra::ZLieAlgebra;

/// `g ⊗ F_q`, with structure constants reduced into the field.
#[derive(Clone, Debug)]
pub struct FqLieAlgebra {
    field: Field,
    dim: usize,
    class: usize,
    table: Vec<Vec<(usize, u32)>>,
}

impl FqLieAlgebra {
    /// Reduces structure constants without any bound check. Used by
    /// `reduce_mod` after the bound is verified, and by negative controls.
    pub fn reduce_unchecked(g: &ZLieAlgebra, field: &Field, class: usize) -> Self {
        let d = g.dim();
        let mut table = vec![Vec::new(); d * d];
        for i in 0..d {
            for j in 0..d {
                table[i * d + j] = g
                    .bracket_basis(i, j)
                    .iter()
                    .map(|&(k, c)| (k, field.from_i64(c)))
                    .filter(|&(_, c)| c != 0)
                    .collect();
            }
        }
        FqLieAlgebra {
            field: field.clone(),
            dim: d,
            class,
            table,
        }
    }

    /// Lifts an arbitrary table; for tests that corrupt structure constants.
    pub fn from_table(field: &Field, dim: usize, class: usize, table: Vec<Vec<(usize, u32)>>) -> Self {
        assert_eq!(table.len(), dim * dim, "table shape mismatch");
        FqLieAlgebra {
            field: field.clone(),
            dim,
            class,
            table,
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Nilpotency class of the integral form.
    pub fn class(&self) -> usize {
        self.class
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &[(usize, u32)] {
        &self.table[i * self.dim + j]
    }

    pub fn bracket(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        let k = &self.field;
        let mut out = vec![0u32; self.dim];
        for (i, &a) in x.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in y.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                let ab = k.mul(a, b);
                for &(t, c) in &self.table[i * self.dim + j] {
                    out[t] = k.add(out[t], k.mul(ab, c));
                }
            }
        }
        out
    }

    pub fn jacobi_holds(&self) -> bool {
        let d = self.dim;
        let unit = |i: usize| {
            let mut e = vec![0u32; d];
            e[i] = 1;
            e
        };
        for i in 0..d {
            for j in i + 1..d {
                for l in j + 1..d {
                    let (x, y, z) = (unit(i), unit(j), unit(l));
                    let a = self.bracket(&self.bracket(&x, &y), &z);
                    let b = self.bracket(&self.bracket(&y, &z), &x);
                    let c = self.bracket(&self.bracket(&z, &x), &y);
                    let k = &self.field;
                    if (0..d).any(|t| k.add(k.add(a[t], b[t]), c[t]) != 0) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Basis of `Z(g_q)` over F_q.
    pub fn center_basis(&self) -> Vec<Vec<u32>> {
        let d = self.dim;
        let mut m = FieldMatrix::zeros(d * d, d);
        for i in 0..d {
            for j in 0..d {
                for &(k, c) in &self.table[i * d + j] {
                    m.set(j * d + k, i, c);
                }
            }
        }
        m.kernel_basis(&self.field)
    }
}

/// `g ⊗ F_q` after checking the prime against the constants that govern the
/// reduction (see `BadPrimeBound::reduction_bound`).
pub fn reduce_mod(g: &ZLieAlgebra, field: &Field) -> Result<FqLieAlgebra> {
    let bound = crate::lie::bound::bad_prime_bound(g)?;
    bound.check_reduction(field.characteristic())?;
    let reduced = FqLieAlgebra::reduce_unchecked(g, field, bound.c as usize);
    if !reduced.jacobi_holds() {
        return Err(Error::internal("Jacobi identity fails after reduction"));
    }
    Ok(reduced)
}
