use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exact::intmat::IntMatrix;
use crate::lie::submodule::{to_i64, Submodule};

/// Sparse vector: `(basis index, coefficient)` pairs with distinct indices
/// and nonzero coefficients, sorted by index.
pub type Sparse = Vec<(usize, i64)>;

/// A Lie ring on Z^d given by integer structure constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZLieAlgebra {
    names: Vec<String>,
    /// `table[i * d + j] = [e_i, e_j]`.
    table: Vec<Sparse>,
    /// Degree labels for graded constructions.
    degrees: Option<Vec<usize>>,
}

fn normalize(mut v: Vec<(usize, i64)>) -> Sparse {
    v.sort_by_key(|&(k, _)| k);
    let mut out: Sparse = Vec::with_capacity(v.len());
    for (k, c) in v {
        match out.last_mut() {
            Some((lk, lc)) if *lk == k => *lc += c,
            _ => out.push((k, c)),
        }
    }
    out.retain(|&(_, c)| c != 0);
    out
}

impl ZLieAlgebra {
    /// Builds an algebra from brackets `[e_i, e_j] = result` with `i < j`
    /// (0-based). Unlisted pairs bracket to zero; antisymmetry is implied.
    pub fn new(names: Vec<String>, brackets: Vec<(usize, usize, Vec<(usize, i64)>)>) -> Result<Self> {
        let d = names.len();
        let mut table = vec![Sparse::new(); d * d];
        let mut seen = vec![false; d * d];
        for (i, j, result) in brackets {
            if i >= d || j >= d || result.iter().any(|&(k, _)| k >= d) {
                return Err(Error::input(format!("bracket index out of range for ({i}, {j})")));
            }
            let result = normalize(result);
            if i == j {
                if !result.is_empty() {
                    return Err(Error::input(format!("[e_{0}, e_{0}] must vanish", i + 1)));
                }
                continue;
            }
            let (a, b, v) = if i < j {
                (i, j, result)
            } else {
                (j, i, result.into_iter().map(|(k, c)| (k, -c)).collect())
            };
            if seen[a * d + b] {
                if table[a * d + b] != v {
                    return Err(Error::input(format!(
                        "conflicting definitions of [e_{}, e_{}]",
                        a + 1,
                        b + 1
                    )));
                }
                continue;
            }
            seen[a * d + b] = true;
            table[b * d + a] = v.iter().map(|&(k, c)| (k, -c)).collect();
            table[a * d + b] = v;
        }
        Ok(ZLieAlgebra {
            names,
            table,
            degrees: None,
        })
    }

    pub fn abelian(d: usize) -> Self {
        ZLieAlgebra {
            names: (1..=d).map(|i| format!("v{i}")).collect(),
            table: vec![Sparse::new(); d * d],
            degrees: None,
        }
    }

    /// Default names `v1, ..., vd`.
    pub fn default_names(d: usize) -> Vec<String> {
        (1..=d).map(|i| format!("v{i}")).collect()
    }

    /// Attaches a grading; checks that brackets are homogeneous.
    pub fn with_degrees(mut self, degrees: Vec<usize>) -> Result<Self> {
        let d = self.dim();
        if degrees.len() != d {
            return Err(Error::input("one degree label per basis vector is required"));
        }
        for i in 0..d {
            for j in 0..d {
                for &(k, _) in &self.table[i * d + j] {
                    if degrees[k] != degrees[i] + degrees[j] {
                        return Err(Error::input(format!(
                            "grading is not respected by [e_{}, e_{}]",
                            i + 1,
                            j + 1
                        )));
                    }
                }
            }
        }
        self.degrees = Some(degrees);
        Ok(self)
    }

    pub fn degrees(&self) -> Option<&[usize]> {
        self.degrees.as_deref()
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// `[e_i, e_j]`.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &Sparse {
        &self.table[i * self.dim() + j]
    }

    /// Nonzero brackets `[e_i, e_j]` with `i < j`.
    pub fn nonzero_brackets(&self) -> impl Iterator<Item = (usize, usize, &Sparse)> + '_ {
        let d = self.dim();
        (0..d).flat_map(move |i| {
            (i + 1..d).filter_map(move |j| {
                let b = &self.table[i * d + j];
                (!b.is_empty()).then_some((i, j, b))
            })
        })
    }

    /// Bilinear extension of the bracket to dense integer vectors.
    pub fn bracket(&self, x: &[i64], y: &[i64]) -> Vec<i64> {
        let d = self.dim();
        let mut out = vec![0i64; d];
        for (i, &a) in x.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in y.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                for &(k, c) in &self.table[i * d + j] {
                    out[k] += a * b * c;
                }
            }
        }
        out
    }

    pub fn bracket_big(&self, x: &[BigInt], y: &[BigInt]) -> Vec<BigInt> {
        let d = self.dim();
        let mut out = vec![BigInt::from(0); d];
        for (i, a) in x.iter().enumerate() {
            if a == &BigInt::from(0) {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                for &(k, c) in &self.table[i * d + j] {
                    out[k] += a * b * c;
                }
            }
        }
        out
    }

    /// First basis triple `(i, j, k)`, `i < j < k`, where the Jacobi identity
    /// fails over Z.
    pub fn jacobi_violation(&self) -> Option<(usize, usize, usize)> {
        let d = self.dim();
        let apply = |v: &Sparse, k: usize, acc: &mut Vec<i128>, sign: i128| {
            for &(t, c) in v {
                for &(s, e) in &self.table[t * d + k] {
                    acc[s] += sign * c as i128 * e as i128;
                }
            }
        };
        let mut acc = vec![0i128; d];
        for i in 0..d {
            for j in i + 1..d {
                for k in j + 1..d {
                    acc.iter_mut().for_each(|x| *x = 0);
                    apply(&self.table[i * d + j], k, &mut acc, 1);
                    apply(&self.table[j * d + k], i, &mut acc, 1);
                    apply(&self.table[k * d + i], j, &mut acc, 1);
                    if acc.iter().any(|&x| x != 0) {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    /// Checks the Jacobi identity and nilpotency.
    pub fn validate(&self) -> Result<()> {
        if let Some((i, j, k)) = self.jacobi_violation() {
            return Err(Error::Jacobi {
                i: i + 1,
                j: j + 1,
                k: k + 1,
            });
        }
        self.lower_central_series()?;
        Ok(())
    }

    /// Saturated Z-span of `[g, L]`.
    pub fn bracket_with(&self, sub: &Submodule) -> Submodule {
        let d = self.dim();
        let basis = sub.basis();
        let mut rows: Vec<Vec<BigInt>> = Vec::new();
        for b in &basis {
            for i in 0..d {
                let mut e = vec![BigInt::from(0); d];
                e[i] = BigInt::from(1);
                let v = self.bracket_big(&e, b);
                if v.iter().any(|x| x != &BigInt::from(0)) {
                    rows.push(v);
                }
            }
        }
        Submodule::span(d, &rows).saturation()
    }

    /// Saturated lower central series `g = g^1 ⊇ g^2 ⊇ ... ⊇ g^{c+1} = 0`,
    /// ending with the zero module.
    pub fn lower_central_series(&self) -> Result<Vec<Submodule>> {
        let d = self.dim();
        let mut series = vec![Submodule::whole(d)];
        loop {
            let last = series.last().unwrap();
            if last.is_zero() {
                return Ok(series);
            }
            let next = self.bracket_with(last);
            if next.rank() == last.rank() {
                return Err(Error::NotNilpotent { rank: next.rank() });
            }
            series.push(next);
        }
    }

    pub fn nilpotency_class(&self) -> Result<usize> {
        // The zero algebra has class 0.
        Ok(self.lower_central_series()?.len() - 1)
    }

    /// Saturated span of all brackets, `sat [g, g]`.
    pub fn derived(&self) -> Submodule {
        self.bracket_with(&Submodule::whole(self.dim()))
    }

    /// Z-span of the structure constants `[e_i, e_j]`, not saturated.
    pub fn bracket_lattice(&self) -> Submodule {
        let rows: Vec<Vec<i64>> = self
            .nonzero_brackets()
            .map(|(_, _, v)| dense(v, self.dim()))
            .collect();
        Submodule::span(self.dim(), &rows)
    }

    /// The centre: kernel of `x ↦ ([x, e_1], ..., [x, e_d])`.
    pub fn center(&self) -> Submodule {
        let d = self.dim();
        let mut rows = vec![vec![0i64; d]; d * d];
        for i in 0..d {
            for j in 0..d {
                for &(k, c) in &self.table[i * d + j] {
                    rows[j * d + k][i] = c;
                }
            }
        }
        rows.retain(|r| r.iter().any(|&x| x != 0));
        if rows.is_empty() {
            return Submodule::whole(d);
        }
        Submodule::from_matrix(&IntMatrix::from_rows(&rows).kernel())
    }

    /// Structure constants after the change of basis `b_i = Σ_k P[i][k] e_k`;
    /// `P` must be unimodular.
    pub fn change_basis(&self, p: &[Vec<i64>]) -> Result<Self> {
        let d = self.dim();
        let pm = IntMatrix::from_rows_with_cols(p, d);
        if pm.rows() != d || pm.determinant().magnitude() != &num_bigint::BigUint::from(1u32) {
            return Err(Error::input("change of basis must be a unimodular d x d matrix"));
        }
        let solver = pm.smith();
        let mut brackets = Vec::new();
        for i in 0..d {
            for j in i + 1..d {
                let v = self.bracket(&p[i], &p[j]);
                if v.iter().all(|&x| x == 0) {
                    continue;
                }
                let big: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
                let coords = solver
                    .solve_left(&big)
                    .ok_or_else(|| Error::internal("unimodular solve failed"))?;
                let coords = to_i64(&coords);
                brackets.push((i, j, sparse(&coords)));
            }
        }
        ZLieAlgebra::new(self.names.clone(), brackets)
    }
}

pub fn dense(v: &Sparse, d: usize) -> Vec<i64> {
    let mut out = vec![0i64; d];
    for &(k, c) in v {
        out[k] = c;
    }
    out
}

pub fn sparse(v: &[i64]) -> Sparse {
    v.iter()
        .enumerate()
        .filter(|&(_, &c)| c != 0)
        .map(|(k, &c)| (k, c))
        .collect()
}
