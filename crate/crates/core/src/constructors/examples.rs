//! The named example algebras, with basis order `v1, ..., vd` as printed.

use crate::error::{Error, Result};
use crate::lie::algebra::ZLieAlgebra;

fn build(d: usize, relations: &[(usize, usize, &[(usize, i64)])]) -> ZLieAlgebra {
    let brackets = relations
        .iter()
        .map(|&(i, j, r)| (i - 1, j - 1, r.iter().map(|&(k, c)| (k - 1, c)).collect()))
        .collect();
    ZLieAlgebra::new(ZLieAlgebra::default_names(d), brackets).expect("example relations are well formed")
}

/// `g_a`: `[v1,v4]=[v2,v5]=[v3,v6]=v7`, `[v1,v5]=[v2,v6]=v8`, `[v1,v6]=a v9`,
/// `[v2,v4]=[v3,v4]=v9`.
pub fn elliptic(a: i64) -> Result<ZLieAlgebra> {
    if a == 0 {
        return Err(Error::input("the elliptic example needs a != 0"));
    }
    Ok(build(
        9,
        &[
            (1, 4, &[(7, 1)]),
            (2, 5, &[(7, 1)]),
            (3, 6, &[(7, 1)]),
            (1, 5, &[(8, 1)]),
            (2, 6, &[(8, 1)]),
            (1, 6, &[(9, a)]),
            (2, 4, &[(9, 1)]),
            (3, 4, &[(9, 1)]),
        ],
    ))
}

/// `[v1,v2]=[v3,v4]=v5`, `[v1,v4]=[v2,v3]=v6`.
pub fn binary_quadratic() -> ZLieAlgebra {
    build(
        6,
        &[
            (1, 2, &[(5, 1)]),
            (3, 4, &[(5, 1)]),
            (1, 4, &[(6, 1)]),
            (2, 3, &[(6, 1)]),
        ],
    )
}

/// `[v1,v4]=[v2,v5]=[v3,v6]=v7`, `[v1,v5]=[v2,v6]=[v3,v5]=v8`, `[v3,v4]=-v8`.
pub fn binary_cubic() -> ZLieAlgebra {
    build(
        8,
        &[
            (1, 4, &[(7, 1)]),
            (2, 5, &[(7, 1)]),
            (3, 6, &[(7, 1)]),
            (1, 5, &[(8, 1)]),
            (2, 6, &[(8, 1)]),
            (3, 5, &[(8, 1)]),
            (3, 4, &[(8, -1)]),
        ],
    )
}

/// Lee's algebra: `[v1,v4]=[v2,v5]=v6`, `[v1,v5]=v7`, `[v3,v4]=2v7`,
/// `[v2,v4]=[v3,v5]=v8`.
///
/// The source states the middle relation as `2[v1,v5] = [v3,v4] = 2v7`; it is
/// read here as `[v1,v5] = v7` and `[v3,v4] = 2v7`.
pub fn lee() -> ZLieAlgebra {
    build(
        8,
        &[
            (1, 4, &[(6, 1)]),
            (2, 5, &[(6, 1)]),
            (1, 5, &[(7, 1)]),
            (3, 4, &[(7, 2)]),
            (2, 4, &[(8, 1)]),
            (3, 5, &[(8, 1)]),
        ],
    )
}

/// `Hei_{2k+1}` on `x1..xk, y1..yk, z` with `[x_i, y_i] = z`.
pub fn heisenberg(k: usize) -> Result<ZLieAlgebra> {
    if k == 0 {
        return Err(Error::input("Heisenberg algebras need k >= 1"));
    }
    let mut names: Vec<String> = (1..=k).map(|i| format!("x{i}")).collect();
    names.extend((1..=k).map(|i| format!("y{i}")));
    names.push("z".into());
    let brackets = (0..k).map(|i| (i, k + i, vec![(2 * k, 1)])).collect();
    ZLieAlgebra::new(names, brackets)
}

/// Strictly upper triangular `k x k` integer matrices.
pub fn unitriangular(k: usize) -> Result<ZLieAlgebra> {
    if k < 2 {
        return Err(Error::input("unitriangular algebras need k >= 2"));
    }
    crate::constructors::pattern::pattern_algebra(&crate::constructors::pattern::Poset::chain(k))
}

/// 2-step algebra whose commutator matrix is `[[0, M], [-M^T, 0]]` with
/// `M = T1 I - T2 C_g`, where `C_g` is the companion matrix of the monic
/// polynomial `g = T^c + coeffs[c-1] T^{c-1} + ... + coeffs[0]`.
///
/// Basis: `v1..vc`, `v(c+1)..v(2c)`, then `w1, w2` carrying `T1, T2`.
pub fn companion(coeffs: &[i64]) -> Result<ZLieAlgebra> {
    let c = coeffs.len();
    if c == 0 {
        return Err(Error::input("companion construction needs a polynomial of degree >= 1"));
    }
    // (C_g)_{i,i-1} = 1 and (C_g)_{i,c-1} = -coeffs[i].
    let comp = |i: usize, j: usize| -> i64 {
        let mut x = 0;
        if i >= 1 && j == i - 1 {
            x += 1;
        }
        if j == c - 1 {
            x -= coeffs[i];
        }
        x
    };
    let (w1, w2) = (2 * c, 2 * c + 1);
    let mut brackets = Vec::new();
    for i in 0..c {
        for j in 0..c {
            let mut r = Vec::new();
            if i == j {
                r.push((w1, 1));
            }
            let t2 = -comp(i, j);
            if t2 != 0 {
                r.push((w2, t2));
            }
            if !r.is_empty() {
                brackets.push((i, c + j, r));
            }
        }
    }
    ZLieAlgebra::new(ZLieAlgebra::default_names(2 * c + 2), brackets)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::commutator::{adapted_basis, commutator_matrix};
    use crate::exact::arith::{count_roots, odd_primes_in};
    use crate::exact::field::{FiniteField, PrimeField};
    use crate::exact::matrix::FieldMatrix;

    #[test]
    fn examples_validate() {
        for g in [
            elliptic(1).unwrap(),
            elliptic(-3).unwrap(),
            binary_quadratic(),
            binary_cubic(),
            lee(),
            heisenberg(2).unwrap(),
            companion(&[-1, -1, 0]).unwrap(),
        ] {
            g.validate().unwrap();
            assert_eq!(g.nilpotency_class().unwrap(), 2);
        }
        assert_eq!(unitriangular(4).unwrap().nilpotency_class().unwrap(), 3);
        assert!(elliptic(0).is_err());
    }

    #[test]
    fn example_shapes() {
        let g = binary_quadratic();
        assert_eq!(g.dim(), 6);
        assert_eq!(adapted_basis(&g).unwrap().l1, 2);
        let l = lee();
        assert_eq!(l.dim(), 8);
        assert_eq!(l.bracket_basis(1, 3), &vec![(7, 1)]);
        assert_eq!(l.bracket_basis(2, 4), &vec![(7, 1)]);
        assert_eq!(heisenberg(2).unwrap().dim(), 5);
        assert_eq!(unitriangular(4).unwrap().dim(), 6);
    }

    /// `det M(t1, t2)` over F_p by elimination.
    fn det_m(g: &ZLieAlgebra, c: usize, t: [u32; 2], field: &PrimeField) -> u32 {
        let f = commutator_matrix(g, &adapted_basis(g).unwrap()).unwrap();
        let s = f.specialize(&t, field).unwrap();
        let mut block = FieldMatrix::zeros(c, c);
        for i in 0..c {
            for j in 0..c {
                block.set(i, j, s.get(i, c + j));
            }
        }
        block.determinant(field)
    }

    #[test]
    fn companion_determinant_is_homogenized_polynomial() {
        let g = companion(&[-1, -1, 0]).unwrap();
        for p in [5u64, 7, 11] {
            let k = PrimeField::new(p).unwrap();
            for t1 in 0..p as u32 {
                for t2 in 0..p as u32 {
                    let (a, b) = (t1 as i64, t2 as i64);
                    let expected = k.from_i64(a * a * a - a * b * b - b * b * b);
                    assert_eq!(det_m(&g, 3, [t1, t2], &k), expected);
                }
            }
        }
    }

    #[test]
    fn companion_rank_drops_match_roots() {
        let coeffs = [-1i64, -1, 0];
        let g = companion(&coeffs).unwrap();
        let f = commutator_matrix(&g, &adapted_basis(&g).unwrap()).unwrap();
        for p in odd_primes_in(5, 60) {
            let k = PrimeField::new(p).unwrap();
            // Points (t, 1) of the affine line where M loses rank.
            let drops = (0..p as u32)
                .filter(|&t| f.specialize(&[t, 1], &k).unwrap().rank(&k) < 6)
                .count();
            assert_eq!(drops, count_roots(&[-1, -1, 0, 1], &k).unwrap(), "p={p}");
        }
    }
}
