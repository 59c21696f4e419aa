//! Orbit-method quantities computed from the coadjoint action.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::commutator::{AdaptedBasis, LinearFormMatrix};
use crate::engine::points::affine_count;
use crate::error::{Error, Result};
use crate::exact::field::{Field, FiniteField, PrimeField};
use crate::exact::matrix::{EchelonBasis, FieldMatrix};
use crate::lie::fq::FqLieAlgebra;

/// A functional on g_q in coordinates dual to `(w, z, u)`:
/// `a = (a', a'', b, c)` with lengths `l1, m - l1, l2, l3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterPoint {
    coords: Vec<u32>,
    l1: usize,
    m: usize,
    l2: usize,
}

impl CharacterPoint {
    pub fn new(coords: Vec<u32>, basis: &AdaptedBasis) -> Result<Self> {
        let len = basis.m + basis.l2 + basis.l3;
        if coords.len() != len {
            return Err(Error::input(format!(
                "character point has {} coordinates, expected {len}",
                coords.len()
            )));
        }
        Ok(CharacterPoint {
            coords,
            l1: basis.l1,
            m: basis.m,
            l2: basis.l2,
        })
    }

    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    /// `(a', b)`: the restriction to the centre.
    pub fn proj_2(&self) -> Vec<u32> {
        let mut out = self.coords[..self.l1].to_vec();
        out.extend_from_slice(&self.coords[self.m..self.m + self.l2]);
        out
    }

    /// `(a', a'')`: the restriction to the derived subalgebra.
    pub fn proj_3(&self) -> &[u32] {
        &self.coords[..self.m]
    }
}

fn checked_pow(q: u64, e: usize) -> Result<u128> {
    (q as u128)
        .checked_pow(e as u32)
        .ok_or_else(|| Error::input("count overflows 128 bits"))
}

/// `q^{d - rk F(proj_3 a)}`.
pub fn stabilizer_size(forms: &LinearFormMatrix, a: &CharacterPoint, field: &Field) -> Result<u128> {
    let r = forms.specialize(a.proj_3(), field)?.rank(field);
    checked_pow(field.order(), a.coords().len() - r)
}

/// `q^{rk F(proj_3 a)/2}`.
pub fn irrep_dimension(forms: &LinearFormMatrix, a: &CharacterPoint, field: &Field) -> Result<u128> {
    let r = forms.specialize(a.proj_3(), field)?.rank(field);
    checked_pow(field.order(), r / 2)
}

/// Irreducible characters of `exp(g_q)` by dimension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Census {
    /// Number of functionals `θ` whose form `θ([x, y])` has each rank.
    pub points_by_rank: BTreeMap<usize, u128>,
    /// Number of irreducibles of each dimension.
    pub irreps: BTreeMap<u128, u128>,
    pub group_order: u128,
}

impl Census {
    pub fn sum_of_squares(&self) -> u128 {
        self.irreps.iter().map(|(dim, count)| dim * dim * count).sum()
    }
}

/// Indices `k` with `e_k^*` entering some bracket form.
fn bracket_support(g: &FqLieAlgebra) -> Vec<usize> {
    let d = g.dim();
    let mut used = vec![false; d];
    for i in 0..d {
        for j in 0..d {
            for &(k, _) in g.bracket_basis(i, j) {
                used[k] = true;
            }
        }
    }
    (0..d).filter(|&k| used[k]).collect()
}

/// Rank of `B_θ(x, y) = θ([x, y])` for `θ` supported on `support`.
fn form_rank(g: &FqLieAlgebra, support: &[usize], theta: &[u32], buf: &mut [u32]) -> usize {
    let d = g.dim();
    let k = g.field();
    let mut dense = vec![0u32; d];
    for (&s, &t) in support.iter().zip(theta) {
        dense[s] = t;
    }
    for i in 0..d {
        for j in 0..d {
            let mut acc = 0;
            for &(t, c) in g.bracket_basis(i, j) {
                acc = k.add(acc, k.mul(c, dense[t]));
            }
            buf[i * d + j] = acc;
        }
    }
    crate::exact::matrix::rank_in_place(buf, d, d, k)
}

fn decode(mut idx: u64, q: u64, out: &mut [u32]) {
    for x in out.iter_mut().rev() {
        *x = (idx % q) as u32;
        idx /= q;
    }
}

/// Coadjoint orbits by size: `θ` lies in an orbit of size `q^{rk B_θ}`, each
/// orbit of size `q^{2r}` gives an irreducible of dimension `q^r`. Only the
/// coordinates of `θ` that enter some bracket are enumerated; the others
/// multiply all counts by the same power of `q`.
pub fn orbit_census(g: &FqLieAlgebra, budget: u64) -> Result<Census> {
    let (q, d) = (g.field().order(), g.dim());
    if affine_count(q, d) > budget {
        return Err(Error::TooLarge {
            estimate: (q as f64).powi(d as i32),
            limit: budget as f64,
        });
    }
    let support = bracket_support(g);
    let free = checked_pow(q, d - support.len())?;
    let total = affine_count(q, support.len());
    let ranks: Vec<usize> = (0..total)
        .into_par_iter()
        .map_init(
            || (vec![0u32; support.len()], vec![0u32; d * d]),
            |(theta, buf), idx| {
                decode(idx, q, theta);
                form_rank(g, &support, theta, buf)
            },
        )
        .collect();
    let mut points_by_rank: BTreeMap<usize, u128> = BTreeMap::new();
    for r in ranks {
        *points_by_rank.entry(r).or_default() += free;
    }
    let mut irreps = BTreeMap::new();
    for (&r, &count) in &points_by_rank {
        if r % 2 == 1 {
            return Err(Error::internal(format!("coadjoint form has odd rank {r}")));
        }
        let orbit = checked_pow(q, r)?;
        if count % orbit != 0 {
            return Err(Error::internal(format!(
                "{count} functionals of rank {r} do not split into orbits of size {orbit}"
            )));
        }
        irreps.insert(checked_pow(q, r / 2)?, count / orbit);
    }
    let census = Census {
        points_by_rank,
        irreps,
        group_order: checked_pow(q, d)?,
    };
    if census.sum_of_squares() != census.group_order {
        return Err(Error::internal("sum of squared dimensions differs from the group order"));
    }
    Ok(census)
}

/// Minimal faithful dimension by direct search: a representation is faithful
/// exactly when the central characters of its constituents span the dual of
/// the centre over F_p, and a minimal one uses an F_p-basis of them.
///
/// For each restriction `β` of a functional to `Z(g_q)` the smallest
/// irreducible with that central character is found by enumerating all
/// functionals; then a basis of the `β`s over F_p of least total dimension is
/// found by branch and bound.
pub fn min_faithful_by_central_characters(g: &FqLieAlgebra, budget: u64) -> Result<u128> {
    let field = g.field();
    let (q, d, f) = (field.order(), g.dim(), field.degree() as usize);
    if affine_count(q, d) > budget {
        return Err(Error::TooLarge {
            estimate: (q as f64).powi(d as i32),
            limit: budget as f64,
        });
    }
    let centre = g.center_basis();
    let k = centre.len();
    if k == 0 {
        return Ok(0);
    }
    let all: Vec<usize> = (0..d).collect();
    // best[β] over β ∈ F_q^k encoded in base q.
    let slots = affine_count(q, k) as usize;
    let best = (0..affine_count(q, d))
        .into_par_iter()
        .fold(
            || (vec![u32::MAX; slots], vec![0u32; d], vec![0u32; d * d]),
            |(mut best, mut theta, mut buf), idx| {
                decode(idx, q, &mut theta);
                let r = form_rank(g, &all, &theta, &mut buf) as u32;
                let mut slot = 0u64;
                for z in &centre {
                    let mut v = 0;
                    for t in 0..d {
                        v = field.add(v, field.mul(theta[t], z[t]));
                    }
                    slot = slot * q + v as u64;
                }
                let half = r / 2;
                if half < best[slot as usize] {
                    best[slot as usize] = half;
                }
                (best, theta, buf)
            },
        )
        .map(|(best, _, _)| best)
        .reduce(
            || vec![u32::MAX; slots],
            |a, b| a.iter().zip(&b).map(|(x, y)| *x.min(y)).collect(),
        );

    // Candidates: F_p-projective classes of nonzero β, as F_p coordinate rows.
    let prime = PrimeField::new(field.characteristic())?;
    let mut beta = vec![0u32; k];
    let mut cands: Vec<(u128, Vec<u32>)> = Vec::new();
    for slot in 1..slots as u64 {
        decode(slot, q, &mut beta);
        let coords: Vec<u32> = beta.iter().flat_map(|&b| field.digits(b)).collect();
        let lead = coords.iter().copied().find(|&c| c != 0).expect("nonzero β");
        if lead != 1 {
            continue;
        }
        cands.push((checked_pow(q, best[slot as usize] as usize)?, coords));
    }
    cands.sort_by_key(|c| c.0);
    let need = k * f;
    let mut best_total: Option<u128> = None;
    fn walk(
        cands: &[(u128, Vec<u32>)],
        prime: &PrimeField,
        need: usize,
        start: usize,
        chosen: usize,
        sum: u128,
        basis: &EchelonBasis,
        best: &mut Option<u128>,
    ) {
        if chosen == need {
            *best = Some(best.map_or(sum, |b| b.min(sum)));
            return;
        }
        for i in start..cands.len() {
            let (w, row) = &cands[i];
            if let Some(b) = *best {
                if sum + (need - chosen) as u128 * w >= b {
                    break;
                }
            }
            let mut next = basis.clone();
            if next.insert(row, prime) {
                walk(cands, prime, need, i + 1, chosen + 1, sum + w, &next, best);
            }
        }
    }
    walk(&cands, &prime, need, 0, 0, 0, &EchelonBasis::new(need), &mut best_total);
    best_total.ok_or_else(|| Error::internal("central characters do not span"))
}

/// Stabilizer of `θ` in the coadjoint action: the radical of `θ([x, y])`.
pub fn coadjoint_stabilizer(g: &FqLieAlgebra, theta: &[u32]) -> Vec<Vec<u32>> {
    let d = g.dim();
    let all: Vec<usize> = (0..d).collect();
    let mut buf = vec![0u32; d * d];
    let _ = form_rank(g, &all, theta, &mut buf);
    let k = g.field();
    let mut m = FieldMatrix::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            let mut acc = 0;
            for &(t, c) in g.bracket_basis(i, j) {
                acc = k.add(acc, k.mul(c, theta[t]));
            }
            m.set(i, j, acc);
        }
    }
    m.kernel_basis(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::commutator::{adapted_basis, commutator_matrix};
    use crate::constructors::examples;
    use crate::engine::{minimize, MinimizeOptions};
    use crate::lie::fq::reduce_mod;

    #[test]
    fn heisenberg_census() {
        let g = reduce_mod(&examples::heisenberg(1).unwrap(), &Field::new(3, 1).unwrap()).unwrap();
        let c = orbit_census(&g, 1 << 20).unwrap();
        assert_eq!(c.irreps, BTreeMap::from([(1, 9), (3, 2)]));
        assert_eq!(c.sum_of_squares(), 27);
    }

    #[test]
    fn abelian_census() {
        let g = reduce_mod(&crate::lie::ZLieAlgebra::abelian(2), &Field::new(5, 1).unwrap()).unwrap();
        let c = orbit_census(&g, 1 << 20).unwrap();
        assert_eq!(c.irreps, BTreeMap::from([(1, 25)]));
    }

    #[test]
    fn stabilizers() {
        let alg = examples::heisenberg(1).unwrap();
        let b = adapted_basis(&alg).unwrap();
        let forms = commutator_matrix(&alg, &b).unwrap();
        let k = Field::new(5, 1).unwrap();
        let a = CharacterPoint::new(vec![1, 0, 0], &b).unwrap();
        assert_eq!(stabilizer_size(&forms, &a, &k).unwrap(), 5);
        let zero = CharacterPoint::new(vec![0, 0, 0], &b).unwrap();
        assert_eq!(stabilizer_size(&forms, &zero, &k).unwrap(), 125);
        assert_eq!(irrep_dimension(&forms, &zero, &k).unwrap(), 1);

        let bq = examples::binary_quadratic();
        let b = adapted_basis(&bq).unwrap();
        let forms = commutator_matrix(&bq, &b).unwrap();
        let k7 = Field::new(7, 1).unwrap();
        let a = CharacterPoint::new(vec![1, 0, 0, 0, 0, 0], &b).unwrap();
        assert_eq!(stabilizer_size(&forms, &a, &k7).unwrap(), 49);
        assert_eq!(a.proj_2(), vec![1, 0]);

        let h5 = examples::heisenberg(2).unwrap();
        let b = adapted_basis(&h5).unwrap();
        let forms = commutator_matrix(&h5, &b).unwrap();
        let a = CharacterPoint::new(vec![1, 0, 0, 0, 0], &b).unwrap();
        assert_eq!(irrep_dimension(&forms, &a, &Field::new(3, 1).unwrap()).unwrap(), 9);
    }

    #[test]
    fn direct_search_matches_engine() {
        for (alg, p, f) in [
            (examples::heisenberg(1).unwrap(), 3, 1),
            (examples::binary_quadratic(), 3, 1),
            (examples::heisenberg(1).unwrap(), 3, 2),
            (crate::lie::ZLieAlgebra::abelian(2), 3, 1),
        ] {
            let k = Field::new(p, f).unwrap();
            let g = reduce_mod(&alg, &k).unwrap();
            let direct = min_faithful_by_central_characters(&g, 1 << 22).unwrap();
            let b = adapted_basis(&alg).unwrap();
            let forms = commutator_matrix(&alg, &b).unwrap();
            let engine = minimize(&forms, &k, b.l1, b.l2, &MinimizeOptions::default()).unwrap();
            assert_eq!(direct, engine.value, "p={p} f={f}");
        }
    }

    #[test]
    fn stabilizer_contains_centre() {
        let g = reduce_mod(&examples::binary_quadratic(), &Field::new(5, 1).unwrap()).unwrap();
        let theta = vec![0, 0, 0, 0, 1, 2];
        let stab = coadjoint_stabilizer(&g, &theta);
        let mut span = EchelonBasis::new(6);
        for v in &stab {
            span.insert(v, g.field());
        }
        for z in g.center_basis() {
            assert!(span.contains(&z, g.field()));
        }
    }
}
