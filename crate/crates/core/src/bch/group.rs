//! The group `exp(g_q)`: the set g_q with the BCH product.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bch::series::BchSeries;
use crate::error::Result;
use crate::exact::field::{Field, FiniteField};
use crate::lie::fq::FqLieAlgebra;

#[derive(Clone, Debug)]
pub struct BchGroup {
    algebra: FqLieAlgebra,
    series: BchSeries,
}

/// A failed group axiom with the elements involved.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AxiomViolation {
    Associativity { x: Vec<u32>, y: Vec<u32>, z: Vec<u32> },
    Identity { x: Vec<u32> },
    Inverse { x: Vec<u32> },
}

impl BchGroup {
    /// Needs `p > c`.
    pub fn new(algebra: FqLieAlgebra) -> Result<Self> {
        let series = BchSeries::new(algebra.class(), algebra.field())?;
        Ok(BchGroup { algebra, series })
    }

    pub fn algebra(&self) -> &FqLieAlgebra {
        &self.algebra
    }

    pub fn field(&self) -> &Field {
        self.algebra.field()
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn identity(&self) -> Vec<u32> {
        vec![0; self.dim()]
    }

    pub fn multiply(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        self.series
            .evaluate(self.field(), x, y, |a, b| self.algebra.bracket(a, b))
    }

    pub fn inverse(&self, x: &[u32]) -> Vec<u32> {
        x.iter().map(|&a| self.field().neg(a)).collect()
    }

    pub fn random_element<R: Rng>(&self, rng: &mut R) -> Vec<u32> {
        let q = self.field().order();
        (0..self.dim()).map(|_| rng.gen_range(0..q) as u32).collect()
    }

    /// Elements commuting with every element of `generators`.
    pub fn centralizes(&self, x: &[u32], generators: &[Vec<u32>]) -> bool {
        generators
            .iter()
            .all(|s| self.multiply(x, s) == self.multiply(s, x))
    }

    /// `ω e_i` for an F_p-basis `ω` of F_q; these generate the group.
    pub fn generators(&self) -> Vec<Vec<u32>> {
        let field = self.field();
        let p = field.characteristic() as u32;
        let d = self.dim();
        let mut out = Vec::new();
        for i in 0..d {
            for t in 0..field.degree() {
                let mut e = vec![0u32; d];
                e[i] = p.pow(t);
                out.push(e);
            }
        }
        out
    }
}

/// Associativity on random triples, the identity `0` and inverses `-x`.
pub fn group_axioms_check(group: &BchGroup, trials: usize, seed: u64) -> std::result::Result<(), AxiomViolation> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let zero = group.identity();
    for _ in 0..trials {
        let x = group.random_element(&mut rng);
        let y = group.random_element(&mut rng);
        let z = group.random_element(&mut rng);
        if group.multiply(&x, &zero) != x || group.multiply(&zero, &x) != x {
            return Err(AxiomViolation::Identity { x });
        }
        let inv = group.inverse(&x);
        if group.multiply(&x, &inv) != zero || group.multiply(&inv, &x) != zero {
            return Err(AxiomViolation::Inverse { x });
        }
        let left = group.multiply(&group.multiply(&x, &y), &z);
        let right = group.multiply(&x, &group.multiply(&y, &z));
        if left != right {
            return Err(AxiomViolation::Associativity { x, y, z });
        }
    }
    Ok(())
}
