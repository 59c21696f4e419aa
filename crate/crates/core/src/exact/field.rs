//! Prime fields and their extensions.
//!
//! Elements of F_q are `u32` encodings: the coefficient vector
//! `(c_0, ..., c_{f-1})` of a polynomial in the generator `T` is stored as
//! `c_0 + c_1 p + ... + c_{f-1} p^{f-1}`. In the prime field this is the least
//! residue, and the integers embed as `0..p` in every extension.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exact::arith::{is_irreducible, is_prime, poly_mul, poly_rem, poly_trim};

/// Largest field order supported. Multiplication uses exp/log tables.
pub const MAX_ORDER: u64 = 1 << 20;

/// Largest order for which a full addition table is built.
const ADD_TABLE_ORDER: u64 = 1024;

pub trait FiniteField: Send + Sync {
    fn characteristic(&self) -> u64;
    fn degree(&self) -> u32;
    fn order(&self) -> u64;

    fn add(&self, a: u32, b: u32) -> u32;
    fn sub(&self, a: u32, b: u32) -> u32;
    fn neg(&self, a: u32) -> u32;
    fn mul(&self, a: u32, b: u32) -> u32;
    /// Multiplicative inverse. `a` must be nonzero.
    fn inv(&self, a: u32) -> u32;

    /// Image of an integer under `Z -> F_p -> F_q`.
    fn from_i64(&self, v: i64) -> u32;

    fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut acc = 1;
        let mut b = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        acc
    }

    /// Coefficients `(c_0, ..., c_{f-1})` of an element over F_p.
    fn digits(&self, a: u32) -> Vec<u32> {
        let p = self.characteristic() as u32;
        let mut x = a;
        (0..self.degree())
            .map(|_| {
                let d = x % p;
                x /= p;
                d
            })
            .collect()
    }

    fn from_digits(&self, digits: &[u32]) -> u32 {
        let p = self.characteristic() as u32;
        digits.iter().rev().fold(0, |acc, &d| acc * p + d % p)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p == 2 {
            return Err(Error::input("characteristic 2 is not supported"));
        }
        if p >= MAX_ORDER {
            return Err(Error::input(format!("prime {p} exceeds the supported range")));
        }
        Ok(PrimeField { p: p as u32 })
    }

    pub fn p(&self) -> u32 {
        self.p
    }
}

impl FiniteField for PrimeField {
    fn characteristic(&self) -> u64 {
        self.p as u64
    }
    fn degree(&self) -> u32 {
        1
    }
    fn order(&self) -> u64 {
        self.p as u64
    }
    #[inline]
    fn add(&self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    #[inline]
    fn sub(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    #[inline]
    fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }
    #[inline]
    fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }
    fn inv(&self, a: u32) -> u32 {
        debug_assert!(a != 0, "inverse of zero");
        self.pow(a, self.p as u64 - 2)
    }
    fn from_i64(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }
}

/// F_{p^f} = F_p[T]/(modulus).
pub struct ExtensionField {
    p: u32,
    f: u32,
    q: u32,
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    add_table: Option<Vec<u32>>,
    neg_table: Vec<u32>,
}

impl fmt::Debug for ExtensionField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ExtensionField")
            .field("p", &self.p)
            .field("f", &self.f)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl ExtensionField {
    pub fn new(p: u64, f: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p == 2 {
            return Err(Error::input("characteristic 2 is not supported"));
        }
        if f == 0 {
            return Err(Error::input("extension degree must be at least 1"));
        }
        let q = (p as u128).pow(f);
        if q >= MAX_ORDER as u128 {
            return Err(Error::input(format!(
                "field of order {p}^{f} exceeds the supported size {MAX_ORDER}"
            )));
        }
        let (p32, q32) = (p as u32, q as u32);
        let modulus = least_irreducible(p32, f);

        let mut field = ExtensionField {
            p: p32,
            f,
            q: q32,
            modulus,
            exp: Vec::new(),
            log: Vec::new(),
            add_table: None,
            neg_table: Vec::new(),
        };
        field.neg_table = (0..q32).map(|a| field.neg_slow(a)).collect();
        field.build_log_tables()?;
        if q <= ADD_TABLE_ORDER as u128 {
            let mut table = vec![0u32; (q32 * q32) as usize];
            for a in 0..q32 {
                for b in 0..q32 {
                    table[(a * q32 + b) as usize] = field.add_slow(a, b);
                }
            }
            field.add_table = Some(table);
        }
        Ok(field)
    }

    /// The defining polynomial, constant term first, monic of degree `f`.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// The multiplicative generator used for the exp/log tables.
    pub fn primitive_element(&self) -> u32 {
        self.exp[1]
    }

    fn add_slow(&self, a: u32, b: u32) -> u32 {
        let (mut x, mut y, mut pw, mut out) = (a, b, 1u32, 0u32);
        for _ in 0..self.f {
            out += ((x % self.p + y % self.p) % self.p) * pw;
            x /= self.p;
            y /= self.p;
            pw = pw.wrapping_mul(self.p);
        }
        out
    }

    fn neg_slow(&self, a: u32) -> u32 {
        let (mut x, mut pw, mut out) = (a, 1u32, 0u32);
        for _ in 0..self.f {
            out += ((self.p - x % self.p) % self.p) * pw;
            x /= self.p;
            pw = pw.wrapping_mul(self.p);
        }
        out
    }

    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        let pa = poly_trim(self.digits(a));
        let pb = poly_trim(self.digits(b));
        let prod = poly_rem(&poly_mul(&pa, &pb, self.p), &self.modulus, self.p);
        self.from_digits(&prod)
    }

    fn build_log_tables(&mut self) -> Result<()> {
        let order = (self.q - 1) as u64;
        let factors = prime_factors(order);
        let pow_slow = |g: u32, mut e: u64| {
            let (mut acc, mut b) = (1u32, g);
            while e > 0 {
                if e & 1 == 1 {
                    acc = self.mul_slow(acc, b);
                }
                b = self.mul_slow(b, b);
                e >>= 1;
            }
            acc
        };
        let generator = (1..self.q)
            .find(|&g| factors.iter().all(|&r| pow_slow(g, order / r) != 1))
            .ok_or_else(|| Error::internal("no primitive element found"))?;

        let mut exp = vec![0u32; 2 * order as usize];
        let mut log = vec![0u32; self.q as usize];
        let mut x = 1u32;
        for k in 0..order as usize {
            exp[k] = x;
            log[x as usize] = k as u32;
            x = self.mul_slow(x, generator);
        }
        if x != 1 {
            return Err(Error::internal("generator order mismatch"));
        }
        for k in order as usize..exp.len() {
            exp[k] = exp[k - order as usize];
        }
        self.exp = exp;
        self.log = log;
        Ok(())
    }
}

impl FiniteField for ExtensionField {
    fn characteristic(&self) -> u64 {
        self.p as u64
    }
    fn degree(&self) -> u32 {
        self.f
    }
    fn order(&self) -> u64 {
        self.q as u64
    }
    #[inline]
    fn add(&self, a: u32, b: u32) -> u32 {
        match &self.add_table {
            Some(t) => t[(a * self.q + b) as usize],
            None => self.add_slow(a, b),
        }
    }
    #[inline]
    fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg_table[b as usize])
    }
    #[inline]
    fn neg(&self, a: u32) -> u32 {
        self.neg_table[a as usize]
    }
    #[inline]
    fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            0
        } else {
            self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
        }
    }
    fn inv(&self, a: u32) -> u32 {
        debug_assert!(a != 0, "inverse of zero");
        let order = self.q - 1;
        self.exp[((order - self.log[a as usize]) % order) as usize]
    }
    fn from_i64(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }
}

/// Lexicographically least monic irreducible polynomial of degree `f`,
/// comparing `(c_0, c_1, ..., c_{f-1})` with `c_0` most significant.
fn least_irreducible(p: u32, f: u32) -> Vec<u32> {
    if f == 1 {
        return vec![0, 1];
    }
    let count = (p as u64).pow(f);
    for k in 0..count {
        let mut poly = vec![0u32; f as usize + 1];
        let mut x = k;
        for i in (0..f as usize).rev() {
            poly[i] = (x % p as u64) as u32;
            x /= p as u64;
        }
        poly[f as usize] = 1;
        if is_irreducible(&poly, p) {
            return poly;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// A finite field of odd characteristic: F_p itself or a proper extension.
#[derive(Clone, Debug)]
pub enum Field {
    Prime(PrimeField),
    Extension(Arc<ExtensionField>),
}

impl Field {
    /// F_{p^f}. Degree 1 gives the prime field with its native arithmetic.
    pub fn new(p: u64, f: u32) -> Result<Self> {
        if f == 1 {
            Ok(Field::Prime(PrimeField::new(p)?))
        } else {
            Ok(Field::Extension(Arc::new(ExtensionField::new(p, f)?)))
        }
    }

    /// Elements in encoding order.
    pub fn elements(&self) -> std::ops::Range<u32> {
        0..self.order() as u32
    }
}

macro_rules! dispatch {
    ($self:ident, $f:ident, $($arg:expr),*) => {
        match $self {
            Field::Prime(k) => k.$f($($arg),*),
            Field::Extension(k) => k.$f($($arg),*),
        }
    };
}

impl FiniteField for Field {
    fn characteristic(&self) -> u64 {
        dispatch!(self, characteristic,)
    }
    fn degree(&self) -> u32 {
        dispatch!(self, degree,)
    }
    fn order(&self) -> u64 {
        dispatch!(self, order,)
    }
    #[inline]
    fn add(&self, a: u32, b: u32) -> u32 {
        dispatch!(self, add, a, b)
    }
    #[inline]
    fn sub(&self, a: u32, b: u32) -> u32 {
        dispatch!(self, sub, a, b)
    }
    #[inline]
    fn neg(&self, a: u32) -> u32 {
        dispatch!(self, neg, a)
    }
    #[inline]
    fn mul(&self, a: u32, b: u32) -> u32 {
        dispatch!(self, mul, a, b)
    }
    fn inv(&self, a: u32) -> u32 {
        dispatch!(self, inv, a)
    }
    fn from_i64(&self, v: i64) -> u32 {
        dispatch!(self, from_i64, v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn construction_errors() {
        assert!(matches!(Field::new(4, 1), Err(Error::NotPrime(4))));
        assert!(Field::new(2, 1).is_err());
        assert!(ExtensionField::new(3, 0).is_err());
        assert!(ExtensionField::new(1_000_003, 2).is_err());
    }

    #[test]
    fn degree_one_is_prime_field() {
        let field = Field::new(5, 1).unwrap();
        assert!(matches!(field, Field::Prime(_)));
        assert_eq!(field.order(), 5);
        let ext = ExtensionField::new(5, 1).unwrap();
        assert_eq!(ext.modulus(), &[0, 1]);
        assert_eq!(ext.mul(3, 4), 2);
    }

    #[test]
    fn nine_element_field_uses_t_squared_plus_one() {
        let field = ExtensionField::new(3, 2).unwrap();
        assert_eq!(field.modulus(), &[1, 0, 1]);
        // Brute-force cross-check: the lex-least monic quadratic without roots.
        let first = (0..9u32)
            .map(|k| (k / 3, k % 3))
            .find(|&(c0, c1)| (0..3).all(|x| (x * x + c1 * x + c0) % 3 != 0))
            .unwrap();
        assert_eq!(first, (1, 0));
        // T * T = -1.
        let t = field.from_digits(&[0, 1]);
        assert_eq!(field.mul(t, t), field.from_i64(-1));
    }

    #[test]
    fn moduli_are_irreducible() {
        for (p, f) in [(3, 3), (3, 4), (5, 2), (5, 3), (7, 2), (11, 2)] {
            let field = ExtensionField::new(p, f).unwrap();
            assert!(is_irreducible(field.modulus(), p as u32));
            assert_eq!(field.modulus().len(), f as usize + 1);
        }
    }

    fn check_field_axioms(field: &Field) {
        let q = field.order() as u32;
        let p = field.characteristic();
        for x in 1..q {
            assert_eq!(field.pow(x, q as u64 - 1), 1);
            assert_eq!(field.mul(x, field.inv(x)), 1);
            assert_eq!(field.add(x, field.neg(x)), 0);
        }
        let step = (q / 40).max(1);
        for x in (0..q).step_by(step as usize) {
            for y in (0..q).step_by(step as usize) {
                let frob = |a| field.pow(a, p);
                assert_eq!(frob(field.add(x, y)), field.add(frob(x), frob(y)));
                assert_eq!(frob(field.mul(x, y)), field.mul(frob(x), frob(y)));
                assert_eq!(field.sub(field.add(x, y), y), x);
            }
        }
    }

    #[test]
    fn axioms_small_fields() {
        for (p, f) in [(3, 1), (3, 2), (3, 3), (5, 2), (7, 1), (3, 4)] {
            check_field_axioms(&Field::new(p, f).unwrap());
        }
    }

    proptest! {
        #[test]
        fn mul_associative_and_distributive(a in 0u32..81, b in 0u32..81, c in 0u32..81) {
            let k = Field::new(3, 4).unwrap();
            prop_assert_eq!(k.mul(k.mul(a, b), c), k.mul(a, k.mul(b, c)));
            prop_assert_eq!(k.mul(a, b), k.mul(b, a));
            prop_assert_eq!(k.mul(a, k.add(b, c)), k.add(k.mul(a, b), k.mul(a, c)));
        }

        #[test]
        fn large_extension_without_add_table(a in 0u32..15625, b in 0u32..15625) {
            let k = Field::new(5, 6).unwrap();
            prop_assert_eq!(k.sub(k.add(a, b), b), a);
            if a != 0 {
                prop_assert_eq!(k.mul(a, k.inv(a)), 1);
            }
        }
    }
}
