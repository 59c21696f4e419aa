//! Integer and F_p-polynomial helpers: primality, Legendre symbols, root
//! counting, irreducibility and factor counting.

use crate::error::{Error, Result};
use crate::exact::field::FiniteField;

/// Deterministic trial division. Adequate for the word-sized primes used here.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n % 2 == 0 {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Odd primes in `[lo, hi]`.
pub fn odd_primes_in(lo: u64, hi: u64) -> Vec<u64> {
    (lo.max(3)..=hi).filter(|&n| is_prime(n)).collect()
}

pub fn pow_mod(base: u64, mut exp: u64, modulus: u64) -> u64 {
    let m = modulus as u128;
    let mut b = (base % modulus) as u128;
    let mut acc = 1u128 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

/// Least non-negative residue of `a` modulo `m`.
pub fn residue(a: i64, m: u64) -> u64 {
    a.rem_euclid(m as i64) as u64
}

/// Legendre symbol `(a/p)` by Euler's criterion.
pub fn legendre_symbol(a: i64, p: u64) -> Result<i8> {
    if p == 2 || !is_prime(p) {
        return Err(Error::input(format!(
            "Legendre symbol needs an odd prime modulus, got {p}"
        )));
    }
    let r = residue(a, p);
    if r == 0 {
        return Ok(0);
    }
    match pow_mod(r, (p - 1) / 2, p) {
        1 => Ok(1),
        x if x == p - 1 => Ok(-1),
        x => Err(Error::internal(format!("Euler criterion returned {x} mod {p}"))),
    }
}

/// Number of distinct roots in `field` of the integer polynomial `coeffs`
/// (constant term first), by evaluating at every element.
pub fn count_roots<F: FiniteField>(coeffs: &[i64], field: &F) -> Result<usize> {
    let reduced: Vec<u32> = coeffs.iter().map(|&c| field.from_i64(c)).collect();
    if reduced.iter().all(|&c| c == 0) {
        return Err(Error::input(format!(
            "polynomial vanishes identically modulo {}",
            field.characteristic()
        )));
    }
    let count = (0..field.order() as u32)
        .filter(|&x| {
            let mut acc = 0;
            for &c in reduced.iter().rev() {
                acc = field.add(field.mul(acc, x), c);
            }
            acc == 0
        })
        .count();
    Ok(count)
}

/// Discriminant of the monic cubic `T^3 + b T^2 + c T + d`.
pub fn cubic_discriminant(b: i64, c: i64, d: i64) -> i64 {
    b * b * c * c - 4 * c * c * c - 4 * b * b * b * d - 27 * d * d + 18 * b * c * d
}

// Dense polynomials over F_p, coefficients from the constant term up, no
// trailing zeros.

pub(crate) fn poly_trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn inv_mod(a: u32, p: u32) -> u32 {
    pow_mod(a as u64, p as u64 - 2, p as u64) as u32
}

pub(crate) fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = poly_trim(a.to_vec());
    let dm = m.len() - 1;
    let lead_inv = inv_mod(m[dm], p) as u64;
    while r.len() > dm {
        let shift = r.len() - 1 - dm;
        let factor = (*r.last().unwrap() as u64 * lead_inv) % p as u64;
        for (i, &c) in m.iter().enumerate() {
            let sub = factor * c as u64 % p as u64;
            let slot = &mut r[shift + i];
            *slot = ((*slot as u64 + p as u64 - sub) % p as u64) as u32;
        }
        r = poly_trim(r);
    }
    r
}

pub(crate) fn poly_mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    poly_trim(out.into_iter().map(|c| c as u32).collect())
}

fn poly_mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    poly_rem(&poly_mul(a, b, p), m, p)
}

/// `base^e mod m`.
fn poly_powmod(base: &[u32], mut e: u64, m: &[u32], p: u32) -> Vec<u32> {
    let mut acc = poly_rem(&[1], m, p);
    let mut b = poly_rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mulmod(&acc, &b, m, p);
        }
        b = poly_mulmod(&b, &b, m, p);
        e >>= 1;
    }
    acc
}

fn poly_sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = *a.get(i).unwrap_or(&0);
            let y = *b.get(i).unwrap_or(&0);
            (x + p - y) % p
        })
        .collect();
    poly_trim(out)
}

fn poly_gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut x = poly_trim(a.to_vec());
    let mut y = poly_trim(b.to_vec());
    while !y.is_empty() {
        let r = poly_rem(&x, &y, p);
        x = y;
        y = r;
    }
    if let Some(&lead) = x.last() {
        let inv = inv_mod(lead, p) as u64;
        for c in x.iter_mut() {
            *c = ((*c as u64 * inv) % p as u64) as u32;
        }
    }
    x
}

/// Rabin's test: `g` of degree `n` is irreducible iff `gcd(x^{p^i} - x, g) = 1`
/// for every `i <= n/2`.
pub(crate) fn is_irreducible(g: &[u32], p: u32) -> bool {
    let g = poly_trim(g.to_vec());
    let n = g.len().saturating_sub(1);
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let x = vec![0, 1];
    let mut frob = poly_rem(&x, &g, p);
    for _ in 1..=n / 2 {
        frob = poly_powmod(&frob, p as u64, &g, p);
        let diff = poly_sub(&frob, &x, p);
        if poly_gcd(&diff, &g, p).len() != 1 {
            return false;
        }
    }
    true
}

/// Number of irreducible factors of a square-free polynomial over F_p, by
/// distinct-degree factorisation.
pub fn irreducible_factor_count(coeffs: &[i64], p: u64) -> Result<usize> {
    let p32 = p as u32;
    let mut g: Vec<u32> = poly_trim(coeffs.iter().map(|&c| residue(c, p) as u32).collect());
    if g.len() < 2 {
        return Err(Error::input("factor count needs a non-constant polynomial"));
    }
    let x = vec![0, 1];
    let mut count = 0;
    let mut frob = x.clone();
    let mut degree = 0usize;
    while g.len() > 1 {
        degree += 1;
        if 2 * degree > g.len() - 1 {
            count += 1;
            break;
        }
        frob = poly_powmod(&frob, p, &g, p32);
        let h = poly_gcd(&poly_sub(&frob, &x, p32), &g, p32);
        let hdeg = h.len() - 1;
        if hdeg > 0 {
            count += hdeg / degree;
            g = poly_div_exact(&g, &h, p32);
            frob = poly_rem(&frob, &g, p32);
        }
    }
    Ok(count)
}

fn poly_div_exact(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = poly_trim(a.to_vec());
    let db = b.len() - 1;
    let lead_inv = inv_mod(b[db], p) as u64;
    let mut q = vec![0u32; r.len().saturating_sub(db).max(1)];
    while r.len() > db {
        let shift = r.len() - 1 - db;
        let factor = (*r.last().unwrap() as u64 * lead_inv) % p as u64;
        q[shift] = factor as u32;
        for (i, &c) in b.iter().enumerate() {
            let sub = factor * c as u64 % p as u64;
            let slot = &mut r[shift + i];
            *slot = ((*slot as u64 + p as u64 - sub) % p as u64) as u32;
        }
        r = poly_trim(r);
    }
    poly_trim(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::field::PrimeField;

    #[test]
    fn primality() {
        assert!(is_prime(2) && is_prime(3) && is_prime(23) && is_prime(1_000_003));
        assert!(!is_prime(0) && !is_prime(1) && !is_prime(4) && !is_prime(561));
    }

    #[test]
    fn legendre_examples() {
        assert_eq!(legendre_symbol(0, 7).unwrap(), 0);
        assert_eq!(legendre_symbol(4, 11).unwrap(), 1);
        let squares: Vec<u64> = (1..23u64).map(|x| x * x % 23).collect();
        let expected = if squares.contains(&(59 % 23)) { 1 } else { -1 };
        assert_eq!(legendre_symbol(59, 23).unwrap(), expected);
        assert!(legendre_symbol(3, 2).is_err());
        assert!(legendre_symbol(3, 9).is_err());
    }

    #[test]
    fn legendre_matches_square_enumeration() {
        for p in odd_primes_in(3, 100) {
            let squares: Vec<u64> = (1..p).map(|x| x * x % p).collect();
            for a in 0..p as i64 {
                let brute = if a == 0 {
                    0
                } else if squares.contains(&(a as u64)) {
                    1
                } else {
                    -1
                };
                assert_eq!(legendre_symbol(a, p).unwrap(), brute, "a={a} p={p}");
            }
        }
    }

    #[test]
    fn root_counts() {
        let f5 = PrimeField::new(5).unwrap();
        assert_eq!(count_roots(&[1, 0, 1], &f5).unwrap(), 2);
        let f23 = PrimeField::new(23).unwrap();
        assert_eq!(count_roots(&[-1, -1, 0, 1], &f23).unwrap(), 2);
        let f7 = PrimeField::new(7).unwrap();
        assert_eq!(count_roots(&[0, 1], &f7).unwrap(), 1);
        assert!(count_roots(&[7, 14], &f7).is_err());
    }

    #[test]
    fn factor_counts_against_root_counts() {
        // T^3 - T - 1 has 0, 1 or 3 roots; factor counts are 1, 2, 3 respectively.
        for p in odd_primes_in(3, 200) {
            if p == 23 {
                continue;
            }
            let field = PrimeField::new(p).unwrap();
            let roots = count_roots(&[-1, -1, 0, 1], &field).unwrap();
            let factors = irreducible_factor_count(&[-1, -1, 0, 1], p).unwrap();
            let expected = match roots {
                0 => 1,
                1 => 2,
                3 => 3,
                r => panic!("unexpected root count {r} at p={p}"),
            };
            assert_eq!(factors, expected, "p={p}");
        }
    }

    #[test]
    fn irreducibility() {
        assert!(is_irreducible(&[1, 0, 1], 3));
        assert!(!is_irreducible(&[1, 0, 1], 5));
        assert!(is_irreducible(&[1, 1, 0, 1], 2));
        assert!(!is_irreducible(&[0, 0, 1], 7));
    }

    #[test]
    fn discriminant_of_trinomial() {
        assert_eq!(cubic_discriminant(0, -1, -1), -23);
    }
}
