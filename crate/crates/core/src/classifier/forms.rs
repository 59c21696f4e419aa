//! Arithmetic predicates behind the case splits.

use crate::error::{Error, Result};
use crate::exact::arith::{is_prime, legendre_symbol};

/// Whether `a x^2 + b x y + c y^2 = n` has an integer solution, for a positive
/// definite form. From `4a Q = (2ax + by)^2 + |D| y^2` every solution has
/// `y^2 <= 4an/|D|`, and symmetrically `x^2 <= 4cn/|D|`.
pub fn represented_by_form(n: u64, a: i64, b: i64, c: i64) -> Result<bool> {
    let disc = b * b - 4 * a * c;
    if a <= 0 || disc >= 0 {
        return Err(Error::input(format!(
            "{a}x^2 + {b}xy + {c}y^2 is not positive definite"
        )));
    }
    let n = n as i128;
    let (a, b, c, d) = (a as i128, b as i128, c as i128, -(disc as i128));
    let bound = |coef: i128| -> i128 {
        // floor(sqrt(4 coef n / d)).
        let lim = 4 * coef * n / d;
        let mut r = (lim as f64).sqrt() as i128;
        while r * r > lim {
            r -= 1;
        }
        while (r + 1) * (r + 1) <= lim {
            r += 1;
        }
        r
    };
    let (bx, by) = (bound(c), bound(a));
    for y in -by..=by {
        for x in -bx..=bx {
            if a * x * x + b * x * y + c * y * y == n {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Whether `Y^2 = 4a X^3 + X^2 - 4X` has an F_p-point with `X != 0`.
pub fn curve_has_point(a: i64, p: u64) -> Result<bool> {
    if !is_prime(p) || p == 2 {
        return Err(Error::input(format!("{p} is not an odd prime")));
    }
    for x in 1..p as i64 {
        let rhs = (4 * a % p as i64) * x % p as i64 * x % p as i64 * x + x * x - 4 * x;
        if legendre_symbol(rhs, p)? >= 0 {
            return Ok(true);
        }
    }
    Ok(false)
}
