//! Named algebras and their closed-form faithful dimensions.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::classifier::forms::{curve_has_point, represented_by_form};
use crate::constructors::{examples, hall};
use crate::engine::Reduction;
use crate::error::{Error, Result};
use crate::exact::arith::{is_prime, legendre_symbol};
use crate::lie::algebra::ZLieAlgebra;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Named {
    Elliptic(i64),
    BinaryQuadratic,
    BinaryCubic,
    Lee,
    Heisenberg(usize),
    Unitriangular(usize),
    FreeNilpotent(usize, usize),
    FreeMetabelian(usize),
}

impl Named {
    pub fn algebra(&self) -> Result<ZLieAlgebra> {
        match *self {
            Named::Elliptic(a) => examples::elliptic(a),
            Named::BinaryQuadratic => Ok(examples::binary_quadratic()),
            Named::BinaryCubic => Ok(examples::binary_cubic()),
            Named::Lee => Ok(examples::lee()),
            Named::Heisenberg(k) => examples::heisenberg(k),
            Named::Unitriangular(k) => examples::unitriangular(k),
            Named::FreeNilpotent(n, c) => hall::free_nilpotent(n, c),
            Named::FreeMetabelian(c) => hall::free_metabelian_2(c),
        }
    }

    /// The free constructions are solved on their reduced matrices.
    pub fn reduction(&self) -> Reduction {
        match self {
            Named::FreeNilpotent(..) | Named::FreeMetabelian(_) => Reduction::TopDegree,
            _ => Reduction::Full,
        }
    }
}

impl fmt::Display for Named {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Named::Elliptic(a) => write!(f, "elliptic:{a}"),
            Named::BinaryQuadratic => write!(f, "binary_quadratic"),
            Named::BinaryCubic => write!(f, "binary_cubic"),
            Named::Lee => write!(f, "lee"),
            Named::Heisenberg(k) => write!(f, "heisenberg:{k}"),
            Named::Unitriangular(k) => write!(f, "unitriangular:{k}"),
            Named::FreeNilpotent(n, c) => write!(f, "free:{n}:{c}"),
            Named::FreeMetabelian(c) => write!(f, "metabelian:{c}"),
        }
    }
}

impl FromStr for Named {
    type Err = Error;

    /// `elliptic:A`, `binary_quadratic`, `binary_cubic`, `lee`, `heisenberg:K`,
    /// `unitriangular:K`, `free:N:C`, `metabelian:C`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let int = |t: &str| -> Result<i64> {
            t.parse()
                .map_err(|_| Error::input(format!("{t:?} is not an integer in {s:?}")))
        };
        let nat = |t: &str| -> Result<usize> {
            t.parse()
                .map_err(|_| Error::input(format!("{t:?} is not a natural number in {s:?}")))
        };
        match parts.as_slice() {
            ["elliptic"] => Ok(Named::Elliptic(1)),
            ["elliptic", a] => Ok(Named::Elliptic(int(a)?)),
            ["binary_quadratic"] => Ok(Named::BinaryQuadratic),
            ["binary_cubic"] => Ok(Named::BinaryCubic),
            ["lee"] => Ok(Named::Lee),
            ["heisenberg", k] => Ok(Named::Heisenberg(nat(k)?)),
            ["unitriangular", k] => Ok(Named::Unitriangular(nat(k)?)),
            ["free", n, c] => Ok(Named::FreeNilpotent(nat(n)?, nat(c)?)),
            ["metabelian", c] => Ok(Named::FreeMetabelian(nat(c)?)),
            _ => Err(Error::input(format!("unknown algebra name {s:?}"))),
        }
    }
}

/// A case of a piecewise formula and its value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Prediction {
    pub case: String,
    pub value: u128,
}

fn case(label: &str, value: u128) -> Option<Prediction> {
    Some(Prediction {
        case: label.to_string(),
        value,
    })
}

/// The closed-form value at `q = p^f`, where one is known. `Ok(None)` means
/// no formula covers this case.
pub fn predicted_value(name: &Named, p: u64, f: u32) -> Result<Option<Prediction>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p == 2 {
        return Err(Error::input("the formulas need an odd prime"));
    }
    if f == 0 {
        return Err(Error::input("f must be at least 1"));
    }
    let p128 = p as u128;
    let q = p128.pow(f);
    let fq = f as u128;
    let out = match *name {
        Named::BinaryQuadratic => {
            if q % 4 == 1 {
                case("-1 is a square in F_q", 2 * fq * q)
            } else {
                case("-1 is not a square in F_q", 2 * fq * q * q)
            }
        }
        Named::BinaryCubic if f == 1 => {
            if p == 23 {
                case("p = 23", 2 * p128 * p128)
            } else if legendre_symbol(p as i64, 23)? == -1 {
                case("(p/23) = -1", p128 * p128 + p128.pow(3))
            } else if represented_by_form(p, 2, 1, 3)? {
                case("p = 2x^2+xy+3y^2", 2 * p128.pow(3))
            } else if represented_by_form(p, 1, 1, 6)? {
                case("p = x^2+xy+6y^2", 2 * p128 * p128)
            } else {
                return Err(Error::internal(format!("p = {p} falls in no case")));
            }
        }
        Named::Lee if f == 1 => {
            if p == 3 || p % 3 == 2 {
                case("p = 2 mod 3 or p = 3", p128 + 2 * p128 * p128)
            } else if represented_by_form(p, 1, 0, 27)? {
                case("p = 1 mod 3, p = x^2+27y^2", 3 * p128)
            } else {
                case("p = 1 mod 3, p != x^2+27y^2", 3 * p128 * p128)
            }
        }
        Named::Elliptic(a) if f == 1 => {
            if a % p as i64 != 0 && curve_has_point(a, p)? {
                case("curve has a point with X != 0", 3 * p128 * p128)
            } else {
                None
            }
        }
        Named::Heisenberg(k) => case("f q^k", fq * q.pow(k as u32)),
        Named::Unitriangular(k) if k >= 2 && (p as usize) > k - 1 => {
            case("f q^(k-2)", fq * q.pow(k as u32 - 2))
        }
        Named::FreeNilpotent(n, 2) => {
            let n = n as u128;
            case("(n^2-n)/2 f q", (n * n - n) / 2 * fq * q)
        }
        Named::FreeNilpotent(n, 3) if p > 3 => {
            let n = n as u128;
            case("(n^3-n)/3 f q", (n * n * n - n) / 3 * fq * q)
        }
        Named::FreeNilpotent(2, c) if f == 1 && p as usize > c => match c {
            4 => case("3p", 3 * p128),
            5 => case("2p^2+4p", 2 * p128 * p128 + 4 * p128),
            6 => case("p^3+3p^2+5p", p128.pow(3) + 3 * p128 * p128 + 5 * p128),
            _ => None,
        },
        Named::FreeMetabelian(c) if p as usize > c => {
            case("(c-1) f q", (c as u128 - 1) * fq * q)
        }
        _ => None,
    };
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn value(name: Named, p: u64, f: u32) -> u128 {
        predicted_value(&name, p, f).unwrap().unwrap().value
    }

    #[test]
    fn closed_form_cases() {
        assert_eq!(value(Named::BinaryQuadratic, 13, 1), 26);
        assert_eq!(value(Named::BinaryQuadratic, 7, 1), 98);
        assert_eq!(value(Named::BinaryQuadratic, 3, 2), 36);
        assert_eq!(value(Named::BinaryQuadratic, 3, 3), 2 * 3 * 27 * 27);
        assert_eq!(value(Named::BinaryCubic, 13, 1), 4394);
        assert_eq!(value(Named::BinaryCubic, 23, 1), 2 * 23 * 23);
        assert_eq!(value(Named::BinaryCubic, 59, 1), 2 * 59 * 59);
        assert_eq!(value(Named::BinaryCubic, 5, 1), 25 + 125);
        assert_eq!(value(Named::Lee, 3, 1), 21);
        assert_eq!(value(Named::Lee, 31, 1), 93);
        assert_eq!(value(Named::Lee, 7, 1), 147);
        assert_eq!(value(Named::FreeNilpotent(2, 6), 7, 1), 525);
        assert_eq!(value(Named::FreeMetabelian(5), 7, 1), 28);
        assert_eq!(value(Named::FreeNilpotent(2, 3), 7, 1), 14);
        assert!(predicted_value(&Named::BinaryCubic, 3, 2).unwrap().is_none());
        assert!(predicted_value(&Named::Lee, 2, 1).is_err());
    }

    #[test]
    fn names_roundtrip() {
        for n in [
            Named::Elliptic(-2),
            Named::BinaryQuadratic,
            Named::BinaryCubic,
            Named::Lee,
            Named::Heisenberg(3),
            Named::Unitriangular(4),
            Named::FreeNilpotent(2, 5),
            Named::FreeMetabelian(4),
        ] {
            assert_eq!(n.to_string().parse::<Named>().unwrap(), n);
        }
        assert!("nope".parse::<Named>().is_err());
        assert!("free:2".parse::<Named>().is_err());
    }
}
