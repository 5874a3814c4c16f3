//! Elementary number theory: primality, prime powers, and the proper
//! representations of `q = p^m` by the forms `s^2 + t^2`, `x^2 + 4y^2` and
//! `a^2 + 2b^2` with the sign conventions the cyclotomic-number formulas
//! expect.
//!
//! A representation is *proper* when `p` does not divide its odd
//! coordinate. All searches are exhaustive over `|first| <= sqrt(q)`.

use alloc::vec::Vec;

use crate::field::{Elem, Field};
use crate::{Error, Result};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    if n % 3 == 0 {
        return n == 3;
    }
    let mut d = 5u64;
    while d * d <= n {
        if n % d == 0 || n % (d + 2) == 0 {
            return false;
        }
        d += 6;
    }
    true
}

/// Distinct prime divisors of `n`, ascending.
pub fn distinct_prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Floor of the square root.
pub fn isqrt(n: u64) -> u64 {
    if n < 2 {
        return n;
    }
    // Newton iteration from above.
    let mut x = n;
    let mut y = (x + 1) / 2;
    while y < x {
        x = y;
        y = (x + n / x) / 2;
    }
    x
}

pub fn exact_sqrt(n: i64) -> Option<i64> {
    if n < 0 {
        return None;
    }
    let r = isqrt(n as u64) as i64;
    (r * r == n).then_some(r)
}

pub fn mod_pow(base: u64, mut e: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let m = modulus as u128;
    let mut acc = 1u128;
    let mut b = base as u128 % m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc as u64
}

/// Writes `q = p^m` with `p` prime.
pub fn prime_power_decompose(q: u64) -> Result<(u64, u32)> {
    if q < 2 {
        return Err(Error::NotPrimePower(q));
    }
    let p = distinct_prime_factors(q);
    if p.len() != 1 {
        return Err(Error::NotPrimePower(q));
    }
    let p = p[0];
    let mut m = 0;
    let mut r = q;
    while r % p == 0 {
        r /= p;
        m += 1;
    }
    Ok((p, m))
}

pub fn is_prime_power(q: u64) -> bool {
    prime_power_decompose(q).is_ok()
}

/// `q = s^2 + t^2` with `s = 1 mod 4`, `p ∤ s`, and `t` signed by the generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct QuadRepST {
    pub s: i64,
    pub t: i64,
}

/// `q = x^2 + 4y^2`, `x = 1 mod 4`, `y >= 0` until a sign is calibrated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct QuadRepXY {
    pub x: i64,
    pub y: i64,
}

/// `q = a^2 + 2b^2`, `a = 1 mod 4`, `b >= 0` until a sign is calibrated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct QuadRepAB {
    pub a: i64,
    pub b: i64,
}

/// The representative of `±v` that is `1 mod 4` (`v` odd).
fn one_mod_4(v: i64) -> i64 {
    if v.rem_euclid(4) == 1 {
        v
    } else {
        -v
    }
}

fn half_power(p: u64, m: u32) -> Option<i64> {
    (m % 2 == 0).then(|| (p as i64).pow(m / 2))
}

/// Unique `first = 1 mod 4`, `p ∤ first` with `q - first^2 = weight * second^2`.
fn proper_search(q: u64, p: u64, weight: i64, form: &'static str) -> Result<(i64, i64)> {
    let q = q as i64;
    let r = isqrt(q as u64) as i64;
    let mut found = None;
    for first in -r..=r {
        if first.rem_euclid(4) != 1 || first.rem_euclid(p as i64) == 0 {
            continue;
        }
        let rest = q - first * first;
        if rest % weight != 0 {
            continue;
        }
        if let Some(second) = exact_sqrt(rest / weight) {
            if found.is_some() {
                return Err(Error::NoRepresentation(form));
            }
            found = Some((first, second));
        }
    }
    found.ok_or(Error::NoRepresentation(form))
}

/// `s` and `|t|` for `q = 1 mod 4`. The sign of `t` depends on the
/// primitive element; see [`two_squares_rep`].
pub fn two_squares_unsigned(q: u64) -> Result<(i64, i64)> {
    if q % 4 != 1 {
        return Err(Error::NotOneMod4(q));
    }
    let (p, m) = prime_power_decompose(q)?;
    if p % 4 == 3 {
        // m is even here since q = 1 mod 4.
        let s = -(p as i64);
        return Ok((s.pow(m / 2), 0));
    }
    proper_search(q, p, 1, "s^2+t^2")
}

/// `q = s^2 + t^2` with the sign of `t` fixed by
/// `alpha^((q-1)/4) = s / t (mod p)`.
///
/// For `p = 3 mod 4` this is `((-p)^(m/2), 0)`.
pub fn two_squares_rep(field: &Field) -> Result<QuadRepST> {
    let q = field.order() as u64;
    let (s, t_abs) = two_squares_unsigned(q)?;
    if t_abs == 0 {
        return Ok(QuadRepST { s, t: 0 });
    }
    let p = field.p() as i64;
    let w = field.exp(((q - 1) / 4) as i64);
    let w = field.as_prime_subfield(w).ok_or(Error::NotInPrimeSubfield(w.code()))? as i64;
    // s = t * w (mod p) selects exactly one sign since p ∤ t w.
    let t = if (t_abs * w - s).rem_euclid(p) == 0 { t_abs } else { -t_abs };
    debug_assert_eq!((t * w - s).rem_euclid(p), 0);
    Ok(QuadRepST { s, t })
}

/// The proper representation `q = x^2 + 4y^2`, `x = 1 mod 4`, `y >= 0`.
pub fn x2_4y2_rep(q: u64, p: u64, m: u32) -> Result<QuadRepXY> {
    if q % 4 != 1 {
        return Err(Error::NoRepresentation("x^2+4y^2"));
    }
    if p % 4 != 1 {
        let h = half_power(p, m).ok_or(Error::NoRepresentation("x^2+4y^2"))?;
        return Ok(QuadRepXY { x: one_mod_4(h), y: 0 });
    }
    let (x, y) = proper_search(q, p, 4, "x^2+4y^2")?;
    Ok(QuadRepXY { x, y })
}

/// The proper representation `q = a^2 + 2b^2`, `a = 1 mod 4`, `b >= 0`.
///
/// For `p = 5, 7 mod 8` this is `a = ±p^(m/2)` normalized to `1 mod 4`,
/// `b = 0`, which needs `m` even.
pub fn a2_2b2_rep(q: u64, p: u64, m: u32) -> Result<QuadRepAB> {
    if q % 2 == 0 {
        return Err(Error::NoRepresentation("a^2+2b^2"));
    }
    if p % 8 == 5 || p % 8 == 7 {
        let h = half_power(p, m).ok_or(Error::NoRepresentation("a^2+2b^2"))?;
        return Ok(QuadRepAB { a: one_mod_4(h), b: 0 });
    }
    let (a, b) = proper_search(q, p, 2, "a^2+2b^2")?;
    Ok(QuadRepAB { a, b })
}

/// Whether `x` is a fourth power in the field, i.e. `log x = 0 mod 4`.
pub fn is_quartic_residue(field: &Field, x: Elem) -> Result<bool> {
    let q = field.order() as u64;
    if (q - 1) % 4 != 0 {
        return Err(Error::OrderDoesNotDivide { e: 4, q });
    }
    Ok(field.discrete_log(x)? % 4 == 0)
}

/// Whether 2 is a quartic residue in `GF(q)`, decided inside `GF(p)`
/// without building the field: `2^((q-1)/4) = 1 (mod p)`.
pub fn two_is_quartic_residue(q: u64) -> Result<bool> {
    if q % 4 != 1 {
        return Err(Error::OrderDoesNotDivide { e: 4, q });
    }
    let (p, _) = prime_power_decompose(q)?;
    Ok(mod_pow(2, (q - 1) / 4, p) == 1)
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}
