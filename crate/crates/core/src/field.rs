//! Finite fields `GF(p^m)` backed by dense exponent, logarithm and Zech
//! tables.
//!
//! An element is stored as its *code*: the coefficient vector of the
//! residue polynomial `c_0 + c_1 x + ... + c_{m-1} x^{m-1}` read as the
//! base-`p` integer `c_0 + c_1 p + ... + c_{m-1} p^{m-1}`. Code 0 is the
//! additive identity and code 1 the multiplicative identity. Dense arrays
//! indexed by code make difference multisets cheap to accumulate.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::numtheory::{distinct_prime_factors, is_prime};
use crate::{Error, Result};

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 31;

const NO_LOG: u32 = u32::MAX;

/// A field element, identified by its base-`p` code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(transparent))]
pub struct Elem(pub u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    #[inline]
    pub fn code(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The data that pins a field down completely: characteristic, degree,
/// defining primitive polynomial and the chosen primitive element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FieldSpec {
    pub p: u32,
    pub m: u32,
    /// Coefficients `c_0, ..., c_m` of a monic polynomial, constant term first.
    pub poly: Vec<u32>,
    /// Code of the primitive element used for exp/log.
    pub generator: u32,
}

impl FieldSpec {
    pub fn order(&self) -> u64 {
        (self.p as u64).pow(self.m)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},poly=[", self.p, self.m)?;
        for (i, c) in self.poly.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "],generator={}", self.generator)
    }
}

/// A concrete finite field with a fixed primitive element `alpha`.
///
/// Immutable after construction, so it can be shared freely across threads.
#[derive(Clone)]
pub struct Field {
    spec: FieldSpec,
    q: u32,
    /// `p^i` for `i < m`.
    place: Vec<u32>,
    /// `exp[k]` = code of `alpha^k`, `k < q - 1`.
    exp: Vec<u32>,
    /// `log[code]`, with a sentinel at code 0.
    log: Vec<u32>,
    /// `zech[k]` = `log(1 - alpha^k)` for `0 < k < q - 1`; sentinel at 0.
    zech: Vec<u32>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field").field("spec", &self.spec).finish_non_exhaustive()
    }
}

// Residue-polynomial arithmetic on coefficient vectors, used only while the
// tables are being built.
struct PolyRing {
    p: u64,
    m: usize,
    /// Monic modulus, constant term first, length m + 1.
    modulus: Vec<u64>,
}

impl PolyRing {
    fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let m = self.m;
        let p = self.p;
        let mut prod = vec![0u64; 2 * m - 1];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + ai * bj) % p;
            }
        }
        for k in (m..prod.len()).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            // x^k = x^(k-m) * x^m and x^m = -(c_0 + ... + c_{m-1} x^{m-1}).
            for i in 0..m {
                let sub = c * self.modulus[i] % p;
                prod[k - m + i] = (prod[k - m + i] + p - sub) % p;
            }
            prod[k] = 0;
        }
        prod.truncate(m);
        prod
    }

    fn pow(&self, base: &[u64], mut e: u64) -> Vec<u64> {
        let mut acc = self.one();
        let mut b = base.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        acc
    }

    fn one(&self) -> Vec<u64> {
        let mut v = vec![0u64; self.m];
        v[0] = 1;
        v
    }

    fn is_one(&self, v: &[u64]) -> bool {
        v[0] == 1 && v[1..].iter().all(|&c| c == 0)
    }

    fn decode(&self, code: u32) -> Vec<u64> {
        let mut v = vec![0u64; self.m];
        let mut c = code as u64;
        for slot in v.iter_mut() {
            *slot = c % self.p;
            c /= self.p;
        }
        v
    }

    fn encode(&self, v: &[u64]) -> u32 {
        v.iter().rev().fold(0u64, |acc, &c| acc * self.p + c) as u32
    }

    /// Whether `g` has multiplicative order exactly `n` (assumes `g^n = 1`
    /// is to be checked too).
    fn has_order(&self, g: &[u64], n: u64, prime_factors: &[u64]) -> bool {
        if !self.is_one(&self.pow(g, n)) {
            return false;
        }
        prime_factors.iter().all(|&r| !self.is_one(&self.pow(g, n / r)))
    }
}

impl Field {
    /// Builds `GF(p^m)`.
    ///
    /// When `poly` is `None` the lexicographically smallest monic primitive
    /// polynomial of degree `m` is used, comparing coefficient tuples
    /// `(c_0, ..., c_{m-1})` with the constant term most significant. The
    /// primitive element defaults to the root `x` of the polynomial; pass
    /// `generator` to pick another one (for `m = 1` any primitive root mod
    /// `p`, for example).
    pub fn new(p: u32, m: u32, poly: Option<&[u32]>, generator: Option<u32>) -> Result<Field> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if m == 0 {
            return Err(Error::InvalidPolynomial("degree must be at least 1"));
        }
        let q = (p as u64).checked_pow(m).filter(|&q| q <= MAX_ORDER);
        let q = match q {
            Some(q) => q,
            None => return Err(Error::FieldTooLarge { p: p as u64, m }),
        };
        let n = q - 1;
        let factors = distinct_prime_factors(n);
        let mu = m as usize;

        let modulus: Vec<u64> = match poly {
            Some(c) => {
                if c.len() != mu + 1 {
                    return Err(Error::InvalidPolynomial("expected m + 1 coefficients"));
                }
                if c[mu] != 1 {
                    return Err(Error::InvalidPolynomial("polynomial must be monic"));
                }
                if c.iter().any(|&x| x >= p) {
                    return Err(Error::InvalidPolynomial("coefficient outside [0, p)"));
                }
                let modulus: Vec<u64> = c.iter().map(|&x| x as u64).collect();
                let ring = PolyRing { p: p as u64, m: mu, modulus: modulus.clone() };
                if !ring.has_order(&Self::root(&ring), n, &factors) {
                    return Err(Error::NotPrimitivePolynomial);
                }
                modulus
            }
            None => Self::smallest_primitive(p as u64, mu, n, &factors),
        };
        let ring = PolyRing { p: p as u64, m: mu, modulus };

        let gen_vec = match generator {
            Some(g) => {
                if g as u64 >= q {
                    return Err(Error::ElementOutOfRange(g));
                }
                let v = ring.decode(g);
                if g == 0 || !ring.has_order(&v, n, &factors) {
                    return Err(Error::NotPrimitiveElement(g));
                }
                v
            }
            None => Self::root(&ring),
        };
        let gen_code = ring.encode(&gen_vec);

        let nu = n as usize;
        let mut exp = Vec::with_capacity(nu);
        let mut log = vec![NO_LOG; q as usize];
        let mut cur = ring.one();
        for k in 0..nu {
            let code = ring.encode(&cur);
            if log[code as usize] != NO_LOG {
                // Only reachable if the primitivity checks above are wrong.
                return Err(Error::NotPrimitiveElement(gen_code));
            }
            exp.push(code);
            log[code as usize] = k as u32;
            cur = ring.mul(&cur, &gen_vec);
        }

        let mut place = Vec::with_capacity(mu);
        let mut acc = 1u32;
        for _ in 0..mu {
            place.push(acc);
            acc = acc.wrapping_mul(p);
        }

        let spec = FieldSpec { p, m, poly: ring.modulus.iter().map(|&c| c as u32).collect(), generator: gen_code };
        let mut field = Field { spec, q: q as u32, place, exp, log, zech: Vec::new() };
        let mut zech = vec![NO_LOG; nu];
        for (k, slot) in zech.iter_mut().enumerate().skip(1) {
            let d = field.sub(Elem::ONE, Elem(field.exp[k]));
            *slot = field.log[d.0 as usize];
        }
        field.zech = zech;
        Ok(field)
    }

    /// Builds the field described by a serialized spec, re-validating it.
    pub fn from_spec(spec: &FieldSpec) -> Result<Field> {
        Field::new(spec.p, spec.m, Some(&spec.poly), Some(spec.generator))
    }

    /// Builds `GF(q)` for a prime power `q` with the default polynomial.
    pub fn with_order(q: u64, generator: Option<u32>) -> Result<Field> {
        let (p, m) = crate::numtheory::prime_power_decompose(q)?;
        if q > MAX_ORDER {
            return Err(Error::FieldTooLarge { p, m });
        }
        Field::new(p as u32, m, None, generator)
    }

    fn root(ring: &PolyRing) -> Vec<u64> {
        if ring.m == 1 {
            // Root of x + c_0 is -c_0.
            vec![(ring.p - ring.modulus[0]) % ring.p]
        } else {
            let mut v = vec![0u64; ring.m];
            v[1] = 1;
            v
        }
    }

    fn smallest_primitive(p: u64, m: usize, n: u64, factors: &[u64]) -> Vec<u64> {
        // Odometer over (c_0, ..., c_{m-1}) with c_0 most significant.
        let mut coeffs = vec![0u64; m];
        loop {
            let mut modulus = coeffs.clone();
            modulus.push(1);
            if coeffs[0] != 0 {
                let ring = PolyRing { p, m, modulus: modulus.clone() };
                if ring.has_order(&Self::root(&ring), n, factors) {
                    return modulus;
                }
            }
            let mut i = m;
            loop {
                // A primitive polynomial always exists, so this never runs past c_0.
                i -= 1;
                coeffs[i] += 1;
                if coeffs[i] < p {
                    break;
                }
                coeffs[i] = 0;
            }
        }
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.spec.p
    }

    #[inline]
    pub fn m(&self) -> u32 {
        self.spec.m
    }

    /// Field order `q = p^m`.
    #[inline]
    pub fn order(&self) -> u32 {
        self.q
    }

    /// Order of the multiplicative group, `q - 1`.
    #[inline]
    pub fn group_order(&self) -> u32 {
        self.q - 1
    }

    #[inline]
    pub fn generator(&self) -> Elem {
        Elem(self.spec.generator)
    }

    pub fn contains(&self, x: Elem) -> bool {
        x.0 < self.q
    }

    pub fn check(&self, x: Elem) -> Result<Elem> {
        if self.contains(x) {
            Ok(x)
        } else {
            Err(Error::ElementOutOfRange(x.0))
        }
    }

    /// Iterates over all elements in code order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.q).map(Elem)
    }

    /// Embeds an integer via the prime subfield.
    pub fn from_int(&self, v: i64) -> Elem {
        Elem(v.rem_euclid(self.spec.p as i64) as u32)
    }

    /// The element as an integer residue if it lies in `GF(p)`.
    pub fn as_prime_subfield(&self, x: Elem) -> Option<u32> {
        (x.0 < self.spec.p).then_some(x.0)
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let p = self.spec.p;
        if self.spec.m == 1 {
            let s = a.0 + b.0;
            return Elem(if s >= p { s - p } else { s });
        }
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0u32;
        for &w in &self.place {
            let d = x % p + y % p;
            out += (if d >= p { d - p } else { d }) * w;
            x /= p;
            y /= p;
        }
        Elem(out)
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        let p = self.spec.p;
        if self.spec.m == 1 {
            return Elem(if a.0 == 0 { 0 } else { p - a.0 });
        }
        let mut x = a.0;
        let mut out = 0u32;
        for &w in &self.place {
            let d = x % p;
            out += (if d == 0 { 0 } else { p - d }) * w;
            x /= p;
        }
        Elem(out)
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        let p = self.spec.p;
        if self.spec.m == 1 {
            return Elem(if a.0 >= b.0 { a.0 - b.0 } else { a.0 + p - b.0 });
        }
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0u32;
        for &w in &self.place {
            let (dx, dy) = (x % p, y % p);
            out += (if dx >= dy { dx - dy } else { dx + p - dy }) * w;
            x /= p;
            y /= p;
        }
        Elem(out)
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            return Elem::ZERO;
        }
        let n = self.q - 1;
        let s = self.log[a.0 as usize] + self.log[b.0 as usize];
        Elem(self.exp[(if s >= n { s - n } else { s }) as usize])
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let n = self.q - 1;
        let l = self.log[a.0 as usize];
        Ok(Elem(self.exp[(if l == 0 { 0 } else { n - l }) as usize]))
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e` for a signed exponent; `0^0 = 1`, and `0^e` for `e < 0` errors.
    pub fn pow(&self, a: Elem, e: i64) -> Result<Elem> {
        if a.0 == 0 {
            return match e {
                0 => Ok(Elem::ONE),
                e if e > 0 => Ok(Elem::ZERO),
                _ => Err(Error::DivisionByZero),
            };
        }
        let n = (self.q - 1) as i64;
        let l = self.log[a.0 as usize] as i64;
        let k = (l as i128 * e as i128).rem_euclid(n as i128) as usize;
        Ok(Elem(self.exp[k]))
    }

    /// `alpha^k` for any integer `k`.
    #[inline]
    pub fn exp(&self, k: i64) -> Elem {
        let n = (self.q - 1) as i64;
        Elem(self.exp[k.rem_euclid(n) as usize])
    }

    /// The exponent `k` in `[0, q-1)` with `alpha^k = x`.
    #[inline]
    pub fn discrete_log(&self, x: Elem) -> Result<u32> {
        match self.log.get(x.0 as usize) {
            None => Err(Error::ElementOutOfRange(x.0)),
            Some(&NO_LOG) => Err(Error::ZeroHasNoLog),
            Some(&l) => Ok(l),
        }
    }

    /// Raw exponent table, `exp_table()[k]` = code of `alpha^k`.
    pub fn exp_table(&self) -> &[u32] {
        &self.exp
    }

    /// Raw logarithm table indexed by code; entry 0 is `u32::MAX`.
    pub fn log_table(&self) -> &[u32] {
        &self.log
    }

    /// Raw Zech table: `zech_table()[k] = log(1 - alpha^k)` for `k > 0`.
    pub fn zech_table(&self) -> &[u32] {
        &self.zech
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf13(g: u32) -> Field {
        Field::new(13, 1, None, Some(g)).unwrap()
    }

    #[test]
    fn default_polynomials_are_smallest() {
        let f = Field::new(3, 2, None, None).unwrap();
        assert_eq!(f.spec().poly, vec![2, 1, 1]);
        assert_eq!(f.generator(), Elem(3));
        // For m = 1 the smallest constant term gives the largest primitive root.
        let f = Field::new(13, 1, None, None).unwrap();
        assert_eq!(f.spec().poly, vec![2, 1]);
        assert_eq!(f.generator(), Elem(11));
    }

    #[test]
    fn explicit_polynomials() {
        let f = Field::new(5, 2, Some(&[3, 2, 1]), None).unwrap();
        assert_eq!(f.order(), 25);
        // alpha^2 = -2 alpha - 3 = 3 alpha + 2 -> code 2 + 3*5
        assert_eq!(f.exp(2), Elem(17));
        assert_eq!(Field::new(3, 2, Some(&[1, 0, 1]), None).unwrap_err(), Error::NotPrimitivePolynomial);
        assert!(matches!(Field::new(3, 2, Some(&[1, 0, 2]), None), Err(Error::InvalidPolynomial(_))));
    }

    #[test]
    fn gf13_examples() {
        let f = gf13(2);
        assert_eq!(f.mul(Elem(7), Elem(2)), Elem::ONE);
        assert_eq!(f.discrete_log(Elem(8)), Ok(3));
        assert_eq!(f.discrete_log(Elem(1)), Ok(0));
        assert_eq!(f.discrete_log(Elem(0)), Err(Error::ZeroHasNoLog));
        assert_eq!(f.inv(Elem(0)), Err(Error::DivisionByZero));
        assert_eq!(f.inv(Elem(7)), Ok(Elem(2)));
        assert_eq!(f.pow(Elem(2), -1), Ok(Elem(7)));
        assert_eq!(gf13(7).discrete_log(Elem(7)), Ok(1));
    }

    #[test]
    fn gf9_examples() {
        let f = Field::new(3, 2, Some(&[2, 1, 1]), None).unwrap();
        let alpha = f.generator();
        // alpha^2 = 2 alpha + 1: code 1 + 2*3 = 7
        assert_eq!(f.mul(alpha, alpha), Elem(7));
        assert_eq!(f.discrete_log(Elem(2)), Ok(4));
    }

    #[test]
    fn errors() {
        assert_eq!(Field::new(12, 1, None, None).unwrap_err(), Error::NotPrime(12));
        assert!(matches!(Field::new(2, 32, None, None), Err(Error::FieldTooLarge { .. })));
        assert_eq!(Field::new(13, 1, None, Some(3)).unwrap_err(), Error::NotPrimitiveElement(3));
        assert_eq!(Field::new(13, 1, None, Some(13)).unwrap_err(), Error::ElementOutOfRange(13));
    }

    #[test]
    fn tables_are_consistent() {
        for &(p, m) in &[(2, 1), (2, 4), (3, 3), (5, 2), (7, 2), (13, 1), (2, 8)] {
            let f = Field::new(p, m, None, None).unwrap();
            let n = f.group_order() as i64;
            for k in 0..n {
                assert_eq!(f.discrete_log(f.exp(k)), Ok(k as u32));
            }
            for x in f.elements().skip(1) {
                assert_eq!(f.exp(f.discrete_log(x).unwrap() as i64), x);
                assert_eq!(f.add(x, f.neg(x)), Elem::ZERO);
                assert_eq!(f.mul(x, f.inv(x).unwrap()), Elem::ONE);
            }
            for k in 1..n {
                let z = f.zech_table()[k as usize];
                assert_eq!(f.exp(z as i64), f.sub(Elem::ONE, f.exp(k)));
            }
        }
    }

    #[test]
    fn wilson() {
        for &(p, m) in &[(3, 1), (3, 2), (5, 3), (7, 3), (2, 6), (101, 1), (97, 2)] {
            let f = Field::new(p, m, None, None).unwrap();
            let prod = f.elements().skip(1).fold(Elem::ONE, |acc, x| f.mul(acc, x));
            assert_eq!(prod, f.neg(Elem::ONE), "GF({p}^{m})");
        }
    }
}
