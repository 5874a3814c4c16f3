//! Difference multisets and the certificate layer.
//!
//! A [`DiffMultiset`] is a dense count vector indexed by element code.
//! Counting runs through a [`DiffAccumulator`]: in a prime field it
//! subtracts residues directly; in an extension field it works in the
//! exponent domain, using `x - y = x (1 - y/x)` so that
//! `log(x - y) = log x + Z(log y - log x)` with the Zech table `Z`.

mod certificate;
mod check;

use alloc::vec;
use alloc::vec::Vec;

use crate::field::{Elem, Field};
use crate::{Error, Result};

pub use certificate::{Certificate, Kind, Mode, Params, PdsType};
pub use check::{
    check_ads, check_family, check_pds, check_skew_pds, classify_ads, classify_family, classify_pds, classify_skew_pds,
    pds_type, recheck, skew_complement_params,
};

/// Multiplicity of each difference, indexed by element code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiffMultiset {
    pub counts: Vec<u64>,
    pub total: u64,
}

impl DiffMultiset {
    pub fn zeros(q: u32) -> Self {
        DiffMultiset { counts: vec![0; q as usize], total: 0 }
    }

    pub fn from_counts(counts: Vec<u64>) -> Self {
        let total = counts.iter().sum();
        DiffMultiset { counts, total }
    }

    #[inline]
    pub fn get(&self, x: Elem) -> u64 {
        self.counts[x.0 as usize]
    }

    /// Multiset sum.
    pub fn merge(&mut self, other: &DiffMultiset) {
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            *a += b;
        }
        self.total += other.total;
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    /// `M[g] = M[-g]` for every `g`.
    pub fn is_symmetric(&self, field: &Field) -> bool {
        field.elements().all(|g| self.get(g) == self.get(field.neg(g)))
    }
}

/// Counting strategy for differences.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Kernel {
    /// `Direct` in prime fields, `Zech` otherwise.
    #[default]
    Auto,
    /// Field subtraction on codes.
    Direct,
    /// Exponent-domain counting through the Zech table.
    Zech,
}

/// Accumulates `#{(x, y) : x - y = g}` over any number of `(xs, ys)` blocks.
///
/// Zero differences are counted; callers computing `Delta(D)` remove the
/// diagonal themselves (see [`internal_differences`]).
pub struct DiffAccumulator<'f> {
    field: &'f Field,
    zech: bool,
    /// Code-indexed (direct) or log-indexed (Zech) nonzero differences.
    counts: Vec<u64>,
    zero: u64,
    /// `log(-1)`.
    h: u32,
}

impl<'f> DiffAccumulator<'f> {
    pub fn new(field: &'f Field, kernel: Kernel) -> Self {
        let zech = match kernel {
            Kernel::Auto => field.m() > 1,
            Kernel::Direct => false,
            Kernel::Zech => true,
        };
        let n = field.group_order();
        let len = if zech { n } else { field.order() };
        let h = if field.p() == 2 { 0 } else { n / 2 };
        DiffAccumulator { field, zech, counts: vec![0; len as usize], zero: 0, h }
    }

    /// Adds every difference `x - y`, `x in xs`, `y in ys`.
    pub fn add_cross(&mut self, xs: &[Elem], ys: &[Elem]) {
        if self.zech {
            self.add_zech(xs, ys);
        } else if self.field.m() == 1 {
            self.add_prime(xs, ys);
        } else {
            for &x in xs {
                for &y in ys {
                    let d = self.field.sub(x, y);
                    if d.is_zero() {
                        self.zero += 1;
                    } else {
                        self.counts[d.0 as usize] += 1;
                    }
                }
            }
        }
    }

    fn add_prime(&mut self, xs: &[Elem], ys: &[Elem]) {
        let p = self.field.p();
        for &x in xs {
            let base = x.0 + p;
            for &y in ys {
                let mut d = base - y.0;
                if d >= p {
                    d -= p;
                }
                self.counts[d as usize] += 1;
            }
        }
        self.zero += core::mem::take(&mut self.counts[0]);
    }

    fn add_zech(&mut self, xs: &[Elem], ys: &[Elem]) {
        let log = self.field.log_table();
        let zech = self.field.zech_table();
        let n = self.field.group_order();
        let h = self.h;
        let mut lys = Vec::with_capacity(ys.len());
        let mut y_zeros = 0u64;
        for &y in ys {
            if y.is_zero() {
                y_zeros += 1;
            } else {
                lys.push(log[y.0 as usize]);
            }
        }
        for &x in xs {
            if x.is_zero() {
                // 0 - y = -y.
                for &ly in &lys {
                    let k = if ly + h >= n { ly + h - n } else { ly + h };
                    self.counts[k as usize] += 1;
                }
                self.zero += y_zeros;
                continue;
            }
            let lx = log[x.0 as usize];
            // x - 0 = x.
            self.counts[lx as usize] += y_zeros;
            let base = n - lx;
            for &ly in &lys {
                let mut d = ly + base;
                if d >= n {
                    d -= n;
                }
                if d == 0 {
                    self.zero += 1;
                    continue;
                }
                let mut k = lx + zech[d as usize];
                if k >= n {
                    k -= n;
                }
                self.counts[k as usize] += 1;
            }
        }
    }

    /// Converts to a code-indexed multiset.
    pub fn finish(self) -> DiffMultiset {
        let mut counts = if self.zech {
            let exp = self.field.exp_table();
            let mut out = vec![0u64; self.field.order() as usize];
            for (k, &c) in self.counts.iter().enumerate() {
                out[exp[k] as usize] = c;
            }
            out
        } else {
            self.counts
        };
        counts[0] = self.zero;
        DiffMultiset::from_counts(counts)
    }
}

/// Validates element codes and rejects repeats.
pub fn validate_set(field: &Field, set: &[Elem]) -> Result<()> {
    let mut seen = vec![false; field.order() as usize];
    for &x in set {
        field.check(x)?;
        if core::mem::replace(&mut seen[x.0 as usize], true) {
            return Err(Error::DuplicateElement(x.0));
        }
    }
    Ok(())
}

/// Membership vector of a set.
pub fn indicator(field: &Field, set: &[Elem]) -> Vec<bool> {
    let mut v = vec![false; field.order() as usize];
    for &x in set {
        v[x.0 as usize] = true;
    }
    v
}

/// `Delta(D)`: the differences `x - y` over ordered pairs of distinct elements.
pub fn internal_differences(field: &Field, set: &[Elem]) -> Result<DiffMultiset> {
    internal_differences_with(field, set, Kernel::Auto)
}

pub fn internal_differences_with(field: &Field, set: &[Elem], kernel: Kernel) -> Result<DiffMultiset> {
    validate_set(field, set)?;
    let mut acc = DiffAccumulator::new(field, kernel);
    acc.add_cross(set, set);
    Ok(remove_diagonal(acc.finish(), set.len()))
}

/// Drops the `|D|` zero differences `x - x` from a `Delta(D, D)` count.
pub fn remove_diagonal(mut m: DiffMultiset, size: usize) -> DiffMultiset {
    debug_assert_eq!(m.counts[0], size as u64);
    m.total -= m.counts[0];
    m.counts[0] = 0;
    m
}

/// `Delta(D1, D2)`, zero included.
pub fn cross_differences(field: &Field, d1: &[Elem], d2: &[Elem]) -> Result<DiffMultiset> {
    validate_set(field, d1)?;
    validate_set(field, d2)?;
    let mut acc = DiffAccumulator::new(field, Kernel::Auto);
    acc.add_cross(d1, d2);
    Ok(acc.finish())
}

/// Family sets must be valid, avoid zero and be pairwise disjoint.
pub fn validate_family(field: &Field, family: &[Vec<Elem>]) -> Result<()> {
    let mut owner = vec![false; field.order() as usize];
    for (i, set) in family.iter().enumerate() {
        validate_set(field, set)?;
        for &x in set {
            if x.is_zero() {
                return Err(Error::ContainsZero(i));
            }
            if core::mem::replace(&mut owner[x.0 as usize], true) {
                return Err(Error::NotDisjoint(x.0));
            }
        }
    }
    Ok(())
}

/// `Int = sum_i Delta(D_i)`.
pub fn family_internal(field: &Field, family: &[Vec<Elem>]) -> Result<DiffMultiset> {
    validate_family(field, family)?;
    let mut acc = DiffAccumulator::new(field, Kernel::Auto);
    for set in family {
        acc.add_cross(set, set);
    }
    let size = family.iter().map(Vec::len).sum();
    Ok(remove_diagonal(acc.finish(), size))
}

/// `Ext = sum_{i != j} Delta(D_i, D_j)`.
pub fn family_external(field: &Field, family: &[Vec<Elem>]) -> Result<DiffMultiset> {
    validate_family(field, family)?;
    let mut acc = DiffAccumulator::new(field, Kernel::Auto);
    for (i, a) in family.iter().enumerate() {
        for (j, b) in family.iter().enumerate() {
            if i != j {
                acc.add_cross(a, b);
            }
        }
    }
    Ok(acc.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn es(v: &[u32]) -> Vec<Elem> {
        v.iter().map(|&c| Elem(c)).collect()
    }

    fn support(m: &DiffMultiset) -> Vec<(u32, u64)> {
        m.counts.iter().enumerate().filter(|(_, &c)| c > 0).map(|(g, &c)| (g as u32, c)).collect()
    }

    #[test]
    fn small_examples() {
        let f = Field::new(13, 1, None, Some(2)).unwrap();
        let d = internal_differences(&f, &es(&[1, 2])).unwrap();
        assert_eq!(support(&d), [(1, 1), (12, 1)]);
        assert_eq!(d.total, 2);
        let c = cross_differences(&f, &es(&[1, 2]), &es(&[3, 6])).unwrap();
        assert_eq!(support(&c), [(8, 1), (9, 1), (11, 1), (12, 1)]);
        let c = cross_differences(&f, &es(&[9, 5]), &es(&[3, 6])).unwrap();
        assert_eq!(support(&c), [(2, 1), (3, 1), (6, 1), (12, 1)]);
        let c = cross_differences(&f, &es(&[4]), &es(&[4])).unwrap();
        assert_eq!(support(&c), [(0, 1)]);
        assert_eq!(internal_differences(&f, &es(&[1, 1])), Err(Error::DuplicateElement(1)));
    }

    #[test]
    fn gf13_family() {
        let f = Field::new(13, 1, None, Some(2)).unwrap();
        let fam = [es(&[1, 2]), es(&[3, 6]), es(&[9, 5])];
        let int = family_internal(&f, &fam).unwrap();
        let squares = [1u32, 3, 4, 9, 10, 12];
        for g in 1..13u32 {
            assert_eq!(int.counts[g as usize], squares.contains(&g) as u64);
        }
        let ext = family_external(&f, &fam).unwrap();
        assert!((1..13).all(|g| ext.counts[g] == 2));
        assert_eq!(ext.counts[0], 0);
        assert!(family_external(&f, &fam[..1]).unwrap().is_empty());
        assert_eq!(family_internal(&f, &[es(&[1, 2]), es(&[2])]), Err(Error::NotDisjoint(2)));
        assert_eq!(family_internal(&f, &[es(&[1]), es(&[0])]), Err(Error::ContainsZero(1)));
    }

    #[test]
    fn kernels_agree_with_zero() {
        let f = Field::with_order(49, None).unwrap();
        let d = es(&[0, 1, 5, 8, 13, 20, 33, 48]);
        let a = internal_differences_with(&f, &d, Kernel::Direct).unwrap();
        let b = internal_differences_with(&f, &d, Kernel::Zech).unwrap();
        assert_eq!(a, b);
        assert!(a.is_symmetric(&f));
        let f2 = Field::with_order(16, None).unwrap();
        let d = es(&[0, 1, 2, 7, 9, 15]);
        assert_eq!(
            internal_differences_with(&f2, &d, Kernel::Direct).unwrap(),
            internal_differences_with(&f2, &d, Kernel::Zech).unwrap()
        );
    }
}
