//! Cyclotomic classes `C_i^e = alpha^i <alpha^e>` and cyclotomic numbers
//! `(i,j)_e = #{z in C_i : z + 1 in C_j}`.
//!
//! Brute-force tables are built in one pass over the multiplicative group
//! using the Zech table. Closed forms cover orders 2, 4 and 8; the order-8
//! forms leave the signs of `y` and `b` open, and those are calibrated
//! against the brute-force table of the concrete field.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;

use crate::field::{Elem, Field};
use crate::numtheory::{a2_2b2_rep, two_squares_rep, x2_4y2_rep};
use crate::{Error, Result};

/// The partition of `GF(q)^*` into the `e` cyclotomic classes of order `e`.
#[derive(Debug, Clone)]
pub struct ClassPartition<'a> {
    field: &'a Field,
    e: u32,
    f: u32,
    members: Vec<Vec<Elem>>,
}

fn check_order(field: &Field, e: u32) -> Result<()> {
    let n = field.group_order();
    if e == 0 || n % e != 0 {
        return Err(Error::OrderDoesNotDivide { e, q: field.order() as u64 });
    }
    Ok(())
}

/// Builds the classes of order `e`; members are listed in increasing code order.
pub fn classes(field: &Field, e: u32) -> Result<ClassPartition<'_>> {
    check_order(field, e)?;
    let f = field.group_order() / e;
    let mut members = vec![Vec::with_capacity(f as usize); e as usize];
    let log = field.log_table();
    for code in 1..field.order() {
        members[(log[code as usize] % e) as usize].push(Elem(code));
    }
    Ok(ClassPartition { field, e, f, members })
}

impl<'a> ClassPartition<'a> {
    pub fn field(&self) -> &'a Field {
        self.field
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    /// Class size `(q-1)/e`.
    pub fn f(&self) -> u32 {
        self.f
    }

    /// Class index of a nonzero element.
    #[inline]
    pub fn index_of(&self, x: Elem) -> Result<u32> {
        Ok(self.field.discrete_log(x)? % self.e)
    }

    /// `C_i`, with `i` taken mod `e`.
    pub fn class(&self, i: i64) -> &[Elem] {
        &self.members[i.rem_euclid(self.e as i64) as usize]
    }

    /// Sorted union of the listed classes (indices mod `e`, duplicates ignored).
    pub fn union(&self, indices: &[i64]) -> Vec<Elem> {
        let mut seen = vec![false; self.e as usize];
        let mut out = Vec::new();
        for &i in indices {
            let i = i.rem_euclid(self.e as i64) as usize;
            if !core::mem::replace(&mut seen[i], true) {
                out.extend_from_slice(&self.members[i]);
            }
        }
        out.sort_unstable();
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum Provenance {
    BruteForce,
    ClosedForm,
}

/// The `e x e` matrix of cyclotomic numbers.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CycNumTable {
    pub e: u32,
    /// Row-major, `counts[i * e + j] = (i,j)_e`.
    pub counts: Vec<u64>,
    pub provenance: Provenance,
    /// Order 8 only: the signs of `y` and `b` that reproduce the field.
    pub resolved_y: Option<i64>,
    pub resolved_b: Option<i64>,
}

impl CycNumTable {
    /// `(i,j)_e` with indices mod `e`.
    #[inline]
    pub fn get(&self, i: i64, j: i64) -> u64 {
        let e = self.e as i64;
        self.counts[(i.rem_euclid(e) * e + j.rem_euclid(e)) as usize]
    }

    pub fn row(&self, i: u32) -> &[u64] {
        let e = self.e as usize;
        &self.counts[i as usize * e..(i as usize + 1) * e]
    }

    /// Same entries, ignoring provenance and sign bookkeeping.
    pub fn same_counts(&self, other: &CycNumTable) -> bool {
        self.e == other.e && self.counts == other.counts
    }
}

/// Raw `(i,j)_e` counts over `z = alpha^k` for `k` in `range`
/// (a sub-range of `0..q-1`). Partial results add entrywise, which lets
/// callers split the group across threads.
pub fn bruteforce_counts_range(field: &Field, e: u32, range: Range<u32>) -> Result<Vec<u64>> {
    check_order(field, e)?;
    let n = field.group_order();
    let zech = field.zech_table();
    // 1 + alpha^k = 1 - alpha^(k + h) with alpha^h = -1.
    let h = if field.p() == 2 { 0 } else { n / 2 };
    let eu = e as usize;
    let mut counts = vec![0u64; eu * eu];
    for k in range.start..range.end.min(n) {
        let idx = if k + h >= n { k + h - n } else { k + h };
        if idx == 0 {
            continue;
        }
        let l = zech[idx as usize];
        counts[(k % e) as usize * eu + (l % e) as usize] += 1;
    }
    Ok(counts)
}

/// Assembles a brute-force table from summed partial counts.
pub fn table_from_counts(e: u32, counts: Vec<u64>) -> CycNumTable {
    debug_assert_eq!(counts.len(), (e * e) as usize);
    CycNumTable { e, counts, provenance: Provenance::BruteForce, resolved_y: None, resolved_b: None }
}

/// The full brute-force table in one O(q) pass.
pub fn cyclotomic_table_bruteforce(field: &Field, e: u32) -> Result<CycNumTable> {
    let counts = bruteforce_counts_range(field, e, 0..field.group_order())?;
    Ok(table_from_counts(e, counts))
}

/// A single `(i,j)_e` by direct enumeration of `C_i`.
pub fn cyclotomic_number_bruteforce(part: &ClassPartition<'_>, i: u32, j: u32) -> Result<u64> {
    let e = part.e;
    for index in [i, j] {
        if index >= e {
            return Err(Error::IndexOutOfRange { index, e });
        }
    }
    let field = part.field;
    let mut n = 0;
    for &z in part.class(i as i64) {
        let w = field.add(z, Elem::ONE);
        if !w.is_zero() && part.index_of(w)? == j {
            n += 1;
        }
    }
    Ok(n)
}

fn divide(entry: (u32, u32), numerator: i64, denominator: i64) -> Result<u64> {
    if numerator % denominator != 0 || numerator < 0 {
        return Err(Error::NonIntegralFormula { entry, numerator, denominator });
    }
    Ok((numerator / denominator) as u64)
}

/// Fills an `e x e` table from `(value, entries)` groups; all numerators
/// share one denominator.
fn fill(e: u32, den: i64, groups: &[(i64, &[(u32, u32)])]) -> Result<Vec<u64>> {
    let mut counts = vec![u64::MAX; (e * e) as usize];
    for &(num, cells) in groups {
        for &(i, j) in cells {
            counts[(i * e + j) as usize] = divide((i, j), num, den)?;
        }
    }
    debug_assert!(counts.iter().all(|&c| c != u64::MAX));
    Ok(counts)
}

/// Order 2 from `q` alone.
pub fn order2_counts(q: u64) -> Result<Vec<u64>> {
    if q % 2 == 0 {
        return Err(Error::OrderDoesNotDivide { e: 2, q });
    }
    let f = ((q - 1) / 2) as i64;
    if f % 2 == 0 {
        fill(2, 2, &[(f - 2, &[(0, 0)]), (f, &[(0, 1), (1, 0), (1, 1)])])
    } else {
        fill(2, 2, &[(f - 1, &[(0, 0), (1, 0), (1, 1)]), (f + 1, &[(0, 1)])])
    }
}

/// Order 4 from `q = s^2 + t^2` with the signed `t` of the chosen generator.
pub fn order4_counts(q: u64, s: i64, t: i64) -> Result<Vec<u64>> {
    if q % 4 != 1 {
        return Err(Error::NotOneMod4(q));
    }
    let qi = q as i64;
    let f = (q - 1) / 4;
    if f % 2 == 0 {
        fill(
            4,
            16,
            &[
                (qi - 11 - 6 * s, &[(0, 0)]),
                (qi - 3 + 2 * s + 4 * t, &[(1, 0), (0, 1), (3, 3)]),
                (qi - 3 + 2 * s, &[(2, 0), (0, 2), (2, 2)]),
                (qi - 3 + 2 * s - 4 * t, &[(3, 0), (0, 3), (1, 1)]),
                (qi + 1 - 2 * s, &[(1, 2), (1, 3), (2, 1), (2, 3), (3, 1), (3, 2)]),
            ],
        )
    } else {
        fill(
            4,
            16,
            &[
                (qi - 7 + 2 * s, &[(0, 0), (2, 0), (2, 2)]),
                (qi + 1 + 2 * s - 4 * t, &[(0, 1), (1, 3), (3, 2)]),
                (qi + 1 - 6 * s, &[(0, 2)]),
                (qi + 1 + 2 * s + 4 * t, &[(0, 3), (1, 2), (3, 1)]),
                (qi - 3 - 2 * s, &[(1, 0), (1, 1), (2, 1), (2, 3), (3, 0), (3, 3)]),
            ],
        )
    }
}

type Cells = &'static [(u32, u32)];

/// Entry groups A..O for `q = 9 mod 16` (f odd).
const REL_F_ODD: [Cells; 15] = [
    &[(0, 0), (4, 0), (4, 4)],
    &[(0, 1), (3, 7), (5, 4)],
    &[(0, 2), (2, 6), (6, 4)],
    &[(0, 3), (1, 5), (7, 4)],
    &[(0, 4)],
    &[(0, 5), (1, 4), (7, 3)],
    &[(0, 6), (2, 4), (6, 2)],
    &[(0, 7), (3, 4), (5, 1)],
    &[(1, 0), (3, 3), (4, 1), (4, 5), (5, 0), (7, 7)],
    &[(1, 1), (3, 0), (4, 3), (4, 7), (5, 5), (7, 0)],
    &[(1, 2), (2, 7), (3, 6), (5, 3), (6, 5), (7, 1)],
    &[(1, 3), (1, 6), (2, 5), (6, 3), (7, 2), (7, 5)],
    &[(1, 7), (2, 3), (3, 5), (5, 2), (6, 1), (7, 6)],
    &[(2, 0), (2, 2), (4, 2), (4, 6), (6, 0), (6, 6)],
    &[(2, 1), (3, 1), (3, 2), (5, 6), (5, 7), (6, 7)],
];

/// Entry groups A..O for `q = 1 mod 16` (f even).
const REL_F_EVEN: [Cells; 15] = [
    &[(0, 0)],
    &[(0, 1), (1, 0), (7, 7)],
    &[(0, 2), (2, 0), (6, 6)],
    &[(0, 3), (3, 0), (5, 5)],
    &[(0, 4), (4, 0), (4, 4)],
    &[(0, 5), (5, 0), (3, 3)],
    &[(0, 6), (6, 0), (2, 2)],
    &[(0, 7), (7, 0), (1, 1)],
    &[(1, 2), (2, 1), (1, 7), (7, 1), (6, 7), (7, 6)],
    &[(1, 3), (3, 1), (2, 7), (7, 2), (5, 6), (6, 5)],
    &[(1, 4), (4, 1), (3, 7), (7, 3), (4, 5), (5, 4)],
    &[(1, 5), (5, 1), (3, 4), (4, 3), (4, 7), (7, 4)],
    &[(1, 6), (6, 1), (2, 3), (3, 2), (5, 7), (7, 5)],
    &[(2, 4), (4, 2), (2, 6), (6, 4), (4, 6), (6, 2)],
    &[(2, 5), (5, 2), (3, 5), (5, 3), (3, 6), (6, 3)],
];

/// The 64-fold values of A..O.
fn order8_values(q: i64, x: i64, y: i64, a: i64, b: i64, f_odd: bool, quartic: bool) -> [i64; 15] {
    match (f_odd, quartic) {
        (true, true) => [
            q - 15 - 2 * x,
            q + 1 + 2 * x - 4 * a + 16 * y,
            q + 1 + 6 * x + 8 * a - 16 * y,
            q + 1 + 2 * x - 4 * a - 16 * y,
            q + 1 - 18 * x,
            q + 1 + 2 * x - 4 * a + 16 * y,
            q + 1 + 6 * x + 8 * a + 16 * y,
            q + 1 + 2 * x - 4 * a - 16 * y,
            q - 7 + 2 * x + 4 * a,
            q - 7 + 2 * x + 4 * a,
            q + 1 - 6 * x + 4 * a + 16 * b,
            q + 1 + 2 * x - 4 * a,
            q + 1 - 6 * x + 4 * a - 16 * b,
            q - 7 - 2 * x - 8 * a,
            q + 1 + 2 * x - 4 * a,
        ],
        (true, false) => [
            q - 15 - 10 * x - 8 * a,
            q + 1 + 2 * x - 4 * a - 16 * b,
            q + 1 - 2 * x + 16 * y,
            q + 1 + 2 * x - 4 * a - 16 * b,
            q + 1 + 6 * x + 24 * a,
            q + 1 + 2 * x - 4 * a + 16 * b,
            q + 1 - 2 * x - 16 * y,
            q + 1 + 2 * x - 4 * a + 16 * b,
            q - 7 + 2 * x + 4 * a + 16 * y,
            q - 7 + 2 * x + 4 * a - 16 * y,
            q + 1 + 2 * x - 4 * a,
            q + 1 - 6 * x + 4 * a,
            q + 1 + 2 * x - 4 * a,
            q - 7 + 6 * x,
            q + 1 - 6 * x + 4 * a,
        ],
        (false, true) => [
            q - 23 - 18 * x - 24 * a,
            q - 7 + 2 * x + 4 * a + 16 * y + 16 * b,
            q - 7 + 6 * x + 16 * y,
            q - 7 + 2 * x + 4 * a - 16 * y + 16 * b,
            q - 7 - 2 * x + 8 * a,
            q - 7 + 2 * x + 4 * a + 16 * y - 16 * b,
            q - 7 + 6 * x - 16 * y,
            q - 7 + 2 * x + 4 * a - 16 * y - 16 * b,
            q + 1 + 2 * x - 4 * a,
            q + 1 - 6 * x + 4 * a,
            q + 1 + 2 * x - 4 * a,
            q + 1 + 2 * x - 4 * a,
            q + 1 - 6 * x + 4 * a,
            q + 1 - 2 * x,
            q + 1 + 2 * x - 4 * a,
        ],
        (false, false) => [
            q - 23 + 6 * x,
            q - 7 + 2 * x + 4 * a,
            q - 7 - 2 * x - 8 * a - 16 * y,
            q - 7 + 2 * x + 4 * a,
            q - 7 - 10 * x,
            q - 7 + 2 * x + 4 * a,
            q - 7 - 2 * x - 8 * a + 16 * y,
            q - 7 + 2 * x + 4 * a,
            q + 1 - 6 * x + 4 * a,
            q + 1 + 2 * x - 4 * a - 16 * b,
            q + 1 + 2 * x - 4 * a + 16 * y,
            q + 1 + 2 * x - 4 * a - 16 * y,
            q + 1 + 2 * x - 4 * a + 16 * b,
            q + 1 + 6 * x + 8 * a,
            q + 1 - 6 * x + 4 * a,
        ],
    }
}

/// Order 8 for explicit signed `y`, `b` and the quartic character of 2.
pub fn order8_counts(q: u64, x: i64, y: i64, a: i64, b: i64, two_quartic: bool) -> Result<Vec<u64>> {
    if q % 8 != 1 {
        return Err(Error::NotOneMod8(q));
    }
    let f_odd = ((q - 1) / 8) % 2 == 1;
    let rel = if f_odd { &REL_F_ODD } else { &REL_F_EVEN };
    let vals = order8_values(q as i64, x, y, a, b, f_odd, two_quartic);
    let groups: Vec<(i64, &[(u32, u32)])> = vals.iter().zip(rel.iter()).map(|(&v, &c)| (v, c)).collect();
    fill(8, 64, &groups)
}

fn closed(e: u32, counts: Vec<u64>) -> CycNumTable {
    CycNumTable { e, counts, provenance: Provenance::ClosedForm, resolved_y: None, resolved_b: None }
}

/// Closed-form order-4 table for the field's generator.
pub fn cyclotomic_numbers_order4(field: &Field) -> Result<CycNumTable> {
    let st = two_squares_rep(field)?;
    Ok(closed(4, order4_counts(field.order() as u64, st.s, st.t)?))
}

/// Closed-form order-8 table with `y`, `b` signs calibrated against the
/// brute-force table of `field`.
///
/// All four sign choices are evaluated; those that reproduce the field's
/// table exactly are kept and the first in the order `(+,+), (+,-), (-,+),
/// (-,-)` is reported. No match is an error (a transcription bug).
pub fn cyclotomic_numbers_order8(field: &Field) -> Result<CycNumTable> {
    let q = field.order() as u64;
    if q % 8 != 1 {
        return Err(Error::NotOneMod8(q));
    }
    let (p, m) = (field.p() as u64, field.m());
    let xy = x2_4y2_rep(q, p, m)?;
    let ab = a2_2b2_rep(q, p, m)?;
    let quartic = crate::numtheory::is_quartic_residue(field, field.from_int(2))?;
    let brute = cyclotomic_table_bruteforce(field, 8)?;
    let mut matches = 0;
    let mut first = None;
    for (sy, sb) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
        let (y, b) = (sy * xy.y, sb * ab.b);
        if (sy < 0 && xy.y == 0) || (sb < 0 && ab.b == 0) {
            continue;
        }
        let Ok(counts) = order8_counts(q, xy.x, y, ab.a, b, quartic) else { continue };
        if counts == brute.counts {
            matches += 1;
            first.get_or_insert((counts, y, b));
        }
    }
    let (counts, y, b) = first.ok_or(Error::CalibrationAmbiguous { matches })?;
    let mut t = closed(8, counts);
    t.resolved_y = Some(y);
    t.resolved_b = Some(b);
    Ok(t)
}

/// Closed-form table of order 2, 4 or 8.
pub fn cyclotomic_numbers_closed_form(field: &Field, e: u32) -> Result<CycNumTable> {
    match e {
        2 => Ok(closed(2, order2_counts(field.order() as u64)?)),
        4 => cyclotomic_numbers_order4(field),
        8 => cyclotomic_numbers_order8(field),
        _ => Err(Error::NoClosedForm(e)),
    }
}

/// Predicted multiplicity, per class index `k`, of each element of `C_k`
/// in `Delta(C_j)`: `sum_i (i,0) C_{i+j}`.
pub fn delta_profile_internal(table: &CycNumTable, j: i64) -> Vec<u64> {
    delta_profile_cross(table, 0, j)
}

/// Predicted multiplicity, per class index `k`, of each element of `C_k`
/// in `Delta(C_{j+l}, C_l)`: `sum_i (i,j) C_{i+l}`. Zero is not counted.
pub fn delta_profile_cross(table: &CycNumTable, j: i64, l: i64) -> Vec<u64> {
    let e = table.e as i64;
    let mut out = vec![0u64; e as usize];
    for i in 0..e {
        out[(i + l).rem_euclid(e) as usize] += table.get(i, j);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn codes(v: &[Elem]) -> Vec<u32> {
        v.iter().map(|e| e.code()).collect()
    }

    #[test]
    fn gf13_classes() {
        let f = Field::new(13, 1, None, Some(2)).unwrap();
        let c = classes(&f, 4).unwrap();
        assert_eq!(codes(c.class(0)), [1, 3, 9]);
        assert_eq!(codes(c.class(1)), [2, 5, 6]);
        assert_eq!(codes(c.class(2)), [4, 10, 12]);
        assert_eq!(codes(c.class(3)), [7, 8, 11]);
        let f7 = Field::new(13, 1, None, Some(7)).unwrap();
        let c7 = classes(&f7, 4).unwrap();
        assert_eq!(codes(c7.class(1)), [7, 8, 11]);
        assert_eq!(codes(c7.class(3)), [2, 5, 6]);
        let one = classes(&f, 1).unwrap();
        assert_eq!(one.class(0).len(), 12);
        assert!(matches!(classes(&f, 5), Err(Error::OrderDoesNotDivide { .. })));
        assert_eq!(codes(&c.union(&[0, 3, 4])), [1, 3, 7, 8, 9, 11]);
    }

    #[test]
    fn gf13_numbers() {
        let f = Field::new(13, 1, None, Some(2)).unwrap();
        let c = classes(&f, 4).unwrap();
        assert_eq!(cyclotomic_number_bruteforce(&c, 0, 0), Ok(0));
        assert_eq!(cyclotomic_number_bruteforce(&c, 0, 2), Ok(2));
        assert_eq!(cyclotomic_number_bruteforce(&c, 4, 0), Err(Error::IndexOutOfRange { index: 4, e: 4 }));
        let c1 = classes(&f, 1).unwrap();
        assert_eq!(cyclotomic_number_bruteforce(&c1, 0, 0), Ok(11));
        let closed = cyclotomic_numbers_order4(&f).unwrap();
        // A, B, C, D, E for f odd at s = -3, t = -2.
        assert_eq!((closed.get(0, 0), closed.get(0, 1), closed.get(0, 2)), (0, 1, 2));
        assert_eq!((closed.get(0, 3), closed.get(1, 0)), (0, 1));
        let brute = cyclotomic_table_bruteforce(&f, 4).unwrap();
        assert!(closed.same_counts(&brute));
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(brute.get(i, j), cyclotomic_number_bruteforce(&c, i as u32, j as u32).unwrap());
            }
        }
    }

    #[test]
    fn row_sums() {
        for q in [29u64, 41, 9, 81, 17] {
            let f = Field::with_order(q, None).unwrap();
            for e in [2u32, 4, 8] {
                if (q - 1) % e as u64 != 0 {
                    continue;
                }
                let fsize = (q - 1) / e as u64;
                let t = cyclotomic_table_bruteforce(&f, e).unwrap();
                for i in 0..e {
                    let s: u64 = t.row(i).iter().sum();
                    assert!(s == fsize || s + 1 == fsize, "q={q} e={e} row {i}");
                }
            }
        }
    }

    #[test]
    fn small_order8_calibrates() {
        for q in [9u64, 17, 41, 25, 49, 73, 81, 89, 97, 113, 121, 137] {
            let f = Field::with_order(q, None).unwrap();
            let t = cyclotomic_numbers_order8(&f).unwrap();
            assert!(t.same_counts(&cyclotomic_table_bruteforce(&f, 8).unwrap()), "q={q}");
        }
    }

    #[test]
    fn split_ranges_add_up() {
        let f = Field::with_order(125, None).unwrap();
        let whole = cyclotomic_table_bruteforce(&f, 4).unwrap();
        let mut acc = bruteforce_counts_range(&f, 4, 0..50).unwrap();
        for (a, b) in acc.iter_mut().zip(bruteforce_counts_range(&f, 4, 50..124).unwrap()) {
            *a += b;
        }
        assert_eq!(acc, whole.counts);
    }

    #[test]
    fn order2_profile_is_paley() {
        let f = Field::new(13, 1, None, Some(2)).unwrap();
        let t = cyclotomic_numbers_closed_form(&f, 2).unwrap();
        assert!(t.same_counts(&cyclotomic_table_bruteforce(&f, 2).unwrap()));
        assert_eq!(delta_profile_internal(&t, 0), [2, 3]);
        assert_eq!(cyclotomic_numbers_closed_form(&f, 3), Err(Error::NoClosedForm(3)));
    }
}
