use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;

use super::{Applicability, Claim, ClaimMode, ClassSet, FieldFacts, OrbitBase, Plan, Recipe, Subject, Suspect};
use crate::cyclotomy::classes;
use crate::diffsets::{Kind, Params};
use crate::field::{Elem, Field};
use crate::numtheory::{exact_sqrt, is_prime, isqrt, prime_power_decompose};
use crate::{Error, Result};

use Applicability::{Applicable, NotApplicable, Undetermined};

/// The registered recipes, in id order.
pub fn registry() -> &'static [Recipe] {
    &REGISTRY
}

pub fn lookup(id: &str) -> Option<&'static Recipe> {
    REGISTRY.iter().find(|r| r.id.eq_ignore_ascii_case(id))
}

fn frac(id: &'static str, numerator: i64, denominator: i64) -> Result<u64> {
    if numerator < 0 || numerator % denominator != 0 {
        return Err(Error::FormulaNotIntegral { recipe: id, numerator, denominator });
    }
    Ok((numerator / denominator) as u64)
}

fn c(e: u32, idx: &[i64]) -> ClassSet {
    ClassSet::new(e, idx)
}

fn suspect(printed: &str, note: &str) -> Option<Suspect> {
    Some(Suspect { printed: printed.to_string(), note: note.to_string() })
}

fn skew(label: &str, set: ClassSet, pds: ClassSet, params: Params) -> Claim {
    Claim {
        label: label.to_string(),
        subject: Subject::Set(set),
        mode: ClaimMode::Skew,
        reference: Some(pds),
        expected_kind: Kind::SkewPds,
        expected: params,
        suspect: None,
    }
}

/// A family claim with frequencies `lambda` (on `T`) and `mu` (off `T`).
/// Equal frequencies collapse to a DDF/EDF. `reference = None` means the
/// frequencies are measured against the union of the family.
fn family(
    label: &str,
    mode: ClaimMode,
    subject: Subject,
    v: u64,
    ks: Vec<u64>,
    (lambda, mu): (u64, u64),
    reference: Option<ClassSet>,
) -> Claim {
    let internal = mode == ClaimMode::Internal;
    let (kind, expected, reference) = if lambda == mu {
        (if internal { Kind::Ddf } else { Kind::Edf }, Params::family(v, ks, lambda, None), None)
    } else {
        let kind = match (internal, reference.is_some()) {
            (true, false) => Kind::Dpdf,
            (false, false) => Kind::Epdf,
            (true, true) => Kind::RelativeDpdf,
            (false, true) => Kind::RelativeEpdf,
        };
        (kind, Params::family(v, ks, lambda, Some(mu)), reference)
    };
    Claim { label: label.to_string(), subject, mode, reference, expected_kind: kind, expected, suspect: None }
}

fn plan(id: &str, q: u64, claims: Vec<Claim>) -> Result<Applicability> {
    Ok(Applicable(Plan { recipe: id.to_string(), q, claims }))
}

fn paley(q: u64) -> Params {
    Params::set(q, (q - 1) / 2, (q - 5) / 4, (q - 1) / 4)
}

/// The signed `t` when `q = 5 mod 8`, `q > 5` and `|t| = 2`; `None` when
/// those fail, `Err` when the sign is not known.
fn by_t(f: &FieldFacts) -> Option<core::result::Result<i64, &'static str>> {
    if f.q % 8 != 5 || f.q <= 5 || f.t_abs != Some(2) {
        return None;
    }
    Some(f.t.ok_or("sign of t depends on the primitive element"))
}

// ---- hypotheses shared by several recipes ----

/// `p = 3 mod 8`, `m = 2 mod 4`.
fn p3_m2(f: &FieldFacts) -> bool {
    f.p % 8 == 3 && f.m % 4 == 2
}

fn xa(f: &FieldFacts) -> Option<(i64, i64)> {
    Some((f.x()?, f.a()?))
}

/// `q = l^2` with `l` a prime power `= 3 mod 8`.
fn square_root_3mod8(f: &FieldFacts) -> Option<i64> {
    if f.m % 2 != 0 {
        return None;
    }
    let l = (f.p as i64).pow(f.m / 2);
    (l % 8 == 3).then_some(l)
}

// ---- candidate generators ----

fn primes_up_to(n: u64) -> impl Iterator<Item = u64> {
    (2..=n).filter(|&p| is_prime(p))
}

/// `p^m` in `range` for primes `p = r mod 8` and `m = 2 mod 4`.
fn powers_m2mod4(range: Range<u64>, r: u64) -> Vec<u64> {
    let mut out = Vec::new();
    for p in primes_up_to(isqrt(range.end)).filter(|p| p % 8 == r) {
        let mut q = p * p;
        while q < range.end {
            if q >= range.start {
                out.push(q);
            }
            match q.checked_mul(p.pow(4)) {
                Some(n) => q = n,
                None => break,
            }
        }
    }
    out.sort_unstable();
    out
}

fn p3_candidates(range: Range<u64>) -> Vec<u64> {
    powers_m2mod4(range, 3)
}

fn p5_candidates(range: Range<u64>) -> Vec<u64> {
    powers_m2mod4(range, 5)
}

fn p5_squares(range: Range<u64>) -> Vec<u64> {
    primes_up_to(isqrt(range.end)).filter(|p| p % 8 == 5).map(|p| p * p).filter(|q| range.contains(q)).collect()
}

/// `l^2` in `range` for prime powers `l = 3 mod 8` accepted by `shape`.
fn squares_of(range: Range<u64>, shape: fn(i64) -> bool) -> Vec<u64> {
    (3..=isqrt(range.end))
        .filter(|&l| l % 8 == 3 && shape(l as i64) && prime_power_decompose(l).is_ok())
        .map(|l| l * l)
        .filter(|q| range.contains(q))
        .collect()
}

/// `l = c^2/2 + 1` for an integer `c`.
fn half_square_plus_one(l: i64) -> bool {
    exact_sqrt(2 * (l - 1)).is_some()
}

/// `l = d^2 + 2` for an odd integer `d`.
fn odd_square_plus_two(l: i64) -> bool {
    exact_sqrt(l - 2).is_some_and(|d| d % 2 == 1)
}

fn r7_candidates(range: Range<u64>) -> Vec<u64> {
    squares_of(range, half_square_plus_one)
}

fn r10_candidates(range: Range<u64>) -> Vec<u64> {
    squares_of(range, odd_square_plus_two)
}

// ---- recipes ----

fn r1(f: &FieldFacts, _: Option<&Field>) -> Result<Applicability> {
    let t = match by_t(f) {
        None => return Ok(NotApplicable),
        Some(Err(why)) => return Ok(Undetermined(why)),
        Some(Ok(t)) => t,
    };
    let pds = c(2, &[if t == -2 { 0 } else { 1 }]);
    plan("R1", f.q, vec![skew("skew", c(4, &[0, 3]), pds, paley(f.q))])
}

fn r2(f: &FieldFacts, _: Option<&Field>) -> Result<Applicability> {
    let t = match by_t(f) {
        None => return Ok(NotApplicable),
        Some(Err(why)) => return Ok(Undetermined(why)),
        Some(Ok(t)) => t,
    };
    let pds = c(2, &[if t == -2 { 1 } else { 0 }]);
    plan("R2", f.q, vec![skew("skew", c(4, &[0, 1]), pds, paley(f.q))])
}

fn r3(f: &FieldFacts, _: Option<&Field>) -> Result<Applicability> {
    let t = match by_t(f) {
        None => return Ok(NotApplicable),
        Some(Err(why)) => return Ok(Undetermined(why)),
        Some(Ok(t)) => t,
    };
    let pds = c(2, &[if t == -2 { 0 } else { 1 }]);
    plan("R3", f.q, vec![skew("negative", c(4, &[1, 2]), pds, paley(f.q))])
}

fn r4(f: &FieldFacts, _: Option<&Field>) -> Result<Applicability> {
    let t = match by_t(f) {
        None => return Ok(NotApplicable),
        Some(Err(why)) => return Ok(Undetermined(why)),
        Some(Ok(t)) => t,
    };
    let q = f.q;
    let pds = c(2, &[if t == -2 { 1 } else { 0 }]).with_zero();
    let params = Params::set(q, (q + 1) / 2, (q + 3) / 4, (q - 1) / 4);
    let mut claim = skew("complement", c(4, &[1, 2]).with_zero(), pds, params);
    claim.suspect = suspect(
        "(q,(q+1)/2,(q-1)/4,(q+3)/4)",
        "lambda and mu are exchanged in the printed parameters; the complement of a \
         (q,(q-1)/2,(q-5)/4,(q-1)/4) skew PDS has lambda=(q+3)/4, mu=(q-1)/4",
    );
    plan("R4", q, vec![claim])
}

fn r5_params(id: &'static str, q: u64, x: i64) -> Result<Params> {
    let qi = q as i64;
    Ok(Params::set(q, (q - 1) / 4, frac(id, qi - 11 - 6 * x, 16)?, frac(id, qi - 3 + 2 * x, 16)?))
}

fn r5(f: &FieldFacts, _: Option<&Field>) -> Result<Applicability> {
    let Some((x, _)) = xa(f).filter(|&(x, a)| p3_m2(f) && x + a == -2) else {
        return Ok(NotApplicable);
    };
    let params = r5_params("R5", f.q, x)?;
    let mut claims = vec![skew("skew", c(8, &[3, 5]), c(4, &[0]), params.clone())];
    for i in 0..8 {
        if i == 3 {
            continue;
        }
        let label = alloc::format!("shift {i}");
        claims.push(skew(&label, c(8, &[i, i + 2]), c(4, &[i + 1]), params.clone()));
    }
    plan("R5", f.q, claims)
}

fn r6(f: &FieldFacts, _: Option<&Field>) -> Result<Applicability> {
    let Some((x, _)) = xa(f).filter(|&(x, a)| p3_m2(f) && x + a == -2) else {
        return Ok(NotApplicable);
    };
    let (q, qi) = (f.q, f.q as i64);
    let complement =
        Params::set(q, (3 * q + 1) / 4, frac("R6", 9 * qi + 2 * x + 5, 16)?, frac("R6", 9 * qi - 6 * x - 3, 16)?);
    plan(
        "R6",
        q,
        vec![
            skew("complement", c(8, &[0, 1, 2, 4, 6, 7]).with_zero(), c(4, &[1, 2, 3]).with_zero(), complement),
            skew("negative", c(8, &[1, 7]), c(4, &[0]), r5_params("R6", q, x)?),
        ],
    )
}

fn r7(f: &FieldFacts, _: Option<&Field>) -> Result<Applicability> {
    let Some(l) = square_root_3mod8(f).filter(|&l| half_square_plus_one(l)) else {
        return Ok(NotApplicable);
    };
    let (q, qi) = (f.q, f.q as i64);
    let params = Params::set(q, (q - 1) / 4, frac("R7", qi - 11 + 6 * l, 16)?, frac("R7", qi - 3 - 2 * l, 16)?);
    plan("R7", q, vec![skew("skew", c(8, &[3, 5]), c(4, &[0]), params)])
}

fn r8(f: &FieldFacts, _: Option<&Field>) -> Result<Applicability> {
    if !(p3_m2(f) && xa(f).is_some_and(|(x, a)| a == x + 4)) {
        return Ok(NotApplicable);
    }
    plan("R8", f.q, vec![skew("skew", c(8, &[0, 1, 2, 5]), c(2, &[0]), paley(f.q))])
}

fn r9(f: &FieldFacts, _: Option<&Field>) -> Result<Applicability> {
    if !(p3_m2(f) && xa(f).is_some_and(|(x, a)| a == x + 4)) {
        return Ok(NotApplicable);
    }
    let q = f.q;
    plan(
        "R9",
        q,
        vec![
            skew(
                "complement",
                c(8, &[3, 4, 6, 7]).with_zero(),
                c(2, &[1]).with_zero(),
                Params::set(q, (q + 1) / 2, (q + 3) / 4, (q - 1) / 4),
            ),
            skew("negative", c(8, &[1, 4, 5, 6]), c(2, &[0]), paley(q)),
        ],
    )
}

fn r10(f: &FieldFacts, _: Option<&Field>) -> Result<Applicability> {
    if square_root_3mod8(f).filter(|&l| odd_square_plus_two(l)).is_none() {
        return Ok(NotApplicable);
    }
    plan("R10", f.q, vec![skew("skew", c(8, &[0, 1, 2, 5]), c(2, &[0]), paley(f.q))])
}

fn internal(label: &str, sets: Vec<ClassSet>, f: &FieldFacts, lm: (u64, u64)) -> Result<Claim> {
    let ks = sizes(&sets, f.q);
    Ok(family(label, ClaimMode::Internal, Subject::Family(sets), f.q, ks, lm, Some(c(2, &[0]))))
}

fn external(label: &str, sets: Vec<ClassSet>, f: &FieldFacts, lm: (u64, u64)) -> Result<Claim> {
    let ks = sizes(&sets, f.q);
    Ok(family(label, ClaimMode::External, Subject::Family(sets), f.q, ks, lm, Some(c(2, &[0]))))
}

fn sizes(sets: &[ClassSet], q: u64) -> Vec<u64> {
    sets.iter().map(|s| s.classes.len() as u64 * (q - 1) / s.e as u64 + s.zero as u64).collect()
}

fn r11(f: &FieldFacts, _: Option<&Field>) -> Result<Applicability> {
    let (Some(x), Some(a)) = (f.x(), f.a()) else { return Ok(NotApplicable) };
    // At q = 9 the classes of order 8 are singletons: no differences.
    if f.q % 16 != 9 || f.q == 9 || f.two_quartic != Some(true) || a != 1 {
        return Ok(NotApplicable);
    }
    let qi = f.q as i64;
    let lm = (frac("R11", qi - 15 - 2 * x, 64)?, frac("R11", qi - 3 + 2 * x, 64)?);
    let mut claim = internal("internal", vec![c(8, &[0])], f, lm)?;
    claim.suspect = suspect(
        "(2i,0)_8 = (q-1-15)/2x",
        "the printed frequency on C_0^2 is garbled; encoded as (q-15-2x)/64 from the \
         cyclotomic numbers (2i,0)_8",
    );
    plan("R11", f.q, vec![claim])
}

fn r12(f: &FieldFacts, _: Option<&Field>) -> Result<Applicability> {
    let Some((x, _)) = xa(f).filter(|&(x, a)| p3_m2(f) && x + a == -2) else {
        return Ok(NotApplicable);
    };
    let qi = f.q as i64;
    let (l, m) = (frac("R12", qi - 7 - 2 * x, 8)?, frac("R12", qi - 3 + 2 * x, 8)?);
    plan(
        "R12",
        f.q,
        vec![
            internal("D1", vec![c(8, &[3, 5]), c(8, &[2, 6])], f, (l, m))?,
            internal("D2", vec![c(8, &[0, 2]), c(8, &[3, 7])], f, (m, l))?,
        ],
    )
}

fn r13(f: &FieldFacts, _: Option<&Field>) -> Result<Applicability> {
    let t = match by_t(f) {
        None => return Ok(NotApplicable),
        Some(Err(why)) => return Ok(Undetermined(why)),
        Some(Ok(t)) => t,
    };
    let q = f.q;
    let (lo, hi) = ((q - 5) / 8, (q + 3) / 8);
    let sets = || vec![c(4, &[0]), c(4, &[3])];
    let mut ext = external("external", sets(), f, if t == -2 { (lo, hi) } else { (hi, lo) })?;
    ext.suspect = suspect("(q+3)/5", "the printed denominator 5 is not integral in general; the frequency is (q+3)/8");
    let int = family("internal", ClaimMode::Internal, Subject::Family(sets()), q, sizes(&sets(), q), (lo, lo), None);
    plan("R13", q, vec![ext, int])
}

fn r14(f: &FieldFacts, field: Option<&Field>) -> Result<Applicability> {
    let t = match by_t(f) {
        None => return Ok(NotApplicable),
        Some(Err(why)) => return Ok(Undetermined(why)),
        Some(Ok(t)) => t,
    };
    let (Some(two), Some(field)) = (f.two_class4, field) else {
        return Ok(Undetermined("class of 2 depends on the primitive element"));
    };
    let q = f.q;
    let subject =
        || Subject::Orbits { base: OrbitBase::QuarticResidues, multipliers: vec![Elem(1), field.from_int(2)] };
    let ks = vec![2; ((q - 1) / 4) as usize];
    let edf = (two == 1 && t == -2) || (two == 3 && t == 2);
    let ext = if edf {
        let lm = ((q - 5) / 4, (q - 5) / 4);
        family("external", ClaimMode::External, subject(), q, ks.clone(), lm, None)
    } else {
        let lm = ((q - 9) / 4, (q - 1) / 4);
        let mut claim = family("external", ClaimMode::External, subject(), q, ks.clone(), lm, Some(c(2, &[0])));
        claim.suspect = suspect(
            "EPDF",
            "stated without a reference set, but the two frequencies sit on C_0^2 and \
             C_1^2 rather than on the union of the family",
        );
        claim
    };
    let int = family("internal", ClaimMode::Internal, subject(), q, ks, (1, 0), Some(c(2, &[0])));
    plan("R14", q, vec![ext, int])
}

fn r15(f: &FieldFacts, _: Option<&Field>) -> Result<Applicability> {
    let (Some(x), Some(a)) = (f.x(), f.a()) else { return Ok(NotApplicable) };
    if f.q % 16 != 9 || f.q == 9 {
        return Ok(NotApplicable);
    }
    let qi = f.q as i64;
    let lm = if x + 2 * a != -1 {
        (frac("R15", qi - 11 - 2 * x - 4 * a, 32)?, frac("R15", qi - 7 + 2 * x + 4 * a, 32)?)
    } else {
        let l = frac("R15", qi - 9, 32)?;
        (l, l)
    };
    plan("R15", f.q, vec![internal("internal", vec![c(8, &[0]), c(8, &[2])], f, lm)?])
}

fn r16(f: &FieldFacts, _: Option<&Field>) -> Result<Applicability> {
    let (Some(x), Some(a)) = (f.x(), f.a()) else { return Ok(NotApplicable) };
    // At q = 9 the classes of order 8 are singletons: no differences.
    if f.q % 16 != 9 || f.q == 9 || f.two_quartic != Some(true) || a != 1 {
        return Ok(NotApplicable);
    }
    let qi = f.q as i64;
    let lm = (frac("R16", qi - 12 - x, 16)?, frac("R16", qi - 6 + x, 16)?);
    let sets = vec![c(8, &[0]), c(8, &[1]), c(8, &[4]), c(8, &[6])];
    plan("R16", f.q, vec![internal("internal", sets, f, lm)?])
}

fn yb(f: &FieldFacts) -> core::result::Result<(i64, i64), &'static str> {
    match (f.y, f.b) {
        (Some(y), Some(b)) => Ok((y, b)),
        _ => Err("signs of y and b depend on the primitive element"),
    }
}

fn r17(f: &FieldFacts, _: Option<&Field>) -> Result<Applicability> {
    if f.q % 16 != 9 || f.ab.is_none() {
        return Ok(NotApplicable);
    }
    let (y, b) = match yb(f) {
        Ok(v) => v,
        Err(why) => return Ok(Undetermined(why)),
    };
    let qi = f.q as i64;
    let lm = (frac("R17", qi - 5 + 2 * y - 2 * b, 8)?, frac("R17", qi - 5 - 2 * y + 2 * b, 8)?);
    plan("R17", f.q, vec![internal("internal", vec![c(8, &[0, 1]), c(8, &[2, 3])], f, lm)?])
}

fn r18(f: &FieldFacts, _: Option<&Field>) -> Result<Applicability> {
    if f.q % 16 != 9 || f.ab.is_none() {
        return Ok(NotApplicable);
    }
    let (y, b) = match yb(f) {
        Ok(v) => v,
        Err(why) => return Ok(Undetermined(why)),
    };
    let qi = f.q as i64;
    let (l, m) = (frac("R18", qi - 5 - 2 * y - 2 * b, 8)?, frac("R18", qi - 5 + 2 * y + 2 * b, 8)?);
    plan(
        "R18",
        f.q,
        vec![
            internal("D1", vec![c(8, &[0, 3]), c(8, &[1, 6])], f, (l, m))?,
            internal("D2", vec![c(8, &[0, 5]), c(8, &[2, 7])], f, (m, l))?,
        ],
    )
}

fn r19(f: &FieldFacts, _: Option<&Field>) -> Result<Applicability> {
    if !(f.m == 2 && f.p % 8 == 5) {
        return Ok(NotApplicable);
    }
    let Some(y) = f.y else {
        return Ok(Undetermined("sign of y depends on the primitive element"));
    };
    let qi = f.q as i64;
    let (l, m) = (frac("R19", qi - 5 - 2 * y, 8)?, frac("R19", qi - 5 + 2 * y, 8)?);
    plan(
        "R19",
        f.q,
        vec![
            internal("D1", vec![c(8, &[0, 3]), c(8, &[1, 6])], f, (l, m))?,
            internal("D2", vec![c(8, &[0, 5]), c(8, &[2, 7])], f, (m, l))?,
        ],
    )
}

fn r20(f: &FieldFacts, _: Option<&Field>) -> Result<Applicability> {
    if !(f.p % 8 == 5 && f.m % 4 == 2) {
        return Ok(NotApplicable);
    }
    let Some(y) = f.y else {
        return Ok(Undetermined("sign of y depends on the primitive element"));
    };
    let qi = f.q as i64;
    let lm = (frac("R20", qi - 5 + 2 * y, 8)?, frac("R20", qi - 5 - 2 * y, 8)?);
    plan(
        "R20",
        f.q,
        vec![
            internal("D1", vec![c(8, &[0, 1]), c(8, &[2, 7])], f, lm)?,
            internal("D2", vec![c(8, &[0, 1]), c(8, &[3, 6])], f, lm)?,
        ],
    )
}

fn r21(f: &FieldFacts, _: Option<&Field>) -> Result<Applicability> {
    let (Some(x), Some(a)) = (f.x(), f.a()) else { return Ok(NotApplicable) };
    if f.q % 16 != 1 || f.two_quartic != Some(true) || a != 1 {
        return Ok(NotApplicable);
    }
    let qi = f.q as i64;
    let lm = (frac("R21", qi + 1 - 2 * x, 32)?, frac("R21", qi - 3 + 2 * x, 32)?);
    plan("R21", f.q, vec![external("external", vec![c(8, &[0]), c(8, &[4])], f, lm)?])
}

fn r22(f: &FieldFacts, _: Option<&Field>) -> Result<Applicability> {
    let Some(a) = f.a() else { return Ok(NotApplicable) };
    if f.q % 16 != 1 || f.two_quartic != Some(false) || a != -3 {
        return Ok(NotApplicable);
    }
    let Some(y) = f.y else {
        return Ok(Undetermined("sign of y depends on the primitive element"));
    };
    let qi = f.q as i64;
    let lm = (frac("R22", 3 * qi - 3 + 8 * y, 16)?, frac("R22", 3 * qi - 3 - 8 * y, 16)?);
    let sets = vec![c(8, &[0]), c(8, &[1]), c(8, &[4]), c(8, &[5])];
    plan("R22", f.q, vec![external("external", sets, f, lm)?])
}

fn r23(f: &FieldFacts, _: Option<&Field>) -> Result<Applicability> {
    let Some(x) = f.x() else { return Ok(NotApplicable) };
    if f.q % 16 != 9 {
        return Ok(NotApplicable);
    }
    let qi = f.q as i64;
    let lm = (frac("R23", qi - 3 + 2 * x, 16)?, frac("R23", qi + 1 - 2 * x, 16)?);
    plan("R23", f.q, vec![external("external", vec![c(8, &[0]), c(8, &[2, 6])], f, lm)?])
}

/// Smallest `gamma` in `C_2^4` with `1 - gamma` a square (or not).
fn gamma_r24(field: &Field, square: bool) -> Result<Option<Elem>> {
    let part = classes(field, 4)?;
    let mut cands = part.class(2).to_vec();
    cands.sort_unstable();
    for g in cands {
        let d = field.sub(Elem(1), g);
        if (field.discrete_log(d)? % 2 == 0) == square {
            return Ok(Some(g));
        }
    }
    Ok(None)
}

fn r24(f: &FieldFacts, field: Option<&Field>) -> Result<Applicability> {
    if f.q % 8 != 5 || f.q <= 5 {
        return Ok(NotApplicable);
    }
    let Some(field) = field else {
        return Ok(Undetermined("the admissible multipliers depend on the field"));
    };
    let q = f.q;
    let ks = vec![2; ((q - 1) / 4) as usize];
    let orbits = |g: Elem| Subject::Orbits { base: OrbitBase::QuarticResidues, multipliers: vec![Elem(1), g] };
    let mut claims = Vec::new();
    if let Some(g) = gamma_r24(field, false)? {
        let lm = ((q - 5) / 4, (q - 5) / 4);
        claims.push(family("external", ClaimMode::External, orbits(g), q, ks.clone(), lm, None));
        claims.push(family("internal", ClaimMode::Internal, orbits(g), q, ks.clone(), (0, 1), None));
    }
    if let Some(g) = gamma_r24(field, true)? {
        let why = "the conclusion covers only 1-gamma a non-square; this branch follows \
                   the same counting argument with 1-gamma a square";
        let mut ext = family(
            "external, 1-gamma square",
            ClaimMode::External,
            orbits(g),
            q,
            ks.clone(),
            ((q - 9) / 4, (q - 1) / 4),
            None,
        );
        ext.suspect = suspect("(not stated)", why);
        let mut int = family("internal, 1-gamma square", ClaimMode::Internal, orbits(g), q, ks, (1, 0), None);
        int.suspect = suspect("(not stated)", why);
        claims.push(ext);
        claims.push(int);
    }
    plan("R24", q, claims)
}

fn r25(f: &FieldFacts, field: Option<&Field>) -> Result<Applicability> {
    if f.q % 8 != 1 || f.q < 17 {
        return Ok(NotApplicable);
    }
    let Some(field) = field else {
        return Ok(Undetermined("the admissible multipliers depend on the field"));
    };
    let Some(&g) = super::admissible_gammas(field)?.first() else {
        return Ok(NotApplicable);
    };
    let q = f.q;
    let subject = || Subject::Orbits {
        base: OrbitBase::QuarticResiduesModSign,
        multipliers: vec![Elem(1), field.neg(Elem(1)), g, field.neg(g)],
    };
    let ks = vec![4; ((q - 1) / 8) as usize];
    plan(
        "R25",
        q,
        vec![
            family("external", ClaimMode::External, subject(), q, ks.clone(), ((q - 17) / 4, (q - 1) / 4), None),
            family("internal", ClaimMode::Internal, subject(), q, ks, (3, 0), None),
        ],
    )
}

macro_rules! recipe {
    ($id:literal, $f:ident, $field:literal, $cands:expr, $title:literal, $cond:literal, [$($formula:literal),*]) => {
        Recipe {
            id: $id,
            title: $title,
            conditions: $cond,
            formulas: &[$($formula),*],
            needs_field: $field,
            plan: $f,
            candidates: $cands,
        }
    };
}

static REGISTRY: [Recipe; 25] = [
    recipe!(
        "R1",
        r1,
        true,
        None,
        "skew Paley PDS C0^4 ∪ C3^4",
        "q = 5 mod 8, q > 5, |t| = 2",
        ["D = C0^4∪C3^4 skew for C0^2 (t=-2) or C1^2 (t=2)", "(q,(q-1)/2,(q-5)/4,(q-1)/4)"]
    ),
    recipe!(
        "R2",
        r2,
        true,
        None,
        "skew Paley PDS C0^4 ∪ C1^4",
        "q = 5 mod 8, q > 5, |t| = 2",
        ["D = C0^4∪C1^4 skew for C1^2 (t=-2) or C0^2 (t=2)", "(q,(q-1)/2,(q-5)/4,(q-1)/4)"]
    ),
    recipe!(
        "R3",
        r3,
        true,
        None,
        "negative of C0^4 ∪ C3^4",
        "q = 5 mod 8, q > 5, |t| = 2",
        ["-D = C1^4∪C2^4 skew for the PDS of C0^4∪C3^4", "(q,(q-1)/2,(q-5)/4,(q-1)/4)"]
    ),
    recipe!(
        "R4",
        r4,
        true,
        None,
        "complement of C0^4 ∪ C3^4",
        "q = 5 mod 8, q > 5, |t| = 2",
        ["G\\D = C1^4∪C2^4∪{0} skew for C1^2∪{0} (t=-2) or C0^2∪{0} (t=2)", "(q,(q+1)/2,(q+3)/4,(q-1)/4)"]
    ),
    recipe!(
        "R5",
        r5,
        false,
        Some(p3_candidates),
        "skew PDS C3^8 ∪ C5^8 and its shifts",
        "p = 3 mod 8, m = 2 mod 4, x + a = -2",
        ["C_i^8∪C_{i+2}^8 skew for C_{i+1}^4", "(q,(q-1)/4,(q-11-6x)/16,(q-3+2x)/16)"]
    ),
    recipe!(
        "R6",
        r6,
        false,
        Some(p3_candidates),
        "complement and negative of C3^8 ∪ C5^8",
        "p = 3 mod 8, m = 2 mod 4, x + a = -2",
        [
            "G\\D skew for C1^4∪C2^4∪C3^4∪{0}: (q,(3q+1)/4,(9q+2x+5)/16,(9q-6x-3)/16)",
            "-D = C1^8∪C7^8 skew for C0^4: (q,(q-1)/4,(q-11-6x)/16,(q-3+2x)/16)"
        ]
    ),
    recipe!(
        "R7",
        r7,
        false,
        Some(r7_candidates),
        "skew PDS C3^8 ∪ C5^8 over GF(l^2), l = c^2/2 + 1",
        "q = l^2, l = 3 mod 8 a prime power, l = c^2/2 + 1",
        ["C3^8∪C5^8 skew for C0^4", "(q,(q-1)/4,(q-11+6l)/16,(q-3-2l)/16)"]
    ),
    recipe!(
        "R8",
        r8,
        false,
        Some(p3_candidates),
        "skew Paley PDS C0^8 ∪ C1^8 ∪ C2^8 ∪ C5^8",
        "p = 3 mod 8, m = 2 mod 4, a = x + 4",
        ["C{0,1,2,5}^8 skew for C0^2", "(q,(q-1)/2,(q-5)/4,(q-1)/4)"]
    ),
    recipe!(
        "R9",
        r9,
        false,
        Some(p3_candidates),
        "complement and negative of C{0,1,2,5}^8",
        "p = 3 mod 8, m = 2 mod 4, a = x + 4",
        [
            "G\\D = C{3,4,6,7}^8∪{0} skew for C1^2∪{0}: (q,(q+1)/2,(q+3)/4,(q-1)/4)",
            "-D = C{1,4,5,6}^8 skew for C0^2: (q,(q-1)/2,(q-5)/4,(q-1)/4)"
        ]
    ),
    recipe!(
        "R10",
        r10,
        false,
        Some(r10_candidates),
        "skew Paley PDS C{0,1,2,5}^8 over GF(l^2), l = d^2 + 2",
        "q = l^2, l = 3 mod 8 a prime power, l = d^2 + 2",
        ["C{0,1,2,5}^8 skew for C0^2", "(q,(q-1)/2,(q-5)/4,(q-1)/4)"]
    ),
    recipe!(
        "R11",
        r11,
        false,
        None,
        "relative DPDF {C0^8}",
        "q = 9 mod 16, 2 a quartic residue, a = 1",
        ["{C0^8} relative to C0^2", "(q,1,(q-1)/8;(q-15-2x)/64,(q-3+2x)/64)"]
    ),
    recipe!(
        "R12",
        r12,
        false,
        Some(p3_candidates),
        "relative DPDFs from pairs of order-8 classes",
        "p = 3 mod 8, m = 2 mod 4, x + a = -2",
        [
            "{C3∪C5, C2∪C6} relative to C0^2: (q,2,(q-1)/4;(q-7-2x)/8,(q-3+2x)/8)",
            "{C0∪C2, C3∪C7} relative to C0^2: (q,2,(q-1)/4;(q-3+2x)/8,(q-7-2x)/8)"
        ]
    ),
    recipe!(
        "R13",
        r13,
        true,
        None,
        "EPDF and DDF {C0^4, C3^4}",
        "q = 5 mod 8, q > 5, |t| = 2",
        ["Ext relative to C0^2: ((q-5)/8,(q+3)/8) for t=-2, swapped for t=2", "Int: (q,2,(q-1)/4,(q-5)/8)-DDF"]
    ),
    recipe!(
        "R14",
        r14,
        true,
        None,
        "pairs {i, 2i}, i in C0^4",
        "q = 5 mod 8, q > 5, |t| = 2",
        [
            "Ext: (q,(q-1)/4,2,(q-5)/4)-EDF if (2 in C1^4, t=-2) or (2 in C3^4, t=2)",
            "otherwise Ext relative to C0^2: ((q-9)/4,(q-1)/4)",
            "Int relative to C0^2: (1,0)"
        ]
    ),
    recipe!(
        "R15",
        r15,
        false,
        None,
        "relative DPDF {C0^8, C2^8}",
        "q = 9 mod 16",
        ["x+2a != -1: relative to C0^2, ((q-11-2x-4a)/32,(q-7+2x+4a)/32)", "x+2a = -1: (q,2,(q-1)/8,(q-9)/32)-DDF"]
    ),
    recipe!(
        "R16",
        r16,
        false,
        None,
        "relative DPDF {C0^8, C1^8, C4^8, C6^8}",
        "q = 9 mod 16, 2 a quartic residue, a = 1",
        ["relative to C0^2: (q,4,(q-1)/8;(q-12-x)/16,(q-6+x)/16)"]
    ),
    recipe!(
        "R17",
        r17,
        true,
        None,
        "relative DPDF {C0∪C1, C2∪C3} of order 8",
        "q = 9 mod 16",
        ["y != b: relative to C0^2, ((q-5+2y-2b)/8,(q-5-2y+2b)/8)", "y = b: DDF (q-5)/8"]
    ),
    recipe!(
        "R18",
        r18,
        true,
        None,
        "relative DPDFs {C0∪C3, C1∪C6} and {C0∪C5, C2∪C7}",
        "q = 9 mod 16",
        ["D1 relative to C0^2: ((q-5-2y-2b)/8,(q-5+2y+2b)/8)", "D2: swapped", "y = -b: both DDF (q-5)/8"]
    ),
    recipe!(
        "R19",
        r19,
        true,
        Some(p5_squares),
        "R18 families over GF(p^2), p = 5 mod 8",
        "q = p^2, p = 5 mod 8",
        ["D1 relative to C0^2: ((q-5-2y)/8,(q-5+2y)/8)", "D2: swapped"]
    ),
    recipe!(
        "R20",
        r20,
        true,
        Some(p5_candidates),
        "relative DPDFs {C0∪C1, C2∪C7} and {C0∪C1, C3∪C6}",
        "p = 5 mod 8, m = 2 mod 4",
        ["both relative to C0^2: ((q-5+2y)/8,(q-5-2y)/8)"]
    ),
    recipe!(
        "R21",
        r21,
        false,
        None,
        "relative EPDF {C0^8, C4^8}",
        "q = 1 mod 16, 2 a quartic residue, a = 1",
        ["relative to C0^2: (q,2,(q-1)/8;(q+1-2x)/32,(q-3+2x)/32)"]
    ),
    recipe!(
        "R22",
        r22,
        true,
        None,
        "relative EPDF {C0^8, C1^8, C4^8, C5^8}",
        "q = 1 mod 16, 2 not a quartic residue, a = -3",
        ["y != 0: relative to C0^2, (q,4,(q-1)/8;(3q-3+8y)/16,(3q-3-8y)/16)", "y = 0: EDF (3q-3)/16"]
    ),
    recipe!(
        "R23",
        r23,
        false,
        None,
        "relative EPDF {C0^8, C2^8 ∪ C6^8}",
        "q = 9 mod 16",
        ["x != 1: relative to C0^2, (q,2;(q-1)/8,(q-1)/4;(q-3+2x)/16,(q+1-2x)/16)", "x = 1: EDF (q-1)/16"]
    ),
    recipe!(
        "R24",
        r24,
        true,
        None,
        "pairs {i, gamma i}, gamma in C2^4",
        "q = 5 mod 8, q > 5",
        [
            "1-gamma non-square: (q,(q-1)/4,2,(q-5)/4)-EDF and (q,(q-1)/4,2;0,1)-DPDF",
            "1-gamma square: ((q-9)/4,(q-1)/4)-EPDF and (1,0)-DPDF"
        ]
    ),
    recipe!(
        "R25",
        r25,
        true,
        None,
        "quadruples {±i, ±gamma i}, gamma in C2^4",
        "q = 1 mod 8, q >= 17, 1-gamma and 1+gamma in C0^4 and C2^4 (either order)",
        ["(q,(q-1)/8,4;(q-17)/4,(q-1)/4)-EPDF", "(q,(q-1)/8,4;3,0)-DPDF"]
    ),
];
