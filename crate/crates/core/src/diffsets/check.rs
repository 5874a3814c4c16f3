//! Classification of sets and families from their difference multisets.
//!
//! Every `check_*` computes the multiset and hands it to the matching
//! `classify_*`; the split lets callers supply multisets counted elsewhere
//! (for example in parallel). Failures are reported as [`Kind::None`], not
//! as errors; errors are reserved for malformed input.

use alloc::vec;
use alloc::vec::Vec;

use super::{
    family_external, family_internal, indicator, internal_differences, validate_family, validate_set, Certificate,
    DiffMultiset, Kind, Mode, Params, PdsType,
};
use crate::field::{Elem, Field};
use crate::numtheory::isqrt;
use crate::Result;

fn codes(set: &[Elem]) -> Vec<u32> {
    set.iter().map(|e| e.0).collect()
}

fn sorted_codes(set: &[Elem]) -> Vec<u32> {
    let mut v = codes(set);
    v.sort_unstable();
    v
}

/// The constant value of `m` over nonzero `g` with `inside[g] == want`:
/// `Ok(None)` for an empty region, `Err(())` if it is not constant.
fn level(m: &DiffMultiset, inside: &[bool], want: bool) -> core::result::Result<Option<u64>, ()> {
    let mut value = None;
    for (g, &c) in m.counts.iter().enumerate().skip(1) {
        if inside[g] != want {
            continue;
        }
        match value {
            None => value = Some(c),
            Some(v) if v != c => return Err(()),
            _ => {}
        }
    }
    Ok(value)
}

/// Distinct values of `m` on the nonzero elements, ascending (at most 3 kept).
fn nonzero_values(m: &DiffMultiset) -> Vec<u64> {
    let mut vals: Vec<u64> = Vec::new();
    for &c in &m.counts[1..] {
        if !vals.contains(&c) {
            vals.push(c);
            if vals.len() > 2 {
                break;
            }
        }
    }
    vals.sort_unstable();
    vals
}

/// Names the parameter family of a PDS. Paley takes precedence (it needs
/// regularity), then difference sets, then (negative) Latin square type.
pub fn pds_type(params: &Params, regular: bool) -> PdsType {
    let (v, k, l) = (params.v as i64, params.k[0] as i64, params.lambda as i64);
    let mu = params.mu.unwrap_or(params.lambda) as i64;
    if v % 4 == 1 && 2 * k == v - 1 && 4 * l == v - 5 && 4 * mu == v - 1 && regular {
        return PdsType::Paley;
    }
    if l == mu {
        return PdsType::DifferenceSet;
    }
    let n = isqrt(v as u64) as i64;
    if n > 1 && n * n == v {
        if k % (n - 1) == 0 {
            let r = k / (n - 1);
            if r >= 1 && l == n + r * r - 3 * r && mu == r * r - r {
                return PdsType::LatinSquare { n: n as u64, r: r as u64 };
            }
        }
        if k % (n + 1) == 0 {
            let r = k / (n + 1);
            if r >= 1 && l == -n + r * r + 3 * r && mu == r * r + r {
                return PdsType::NegativeLatinSquare { n: n as u64, r: r as u64 };
            }
        }
    }
    PdsType::Other
}

/// PDS test on a precomputed `Delta(A)`.
pub fn classify_pds(field: &Field, a: &[Elem], delta: &DiffMultiset) -> Certificate {
    let spec = field.spec().clone();
    let none = || Certificate::none(spec.clone(), vec![sorted_codes(a)]);
    if a.is_empty() {
        return none();
    }
    let ind = indicator(field, a);
    let (Ok(lam), Ok(mu)) = (level(delta, &ind, true), level(delta, &ind, false)) else {
        return none();
    };
    let (lam, mu) = match (lam, mu) {
        (Some(l), Some(m)) => (l, m),
        (Some(l), None) => (l, l),
        (None, Some(m)) => (m, m),
        (None, None) => return none(),
    };
    let regular = !ind[0] && a.iter().all(|&x| ind[field.neg(x).0 as usize]);
    let params = Params::set(field.order() as u64, a.len() as u64, lam, mu);
    Certificate {
        kind: Kind::Pds,
        field: spec,
        sets: vec![sorted_codes(a)],
        reference_set: sorted_codes(a),
        pds_type: Some(pds_type(&params, regular)),
        params,
        trivial: false,
        regular: Some(regular),
        translate: None,
    }
}

pub fn check_pds(field: &Field, a: &[Elem]) -> Result<Certificate> {
    let delta = internal_differences(field, a)?;
    Ok(classify_pds(field, a, &delta))
}

/// The `a` with `d = a + p`, if any (`d`, `p` of equal size).
fn translate_offset(field: &Field, d: &[Elem], p: &[Elem]) -> Option<Elem> {
    let in_d = indicator(field, d);
    let d0 = *d.first()?;
    p.iter().map(|&p0| field.sub(d0, p0)).find(|&off| p.iter().all(|&x| in_d[field.add(off, x).0 as usize]))
}

/// Skew PDS test on a precomputed `Delta(D)`.
///
/// The two nonzero frequencies are tried in both roles; the PDS `A` is the
/// set where `Delta(D)` takes the value `lambda`, possibly with `0` adjoined,
/// and it is verified through `diff` (which must return `Delta` of its
/// argument). `D` equal to `A` or to a translate of it is reported as
/// [`Kind::TrivialSkewPds`].
pub fn classify_skew_pds(
    field: &Field,
    d: &[Elem],
    delta: &DiffMultiset,
    mut diff: impl FnMut(&[Elem]) -> DiffMultiset,
) -> Certificate {
    let spec = field.spec().clone();
    let vals = nonzero_values(delta);
    if d.is_empty() || vals.len() != 2 {
        return Certificate::none(spec, vec![sorted_codes(d)]);
    }
    for (lam, mu) in [(vals[0], vals[1]), (vals[1], vals[0])] {
        let mut a: Vec<Elem> = (1..field.order()).filter(|&g| delta.counts[g as usize] == lam).map(Elem).collect();
        let with_zero = a.len() + 1 == d.len();
        if with_zero {
            a.insert(0, Elem::ZERO);
        } else if a.len() != d.len() {
            continue;
        }
        let pds = classify_pds(field, &a, &diff(&a));
        if pds.kind != Kind::Pds || pds.params.lambda != lam || pds.params.mu != Some(mu) {
            continue;
        }
        let translate = translate_offset(field, d, &a);
        let trivial = translate.is_some();
        return Certificate {
            kind: if trivial { Kind::TrivialSkewPds } else { Kind::SkewPds },
            field: spec,
            sets: vec![sorted_codes(d)],
            reference_set: pds.reference_set,
            params: pds.params,
            pds_type: pds.pds_type,
            trivial,
            regular: pds.regular,
            translate: translate.map(|e| e.0),
        };
    }
    Certificate::none(spec, vec![sorted_codes(d)])
}

pub fn check_skew_pds(field: &Field, d: &[Elem]) -> Result<Certificate> {
    let delta = internal_differences(field, d)?;
    Ok(classify_skew_pds(field, d, &delta, |s| {
        internal_differences(field, s).expect("recovered set is duplicate-free")
    }))
}

/// Parameters of `G \ D` for a skew PDS `D` with parameters `p`:
/// `(v, v-k, v-2k+mu, v-2k+lambda)`.
pub fn skew_complement_params(p: &Params) -> Params {
    let (v, k) = (p.v, p.k[0]);
    let mu = p.mu.unwrap_or(p.lambda);
    Params::set(v, v - k, v + mu - 2 * k, v + p.lambda - 2 * k)
}

/// Almost difference set test: nonzero frequencies `lambda` and `lambda+1`.
/// The reference set is where the lower value is taken; `t` is its size.
pub fn classify_ads(field: &Field, d: &[Elem], delta: &DiffMultiset) -> Certificate {
    let spec = field.spec().clone();
    let vals = nonzero_values(delta);
    if d.is_empty() || vals.len() != 2 || vals[1] != vals[0] + 1 {
        return Certificate::none(spec, vec![sorted_codes(d)]);
    }
    let low: Vec<u32> = (1..field.order()).filter(|&g| delta.counts[g as usize] == vals[0]).collect();
    let params = Params {
        v: field.order() as u64,
        m: 1,
        k: vec![d.len() as u64],
        lambda: vals[0],
        mu: None,
        t: Some(low.len() as u64),
        family: false,
    };
    Certificate {
        kind: Kind::Ads,
        field: spec,
        sets: vec![sorted_codes(d)],
        reference_set: low,
        params,
        pds_type: None,
        trivial: false,
        regular: None,
        translate: None,
    }
}

pub fn check_ads(field: &Field, d: &[Elem]) -> Result<Certificate> {
    let delta = internal_differences(field, d)?;
    Ok(classify_ads(field, d, &delta))
}

/// Family test on a precomputed `Int` or `Ext` profile.
///
/// Without a reference the profile is measured against `S = union D_i`;
/// with a reference `T` against `T`. A constant profile gives a DDF/EDF;
/// a relative family whose `T` is `S` or `G* \ S` is flagged trivial.
pub fn classify_family(
    field: &Field,
    family: &[Vec<Elem>],
    mode: Mode,
    reference: Option<&[Elem]>,
    profile: &DiffMultiset,
) -> Certificate {
    let spec = field.spec().clone();
    let sets: Vec<Vec<u32>> = family.iter().map(|s| codes(s)).collect();
    // No differences at all (singletons, or `Ext` of one set) certify nothing.
    if family.is_empty() || profile.total == 0 {
        return Certificate::none(spec, sets);
    }
    let union: Vec<Elem> = family.iter().flatten().copied().collect();
    let target = reference.unwrap_or(&union);
    let ind = indicator(field, target);
    let (Ok(lam), Ok(mu)) = (level(profile, &ind, true), level(profile, &ind, false)) else {
        return Certificate::none(spec, sets);
    };
    let ks: Vec<u64> = family.iter().map(|s| s.len() as u64).collect();
    let v = field.order() as u64;
    let (kind, params) = match (lam, mu) {
        (Some(l), Some(m)) if l != m => {
            let kind = match (mode, reference.is_some()) {
                (Mode::Internal, false) => Kind::Dpdf,
                (Mode::External, false) => Kind::Epdf,
                (Mode::Internal, true) => Kind::RelativeDpdf,
                (Mode::External, true) => Kind::RelativeEpdf,
            };
            (kind, Params::family(v, ks, l, Some(m)))
        }
        (Some(l), _) | (None, Some(l)) => {
            let kind = if mode == Mode::Internal { Kind::Ddf } else { Kind::Edf };
            (kind, Params::family(v, ks, l, None))
        }
        (None, None) => return Certificate::none(spec, sets),
    };
    let trivial = reference.is_some() && kind.is_family() && params.mu.is_some() && {
        let s_ind = indicator(field, &union);
        let same = (1..field.order() as usize).all(|g| ind[g] == s_ind[g]);
        let complement = (1..field.order() as usize).all(|g| ind[g] != s_ind[g]);
        same || complement
    };
    Certificate {
        kind,
        field: spec,
        sets,
        reference_set: sorted_codes(target),
        params,
        pds_type: None,
        trivial,
        regular: None,
        translate: None,
    }
}

pub fn check_family(
    field: &Field,
    family: &[Vec<Elem>],
    mode: Mode,
    reference: Option<&[Elem]>,
) -> Result<Certificate> {
    validate_family(field, family)?;
    if let Some(t) = reference {
        validate_set(field, t)?;
    }
    let profile = match mode {
        Mode::Internal => family_internal(field, family)?,
        Mode::External => family_external(field, family)?,
    };
    Ok(classify_family(field, family, mode, reference, &profile))
}

/// Recomputes a certificate from its own sets and compares.
pub fn recheck(field: &Field, cert: &Certificate) -> Result<bool> {
    if field.spec() != &cert.field {
        return Ok(false);
    }
    let sets: Vec<Vec<Elem>> = cert.sets.iter().map(|s| s.iter().map(|&c| Elem(c)).collect()).collect();
    let reference: Vec<Elem> = cert.reference_set.iter().map(|&c| Elem(c)).collect();
    let again = match cert.kind {
        Kind::None => return Ok(false),
        Kind::Pds => check_pds(field, &sets[0])?,
        Kind::SkewPds | Kind::TrivialSkewPds => check_skew_pds(field, &sets[0])?,
        Kind::Ads => check_ads(field, &sets[0])?,
        kind => {
            let mode = kind.mode().expect("family kind");
            let r = match kind {
                Kind::Dpdf | Kind::Epdf => None,
                _ => Some(reference.as_slice()),
            };
            check_family(field, &sets, mode, r)?
        }
    };
    Ok(&again == cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn es(v: &[u32]) -> Vec<Elem> {
        v.iter().map(|&c| Elem(c)).collect()
    }

    #[test]
    fn gf13_pds_and_skew() {
        let f = Field::new(13, 1, None, Some(2)).unwrap();
        let sq = es(&[1, 3, 4, 9, 10, 12]);
        let c = check_pds(&f, &sq).unwrap();
        assert_eq!(c.kind, Kind::Pds);
        assert_eq!(c.params, Params::set(13, 6, 2, 3));
        assert_eq!(c.pds_type, Some(PdsType::Paley));
        let s = check_skew_pds(&f, &es(&[1, 3, 7, 8, 9, 11])).unwrap();
        assert_eq!(s.kind, Kind::SkewPds);
        assert_eq!(s.reference_set, [1, 3, 4, 9, 10, 12]);
        assert_eq!(s.params, Params::set(13, 6, 2, 3));
        let t = check_skew_pds(&f, &sq).unwrap();
        assert_eq!((t.kind, t.translate), (Kind::TrivialSkewPds, Some(0)));
        let shifted: Vec<Elem> = sq.iter().map(|&x| f.add(x, Elem(5))).collect();
        let t = check_skew_pds(&f, &shifted).unwrap();
        assert_eq!((t.kind, t.translate), (Kind::TrivialSkewPds, Some(5)));
        assert!(recheck(&f, &s).unwrap());
    }

    #[test]
    fn latin_square_types() {
        let f9 = Field::new(3, 2, Some(&[2, 1, 1]), None).unwrap();
        let c = check_pds(&f9, &es(&[1, 2])).unwrap();
        assert_eq!(c.params, Params::set(9, 2, 1, 0));
        assert_eq!(c.pds_type, Some(PdsType::LatinSquare { n: 3, r: 1 }));
        let ads = check_ads(&f9, &es(&[1, 2])).unwrap();
        assert_eq!(ads.kind, Kind::Ads);
        assert_eq!((ads.params.lambda, ads.params.t), (0, Some(6)));
        let f81 = Field::with_order(81, None).unwrap();
        let c0 = crate::cyclotomy::classes(&f81, 4).unwrap();
        let c = check_pds(&f81, c0.class(0)).unwrap();
        assert_eq!(c.params, Params::set(81, 20, 1, 6));
        assert_eq!(c.pds_type, Some(PdsType::NegativeLatinSquare { n: 9, r: 2 }));
    }

    #[test]
    fn families() {
        let f = Field::new(13, 1, None, Some(2)).unwrap();
        let fam = [es(&[1, 2]), es(&[3, 6]), es(&[9, 5])];
        let sq = es(&[1, 3, 4, 9, 10, 12]);
        let int = check_family(&f, &fam, Mode::Internal, Some(&sq)).unwrap();
        assert_eq!(int.kind, Kind::RelativeDpdf);
        assert_eq!(int.params, Params::family(13, vec![2, 2, 2], 1, Some(0)));
        assert_eq!(int.params.to_string(), "(13,3,2;1,0)");
        let ext = check_family(&f, &fam, Mode::External, None).unwrap();
        assert_eq!(ext.kind, Kind::Edf);
        assert_eq!(ext.params.to_string(), "(13,3,2,2)");
        assert!(recheck(&f, &int).unwrap() && recheck(&f, &ext).unwrap());
        let single = check_family(&f, &[es(&[1])], Mode::Internal, None).unwrap();
        assert_eq!(single.kind, Kind::None);
    }

    #[test]
    fn complement_params() {
        let p = Params::set(13, 6, 2, 3);
        assert_eq!(skew_complement_params(&p), Params::set(13, 7, 4, 3));
    }
}
