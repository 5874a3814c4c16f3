use alloc::string::ToString;
use alloc::vec::Vec;

use super::{ClaimMode, Construction, FieldFacts, MaterialClaim, Status};
use crate::cyclotomy::classes;
use crate::diffsets::{
    check_family, check_pds, check_skew_pds, indicator, internal_differences, validate_family, Certificate, Kind, Mode,
    Params,
};
use crate::field::{Elem, Field};
use crate::{Error, Result};

/// Every `gamma` in `C_2^4` such that one of `1 - gamma`, `1 + gamma` lies
/// in `C_0^4` and the other in `C_2^4`, ascending by code. Needs
/// `q = 1 mod 8`.
pub fn admissible_gammas(field: &Field) -> Result<Vec<Elem>> {
    let q = field.order() as u64;
    if q % 8 != 1 {
        return Err(Error::NotOneMod8(q));
    }
    let part = classes(field, 4)?;
    let mut out = Vec::new();
    for &g in part.class(2) {
        let minus = part.index_of(field.sub(Elem(1), g))?;
        let plus = part.index_of(field.add(Elem(1), g))?;
        if matches!((minus, plus), (0, 2) | (2, 0)) {
            out.push(g);
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// Frequencies of `Delta(d)` on `a* = a \ {0}` and on `G* \ a`.
fn split_profile(field: &Field, index: usize, d: &[Elem], a: &[Elem]) -> Result<(u64, u64)> {
    let delta = internal_differences(field, d)?;
    let ind = indicator(field, a);
    let (mut on, mut off) = (None, None);
    for g in 1..field.order() as usize {
        let slot = if ind[g] { &mut on } else { &mut off };
        match *slot {
            None => *slot = Some(delta.counts[g]),
            Some(v) if v != delta.counts[g] => return Err(Error::ProfileNotTwoValued(index)),
            _ => {}
        }
    }
    match (on, off) {
        (Some(l), Some(m)) => Ok((l, m)),
        _ => Err(Error::ProfileNotTwoValued(index)),
    }
}

/// Combines sets `D_i` whose difference profiles split along disjoint
/// `A_i` with a common gap `delta = lambda_i - mu_i` into one relative
/// DPDF over `union A_i`, with frequencies `delta + sum mu_i` and `sum mu_i`.
///
/// The prediction is certified before returning.
pub fn swap_combinator(field: &Field, pairs: &[(Vec<Elem>, Vec<Elem>)]) -> Result<Construction> {
    let family: Vec<Vec<Elem>> = pairs.iter().map(|(d, _)| d.clone()).collect();
    validate_family(field, &family)?;
    let mut seen = alloc::vec![false; field.order() as usize];
    for (_, a) in pairs {
        for &x in a.iter().filter(|x| !x.is_zero()) {
            if core::mem::replace(&mut seen[field.check(x)?.0 as usize], true) {
                return Err(Error::NotDisjoint(x.0));
            }
        }
    }
    let mut delta = None;
    let mut mu_sum = 0u64;
    for (i, (d, a)) in pairs.iter().enumerate() {
        let (l, m) = split_profile(field, i, d, a)?;
        let gap = l as i64 - m as i64;
        if *delta.get_or_insert(gap) != gap {
            return Err(Error::DeltaNotConstant);
        }
        mu_sum += m;
    }
    let delta = delta.ok_or(Error::NotApplicable("empty family"))?;
    let lambda = (delta + mu_sum as i64) as u64;
    let mut reference: Vec<u32> =
        pairs.iter().flat_map(|(_, a)| a.iter().filter(|x| !x.is_zero()).map(|x| x.0)).collect();
    reference.sort_unstable();
    let ks: Vec<u64> = family.iter().map(|d| d.len() as u64).collect();
    let v = field.order() as u64;
    let (kind, expected) = if delta == 0 {
        (Kind::Ddf, Params::family(v, ks, lambda, None))
    } else {
        (Kind::RelativeDpdf, Params::family(v, ks, lambda, Some(mu_sum)))
    };
    let t: Vec<Elem> = reference.iter().map(|&c| Elem(c)).collect();
    let cert = check_family(field, &family, Mode::Internal, (delta != 0).then_some(&t[..]))?;
    let status = if cert.kind == kind && cert.params == expected {
        Status::Verified
    } else {
        Status::Mismatch { detail: alloc::format!("oracle {} {}", cert.kind, cert.params) }
    };
    if let Status::Mismatch { detail } = &status {
        return Err(Error::PredictionMismatch {
            recipe: "swap",
            claim: "internal".to_string(),
            detail: detail.clone(),
        });
    }
    Ok(Construction {
        recipe: "swap".to_string(),
        field: field.spec().clone(),
        facts: FieldFacts::arithmetic(v)?,
        claims: alloc::vec![MaterialClaim {
            label: "internal".to_string(),
            mode: ClaimMode::Internal,
            sets: cert.sets.clone(),
            reference: (delta != 0).then_some(reference),
            expected_kind: kind,
            expected,
            suspect: None,
            certificate: Some(cert),
            status: Some(status),
        }],
    })
}

/// If `family` has internal and external differences that are both
/// constant or two-valued relative to the PDS `t` (and not both constant),
/// its union is a skew PDS; returns the union's certificate.
pub fn skew_from_families(field: &Field, family: &[Vec<Elem>], t: &[Elem]) -> Result<Certificate> {
    validate_family(field, family)?;
    let pds = check_pds(field, t)?;
    if pds.kind != Kind::Pds {
        return Err(Error::HypothesisNotMet("reference set is not a PDS"));
    }
    let union: Vec<Elem> = family.iter().flatten().copied().collect();
    if union.len() != t.len() {
        return Err(Error::HypothesisNotMet("family size differs from the PDS size"));
    }
    let int = check_family(field, family, Mode::Internal, Some(t))?.kind;
    let ext = check_family(field, family, Mode::External, Some(t))?.kind;
    let ok = matches!(
        (int, ext),
        (Kind::RelativeDpdf, Kind::RelativeEpdf) | (Kind::RelativeDpdf, Kind::Edf) | (Kind::Ddf, Kind::RelativeEpdf)
    );
    if !ok {
        return Err(Error::HypothesisNotMet("family is not a DPDF/EPDF pair relative to the PDS"));
    }
    let cert = check_skew_pds(field, &union)?;
    if !matches!(cert.kind, Kind::SkewPds | Kind::TrivialSkewPds) {
        return Err(Error::PredictionMismatch {
            recipe: "skew-from-families",
            claim: "union".to_string(),
            detail: alloc::format!("oracle {}", cert.kind),
        });
    }
    Ok(cert)
}
