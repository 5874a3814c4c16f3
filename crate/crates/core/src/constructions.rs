//! Recipes that build skew PDSs and (relative) partial difference families
//! from unions of cyclotomic classes, with predicted parameters that are
//! checked against the difference-counting oracle.
//!
//! A recipe is applied in three steps:
//!
//! 1. [`Recipe::plan`] decides applicability from [`FieldFacts`] and emits
//!    symbolic [`Claim`]s (class indices plus predicted parameters);
//! 2. [`materialize`] turns the claims into element sets of a concrete field;
//! 3. [`certify`] classifies every claim with the oracle and records a
//!    [`Status`].
//!
//! Hypotheses that involve the sign of `t`, `y` or `b`, or the class of some
//! element, depend on the primitive element. [`FieldFacts::arithmetic`]
//! leaves those unknown and such recipes plan to [`Applicability::Undetermined`].

mod combinators;
mod recipes;

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::ops::Range;

pub use combinators::{admissible_gammas, skew_from_families, swap_combinator};
pub use recipes::{lookup, registry};

use crate::cyclotomy::{classes, cyclotomic_numbers_order8};
use crate::diffsets::{
    check_family, classify_skew_pds, internal_differences, Certificate, DiffMultiset, Kind, Mode, Params,
};
use crate::field::{Elem, Field, FieldSpec};
use crate::numtheory::{
    a2_2b2_rep, is_prime_power, prime_power_decompose, two_is_quartic_residue, two_squares_rep, two_squares_unsigned,
    x2_4y2_rep, QuadRepAB, QuadRepXY,
};
use crate::{Error, Result};

/// Everything the recipe hypotheses look at.
///
/// Generator-dependent entries are `None` unless built with
/// [`FieldFacts::from_field`].
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FieldFacts {
    pub q: u64,
    pub p: u64,
    pub m: u32,
    /// `s` and `|t|` of `q = s^2 + t^2` (`q = 1 mod 4`).
    pub s: Option<i64>,
    pub t_abs: Option<i64>,
    /// `q = x^2 + 4y^2` with `y >= 0` (`q = 1 mod 4`).
    pub xy: Option<QuadRepXY>,
    /// `q = a^2 + 2b^2` with `b >= 0`, when it exists.
    pub ab: Option<QuadRepAB>,
    pub two_quartic: Option<bool>,
    /// Signed `t` for the field's primitive element.
    pub t: Option<i64>,
    /// Signs of `y` and `b` calibrated against the order-8 table (`q = 1 mod 8`).
    pub y: Option<i64>,
    pub b: Option<i64>,
    /// Index of the order-4 class containing 2 (`q = 1 mod 4`, `p` odd).
    pub two_class4: Option<u32>,
}

impl FieldFacts {
    /// Facts decidable from `q` alone.
    pub fn arithmetic(q: u64) -> Result<FieldFacts> {
        let (p, m) = prime_power_decompose(q)?;
        let mut facts = FieldFacts {
            q,
            p,
            m,
            s: None,
            t_abs: None,
            xy: None,
            ab: None,
            two_quartic: None,
            t: None,
            y: None,
            b: None,
            two_class4: None,
        };
        if q % 4 == 1 {
            let (s, t) = two_squares_unsigned(q)?;
            facts.s = Some(s);
            facts.t_abs = Some(t);
            facts.xy = Some(x2_4y2_rep(q, p, m)?);
            facts.two_quartic = Some(two_is_quartic_residue(q)?);
        }
        if p != 2 {
            facts.ab = a2_2b2_rep(q, p, m).ok();
        }
        Ok(facts)
    }

    /// All facts, including the generator-dependent signs and classes.
    pub fn from_field(field: &Field) -> Result<FieldFacts> {
        let q = field.order() as u64;
        let mut facts = FieldFacts::arithmetic(q)?;
        if q % 4 == 1 {
            facts.t = Some(two_squares_rep(field)?.t);
            facts.two_class4 = Some(field.discrete_log(field.from_int(2))? % 4);
        }
        if q % 8 == 1 {
            let table = cyclotomic_numbers_order8(field)?;
            facts.y = table.resolved_y;
            facts.b = table.resolved_b;
        }
        Ok(facts)
    }

    pub fn x(&self) -> Option<i64> {
        self.xy.map(|r| r.x)
    }

    pub fn a(&self) -> Option<i64> {
        self.ab.map(|r| r.a)
    }
}

/// A union of cyclotomic classes of order `e`, optionally with `0`.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ClassSet {
    pub e: u32,
    pub classes: Vec<i64>,
    pub zero: bool,
}

impl ClassSet {
    pub fn new(e: u32, classes: &[i64]) -> Self {
        ClassSet { e, classes: classes.to_vec(), zero: false }
    }

    pub fn with_zero(mut self) -> Self {
        self.zero = true;
        self
    }

    pub fn elements(&self, field: &Field) -> Result<Vec<Elem>> {
        let mut out = classes(field, self.e)?.union(&self.classes);
        if self.zero {
            out.insert(0, Elem::ZERO);
        }
        Ok(out)
    }
}

impl core::fmt::Display for ClassSet {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        for (i, c) in self.classes.iter().enumerate() {
            if i > 0 {
                f.write_str("∪")?;
            }
            write!(f, "C{}^{}", c.rem_euclid(self.e as i64), self.e)?;
        }
        if self.zero {
            f.write_str("∪{0}")?;
        }
        Ok(())
    }
}

/// Index set of a multiplier family `{ g*i : g in multipliers }`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum OrbitBase {
    /// `i` ranges over `C_0^4`.
    QuarticResidues,
    /// `i` ranges over `C_0^4` modulo sign, keeping the smaller code.
    QuarticResiduesModSign,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Subject {
    Set(ClassSet),
    Family(Vec<ClassSet>),
    Orbits { base: OrbitBase, multipliers: Vec<Elem> },
}

/// What a claim asserts about its subject.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum ClaimMode {
    /// A skew PDS whose PDS is the reference set.
    Skew,
    Internal,
    External,
}

/// Marks a prediction whose printed form could not be taken literally.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Suspect {
    /// The form as printed.
    pub printed: String,
    /// Why the encoded prediction differs.
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Claim {
    pub label: String,
    pub subject: Subject,
    pub mode: ClaimMode,
    /// The PDS of a skew claim, or `T` of a relative family.
    pub reference: Option<ClassSet>,
    pub expected_kind: Kind,
    pub expected: Params,
    pub suspect: Option<Suspect>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Plan {
    pub recipe: String,
    pub q: u64,
    pub claims: Vec<Claim>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Applicability {
    NotApplicable,
    /// The hypotheses depend on data not available from `q` alone.
    Undetermined(&'static str),
    Applicable(Plan),
}

impl Applicability {
    pub fn plan(self) -> Option<Plan> {
        match self {
            Applicability::Applicable(p) => Some(p),
            _ => None,
        }
    }
}

type PlanFn = fn(&FieldFacts, Option<&Field>) -> Result<Applicability>;
type CandidateFn = fn(Range<u64>) -> Vec<u64>;

/// A registered construction.
pub struct Recipe {
    pub id: &'static str,
    pub title: &'static str,
    pub conditions: &'static str,
    pub formulas: &'static [&'static str],
    /// Whether hypotheses need the primitive element.
    pub needs_field: bool,
    plan: PlanFn,
    /// Sparse generator of the prime powers the recipe can apply to.
    candidates: Option<CandidateFn>,
}

impl core::fmt::Debug for Recipe {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("Recipe").field("id", &self.id).field("title", &self.title).finish()
    }
}

impl Recipe {
    /// Applicability and predicted claims. Without a field, recipes whose
    /// hypotheses involve the primitive element report `Undetermined`.
    pub fn plan(&self, facts: &FieldFacts, field: Option<&Field>) -> Result<Applicability> {
        if let Some(f) = field {
            debug_assert_eq!(f.order() as u64, facts.q);
        }
        (self.plan)(facts, field)
    }

    /// Prime powers in `range` worth testing, ascending.
    pub fn candidates(&self, range: Range<u64>) -> Vec<u64> {
        match self.candidates {
            Some(gen) => gen(range),
            None => range.filter(|&q| is_prime_power(q)).collect(),
        }
    }
}

/// Verification outcome of one claim.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "status", rename_all = "snake_case"))]
pub enum Status {
    Verified,
    /// The oracle agrees with the encoded prediction, which differs from
    /// the printed one.
    VerifiedSuspect,
    Mismatch {
        detail: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct MaterialClaim {
    pub label: String,
    pub mode: ClaimMode,
    pub sets: Vec<Vec<u32>>,
    pub reference: Option<Vec<u32>>,
    pub expected_kind: Kind,
    pub expected: Params,
    pub suspect: Option<Suspect>,
    pub certificate: Option<Certificate>,
    pub status: Option<Status>,
}

impl MaterialClaim {
    fn family(&self) -> Vec<Vec<Elem>> {
        self.sets.iter().map(|s| s.iter().map(|&c| Elem(c)).collect()).collect()
    }
}

/// A recipe instantiated in a concrete field.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Construction {
    pub recipe: String,
    pub field: FieldSpec,
    pub facts: FieldFacts,
    pub claims: Vec<MaterialClaim>,
}

impl Construction {
    pub fn is_verified(&self) -> bool {
        self.claims.iter().all(|c| matches!(c.status, Some(Status::Verified) | Some(Status::VerifiedSuspect)))
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &MaterialClaim> {
        self.claims.iter().filter(|c| matches!(c.status, Some(Status::Mismatch { .. })))
    }
}

fn sorted_codes(set: &[Elem]) -> Vec<u32> {
    let mut v: Vec<u32> = set.iter().map(|e| e.0).collect();
    v.sort_unstable();
    v
}

/// The family `{ {g*i : g in multipliers} : i in base }`, with `i`
/// ascending by code.
pub fn multiplier_family(field: &Field, base: OrbitBase, multipliers: &[Elem]) -> Result<Vec<Vec<Elem>>> {
    let part = classes(field, 4)?;
    let mut idx: Vec<Elem> = part.class(0).to_vec();
    idx.sort_unstable();
    if base == OrbitBase::QuarticResiduesModSign {
        idx.retain(|&i| i.0 < field.neg(i).0);
    }
    Ok(idx.iter().map(|&i| multipliers.iter().map(|&g| field.mul(g, i)).collect()).collect())
}

/// Element sets for every claim of `plan`.
pub fn materialize(field: &Field, facts: &FieldFacts, plan: &Plan) -> Result<Construction> {
    if field.order() as u64 != plan.q {
        return Err(Error::NotApplicable("plan was made for another field order"));
    }
    let mut claims = Vec::with_capacity(plan.claims.len());
    for c in &plan.claims {
        let family = match &c.subject {
            Subject::Set(s) => alloc::vec![s.elements(field)?],
            Subject::Family(sets) => sets.iter().map(|s| s.elements(field)).collect::<Result<Vec<_>>>()?,
            Subject::Orbits { base, multipliers } => multiplier_family(field, *base, multipliers)?,
        };
        let reference = match &c.reference {
            Some(r) => Some(sorted_codes(&r.elements(field)?)),
            None => None,
        };
        claims.push(MaterialClaim {
            label: c.label.clone(),
            mode: c.mode,
            sets: family.iter().map(|s| s.iter().map(|e| e.0).collect()).collect(),
            reference,
            expected_kind: c.expected_kind,
            expected: c.expected.clone(),
            suspect: c.suspect.clone(),
            certificate: None,
            status: None,
        });
    }
    Ok(Construction { recipe: plan.recipe.clone(), field: field.spec().clone(), facts: facts.clone(), claims })
}

/// Computes `Delta(D)` for skew checks; lets callers parallelize the
/// dominant cost.
pub trait DeltaEngine {
    fn delta(&self, field: &Field, set: &[Elem]) -> DiffMultiset;
}

/// Single-threaded [`DeltaEngine`].
#[derive(Debug, Clone, Copy, Default)]
pub struct Serial;

impl DeltaEngine for Serial {
    fn delta(&self, field: &Field, set: &[Elem]) -> DiffMultiset {
        internal_differences(field, set).expect("materialized sets are duplicate-free")
    }
}

/// Runs the oracle on one claim.
pub fn certify_claim(field: &Field, claim: &MaterialClaim, engine: &dyn DeltaEngine) -> Result<Certificate> {
    let family = claim.family();
    match claim.mode {
        ClaimMode::Skew => {
            let d = &family[0];
            let delta = engine.delta(field, d);
            Ok(classify_skew_pds(field, d, &delta, |s| engine.delta(field, s)))
        }
        ClaimMode::Internal | ClaimMode::External => {
            let mode = if claim.mode == ClaimMode::Internal { Mode::Internal } else { Mode::External };
            let reference: Option<Vec<Elem>> = match claim.expected_kind {
                Kind::RelativeDpdf | Kind::RelativeEpdf => {
                    claim.reference.as_ref().map(|r| r.iter().map(|&c| Elem(c)).collect())
                }
                _ => None,
            };
            check_family(field, &family, mode, reference.as_deref())
        }
    }
}

fn judge(claim: &MaterialClaim, cert: &Certificate) -> Status {
    let mut problems = Vec::new();
    // A translate of the PDS still satisfies the skew-PDS definition.
    let kind_ok =
        cert.kind == claim.expected_kind || (claim.expected_kind == Kind::SkewPds && cert.kind == Kind::TrivialSkewPds);
    if !kind_ok {
        problems.push(format!("kind {} (expected {})", cert.kind, claim.expected_kind));
    }
    if cert.params != claim.expected {
        problems.push(format!("params {} (expected {})", cert.params, claim.expected));
    }
    if claim.mode == ClaimMode::Skew {
        if let Some(r) = &claim.reference {
            if &cert.reference_set != r {
                problems.push("PDS differs from the predicted class union".to_string());
            }
        }
    }
    if problems.is_empty() {
        if claim.suspect.is_some() {
            Status::VerifiedSuspect
        } else {
            Status::Verified
        }
    } else {
        Status::Mismatch { detail: problems.join("; ") }
    }
}

/// Certifies every claim in place.
pub fn certify(field: &Field, construction: &mut Construction, engine: &dyn DeltaEngine) -> Result<()> {
    for claim in &mut construction.claims {
        let cert = certify_claim(field, claim, engine)?;
        claim.status = Some(judge(claim, &cert));
        claim.certificate = Some(cert);
    }
    Ok(())
}

/// Plans, materializes and certifies `recipe` in `field`.
///
/// Returns `Ok(None)` when the recipe does not apply; a claim that the
/// oracle contradicts is an error.
pub fn apply(recipe: &Recipe, field: &Field) -> Result<Option<Construction>> {
    let facts = FieldFacts::from_field(field)?;
    let Some(plan) = recipe.plan(&facts, Some(field))?.plan() else {
        return Ok(None);
    };
    let mut c = materialize(field, &facts, &plan)?;
    certify(field, &mut c, &Serial)?;
    if let Some(bad) = c.mismatches().next() {
        let detail = match &bad.status {
            Some(Status::Mismatch { detail }) => detail.clone(),
            _ => String::new(),
        };
        return Err(Error::PredictionMismatch { recipe: recipe.id, claim: bad.label.clone(), detail });
    }
    Ok(Some(c))
}

/// One planned application found by [`enumerate_applicable`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Applicable {
    pub q: u64,
    pub recipe: &'static str,
    /// Primitive element used to decide the hypotheses, if a field was built.
    pub generator: Option<u32>,
    pub facts: FieldFacts,
    /// `None` when the hypotheses could not be decided.
    pub plan: Option<Plan>,
}

/// All `(q, recipe)` with `q` in `range` whose hypotheses hold, ordered by
/// `q` and then by the order of `recipes`.
///
/// For `q <= field_cap` the field with its default primitive element is
/// built and every hypothesis is decided; above the cap only arithmetic
/// facts are used and generator-dependent recipes are listed with
/// `plan: None`.
pub fn enumerate_applicable(range: Range<u64>, recipes: &[&Recipe], field_cap: u64) -> Result<Vec<Applicable>> {
    let mut hits: Vec<(u64, usize)> = Vec::new();
    for (i, r) in recipes.iter().enumerate() {
        hits.extend(r.candidates(range.clone()).into_iter().map(|q| (q, i)));
    }
    hits.sort_unstable();
    hits.dedup();
    let mut out = Vec::new();
    let mut cached: Option<(FieldFacts, Option<Field>)> = None;
    for (q, i) in hits {
        if cached.as_ref().map(|c| c.0.q) != Some(q) {
            cached = Some(if q <= field_cap {
                let field = Field::with_order(q, None)?;
                (FieldFacts::from_field(&field)?, Some(field))
            } else {
                (FieldFacts::arithmetic(q)?, None)
            });
        }
        let (facts, field) = cached.as_ref().expect("just set");
        let plan = match recipes[i].plan(facts, field.as_ref())? {
            Applicability::NotApplicable => continue,
            Applicability::Undetermined(_) => None,
            Applicability::Applicable(p) => Some(p),
        };
        out.push(Applicable {
            q,
            recipe: recipes[i].id,
            generator: field.as_ref().map(|f| f.generator().0),
            facts: facts.clone(),
            plan,
        });
    }
    Ok(out)
}
