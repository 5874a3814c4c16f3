//! Range scans and the JSON-lines catalog they produce.

use std::io::{BufRead, Write};
use std::ops::RangeInclusive;
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::{ensure, Context};
use cycloskew_core::constructions::{
    certify, materialize, registry, Applicability, Construction, FieldFacts, Plan, Recipe, Status,
};
use cycloskew_core::diffsets::recheck;
use cycloskew_core::field::MAX_ORDER;
use cycloskew_core::Field;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::engine::Parallel;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// One `(q, recipe)` hit of a scan.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub q: u64,
    pub recipe: String,
    /// Primitive element used to decide the hypotheses, if a field was built.
    pub generator: Option<u32>,
    pub facts: FieldFacts,
    /// Symbolic claims with predicted parameters; absent when the
    /// hypotheses depend on a primitive element that was not built.
    pub plan: Option<Plan>,
    /// Materialized and certified claims, for `q` within the certify cap.
    pub construction: Option<Construction>,
    pub oracle_verified: bool,
    pub tool_version: String,
    /// Seconds since the Unix epoch; not part of the determinism contract.
    pub timestamp: u64,
}

impl CatalogEntry {
    pub fn has_mismatch(&self) -> bool {
        self.construction.as_ref().is_some_and(|c| c.mismatches().next().is_some())
    }
}

#[derive(Debug, Clone)]
pub struct ScanOptions {
    pub range: RangeInclusive<u64>,
    pub recipes: Vec<&'static Recipe>,
    /// Certify entries with `q` up to this bound.
    pub certify_cap: u64,
    /// Build fields (and decide generator-dependent hypotheses) up to this bound.
    pub field_cap: u64,
}

impl ScanOptions {
    pub fn new(range: RangeInclusive<u64>, recipes: Vec<&'static Recipe>) -> Self {
        ScanOptions { range, recipes, certify_cap: 5000, field_cap: 100_000 }
    }
}

/// Every applicable `(q, recipe)` in the range, ordered by `q` and then by
/// registry position. Work is spread over the global rayon pool by `q`.
pub fn scan(opts: &ScanOptions) -> anyhow::Result<Vec<CatalogEntry>> {
    ensure!(*opts.range.end() <= MAX_ORDER, "q_max must be at most 2^31");
    let position = |r: &Recipe| registry().iter().position(|x| x.id == r.id).expect("registered");
    let mut recipes = opts.recipes.clone();
    recipes.sort_by_key(|r| position(r));
    recipes.dedup_by_key(|r| r.id);

    let (lo, hi) = (*opts.range.start(), *opts.range.end());
    let mut hits: Vec<(u64, usize)> = Vec::new();
    if lo <= hi {
        for (i, r) in recipes.iter().enumerate() {
            hits.extend(r.candidates(lo..hi + 1).into_iter().map(|q| (q, i)));
        }
    }
    hits.sort_unstable();
    hits.dedup();
    let groups: Vec<&[(u64, usize)]> = hits.chunk_by(|a, b| a.0 == b.0).collect();
    let timestamp = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);

    let per_q = groups
        .par_iter()
        .map(|group| scan_one(group, &recipes, opts, timestamp))
        .collect::<anyhow::Result<Vec<_>>>()?;
    Ok(per_q.into_iter().flatten().collect())
}

fn scan_one(
    group: &[(u64, usize)],
    recipes: &[&Recipe],
    opts: &ScanOptions,
    timestamp: u64,
) -> anyhow::Result<Vec<CatalogEntry>> {
    let q = group[0].0;
    let field = if q <= opts.field_cap { Some(Field::with_order(q, None)?) } else { None };
    let facts = match &field {
        Some(f) => FieldFacts::from_field(f)?,
        None => FieldFacts::arithmetic(q)?,
    };
    let mut out = Vec::new();
    for &(_, i) in group {
        let recipe = recipes[i];
        let plan = match recipe.plan(&facts, field.as_ref())? {
            Applicability::NotApplicable => continue,
            Applicability::Undetermined(_) => None,
            Applicability::Applicable(p) => Some(p),
        };
        let mut construction = None;
        if let (Some(f), Some(p)) = (&field, &plan) {
            if q <= opts.certify_cap {
                let mut c = materialize(f, &facts, p)?;
                certify(f, &mut c, &Parallel)?;
                construction = Some(c);
            }
        }
        let oracle_verified = construction.as_ref().is_some_and(|c| c.is_verified());
        out.push(CatalogEntry {
            q,
            recipe: recipe.id.to_string(),
            generator: field.as_ref().map(|f| f.generator().code()),
            facts: facts.clone(),
            plan,
            construction,
            oracle_verified,
            tool_version: TOOL_VERSION.to_string(),
            timestamp,
        });
    }
    Ok(out)
}

/// Writes one JSON object per line, LF-terminated.
pub fn write_catalog<W: Write>(mut out: W, entries: &[CatalogEntry]) -> anyhow::Result<()> {
    for e in entries {
        serde_json::to_writer(&mut out, e)?;
        out.write_all(b"\n")?;
    }
    out.flush()?;
    Ok(())
}

pub fn read_catalog<R: BufRead>(input: R) -> anyhow::Result<Vec<CatalogEntry>> {
    let mut entries = Vec::new();
    for (n, line) in input.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        entries.push(serde_json::from_str(&line).with_context(|| format!("catalog line {}", n + 1))?);
    }
    Ok(entries)
}

/// The catalog text with every timestamp blanked: equal for equal scans.
pub fn determinism_text(entries: &[CatalogEntry]) -> anyhow::Result<String> {
    let blank: Vec<CatalogEntry> = entries.iter().map(|e| CatalogEntry { timestamp: 0, ..e.clone() }).collect();
    let mut buf = Vec::new();
    write_catalog(&mut buf, &blank)?;
    Ok(String::from_utf8(buf)?)
}

/// Re-verifies an entry marked `oracle_verified`: every stored certificate
/// must be reproduced bit for bit from its own sets, in the field it names.
/// Entries not marked verified pass trivially.
pub fn spot_check(entry: &CatalogEntry) -> anyhow::Result<bool> {
    if !entry.oracle_verified {
        return Ok(true);
    }
    let Some(c) = &entry.construction else { return Ok(false) };
    let field = Field::from_spec(&c.field)?;
    for claim in &c.claims {
        let Some(cert) = &claim.certificate else { return Ok(false) };
        let status_ok = matches!(claim.status, Some(Status::Verified | Status::VerifiedSuspect));
        if !status_ok || sorted(&cert.sets) != sorted(&claim.sets) || !recheck(&field, cert)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn sorted(sets: &[Vec<u32>]) -> Vec<Vec<u32>> {
    sets.iter()
        .map(|s| {
            let mut s = s.clone();
            s.sort_unstable();
            s
        })
        .collect()
}
