//! Regeneration of the two published tables of skew Paley PDSs.
//!
//! Rows are recomputed from the recipe registry, optionally certified with
//! the oracle, and compared with the published values kept below.

use std::fmt;

use anyhow::{bail, ensure};
use cycloskew_core::constructions::{
    certify, enumerate_applicable, lookup, materialize, Applicable, Construction, DeltaEngine, FieldFacts, Plan,
};
use cycloskew_core::diffsets::{Certificate, Params};
use cycloskew_core::numtheory::isqrt;
use cycloskew_core::Field;

/// Largest bound accepted by [`table_rows`].
pub const MAX_BOUND: u64 = 100_000_000;

/// Published rows: `q`, representation, skew PDS parameters.
const TABLE_1: &[(u64, &str, &str)] = &[
    (13, "(-3)²+(±2)²", "(13,6,2,3)"),
    (29, "5²+(±2)²", "(29,14,6,7)"),
    (53, "(-7)²+(±2)²", "(53,26,12,13)"),
    (125, "(-11)²+(±2)²", "(125,62,30,31)"),
    (173, "13²+(±2)²", "(173,86,42,43)"),
    (229, "(-15)²+(±2)²", "(229,114,56,57)"),
    (293, "17²+(±2)²", "(293,146,72,73)"),
    (733, "(-27)²+(±2)²", "(733,366,182,183)"),
    (1093, "33²+(±2)²", "(1093,546,272,273)"),
    (1229, "(-35)²+(±2)²", "(1229,614,306,307)"),
    (1373, "37²+(±2)²", "(1373,686,342,343)"),
    (2029, "45²+(±2)²", "(2029,1014,506,507)"),
    (2213, "(-47)²+(±2)²", "(2213,1106,552,553)"),
    (3253, "57²+(±2)²", "(3253,1626,812,813)"),
    (4229, "65²+(±2)²", "(4229,2114,1056,1057)"),
    (4493, "(-67)²+(±2)²", "(4493,2246,1122,1123)"),
    (5333, "73²+(±2)²", "(5333,2666,1332,1333)"),
    (7229, "85²+(±2)²", "(7229,3614,1806,1807)"),
    (7573, "(-87)²+(±2)²", "(7573,3786,1892,1893)"),
    (9029, "(-95)²+(±2)²", "(9029,4514,2256,2257)"),
    (9413, "97²+(±2)²", "(9413,4706,2352,2353)"),
];

const TABLE_2: &[(u64, &str, &str)] = &[
    (9, "3=1²+2", "(9,4,1,2)"),
    (121, "11=3²+2", "(121,60,29,30)"),
    (729, "27=5²+2", "(729,364,181,182)"),
    (6889, "83=9²+2", "(6889,3444,1721,1722)"),
    (51529, "227=15²+2", "(51529,25764,12881,12882)"),
    (196249, "443=21²+2", "(196249,98124,49061,49062)"),
    (1190281, "1091=33²+2", "(1190281,595140,297569,297570)"),
    (2319529, "1523=39²+2", "(2319529,1159764,579881,579882)"),
    (4108729, "2027=45²+2", "(4108729,2054364,1027181,1027182)"),
    (10569001, "3251=57²+2", "(10569001,5284500,2642249,2642250)"),
    (43072969, "6563=81²+2", "(43072969,21536484,10768241,10768242)"),
    (96098809, "9803=99²+2", "(96098809,48049404,24024701,24024702)"),
];

/// Which table, with the recipes that generate it and the range the
/// published version covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableId {
    /// `C_0^4 ∪ C_3^4` and `C_0^4 ∪ C_1^4` for `t = ±2`, `q < 10^4`.
    One,
    /// `C_{0,1,2,5}^8` over `GF(l^2)`, `l = d^2 + 2`, `q < 10^8`.
    Two,
}

impl TableId {
    pub fn from_number(n: u8) -> anyhow::Result<TableId> {
        match n {
            1 => Ok(TableId::One),
            2 => Ok(TableId::Two),
            _ => bail!("unknown table {n} (expected 1 or 2)"),
        }
    }

    fn recipes(self) -> &'static [&'static str] {
        match self {
            TableId::One => &["R1", "R2"],
            TableId::Two => &["R10"],
        }
    }

    fn published(self) -> (&'static [(u64, &'static str, &'static str)], u64) {
        match self {
            TableId::One => (TABLE_1, 10_000),
            TableId::Two => (TABLE_2, MAX_BOUND),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verification {
    OracleVerified,
    NotOracleVerified,
    /// The oracle disagreed with at least one claim.
    Failed,
}

impl fmt::Display for Verification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verification::OracleVerified => "oracle-verified",
            Verification::NotOracleVerified => "not-oracle-verified",
            Verification::Failed => "oracle-mismatch",
        })
    }
}

#[derive(Debug, Clone)]
pub struct TableRow {
    pub q: u64,
    pub representation: String,
    pub params: Params,
    pub verification: Verification,
    /// One construction per generating recipe, when certified.
    pub constructions: Vec<Construction>,
}

impl TableRow {
    /// Certificates of every skew claim in the row.
    pub fn certificates(&self) -> impl Iterator<Item = &Certificate> {
        self.constructions.iter().flat_map(|c| c.claims.iter()).filter_map(|c| c.certificate.as_ref())
    }
}

impl fmt::Display for TableRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}\t{}\t{}\t{}", self.q, self.representation, self.params, self.verification)
    }
}

/// Paley parameters `(q,(q-1)/2,(q-5)/4,(q-1)/4)`.
fn paley(q: u64) -> Params {
    Params::set(q, (q - 1) / 2, (q - 5) / 4, (q - 1) / 4)
}

fn representation(id: TableId, facts: &FieldFacts) -> anyhow::Result<String> {
    match id {
        TableId::One => {
            let (Some(s), Some(t)) = (facts.s, facts.t_abs) else {
                bail!("q = {} has no s^2 + t^2 representation", facts.q);
            };
            let s = if s < 0 { format!("({s})") } else { s.to_string() };
            Ok(format!("{s}²+(±{t})²"))
        }
        TableId::Two => {
            let l = isqrt(facts.q);
            let d = isqrt(l - 2);
            ensure!(l * l == facts.q && d * d + 2 == l, "q = {} is not (d^2+2)^2", facts.q);
            Ok(format!("{l}={d}²+2"))
        }
    }
}

/// Recomputes a table for `q <= bound`, certifying rows with `q <= certify_cap`.
pub fn table_rows(
    id: TableId,
    bound: u64,
    certify_cap: u64,
    engine: &dyn DeltaEngine,
) -> anyhow::Result<Vec<TableRow>> {
    ensure!(bound <= MAX_BOUND, "bound {bound} too large (at most {MAX_BOUND})");
    let recipes: Vec<_> = id.recipes().iter().map(|r| lookup(r).expect("registered")).collect();
    let hits = enumerate_applicable(2..bound + 1, &recipes, certify_cap)?;
    let mut rows: Vec<TableRow> = Vec::new();
    for group in hits.chunk_by(|a, b| a.q == b.q) {
        rows.push(build_row(id, group, certify_cap, engine)?);
    }
    Ok(rows)
}

fn build_row(
    id: TableId,
    group: &[Applicable],
    certify_cap: u64,
    engine: &dyn DeltaEngine,
) -> anyhow::Result<TableRow> {
    let q = group[0].q;
    let facts = &group[0].facts;
    let plans: Vec<&Plan> = group.iter().filter_map(|h| h.plan.as_ref()).collect();
    let params = match plans.first() {
        Some(plan) => plan.claims[0].expected.clone(),
        None => paley(q),
    };
    let mut row = TableRow {
        q,
        representation: representation(id, facts)?,
        params,
        verification: Verification::NotOracleVerified,
        constructions: Vec::new(),
    };
    if q > certify_cap || plans.len() != group.len() {
        return Ok(row);
    }
    let field = Field::with_order(q, None)?;
    let facts = FieldFacts::from_field(&field)?;
    let mut ok = true;
    for plan in plans {
        let mut c = materialize(&field, &facts, plan)?;
        certify(&field, &mut c, engine)?;
        ok &= c.is_verified() && c.claims.iter().all(|cl| cl.expected == row.params);
        row.constructions.push(c);
    }
    row.verification = if ok { Verification::OracleVerified } else { Verification::Failed };
    Ok(row)
}

/// Differences between `rows` and the published table, restricted to
/// `q <= bound` and to the range the publication covers.
pub fn compare_with_published(id: TableId, rows: &[TableRow], bound: u64) -> Vec<String> {
    let (published, limit) = id.published();
    let cut = bound.min(limit);
    let expected: Vec<String> =
        published.iter().filter(|r| r.0 <= cut).map(|(q, rep, p)| format!("{q} {rep} {p}")).collect();
    let actual: Vec<String> =
        rows.iter().filter(|r| r.q <= cut).map(|r| format!("{} {} {}", r.q, r.representation, r.params)).collect();
    let mut problems = Vec::new();
    for e in expected.iter().filter(|e| !actual.contains(e)) {
        problems.push(format!("missing row {e}"));
    }
    for a in actual.iter().filter(|a| !expected.contains(a)) {
        problems.push(format!("unexpected row {a}"));
    }
    problems
}
