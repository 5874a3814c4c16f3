//! End-to-end acceptance checks. Each test prints one `PASS`/`FAIL` line.
//!
//! Expensive shared results (tables, the recipe sweep) are computed once and
//! reused by the complement-law check.

use std::collections::BTreeMap;
use std::io::{BufReader, Write};
use std::sync::LazyLock;

use cycloskew::catalog::{determinism_text, read_catalog, scan, spot_check, write_catalog, CatalogEntry, ScanOptions};
use cycloskew::tables::{compare_with_published, table_rows, TableId, TableRow, Verification};
use cycloskew::Parallel;
use cycloskew_core::constructions::{apply, registry, ClaimMode, Construction, DeltaEngine, MaterialClaim, Status};
use cycloskew_core::cyclotomy::{classes, cyclotomic_numbers_closed_form, cyclotomic_table_bruteforce};
use cycloskew_core::diffsets::{
    check_family, check_pds, check_skew_pds, classify_skew_pds, family_external, family_internal, internal_differences,
    skew_complement_params, Certificate, Kind, Mode,
};
use cycloskew_core::numtheory::{gcd, is_prime_power};
use cycloskew_core::{Elem, Field};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

/// Written to the stdout handle directly so the line survives the test
/// harness's output capture.
fn report(n: u32, name: &str, ok: bool, detail: &str) {
    let line = format!("criterion {n} ({name}): {} - {detail}\n", if ok { "PASS" } else { "FAIL" });
    let _ = std::io::stdout().lock().write_all(line.as_bytes());
}

fn es(codes: &[u32]) -> Vec<Elem> {
    codes.iter().map(|&c| Elem(c)).collect()
}

fn sorted(a: &[Elem]) -> Vec<u32> {
    let mut v: Vec<u32> = a.iter().map(|x| x.code()).collect();
    v.sort_unstable();
    v
}

fn prime_powers(lo: u64, hi: u64) -> impl Iterator<Item = u64> {
    (lo.max(2)..=hi).filter(|&q| is_prime_power(q))
}

/// The field of order `q` once per primitive element, same polynomial.
fn all_generators(q: u64) -> Vec<Field> {
    let base = Field::with_order(q, None).unwrap();
    let n = base.group_order() as u64;
    (1..n)
        .filter(|&k| gcd(k, n) == 1)
        .map(|k| {
            let g = base.exp(k as i64).code();
            Field::new(base.p(), base.m(), Some(&base.spec().poly), Some(g)).unwrap()
        })
        .collect()
}

static TABLE_1: LazyLock<Vec<TableRow>> =
    LazyLock::new(|| table_rows(TableId::One, 10_000, 10_000, &Parallel).unwrap());
static TABLE_2: LazyLock<Vec<TableRow>> =
    LazyLock::new(|| table_rows(TableId::Two, 100_000_000, 100_000, &Parallel).unwrap());
static SWEEP: LazyLock<Vec<CatalogEntry>> = LazyLock::new(|| {
    let mut opts = ScanOptions::new(2..=5000, registry().iter().collect());
    opts.certify_cap = 5000;
    opts.field_cap = 5000;
    scan(&opts).unwrap()
});

/// `(label, field, certificate)` for every worked example.
static EXAMPLES: LazyLock<Vec<(String, Field, Certificate)>> = LazyLock::new(worked_examples);

fn worked_examples() -> Vec<(String, Field, Certificate)> {
    let mut out = Vec::new();
    let f13_2 = Field::new(13, 1, None, Some(2)).unwrap();
    let f13_7 = Field::new(13, 1, None, Some(7)).unwrap();
    out.push((
        "GF(13) g=2 C0^4 u C1^4".into(),
        f13_2.clone(),
        check_skew_pds(&f13_2, &es(&[1, 3, 7, 8, 9, 11])).unwrap(),
    ));
    out.push((
        "GF(13) g=7 C0^4 u C3^4".into(),
        f13_7.clone(),
        check_skew_pds(&f13_7, &es(&[1, 2, 3, 5, 6, 9])).unwrap(),
    ));
    out.push((
        "GF(13) EDF".into(),
        f13_2.clone(),
        check_family(&f13_2, &[es(&[1, 2]), es(&[3, 6]), es(&[9, 5])], Mode::External, None).unwrap(),
    ));

    // alpha a root of x^2 + x + 2; alpha has code 3.
    let f9 = Field::new(3, 2, Some(&[2, 1, 1]), None).unwrap();
    out.push(("GF(9) C0^4".into(), f9.clone(), check_pds(&f9, &es(&[1, 2])).unwrap()));
    out.push(("GF(9) C3^8 u C5^8".into(), f9.clone(), check_skew_pds(&f9, &es(&[8, 6])).unwrap()));
    out.push(("GF(9) {1,a,a+1,2a}".into(), f9.clone(), check_skew_pds(&f9, &es(&[1, 3, 4, 6])).unwrap()));
    let sq9 = classes(&f9, 2).unwrap().class(0).to_vec();
    out.push((
        "GF(9) EPDF".into(),
        f9.clone(),
        check_family(&f9, &[es(&[1]), es(&[7, 6])], Mode::External, Some(&sq9)).unwrap(),
    ));

    let by_recipe = |id: &str, f: Field, label: &str| -> (String, Field, Certificate) {
        let c = apply(cycloskew_core::constructions::lookup(id).unwrap(), &f).unwrap().unwrap();
        let claim = c.claims.iter().find(|cl| cl.label == label).unwrap();
        (format!("GF({}) {id}", f.order()), f, claim.certificate.clone().unwrap())
    };
    out.push(by_recipe("R5", Field::with_order(361, None).unwrap(), "skew"));
    out.push(by_recipe("R19", Field::new(5, 2, Some(&[3, 2, 1]), None).unwrap(), "D1"));
    out.push(by_recipe("R22", Field::with_order(17, None).unwrap(), "external"));
    out.push(by_recipe("R15", Field::with_order(89, None).unwrap(), "internal"));
    out.push(by_recipe("R15", Field::with_order(41, None).unwrap(), "internal"));
    out.push(by_recipe("R11", Field::with_order(1801, None).unwrap(), "internal"));
    out
}

fn table_report(rows: &[TableRow], id: TableId, bound: u64) -> (Vec<String>, usize, usize) {
    let problems = compare_with_published(id, rows, bound);
    let verified = rows.iter().filter(|r| r.verification == Verification::OracleVerified).count();
    let unverified = rows.iter().filter(|r| r.verification == Verification::NotOracleVerified).count();
    (problems, verified, unverified)
}

#[test]
fn criterion_1_table_one() {
    let rows = &*TABLE_1;
    let (problems, verified, _) = table_report(rows, TableId::One, 10_000);
    let skew_ok = rows.iter().all(|r| {
        r.certificates().count() == 2 && r.certificates().all(|c| c.kind == Kind::SkewPds && c.params == r.params)
    });
    let ok = rows.len() == 21 && problems.is_empty() && verified == 21 && skew_ok;
    let last = rows.last().map(|r| r.to_string()).unwrap_or_default();
    report(
        1,
        "table 1",
        ok,
        &format!("{} rows, {verified} oracle-verified, {} differences; last {last}", rows.len(), problems.len()),
    );
    assert!(ok, "{problems:?}");
}

#[test]
fn criterion_2_table_two() {
    let rows = &*TABLE_2;
    let (problems, verified, unverified) = table_report(rows, TableId::Two, 100_000_000);
    let certified: Vec<u64> =
        rows.iter().filter(|r| r.verification == Verification::OracleVerified).map(|r| r.q).collect();
    let labels_ok = rows.iter().all(|r| (r.q <= 100_000) == (r.verification == Verification::OracleVerified))
        && rows.iter().filter(|r| r.q > 100_000).all(|r| r.verification.to_string() == "not-oracle-verified");
    let ok = rows.len() == 12 && problems.is_empty() && certified == [9, 121, 729, 6889, 51529] && labels_ok;
    report(
        2,
        "table 2",
        ok,
        &format!(
            "{} rows, {verified} oracle-verified {certified:?}, {unverified} not-oracle-verified, {} differences",
            rows.len(),
            problems.len()
        ),
    );
    assert!(ok, "{problems:?}");
}

#[test]
fn criterion_3_worked_examples() {
    // Families are relative to C_0^2, as stated for each example.
    let expected: &[(Kind, &str)] = &[
        (Kind::SkewPds, "(13,6,2,3)"),
        (Kind::SkewPds, "(13,6,2,3)"),
        (Kind::Edf, "(13,3,2,2)"),
        (Kind::Pds, "(9,2,1,0)"),
        (Kind::TrivialSkewPds, "(9,2,1,0)"),
        (Kind::TrivialSkewPds, "(9,4,1,2)"),
        (Kind::RelativeEpdf, "(9,2,1,2;0,1)"),
        (Kind::SkewPds, "(361,90,29,20)"),
        (Kind::RelativeDpdf, "(25,2,6;2,3)"),
        (Kind::RelativeEpdf, "(17,4,2;4,2)"),
        (Kind::RelativeDpdf, "(89,2,11;1,4)"),
        (Kind::Ddf, "(41,2,5,1)"),
        (Kind::RelativeDpdf, "(1801,1,225;29,27)"),
    ];
    let ex = &*EXAMPLES;
    let mut bad = Vec::new();
    for ((label, _, cert), (kind, params)) in ex.iter().zip(expected) {
        if cert.kind != *kind || cert.params.to_string() != *params {
            bad.push(format!("{label}: {} {}", cert.kind, cert.params));
        }
    }
    // The partner PDSs of the GF(13) pair.
    let refs_ok = ex[0].2.reference_set == [1, 3, 4, 9, 10, 12] && ex[1].2.reference_set == [2, 5, 6, 7, 8, 11];
    let ok = ex.len() == expected.len() && bad.is_empty() && refs_ok;
    report(
        3,
        "worked examples",
        ok,
        &format!("{} examples certified exactly, {} off {bad:?}", ex.len() - bad.len(), bad.len()),
    );
    assert!(ok);
}

#[test]
fn criterion_4_cyclotomic_numbers() {
    let (mut fields, mut tables, mut bad) = (0, 0, Vec::new());
    for q in prime_powers(5, 2000).filter(|q| q % 4 == 1) {
        for f in all_generators(q) {
            fields += 1;
            for e in [4u32, 8] {
                if (q - 1) % e as u64 != 0 {
                    continue;
                }
                tables += 1;
                match cyclotomic_numbers_closed_form(&f, e) {
                    Ok(t) if t.same_counts(&cyclotomic_table_bruteforce(&f, e).unwrap()) => {}
                    Ok(_) => bad.push(format!("q={q} g={} e={e} differs", f.generator())),
                    Err(err) => bad.push(format!("q={q} g={} e={e}: {err}", f.generator())),
                }
            }
        }
    }
    let ok = bad.is_empty();
    report(
        4,
        "cyclotomic numbers",
        ok,
        &format!("{tables} tables over {fields} (field, generator) pairs, {} disagreements", bad.len()),
    );
    assert!(ok, "{bad:?}");
}

fn suspect_claims<'a>(entries: &'a [CatalogEntry], id: &'a str) -> impl Iterator<Item = &'a MaterialClaim> + 'a {
    entries
        .iter()
        .filter(move |e| e.recipe == id)
        .filter_map(|e| e.construction.as_ref())
        .flat_map(|c| c.claims.iter())
        .filter(|c| c.suspect.is_some())
}

#[test]
fn criterion_5_recipe_sweep() {
    let entries = &*SWEEP;
    let mut per_recipe: BTreeMap<&str, usize> = BTreeMap::new();
    let mut mismatches = Vec::new();
    let mut uncertified = 0;
    for e in entries {
        *per_recipe.entry(e.recipe.as_str()).or_default() += 1;
        match &e.construction {
            Some(c) => mismatches.extend(c.mismatches().map(|m| format!("{} q={} {}", e.recipe, e.q, m.label))),
            None => uncertified += 1,
        }
    }
    let all_used = registry().iter().all(|r| per_recipe.contains_key(r.id));
    let mut flagged = Vec::new();
    let mut flags_ok = true;
    for id in ["R11", "R13", "R24"] {
        let claims: Vec<_> = suspect_claims(entries, id).collect();
        flags_ok &= !claims.is_empty()
            && claims.iter().all(|c| c.status == Some(Status::VerifiedSuspect) && c.certificate.is_some());
        flagged.push(format!("{id}:{}", claims.len()));
    }
    let verified = entries.iter().filter(|e| e.oracle_verified).count();
    let ok = mismatches.is_empty() && uncertified == 0 && all_used && flags_ok && verified == entries.len();
    report(
        5,
        "recipe sweep",
        ok,
        &format!(
            "{} applications of {} recipes, {verified} verified, {} mismatches; suspect claims recorded {}",
            entries.len(),
            per_recipe.len(),
            mismatches.len(),
            flagged.join(" ")
        ),
    );
    assert!(ok, "{mismatches:?}");
}

fn is_skew(c: &Certificate) -> bool {
    matches!(c.kind, Kind::SkewPds | Kind::TrivialSkewPds)
}

/// Every skew certificate produced by criteria 1, 2, 3 and 5.
fn certified_skew_sets() -> Vec<(Field, Certificate)> {
    let mut out = Vec::new();
    let mut from_constructions = |cs: Vec<&Construction>| {
        for c in cs {
            let f = Field::from_spec(&c.field).unwrap();
            for cl in c.claims.iter().filter(|cl| cl.mode == ClaimMode::Skew) {
                let cert = cl.certificate.clone().unwrap();
                if is_skew(&cert) {
                    out.push((f.clone(), cert));
                }
            }
        }
    };
    from_constructions(TABLE_1.iter().chain(TABLE_2.iter()).flat_map(|r| r.constructions.iter()).collect());
    from_constructions(SWEEP.iter().filter_map(|e| e.construction.as_ref()).collect());
    out.extend(EXAMPLES.iter().filter(|(_, _, c)| is_skew(c)).map(|(_, f, c)| (f.clone(), c.clone())));
    out
}

#[test]
fn criterion_6_negative_results() {
    // No single class is a skew PDS for C_0^e.
    let mut class_checks = 0;
    let mut class_bad = Vec::new();
    for q in prime_powers(3, 1000) {
        let f = Field::with_order(q, None).unwrap();
        for e in [2u32, 4, 8] {
            if (q - 1) % e as u64 != 0 || q - 1 == e as u64 {
                continue;
            }
            let part = classes(&f, e).unwrap();
            let c0 = check_pds(&f, part.class(0)).unwrap();
            if c0.kind != Kind::Pds || Some(c0.params.lambda) == c0.params.mu {
                continue;
            }
            for i in 1..e as i64 {
                class_checks += 1;
                let c = check_skew_pds(&f, part.class(i)).unwrap();
                if is_skew(&c) && c.reference_set == sorted(part.class(0)) {
                    class_bad.push(format!("q={q} e={e} i={i}"));
                }
            }
        }
    }

    // C_0^4 u C_3^4 for q = 1 mod 8.
    let mut union_bad = Vec::new();
    let mut union_bad_p1 = Vec::new();
    let mut union_checks = 0;
    for q in prime_powers(9, 2000).filter(|q| q % 8 == 1) {
        let f = Field::with_order(q, None).unwrap();
        union_checks += 1;
        let d = classes(&f, 4).unwrap().union(&[0, 3]);
        let pds = check_pds(&f, &d).unwrap();
        let skew = check_skew_pds(&f, &d).unwrap();
        if pds.kind != Kind::None || skew.kind != Kind::None {
            union_bad.push(format!("{q}: {} {}", pds.kind, pds.params));
            if f.p() % 4 == 1 {
                union_bad_p1.push(q);
            }
        }
    }

    // Complement law for every skew PDS certified above.
    let sets = certified_skew_sets();
    let mut comp_bad = Vec::new();
    for (f, cert) in &sets {
        let d = es(&cert.sets[0]);
        let inside = cycloskew_core::diffsets::indicator(f, &d);
        let comp: Vec<Elem> = f.elements().filter(|x| !inside[x.code() as usize]).collect();
        let cc = classify_skew_pds(f, &comp, &Parallel.delta(f, &comp), |s| Parallel.delta(f, s));
        if !is_skew(&cc) || cc.params != skew_complement_params(&cert.params) {
            comp_bad.push(format!("q={} {}", f.order(), cert.params));
        }
    }

    let class_ok = class_bad.is_empty() && class_checks > 0;
    let comp_ok = comp_bad.is_empty() && sets.len() > 100;
    let union_ok = union_bad.is_empty();
    let ok = class_ok && comp_ok && union_ok;
    report(
        6,
        "negative results",
        ok,
        &format!(
            "single classes: {class_checks} checked, {} skew; C0^4 u C3^4: {union_checks} fields, {} counterexamples {union_bad:?}; complements: {} skew PDSs, {} failures",
            class_bad.len(),
            union_bad.len(),
            sets.len(),
            comp_bad.len()
        ),
    );
    // The union claim fails in the semiprimitive case p = 3 mod 4 (every
    // union of order-4 classes is a PDS there). That failure is reported
    // above and not asserted away: this test only pins that it is confined
    // to p = 3 mod 4, so any new counterexample still fails the build.
    assert!(union_bad_p1.is_empty(), "{union_bad:?}");
    assert!(class_ok, "{class_bad:?}");
    assert!(comp_ok, "{comp_bad:?}");
}

fn random_subset(rng: &mut StdRng, f: &Field, max: usize) -> Vec<Elem> {
    let mut all: Vec<Elem> = f.elements().collect();
    all.shuffle(rng);
    let k = rng.gen_range(0..=max.min(all.len()));
    all.truncate(k);
    all
}

fn random_family(rng: &mut StdRng, f: &Field) -> Vec<Vec<Elem>> {
    let mut nonzero: Vec<Elem> = f.elements().filter(|x| !x.is_zero()).collect();
    nonzero.shuffle(rng);
    let sets = rng.gen_range(1..=5usize);
    let size = rng.gen_range(1..=(nonzero.len() / sets).clamp(1, 12));
    nonzero.chunks(size).take(sets).filter(|c| c.len() == size).map(|c| c.to_vec()).collect()
}

#[test]
fn criterion_7_property_suites() {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let orders: Vec<u64> = prime_powers(3, 500).collect();
    let mut fields: BTreeMap<u64, Field> = BTreeMap::new();
    let mut field = |q: u64| fields.entry(q).or_insert_with(|| Field::with_order(q, None).unwrap()).clone();

    let mut symmetric = true;
    for _ in 0..300 {
        let f = field(*orders.choose(&mut rng).unwrap());
        let s = random_subset(&mut rng, &f, 40);
        let d = internal_differences(&f, &s).unwrap();
        symmetric &= d.is_symmetric(&f) && d.total == (s.len() * s.len().saturating_sub(1)) as u64;
    }

    let mut int_ext = true;
    for _ in 0..1000 {
        let f = field(*orders.choose(&mut rng).unwrap());
        let fam = random_family(&mut rng, &f);
        let mut sum = family_internal(&f, &fam).unwrap();
        sum.merge(&family_external(&f, &fam).unwrap());
        let union: Vec<Elem> = fam.iter().flatten().copied().collect();
        int_ext &= sum == internal_differences(&f, &union).unwrap();
    }

    // Counting identity and the two PDS propositions on class unions.
    let (mut pds_seen, mut counting, mut symmetric_pds, mut variants) = (0, true, true, true);
    for q in prime_powers(5, 200).filter(|q| q % 2 == 1) {
        let f = field(q);
        for e in [2u32, 4, 8].into_iter().filter(|&e| (q - 1) % e as u64 == 0) {
            let part = classes(&f, e).unwrap();
            for mask in 1u32..(1 << e) - 1 {
                let idx: Vec<i64> = (0..e as i64).filter(|i| mask >> i & 1 == 1).collect();
                let a = part.union(&idx);
                let c = check_pds(&f, &a).unwrap();
                if c.kind != Kind::Pds {
                    continue;
                }
                pds_seen += 1;
                let (v, k, l, m) = (q, c.params.k[0], c.params.lambda, c.params.mu.unwrap());
                counting &= k * (k - 1) == l * k + m * (v - 1 - k);
                let neg: Vec<Elem> = a.iter().map(|&x| f.neg(x)).collect();
                let closed = sorted(&neg) == sorted(&a);
                if l != m {
                    symmetric_pds &= closed;
                }
                if closed {
                    let inside = cycloskew_core::diffsets::indicator(&f, &a);
                    let comp: Vec<Elem> = f.elements().filter(|x| !inside[x.code() as usize]).collect();
                    let without0 = |s: &[Elem]| s.iter().copied().filter(|x| !x.is_zero()).collect::<Vec<_>>();
                    let with0 = |s: &[Elem]| {
                        let mut v = without0(s);
                        v.push(Elem::ZERO);
                        v
                    };
                    for s in [without0(&a), with0(&a), comp.clone(), without0(&comp), with0(&comp)] {
                        if !s.is_empty() && s.len() < q as usize {
                            variants &= check_pds(&f, &s).unwrap().kind == Kind::Pds;
                        }
                    }
                }
            }
        }
    }

    // Catalog round trip and scan determinism.
    let mut opts = ScanOptions::new(2..=700, registry().iter().collect());
    opts.certify_cap = 700;
    let first = scan(&opts).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("catalog.jsonl");
    write_catalog(std::fs::File::create(&path).unwrap(), &first).unwrap();
    let text = std::fs::read_to_string(&path).unwrap();
    let parsed = read_catalog(BufReader::new(std::fs::File::open(&path).unwrap())).unwrap();
    let round_trip = parsed == first
        && text.ends_with('\n')
        && !text.contains('\r')
        && parsed.iter().all(|e| spot_check(e).unwrap())
        && parsed.iter().filter(|e| e.oracle_verified).count() > 100;
    let second = scan(&opts).unwrap();
    let deterministic = determinism_text(&first).unwrap() == determinism_text(&second).unwrap();

    let results = [
        ("delta symmetry", symmetric),
        ("Int + Ext = Delta(S) on 1000 families", int_ext),
        ("PDS counting identity", counting),
        ("lambda != mu implies A = -A", symmetric_pds),
        ("A = -A PDS variants", variants),
        ("catalog round trip", round_trip),
        ("scan determinism", deterministic),
    ];
    let ok = results.iter().all(|r| r.1) && pds_seen > 50;
    let failed: Vec<&str> = results.iter().filter(|r| !r.1).map(|r| r.0).collect();
    report(
        7,
        "property suites",
        ok,
        &format!(
            "{} suites green ({pds_seen} PDSs, {} catalog entries); failing {failed:?}",
            results.len() - failed.len(),
            first.len()
        ),
    );
    assert!(ok, "{failed:?}");
}
