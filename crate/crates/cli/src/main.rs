use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use cycloskew::catalog::{read_catalog, scan, spot_check, write_catalog, ScanOptions};
use cycloskew::engine::{bruteforce_table, configure_jobs};
use cycloskew::fieldarg::{elems, read_reference, read_sets, FieldArgs};
use cycloskew::tables::{compare_with_published, table_rows, TableId, Verification};
use cycloskew::Parallel;
use cycloskew_core::constructions::{lookup, registry, DeltaEngine};
use cycloskew_core::cyclotomy::{cyclotomic_numbers_closed_form, CycNumTable};
use cycloskew_core::diffsets::{
    check_family, classify_ads, classify_pds, classify_skew_pds, validate_family, validate_set, Certificate, Kind, Mode,
};

#[derive(Parser)]
#[command(name = "cycloskew", version, about = "Skew PDSs and partial difference families from cyclotomy")]
struct Cli {
    /// Worker threads (0 = all cores); CYCLOSKEW_JOBS takes precedence.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Regenerate table 1 (t = ±2, order-4 unions) or table 2 (order-8, q = (d^2+2)^2).
    Tables {
        table: u8,
        bound: u64,
        /// Oracle-certify rows with q up to this bound.
        #[arg(long, default_value_t = 100_000)]
        certify_cap: u64,
    },
    /// Apply recipes to every prime power in [q_min, q_max] and write a catalog.
    Scan(ScanArgs),
    /// Classify sets with the oracle and print the certificate as JSON.
    Verify {
        #[command(flatten)]
        field: FieldArgs,
        /// JSON array of arrays of element codes, inline or as a file path.
        #[arg(long)]
        sets: String,
        #[arg(long, value_enum)]
        mode: VerifyMode,
        /// Reference set T for relative families (inline JSON or path).
        #[arg(long)]
        reference: Option<String>,
    },
    /// Print the matrix of cyclotomic numbers (i,j)_e.
    Cycnum {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        e: u32,
        /// Formula table only (the default compares it with brute force).
        #[arg(long, conflicts_with_all = ["brute_force", "compare"])]
        closed_form: bool,
        #[arg(long, conflicts_with = "compare")]
        brute_force: bool,
        #[arg(long)]
        compare: bool,
    },
    /// Summarize a catalog; with --check, re-verify every verified entry.
    Catalog {
        path: PathBuf,
        #[arg(long)]
        check: bool,
    },
    /// List the recipe registry.
    Recipes {
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct ScanArgs {
    q_min: u64,
    q_max: u64,
    /// Recipe ids, or `all`.
    #[arg(default_value = "all", value_delimiter = ',', num_args = 0..)]
    recipes: Vec<String>,
    #[arg(long, default_value_t = 5000)]
    certify_cap: u64,
    /// Decide generator-dependent hypotheses up to this q.
    #[arg(long, default_value_t = 100_000)]
    field_cap: u64,
    /// Catalog path; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyMode {
    Pds,
    Skew,
    Ads,
    Internal,
    External,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum CycnumSource {
    ClosedForm,
    BruteForce,
    Compare,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_jobs(cli.jobs).and_then(|()| run(cli.command));
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

/// `Ok(false)` is a negative answer (mismatch, kind none), not a failure to run.
fn run(command: Command) -> anyhow::Result<bool> {
    match command {
        Command::Tables { table, bound, certify_cap } => cmd_tables(table, bound, certify_cap),
        Command::Scan(args) => cmd_scan(args),
        Command::Verify { field, sets, mode, reference } => cmd_verify(&field, &sets, mode, reference.as_deref()),
        Command::Cycnum { field, e, closed_form, brute_force, compare: _ } => {
            let source = match (closed_form, brute_force) {
                (true, _) => CycnumSource::ClosedForm,
                (_, true) => CycnumSource::BruteForce,
                _ => CycnumSource::Compare,
            };
            cmd_cycnum(&field, e, source)
        }
        Command::Catalog { path, check } => cmd_catalog(&path, check),
        Command::Recipes { json } => cmd_recipes(json),
    }
}

fn cmd_tables(table: u8, bound: u64, certify_cap: u64) -> anyhow::Result<bool> {
    let id = TableId::from_number(table)?;
    let rows = table_rows(id, bound, certify_cap, &Parallel)?;
    let mut out = io::stdout().lock();
    writeln!(out, "q\trepresentation\tparameters\tstatus")?;
    for row in &rows {
        writeln!(out, "{row}")?;
    }
    let problems = compare_with_published(id, &rows, bound);
    for p in &problems {
        eprintln!("{p}");
    }
    let failed = rows.iter().filter(|r| r.verification == Verification::Failed).count();
    if failed > 0 {
        eprintln!("{failed} row(s) failed certification");
    }
    Ok(problems.is_empty() && failed == 0)
}

fn cmd_scan(args: ScanArgs) -> anyhow::Result<bool> {
    let recipes = if args.recipes.iter().any(|r| r.eq_ignore_ascii_case("all")) {
        registry().iter().collect()
    } else {
        args.recipes
            .iter()
            .map(|id| lookup(id).with_context(|| format!("unknown recipe {id:?}")))
            .collect::<anyhow::Result<Vec<_>>>()?
    };
    let mut opts = ScanOptions::new(args.q_min..=args.q_max, recipes);
    opts.certify_cap = args.certify_cap;
    opts.field_cap = args.field_cap;
    let entries = scan(&opts)?;
    match &args.out {
        Some(path) => {
            let file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
            write_catalog(BufWriter::new(file), &entries)?;
        }
        None => write_catalog(io::stdout().lock(), &entries)?,
    }
    let bad: Vec<_> = entries.iter().filter(|e| e.has_mismatch()).collect();
    for e in &bad {
        eprintln!("mismatch: {} at q = {}", e.recipe, e.q);
    }
    let verified = entries.iter().filter(|e| e.oracle_verified).count();
    eprintln!("{} entries, {} oracle-verified", entries.len(), verified);
    Ok(bad.is_empty())
}

fn cmd_verify(field: &FieldArgs, sets: &str, mode: VerifyMode, reference: Option<&str>) -> anyhow::Result<bool> {
    let field = field.build()?;
    let family: Vec<_> = read_sets(sets)?.iter().map(|s| elems(s)).collect();
    let reference = reference.map(read_reference).transpose()?.map(|r| elems(&r));
    let single = || -> anyhow::Result<_> {
        if family.len() != 1 {
            bail!("this mode takes exactly one set");
        }
        validate_set(&field, &family[0])?;
        Ok(&family[0])
    };
    let cert: Certificate = match mode {
        VerifyMode::Pds => {
            let a = single()?;
            classify_pds(&field, a, &Parallel.delta(&field, a))
        }
        VerifyMode::Skew => {
            let d = single()?;
            classify_skew_pds(&field, d, &Parallel.delta(&field, d), |s| Parallel.delta(&field, s))
        }
        VerifyMode::Ads => {
            let d = single()?;
            classify_ads(&field, d, &Parallel.delta(&field, d))
        }
        VerifyMode::Internal | VerifyMode::External => {
            validate_family(&field, &family)?;
            let m = if matches!(mode, VerifyMode::Internal) { Mode::Internal } else { Mode::External };
            check_family(&field, &family, m, reference.as_deref())?
        }
    };
    println!("{}", serde_json::to_string_pretty(&cert)?);
    if cert.is_some() {
        eprintln!("{} {}", cert.kind, cert.params);
    } else {
        eprintln!("none");
    }
    Ok(cert.kind != Kind::None)
}

fn print_table(out: &mut impl Write, t: &CycNumTable) -> io::Result<()> {
    let width = t.counts.iter().map(|c| c.to_string().len()).max().unwrap_or(1);
    for i in 0..t.e {
        let row: Vec<String> = t.row(i).iter().map(|c| format!("{c:>width$}")).collect();
        writeln!(out, "{}", row.join(" "))?;
    }
    Ok(())
}

fn cmd_cycnum(field: &FieldArgs, e: u32, source: CycnumSource) -> anyhow::Result<bool> {
    let field = field.build()?;
    let mut out = io::stdout().lock();
    writeln!(out, "GF({}) {}, order {e}", field.order(), field.spec())?;
    let closed = || cyclotomic_numbers_closed_form(&field, e);
    match source {
        CycnumSource::ClosedForm => {
            let t = closed()?;
            writeln!(out, "closed form")?;
            print_table(&mut out, &t)?;
            Ok(true)
        }
        CycnumSource::BruteForce => {
            let t = bruteforce_table(&field, e)?;
            writeln!(out, "brute force")?;
            print_table(&mut out, &t)?;
            Ok(true)
        }
        CycnumSource::Compare => {
            let brute = bruteforce_table(&field, e)?;
            let formula = closed()?;
            writeln!(out, "brute force")?;
            print_table(&mut out, &brute)?;
            if let (Some(y), Some(b)) = (formula.resolved_y, formula.resolved_b) {
                writeln!(out, "closed form (y = {y}, b = {b})")?;
            } else {
                writeln!(out, "closed form")?;
            }
            print_table(&mut out, &formula)?;
            let mut agree = true;
            for i in 0..e as i64 {
                for j in 0..e as i64 {
                    if brute.get(i, j) != formula.get(i, j) {
                        agree = false;
                        writeln!(out, "disagree at ({i},{j}): {} vs {}", brute.get(i, j), formula.get(i, j))?;
                    }
                }
            }
            writeln!(out, "{}", if agree { "agreement" } else { "disagreement" })?;
            Ok(agree)
        }
    }
}

fn cmd_catalog(path: &PathBuf, check: bool) -> anyhow::Result<bool> {
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    let entries = read_catalog(BufReader::new(file))?;
    let mut out = io::stdout().lock();
    let mut ok = true;
    for e in &entries {
        let params: Vec<String> = match (&e.construction, &e.plan) {
            (Some(c), _) => c.claims.iter().map(|c| format!("{}:{}", c.label, c.expected)).collect(),
            (None, Some(p)) => p.claims.iter().map(|c| format!("{}:{}", c.label, c.expected)).collect(),
            (None, None) => vec!["undetermined".to_string()],
        };
        let mut status = if e.oracle_verified { "oracle-verified" } else { "not-oracle-verified" };
        if check && !spot_check(e)? {
            status = "RECHECK FAILED";
            ok = false;
        }
        writeln!(out, "{}\t{}\t{}\t{}", e.q, e.recipe, status, params.join(" "))?;
    }
    writeln!(out, "{} entries", entries.len())?;
    Ok(ok)
}

fn cmd_recipes(json: bool) -> anyhow::Result<bool> {
    let mut out = io::stdout().lock();
    for r in registry() {
        if json {
            let v = serde_json::json!({
                "id": r.id,
                "title": r.title,
                "conditions": r.conditions,
                "formulas": r.formulas,
                "needs_field": r.needs_field,
            });
            writeln!(out, "{v}")?;
        } else {
            writeln!(out, "{}\t{}\n\tif: {}", r.id, r.title, r.conditions)?;
            for f in r.formulas {
                writeln!(out, "\t=> {f}")?;
            }
        }
    }
    Ok(true)
}
