//! Field selection and set-file parsing shared by the subcommands.

use std::path::Path;

use anyhow::{bail, Context};
use clap::Args;
use cycloskew_core::numtheory::prime_power_decompose;
use cycloskew_core::{Elem, Field};

#[derive(Debug, Clone, Args)]
pub struct FieldArgs {
    /// Field order, as `q` or `p^m`.
    #[arg(long)]
    pub q: String,
    /// Defining polynomial `c0,c1,...,1` (constant term first); default is
    /// the smallest primitive one.
    #[arg(long, value_delimiter = ',')]
    pub poly: Option<Vec<u32>>,
    /// Code of the primitive element; default is the polynomial's root.
    #[arg(long = "gen")]
    pub generator: Option<u32>,
}

impl FieldArgs {
    pub fn build(&self) -> anyhow::Result<Field> {
        let (p, m) = parse_order(&self.q)?;
        Ok(Field::new(p, m, self.poly.as_deref(), self.generator)?)
    }
}

/// `"13"`, `"9"` or `"3^2"` to `(p, m)`.
pub fn parse_order(s: &str) -> anyhow::Result<(u32, u32)> {
    let s = s.trim();
    let (p, m) = match s.split_once('^') {
        Some((p, m)) => (p.trim().parse::<u32>()?, m.trim().parse::<u32>()?),
        None => {
            let q: u64 = s.parse().with_context(|| format!("bad field order {s:?}"))?;
            let (p, m) = prime_power_decompose(q)?;
            (p as u32, m)
        }
    };
    Ok((p, m))
}

/// A sets argument: inline JSON (starting with `[`) or a path to a JSON file
/// holding an array of arrays of element codes.
pub fn read_sets(arg: &str) -> anyhow::Result<Vec<Vec<u32>>> {
    let text = inline_or_file(arg)?;
    let sets: Vec<Vec<u32>> =
        serde_json::from_str(&text).context("sets must be a JSON array of arrays of element codes")?;
    if sets.is_empty() {
        bail!("no sets given");
    }
    Ok(sets)
}

/// A reference set: a flat array, or a one-element array of arrays.
pub fn read_reference(arg: &str) -> anyhow::Result<Vec<u32>> {
    let text = inline_or_file(arg)?;
    if let Ok(flat) = serde_json::from_str::<Vec<u32>>(&text) {
        return Ok(flat);
    }
    let mut nested: Vec<Vec<u32>> =
        serde_json::from_str(&text).context("reference must be a JSON array of element codes")?;
    if nested.len() != 1 {
        bail!("reference must be a single set");
    }
    Ok(nested.remove(0))
}

fn inline_or_file(arg: &str) -> anyhow::Result<String> {
    if arg.trim_start().starts_with('[') {
        Ok(arg.to_string())
    } else {
        std::fs::read_to_string(Path::new(arg)).with_context(|| format!("reading {arg}"))
    }
}

pub fn elems(codes: &[u32]) -> Vec<Elem> {
    codes.iter().map(|&c| Elem(c)).collect()
}
