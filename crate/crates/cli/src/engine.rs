//! Multi-threaded difference counting.

use cycloskew_core::constructions::DeltaEngine;
use cycloskew_core::cyclotomy::{bruteforce_counts_range, table_from_counts, CycNumTable};
use cycloskew_core::diffsets::{remove_diagonal, DiffAccumulator, DiffMultiset, Kernel};
use cycloskew_core::{Elem, Field};
use rayon::prelude::*;

/// Below this many pairs the work is not worth splitting.
const SERIAL_PAIRS: usize = 1 << 20;

/// Splits the outer loop of `Delta(D)` into chunks, one accumulator per chunk.
#[derive(Debug, Clone, Copy, Default)]
pub struct Parallel;

impl DeltaEngine for Parallel {
    fn delta(&self, field: &Field, set: &[Elem]) -> DiffMultiset {
        let acc = |xs: &[Elem]| {
            let mut a = DiffAccumulator::new(field, Kernel::Auto);
            a.add_cross(xs, set);
            a.finish()
        };
        let n = set.len();
        let merged = if n * n < SERIAL_PAIRS {
            acc(set)
        } else {
            let chunk = n.div_ceil(4 * rayon::current_num_threads()).max(64);
            set.par_chunks(chunk)
                .map(acc)
                .reduce_with(|mut a, b| {
                    a.merge(&b);
                    a
                })
                .unwrap_or_else(|| DiffMultiset::zeros(field.order()))
        };
        remove_diagonal(merged, n)
    }
}

/// Brute-force `(i,j)_e` table, summing per-thread ranges of exponents.
pub fn bruteforce_table(field: &Field, e: u32) -> cycloskew_core::Result<CycNumTable> {
    let n = field.group_order();
    let step = n.div_ceil(rayon::current_num_threads() as u32 * 4).max(4096);
    let parts: Vec<u32> = (0..n).step_by(step as usize).collect();
    let partial = parts
        .into_par_iter()
        .map(|lo| bruteforce_counts_range(field, e, lo..(lo + step).min(n)))
        .collect::<cycloskew_core::Result<Vec<_>>>()?;
    let mut counts = vec![0u64; (e * e) as usize];
    for p in &partial {
        for (c, v) in counts.iter_mut().zip(p) {
            *c += v;
        }
    }
    if partial.is_empty() {
        // q = 2: nothing to count, but the order check still applies.
        bruteforce_counts_range(field, e, 0..0)?;
    }
    Ok(table_from_counts(e, counts))
}

/// Thread count: `CYCLOSKEW_JOBS` wins over the flag; 0 means all cores.
pub fn configure_jobs(flag: Option<usize>) -> anyhow::Result<()> {
    let env = std::env::var("CYCLOSKEW_JOBS").ok().filter(|s| !s.trim().is_empty());
    let jobs = match env {
        Some(s) => s.trim().parse().map_err(|_| anyhow::anyhow!("CYCLOSKEW_JOBS must be a number, got {s:?}"))?,
        None => flag.unwrap_or(0),
    };
    // A second call (tests, embedding) keeps the first pool.
    let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global();
    Ok(())
}
