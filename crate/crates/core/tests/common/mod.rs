#![allow(dead_code)]

use cycloskew_core::numtheory::{gcd, is_prime_power};
use cycloskew_core::Field;

pub fn prime_powers(lo: u64, hi: u64) -> impl Iterator<Item = u64> {
    (lo.max(2)..=hi).filter(|&q| is_prime_power(q))
}

/// The field of order `q` once per primitive element, same polynomial.
pub fn all_generators(q: u64) -> Vec<Field> {
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
