//! Exhaustive enumeration of small inputs.

use itertools::Itertools;

use crate::base::{BaseTuple, NormalForm};
use crate::configuration::SupportPoint;

/// Lattice points `(a, b, c)` with `a + b + c = k`, in lexicographic order.
pub fn positions(k: u64) -> Vec<[u64; 3]> {
    (0..=k)
        .flat_map(|a| (0..=k - a).map(move |b| [a, b, k - a - b]))
        .collect()
}

/// Compositions of `k` into `len` nonnegative parts.
pub fn tuples(k: u64, len: usize) -> Vec<BaseTuple> {
    fn go(k: u64, len: usize, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if len == 1 {
            prefix.push(k);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for g in 0..=k {
            prefix.push(g);
            go(k - g, len - 1, prefix, out);
            prefix.pop();
        }
    }
    if len == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    go(k, len, &mut Vec::new(), &mut out);
    out.into_iter()
        .map(|e| BaseTuple::new(e).expect("positive height"))
        .collect()
}

/// Every presentation of height `k` with at most `max_n` torus factors.
pub fn presentations(k: u64, max_n: usize) -> Vec<BaseTuple> {
    (1..=max_n + 1).flat_map(|len| tuples(k, len)).collect()
}

/// Every normal form of height `k` with at most `max_n` cuts.
pub fn normal_forms(k: u64, max_n: usize) -> Vec<NormalForm> {
    (0..=max_n.min(k.saturating_sub(1) as usize))
        .flat_map(|n| (1..k).combinations(n))
        .map(|cuts| NormalForm::new(k, cuts).expect("valid cuts"))
        .collect()
}

/// Multisets of at most `max_m` lattice points of height `k`, merged into
/// support points with multiplicity. Includes the empty configuration when
/// `include_empty` is set.
pub fn point_sets(k: u64, max_m: u64, include_empty: bool) -> Vec<Vec<SupportPoint>> {
    let pos = positions(k);
    let start = if include_empty { 0 } else { 1 };
    (start..=max_m as usize)
        .flat_map(|m| pos.iter().combinations_with_replacement(m))
        .map(|combo| {
            combo
                .into_iter()
                .dedup_with_count()
                .map(|(mult, &p)| SupportPoint::new(p, mult as u64))
                .collect()
        })
        .collect()
}
