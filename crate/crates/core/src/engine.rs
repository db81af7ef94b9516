//! The shared evaluation context: memo tables and counters.
//!
//! Every computing operation is a method on [`Engine`]. The memo tables are
//! concurrent maps; a lookup never holds a shard lock across recursion, so two
//! threads may compute the same key at once and insert identical values.

use std::sync::atomic::{AtomicU64, Ordering};

use dashmap::DashMap;
use num_bigint::BigInt;
use num_traits::One;

use crate::exact::{binomial_int, ExactScalar, InvariantKey};

/// Insertion multiset on `P^n`, stored as a count per codimension `0..=n`.
pub(crate) type Counts = Vec<u32>;

pub(crate) fn counts_from(n: u32, codims: &[u32]) -> Counts {
    let mut c = vec![0u32; n as usize + 1];
    for &a in codims {
        c[a as usize] += 1;
    }
    c
}

pub(crate) fn sorted_from(counts: &Counts) -> Vec<u32> {
    let mut v = Vec::with_capacity(total(counts) as usize);
    for (a, &m) in counts.iter().enumerate() {
        v.extend(std::iter::repeat_n(a as u32, m as usize));
    }
    v
}

pub(crate) fn total(counts: &Counts) -> u32 {
    counts.iter().sum()
}

/// Sum of codimensions.
pub(crate) fn weight(counts: &Counts) -> u32 {
    counts.iter().enumerate().map(|(a, &m)| a as u32 * m).sum()
}

pub(crate) fn with(counts: &Counts, codim: u32) -> Counts {
    let mut c = counts.clone();
    c[codim as usize] += 1;
    c
}

pub(crate) fn without(counts: &Counts, codim: u32) -> Counts {
    let mut c = counts.clone();
    c[codim as usize] -= 1;
    c
}

#[cfg(test)]
fn add(a: &Counts, b: &Counts) -> Counts {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Every sub-multiset `S` of `counts`, paired with its complement and the
/// number of ways to pick `S` from labelled insertions.
pub(crate) fn sub_multisets(counts: &Counts) -> Vec<(Counts, Counts, BigInt)> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; counts.len()];
    loop {
        let rest: Counts = counts.iter().zip(&cur).map(|(m, s)| m - s).collect();
        let ways = counts
            .iter()
            .zip(&cur)
            .fold(BigInt::one(), |acc, (&m, &s)| {
                acc * binomial_int(m as i64, s as i64)
            });
        out.push((cur.clone(), rest, ways));
        let mut pos = 0;
        loop {
            if pos == counts.len() {
                return out;
            }
            if cur[pos] < counts[pos] {
                cur[pos] += 1;
                break;
            }
            cur[pos] = 0;
            pos += 1;
        }
    }
}

/// Key for `<psi^j psibar^b H^c ; mu>_d`, where `psibar` is pulled back from
/// the space without constraint points.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct ModifiedKey {
    pub n: u32,
    pub d: u32,
    pub j: u32,
    pub b: u32,
    pub c: u32,
    pub counts: Counts,
}

/// Snapshot of the engine's counters.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EngineStats {
    /// Level-0 and modified numbers computed from scratch (memo misses).
    pub evaluations: u64,
    pub memo_hits: u64,
    pub level0_entries: usize,
    pub modified_entries: usize,
}

/// Evaluation context holding the memo tables.
#[derive(Default)]
pub struct Engine {
    level0: DashMap<InvariantKey, ExactScalar>,
    modified: DashMap<ModifiedKey, ExactScalar>,
    evaluations: AtomicU64,
    hits: AtomicU64,
}

impl Engine {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn stats(&self) -> EngineStats {
        EngineStats {
            evaluations: self.evaluations.load(Ordering::Relaxed),
            memo_hits: self.hits.load(Ordering::Relaxed),
            level0_entries: self.level0.len(),
            modified_entries: self.modified.len(),
        }
    }

    /// All memoized one-component invariants, ordered by their canonical key
    /// string.
    pub fn level0_entries(&self) -> Vec<(InvariantKey, ExactScalar)> {
        let mut v: Vec<(String, InvariantKey, ExactScalar)> = self
            .level0
            .iter()
            .map(|e| (e.key().to_string(), e.key().clone(), e.value().clone()))
            .collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        v.into_iter().map(|(_, k, val)| (k, val)).collect()
    }

    /// Seeds the level-0 memo table, e.g. from a persisted cache.
    pub fn preload(&self, entries: impl IntoIterator<Item = (InvariantKey, ExactScalar)>) {
        for (k, v) in entries {
            self.level0.insert(k, v);
        }
    }

    pub(crate) fn level0_get(&self, key: &InvariantKey) -> Option<ExactScalar> {
        let hit = self.level0.get(key).map(|v| v.value().clone());
        if hit.is_some() {
            self.hits.fetch_add(1, Ordering::Relaxed);
        }
        hit
    }

    pub(crate) fn level0_put(&self, key: InvariantKey, value: ExactScalar) {
        self.evaluations.fetch_add(1, Ordering::Relaxed);
        self.level0.insert(key, value);
    }

    pub(crate) fn modified_get(&self, key: &ModifiedKey) -> Option<ExactScalar> {
        let hit = self.modified.get(key).map(|v| v.value().clone());
        if hit.is_some() {
            self.hits.fetch_add(1, Ordering::Relaxed);
        }
        hit
    }

    pub(crate) fn modified_put(&self, key: ModifiedKey, value: ExactScalar) {
        self.evaluations.fetch_add(1, Ordering::Relaxed);
        self.modified.insert(key, value);
    }
}
