//! The seed sweep.
//!
//! Seeds are visited as a four-level tree (one level per generator pair), so
//! a contradiction found after fixing the first `i` images rejects the whole
//! block of `(4mn)^(4-i)` seeds sharing that prefix at once. Since the
//! propagation fixpoint only grows when facts are added, this gives exactly
//! the per-seed verdicts of a flat sweep.
//!
//! Work is split by the first image into contiguous ranges, one per worker;
//! results are concatenated in range order, so the output is sorted by seed
//! index whatever the worker count.

use std::thread;

use super::propagate::{Propagator, Schedule};
use super::{build_oracle_group, CrossingTable, KnitFactors, OracleError, OracleGroup};
use crate::theorem::validate_degrees;

pub const DEFAULT_SEED_BUDGET: u64 = 200_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepConfig {
    pub workers: usize,
    pub seed_budget: u64,
    pub iso_budget: u64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            workers: thread::available_parallelism().map(|n| n.get()).unwrap_or(1),
            seed_budget: DEFAULT_SEED_BUDGET,
            iso_budget: crate::group::DEFAULT_NODE_BUDGET,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SweepStats {
    pub seeds_total: u64,
    /// Seeds with no consistent total table.
    pub propagation_rejected: u64,
    /// Seeds whose total tables all failed the group axioms.
    pub axiom_rejected: u64,
    /// Seeds whose fixpoint left cells open and needed case splitting.
    pub underdetermined_seeds: u64,
    pub groups_accepted: u64,
}

impl SweepStats {
    fn merge(&mut self, other: &SweepStats) {
        self.propagation_rejected += other.propagation_rejected;
        self.axiom_rejected += other.axiom_rejected;
        self.underdetermined_seeds += other.underdetermined_seeds;
        self.groups_accepted += other.groups_accepted;
    }
}

#[derive(Debug, Clone)]
pub struct SweepOutcome {
    pub factors: KnitFactors,
    pub stats: SweepStats,
    /// Accepted groups, sorted by seed index.
    pub groups: Vec<OracleGroup>,
}

/// Enumerates every exact product of `D_2n` and `D_2m` as a knit product.
pub fn enumerate_exact_products(m: u64, n: u64, config: &SweepConfig) -> Result<SweepOutcome, OracleError> {
    validate_degrees(m, n)?;
    let factors = KnitFactors::new(m, n);
    let seeds = factors.seed_space();
    if seeds > config.seed_budget as u128 {
        return Err(OracleError::BudgetExceeded {
            seeds,
            budget: config.seed_budget,
        });
    }
    let base = factors.pair_count();
    let workers = config.workers.clamp(1, base);
    let ranges: Vec<(usize, usize)> = (0..workers)
        .map(|w| (w * base / workers, (w + 1) * base / workers))
        .collect();

    let root = Propagator::new(&factors, Schedule::Lifo);
    let parts: Vec<(SweepStats, Vec<OracleGroup>)> = thread::scope(|scope| {
        let handles: Vec<_> = ranges
            .iter()
            .map(|&(lo, hi)| {
                let factors = &factors;
                let root = &root;
                scope.spawn(move || sweep_range(factors, root, lo, hi))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("sweep worker panicked")).collect()
    });

    let mut stats = SweepStats {
        seeds_total: seeds as u64,
        ..SweepStats::default()
    };
    let mut groups = Vec::new();
    for (part_stats, part_groups) in parts {
        stats.merge(&part_stats);
        groups.extend(part_groups);
    }
    debug_assert!(groups.windows(2).all(|w| w[0].seed_index <= w[1].seed_index));
    Ok(SweepOutcome { factors, stats, groups })
}

fn sweep_range<'a>(
    factors: &'a KnitFactors,
    root: &Propagator<'a>,
    lo: usize,
    hi: usize,
) -> (SweepStats, Vec<OracleGroup>) {
    let mut state = RangeSweep {
        factors,
        levels: vec![root.clone(); 5],
        stats: SweepStats::default(),
        groups: Vec::new(),
    };
    for first in lo..hi {
        state.descend(1, first as u64, first);
    }
    (state.stats, state.groups)
}

struct RangeSweep<'a> {
    factors: &'a KnitFactors,
    /// `levels[i]` holds the propagated state with the first `i` images fixed.
    levels: Vec<Propagator<'a>>,
    stats: SweepStats,
    groups: Vec<OracleGroup>,
}

impl<'a> RangeSweep<'a> {
    /// Fixes image number `depth - 1` to `digit` on top of `levels[depth - 1]`.
    fn descend(&mut self, depth: usize, prefix: u64, digit: usize) {
        let base = self.factors.pair_count();
        let (before, after) = self.levels.split_at_mut(depth);
        let current = &mut after[0];
        current.clone_from(&before[depth - 1]);
        let (k, h) = self.factors.seed_cells()[depth - 1];
        let kn = self.factors.k.order();
        let consistent = current.assign(k, h, digit / kn, digit % kn).is_ok() && current.run().is_ok();
        if !consistent {
            self.stats.propagation_rejected += (base as u64).pow(4 - depth as u32);
            return;
        }
        if depth < 4 {
            for next in 0..base {
                self.descend(depth + 1, prefix * base as u64 + next as u64, next);
            }
            return;
        }

        let seed_index = prefix;
        let tables = if self.levels[4].is_complete() {
            vec![self.levels[4].to_table()]
        } else {
            self.stats.underdetermined_seeds += 1;
            let mut found = Vec::new();
            split_cases(&self.levels[4], &mut found);
            found
        };
        if tables.is_empty() {
            self.stats.propagation_rejected += 1;
            return;
        }
        let before = self.groups.len();
        for table in &tables {
            if let Some(group) = build_oracle_group(self.factors, table, seed_index) {
                self.groups.push(group);
            }
        }
        let accepted = (self.groups.len() - before) as u64;
        if accepted == 0 {
            self.stats.axiom_rejected += 1;
        }
        self.stats.groups_accepted += accepted;
    }
}

/// Completes an underdetermined fixpoint by trying every free value for the
/// first open cell, in increasing order.
fn split_cases(state: &Propagator<'_>, found: &mut Vec<CrossingTable>) {
    let Some((k, h)) = state.first_unknown() else {
        found.push(state.to_table());
        return;
    };
    let kn = state.factors().k.order();
    let total = state.factors().pair_count();
    for v in 0..total {
        let (p, q) = (v / kn, v % kn);
        if !state.value_is_free(p, q) {
            continue;
        }
        let mut branch = state.clone();
        if branch.assign(k, h, p, q).is_ok() && branch.run().is_ok() {
            split_cases(&branch, found);
        }
    }
}
