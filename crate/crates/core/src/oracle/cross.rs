//! Cross-validation of the oracle sweep against the parameter-tuple groups.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{enumerate_exact_products, match_to_theorem, OracleError, SweepConfig, TheoremCatalog, TheoremMatch};
use crate::classify::{factorization_fingerprint, partition_by_factorization};
use crate::group::isomorphic_as_factorization;
use crate::theorem::ParameterTuple;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub m: u64,
    pub n: u64,
    pub seeds_total: u64,
    pub propagation_rejected: u64,
    pub axiom_rejected: u64,
    pub underdetermined_seeds: u64,
    pub groups_accepted: u64,
    /// Accepted groups equal (as factorizations) to an earlier one.
    pub duplicates: u64,
    pub classes_as_factorizations: u64,
    /// Oracle groups matching no parameter tuple.
    pub completeness_failures: u64,
    /// Parameter tuples whose group is absent from the oracle output.
    pub soundness_failures: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossReport {
    pub sweep: SweepReport,
    pub theorem_tuples: usize,
    pub theorem_factorization_classes: usize,
    /// Seed indices of the oracle groups with no matching tuple.
    pub unmatched_seeds: Vec<u64>,
    /// Tuples whose group was not found among the oracle groups.
    pub uncovered_tuples: Vec<ParameterTuple>,
    /// Tuples recovered verbatim from at least one oracle group.
    pub matched_tuples: usize,
    /// Isomorphism questions left open by the search budget.
    pub undecided_pairs: usize,
    pub class_tallies_equal: bool,
}

impl CrossReport {
    pub fn passed(&self) -> bool {
        self.sweep.completeness_failures == 0
            && self.sweep.soundness_failures == 0
            && self.undecided_pairs == 0
            && self.class_tallies_equal
    }
}

fn with_pool<T: Send>(workers: usize, job: impl FnOnce() -> T + Send) -> T {
    match rayon::ThreadPoolBuilder::new().num_threads(workers.max(1)).build() {
        Ok(pool) => pool.install(job),
        Err(_) => job(),
    }
}

/// Sweeps every seed for `(m, n)`, matches each accepted group to a tuple,
/// and checks that every tuple's group was found.
pub fn cross_validate(m: u64, n: u64, config: &SweepConfig) -> Result<CrossReport, OracleError> {
    let catalog = TheoremCatalog::build(m, n)?;
    let outcome = enumerate_exact_products(m, n, config)?;
    with_pool(config.workers, || compare(&catalog, outcome, config))
}

fn compare(
    catalog: &TheoremCatalog,
    outcome: super::SweepOutcome,
    config: &SweepConfig,
) -> Result<CrossReport, OracleError> {
    let budget = config.iso_budget;
    let groups = &outcome.groups;

    let matches: Vec<Option<TheoremMatch>> = groups.par_iter().map(|og| match_to_theorem(og, catalog)).collect();
    let unmatched_seeds: Vec<u64> = groups
        .iter()
        .zip(&matches)
        .filter(|(_, mt)| mt.is_none())
        .map(|(og, _)| og.seed_index)
        .collect();

    let oracle_items: Vec<_> = groups.iter().map(|og| (&og.group, &og.h_embedded, &og.k_embedded)).collect();
    let oracle_classes = partition_by_factorization(&oracle_items, budget);
    let theorem_items: Vec<_> = catalog.groups.iter().map(|g| (&g.group, &g.h, &g.k)).collect();
    let theorem_classes = partition_by_factorization(&theorem_items, budget);

    let mut hit = vec![false; catalog.groups.len()];
    for mt in matches.iter().flatten() {
        if let Some(i) = catalog.position(&mt.tuple) {
            hit[i] = true;
        }
    }
    let matched_tuples = hit.iter().filter(|&&h| h).count();

    // A tuple not recovered verbatim still counts as covered when its group is
    // a factorization-preserving image of some oracle group.
    let mut undecided = oracle_classes.undecided.len() + theorem_classes.undecided.len();
    let reps: Vec<usize> = oracle_classes.cells.iter().map(|c| c[0]).collect();
    let rep_prints: Vec<_> = reps
        .iter()
        .map(|&r| factorization_fingerprint(oracle_items[r].0, oracle_items[r].1, oracle_items[r].2))
        .collect();
    let mut uncovered_tuples = Vec::new();
    for (i, g) in catalog.groups.iter().enumerate() {
        if hit[i] {
            continue;
        }
        let print = factorization_fingerprint(&g.group, &g.h, &g.k);
        let verdicts: Vec<_> = reps
            .par_iter()
            .zip(&rep_prints)
            .filter(|(_, p)| **p == print)
            .map(|(&r, _)| {
                let (og, oh, ok) = oracle_items[r];
                isomorphic_as_factorization(&g.group, (&g.h, &g.k), og, (oh, ok), budget)
            })
            .collect();
        if verdicts.iter().any(|v| matches!(v, Ok(Some(_)))) {
            continue;
        }
        undecided += verdicts.iter().filter(|v| v.is_err()).count();
        uncovered_tuples.push(g.tuple);
    }

    let stats = outcome.stats;
    let classes = oracle_classes.cells.len();
    let sweep = SweepReport {
        m: catalog.m,
        n: catalog.n,
        seeds_total: stats.seeds_total,
        propagation_rejected: stats.propagation_rejected,
        axiom_rejected: stats.axiom_rejected,
        underdetermined_seeds: stats.underdetermined_seeds,
        groups_accepted: stats.groups_accepted,
        duplicates: stats.groups_accepted - classes as u64,
        classes_as_factorizations: classes as u64,
        completeness_failures: unmatched_seeds.len() as u64,
        soundness_failures: uncovered_tuples.len() as u64,
    };
    Ok(CrossReport {
        sweep,
        theorem_tuples: catalog.groups.len(),
        theorem_factorization_classes: theorem_classes.cells.len(),
        unmatched_seeds,
        uncovered_tuples,
        matched_tuples,
        undecided_pairs: undecided,
        class_tallies_equal: classes == theorem_classes.cells.len(),
    })
}
