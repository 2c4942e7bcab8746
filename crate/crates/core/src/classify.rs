//! Classification reports: parameter tuples, isomorphism classes and
//! factorization classes for one `(m, n)`, optionally with the oracle
//! cross-check attached.

use std::collections::BTreeMap;
use std::fmt::Write;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::group::{isomorphic, isomorphic_as_factorization, ConcreteGroup, GroupError, Subgroup};
use crate::oracle::{cross_validate, CrossReport, OracleError, SweepConfig, TheoremCatalog};
use crate::theorem::{divisors, stratum_counts, structural_checks, verify_cores, verify_exact_product, ParameterTuple};

/// Items split into equivalence classes. Pairs the search could not decide
/// within budget are listed in `undecided` and never merged.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Partition {
    pub cells: Vec<Vec<usize>>,
    pub undecided: Vec<(usize, usize)>,
}

impl Partition {
    pub fn cell_of(&self, item: usize) -> Option<usize> {
        self.cells.iter().position(|c| c.contains(&item))
    }
}

/// Greedy partition: each item joins the first existing cell (same
/// fingerprint) whose representative it is equivalent to, else opens a new
/// cell. Candidate representatives are compared in parallel.
pub fn partition_by<K, F, E>(count: usize, fingerprint: F, equivalent: E) -> Partition
where
    K: Ord,
    F: Fn(usize) -> K,
    E: Fn(usize, usize) -> Result<bool, GroupError> + Sync,
{
    let mut partition = Partition::default();
    let mut buckets: BTreeMap<K, Vec<usize>> = BTreeMap::new();
    for item in 0..count {
        let bucket = buckets.entry(fingerprint(item)).or_default();
        let reps: Vec<(usize, usize)> = bucket.iter().map(|&cell| (cell, partition.cells[cell][0])).collect();
        let verdicts: Vec<Result<bool, GroupError>> = reps.par_iter().map(|&(_, rep)| equivalent(rep, item)).collect();
        match verdicts.iter().position(|v| matches!(v, Ok(true))) {
            Some(pos) => partition.cells[reps[pos].0].push(item),
            None => {
                for (&(_, rep), verdict) in reps.iter().zip(&verdicts) {
                    if verdict.is_err() {
                        partition.undecided.push((rep, item));
                    }
                }
                bucket.push(partition.cells.len());
                partition.cells.push(vec![item]);
            }
        }
    }
    partition
}

/// Partition by abstract group isomorphism, bucketed by order profile.
pub fn partition_by_isomorphism(groups: &[&ConcreteGroup], budget: u64) -> Partition {
    let profiles: Vec<Vec<(usize, usize)>> = groups.iter().map(|g| g.order_profile().into_iter().collect()).collect();
    partition_by(
        groups.len(),
        |i| (groups[i].order(), profiles[i].clone()),
        |a, b| isomorphic(groups[a], groups[b], budget).map(|m| m.is_some()),
    )
}

/// Invariant of an exact product `(G, H, K)` under factorization-preserving
/// isomorphisms: order profile plus the core orders of the largest cyclic
/// subgroups of `H` and `K`.
pub fn factorization_fingerprint(g: &ConcreteGroup, h: &Subgroup, k: &Subgroup) -> (Vec<(usize, usize)>, usize, usize) {
    let core_of_rotations = |s: &Subgroup| {
        let top = s.members().iter().copied().max_by_key(|&e| (g.element_order(e), usize::MAX - e));
        top.map(|e| g.core(&g.closure(&[e])).order()).unwrap_or(1)
    };
    (g.order_profile().into_iter().collect(), core_of_rotations(h), core_of_rotations(k))
}

/// Partition of exact products by factorization-preserving isomorphism.
pub fn partition_by_factorization(items: &[(&ConcreteGroup, &Subgroup, &Subgroup)], budget: u64) -> Partition {
    let prints: Vec<_> = items.iter().map(|&(g, h, k)| factorization_fingerprint(g, h, k)).collect();
    partition_by(
        items.len(),
        |i| prints[i].clone(),
        |a, b| {
            let (ga, ha, ka) = items[a];
            let (gb, hb, kb) = items[b];
            isomorphic_as_factorization(ga, (ha, ka), gb, (hb, kb), budget).map(|m| m.is_some())
        },
    )
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TupleVerdict {
    pub tuple: ParameterTuple,
    pub order: usize,
    pub exact_product: bool,
    pub cores: bool,
    pub structural: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub m: u64,
    pub n: u64,
    pub tuples: Vec<TupleVerdict>,
    /// Tuple count per stratum, keyed `"m1,n1"`.
    pub strata: BTreeMap<String, usize>,
    /// Cells of tuple indices under abstract isomorphism.
    pub iso_classes: Partition,
    /// Cells of tuple indices under factorization-preserving isomorphism.
    pub factorization_classes: Partition,
    pub oracle: Option<CrossReport>,
    /// Wall-clock milliseconds per phase.
    pub timing: BTreeMap<String, u64>,
}

#[derive(Debug, Clone, Copy)]
pub struct ReportOptions {
    pub with_oracle: bool,
    pub sweep: SweepConfig,
}

/// Builds, verifies and classifies every admissible tuple for `(m, n)`.
pub fn classify(m: u64, n: u64, options: &ReportOptions) -> Result<ClassificationReport, OracleError> {
    let mut timing = BTreeMap::new();
    let clock = Instant::now();
    let catalog = TheoremCatalog::build(m, n)?;
    timing.insert("construct".to_string(), clock.elapsed().as_millis() as u64);

    let clock = Instant::now();
    let tuples: Vec<TupleVerdict> = catalog
        .groups
        .iter()
        .map(|g| TupleVerdict {
            tuple: g.tuple,
            order: g.group.order(),
            exact_product: verify_exact_product(g).passed,
            cores: verify_cores(g).passed,
            structural: structural_checks(g).iter().all(|c| c.passed),
        })
        .collect();
    timing.insert("verify".to_string(), clock.elapsed().as_millis() as u64);

    let clock = Instant::now();
    let budget = options.sweep.iso_budget;
    let plain: Vec<&ConcreteGroup> = catalog.groups.iter().map(|g| &g.group).collect();
    let iso_classes = partition_by_isomorphism(&plain, budget);
    let items: Vec<_> = catalog.groups.iter().map(|g| (&g.group, &g.h, &g.k)).collect();
    let factorization_classes = partition_by_factorization(&items, budget);
    timing.insert("classify".to_string(), clock.elapsed().as_millis() as u64);

    let oracle = if options.with_oracle {
        let clock = Instant::now();
        let report = cross_validate(m, n, &options.sweep)?;
        timing.insert("oracle".to_string(), clock.elapsed().as_millis() as u64);
        Some(report)
    } else {
        None
    };

    let list: Vec<ParameterTuple> = tuples.iter().map(|t| t.tuple).collect();
    let strata = stratum_counts(m, n, &list)
        .into_iter()
        .map(|((m1, n1), c)| (format!("{m1},{n1}"), c))
        .collect();
    Ok(ClassificationReport {
        m,
        n,
        tuples,
        strata,
        iso_classes,
        factorization_classes,
        oracle,
        timing,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Markdown,
}

pub fn emit_report(report: &ClassificationReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report serializes");
            s.push('\n');
            s
        }
        ReportFormat::Markdown => markdown(report),
    }
}

fn markdown(report: &ClassificationReport) -> String {
    let (m, n) = (report.m, report.n);
    let mut out = String::new();
    writeln!(out, "# Exact products of D_{} and D_{}\n", 2 * n, 2 * m).unwrap();
    writeln!(out, "Tuples: {}", report.tuples.len()).unwrap();
    writeln!(out, "Isomorphism classes: {}", report.iso_classes.cells.len()).unwrap();
    writeln!(out, "Factorization classes: {}", report.factorization_classes.cells.len()).unwrap();
    let undecided = report.iso_classes.undecided.len() + report.factorization_classes.undecided.len();
    writeln!(out, "Undecided pairs: {undecided}\n").unwrap();

    writeln!(out, "## Tuples per stratum (rows m1, columns n1)\n").unwrap();
    let n1s = divisors(n);
    let header: Vec<String> = n1s.iter().map(|d| d.to_string()).collect();
    writeln!(out, "| m1 \\ n1 | {} |", header.join(" | ")).unwrap();
    writeln!(out, "|---|{}", "---|".repeat(n1s.len())).unwrap();
    for m1 in divisors(m) {
        let row: Vec<String> = n1s
            .iter()
            .map(|n1| report.strata.get(&format!("{m1},{n1}")).copied().unwrap_or(0).to_string())
            .collect();
        writeln!(out, "| {m1} | {} |", row.join(" | ")).unwrap();
    }

    let failing: Vec<&TupleVerdict> = report
        .tuples
        .iter()
        .filter(|t| !(t.exact_product && t.cores && t.structural))
        .collect();
    writeln!(out, "\n## Verification\n").unwrap();
    writeln!(out, "{} of {} tuples pass every check.", report.tuples.len() - failing.len(), report.tuples.len())
        .unwrap();
    for t in failing {
        writeln!(out, "- FAIL {}", t.tuple).unwrap();
    }

    if let Some(oracle) = &report.oracle {
        let s = &oracle.sweep;
        writeln!(out, "\n## Oracle cross-check\n").unwrap();
        writeln!(out, "| seeds | propagation rejected | axiom rejected | groups | classes | completeness failures | soundness failures |").unwrap();
        writeln!(out, "|---|---|---|---|---|---|---|").unwrap();
        writeln!(
            out,
            "| {} | {} | {} | {} | {} | {} | {} |",
            s.seeds_total,
            s.propagation_rejected,
            s.axiom_rejected,
            s.groups_accepted,
            s.classes_as_factorizations,
            s.completeness_failures,
            s.soundness_failures
        )
        .unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, dihedral, direct_product};
    use crate::theorem::{construct_group, ParameterTuple};

    fn options() -> ReportOptions {
        ReportOptions {
            with_oracle: false,
            sweep: SweepConfig::default(),
        }
    }

    #[test]
    fn single_group_is_one_cell() {
        let g = dihedral(3);
        let p = partition_by_isomorphism(&[&g], 1000);
        assert_eq!(p.cells, vec![vec![0]]);
    }

    #[test]
    fn direct_product_and_cyclic_are_separated() {
        let d = construct_group(&ParameterTuple::zero(3, 3, 1, 1)).unwrap();
        let c = cyclic(36);
        let p = partition_by_isomorphism(&[&d.group, &c], 1_000_000);
        assert_eq!(p.cells, vec![vec![0], vec![1]]);
        assert!(p.undecided.is_empty());
    }

    #[test]
    fn budget_failures_are_reported_not_merged() {
        let a = direct_product(&dihedral(3), &dihedral(3));
        let b = construct_group(&ParameterTuple::zero(3, 3, 1, 1)).unwrap().group;
        let p = partition_by_isomorphism(&[&a, &b], 1);
        assert_eq!(p.cells.len(), 2);
        assert_eq!(p.undecided, vec![(0, 1)]);
    }

    #[test]
    fn report_for_three_three() {
        let report = classify(3, 3, &options()).unwrap();
        assert_eq!(report.tuples.len(), 28);
        assert_eq!(report.strata["1,1"], 16);
        assert_eq!(report.strata["1,3"], 6);
        assert_eq!(report.strata["3,1"], 6);
        assert_eq!(report.strata["3,3"], 0);
        for partition in [&report.iso_classes, &report.factorization_classes] {
            let mut all: Vec<usize> = partition.cells.concat();
            all.sort_unstable();
            assert_eq!(all, (0..28).collect::<Vec<_>>());
        }
        // factorization classes refine isomorphism classes
        for cell in &report.factorization_classes.cells {
            let iso = report.iso_classes.cell_of(cell[0]);
            assert!(cell.iter().all(|&i| report.iso_classes.cell_of(i) == iso));
        }
        let json = emit_report(&report, ReportFormat::Json);
        assert_eq!(json, emit_report(&report, ReportFormat::Json));
        let back: ClassificationReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, report);
        let md = emit_report(&report, ReportFormat::Markdown);
        assert!(md.contains("| 1 | 16 | 6 |"));
        assert!(md.contains("| 3 | 6 | 0 |"));
    }

    #[test]
    fn empty_report_is_still_a_document() {
        let report = ClassificationReport {
            m: 3,
            n: 3,
            tuples: Vec::new(),
            strata: BTreeMap::new(),
            iso_classes: Partition::default(),
            factorization_classes: Partition::default(),
            oracle: None,
            timing: BTreeMap::new(),
        };
        let json = emit_report(&report, ReportFormat::Json);
        assert!(serde_json::from_str::<ClassificationReport>(&json).is_ok());
        let md = emit_report(&report, ReportFormat::Markdown);
        assert!(md.contains("Tuples: 0"));
        assert!(md.contains("0 of 0 tuples pass"));
    }
}
