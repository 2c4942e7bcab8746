//! Brute-force enumeration of every exact product `X = HK` with `H ~ D_2n`
//! and `K ~ D_2m`, realised as knit (Zappa-Szep) products on the set `H x K`.
//!
//! An exact product is determined by its crossing function
//! `phi(k, h) = (h', k')` where `k h = h' k'`. The sweep tries every image of
//! the four generator pairs `(z,x), (z,y), (w,x), (w,y)`, propagates, and
//! keeps the crossing tables whose induced product on `H x K` is a group.
//! Each survivor is then matched against the parameter-tuple groups.

mod cross;
mod matching;
mod propagate;
mod sweep;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::{dihedral, ConcreteGroup, GroupError, Subgroup};
use crate::theorem::TheoremError;

pub use cross::{cross_validate, CrossReport, SweepReport};
pub use matching::{match_to_theorem, TheoremCatalog, TheoremMatch};
pub use propagate::Schedule;
pub use sweep::{enumerate_exact_products, SweepConfig, SweepOutcome, SweepStats, DEFAULT_SEED_BUDGET};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("seed space of {seeds} exceeds the budget of {budget}")]
    BudgetExceeded { seeds: u128, budget: u64 },
    #[error(transparent)]
    Input(#[from] TheoremError),
    #[error(transparent)]
    Search(#[from] GroupError),
}

/// The canonical copies `H = D_2n` (generators `x`, `y`) and `K = D_2m`
/// (generators `z`, `w`) the oracle works over.
#[derive(Debug, Clone)]
pub struct KnitFactors {
    pub m: u64,
    pub n: u64,
    pub h: ConcreteGroup,
    pub k: ConcreteGroup,
    /// `[x, y]`
    pub h_gens: [usize; 2],
    /// `[z, w]`
    pub k_gens: [usize; 2],
}

impl KnitFactors {
    pub fn new(m: u64, n: u64) -> Self {
        let h = dihedral(n as usize);
        let k = dihedral(m as usize);
        let h_gens = [h.generator("x").unwrap(), h.generator("y").unwrap()];
        let k_gens = [k.generator("x").unwrap(), k.generator("y").unwrap()];
        KnitFactors { m, n, h, k, h_gens, k_gens }
    }

    /// Number of elements of `H x K`, the range of every seed component.
    pub fn pair_count(&self) -> usize {
        self.h.order() * self.k.order()
    }

    pub fn seed_space(&self) -> u128 {
        (self.pair_count() as u128).pow(4)
    }

    /// Seed number `index`, read as four base-`|H||K|` digits for
    /// `phi(z,x), phi(z,y), phi(w,x), phi(w,y)` (most significant first).
    pub fn seed(&self, index: u64) -> CrossingSeed {
        let base = self.pair_count() as u64;
        let kn = self.k.order();
        let digit = |pos: u32| {
            let d = (index / base.pow(3 - pos) % base) as usize;
            (d / kn, d % kn)
        };
        CrossingSeed {
            images: [digit(0), digit(1), digit(2), digit(3)],
        }
    }

    pub fn seed_index(&self, seed: &CrossingSeed) -> u64 {
        let base = self.pair_count() as u64;
        let kn = self.k.order();
        seed.images
            .iter()
            .fold(0, |acc, &(h, k)| acc * base + (h * kn + k) as u64)
    }

    /// The generator pairs `(k, h)` in seed order.
    pub fn seed_cells(&self) -> [(usize, usize); 4] {
        let [x, y] = self.h_gens;
        let [z, w] = self.k_gens;
        [(z, x), (z, y), (w, x), (w, y)]
    }
}

/// Images `(h', k')` of the generator pairs `(z,x), (z,y), (w,x), (w,y)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CrossingSeed {
    pub images: [(usize, usize); 4],
}

/// A total crossing function `K x H -> H x K`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CrossingTable {
    h_order: usize,
    k_order: usize,
    cells: Vec<u32>,
}

impl CrossingTable {
    pub fn get(&self, k: usize, h: usize) -> (usize, usize) {
        let v = self.cells[k * self.h_order + h] as usize;
        (v / self.k_order, v % self.k_order)
    }

    pub fn set(&mut self, k: usize, h: usize, (p, q): (usize, usize)) {
        self.cells[k * self.h_order + h] = (p * self.k_order + q) as u32;
    }

    pub fn seed(&self, factors: &KnitFactors) -> CrossingSeed {
        let cells = factors.seed_cells();
        CrossingSeed {
            images: cells.map(|(k, h)| self.get(k, h)),
        }
    }

    /// Reads the crossing function off a group `X` in which `h_embed[i]` and
    /// `k_embed[j]` are the images of the canonical factor elements `i`, `j`.
    /// Returns `None` if `X` is not the exact product of the two images.
    pub fn from_group(x: &ConcreteGroup, h_embed: &[usize], k_embed: &[usize]) -> Option<Self> {
        let (hn, kn) = (h_embed.len(), k_embed.len());
        if hn * kn != x.order() {
            return None;
        }
        let mut split = vec![u32::MAX; x.order()];
        for (i, &h) in h_embed.iter().enumerate() {
            for (j, &k) in k_embed.iter().enumerate() {
                let g = x.mul(h, k);
                if split[g] != u32::MAX {
                    return None;
                }
                split[g] = (i * kn + j) as u32;
            }
        }
        let mut cells = Vec::with_capacity(hn * kn);
        for &k in k_embed {
            for &h in h_embed {
                cells.push(split[x.mul(k, h)]);
            }
        }
        Some(CrossingTable {
            h_order: hn,
            k_order: kn,
            cells,
        })
    }
}

/// Exact product on the set `H x K`, with `(h, k)` at index `h |K| + k`.
#[derive(Debug, Clone)]
pub struct OracleGroup {
    pub group: ConcreteGroup,
    pub h_embedded: Subgroup,
    pub k_embedded: Subgroup,
    pub source_seed: CrossingSeed,
    pub seed_index: u64,
}

/// Runs the seed through propagation; `None` if it is contradictory or does
/// not determine a unique total table.
pub fn propagate(factors: &KnitFactors, seed: &CrossingSeed) -> Option<CrossingTable> {
    propagate_with(factors, seed, Schedule::Lifo)
}

pub fn propagate_with(factors: &KnitFactors, seed: &CrossingSeed, schedule: Schedule) -> Option<CrossingTable> {
    let mut prop = propagate::Propagator::new(factors, schedule);
    for ((k, h), (p, q)) in factors.seed_cells().into_iter().zip(seed.images) {
        prop.assign(k, h, p, q).ok()?;
    }
    prop.run().ok()?;
    prop.is_complete().then(|| prop.to_table())
}

/// Builds the product `(h1, k1)(h2, k2) = (h1 p, q k2)` with
/// `(p, q) = phi(k1, h2)` and validates it as a group.
pub fn build_oracle_group(factors: &KnitFactors, table: &CrossingTable, seed_index: u64) -> Option<OracleGroup> {
    let (hgrp, kgrp) = (&factors.h, &factors.k);
    let (hn, kn) = (hgrp.order(), kgrp.order());
    let order = hn * kn;
    let mut flat = Vec::with_capacity(order * order);
    for a in 0..order {
        let (h1, k1) = (a / kn, a % kn);
        for b in 0..order {
            let (h2, k2) = (b / kn, b % kn);
            let (p, q) = table.get(k1, h2);
            flat.push((hgrp.mul(h1, p) * kn + kgrp.mul(q, k2)) as u32);
        }
    }
    let mut group = ConcreteGroup::from_flat(order, flat, None).ok()?;
    let [x, y] = factors.h_gens;
    let [z, w] = factors.k_gens;
    for (name, g) in [("x", x * kn), ("y", y * kn), ("z", z), ("w", w)] {
        group.set_generator(name, g);
    }
    let h_embedded = group.closure(&[x * kn, y * kn]);
    let k_embedded = group.closure(&[z, w]);
    Some(OracleGroup {
        source_seed: table.seed(factors),
        group,
        h_embedded,
        k_embedded,
        seed_index,
    })
}
