//! Finite groups given by dense multiplication tables.
//!
//! Elements are the indices `0..order`. Every [`ConcreteGroup`] is validated
//! on construction (Latin square, two-sided identity, inverses, associativity),
//! so the algorithms in this module can assume the group axioms.

mod builders;
mod cayley;
mod iso;

use std::collections::{BTreeMap, VecDeque};

use thiserror::Error;

pub use builders::{cyclic, dihedral, dihedral_permutation_group, direct_product, permutation_group};
pub use cayley::{from_cayley_csv, to_cayley_csv};
pub use iso::{isomorphic, isomorphic_as_factorization, DEFAULT_NODE_BUDGET};

/// Groups up to this order get the full `|G|^3` associativity scan; larger
/// ones fall back to Light's test over a generating set.
pub const EXHAUSTIVE_ASSOCIATIVITY_LIMIT: usize = 1000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("isomorphism search exceeded its budget of {0} nodes")]
    SearchBudgetExceeded(u64),
    #[error("malformed Cayley table file: {0}")]
    Parse(String),
}

/// A finite group realised by its multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConcreteGroup {
    order: usize,
    table: Vec<u32>,
    identity: usize,
    inverse: Vec<usize>,
    labels: Option<Vec<String>>,
    generators: BTreeMap<String, usize>,
}

/// A subgroup, stored as the sorted list of its members together with the
/// elements it was generated from.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subgroup {
    members: Vec<usize>,
    witness_generators: Vec<usize>,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn witness_generators(&self) -> &[usize] {
        &self.witness_generators
    }

    pub fn contains(&self, g: usize) -> bool {
        self.members.binary_search(&g).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn same_elements(&self, other: &Subgroup) -> bool {
        self.members == other.members
    }

    pub fn intersection(&self, other: &Subgroup) -> Vec<usize> {
        self.members.iter().copied().filter(|&g| other.contains(g)).collect()
    }

    fn mask(&self, order: usize) -> Vec<bool> {
        let mut mask = vec![false; order];
        for &g in &self.members {
            mask[g] = true;
        }
        mask
    }
}

/// Outcome of [`ConcreteGroup::recognize_dihedral`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DihedralVerdict {
    Dihedral { rotation: usize, reflection: usize },
    Cyclic { generator: usize },
    Other,
}

impl DihedralVerdict {
    /// Order of the rotation subgroup when the verdict is dihedral.
    pub fn rotation_order(&self, group: &ConcreteGroup) -> Option<usize> {
        match *self {
            DihedralVerdict::Dihedral { rotation, .. } => Some(group.element_order(rotation)),
            _ => None,
        }
    }
}

impl ConcreteGroup {
    /// Validates a square table and returns the group it defines.
    pub fn from_table(table: &[Vec<usize>], labels: Option<Vec<String>>) -> Result<Self, GroupError> {
        let order = table.len();
        let mut flat = Vec::with_capacity(order * order);
        for (row_index, row) in table.iter().enumerate() {
            if row.len() != order {
                return Err(GroupError::NotAGroup(format!(
                    "row {row_index} has {} entries, expected {order}",
                    row.len()
                )));
            }
            for &entry in row {
                if entry >= order {
                    return Err(GroupError::NotAGroup(format!("entry {entry} in row {row_index} is out of range")));
                }
                flat.push(entry as u32);
            }
        }
        Self::from_flat(order, flat, labels)
    }

    /// Same as [`ConcreteGroup::from_table`] for a row-major flat table.
    pub fn from_flat(order: usize, table: Vec<u32>, labels: Option<Vec<String>>) -> Result<Self, GroupError> {
        if order == 0 {
            return Err(GroupError::NotAGroup("empty table".into()));
        }
        if table.len() != order * order {
            return Err(GroupError::NotAGroup(format!(
                "table has {} cells, expected {}",
                table.len(),
                order * order
            )));
        }
        if let Some(labels) = &labels {
            if labels.len() != order {
                return Err(GroupError::NotAGroup(format!("{} labels for {order} elements", labels.len())));
            }
        }
        if let Some(bad) = table.iter().find(|&&v| v as usize >= order) {
            return Err(GroupError::NotAGroup(format!("entry {bad} is out of range")));
        }
        check_latin(order, &table)?;

        let identity = (0..order)
            .find(|&e| (0..order).all(|g| table[e * order + g] as usize == g && table[g * order + e] as usize == g))
            .ok_or_else(|| GroupError::NotAGroup("no two-sided identity".into()))?;

        let mut inverse = vec![usize::MAX; order];
        for g in 0..order {
            let h = (0..order)
                .find(|&h| table[g * order + h] as usize == identity)
                .ok_or_else(|| GroupError::NotAGroup(format!("element {g} has no right inverse")))?;
            if table[h * order + g] as usize != identity {
                return Err(GroupError::NotAGroup(format!("inverse of {g} is not two-sided")));
            }
            inverse[g] = h;
        }

        let group = ConcreteGroup {
            order,
            table,
            identity,
            inverse,
            labels,
            generators: BTreeMap::new(),
        };
        group.check_associativity()?;
        Ok(group)
    }

    fn check_associativity(&self) -> Result<(), GroupError> {
        let n = self.order;
        let witnesses: Vec<usize> = if n <= EXHAUSTIVE_ASSOCIATIVITY_LIMIT {
            (0..n).collect()
        } else {
            self.magma_generating_set()
        };
        for a in 0..n {
            for &b in &witnesses {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Err(GroupError::NotAGroup(format!("({a}*{b})*{c} != {a}*({b}*{c})")));
                    }
                }
            }
        }
        Ok(())
    }

    // Generating set of the table viewed as a magma (associativity not yet known).
    fn magma_generating_set(&self) -> Vec<usize> {
        let n = self.order;
        let mut reached = vec![false; n];
        let mut members: Vec<usize> = Vec::new();
        let mut gens = Vec::new();
        for candidate in 0..n {
            if reached[candidate] {
                continue;
            }
            gens.push(candidate);
            reached[candidate] = true;
            members.push(candidate);
            let mut i = 0;
            while i < members.len() {
                let a = members[i];
                for j in 0..=i {
                    let b = members[j];
                    for p in [self.mul(a, b), self.mul(b, a)] {
                        if !reached[p] {
                            reached[p] = true;
                            members.push(p);
                        }
                    }
                }
                i += 1;
            }
        }
        gens
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn row(&self, a: usize) -> &[u32] {
        &self.table[a * self.order..(a + 1) * self.order]
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, g: usize) -> String {
        match &self.labels {
            Some(labels) => labels[g].clone(),
            None => g.to_string(),
        }
    }

    pub fn generators(&self) -> &BTreeMap<String, usize> {
        &self.generators
    }

    pub fn generator(&self, name: &str) -> Option<usize> {
        self.generators.get(name).copied()
    }

    pub fn set_generator(&mut self, name: impl Into<String>, g: usize) {
        assert!(g < self.order, "generator index out of range");
        self.generators.insert(name.into(), g);
    }

    /// `g^k` for any integer exponent.
    pub fn pow(&self, g: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(g) } else { g };
        let mut exp = k.unsigned_abs();
        let mut acc = self.identity;
        let mut sq = base;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, sq);
            }
            sq = self.mul(sq, sq);
            exp >>= 1;
        }
        acc
    }

    /// `g^h = h^-1 g h`.
    pub fn conjugate(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(self.inv(h), g), h)
    }

    /// `[a, b] = a^-1 b^-1 a b`.
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut k = 1;
        let mut p = g;
        while p != self.identity {
            p = self.mul(p, g);
            k += 1;
        }
        k
    }

    /// Smallest subgroup containing `seed`.
    pub fn closure(&self, seed: &[usize]) -> Subgroup {
        let mut seen = vec![false; self.order];
        let mut members = vec![self.identity];
        seen[self.identity] = true;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(a) = queue.pop_front() {
            for &s in seed {
                let p = self.mul(a, s);
                if !seen[p] {
                    seen[p] = true;
                    members.push(p);
                    queue.push_back(p);
                }
            }
        }
        members.sort_unstable();
        Subgroup {
            members,
            witness_generators: seed.to_vec(),
        }
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup {
            members: self.elements().collect(),
            witness_generators: self.generating_set(),
        }
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup {
            members: vec![self.identity],
            witness_generators: Vec::new(),
        }
    }

    /// Subgroup on an explicit element set; `None` unless the set is closed
    /// under products and contains the identity.
    pub fn subgroup_from_members(&self, members: &[usize]) -> Option<Subgroup> {
        let mut sorted = members.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let mut mask = vec![false; self.order];
        for &g in &sorted {
            mask[g] = true;
        }
        if !mask[self.identity] {
            return None;
        }
        for &a in &sorted {
            for &b in &sorted {
                if !mask[self.mul(a, b)] {
                    return None;
                }
            }
        }
        let mut gens = Vec::new();
        let mut current = self.trivial_subgroup();
        for &g in &sorted {
            if !current.contains(g) {
                gens.push(g);
                current = self.closure(&gens);
            }
        }
        Some(Subgroup {
            members: sorted,
            witness_generators: gens,
        })
    }

    /// Greedy generating set, highest element orders first.
    pub fn generating_set(&self) -> Vec<usize> {
        self.generating_set_within(&self.elements().collect::<Vec<_>>())
    }

    /// Greedy generating set for the subgroup whose members are `members`.
    pub fn generating_set_within(&self, members: &[usize]) -> Vec<usize> {
        let mut by_order: Vec<(usize, usize)> = members.iter().map(|&g| (self.element_order(g), g)).collect();
        by_order.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        let mut gens = Vec::new();
        let mut current = self.trivial_subgroup();
        for (_, g) in by_order {
            if current.order() == members.len() {
                break;
            }
            if !current.contains(g) {
                gens.push(g);
                current = self.closure(&gens);
            }
        }
        gens
    }

    pub fn is_normal(&self, s: &Subgroup) -> bool {
        let mask = s.mask(self.order);
        self.elements()
            .all(|g| s.members.iter().all(|&x| mask[self.conjugate(x, g)]))
    }

    /// Largest normal subgroup of `self` contained in `s`, computed by
    /// shrinking `s` until it is stable under conjugation by a generating set.
    pub fn core(&self, s: &Subgroup) -> Subgroup {
        let gens = self.generating_set();
        let mut mask = s.mask(self.order);
        loop {
            let mut changed = false;
            for x in 0..self.order {
                if mask[x] && !gens.iter().all(|&g| mask[self.conjugate(x, g)] && mask[self.conjugate(x, self.inv(g))]) {
                    mask[x] = false;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        let members: Vec<usize> = (0..self.order).filter(|&x| mask[x]).collect();
        self.subgroup_from_members(&members)
            .expect("intersection of conjugates is a subgroup")
    }

    /// Core as the literal intersection of `g s g^-1` over every element `g`.
    pub fn core_naive(&self, s: &Subgroup) -> Subgroup {
        let original = s.mask(self.order);
        let mut mask = original.clone();
        for g in self.elements() {
            let g_inv = self.inv(g);
            for x in 0..self.order {
                // x lies in g S g^-1 iff g^-1 x g lies in S
                if mask[x] && !original[self.mul(self.mul(g_inv, x), g)] {
                    mask[x] = false;
                }
            }
        }
        let members: Vec<usize> = (0..self.order).filter(|&x| mask[x]).collect();
        self.subgroup_from_members(&members)
            .expect("intersection of subgroups is a subgroup")
    }

    pub fn centralizer(&self, s: &[usize]) -> Subgroup {
        let members: Vec<usize> = self
            .elements()
            .filter(|&g| s.iter().all(|&x| self.mul(g, x) == self.mul(x, g)))
            .collect();
        self.subgroup_from_members(&members)
            .expect("centralizer is a subgroup")
    }

    pub fn normalizer(&self, s: &Subgroup) -> Subgroup {
        let mask = s.mask(self.order);
        let members: Vec<usize> = self
            .elements()
            .filter(|&g| s.members.iter().all(|&x| mask[self.conjugate(x, g)]))
            .collect();
        self.subgroup_from_members(&members)
            .expect("normalizer is a subgroup")
    }

    /// Number of elements of each order.
    pub fn order_profile(&self) -> BTreeMap<usize, usize> {
        let mut profile = BTreeMap::new();
        for g in self.elements() {
            *profile.entry(self.element_order(g)).or_insert(0) += 1;
        }
        profile
    }

    /// Decides whether `s` is cyclic, dihedral of order at least 6, or neither.
    ///
    /// Groups of order 2 and 4 are never reported as dihedral; a Klein
    /// four-group comes back as [`DihedralVerdict::Other`].
    pub fn recognize_dihedral(&self, s: &Subgroup) -> DihedralVerdict {
        let size = s.order();
        let orders: Vec<(usize, usize)> = s.members.iter().map(|&g| (g, self.element_order(g))).collect();
        if let Some(&(g, _)) = orders.iter().find(|&&(_, o)| o == size) {
            return DihedralVerdict::Cyclic { generator: g };
        }
        if size < 6 || !size.is_multiple_of(2) {
            return DihedralVerdict::Other;
        }
        let half = size / 2;
        for &(rotation, _) in orders.iter().filter(|&&(_, o)| o == half) {
            let rotations = self.closure(&[rotation]);
            let rotation_inv = self.inv(rotation);
            let reflection = orders.iter().find(|&&(r, o)| {
                o == 2 && !rotations.contains(r) && self.conjugate(rotation, r) == rotation_inv
            });
            if let Some(&(reflection, _)) = reflection {
                return DihedralVerdict::Dihedral { rotation, reflection };
            }
        }
        DihedralVerdict::Other
    }

    /// Order and centraliser size of every element; both are preserved by
    /// isomorphisms.
    pub(crate) fn element_invariants(&self) -> Vec<(usize, usize)> {
        self.elements()
            .map(|g| {
                let centralizer = self.elements().filter(|&h| self.mul(g, h) == self.mul(h, g)).count();
                (self.element_order(g), centralizer)
            })
            .collect()
    }

    /// Checks that `map` (indexed by elements of `self`) is a bijective
    /// homomorphism onto `other`.
    pub fn is_isomorphism(&self, other: &ConcreteGroup, map: &[usize]) -> bool {
        if map.len() != self.order || other.order != self.order {
            return false;
        }
        let mut hit = vec![false; other.order];
        for &g in map {
            if g >= other.order || hit[g] {
                return false;
            }
            hit[g] = true;
        }
        self.elements()
            .all(|a| self.elements().all(|b| map[self.mul(a, b)] == other.mul(map[a], map[b])))
    }
}

fn check_latin(order: usize, table: &[u32]) -> Result<(), GroupError> {
    let mut seen = vec![usize::MAX; order];
    for r in 0..order {
        for c in 0..order {
            let v = table[r * order + c] as usize;
            if seen[v] == r {
                return Err(GroupError::NotAGroup(format!("row {r} repeats entry {v}")));
            }
            seen[v] = r;
        }
    }
    seen.iter_mut().for_each(|s| *s = usize::MAX);
    for c in 0..order {
        for r in 0..order {
            let v = table[r * order + c] as usize;
            if seen[v] == c {
                return Err(GroupError::NotAGroup(format!("column {c} repeats entry {v}")));
            }
            seen[v] = c;
        }
    }
    Ok(())
}
