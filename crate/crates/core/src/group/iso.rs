//! Isomorphism search by generator-image backtracking.
//!
//! A generating set of the source group is fixed (highest element orders
//! first). Each generator is mapped in turn to a target element with the same
//! order and centraliser size; after every choice the partial map is extended
//! over the subgroup generated so far and abandoned at the first clash.

use super::{ConcreteGroup, GroupError, Subgroup};

pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

/// Returns an isomorphism `g1 -> g2` (as an element map indexed by `g1`), or
/// `None` when the groups are not isomorphic.
pub fn isomorphic(g1: &ConcreteGroup, g2: &ConcreteGroup, budget: u64) -> Result<Option<Vec<usize>>, GroupError> {
    if g1.order() != g2.order() || g1.order_profile() != g2.order_profile() {
        return Ok(None);
    }
    let gens = g1.generating_set();
    let targets: Vec<Vec<usize>> = vec![g2.elements().collect(); gens.len()];
    Search::new(g1, g2, gens, targets, budget).run()
}

/// Returns an isomorphism `g1 -> g2` carrying `h1` onto `h2` and `k1` onto
/// `k2`, if one exists.
pub fn isomorphic_as_factorization(
    g1: &ConcreteGroup,
    (h1, k1): (&Subgroup, &Subgroup),
    g2: &ConcreteGroup,
    (h2, k2): (&Subgroup, &Subgroup),
    budget: u64,
) -> Result<Option<Vec<usize>>, GroupError> {
    if g1.order() != g2.order() || h1.order() != h2.order() || k1.order() != k2.order() {
        return Ok(None);
    }
    if g1.order_profile() != g2.order_profile() {
        return Ok(None);
    }
    let h_gens = g1.generating_set_within(h1.members());
    let k_gens = g1.generating_set_within(k1.members());
    let mut targets = vec![h2.members().to_vec(); h_gens.len()];
    targets.extend(std::iter::repeat_n(k2.members().to_vec(), k_gens.len()));
    let mut gens = h_gens;
    gens.extend(k_gens);
    if g1.closure(&gens).order() != g1.order() {
        // The two factors do not generate the group, so this is not a factorization.
        return Ok(None);
    }
    Search::new(g1, g2, gens, targets, budget).run()
}

struct Search<'a> {
    source: &'a ConcreteGroup,
    target: &'a ConcreteGroup,
    gens: Vec<usize>,
    candidates: Vec<Vec<usize>>,
    budget: u64,
    nodes: u64,
}

#[derive(Clone)]
struct Partial {
    map: Vec<usize>,
    used: Vec<bool>,
    domain: Vec<usize>,
}

impl<'a> Search<'a> {
    fn new(
        source: &'a ConcreteGroup,
        target: &'a ConcreteGroup,
        gens: Vec<usize>,
        targets: Vec<Vec<usize>>,
        budget: u64,
    ) -> Self {
        let inv_source = source.element_invariants();
        let inv_target = target.element_invariants();
        let candidates = gens
            .iter()
            .zip(targets)
            .map(|(&g, pool)| pool.into_iter().filter(|&t| inv_target[t] == inv_source[g]).collect())
            .collect();
        Search {
            source,
            target,
            gens,
            candidates,
            budget,
            nodes: 0,
        }
    }

    fn run(mut self) -> Result<Option<Vec<usize>>, GroupError> {
        let n = self.source.order();
        let mut start = Partial {
            map: vec![usize::MAX; n],
            used: vec![false; n],
            domain: vec![self.source.identity()],
        };
        start.map[self.source.identity()] = self.target.identity();
        start.used[self.target.identity()] = true;
        let found = self.descend(start, 0)?;
        Ok(found.filter(|map| self.source.is_isomorphism(self.target, map)))
    }

    fn descend(&mut self, partial: Partial, depth: usize) -> Result<Option<Vec<usize>>, GroupError> {
        if depth == self.gens.len() {
            return Ok((partial.domain.len() == self.source.order()).then_some(partial.map));
        }
        let g = self.gens[depth];
        for i in 0..self.candidates[depth].len() {
            let image = self.candidates[depth][i];
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(GroupError::SearchBudgetExceeded(self.budget));
            }
            if let Some(next) = self.extend(&partial, depth, g, image) {
                if let Some(map) = self.descend(next, depth + 1)? {
                    return Ok(Some(map));
                }
            }
        }
        Ok(None)
    }

    /// Extends `partial` to the subgroup generated by `gens[..=depth]` with
    /// `gens[depth] -> image`; `None` on a clash.
    fn extend(&self, partial: &Partial, depth: usize, g: usize, image: usize) -> Option<Partial> {
        let (src, dst) = (self.source, self.target);
        let mut next = partial.clone();
        match next.map[g] {
            usize::MAX => {}
            existing => return (existing == image).then_some(next),
        }
        let active = &self.gens[..=depth];
        let mut images: Vec<usize> = active.iter().map(|&a| partial.map[a]).collect();
        images[depth] = image;
        let mut cursor = 0;
        while cursor < next.domain.len() {
            let a = next.domain[cursor];
            let fa = next.map[a];
            for (&s, &fs) in active.iter().zip(&images) {
                let b = src.mul(a, s);
                let fb = dst.mul(fa, fs);
                match next.map[b] {
                    usize::MAX => {
                        if next.used[fb] {
                            return None;
                        }
                        next.map[b] = fb;
                        next.used[fb] = true;
                        next.domain.push(b);
                    }
                    current if current != fb => return None,
                    _ => {}
                }
            }
            cursor += 1;
        }
        Some(next)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, dihedral, dihedral_permutation_group, direct_product};

    #[test]
    fn group_is_isomorphic_to_itself() {
        let g = direct_product(&dihedral(3), &dihedral(5));
        let map = isomorphic(&g, &g, DEFAULT_NODE_BUDGET).unwrap().unwrap();
        assert!(g.is_isomorphism(&g, &map));
    }

    #[test]
    fn normal_form_and_permutation_dihedral_agree() {
        for n in [3, 5, 7] {
            let a = dihedral(n);
            let b = dihedral_permutation_group(n);
            assert!(isomorphic(&a, &b, DEFAULT_NODE_BUDGET).unwrap().is_some());
        }
    }

    #[test]
    fn non_isomorphic_groups_of_equal_order() {
        assert!(isomorphic(&cyclic(6), &dihedral(3), DEFAULT_NODE_BUDGET).unwrap().is_none());
        let a = direct_product(&dihedral(3), &cyclic(3));
        let b = direct_product(&cyclic(3), &dihedral(3));
        assert!(isomorphic(&a, &b, DEFAULT_NODE_BUDGET).unwrap().is_some());
        // D18 and D6 x C3 share order 18 but are not isomorphic.
        assert!(isomorphic(&dihedral(9), &a, DEFAULT_NODE_BUDGET).unwrap().is_none());
    }

    #[test]
    fn exhausted_budget_is_reported() {
        let g = direct_product(&dihedral(3), &dihedral(3));
        let err = isomorphic(&g, &g, 1).unwrap_err();
        assert_eq!(err, GroupError::SearchBudgetExceeded(1));
    }

    #[test]
    fn factorization_preserving_maps_respect_factor_orders() {
        let d6 = dihedral(3);
        let d10 = dihedral(5);
        let g = direct_product(&d6, &d10);
        let h = g.closure(&[2 * 10, 10]);
        let k = g.closure(&[2, 1]);
        assert_eq!((h.order(), k.order()), (6, 10));
        let same = isomorphic_as_factorization(&g, (&h, &k), &g, (&h, &k), DEFAULT_NODE_BUDGET).unwrap();
        assert!(same.is_some());
        let swapped = isomorphic_as_factorization(&g, (&h, &k), &g, (&k, &h), DEFAULT_NODE_BUDGET).unwrap();
        assert!(swapped.is_none());
    }
}
