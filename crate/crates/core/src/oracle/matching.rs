use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::OracleGroup;
use crate::group::ConcreteGroup;
use crate::theorem::{
    admissible_tuples, check_conditions, construct_group, relation_checks, ExactProductGroup, NormalForm,
    ParameterTuple, TheoremError,
};

/// Every admissible tuple for `(m, n)` together with its constructed group.
#[derive(Debug, Clone)]
pub struct TheoremCatalog {
    pub m: u64,
    pub n: u64,
    pub groups: Vec<ExactProductGroup>,
    index: BTreeMap<ParameterTuple, usize>,
}

impl TheoremCatalog {
    pub fn build(m: u64, n: u64) -> Result<Self, TheoremError> {
        let groups = admissible_tuples(m, n)?
            .iter()
            .map(construct_group)
            .collect::<Result<Vec<_>, _>>()?;
        let index = groups.iter().enumerate().map(|(i, g)| (g.tuple, i)).collect();
        Ok(TheoremCatalog { m, n, groups, index })
    }

    pub fn get(&self, tuple: &ParameterTuple) -> Option<&ExactProductGroup> {
        self.index.get(tuple).map(|&i| &self.groups[i])
    }

    pub fn position(&self, tuple: &ParameterTuple) -> Option<usize> {
        self.index.get(tuple).copied()
    }

    pub fn tuples(&self) -> impl Iterator<Item = &ParameterTuple> {
        self.groups.iter().map(|g| &g.tuple)
    }
}

/// A parameter tuple recovered from an oracle group, with the generators
/// that satisfy its presentation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremMatch {
    pub tuple: ParameterTuple,
    pub x: usize,
    pub y: usize,
    pub z: usize,
    pub w: usize,
}

fn elements_of_order(g: &ConcreteGroup, members: &[usize], order: usize) -> Vec<usize> {
    members.iter().copied().filter(|&e| g.element_order(e) == order).collect()
}

/// Searches generator quadruples `x, y in H`, `z, w in K` (rotations of
/// order `n`, `m` and reflections) for one under which the group satisfies
/// the presentation of an admissible tuple verbatim. The map
/// `x^i z^j y^e w^d` from the catalog group is then checked to be an
/// isomorphism.
pub fn match_to_theorem(og: &OracleGroup, catalog: &TheoremCatalog) -> Option<TheoremMatch> {
    let g = &og.group;
    let (m, n) = (catalog.m, catalog.n);
    let xs = elements_of_order(g, og.h_embedded.members(), n as usize);
    let ys = elements_of_order(g, og.h_embedded.members(), 2);
    let zs = elements_of_order(g, og.k_embedded.members(), m as usize);
    let ws = elements_of_order(g, og.k_embedded.members(), 2);
    let (&x0, &z0) = (xs.first()?, zs.first()?);

    // <x> and <z> are the unique rotation subgroups, so the cores do not
    // depend on the chosen generators.
    let n1 = n / g.core(&g.closure(&[x0])).order() as u64;
    let m1 = m / g.core(&g.closure(&[z0])).order() as u64;
    let (q, p) = (m / m1, n / n1);

    for &x in &xs {
        for &z in &zs {
            if g.commutator(x, z) != g.identity() {
                continue;
            }
            // x^i z^j -> (i, j)
            let mut split = vec![None; g.order()];
            for i in 0..n {
                let xi = g.pow(x, i as i64);
                for j in 0..m {
                    split[g.mul(xi, g.pow(z, j as i64))] = Some((i, j));
                }
            }
            let residues = |e: usize| -> Option<(u64, u64)> {
                let (i, j) = split[e]?;
                (i % n1 == 0 && j % m1 == 0).then_some(((i / n1) % p, (j / m1) % q))
            };
            for &y in &ys {
                let Some((r, a)) = residues(g.commutator(z, y)) else { continue };
                for &w in &ws {
                    let Some((s, b)) = residues(g.commutator(x, w)) else { continue };
                    let Some((t, c)) = residues(g.commutator(y, w)) else { continue };
                    let tuple = ParameterTuple { m, n, m1, n1, a, b, c, r, s, t };
                    if !check_conditions(&tuple).map(|rep| rep.passed).unwrap_or(false) {
                        continue;
                    }
                    if !relation_checks(g, [x, y, z, w], &tuple).iter().all(|(_, ok)| *ok) {
                        continue;
                    }
                    let Some(model) = catalog.get(&tuple) else { continue };
                    if carries_model(model, g, [x, y, z, w]) {
                        return Some(TheoremMatch { tuple, x, y, z, w });
                    }
                }
            }
        }
    }
    None
}

/// Whether `x^i z^j y^e w^d -> X^i Z^j Y^e W^d` is an isomorphism from the
/// catalog group onto `target`.
fn carries_model(model: &ExactProductGroup, target: &ConcreteGroup, [x, y, z, w]: [usize; 4]) -> bool {
    let map: Vec<usize> = model
        .group
        .elements()
        .map(|v| {
            let NormalForm { i, j, e, d } = model.normal_form(v);
            let xz = target.mul(target.pow(x, i as i64), target.pow(z, j as i64));
            let yw = target.mul(target.pow(y, e as i64), target.pow(w, d as i64));
            target.mul(xz, yw)
        })
        .collect();
    model.group.is_isomorphism(target, &map)
}
