use dpx_core::classify::{classify, ReportOptions};
use dpx_core::group::{isomorphic, isomorphic_as_factorization, DEFAULT_NODE_BUDGET};
use dpx_core::oracle::{enumerate_exact_products, match_to_theorem, SweepConfig, TheoremCatalog};
use dpx_core::theorem::{admissible_tuples, construct_group, ParameterTuple};

fn config(workers: usize) -> SweepConfig {
    SweepConfig {
        workers,
        ..SweepConfig::default()
    }
}

#[test]
fn oracle_groups_are_exact_products_with_commuting_rotations() {
    for (m, n) in [(3, 3), (3, 5), (5, 3)] {
        let outcome = enumerate_exact_products(m, n, &config(1)).unwrap();
        let catalog = TheoremCatalog::build(m, n).unwrap();
        assert!(!outcome.groups.is_empty());
        for og in &outcome.groups {
            let g = &og.group;
            assert_eq!(g.order() as u64, 4 * m * n);
            assert_eq!(og.h_embedded.intersection(&og.k_embedded), vec![g.identity()]);
            assert_eq!(og.h_embedded.order() * og.k_embedded.order(), g.order());

            let mt = match_to_theorem(og, &catalog).expect("every oracle group matches a tuple");
            assert_eq!(g.commutator(mt.x, mt.z), g.identity());
            // and for every choice of rotations, not only the matched one
            let rotations = |s: &dpx_core::group::Subgroup, d: u64| -> Vec<usize> {
                s.members().iter().copied().filter(|&e| g.element_order(e) as u64 == d).collect()
            };
            for x in rotations(&og.h_embedded, n) {
                for z in rotations(&og.k_embedded, m) {
                    assert_eq!(g.commutator(x, z), g.identity(), "seed {}", og.seed_index);
                }
            }
        }
    }
}

#[test]
fn direct_product_seed_matches_the_zero_tuple() {
    let outcome = enumerate_exact_products(3, 3, &config(1)).unwrap();
    let catalog = TheoremCatalog::build(3, 3).unwrap();
    let flip = outcome
        .groups
        .iter()
        .find(|og| og.source_seed.images.iter().zip(outcome.factors.seed_cells()).all(|(&(p, q), (k, h))| (p, q) == (h, k)))
        .expect("the direct product is among the oracle groups");
    let mt = match_to_theorem(flip, &catalog).unwrap();
    assert_eq!(mt.tuple, ParameterTuple::zero(3, 3, 1, 1));
}

#[test]
fn parallel_sweeps_agree_with_serial() {
    let serial = enumerate_exact_products(3, 5, &config(1)).unwrap();
    for workers in [2, 3, 7] {
        let par = enumerate_exact_products(3, 5, &config(workers)).unwrap();
        assert_eq!(par.stats, serial.stats);
        let a: Vec<_> = serial.groups.iter().map(|g| (g.seed_index, g.source_seed)).collect();
        let b: Vec<_> = par.groups.iter().map(|g| (g.seed_index, g.source_seed)).collect();
        assert_eq!(a, b);
    }
}

#[test]
fn swapped_tuples_give_the_same_factorization_with_roles_exchanged() {
    for (m, n) in [(3, 3), (3, 5), (5, 3), (3, 9)] {
        for t in admissible_tuples(m, n).unwrap() {
            let g = construct_group(&t).unwrap();
            let s = construct_group(&t.swap_factors()).unwrap();
            let iso = isomorphic_as_factorization(&g.group, (&g.h, &g.k), &s.group, (&s.k, &s.h), DEFAULT_NODE_BUDGET)
                .unwrap();
            assert!(iso.is_some(), "{t}");
        }
    }
}

#[test]
fn reports_for_swapped_degrees_have_swapped_strata() {
    let options = ReportOptions {
        with_oracle: false,
        sweep: config(1),
    };
    let a = classify(3, 5, &options).unwrap();
    let b = classify(5, 3, &options).unwrap();
    for (key, count) in &a.strata {
        let (m1, n1) = key.split_once(',').unwrap();
        assert_eq!(b.strata[&format!("{n1},{m1}")], *count, "stratum {key}");
    }
    assert_eq!(a.iso_classes.cells.len(), b.iso_classes.cells.len());
    assert_eq!(a.factorization_classes.cells.len(), b.factorization_classes.cells.len());
}

#[test]
fn one_three_stratum_b_one_and_b_two_are_isomorphic() {
    let b1 = construct_group(&ParameterTuple::from_assignments(3, 3, "m1=1,n1=3,a=1,b=1,c=0").unwrap()).unwrap();
    let b2 = construct_group(&ParameterTuple::from_assignments(3, 3, "m1=1,n1=3,a=1,b=2,c=0").unwrap()).unwrap();
    let map = isomorphic(&b1.group, &b2.group, DEFAULT_NODE_BUDGET).unwrap();
    assert!(map.is_some());
}
