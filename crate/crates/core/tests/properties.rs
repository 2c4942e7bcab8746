use dpx_core::group::{
    cyclic, dihedral, direct_product, isomorphic, permutation_group, ConcreteGroup, DEFAULT_NODE_BUDGET,
};
use dpx_core::theorem::{biconditional_witness, order_criterion};
use proptest::prelude::*;

fn perm(degree: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..degree).collect::<Vec<_>>()).prop_shuffle()
}

/// Small groups of assorted shapes: permutation groups on up to 5 points,
/// cyclic, dihedral and direct products.
fn small_group() -> impl Strategy<Value = ConcreteGroup> {
    prop_oneof![
        (3usize..=5)
            .prop_flat_map(|d| (Just(d), prop::collection::vec(perm(d), 1..3)))
            .prop_map(|(d, gens)| permutation_group(d, &gens)),
        (1usize..20).prop_map(cyclic),
        (3usize..12).prop_map(dihedral),
        ((1usize..5), (3usize..6)).prop_map(|(a, b)| direct_product(&cyclic(a), &dihedral(b))),
    ]
}

fn group_and_seed() -> impl Strategy<Value = (ConcreteGroup, Vec<usize>)> {
    small_group().prop_flat_map(|g| {
        let n = g.order();
        (Just(g), prop::collection::vec(0..n, 0..3))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn closure_is_idempotent((g, seed) in group_and_seed()) {
        let s = g.closure(&seed);
        let again = g.closure(s.members());
        prop_assert!(again.same_elements(&s));
        prop_assert!(seed.iter().all(|&e| s.contains(e)));
        prop_assert_eq!(g.order() % s.order(), 0);
    }

    #[test]
    fn core_is_the_intersection_of_conjugates((g, seed) in group_and_seed()) {
        let s = g.closure(&seed);
        let core = g.core(&s);
        prop_assert!(core.same_elements(&g.core_naive(&s)));
        prop_assert!(g.is_normal(&core));
        prop_assert!(core.members().iter().all(|&e| s.contains(e)));
        prop_assert!(g.core(&core).same_elements(&core));
        if g.is_normal(&s) {
            prop_assert!(core.same_elements(&s));
        }
    }

    #[test]
    fn centralizer_commutes_with_its_argument((g, seed) in group_and_seed()) {
        let c = g.centralizer(&seed);
        for &e in c.members() {
            for &s in &seed {
                prop_assert_eq!(g.mul(e, s), g.mul(s, e));
            }
        }
        let outside = g.elements().filter(|e| !c.contains(*e));
        for e in outside {
            prop_assert!(seed.iter().any(|&s| g.mul(e, s) != g.mul(s, e)));
        }
        let center = g.centralizer(&g.elements().collect::<Vec<_>>());
        prop_assert!(g.is_normal(&center));
        prop_assert!(center.members().iter().all(|&z| c.contains(z)));
    }

    #[test]
    fn normalizer_contains_and_normalizes((g, seed) in group_and_seed()) {
        let s = g.closure(&seed);
        let nz = g.normalizer(&s);
        prop_assert!(s.members().iter().all(|&e| nz.contains(e)));
        for &h in nz.members() {
            prop_assert!(s.members().iter().all(|&e| s.contains(g.conjugate(e, h))));
        }
        prop_assert_eq!(g.is_normal(&s), nz.order() == g.order());
    }

    #[test]
    fn element_orders_divide_group_order(g in small_group()) {
        let profile = g.order_profile();
        prop_assert_eq!(profile.values().sum::<usize>(), g.order());
        prop_assert_eq!(profile.get(&1).copied(), Some(1));
        for &o in profile.keys() {
            prop_assert_eq!(g.order() % o, 0);
        }
    }

    #[test]
    fn relabelled_groups_are_isomorphic(
        (g, shuffle) in small_group().prop_flat_map(|g| {
            let n = g.order();
            (Just(g), Just((1..n).collect::<Vec<_>>()).prop_shuffle())
        })
    ) {
        // keep the identity at 0, permute the rest
        let mut relabel = vec![0];
        relabel.extend(shuffle);
        let n = g.order();
        let mut back = vec![0; n];
        for (old, &new) in relabel.iter().enumerate() {
            back[new] = old;
        }
        let table: Vec<Vec<usize>> = (0..n)
            .map(|a| (0..n).map(|b| relabel[g.mul(back[a], back[b])]).collect())
            .collect();
        let h = ConcreteGroup::from_table(&table, None).unwrap();
        let map = isomorphic(&g, &h, DEFAULT_NODE_BUDGET).unwrap();
        prop_assert!(map.is_some());
        prop_assert!(g.is_isomorphism(&h, &map.unwrap()));
    }

    #[test]
    fn order_criterion_matches_literal_scan(modulus in 1u64..60, period in 1u64..12, value in 0u64..60) {
        let value = value % modulus;
        prop_assert_eq!(order_criterion(value, modulus, period), biconditional_witness(value, modulus, period).is_none());
    }
}

#[test]
fn cyclic_and_dihedral_of_equal_order_differ() {
    for n in [3usize, 5, 6, 9] {
        let verdict = isomorphic(&cyclic(2 * n), &dihedral(n), DEFAULT_NODE_BUDGET).unwrap();
        assert!(verdict.is_none(), "C_{} vs D_{}", 2 * n, 2 * n);
    }
}
