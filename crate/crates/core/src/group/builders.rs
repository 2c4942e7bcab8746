use std::collections::BTreeMap;

use super::ConcreteGroup;

/// Cyclic group of order `n`; element `i` is `g^i`.
pub fn cyclic(n: usize) -> ConcreteGroup {
    assert!(n >= 1);
    let table = (0..n * n).map(|c| ((c / n + c % n) % n) as u32).collect();
    let labels = (0..n).map(|i| format!("g^{i}")).collect();
    let mut g = ConcreteGroup::from_flat(n, table, Some(labels)).expect("cyclic table is a group");
    if n > 1 {
        g.set_generator("g", 1);
    }
    g
}

/// Dihedral group of order `2n` on the normal forms `x^i y^e`, index `2i + e`.
///
/// Generators are registered as `x` (index 2) and `y` (index 1).
pub fn dihedral(n: usize) -> ConcreteGroup {
    assert!(n >= 2);
    let order = 2 * n;
    let mut table = Vec::with_capacity(order * order);
    for a in 0..order {
        let (i, e) = (a / 2, a % 2);
        for b in 0..order {
            let (j, f) = (b / 2, b % 2);
            // y x^j = x^-j y
            let k = if e == 0 { (i + j) % n } else { (i + n - j) % n };
            table.push((2 * k + (e ^ f)) as u32);
        }
    }
    let labels = (0..order)
        .map(|a| match (a / 2, a % 2) {
            (0, 0) => "1".to_string(),
            (0, 1) => "y".to_string(),
            (i, 0) => format!("x^{i}"),
            (i, _) => format!("x^{i}y"),
        })
        .collect();
    let mut g = ConcreteGroup::from_flat(order, table, Some(labels)).expect("dihedral table is a group");
    g.set_generator("x", 2);
    g.set_generator("y", 1);
    g
}

/// Group generated by the given permutations of `0..degree`, with elements
/// listed in lexicographic order of their images (identity first).
pub fn permutation_group(degree: usize, generators: &[Vec<usize>]) -> ConcreteGroup {
    let identity: Vec<usize> = (0..degree).collect();
    let compose = |p: &[usize], q: &[usize]| -> Vec<usize> {
        // apply p first, then q
        p.iter().map(|&i| q[i]).collect()
    };
    let mut found: BTreeMap<Vec<usize>, ()> = BTreeMap::new();
    found.insert(identity.clone(), ());
    let mut frontier = vec![identity];
    while let Some(p) = frontier.pop() {
        for g in generators {
            let next = compose(&p, g);
            if found.insert(next.clone(), ()).is_none() {
                frontier.push(next);
            }
        }
    }
    let elements: Vec<Vec<usize>> = found.into_keys().collect();
    let index: BTreeMap<&[usize], usize> = elements.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
    let order = elements.len();
    let mut table = Vec::with_capacity(order * order);
    for p in &elements {
        for q in &elements {
            table.push(index[compose(p, q).as_slice()] as u32);
        }
    }
    let labels = elements.iter().map(|p| format!("{p:?}")).collect();
    let mut group = ConcreteGroup::from_flat(order, table, Some(labels)).expect("permutation products form a group");
    for (i, g) in generators.iter().enumerate() {
        group.set_generator(format!("p{i}"), index[g.as_slice()]);
    }
    group
}

/// The symmetry group of the regular `n`-gon acting on its vertices.
pub fn dihedral_permutation_group(n: usize) -> ConcreteGroup {
    let rotation: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
    let reflection: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
    permutation_group(n, &[rotation, reflection])
}

/// `G1 x G2` with element `(a, b)` at index `a * |G2| + b`.
pub fn direct_product(g1: &ConcreteGroup, g2: &ConcreteGroup) -> ConcreteGroup {
    let (n1, n2) = (g1.order(), g2.order());
    let order = n1 * n2;
    let mut table = Vec::with_capacity(order * order);
    for a in 0..order {
        for b in 0..order {
            let left = g1.mul(a / n2, b / n2);
            let right = g2.mul(a % n2, b % n2);
            table.push((left * n2 + right) as u32);
        }
    }
    ConcreteGroup::from_flat(order, table, None).expect("direct product of groups is a group")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutation_dihedral_matches_normal_form_dihedral() {
        for n in [3, 4, 5, 9] {
            let p = dihedral_permutation_group(n);
            let d = dihedral(n);
            assert_eq!(p.order(), 2 * n);
            assert_eq!(p.identity(), 0);
            assert_eq!(p.order_profile(), d.order_profile());
        }
    }

    #[test]
    fn direct_product_orders() {
        let g = direct_product(&dihedral(3), &cyclic(5));
        assert_eq!(g.order(), 30);
        assert_eq!(g.identity(), 0);
        assert_eq!(*g.order_profile().keys().max().unwrap(), 15);
    }

    #[test]
    fn cyclic_generator() {
        let c = cyclic(36);
        assert_eq!(c.element_order(c.generator("g").unwrap()), 36);
    }
}
