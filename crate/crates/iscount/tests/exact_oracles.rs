mod common;

use common::*;
use iscount::exact::{brute_force_z, brute_force_z_capped, exact_count, exact_z, forest_z};
use iscount::{Error, Graph, WeightedGraph};
use num_bigint::BigUint;
use proptest::prelude::*;

/// Independent sets by direct enumeration of subsets, no Gray code.
fn naive_z(wg: &WeightedGraph) -> BigUint {
    let ids = wg.graph.vertices();
    let n = ids.len();
    let mut total = BigUint::from(0u32);
    for mask in 0u32..1 << n {
        let inside = |i: usize| mask >> i & 1 == 1;
        let independent = wg.graph.edges().iter().all(|&(u, v)| {
            let iu = ids.iter().position(|&x| x == u).unwrap();
            let iv = ids.iter().position(|&x| x == v).unwrap();
            !(inside(iu) && inside(iv))
        });
        if independent {
            let mut term = BigUint::from(1u32);
            for (i, &v) in ids.iter().enumerate() {
                term *= if inside(i) { wg.wp(v) } else { wg.wm(v) };
            }
            total += term;
        }
    }
    total * &wg.multiplier
}

#[test]
fn known_counts() {
    let z = |g: Graph| brute_force_z(&WeightedGraph::unit(g)).unwrap();
    assert_eq!(z(Graph::empty()), BigUint::from(1u32));
    assert_eq!(z(cycle(4)), BigUint::from(7u32));
    assert_eq!(z(cycle(5)), BigUint::from(11u32));
    assert_eq!(z(Graph::edgeless(10)), BigUint::from(1024u32));
    // Petersen graph
    let petersen = Graph::from_edges(
        10,
        &[(1, 2), (2, 3), (3, 4), (4, 5), (1, 5), (1, 6), (2, 7), (3, 8), (4, 9), (5, 10), (6, 8), (8, 10), (7, 10), (7, 9), (6, 9)],
    )
    .unwrap();
    assert_eq!(z(petersen), BigUint::from(76u32));
}

#[test]
fn caps_and_structure_errors() {
    let big = WeightedGraph::unit(Graph::edgeless(20));
    assert!(matches!(brute_force_z_capped(&big, 10), Err(Error::Size(_))));
    assert!(matches!(forest_z(&WeightedGraph::unit(cycle(3))), Err(Error::Structure(_))));
    assert!(matches!(exact_count(&WeightedGraph::unit(cycle(6)), &[]), Err(Error::Structure(_))));
    assert!(matches!(exact_count(&WeightedGraph::unit(cycle(6)), &[9]), Err(Error::UnknownVertex(9))));
}

#[test]
fn exact_z_beyond_brute_force() {
    // ladder P_30 x K_2: Z follows a_k = 2 a_{k-1} + a_{k-2} with a_0 = 1, a_1 = 3
    let n = 30u32;
    let mut e = Vec::new();
    for i in 1..=n {
        e.push((i, i + n));
        if i < n {
            e.push((i, i + 1));
            e.push((i + n, i + n + 1));
        }
    }
    let g = Graph::from_edges(2 * n as usize, &e).unwrap();
    let (mut a, mut b) = (BigUint::from(1u32), BigUint::from(3u32));
    for _ in 1..n {
        let c = &b * 2u32 + &a;
        a = b;
        b = c;
    }
    assert_eq!(exact_z(&WeightedGraph::unit(g)), b);
}

proptest! {
    #[test]
    fn brute_force_matches_naive(wg in arb_weighted(0, 9, 5)) {
        prop_assert_eq!(brute_force_z(&wg).unwrap(), naive_z(&wg));
    }

    #[test]
    fn exact_z_matches_brute_force(wg in arb_weighted(0, 13, 10)) {
        prop_assert_eq!(exact_z(&wg), brute_force_z(&wg).unwrap());
    }

    #[test]
    fn exact_count_with_any_feedback_set(wg in arb_weighted(1, 12, 10), seed in any::<u64>()) {
        // grow a random feedback set until the rest is a forest
        let mut r = rng(seed);
        let mut y = Vec::new();
        let mut rest = wg.graph.clone();
        while !rest.is_forest() {
            use rand::seq::SliceRandom;
            let v = *rest.vertices().choose(&mut r).unwrap();
            y.push(v);
            rest = rest.without(&[v]);
        }
        prop_assert_eq!(exact_count(&wg, &y).unwrap(), brute_force_z(&wg).unwrap());
    }

    #[test]
    fn forest_z_matches(wg in arb_weighted(0, 12, 10)) {
        let mut f = wg.clone();
        // keep only a spanning forest: drop edges closing cycles
        let mut kept = Vec::new();
        let mut probe = Graph::edgeless(wg.graph.order());
        for (u, v) in wg.graph.edges() {
            let next = Graph::from_edges(wg.graph.order(), &[kept.clone(), vec![(u, v)]].concat()).unwrap();
            if next.is_forest() {
                kept.push((u, v));
                probe = next;
            }
        }
        f.graph = probe;
        prop_assert_eq!(forest_z(&f).unwrap(), brute_force_z(&f).unwrap());
    }

    #[test]
    fn disjoint_union_multiplies(a in arb_weighted(0, 6, 5), b in arb_weighted(0, 6, 5)) {
        let shift = a.graph.order() as u32;
        let ids: Vec<u32> = b.graph.vertices().iter().map(|&v| v + shift).collect();
        let edges: Vec<(u32, u32)> = b.graph.edges().iter().map(|&(u, v)| (u + shift, v + shift)).collect();
        let g = a.graph.extend(&ids, &edges).unwrap();
        let mut u = WeightedGraph::unit(g);
        for &v in a.graph.vertices() {
            u.wplus.insert(v, a.wp(v).clone());
            u.wminus.insert(v, a.wm(v).clone());
        }
        for &v in b.graph.vertices() {
            u.wplus.insert(v + shift, b.wp(v).clone());
            u.wminus.insert(v + shift, b.wm(v).clone());
        }
        let mut a1 = a.clone();
        a1.multiplier = BigUint::from(1u32);
        let mut b1 = b.clone();
        b1.multiplier = BigUint::from(1u32);
        prop_assert_eq!(brute_force_z(&u).unwrap(), brute_force_z(&a1).unwrap() * brute_force_z(&b1).unwrap());
    }

    #[test]
    fn monotone_in_weights_and_edges(wg in arb_weighted(1, 9, 5), pick in any::<prop::sample::Index>()) {
        let v = wg.graph.vertices()[pick.index(wg.graph.order())];
        let mut heavier = wg.clone();
        heavier.wplus.insert(v, wg.wp(v) + 1u32);
        prop_assert!(brute_force_z(&heavier).unwrap() > brute_force_z(&wg).unwrap());
        let unit = WeightedGraph::unit(wg.graph.clone());
        if let Some(&(a, b)) = wg.graph.edges().first() {
            let fewer: Vec<_> = wg.graph.edges().into_iter().filter(|&e| e != (a, b)).collect();
            let h = WeightedGraph::unit(Graph::from_edges(wg.graph.order(), &fewer).unwrap());
            prop_assert!(brute_force_z(&h).unwrap() >= brute_force_z(&unit).unwrap());
        }
    }
}
