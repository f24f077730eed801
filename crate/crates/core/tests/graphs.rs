use std::collections::BTreeSet;

use chromagame::graph::{
    canonical_key, chromatic_number, emit_graph6, enumerate_graphs, parse_graph6, Graph,
};
use proptest::prelude::*;

/// Every labelled graph on `n` vertices, by edge mask.
fn labelled(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|v| (0..v).map(move |u| (u, v))).collect();
    (0u64..1 << pairs.len()).map(move |mask| {
        Graph::from_edges(n, pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e)).unwrap()
    })
}

fn labelled_classes(n: usize) -> BTreeSet<String> {
    labelled(n).map(|g| canonical_key(&g).unwrap().0).collect()
}

#[test]
fn enumeration_matches_labelled_dedup() {
    for (n, count) in [(1, 1), (2, 2), (3, 4), (4, 11), (5, 34), (6, 156)] {
        let keys = labelled_classes(n);
        assert_eq!(keys.len(), count, "n={n}");
        let enumerated: BTreeSet<String> =
            enumerate_graphs(n).unwrap().iter().map(|g| canonical_key(g).unwrap().0).collect();
        assert_eq!(enumerated, keys, "n={n}");
    }
}

#[test]
fn order_seven_labelled_dedup() {
    let keys = labelled_classes(7);
    assert_eq!(keys.len(), 1044);
    let enumerated: BTreeSet<String> =
        enumerate_graphs(7).unwrap().iter().map(|g| canonical_key(g).unwrap().0).collect();
    assert_eq!(enumerated, keys);
}

/// Smallest k admitting a proper colouring, by trying all assignments.
fn brute_chromatic(g: &Graph) -> usize {
    let n = g.order();
    let edges = g.edges();
    (0..=n)
        .find(|&k| {
            if n == 0 {
                return true;
            }
            if k == 0 {
                return false;
            }
            (0..k.pow(n as u32)).any(|code| {
                let colour = |v: usize| code / k.pow(v as u32) % k;
                edges.iter().all(|&(u, v)| colour(u) != colour(v))
            })
        })
        .unwrap()
}

#[test]
fn chromatic_number_matches_brute_force() {
    for n in 1..=5 {
        for g in labelled(n) {
            assert_eq!(chromatic_number(&g), brute_chromatic(&g), "{g}");
        }
    }
}

fn arb_graph() -> impl Strategy<Value = Graph> {
    (1usize..=10).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let pairs = (0..n).flat_map(|v| (0..v).map(move |u| (u, v)));
            Graph::from_edges(n, pairs.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e)).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn graph6_round_trips(g in arb_graph()) {
        let text = emit_graph6(&g);
        prop_assert_eq!(parse_graph6(&text).unwrap(), g);
    }

    #[test]
    fn canonical_key_ignores_labels((g, perm) in arb_graph().prop_flat_map(|g| {
        let labels: Vec<usize> = (0..g.order()).collect();
        (Just(g), Just(labels).prop_shuffle())
    })) {
        let h = g.permuted(&perm);
        prop_assert_eq!(canonical_key(&g).unwrap(), canonical_key(&h).unwrap());
        prop_assert_eq!(h.edge_count(), g.edge_count());
    }
}
