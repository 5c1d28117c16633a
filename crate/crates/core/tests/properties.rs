#![allow(clippy::needless_range_loop)]

use distlab_core::canon::{canonical_form, canonical_labeling};
use distlab_core::distance::{
    all_pairs_distances, diameter, k_distance, two_distance, ExtDiameter,
};
use distlab_core::graph::Graph;
use proptest::prelude::*;

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect();
        let len = pairs.len();
        proptest::collection::vec(any::<bool>(), len).prop_map(move |bits| {
            let edges: Vec<_> = pairs
                .iter()
                .zip(&bits)
                .filter(|(_, &b)| b)
                .map(|(&e, _)| e)
                .collect();
            Graph::from_edge_list(n, &edges).unwrap()
        })
    })
}

fn graph_and_perm(max_n: usize) -> impl Strategy<Value = (Graph, Vec<usize>)> {
    graph(max_n).prop_flat_map(|g| {
        let n = g.n();
        (Just(g), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
    })
}

/// Floyd-Warshall, as an independent distance oracle.
fn floyd(g: &Graph) -> Vec<Vec<Option<usize>>> {
    let n = g.n();
    let mut d: Vec<Vec<Option<usize>>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        Some(0)
                    } else {
                        g.has_edge(i, j).then_some(1)
                    }
                })
                .collect()
        })
        .collect();
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if let (Some(a), Some(b)) = (d[i][k], d[k][j]) {
                    if d[i][j].is_none_or(|c| a + b < c) {
                        d[i][j] = Some(a + b);
                    }
                }
            }
        }
    }
    d
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn canonical_form_ignores_labels((g, perm) in graph_and_perm(10)) {
        let h = g.permuted(&perm);
        prop_assert_eq!(canonical_form(&g), canonical_form(&h));
        let (form, lab) = canonical_labeling(&h);
        prop_assert_eq!(h.permuted(&lab), form.into_graph());
    }

    #[test]
    fn distances_match_floyd(g in graph(16)) {
        let dm = all_pairs_distances(&g);
        let fl = floyd(&g);
        for i in 0..g.n() {
            for j in 0..g.n() {
                prop_assert_eq!(dm.get(i, j), fl[i][j]);
            }
        }
    }

    #[test]
    fn distance_powers_partition_pairs(g in graph(14)) {
        let n = g.n();
        let fl = floyd(&g);
        for k in 1..n.max(2) {
            let p = k_distance(&g, k).unwrap();
            for i in 0..n {
                for j in 0..n {
                    prop_assert_eq!(p.has_edge(i, j), i != j && fl[i][j] == Some(k));
                }
            }
        }
        prop_assert_eq!(two_distance(&g), k_distance(&g, 2).unwrap());
    }

    #[test]
    fn diameter_matches_floyd(g in graph(14)) {
        let fl = floyd(&g);
        let expect = fl.iter().flatten().try_fold(0usize, |m, d| d.map(|x| m.max(x)));
        let got = match diameter(&g) {
            ExtDiameter::Finite(d) => Some(d as usize),
            ExtDiameter::Infinite => None,
        };
        prop_assert_eq!(got, expect);
    }
}
