use std::collections::BTreeSet;

use graph_core::{
    are_substructures_isomorphic, apply_permutation, Fixed, Graph, NodePoset, Permutation,
};
use proptest::prelude::*;
use wl_engine::{
    kwl_l_pooling_joint, kwl_refine, kwl_refine_joint, wl_distinguishes, wl_refine,
    JointRefinementContext, Layers, NodeLabeling,
};

fn build_graph(n: usize, directed: bool, mask: &[bool], edge_feats: bool) -> Graph {
    let mut g = Graph::new(n, directed);
    let mut bit = 0;
    for i in 1..=n {
        for j in i + 1..=n {
            if mask[bit] {
                let (a, b) = if directed && bit % 2 == 1 { (j, i) } else { (i, j) };
                if edge_feats {
                    g.add_edge_with(a, b, vec![Fixed::from_int(((i + j) % 3) as i64)]).unwrap();
                } else {
                    g.add_edge(a, b).unwrap();
                }
            }
            bit += 1;
        }
    }
    g
}

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let m = n * (n - 1) / 2;
        (
            Just(n),
            any::<bool>(),
            proptest::collection::vec(any::<bool>(), m),
            any::<bool>(),
            proptest::option::of(proptest::collection::vec(0i64..3, n)),
        )
            .prop_map(|(n, directed, mask, edge_feats, feats)| {
                let mut g = build_graph(n, directed, &mask, edge_feats);
                if let Some(f) = feats {
                    g.set_node_features(f.into_iter().map(|x| vec![Fixed::from_int(x)]).collect())
                        .unwrap();
                }
                g
            })
    })
}

fn arb_labels(n: usize) -> impl Strategy<Value = Option<NodeLabeling>> {
    proptest::option::of(
        proptest::collection::vec(0i64..3, n)
            .prop_map(|v| v.into_iter().map(|x| vec![x]).collect::<NodeLabeling>()),
    )
}

fn arb_labeled(max_n: usize) -> impl Strategy<Value = (Graph, Option<NodeLabeling>)> {
    arb_graph(max_n).prop_flat_map(|g| {
        let n = g.n();
        (Just(g), arb_labels(n))
    })
}

fn arb_labeled_with_perm(
    max_n: usize,
) -> impl Strategy<Value = (Graph, Option<NodeLabeling>, Permutation)> {
    arb_labeled(max_n).prop_flat_map(|(g, labels)| {
        let n = g.n();
        let ids: Vec<usize> = (1..=n).collect();
        (Just(g), Just(labels), Just(ids).prop_shuffle())
            .prop_map(|(g, labels, map)| (g, labels, Permutation::from_mapping(map).unwrap()))
    })
}

fn arb_marked_pair(
    max_n: usize,
) -> impl Strategy<Value = (Graph, BTreeSet<usize>, Graph, BTreeSet<usize>)> {
    (2..=max_n).prop_flat_map(|n| {
        let m = n * (n - 1) / 2;
        (
            Just(n),
            proptest::collection::vec(any::<bool>(), m),
            proptest::collection::vec(any::<bool>(), m),
            proptest::collection::vec(any::<bool>(), n),
            proptest::collection::vec(any::<bool>(), n),
        )
            .prop_map(|(n, mask1, mask2, keep1, keep2)| {
                let g1 = build_graph(n, false, &mask1, false);
                let g2 = build_graph(n, false, &mask2, false);
                let s1: BTreeSet<usize> = (1..=n).filter(|&u| keep1[u - 1]).collect();
                let s2: BTreeSet<usize> = (1..=n).filter(|&u| keep2[u - 1]).collect();
                (g1, s1, g2, s2)
            })
    })
}

fn permute_labels(labels: &NodeLabeling, p: &Permutation) -> NodeLabeling {
    let mut out = vec![Vec::new(); labels.len()];
    for (u, l) in labels.iter().enumerate() {
        out[p.apply(u + 1) - 1] = l.clone();
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn refinement_never_merges_classes((g, labels) in arb_labeled(7)) {
        let coloring = wl_refine(&g, labels.as_ref(), Layers::Converge).unwrap();
        let rounds = coloring.rounds();
        for t in 1..rounds.len() {
            for u in 0..g.n() {
                for v in u + 1..g.n() {
                    if rounds[t][u] == rounds[t][v] {
                        prop_assert_eq!(rounds[t - 1][u], rounds[t - 1][v]);
                    }
                }
            }
        }
    }

    #[test]
    fn tuple_refinement_never_merges_classes(g in arb_graph(5)) {
        let coloring = kwl_refine(&g, 2).unwrap();
        let rounds = coloring.rounds();
        let count = g.n() * g.n();
        for t in 1..rounds.len() {
            for a in 0..count {
                for b in a + 1..count {
                    if rounds[t][a] == rounds[t][b] {
                        prop_assert_eq!(rounds[t - 1][a], rounds[t - 1][b]);
                    }
                }
            }
        }
    }

    #[test]
    fn separate_runs_are_permutation_equivariant((g, labels, p) in arb_labeled_with_perm(8)) {
        let h = apply_permutation(&g, &p).unwrap();
        let hl = labels.as_ref().map(|l| permute_labels(l, &p));
        let a = wl_refine(&g, labels.as_ref(), Layers::Converge).unwrap();
        let b = wl_refine(&h, hl.as_ref(), Layers::Converge).unwrap();
        prop_assert_eq!(a.rounds().len(), b.rounds().len());
        for t in 0..a.rounds().len() {
            for u in 1..=g.n() {
                prop_assert_eq!(a.rounds()[t][u - 1], b.rounds()[t][p.apply(u) - 1]);
            }
        }
    }

    #[test]
    fn wl_never_separates_isomorphic_marked_graphs((g, labels, p) in arb_labeled_with_perm(7)) {
        let h = apply_permutation(&g, &p).unwrap();
        let hl = labels.as_ref().map(|l| permute_labels(l, &p));
        let members: BTreeSet<usize> = (1..=g.n()).step_by(2).collect();
        let s1 = NodePoset::set_of(members.iter().copied());
        let s2 = NodePoset::set_of(p.apply_set(&members));
        let separated = wl_distinguishes(
            &g, labels.as_ref(), &s1,
            &h, hl.as_ref(), &s2,
            Layers::Converge,
        ).unwrap();
        prop_assert!(!separated);
    }

    #[test]
    fn distinguishing_implies_nonisomorphic((g1, s1, g2, s2) in arb_marked_pair(7)) {
        let p1 = NodePoset::set_of(s1.iter().copied());
        let p2 = NodePoset::set_of(s2.iter().copied());
        let separated = wl_distinguishes(&g1, None, &p1, &g2, None, &p2, Layers::Converge).unwrap();
        if separated {
            prop_assert!(!are_substructures_isomorphic(&p1, &g1, &p2, &g2).unwrap());
        }
    }
}

#[test]
fn identical_inputs_are_never_distinguished() {
    let g = Graph::cycle(6);
    let s = NodePoset::set_of([1, 2]);
    assert!(!wl_distinguishes(&g, None, &s, &g, None, &s, Layers::Converge).unwrap());
}

fn all_masks(bits: usize) -> impl Iterator<Item = Vec<bool>> {
    (0u32..1 << bits).map(move |m| (0..bits).map(|b| m >> b & 1 == 1).collect())
}

fn sampled_masks(bits: usize, count: usize, seed: u64) -> Vec<Vec<bool>> {
    let mut state = seed;
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        let m = state >> 16;
        out.push((0..bits).map(|b| m >> b & 1 == 1).collect());
    }
    out
}

/// Graph-level 1-WL keys, comparable within the population: one joint
/// refinement over every graph, key = multiset of converged node colors.
fn one_wl_graph_keys(graphs: &[Graph]) -> Vec<Vec<u32>> {
    let mut ctx = JointRefinementContext::new();
    for g in graphs {
        ctx.push(g, None).unwrap();
    }
    let colorings = ctx.refine(Layers::Converge);
    graphs
        .iter()
        .zip(&colorings)
        .map(|(g, c)| c.color_multiset(1..=g.n()))
        .collect()
}

fn assert_same_partition(graphs: &[Graph]) {
    let keys = one_wl_graph_keys(graphs);
    let refs: Vec<&Graph> = graphs.iter().collect();
    let two_wl = kwl_refine_joint(&refs, 2).unwrap().graph_colors;
    for i in 0..graphs.len() {
        for j in i + 1..graphs.len() {
            assert_eq!(
                keys[i] == keys[j],
                two_wl[i] == two_wl[j],
                "1-WL and 2-WL disagree on pair ({i}, {j})"
            );
        }
    }
}

#[test]
fn one_wl_matches_two_wl_on_all_small_graphs() {
    for n in 1..=4 {
        let graphs: Vec<Graph> = all_masks(n * (n - 1) / 2)
            .map(|mask| build_graph(n, false, &mask, false))
            .collect();
        assert_same_partition(&graphs);
    }
}

#[test]
fn one_wl_matches_two_wl_on_sampled_larger_graphs() {
    for (n, count) in [(5, 48), (6, 32)] {
        let graphs: Vec<Graph> = sampled_masks(n * (n - 1) / 2, count, n as u64)
            .into_iter()
            .map(|mask| build_graph(n, false, &mask, false))
            .collect();
        assert_same_partition(&graphs);
    }
}

#[test]
fn pooling_preserves_graph_level_distinguishability() {
    for (k, l, n_max, count) in [(2, 1, 7, 36), (3, 1, 5, 12), (3, 2, 5, 12)] {
        let mut graphs = Vec::new();
        for n in 3..=n_max {
            for mask in sampled_masks(n * (n - 1) / 2, count / (n_max - 2), 1000 + n as u64) {
                graphs.push(build_graph(n, false, &mask, false));
            }
        }
        let refs: Vec<&Graph> = graphs.iter().collect();
        let plain = kwl_refine_joint(&refs, k).unwrap().graph_colors;
        let pooled = kwl_l_pooling_joint(&refs, k, l).unwrap().graph_colors;
        for i in 0..graphs.len() {
            for j in i + 1..graphs.len() {
                assert_eq!(
                    plain[i] == plain[j],
                    pooled[i] == pooled[j],
                    "k={k} l={l}: pooling changed distinguishability of pair ({i}, {j})"
                );
            }
        }
    }
}

#[test]
fn identical_runs_reproduce_identical_histories() {
    let g = Graph::undirected_from_edges(6, &[(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (2, 5)]).unwrap();
    let labels: NodeLabeling = (0..6).map(|i| vec![i % 2]).collect();
    let a = wl_refine(&g, Some(&labels), Layers::Converge).unwrap();
    let b = wl_refine(&g, Some(&labels), Layers::Converge).unwrap();
    assert_eq!(a.rounds(), b.rounds());
    assert_eq!(a.converged(), b.converged());
    let ka = kwl_refine(&g, 2).unwrap();
    let kb = kwl_refine(&g, 2).unwrap();
    assert_eq!(ka.rounds(), kb.rounds());
    let ja = wl_engine::kl_wl(&g, 2, 1, None).unwrap();
    let jb = wl_engine::kl_wl(&g, 2, 1, None).unwrap();
    assert_eq!(ja.tuple_colors, jb.tuple_colors);
    assert_eq!(ja.graph_color, jb.graph_color);
}

#[test]
fn csv_export_lists_every_node_and_round() {
    let star = Graph::undirected_from_edges(4, &[(1, 2), (1, 3), (1, 4)]).unwrap();
    let coloring = wl_refine(&star, None, Layers::Converge).unwrap();
    let csv = coloring.to_csv();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "node,round,color");
    assert_eq!(lines.len(), 1 + 4 * coloring.rounds().len());
    assert_eq!(lines[1], "1,0,0");
    assert!(lines.iter().skip(1).all(|l| l.split(',').count() == 3));
    let round1: Vec<&str> = lines[5..9].to_vec();
    let center: u32 = round1[0].split(',').nth(2).unwrap().parse().unwrap();
    let leaf: u32 = round1[1].split(',').nth(2).unwrap().parse().unwrap();
    assert_ne!(center, leaf);
}
