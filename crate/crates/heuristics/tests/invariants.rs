use graph_core::{apply_permutation, Fixed, Graph, NodeId, Permutation};
use heuristics::{adamic_adar, common_neighbors, heuristic_refinement_check, resource_allocation};
use proptest::prelude::*;

fn build_graph(n: usize, directed: bool, mask: &[bool], orient: &[bool]) -> Graph {
    let mut edges = Vec::new();
    let mut k = 0;
    for i in 1..=n {
        for j in i + 1..=n {
            if mask[k] {
                edges.push(if directed && orient[k] { (j, i) } else { (i, j) });
            }
            k += 1;
        }
    }
    if directed {
        Graph::directed_from_edges(n, &edges).unwrap()
    } else {
        Graph::undirected_from_edges(n, &edges).unwrap()
    }
}

fn arb_graph(max_n: usize, directed: bool) -> impl Strategy<Value = Graph> {
    (2..=max_n).prop_flat_map(move |n| {
        let bits = n * (n - 1) / 2;
        (
            proptest::collection::vec(any::<bool>(), bits),
            proptest::collection::vec(any::<bool>(), bits),
        )
            .prop_map(move |(mask, orient)| build_graph(n, directed, &mask, &orient))
    })
}

fn arb_instance(
    max_n: usize,
    directed: bool,
) -> impl Strategy<Value = (Graph, NodeId, NodeId, Permutation)> {
    arb_graph(max_n, directed).prop_flat_map(|g| {
        let n = g.n();
        let perm = Just((1..=n).collect::<Vec<NodeId>>())
            .prop_shuffle()
            .prop_map(|m| Permutation::from_mapping(m).unwrap());
        ((Just(g), 1..=n, 1..=n), perm)
            .prop_filter("distinct endpoints", |((_, i, j), _)| i != j)
            .prop_map(|((g, i, j), p)| (g, i, j, p))
    })
}

fn aa_value(g: &Graph, i: NodeId, j: NodeId) -> Option<Fixed> {
    adamic_adar(g, i, j).ok().map(|s| s.value)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scores_survive_relabeling((g, i, j, p) in arb_instance(9, false)) {
        let h = apply_permutation(&g, &p).unwrap();
        let (pi, pj) = (p.apply(i), p.apply(j));
        prop_assert_eq!(common_neighbors(&g, i, j).unwrap(), common_neighbors(&h, pi, pj).unwrap());
        prop_assert_eq!(aa_value(&g, i, j), aa_value(&h, pi, pj));
        prop_assert_eq!(
            resource_allocation(&g, i, j).unwrap().value,
            resource_allocation(&h, pi, pj).unwrap().value
        );
    }

    #[test]
    fn directed_scores_survive_relabeling((g, i, j, p) in arb_instance(8, true)) {
        let h = apply_permutation(&g, &p).unwrap();
        let (pi, pj) = (p.apply(i), p.apply(j));
        prop_assert_eq!(common_neighbors(&g, i, j).unwrap(), common_neighbors(&h, pi, pj).unwrap());
        prop_assert_eq!(aa_value(&g, i, j), aa_value(&h, pi, pj));
        prop_assert_eq!(
            resource_allocation(&g, i, j).unwrap().value,
            resource_allocation(&h, pi, pj).unwrap().value
        );
    }

    #[test]
    fn undirected_scores_ignore_endpoint_order((g, i, j, _p) in arb_instance(9, false)) {
        prop_assert_eq!(common_neighbors(&g, i, j).unwrap(), common_neighbors(&g, j, i).unwrap());
        prop_assert_eq!(aa_value(&g, i, j), aa_value(&g, j, i));
        prop_assert_eq!(
            resource_allocation(&g, i, j).unwrap().value,
            resource_allocation(&g, j, i).unwrap().value
        );
    }
}

fn lcg(state: &mut u64) -> u64 {
    *state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
    *state >> 33
}

fn random_graph(n: usize, seed: u64, percent: u64) -> Graph {
    let mut state = seed;
    let mut edges = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            if lcg(&mut state) % 100 < percent {
                edges.push((i, j));
            }
        }
    }
    Graph::undirected_from_edges(n, &edges).unwrap()
}

fn random_pairs(n: usize, count: usize, seed: u64) -> Vec<(NodeId, NodeId)> {
    let mut state = seed;
    let mut seen = std::collections::BTreeSet::new();
    while seen.len() < count {
        let i = (lcg(&mut state) % n as u64) as NodeId + 1;
        let j = (lcg(&mut state) % n as u64) as NodeId + 1;
        if i < j {
            seen.insert((i, j));
        }
    }
    seen.into_iter().collect()
}

/// Labeled color ties must imply equal scores over tens of thousands of pair
/// comparisons on random 40-node graphs.
#[test]
fn randomized_pair_sweep_finds_no_violations() {
    let mut comparisons = 0;
    for (seed, h) in [(11, 2), (12, 2), (13, 3)] {
        let g = random_graph(40, seed, 15);
        let pairs = random_pairs(40, 142, seed ^ 0xabcd);
        let report = heuristic_refinement_check(&g, &pairs, h).unwrap();
        assert!(report.consistent(), "h={h} seed={seed}: {:?}", report.violations);
        comparisons += report.comparisons;
    }
    assert!(comparisons >= 10_000, "only {comparisons} comparisons");
}

/// On a cycle every rotation is an automorphism, so pairs at equal distance
/// tie under labels; the implication is exercised non-vacuously. Unlabeled
/// colors collapse the whole vertex-transitive graph, so count mismatches
/// surface as witnesses.
#[test]
fn cycle_distance_classes_tie_with_equal_scores() {
    let c20 = Graph::cycle(20);
    let pairs: Vec<_> = (1..=20usize).flat_map(|i| (i + 1..=20).map(move |j| (i, j))).collect();
    for h in [2, 3] {
        let report = heuristic_refinement_check(&c20, &pairs, h).unwrap();
        assert!(report.consistent(), "h={h}: {:?}", report.violations);
        assert!(report.labeled_ties > 0);
        assert!(!report.unlabeled_failure_witnesses.is_empty());
    }
}
