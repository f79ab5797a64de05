//! Exhaustive and sampled graph populations the audits quantify over.
//!
//! Exhaustive enumerations dedup bitmask-generated graphs by canonical code
//! and keep first-seen order, so the population is deterministic. Sampling is
//! seeded ChaCha and never silently overlaps the exhaustive regime.

use graph_core::{canonical_code, CanonicalCode, Graph, NodeId, NodePoset, Permutation};
use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;

/// All unordered node pairs of 1..=n, lexicographic.
fn undirected_slots(n: usize) -> Vec<(NodeId, NodeId)> {
    (1..=n).tuple_combinations().collect()
}

/// All ordered node pairs (i, j), i != j, lexicographic.
fn directed_slots(n: usize) -> Vec<(NodeId, NodeId)> {
    (1..=n).cartesian_product(1..=n).filter(|(i, j)| i != j).collect()
}

fn from_mask(n: usize, slots: &[(NodeId, NodeId)], mask: u64, directed: bool) -> Graph {
    let mut g = Graph::new(n, directed);
    for (bit, &(i, j)) in slots.iter().enumerate() {
        if mask & (1 << bit) != 0 {
            g.add_edge(i, j).expect("slots are distinct non-loops");
        }
    }
    g
}

fn dedup_by_code_par(graphs: Vec<Graph>) -> Vec<Graph> {
    use rayon::prelude::*;
    let coded: Vec<(CanonicalCode, Graph)> = graphs
        .into_par_iter()
        .map(|g| {
            let code = canonical_code(&NodePoset::set_of([]), &g).expect("within oracle bound");
            (code, g)
        })
        .collect();
    let mut seen: BTreeSet<CanonicalCode> = BTreeSet::new();
    let mut out = Vec::new();
    for (code, g) in coded {
        if seen.insert(code) {
            out.push(g);
        }
    }
    out
}

fn dedup_by_code(graphs: impl Iterator<Item = Graph>) -> Vec<Graph> {
    let mut seen: BTreeSet<CanonicalCode> = BTreeSet::new();
    let mut out = Vec::new();
    for g in graphs {
        let code = canonical_code(&NodePoset::set_of([]), &g).expect("within oracle bound");
        if seen.insert(code) {
            out.push(g);
        }
    }
    out
}

/// Every undirected graph on n nodes up to isomorphism, first-seen order.
pub fn undirected_classes(n: usize) -> Vec<Graph> {
    assert!((1..=6).contains(&n), "exhaustive undirected enumeration capped at n=6");
    let slots = undirected_slots(n);
    dedup_by_code((0..1u64 << slots.len()).map(|mask| from_mask(n, &slots, mask, false)))
}

/// Every directed graph on n nodes up to isomorphism, first-seen order.
pub fn directed_classes(n: usize) -> Vec<Graph> {
    assert!((1..=4).contains(&n), "exhaustive directed enumeration capped at n=4");
    let slots = directed_slots(n);
    dedup_by_code((0..1u64 << slots.len()).map(|mask| from_mask(n, &slots, mask, true)))
}

pub fn is_connected(g: &Graph) -> bool {
    g.bfs_distances(&[1]).iter().skip(1).all(|d| d.is_some())
}

/// Connected undirected classes on n nodes. Above the mask-enumeration cap
/// this grows each connected (n-1)-class by one node attached with every
/// nonempty neighbor mask; every connected graph keeps a non-cut vertex, so
/// the augmentation reaches every class.
pub fn connected_classes(n: usize) -> Vec<Graph> {
    assert!((1..=8).contains(&n), "connected enumeration capped at n=8");
    if n <= 6 {
        return undirected_classes(n).into_iter().filter(is_connected).collect();
    }
    let smaller = connected_classes(n - 1);
    let candidates: Vec<Graph> = smaller
        .iter()
        .flat_map(|g| {
            (1u64..1 << (n - 1)).map(move |mask| {
                let mut grown = Graph::new(n, false);
                for (i, j) in g.edges_unique() {
                    grown.add_edge(i, j).expect("copied edge");
                }
                for v in 1..n {
                    if mask >> (v - 1) & 1 == 1 {
                        grown.add_edge(v, n).expect("fresh node");
                    }
                }
                grown
            })
        })
        .collect();
    dedup_by_code_par(candidates)
}

/// One G(n, p) draw; p in percent to keep the call sites integer-only.
pub fn sample_undirected(n: usize, p_percent: u32, rng: &mut ChaCha8Rng) -> Graph {
    let mut g = Graph::new(n, false);
    for (i, j) in undirected_slots(n) {
        if rng.gen_range(0..100) < p_percent {
            g.add_edge(i, j).expect("distinct slots");
        }
    }
    g
}

pub fn sample_directed(n: usize, p_percent: u32, rng: &mut ChaCha8Rng) -> Graph {
    let mut g = Graph::new(n, true);
    for (i, j) in directed_slots(n) {
        if rng.gen_range(0..100) < p_percent {
            g.add_edge(i, j).expect("distinct slots");
        }
    }
    g
}

/// A uniformly random perfect matching on n nodes; n must be even.
pub fn random_perfect_matching(n: usize, rng: &mut ChaCha8Rng) -> Graph {
    assert!(n % 2 == 0, "perfect matching needs even n");
    let mut nodes: Vec<NodeId> = (1..=n).collect();
    nodes.shuffle(rng);
    let mut g = Graph::new(n, false);
    for pair in nodes.chunks(2) {
        g.add_edge(pair[0], pair[1]).expect("disjoint pairs");
    }
    g
}

/// All size-k subsets of 1..=n as sorted member vectors.
pub fn k_subsets(n: usize, k: usize) -> Vec<Vec<NodeId>> {
    (1..=n).combinations(k).collect()
}

/// A uniformly random relabeling of 1..=n.
pub fn random_relabeling(n: usize, rng: &mut ChaCha8Rng) -> Permutation {
    let mut map: Vec<NodeId> = (1..=n).collect();
    map.shuffle(rng);
    Permutation::from_mapping(map).expect("shuffled identity stays bijective")
}

/// Every partial order over the given members: subsets of strict pairs,
/// closed by the poset constructor's own validation. Rejection keeps exactly
/// the reflexive, antisymmetric, transitive relations.
pub fn posets_on(members: &[NodeId]) -> Vec<NodePoset> {
    let member_set: BTreeSet<NodeId> = members.iter().copied().collect();
    assert!(member_set.len() <= 3, "poset enumeration capped at 3 members");
    let strict: Vec<(NodeId, NodeId)> = members
        .iter()
        .copied()
        .cartesian_product(members.iter().copied())
        .filter(|(u, v)| u != v)
        .collect();
    let reflexive: BTreeSet<(NodeId, NodeId)> = members.iter().map(|&u| (u, u)).collect();
    let mut out = Vec::new();
    for mask in 0..1u64 << strict.len() {
        let mut relation = reflexive.clone();
        for (bit, &pair) in strict.iter().enumerate() {
            if mask & (1 << bit) != 0 {
                relation.insert(pair);
            }
        }
        if let Ok(p) = NodePoset::new(member_set.clone(), relation) {
            out.push(p);
        }
    }
    out
}
