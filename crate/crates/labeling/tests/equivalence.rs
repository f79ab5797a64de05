//! Cross-construction equivalences: the masked distance vector against the
//! link radius label, Hasse embeddings against set labels and the exact
//! oracle, and pooled subset readouts against marked-set isomorphism.

use std::collections::BTreeSet;

use graph_core::{
    are_substructures_isomorphic, canonical_code, hasse_diagram, CanonicalCode, Graph, NodeId,
    NodePoset,
};
use labeling::{
    distance_encoding, drnl, hasse_embedding, pooled_readout, subset_pooling_distinguishes,
    zero_one, PoolingEngine,
};
use wl_engine::Layers;

fn lcg(state: &mut u64) -> u64 {
    *state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
    *state >> 16
}

fn random_graph(n: usize, state: &mut u64) -> Graph {
    let mut g = Graph::new(n, false);
    for i in 1..=n {
        for j in i + 1..=n {
            if lcg(state) % 2 == 0 {
                g.add_edge(i, j).unwrap();
            }
        }
    }
    g
}

#[test]
fn uncapped_masked_distance_vectors_match_link_radius_labels() {
    let mut state = 7u64;
    for trial in 0..200 {
        let n = 3 + (lcg(&mut state) % 10) as usize;
        let g = random_graph(n, &mut state);
        let x = 1 + (lcg(&mut state) as usize % n);
        let mut y = 1 + (lcg(&mut state) as usize % n);
        if y == x {
            y = x % n + 1;
        }
        let s = NodePoset::set_of([x, y]);
        let radius = drnl(&s, &g, true).unwrap();
        let vectors = distance_encoding(&s, &g, None, true);
        let reachable: Vec<usize> = (1..=n).filter(|&u| radius[u - 1][0] != 0).collect();
        for &i in &reachable {
            for &j in &reachable {
                assert_eq!(
                    radius[i - 1] == radius[j - 1],
                    vectors[i - 1] == vectors[j - 1],
                    "trial {trial}: nodes {i},{j} disagree (radius {:?}/{:?}, vectors {:?}/{:?})",
                    radius[i - 1],
                    radius[j - 1],
                    vectors[i - 1],
                    vectors[j - 1],
                );
            }
        }
    }
}

#[test]
fn hasse_embedding_of_a_set_is_the_zero_one_labeling() {
    let mut state = 11u64;
    for _ in 0..50 {
        let n = 2 + (lcg(&mut state) % 6) as usize;
        let g = random_graph(n, &mut state);
        let size = 1 + (lcg(&mut state) as usize % n.min(5));
        let members: BTreeSet<NodeId> =
            (0..size).map(|_| 1 + (lcg(&mut state) as usize % n)).collect();
        let s = NodePoset::set_of(members.iter().copied());
        assert_eq!(hasse_embedding(&s, &g).unwrap(), zero_one(&s, &g));
    }
}

/// All posets on 1..=m members with relation pairs pointing upward in node
/// order; every iso class appears because some linear extension sorts any
/// poset this way.
fn upward_posets(m: usize) -> Vec<NodePoset> {
    let pairs: Vec<(NodeId, NodeId)> =
        (1..=m).flat_map(|u| (u + 1..=m).map(move |v| (u, v))).collect();
    let mut out = Vec::new();
    for mask in 0u32..1 << pairs.len() {
        let mut rel: BTreeSet<(NodeId, NodeId)> = (1..=m).map(|u| (u, u)).collect();
        for (b, &p) in pairs.iter().enumerate() {
            if mask >> b & 1 == 1 {
                rel.insert(p);
            }
        }
        let transitive = rel.iter().all(|&(u, v)| {
            rel.iter().filter(|&&(w, _)| w == v).all(|&(_, x)| rel.contains(&(u, x)))
        });
        if transitive {
            out.push(NodePoset::new((1..=m).collect(), rel).unwrap());
        }
    }
    out
}

#[test]
fn hasse_labels_separate_exactly_the_nonisomorphic_diagram_nodes() {
    for m in 1..=5 {
        for s in upward_posets(m) {
            let g = Graph::new(m, false);
            let labels = hasse_embedding(&s, &g).unwrap();
            let h = hasse_diagram(&s);
            for u in 1..=m {
                for v in u + 1..=m {
                    let same_type = are_substructures_isomorphic(
                        &NodePoset::set_of([u]),
                        &h,
                        &NodePoset::set_of([v]),
                        &h,
                    )
                    .unwrap();
                    assert_eq!(
                        labels[u - 1] == labels[v - 1],
                        same_type,
                        "poset {:?}: members {u},{v}",
                        s.relation(),
                    );
                }
            }
        }
    }
}

struct Instance {
    iso_key: CanonicalCode,
    readout: Vec<Vec<CanonicalCode>>,
}

fn instance(graph: Graph, members: &[NodeId]) -> Instance {
    let target = NodePoset::set_of(members.iter().copied());
    let iso_key = canonical_code(&target, &graph).unwrap();
    let readout = pooled_readout(&graph, &target, members.len() - 1).unwrap();
    Instance { iso_key, readout }
}

fn leave_one_out_population() -> Vec<Instance> {
    let mut instances = Vec::new();
    for mask in 0u32..64 {
        let mut g = Graph::new(4, false);
        let pairs = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)];
        for (b, &(i, j)) in pairs.iter().enumerate() {
            if mask >> b & 1 == 1 {
                g.add_edge(i, j).unwrap();
            }
        }
        for pair in [[1, 2], [1, 3], [1, 4], [2, 3], [2, 4], [3, 4]] {
            instances.push(instance(g.clone(), &pair));
        }
        for triple in [[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]] {
            instances.push(instance(g.clone(), &triple));
        }
    }
    let mut state = 23u64;
    for _ in 0..24 {
        let g = random_graph(5, &mut state);
        for set in [vec![1, 2], vec![1, 3], vec![2, 5], vec![1, 2, 3], vec![2, 4, 5]] {
            instances.push(instance(g.clone(), &set));
        }
    }
    for _ in 0..12 {
        let g = random_graph(6, &mut state);
        for set in [vec![1, 2], vec![3, 6], vec![1, 2, 3], vec![2, 4, 6]] {
            instances.push(instance(g.clone(), &set));
        }
    }
    instances
}

#[test]
fn pooled_readout_equality_is_marked_set_isomorphism() {
    let instances = leave_one_out_population();
    let mut separations = 0usize;
    let mut ties = 0usize;
    for a in 0..instances.len() {
        for b in a + 1..instances.len() {
            let (x, y) = (&instances[a], &instances[b]);
            let iso = x.iso_key == y.iso_key;
            let pooled_equal = x.readout == y.readout;
            assert_eq!(pooled_equal, iso, "instances {a} and {b} break the equivalence");
            if iso {
                ties += 1;
            } else {
                separations += 1;
                // stronger direction: every cross pair of subset readouts differs
                assert!(
                    x.readout.iter().all(|inner| !y.readout.contains(inner)),
                    "instances {a} and {b}: a shared inner readout on a non-isomorphic pair"
                );
            }
        }
    }
    assert!(ties > 0, "population never repeated an isomorphism class");
    assert!(separations > 0);
}

#[test]
fn wl_pooling_separations_are_sound() {
    // whenever joint refinement separates pooled readouts, the exact engine
    // must separate them too
    let mut state = 31u64;
    let mut checked = 0usize;
    for _ in 0..40 {
        let g1 = random_graph(5, &mut state);
        let g2 = random_graph(5, &mut state);
        let s1 = NodePoset::set_of([1, 2, 4]);
        let s2 = NodePoset::set_of([2, 3, 5]);
        for k in 1..=2 {
            let wl = subset_pooling_distinguishes(
                &g1,
                &s1,
                &g2,
                &s2,
                k,
                PoolingEngine::Wl(Layers::Converge),
            )
            .unwrap();
            if wl {
                let oracle =
                    subset_pooling_distinguishes(&g1, &s1, &g2, &s2, k, PoolingEngine::Oracle)
                        .unwrap();
                assert!(oracle, "refinement separated a pair the exact codes call equal");
                checked += 1;
            }
        }
    }
    assert!(checked > 10, "sample produced too few separations: {checked}");
}
