use std::collections::BTreeSet;

use itertools::Itertools;

use crate::{Graph, GraphError, NodeId, NodePoset};

/// Bijection on 1..=n. `map[i-1]` is the image of node i.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Permutation {
    map: Vec<NodeId>,
}

impl Permutation {
    pub fn identity(n: usize) -> Permutation {
        Permutation { map: (1..=n).collect() }
    }

    pub fn from_mapping(map: Vec<NodeId>) -> Result<Permutation, GraphError> {
        let n = map.len();
        let mut seen = vec![false; n + 1];
        for &v in &map {
            if v == 0 || v > n || seen[v] {
                return Err(GraphError::NotBijective { n });
            }
            seen[v] = true;
        }
        Ok(Permutation { map })
    }

    pub fn n(&self) -> usize {
        self.map.len()
    }

    pub fn apply(&self, i: NodeId) -> NodeId {
        self.map[i - 1]
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.map.len()];
        for (i, &v) in self.map.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Permutation { map: inv }
    }

    /// self ∘ other: applies `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.n(), other.n());
        Permutation { map: other.map.iter().map(|&v| self.apply(v)).collect() }
    }

    pub fn apply_set(&self, set: &BTreeSet<NodeId>) -> BTreeSet<NodeId> {
        set.iter().map(|&u| self.apply(u)).collect()
    }

    pub fn apply_poset(&self, poset: &NodePoset) -> NodePoset {
        let members = self.apply_set(poset.members());
        let relation = poset
            .relation()
            .iter()
            .map(|&(u, v)| (self.apply(u), self.apply(v)))
            .collect();
        NodePoset::new(members, relation).expect("permutation preserves poset axioms")
    }

    /// All n! permutations in lexicographic order of their mapping.
    pub fn all(n: usize) -> impl Iterator<Item = Permutation> {
        (1..=n).permutations(n).map(|map| Permutation { map })
    }
}

/// Moves node i to p(i): node i's features end up at p(i), edge (i, j)
/// features at (p(i), p(j)).
pub fn apply_permutation(g: &Graph, p: &Permutation) -> Result<Graph, GraphError> {
    if p.n() != g.n() {
        return Err(GraphError::SizeMismatch { left: p.n(), right: g.n() });
    }
    let mut out = Graph::new(g.n(), g.directed());
    let mut features = vec![Vec::new(); g.n()];
    for i in 1..=g.n() {
        features[p.apply(i) - 1] = g.node_feature(i).to_vec();
    }
    out.set_node_features(features)?;
    for (i, j) in g.edges_unique() {
        out.add_edge_with(p.apply(i), p.apply(j), g.edge_feature(i, j).unwrap().to_vec())?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Fixed;

    #[test]
    fn validates_bijectivity() {
        assert!(Permutation::from_mapping(vec![2, 1, 3]).is_ok());
        assert!(matches!(Permutation::from_mapping(vec![1, 1, 3]), Err(GraphError::NotBijective { n: 3 })));
        assert!(Permutation::from_mapping(vec![1, 4, 3]).is_err());
        assert!(Permutation::from_mapping(vec![0, 1]).is_err());
    }

    #[test]
    fn inverse_and_compose_agree() {
        let p = Permutation::from_mapping(vec![3, 1, 2]).unwrap();
        assert_eq!(p.compose(&p.inverse()), Permutation::identity(3));
        assert_eq!(p.inverse().compose(&p), Permutation::identity(3));
        let q = Permutation::from_mapping(vec![2, 1, 3]).unwrap();
        // (q ∘ p)(1): p sends 1 to 3, q keeps 3.
        assert_eq!(q.compose(&p).apply(1), 3);
    }

    #[test]
    fn identity_leaves_graph_unchanged() {
        let g = Graph::cycle(6);
        let h = apply_permutation(&g, &Permutation::identity(6)).unwrap();
        assert_eq!(g, h);
    }

    #[test]
    fn swap_on_two_node_graph_keeps_undirected_edge() {
        let g = Graph::undirected_from_edges(2, &[(1, 2)]).unwrap();
        let p = Permutation::from_mapping(vec![2, 1]).unwrap();
        let h = apply_permutation(&g, &p).unwrap();
        assert!(h.has_edge(2, 1));
        assert_eq!(g, h);
    }

    #[test]
    fn features_travel_with_their_node() {
        let mut g = Graph::directed_from_edges(2, &[(1, 2)]).unwrap();
        g.set_node_features(vec![vec![Fixed::from_int(10)], vec![Fixed::from_int(20)]]).unwrap();
        let p = Permutation::from_mapping(vec![2, 1]).unwrap();
        let h = apply_permutation(&g, &p).unwrap();
        assert_eq!(h.node_feature(2), &[Fixed::from_int(10)]);
        assert!(h.has_edge(2, 1) && !h.has_edge(1, 2));
    }

    #[test]
    fn size_mismatch_is_an_error() {
        let g = Graph::path(3);
        let p = Permutation::identity(2);
        assert!(matches!(apply_permutation(&g, &p), Err(GraphError::SizeMismatch { .. })));
    }

    #[test]
    fn all_permutations_enumerates_factorially_many() {
        assert_eq!(Permutation::all(4).count(), 24);
        let first = Permutation::all(3).next().unwrap();
        assert_eq!(first, Permutation::identity(3));
    }
}
