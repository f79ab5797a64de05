use std::collections::BTreeSet;

use crate::{Fixed, Graph, GraphError, NodeId, NodePoset, Permutation};

/// Hypergraph as an n×m incidence structure with features on both sides.
/// Node and hyperedge feature vectors share one dimension so the incidence
/// graph can carry both in the same slots.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Hypergraph {
    n: usize,
    hyperedges: Vec<BTreeSet<NodeId>>,
    node_features: Vec<Vec<Fixed>>,
    hyperedge_features: Vec<Vec<Fixed>>,
    feature_dim: usize,
}

impl Hypergraph {
    pub fn new(n: usize, hyperedges: Vec<BTreeSet<NodeId>>) -> Result<Hypergraph, GraphError> {
        for (idx, e) in hyperedges.iter().enumerate() {
            if e.is_empty() {
                return Err(GraphError::EmptyHyperedge { index: idx + 1 });
            }
            if let Some(&bad) = e.iter().find(|&&u| u == 0 || u > n) {
                return Err(GraphError::NodeOutOfRange { node: bad, n });
            }
        }
        let m = hyperedges.len();
        Ok(Hypergraph {
            n,
            hyperedges,
            node_features: vec![Vec::new(); n],
            hyperedge_features: vec![Vec::new(); m],
            feature_dim: 0,
        })
    }

    pub fn set_features(
        &mut self,
        node_features: Vec<Vec<Fixed>>,
        hyperedge_features: Vec<Vec<Fixed>>,
    ) -> Result<(), GraphError> {
        if node_features.len() != self.n {
            return Err(GraphError::SizeMismatch { left: node_features.len(), right: self.n });
        }
        if hyperedge_features.len() != self.m() {
            return Err(GraphError::SizeMismatch { left: hyperedge_features.len(), right: self.m() });
        }
        let dim = node_features
            .first()
            .or(hyperedge_features.first())
            .map_or(0, Vec::len);
        for f in node_features.iter().chain(&hyperedge_features) {
            if f.len() != dim {
                return Err(GraphError::FeatureDim { expected: dim, got: f.len() });
            }
        }
        self.feature_dim = dim;
        self.node_features = node_features;
        self.hyperedge_features = hyperedge_features;
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.hyperedges.len()
    }

    /// H_{i,j} for 1-based node i and hyperedge j.
    pub fn incidence(&self, i: NodeId, j: usize) -> bool {
        self.hyperedges[j - 1].contains(&i)
    }

    pub fn hyperedge(&self, j: usize) -> &BTreeSet<NodeId> {
        &self.hyperedges[j - 1]
    }

    pub fn node_feature(&self, i: NodeId) -> &[Fixed] {
        &self.node_features[i - 1]
    }

    pub fn hyperedge_feature(&self, j: usize) -> &[Fixed] {
        &self.hyperedge_features[j - 1]
    }

    pub fn feature_dim(&self) -> usize {
        self.feature_dim
    }

    /// Image under a node permutation and a hyperedge permutation:
    /// the image has H_{p1(i), p2(j)} = H_{i,j}, features moving accordingly.
    pub fn apply_hyper_permutation(
        &self,
        p1: &Permutation,
        p2: &Permutation,
    ) -> Result<Hypergraph, GraphError> {
        if p1.n() != self.n {
            return Err(GraphError::SizeMismatch { left: p1.n(), right: self.n });
        }
        if p2.n() != self.m() {
            return Err(GraphError::SizeMismatch { left: p2.n(), right: self.m() });
        }
        let mut hyperedges = vec![BTreeSet::new(); self.m()];
        let mut hyperedge_features = vec![Vec::new(); self.m()];
        for j in 1..=self.m() {
            hyperedges[p2.apply(j) - 1] = self.hyperedges[j - 1].iter().map(|&i| p1.apply(i)).collect();
            hyperedge_features[p2.apply(j) - 1] = self.hyperedge_features[j - 1].clone();
        }
        let mut node_features = vec![Vec::new(); self.n];
        for i in 1..=self.n {
            node_features[p1.apply(i) - 1] = self.node_features[i - 1].clone();
        }
        Ok(Hypergraph {
            n: self.n,
            hyperedges,
            node_features,
            hyperedge_features,
            feature_dim: self.feature_dim,
        })
    }
}

/// Bipartite incidence graph on n+m nodes: node i stays node i, hyperedge j
/// becomes node n+j, with an undirected edge (i, n+j) iff node i belongs to
/// hyperedge j. Original nodes carry their features plus flag 1 in an extra
/// slot; hyperedge-nodes carry hyperedge features plus flag 0.
pub fn incidence_graph(h: &Hypergraph) -> Graph {
    let n = h.n();
    let m = h.m();
    let mut g = Graph::new(n + m, false);
    let mut features = Vec::with_capacity(n + m);
    for i in 1..=n {
        let mut f = h.node_feature(i).to_vec();
        f.push(Fixed::ONE);
        features.push(f);
    }
    for j in 1..=m {
        let mut f = h.hyperedge_feature(j).to_vec();
        f.push(Fixed::ZERO);
        features.push(f);
    }
    g.set_node_features(features).expect("uniform dimension by construction");
    for j in 1..=m {
        for &i in h.hyperedge(j) {
            g.add_edge(i, n + j).expect("incidence endpoints are in range");
        }
    }
    g
}

/// True iff some pair (p1, p2) of node and hyperedge permutations maps
/// (s2, h2) onto (s1, h1), with s posets over node ids. Exact brute force;
/// refuses inputs where n!*m! exceeds the 8-node budget.
pub fn are_hypergraphs_isomorphic(
    s1: &NodePoset,
    h1: &Hypergraph,
    s2: &NodePoset,
    h2: &Hypergraph,
) -> Result<bool, GraphError> {
    if h1.n() != h2.n() || h1.m() != h2.m() {
        return Ok(false);
    }
    let (n, m) = (h1.n(), h1.m());
    let factorial = |k: usize| (1..=k).product::<usize>();
    if n > 8 || m > 8 || factorial(n) * factorial(m) > 40320 {
        return Err(GraphError::HyperOracleUnavailable { n, m });
    }
    if s1.len() != s2.len() || s1.relation().len() != s2.relation().len() {
        return Ok(false);
    }
    for p1 in Permutation::all(n) {
        if p1.apply_set(s2.members()) != *s1.members() {
            continue;
        }
        if !s2.relation().iter().all(|&(u, v)| s1.le(p1.apply(u), p1.apply(v))) {
            continue;
        }
        if (1..=n).any(|i| h2.node_feature(i) != h1.node_feature(p1.apply(i))) {
            continue;
        }
        'outer: for p2 in Permutation::all(m) {
            for j in 1..=m {
                let image: BTreeSet<NodeId> = h2.hyperedge(j).iter().map(|&i| p1.apply(i)).collect();
                if image != *h1.hyperedge(p2.apply(j))
                    || h2.hyperedge_feature(j) != h1.hyperedge_feature(p2.apply(j))
                {
                    continue 'outer;
                }
            }
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::is_graph_isomorphic;

    fn edge(nodes: &[NodeId]) -> BTreeSet<NodeId> {
        nodes.iter().copied().collect()
    }

    #[test]
    fn single_hyperedge_becomes_a_star_with_flags() {
        let h = Hypergraph::new(3, vec![edge(&[1, 2, 3])]).unwrap();
        let g = incidence_graph(&h);
        assert_eq!(g.n(), 4);
        assert_eq!(g.edges_unique(), vec![(1, 4), (2, 4), (3, 4)]);
        let flags: Vec<Fixed> = (1..=4).map(|i| g.node_feature(i)[0]).collect();
        assert_eq!(flags, vec![Fixed::ONE, Fixed::ONE, Fixed::ONE, Fixed::ZERO]);
    }

    #[test]
    fn no_hyperedges_means_isolated_flagged_nodes() {
        let h = Hypergraph::new(2, vec![]).unwrap();
        let g = incidence_graph(&h);
        assert_eq!(g.n(), 2);
        assert_eq!(g.edge_count(), 0);
        assert_eq!(g.node_feature(1), &[Fixed::ONE]);
    }

    #[test]
    fn empty_hyperedges_are_rejected() {
        assert!(matches!(
            Hypergraph::new(2, vec![edge(&[1]), edge(&[])]),
            Err(GraphError::EmptyHyperedge { index: 2 })
        ));
    }

    #[test]
    fn node_and_hyperedge_features_share_a_dimension() {
        let mut h = Hypergraph::new(2, vec![edge(&[1, 2])]).unwrap();
        assert!(h
            .set_features(vec![vec![Fixed::ONE], vec![Fixed::ZERO]], vec![vec![]])
            .is_err());
        assert!(h
            .set_features(vec![vec![Fixed::ONE], vec![Fixed::ZERO]], vec![vec![Fixed::ONE]])
            .is_ok());
    }

    #[test]
    fn permuted_hypergraph_has_isomorphic_incidence_graph() {
        let h = Hypergraph::new(4, vec![edge(&[1, 2]), edge(&[2, 3, 4]), edge(&[1])]).unwrap();
        let p1 = Permutation::from_mapping(vec![3, 1, 4, 2]).unwrap();
        let p2 = Permutation::from_mapping(vec![2, 3, 1]).unwrap();
        let hp = h.apply_hyper_permutation(&p1, &p2).unwrap();
        assert!(is_graph_isomorphic(&incidence_graph(&h), &incidence_graph(&hp)).unwrap());
        let s = NodePoset::set_of([1, 2]);
        let sp = p1.apply_poset(&s);
        assert!(are_hypergraphs_isomorphic(&sp, &hp, &s, &h).unwrap());
    }

    #[test]
    fn hyperedge_multiplicity_matters() {
        let h1 = Hypergraph::new(2, vec![edge(&[1]), edge(&[1])]).unwrap();
        let h2 = Hypergraph::new(2, vec![edge(&[1]), edge(&[2])]).unwrap();
        let s = NodePoset::set_of([]);
        assert!(!are_hypergraphs_isomorphic(&s, &h1, &s, &h2).unwrap());
        let h3 = Hypergraph::new(2, vec![edge(&[2]), edge(&[2])]).unwrap();
        assert!(are_hypergraphs_isomorphic(&s, &h1, &s, &h3).unwrap());
    }

    #[test]
    fn oversized_search_is_refused() {
        let h = Hypergraph::new(8, vec![edge(&[1]); 8]).unwrap();
        let s = NodePoset::set_of([]);
        assert!(matches!(
            are_hypergraphs_isomorphic(&s, &h, &s, &h),
            Err(GraphError::HyperOracleUnavailable { n: 8, m: 8 })
        ));
    }
}
