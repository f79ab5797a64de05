use std::collections::{BTreeMap, VecDeque};

use crate::{Fixed, GraphError};

/// 1-based node index.
pub type NodeId = usize;

/// Attributed graph on nodes 1..=n.
///
/// Undirected graphs store each edge in both directions with shared features,
/// so the edge map always equals the adjacency tensor: (i, j) present means
/// the tensor has an edge entry there. Self-loops are rejected because the
/// diagonal holds node features.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    directed: bool,
    edges: BTreeMap<(NodeId, NodeId), Vec<Fixed>>,
    node_features: Vec<Vec<Fixed>>,
    node_feature_dim: usize,
    edge_feature_dim: Option<usize>,
    out_adj: Vec<Vec<NodeId>>,
    in_adj: Vec<Vec<NodeId>>,
}

impl Graph {
    pub fn new(n: usize, directed: bool) -> Graph {
        Graph {
            n,
            directed,
            edges: BTreeMap::new(),
            node_features: vec![Vec::new(); n],
            node_feature_dim: 0,
            edge_feature_dim: None,
            out_adj: vec![Vec::new(); n],
            in_adj: vec![Vec::new(); n],
        }
    }

    pub fn undirected_from_edges(n: usize, edges: &[(NodeId, NodeId)]) -> Result<Graph, GraphError> {
        let mut g = Graph::new(n, false);
        for &(i, j) in edges {
            g.add_edge(i, j)?;
        }
        Ok(g)
    }

    pub fn directed_from_edges(n: usize, edges: &[(NodeId, NodeId)]) -> Result<Graph, GraphError> {
        let mut g = Graph::new(n, true);
        for &(i, j) in edges {
            g.add_edge(i, j)?;
        }
        Ok(g)
    }

    /// Cycle 1-2-...-n-1.
    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3);
        let edges: Vec<_> = (1..=n).map(|i| (i, i % n + 1)).collect();
        Graph::undirected_from_edges(n, &edges).unwrap()
    }

    /// Path 1-2-...-n.
    pub fn path(n: usize) -> Graph {
        assert!(n >= 1);
        let edges: Vec<_> = (1..n).map(|i| (i, i + 1)).collect();
        Graph::undirected_from_edges(n, &edges).unwrap()
    }

    pub fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for i in 1..=n {
            for j in i + 1..=n {
                edges.push((i, j));
            }
        }
        Graph::undirected_from_edges(n, &edges).unwrap()
    }

    pub fn add_edge(&mut self, i: NodeId, j: NodeId) -> Result<(), GraphError> {
        self.add_edge_with(i, j, Vec::new())
    }

    pub fn add_edge_with(&mut self, i: NodeId, j: NodeId, features: Vec<Fixed>) -> Result<(), GraphError> {
        self.check_node(i)?;
        self.check_node(j)?;
        if i == j {
            return Err(GraphError::SelfLoop { node: i });
        }
        match self.edge_feature_dim {
            Some(d) if d != features.len() => {
                return Err(GraphError::FeatureDim { expected: d, got: features.len() })
            }
            _ => {}
        }
        if self.edges.contains_key(&(i, j)) {
            return Err(GraphError::DuplicateEdge { i, j });
        }
        self.edge_feature_dim = Some(features.len());
        if !self.directed {
            self.edges.insert((j, i), features.clone());
            self.out_adj[j - 1].push(i);
            self.in_adj[i - 1].push(j);
        }
        self.edges.insert((i, j), features);
        self.out_adj[i - 1].push(j);
        self.in_adj[j - 1].push(i);
        for adj in [&mut self.out_adj, &mut self.in_adj] {
            adj[i - 1].sort_unstable();
            adj[j - 1].sort_unstable();
        }
        Ok(())
    }

    /// Replaces all node feature vectors; one vector per node, equal lengths.
    pub fn set_node_features(&mut self, features: Vec<Vec<Fixed>>) -> Result<(), GraphError> {
        if features.len() != self.n {
            return Err(GraphError::SizeMismatch { left: features.len(), right: self.n });
        }
        let dim = features.first().map_or(0, Vec::len);
        for f in &features {
            if f.len() != dim {
                return Err(GraphError::FeatureDim { expected: dim, got: f.len() });
            }
        }
        self.node_feature_dim = dim;
        self.node_features = features;
        Ok(())
    }

    /// New graph with one extra node-feature slot holding `column[i-1]` for node i.
    /// This is how labelings and flags are attached.
    pub fn append_feature_column(&self, column: &[Fixed]) -> Result<Graph, GraphError> {
        if column.len() != self.n {
            return Err(GraphError::SizeMismatch { left: column.len(), right: self.n });
        }
        let mut g = self.clone();
        for (f, &v) in g.node_features.iter_mut().zip(column) {
            f.push(v);
        }
        g.node_feature_dim += 1;
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn directed(&self) -> bool {
        self.directed
    }

    pub fn node_feature_dim(&self) -> usize {
        self.node_feature_dim
    }

    pub fn edge_feature_dim(&self) -> usize {
        self.edge_feature_dim.unwrap_or(0)
    }

    pub fn node_feature(&self, i: NodeId) -> &[Fixed] {
        &self.node_features[i - 1]
    }

    pub fn has_edge(&self, i: NodeId, j: NodeId) -> bool {
        self.edges.contains_key(&(i, j))
    }

    pub fn edge_feature(&self, i: NodeId, j: NodeId) -> Option<&[Fixed]> {
        self.edges.get(&(i, j)).map(Vec::as_slice)
    }

    /// All stored directed pairs; an undirected edge appears in both orders.
    pub fn edge_pairs(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.edges.keys().copied()
    }

    /// Each edge once: ordered pairs for directed graphs, i < j otherwise.
    pub fn edges_unique(&self) -> Vec<(NodeId, NodeId)> {
        self.edges
            .keys()
            .copied()
            .filter(|&(i, j)| self.directed || i < j)
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.edges_unique().len()
    }

    pub fn out_neighbors(&self, i: NodeId) -> &[NodeId] {
        &self.out_adj[i - 1]
    }

    pub fn in_neighbors(&self, i: NodeId) -> &[NodeId] {
        &self.in_adj[i - 1]
    }

    /// Neighbors ignoring orientation: union of in- and out-neighbors.
    pub fn undirected_neighbors(&self, i: NodeId) -> Vec<NodeId> {
        if !self.directed {
            return self.out_adj[i - 1].clone();
        }
        let mut all: Vec<NodeId> = self.out_adj[i - 1]
            .iter()
            .chain(&self.in_adj[i - 1])
            .copied()
            .collect();
        all.sort_unstable();
        all.dedup();
        all
    }

    pub fn degree(&self, i: NodeId) -> usize {
        self.out_adj[i - 1].len()
    }

    /// Multi-source BFS distances ignoring edge orientation.
    /// Index 0 of the result is unused; unreachable nodes are None.
    pub fn bfs_distances(&self, sources: &[NodeId]) -> Vec<Option<u32>> {
        let mut dist = vec![None; self.n + 1];
        let mut queue = VecDeque::new();
        for &s in sources {
            assert!(s >= 1 && s <= self.n, "BFS source {s} out of range");
            if dist[s].is_none() {
                dist[s] = Some(0);
                queue.push_back(s);
            }
        }
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap();
            for v in self.undirected_neighbors(u) {
                if dist[v].is_none() {
                    dist[v] = Some(d + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    fn check_node(&self, i: NodeId) -> Result<(), GraphError> {
        if i == 0 || i > self.n {
            return Err(GraphError::NodeOutOfRange { node: i, n: self.n });
        }
        Ok(())
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Graph(n={}, {}, edges={:?})",
            self.n,
            if self.directed { "directed" } else { "undirected" },
            self.edges_unique()
        )
    }
}
