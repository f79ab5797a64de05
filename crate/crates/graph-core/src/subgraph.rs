use crate::{Graph, GraphError, NodeId, NodePoset};

/// Induced subgraph on `nodes` (ascending, deduplicated). Returns the
/// subgraph plus the old id of each new node: new node k is `kept[k-1]`.
pub fn induced_subgraph(g: &Graph, nodes: &[NodeId]) -> Result<(Graph, Vec<NodeId>), GraphError> {
    let mut kept: Vec<NodeId> = nodes.to_vec();
    kept.sort_unstable();
    kept.dedup();
    if let Some(&bad) = kept.iter().find(|&&u| u == 0 || u > g.n()) {
        return Err(GraphError::NodeOutOfRange { node: bad, n: g.n() });
    }
    let mut new_id = vec![0usize; g.n() + 1];
    for (k, &old) in kept.iter().enumerate() {
        new_id[old] = k + 1;
    }
    let mut sub = Graph::new(kept.len(), g.directed());
    sub.set_node_features(kept.iter().map(|&old| g.node_feature(old).to_vec()).collect())?;
    for (i, j) in g.edges_unique() {
        if new_id[i] != 0 && new_id[j] != 0 {
            sub.add_edge_with(new_id[i], new_id[j], g.edge_feature(i, j).unwrap().to_vec())?;
        }
    }
    Ok((sub, kept))
}

/// Subgraph induced by every node within `h` hops of some member of `s`
/// (shortest-path distance ignoring edge orientation), with the poset
/// re-indexed to the new node ids. `None` means unbounded: the whole graph
/// comes back unchanged.
pub fn enclosing_subgraph(
    g: &Graph,
    s: &NodePoset,
    h: Option<u32>,
) -> Result<(Graph, NodePoset), GraphError> {
    if let Some(&bad) = s.members().iter().find(|&&u| u == 0 || u > g.n()) {
        return Err(GraphError::MemberOutsideGraph { node: bad });
    }
    let h = match h {
        Some(h) => h,
        None => return Ok((g.clone(), s.clone())),
    };
    let sources: Vec<NodeId> = s.members().iter().copied().collect();
    let dist = g.bfs_distances(&sources);
    let keep: Vec<NodeId> = (1..=g.n()).filter(|&v| matches!(dist[v], Some(d) if d <= h)).collect();
    let (sub, kept) = induced_subgraph(g, &keep)?;
    let new_id = |old: NodeId| kept.iter().position(|&k| k == old).unwrap() + 1;
    let members = s.members().iter().map(|&u| new_id(u)).collect();
    let relation = s.relation().iter().map(|&(u, v)| (new_id(u), new_id(v))).collect();
    let poset = NodePoset::new(members, relation).expect("re-indexing preserves poset axioms");
    Ok((sub, poset))
}
