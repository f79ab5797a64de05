use std::collections::BTreeSet;

use crate::{Graph, GraphError, NodeId};

/// Node set with a partial order on it.
///
/// The relation is stored in full: reflexive pairs included, transitive pairs
/// included. Construction validates all three poset axioms and reports the
/// first violated one by name; a plain set is the special case whose relation
/// is exactly the reflexive pairs.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NodePoset {
    members: BTreeSet<NodeId>,
    relation: BTreeSet<(NodeId, NodeId)>,
}

impl NodePoset {
    pub fn new(
        members: BTreeSet<NodeId>,
        relation: BTreeSet<(NodeId, NodeId)>,
    ) -> Result<NodePoset, GraphError> {
        for &(u, v) in &relation {
            if !members.contains(&u) || !members.contains(&v) {
                return Err(GraphError::PairOutsideMembers { u, v });
            }
        }
        for &u in &members {
            if !relation.contains(&(u, u)) {
                return Err(GraphError::NotReflexive { u });
            }
        }
        for &(u, v) in &relation {
            if u != v && relation.contains(&(v, u)) {
                return Err(GraphError::NotAntisymmetric { u, v });
            }
        }
        for &(u, v) in &relation {
            for &(v2, w) in relation.range((v, 0)..=(v, NodeId::MAX)) {
                debug_assert_eq!(v, v2);
                if !relation.contains(&(u, w)) {
                    return Err(GraphError::NotTransitive { u, v, w });
                }
            }
        }
        Ok(NodePoset { members, relation })
    }

    /// Set value: relation is the identity on the members.
    pub fn set_of(members: impl IntoIterator<Item = NodeId>) -> NodePoset {
        let members: BTreeSet<NodeId> = members.into_iter().collect();
        let relation = members.iter().map(|&u| (u, u)).collect();
        NodePoset { members, relation }
    }

    /// Total order members[0] ≤ members[1] ≤ ... with all implied pairs.
    pub fn chain(members_in_order: &[NodeId]) -> NodePoset {
        let members: BTreeSet<NodeId> = members_in_order.iter().copied().collect();
        assert_eq!(members.len(), members_in_order.len(), "chain nodes must be distinct");
        let mut relation = BTreeSet::new();
        for (a, &u) in members_in_order.iter().enumerate() {
            for &v in &members_in_order[a..] {
                relation.insert((u, v));
            }
        }
        NodePoset { members, relation }
    }

    pub fn members(&self) -> &BTreeSet<NodeId> {
        &self.members
    }

    pub fn relation(&self) -> &BTreeSet<(NodeId, NodeId)> {
        &self.relation
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, u: NodeId) -> bool {
        self.members.contains(&u)
    }

    pub fn le(&self, u: NodeId, v: NodeId) -> bool {
        self.relation.contains(&(u, v))
    }

    /// True when the relation is exactly the reflexive pairs.
    pub fn is_set(&self) -> bool {
        self.relation.len() == self.members.len()
    }

    /// True when every two members are comparable.
    pub fn is_chain(&self) -> bool {
        self.members
            .iter()
            .all(|&u| self.members.iter().all(|&v| self.le(u, v) || self.le(v, u)))
    }

    /// v covers u: u < v with nothing strictly between.
    pub fn covers(&self, u: NodeId, v: NodeId) -> bool {
        u != v
            && self.le(u, v)
            && !self
                .members
                .iter()
                .any(|&w| w != u && w != v && self.le(u, w) && self.le(w, v))
    }

    pub fn cover_pairs(&self) -> Vec<(NodeId, NodeId)> {
        let mut covers = Vec::new();
        for &(u, v) in &self.relation {
            if self.covers(u, v) {
                covers.push((u, v));
            }
        }
        covers
    }

    /// Members in ascending node id; node k of the Hasse diagram is rank k.
    pub fn sorted_members(&self) -> Vec<NodeId> {
        self.members.iter().copied().collect()
    }

    /// 1-based position of u among sorted members.
    pub fn member_rank(&self, u: NodeId) -> Option<usize> {
        self.sorted_members().iter().position(|&m| m == u).map(|p| p + 1)
    }
}

/// Directed cover graph: nodes are the members re-indexed in ascending order,
/// edge u→v iff v covers u. Transitive and reflexive pairs do not appear.
/// Axiom validation happens when the poset is constructed, so this cannot
/// observe an invalid relation.
pub fn hasse_diagram(s: &NodePoset) -> Graph {
    let order = s.sorted_members();
    let index = |u: NodeId| order.iter().position(|&m| m == u).unwrap() + 1;
    let mut g = Graph::new(order.len(), true);
    for (u, v) in s.cover_pairs() {
        g.add_edge(index(u), index(v)).unwrap();
    }
    g
}
