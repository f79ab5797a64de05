//! Exact isomorphism oracle and canonical codes.
//!
//! Both operations brute-force the permutation group, so they are exact for
//! every input they accept and refuse anything larger than
//! [`BRUTE_FORCE_BOUND`] nodes. A canonical code is the lexicographically
//! smallest serialization of the marked structure over all permutations;
//! equal codes hold exactly when the inputs are isomorphic, which makes the
//! code a stand-in for a node-most-expressive representation.

use std::fmt;

use crate::{Fixed, Graph, GraphError, NodeId, NodePoset, Permutation};

/// Largest node count the exact oracles accept (8! = 40320 permutations).
pub const BRUTE_FORCE_BOUND: usize = 8;

/// Opaque identifier of an isomorphism class of (marked structure, graph).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCode(Vec<u8>);

impl CanonicalCode {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            write!(f, "{b:02x}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalCode({self})")
    }
}

fn check_bound(n: usize) -> Result<(), GraphError> {
    if n > BRUTE_FORCE_BOUND {
        return Err(GraphError::OracleUnavailable { n, bound: BRUTE_FORCE_BOUND });
    }
    Ok(())
}

fn members_ok(s: &NodePoset, g: &Graph) -> Result<(), GraphError> {
    match s.members().iter().find(|&&u| u == 0 || u > g.n()) {
        Some(&u) => Err(GraphError::MemberOutsideGraph { node: u }),
        None => Ok(()),
    }
}

fn serialize_feature_table(table: &[Vec<Fixed>], out: &mut Vec<u8>) {
    out.extend_from_slice(&(table.len() as u16).to_be_bytes());
    for vec in table {
        out.extend_from_slice(&(vec.len() as u16).to_be_bytes());
        for v in vec {
            out.extend_from_slice(&v.raw().to_be_bytes());
        }
    }
}

/// Permutation-independent data for fast image serialization. The final code
/// is `prefix` (node count plus sorted feature tables, written once) followed
/// by the per-permutation suffix: table indexes and bitmask rows. Two codes
/// are byte-equal iff some permutation images coincide exactly.
struct CodeContext {
    n: usize,
    prefix: Vec<u8>,
    node_fid: Vec<u8>,
    adj: Vec<u8>,
    edge_fid: Vec<u8>,
    has_edge_features: bool,
    member: u8,
    rel: Vec<u8>,
}

impl CodeContext {
    fn new(s: &NodePoset, g: &Graph) -> CodeContext {
        let n = g.n();
        let mut node_table: Vec<Vec<Fixed>> = (1..=n).map(|i| g.node_feature(i).to_vec()).collect();
        node_table.sort();
        node_table.dedup();
        let node_fid: Vec<u8> = (1..=n)
            .map(|i| node_table.binary_search_by(|t| t.as_slice().cmp(g.node_feature(i))).unwrap() as u8)
            .collect();

        let has_edge_features = g.edge_feature_dim() > 0;
        let mut edge_table: Vec<Vec<Fixed>> = Vec::new();
        let mut edge_fid = vec![0xffu8; n * n];
        if has_edge_features {
            edge_table = g.edge_pairs().map(|(i, j)| g.edge_feature(i, j).unwrap().to_vec()).collect();
            edge_table.sort();
            edge_table.dedup();
            for (i, j) in g.edge_pairs() {
                let idx = edge_table
                    .binary_search_by(|t| t.as_slice().cmp(g.edge_feature(i, j).unwrap()))
                    .unwrap();
                edge_fid[(i - 1) * n + (j - 1)] = idx as u8;
            }
        }

        let mut adj = vec![0u8; n];
        for (i, j) in g.edge_pairs() {
            adj[i - 1] |= 1 << (j - 1);
        }
        let mut member = 0u8;
        for &u in s.members() {
            member |= 1 << (u - 1);
        }
        let mut rel = vec![0u8; n];
        for &(u, v) in s.relation() {
            rel[u - 1] |= 1 << (v - 1);
        }

        let mut prefix = vec![n as u8];
        serialize_feature_table(&node_table, &mut prefix);
        prefix.push(has_edge_features as u8);
        serialize_feature_table(&edge_table, &mut prefix);

        CodeContext { n, prefix, node_fid, adj, edge_fid, has_edge_features, member, rel }
    }

    /// Suffix of the image under p; inv[new-1] is the preimage of node `new`.
    fn image_suffix(&self, inv: &[NodeId], buf: &mut Vec<u8>) {
        let n = self.n;
        buf.clear();
        for new in 0..n {
            buf.push(self.node_fid[inv[new] - 1]);
        }
        for new_i in 0..n {
            let row = self.adj[inv[new_i] - 1];
            let mut bits = 0u8;
            for new_j in 0..n {
                bits |= ((row >> (inv[new_j] - 1)) & 1) << new_j;
            }
            buf.push(bits);
        }
        if self.has_edge_features {
            for new_i in 0..n {
                for new_j in 0..n {
                    buf.push(self.edge_fid[(inv[new_i] - 1) * n + (inv[new_j] - 1)]);
                }
            }
        }
        let mut members = 0u8;
        for new in 0..n {
            members |= ((self.member >> (inv[new] - 1)) & 1) << new;
        }
        buf.push(members);
        for new_u in 0..n {
            let row = self.rel[inv[new_u] - 1];
            let mut bits = 0u8;
            for new_v in 0..n {
                bits |= ((row >> (inv[new_v] - 1)) & 1) << new_v;
            }
            buf.push(bits);
        }
    }
}

/// True iff some permutation maps (s2, g2) onto (s1, g1): members to members,
/// relation pairs to relation pairs, adjacency and all features preserved.
/// Graphs of different sizes are simply not isomorphic; the directedness flag
/// does not enter, only the stored tensor does.
pub fn are_substructures_isomorphic(
    s1: &NodePoset,
    g1: &Graph,
    s2: &NodePoset,
    g2: &Graph,
) -> Result<bool, GraphError> {
    members_ok(s1, g1)?;
    members_ok(s2, g2)?;
    if g1.n() != g2.n() {
        return Ok(false);
    }
    check_bound(g1.n())?;
    if s1.len() != s2.len()
        || s1.relation().len() != s2.relation().len()
        || g1.edge_pairs().count() != g2.edge_pairs().count()
        || g1.node_feature_dim() != g2.node_feature_dim()
        || g1.edge_feature_dim() != g2.edge_feature_dim()
    {
        return Ok(false);
    }
    let n = g1.n();
    'perms: for p in Permutation::all(n) {
        for u in 1..=n {
            if g1.node_feature(p.apply(u)) != g2.node_feature(u) {
                continue 'perms;
            }
        }
        for (i, j) in g2.edge_pairs() {
            if g1.edge_feature(p.apply(i), p.apply(j)) != g2.edge_feature(i, j) {
                continue 'perms;
            }
        }
        if p.apply_set(s2.members()) != *s1.members() {
            continue 'perms;
        }
        for &(u, v) in s2.relation() {
            if !s1.le(p.apply(u), p.apply(v)) {
                continue 'perms;
            }
        }
        return Ok(true);
    }
    Ok(false)
}

/// Unmarked whole-graph isomorphism.
pub fn is_graph_isomorphic(g1: &Graph, g2: &Graph) -> Result<bool, GraphError> {
    let empty = NodePoset::set_of([]);
    are_substructures_isomorphic(&empty, g1, &empty, g2)
}

/// Lexicographically smallest serialization of (s, g) over all permutations.
/// Codes are equal iff `are_substructures_isomorphic` holds, and are stable
/// across runs and platforms.
pub fn canonical_code(s: &NodePoset, g: &Graph) -> Result<CanonicalCode, GraphError> {
    members_ok(s, g)?;
    check_bound(g.n())?;
    let ctx = CodeContext::new(s, g);
    let n = g.n();
    let mut best: Option<Vec<u8>> = None;
    let mut buf = Vec::new();
    let mut inv = vec![0usize; n];
    for p in Permutation::all(n) {
        for old in 1..=n {
            inv[p.apply(old) - 1] = old;
        }
        ctx.image_suffix(&inv, &mut buf);
        match &best {
            Some(b) if *b <= buf => {}
            _ => best = Some(buf.clone()),
        }
    }
    let mut code = ctx.prefix;
    code.extend_from_slice(&best.expect("permutation iterator is never empty"));
    Ok(CanonicalCode(code))
}

/// Code of a single marked node; the exact analogue of a node representation.
pub fn node_code(u: NodeId, g: &Graph) -> Result<CanonicalCode, GraphError> {
    canonical_code(&NodePoset::set_of([u]), g)
}
