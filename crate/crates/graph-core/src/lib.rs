//! Graph, poset, and hypergraph data model with exact isomorphism oracles.
//!
//! Everything here is immutable after construction and every operation is a
//! pure function, so values can be shared across threads freely. Nodes are
//! numbered 1..=n. Isomorphism checks and canonical codes are exact
//! brute-force searches and refuse inputs beyond [`BRUTE_FORCE_BOUND`]
//! instead of falling back to a heuristic.

mod fixed;
mod graph;
mod hypergraph;
mod iso;
mod perm;
mod poset;
mod subgraph;

pub use fixed::{Fixed, FRAC_DIGITS};
pub use graph::{Graph, NodeId};
pub use hypergraph::{are_hypergraphs_isomorphic, incidence_graph, Hypergraph};
pub use iso::{
    are_substructures_isomorphic, canonical_code, is_graph_isomorphic, node_code, CanonicalCode,
    BRUTE_FORCE_BOUND,
};
pub use perm::{apply_permutation, Permutation};
pub use poset::{hasse_diagram, NodePoset};
pub use subgraph::{enclosing_subgraph, induced_subgraph};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("node {node} out of range 1..={n}")]
    NodeOutOfRange { node: usize, n: usize },
    #[error("self-loop at node {node}: the diagonal is reserved for node features")]
    SelfLoop { node: usize },
    #[error("duplicate edge ({i}, {j})")]
    DuplicateEdge { i: usize, j: usize },
    #[error("feature vector dimension {got} does not match established dimension {expected}")]
    FeatureDim { expected: usize, got: usize },
    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("oracle unavailable: exact search supports at most {bound} nodes, got {n}")]
    OracleUnavailable { n: usize, bound: usize },
    #[error("oracle unavailable: exact hypergraph search needs n!*m! <= 40320, got n={n}, m={m}")]
    HyperOracleUnavailable { n: usize, m: usize },
    #[error("mapping is not a bijection on 1..={n}")]
    NotBijective { n: usize },
    #[error("relation violates reflexivity: missing ({u}, {u})")]
    NotReflexive { u: usize },
    #[error("relation violates antisymmetry: both ({u}, {v}) and ({v}, {u}) present")]
    NotAntisymmetric { u: usize, v: usize },
    #[error("relation violates transitivity: ({u}, {v}) and ({v}, {w}) present but ({u}, {w}) missing")]
    NotTransitive { u: usize, v: usize, w: usize },
    #[error("relation pair ({u}, {v}) mentions a node outside the member set")]
    PairOutsideMembers { u: usize, v: usize },
    #[error("poset member {node} is not a node of the graph")]
    MemberOutsideGraph { node: usize },
    #[error("hyperedge {index} is empty: each hyperedge contains at least one node")]
    EmptyHyperedge { index: usize },
    #[error("cannot parse {text:?} as a decimal number")]
    DecimalParse { text: String },
    #[error("{text:?} has more than {FRAC_DIGITS} fractional digits")]
    DecimalPrecision { text: String },
}
