//! Color refinement engines: 1-WL with arbitrary initial labels, k-WL over
//! tuples, k-WL with l-pooling, and k,l-WL.
//!
//! Color ids are dense integers assigned by rank in a sorted signature
//! table, never raw hashes, so equal colors are a sound "same signature"
//! statement. Any comparison of colors across two graphs goes through a
//! joint refinement over their disjoint union; colors from two separate
//! runs are not comparable and no API here invites comparing them.

mod kwl;
mod refine;

pub use kwl::{
    kl_wl, kl_wl_joint, kwl_l_pooling, kwl_l_pooling_joint, kwl_refine, kwl_refine_joint,
    tuple_index, KlWlOutput, KwlOutcome,
};
pub use refine::{wl_distinguishes, wl_refine, JointRefinementContext};

use thiserror::Error;

/// Per-node (or per-tuple) label vectors, indexed by node id minus one.
/// Scalar labels are one-element vectors.
pub type NodeLabeling = Vec<Vec<i64>>;

/// How many refinement rounds to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Layers {
    Rounds(u32),
    Converge,
}

/// Default finite depth when a layer count is requested without a value,
/// matching the 3-layer networks the method is usually run with.
pub const DEFAULT_LAYERS: u32 = 3;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WlError {
    #[error("labeling has {got} entries for a graph with {expected} nodes")]
    LabelingSize { expected: usize, got: usize },
    #[error("k-WL budget exceeded: k={k} supports at most {max_n} nodes, got {n}")]
    TupleBudget { k: usize, n: usize, max_n: usize },
    #[error("unsupported k={k}: only k=2 and k=3 are implemented")]
    UnsupportedK { k: usize },
    #[error("unsupported l={l} for pooling with k={k}: need 1 <= l < k")]
    UnsupportedPooling { k: usize, l: usize },
    #[error("unsupported l={l}: tuple labelings are implemented for l in {{1, 2}}")]
    UnsupportedL { l: usize },
    #[error("tuple has {got} entries, expected {expected}")]
    TupleLen { expected: usize, got: usize },
    #[error("tuple entry {node} out of range 1..={n}")]
    TupleNode { node: usize, n: usize },
}

/// Refinement history of one graph's nodes (or tuples). Colors of round t
/// live in `rounds()[t]`; ids are comparable within the run (or the joint
/// context) that produced them, and only there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring {
    rounds: Vec<Vec<u32>>,
    converged: bool,
}

impl Coloring {
    pub(crate) fn new(rounds: Vec<Vec<u32>>, converged: bool) -> Coloring {
        Coloring { rounds, converged }
    }

    /// Colors after the last executed round.
    pub fn final_colors(&self) -> &[u32] {
        self.rounds.last().expect("at least round 0 exists")
    }

    /// 1-based element accessor into the final colors.
    pub fn color_of(&self, element: usize) -> u32 {
        self.final_colors()[element - 1]
    }

    /// Full history, round 0 first.
    pub fn rounds(&self) -> &[Vec<u32>] {
        &self.rounds
    }

    pub fn converged(&self) -> bool {
        self.converged
    }

    /// Sorted multiset of final colors; the aggregated readout of a node set
    /// (1-based ids) or of the whole graph when `members` covers it.
    pub fn color_multiset(&self, members: impl IntoIterator<Item = usize>) -> Vec<u32> {
        let mut colors: Vec<u32> = members.into_iter().map(|u| self.color_of(u)).collect();
        colors.sort_unstable();
        colors
    }

    /// Full history as CSV with header `node,round,color` (1-based elements).
    pub fn to_csv(&self) -> String {
        let mut out = String::from("node,round,color\n");
        for (round, colors) in self.rounds.iter().enumerate() {
            for (i, c) in colors.iter().enumerate() {
                out.push_str(&format!("{},{},{}\n", i + 1, round, c));
            }
        }
        out
    }
}

/// Number of distinct values in one round's color vector.
pub(crate) fn class_count(colors_per_part: &[&[u32]]) -> usize {
    let mut all: Vec<u32> = colors_per_part.iter().flat_map(|c| c.iter().copied()).collect();
    all.sort_unstable();
    all.dedup();
    all.len()
}
