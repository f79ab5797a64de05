//! Labeling tricks: constructions that mark a target node set (or poset)
//! inside a graph so that a node-level refinement engine can tell structurally
//! different targets apart, plus subset pooling and one-head selection.

mod pooling;
mod tricks;
mod validate;

pub use pooling::{pooled_readout, subset_pooling_distinguishes, PoolingEngine};
pub use tricks::{
    distance_encoding, drnl, drnl_value, graph_with_labels, hasse_embedding, linear_order_labels,
    nearly_linear_order_labels, one_head_label, subset_zero_one, zero_one,
};
pub use validate::{validate_labeling_trick, ValidationReport};

pub use wl_engine::NodeLabeling;

use graph_core::{Graph, GraphError, NodeId, NodePoset};
use thiserror::Error;
use wl_engine::WlError;

/// Per-edge labels are reserved but unused: every shipped trick labels nodes only.
pub type EdgeLabeling = std::collections::BTreeMap<(NodeId, NodeId), Vec<i64>>;

#[derive(Debug, Error)]
pub enum LabelError {
    #[error("link labeling needs exactly two members, got {got}")]
    LinkArity { got: usize },
    #[error("members {u} and {v} are incomparable; relation is not a total order")]
    NotTotallyOrdered { u: NodeId, v: NodeId },
    #[error("relation is not a layered order over an ordered partition")]
    NotNearlyLinear,
    #[error("Hasse diagram has {size} nodes, over the exact-code bound {bound}")]
    HasseBound { size: usize, bound: usize },
    #[error("subset size {k} exceeds a target set of {set} members")]
    SubsetSize { k: usize, set: usize },
    #[error("no least element under the relation")]
    NoLeastElement,
    #[error(transparent)]
    Oracle(#[from] GraphError),
    #[error(transparent)]
    Wl(#[from] WlError),
}

/// How one_head_label picks the single node to mark.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubsetPolicy {
    Random(u64),
    MaxDegree,
    LeastElement,
}

/// Trick selection by name, the CLI/config surface.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TrickKind {
    ZeroOne,
    Drnl,
    De,
    DePlus,
    Hasse,
    Linear,
    NearlyLinear,
    SubsetZeroOne,
}

impl TrickKind {
    pub const ALL: [TrickKind; 8] = [
        TrickKind::ZeroOne,
        TrickKind::Drnl,
        TrickKind::De,
        TrickKind::DePlus,
        TrickKind::Hasse,
        TrickKind::Linear,
        TrickKind::NearlyLinear,
        TrickKind::SubsetZeroOne,
    ];

    pub fn from_name(name: &str) -> Option<TrickKind> {
        Self::ALL.iter().copied().find(|t| t.name() == name)
    }

    pub fn name(&self) -> &'static str {
        match self {
            TrickKind::ZeroOne => "zero_one",
            TrickKind::Drnl => "drnl",
            TrickKind::De => "de",
            TrickKind::DePlus => "de_plus",
            TrickKind::Hasse => "hasse",
            TrickKind::Linear => "linear",
            TrickKind::NearlyLinear => "nearly_linear",
            TrickKind::SubsetZeroOne => "subset_zero_one",
        }
    }

    /// Apply with each trick's default settings: drnl masks, de caps at 3
    /// without masking, de_plus masks without a cap.
    pub fn apply(&self, s: &NodePoset, g: &Graph) -> Result<NodeLabeling, LabelError> {
        match self {
            TrickKind::ZeroOne => Ok(zero_one(s, g)),
            TrickKind::Drnl => drnl(s, g, true),
            TrickKind::De => Ok(distance_encoding(s, g, Some(3), false)),
            TrickKind::DePlus => Ok(distance_encoding(s, g, None, true)),
            TrickKind::Hasse => hasse_embedding(s, g),
            TrickKind::Linear => linear_order_labels(s, g),
            TrickKind::NearlyLinear => nearly_linear_order_labels(s, g),
            TrickKind::SubsetZeroOne => {
                Ok(subset_zero_one(&s.members().iter().copied().collect(), g))
            }
        }
    }
}

/// CSV export. Header is `node,label` for 1-dimensional labelings and
/// `node,label1,...,labelD` otherwise; one row per node, 1-based.
pub fn labeling_to_csv(labels: &NodeLabeling) -> String {
    use std::fmt::Write;
    let dim = labels.first().map_or(0, |l| l.len());
    let mut out = String::from("node");
    if dim == 1 {
        out.push_str(",label");
    } else {
        for i in 1..=dim {
            write!(out, ",label{i}").unwrap();
        }
    }
    out.push('\n');
    for (i, l) in labels.iter().enumerate() {
        write!(out, "{}", i + 1).unwrap();
        for v in l {
            write!(out, ",{v}").unwrap();
        }
        out.push('\n');
    }
    out
}

#[cfg(feature = "structural-labels")]
pub mod structural {
    //! Named placeholders for structural label families that are not shipped.
    #[derive(Clone, Copy, Debug)]
    pub enum StructuralLabel {
        Spzo,
        Spectral,
        RandomWalk,
    }
}
