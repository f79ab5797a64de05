//! Subset pooling: aggregate the set representation over all size-k subset
//! labelings and compare the aggregates across two targets.

use std::collections::BTreeSet;

use graph_core::{node_code, CanonicalCode, Graph, NodeId, NodePoset};
use itertools::Itertools;
use wl_engine::{JointRefinementContext, Layers};

use crate::{graph_with_labels, subset_zero_one, LabelError};

/// Engine behind the set representation of one subset-labeled graph.
#[derive(Clone, Copy, Debug)]
pub enum PoolingEngine {
    /// Joint 1-WL refinement over every labeled copy of both graphs; the set
    /// representation is the color multiset of the target's members.
    Wl(Layers),
    /// Exact node codes: the set representation is the multiset of canonical
    /// codes of each member in the labeled graph.
    Oracle,
}

fn size_k_subsets(s: &NodePoset, k: usize) -> Vec<BTreeSet<NodeId>> {
    s.sorted_members().into_iter().combinations(k).map(|c| c.into_iter().collect()).collect()
}

/// Exact pooled readout: for every size-k subset P of s, the sorted multiset
/// of member node codes in g labeled by subset_zero_one(P); outer list
/// sorted. Codes are absolute, so readouts compare across graphs.
pub fn pooled_readout(
    g: &Graph,
    s: &NodePoset,
    k: usize,
) -> Result<Vec<Vec<CanonicalCode>>, LabelError> {
    let mut outer = Vec::new();
    for p in size_k_subsets(s, k) {
        let labeled = graph_with_labels(g, &subset_zero_one(&p, g));
        let mut inner: Vec<CanonicalCode> = s
            .members()
            .iter()
            .map(|&u| node_code(u, &labeled))
            .collect::<Result<_, _>>()?;
        inner.sort();
        outer.push(inner);
    }
    outer.sort();
    Ok(outer)
}

/// True iff the multisets over size-k member subsets P of the set
/// representation under subset_zero_one(P) differ between the two targets.
pub fn subset_pooling_distinguishes(
    g1: &Graph,
    s1: &NodePoset,
    g2: &Graph,
    s2: &NodePoset,
    k: usize,
    engine: PoolingEngine,
) -> Result<bool, LabelError> {
    if k > s1.len() || k > s2.len() {
        return Err(LabelError::SubsetSize { k, set: s1.len().min(s2.len()) });
    }
    match engine {
        PoolingEngine::Oracle => Ok(pooled_readout(g1, s1, k)? != pooled_readout(g2, s2, k)?),
        PoolingEngine::Wl(layers) => {
            let labelings1: Vec<_> =
                size_k_subsets(s1, k).iter().map(|p| subset_zero_one(p, g1)).collect();
            let labelings2: Vec<_> =
                size_k_subsets(s2, k).iter().map(|p| subset_zero_one(p, g2)).collect();
            let mut ctx = JointRefinementContext::new();
            for l in &labelings1 {
                ctx.push(g1, Some(l))?;
            }
            for l in &labelings2 {
                ctx.push(g2, Some(l))?;
            }
            let colorings = ctx.refine(layers);
            let (first, second) = colorings.split_at(labelings1.len());
            let mut a: Vec<Vec<u32>> =
                first.iter().map(|c| c.color_multiset(s1.members().iter().copied())).collect();
            let mut b: Vec<Vec<u32>> =
                second.iter().map(|c| c.color_multiset(s2.members().iter().copied())).collect();
            a.sort();
            b.sort();
            Ok(a != b)
        }
    }
}
