//! Exact and 1-WL readouts shared by the audits.
//!
//! Exact readouts use canonical codes, which are absolute across graphs.
//! 1-WL verdicts always refine every involved copy in one joint context;
//! colors from separate runs are never compared.

use std::collections::BTreeSet;

use graph_core::{canonical_code, node_code, CanonicalCode, Graph, NodePoset};
use itertools::Itertools;
use labeling::{graph_with_labels, hasse_embedding, subset_zero_one, zero_one, PoolingEngine};
use wl_engine::{wl_distinguishes, JointRefinementContext, Layers};

use crate::LabError;

fn member_codes(labeled: &Graph, s: &NodePoset) -> Result<Vec<CanonicalCode>, LabError> {
    let mut codes: Vec<CanonicalCode> =
        s.members().iter().map(|&u| node_code(u, labeled)).collect::<Result<_, _>>()?;
    codes.sort();
    Ok(codes)
}

/// Unlabeled member codes, sorted: the most an aggregation of independently
/// computed node representations can see.
pub fn gae_readout(g: &Graph, s: &NodePoset) -> Result<Vec<CanonicalCode>, LabError> {
    member_codes(g, s)
}

/// Member codes inside the zero-one labeled graph, sorted.
pub fn set_readout(g: &Graph, s: &NodePoset) -> Result<Vec<CanonicalCode>, LabError> {
    member_codes(&graph_with_labels(g, &zero_one(s, g)), s)
}

/// Member codes inside the Hasse-embedding labeled graph, sorted.
pub fn hasse_readout(g: &Graph, s: &NodePoset) -> Result<Vec<CanonicalCode>, LabError> {
    member_codes(&graph_with_labels(g, &hasse_embedding(s, g)?), s)
}

/// The zero-one labeled graph up to isomorphism, with the marks folded into
/// node features and no residual target set.
pub fn labeled_graph_code(g: &Graph, s: &NodePoset) -> Result<CanonicalCode, LabError> {
    Ok(canonical_code(&NodePoset::set_of([]), &graph_with_labels(g, &zero_one(s, g)))?)
}

/// Diagonal exact readout: each member's code in the copy where only that
/// member is marked, sorted. Blind to cross-member dependence by construction.
pub fn node_readout_exact(g: &Graph, s: &NodePoset) -> Result<Vec<CanonicalCode>, LabError> {
    let mut codes = Vec::new();
    for &u in s.members() {
        let labeled = graph_with_labels(g, &subset_zero_one(&BTreeSet::from([u]), g));
        codes.push(node_code(u, &labeled)?);
    }
    codes.sort();
    Ok(codes)
}

/// Per-subset set representations: for every size-k member subset P, the
/// sorted member codes under subset_zero_one(P). Outer list in subset order,
/// deliberately unsorted: the all-pairs-differ claim inspects individual
/// entries, not the multiset.
pub fn inner_subset_readouts(
    g: &Graph,
    s: &NodePoset,
    k: usize,
) -> Result<Vec<Vec<CanonicalCode>>, LabError> {
    let mut out = Vec::new();
    for p in s.sorted_members().into_iter().combinations(k) {
        let labeled = graph_with_labels(g, &subset_zero_one(&p.into_iter().collect(), g));
        out.push(member_codes(&labeled, s)?);
    }
    Ok(out)
}

/// Diagonal 1-WL readout tie: multiset of each member's converged color in
/// its own singleton-marked copy, all copies of both targets refined jointly.
pub fn node_readout_wl_ties(
    g1: &Graph,
    s1: &NodePoset,
    g2: &Graph,
    s2: &NodePoset,
) -> Result<bool, LabError> {
    let l1: Vec<_> =
        s1.sorted_members().iter().map(|&u| subset_zero_one(&BTreeSet::from([u]), g1)).collect();
    let l2: Vec<_> =
        s2.sorted_members().iter().map(|&u| subset_zero_one(&BTreeSet::from([u]), g2)).collect();
    let mut ctx = JointRefinementContext::new();
    for l in &l1 {
        ctx.push(g1, Some(l))?;
    }
    for l in &l2 {
        ctx.push(g2, Some(l))?;
    }
    let colorings = ctx.refine(Layers::Converge);
    let (first, second) = colorings.split_at(l1.len());
    let mut m1: Vec<u32> =
        s1.sorted_members().iter().zip(first).map(|(&u, c)| c.color_of(u)).collect();
    let mut m2: Vec<u32> =
        s2.sorted_members().iter().zip(second).map(|(&u, c)| c.color_of(u)).collect();
    m1.sort_unstable();
    m2.sort_unstable();
    Ok(m1 == m2)
}

pub fn unlabeled_wl_separates(
    g1: &Graph,
    s1: &NodePoset,
    g2: &Graph,
    s2: &NodePoset,
) -> Result<bool, LabError> {
    Ok(wl_distinguishes(g1, None, s1, g2, None, s2, Layers::Converge)?)
}

pub fn set_zo_wl_separates(
    g1: &Graph,
    s1: &NodePoset,
    g2: &Graph,
    s2: &NodePoset,
) -> Result<bool, LabError> {
    Ok(wl_distinguishes(
        g1,
        Some(&zero_one(s1, g1)),
        s1,
        g2,
        Some(&zero_one(s2, g2)),
        s2,
        Layers::Converge,
    )?)
}

pub fn hasse_wl_separates(
    g1: &Graph,
    s1: &NodePoset,
    g2: &Graph,
    s2: &NodePoset,
) -> Result<bool, LabError> {
    Ok(wl_distinguishes(
        g1,
        Some(&hasse_embedding(s1, g1)?),
        s1,
        g2,
        Some(&hasse_embedding(s2, g2)?),
        s2,
        Layers::Converge,
    )?)
}

/// Singleton-subset pooled 1-WL verdict: one marked copy per member, refined
/// jointly, compared as multisets of member-color multisets.
pub fn subset_pooling_separates(
    g1: &Graph,
    s1: &NodePoset,
    g2: &Graph,
    s2: &NodePoset,
) -> Result<bool, LabError> {
    Ok(labeling::subset_pooling_distinguishes(
        g1,
        s1,
        g2,
        s2,
        1,
        PoolingEngine::Wl(Layers::Converge),
    )?)
}
