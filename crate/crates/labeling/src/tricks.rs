//! The labeling-trick constructions themselves.

use std::collections::{BTreeSet, VecDeque};

use graph_core::{hasse_diagram, node_code, Fixed, Graph, NodeId, NodePoset, BRUTE_FORCE_BOUND};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wl_engine::NodeLabeling;

use crate::{LabelError, SubsetPolicy};

fn assert_members_in(s: &NodePoset, g: &Graph) {
    assert!(
        s.members().iter().all(|&u| u >= 1 && u <= g.n()),
        "target members must be nodes of the graph"
    );
}

/// Label 1 on members of s, 0 elsewhere.
pub fn zero_one(s: &NodePoset, g: &Graph) -> NodeLabeling {
    assert_members_in(s, g);
    (1..=g.n()).map(|u| vec![s.contains(u) as i64]).collect()
}

/// Label 1 on the subset p, 0 elsewhere.
pub fn subset_zero_one(p: &BTreeSet<NodeId>, g: &Graph) -> NodeLabeling {
    assert!(p.iter().all(|&u| u >= 1 && u <= g.n()), "subset must lie inside the graph");
    (1..=g.n()).map(|u| vec![p.contains(&u) as i64]).collect()
}

/// BFS hop counts from `source`, treating edges as undirected and skipping
/// masked nodes entirely (as if they and their edges were removed).
/// Index 0 is unused.
fn bfs_masked(g: &Graph, source: NodeId, masked: &BTreeSet<NodeId>) -> Vec<Option<u32>> {
    let mut dist = vec![None; g.n() + 1];
    if masked.contains(&source) {
        return dist;
    }
    dist[source] = Some(0);
    let mut queue = VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        let du = dist[u].unwrap();
        for v in g.undirected_neighbors(u) {
            if !masked.contains(&v) && dist[v].is_none() {
                dist[v] = Some(du + 1);
                queue.push_back(v);
            }
        }
    }
    dist
}

/// Closed-form link radius label for distances (dx, dy) from the two link
/// endpoints. Enumerates distance pairs by (dx+dy, min) and ranks from 2.
pub fn drnl_value(dx: u32, dy: u32) -> i64 {
    let d = (dx + dy) as i64;
    1 + dx.min(dy) as i64 + (d / 2) * (d / 2 + d % 2 - 1)
}

/// Link radius labeling: endpoints get 1; node i gets drnl_value(dx, dy)
/// where dx is the hop count to x with y masked and dy symmetrically
/// (mask=false measures in the intact graph); 0 when either endpoint is
/// unreachable.
pub fn drnl(s: &NodePoset, g: &Graph, mask: bool) -> Result<NodeLabeling, LabelError> {
    let members = s.sorted_members();
    if members.len() != 2 {
        return Err(LabelError::LinkArity { got: members.len() });
    }
    assert_members_in(s, g);
    let (x, y) = (members[0], members[1]);
    let only = |node: NodeId| if mask { BTreeSet::from([node]) } else { BTreeSet::new() };
    let from_x = bfs_masked(g, x, &only(y));
    let from_y = bfs_masked(g, y, &only(x));
    Ok((1..=g.n())
        .map(|i| {
            if i == x || i == y {
                return vec![1];
            }
            match (from_x[i], from_y[i]) {
                (Some(dx), Some(dy)) => vec![drnl_value(dx, dy)],
                _ => vec![0],
            }
        })
        .collect())
}

/// Distance vector labeling: one slot per member, sorted ascending so the
/// vector is a function of the set. Distances cap at d_max when given;
/// unreachable nodes get a sentinel one past the cap (or past any possible
/// hop count when uncapped). mask=true measures the distance to each member
/// with all other members removed.
pub fn distance_encoding(
    s: &NodePoset,
    g: &Graph,
    d_max: Option<u32>,
    mask: bool,
) -> NodeLabeling {
    assert_members_in(s, g);
    let members = s.sorted_members();
    let sentinel = match d_max {
        Some(cap) => cap as i64 + 1,
        None => g.n() as i64,
    };
    let mut slots: Vec<Vec<i64>> = vec![Vec::with_capacity(members.len()); g.n() + 1];
    for &x in &members {
        let masked: BTreeSet<NodeId> = if mask {
            members.iter().copied().filter(|&m| m != x).collect()
        } else {
            BTreeSet::new()
        };
        let dist = bfs_masked(g, x, &masked);
        for i in 1..=g.n() {
            let v = match dist[i] {
                Some(d) => d_max.map_or(d as i64, |cap| d.min(cap) as i64),
                None => sentinel,
            };
            slots[i].push(v);
        }
    }
    slots
        .into_iter()
        .skip(1)
        .map(|mut v| {
            v.sort_unstable();
            v
        })
        .collect()
}

/// Poset labeling by Hasse-diagram node type: members get a dense nonzero id
/// of the canonical code of their Hasse node, non-members 0. Equal labels
/// within one call ⟺ isomorphic Hasse-diagram nodes.
pub fn hasse_embedding(s: &NodePoset, g: &Graph) -> Result<NodeLabeling, LabelError> {
    assert_members_in(s, g);
    let h = hasse_diagram(s);
    if h.n() > BRUTE_FORCE_BOUND {
        return Err(LabelError::HasseBound { size: h.n(), bound: BRUTE_FORCE_BOUND });
    }
    let codes: Vec<_> = (1..=h.n()).map(|r| node_code(r, &h)).collect::<Result<_, _>>()?;
    let mut distinct = codes.clone();
    distinct.sort();
    distinct.dedup();
    Ok((1..=g.n())
        .map(|u| match s.member_rank(u) {
            Some(rank) => {
                let code = &codes[rank - 1];
                vec![distinct.iter().position(|c| c == code).unwrap() as i64 + 1]
            }
            None => vec![0],
        })
        .collect())
}

/// Totally ordered members get labels 1..=|S| in relation order; others 0.
pub fn linear_order_labels(s: &NodePoset, g: &Graph) -> Result<NodeLabeling, LabelError> {
    assert_members_in(s, g);
    let mut order = s.sorted_members();
    for &u in &order {
        for &v in &order {
            if u < v && !s.le(u, v) && !s.le(v, u) {
                return Err(LabelError::NotTotallyOrdered { u, v });
            }
        }
    }
    order.sort_by(|&a, &b| {
        if a == b {
            std::cmp::Ordering::Equal
        } else if s.le(a, b) {
            std::cmp::Ordering::Less
        } else {
            std::cmp::Ordering::Greater
        }
    });
    let mut labels = vec![vec![0]; g.n()];
    for (i, &u) in order.iter().enumerate() {
        labels[u - 1] = vec![i as i64 + 1];
    }
    Ok(labels)
}

/// Members get their block index in the ordered partition recovered from the
/// relation; fails unless the strict relation is exactly "lower block below
/// higher block" for some partition. A chain is the all-singleton case, an
/// antichain the one-block case.
pub fn nearly_linear_order_labels(s: &NodePoset, g: &Graph) -> Result<NodeLabeling, LabelError> {
    assert_members_in(s, g);
    let members = s.sorted_members();
    let mut height: Vec<i64> = vec![1; members.len()];
    for _ in 0..members.len() {
        for (i, &u) in members.iter().enumerate() {
            height[i] = 1 + members
                .iter()
                .enumerate()
                .filter(|&(_, &v)| v != u && s.le(v, u))
                .map(|(j, _)| height[j])
                .max()
                .unwrap_or(0);
        }
    }
    for (i, &u) in members.iter().enumerate() {
        for (j, &v) in members.iter().enumerate() {
            if u != v && (s.le(u, v) != (height[i] < height[j])) {
                return Err(LabelError::NotNearlyLinear);
            }
        }
    }
    let mut labels = vec![vec![0]; g.n()];
    for (i, &u) in members.iter().enumerate() {
        labels[u - 1] = vec![height[i]];
    }
    Ok(labels)
}

/// Pick one member by policy and mark only it.
pub fn one_head_label(
    s: &NodePoset,
    g: &Graph,
    policy: SubsetPolicy,
) -> Result<NodeLabeling, LabelError> {
    assert_members_in(s, g);
    let members = s.sorted_members();
    assert!(!members.is_empty(), "one-head selection needs a nonempty target set");
    let chosen = match policy {
        SubsetPolicy::Random(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            members[rng.gen_range(0..members.len())]
        }
        SubsetPolicy::MaxDegree => {
            // ties break to the lowest node index
            *members.iter().max_by_key(|&&u| (g.degree(u), std::cmp::Reverse(u))).unwrap()
        }
        SubsetPolicy::LeastElement => *members
            .iter()
            .find(|&&u| members.iter().all(|&v| s.le(u, v)))
            .ok_or(LabelError::NoLeastElement)?,
    };
    Ok(subset_zero_one(&BTreeSet::from([chosen]), g))
}

/// Clone of g with each label dimension appended as a node feature column,
/// the "stacked" input a refinement engine consumes.
pub fn graph_with_labels(g: &Graph, labels: &NodeLabeling) -> Graph {
    assert_eq!(labels.len(), g.n(), "one label vector per node");
    let dim = labels.first().map_or(0, |l| l.len());
    assert!(labels.iter().all(|l| l.len() == dim), "label vectors must share one dimension");
    let mut out = g.clone();
    for col in 0..dim {
        let column: Vec<Fixed> = labels.iter().map(|l| Fixed::from_int(l[col])).collect();
        out = out.append_feature_column(&column).unwrap();
    }
    out
}
