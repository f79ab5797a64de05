//! Oblivious k-WL over node tuples, l-pooling of k-WL colors, and k,l-WL
//! (k-WL run on every l-tuple labeling of the graph).

use std::collections::BTreeMap;

use graph_core::{Graph, NodeId};

use crate::{class_count, Coloring, NodeLabeling, WlError};

/// Joint k-WL result: per-part tuple colorings (ids shared across parts) and
/// a dense id per part for the multiset of its final tuple colors.
#[derive(Clone, Debug)]
pub struct KwlOutcome {
    pub tuple_colorings: Vec<Coloring>,
    pub graph_colors: Vec<u32>,
}

fn budget_for(k: usize) -> Result<usize, WlError> {
    match k {
        2 => Ok(10),
        3 => Ok(7),
        _ => Err(WlError::UnsupportedK { k }),
    }
}

fn check_budget(graphs: &[&Graph], k: usize, extra_cap: Option<usize>) -> Result<(), WlError> {
    let mut max_n = budget_for(k)?;
    if let Some(cap) = extra_cap {
        max_n = max_n.min(cap);
    }
    for g in graphs {
        if g.n() > max_n {
            return Err(WlError::TupleBudget { k, n: g.n(), max_n });
        }
    }
    Ok(())
}

/// Row-major index of a tuple over 1..=n.
pub fn tuple_index(n: usize, tuple: &[NodeId]) -> usize {
    tuple.iter().fold(0, |acc, &v| acc * n + (v - 1))
}

fn tuple_at(n: usize, k: usize, mut idx: usize) -> Vec<NodeId> {
    let mut t = vec![0; k];
    for i in (0..k).rev() {
        t[i] = idx % n + 1;
        idx /= n;
    }
    t
}

/// Initial color signature: the isomorphism type of the tuple. Two tuples
/// get the same signature iff their equality patterns match and the ordered
/// induced subgraphs (adjacency with edge features, node features, labels,
/// positions aligned) coincide.
fn initial_signature(
    g: &Graph,
    labels: Option<&NodeLabeling>,
    tuple: &[NodeId],
    edge_id: &impl Fn(&Graph, usize, usize) -> i64,
) -> Vec<i64> {
    let k = tuple.len();
    let mut sig = Vec::new();
    for i in 0..k {
        for j in 0..k {
            sig.push((tuple[i] == tuple[j]) as i64);
        }
    }
    for &u in tuple {
        let f = g.node_feature(u);
        sig.push(f.len() as i64);
        sig.extend(f.iter().map(|v| v.raw()));
        match labels {
            Some(l) => {
                sig.push(l[u - 1].len() as i64);
                sig.extend_from_slice(&l[u - 1]);
            }
            None => sig.push(-1),
        }
    }
    for &u in tuple {
        for &v in tuple {
            if u == v {
                sig.push(-2);
            } else if g.has_edge(u, v) {
                sig.push(edge_id(g, u, v));
            } else {
                sig.push(-1);
            }
        }
    }
    sig
}

fn intern_edge_features(parts: &[(&Graph, Option<&NodeLabeling>)]) -> BTreeMap<Vec<i64>, i64> {
    let mut table: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
    for &(g, _) in parts {
        for (i, j) in g.edge_pairs() {
            let raw: Vec<i64> = g.edge_feature(i, j).unwrap().iter().map(|f| f.raw()).collect();
            table.insert(raw, 0);
        }
    }
    for (rank, (_, id)) in table.iter_mut().enumerate() {
        *id = rank as i64;
    }
    table
}

/// Joint k-WL over labeled parts, run to convergence.
fn kwl_core(parts: &[(&Graph, Option<&NodeLabeling>)], k: usize) -> Vec<Coloring> {
    let edge_table = intern_edge_features(parts);
    let edge_id = |g: &Graph, i: usize, j: usize| {
        let raw: Vec<i64> = g.edge_feature(i, j).unwrap().iter().map(|f| f.raw()).collect();
        edge_table[&raw]
    };

    let mut table: BTreeMap<Vec<i64>, u32> = BTreeMap::new();
    let mut init_sigs: Vec<Vec<Vec<i64>>> = Vec::with_capacity(parts.len());
    for &(g, labels) in parts {
        let n = g.n();
        let count = n.pow(k as u32);
        let mut sigs = Vec::with_capacity(count);
        for idx in 0..count {
            let tuple = tuple_at(n, k, idx);
            let sig = initial_signature(g, labels, &tuple, &edge_id);
            table.insert(sig.clone(), 0);
            sigs.push(sig);
        }
        init_sigs.push(sigs);
    }
    for (rank, (_, id)) in table.iter_mut().enumerate() {
        *id = rank as u32;
    }
    let mut current: Vec<Vec<u32>> = init_sigs
        .iter()
        .map(|sigs| sigs.iter().map(|s| table[s]).collect())
        .collect();

    let mut histories: Vec<Vec<Vec<u32>>> = current.iter().map(|c| vec![c.clone()]).collect();
    let mut classes = {
        let views: Vec<&[u32]> = current.iter().map(|c| c.as_slice()).collect();
        class_count(&views)
    };
    loop {
        let mut sig_table: BTreeMap<Vec<u32>, u32> = BTreeMap::new();
        let mut sigs: Vec<Vec<Vec<u32>>> = Vec::with_capacity(parts.len());
        for (part, &(g, _)) in parts.iter().enumerate() {
            let n = g.n();
            let colors = &current[part];
            let count = colors.len();
            let mut part_sigs = Vec::with_capacity(count);
            for idx in 0..count {
                let tuple = tuple_at(n, k, idx);
                let mut sig: Vec<u32> = Vec::with_capacity(1 + k * n);
                sig.push(colors[idx]);
                let mut place = n.pow((k - 1) as u32);
                for i in 0..k {
                    let base = idx - (tuple[i] - 1) * place;
                    let mut bucket: Vec<u32> = (0..n).map(|u| colors[base + u * place]).collect();
                    bucket.sort_unstable();
                    sig.extend_from_slice(&bucket);
                    place /= n;
                }
                sig_table.insert(sig.clone(), 0);
                part_sigs.push(sig);
            }
            sigs.push(part_sigs);
        }
        for (rank, (_, id)) in sig_table.iter_mut().enumerate() {
            *id = rank as u32;
        }
        for (part, part_sigs) in sigs.iter().enumerate() {
            current[part] = part_sigs.iter().map(|s| sig_table[s]).collect();
        }
        for (part, c) in current.iter().enumerate() {
            histories[part].push(c.clone());
        }
        let new_classes = {
            let views: Vec<&[u32]> = current.iter().map(|c| c.as_slice()).collect();
            class_count(&views)
        };
        if new_classes == classes {
            break;
        }
        classes = new_classes;
    }
    histories.into_iter().map(|rounds| Coloring::new(rounds, true)).collect()
}

/// Dense ids for per-part sorted color multisets.
fn dense_multiset_ids(multisets: &[Vec<u32>]) -> Vec<u32> {
    let mut table: BTreeMap<&Vec<u32>, u32> = BTreeMap::new();
    for m in multisets {
        table.insert(m, 0);
    }
    for (rank, (_, id)) in table.iter_mut().enumerate() {
        *id = rank as u32;
    }
    multisets.iter().map(|m| table[m]).collect()
}

fn outcome_from(colorings: Vec<Coloring>) -> KwlOutcome {
    let multisets: Vec<Vec<u32>> = colorings
        .iter()
        .map(|c| {
            let mut m = c.final_colors().to_vec();
            m.sort_unstable();
            m
        })
        .collect();
    let graph_colors = dense_multiset_ids(&multisets);
    KwlOutcome { tuple_colorings: colorings, graph_colors }
}

/// k-WL to convergence over several graphs at once; tuple and graph color
/// ids are comparable across all of them.
pub fn kwl_refine_joint(graphs: &[&Graph], k: usize) -> Result<KwlOutcome, WlError> {
    check_budget(graphs, k, None)?;
    let parts: Vec<(&Graph, Option<&NodeLabeling>)> = graphs.iter().map(|&g| (g, None)).collect();
    Ok(outcome_from(kwl_core(&parts, k)))
}

/// Single-graph k-WL tuple coloring.
pub fn kwl_refine(g: &Graph, k: usize) -> Result<Coloring, WlError> {
    Ok(kwl_refine_joint(&[g], k)?.tuple_colorings.pop().expect("one part"))
}

/// l-pooling of k-WL colors: the color of an l-tuple is the dense id of the
/// multiset of k-tuple colors over all completions of its last k-l slots.
pub fn kwl_l_pooling_joint(graphs: &[&Graph], k: usize, l: usize) -> Result<KwlOutcome, WlError> {
    if l == 0 || l >= k {
        return Err(WlError::UnsupportedPooling { k, l });
    }
    check_budget(graphs, k, None)?;
    let parts: Vec<(&Graph, Option<&NodeLabeling>)> = graphs.iter().map(|&g| (g, None)).collect();
    let base = kwl_core(&parts, k);

    let mut pooled_multisets: Vec<Vec<Vec<u32>>> = Vec::with_capacity(graphs.len());
    for (part, g) in graphs.iter().enumerate() {
        let n = g.n();
        let colors = base[part].final_colors();
        let tail = n.pow((k - l) as u32);
        let mut per_tuple = Vec::with_capacity(n.pow(l as u32));
        for head in 0..n.pow(l as u32) {
            let mut bucket: Vec<u32> = (0..tail).map(|t| colors[head * tail + t]).collect();
            bucket.sort_unstable();
            per_tuple.push(bucket);
        }
        pooled_multisets.push(per_tuple);
    }
    let mut table: BTreeMap<&Vec<u32>, u32> = BTreeMap::new();
    for part in &pooled_multisets {
        for m in part {
            table.insert(m, 0);
        }
    }
    for (rank, (_, id)) in table.iter_mut().enumerate() {
        *id = rank as u32;
    }
    let colorings: Vec<Coloring> = pooled_multisets
        .iter()
        .map(|part| Coloring::new(vec![part.iter().map(|m| table[m]).collect()], true))
        .collect();
    Ok(outcome_from(colorings))
}

pub fn kwl_l_pooling(g: &Graph, k: usize, l: usize) -> Result<Coloring, WlError> {
    Ok(kwl_l_pooling_joint(&[g], k, l)?.tuple_colorings.pop().expect("one part"))
}

/// Labels for one l-tuple: node u carries the sorted list of 1-based tuple
/// positions holding u, so repeated entries stay distinguishable.
fn tuple_labeling(n: usize, tuple: &[NodeId]) -> NodeLabeling {
    let mut labels: NodeLabeling = vec![Vec::new(); n];
    for (pos, &u) in tuple.iter().enumerate() {
        labels[u - 1].push(pos as i64 + 1);
    }
    labels
}

/// k,l-WL over several graphs: every l-tuple of each graph labels a copy,
/// all copies refine jointly under k-WL, and the color of an l-tuple is the
/// graph color of its copy. Returns one single-round coloring per graph over
/// its l-tuples plus per-graph dense multiset ids.
pub fn kl_wl_joint(graphs: &[&Graph], k: usize, l: usize) -> Result<KwlOutcome, WlError> {
    if l == 0 || l > 2 {
        return Err(WlError::UnsupportedL { l });
    }
    check_budget(graphs, k, Some(8))?;

    let mut labelings: Vec<NodeLabeling> = Vec::new();
    let mut spans: Vec<(usize, usize)> = Vec::new();
    for g in graphs {
        let n = g.n();
        let start = labelings.len();
        for idx in 0..n.pow(l as u32) {
            labelings.push(tuple_labeling(n, &tuple_at(n, l, idx)));
        }
        spans.push((start, labelings.len()));
    }
    let mut parts: Vec<(&Graph, Option<&NodeLabeling>)> = Vec::with_capacity(labelings.len());
    for (part, g) in graphs.iter().enumerate() {
        for labeling in &labelings[spans[part].0..spans[part].1] {
            parts.push((g, Some(labeling)));
        }
    }
    let copies = kwl_core(&parts, k);
    let multisets: Vec<Vec<u32>> = copies
        .iter()
        .map(|c| {
            let mut m = c.final_colors().to_vec();
            m.sort_unstable();
            m
        })
        .collect();
    let copy_colors = dense_multiset_ids(&multisets);

    let colorings: Vec<Coloring> = spans
        .iter()
        .map(|&(a, b)| Coloring::new(vec![copy_colors[a..b].to_vec()], true))
        .collect();
    Ok(outcome_from(colorings))
}

/// Result of a single-graph k,l-WL run.
#[derive(Clone, Debug)]
pub struct KlWlOutput {
    /// Color per l-tuple in row-major tuple order.
    pub tuple_colors: Vec<u32>,
    /// Dense id of the multiset of tuple colors.
    pub graph_color: u32,
    /// Color of the queried tuple, when one was passed.
    pub queried: Option<u32>,
}

pub fn kl_wl(g: &Graph, k: usize, l: usize, s: Option<&[NodeId]>) -> Result<KlWlOutput, WlError> {
    if let Some(tuple) = s {
        if tuple.len() != l {
            return Err(WlError::TupleLen { expected: l, got: tuple.len() });
        }
        if let Some(&bad) = tuple.iter().find(|&&u| u == 0 || u > g.n()) {
            return Err(WlError::TupleNode { node: bad, n: g.n() });
        }
    }
    let outcome = kl_wl_joint(&[g], k, l)?;
    let colors = outcome.tuple_colorings[0].final_colors().to_vec();
    let queried = s.map(|tuple| colors[tuple_index(g.n(), tuple)]);
    Ok(KlWlOutput { tuple_colors: colors, graph_color: outcome.graph_colors[0], queried })
}
