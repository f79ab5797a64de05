//! 1-WL color refinement over one graph or a joint disjoint union.

use std::collections::BTreeMap;

use graph_core::{Graph, NodePoset};

use crate::{class_count, Coloring, Layers, NodeLabeling, WlError};

/// Disjoint union of labeled graphs refined together so that color ids are
/// comparable across all parts. Which part a node belongs to is tracked by
/// position only; it never enters a signature, so identical structures in
/// different parts get identical colors.
pub struct JointRefinementContext<'a> {
    parts: Vec<(&'a Graph, Option<&'a NodeLabeling>)>,
}

impl<'a> JointRefinementContext<'a> {
    pub fn new() -> JointRefinementContext<'a> {
        JointRefinementContext { parts: Vec::new() }
    }

    pub fn push(&mut self, g: &'a Graph, labels: Option<&'a NodeLabeling>) -> Result<(), WlError> {
        if let Some(l) = labels {
            if l.len() != g.n() {
                return Err(WlError::LabelingSize { expected: g.n(), got: l.len() });
            }
        }
        self.parts.push((g, labels));
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Runs refinement and returns one coloring per part, ids shared.
    pub fn refine(&self, layers: Layers) -> Vec<Coloring> {
        // Round 0: rank of (node features, label vector) in the sorted table
        // of distinct pairs across all parts.
        let mut table: BTreeMap<(Vec<i64>, Vec<i64>), u32> = BTreeMap::new();
        let sig0 = |g: &Graph, labels: Option<&NodeLabeling>, u: usize| {
            let feats: Vec<i64> = g.node_feature(u).iter().map(|f| f.raw()).collect();
            let label: Vec<i64> = match labels {
                Some(l) => l[u - 1].clone(),
                None => Vec::new(),
            };
            (feats, label)
        };
        for &(g, labels) in &self.parts {
            for u in 1..=g.n() {
                table.insert(sig0(g, labels, u), 0);
            }
        }
        for (rank, (_, id)) in table.iter_mut().enumerate() {
            *id = rank as u32;
        }
        let mut current: Vec<Vec<u32>> = self
            .parts
            .iter()
            .map(|&(g, labels)| (1..=g.n()).map(|u| table[&sig0(g, labels, u)]).collect())
            .collect();

        // Edge feature vectors interned once, sorted across all parts.
        let mut edge_table: BTreeMap<Vec<i64>, u64> = BTreeMap::new();
        for &(g, _) in &self.parts {
            for (i, j) in g.edge_pairs() {
                let raw: Vec<i64> = g.edge_feature(i, j).unwrap().iter().map(|f| f.raw()).collect();
                edge_table.insert(raw, 0);
            }
        }
        for (rank, (_, id)) in edge_table.iter_mut().enumerate() {
            *id = rank as u64;
        }
        let edge_id = |g: &Graph, i: usize, j: usize| {
            let raw: Vec<i64> = g.edge_feature(i, j).unwrap().iter().map(|f| f.raw()).collect();
            edge_table[&raw]
        };

        let mut histories: Vec<Vec<Vec<u32>>> = current.iter().map(|c| vec![c.clone()]).collect();
        let mut classes = {
            let views: Vec<&[u32]> = current.iter().map(|c| c.as_slice()).collect();
            class_count(&views)
        };
        let max_rounds = match layers {
            Layers::Rounds(h) => h,
            // Each round before stabilization adds at least one class, and
            // there are at most as many classes as nodes.
            Layers::Converge => self.parts.iter().map(|&(g, _)| g.n()).sum::<usize>() as u32 + 1,
        };
        let mut converged = false;
        for _ in 0..max_rounds {
            // Signature: own color, sorted (color, edge id) multiset over
            // out-neighbors, same over in-neighbors for directed graphs.
            let mut sig_table: BTreeMap<Vec<u64>, u32> = BTreeMap::new();
            let mut sigs: Vec<Vec<Vec<u64>>> = Vec::with_capacity(self.parts.len());
            for (part, &(g, _)) in self.parts.iter().enumerate() {
                let colors = &current[part];
                let mut part_sigs = Vec::with_capacity(g.n());
                for u in 1..=g.n() {
                    let mut sig: Vec<u64> = vec![colors[u - 1] as u64];
                    let mut out: Vec<(u64, u64)> = g
                        .out_neighbors(u)
                        .iter()
                        .map(|&v| (colors[v - 1] as u64, edge_id(g, u, v)))
                        .collect();
                    out.sort_unstable();
                    sig.push(out.len() as u64);
                    for (c, e) in out {
                        sig.push(c);
                        sig.push(e);
                    }
                    if g.directed() {
                        let mut inn: Vec<(u64, u64)> = g
                            .in_neighbors(u)
                            .iter()
                            .map(|&v| (colors[v - 1] as u64, edge_id(g, v, u)))
                            .collect();
                        inn.sort_unstable();
                        sig.push(inn.len() as u64);
                        for (c, e) in inn {
                            sig.push(c);
                            sig.push(e);
                        }
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
                converged = true;
                if layers == Layers::Converge {
                    break;
                }
            }
            classes = new_classes;
        }
        histories
            .into_iter()
            .map(|rounds| Coloring::new(rounds, converged))
            .collect()
    }
}

impl<'a> Default for JointRefinementContext<'a> {
    fn default() -> Self {
        Self::new()
    }
}

/// Refinement of a single graph. Round-0 colors come from node features and
/// the initial labels; each round aggregates neighbor colors with edge
/// features, split by direction on directed graphs.
pub fn wl_refine(g: &Graph, init: Option<&NodeLabeling>, layers: Layers) -> Result<Coloring, WlError> {
    let mut ctx = JointRefinementContext::new();
    ctx.push(g, init)?;
    Ok(ctx.refine(layers).pop().expect("one part"))
}

/// Joint refinement of two labeled graphs; true iff the color multisets of
/// the two member sets differ, i.e. an injective aggregation over converged
/// colors would tell them apart.
pub fn wl_distinguishes(
    g1: &Graph,
    l1: Option<&NodeLabeling>,
    s1: &NodePoset,
    g2: &Graph,
    l2: Option<&NodeLabeling>,
    s2: &NodePoset,
    layers: Layers,
) -> Result<bool, WlError> {
    let mut ctx = JointRefinementContext::new();
    ctx.push(g1, l1)?;
    ctx.push(g2, l2)?;
    let colorings = ctx.refine(layers);
    let m1 = colorings[0].color_multiset(s1.members().iter().copied());
    let m2 = colorings[1].color_multiset(s2.members().iter().copied());
    Ok(m1 != m2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zero_one(n: usize, marked: &[usize]) -> NodeLabeling {
        (1..=n).map(|u| vec![marked.contains(&u) as i64]).collect()
    }

    #[test]
    fn unlabeled_cycle_stays_monochrome() {
        let c = wl_refine(&Graph::cycle(6), None, Layers::Converge).unwrap();
        assert!(c.converged());
        for round in c.rounds() {
            assert!(round.iter().all(|&x| x == round[0]));
        }
    }

    #[test]
    fn star_splits_into_center_and_leaves() {
        let star = Graph::undirected_from_edges(4, &[(1, 2), (1, 3), (1, 4)]).unwrap();
        let c = wl_refine(&star, None, Layers::Rounds(1)).unwrap();
        assert_eq!(c.rounds().len(), 2);
        let r1 = &c.rounds()[1];
        assert_eq!(r1[1], r1[2]);
        assert_eq!(r1[2], r1[3]);
        assert_ne!(r1[0], r1[1]);
    }

    #[test]
    fn zero_one_labels_split_cycle_by_distance() {
        let labels = zero_one(6, &[1, 2]);
        let c = wl_refine(&Graph::cycle(6), Some(&labels), Layers::Converge).unwrap();
        let r0 = &c.rounds()[0];
        assert_eq!(r0[0], r0[1], "both labeled nodes share a color at round 0");
        assert_eq!(r0[2], r0[5], "all unlabeled nodes share a color at round 0");
        assert_eq!(r0[2], r0[3]);
        assert_ne!(r0[0], r0[2]);
        let r1 = &c.rounds()[1];
        assert_eq!(r1[2], r1[5], "nodes adjacent to one labeled node");
        assert_eq!(r1[3], r1[4], "nodes two steps away");
        assert_ne!(r1[2], r1[3], "round 1 separates by distance to the labeled pair");
    }

    #[test]
    fn directed_paths_separate_source_and_sink() {
        let g = Graph::directed_from_edges(3, &[(1, 2), (2, 3)]).unwrap();
        let c = wl_refine(&g, None, Layers::Converge).unwrap();
        let f = c.final_colors();
        assert_ne!(f[0], f[2], "source has out-degree, sink has in-degree");
        // Without direction splitting 1 and 3 would both see one neighbor.
        let u = Graph::undirected_from_edges(3, &[(1, 2), (2, 3)]).unwrap();
        let cu = wl_refine(&u, None, Layers::Converge).unwrap();
        assert_eq!(cu.final_colors()[0], cu.final_colors()[2]);
    }

    #[test]
    fn vanilla_aggregation_misses_the_cycle_pair_but_labels_fix_it() {
        let c6 = Graph::cycle(6);
        let s12 = NodePoset::set_of([1, 2]);
        let s13 = NodePoset::set_of([1, 3]);
        assert!(!wl_distinguishes(&c6, None, &s12, &c6, None, &s13, Layers::Converge).unwrap());
        let l12 = zero_one(6, &[1, 2]);
        let l13 = zero_one(6, &[1, 3]);
        assert!(wl_distinguishes(&c6, Some(&l12), &s12, &c6, Some(&l13), &s13, Layers::Converge).unwrap());
        assert!(!wl_distinguishes(&c6, Some(&l12), &s12, &c6, Some(&l12), &s12, Layers::Converge).unwrap());
    }

    #[test]
    fn joint_context_rejects_wrong_label_length() {
        let g = Graph::cycle(3);
        let labels = zero_one(4, &[1]);
        assert!(matches!(
            wl_refine(&g, Some(&labels), Layers::Converge),
            Err(WlError::LabelingSize { expected: 3, got: 4 })
        ));
    }

    #[test]
    fn fixed_layer_count_runs_exactly_that_many_rounds() {
        let g = Graph::path(7);
        let c = wl_refine(&g, None, Layers::Rounds(2)).unwrap();
        assert_eq!(c.rounds().len(), 3);
        assert!(!c.converged(), "P7 needs more than 2 rounds to stabilize");
    }
}
