//! Cross-engine agreement experiments: higher-order tuple colors against
//! the linear-order labeling with plain 1-WL, and k-WL graph colors
//! against their l-pooled form.

use graph_core::{apply_permutation, NodeId, NodePoset};
use labeling::linear_order_labels;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use wl_engine::{kl_wl_joint, kwl_l_pooling_joint, kwl_refine_joint, JointRefinementContext, Layers};

use crate::enumerate::{random_relabeling, sample_undirected};
use crate::report::GraphData;
use crate::LabError;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AgreementTrial {
    pub a: GraphData,
    pub b: GraphData,
    pub tuple_a: Vec<NodeId>,
    pub tuple_b: Vec<NodeId>,
    pub first_differs: bool,
    pub second_differs: bool,
}

/// Two verdict sources run over the same sampled pairs; a disagreement is
/// any trial where exactly one of them separates the pair.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AgreementReport {
    pub description: String,
    pub trials: u64,
    pub agreements: u64,
    pub disagreements: Vec<AgreementTrial>,
}

impl AgreementReport {
    pub fn all_agree(&self) -> bool {
        self.agreements == self.trials && self.disagreements.is_empty()
    }
}

fn distinct_tuple(n: usize, l: usize, rng: &mut ChaCha8Rng) -> Vec<NodeId> {
    assert!(l <= n);
    rand::seq::index::sample(rng, n, l).iter().map(|i| i + 1).collect()
}

fn tuple_index(n: usize, tuple: &[NodeId]) -> usize {
    let mut idx = 0;
    for &u in tuple {
        idx = idx * n + (u - 1);
    }
    idx
}

/// Tuple-color equality from 2-WL over index-labeled copies versus
/// whole-graph 1-WL separation of the chain-labeled graphs, on `trials`
/// sampled tuple pairs. Every fourth pair is a planted relabeled copy.
pub fn tuple_color_agreement(seed: u64, trials: u64, l: usize) -> Result<AgreementReport, LabError> {
    assert!(l == 1 || l == 2);
    let n_max = if l == 1 { 8 } else { 6 };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut agreements = 0;
    let mut disagreements = Vec::new();
    for trial in 0..trials {
        let n = rng.gen_range(4..=n_max);
        let g1 = sample_undirected(n, 40, &mut rng);
        let t1 = distinct_tuple(n, l, &mut rng);
        let (g2, t2) = if trial % 4 == 3 {
            let perm = random_relabeling(n, &mut rng);
            (apply_permutation(&g1, &perm)?, t1.iter().map(|&u| perm.apply(u)).collect())
        } else {
            (sample_undirected(n, 40, &mut rng), distinct_tuple(n, l, &mut rng))
        };

        let outcome = kl_wl_joint(&[&g1, &g2], 2, l)?;
        let color_a = outcome.tuple_colorings[0].color_of(tuple_index(n, &t1) + 1);
        let color_b = outcome.tuple_colorings[1].color_of(tuple_index(n, &t2) + 1);
        let first_differs = color_a != color_b;

        let l1 = linear_order_labels(&NodePoset::chain(&t1), &g1)?;
        let l2 = linear_order_labels(&NodePoset::chain(&t2), &g2)?;
        let mut ctx = JointRefinementContext::new();
        ctx.push(&g1, Some(&l1))?;
        ctx.push(&g2, Some(&l2))?;
        let colorings = ctx.refine(Layers::Converge);
        let whole = |c: &wl_engine::Coloring| {
            let mut m = c.final_colors().to_vec();
            m.sort_unstable();
            m
        };
        let second_differs = whole(&colorings[0]) != whole(&colorings[1]);

        if first_differs == second_differs {
            agreements += 1;
        } else {
            disagreements.push(AgreementTrial {
                a: GraphData::from_graph(&g1),
                b: GraphData::from_graph(&g2),
                tuple_a: t1,
                tuple_b: t2,
                first_differs,
                second_differs,
            });
        }
    }
    Ok(AgreementReport {
        description: format!("2,{l}-WL tuple colors vs chain labeling with 1-WL"),
        trials,
        agreements,
        disagreements,
    })
}

/// k-WL graph-color equality versus the l-pooled graph color, on `trials`
/// sampled graph pairs. Every fourth pair is a planted relabeled copy.
pub fn pooling_agreement(seed: u64, trials: u64, k: usize, l: usize) -> Result<AgreementReport, LabError> {
    assert!(l < k);
    let n_max = if k == 2 { 8 } else { 5 };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut agreements = 0;
    let mut disagreements = Vec::new();
    for trial in 0..trials {
        let n = rng.gen_range(4..=n_max);
        let g1 = sample_undirected(n, 40, &mut rng);
        let g2 = if trial % 4 == 3 {
            apply_permutation(&g1, &random_relabeling(n, &mut rng))?
        } else {
            sample_undirected(n, 40, &mut rng)
        };

        let plain = kwl_refine_joint(&[&g1, &g2], k)?;
        let pooled = kwl_l_pooling_joint(&[&g1, &g2], k, l)?;
        let first_differs = plain.graph_colors[0] != plain.graph_colors[1];
        let second_differs = pooled.graph_colors[0] != pooled.graph_colors[1];

        if first_differs == second_differs {
            agreements += 1;
        } else {
            disagreements.push(AgreementTrial {
                a: GraphData::from_graph(&g1),
                b: GraphData::from_graph(&g2),
                tuple_a: Vec::new(),
                tuple_b: Vec::new(),
                first_differs,
                second_differs,
            });
        }
    }
    Ok(AgreementReport {
        description: format!("{k}-WL graph colors vs {l}-pooled {k}-WL graph colors"),
        trials,
        agreements,
        disagreements,
    })
}
