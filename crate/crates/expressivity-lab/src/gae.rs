//! Aggregation-of-unlabeled-codes audit: joint node-set structure is
//! invisible to independently computed node representations.
//!
//! Exhibits are pairs the oracle separates while the unlabeled member-code
//! multisets tie: adjacent vs distance-2 pairs in cycles, triangle edge vs
//! rung in the prism. Agreement instances (complete graphs, stars) pin down
//! where the aggregated readout is still exact, so the audit checks the
//! blindness claim in both directions.

use graph_core::{Graph, NodePoset};

use crate::report::{ReplayCase, Tally, TargetData};
use crate::{AuditResult, LabError};

#[derive(Clone, Debug)]
pub struct GaeInstance {
    pub name: String,
    pub a: TargetData,
    pub b: TargetData,
    /// True: expect readouts to tie although the oracle separates.
    /// False: expect readout equality to match the oracle exactly.
    pub exhibit: bool,
}

fn target(g: &Graph, members: impl IntoIterator<Item = usize>) -> TargetData {
    TargetData::new(g, &NodePoset::set_of(members))
}

fn prism() -> Graph {
    Graph::undirected_from_edges(
        6,
        &[(1, 2), (2, 3), (1, 3), (4, 5), (5, 6), (4, 6), (1, 4), (2, 5), (3, 6)],
    )
    .unwrap()
}

pub fn default_gae_instances() -> Vec<GaeInstance> {
    let mut out = Vec::new();
    for n in 4..=8 {
        let g = Graph::cycle(n);
        out.push(GaeInstance {
            name: format!("{n}-cycle: adjacent pair vs distance-2 pair"),
            a: target(&g, [1, 2]),
            b: target(&g, [1, 3]),
            exhibit: true,
        });
    }
    let prism = prism();
    out.push(GaeInstance {
        name: "prism: triangle edge vs rung".to_string(),
        a: target(&prism, [1, 2]),
        b: target(&prism, [1, 4]),
        exhibit: true,
    });

    // Complete graphs: every same-size pair is isomorphic and must tie.
    for n in 3..=5 {
        let g = Graph::complete(n);
        for k in 1..=3.min(n) {
            let subsets = crate::enumerate::k_subsets(n, k);
            for i in 0..subsets.len() {
                for j in i + 1..subsets.len() {
                    out.push(GaeInstance {
                        name: format!("complete K{n}: {:?} vs {:?}", subsets[i], subsets[j]),
                        a: target(&g, subsets[i].clone()),
                        b: target(&g, subsets[j].clone()),
                        exhibit: false,
                    });
                }
            }
        }
    }

    // Star: center-leaf vs leaf-leaf pairs differ in readout and in truth.
    let star = Graph::undirected_from_edges(5, &[(1, 2), (1, 3), (1, 4), (1, 5)]).unwrap();
    let subsets = crate::enumerate::k_subsets(5, 2);
    for i in 0..subsets.len() {
        for j in i + 1..subsets.len() {
            out.push(GaeInstance {
                name: format!("star S4: {:?} vs {:?}", subsets[i], subsets[j]),
                a: target(&star, subsets[i].clone()),
                b: target(&star, subsets[j].clone()),
                exhibit: false,
            });
        }
    }
    out
}

pub fn audit_gae_failure(instances: &[GaeInstance]) -> Result<AuditResult, LabError> {
    let mut tally = Tally::new("gae");
    for inst in instances {
        let case = if inst.exhibit {
            ReplayCase::GaeExhibit { a: inst.a.clone(), b: inst.b.clone() }
        } else {
            ReplayCase::GaeAgreement { a: inst.a.clone(), b: inst.b.clone() }
        };
        tally.check(&inst.name, case)?;
    }
    Ok(tally.finish())
}
