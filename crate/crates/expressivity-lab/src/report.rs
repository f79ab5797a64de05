//! Audit artifacts: results, serialized counterexamples, and replay.
//!
//! Every expectation an audit checks is expressible as a [`ReplayCase`]: a
//! named predicate over self-contained input data. Audits evaluate
//! expectations with shared caches for speed, but a violation is always
//! recorded as a `ReplayCase` that [`evaluate`] can re-run from scratch, so
//! counterexamples loaded from disk re-fail independently of any cache.

use graph_core::{
    are_hypergraphs_isomorphic, are_substructures_isomorphic, canonical_code, incidence_graph,
    Fixed, Graph, Hypergraph, NodeId, NodePoset,
};
use labeling::{zero_one, TrickKind};
use serde::{Deserialize, Serialize};

use crate::boost::count_boosted_link_pairs;
use crate::hyper::hyper_code;
use crate::readout;
use crate::LabError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AuditResult {
    /// CLI claim id: theorem1 | gae | boost | subset | poset | hypergraph.
    pub claim: String,
    /// Number of individual expectation evaluations, not input pairs.
    pub instances_tested: usize,
    pub agreements: usize,
    pub counterexamples: Vec<Counterexample>,
    pub verdict: Verdict,
}

impl AuditResult {
    /// Sole constructor: verdict and agreement count are derived, never stored
    /// independently, so PASS ⟺ no counterexamples holds by construction.
    pub fn from_checks(
        claim: &str,
        tested: usize,
        counterexamples: Vec<Counterexample>,
    ) -> AuditResult {
        assert!(counterexamples.len() <= tested);
        let verdict = if counterexamples.is_empty() { Verdict::Pass } else { Verdict::Fail };
        AuditResult {
            claim: claim.to_string(),
            instances_tested: tested,
            agreements: tested - counterexamples.len(),
            counterexamples,
            verdict,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Counterexample {
    pub claim: String,
    pub description: String,
    pub case: ReplayCase,
}

impl Counterexample {
    /// Re-evaluates the recorded case from its serialized inputs. A stored
    /// counterexample must re-fail: this returns Ok(true) iff it still does.
    pub fn refails(&self) -> Result<bool, LabError> {
        Ok(!evaluate(&self.case)?)
    }
}

/// Serializable graph mirror; features travel as raw fixed-point integers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphData {
    pub n: usize,
    pub directed: bool,
    pub edges: Vec<(NodeId, NodeId, Vec<i64>)>,
    pub node_features: Vec<Vec<i64>>,
}

impl GraphData {
    pub fn from_graph(g: &Graph) -> GraphData {
        let edges = g
            .edges_unique()
            .into_iter()
            .map(|(i, j)| {
                let f = g.edge_feature(i, j).expect("listed edge").iter().map(|v| v.raw()).collect();
                (i, j, f)
            })
            .collect();
        let node_features =
            (1..=g.n()).map(|i| g.node_feature(i).iter().map(|v| v.raw()).collect()).collect();
        GraphData { n: g.n(), directed: g.directed(), edges, node_features }
    }

    pub fn to_graph(&self) -> Result<Graph, LabError> {
        let mut g = Graph::new(self.n, self.directed);
        for (i, j, f) in &self.edges {
            g.add_edge_with(*i, *j, f.iter().map(|&r| Fixed::from_raw(r)).collect())?;
        }
        if self.node_features.iter().any(|f| !f.is_empty()) {
            g.set_node_features(
                self.node_features
                    .iter()
                    .map(|f| f.iter().map(|&r| Fixed::from_raw(r)).collect())
                    .collect(),
            )?;
        }
        Ok(g)
    }
}

/// Serializable poset mirror; the relation is stored in full, reflexive pairs
/// included, exactly as `NodePoset::relation` exposes it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetData {
    pub members: Vec<NodeId>,
    pub relation: Vec<(NodeId, NodeId)>,
}

impl PosetData {
    pub fn from_poset(s: &NodePoset) -> PosetData {
        PosetData {
            members: s.sorted_members(),
            relation: s.relation().iter().copied().collect(),
        }
    }

    pub fn to_poset(&self) -> Result<NodePoset, LabError> {
        Ok(NodePoset::new(
            self.members.iter().copied().collect(),
            self.relation.iter().copied().collect(),
        )?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HyperData {
    pub n: usize,
    pub hyperedges: Vec<Vec<NodeId>>,
}

impl HyperData {
    pub fn from_hypergraph(h: &Hypergraph) -> HyperData {
        HyperData {
            n: h.n(),
            hyperedges: (1..=h.m()).map(|j| h.hyperedge(j).iter().copied().collect()).collect(),
        }
    }

    pub fn to_hypergraph(&self) -> Result<Hypergraph, LabError> {
        Ok(Hypergraph::new(
            self.n,
            self.hyperedges.iter().map(|e| e.iter().copied().collect()).collect(),
        )?)
    }
}

/// One marked graph: the unit the pairwise claims quantify over.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TargetData {
    pub graph: GraphData,
    pub poset: PosetData,
}

impl TargetData {
    pub fn new(g: &Graph, s: &NodePoset) -> TargetData {
        TargetData { graph: GraphData::from_graph(g), poset: PosetData::from_poset(s) }
    }

    pub fn realize(&self) -> Result<(Graph, NodePoset), LabError> {
        Ok((self.graph.to_graph()?, self.poset.to_poset()?))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HyperTargetData {
    pub hyper: HyperData,
    pub poset: PosetData,
}

impl HyperTargetData {
    pub fn new(h: &Hypergraph, s: &NodePoset) -> HyperTargetData {
        HyperTargetData { hyper: HyperData::from_hypergraph(h), poset: PosetData::from_poset(s) }
    }

    pub fn realize(&self) -> Result<(Hypergraph, NodePoset), LabError> {
        Ok((self.hyper.to_hypergraph()?, self.poset.to_poset()?))
    }
}

/// Engines whose separations must never contradict the oracle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum EngineKind {
    UnlabeledWl,
    SetZeroOne,
    SubsetPooling,
    HasseWl,
}

/// A named predicate over self-contained inputs. Audits record one of these
/// for every violated expectation; `evaluate` recomputes the predicate.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub enum ReplayCase {
    /// Set-substructure isomorphism ⟺ zero-one labeled graphs isomorphic.
    Prop1LabeledIsoMatchesOracle { a: TargetData, b: TargetData },
    /// Member-code multisets in the labeled graphs equal ⟺ substructures isomorphic.
    Thm1ReadoutMatchesOracle { a: TargetData, b: TargetData },
    /// Unlabeled member-code readout equality ⟺ substructure isomorphism.
    GaeAgreement { a: TargetData, b: TargetData },
    /// Unlabeled readouts tie although the substructures are non-isomorphic.
    GaeExhibit { a: TargetData, b: TargetData },
    /// Pooled (|S|-1)-subset readout equality ⟺ substructure isomorphism.
    Thm9PoolingMatchesOracle { a: TargetData, b: TargetData },
    /// Non-isomorphic targets: every pair of (|S|-1)-subset labelings yields
    /// different set representations. Vacuously true on isomorphic inputs.
    Thm10SubsetLabelingsAllDiffer { a: TargetData, b: TargetData },
    /// Diagonal exact readout ties although the substructures are non-isomorphic.
    Prop11NodeReadoutBlind { a: TargetData, b: TargetData },
    /// Zero-one + 1-WL ties while subset(1) separates at both granularities:
    /// the diagonal own-color readout and the pooled member readout. Oracle non-iso.
    SubsetBeatsSet { a: TargetData, b: TargetData },
    /// Diagonal subset(1) 1-WL readout ties, zero-one + 1-WL separates, oracle non-iso.
    SetBeatsSubsetNode { a: TargetData, b: TargetData },
    /// Pooled subset(1) 1-WL readout ties, zero-one + 1-WL separates, oracle non-iso.
    SetBeatsSubsetPooling { a: TargetData, b: TargetData },
    /// Isomorphic inputs: oracle readouts equal and no shipped engine separates.
    EnginesAgreeOnIsomorphic { a: TargetData, b: TargetData },
    /// Same graph, same members, opposite chains: zero-one labels coincide,
    /// Hasse labels + 1-WL separate, oracle confirms non-isomorphism.
    PosetDirectedExhibit { a: TargetData, b: TargetData },
    /// Oracle-isomorphic posets: Hasse labels + 1-WL must not separate.
    PosetMustNotSeparate { a: TargetData, b: TargetData },
    /// Member codes in Hasse-labeled graphs equal ⟺ poset substructures isomorphic.
    Thm7ReadoutMatchesOracle { a: TargetData, b: TargetData },
    /// Antichain targets: Hasse-label and zero-one 1-WL verdicts coincide.
    AntichainVerdictsCoincide { a: TargetData, b: TargetData },
    /// The named engine never separates oracle-isomorphic inputs.
    Soundness { engine: EngineKind, a: TargetData, b: TargetData },
    /// Poset-hypergraph isomorphism ⟺ poset-graph isomorphism of incidence graphs.
    Thm13IncidenceMatchesHyper { a: HyperTargetData, b: HyperTargetData },
    /// Zero-one member readout on incidence graphs ⟺ hypergraph oracle.
    Cor14ReadoutMatchesHyperOracle { a: HyperTargetData, b: HyperTargetData },
    /// Brute-force hypergraph oracle agrees with canonical hypergraph codes.
    HyperOracleAgreesWithCode { a: HyperTargetData, b: HyperTargetData },
    /// Incidence-graph oracle agrees with canonical incidence-graph codes.
    IncidenceOracleAgreesWithCode { a: HyperTargetData, b: HyperTargetData },
    BoostCountEquals { g: GraphData, h: u32, trick: String, expected: u64 },
    BoostCountAtLeast { g: GraphData, h: u32, trick: String, minimum: u64 },
    BoostListingContains { g: GraphData, h: u32, trick: String, anchor: NodeId, u: NodeId, v: NodeId },
    /// Tree-serialization counting equals per-triple joint-refinement counting.
    BoostMatchesEngine { g: GraphData, h: u32, trick: String },
    /// Counts strictly increase across the graphs and every degree condition holds.
    BoostTrendIncreases { graphs: Vec<GraphData>, h: u32, trick: String },
}

fn trick_by_name(name: &str) -> Result<TrickKind, LabError> {
    TrickKind::from_name(name).ok_or_else(|| LabError::UnknownTrick { name: name.to_string() })
}

fn pair(a: &TargetData, b: &TargetData) -> Result<(Graph, NodePoset, Graph, NodePoset), LabError> {
    let (g1, s1) = a.realize()?;
    let (g2, s2) = b.realize()?;
    Ok((g1, s1, g2, s2))
}

/// Recomputes a case's predicate from its inputs alone. True means the
/// expectation holds; a recorded counterexample must come back false.
pub fn evaluate(case: &ReplayCase) -> Result<bool, LabError> {
    match case {
        ReplayCase::Prop1LabeledIsoMatchesOracle { a, b } => {
            let (g1, s1, g2, s2) = pair(a, b)?;
            let iso = are_substructures_isomorphic(&s1, &g1, &s2, &g2)?;
            let labeled_eq =
                readout::labeled_graph_code(&g1, &s1)? == readout::labeled_graph_code(&g2, &s2)?;
            Ok(iso == labeled_eq)
        }
        ReplayCase::Thm1ReadoutMatchesOracle { a, b } => {
            let (g1, s1, g2, s2) = pair(a, b)?;
            let iso = are_substructures_isomorphic(&s1, &g1, &s2, &g2)?;
            let eq = readout::set_readout(&g1, &s1)? == readout::set_readout(&g2, &s2)?;
            Ok(iso == eq)
        }
        ReplayCase::GaeAgreement { a, b } => {
            let (g1, s1, g2, s2) = pair(a, b)?;
            let iso = are_substructures_isomorphic(&s1, &g1, &s2, &g2)?;
            let eq = readout::gae_readout(&g1, &s1)? == readout::gae_readout(&g2, &s2)?;
            Ok(iso == eq)
        }
        ReplayCase::GaeExhibit { a, b } => {
            let (g1, s1, g2, s2) = pair(a, b)?;
            let iso = are_substructures_isomorphic(&s1, &g1, &s2, &g2)?;
            let eq = readout::gae_readout(&g1, &s1)? == readout::gae_readout(&g2, &s2)?;
            Ok(eq && !iso)
        }
        ReplayCase::Thm9PoolingMatchesOracle { a, b } => {
            let (g1, s1, g2, s2) = pair(a, b)?;
            let iso = are_substructures_isomorphic(&s1, &g1, &s2, &g2)?;
            let r1 = labeling::pooled_readout(&g1, &s1, s1.len().saturating_sub(1))?;
            let r2 = labeling::pooled_readout(&g2, &s2, s2.len().saturating_sub(1))?;
            Ok(iso == (r1 == r2))
        }
        ReplayCase::Thm10SubsetLabelingsAllDiffer { a, b } => {
            let (g1, s1, g2, s2) = pair(a, b)?;
            if are_substructures_isomorphic(&s1, &g1, &s2, &g2)? {
                return Ok(true);
            }
            let r1 = readout::inner_subset_readouts(&g1, &s1, s1.len().saturating_sub(1))?;
            let r2 = readout::inner_subset_readouts(&g2, &s2, s2.len().saturating_sub(1))?;
            Ok(r1.iter().all(|x| r2.iter().all(|y| x != y)))
        }
        ReplayCase::Prop11NodeReadoutBlind { a, b } => {
            let (g1, s1, g2, s2) = pair(a, b)?;
            let iso = are_substructures_isomorphic(&s1, &g1, &s2, &g2)?;
            let eq = readout::node_readout_exact(&g1, &s1)? == readout::node_readout_exact(&g2, &s2)?;
            Ok(eq && !iso)
        }
        ReplayCase::SubsetBeatsSet { a, b } => {
            let (g1, s1, g2, s2) = pair(a, b)?;
            let iso = are_substructures_isomorphic(&s1, &g1, &s2, &g2)?;
            Ok(!readout::node_readout_wl_ties(&g1, &s1, &g2, &s2)?
                && readout::subset_pooling_separates(&g1, &s1, &g2, &s2)?
                && !readout::set_zo_wl_separates(&g1, &s1, &g2, &s2)?
                && !iso)
        }
        ReplayCase::SetBeatsSubsetNode { a, b } => {
            let (g1, s1, g2, s2) = pair(a, b)?;
            let iso = are_substructures_isomorphic(&s1, &g1, &s2, &g2)?;
            Ok(readout::node_readout_wl_ties(&g1, &s1, &g2, &s2)?
                && readout::set_zo_wl_separates(&g1, &s1, &g2, &s2)?
                && !iso)
        }
        ReplayCase::SetBeatsSubsetPooling { a, b } => {
            let (g1, s1, g2, s2) = pair(a, b)?;
            let iso = are_substructures_isomorphic(&s1, &g1, &s2, &g2)?;
            Ok(!readout::subset_pooling_separates(&g1, &s1, &g2, &s2)?
                && readout::set_zo_wl_separates(&g1, &s1, &g2, &s2)?
                && !iso)
        }
        ReplayCase::EnginesAgreeOnIsomorphic { a, b } => {
            let (g1, s1, g2, s2) = pair(a, b)?;
            let iso = are_substructures_isomorphic(&s1, &g1, &s2, &g2)?;
            let readouts_eq = readout::set_readout(&g1, &s1)? == readout::set_readout(&g2, &s2)?;
            Ok(iso
                && readouts_eq
                && !readout::unlabeled_wl_separates(&g1, &s1, &g2, &s2)?
                && !readout::set_zo_wl_separates(&g1, &s1, &g2, &s2)?
                && !readout::subset_pooling_separates(&g1, &s1, &g2, &s2)?)
        }
        ReplayCase::PosetDirectedExhibit { a, b } => {
            let (g1, s1, g2, s2) = pair(a, b)?;
            let iso = are_substructures_isomorphic(&s1, &g1, &s2, &g2)?;
            let same_tensor = a.graph == b.graph && zero_one(&s1, &g1) == zero_one(&s2, &g2);
            Ok(same_tensor && readout::hasse_wl_separates(&g1, &s1, &g2, &s2)? && !iso)
        }
        ReplayCase::PosetMustNotSeparate { a, b } => {
            let (g1, s1, g2, s2) = pair(a, b)?;
            let iso = are_substructures_isomorphic(&s1, &g1, &s2, &g2)?;
            Ok(iso && !readout::hasse_wl_separates(&g1, &s1, &g2, &s2)?)
        }
        ReplayCase::Thm7ReadoutMatchesOracle { a, b } => {
            let (g1, s1, g2, s2) = pair(a, b)?;
            let iso = are_substructures_isomorphic(&s1, &g1, &s2, &g2)?;
            let eq = readout::hasse_readout(&g1, &s1)? == readout::hasse_readout(&g2, &s2)?;
            Ok(iso == eq)
        }
        ReplayCase::AntichainVerdictsCoincide { a, b } => {
            let (g1, s1, g2, s2) = pair(a, b)?;
            if !s1.is_set() || !s2.is_set() {
                return Ok(false);
            }
            Ok(readout::hasse_wl_separates(&g1, &s1, &g2, &s2)?
                == readout::set_zo_wl_separates(&g1, &s1, &g2, &s2)?)
        }
        ReplayCase::Soundness { engine, a, b } => {
            let (g1, s1, g2, s2) = pair(a, b)?;
            let iso = are_substructures_isomorphic(&s1, &g1, &s2, &g2)?;
            let separated = match engine {
                EngineKind::UnlabeledWl => readout::unlabeled_wl_separates(&g1, &s1, &g2, &s2)?,
                EngineKind::SetZeroOne => readout::set_zo_wl_separates(&g1, &s1, &g2, &s2)?,
                EngineKind::SubsetPooling => readout::subset_pooling_separates(&g1, &s1, &g2, &s2)?,
                EngineKind::HasseWl => readout::hasse_wl_separates(&g1, &s1, &g2, &s2)?,
            };
            Ok(!(separated && iso))
        }
        ReplayCase::Thm13IncidenceMatchesHyper { a, b } => {
            let (h1, s1) = a.realize()?;
            let (h2, s2) = b.realize()?;
            let hyper_iso = are_hypergraphs_isomorphic(&s1, &h1, &s2, &h2)?;
            let incidence_iso =
                are_substructures_isomorphic(&s1, &incidence_graph(&h1), &s2, &incidence_graph(&h2))?;
            Ok(hyper_iso == incidence_iso)
        }
        ReplayCase::Cor14ReadoutMatchesHyperOracle { a, b } => {
            let (h1, s1) = a.realize()?;
            let (h2, s2) = b.realize()?;
            let hyper_iso = are_hypergraphs_isomorphic(&s1, &h1, &s2, &h2)?;
            let eq = readout::set_readout(&incidence_graph(&h1), &s1)?
                == readout::set_readout(&incidence_graph(&h2), &s2)?;
            Ok(hyper_iso == eq)
        }
        ReplayCase::HyperOracleAgreesWithCode { a, b } => {
            let (h1, s1) = a.realize()?;
            let (h2, s2) = b.realize()?;
            let oracle = are_hypergraphs_isomorphic(&s1, &h1, &s2, &h2)?;
            Ok(oracle == (hyper_code(&h1, &s1) == hyper_code(&h2, &s2)))
        }
        ReplayCase::IncidenceOracleAgreesWithCode { a, b } => {
            let (h1, s1) = a.realize()?;
            let (h2, s2) = b.realize()?;
            let ig1 = incidence_graph(&h1);
            let ig2 = incidence_graph(&h2);
            let oracle = are_substructures_isomorphic(&s1, &ig1, &s2, &ig2)?;
            Ok(oracle == (canonical_code(&s1, &ig1)? == canonical_code(&s2, &ig2)?))
        }
        ReplayCase::BoostCountEquals { g, h, trick, expected } => {
            let report = count_boosted_link_pairs(&g.to_graph()?, *h, trick_by_name(trick)?)?;
            Ok(report.count == *expected)
        }
        ReplayCase::BoostCountAtLeast { g, h, trick, minimum } => {
            let report = count_boosted_link_pairs(&g.to_graph()?, *h, trick_by_name(trick)?)?;
            Ok(report.count >= *minimum)
        }
        ReplayCase::BoostListingContains { g, h, trick, anchor, u, v } => {
            let report = count_boosted_link_pairs(&g.to_graph()?, *h, trick_by_name(trick)?)?;
            Ok(report
                .listing
                .iter()
                .any(|p| p.anchor == *anchor && ((p.u, p.v) == (*u, *v) || (p.u, p.v) == (*v, *u))))
        }
        ReplayCase::BoostMatchesEngine { g, h, trick } => {
            let g = g.to_graph()?;
            let kind = trick_by_name(trick)?;
            let report = count_boosted_link_pairs(&g, *h, kind)?;
            Ok(report.count == crate::boost::count_via_engine(&g, *h, kind)?)
        }
        ReplayCase::BoostTrendIncreases { graphs, h, trick } => {
            let kind = trick_by_name(trick)?;
            let mut last = None;
            for data in graphs {
                let report = count_boosted_link_pairs(&data.to_graph()?, *h, kind)?;
                if !report.degree_condition.satisfied {
                    return Ok(false);
                }
                if let Some(prev) = last {
                    if report.count <= prev {
                        return Ok(false);
                    }
                }
                last = Some(report.count);
            }
            Ok(true)
        }
    }
}

/// Tallies expectation evaluations for one audit and materializes
/// counterexamples lazily, only when an expectation fails.
pub(crate) struct Tally {
    claim: &'static str,
    tested: usize,
    counterexamples: Vec<Counterexample>,
}

impl Tally {
    pub fn new(claim: &'static str) -> Tally {
        Tally { claim, tested: 0, counterexamples: Vec::new() }
    }

    /// Records a pre-evaluated expectation; `details` runs only on failure.
    pub fn record<F>(&mut self, holds: bool, details: F)
    where
        F: FnOnce() -> (String, ReplayCase),
    {
        self.tested += 1;
        if !holds {
            let (description, case) = details();
            self.counterexamples.push(Counterexample {
                claim: self.claim.to_string(),
                description,
                case,
            });
        }
    }

    /// Evaluates the case directly via `evaluate` and records the outcome.
    pub fn check(&mut self, description: &str, case: ReplayCase) -> Result<(), LabError> {
        let holds = evaluate(&case)?;
        self.record(holds, || (description.to_string(), case));
        Ok(())
    }

    pub fn finish(self) -> AuditResult {
        AuditResult::from_checks(self.claim, self.tested, self.counterexamples)
    }
}
