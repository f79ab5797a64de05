//! Executable audits of the labeling-trick expressivity claims: brute-force
//! oracles against refinement engines over enumerated and sampled instances,
//! with serializable, replayable counterexamples.

use thiserror::Error;

pub mod boost;
pub mod corollary;
pub mod enumerate;
pub mod gae;
pub mod gallery;
pub mod hyper;
pub mod poset_audit;
pub mod readout;
pub mod report;
pub mod subset;
pub mod theorem_one;

pub use boost::{audit_boost, count_boosted_link_pairs, count_via_engine, BoostReport, BoostedPair, DegreeCondition};
pub use corollary::{pooling_agreement, tuple_color_agreement, AgreementReport, AgreementTrial};
pub use gae::{audit_gae_failure, default_gae_instances, GaeInstance};
pub use gallery::{gallery, load_gallery, Expectation, GalleryInstance, Matrix};
pub use hyper::audit_hypergraph;
pub use poset_audit::audit_poset;
pub use report::{
    evaluate, AuditResult, Counterexample, EngineKind, GraphData, HyperData, HyperTargetData,
    PosetData, ReplayCase, TargetData, Verdict,
};
pub use subset::audit_subset_theorems;
pub use theorem_one::audit_theorem_1;

#[derive(Debug, Error)]
pub enum LabError {
    #[error(transparent)]
    Graph(#[from] graph_core::GraphError),
    #[error(transparent)]
    Wl(#[from] wl_engine::WlError),
    #[error(transparent)]
    Label(#[from] labeling::LabelError),
    #[error(transparent)]
    Heuristic(#[from] heuristics::HeuristicError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error("unknown labeling trick {name:?}")]
    UnknownTrick { name: String },
    #[error("gallery search found no instance in phase {phase:?}")]
    GallerySearch { phase: String },
    #[error("gallery instance {name:?} no longer matches its pinned matrix")]
    GalleryMismatch { name: String },
}

/// All claim audits at their default bounds, in a fixed order.
pub fn audit_all(seed: u64) -> Result<Vec<AuditResult>, LabError> {
    Ok(vec![
        audit_theorem_1(seed, 7, &[1, 2, 3])?,
        audit_gae_failure(&default_gae_instances())?,
        audit_boost(seed)?,
        audit_subset_theorems(seed, 6)?,
        audit_poset(seed, 6)?,
        audit_hypergraph(seed, 4, 3)?,
    ])
}
