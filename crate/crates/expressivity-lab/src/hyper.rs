//! Hypergraph audit: incidence graphs are a lossless encoding, and zero-one
//! labels on the incidence graph read marked hypergraphs exactly.
//!
//! Population: every hypergraph with n <= 4 nodes and 1 <= m <= 3 distinct
//! nonempty hyperedges, as literal instances (646 of them); canonical
//! hypergraph codes pair them cheaply, and the brute-force permutation
//! oracles re-validate the codes on an exhaustive small slice plus seeded
//! larger samples.

use std::collections::BTreeSet;

use graph_core::{canonical_code, incidence_graph, CanonicalCode, Hypergraph, NodePoset, Permutation};
use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::readout;
use crate::report::{HyperTargetData, ReplayCase, Tally};
use crate::{AuditResult, LabError};

/// Canonical code of a marked featureless hypergraph: the lexicographic
/// minimum over node relabelings of (member images, relation image, sorted
/// hyperedge bitmasks). Sorting the hyperedge list absorbs hyperedge
/// renumbering, so only node permutations are enumerated. Codes are equal
/// iff the brute-force marked-hypergraph oracle accepts.
pub(crate) fn hyper_code(h: &Hypergraph, s: &NodePoset) -> Vec<u64> {
    let n = h.n();
    assert!(n <= 8, "canonical scan is factorial in n");
    assert!(
        (1..=n).all(|u| h.node_feature(u).is_empty())
            && (1..=h.m()).all(|j| h.hyperedge_feature(j).is_empty()),
        "codes cover featureless hypergraphs only"
    );
    let mut best: Option<Vec<u64>> = None;
    for p in Permutation::all(n) {
        let mut code = vec![n as u64, h.m() as u64, s.len() as u64];
        code.extend(s.members().iter().map(|&u| p.apply(u) as u64).sorted());
        let mut relation: Vec<(u64, u64)> =
            s.relation().iter().map(|&(u, v)| (p.apply(u) as u64, p.apply(v) as u64)).collect();
        relation.sort_unstable();
        for (u, v) in relation {
            code.push(u);
            code.push(v);
        }
        let mut masks: Vec<u64> = (1..=h.m())
            .map(|j| h.hyperedge(j).iter().fold(0u64, |acc, &u| acc | 1 << p.apply(u)))
            .collect();
        masks.sort_unstable();
        code.extend(masks);
        if best.as_ref().map_or(true, |b| code < *b) {
            best = Some(code);
        }
    }
    best.expect("n >= 1")
}

/// All hypergraphs with m distinct nonempty hyperedges over 1..=n.
pub fn hypergraphs_with(n: usize, m: usize) -> Vec<Hypergraph> {
    assert!(n <= 4, "instance enumeration capped at n=4");
    let nonempty: Vec<BTreeSet<usize>> = (1u32..1 << n)
        .map(|mask| (1..=n).filter(|&u| mask & (1 << (u - 1)) != 0).collect())
        .collect();
    nonempty
        .into_iter()
        .combinations(m)
        .map(|edges| Hypergraph::new(n, edges).expect("nonempty in-range hyperedges"))
        .collect()
}

struct Instance {
    data: HyperTargetData,
    n: usize,
    m: usize,
    plain_hyper: Vec<u64>,
    plain_ig: CanonicalCode,
    marked_hyper: Vec<u64>,
    marked_ig: CanonicalCode,
    marked_readout: Vec<CanonicalCode>,
}

fn instance(h: &Hypergraph, s: &NodePoset) -> Result<Instance, LabError> {
    let ig = incidence_graph(h);
    Ok(Instance {
        data: HyperTargetData::new(h, s),
        n: h.n(),
        m: h.m(),
        plain_hyper: hyper_code(h, &NodePoset::set_of([])),
        plain_ig: canonical_code(&NodePoset::set_of([]), &ig)?,
        marked_hyper: hyper_code(h, s),
        marked_ig: canonical_code(s, &ig)?,
        marked_readout: readout::set_readout(&ig, s)?,
    })
}

fn plain(data: &HyperTargetData) -> HyperTargetData {
    HyperTargetData {
        hyper: data.hyper.clone(),
        poset: crate::report::PosetData { members: Vec::new(), relation: Vec::new() },
    }
}

const SAMPLED_PAIR_BUDGET: usize = 10_000;
const ORACLE_SAMPLES: usize = 200;

pub fn audit_hypergraph(seed: u64, n_max: usize, m_max: usize) -> Result<AuditResult, LabError> {
    assert!((1..=4).contains(&n_max) && (1..=3).contains(&m_max));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut specs: Vec<(Hypergraph, NodePoset)> = Vec::new();
    for n in 1..=n_max {
        for m in 1..=m_max.min((1 << n) - 1) {
            for h in hypergraphs_with(n, m) {
                // One seeded marked target per instance, set-shaped.
                let k = if n == 1 { 1 } else { rng.gen_range(1..=2usize) };
                let mut ids: Vec<usize> = (1..=n).collect();
                ids.shuffle(&mut rng);
                ids.truncate(k);
                specs.push((h, NodePoset::set_of(ids)));
            }
        }
    }

    let instances: Vec<Instance> =
        specs.par_iter().map(|(h, s)| instance(h, s)).collect::<Result<_, _>>()?;

    let mut tally = Tally::new("hypergraph");

    // Same-(n, m) strata; codes only compare within a stratum.
    let mut strata: Vec<Vec<usize>> = Vec::new();
    for (idx, inst) in instances.iter().enumerate() {
        match strata.iter_mut().find(|s| instances[s[0]].n == inst.n && instances[s[0]].m == inst.m)
        {
            Some(s) => s.push(idx),
            None => strata.push(vec![idx]),
        }
    }

    // Unmarked reduction: exhaustive over every same-stratum pair.
    for stratum in &strata {
        for (pos, &i) in stratum.iter().enumerate() {
            for &j in &stratum[pos + 1..] {
                let (a, b) = (&instances[i], &instances[j]);
                let holds =
                    (a.plain_hyper == b.plain_hyper) == (a.plain_ig == b.plain_ig);
                tally.record(holds, || {
                    (
                        format!(
                            "incidence encoding loses information: n={} m={} instances {i} vs {j}",
                            a.n, a.m
                        ),
                        ReplayCase::Thm13IncidenceMatchesHyper {
                            a: plain(&a.data),
                            b: plain(&b.data),
                        },
                    )
                });
            }
        }
    }

    // Marked reduction and labeled readout on seeded pairs.
    let mut marked_pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut attempts = 0;
    while marked_pairs.len() < SAMPLED_PAIR_BUDGET && attempts < SAMPLED_PAIR_BUDGET * 30 {
        attempts += 1;
        let stratum = &strata[rng.gen_range(0..strata.len())];
        if stratum.len() < 2 {
            continue;
        }
        let i = stratum[rng.gen_range(0..stratum.len())];
        let j = stratum[rng.gen_range(0..stratum.len())];
        if i != j {
            marked_pairs.insert((i.min(j), i.max(j)));
        }
    }
    for &(i, j) in &marked_pairs {
        let (a, b) = (&instances[i], &instances[j]);
        let hyper_eq = a.marked_hyper == b.marked_hyper;
        tally.record(hyper_eq == (a.marked_ig == b.marked_ig), || {
            (
                format!("marked incidence encoding loses information: instances {i} vs {j}"),
                ReplayCase::Thm13IncidenceMatchesHyper { a: a.data.clone(), b: b.data.clone() },
            )
        });
        tally.record(hyper_eq == (a.marked_readout == b.marked_readout), || {
            (
                format!("labeled incidence readout disagrees with the oracle: instances {i} vs {j}"),
                ReplayCase::Cor14ReadoutMatchesHyperOracle { a: a.data.clone(), b: b.data.clone() },
            )
        });
    }

    // Brute-force oracle validation of the codes: exhaustive at n <= 3,
    // seeded at n = 4.
    let mut oracle_pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
    for stratum in &strata {
        if instances[stratum[0]].n <= 3 {
            for (pos, &i) in stratum.iter().enumerate() {
                for &j in &stratum[pos + 1..] {
                    oracle_pairs.insert((i, j));
                }
            }
        }
    }
    let four_node: Vec<&(usize, usize)> =
        marked_pairs.iter().filter(|(i, _)| instances[*i].n == 4).collect();
    for _ in 0..ORACLE_SAMPLES.min(four_node.len()) {
        oracle_pairs.insert(*four_node[rng.gen_range(0..four_node.len())]);
    }
    for (i, j) in oracle_pairs {
        let (a, b) = (&instances[i], &instances[j]);
        tally.check(
            &format!("marked-hypergraph code vs brute force: instances {i} vs {j}"),
            ReplayCase::HyperOracleAgreesWithCode { a: a.data.clone(), b: b.data.clone() },
        )?;
        tally.check(
            &format!("incidence code vs brute force: instances {i} vs {j}"),
            ReplayCase::IncidenceOracleAgreesWithCode { a: a.data.clone(), b: b.data.clone() },
        )?;
    }

    Ok(tally.finish())
}
