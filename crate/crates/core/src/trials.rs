//! Seeded batches of Theorem-1 style experiments.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::generate::{generate_with, Scheme};
use crate::rng::SeededGenerator;
use crate::tverberg::{theorem1_experiment, Verdict};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrialRecord {
    pub index: u64,
    pub scheme: String,
    pub verdict: Verdict,
    /// Label of the first family with a Tverberg partition.
    pub family: Option<String>,
    pub partition: Option<Vec<Vec<usize>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BatchReport {
    pub d: usize,
    pub m: usize,
    pub k: usize,
    pub n: usize,
    pub seed: u64,
    pub trials: u64,
    pub schemes: Vec<String>,
    pub counts: BTreeMap<String, u64>,
    pub records: Vec<TrialRecord>,
}

impl BatchReport {
    pub fn count(&self, v: Verdict) -> u64 {
        let key = serde_json::to_value(v).expect("verdict serializes");
        self.counts.get(key.as_str().expect("string verdict")).copied().unwrap_or(0)
    }

    pub fn any_failure(&self) -> bool {
        self.records.iter().any(|r| r.verdict.is_failure())
    }
}

/// Run `trials` instances for each scheme. Trial `t` of scheme `s` draws from
/// `SeededGenerator::for_trial(seed, s * trials + t)`, so results do not
/// depend on thread scheduling.
pub fn run_trials(
    d: usize,
    m: usize,
    k: usize,
    n: usize,
    seed: u64,
    trials: u64,
    schemes: &[Scheme],
) -> Result<BatchReport> {
    let jobs: Vec<(u64, Scheme)> = schemes
        .iter()
        .enumerate()
        .flat_map(|(s, &scheme)| (0..trials).map(move |t| (s as u64 * trials + t, scheme)))
        .collect();
    let mut records: Vec<TrialRecord> = jobs
        .par_iter()
        .map(|&(index, scheme)| {
            let mut rng = SeededGenerator::for_trial(seed, index);
            let system = generate_with(d, m, n, scheme, &mut rng)?;
            let report = theorem1_experiment(&system, k)?;
            let hit = report.families.iter().find(|f| f.witness.is_some());
            Ok(TrialRecord {
                index,
                scheme: scheme.name().to_string(),
                verdict: report.verdict,
                family: hit.map(|f| f.label.clone()),
                partition: hit.and_then(|f| f.witness.as_ref()).map(|w| w.partition.clone()),
            })
        })
        .collect::<Result<_>>()?;
    records.sort_by_key(|r| r.index);
    let mut counts = BTreeMap::new();
    for r in &records {
        let key = serde_json::to_value(r.verdict).expect("verdict serializes");
        *counts.entry(key.as_str().expect("string verdict").to_string()).or_insert(0) += 1;
    }
    Ok(BatchReport {
        d,
        m,
        k,
        n,
        seed,
        trials,
        schemes: schemes.iter().map(|s| s.name().to_string()).collect(),
        counts,
        records,
    })
}
