//! Blockmodel entropy significance test.
//!
//! The statistic is a model score of the metadata partition. The null
//! distribution comes from shuffling the metadata labels over the nodes,
//! which keeps the graph and the label frequencies fixed. The p-value is the
//! fraction of null partitions that score at least as well as the metadata.

use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::math;
use crate::models::{self, Model, ScoreValue};
use crate::par;
use crate::partition::Partition;
use crate::rng::{self, tags};
use crate::stats::BlockStats;
use crate::synthgen::{self, SynthConfig};

/// Default Monte Carlo replicate count.
pub const DEFAULT_PERMUTATIONS: u64 = 100_000;

/// Default cap on distinct label arrangements for exhaustive mode.
pub const DEFAULT_EXHAUSTIVE_CAP: u128 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    MonteCarlo,
    Exhaustive,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::MonteCarlo => "monte_carlo",
            Mode::Exhaustive => "exhaustive",
        }
    }
}

#[derive(Debug, Clone)]
pub struct BestestConfig {
    pub model: Model,
    pub n_perm: u64,
    pub seed: u64,
    pub mode: Mode,
    pub exhaustive_cap: u128,
    /// Keep every null score in [`TestResult::null_scores`].
    pub keep_null: bool,
}

impl BestestConfig {
    pub fn new(model: Model, n_perm: u64, seed: u64) -> Self {
        BestestConfig {
            model,
            n_perm,
            seed,
            mode: Mode::MonteCarlo,
            exhaustive_cap: DEFAULT_EXHAUSTIVE_CAP,
            keep_null: false,
        }
    }

    pub fn exhaustive(model: Model) -> Self {
        BestestConfig {
            mode: Mode::Exhaustive,
            ..Self::new(model, 0, 0)
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TestResult {
    pub observed: ScoreValue,
    /// Replicates in Monte Carlo mode, distinct arrangements in exhaustive
    /// mode (the observed arrangement included).
    pub null_samples: u64,
    pub null_mean: f64,
    pub null_sd: f64,
    pub p_value: f64,
    /// Null partitions at least as extreme as the metadata. In exhaustive
    /// mode `p_value = n_extreme / null_samples` exactly.
    pub n_extreme: u64,
    pub mode: Mode,
    pub seed: u64,
    pub model: Model,
    pub null_scores: Option<Vec<f64>>,
}

/// Uniformly random reassignment of the labels of `partition` to nodes
/// (Fisher-Yates). The label multiset is unchanged.
pub fn permute_labels<R: Rng + ?Sized>(partition: &Partition, rng: &mut R) -> Partition {
    let mut a = partition.assignment().to_vec();
    a.shuffle(rng);
    partition.with_assignment_unchecked(a)
}

/// Score of an arbitrary assignment with the same group count as `template`.
fn score_assignment(model: Model, graph: &Graph, template: &Partition, a: &[usize]) -> Result<f64> {
    if model.uses_block_stats_only() {
        let stats = BlockStats::from_assignment(graph, a, template.k());
        models::score_stats(model, &stats).map(|s| s.value)
    } else {
        let p = template.with_assignment_unchecked(a.to_vec());
        models::score(model, graph, &p).map(|s| s.value)
    }
}

/// Runs the test on `metadata` over `graph`.
pub fn run_bestest(graph: &Graph, metadata: &Partition, cfg: &BestestConfig) -> Result<TestResult> {
    metadata.check_len(graph.n_nodes())?;
    let observed = models::score(cfg.model, graph, metadata)?;
    let null = match cfg.mode {
        Mode::MonteCarlo => {
            if cfg.n_perm == 0 {
                return Err(Error::invalid("n_perm", "must be at least 1"));
            }
            let scores = par::map_indexed(cfg.n_perm as usize, |i| {
                let mut r = rng::substream(cfg.seed, tags::PERMUTATION, i as u64);
                let mut a = metadata.assignment().to_vec();
                a.shuffle(&mut r);
                score_assignment(cfg.model, graph, metadata, &a)
            });
            scores.into_iter().collect::<Result<Vec<f64>>>()?
        }
        Mode::Exhaustive => {
            let count = arrangement_count(metadata);
            if count > cfg.exhaustive_cap {
                return Err(Error::TooLarge {
                    what: "label arrangements",
                    size: count,
                    cap: cfg.exhaustive_cap,
                });
            }
            let mut a = metadata.assignment().to_vec();
            a.sort_unstable();
            let mut scores = Vec::with_capacity(count as usize);
            loop {
                scores.push(score_assignment(cfg.model, graph, metadata, &a)?);
                if !next_permutation(&mut a) {
                    break;
                }
            }
            scores
        }
    };
    let n_extreme = null.iter().filter(|&&s| observed.is_matched_or_beaten_by(s)).count() as u64;
    let n = null.len() as u64;
    let p_value = match cfg.mode {
        Mode::MonteCarlo => (1 + n_extreme) as f64 / (1 + n) as f64,
        Mode::Exhaustive => n_extreme as f64 / n as f64,
    };
    let (null_mean, null_sd) = math::mean_sd(&null);
    Ok(TestResult {
        observed,
        null_samples: n,
        null_mean,
        null_sd,
        p_value,
        n_extreme,
        mode: cfg.mode,
        seed: cfg.seed,
        model: cfg.model,
        null_scores: cfg.keep_null.then_some(null),
    })
}

/// Number of distinct arrangements of the label multiset,
/// `N! / Π_r n_r!`, saturating at `u128::MAX`.
pub fn arrangement_count(partition: &Partition) -> u128 {
    let mut total: u128 = 1;
    let mut placed: u128 = 0;
    for size in partition.group_sizes() {
        // multiply by C(placed + size, size) one factor at a time; each
        // intermediate is itself a binomial coefficient, so division is exact
        for j in 1..=size as u128 {
            placed += 1;
            total = match total.checked_mul(placed) {
                Some(t) => t / j,
                None => return u128::MAX,
            };
        }
    }
    total
}

/// Next lexicographic permutation in place; false after the last one.
fn next_permutation(a: &mut [usize]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// Parameters of the planted two-block sensitivity experiment.
#[derive(Debug, Clone)]
pub struct SensitivityConfig {
    pub n_nodes: usize,
    pub epsilon: f64,
    pub ells: Vec<f64>,
    pub mean_degree: f64,
    pub n_reps: usize,
    pub n_perm: u64,
    pub model: Model,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SensitivityPoint {
    pub epsilon: f64,
    pub ell: f64,
    pub mean_p: f64,
    pub sd_p: f64,
    pub n_reps: usize,
}

/// Mean p-value as a function of metadata correlation `ell`.
///
/// Replicate `r` draws one planted network and reuses it for every `ell`,
/// so the curve is not confounded by graph-to-graph variation.
pub fn sensitivity_experiment(cfg: &SensitivityConfig) -> Result<Vec<SensitivityPoint>> {
    if !(0.0..=1.0).contains(&cfg.epsilon) {
        return Err(Error::invalid("epsilon", "must lie in [0, 1]"));
    }
    if let Some(bad) = cfg.ells.iter().find(|l| !(0.0..=1.0).contains(*l)) {
        return Err(Error::invalid("ell", alloc::format!("{bad} is outside [0, 1]")));
    }
    if cfg.n_reps == 0 {
        return Err(Error::invalid("n_reps", "must be at least 1"));
    }
    let n_ells = cfg.ells.len();
    let per_rep = par::map_indexed(cfg.n_reps, |rep| -> Result<Vec<f64>> {
        let synth = SynthConfig {
            n_nodes: cfg.n_nodes,
            epsilon: cfg.epsilon,
            mean_degree: cfg.mean_degree,
        };
        let mut grng = rng::substream(cfg.seed, tags::SENSITIVITY_GRAPH, rep as u64);
        let (graph, truth) = synthgen::gen_two_block(&synth, &mut grng)?;
        cfg.ells
            .iter()
            .enumerate()
            .map(|(li, &ell)| {
                let idx = (rep * n_ells + li) as u64;
                let mut mrng = rng::substream(cfg.seed, tags::SENSITIVITY_TEST, idx);
                let metadata = synthgen::corrupt_metadata(&truth, ell, &mut mrng)?;
                let test_seed = rng::derive_seed(cfg.seed, tags::SENSITIVITY_TEST, idx);
                let test = BestestConfig::new(cfg.model, cfg.n_perm, test_seed);
                run_bestest(&graph, &metadata, &test).map(|r| r.p_value)
            })
            .collect()
    });
    let per_rep = per_rep.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(cfg
        .ells
        .iter()
        .enumerate()
        .map(|(li, &ell)| {
            let ps: Vec<f64> = per_rep.iter().map(|row| row[li]).collect();
            let (mean_p, sd_p) = math::mean_sd(&ps);
            SensitivityPoint {
                epsilon: cfg.epsilon,
                ell,
                mean_p,
                sd_p,
                n_reps: cfg.n_reps,
            }
        })
        .collect())
}
