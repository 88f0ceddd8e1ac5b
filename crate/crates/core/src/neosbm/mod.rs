//! The neoSBM: a blockmodel in which each node is either locked to its
//! metadata group ("blue") or free to join any group ("red").
//!
//! With prior probability `θ` of a node being free, the log-likelihood is
//! `L_neo = L_base(π) + q ψ(θ) + N ln(1 − θ)` where `q` counts free nodes and
//! `ψ(θ) = ln(θ / (1 − θ))`. Reported values ([`NeoState::l_neo`]) omit the
//! constant `N ln(1 − θ)`; [`neo_loglik`] includes it.
//!
//! Sweeping `θ` from 0 towards ½ traces a path from the metadata partition
//! to the unconstrained optimum. Plateaus in `q` separated by jumps reveal
//! intermediate optima.

mod chain;
mod exhaustive;
mod hungarian;

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::math::{self, TIE_TOLERANCE};
use crate::models;
use crate::partition::Partition;
use crate::rng::{self, tags};
use crate::stats::BlockStats;

pub use chain::{fit_sbm, infer, infer_from, FitConfig, SbmFit};
pub use exhaustive::{exhaustive_neo, exhaustive_sbm};
pub use hungarian::max_weight_assignment;

pub const DEFAULT_SWEEPS: usize = 1000;
pub const DEFAULT_RESTARTS: usize = 20;
/// Largest `K^N` searched by the exhaustive solvers.
pub const DEFAULT_EXHAUSTIVE_CAP: u128 = 1 << 22;

/// Base objective penalized by the free-node prior.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NeoModel {
    /// Bernoulli SBM log-likelihood (nats).
    Sbm,
    /// Poisson degree-corrected SBM log-likelihood (nats).
    Dcsbm,
    /// Modularity used directly as the objective.
    Modularity,
}

impl NeoModel {
    pub fn id(self) -> &'static str {
        match self {
            NeoModel::Sbm => "sbm",
            NeoModel::Dcsbm => "dcsbm",
            NeoModel::Modularity => "modularity",
        }
    }

    /// Objective of the partition summarized by `stats`. Empty groups are
    /// allowed.
    pub fn l_base(self, stats: &BlockStats) -> f64 {
        match self {
            NeoModel::Sbm => models::sbm_loglik(stats),
            NeoModel::Dcsbm => models::poisson_dcsbm_loglik(stats),
            NeoModel::Modularity => models::modularity(stats).unwrap_or(0.0),
        }
    }

    /// Contribution of the block pairs touching `a` or `b`; differences of
    /// this before and after a move between `a` and `b` give `ΔL_base`.
    pub(crate) fn touched(self, stats: &BlockStats, a: usize, b: usize) -> f64 {
        let k = stats.k();
        let term = |r: usize, s: usize| -> f64 {
            let m = stats.m(r, s) as f64;
            match self {
                NeoModel::Sbm => {
                    let pairs = (stats.size(r) * stats.size(s)) as f64;
                    if pairs == 0.0 {
                        0.0
                    } else {
                        let w = m / pairs;
                        math::xlny(m, w) + math::xlny(pairs - m, 1.0 - w)
                    }
                }
                NeoModel::Dcsbm => {
                    if m == 0.0 {
                        0.0
                    } else {
                        m * math::ln(m / (stats.kappa(r) as f64 * stats.kappa(s) as f64))
                    }
                }
                NeoModel::Modularity => unreachable!(),
            }
        };
        if self == NeoModel::Modularity {
            let two_m = 2.0 * stats.total_edges() as f64;
            if two_m == 0.0 {
                return 0.0;
            }
            let diag = |r: usize| {
                let x = stats.kappa(r) as f64 / two_m;
                stats.m(r, r) as f64 / two_m - x * x
            };
            return if a == b { diag(a) } else { diag(a) + diag(b) };
        }
        let rows: &[usize] = if a == b { &[a][..] } else { &[a, b][..] };
        let mut acc = 0.0;
        for &r in rows {
            for s in 0..k {
                acc += term(r, s);
            }
        }
        // full rows plus the columns outside `rows`, halved: by symmetry the
        // columns equal the rows, so ½(2·rows − overlap)
        let mut overlap = 0.0;
        for &r in rows {
            for &s in rows {
                overlap += term(r, s);
            }
        }
        0.5 * (2.0 * acc - overlap)
    }
}

impl fmt::Display for NeoModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for NeoModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sbm" => Ok(NeoModel::Sbm),
            "dcsbm" => Ok(NeoModel::Dcsbm),
            "modularity" => Ok(NeoModel::Modularity),
            _ => Err(Error::UnknownModel(s.into())),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NeoConfig {
    pub theta: f64,
    pub model: NeoModel,
    pub sweeps: usize,
    pub restarts: usize,
    /// Group count of the search space. `None` uses the metadata's group
    /// count for fitting the optimum and `max(K_M, K_C)` during inference.
    pub k: Option<usize>,
    pub exhaustive_cap: u128,
    /// A θ-sweep flags a jump where `q` grows by more than this. `None`
    /// means `N / 20`.
    pub jump_threshold: Option<usize>,
}

impl NeoConfig {
    pub fn new(theta: f64) -> Self {
        NeoConfig {
            theta,
            model: NeoModel::Sbm,
            sweeps: DEFAULT_SWEEPS,
            restarts: DEFAULT_RESTARTS,
            k: None,
            exhaustive_cap: DEFAULT_EXHAUSTIVE_CAP,
            jump_threshold: None,
        }
    }

    pub fn with_theta(&self, theta: f64) -> Self {
        NeoConfig { theta, ..self.clone() }
    }

    pub fn psi(&self) -> Result<f64> {
        check_theta(self.theta)?;
        Ok(psi(self.theta))
    }
}

fn check_theta(theta: f64) -> Result<()> {
    if theta > 0.0 && theta < 1.0 {
        Ok(())
    } else {
        Err(Error::invalid("theta", "must lie strictly between 0 and 1"))
    }
}

/// `ψ(θ) = ln(θ / (1 − θ))`, the log-odds of a node being free.
pub fn psi(theta: f64) -> f64 {
    math::ln(theta / (1.0 - theta))
}

/// `θ` at which `ψ(θ) = x`.
pub fn theta_for_psi(x: f64) -> f64 {
    1.0 / (1.0 + math::exp(-x))
}

/// A neoSBM configuration and its scores.
#[derive(Debug, Clone, PartialEq)]
pub struct NeoState {
    pub theta: f64,
    /// Group of each node in `0..k`. Metadata group `g` is group `g` here,
    /// so blue nodes satisfy `assignment[i] == metadata[i]`. Groups may be
    /// empty.
    pub assignment: Vec<usize>,
    pub k: usize,
    /// `true` for free (red) nodes.
    pub red: Vec<bool>,
    pub q: usize,
    pub l_base: f64,
    /// `l_base + q ψ(θ)`.
    pub l_neo: f64,
}

impl NeoState {
    /// The node partition with empty groups compacted away.
    pub fn partition(&self) -> Partition {
        Partition::from_assignment(self.assignment.clone())
    }

    pub fn check_lock(&self, metadata: &Partition) -> Result<()> {
        check_lock(&self.assignment, &self.red, metadata)
    }

    /// Whether this state should replace `other` as the argmax: higher
    /// `l_neo`, ties going to fewer free nodes.
    pub fn beats(&self, other: &NeoState) -> bool {
        beats(self.l_neo, self.q, other.l_neo, other.q)
    }
}

pub(crate) fn beats(l: f64, q: usize, l_other: f64, q_other: usize) -> bool {
    let tol = TIE_TOLERANCE * l_other.abs().max(1.0);
    l > l_other + tol || (l >= l_other - tol && q < q_other)
}

fn check_lock(assignment: &[usize], red: &[bool], metadata: &Partition) -> Result<()> {
    for (i, (&a, &r)) in assignment.iter().zip(red).enumerate() {
        if !r && a != metadata.group_of(i) {
            return Err(Error::LockViolation { node: i });
        }
    }
    Ok(())
}

/// Full neoSBM log-likelihood in nats, including `N ln(1 − θ)`.
pub fn neo_loglik(
    graph: &Graph,
    assignment: &[usize],
    red: &[bool],
    metadata: &Partition,
    cfg: &NeoConfig,
) -> Result<f64> {
    let n = graph.n_nodes();
    metadata.check_len(n)?;
    for len in [assignment.len(), red.len()] {
        if len != n {
            return Err(Error::LengthMismatch {
                expected: n,
                found: len,
            });
        }
    }
    let psi = cfg.psi()?;
    check_lock(assignment, red, metadata)?;
    let k = assignment.iter().copied().max().map_or(0, |m| m + 1).max(metadata.k());
    let stats = BlockStats::from_assignment(graph, assignment, k);
    let q = red.iter().filter(|&&r| r).count();
    Ok(cfg.model.l_base(&stats) + q as f64 * psi + n as f64 * math::ln(1.0 - cfg.theta))
}

/// Relabels `other` into `0..k` so that it agrees with `metadata` on as
/// many nodes as possible. Groups of `other` matched to no metadata group
/// take the indices `K_M..k`.
pub fn align_to_metadata(metadata: &Partition, other: &Partition, k: usize) -> Result<Vec<usize>> {
    other.check_len(metadata.len())?;
    let k = k.max(metadata.k()).max(other.k());
    let mut weight = vec![vec![0i64; k]; k];
    for (&c, &m) in other.assignment().iter().zip(metadata.assignment()) {
        weight[c][m] += 1;
    }
    let (sigma, _) = max_weight_assignment(&weight);
    Ok(other.assignment().iter().map(|&c| sigma[c]).collect())
}

/// Fewest free nodes that let the metadata-locked model reproduce
/// `optimum`: `N` minus the best agreement over group alignments.
pub fn min_free_nodes(metadata: &Partition, optimum: &Partition) -> Result<usize> {
    let aligned = align_to_metadata(metadata, optimum, 0)?;
    let agree = aligned
        .iter()
        .zip(metadata.assignment())
        .filter(|(a, m)| a == m)
        .count();
    Ok(metadata.len() - agree)
}

/// Best free-node pattern for a fixed assignment: nodes off their metadata
/// group must be free; the rest are free only when `ψ > 0`.
pub(crate) fn optimal_red(assignment: &[usize], metadata: &[usize], psi: f64) -> Vec<bool> {
    assignment
        .iter()
        .zip(metadata)
        .map(|(a, m)| a != m || psi > 0.0)
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct NeoRecord {
    pub state: NeoState,
    /// `q` rose by more than the jump threshold and `L_base` increased
    /// since the previous grid point.
    pub jump: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NeoPath {
    pub records: Vec<NeoRecord>,
    pub metadata: Partition,
    /// Unconstrained optimum the sweep was initialized from.
    pub optimum: Partition,
    pub optimum_l_base: f64,
    pub jump_threshold: usize,
}

impl NeoPath {
    pub fn n_jumps(&self) -> usize {
        self.records.iter().filter(|r| r.jump).count()
    }
}

/// Evenly spaced grid `a, a+step, …` not exceeding `b`.
pub fn linear_grid(a: f64, b: f64, step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0) || a > b {
        return Err(Error::invalid("theta grid", "need a <= b and step > 0"));
    }
    let n = ((b - a) / step + 1e-9) as usize;
    Ok((0..=n).map(|i| a + i as f64 * step).collect())
}

/// Runs the neoSBM at every `θ` of `grid`, fitting the unconstrained
/// optimum first.
pub fn theta_sweep(graph: &Graph, metadata: &Partition, grid: &[f64], cfg: &NeoConfig, seed: u64) -> Result<NeoPath> {
    let fit_cfg = FitConfig {
        k: cfg.k.unwrap_or(metadata.k()),
        model: cfg.model,
        sweeps: cfg.sweeps,
        restarts: cfg.restarts,
    };
    let fit = fit_sbm(graph, &fit_cfg, rng::derive_seed(seed, tags::SBM_FIT, 0))?;
    theta_sweep_from(graph, metadata, &fit.partition, grid, cfg, seed)
}

/// θ-sweep from a given optimum.
///
/// Each grid point is warm-started from the previous point's state and
/// also gets `cfg.restarts` fresh chains. Afterwards every partition found
/// anywhere on the path is rescored at every `θ` (with its best free-node
/// pattern), so a good partition found late is not missed early.
pub fn theta_sweep_from(
    graph: &Graph,
    metadata: &Partition,
    optimum: &Partition,
    grid: &[f64],
    cfg: &NeoConfig,
    seed: u64,
) -> Result<NeoPath> {
    if grid.is_empty() {
        return Err(Error::invalid("theta grid", "empty"));
    }
    for w in grid.windows(2) {
        if !(w[1] > w[0]) {
            return Err(Error::invalid("theta grid", "must be strictly increasing"));
        }
    }
    for &t in grid {
        check_theta(t)?;
    }
    let mut found: Vec<NeoState> = Vec::with_capacity(grid.len());
    let mut warm: Option<NeoState> = None;
    for (j, &theta) in grid.iter().enumerate() {
        let c = cfg.with_theta(theta);
        let s = infer_from(
            graph,
            metadata,
            optimum,
            &c,
            rng::derive_seed(seed, tags::NEO_CHAIN, j as u64),
            warm.as_ref(),
        )?;
        warm = Some(s.clone());
        found.push(s);
    }
    let meta = metadata.assignment();
    let mut states = Vec::with_capacity(grid.len());
    for &theta in grid {
        let psi = psi(theta);
        let mut best: Option<NeoState> = None;
        for cand in &found {
            let red = optimal_red(&cand.assignment, meta, psi);
            let q = red.iter().filter(|&&r| r).count();
            let l_neo = cand.l_base + q as f64 * psi;
            if best.as_ref().map_or(true, |b| beats(l_neo, q, b.l_neo, b.q)) {
                best = Some(NeoState {
                    theta,
                    assignment: cand.assignment.clone(),
                    k: cand.k,
                    red,
                    q,
                    l_base: cand.l_base,
                    l_neo,
                });
            }
        }
        states.push(best.expect("grid is non-empty"));
    }
    let threshold = cfg.jump_threshold.unwrap_or(graph.n_nodes() / 20);
    let mut records: Vec<NeoRecord> = Vec::with_capacity(states.len());
    for s in states {
        let jump = records.last().is_some_and(|prev| {
            let p = &prev.state;
            s.q > p.q + threshold && s.l_base > p.l_base + TIE_TOLERANCE * p.l_base.abs().max(1.0)
        });
        records.push(NeoRecord { state: s, jump });
    }
    let optimum_l_base = cfg.model.l_base(&BlockStats::compute(graph, optimum)?);
    Ok(NeoPath {
        records,
        metadata: metadata.clone(),
        optimum: optimum.clone(),
        optimum_l_base,
        jump_threshold: threshold,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn min_free_nodes_examples() {
        let m = Partition::from_assignment(vec![1, 1, 2, 2]);
        let c = Partition::from_assignment(vec![2, 2, 1, 1]);
        assert_eq!(min_free_nodes(&m, &c).unwrap(), 0);
        let m = Partition::from_assignment(vec![1, 1, 1, 2]);
        let c = Partition::from_assignment(vec![1, 1, 2, 2]);
        assert_eq!(min_free_nodes(&m, &c).unwrap(), 1);
    }

    #[test]
    fn psi_round_trip() {
        assert_eq!(psi(0.5), 0.0);
        for t in [0.01, 0.2, 0.7, 0.99] {
            assert!((theta_for_psi(psi(t)) - t).abs() < 1e-12);
        }
    }

    #[test]
    fn touched_deltas_match_full_recompute() {
        let g = Graph::from_edges(
            7,
            [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (0, 6), (1, 5), (2, 4)],
        )
        .unwrap();
        let mut a = vec![0, 0, 1, 1, 2, 2, 0];
        for model in [NeoModel::Sbm, NeoModel::Dcsbm, NeoModel::Modularity] {
            let mut stats = BlockStats::from_assignment(&g, &a, 4);
            for (node, to) in [(2, 0), (6, 3), (4, 1), (0, 2)] {
                let from = a[node];
                let before = model.l_base(&stats);
                let t0 = model.touched(&stats, from, to);
                stats.move_node(&g, &a, node, to);
                a[node] = to;
                let delta = model.touched(&stats, from, to) - t0;
                let after = model.l_base(&stats);
                assert!(
                    (after - before - delta).abs() < 1e-10,
                    "{model}: {} vs {delta}",
                    after - before
                );
            }
        }
    }

    #[test]
    fn neo_loglik_rejects_lock_violation() {
        let g = Graph::from_edges(3, [(0, 1)]).unwrap();
        let m = Partition::from_assignment(vec![0, 0, 1]);
        let err = neo_loglik(&g, &[0, 1, 1], &[false, false, false], &m, &NeoConfig::new(0.3)).unwrap_err();
        assert!(matches!(err, Error::LockViolation { node: 1 }));
    }

    #[test]
    fn linear_grid_endpoints() {
        let g = linear_grid(0.1, 0.5, 0.1).unwrap();
        assert_eq!(g.len(), 5);
        assert!((g[4] - 0.5).abs() < 1e-12);
    }
}
