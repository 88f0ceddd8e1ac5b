//! Metropolis chains for the neoSBM and for unconstrained blockmodel fits.

use alloc::vec::Vec;

use rand::Rng;

use super::{align_to_metadata, beats, NeoConfig, NeoModel, NeoState};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::math::{self, TIE_TOLERANCE};
use crate::par;
use crate::partition::Partition;
use crate::rng::{self, tags};
use crate::stats::BlockStats;

/// Passes of greedy improvement after the Metropolis sweeps.
const MAX_POLISH_PASSES: usize = 200;

struct Chain<'g> {
    graph: &'g Graph,
    model: NeoModel,
    meta: &'g [usize],
    /// Optimum labels used to form clusters for collective moves.
    opt: Option<&'g [usize]>,
    theta: f64,
    psi: f64,
    k: usize,
    a: Vec<usize>,
    red: Vec<bool>,
    q: usize,
    stats: BlockStats,
    /// Incrementally updated; resynchronized from `stats` once per sweep.
    l_base: f64,
    best: NeoState,
}

impl<'g> Chain<'g> {
    fn new(
        graph: &'g Graph,
        model: NeoModel,
        meta: &'g [usize],
        opt: Option<&'g [usize]>,
        theta: f64,
        psi: f64,
        k: usize,
        a: Vec<usize>,
        red: Vec<bool>,
    ) -> Self {
        let stats = BlockStats::from_assignment(graph, &a, k);
        let l_base = model.l_base(&stats);
        let q = red.iter().filter(|&&r| r).count();
        let best = NeoState {
            theta,
            assignment: a.clone(),
            k,
            red: red.clone(),
            q,
            l_base,
            l_neo: l_base + q as f64 * psi,
        };
        Chain {
            graph,
            model,
            meta,
            opt,
            theta,
            psi,
            k,
            a,
            red,
            q,
            stats,
            l_base,
            best,
        }
    }

    fn l_neo(&self) -> f64 {
        self.l_base + self.q as f64 * self.psi
    }

    /// Moves `node` to `to`, returning `ΔL_base`.
    fn shift(&mut self, node: usize, to: usize) -> f64 {
        let from = self.a[node];
        if from == to {
            return 0.0;
        }
        let before = self.model.touched(&self.stats, from, to);
        self.stats.move_node(self.graph, &self.a, node, to);
        self.a[node] = to;
        let delta = self.model.touched(&self.stats, from, to) - before;
        self.l_base += delta;
        delta
    }

    /// `ΔL_base` of moving `node` to `to`, leaving the state unchanged.
    fn probe(&mut self, node: usize, to: usize) -> f64 {
        let from = self.a[node];
        let l = self.l_base;
        let d = self.shift(node, to);
        self.shift(node, from);
        self.l_base = l;
        d
    }

    fn resync(&mut self) {
        self.l_base = self.model.l_base(&self.stats);
    }

    fn record(&mut self) {
        let tol = 1e-9 * self.best.l_neo.abs().max(1.0);
        if self.l_neo() + tol < self.best.l_neo {
            return;
        }
        let l_base = self.model.l_base(&self.stats);
        let l_neo = l_base + self.q as f64 * self.psi;
        if beats(l_neo, self.q, self.best.l_neo, self.best.q) {
            self.best = NeoState {
                theta: self.theta,
                assignment: self.a.clone(),
                k: self.k,
                red: self.red.clone(),
                q: self.q,
                l_base,
                l_neo,
            };
        }
    }

    fn accept<R: Rng + ?Sized>(delta: f64, temp: f64, rng: &mut R) -> bool {
        delta >= 0.0 || rng.random::<f64>() < math::exp(delta / temp)
    }

    /// One Metropolis visit: a group move if the node is free, then a
    /// fair-coin proposal for its free/locked state.
    fn visit<R: Rng + ?Sized>(&mut self, node: usize, temp: f64, flips: bool, rng: &mut R) {
        if self.red[node] && self.k > 1 {
            let to = rng.random_range(0..self.k);
            let from = self.a[node];
            if to != from {
                let l = self.l_base;
                let d = self.shift(node, to);
                if Self::accept(d, temp, rng) {
                    self.record();
                } else {
                    self.shift(node, from);
                    self.l_base = l;
                }
            }
        }
        if flips {
            let want_red = rng.random_bool(0.5);
            if want_red != self.red[node] {
                if want_red {
                    if Self::accept(self.psi, temp, rng) {
                        self.red[node] = true;
                        self.q += 1;
                        self.record();
                    }
                } else {
                    let from = self.a[node];
                    let l = self.l_base;
                    let d = self.shift(node, self.meta[node]);
                    if Self::accept(d - self.psi, temp, rng) {
                        self.red[node] = false;
                        self.q -= 1;
                        self.record();
                    } else {
                        self.shift(node, from);
                        self.l_base = l;
                    }
                }
            }
        }
        debug_assert!(self.red[node] || self.a[node] == self.meta[node]);
    }

    fn sweep<R: Rng + ?Sized>(&mut self, temp: f64, flips: bool, rng: &mut R) {
        let n = self.a.len();
        for _ in 0..n {
            let node = rng.random_range(0..n);
            self.visit(node, temp, flips, rng);
        }
        self.resync();
    }

    /// Greedy coordinate ascent: each node takes its best single change
    /// (group move, lock, or free-and-move) while any improves `L_neo`.
    fn polish(&mut self, flips: bool) {
        let n = self.a.len();
        for _ in 0..MAX_POLISH_PASSES {
            let mut changed = false;
            for node in 0..n {
                let tol = TIE_TOLERANCE * self.l_neo().abs().max(1.0);
                let from = self.a[node];
                // (gain, target group, new red flag)
                let mut best: (f64, usize, bool) = (tol, from, self.red[node]);
                if self.red[node] {
                    for to in (0..self.k).filter(|&g| g != from) {
                        let d = self.probe(node, to);
                        if d > best.0 {
                            best = (d, to, true);
                        }
                    }
                    if flips {
                        let d = self.probe(node, self.meta[node]) - self.psi;
                        if d > best.0 {
                            best = (d, self.meta[node], false);
                        }
                    }
                } else if flips {
                    if self.psi > best.0 {
                        best = (self.psi, from, true);
                    }
                    for to in (0..self.k).filter(|&g| g != from) {
                        let d = self.probe(node, to) + self.psi;
                        if d > best.0 {
                            best = (d, to, true);
                        }
                    }
                }
                let (_, to, red) = best;
                if to != from || red != self.red[node] {
                    self.shift(node, to);
                    if red != self.red[node] {
                        self.red[node] = red;
                        if red {
                            self.q += 1;
                        } else {
                            self.q -= 1;
                        }
                    }
                    changed = true;
                }
            }
            self.resync();
            self.record();
            if !changed {
                break;
            }
        }
    }

    /// Moves `nodes` to `to`, locking those that land on their metadata
    /// group (or freeing everything when `ψ > 0`). Returns `ΔL_neo`.
    fn shift_cluster(&mut self, nodes: &[usize], to: usize) -> f64 {
        let mut delta = 0.0;
        for &i in nodes {
            delta += self.shift(i, to);
            let red = to != self.meta[i] || self.psi > 0.0;
            if red != self.red[i] {
                self.red[i] = red;
                if red {
                    self.q += 1;
                    delta += self.psi;
                } else {
                    self.q -= 1;
                    delta -= self.psi;
                }
            }
        }
        delta
    }

    /// Collective moves: nodes sharing both their current group and their
    /// group in the optimum form a cluster; each cluster tries every other
    /// group as a unit. Alternates with node-level polishing until neither
    /// improves.
    fn polish_clusters(&mut self) {
        let Some(opt) = self.opt else { return };
        let n = self.a.len();
        for _ in 0..MAX_POLISH_PASSES {
            let mut clusters: Vec<((usize, usize), Vec<usize>)> = Vec::new();
            for i in 0..n {
                let key = (self.a[i], opt[i]);
                match clusters.iter_mut().find(|c| c.0 == key) {
                    Some(c) => c.1.push(i),
                    None => clusters.push((key, alloc::vec![i])),
                }
            }
            let mut improved = false;
            for (_, nodes) in &clusters {
                let from = self.a[nodes[0]];
                if nodes.iter().any(|&i| self.a[i] != from) {
                    continue; // an earlier move in this pass touched it
                }
                let saved_red: Vec<bool> = nodes.iter().map(|&i| self.red[i]).collect();
                let (l, q) = (self.l_base, self.q);
                let tol = TIE_TOLERANCE * self.l_neo().abs().max(1.0);
                let mut best: Option<(f64, usize)> = None;
                for to in (0..self.k).filter(|&g| g != from) {
                    let d = self.shift_cluster(nodes, to);
                    if d > tol && best.map_or(true, |b| d > b.0) {
                        best = Some((d, to));
                    }
                    for (&i, &r) in nodes.iter().zip(&saved_red) {
                        self.shift(i, from);
                        self.red[i] = r;
                    }
                    self.l_base = l;
                    self.q = q;
                }
                if let Some((_, to)) = best {
                    self.shift_cluster(nodes, to);
                    improved = true;
                }
            }
            self.resync();
            self.record();
            if !improved {
                break;
            }
            self.polish(true);
        }
    }
}

/// Settings for an unconstrained blockmodel fit.
#[derive(Debug, Clone, PartialEq)]
pub struct FitConfig {
    pub k: usize,
    pub model: NeoModel,
    pub sweeps: usize,
    pub restarts: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SbmFit {
    pub partition: Partition,
    /// Raw labels in `0..k`; groups may be empty.
    pub assignment: Vec<usize>,
    pub l_base: f64,
}

/// Annealing start temperature for [`fit_sbm`]; it cools geometrically to
/// 1 over the first three quarters of the sweeps.
const FIT_START_TEMPERATURE: f64 = 5.0;

/// Maximizes the base objective over partitions into at most `k` groups:
/// annealed Metropolis from random starts, then greedy polishing. Returns
/// the best restart (lowest restart index on ties).
pub fn fit_sbm(graph: &Graph, cfg: &FitConfig, seed: u64) -> Result<SbmFit> {
    if cfg.k == 0 {
        return Err(Error::invalid("k", "must be at least 1"));
    }
    let n = graph.n_nodes();
    let restarts = cfg.restarts.max(1);
    let meta = alloc::vec![0usize; n];
    let all_red = alloc::vec![true; n];
    let anneal = (cfg.sweeps * 3) / 4;
    let results = par::map_indexed(restarts, |c| {
        let mut r = rng::substream(seed, tags::SBM_FIT, c as u64);
        let a: Vec<usize> = (0..n).map(|_| r.random_range(0..cfg.k)).collect();
        let mut chain = Chain::new(graph, cfg.model, &meta, None, 0.5, 0.0, cfg.k, a, all_red.clone());
        for s in 0..cfg.sweeps {
            let temp = if s < anneal {
                libm::pow(FIT_START_TEMPERATURE, 1.0 - s as f64 / anneal as f64)
            } else {
                1.0
            };
            chain.sweep(temp, false, &mut r);
        }
        chain.polish(false);
        chain.best
    });
    let mut best = &results[0];
    for s in &results[1..] {
        if beats(s.l_base, 0, best.l_base, 0) {
            best = s;
        }
    }
    Ok(SbmFit {
        partition: Partition::from_assignment(best.assignment.clone()),
        assignment: best.assignment.clone(),
        l_base: best.l_base,
    })
}

/// neoSBM inference with the optimum fitted by [`fit_sbm`] using
/// `cfg.k` (default: the metadata's group count) groups.
pub fn infer(graph: &Graph, metadata: &Partition, cfg: &NeoConfig, seed: u64) -> Result<NeoState> {
    let fit = fit_sbm(
        graph,
        &FitConfig {
            k: cfg.k.unwrap_or(metadata.k()),
            model: cfg.model,
            sweeps: cfg.sweeps,
            restarts: cfg.restarts,
        },
        rng::derive_seed(seed, tags::SBM_FIT, 0),
    )?;
    infer_from(graph, metadata, &fit.partition, cfg, seed, None)
}

/// neoSBM inference given the unconstrained `optimum`.
///
/// Chains start from: `warm` (if given); the optimum aligned to the
/// metadata with every node free; the metadata with every node locked; then
/// alternately community-wise blends (whole groups of the optimum replace
/// the metadata labels) and node-wise random blends of the two. Each runs `cfg.sweeps` Metropolis sweeps
/// followed by greedy polishing. The best state seen by any chain is
/// returned; ties go to fewer free nodes, then to the earlier chain.
pub fn infer_from(
    graph: &Graph,
    metadata: &Partition,
    optimum: &Partition,
    cfg: &NeoConfig,
    seed: u64,
    warm: Option<&NeoState>,
) -> Result<NeoState> {
    let n = graph.n_nodes();
    metadata.check_len(n)?;
    optimum.check_len(n)?;
    let psi = cfg.psi()?;
    let mut k = metadata.k().max(optimum.k()).max(cfg.k.unwrap_or(0));
    if let Some(w) = warm {
        w.check_lock(metadata)?;
        k = k.max(w.k);
    }
    let aligned = align_to_metadata(metadata, optimum, k)?;
    let meta = metadata.assignment();
    let n_fresh = cfg.restarts.max(1);
    let offset = usize::from(warm.is_some());
    let results = par::map_indexed(n_fresh + offset, |c| {
        let mut r = rng::substream(seed, tags::NEO_CHAIN, c as u64);
        let (a, red) = match (c, warm) {
            (0, Some(w)) => (w.assignment.clone(), w.red.clone()),
            _ => match c - offset {
                0 => (aligned.clone(), alloc::vec![true; n]),
                1 => (meta.to_vec(), alloc::vec![false; n]),
                j if j % 2 == 0 => {
                    // community-wise blend: each group of the optimum is
                    // adopted wholesale with probability 1/2
                    let adopt: Vec<bool> = (0..k).map(|_| r.random_bool(0.5)).collect();
                    let a: Vec<usize> = (0..n)
                        .map(|i| if adopt[aligned[i]] { aligned[i] } else { meta[i] })
                        .collect();
                    let red = (0..n).map(|i| a[i] != meta[i]).collect();
                    (a, red)
                }
                _ => {
                    // node-wise blend with random free/locked states
                    let red: Vec<bool> = (0..n).map(|_| r.random_bool(0.5)).collect();
                    let a = (0..n)
                        .map(|i| {
                            if !red[i] {
                                meta[i]
                            } else if r.random_bool(0.5) {
                                aligned[i]
                            } else {
                                r.random_range(0..k)
                            }
                        })
                        .collect();
                    (a, red)
                }
            },
        };
        let mut chain = Chain::new(graph, cfg.model, meta, Some(&aligned), cfg.theta, psi, k, a, red);
        for _ in 0..cfg.sweeps {
            chain.sweep(1.0, true, &mut r);
        }
        chain.polish(true);
        chain.polish_clusters();
        chain.best
    });
    let mut best = &results[0];
    for s in &results[1..] {
        if s.beats(best) {
            best = s;
        }
    }
    debug_assert!(best.check_lock(metadata).is_ok());
    Ok(best.clone())
}
