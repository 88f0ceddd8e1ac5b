//! Synthetic planted-partition networks and noisy metadata.

use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::partition::Partition;

/// Two-block planted network.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SynthConfig {
    pub n_nodes: usize,
    /// Ratio of between-group to within-group edge probability.
    pub epsilon: f64,
    pub mean_degree: f64,
}

impl SynthConfig {
    /// Within-group edge probability `2c / (N (1 + ε))`: a node has about
    /// `N/2` partners on each side, so its expected degree is
    /// `(N/2) ω (1 + ε) = c`.
    pub fn omega_in(&self) -> f64 {
        2.0 * self.mean_degree / (self.n_nodes as f64 * (1.0 + self.epsilon))
    }

    pub fn omega_out(&self) -> f64 {
        self.epsilon * self.omega_in()
    }

    fn validate(&self) -> Result<()> {
        if self.n_nodes < 2 {
            return Err(Error::invalid("n_nodes", "need at least 2 nodes"));
        }
        if !(0.0..=1.0).contains(&self.epsilon) {
            return Err(Error::invalid("epsilon", "must lie in [0, 1]"));
        }
        if !(self.mean_degree >= 0.0) {
            return Err(Error::invalid("mean_degree", "must be non-negative"));
        }
        let w = self.omega_in();
        if w > 1.0 {
            return Err(Error::invalid(
                "mean_degree",
                alloc::format!("implied within-group probability {w} exceeds 1"),
            ));
        }
        Ok(())
    }
}

/// Samples a two-block network. Nodes join either group with probability
/// ½; the returned truth partition has groups named `0` and `1`.
pub fn gen_two_block<R: Rng + ?Sized>(cfg: &SynthConfig, rng: &mut R) -> Result<(Graph, Partition)> {
    cfg.validate()?;
    let n = cfg.n_nodes;
    let groups: Vec<usize> = (0..n).map(|_| rng.random_range(0..2)).collect();
    let (w_in, w_out) = (cfg.omega_in(), cfg.omega_out());
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let w = if groups[i] == groups[j] { w_in } else { w_out };
            if rng.random::<f64>() < w {
                edges.push((i, j));
            }
        }
    }
    let graph = Graph::from_edges(n, edges)?;
    Ok((graph, Partition::from_assignment(groups)))
}

/// Noisy copy of `truth`: each node keeps its true label with probability
/// `ell`, otherwise gets a label drawn uniformly from all of truth's labels.
/// The agreement rate is `ell + (1 − ell)/K`, i.e. `(1 + ell)/2` for two
/// groups.
pub fn corrupt_metadata<R: Rng + ?Sized>(truth: &Partition, ell: f64, rng: &mut R) -> Result<Partition> {
    if !(0.0..=1.0).contains(&ell) {
        return Err(Error::invalid("ell", "must lie in [0, 1]"));
    }
    let k = truth.k();
    let labels: Vec<usize> = truth
        .assignment()
        .iter()
        .map(|&t| {
            if rng.random::<f64>() < ell {
                t
            } else {
                rng.random_range(0..k)
            }
        })
        .collect();
    let p = Partition::from_assignment(labels);
    let names = p
        .label_names()
        .iter()
        .map(|s| truth.label_names()[s.parse::<usize>().expect("numeric")].to_string())
        .collect();
    p.with_label_names(names)
}

/// Block-structured network with metadata and planted groupings defined as
/// unions of blocks.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiOptimumConfig {
    pub block_sizes: Vec<usize>,
    /// Row-major `B × B` edge probabilities.
    pub omega: Vec<f64>,
    /// Metadata group of each block.
    pub metadata_groups: Vec<usize>,
    /// Planted community of each block.
    pub planted_groups: Vec<usize>,
}

impl MultiOptimumConfig {
    /// Eight blocks forming four two-block communities `{1,2} {3,4} {5,6}
    /// {7,8}` (1-based). Blocks 2, 4, 5, 7 are peripheries and share a
    /// metadata label; the cores 1 and 3 share another, cores 6 and 8 get
    /// one each. The probabilities were calibrated so that, at 25 nodes per
    /// block, the route from metadata to the planted communities passes two
    /// intermediate optima.
    pub fn calibrated() -> Self {
        MultiOptimumConfig {
            block_sizes: vec![25; 8],
            omega: CALIBRATED_OMEGA.iter().flatten().copied().collect(),
            metadata_groups: vec![1, 0, 1, 0, 0, 2, 0, 3],
            planted_groups: vec![0, 0, 1, 1, 2, 2, 3, 3],
        }
    }

    pub fn n_blocks(&self) -> usize {
        self.block_sizes.len()
    }

    pub fn omega(&self, r: usize, s: usize) -> f64 {
        self.omega[r * self.n_blocks() + s]
    }

    pub fn validate(&self) -> Result<()> {
        let b = self.n_blocks();
        if b == 0 {
            return Err(Error::invalid("block_sizes", "no blocks"));
        }
        if self.omega.len() != b * b {
            return Err(Error::LengthMismatch {
                expected: b * b,
                found: self.omega.len(),
            });
        }
        for (name, v) in [
            ("metadata_groups", &self.metadata_groups),
            ("planted_groups", &self.planted_groups),
        ] {
            if v.len() != b {
                return Err(Error::invalid(name, "needs one entry per block"));
            }
        }
        for r in 0..b {
            for s in 0..b {
                let w = self.omega(r, s);
                if !(0.0..=1.0).contains(&w) {
                    return Err(Error::invalid(
                        "omega",
                        alloc::format!("entry ({r},{s}) = {w} outside [0, 1]"),
                    ));
                }
                if w != self.omega(s, r) {
                    return Err(Error::NotSymmetric { i: r, j: s });
                }
            }
        }
        Ok(())
    }

    /// Block of each node: nodes are laid out block by block.
    pub fn blocks(&self) -> Vec<usize> {
        self.block_sizes
            .iter()
            .enumerate()
            .flat_map(|(b, &n)| core::iter::repeat(b).take(n))
            .collect()
    }
}

const CALIBRATED_OMEGA: [[f64; 8]; 8] = [
    [0.3410, 0.0830, 0.0132, 0.0132, 0.0132, 0.0132, 0.0132, 0.0132],
    [0.0830, 0.1150, 0.0132, 0.0045, 0.0045, 0.0132, 0.0045, 0.0132],
    [0.0132, 0.0132, 0.4150, 0.1050, 0.0132, 0.0132, 0.0132, 0.0132],
    [0.0132, 0.0045, 0.1050, 0.4140, 0.0045, 0.0132, 0.0045, 0.0132],
    [0.0132, 0.0045, 0.0132, 0.0045, 0.4830, 0.0550, 0.0045, 0.0132],
    [0.0132, 0.0132, 0.0132, 0.0132, 0.0550, 0.5860, 0.0132, 0.0132],
    [0.0132, 0.0045, 0.0132, 0.0045, 0.0045, 0.0132, 0.3630, 0.1030],
    [0.0132, 0.0132, 0.0132, 0.0132, 0.0132, 0.0132, 0.1030, 0.5150],
];

/// Output of [`gen_multi_optimum`].
#[derive(Debug, Clone)]
pub struct MultiOptimumInstance {
    pub graph: Graph,
    pub metadata: Partition,
    pub planted: Partition,
    pub blocks: Partition,
}

pub fn gen_multi_optimum<R: Rng + ?Sized>(cfg: &MultiOptimumConfig, rng: &mut R) -> Result<MultiOptimumInstance> {
    cfg.validate()?;
    let blocks = cfg.blocks();
    let n = blocks.len();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.random::<f64>() < cfg.omega(blocks[i], blocks[j]) {
                edges.push((i, j));
            }
        }
    }
    let graph = Graph::from_edges(n, edges)?;
    let metadata = Partition::from_assignment(blocks.iter().map(|&b| cfg.metadata_groups[b]).collect());
    let planted = Partition::from_assignment(blocks.iter().map(|&b| cfg.planted_groups[b]).collect());
    Ok(MultiOptimumInstance {
        graph,
        metadata,
        planted,
        blocks: Partition::from_assignment(blocks),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng;
    use crate::stats::BlockStats;

    #[test]
    fn no_cross_edges_at_zero_epsilon() {
        let cfg = SynthConfig {
            n_nodes: 200,
            epsilon: 0.0,
            mean_degree: 8.0,
        };
        let (g, t) = gen_two_block(&cfg, &mut rng::from_seed(1)).unwrap();
        assert!(g.edges().iter().all(|&(i, j)| t.group_of(i) == t.group_of(j)));
        assert!(g.n_edges() > 0);
    }

    #[test]
    fn infeasible_omega_rejected() {
        let cfg = SynthConfig {
            n_nodes: 10,
            epsilon: 0.0,
            mean_degree: 9.0,
        };
        assert!(gen_two_block(&cfg, &mut rng::from_seed(1)).is_err());
    }

    #[test]
    fn full_correlation_copies_truth() {
        let t = Partition::from_assignment(vec![0, 1, 1, 0, 1]);
        let m = corrupt_metadata(&t, 1.0, &mut rng::from_seed(2)).unwrap();
        assert_eq!(m.assignment(), t.assignment());
    }

    #[test]
    fn block_densities_near_config() {
        let cfg = MultiOptimumConfig::calibrated();
        let inst = gen_multi_optimum(&cfg, &mut rng::from_seed(5)).unwrap();
        let s = BlockStats::compute(&inst.graph, &inst.blocks).unwrap();
        for r in 0..8 {
            for t in 0..8 {
                let pairs = if r == t { 25.0 * 24.0 } else { 625.0 };
                let w = cfg.omega(r, t);
                let got = s.m(r, t) as f64 / pairs;
                let sigma = (w * (1.0 - w) / if r == t { 300.0 } else { 625.0 }).sqrt();
                assert!((got - w).abs() <= 4.0 * sigma + 1e-12, "block ({r},{t}): {got} vs {w}");
            }
        }
        assert_eq!(inst.metadata.k(), 4);
        assert_eq!(inst.planted.k(), 4);
    }
}
