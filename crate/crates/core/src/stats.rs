//! Sufficient statistics of a graph under a partition.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::partition::Partition;

/// Group sizes `n_r`, ordered-pair edge counts `m_rs` and group degree totals
/// `κ_r` for a graph split into `k` groups.
///
/// `m` uses the ordered-pair convention: an edge inside group `r` adds 2 to
/// `m_rr`, an edge between `r != s` adds 1 to both `m_rs` and `m_sr`. Hence
/// `Σ_rs m_rs = 2|E|` and `κ_r = Σ_s m_rs`.
///
/// Groups may be empty when the statistics are built from a raw assignment
/// (MCMC chains keep a fixed `k`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockStats {
    k: usize,
    sizes: Vec<u64>,
    m: Vec<u64>,
    kappa: Vec<u64>,
    total_edges: u64,
}

impl BlockStats {
    pub fn compute(graph: &Graph, partition: &Partition) -> Result<Self> {
        partition.check_len(graph.n_nodes())?;
        Ok(Self::from_assignment(graph, partition.assignment(), partition.k()))
    }

    /// Statistics for a raw assignment into `k` groups (empty groups allowed).
    ///
    /// Panics if `assignment.len() != graph.n_nodes()` or a group index is
    /// `>= k`.
    pub fn from_assignment(graph: &Graph, assignment: &[usize], k: usize) -> Self {
        assert_eq!(assignment.len(), graph.n_nodes());
        let mut sizes = alloc::vec![0u64; k];
        for &g in assignment {
            sizes[g] += 1;
        }
        let mut m = alloc::vec![0u64; k * k];
        for &(i, j) in graph.edges() {
            let (r, s) = (assignment[i], assignment[j]);
            m[r * k + s] += 1;
            m[s * k + r] += 1;
        }
        let kappa = (0..k).map(|r| m[r * k..(r + 1) * k].iter().sum()).collect();
        BlockStats {
            k,
            sizes,
            m,
            kappa,
            total_edges: graph.n_edges() as u64,
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn size(&self, r: usize) -> u64 {
        self.sizes[r]
    }

    pub fn sizes(&self) -> &[u64] {
        &self.sizes
    }

    pub fn m(&self, r: usize, s: usize) -> u64 {
        self.m[r * self.k + s]
    }

    /// Row-major `k × k` edge-count matrix.
    pub fn m_matrix(&self) -> &[u64] {
        &self.m
    }

    pub fn kappa(&self, r: usize) -> u64 {
        self.kappa[r]
    }

    pub fn kappas(&self) -> &[u64] {
        &self.kappa
    }

    pub fn total_edges(&self) -> u64 {
        self.total_edges
    }

    pub fn n_nodes(&self) -> u64 {
        self.sizes.iter().sum()
    }

    /// Moves `node` from its current group `assignment[node]` to `to`,
    /// updating the statistics in `O(degree + 1)`. `assignment` must hold
    /// the groups of every node *before* the move; the caller updates it.
    pub fn move_node(&mut self, graph: &Graph, assignment: &[usize], node: usize, to: usize) {
        let from = assignment[node];
        if from == to {
            return;
        }
        let k = self.k;
        self.sizes[from] -= 1;
        self.sizes[to] += 1;
        for &nb in graph.neighbors(node) {
            let t = assignment[nb];
            // Edge (node, nb) contributed m[from][t] and m[t][from].
            self.m[from * k + t] -= 1;
            self.m[t * k + from] -= 1;
            self.m[to * k + t] += 1;
            self.m[t * k + to] += 1;
        }
        let deg = graph.degree(node) as u64;
        self.kappa[from] -= deg;
        self.kappa[to] += deg;
    }

    /// Checks the internal counting identities.
    pub fn validate(&self) -> Result<()> {
        let k = self.k;
        let total: u64 = self.m.iter().sum();
        if total != 2 * self.total_edges {
            return Err(Error::invalid("m", "entries do not sum to 2|E|"));
        }
        for r in 0..k {
            for s in 0..k {
                if self.m[r * k + s] != self.m[s * k + r] {
                    return Err(Error::invalid("m", "matrix is not symmetric"));
                }
            }
        }
        Ok(())
    }
}
