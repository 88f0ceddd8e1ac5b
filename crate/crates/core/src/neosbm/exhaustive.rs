//! Brute-force solvers used as oracles on small instances.

use alloc::vec;
use alloc::vec::Vec;

use super::{beats, optimal_red, NeoConfig, NeoModel, NeoState};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::partition::Partition;
use crate::stats::BlockStats;

/// Visits every assignment in `0..k`^n (odometer order), keeping the block
/// statistics up to date incrementally.
fn for_each_assignment<F>(graph: &Graph, k: usize, cap: u128, mut f: F) -> Result<()>
where
    F: FnMut(&[usize], &BlockStats),
{
    let n = graph.n_nodes();
    let size = (k as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if size > cap {
        return Err(Error::TooLarge {
            what: "assignments",
            size,
            cap,
        });
    }
    let mut a = vec![0usize; n];
    let mut stats = BlockStats::from_assignment(graph, &a, k);
    loop {
        f(&a, &stats);
        let mut pos = 0;
        loop {
            if pos == n {
                return Ok(());
            }
            let next = (a[pos] + 1) % k;
            stats.move_node(graph, &a, pos, next);
            a[pos] = next;
            if next != 0 {
                break;
            }
            pos += 1;
        }
    }
}

/// Exact maximizer of `L_neo` over all assignments into
/// `max(K_M, cfg.k)` groups and all free/locked patterns consistent with
/// them. For a fixed assignment the best pattern is known in closed form,
/// so only assignments are enumerated.
pub fn exhaustive_neo(graph: &Graph, metadata: &Partition, cfg: &NeoConfig) -> Result<NeoState> {
    metadata.check_len(graph.n_nodes())?;
    let psi = cfg.psi()?;
    let k = metadata.k().max(cfg.k.unwrap_or(0));
    let meta = metadata.assignment();
    let mut best: Option<(f64, usize, Vec<usize>, f64)> = None;
    for_each_assignment(graph, k, cfg.exhaustive_cap, |a, stats| {
        let l_base = cfg.model.l_base(stats);
        let mismatched = a.iter().zip(meta).filter(|(x, m)| x != m).count();
        let q = if psi > 0.0 { a.len() } else { mismatched };
        let l_neo = l_base + q as f64 * psi;
        if best.as_ref().map_or(true, |b| beats(l_neo, q, b.0, b.1)) {
            best = Some((l_neo, q, a.to_vec(), l_base));
        }
    })?;
    let (l_neo, q, assignment, l_base) = best.expect("at least one assignment");
    let red = optimal_red(&assignment, meta, psi);
    Ok(NeoState {
        theta: cfg.theta,
        assignment,
        k,
        red,
        q,
        l_base,
        l_neo,
    })
}

/// Exact maximum of the base objective over assignments into `k` groups;
/// returns the first maximizer in enumeration order.
pub fn exhaustive_sbm(graph: &Graph, k: usize, model: NeoModel, cap: u128) -> Result<(Vec<usize>, f64)> {
    if k == 0 {
        return Err(Error::invalid("k", "must be at least 1"));
    }
    let mut best: Option<(Vec<usize>, f64)> = None;
    for_each_assignment(graph, k, cap, |a, stats| {
        let l = model.l_base(stats);
        if best.as_ref().map_or(true, |b| beats(l, 0, b.1, 0)) {
            best = Some((a.to_vec(), l));
        }
    })?;
    Ok(best.expect("at least one assignment"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edgeless_single_node_keeps_metadata() {
        let g = Graph::empty(1);
        let m = Partition::single_group(1);
        let s = exhaustive_neo(&g, &m, &NeoConfig::new(0.3)).unwrap();
        assert_eq!(s.q, 0);
        assert_eq!(s.assignment, vec![0]);
    }

    #[test]
    fn cap_enforced() {
        let g = Graph::empty(30);
        let m = Partition::from_assignment((0..30).map(|i| i % 2).collect());
        assert!(matches!(
            exhaustive_neo(&g, &m, &NeoConfig::new(0.3)),
            Err(Error::TooLarge { .. })
        ));
    }
}
