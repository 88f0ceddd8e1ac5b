//! Partition-space landscapes: sample partitions around a set of parents,
//! embed them in the plane by their pairwise variation of information and
//! attach a score to each point.

use alloc::vec;
use alloc::vec::Vec;

use rand::seq::index;
use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::math;
use crate::metrics;
use crate::neosbm::NeoModel;
use crate::par;
use crate::partition::Partition;
use crate::rng::{self, tags};
use crate::stats::BlockStats;

/// Off-diagonal mass below which the Jacobi iteration stops, relative to
/// the matrix norm.
const JACOBI_TOLERANCE: f64 = 1e-26;
const JACOBI_MAX_SWEEPS: usize = 100;

/// One crossover child: `q ~ U{0..N}` nodes chosen uniformly keep the
/// first parent's group index, the rest take the second's. Indices are
/// mixed as-is, so parents should share a labelling (e.g. all aligned to
/// the same metadata).
pub fn crossover<R: Rng + ?Sized>(first: &Partition, second: &Partition, rng: &mut R) -> Partition {
    let n = first.len();
    let q = rng.random_range(0..=n);
    let mut a = second.assignment().to_vec();
    for i in index::sample(rng, n, q) {
        a[i] = first.group_of(i);
    }
    Partition::from_assignment(a)
}

/// `n_samples` crossover children of random distinct parent pairs. Sample
/// `s` uses its own random stream, so the result is independent of
/// threading.
pub fn crossover_sample(parents: &[Partition], n_samples: usize, seed: u64) -> Result<Vec<Partition>> {
    if parents.len() < 2 {
        return Err(Error::invalid("parents", "need at least two"));
    }
    let n = parents[0].len();
    for p in parents {
        p.check_len(n)?;
    }
    Ok(par::map_indexed(n_samples, |s| {
        let mut r = rng::substream(seed, tags::CROSSOVER, s as u64);
        let i = r.random_range(0..parents.len());
        let mut j = r.random_range(0..parents.len() - 1);
        if j >= i {
            j += 1;
        }
        crossover(&parents[i], &parents[j], &mut r)
    }))
}

/// Pairwise variation of information.
pub fn vi_matrix(partitions: &[Partition]) -> Result<Vec<Vec<f64>>> {
    if partitions.is_empty() {
        return Err(Error::invalid("partitions", "empty"));
    }
    let n = partitions[0].len();
    for p in partitions {
        p.check_len(n)?;
    }
    let m = partitions.len();
    let rows = par::map_indexed(m, |i| {
        (0..m)
            .map(|j| {
                if i == j {
                    0.0
                } else {
                    // evaluate in a fixed argument order so d[i][j] == d[j][i]
                    let (a, b) = if i < j { (i, j) } else { (j, i) };
                    metrics::vi(&partitions[a], &partitions[b]).expect("lengths checked")
                }
            })
            .collect::<Vec<f64>>()
    });
    Ok(rows)
}

/// Eigenvalues and eigenvectors (as columns of the returned matrix) of a
/// symmetric matrix by cyclic Jacobi rotations.
pub fn symmetric_eigen(matrix: &[Vec<f64>]) -> (Vec<f64>, Vec<Vec<f64>>) {
    let n = matrix.len();
    let mut a: Vec<Vec<f64>> = matrix.to_vec();
    let mut v: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    let norm: f64 = a.iter().flatten().map(|x| x * x).sum();
    for _ in 0..JACOBI_MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum();
        if off <= JACOBI_TOLERANCE * norm.max(f64::MIN_POSITIVE) {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                if a[p][q] == 0.0 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + math::sqrt(theta * theta + 1.0));
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / math::sqrt(t * t + 1.0);
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for row in v.iter_mut() {
                    let (vkp, vkq) = (row[p], row[q]);
                    row[p] = c * vkp - s * vkq;
                    row[q] = s * vkp + c * vkq;
                }
            }
        }
    }
    ((0..n).map(|i| a[i][i]).collect(), v)
}

/// Classical (Torgerson) MDS into two dimensions.
///
/// Double-centers `−½ D²`, takes the two largest eigenvalues (negative ones
/// clamped to 0) and scales their eigenvectors by `√λ`. Each axis is
/// oriented so that its first non-negligible coordinate is positive.
pub fn mds_embed(dist: &[Vec<f64>]) -> Result<Vec<[f64; 2]>> {
    let n = dist.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    let scale = dist.iter().flatten().fold(0.0f64, |m, x| m.max(x.abs())).max(1.0);
    for i in 0..n {
        if dist[i].len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                found: dist[i].len(),
            });
        }
        for j in 0..n {
            if (dist[i][j] - dist[j][i]).abs() > 1e-12 * scale {
                return Err(Error::NotSymmetric { i, j });
            }
        }
    }
    let d2: Vec<Vec<f64>> = dist.iter().map(|r| r.iter().map(|x| x * x).collect()).collect();
    let row_mean: Vec<f64> = d2.iter().map(|r| r.iter().sum::<f64>() / n as f64).collect();
    let grand = row_mean.iter().sum::<f64>() / n as f64;
    let b: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| -0.5 * (d2[i][j] - row_mean[i] - row_mean[j] + grand))
                .collect()
        })
        .collect();
    let (values, vectors) = symmetric_eigen(&b);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| values[y].total_cmp(&values[x]).then(x.cmp(&y)));
    let mut coords = vec![[0.0; 2]; n];
    let tiny = 1e-12 * scale;
    for axis in 0..2.min(n) {
        let col = order[axis];
        let lambda = values[col].max(0.0);
        let mut x: Vec<f64> = (0..n).map(|i| vectors[i][col] * math::sqrt(lambda)).collect();
        if let Some(first) = x.iter().find(|v| v.abs() > tiny) {
            if *first < 0.0 {
                x.iter_mut().for_each(|v| *v = -*v);
            }
        }
        for (i, v) in x.into_iter().enumerate() {
            coords[i][axis] = if v.abs() > tiny { v } else { 0.0 };
        }
    }
    Ok(coords)
}

#[derive(Debug, Clone, PartialEq)]
pub struct LandscapePoint {
    pub x: f64,
    pub y: f64,
    pub score: f64,
    pub partition_id: usize,
}

/// Parents plus crossover samples, embedded and scored under `model`.
/// Point `i` refers to `partitions[i]` of the returned list.
pub fn build_landscape(
    graph: &Graph,
    parents: &[Partition],
    n_samples: usize,
    model: NeoModel,
    seed: u64,
) -> Result<(Vec<Partition>, Vec<LandscapePoint>)> {
    let mut partitions = parents.to_vec();
    partitions.extend(crossover_sample(parents, n_samples, seed)?);
    for p in &partitions {
        p.check_len(graph.n_nodes())?;
    }
    let coords = mds_embed(&vi_matrix(&partitions)?)?;
    let scores = par::map_indexed(partitions.len(), |i| {
        model.l_base(&BlockStats::from_assignment(
            graph,
            partitions[i].assignment(),
            partitions[i].k(),
        ))
    });
    let points = coords
        .into_iter()
        .zip(scores)
        .enumerate()
        .map(|(i, ([x, y], score))| LandscapePoint {
            x,
            y,
            score,
            partition_id: i,
        })
        .collect();
    Ok((partitions, points))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dist(p: &[[f64; 2]], i: usize, j: usize) -> f64 {
        math::sqrt((p[i][0] - p[j][0]).powi(2) + (p[i][1] - p[j][1]).powi(2))
    }

    #[test]
    fn equilateral_triangle() {
        let d = vec![vec![0.0, 2.0, 2.0], vec![2.0, 0.0, 2.0], vec![2.0, 2.0, 0.0]];
        let x = mds_embed(&d).unwrap();
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            assert!((dist(&x, i, j) - 2.0).abs() < 1e-9);
        }
    }

    #[test]
    fn zero_matrix_to_origin() {
        let x = mds_embed(&vec![vec![0.0; 4]; 4]).unwrap();
        assert!(x.iter().all(|p| p == &[0.0, 0.0]));
    }

    #[test]
    fn asymmetric_rejected() {
        let d = vec![vec![0.0, 1.0], vec![2.0, 0.0]];
        assert!(matches!(mds_embed(&d), Err(Error::NotSymmetric { .. })));
    }

    #[test]
    fn identical_parents_reproduce() {
        let p = Partition::from_assignment(vec![0, 0, 1, 1, 2]);
        let s = crossover_sample(&[p.clone(), p.clone()], 20, 4).unwrap();
        assert!(s.iter().all(|x| x.same_grouping(&p)));
        assert!(crossover_sample(&[p], 1, 0).is_err());
    }

    #[test]
    fn vi_matrix_symmetric() {
        let ps = [
            Partition::from_assignment(vec![0, 0, 1, 1]),
            Partition::from_assignment(vec![0, 1, 0, 1]),
            Partition::single_group(4),
        ];
        let d = vi_matrix(&ps).unwrap();
        for i in 0..3 {
            assert_eq!(d[i][i], 0.0);
            for j in 0..3 {
                assert_eq!(d[i][j], d[j][i]);
            }
        }
    }
}
