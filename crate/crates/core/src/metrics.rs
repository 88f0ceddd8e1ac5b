//! Partition comparison: mutual-information scores, variation of
//! information, set-partition enumeration and the AMI homogeneity check.
//!
//! All entropies and informations are in bits.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math;
use crate::partition::Partition;

/// Largest `n` for which [`enumerate_partitions`] runs by default
/// (`B_12 = 4 213 597`).
pub const DEFAULT_ENUMERATION_CAP: usize = 12;

/// Largest `n` accepted by the brute-force expected mutual information.
pub const BRUTE_FORCE_EMI_CAP: usize = 8;

/// Denominators smaller than this make AMI undefined; it is reported as 0.
const AMI_DEGENERATE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContingencyTable {
    rows: usize,
    cols: usize,
    counts: Vec<u64>,
    row_sums: Vec<u64>,
    col_sums: Vec<u64>,
    n: u64,
}

impl ContingencyTable {
    pub fn new(u: &Partition, v: &Partition) -> Result<Self> {
        v.check_len(u.len())?;
        let (rows, cols) = (u.k(), v.k());
        let mut counts = vec![0u64; rows * cols];
        for (&a, &b) in u.assignment().iter().zip(v.assignment()) {
            counts[a * cols + b] += 1;
        }
        let row_sums = (0..rows)
            .map(|r| (0..cols).map(|c| counts[r * cols + c]).sum())
            .collect();
        let col_sums = (0..cols)
            .map(|c| (0..rows).map(|r| counts[r * cols + c]).sum())
            .collect();
        Ok(ContingencyTable {
            rows,
            cols,
            counts,
            row_sums,
            col_sums,
            n: u.len() as u64,
        })
    }

    pub fn count(&self, r: usize, c: usize) -> u64 {
        self.counts[r * self.cols + c]
    }

    pub fn row_sums(&self) -> &[u64] {
        &self.row_sums
    }

    pub fn col_sums(&self) -> &[u64] {
        &self.col_sums
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn mutual_information(&self) -> f64 {
        let n = self.n as f64;
        let mut acc = 0.0;
        for r in 0..self.rows {
            for c in 0..self.cols {
                let nij = self.count(r, c) as f64;
                if nij > 0.0 {
                    let denom = self.row_sums[r] as f64 * self.col_sums[c] as f64;
                    acc += nij / n * math::log2(n * nij / denom);
                }
            }
        }
        acc
    }
}

fn entropy_of_sizes(sizes: &[u64], n: u64) -> f64 {
    let n = n as f64;
    -sizes
        .iter()
        .filter(|&&s| s > 0)
        .map(|&s| {
            let p = s as f64 / n;
            p * math::log2(p)
        })
        .sum::<f64>()
}

/// Shannon entropy of the group-size distribution.
pub fn entropy(u: &Partition) -> f64 {
    let sizes: Vec<u64> = u.group_sizes().into_iter().map(|s| s as u64).collect();
    entropy_of_sizes(&sizes, u.len() as u64)
}

/// Both partitions in restricted-growth labeling, ordered by that labeling,
/// so that every metric is exactly symmetric and label-free in floating
/// point.
fn canonical_pair(u: &Partition, v: &Partition) -> Result<(Partition, Partition)> {
    v.check_len(u.len())?;
    let (cu, cv) = (u.canonical(), v.canonical());
    let (a, b) = if cu <= cv { (cu, cv) } else { (cv, cu) };
    Ok((Partition::from_assignment(a), Partition::from_assignment(b)))
}

pub fn mutual_information(u: &Partition, v: &Partition) -> Result<f64> {
    let (u, v) = canonical_pair(u, v)?;
    Ok(ContingencyTable::new(&u, &v)?.mutual_information())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Normalization {
    /// `√(H(u) H(v))`
    Sqrt,
    /// `(H(u) + H(v)) / 2`
    Avg,
    /// `max(H(u), H(v))`
    Max,
}

impl core::str::FromStr for Normalization {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sqrt" => Ok(Normalization::Sqrt),
            "avg" => Ok(Normalization::Avg),
            "max" => Ok(Normalization::Max),
            _ => Err(Error::invalid("normalization", "expected sqrt, avg or max")),
        }
    }
}

/// Normalized mutual information. When the normalizer is 0 (a one-group
/// partition is involved) the result is 1 for identical groupings and 0
/// otherwise.
pub fn nmi(u: &Partition, v: &Partition, norm: Normalization) -> Result<f64> {
    let (u, v) = &canonical_pair(u, v)?;
    let table = ContingencyTable::new(u, v)?;
    let (hu, hv) = (entropy(u), entropy(v));
    let denom = match norm {
        Normalization::Sqrt => math::sqrt(hu * hv),
        Normalization::Avg => 0.5 * (hu + hv),
        Normalization::Max => hu.max(hv),
    };
    if denom == 0.0 {
        return Ok(if u.same_grouping(v) { 1.0 } else { 0.0 });
    }
    Ok(table.mutual_information() / denom)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EmiMode {
    /// Sum over the hypergeometric distribution of each contingency cell.
    ClosedForm,
    /// Average over all pairs of partitions with the same group sizes.
    BruteForce,
}

/// Expected mutual information of two random partitions with the group
/// sizes of `u` and `v`.
pub fn expected_mi(u: &Partition, v: &Partition, mode: EmiMode) -> Result<f64> {
    v.check_len(u.len())?;
    match mode {
        EmiMode::ClosedForm => {
            let a: Vec<u64> = u.group_sizes().into_iter().map(|s| s as u64).collect();
            let b: Vec<u64> = v.group_sizes().into_iter().map(|s| s as u64).collect();
            Ok(expected_mi_sizes(&a, &b, u.len() as u64))
        }
        EmiMode::BruteForce => {
            let n = u.len();
            if n > BRUTE_FORCE_EMI_CAP {
                return Err(Error::TooLarge {
                    what: "brute-force expected MI objects",
                    size: n as u128,
                    cap: BRUTE_FORCE_EMI_CAP as u128,
                });
            }
            let (pu, pv) = (u.size_profile(), v.size_profile());
            let mut class_u = Vec::new();
            let mut class_v = Vec::new();
            for p in enumerate_partitions(n)? {
                let profile = p.size_profile();
                if profile == pv {
                    class_v.push(p.clone());
                }
                if profile == pu {
                    class_u.push(p);
                }
            }
            let mut acc = 0.0;
            for x in &class_u {
                for y in &class_v {
                    acc += mutual_information(x, y)?;
                }
            }
            Ok(acc / (class_u.len() * class_v.len()) as f64)
        }
    }
}

fn expected_mi_sizes(a: &[u64], b: &[u64], n: u64) -> f64 {
    let nf = n as f64;
    let lf = math::ln_factorial;
    let ln_n_fact = lf(n);
    let mut acc = 0.0;
    for &ai in a {
        for &bj in b {
            let lo = (ai + bj).saturating_sub(n).max(1);
            let hi = ai.min(bj);
            let fixed = lf(ai) + lf(bj) + lf(n - ai) + lf(n - bj) - ln_n_fact;
            for nij in lo..=hi {
                let ln_p = fixed - lf(nij) - lf(ai - nij) - lf(bj - nij) - lf(n + nij - ai - bj);
                let x = nij as f64;
                acc += x / nf * math::log2(nf * x / (ai as f64 * bj as f64)) * math::exp(ln_p);
            }
        }
    }
    acc
}

/// Adjusted mutual information with the geometric-mean normalizer,
/// `(I − E[I]) / (√(H(u) H(v)) − E[I])`.
///
/// Identical groupings score 1. Otherwise a comparison against the
/// one-group or all-singleton partition scores 0, as does any pair whose
/// denominator vanishes (a warning is logged in that case).
pub fn ami(u: &Partition, v: &Partition) -> Result<f64> {
    let (u, v) = &canonical_pair(u, v)?;
    if u.same_grouping(v) {
        return Ok(1.0);
    }
    let n = u.len();
    if [u.k(), v.k()].iter().any(|&k| k == 1 || k == n) {
        return Ok(0.0);
    }
    let i = mutual_information(u, v)?;
    let e = expected_mi(u, v, EmiMode::ClosedForm)?;
    let den = math::sqrt(entropy(u) * entropy(v)) - e;
    if den.abs() < AMI_DEGENERATE {
        log::warn!("AMI denominator is {den:e}; reporting 0");
        return Ok(0.0);
    }
    Ok((i - e) / den)
}

/// Variation of information `H(u) + H(v) − 2 I(u, v)`.
pub fn vi(u: &Partition, v: &Partition) -> Result<f64> {
    let (u, v) = &canonical_pair(u, v)?;
    let i = ContingencyTable::new(u, v)?.mutual_information();
    Ok((entropy(u) + entropy(v) - 2.0 * i).max(0.0))
}

/// Bell number `B_n`; `None` on overflow.
pub fn bell_number(n: usize) -> Option<u128> {
    // Bell triangle
    let mut row: Vec<u128> = vec![1];
    for _ in 0..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(*row.last()?);
        for &x in &row {
            let y = next.last()?.checked_add(x)?;
            next.push(y);
        }
        row = next;
    }
    row.first().copied()
}

/// All set partitions of `n` objects in restricted-growth-string order.
pub fn enumerate_partitions(n: usize) -> Result<PartitionIter> {
    enumerate_partitions_capped(n, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_partitions_capped(n: usize, cap: usize) -> Result<PartitionIter> {
    if n > cap {
        return Err(Error::TooLarge {
            what: "objects to enumerate",
            size: n as u128,
            cap: cap as u128,
        });
    }
    Ok(PartitionIter {
        rgs: vec![0; n],
        prefix_max: vec![0; n],
        done: false,
    })
}

/// Iterator over restricted growth strings `a` with `a[0] = 0` and
/// `a[i] ≤ 1 + max(a[..i])`.
#[derive(Debug, Clone)]
pub struct PartitionIter {
    rgs: Vec<usize>,
    /// `prefix_max[i] = max(a[..=i])`
    prefix_max: Vec<usize>,
    done: bool,
}

impl Iterator for PartitionIter {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        if self.done {
            return None;
        }
        let out = Partition::from_assignment(self.rgs.clone());
        let n = self.rgs.len();
        let mut i = n;
        loop {
            if i <= 1 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.rgs[i] <= self.prefix_max[i - 1] {
                self.rgs[i] += 1;
                self.prefix_max[i] = self.prefix_max[i - 1].max(self.rgs[i]);
                for j in (i + 1)..n {
                    self.rgs[j] = 0;
                    self.prefix_max[j] = self.prefix_max[i];
                }
                break;
            }
        }
        Some(out)
    }
}

/// Mean AMI from `u` to every partition of the same objects.
pub fn homogeneity_profile(u: &Partition) -> Result<f64> {
    let n = u.len();
    let mut total = 0.0;
    let mut count = 0u64;
    for v in enumerate_partitions(n)? {
        total += ami(u, &v)?;
        count += 1;
    }
    Ok(total / count as f64)
}

/// One row per group-size profile of `n` objects: the profile, how many
/// partitions share it, and the mean AMI from any of them to all of Ω.
pub fn homogeneity_by_profile(n: usize) -> Result<Vec<(Vec<usize>, u64, f64)>> {
    let all: Vec<Partition> = enumerate_partitions(n)?.collect();
    let mut rows: Vec<(Vec<usize>, u64, Partition)> = Vec::new();
    for p in &all {
        let profile = p.size_profile();
        match rows.iter_mut().find(|r| r.0 == profile) {
            Some(r) => r.1 += 1,
            None => rows.push((profile, 1, p.clone())),
        }
    }
    rows.into_iter()
        .map(|(profile, count, rep)| {
            let mut total = 0.0;
            for v in &all {
                total += ami(&rep, v)?;
            }
            Ok((profile, count, total / all.len() as f64))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(a: &[usize]) -> Partition {
        Partition::from_assignment(a.to_vec())
    }

    #[test]
    fn bell_numbers() {
        let expected = [1u128, 1, 2, 5, 15, 52, 203, 877, 4140, 21147, 115975, 678570, 4213597];
        for (n, &b) in expected.iter().enumerate() {
            assert_eq!(bell_number(n), Some(b));
            if n <= 9 {
                assert_eq!(enumerate_partitions(n).unwrap().count() as u128, b);
            }
        }
    }

    #[test]
    fn enumeration_cap() {
        assert!(enumerate_partitions(13).is_err());
    }

    #[test]
    fn enumerated_partitions_are_distinct() {
        let all: Vec<Vec<usize>> = enumerate_partitions(6).unwrap().map(|p| p.canonical()).collect();
        let mut sorted = all.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), all.len());
    }

    #[test]
    fn small_values() {
        let split = p(&[0, 0, 1]);
        let other = p(&[0, 1, 0]);
        let e = expected_mi(&split, &other, EmiMode::ClosedForm).unwrap();
        assert!((e - 0.4738513896).abs() < 1e-9);
        assert!((mutual_information(&split, &other).unwrap() - 0.2516291674).abs() < 1e-9);
        assert!((ami(&split, &other).unwrap() + 0.5).abs() < 1e-12);
        assert!((vi(&p(&[0, 0, 0]), &p(&[0, 1, 2])).unwrap() - math::log2(3.0)).abs() < 1e-12);
        assert_eq!(expected_mi(&p(&[0, 0, 0]), &split, EmiMode::ClosedForm).unwrap(), 0.0);
    }

    #[test]
    fn nmi_special_cases() {
        let one = p(&[0, 0, 0]);
        assert_eq!(nmi(&one, &one, Normalization::Sqrt).unwrap(), 1.0);
        assert_eq!(nmi(&one, &p(&[0, 1, 2]), Normalization::Sqrt).unwrap(), 0.0);
        assert!((nmi(&p(&[0, 0, 1]), &p(&[1, 1, 0]), Normalization::Max).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn brute_force_cap() {
        let u = Partition::singletons(9);
        assert!(expected_mi(&u, &u, EmiMode::BruteForce).is_err());
    }

    #[test]
    fn length_mismatch() {
        assert!(ami(&p(&[0, 1]), &p(&[0, 1, 1])).is_err());
    }
}
