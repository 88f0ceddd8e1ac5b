//! Node partitions (metadata, planted truth, inferred communities).

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Assignment of each of `n` nodes to one of `k` non-empty groups.
///
/// Group indices are dense: every index in `0..k` is used. Constructors
/// compact away empty groups while preserving the relative order of the
/// remaining ones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    assignment: Vec<usize>,
    k: usize,
    labels: Vec<String>,
}

impl Partition {
    /// Partition from raw group indices; unused indices are compacted out and
    /// surviving groups are named by their original index.
    pub fn from_assignment(assignment: Vec<usize>) -> Self {
        let max = assignment.iter().copied().max().map_or(0, |m| m + 1);
        let mut used = alloc::vec![false; max];
        for &g in &assignment {
            used[g] = true;
        }
        let mut remap = alloc::vec![usize::MAX; max];
        let mut labels = Vec::new();
        for (g, _) in used.iter().enumerate().filter(|(_, u)| **u) {
            remap[g] = labels.len();
            labels.push(g.to_string());
        }
        let assignment = assignment.into_iter().map(|g| remap[g]).collect();
        Partition {
            assignment,
            k: labels.len(),
            labels,
        }
    }

    /// Partition from per-node label strings; groups are numbered in order
    /// of first appearance.
    pub fn from_labels<I, S>(labels: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut index: BTreeMap<String, usize> = BTreeMap::new();
        let mut names = Vec::new();
        let mut assignment = Vec::new();
        for label in labels {
            let label = label.as_ref();
            let g = *index.entry(label.to_string()).or_insert_with(|| {
                names.push(label.to_string());
                names.len() - 1
            });
            assignment.push(g);
        }
        Partition {
            assignment,
            k: names.len(),
            labels: names,
        }
    }

    /// All nodes in one group.
    pub fn single_group(n: usize) -> Self {
        Self::from_assignment(alloc::vec![0; n])
    }

    /// Every node in its own group.
    pub fn singletons(n: usize) -> Self {
        Self::from_assignment((0..n).collect())
    }

    /// Replaces the group names. `names.len()` must equal `k`.
    pub fn with_label_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.k {
            return Err(Error::LengthMismatch {
                expected: self.k,
                found: names.len(),
            });
        }
        self.labels = names;
        Ok(self)
    }

    /// Same groups and names, different node-to-group vector. The caller
    /// guarantees every group stays non-empty (true for permutations).
    pub(crate) fn with_assignment_unchecked(&self, assignment: Vec<usize>) -> Self {
        debug_assert_eq!(assignment.len(), self.assignment.len());
        Partition {
            assignment,
            k: self.k,
            labels: self.labels.clone(),
        }
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn group_of(&self, node: usize) -> usize {
        self.assignment[node]
    }

    pub fn label_names(&self) -> &[String] {
        &self.labels
    }

    pub fn label_of(&self, node: usize) -> &str {
        &self.labels[self.assignment[node]]
    }

    pub fn group_sizes(&self) -> Vec<usize> {
        let mut sizes = alloc::vec![0; self.k];
        for &g in &self.assignment {
            sizes[g] += 1;
        }
        sizes
    }

    /// Group sizes sorted in decreasing order (the partition's "shape").
    pub fn size_profile(&self) -> Vec<usize> {
        let mut s = self.group_sizes();
        s.sort_unstable_by(|a, b| b.cmp(a));
        s
    }

    /// Restricted-growth relabeling: first node in group 0, next new group 1, ...
    pub fn canonical(&self) -> Vec<usize> {
        canonical_form(&self.assignment)
    }

    /// True when both partitions group the nodes identically, ignoring labels.
    pub fn same_grouping(&self, other: &Partition) -> bool {
        self.len() == other.len() && self.canonical() == other.canonical()
    }

    pub(crate) fn check_len(&self, n: usize) -> Result<()> {
        if self.len() == n {
            Ok(())
        } else {
            Err(Error::LengthMismatch {
                expected: n,
                found: self.len(),
            })
        }
    }
}

/// Restricted-growth string of an arbitrary labeling.
pub fn canonical_form(assignment: &[usize]) -> Vec<usize> {
    let mut map = BTreeMap::new();
    assignment
        .iter()
        .map(|g| {
            let next = map.len();
            *map.entry(*g).or_insert(next)
        })
        .collect()
}
