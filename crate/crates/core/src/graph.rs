//! Immutable simple undirected graphs with dense node indices.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Simple undirected graph on nodes `0..n`.
///
/// Edges are stored once as `(i, j)` with `i < j`, in first-insertion
/// order. Duplicate edges collapse; self-loops are rejected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    names: Vec<String>,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph on `n` nodes named `"0".."n-1"`.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let names = (0..n).map(|i| i.to_string()).collect();
        Self::from_named_edges(names, edges)
    }

    /// Builds a graph whose node `i` is called `names[i]`.
    pub fn from_named_edges<I>(names: Vec<String>, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let n = names.len();
        let mut seen = BTreeSet::new();
        let mut kept = Vec::new();
        let mut adjacency = alloc::vec![Vec::new(); n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::NodeOutOfRange { u, v, n });
            }
            if u == v {
                return Err(Error::SelfLoop { node: names[u].clone() });
            }
            let key = (u.min(v), u.max(v));
            if seen.insert(key) {
                kept.push(key);
                adjacency[u].push(v);
                adjacency[v].push(u);
            }
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Graph {
            names,
            edges: kept,
            adjacency,
        })
    }

    /// Graph with `n` nodes and no edges.
    pub fn empty(n: usize) -> Self {
        Self::from_edges(n, core::iter::empty()).expect("edgeless graph is valid")
    }

    pub fn n_nodes(&self) -> usize {
        self.names.len()
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(i, j)` with `i < j`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn degree(&self, node: usize) -> usize {
        self.adjacency[node].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    /// Sorted neighbor list.
    pub fn neighbors(&self, node: usize) -> &[usize] {
        &self.adjacency[node]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, node: usize) -> &str {
        &self.names[node]
    }

    /// Index of the node called `name`, by linear scan.
    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Short human-readable summary.
    pub fn describe(&self) -> String {
        format!("{} nodes, {} edges", self.n_nodes(), self.n_edges())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn duplicates_collapse_and_degrees_sum() {
        let g = Graph::from_edges(3, [(0, 1), (1, 0), (0, 1), (1, 2)]).unwrap();
        assert_eq!(g.n_edges(), 2);
        assert_eq!(g.degrees(), [1, 2, 1]);
        assert_eq!(g.degrees().iter().sum::<usize>(), 2 * g.n_edges());
        assert!(g.has_edge(2, 1));
        assert!(!g.has_edge(0, 2));
    }

    #[test]
    fn self_loop_rejected() {
        let err = Graph::from_edges(2, [(1, 1)]).unwrap_err();
        assert!(matches!(err, Error::SelfLoop { .. }));
    }

    #[test]
    fn out_of_range_rejected() {
        assert!(Graph::from_edges(2, [(0, 2)]).is_err());
    }
}
