//! Text formats: edge lists, label files and surface CSV.
//!
//! Edge list: one edge per line, two whitespace-separated node tokens.
//! Label file: one `node label` pair per line, separated by a tab or
//! spaces. In both, blank lines and lines whose first non-blank character
//! is `#` are ignored. Node order is the order of first appearance.

use std::collections::HashMap;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use metanet_core::landscape::LandscapePoint;
use metanet_core::{Graph, Partition};
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },

    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },

    #[error("line {line}: node `{node}` does not appear in the graph")]
    UnknownNode { line: usize, node: String },

    #[error("line {line}: node `{node}` is listed twice")]
    DuplicateNode { line: usize, node: String },

    #[error("no label for node `{node}` ({missing} of {total} nodes unlabeled)")]
    IncompleteMetadata { node: String, missing: usize, total: usize },

    #[error("label files cover different node sets: `{node}` is missing from one")]
    NodeSetMismatch { node: String },

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Core(#[from] metanet_core::Error),
}

pub type Result<T> = std::result::Result<T, FormatError>;

pub fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| FormatError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|source| FormatError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Non-comment lines with their 1-based line numbers.
fn records(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            None
        } else {
            Some((i + 1, t.split_whitespace().collect()))
        }
    })
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut names = Vec::new();
    let mut edges = Vec::new();
    let mut intern = |tok: &str| {
        *index.entry(tok.to_string()).or_insert_with(|| {
            names.push(tok.to_string());
            names.len() - 1
        })
    };
    for (line, toks) in records(text) {
        if toks.len() != 2 {
            return Err(FormatError::Parse {
                line,
                reason: format!("expected 2 tokens, found {}", toks.len()),
            });
        }
        if toks[0] == toks[1] {
            return Err(FormatError::Parse {
                line,
                reason: format!("self-loop on `{}`", toks[0]),
            });
        }
        let u = intern(toks[0]);
        let v = intern(toks[1]);
        edges.push((u, v));
    }
    Ok(Graph::from_named_edges(names, edges)?)
}

pub fn read_edge_list(path: &Path) -> Result<Graph> {
    parse_edge_list(&read_text(path)?).map_err(|e| locate(path, e))
}

/// Prefixes parse errors with the file name.
fn locate(path: &Path, e: FormatError) -> FormatError {
    match e {
        FormatError::Parse { line, reason } => FormatError::Parse {
            line,
            reason: format!("{}: {reason}", path.display()),
        },
        other => other,
    }
}

pub fn write_edge_list(graph: &Graph) -> String {
    let mut out = String::new();
    for &(u, v) in graph.edges() {
        out.push_str(graph.name(u));
        out.push(' ');
        out.push_str(graph.name(v));
        out.push('\n');
    }
    out
}

/// `(node, label)` pairs in file order.
pub fn parse_label_pairs(text: &str) -> Result<Vec<(usize, String, String)>> {
    let mut seen: HashMap<String, usize> = HashMap::new();
    let mut out = Vec::new();
    for (line, toks) in records(text) {
        if toks.len() != 2 {
            return Err(FormatError::Parse {
                line,
                reason: format!("expected `node label`, found {} tokens", toks.len()),
            });
        }
        if seen.insert(toks[0].to_string(), line).is_some() {
            return Err(FormatError::DuplicateNode {
                line,
                node: toks[0].to_string(),
            });
        }
        out.push((line, toks[0].to_string(), toks[1].to_string()));
    }
    Ok(out)
}

/// Labels for every node of `graph`; groups are numbered by first
/// appearance in the file.
pub fn parse_labels(text: &str, graph: &Graph) -> Result<Partition> {
    let pairs = parse_label_pairs(text)?;
    let mut by_node: Vec<Option<String>> = vec![None; graph.n_nodes()];
    let mut order = Vec::with_capacity(pairs.len());
    for (line, node, label) in pairs {
        let i = graph.index_of(&node).ok_or(FormatError::UnknownNode { line, node })?;
        order.push(i);
        by_node[i] = Some(label);
    }
    let missing = by_node.iter().filter(|l| l.is_none()).count();
    if let Some(i) = by_node.iter().position(|l| l.is_none()) {
        return Err(FormatError::IncompleteMetadata {
            node: graph.name(i).to_string(),
            missing,
            total: graph.n_nodes(),
        });
    }
    // Group numbering follows the file, not the graph's node order.
    let mut group: HashMap<&str, usize> = HashMap::new();
    let mut names = Vec::new();
    for &i in &order {
        let l = by_node[i].as_deref().expect("checked above");
        group.entry(l).or_insert_with(|| {
            names.push(l.to_string());
            names.len() - 1
        });
    }
    let assignment = by_node
        .iter()
        .map(|l| group[l.as_deref().expect("checked above")])
        .collect();
    Ok(Partition::from_assignment(assignment).with_label_names(names)?)
}

pub fn read_labels(path: &Path, graph: &Graph) -> Result<Partition> {
    parse_labels(&read_text(path)?, graph).map_err(|e| locate(path, e))
}

/// A label file read without a graph: node names in file order and the
/// partition over them.
#[derive(Debug, Clone)]
pub struct LabelFile {
    pub nodes: Vec<String>,
    pub partition: Partition,
}

impl LabelFile {
    pub fn parse(text: &str) -> Result<Self> {
        let pairs = parse_label_pairs(text)?;
        let nodes = pairs.iter().map(|(_, n, _)| n.clone()).collect();
        let partition = Partition::from_labels(pairs.iter().map(|(_, _, l)| l.as_str()));
        Ok(LabelFile { nodes, partition })
    }

    pub fn read(path: &Path) -> Result<Self> {
        Self::parse(&read_text(path)?).map_err(|e| locate(path, e))
    }

    /// `other`'s partition reordered to this file's node order.
    pub fn align(&self, other: &LabelFile) -> Result<Partition> {
        let pos: HashMap<&str, usize> = other.nodes.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
        if other.nodes.len() != self.nodes.len() {
            let node = other
                .nodes
                .iter()
                .find(|n| !self.nodes.contains(n))
                .or_else(|| self.nodes.iter().find(|n| !pos.contains_key(n.as_str())))
                .cloned()
                .unwrap_or_default();
            return Err(FormatError::NodeSetMismatch { node });
        }
        let mut labels = Vec::with_capacity(self.nodes.len());
        for n in &self.nodes {
            let j = *pos
                .get(n.as_str())
                .ok_or_else(|| FormatError::NodeSetMismatch { node: n.clone() })?;
            labels.push(other.partition.label_of(j));
        }
        Ok(Partition::from_labels(labels))
    }
}

/// One line per node of `graph`, in node order.
pub fn write_labels(graph: &Graph, partition: &Partition) -> String {
    let mut out = String::new();
    for i in 0..graph.n_nodes() {
        out.push_str(graph.name(i));
        out.push('\t');
        out.push_str(partition.label_of(i));
        out.push('\n');
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
struct SurfaceRow {
    x: f64,
    y: f64,
    score: f64,
    partition_id: usize,
}

pub fn write_surface<W: io::Write>(points: &[LandscapePoint], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for p in points {
        w.serialize(SurfaceRow {
            x: p.x,
            y: p.y,
            score: p.score,
            partition_id: p.partition_id,
        })?;
    }
    if points.is_empty() {
        w.write_record(["x", "y", "score", "partition_id"])?;
    }
    w.flush().map_err(|source| FormatError::Io {
        path: PathBuf::from("<surface>"),
        source,
    })?;
    Ok(())
}

pub fn read_surface<R: io::Read>(input: R) -> Result<Vec<LandscapePoint>> {
    let mut r = csv::Reader::from_reader(input);
    let mut out = Vec::new();
    for row in r.deserialize() {
        let row: SurfaceRow = row?;
        out.push(LandscapePoint {
            x: row.x,
            y: row.y,
            score: row.score,
            partition_id: row.partition_id,
        });
    }
    Ok(out)
}
