//! Simple undirected graphs and their adjacency / degree / Laplacian matrices.
//!
//! Node indices are 0-based. Edges are unordered pairs with no self-loops
//! and no duplicates. All values are immutable after construction.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write as _;

use ndarray::Array2;

use crate::error::{Error, Result};
use crate::spectrum::{Spectrum, SpectrumKind};

/// Dense row-major real matrix.
pub type DenseMatrix = Array2<f64>;

/// A simple undirected graph: node count plus a set of unordered edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    node_count: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl Graph {
    /// Builds a graph, normalizing each edge to (min, max) order.
    /// Rejects self-loops, duplicates, and out-of-range endpoints.
    pub fn new(node_count: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if node_count == 0 {
            return Err(Error::Input("graph must have at least one node".into()));
        }
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::Input(format!("self-loop on node {u}")));
            }
            if u >= node_count || v >= node_count {
                return Err(Error::Input(format!(
                    "edge ({u}, {v}) out of range for {node_count} nodes"
                )));
            }
            let e = (u.min(v), u.max(v));
            if !set.insert(e) {
                return Err(Error::Input(format!("duplicate edge ({}, {})", e.0, e.1)));
            }
        }
        Ok(Graph {
            node_count,
            edges: set,
        })
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    /// Node degrees, exact integer arithmetic.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0usize; self.node_count];
        for &(u, v) in &self.edges {
            d[u] += 1;
            d[v] += 1;
        }
        d
    }

    /// Symmetric 0/1 matrix with zero diagonal.
    pub fn adjacency_matrix(&self) -> DenseMatrix {
        let n = self.node_count;
        let mut a = Array2::<f64>::zeros((n, n));
        for &(u, v) in &self.edges {
            a[[u, v]] = 1.0;
            a[[v, u]] = 1.0;
        }
        a
    }

    /// Sorted degree sequence.
    pub fn degree_spectrum(&self) -> Spectrum {
        Spectrum::new(
            self.degrees().into_iter().map(|d| d as f64).collect(),
            SpectrumKind::Degree,
        )
    }

    /// Combinatorial Laplacian L = D - A.
    pub fn laplacian_matrix(&self) -> DenseMatrix {
        let n = self.node_count;
        let mut l = Array2::<f64>::zeros((n, n));
        for (i, d) in self.degrees().into_iter().enumerate() {
            l[[i, i]] = d as f64;
        }
        for &(u, v) in &self.edges {
            l[[u, v]] = -1.0;
            l[[v, u]] = -1.0;
        }
        l
    }

    /// BFS from node 0 reaches every node.
    pub fn is_connected(&self) -> bool {
        let n = self.node_count;
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    queue.push_back(v);
                }
            }
        }
        count == n
    }

    /// Parses the edge-list text format:
    /// first non-comment line `nodes N`, then `u v` per line, `#` comments.
    pub fn from_edge_list_str(text: &str) -> Result<Self> {
        let mut node_count: Option<usize> = None;
        let mut edges = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            match node_count {
                None => {
                    let mut parts = line.split_whitespace();
                    if parts.next() != Some("nodes") {
                        return Err(Error::Parse {
                            line: line_no,
                            message: "expected header `nodes N`".into(),
                        });
                    }
                    let n = parts
                        .next()
                        .and_then(|t| t.parse::<usize>().ok())
                        .ok_or(Error::Parse {
                            line: line_no,
                            message: "expected header `nodes N`".into(),
                        })?;
                    if parts.next().is_some() {
                        return Err(Error::Parse {
                            line: line_no,
                            message: "trailing tokens after `nodes N`".into(),
                        });
                    }
                    node_count = Some(n);
                }
                Some(n) => {
                    let toks: Vec<&str> = line.split_whitespace().collect();
                    if toks.len() != 2 {
                        return Err(Error::Parse {
                            line: line_no,
                            message: format!("expected `u v`, got `{line}`"),
                        });
                    }
                    let parse = |t: &str| {
                        t.parse::<usize>().map_err(|_| Error::Parse {
                            line: line_no,
                            message: format!("invalid node index `{t}`"),
                        })
                    };
                    let (u, v) = (parse(toks[0])?, parse(toks[1])?);
                    if u == v || u >= n || v >= n {
                        return Err(Error::Parse {
                            line: line_no,
                            message: format!("invalid edge ({u}, {v}) for {n} nodes"),
                        });
                    }
                    edges.push((u, v));
                }
            }
        }
        let n = node_count.ok_or(Error::Input("missing `nodes N` header".into()))?;
        // duplicate edges are a load error, reported without a line number
        Graph::new(n, edges)
    }

    pub fn load_edge_list(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Graph::from_edge_list_str(&text)
    }

    pub fn to_edge_list_string(&self) -> String {
        let mut out = String::new();
        writeln!(out, "nodes {}", self.node_count).unwrap();
        for &(u, v) in &self.edges {
            writeln!(out, "{u} {v}").unwrap();
        }
        out
    }

    pub fn write_edge_list(&self, path: &std::path::Path) -> Result<()> {
        std::fs::write(path, self.to_edge_list_string())?;
        Ok(())
    }
}

/// The 4-node star and the triangle used as running examples throughout
/// the test suite.
#[cfg(test)]
pub(crate) mod fixtures {
    use super::Graph;

    pub fn star4() -> Graph {
        Graph::new(4, [(0, 1), (1, 2), (1, 3)]).unwrap()
    }

    pub fn triangle() -> Graph {
        Graph::new(3, [(0, 1), (0, 2), (1, 2)]).unwrap()
    }
}
