//! Labeled trees over dense vertex labels `0..n`.

mod canon;
pub(crate) mod prufer;

use std::fmt::Write as _;
use std::str::FromStr;

use thiserror::Error;

use crate::degseq::{Degree, DegreeSequence};

pub use canon::{canonical_form, canonical_labeling, canonicalize, CanonicalForm};
pub use prufer::{prufer_decode, prufer_encode, PruferSequence};

/// Vertex label.
pub type Vertex = usize;

/// Undirected edge, smaller label first.
pub type Edge = (Vertex, Vertex);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("a tree needs at least one vertex")]
    NoVertices,
    #[error("expected {expected} edges for {n} vertices, found {found}")]
    WrongEdgeCount {
        n: usize,
        expected: usize,
        found: usize,
    },
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(Vertex, Vertex),
    #[error("graph is not connected")]
    Disconnected,
    #[error("Prüfer label {label} out of range for {n} vertices")]
    LabelOutOfRange { label: Vertex, n: usize },
    #[error("Prüfer code of length {len} does not fit {n} vertices")]
    CodeLength { len: usize, n: usize },
    #[error("edge list line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// An undirected labeled tree. Edges are stored as `(u, v)` with `u < v`
/// and kept sorted, so structural equality is label-exact equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tree {
    n: usize,
    edges: Vec<Edge>,
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

impl Tree {
    pub fn new(n: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self, TreeError> {
        if n == 0 {
            return Err(TreeError::NoVertices);
        }
        let mut normalized = Vec::with_capacity(n - 1);
        for (u, v) in edges {
            for vertex in [u, v] {
                if vertex >= n {
                    return Err(TreeError::VertexOutOfRange { vertex, n });
                }
            }
            if u == v {
                return Err(TreeError::SelfLoop(u));
            }
            normalized.push((u.min(v), u.max(v)));
        }
        if normalized.len() != n - 1 {
            return Err(TreeError::WrongEdgeCount {
                n,
                expected: n - 1,
                found: normalized.len(),
            });
        }
        normalized.sort_unstable();
        if let Some(w) = normalized.windows(2).find(|w| w[0] == w[1]) {
            return Err(TreeError::DuplicateEdge(w[0].0, w[0].1));
        }
        // n - 1 distinct edges: acyclic iff connected
        let mut parent: Vec<usize> = (0..n).collect();
        for &(u, v) in &normalized {
            let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
            if ru == rv {
                return Err(TreeError::Disconnected);
            }
            parent[ru] = rv;
        }
        Ok(Self {
            n,
            edges: normalized,
        })
    }

    /// Construction helper for code that builds trees by construction.
    pub(crate) fn from_edges_unchecked(n: usize, edges: impl IntoIterator<Item = Edge>) -> Self {
        let mut edges: Vec<Edge> = edges
            .into_iter()
            .map(|(u, v)| (u.min(v), u.max(v)))
            .collect();
        edges.sort_unstable();
        let tree = Self { n, edges };
        debug_assert!(
            Tree::new(tree.n, tree.edges.iter().copied()).is_ok(),
            "{tree:?}"
        );
        tree
    }

    pub fn single_vertex() -> Self {
        Self {
            n: 1,
            edges: Vec::new(),
        }
    }

    /// Path `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Self {
        assert!(n >= 1);
        Self::from_edges_unchecked(n, (1..n).map(|v| (v - 1, v)))
    }

    /// Star with center `0` and `n - 1` leaves.
    pub fn star(n: usize) -> Self {
        assert!(n >= 1);
        Self::from_edges_unchecked(n, (1..n).map(|v| (0, v)))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn contains_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.edges.binary_search(&(u.min(v), u.max(v))).is_ok()
    }

    /// Degree of every vertex, indexed by label.
    pub fn degree_vec(&self) -> Vec<Degree> {
        let mut deg = vec![0; self.n];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    /// The degree multiset, sorted non-increasing.
    pub fn degrees(&self) -> DegreeSequence {
        DegreeSequence::new(self.degree_vec()).expect("a tree has a valid degree sequence")
    }

    pub fn adjacency(&self) -> Vec<Vec<Vertex>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    /// Vertices of degree one, ascending.
    pub fn leaves(&self) -> Vec<Vertex> {
        self.degree_vec()
            .iter()
            .enumerate()
            .filter(|(_, &d)| d == 1)
            .map(|(v, _)| v)
            .collect()
    }

    /// Apply `perm`, sending old label `v` to `perm[v]`.
    pub fn relabel(&self, perm: &[Vertex]) -> Self {
        assert_eq!(perm.len(), self.n, "permutation length");
        let mut edges: Vec<Edge> = self
            .edges
            .iter()
            .map(|&(u, v)| {
                let (a, b) = (perm[u], perm[v]);
                (a.min(b), a.max(b))
            })
            .collect();
        edges.sort_unstable();
        Self { n: self.n, edges }
    }

    /// One edge per line as `u v`, sorted. A leading `n=<count>` line is
    /// written only when the vertex count cannot be inferred from the edges.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        let inferred = self.edges.iter().map(|&(_, v)| v + 1).max().unwrap_or(0);
        if inferred != self.n {
            let _ = write!(out, "n={}", self.n);
        }
        for &(u, v) in &self.edges {
            if !out.is_empty() {
                out.push('\n');
            }
            let _ = write!(out, "{u} {v}");
        }
        out
    }

    /// Graphviz rendering; vertices are annotated with their degree.
    pub fn to_dot(&self) -> String {
        let deg = self.degree_vec();
        let mut out = String::from("graph tree {\n");
        for (v, d) in deg.iter().enumerate() {
            let _ = writeln!(out, "  {v} [label=\"{v} (d={d})\"];");
        }
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "  {u} -- {v};");
        }
        out.push('}');
        out
    }

    pub fn parse_edge_list(text: &str) -> Result<Self, TreeError> {
        let mut declared: Option<usize> = None;
        let mut edges = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |message: &str| TreeError::Parse {
                line: line_no,
                message: message.to_string(),
            };
            if let Some(count) = line.strip_prefix("n=") {
                if declared.is_some() || !edges.is_empty() {
                    return Err(err("vertex count must be the first line"));
                }
                declared = Some(
                    count
                        .trim()
                        .parse()
                        .map_err(|_| err("invalid vertex count"))?,
                );
                continue;
            }
            let mut parts = line.split_whitespace();
            let mut vertex = || -> Result<Vertex, TreeError> {
                parts
                    .next()
                    .ok_or_else(|| err("expected two vertices"))?
                    .parse()
                    .map_err(|_| err("invalid vertex label"))
            };
            let (u, v) = (vertex()?, vertex()?);
            if parts.next().is_some() {
                return Err(err("trailing tokens"));
            }
            edges.push((u, v));
        }
        let n =
            declared.unwrap_or_else(|| edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0));
        Tree::new(n, edges)
    }
}

impl FromStr for Tree {
    type Err = TreeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse_edge_list(s)
    }
}

pub fn degrees(tree: &Tree) -> DegreeSequence {
    tree.degrees()
}

pub fn to_edge_list(tree: &Tree) -> String {
    tree.to_edge_list()
}

pub fn to_dot(tree: &Tree) -> String {
    tree.to_dot()
}
