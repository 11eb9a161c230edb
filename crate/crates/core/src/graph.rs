//! Simple undirected graphs over dense vertex indices, plus the standard
//! families and the Cartesian product.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::vertex_set::{VertexSet, MAX_VERTICES};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge ({0}, {0}) is a loop")]
    Loop(usize),
    #[error("edge ({u}, {v}) has an endpoint outside 0..{n}")]
    OutOfRange { u: usize, v: usize, n: usize },
    #[error("{n} vertices exceeds the supported maximum of {MAX_VERTICES}")]
    TooLarge { n: usize },
    #[error("{family}: {reason}")]
    BadParameter {
        family: &'static str,
        reason: String,
    },
}

/// How a graph was produced by [`Graph::named`] or one of the family
/// builders. Bounds that only hold for a particular product structure key
/// off this tag rather than off the shape of the adjacency.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    Path { n: usize },
    Cycle { n: usize },
    Star { leaves: usize },
    Complete { n: usize },
    CompleteMultipartite { parts: Vec<usize> },
    Hypercube { dim: usize },
    Ladder { len: usize },
    Cylinder { len: usize },
    Torus { rows: usize, cols: usize },
    HoneycombTorus { rows: usize, cols: usize },
}

/// An immutable simple graph on vertices `0..n`.
///
/// `adj[v]` is the open neighbourhood N(v). Labels and family provenance are
/// metadata and do not take part in equality.
#[derive(Clone)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexSet>,
    labels: Option<Vec<String>>,
    family: Option<Family>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.adj == other.adj
    }
}

impl Eq for Graph {}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.n)?;
        for (i, (u, v)) in self.edges().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{u}-{v}")?;
        }
        write!(f, "])")
    }
}

impl Graph {
    /// Builds a simple graph; duplicate edges collapse.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooLarge { n });
        }
        let mut adj = vec![VertexSet::EMPTY; n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::OutOfRange { u, v, n });
            }
            if u == v {
                return Err(GraphError::Loop(u));
            }
            adj[u].insert(v);
            adj[v].insert(u);
        }
        Ok(Graph {
            n,
            adj,
            labels: None,
            family: None,
        })
    }

    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Graph, GraphError> {
        Graph::new(n, &[])
    }

    /// Builds from open neighbourhoods, checking symmetry and loops.
    pub fn from_adjacency(adj: Vec<VertexSet>) -> Result<Graph, GraphError> {
        let n = adj.len();
        if n > MAX_VERTICES {
            return Err(GraphError::TooLarge { n });
        }
        let full = VertexSet::full(n);
        for (u, &nb) in adj.iter().enumerate() {
            if !nb.is_subset(full) {
                let v = (nb - full).first().unwrap_or(n);
                return Err(GraphError::OutOfRange { u, v, n });
            }
            if nb.contains(u) {
                return Err(GraphError::Loop(u));
            }
            for v in nb {
                if !adj[v].contains(u) {
                    return Err(GraphError::BadParameter {
                        family: "adjacency",
                        reason: format!("edge {u}-{v} is not symmetric"),
                    });
                }
            }
        }
        Ok(Graph {
            n,
            adj,
            labels: None,
            family: None,
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Graph {
        assert_eq!(labels.len(), self.n, "one label per vertex");
        self.labels = Some(labels);
        self
    }

    pub fn with_family(mut self, family: Family) -> Graph {
        self.family = Some(family);
        self
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    /// All vertices as a set.
    #[inline]
    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    /// N[v] = N(v) ∪ {v}.
    #[inline]
    pub fn closed_neighborhood(&self, v: usize) -> VertexSet {
        self.adj[v].with(v)
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn adjacency(&self) -> &[VertexSet] {
        &self.adj
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, v: usize) -> Option<&str> {
        self.labels.as_ref().map(|l| l[v].as_str())
    }

    pub fn family(&self) -> Option<&Family> {
        self.family.as_ref()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.len()).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, ordered by `u` then `v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            (self.adj[u] - VertexSet::full(u + 1))
                .iter()
                .map(move |v| (u, v))
        })
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(|a| a.len()).max().unwrap_or(0)
    }

    /// Vertices at distance at most two from `v`, including `v`.
    pub fn ball2(&self, v: usize) -> VertexSet {
        let mut ball = self.closed_neighborhood(v);
        for w in self.adj[v] {
            ball |= self.adj[w];
        }
        ball
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        self.degree(v) == 1
    }

    /// Vertices adjacent to at least one leaf.
    pub fn supports(&self) -> VertexSet {
        (0..self.n)
            .filter(|&v| self.is_leaf(v))
            .map(|v| self.adj[v].first().expect("leaf has a neighbour"))
            .collect()
    }

    pub fn leaves(&self) -> VertexSet {
        (0..self.n).filter(|&v| self.is_leaf(v)).collect()
    }

    /// Connected components as vertex sets, ordered by lowest member.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut seen = VertexSet::EMPTY;
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen.contains(s) {
                continue;
            }
            let mut comp = VertexSet::singleton(s);
            let mut frontier = comp;
            while !frontier.is_empty() {
                let mut next = VertexSet::EMPTY;
                for v in frontier {
                    next |= self.adj[v];
                }
                frontier = next - comp;
                comp |= next;
            }
            seen |= comp;
            out.push(comp);
        }
        out
    }

    /// The empty graph counts as connected.
    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    pub fn is_tree(&self) -> bool {
        self.n >= 1 && self.edge_count() == self.n - 1 && self.is_connected()
    }

    pub fn is_regular(&self, k: usize) -> bool {
        self.adj.iter().all(|a| a.len() == k)
    }

    pub fn is_cubic(&self) -> bool {
        self.n > 0 && self.is_regular(3)
    }

    /// All triangles as ascending vertex triples, in lexicographic order.
    pub fn triangles(&self) -> Vec<[usize; 3]> {
        let mut out = Vec::new();
        for (a, b) in self.edges() {
            let common = self.adj[a] & (self.adj[b] - VertexSet::full(b + 1));
            for c in common {
                out.push([a, b, c]);
            }
        }
        out
    }

    pub fn is_triangle_free(&self) -> bool {
        self.edges()
            .all(|(a, b)| !self.adj[a].intersects(self.adj[b]))
    }

    pub fn is_bipartite(&self) -> bool {
        let mut side = vec![None; self.n];
        for s in 0..self.n {
            if side[s].is_some() {
                continue;
            }
            side[s] = Some(false);
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                let sv = side[v].unwrap();
                for w in self.adj[v] {
                    match side[w] {
                        None => {
                            side[w] = Some(!sv);
                            stack.push(w);
                        }
                        Some(sw) if sw == sv => return false,
                        _ => {}
                    }
                }
            }
        }
        true
    }

    /// Subgraph induced by `keep`, relabelled densely in ascending order.
    /// Returns the subgraph and the map from new to old indices.
    pub fn induced_subgraph(&self, keep: VertexSet) -> (Graph, Vec<usize>) {
        let old: Vec<usize> = (keep & self.vertices()).to_vec();
        let mut new_of = vec![usize::MAX; self.n];
        for (i, &v) in old.iter().enumerate() {
            new_of[v] = i;
        }
        let adj = old
            .iter()
            .map(|&v| (self.adj[v] & keep).iter().map(|w| new_of[w]).collect())
            .collect();
        let mut g = Graph {
            n: old.len(),
            adj,
            labels: None,
            family: None,
        };
        if let Some(labels) = &self.labels {
            g.labels = Some(old.iter().map(|&v| labels[v].clone()).collect());
        }
        (g, old)
    }

    /// Applies `perm` (old index -> new index).
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut adj = vec![VertexSet::EMPTY; self.n];
        for v in 0..self.n {
            adj[perm[v]] = self.adj[v].iter().map(|w| perm[w]).collect();
        }
        Graph {
            n: self.n,
            adj,
            labels: None,
            family: None,
        }
    }

    /// Disjoint union; vertices of `other` are shifted by `self.order()`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph, GraphError> {
        let n = self.n + other.n;
        if n > MAX_VERTICES {
            return Err(GraphError::TooLarge { n });
        }
        let mut edges: Vec<(usize, usize)> = self.edges().collect();
        edges.extend(other.edges().map(|(u, v)| (u + self.n, v + self.n)));
        Graph::new(n, &edges)
    }

    /// Box product: `(g, h) ~ (g', h')` iff one coordinate is equal and the
    /// other adjacent. Vertex `(g, h)` gets index `g * |V(H)| + h`.
    pub fn cartesian_product(&self, other: &Graph) -> Result<Graph, GraphError> {
        let (a, b) = (self.n, other.n);
        let n = a * b;
        if n > MAX_VERTICES {
            return Err(GraphError::TooLarge { n });
        }
        let mut edges = Vec::with_capacity(a * other.edge_count() + b * self.edge_count());
        for g in 0..a {
            for (h1, h2) in other.edges() {
                edges.push((g * b + h1, g * b + h2));
            }
        }
        for (g1, g2) in self.edges() {
            for h in 0..b {
                edges.push((g1 * b + h, g2 * b + h));
            }
        }
        Graph::new(n, &edges)
    }

    // ---- standard families ----

    pub fn path(n: usize) -> Result<Graph, GraphError> {
        at_least("path", "n", n, 1)?;
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Ok(Graph::new(n, &edges)?.with_family(Family::Path { n }))
    }

    pub fn cycle(n: usize) -> Result<Graph, GraphError> {
        at_least("cycle", "n", n, 3)?;
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Ok(Graph::new(n, &edges)?.with_family(Family::Cycle { n }))
    }

    /// K_{1,leaves}; vertex 0 is the centre.
    pub fn star(leaves: usize) -> Result<Graph, GraphError> {
        at_least("star", "leaves", leaves, 1)?;
        let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        Ok(Graph::new(leaves + 1, &edges)?.with_family(Family::Star { leaves }))
    }

    pub fn complete(n: usize) -> Result<Graph, GraphError> {
        at_least("complete", "n", n, 1)?;
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Ok(Graph::new(n, &edges)?.with_family(Family::Complete { n }))
    }

    /// Parts are laid out consecutively in the order given.
    pub fn complete_multipartite(parts: &[usize]) -> Result<Graph, GraphError> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(GraphError::BadParameter {
                family: "complete_multipartite",
                reason: "needs at least one part, all of positive size".into(),
            });
        }
        let n: usize = parts.iter().sum();
        let mut part_of = Vec::with_capacity(n);
        for (i, &p) in parts.iter().enumerate() {
            part_of.extend(std::iter::repeat_n(i, p));
        }
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if part_of[u] != part_of[v] {
                    edges.push((u, v));
                }
            }
        }
        Ok(
            Graph::new(n, &edges)?.with_family(Family::CompleteMultipartite {
                parts: parts.to_vec(),
            }),
        )
    }

    /// Q_d = P_2 □ ... □ P_2; vertices are the integers `0..2^d`, adjacent when
    /// they differ in one bit.
    pub fn hypercube(dim: usize) -> Result<Graph, GraphError> {
        at_least("hypercube", "dim", dim, 1)?;
        if dim > 7 {
            return Err(GraphError::TooLarge { n: 1 << dim });
        }
        let n = 1usize << dim;
        let mut edges = Vec::new();
        for v in 0..n {
            for b in 0..dim {
                let w = v ^ (1 << b);
                if v < w {
                    edges.push((v, w));
                }
            }
        }
        Ok(Graph::new(n, &edges)?.with_family(Family::Hypercube { dim }))
    }

    /// P_2 □ P_len.
    pub fn ladder(len: usize) -> Result<Graph, GraphError> {
        at_least("ladder", "len", len, 1)?;
        let g = Graph::path(2)?.cartesian_product(&Graph::path(len)?)?;
        Ok(g.with_family(Family::Ladder { len }))
    }

    /// P_2 □ C_len.
    pub fn cylinder(len: usize) -> Result<Graph, GraphError> {
        at_least("cylinder", "len", len, 3)?;
        let g = Graph::path(2)?.cartesian_product(&Graph::cycle(len)?)?;
        Ok(g.with_family(Family::Cylinder { len }))
    }

    /// C_rows □ C_cols.
    pub fn torus(rows: usize, cols: usize) -> Result<Graph, GraphError> {
        at_least("torus", "rows", rows, 3)?;
        at_least("torus", "cols", cols, 3)?;
        let g = Graph::cycle(rows)?.cartesian_product(&Graph::cycle(cols)?)?;
        Ok(g.with_family(Family::Torus { rows, cols }))
    }

    /// Brick-wall quotient of the hexagonal grid: C_rows □ C_cols keeping the
    /// vertical edge (i,j)-(i+1,j) only when i+j is even. 3-regular.
    pub fn honeycomb_torus(rows: usize, cols: usize) -> Result<Graph, GraphError> {
        for (name, v) in [("rows", rows), ("cols", cols)] {
            at_least("honeycomb_torus", name, v, 4)?;
            if v % 2 != 0 {
                return Err(GraphError::BadParameter {
                    family: "honeycomb_torus",
                    reason: format!("{name} must be even, got {v}"),
                });
            }
        }
        let idx = |i: usize, j: usize| (i % rows) * cols + (j % cols);
        let mut edges = Vec::new();
        for i in 0..rows {
            for j in 0..cols {
                edges.push((idx(i, j), idx(i, j + 1)));
                if (i + j) % 2 == 0 {
                    edges.push((idx(i, j), idx(i + 1, j)));
                }
            }
        }
        Ok(Graph::new(rows * cols, &edges)?.with_family(Family::HoneycombTorus { rows, cols }))
    }

    /// Builds a family by name, e.g. `("torus", &[5, 6])`.
    pub fn named(family: &str, params: &[usize]) -> Result<Graph, GraphError> {
        let arity = |k: usize, fam: &'static str| -> Result<(), GraphError> {
            if params.len() == k {
                Ok(())
            } else {
                Err(GraphError::BadParameter {
                    family: fam,
                    reason: format!("expected {k} parameter(s), got {}", params.len()),
                })
            }
        };
        match family {
            "path" => arity(1, "path").and_then(|_| Graph::path(params[0])),
            "cycle" => arity(1, "cycle").and_then(|_| Graph::cycle(params[0])),
            "star" => arity(1, "star").and_then(|_| Graph::star(params[0])),
            "complete" => arity(1, "complete").and_then(|_| Graph::complete(params[0])),
            "complete_multipartite" => Graph::complete_multipartite(params),
            "hypercube" => arity(1, "hypercube").and_then(|_| Graph::hypercube(params[0])),
            "ladder" => arity(1, "ladder").and_then(|_| Graph::ladder(params[0])),
            "cylinder" => arity(1, "cylinder").and_then(|_| Graph::cylinder(params[0])),
            "torus" => arity(2, "torus").and_then(|_| Graph::torus(params[0], params[1])),
            "honeycomb_torus" => arity(2, "honeycomb_torus")
                .and_then(|_| Graph::honeycomb_torus(params[0], params[1])),
            _ => Err(GraphError::BadParameter {
                family: "named",
                reason: format!("unknown family {family:?}"),
            }),
        }
    }
}

fn at_least(family: &'static str, name: &str, value: usize, min: usize) -> Result<(), GraphError> {
    if value < min {
        Err(GraphError::BadParameter {
            family,
            reason: format!("{name} must be at least {min}, got {value}"),
        })
    } else {
        Ok(())
    }
}

/// Summary returned by [`structure`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Structure {
    pub is_connected: bool,
    pub is_tree: bool,
    pub is_cubic: bool,
    pub degrees: Vec<usize>,
    pub triangles: Vec<[usize; 3]>,
}

pub fn structure(g: &Graph) -> Structure {
    Structure {
        is_connected: g.is_connected(),
        is_tree: g.is_tree(),
        is_cubic: g.is_cubic(),
        degrees: g.degrees(),
        triangles: g.triangles(),
    }
}
