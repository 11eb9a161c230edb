//! Connected cubic graphs by augmentation from smaller cubic graphs.
//!
//! Every connected cubic graph on `n ≥ 6` vertices other than the ten-vertex
//! base is obtained from a smaller connected cubic graph by one of:
//!
//! * joining the midpoints of two distinct subdivided edges (+2),
//! * replacing an edge by a diamond spliced between its ends (+4),
//! * hanging a subdivided K4 off the midpoint of a subdivided edge (+6).
//!
//! Children are deduplicated by canonical form, so each isomorphism class is
//! emitted exactly once, in a deterministic order.

use std::collections::HashSet;

use rayon::prelude::*;

use super::GeneratorError;
use crate::canon::{canonical_form, CanonicalForm};
use crate::graph::Graph;
use crate::vertex_set::{VertexSet, MAX_VERTICES};

struct Builder {
    adj: Vec<VertexSet>,
}

impl Builder {
    fn from(g: &Graph, extra: usize) -> Builder {
        let mut adj = g.adjacency().to_vec();
        adj.resize(g.order() + extra, VertexSet::EMPTY);
        Builder { adj }
    }

    fn add(&mut self, u: usize, v: usize) {
        self.adj[u].insert(v);
        self.adj[v].insert(u);
    }

    fn cut(&mut self, u: usize, v: usize) {
        self.adj[u].remove(v);
        self.adj[v].remove(u);
    }

    /// Replaces edge `uv` by the path `u - w - v`.
    fn subdivide(&mut self, u: usize, v: usize, w: usize) {
        self.cut(u, v);
        self.add(u, w);
        self.add(w, v);
    }

    fn finish(self) -> CanonicalForm {
        canonical_form(&Graph::from_adjacency(self.adj).expect("augmentation stays simple"))
    }
}

/// K4 on `k..k+4` with the edge `k, k+1` subdivided by `z`.
fn subdivided_k4(b: &mut Builder, z: usize, k: usize) {
    for (u, v) in [(0, 2), (0, 3), (1, 2), (1, 3), (2, 3)] {
        b.add(k + u, k + v);
    }
    b.add(z, k);
    b.add(z, k + 1);
}

fn children(g: &Graph, step: usize) -> Vec<CanonicalForm> {
    let n = g.order();
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let mut out = Vec::new();
    match step {
        2 => {
            for (i, &(a, b)) in edges.iter().enumerate() {
                for &(c, d) in &edges[i + 1..] {
                    let mut bl = Builder::from(g, 2);
                    bl.subdivide(a, b, n);
                    bl.subdivide(c, d, n + 1);
                    bl.add(n, n + 1);
                    out.push(bl.finish());
                }
            }
        }
        4 => {
            for &(a, b) in &edges {
                let mut bl = Builder::from(g, 4);
                let (p, s, t, q) = (n, n + 1, n + 2, n + 3);
                bl.cut(a, b);
                for (u, v) in [(p, s), (p, t), (s, t), (s, q), (t, q), (a, p), (q, b)] {
                    bl.add(u, v);
                }
                out.push(bl.finish());
            }
        }
        6 => {
            for &(a, b) in &edges {
                let mut bl = Builder::from(g, 6);
                bl.subdivide(a, b, n);
                bl.add(n, n + 1);
                subdivided_k4(&mut bl, n + 1, n + 2);
                out.push(bl.finish());
            }
        }
        _ => unreachable!("augmentation steps are 2, 4 and 6"),
    }
    out
}

fn bases(n: usize) -> Vec<Graph> {
    match n {
        4 => vec![Graph::complete(4).expect("K4")],
        10 => {
            let mut b = Builder {
                adj: vec![VertexSet::EMPTY; 10],
            };
            subdivided_k4(&mut b, 0, 1);
            subdivided_k4(&mut b, 5, 6);
            b.add(0, 5);
            vec![Graph::from_adjacency(b.adj).expect("two bridged blocks")]
        }
        _ => Vec::new(),
    }
}

/// All connected cubic graphs of every even order `4..=max_n`, indexed by
/// `n / 2 - 2`.
pub fn enum_cubic_levels(max_n: usize) -> Result<Vec<Vec<Graph>>, GeneratorError> {
    if max_n > MAX_VERTICES {
        return Err(GeneratorError::TooLarge(max_n));
    }
    let mut levels: Vec<Vec<Graph>> = Vec::new();
    let mut n = 4;
    while n <= max_n {
        let mut seen: HashSet<CanonicalForm> = HashSet::new();
        let mut level = Vec::new();
        let mut keep = |form: CanonicalForm, level: &mut Vec<Graph>| {
            if !seen.contains(&form) {
                level.push(form.to_graph());
                seen.insert(form);
            }
        };
        for g in bases(n) {
            keep(canonical_form(&g), &mut level);
        }
        for step in [2, 4, 6] {
            if n < 4 + step {
                continue;
            }
            let parents = &levels[(n - step) / 2 - 2];
            let forms: Vec<Vec<CanonicalForm>> =
                parents.par_iter().map(|g| children(g, step)).collect();
            for form in forms.into_iter().flatten() {
                keep(form, &mut level);
            }
        }
        levels.push(level);
        n += 2;
    }
    Ok(levels)
}

/// Connected cubic graphs on `n` vertices, one per isomorphism class. Odd
/// `n` (and `n < 4`) admit none and give an empty list.
pub fn enum_cubic(n: usize) -> Result<Vec<Graph>, GeneratorError> {
    if n % 2 == 1 || n < 4 {
        return Ok(Vec::new());
    }
    Ok(enum_cubic_levels(n)?.pop().unwrap_or_default())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_through_twelve() {
        let levels = enum_cubic_levels(12).unwrap();
        let counts: Vec<usize> = levels.iter().map(Vec::len).collect();
        assert_eq!(counts, vec![1, 2, 5, 19, 85]);
        for (i, level) in levels.iter().enumerate() {
            for g in level {
                assert_eq!(g.order(), 2 * i + 4);
                assert!(g.is_cubic() && g.is_connected());
            }
        }
        assert!(enum_cubic(7).unwrap().is_empty());
    }
}
