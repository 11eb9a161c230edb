//! Deciding whether a graph admits any RED:IC (or IC) at all.
//!
//! For connected `G` with at least four vertices a RED:IC exists iff there are
//! no closed twins, every support vertex has degree ≥ 3, and every edge `ab`
//! of a triangle has `|N[a] Δ N[b]| ≥ 2`. Disconnected graphs are decided per
//! component; components on fewer than four vertices never admit one.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::detection::CodeKind;
use crate::graph::Graph;
use crate::vertex_set::VertexSet;

/// The failed existence clause, with witnesses.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum Reason {
    /// A connected component with fewer than four vertices.
    TooSmall {
        first_vertex: usize,
        order: usize,
    },
    ClosedTwins {
        u: usize,
        v: usize,
    },
    WeakSupport {
        support: usize,
        leaf: usize,
        degree: usize,
    },
    BadTriangle {
        a: usize,
        b: usize,
        c: usize,
    },
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Reason::TooSmall {
                first_vertex,
                order,
            } => write!(
                f,
                "component containing vertex {first_vertex} has only {order} vertices"
            ),
            Reason::ClosedTwins { u, v } => write!(f, "closed twins {u} and {v}"),
            Reason::WeakSupport {
                support,
                leaf,
                degree,
            } => write!(
                f,
                "support vertex degree {degree} (support {support}, leaf {leaf})"
            ),
            Reason::BadTriangle { a, b, c } => {
                write!(f, "triangle {a}-{b}-{c} with |N[{a}] Δ N[{b}]| < 2")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "exists", rename_all = "snake_case")]
pub enum Existence {
    Yes,
    No(Reason),
}

impl Existence {
    pub fn is_yes(&self) -> bool {
        matches!(self, Existence::Yes)
    }

    pub fn reason(&self) -> Option<&Reason> {
        match self {
            Existence::Yes => None,
            Existence::No(r) => Some(r),
        }
    }

    fn from_reason(r: Option<Reason>) -> Existence {
        r.map_or(Existence::Yes, Existence::No)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FastPathError {
    #[error("graph contains the triangle {0:?}")]
    HasTriangle([usize; 3]),
    #[error("graph is not a tree")]
    NotATree,
}

/// All unordered pairs with `N[u] = N[v]`, lexicographically.
pub fn closed_twins(g: &Graph) -> Vec<(usize, usize)> {
    g.edges()
        .filter(|&(u, v)| g.closed_neighborhood(u) == g.closed_neighborhood(v))
        .collect()
}

fn too_small(g: &Graph) -> Option<Reason> {
    g.components().into_iter().find_map(|c| {
        (c.len() < 4).then(|| Reason::TooSmall {
            first_vertex: c.first().unwrap(),
            order: c.len(),
        })
    })
}

fn weak_support(g: &Graph) -> Option<Reason> {
    (0..g.order()).filter(|&v| g.is_leaf(v)).find_map(|leaf| {
        let support = g.neighbors(leaf).first().unwrap();
        let degree = g.degree(support);
        (degree < 3).then_some(Reason::WeakSupport {
            support,
            leaf,
            degree,
        })
    })
}

/// Decides RED:IC existence by the three structural clauses.
pub fn exists_red_ic(g: &Graph) -> Existence {
    if let Some(r) = too_small(g) {
        return Existence::No(r);
    }
    if let Some(&(u, v)) = closed_twins(g).first() {
        return Existence::No(Reason::ClosedTwins { u, v });
    }
    if let Some(r) = weak_support(g) {
        return Existence::No(r);
    }
    for [a, b, c] in g.triangles() {
        for (x, y, z) in [(a, b, c), (a, c, b), (b, c, a)] {
            let d = g.closed_neighborhood(x) ^ g.closed_neighborhood(y);
            if d.len() < 2 {
                return Existence::No(Reason::BadTriangle { a: x, b: y, c: z });
            }
        }
    }
    Existence::Yes
}

/// Triangle-free fast path: only twins and support degrees need checking.
/// Twins are found by hashing closed neighbourhoods.
pub fn exists_red_ic_triangle_free(g: &Graph) -> Result<Existence, FastPathError> {
    if let Some(&t) = g.triangles().first() {
        return Err(FastPathError::HasTriangle(t));
    }
    if let Some(r) = too_small(g) {
        return Ok(Existence::No(r));
    }
    let mut seen: HashMap<VertexSet, usize> = HashMap::with_capacity(g.order());
    for v in 0..g.order() {
        if let Some(&u) = seen.get(&g.closed_neighborhood(v)) {
            return Ok(Existence::No(Reason::ClosedTwins { u, v }));
        }
        seen.insert(g.closed_neighborhood(v), v);
    }
    Ok(Existence::from_reason(weak_support(g)))
}

/// Tree fast path: a single pass over the leaves.
pub fn exists_red_ic_tree(g: &Graph) -> Result<Existence, FastPathError> {
    if !g.is_tree() {
        return Err(FastPathError::NotATree);
    }
    if g.order() < 4 {
        return Ok(Existence::No(Reason::TooSmall {
            first_vertex: 0,
            order: g.order(),
        }));
    }
    Ok(Existence::from_reason(weak_support(g)))
}

/// An IC exists iff there are no closed twins.
pub fn exists_ic(g: &Graph) -> Existence {
    match closed_twins(g).first() {
        Some(&(u, v)) => Existence::No(Reason::ClosedTwins { u, v }),
        None => Existence::Yes,
    }
}

pub fn exists(g: &Graph, kind: CodeKind) -> Existence {
    match kind {
        CodeKind::Ic => exists_ic(g),
        CodeKind::RedIc => exists_red_ic(g),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spider(legs: usize, len: usize) -> Graph {
        let mut edges = Vec::new();
        let mut next = 1;
        for _ in 0..legs {
            let mut prev = 0;
            for _ in 0..len {
                edges.push((prev, next));
                prev = next;
                next += 1;
            }
        }
        Graph::new(next, &edges).unwrap()
    }

    #[test]
    fn twins() {
        let k5 = Graph::complete(5).unwrap();
        assert_eq!(closed_twins(&k5).len(), 10);
        assert!(closed_twins(&Graph::cycle(4).unwrap()).is_empty());
        // triangle 0-1-2 with a pendant 3 on vertex 0
        let g = Graph::new(4, &[(0, 1), (1, 2), (0, 2), (0, 3)]).unwrap();
        assert_eq!(closed_twins(&g), vec![(1, 2)]);
    }

    #[test]
    fn general_path() {
        let p4 = Graph::path(4).unwrap();
        assert_eq!(
            exists_red_ic(&p4),
            Existence::No(Reason::WeakSupport {
                support: 1,
                leaf: 0,
                degree: 2
            })
        );
        assert!(matches!(
            exists_red_ic(&Graph::complete(5).unwrap()),
            Existence::No(Reason::ClosedTwins { u: 0, v: 1 })
        ));
        assert!(exists_red_ic(&Graph::star(3).unwrap()).is_yes());
        assert!(exists_red_ic(&Graph::cycle(4).unwrap()).is_yes());
        assert!(matches!(
            exists_red_ic(&Graph::path(3).unwrap()),
            Existence::No(Reason::TooSmall { order: 3, .. })
        ));
    }

    #[test]
    fn bad_triangle_clause() {
        // Triangle 0-1-2 where 0 and 1 lie on a 6-cycle through 3,5,6,4 and 2
        // has no other neighbours: N[0] Δ N[2] = {3}.
        let g = Graph::new(
            7,
            &[
                (0, 1),
                (1, 2),
                (0, 2),
                (0, 3),
                (1, 4),
                (3, 5),
                (4, 6),
                (5, 6),
            ],
        )
        .unwrap();
        assert!(matches!(
            exists_red_ic(&g),
            Existence::No(Reason::BadTriangle { .. })
        ));
    }

    #[test]
    fn disconnected_decided_per_component() {
        let two_claws = Graph::star(3)
            .unwrap()
            .disjoint_union(&Graph::star(3).unwrap())
            .unwrap();
        assert!(exists_red_ic(&two_claws).is_yes());
        let claw_and_edge = Graph::star(3)
            .unwrap()
            .disjoint_union(&Graph::path(2).unwrap())
            .unwrap();
        assert!(matches!(
            exists_red_ic(&claw_and_edge),
            Existence::No(Reason::TooSmall {
                first_vertex: 4,
                order: 2
            })
        ));
    }

    #[test]
    fn fast_paths() {
        let c6 = Graph::cycle(6).unwrap();
        assert_eq!(exists_red_ic_triangle_free(&c6).unwrap(), Existence::Yes);
        let k12 = Graph::star(2).unwrap();
        assert!(!exists_red_ic_triangle_free(&k12).unwrap().is_yes());
        let p5 = Graph::path(5).unwrap();
        assert!(matches!(
            exists_red_ic_triangle_free(&p5).unwrap(),
            Existence::No(Reason::WeakSupport { .. })
        ));
        assert!(exists_red_ic_triangle_free(&Graph::complete(3).unwrap()).is_err());

        assert!(exists_red_ic_tree(&Graph::star(3).unwrap())
            .unwrap()
            .is_yes());
        for n in 4..10 {
            assert!(!exists_red_ic_tree(&Graph::path(n).unwrap())
                .unwrap()
                .is_yes());
        }
        assert_eq!(exists_red_ic_tree(&c6), Err(FastPathError::NotATree));
        // Three legs of length 2: the middle vertices are degree-2 supports.
        let s = spider(3, 2);
        assert!(matches!(
            exists_red_ic_tree(&s).unwrap(),
            Existence::No(Reason::WeakSupport { degree: 2, .. })
        ));
        assert_eq!(
            exists_red_ic_tree(&s).unwrap().is_yes(),
            crate::detection::is_code(&s, s.vertices(), CodeKind::RedIc)
        );
    }

    #[test]
    fn ic_existence() {
        assert!(exists_ic(&Graph::path(2).unwrap()).reason().is_some());
        assert!(exists_ic(&Graph::path(3).unwrap()).is_yes());
        assert!(exists_ic(&Graph::empty(3).unwrap()).is_yes());
    }
}
