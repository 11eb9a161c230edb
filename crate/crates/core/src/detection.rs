//! Domination, distinguishing, and code verification.
//!
//! A detector set `S` is an identifying code (IC) when every vertex is at
//! least 1-dominated and every pair of vertices is 1-distinguished; it is a
//! redundant identifying code (RED:IC) when both thresholds are 2. Here
//! `dom(v) = |N[v] ∩ S|` and the pair `u, v` is k-distinguished when
//! `|(N[u] ∩ S) Δ (N[v] ∩ S)| ≥ k`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;
use crate::vertex_set::VertexSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CodeKind {
    Ic,
    RedIc,
}

impl CodeKind {
    /// Minimum `|N[v] ∩ S|` for every vertex.
    pub const fn dom_req(self) -> usize {
        match self {
            CodeKind::Ic => 1,
            CodeKind::RedIc => 2,
        }
    }

    /// Minimum symmetric-difference size for every pair.
    pub const fn dist_req(self) -> usize {
        match self {
            CodeKind::Ic => 1,
            CodeKind::RedIc => 2,
        }
    }
}

impl fmt::Display for CodeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CodeKind::Ic => "IC",
            CodeKind::RedIc => "RED:IC",
        })
    }
}

impl std::str::FromStr for CodeKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "ic" => Ok(CodeKind::Ic),
            "red-ic" | "redic" | "red_ic" | "red:ic" => Ok(CodeKind::RedIc),
            other => Err(format!(
                "unknown code kind {other:?} (expected ic or red-ic)"
            )),
        }
    }
}

/// Certificate that a detector set is not a code of the requested kind.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "violation", rename_all = "snake_case")]
pub enum Violation {
    Undominated {
        vertex: usize,
        count: usize,
    },
    Undistinguished {
        u: usize,
        v: usize,
        delta: VertexSetList,
    },
}

/// Serializes a [`VertexSet`] as a sorted list.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VertexSetList(pub VertexSet);

impl Serialize for VertexSetList {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.0.iter())
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Undominated { vertex, count } => {
                write!(f, "vertex {vertex} is only {count}-dominated")
            }
            Violation::Undistinguished { u, v, delta } => write!(
                f,
                "vertices {u} and {v} are only {}-distinguished (delta {})",
                delta.0.len(),
                delta.0
            ),
        }
    }
}

fn check_width(g: &Graph, s: VertexSet) {
    assert!(
        s.is_subset(g.vertices()),
        "detector set {s} has members outside 0..{}",
        g.order()
    );
}

/// `|N[v] ∩ S|`.
#[inline]
pub fn domination(g: &Graph, s: VertexSet, v: usize) -> usize {
    (g.closed_neighborhood(v) & s).len()
}

/// `(N[u] ∩ S) Δ (N[v] ∩ S)`.
#[inline]
pub fn delta(g: &Graph, s: VertexSet, u: usize, v: usize) -> VertexSet {
    (g.closed_neighborhood(u) ^ g.closed_neighborhood(v)) & s
}

/// Checks the code conditions and returns the first violation: the lowest
/// under-dominated vertex, otherwise the lexicographically first pair.
///
/// Once every vertex meets the domination threshold `d`, a pair at distance
/// three or more has disjoint closed neighbourhoods and therefore a delta of
/// at least `2d`, so only pairs within distance two are examined.
pub fn verify(g: &Graph, s: VertexSet, kind: CodeKind) -> Result<(), Violation> {
    check_width(g, s);
    for v in 0..g.order() {
        let count = domination(g, s, v);
        if count < kind.dom_req() {
            return Err(Violation::Undominated { vertex: v, count });
        }
    }
    for u in 0..g.order() {
        let later = g.ball2(u) - VertexSet::full(u + 1);
        for v in later {
            let d = delta(g, s, u, v);
            if d.len() < kind.dist_req() {
                return Err(Violation::Undistinguished {
                    u,
                    v,
                    delta: VertexSetList(d),
                });
            }
        }
    }
    Ok(())
}

pub fn is_code(g: &Graph, s: VertexSet, kind: CodeKind) -> bool {
    verify(g, s, kind).is_ok()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShareError {
    #[error("vertex {0} is not a detector")]
    NotADetector(usize),
}

/// `sh(x) = Σ_{v ∈ N[x]} 1 / dom(v)`, exact. Every `v ∈ N[x]` is dominated
/// by `x` itself, so the sum is always defined for a detector.
pub fn share(g: &Graph, s: VertexSet, x: usize) -> Result<BigRational, ShareError> {
    check_width(g, s);
    if !s.contains(x) {
        return Err(ShareError::NotADetector(x));
    }
    let mut total = BigRational::zero();
    for v in g.closed_neighborhood(x) {
        let d = domination(g, s, v);
        total += BigRational::new(BigInt::from(1), BigInt::from(d));
    }
    Ok(total)
}

/// Why [`robustness_check`] failed: the detector whose removal broke the
/// code (`None` when `S` itself is not an IC) and the resulting violation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RobustnessFailure {
    pub removed: Option<usize>,
    pub violation: Violation,
}

/// Behavioural fault tolerance: `S` is an IC, and stays one after any single
/// detector is removed.
pub fn robustness_check(g: &Graph, s: VertexSet) -> Result<(), RobustnessFailure> {
    verify(g, s, CodeKind::Ic).map_err(|violation| RobustnessFailure {
        removed: None,
        violation,
    })?;
    for x in s {
        verify(g, s.without(x), CodeKind::Ic).map_err(|violation| RobustnessFailure {
            removed: Some(x),
            violation,
        })?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn ratio(a: i64, b: i64) -> BigRational {
        BigRational::new(BigInt::from(a), BigInt::from(b))
    }

    #[test]
    fn thresholds() {
        assert_eq!((CodeKind::Ic.dom_req(), CodeKind::Ic.dist_req()), (1, 1));
        assert_eq!(
            (CodeKind::RedIc.dom_req(), CodeKind::RedIc.dist_req()),
            (2, 2)
        );
        assert_eq!("red-ic".parse::<CodeKind>(), Ok(CodeKind::RedIc));
        assert!("ld".parse::<CodeKind>().is_err());
    }

    #[test]
    fn domination_counts() {
        let claw = Graph::star(3).unwrap();
        let all = claw.vertices();
        assert_eq!(domination(&claw, all, 1), 2);
        assert_eq!(domination(&claw, all, 0), 4);
        assert_eq!(domination(&claw, VertexSet::EMPTY, 0), 0);
    }

    #[test]
    fn deltas() {
        let c4 = Graph::cycle(4).unwrap();
        assert_eq!(delta(&c4, c4.vertices(), 0, 1).to_vec(), vec![2, 3]);
        // closed twins in K_3
        let k3 = Graph::complete(3).unwrap();
        assert!(delta(&k3, k3.vertices(), 0, 1).is_empty());
        // distance 3 on P_4: disjoint closed neighbourhoods
        let p4 = Graph::path(4).unwrap();
        assert_eq!(delta(&p4, p4.vertices(), 0, 3).to_vec(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn verify_small_cases() {
        let claw = Graph::star(3).unwrap();
        assert_eq!(verify(&claw, claw.vertices(), CodeKind::RedIc), Ok(()));
        let c4 = Graph::cycle(4).unwrap();
        assert_eq!(verify(&c4, c4.vertices(), CodeKind::RedIc), Ok(()));
        for missing in 0..4 {
            let s = c4.vertices().without(missing);
            assert!(matches!(
                verify(&c4, s, CodeKind::RedIc),
                Err(Violation::Undistinguished { .. })
            ));
        }
        assert_eq!(
            verify(&c4, VertexSet::EMPTY, CodeKind::Ic),
            Err(Violation::Undominated {
                vertex: 0,
                count: 0
            })
        );
    }

    #[test]
    fn first_violation_is_lexicographic() {
        // S = {0,1,2} on C_4: the first failing pair is (0, 1) with delta {2}.
        let c4 = Graph::cycle(4).unwrap();
        let s: VertexSet = [0, 1, 2].iter().collect();
        assert_eq!(
            verify(&c4, s, CodeKind::RedIc),
            Err(Violation::Undistinguished {
                u: 0,
                v: 1,
                delta: VertexSetList([2].iter().collect())
            })
        );
    }

    #[test]
    fn shares() {
        let claw = Graph::star(3).unwrap();
        let all = claw.vertices();
        assert_eq!(share(&claw, all, 1).unwrap(), ratio(3, 4));
        assert_eq!(share(&claw, all, 0).unwrap(), ratio(1, 4) + ratio(3, 2));
        assert_eq!(
            share(&claw, all.without(1), 1),
            Err(ShareError::NotADetector(1))
        );
        let total: BigRational = all.iter().map(|x| share(&claw, all, x).unwrap()).sum();
        assert_eq!(total, BigRational::from_integer(4.into()));
        assert!(ratio(7, 4) > BigRational::one());
    }

    #[test]
    fn robustness() {
        let claw = Graph::star(3).unwrap();
        assert_eq!(robustness_check(&claw, claw.vertices()), Ok(()));
        let c4 = Graph::cycle(4).unwrap();
        let s: VertexSet = [0, 1, 2].iter().collect();
        assert!(robustness_check(&c4, s).is_err());
        let fail = robustness_check(&c4, VertexSet::EMPTY).unwrap_err();
        assert_eq!(fail.removed, None);
    }
}
