//! Exact minimum codes by branch and bound, and the bounded decision
//! problem "is there a code of size at most K?".

mod bounds;
mod search;

use std::time::{Duration, Instant};

use serde::Serialize;

use crate::detection::{is_code, CodeKind};
use crate::existence::{exists, Existence, Reason};
use crate::graph::Graph;
use crate::vertex_set::VertexSet;

pub use bounds::{forced_detectors, lower_bound, BoundReport};
use search::{Limits, Problem, Shared};

/// Search limits. `None` means unlimited.
#[derive(Debug, Clone, Copy, Default)]
pub struct Budget {
    pub time: Option<Duration>,
    pub nodes: Option<u64>,
}

impl Budget {
    pub const UNLIMITED: Budget = Budget {
        time: None,
        nodes: None,
    };

    pub fn seconds(s: f64) -> Budget {
        Budget {
            time: Some(Duration::from_secs_f64(s)),
            nodes: None,
        }
    }

    fn limits(&self, start: Instant) -> Limits {
        Limits {
            deadline: self.time.map(|t| start + t),
            max_nodes: self.nodes,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SolveOptions {
    pub budget: Budget,
    /// Single fixed exploration order: identical witness and node count on
    /// every run, whatever `threads` says.
    pub deterministic: bool,
    /// Worker count for the parallel search; 0 uses the rayon default.
    pub threads: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            budget: Budget::UNLIMITED,
            deterministic: true,
            threads: 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SolveStats {
    pub nodes: u64,
    #[serde(serialize_with = "as_seconds")]
    pub elapsed: Duration,
}

fn as_seconds<S: serde::Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Optimal {
        k: usize,
        witness: VertexSet,
    },
    /// Budget ran out: the optimum lies in `lower..=upper`.
    Bounded {
        lower: usize,
        upper: usize,
        witness: Option<VertexSet>,
    },
    Infeasible(Reason),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveOutcome {
    pub outcome: Outcome,
    pub stats: SolveStats,
}

impl SolveOutcome {
    pub fn optimum(&self) -> Option<usize> {
        match self.outcome {
            Outcome::Optimal { k, .. } => Some(k),
            _ => None,
        }
    }

    pub fn witness(&self) -> Option<VertexSet> {
        match self.outcome {
            Outcome::Optimal { witness, .. } => Some(witness),
            Outcome::Bounded { witness, .. } => witness,
            Outcome::Infeasible(_) => None,
        }
    }
}

/// Drops vertices one at a time (highest index first) while the set stays a
/// code. Gives the starting incumbent.
fn greedy_code(g: &Graph, kind: CodeKind, start: VertexSet) -> VertexSet {
    let mut s = g.vertices();
    for v in (0..g.order()).rev() {
        if !start.contains(v) && is_code(g, s.without(v), kind) {
            s.remove(v);
        }
    }
    s
}

fn parallelism(opts: &SolveOptions) -> Option<usize> {
    if opts.deterministic {
        return None;
    }
    let threads = if opts.threads == 0 {
        rayon::current_num_threads()
    } else {
        opts.threads
    };
    (threads > 1).then_some(threads)
}

fn run_in_pool<R: Send>(opts: &SolveOptions, f: impl FnOnce(Option<usize>) -> R + Send) -> R {
    match parallelism(opts) {
        Some(t) if opts.threads > 0 => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .expect("thread pool")
            .install(|| f(Some(t))),
        p => f(p),
    }
}

/// Minimum code of the given kind.
///
/// Starts from the forced detectors, with the greedy code as incumbent, and
/// stops early when the incumbent meets a structural lower bound. Every
/// returned witness is re-verified.
pub fn solve_min(g: &Graph, kind: CodeKind, opts: &SolveOptions) -> SolveOutcome {
    let start = Instant::now();
    let stats = |nodes| SolveStats {
        nodes,
        elapsed: start.elapsed(),
    };
    if let Existence::No(reason) = exists(g, kind) {
        return SolveOutcome {
            outcome: Outcome::Infeasible(reason),
            stats: stats(0),
        };
    }
    if g.order() == 0 {
        return SolveOutcome {
            outcome: Outcome::Optimal {
                k: 0,
                witness: VertexSet::EMPTY,
            },
            stats: stats(0),
        };
    }
    let problem = Problem::new(g, kind);
    let forced = forced_detectors(g, kind);
    let structural = lower_bound(g, kind).proven();
    let root = problem
        .root_bound(forced)
        .expect("a code exists, so the root is consistent");
    let floor = structural.max(root);
    let incumbent = greedy_code(g, kind, forced);
    let shared = Shared::new(
        incumbent.len(),
        Some(incumbent),
        floor,
        opts.budget.limits(start),
    );
    if incumbent.len() > floor {
        run_in_pool(opts, |p| problem.run(forced, &shared, p));
    }
    let (upper, witness) = shared.best();
    let witness = witness.expect("incumbent always present");
    assert!(
        is_code(g, witness, kind),
        "solver produced an invalid witness {witness}"
    );
    let outcome = if shared.exhausted() && upper > floor {
        Outcome::Bounded {
            lower: floor,
            upper,
            witness: Some(witness),
        }
    } else {
        Outcome::Optimal { k: upper, witness }
    };
    SolveOutcome {
        outcome,
        stats: stats(shared.nodes()),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Feasibility {
    Witness(VertexSet),
    /// Exhaustively refuted.
    None,
    /// Budget ran out first.
    Unknown,
}

/// Decides whether a code of size at most `k` exists, stopping at the first
/// one found.
pub fn feasible_at(
    g: &Graph,
    kind: CodeKind,
    k: usize,
    opts: &SolveOptions,
) -> (Feasibility, SolveStats) {
    let start = Instant::now();
    let stats = |nodes| SolveStats {
        nodes,
        elapsed: start.elapsed(),
    };
    if !exists(g, kind).is_yes() {
        return (Feasibility::None, stats(0));
    }
    if k >= g.order() {
        return (Feasibility::Witness(g.vertices()), stats(0));
    }
    let forced = forced_detectors(g, kind);
    if k < lower_bound(g, kind).proven() || k < forced.len() {
        return (Feasibility::None, stats(0));
    }
    let problem = Problem::new(g, kind);
    let shared = Shared::new(k + 1, None, k, opts.budget.limits(start));
    run_in_pool(opts, |p| problem.run(forced, &shared, p));
    let result = match shared.best() {
        (_, Some(w)) => {
            assert!(
                is_code(g, w, kind),
                "solver produced an invalid witness {w}"
            );
            Feasibility::Witness(w)
        }
        (_, None) if shared.exhausted() => Feasibility::Unknown,
        _ => Feasibility::None,
    };
    (result, stats(shared.nodes()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opt(g: &Graph, kind: CodeKind) -> Option<usize> {
        solve_min(g, kind, &SolveOptions::default()).optimum()
    }

    #[test]
    fn small_optima() {
        assert_eq!(opt(&Graph::star(3).unwrap(), CodeKind::RedIc), Some(4));
        assert_eq!(opt(&Graph::cycle(4).unwrap(), CodeKind::RedIc), Some(4));
        assert_eq!(opt(&Graph::ladder(4).unwrap(), CodeKind::RedIc), Some(6));
        let octa = Graph::complete_multipartite(&[2, 2, 2]).unwrap();
        assert_eq!(opt(&octa, CodeKind::RedIc), Some(6));
        assert!(matches!(
            solve_min(
                &Graph::path(6).unwrap(),
                CodeKind::RedIc,
                &SolveOptions::default()
            )
            .outcome,
            Outcome::Infeasible(Reason::WeakSupport { .. })
        ));
    }

    #[test]
    fn forced_sets() {
        let claw = Graph::star(3).unwrap();
        assert_eq!(forced_detectors(&claw, CodeKind::RedIc), claw.vertices());
        let c7 = Graph::cycle(7).unwrap();
        assert_eq!(forced_detectors(&c7, CodeKind::RedIc), c7.vertices());
        let q3 = Graph::hypercube(3).unwrap();
        assert!(forced_detectors(&q3, CodeKind::RedIc).is_empty());
    }

    #[test]
    fn bounds() {
        assert_eq!(
            lower_bound(&Graph::cycle(31).unwrap(), CodeKind::RedIc).log_bound,
            6
        );
        assert_eq!(
            lower_bound(&Graph::path(14).unwrap(), CodeKind::RedIc).tree_bound,
            Some(12)
        );
        let cubic14 = Graph::cycle(7)
            .unwrap()
            .cartesian_product(&Graph::path(2).unwrap())
            .unwrap();
        assert_eq!(lower_bound(&cubic14, CodeKind::RedIc).cubic_bound, Some(8));
        let t = Graph::torus(5, 6).unwrap();
        let r = lower_bound(&t, CodeKind::RedIc);
        assert_eq!(r.torus_bound, Some(12));
        assert_eq!(r.proven(), 6);
        assert_eq!(
            lower_bound(&Graph::torus(5, 5).unwrap(), CodeKind::RedIc).torus_bound,
            None
        );
    }

    #[test]
    fn decision_problem() {
        let c4 = Graph::cycle(4).unwrap();
        let o = SolveOptions::default();
        assert_eq!(
            feasible_at(&c4, CodeKind::RedIc, 4, &o).0,
            Feasibility::Witness(c4.vertices())
        );
        assert_eq!(
            feasible_at(&c4, CodeKind::RedIc, 3, &o).0,
            Feasibility::None
        );
        let q4 = Graph::hypercube(4).unwrap();
        let best = opt(&q4, CodeKind::RedIc).unwrap();
        assert!(matches!(
            feasible_at(&q4, CodeKind::RedIc, best, &o).0,
            Feasibility::Witness(_)
        ));
        assert_eq!(
            feasible_at(&q4, CodeKind::RedIc, best - 1, &o).0,
            Feasibility::None
        );
    }

    #[test]
    fn budget_gives_bounds() {
        let g = Graph::hypercube(5).unwrap();
        let o = SolveOptions {
            budget: Budget {
                time: None,
                nodes: Some(50),
            },
            ..SolveOptions::default()
        };
        match solve_min(&g, CodeKind::RedIc, &o).outcome {
            Outcome::Bounded {
                lower,
                upper,
                witness,
            } => {
                assert!(lower <= upper);
                assert_eq!(witness.unwrap().len(), upper);
            }
            other => panic!("expected a bounded outcome, got {other:?}"),
        }
    }
}
