//! Branch and bound over covering constraints.
//!
//! A code of kind (d, s) is exactly a set meeting every `N[v]` in at least
//! `d` vertices and every `N[u] Δ N[v]` (for `u, v` within distance two) in
//! at least `s`. The search fixes vertices in or out, propagates constraints
//! whose free vertices are all needed, and prunes with two relaxations.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use rayon::prelude::*;

use crate::detection::CodeKind;
use crate::graph::Graph;
use crate::vertex_set::VertexSet;

#[derive(Debug, Clone, Copy)]
struct Constraint {
    mask: VertexSet,
    demand: usize,
}

/// An unsatisfied constraint at a search node.
#[derive(Debug, Clone, Copy)]
struct Open {
    need: usize,
    free: VertexSet,
}

pub(crate) struct Problem {
    n: usize,
    constraints: Vec<Constraint>,
}

impl Problem {
    pub(crate) fn new(g: &Graph, kind: CodeKind) -> Problem {
        let mut constraints = Vec::new();
        for v in 0..g.order() {
            constraints.push(Constraint {
                mask: g.closed_neighborhood(v),
                demand: kind.dom_req(),
            });
        }
        for u in 0..g.order() {
            for v in g.ball2(u) - VertexSet::full(u + 1) {
                constraints.push(Constraint {
                    mask: g.closed_neighborhood(u) ^ g.closed_neighborhood(v),
                    demand: kind.dist_req(),
                });
            }
        }
        Problem {
            n: g.order(),
            constraints,
        }
    }

    /// Unit propagation to a fixpoint. Returns `None` on a dead end.
    /// Vertices no open constraint can use are excluded.
    fn propagate(
        &self,
        mut chosen: VertexSet,
        mut excluded: VertexSet,
        open: &mut Vec<Open>,
    ) -> Option<(VertexSet, VertexSet)> {
        loop {
            open.clear();
            let mut changed = false;
            for c in &self.constraints {
                let have = (c.mask & chosen).len();
                if have >= c.demand {
                    continue;
                }
                let need = c.demand - have;
                let free = c.mask - chosen - excluded;
                let f = free.len();
                if f < need {
                    return None;
                }
                if f == need {
                    chosen |= free;
                    changed = true;
                } else {
                    open.push(Open { need, free });
                }
            }
            if !changed {
                break;
            }
        }
        let useful = open.iter().fold(VertexSet::EMPTY, |acc, o| acc | o.free);
        excluded = VertexSet::full(self.n) - chosen - useful;
        Some((chosen, excluded))
    }

    /// Minimum number of further detectors any completion needs.
    fn residual_bound(&self, open: &[Open], scratch: &mut Vec<usize>) -> usize {
        if open.is_empty() {
            return 0;
        }
        // Disjoint constraints need separate detectors.
        let mut order: Vec<usize> = (0..open.len()).collect();
        order.sort_by_key(|&i| (open[i].free.len(), i));
        let mut used = VertexSet::EMPTY;
        let mut packing = 0;
        for i in order {
            if !open[i].free.intersects(used) {
                used |= open[i].free;
                packing += open[i].need;
            }
        }
        // One detector lowers each constraint's deficit by at most one.
        scratch.clear();
        scratch.resize(self.n, 0);
        let mut deficit = 0;
        for o in open {
            deficit += o.need;
            for x in o.free {
                scratch[x] += 1;
            }
        }
        scratch.sort_unstable_by(|a, b| b.cmp(a));
        let mut covered = 0;
        let mut cover = 0;
        for &c in scratch.iter() {
            if covered >= deficit || c == 0 {
                break;
            }
            covered += c;
            cover += 1;
        }
        if covered < deficit {
            // Cannot be completed at all.
            return self.n + 1;
        }
        packing.max(cover)
    }

    fn branch_vertex(open: &[Open]) -> usize {
        let pick = open
            .iter()
            .enumerate()
            .min_by_key(|&(i, o)| (o.free.len() - o.need, o.free.len(), i))
            .expect("branching needs an open constraint");
        pick.1
            .free
            .first()
            .expect("open constraint has free vertices")
    }
}

pub(crate) struct Limits {
    pub deadline: Option<Instant>,
    pub max_nodes: Option<u64>,
}

/// Search state shared across workers.
pub(crate) struct Shared {
    /// Only sets strictly smaller than this are of interest.
    best_size: AtomicUsize,
    best: Mutex<Option<VertexSet>>,
    nodes: AtomicU64,
    stop: AtomicBool,
    exhausted: AtomicBool,
    /// Stop as soon as a set of at most this size is found.
    good_enough: usize,
    limits: Limits,
}

impl Shared {
    pub(crate) fn new(
        bound: usize,
        witness: Option<VertexSet>,
        good_enough: usize,
        limits: Limits,
    ) -> Shared {
        Shared {
            best_size: AtomicUsize::new(bound),
            best: Mutex::new(witness),
            nodes: AtomicU64::new(0),
            stop: AtomicBool::new(false),
            exhausted: AtomicBool::new(false),
            good_enough,
            limits,
        }
    }

    pub(crate) fn best(&self) -> (usize, Option<VertexSet>) {
        let w = *self.best.lock().expect("incumbent lock");
        (self.best_size.load(Ordering::SeqCst), w)
    }

    pub(crate) fn nodes(&self) -> u64 {
        self.nodes.load(Ordering::SeqCst)
    }

    /// True when the search stopped on a budget rather than finishing.
    pub(crate) fn exhausted(&self) -> bool {
        self.exhausted.load(Ordering::SeqCst)
    }

    fn offer(&self, s: VertexSet) {
        let mut best = self.best.lock().expect("incumbent lock");
        if s.len() < self.best_size.load(Ordering::SeqCst) {
            self.best_size.store(s.len(), Ordering::SeqCst);
            *best = Some(s);
            if s.len() <= self.good_enough {
                self.stop.store(true, Ordering::SeqCst);
            }
        }
    }

    fn tick(&self) -> bool {
        if self.stop.load(Ordering::Relaxed) {
            return false;
        }
        let count = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        let over_nodes = self.limits.max_nodes.is_some_and(|m| count > m);
        let over_time =
            count % 256 == 0 && self.limits.deadline.is_some_and(|d| Instant::now() >= d);
        if over_nodes || over_time {
            self.exhausted.store(true, Ordering::SeqCst);
            self.stop.store(true, Ordering::SeqCst);
            return false;
        }
        true
    }
}

/// A node still to be explored: fixed-in and fixed-out vertices.
#[derive(Debug, Clone, Copy)]
struct Node {
    chosen: VertexSet,
    excluded: VertexSet,
}

enum Expanded {
    Done,
    Children(Node, Node),
}

impl Problem {
    /// Lower bound for the subtree at the root, after propagation.
    pub(crate) fn root_bound(&self, chosen: VertexSet) -> Option<usize> {
        let mut open = Vec::new();
        let mut scratch = Vec::new();
        let (chosen, _) = self.propagate(chosen, VertexSet::EMPTY, &mut open)?;
        Some(chosen.len() + self.residual_bound(&open, &mut scratch))
    }

    fn expand(
        &self,
        node: Node,
        sh: &Shared,
        open: &mut Vec<Open>,
        scratch: &mut Vec<usize>,
    ) -> Expanded {
        if !sh.tick() {
            return Expanded::Done;
        }
        let Some((chosen, excluded)) = self.propagate(node.chosen, node.excluded, open) else {
            return Expanded::Done;
        };
        if open.is_empty() {
            sh.offer(chosen);
            return Expanded::Done;
        }
        let lb = chosen.len() + self.residual_bound(open, scratch);
        if lb >= sh.best_size.load(Ordering::Relaxed) {
            return Expanded::Done;
        }
        let v = Self::branch_vertex(open);
        Expanded::Children(
            Node {
                chosen: chosen.with(v),
                excluded,
            },
            Node {
                chosen,
                excluded: excluded.with(v),
            },
        )
    }

    fn dfs(&self, root: Node, sh: &Shared) {
        let mut open = Vec::new();
        let mut scratch = Vec::new();
        let mut stack = vec![root];
        while let Some(node) = stack.pop() {
            if let Expanded::Children(inc, exc) = self.expand(node, sh, &mut open, &mut scratch) {
                stack.push(exc);
                stack.push(inc);
            }
        }
    }

    /// Runs the search from `start`. With `parallel`, the top of the tree is
    /// expanded breadth-first and the frontier is shared out to the rayon
    /// pool; otherwise the exploration order is fixed.
    pub(crate) fn run(&self, start: VertexSet, sh: &Shared, parallel: Option<usize>) {
        let root = Node {
            chosen: start,
            excluded: VertexSet::EMPTY,
        };
        let Some(threads) = parallel else {
            self.dfs(root, sh);
            return;
        };
        let mut frontier = vec![root];
        let mut open = Vec::new();
        let mut scratch = Vec::new();
        while !frontier.is_empty() && frontier.len() < 8 * threads {
            let mut next = Vec::with_capacity(frontier.len() * 2);
            for node in frontier {
                if let Expanded::Children(inc, exc) = self.expand(node, sh, &mut open, &mut scratch)
                {
                    next.push(inc);
                    next.push(exc);
                }
            }
            frontier = next;
        }
        frontier.par_iter().for_each(|&node| self.dfs(node, sh));
    }
}
