//! Structural lower bounds and forced detectors.

use serde::Serialize;

use crate::detection::CodeKind;
use crate::graph::{Family, Graph};
use crate::vertex_set::VertexSet;

/// Lower bounds on the minimum code size that follow from the shape of the
/// graph alone.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub log_bound: usize,
    pub tree_bound: Option<usize>,
    pub cubic_bound: Option<usize>,
    /// Only for graphs built as a torus `C_i □ C_j` with `i, j ≥ 5` and one
    /// side even. Rests on a density result for the infinite square grid
    /// that this crate does not check, so the solver never relies on it.
    pub torus_bound: Option<usize>,
    pub structural_notes: Vec<String>,
}

impl BoundReport {
    /// Largest applicable bound.
    pub fn best(&self) -> usize {
        self.proven().max(self.torus_bound.unwrap_or(0))
    }

    /// Largest bound the solver may use to stop early.
    pub fn proven(&self) -> usize {
        self.log_bound
            .max(self.tree_bound.unwrap_or(0))
            .max(self.cubic_bound.unwrap_or(0))
    }
}

/// Smallest `k` with `2^k ≥ m`.
pub(crate) fn ceil_log2(m: usize) -> usize {
    m.next_power_of_two().trailing_zeros() as usize
}

pub fn lower_bound(g: &Graph, kind: CodeKind) -> BoundReport {
    let n = g.order();
    let mut notes = Vec::new();
    if n == 0 {
        return BoundReport {
            log_bound: 0,
            tree_bound: None,
            cubic_bound: None,
            torus_bound: None,
            structural_notes: vec!["empty graph".into()],
        };
    }
    // k detectors give at most 2^k - 1 distinct non-empty views; redundancy
    // costs one more detector.
    let log_bound = match kind {
        CodeKind::Ic => ceil_log2(n + 1),
        CodeKind::RedIc => ceil_log2(n + 1) + 1,
    };
    notes.push(format!("log bound {log_bound}"));
    let red = kind == CodeKind::RedIc;
    let tree_bound = (red && g.is_tree() && n >= 4).then(|| (4 * (n + 1)).div_ceil(5));
    if let Some(b) = tree_bound {
        notes.push(format!("tree bound ceil(4(n+1)/5) = {b}"));
    }
    let cubic_bound = (red && g.is_cubic()).then(|| (4 * n).div_ceil(7));
    if let Some(b) = cubic_bound {
        notes.push(format!("cubic bound ceil(4n/7) = {b}"));
    }
    let torus_bound = match g.family() {
        Some(&Family::Torus { rows, cols })
            if red && rows >= 5 && cols >= 5 && (rows % 2 == 0 || cols % 2 == 0) =>
        {
            let b = (2 * n).div_ceil(5);
            notes.push(format!("torus bound ceil(2n/5) = {b} (reported only)"));
            Some(b)
        }
        _ => None,
    };
    BoundReport {
        log_bound,
        tree_bound,
        cubic_bound,
        torus_bound,
        structural_notes: notes,
    }
}

/// Vertices that belong to every code of the given kind.
///
/// For RED:IC: leaves and their supports; the other neighbours of a degree-3
/// support (the only vertices separating it from its leaf); and `v` on any
/// path `v - w - u` with `deg(w) = deg(u) = 2`, since `N[w] Δ N[u]` is `v`
/// plus the far neighbour of `u`. For IC: every vertex that is the sole
/// member of some `N[u] Δ N[v]` or of an `N[v]`.
///
/// Assumes a code exists; on graphs without one the set is still sound but
/// meaningless.
pub fn forced_detectors(g: &Graph, kind: CodeKind) -> VertexSet {
    let mut forced = VertexSet::EMPTY;
    match kind {
        CodeKind::RedIc => {
            for leaf in g.leaves() {
                let support = g.neighbors(leaf).first().expect("leaf has a neighbour");
                forced |= g.closed_neighborhood(leaf);
                if g.degree(support) == 3 {
                    forced |= g.neighbors(support);
                }
            }
            for w in (0..g.order()).filter(|&w| g.degree(w) == 2) {
                for u in g.neighbors(w).iter().filter(|&u| g.degree(u) == 2) {
                    forced |= g.neighbors(w).without(u);
                }
            }
        }
        CodeKind::Ic => {
            for v in 0..g.order() {
                if g.degree(v) == 0 {
                    forced.insert(v);
                }
                for u in g.ball2(v) {
                    let d = g.closed_neighborhood(u) ^ g.closed_neighborhood(v);
                    if d.len() == 1 {
                        forced |= d;
                    }
                }
            }
        }
    }
    forced
}
