//! Variable and clause gadgets, recovered by exhaustive search over small
//! labelled graphs against the behaviour the reduction needs.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::graph::Graph;
use crate::solver::Budget;
use crate::vertex_set::VertexSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GadgetKind {
    /// One per variable; ports are the two literal vertices.
    Variable,
    /// One per clause; the single port is joined to the clause's literals.
    Clause,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetSpec {
    pub kind: GadgetKind,
    pub graph: Graph,
    pub roles: Vec<String>,
    pub ports: Vec<usize>,
    /// Vertices that every code of the full reduction must contain.
    pub forced: VertexSet,
}

/// On-disk form of a gadget.
#[derive(Debug, Serialize, Deserialize)]
struct GadgetFile {
    kind: GadgetKind,
    roles: Vec<String>,
    edges: Vec<(usize, usize)>,
    ports: Vec<usize>,
    forced: Vec<usize>,
}

impl GadgetSpec {
    pub fn to_json(&self) -> String {
        let file = GadgetFile {
            kind: self.kind,
            roles: self.roles.clone(),
            edges: self.graph.edges().collect(),
            ports: self.ports.clone(),
            forced: self.forced.to_vec(),
        };
        serde_json::to_string_pretty(&file).expect("gadget serializes")
    }

    pub fn from_json(text: &str) -> Result<GadgetSpec, String> {
        let file: GadgetFile = serde_json::from_str(text).map_err(|e| e.to_string())?;
        let graph = Graph::new(file.roles.len(), &file.edges).map_err(|e| e.to_string())?;
        Ok(GadgetSpec {
            kind: file.kind,
            graph,
            roles: file.roles,
            ports: file.ports,
            forced: file.forced.iter().collect(),
        })
    }

    /// The variable gadget shipped with the crate.
    pub fn stored_variable_gadget() -> GadgetSpec {
        GadgetSpec::from_json(include_str!("../../data/variable_gadget.json"))
            .expect("stored gadget parses")
    }
}

fn pc(x: u32) -> u32 {
    x.count_ones()
}

/// Closed neighbourhoods of the labelled graph on `n ≤ 8` vertices encoded by
/// `mask` over `pairs`.
fn closed(n: usize, pairs: &[(usize, usize)], mask: u32) -> Vec<u32> {
    let mut adj: Vec<u32> = (0..n).map(|v| 1 << v).collect();
    for (e, &(a, b)) in pairs.iter().enumerate() {
        if mask >> e & 1 == 1 {
            adj[a] |= 1 << b;
            adj[b] |= 1 << a;
        }
    }
    adj
}

fn all_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .collect()
}

fn spec_from(
    kind: GadgetKind,
    roles: &[&str],
    ports: Vec<usize>,
    forced: u32,
    pairs: &[(usize, usize)],
    mask: u32,
) -> GadgetSpec {
    let edges: Vec<(usize, usize)> = pairs
        .iter()
        .enumerate()
        .filter(|&(e, _)| mask >> e & 1 == 1)
        .map(|(_, &p)| p)
        .collect();
    GadgetSpec {
        kind,
        graph: Graph::new(roles.len(), &edges).expect("gadget is simple"),
        roles: roles.iter().map(|r| r.to_string()).collect(),
        ports,
        forced: VertexSet::from_bits(forced as u128),
    }
}

const H_ROLES: [&str; 3] = ["a", "b", "c"];

/// Clause gadget on roles `a, b, c` with two edges and the port on `c`:
/// `{a, b, c}` 2-dominates itself, `a` and `b` are each separated from `c` by
/// exactly one detector, and one extra detector on `c` separates every pair.
pub fn find_clause_gadget() -> GadgetSpec {
    let pairs = all_pairs(3);
    let s0 = 0b111u32;
    let ext = 1 << 3;
    let found: Vec<u32> = (0u32..1 << 3)
        .filter(|m| pc(*m) == 2)
        .filter(|&m| {
            let nb = closed(3, &pairs, m);
            let dominated = nb.iter().all(|&c| pc(c & s0) >= 2);
            let weak = pc((nb[0] ^ nb[2]) & s0) == 1 && pc((nb[1] ^ nb[2]) & s0) == 1;
            let mut with_port = nb.clone();
            with_port[2] |= ext;
            let s = s0 | ext;
            let fixed = pairs
                .iter()
                .all(|&(a, b)| pc((with_port[a] ^ with_port[b]) & s) >= 2);
            dominated && weak && fixed
        })
        .collect();
    assert_eq!(found.len(), 1, "clause gadget is unique");
    spec_from(GadgetKind::Clause, &H_ROLES, vec![2], s0, &pairs, found[0])
}

pub const VARIABLE_ROLES: [&str; 8] = ["x", "x_neg", "y", "p", "z", "r", "u", "w"];
const X: usize = 0;
const XN: usize = 1;

/// Checks the variable-gadget behaviour on closed neighbourhoods `nb`:
///
/// * `S0 = {y, p, z, r, u, w}` 2-dominates every vertex internally;
/// * under `S0`, `(y, p)` and `(z, r)` are separated by exactly one detector;
/// * adding either literal separates every internal pair other than the two
///   literals themselves;
/// * the two literals are separated once one external detector (a clause
///   vertex) is adjacent to either of them.
fn variable_gadget_behaves(nb: &[u32]) -> bool {
    let s0 = 0b1111_1100u32;
    if nb.iter().any(|&c| pc(c & s0) < 2) {
        return false;
    }
    if pc((nb[2] ^ nb[3]) & s0) != 1 || pc((nb[4] ^ nb[5]) & s0) != 1 {
        return false;
    }
    let ext = 1u32 << 8;
    for lit in [X, XN] {
        let s = s0 | 1 << lit;
        for a in 0..8 {
            for b in a + 1..8 {
                if (a, b) != (X, XN) && pc((nb[a] ^ nb[b]) & s) < 2 {
                    return false;
                }
            }
        }
        for wired in [X, XN] {
            let (mut na, mut nb2) = (nb[X], nb[XN]);
            if wired == X {
                na |= ext;
            } else {
                nb2 |= ext;
            }
            if pc((na ^ nb2) & (s | ext)) < 2 {
                return false;
            }
        }
    }
    true
}

/// Role permutations preserving the behaviour: swap the literals, swap `y`
/// with `p`, swap `z` with `r`, swap the `(y, p)` and `(z, r)` blocks, and
/// swap `u` with `w`. The group has 32 elements.
fn variable_role_group() -> Vec<[usize; 8]> {
    let gens: [[usize; 8]; 5] = [
        [1, 0, 2, 3, 4, 5, 6, 7],
        [0, 1, 3, 2, 4, 5, 6, 7],
        [0, 1, 2, 3, 5, 4, 6, 7],
        [0, 1, 4, 5, 2, 3, 6, 7],
        [0, 1, 2, 3, 4, 5, 7, 6],
    ];
    let mut group = vec![[0, 1, 2, 3, 4, 5, 6, 7]];
    let mut i = 0;
    while i < group.len() {
        for g in &gens {
            let h: [usize; 8] = std::array::from_fn(|v| g[group[i][v]]);
            if !group.contains(&h) {
                group.push(h);
            }
        }
        i += 1;
    }
    group
}

fn permute_mask(
    mask: u32,
    perm: &[usize; 8],
    pairs: &[(usize, usize)],
    index: &[[usize; 8]; 8],
) -> u32 {
    let mut out = 0;
    for (e, &(a, b)) in pairs.iter().enumerate() {
        if mask >> e & 1 == 1 {
            out |= 1 << index[perm[a]][perm[b]];
        }
    }
    out
}

/// Every 8-edge labelled graph on the variable roles that satisfies the
/// behaviour checklist, in increasing edge-mask order.
pub fn variable_gadget_solutions() -> Vec<GadgetSpec> {
    let pairs = all_pairs(8);
    let mut out = Vec::new();
    for_each_subset(28, 8, |mask| {
        if variable_gadget_behaves(&closed(8, &pairs, mask)) {
            out.push(spec_from(
                GadgetKind::Variable,
                &VARIABLE_ROLES,
                vec![X, XN],
                0b1111_1100,
                &pairs,
                mask,
            ));
        }
        true
    });
    out
}

/// Visits the `k`-subsets of `0..n` as bitmasks in increasing order until
/// `visit` returns false.
fn for_each_subset(n: u32, k: u32, mut visit: impl FnMut(u32) -> bool) {
    let mut m: u32 = (1 << k) - 1;
    while m < 1 << n {
        if !visit(m) {
            return;
        }
        let c = m & m.wrapping_neg();
        let r = m + c;
        m = (((r ^ m) >> 2) / c) | r;
    }
}

/// Exhaustive search for the variable gadget: 8 vertices, 8 edges. Only the
/// smallest edge mask of each orbit under the role symmetries is tested.
/// Returns the first hit, or `None` if the budget runs out.
pub fn find_variable_gadget(budget: Budget) -> Option<GadgetSpec> {
    let start = Instant::now();
    let pairs = all_pairs(8);
    let mut index = [[0usize; 8]; 8];
    for (e, &(a, b)) in pairs.iter().enumerate() {
        index[a][b] = e;
        index[b][a] = e;
    }
    let group = variable_role_group();
    let mut found = None;
    let mut visited = 0u64;
    for_each_subset(28, 8, |mask| {
        visited += 1;
        if budget.nodes.is_some_and(|n| visited > n)
            || (visited % 4096 == 0 && budget.time.is_some_and(|t| start.elapsed() > t))
        {
            return false;
        }
        if variable_gadget_behaves(&closed(8, &pairs, mask))
            && group
                .iter()
                .all(|p| permute_mask(mask, p, &pairs, &index) >= mask)
        {
            found = Some(spec_from(
                GadgetKind::Variable,
                &VARIABLE_ROLES,
                vec![X, XN],
                0b1111_1100,
                &pairs,
                mask,
            ));
            return false;
        }
        true
    });
    found
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clause_gadget_is_a_path_centred_on_the_port() {
        let h = find_clause_gadget();
        assert_eq!(h.graph.edges().collect::<Vec<_>>(), vec![(0, 2), (1, 2)]);
    }

    #[test]
    fn role_group_order() {
        assert_eq!(variable_role_group().len(), 32);
    }

    #[test]
    fn subsets_in_order() {
        let mut seen = Vec::new();
        for_each_subset(4, 2, |m| {
            seen.push(m);
            true
        });
        assert_eq!(seen, vec![0b0011, 0b0101, 0b0110, 0b1001, 0b1010, 0b1100]);
    }
}
