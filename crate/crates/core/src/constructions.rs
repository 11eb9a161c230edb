//! Extremal families, each built together with a RED:IC witness.
//!
//! Every constructor verifies its witness before returning; a failure there is
//! a bug in the construction and panics. Where a structural lower bound equals
//! the witness size the instance carries a [`Certificate::BoundMatches`].

use std::time::Instant;

use serde::Serialize;
use thiserror::Error;

use crate::detection::{verify, CodeKind};
use crate::graph::Graph;
use crate::solver::{feasible_at, lower_bound, Budget, Feasibility, SolveOptions};
use crate::vertex_set::{VertexSet, MAX_VERTICES};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("{family}: {reason}")]
    BadParameter {
        family: &'static str,
        reason: String,
    },
    #[error("{family} would need {n} vertices (maximum {MAX_VERTICES})")]
    TooLarge { family: &'static str, n: usize },
    #[error("no witness of size {k} found within the budget")]
    NotFound { k: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "certificate", content = "bound", rename_all = "snake_case")]
pub enum Certificate {
    /// A lower bound of this name equals the witness size.
    BoundMatches(String),
    /// Optimality has to be settled by exact search.
    SolverRequired,
}

#[derive(Debug, Clone)]
pub struct ConstructedInstance {
    pub name: String,
    pub graph: Graph,
    pub witness: VertexSet,
    pub claimed_k: usize,
    pub certificate: Certificate,
}

impl ConstructedInstance {
    fn new(name: String, graph: Graph, witness: VertexSet, certificate: Certificate) -> Self {
        if let Err(v) = verify(&graph, witness, CodeKind::RedIc) {
            panic!("{name}: construction witness fails: {v}");
        }
        let inst = ConstructedInstance {
            name,
            claimed_k: witness.len(),
            graph,
            witness,
            certificate,
        };
        if let Certificate::BoundMatches(bound) = &inst.certificate {
            let b = lower_bound(&inst.graph, CodeKind::RedIc).proven();
            assert_eq!(
                b, inst.claimed_k,
                "{}: {bound} bound does not meet the witness",
                inst.name
            );
        }
        inst
    }

    pub fn density(&self) -> f64 {
        self.claimed_k as f64 / self.graph.order() as f64
    }
}

fn binomial(n: u64, k: u64) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Sum of `C(k, j)` over `j` in `sizes`.
fn binomial_sum(k: usize, sizes: impl Iterator<Item = usize>) -> u128 {
    sizes.map(|j| binomial(k as u64, j as u64)).sum()
}

fn require(
    family: &'static str,
    ok: bool,
    reason: impl Fn() -> String,
) -> Result<(), ConstructionError> {
    if ok {
        Ok(())
    } else {
        Err(ConstructionError::BadParameter {
            family,
            reason: reason(),
        })
    }
}

/// Detectors `0..k`, fixed detector edges, then one non-detector per subset in
/// `masks`, adjacent to exactly that subset.
fn attach_subsets(
    family: &'static str,
    k: usize,
    detector_edges: &[(usize, usize)],
    masks: &[u32],
) -> Result<Graph, ConstructionError> {
    let n = k + masks.len();
    if n > MAX_VERTICES {
        return Err(ConstructionError::TooLarge { family, n });
    }
    let mut edges = detector_edges.to_vec();
    for (i, &m) in masks.iter().enumerate() {
        for d in (0..k).filter(|&d| m >> d & 1 == 1) {
            edges.push((d, k + i));
        }
    }
    Ok(Graph::new(n, &edges).expect("subset attachment is simple"))
}

fn star_edges(k: usize) -> Vec<(usize, usize)> {
    (1..k).map(|l| (0, l)).collect()
}

/// The star `K_{1,k-1}` supplies `k` detectors whose views are the full set
/// (centre) and the pairs `{centre, leaf}`.
fn star_realized(k: usize, m: u32) -> bool {
    m == (1u32 << k) - 1 || (m.count_ones() == 2 && m & 1 == 1)
}

/// Even `k ≥ 4`: `2^(k-1) - 1` vertices with a RED:IC of size `k`.
///
/// Detectors are the star `K_{1,k-1}`; one non-detector is added for every
/// even subset of the detectors of size `2..=k-2` that no detector already
/// sees as its closed neighbourhood. All views are distinct even sets.
pub fn star_extremal_even(k: usize) -> Result<ConstructedInstance, ConstructionError> {
    const F: &str = "star_extremal_even";
    require(F, k >= 4 && k % 2 == 0, || {
        format!("k must be even and at least 4, got {k}")
    })?;
    require(F, k <= 8, || format!("k = {k} exceeds the vertex limit"))?;
    let masks: Vec<u32> = (0u32..1 << k)
        .filter(|m| {
            let c = m.count_ones() as usize;
            c % 2 == 0 && (2..=k - 2).contains(&c) && !star_realized(k, *m)
        })
        .collect();
    let g = attach_subsets(F, k, &star_edges(k), &masks)?;
    let evens = binomial_sum(k, (2..=k).step_by(2));
    assert_eq!(evens, (1u128 << (k - 1)) - 1);
    assert_eq!(g.order() as u128, evens);
    Ok(ConstructedInstance::new(
        format!("star_extremal_even({k})"),
        g,
        VertexSet::full(k),
        Certificate::BoundMatches("log".into()),
    ))
}

/// Odd `k ≥ 5`: star variant on `2^(k-1) - k` vertices. Even subsets of size
/// `2..=k-3` plus the full set (the star centre's own view).
pub fn star_extremal_odd(k: usize) -> Result<ConstructedInstance, ConstructionError> {
    const F: &str = "star_extremal_odd";
    require(F, k >= 5 && k % 2 == 1, || {
        format!("k must be odd and at least 5, got {k}")
    })?;
    require(F, k <= 7, || format!("k = {k} exceeds the vertex limit"))?;
    let masks: Vec<u32> = (0u32..1 << k)
        .filter(|m| {
            let c = m.count_ones() as usize;
            c % 2 == 0 && (2..=k - 3).contains(&c) && !star_realized(k, *m)
        })
        .collect();
    let g = attach_subsets(F, k, &star_edges(k), &masks)?;
    // One vertex per view: the even subsets of size 2..=k-3 and the full set.
    let count = binomial_sum(k, (2..=k - 3).step_by(2)) + 1;
    assert_eq!(count, (1u128 << (k - 1)) - k as u128);
    assert_eq!(g.order() as u128, count);
    Ok(odd_instance(format!("star_extremal_odd({k})"), g, k))
}

/// Odd `k ≥ 5`: the cycle `C_k` of detectors plus a non-detector for every
/// odd subset of size `3..=k` other than the `k` consecutive triples.
pub fn cycle_extremal_odd(k: usize) -> Result<ConstructedInstance, ConstructionError> {
    const F: &str = "cycle_extremal_odd";
    require(F, k >= 5 && k % 2 == 1, || {
        format!("k must be odd and at least 5, got {k}")
    })?;
    require(F, k <= 7, || format!("k = {k} exceeds the vertex limit"))?;
    let triples: Vec<u32> = (0..k)
        .map(|i| {
            [i, (i + 1) % k, (i + 2) % k]
                .iter()
                .fold(0, |m, &d| m | 1 << d)
        })
        .collect();
    let masks: Vec<u32> = (0u32..1 << k)
        .filter(|m| m.count_ones() % 2 == 1 && m.count_ones() >= 3 && !triples.contains(m))
        .collect();
    let ring: Vec<(usize, usize)> = (0..k).map(|i| (i, (i + 1) % k)).collect();
    let g = attach_subsets(F, k, &ring, &masks)?;
    // Every odd subset of size at least 3 is the view of exactly one vertex.
    let count = binomial_sum(k, (3..=k).step_by(2));
    assert_eq!(count, (1u128 << (k - 1)) - k as u128);
    assert_eq!(g.order() as u128, count);
    Ok(odd_instance(format!("cycle_extremal_odd({k})"), g, k))
}

fn odd_instance(name: String, g: Graph, k: usize) -> ConstructedInstance {
    let certificate = if lower_bound(&g, CodeKind::RedIc).proven() == k {
        Certificate::BoundMatches("log".into())
    } else {
        Certificate::SolverRequired
    };
    ConstructedInstance::new(name, g, VertexSet::full(k), certificate)
}

/// `K_{2,...,2}` on `n` vertices, where every vertex is needed.
pub fn multipartite_exact(n: usize) -> Result<ConstructedInstance, ConstructionError> {
    const F: &str = "multipartite_exact";
    require(F, n >= 4 && n % 2 == 0, || {
        format!("n must be even and at least 4, got {n}")
    })?;
    let g = Graph::complete_multipartite(&vec![2; n / 2]).map_err(|e| {
        ConstructionError::BadParameter {
            family: F,
            reason: e.to_string(),
        }
    })?;
    let all = g.vertices();
    Ok(ConstructedInstance::new(
        format!("multipartite_exact({n})"),
        g,
        all,
        Certificate::SolverRequired,
    ))
}

/// A tree on `n ≥ 4` vertices whose minimum RED:IC has size `⌈4(n+1)/5⌉`.
///
/// `⌊(n+1)/5⌋` claws joined in a chain: a non-detector sits between a leaf of
/// one claw and a leaf of the next. The `(n+1) mod 5` left-over vertices are
/// extra leaves on the first claw's centre. All claw vertices are detectors.
pub fn extremal_tree(n: usize) -> Result<ConstructedInstance, ConstructionError> {
    const F: &str = "extremal_tree";
    require(F, n >= 4, || format!("n must be at least 4, got {n}"))?;
    if n > MAX_VERTICES {
        return Err(ConstructionError::TooLarge { family: F, n });
    }
    let claws = (n + 1) / 5;
    let extra = (n + 1) % 5;
    let mut edges = Vec::new();
    let mut detectors = VertexSet::EMPTY;
    let mut next = 0;
    let mut prev_tail: Option<usize> = None;
    for _ in 0..claws {
        let (c, l1, l2, l3) = (next, next + 1, next + 2, next + 3);
        next += 4;
        edges.extend([(c, l1), (c, l2), (c, l3)]);
        detectors |= VertexSet::full(next) - VertexSet::full(c);
        if let Some(tail) = prev_tail {
            let link = next;
            next += 1;
            edges.extend([(tail, link), (link, l1)]);
        }
        prev_tail = Some(l3);
    }
    for _ in 0..extra {
        edges.push((0, next));
        detectors.insert(next);
        next += 1;
    }
    assert_eq!(next, n);
    let g = Graph::new(n, &edges).expect("claw chain is a tree");
    assert!(g.is_tree());
    Ok(ConstructedInstance::new(
        format!("extremal_tree({n})"),
        g,
        detectors,
        Certificate::BoundMatches("tree".into()),
    ))
}

/// Six-cycle `a b c d e f` with chords `b-f` and `c-e`; `a` and `d` (vertices
/// 0 and 3) each have one loose edge.
pub fn dense_cubic_gadget() -> Graph {
    Graph::new(
        6,
        &[
            (0, 1),
            (1, 2),
            (2, 3),
            (3, 4),
            (4, 5),
            (5, 0),
            (1, 5),
            (2, 4),
        ],
    )
    .expect("gadget is simple")
}

/// `t ≥ 2` gadgets in a ring, `d` of each joined to `a` of the next: a cubic
/// graph on `6t` vertices needing every vertex.
pub fn dense_cubic_ring(t: usize) -> Result<ConstructedInstance, ConstructionError> {
    const F: &str = "dense_cubic_ring";
    require(F, t >= 2, || format!("t must be at least 2, got {t}"))?;
    if 6 * t > MAX_VERTICES {
        return Err(ConstructionError::TooLarge {
            family: F,
            n: 6 * t,
        });
    }
    let gadget = dense_cubic_gadget();
    let mut edges = Vec::new();
    for i in 0..t {
        let off = 6 * i;
        edges.extend(gadget.edges().map(|(u, v)| (u + off, v + off)));
        edges.push((off + 3, 6 * ((i + 1) % t)));
    }
    let g = Graph::new(6 * t, &edges).expect("ring is simple");
    assert!(g.is_cubic());
    let all = g.vertices();
    Ok(ConstructedInstance::new(
        format!("dense_cubic_ring({t})"),
        g,
        all,
        Certificate::SolverRequired,
    ))
}

/// A 14-vertex gadget with four degree-2 ports and an internal 8-detector
/// RED:IC that does not rely on anything outside the gadget.
#[derive(Debug, Clone)]
pub struct SparseCubicGadget {
    pub graph: Graph,
    pub detectors: VertexSet,
    /// Degree-2 vertices, in wiring order.
    pub ports: [usize; 4],
}

/// Searches gadgets built from two claws (vertices `0..4` and `4..8`, centres
/// 0 and 4, all detectors) and six non-detectors `8..14`. Each non-detector
/// is joined to two claw leaves so that every leaf gets two such neighbours;
/// one extra edge joins two non-detectors and the other four become ports.
/// A candidate is accepted when it is connected and the claws form a RED:IC
/// of the gadget on their own. Returns `None` if `budget` runs out first.
pub fn sparse_cubic_gadget_search(budget: Budget) -> Option<SparseCubicGadget> {
    let start = Instant::now();
    let leaves = [1, 2, 3, 5, 6, 7];
    let pairs: Vec<(usize, usize)> = (0..6)
        .flat_map(|i| (i + 1..6).map(move |j| (leaves[i], leaves[j])))
        .collect();
    let mut choice: Vec<usize> = Vec::with_capacity(6);
    let mut load = [0usize; 8];
    let mut nodes = 0u64;
    search_sparse(&pairs, &mut choice, &mut load, &mut nodes, start, budget)
}

fn sparse_from(
    pairs: &[(usize, usize)],
    choice: &[usize],
    link: (usize, usize),
) -> Option<SparseCubicGadget> {
    let mut edges = vec![(0, 1), (0, 2), (0, 3), (4, 5), (4, 6), (4, 7)];
    for (i, &c) in choice.iter().enumerate() {
        let (a, b) = pairs[c];
        edges.push((a, 8 + i));
        edges.push((b, 8 + i));
    }
    edges.push((8 + link.0, 8 + link.1));
    let graph = Graph::new(14, &edges).ok()?;
    let detectors = VertexSet::full(8);
    if !graph.is_connected() || verify(&graph, detectors, CodeKind::RedIc).is_err() {
        return None;
    }
    let ports: Vec<usize> = (8..14).filter(|&v| graph.degree(v) == 2).collect();
    Some(SparseCubicGadget {
        graph,
        detectors,
        ports: ports.try_into().ok()?,
    })
}

fn search_sparse(
    pairs: &[(usize, usize)],
    choice: &mut Vec<usize>,
    load: &mut [usize; 8],
    nodes: &mut u64,
    start: Instant,
    budget: Budget,
) -> Option<SparseCubicGadget> {
    *nodes += 1;
    if budget.nodes.is_some_and(|m| *nodes > m) || budget.time.is_some_and(|t| start.elapsed() > t)
    {
        return None;
    }
    if choice.len() == 6 {
        for a in 0..6 {
            for b in a + 1..6 {
                if let Some(found) = sparse_from(pairs, choice, (a, b)) {
                    return Some(found);
                }
            }
        }
        return None;
    }
    // Increasing pair indices: non-detectors are interchangeable.
    let from = choice.last().map_or(0, |&c| c + 1);
    for c in from..pairs.len() {
        let (a, b) = pairs[c];
        if load[a] == 2 || load[b] == 2 {
            continue;
        }
        load[a] += 1;
        load[b] += 1;
        choice.push(c);
        let found = search_sparse(pairs, choice, load, nodes, start, budget);
        choice.pop();
        load[a] -= 1;
        load[b] -= 1;
        if found.is_some() {
            return found;
        }
    }
    None
}

/// `t ≥ 2` copies in a ring: ports 3 and 4 of each copy are joined to ports
/// 1 and 2 of the next. The result is cubic on `14t` vertices with an
/// `8t`-detector witness, which meets the cubic bound `⌈4n/7⌉`.
pub fn sparse_cubic_ring(
    gadget: &SparseCubicGadget,
    t: usize,
) -> Result<ConstructedInstance, ConstructionError> {
    const F: &str = "sparse_cubic_ring";
    require(F, t >= 2, || format!("t must be at least 2, got {t}"))?;
    if 14 * t > MAX_VERTICES {
        return Err(ConstructionError::TooLarge {
            family: F,
            n: 14 * t,
        });
    }
    let mut edges = Vec::new();
    let mut witness = VertexSet::EMPTY;
    let [p1, p2, p3, p4] = gadget.ports;
    for i in 0..t {
        let off = 14 * i;
        let next = 14 * ((i + 1) % t);
        edges.extend(gadget.graph.edges().map(|(u, v)| (u + off, v + off)));
        edges.push((off + p3, next + p1));
        edges.push((off + p4, next + p2));
        witness |= VertexSet::from_bits(gadget.detectors.bits() << off);
    }
    let g = Graph::new(14 * t, &edges).expect("ring is simple");
    assert!(g.is_cubic());
    Ok(ConstructedInstance::new(
        format!("sparse_cubic_ring({t})"),
        g,
        witness,
        Certificate::BoundMatches("cubic".into()),
    ))
}

/// A 12-detector RED:IC of `Q_5` found by exact search.
pub fn q5_code_search(budget: Budget) -> Result<ConstructedInstance, ConstructionError> {
    let q5 = Graph::hypercube(5).expect("Q5");
    let opts = SolveOptions {
        budget,
        ..SolveOptions::default()
    };
    match feasible_at(&q5, CodeKind::RedIc, 12, &opts).0 {
        Feasibility::Witness(w) => Ok(ConstructedInstance::new(
            "q5_code".into(),
            q5,
            w,
            Certificate::SolverRequired,
        )),
        _ => Err(ConstructionError::NotFound { k: 12 }),
    }
}

/// Copies a witness on `Q_d` into both layers of `Q_{d+1}` (vertex `v` and
/// `v + 2^d`), which keeps the density.
pub fn double_hypercube_witness(
    dim: usize,
    witness: VertexSet,
) -> Result<ConstructedInstance, ConstructionError> {
    const F: &str = "double_hypercube_witness";
    require(F, (1..=6).contains(&dim), || {
        format!("dim must be in 1..=6, got {dim}")
    })?;
    require(F, witness.span() <= 1 << dim, || {
        "witness exceeds the cube".into()
    })?;
    let g = Graph::hypercube(dim + 1).expect("hypercube");
    let doubled = witness | VertexSet::from_bits(witness.bits() << (1 << dim));
    Ok(ConstructedInstance::new(
        format!("doubled_q{}", dim + 1),
        g,
        doubled,
        Certificate::SolverRequired,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn star_orders() {
        assert_eq!(star_extremal_even(4).unwrap().graph.order(), 7);
        assert_eq!(star_extremal_even(6).unwrap().graph.order(), 31);
        assert_eq!(star_extremal_even(8).unwrap().graph.order(), 127);
        assert_eq!(star_extremal_odd(5).unwrap().graph.order(), 11);
        assert_eq!(cycle_extremal_odd(5).unwrap().graph.order(), 11);
        assert_eq!(cycle_extremal_odd(7).unwrap().graph.order(), 57);
        assert!(star_extremal_even(5).is_err());
        assert!(cycle_extremal_odd(6).is_err());
    }

    #[test]
    fn trees_meet_bound() {
        for n in 4..=40 {
            let t = extremal_tree(n).unwrap();
            assert_eq!(t.claimed_k, (4 * (n + 1)).div_ceil(5), "n = {n}");
        }
    }

    #[test]
    fn rings() {
        assert_eq!(dense_cubic_ring(2).unwrap().graph.order(), 12);
        let g = sparse_cubic_gadget_search(Budget::UNLIMITED).expect("gadget");
        let ring = sparse_cubic_ring(&g, 2).unwrap();
        assert_eq!((ring.graph.order(), ring.claimed_k), (28, 16));
    }

    #[test]
    fn hypercube_doubling() {
        let q5 = q5_code_search(Budget::UNLIMITED).unwrap();
        assert_eq!(q5.claimed_k, 12);
        let q6 = double_hypercube_witness(5, q5.witness).unwrap();
        assert_eq!((q6.graph.order(), q6.claimed_k), (64, 24));
    }
}
