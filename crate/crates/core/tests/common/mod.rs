//! Independent oracles and random instance generators shared by the
//! integration tests. Nothing here calls the library's checking code.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use redic_core::{CodeKind, Graph};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Erdős–Rényi graph.
pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for v in 1..n {
        for u in 0..v {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, &edges).unwrap()
}

/// Random tree by attaching each vertex to an earlier one.
pub fn random_tree(rng: &mut impl Rng, n: usize) -> Graph {
    let edges: Vec<_> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
    Graph::new(n, &edges).unwrap()
}

/// Random tree plus extra edges with probability `p`, relabelled randomly.
pub fn random_connected(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let mut edges: Vec<_> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
    for v in 1..n {
        for u in 0..v {
            if rng.gen_bool(p) && !edges.contains(&(u, v)) {
                edges.push((u, v));
            }
        }
    }
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    let edges: Vec<_> = edges.iter().map(|&(u, v)| (perm[u], perm[v])).collect();
    Graph::new(n, &edges).unwrap()
}

/// Random triangle-free graph: edges added in random order when they close
/// no triangle.
pub fn random_triangle_free(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let mut adj = vec![vec![false; n]; n];
    let mut edges = Vec::new();
    for v in 1..n {
        for u in 0..v {
            if rng.gen_bool(p) && !(0..n).any(|w| adj[u][w] && adj[v][w]) {
                adj[u][v] = true;
                adj[v][u] = true;
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, &edges).unwrap()
}

fn closed(g: &Graph, v: usize) -> Vec<bool> {
    (0..g.order()).map(|u| u == v || g.has_edge(u, v)).collect()
}

/// The definition read literally: every vertex dominated `d` times, every
/// pair (at any distance) separated by `d` detectors. `mask` bit `v` marks
/// a detector.
pub fn is_code_by_definition(g: &Graph, mask: u128, kind: CodeKind) -> bool {
    let n = g.order();
    let d = match kind {
        CodeKind::Ic => 1,
        CodeKind::RedIc => 2,
    };
    let det = |v: usize| mask >> v & 1 == 1;
    let views: Vec<Vec<bool>> = (0..n)
        .map(|v| {
            closed(g, v)
                .iter()
                .enumerate()
                .map(|(u, &c)| c && det(u))
                .collect()
        })
        .collect();
    let dominated = views.iter().all(|w| w.iter().filter(|&&b| b).count() >= d);
    dominated
        && (0..n).all(|u| {
            (u + 1..n).all(|v| (0..n).filter(|&x| views[u][x] != views[v][x]).count() >= d)
        })
}

/// Fault tolerance read literally: an IC that survives losing any one
/// detector.
pub fn is_robust_by_definition(g: &Graph, mask: u128) -> bool {
    is_code_by_definition(g, mask, CodeKind::Ic)
        && (0..g.order())
            .filter(|&x| mask >> x & 1 == 1)
            .all(|x| is_code_by_definition(g, mask & !(1u128 << x), CodeKind::Ic))
}

/// Size of a minimum code and every code of that size, by scanning all
/// subsets. `None` when no code exists.
pub fn exhaustive_minima(g: &Graph, kind: CodeKind) -> Option<(usize, Vec<u128>)> {
    let n = g.order();
    assert!(n <= 16, "exhaustive search is for tiny graphs");
    let mut best: Option<(usize, Vec<u128>)> = None;
    for mask in 0u128..(1 << n) {
        let k = mask.count_ones() as usize;
        if best.as_ref().is_some_and(|(b, _)| k > *b) {
            continue;
        }
        if is_code_by_definition(g, mask, kind) {
            match &mut best {
                Some((b, ws)) if *b == k => ws.push(mask),
                _ => best = Some((k, vec![mask])),
            }
        }
    }
    best
}

pub fn mask_of(s: redic_core::VertexSet) -> u128 {
    s.iter().fold(0, |m, v| m | 1 << v)
}

/// Canonical form by trying every permutation that keeps degrees sorted:
/// the lexicographically largest sorted edge list.
pub fn brute_canonical(g: &Graph) -> Vec<(usize, usize)> {
    let n = g.order();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| g.degree(v));
    // Group positions by degree; permute within each group.
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for &v in &order {
        match groups.last_mut() {
            Some(grp) if g.degree(grp[0]) == g.degree(v) => grp.push(v),
            _ => groups.push(vec![v]),
        }
    }
    let mut best: Option<Vec<(usize, usize)>> = None;
    let mut assignment = vec![0usize; n];
    fn permute(
        g: &Graph,
        groups: &[Vec<usize>],
        gi: usize,
        base: usize,
        assignment: &mut Vec<usize>,
        best: &mut Option<Vec<(usize, usize)>>,
    ) {
        if gi == groups.len() {
            let mut edges: Vec<(usize, usize)> = g
                .edges()
                .map(|(u, v)| {
                    let (a, b) = (assignment[u], assignment[v]);
                    (a.min(b), a.max(b))
                })
                .collect();
            edges.sort_unstable();
            if best.as_ref().is_none_or(|b| edges > *b) {
                *best = Some(edges);
            }
            return;
        }
        let group = &groups[gi];
        let mut idx: Vec<usize> = (0..group.len()).collect();
        loop {
            for (i, &slot) in idx.iter().enumerate() {
                assignment[group[i]] = base + slot;
            }
            permute(g, groups, gi + 1, base + group.len(), assignment, best);
            if !next_permutation(&mut idx) {
                break;
            }
        }
    }
    permute(g, &groups, 0, 0, &mut assignment, &mut best);
    best.unwrap_or_default()
}

fn next_permutation(a: &mut [usize]) -> bool {
    let Some(i) = (1..a.len()).rev().find(|&i| a[i - 1] < a[i]) else {
        return false;
    };
    let j = (i..a.len()).rev().find(|&j| a[j] > a[i - 1]).unwrap();
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}
