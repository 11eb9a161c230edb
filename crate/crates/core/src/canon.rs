//! Canonical labelling by partition refinement and individualization.
//!
//! Two graphs are isomorphic iff their [`CanonicalForm`]s are equal. The
//! search explores every leaf of the individualization tree and keeps the
//! lexicographically largest relabelled adjacency, which is exact but only
//! practical for the small sparse graphs the enumerators produce.

use crate::graph::Graph;
use crate::vertex_set::VertexSet;

/// Relabelled adjacency rows; equal for isomorphic graphs only.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm(Vec<VertexSet>);

impl CanonicalForm {
    pub fn order(&self) -> usize {
        self.0.len()
    }

    /// The canonical representative.
    pub fn to_graph(&self) -> Graph {
        Graph::from_adjacency(self.0.clone()).expect("canonical rows are a valid adjacency")
    }
}

/// Ordered partition of the vertex set; `cells[i]` is cell `i`.
#[derive(Clone)]
struct Partition {
    cells: Vec<Vec<usize>>,
}

impl Partition {
    fn is_discrete(&self, n: usize) -> bool {
        self.cells.len() == n
    }

    fn cell_of(&self, n: usize) -> Vec<usize> {
        let mut of = vec![0; n];
        for (i, cell) in self.cells.iter().enumerate() {
            for &v in cell {
                of[v] = i;
            }
        }
        of
    }

    /// Splits cells by neighbour counts into every cell until stable. Cells
    /// are split in place, pieces ordered by their count signature, so the
    /// result depends only on the isomorphism class of (graph, partition).
    fn refine(&mut self, g: &Graph) {
        let n = g.order();
        loop {
            let of = self.cell_of(n);
            let k = self.cells.len();
            let mut next = Vec::with_capacity(n);
            for cell in &self.cells {
                if cell.len() == 1 {
                    next.push(cell.clone());
                    continue;
                }
                let mut keyed: Vec<(Vec<u8>, usize)> = cell
                    .iter()
                    .map(|&v| {
                        let mut counts = vec![0u8; k];
                        for u in g.neighbors(v) {
                            counts[of[u]] += 1;
                        }
                        (counts, v)
                    })
                    .collect();
                keyed.sort();
                let mut start = 0;
                for i in 1..=keyed.len() {
                    if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                        next.push(keyed[start..i].iter().map(|&(_, v)| v).collect());
                        start = i;
                    }
                }
            }
            let stable = next.len() == k;
            self.cells = next;
            if stable {
                return;
            }
        }
    }

    fn individualize(&self, cell: usize, v: usize) -> Partition {
        let mut cells = Vec::with_capacity(self.cells.len() + 1);
        cells.extend_from_slice(&self.cells[..cell]);
        cells.push(vec![v]);
        cells.push(
            self.cells[cell]
                .iter()
                .copied()
                .filter(|&u| u != v)
                .collect(),
        );
        cells.extend_from_slice(&self.cells[cell + 1..]);
        Partition { cells }
    }
}

fn leaf_form(g: &Graph, p: &Partition) -> (Vec<VertexSet>, Vec<usize>) {
    let n = g.order();
    let pos = p.cell_of(n);
    let mut rows = vec![VertexSet::EMPTY; n];
    for v in 0..n {
        rows[pos[v]] = g.neighbors(v).iter().map(|u| pos[u]).collect();
    }
    (rows, pos)
}

struct Search<'a> {
    g: &'a Graph,
    best: Option<(Vec<VertexSet>, Vec<usize>)>,
    /// Automorphisms found so far, as vertex maps.
    autos: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn descend(&mut self, mut p: Partition, fixed: &mut Vec<usize>) {
        p.refine(self.g);
        let n = self.g.order();
        if p.is_discrete(n) {
            let (rows, pos) = leaf_form(self.g, &p);
            match &self.best {
                Some((b, bpos)) if rows == *b => {
                    let mut inv = vec![0; n];
                    for (v, &q) in bpos.iter().enumerate() {
                        inv[q] = v;
                    }
                    self.autos.push(pos.iter().map(|&q| inv[q]).collect());
                }
                Some((b, _)) if rows < *b => {}
                _ => self.best = Some((rows, pos)),
            }
            return;
        }
        let target = p
            .cells
            .iter()
            .position(|c| c.len() > 1)
            .expect("non-discrete partition has a non-singleton cell");
        let mut explored: Vec<usize> = Vec::new();
        let mut orbit: Vec<usize> = Vec::new();
        let mut seen_autos = usize::MAX;
        for &v in &p.cells[target] {
            if !explored.is_empty() {
                if seen_autos != self.autos.len() {
                    orbit = self.orbit_ids(fixed);
                    seen_autos = self.autos.len();
                }
                if explored.iter().any(|&u| orbit[u] == orbit[v]) {
                    continue;
                }
            }
            fixed.push(v);
            self.descend(p.individualize(target, v), fixed);
            fixed.pop();
            explored.push(v);
        }
    }

    /// Orbit representatives under the automorphisms fixing `fixed` pointwise.
    fn orbit_ids(&self, fixed: &[usize]) -> Vec<usize> {
        let n = self.g.order();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for a in self
            .autos
            .iter()
            .filter(|a| fixed.iter().all(|&f| a[f] == f))
        {
            for (v, &w) in a.iter().enumerate() {
                let (rv, rw) = (find(&mut parent, v), find(&mut parent, w));
                if rv != rw {
                    parent[rv.max(rw)] = rv.min(rw);
                }
            }
        }
        (0..n).map(|v| find(&mut parent, v)).collect()
    }
}

/// Canonical form plus the labelling `v -> position` that produces it.
pub fn canonical_labeling(g: &Graph) -> (CanonicalForm, Vec<usize>) {
    let n = g.order();
    if n == 0 {
        return (CanonicalForm(Vec::new()), Vec::new());
    }
    let mut by_degree: Vec<usize> = (0..n).collect();
    by_degree.sort_by_key(|&v| (g.degree(v), v));
    let mut cells: Vec<Vec<usize>> = Vec::new();
    for v in by_degree {
        match cells.last_mut() {
            Some(c) if g.degree(c[0]) == g.degree(v) => c.push(v),
            _ => cells.push(vec![v]),
        }
    }
    let mut search = Search {
        g,
        best: None,
        autos: Vec::new(),
    };
    search.descend(Partition { cells }, &mut Vec::new());
    let (rows, pos) = search.best.expect("search reaches at least one leaf");
    (CanonicalForm(rows), pos)
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    canonical_labeling(g).0
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    a.order() == b.order()
        && a.edge_count() == b.edge_count()
        && canonical_form(a) == canonical_form(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labelling_reproduces_form() {
        let g = Graph::new(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (1, 5)]).unwrap();
        let (form, pos) = canonical_labeling(&g);
        assert_eq!(g.relabel(&pos), form.to_graph());
    }

    #[test]
    fn separates_small_cubic_graphs() {
        let k33 = Graph::complete_multipartite(&[3, 3]).unwrap();
        let prism = Graph::cycle(3)
            .unwrap()
            .cartesian_product(&Graph::path(2).unwrap())
            .unwrap();
        assert!(!is_isomorphic(&k33, &prism));
        let shuffled = prism.relabel(&[4, 2, 0, 5, 1, 3]);
        assert!(is_isomorphic(&prism, &shuffled));
    }

    #[test]
    fn large_automorphism_groups_stay_cheap() {
        let star = Graph::star(40).unwrap();
        let moved = star.relabel(&(0..41).map(|v| (v + 7) % 41).collect::<Vec<_>>());
        assert!(is_isomorphic(&star, &moved));
        let q6 = Graph::hypercube(6).unwrap();
        assert_eq!(canonical_form(&q6).order(), 64);
    }
}
