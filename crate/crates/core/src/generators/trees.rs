//! Free trees via level sequences, following Wright, Richmond, Odlyzko and
//! McKay's constant-time successor rule.

use super::GeneratorError;
use crate::graph::Graph;
use crate::vertex_set::MAX_VERTICES;

/// Iterator over one representative of each free tree on `n` vertices.
pub struct Trees {
    n: usize,
    layout: Option<Vec<usize>>,
    small: Option<Graph>,
}

pub fn enum_trees(n: usize) -> Result<Trees, GeneratorError> {
    if n == 0 {
        return Err(GeneratorError::Empty);
    }
    if n > MAX_VERTICES {
        return Err(GeneratorError::TooLarge(n));
    }
    if n < 4 {
        return Ok(Trees {
            n,
            layout: None,
            small: Some(Graph::path(n).expect("small path")),
        });
    }
    // Start from the path rooted at its centre.
    let layout = (0..=n / 2).chain(1..n.div_ceil(2)).collect();
    Ok(Trees {
        n,
        layout: Some(layout),
        small: None,
    })
}

impl Trees {
    pub fn order(&self) -> usize {
        self.n
    }
}

impl Iterator for Trees {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        if let Some(g) = self.small.take() {
            return Some(g);
        }
        let current = self.layout.take()?;
        let tree = next_tree(current)?;
        let graph = layout_to_graph(&tree);
        self.layout = next_rooted_tree(&tree, None);
        Some(graph)
    }
}

fn next_rooted_tree(pred: &[usize], p: Option<usize>) -> Option<Vec<usize>> {
    let p = match p {
        Some(p) => p,
        None => {
            let mut p = pred.len() - 1;
            while pred[p] == 1 {
                p -= 1;
            }
            p
        }
    };
    if p == 0 {
        return None;
    }
    let mut q = p - 1;
    while pred[q] != pred[p] - 1 {
        q -= 1;
    }
    let mut out = pred.to_vec();
    for i in p..out.len() {
        out[i] = out[i - p + q];
    }
    Some(out)
}

/// Returns the first layout at or after `candidate` that is a canonical free
/// tree (centre-rooted, larger subtree last), or `None` when exhausted.
fn next_tree(mut candidate: Vec<usize>) -> Option<Vec<usize>> {
    loop {
        let (left, rest) = split_tree(&candidate);
        let lh = *left.iter().max().unwrap_or(&0);
        let rh = *rest.iter().max().unwrap_or(&0);
        let mut valid = rh >= lh;
        if valid
            && rh == lh
            && (left.len() > rest.len() || (left.len() == rest.len() && left > rest))
        {
            valid = false;
        }
        if valid {
            return Some(candidate);
        }
        let p = left.len();
        let mut next = next_rooted_tree(&candidate, Some(p))?;
        if candidate[p] > 2 {
            let (new_left, _) = split_tree(&next);
            let h = *new_left.iter().max().unwrap_or(&0);
            let len = next.len();
            for (k, slot) in next[len - (h + 1)..].iter_mut().enumerate() {
                *slot = k + 1;
            }
        }
        candidate = next;
    }
}

/// Splits at the second depth-1 vertex: the first root subtree (depths
/// shifted down by one) and the root with everything else.
fn split_tree(layout: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let m = layout
        .iter()
        .enumerate()
        .filter(|&(_, &d)| d == 1)
        .nth(1)
        .map_or(layout.len(), |(i, _)| i);
    let left = layout[1..m].iter().map(|d| d - 1).collect();
    let rest = std::iter::once(0)
        .chain(layout[m..].iter().copied())
        .collect();
    (left, rest)
}

fn layout_to_graph(layout: &[usize]) -> Graph {
    let mut edges = Vec::with_capacity(layout.len() - 1);
    let mut stack: Vec<usize> = Vec::new();
    for (i, &level) in layout.iter().enumerate() {
        while let Some(&j) = stack.last() {
            if layout[j] >= level {
                stack.pop();
            } else {
                edges.push((j, i));
                break;
            }
        }
        stack.push(i);
    }
    Graph::new(layout.len(), &edges).expect("level sequence yields a tree")
}
