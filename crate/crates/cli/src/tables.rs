//! Table harnesses: minimum RED:IC statistics over all trees and all
//! connected cubic graphs of each order, diffed against reference values.

use std::fmt::Write as _;

use rayon::prelude::*;
use redic_core::existence::{exists_red_ic, exists_red_ic_tree};
use redic_core::generators::{enum_cubic_levels, enum_trees};
use redic_core::solver::{solve_min, Budget, Outcome, SolveOptions};
use redic_core::{CodeKind, Graph};
use serde::Serialize;

use crate::input::CliError;

/// Reference tree statistics for `n = 4..=17`:
/// `[trees, with RED:IC, optimum n-2, optimum n-1, optimum n]`.
pub const TABLE1: [(usize, [usize; 5]); 14] = [
    (4, [2, 1, 0, 0, 1]),
    (5, [3, 1, 0, 0, 1]),
    (6, [6, 2, 0, 0, 2]),
    (7, [11, 3, 0, 0, 3]),
    (8, [23, 6, 0, 0, 6]),
    (9, [47, 10, 0, 3, 7]),
    (10, [106, 21, 0, 4, 17]),
    (11, [235, 39, 0, 10, 29]),
    (12, [551, 82, 0, 24, 58]),
    (13, [1301, 167, 0, 64, 103]),
    (14, [3159, 360, 13, 130, 217]),
    (15, [7741, 766, 29, 323, 414]),
    (16, [19320, 1692, 96, 744, 852]),
    (17, [48629, 3726, 287, 1731, 1708]),
];

/// Reference cubic statistics for even `n = 6..=20`:
/// `[graphs, with RED:IC, lowest optimum, highest optimum]`.
pub const TABLE2: [(usize, [usize; 4]); 8] = [
    (6, [2, 2, 6, 6]),
    (8, [5, 4, 6, 6]),
    (10, [19, 14, 6, 8]),
    (12, [85, 63, 8, 12]),
    (14, [509, 386, 8, 12]),
    (16, [4060, 3189, 10, 14]),
    (18, [41301, 33586, 11, 18]),
    (20, [510489, 427277, 12, 18]),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RowStatus {
    Pass,
    Fail,
    /// Some solve ran out of budget.
    Partial,
    NoReference,
}

impl RowStatus {
    fn label(self) -> &'static str {
        match self {
            RowStatus::Pass => "PASS",
            RowStatus::Fail => "FAIL",
            RowStatus::Partial => "partial",
            RowStatus::NoReference => "-",
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct TableOptions {
    /// Per-graph solver budget.
    pub budget: Budget,
    /// Worker count; 0 uses the rayon default.
    pub threads: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Table1Row {
    pub n: usize,
    pub trees: usize,
    pub with_code: usize,
    pub at_n_minus_2: usize,
    pub at_n_minus_1: usize,
    pub at_n: usize,
    /// Trees whose solve ran out of budget.
    pub unsolved: usize,
    pub nodes: u64,
    pub status: RowStatus,
}

impl Table1Row {
    pub fn values(&self) -> [usize; 5] {
        [
            self.trees,
            self.with_code,
            self.at_n_minus_2,
            self.at_n_minus_1,
            self.at_n,
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Table2Row {
    pub n: usize,
    pub graphs: usize,
    pub with_code: usize,
    pub lowest: Option<usize>,
    pub highest: Option<usize>,
    /// `⌈4n/7⌉`, the lower bound for cubic graphs.
    pub cubic_bound: usize,
    pub unsolved: usize,
    pub nodes: u64,
    pub status: RowStatus,
}

/// Minimum RED:IC of each graph: `None` when none exists, `Err(())` when the
/// budget ran out. Results keep the input order.
fn optima(
    graphs: &[Graph],
    budget: Budget,
    exists: impl Fn(&Graph) -> bool + Sync,
) -> Vec<(Option<Result<usize, ()>>, u64)> {
    let opts = SolveOptions {
        budget,
        deterministic: true,
        threads: 1,
    };
    graphs
        .par_iter()
        .map(|g| {
            if !exists(g) {
                return (None, 0);
            }
            let out = solve_min(g, CodeKind::RedIc, &opts);
            let value = match out.outcome {
                Outcome::Optimal { k, .. } => Ok(k),
                Outcome::Bounded { .. } => Err(()),
                Outcome::Infeasible(r) => panic!("existence test passed but solver found {r}"),
            };
            (Some(value), out.stats.nodes)
        })
        .collect()
}

fn in_pool<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("thread pool")
        .install(f)
}

pub fn table1_row(n: usize, budget: Budget) -> Result<Table1Row, CliError> {
    let trees: Vec<Graph> = enum_trees(n)
        .map_err(|e| CliError::Usage(e.to_string()))?
        .collect();
    let results = optima(&trees, budget, |g| {
        exists_red_ic_tree(g)
            .expect("enumerated graphs are trees")
            .is_yes()
    });
    let mut row = Table1Row {
        n,
        trees: trees.len(),
        with_code: 0,
        at_n_minus_2: 0,
        at_n_minus_1: 0,
        at_n: 0,
        unsolved: 0,
        nodes: 0,
        status: RowStatus::NoReference,
    };
    for (r, nodes) in results {
        row.nodes += nodes;
        match r {
            None => {}
            Some(Err(())) => {
                row.with_code += 1;
                row.unsolved += 1;
            }
            Some(Ok(k)) => {
                row.with_code += 1;
                match n - k {
                    2 => row.at_n_minus_2 += 1,
                    1 => row.at_n_minus_1 += 1,
                    0 => row.at_n += 1,
                    _ => {}
                }
            }
        }
    }
    row.status = match TABLE1.iter().find(|(m, _)| *m == n) {
        _ if row.unsolved > 0 => RowStatus::Partial,
        None => RowStatus::NoReference,
        Some((_, want)) if *want == row.values() => RowStatus::Pass,
        Some(_) => RowStatus::Fail,
    };
    Ok(row)
}

/// Rows for `n = 4..=max_n`.
pub fn table1(max_n: usize, opts: &TableOptions) -> Result<Vec<Table1Row>, CliError> {
    if max_n < 4 {
        return Err(CliError::Usage(format!(
            "table1 needs max n >= 4, got {max_n}"
        )));
    }
    in_pool(opts.threads, || {
        (4..=max_n).map(|n| table1_row(n, opts.budget)).collect()
    })
}

pub fn table2_row(n: usize, graphs: &[Graph], budget: Budget) -> Table2Row {
    let results = optima(graphs, budget, |g| exists_red_ic(g).is_yes());
    let mut row = Table2Row {
        n,
        graphs: graphs.len(),
        with_code: 0,
        lowest: None,
        highest: None,
        cubic_bound: (4 * n).div_ceil(7),
        unsolved: 0,
        nodes: 0,
        status: RowStatus::NoReference,
    };
    for (r, nodes) in results {
        row.nodes += nodes;
        match r {
            None => {}
            Some(Err(())) => {
                row.with_code += 1;
                row.unsolved += 1;
            }
            Some(Ok(k)) => {
                row.with_code += 1;
                row.lowest = Some(row.lowest.map_or(k, |l| l.min(k)));
                row.highest = Some(row.highest.map_or(k, |h| h.max(k)));
            }
        }
    }
    row.status = match TABLE2.iter().find(|(m, _)| *m == n) {
        _ if row.unsolved > 0 => RowStatus::Partial,
        None => RowStatus::NoReference,
        Some((_, [c, w, lo, hi])) => {
            if (row.graphs, row.with_code, row.lowest, row.highest)
                == (*c, *w, Some(*lo), Some(*hi))
            {
                RowStatus::Pass
            } else {
                RowStatus::Fail
            }
        }
    };
    row
}

/// Rows for even `n = 6..=max_n`. Orders present in `corpus` (graphs
/// grouped by order, e.g. read from graph6 files) are taken from there
/// instead of being generated.
pub fn table2(
    max_n: usize,
    corpus: &[(usize, Vec<Graph>)],
    opts: &TableOptions,
) -> Result<Vec<Table2Row>, CliError> {
    if max_n < 6 {
        return Err(CliError::Usage(format!(
            "table2 needs max n >= 6, got {max_n}"
        )));
    }
    if let Some((n, g)) = corpus
        .iter()
        .flat_map(|(n, gs)| gs.iter().map(move |g| (n, g)))
        .find(|(n, g)| g.order() != **n || !g.is_cubic() || !g.is_connected())
    {
        return Err(CliError::Usage(format!(
            "corpus graph listed under n = {n} has order {} and is not a connected cubic graph of that order",
            g.order()
        )));
    }
    let generate_to = (6..=max_n)
        .step_by(2)
        .filter(|n| !corpus.iter().any(|(m, _)| m == n))
        .max()
        .unwrap_or(4);
    in_pool(opts.threads, || {
        let levels = enum_cubic_levels(generate_to).map_err(|e| CliError::Usage(e.to_string()))?;
        Ok((6..=max_n)
            .step_by(2)
            .map(|n| match corpus.iter().find(|(m, _)| *m == n) {
                Some((_, gs)) => table2_row(n, gs, opts.budget),
                None => table2_row(n, &levels[n / 2 - 2], opts.budget),
            })
            .collect())
    })
}

fn opt(v: Option<usize>) -> String {
    v.map_or_else(|| "-".to_string(), |x| x.to_string())
}

/// Tab-separated rows with the reference diff. No timings, so deterministic
/// runs print identical bytes.
pub fn render_table1(rows: &[Table1Row]) -> String {
    let mut out = String::from("n\ttrees\tred_ic\tat_n-2\tat_n-1\tat_n\tstatus\texpected\n");
    for r in rows {
        let expected = TABLE1
            .iter()
            .find(|(m, _)| *m == r.n)
            .map_or("-".to_string(), |(_, v)| {
                v.iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            });
        let _ = writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            r.n,
            r.trees,
            r.with_code,
            r.at_n_minus_2,
            r.at_n_minus_1,
            r.at_n,
            r.status.label(),
            expected
        );
    }
    out
}

pub fn render_table2(rows: &[Table2Row]) -> String {
    let mut out = String::from("n\tcubic\tred_ic\tlowest\thighest\tbound\tstatus\texpected\n");
    for r in rows {
        let expected = TABLE2
            .iter()
            .find(|(m, _)| *m == r.n)
            .map_or("-".to_string(), |(_, v)| {
                v.iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            });
        let _ = writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            r.n,
            r.graphs,
            r.with_code,
            opt(r.lowest),
            opt(r.highest),
            r.cubic_bound,
            r.status.label(),
            expected
        );
    }
    out
}

/// Overall verdict: any mismatch fails, otherwise any budget miss is partial.
pub fn summarize(statuses: impl IntoIterator<Item = RowStatus>) -> RowStatus {
    let mut worst = RowStatus::Pass;
    for s in statuses {
        match s {
            RowStatus::Fail => return RowStatus::Fail,
            RowStatus::Partial => worst = RowStatus::Partial,
            _ => {}
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_tree_rows() {
        let rows = table1(9, &TableOptions::default()).unwrap();
        assert!(rows.iter().all(|r| r.status == RowStatus::Pass), "{rows:?}");
        assert_eq!(rows[5].values(), [47, 10, 0, 3, 7]);
    }

    #[test]
    fn small_cubic_rows() {
        let rows = table2(10, &[], &TableOptions::default()).unwrap();
        assert_eq!(rows.len(), 3);
        assert!(rows.iter().all(|r| r.status == RowStatus::Pass), "{rows:?}");
        assert_eq!((rows[2].lowest, rows[2].highest), (Some(6), Some(8)));
    }

    #[test]
    fn budget_exhaustion_marks_partial() {
        let opts = TableOptions {
            budget: Budget {
                time: None,
                nodes: Some(0),
            },
            threads: 1,
        };
        let rows = table2(8, &[], &opts).unwrap();
        assert!(rows.iter().any(|r| r.status == RowStatus::Partial));
        assert_eq!(summarize(rows.iter().map(|r| r.status)), RowStatus::Partial);
    }

    #[test]
    fn corpus_must_match_its_order() {
        let wrong = vec![(6, vec![Graph::complete(4).unwrap()])];
        assert!(table2(6, &wrong, &TableOptions::default()).is_err());
    }
}
