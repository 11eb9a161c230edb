//! Polynomial reduction from 3-SAT to the RED:IC decision problem.
//!
//! Each variable becomes an 8-vertex gadget holding its two literal vertices,
//! each clause a 3-vertex gadget whose port is joined to the clause's three
//! literals. The formula is satisfiable iff the graph has a RED:IC of size
//! `7N + 3M`.

mod cnf;
mod gadgets;

use serde::Serialize;
use serde_json::json;
use thiserror::Error;

use crate::detection::CodeKind;
use crate::graph::Graph;
use crate::solver::{solve_min, Budget, Outcome, SolveOptions};
use crate::vertex_set::{VertexSet, MAX_VERTICES};

pub use cnf::{brute_force_sat, parse_dimacs, CnfError, CnfFormula, Literal};
pub use gadgets::{
    find_clause_gadget, find_variable_gadget, variable_gadget_solutions, GadgetKind, GadgetSpec,
    VARIABLE_ROLES,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("formula has no clauses")]
    NoClauses,
    #[error("variable {0} occurs in no clause; its literals could never be told apart")]
    UnusedVariable(usize),
    #[error("reduction needs {0} vertices (maximum {MAX_VERTICES})")]
    TooLarge(usize),
    #[error("expected a {expected:?} gadget")]
    WrongGadget { expected: GadgetKind },
}

/// A reduction instance: the graph and the size bound `K`.
#[derive(Debug, Clone)]
pub struct Reduction {
    pub graph: Graph,
    pub k: usize,
    pub vars: usize,
    pub clauses: usize,
    /// Vertices forced by the gadgets: all but the literal vertices.
    pub gadget_forced: VertexSet,
}

impl Reduction {
    /// Vertex of literal `x_i` (`positive`) or its negation.
    pub fn literal_vertex(&self, var: usize, positive: bool) -> usize {
        8 * (var - 1) + if positive { 0 } else { 1 }
    }

    /// Role names by vertex, `K`, and the counts, as JSON.
    pub fn sidecar(&self) -> serde_json::Value {
        let labels = self.graph.labels().expect("reduction graphs are labelled");
        json!({
            "vertices": self.graph.order(),
            "edges": self.graph.edge_count(),
            "variables": self.vars,
            "clauses": self.clauses,
            "k": self.k,
            "roles": labels,
        })
    }
}

/// Builds the reduction graph. Variable gadget `i` (1-based) occupies
/// vertices `8(i-1)..8i` in role order; clause gadget `j` follows at
/// `8N + 3(j-1)`.
pub fn build_reduction(
    phi: &CnfFormula,
    f: &GadgetSpec,
    h: &GadgetSpec,
) -> Result<Reduction, ReductionError> {
    if f.kind != GadgetKind::Variable || f.graph.order() != 8 {
        return Err(ReductionError::WrongGadget {
            expected: GadgetKind::Variable,
        });
    }
    if h.kind != GadgetKind::Clause || h.graph.order() != 3 {
        return Err(ReductionError::WrongGadget {
            expected: GadgetKind::Clause,
        });
    }
    let (nv, mc) = (phi.vars(), phi.clauses().len());
    if mc == 0 {
        return Err(ReductionError::NoClauses);
    }
    for v in 1..=nv {
        if !phi.clauses().iter().flatten().any(|l| l.var == v) {
            return Err(ReductionError::UnusedVariable(v));
        }
    }
    let n = 8 * nv + 3 * mc;
    if n > MAX_VERTICES {
        return Err(ReductionError::TooLarge(n));
    }
    let mut edges = Vec::with_capacity(8 * nv + 5 * mc);
    let mut labels = Vec::with_capacity(n);
    let mut forced = VertexSet::EMPTY;
    for i in 0..nv {
        let off = 8 * i;
        edges.extend(f.graph.edges().map(|(a, b)| (a + off, b + off)));
        labels.extend(f.roles.iter().map(|r| format!("{r}{}", i + 1)));
        forced |= VertexSet::from_bits(f.forced.bits() << off);
    }
    let port = h.ports[0];
    for (j, clause) in phi.clauses().iter().enumerate() {
        let off = 8 * nv + 3 * j;
        edges.extend(h.graph.edges().map(|(a, b)| (a + off, b + off)));
        labels.extend(h.roles.iter().map(|r| format!("{r}{}", j + 1)));
        forced |= VertexSet::from_bits(h.forced.bits() << off);
        for l in clause {
            let lit = 8 * (l.var - 1) + if l.positive { f.ports[0] } else { f.ports[1] };
            edges.push((off + port, lit));
        }
    }
    let graph = Graph::new(n, &edges)
        .expect("reduction graph is simple")
        .with_labels(labels);
    assert_eq!(graph.order(), 8 * nv + 3 * mc);
    assert_eq!(graph.edge_count(), 8 * nv + 5 * mc);
    Ok(Reduction {
        graph,
        k: 7 * nv + 3 * mc,
        vars: nv,
        clauses: mc,
        gadget_forced: forced,
    })
}

/// Outcome of checking one formula end to end.
#[derive(Debug, Clone, Serialize)]
pub struct ReductionReport {
    pub vars: usize,
    pub clauses: usize,
    pub vertices: usize,
    pub edges: usize,
    pub k: usize,
    pub satisfiable: bool,
    /// Exact optimum when the search finished.
    pub optimum: Option<usize>,
    /// Bounds when it did not.
    pub lower: Option<usize>,
    pub upper: Option<usize>,
    /// `Some(true)` when the optimum is `K` exactly for satisfiable formulas
    /// and above `K` otherwise; `None` when the budget ran out first.
    pub holds: Option<bool>,
}

/// Solves the reduction of `phi` and compares against brute-force SAT.
pub fn verify_reduction(
    phi: &CnfFormula,
    f: &GadgetSpec,
    h: &GadgetSpec,
    budget: Budget,
) -> Result<ReductionReport, ReductionError> {
    let red = build_reduction(phi, f, h)?;
    let satisfiable = brute_force_sat(phi).expect("reduction formulas are small");
    let opts = SolveOptions {
        budget,
        ..SolveOptions::default()
    };
    let result = solve_min(&red.graph, CodeKind::RedIc, &opts);
    let mut report = ReductionReport {
        vars: red.vars,
        clauses: red.clauses,
        vertices: red.graph.order(),
        edges: red.graph.edge_count(),
        k: red.k,
        satisfiable,
        optimum: None,
        lower: None,
        upper: None,
        holds: None,
    };
    match result.outcome {
        Outcome::Optimal { k, .. } => {
            report.optimum = Some(k);
            report.holds = Some(if satisfiable { k == red.k } else { k > red.k });
        }
        Outcome::Bounded { lower, upper, .. } => {
            report.lower = Some(lower);
            report.upper = Some(upper);
            if !satisfiable && lower > red.k {
                report.holds = Some(true);
            } else if satisfiable && upper < red.k {
                report.holds = Some(false);
            }
        }
        Outcome::Infeasible(_) => report.holds = Some(false),
    }
    Ok(report)
}

/// All formulas over variables 1..=3 with 1 to `max_clauses` clauses, each
/// clause using all three variables, as multisets of the 8 sign patterns.
pub fn three_variable_formulas(max_clauses: usize) -> Vec<CnfFormula> {
    fn rec(start: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if left == 0 {
            return;
        }
        for s in start..8 {
            cur.push(s);
            rec(s, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut multisets = Vec::new();
    rec(0, max_clauses, &mut Vec::new(), &mut multisets);
    multisets
        .into_iter()
        .map(|ms| {
            let clauses: Vec<Vec<i64>> = ms
                .iter()
                .map(|&s| {
                    (1..=3)
                        .map(|v| if s >> (v - 1) & 1 == 1 { -v } else { v })
                        .collect()
                })
                .collect();
            CnfFormula::new(3, &clauses).expect("sign patterns are valid clauses")
        })
        .collect()
}
