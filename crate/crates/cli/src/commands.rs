//! One function per subcommand. Each returns the exit code, text output and
//! JSON report instead of printing, so the binary stays a thin shell.

use std::path::Path;
use std::time::Instant;

use redic_core::constructions::{
    cycle_extremal_odd, dense_cubic_ring, double_hypercube_witness, extremal_tree,
    multipartite_exact, q5_code_search, sparse_cubic_gadget_search, sparse_cubic_ring,
    star_extremal_even, star_extremal_odd, ConstructedInstance, ConstructionError,
};
use redic_core::existence::{exists, Existence};
use redic_core::formats::write_graph6;
use redic_core::reduction::{
    build_reduction, find_clause_gadget, parse_dimacs, verify_reduction, GadgetSpec,
};
use redic_core::solver::{lower_bound, solve_min, Budget, Outcome, SolveOptions, SolveStats};
use redic_core::{verify, CodeKind};
use serde_json::json;

use crate::input::{parse_vertex_list, read_source, sha256_hex, CliError, LoadedGraph};
use crate::report::{format_witness, CommandOutput, Report};
use crate::tables::{self, render_table1, render_table2, summarize, RowStatus, TableOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

pub fn cmd_verify(
    input: &LoadedGraph,
    detectors: &str,
    kind: CodeKind,
) -> Result<CommandOutput, CliError> {
    let g = &input.graph;
    let s = parse_vertex_list(detectors, g.order())?;
    let base = Report::new("verify", input.digest.clone(), "").with_witness(s);
    Ok(match verify(g, s, kind) {
        Ok(()) => CommandOutput {
            code: EXIT_OK,
            text: format!("pass: {} detectors form a {kind}", s.len()),
            report: Report {
                outcome: "pass".into(),
                ..base
            },
        },
        Err(v) => CommandOutput {
            code: EXIT_FAIL,
            text: format!("fail: {v}"),
            report: Report {
                outcome: "fail".into(),
                details: Some(json!({ "violation": v })),
                ..base
            },
        },
    })
}

pub fn cmd_solve(input: &LoadedGraph, kind: CodeKind, opts: &SolveOptions) -> CommandOutput {
    let g = &input.graph;
    let result = solve_min(g, kind, opts);
    let bounds = lower_bound(g, kind);
    let mut report = Report::new("solve", input.digest.clone(), "");
    report.stats = Some(result.stats);
    let mut bounds_json = serde_json::to_value(&bounds).expect("bounds serialize");
    let n = g.order();
    let (code, text) = match &result.outcome {
        Outcome::Optimal { k, witness } => {
            report = Report {
                outcome: "optimal".into(),
                ..report
            }
            .with_witness(*witness);
            (
                EXIT_OK,
                format!(
                    "optimal {kind}: k = {k} of n = {n} (density {:.4})\nwitness: {}",
                    *k as f64 / n as f64,
                    format_witness(*witness)
                ),
            )
        }
        Outcome::Bounded {
            lower,
            upper,
            witness,
        } => {
            report.outcome = "bounded".into();
            bounds_json["lower"] = json!(lower);
            bounds_json["upper"] = json!(upper);
            let mut text =
                format!("bounded {kind}: optimum in {lower}..={upper} (budget exhausted)");
            if let Some(w) = witness {
                report = report.with_witness(*w);
                text.push_str(&format!("\nwitness: {}", format_witness(*w)));
            }
            (EXIT_OK, text)
        }
        Outcome::Infeasible(reason) => {
            report.outcome = "infeasible".into();
            report.details = Some(json!({ "reason": reason }));
            (EXIT_FAIL, format!("no {kind}: {reason}"))
        }
    };
    report.bounds = Some(bounds_json);
    CommandOutput { code, text, report }
}

pub fn cmd_exists(input: &LoadedGraph, kind: CodeKind) -> CommandOutput {
    let g = &input.graph;
    let start = Instant::now();
    let answer = exists(g, kind);
    let stats = SolveStats {
        nodes: 0,
        elapsed: start.elapsed(),
    };
    let graph6 = write_graph6(g);
    match answer {
        Existence::Yes => {
            // The whole vertex set is a code whenever any code exists.
            let mut report =
                Report::new("exists", input.digest.clone(), "yes").with_witness(g.vertices());
            report.stats = Some(stats);
            report.details = Some(json!({ "graph6": graph6, "certificate": "whole_vertex_set" }));
            CommandOutput {
                code: EXIT_OK,
                text: format!("yes: V(G) is a {kind}"),
                report,
            }
        }
        Existence::No(reason) => {
            let mut report = Report::new("exists", input.digest.clone(), "no");
            report.stats = Some(stats);
            report.details = Some(json!({ "graph6": graph6, "certificate": reason }));
            CommandOutput {
                code: EXIT_FAIL,
                text: format!("no: {reason}"),
                report,
            }
        }
    }
}

/// Families accepted by [`cmd_construct`].
pub const FAMILIES: [&str; 9] = [
    "star-even",
    "star-odd",
    "cycle-odd",
    "multipartite",
    "tree",
    "dense-ring",
    "sparse-ring",
    "q5",
    "q6",
];

fn build_family(
    family: &str,
    params: &[usize],
    budget: Budget,
) -> Result<ConstructedInstance, CliError> {
    let one = |name: &str| -> Result<usize, CliError> {
        match params {
            [p] => Ok(*p),
            _ => Err(CliError::Usage(format!(
                "{name} takes exactly one parameter"
            ))),
        }
    };
    let none = |name: &str| -> Result<(), CliError> {
        if params.is_empty() {
            Ok(())
        } else {
            Err(CliError::Usage(format!("{name} takes no parameters")))
        }
    };
    Ok(match family {
        "star-even" => star_extremal_even(one(family)?)?,
        "star-odd" => star_extremal_odd(one(family)?)?,
        "cycle-odd" => cycle_extremal_odd(one(family)?)?,
        "multipartite" => multipartite_exact(one(family)?)?,
        "tree" => extremal_tree(one(family)?)?,
        "dense-ring" => dense_cubic_ring(one(family)?)?,
        "sparse-ring" => {
            let t = one(family)?;
            let gadget = sparse_cubic_gadget_search(budget)
                .ok_or(ConstructionError::NotFound { k: 8 * t })?;
            sparse_cubic_ring(&gadget, t)?
        }
        "q5" => {
            none(family)?;
            q5_code_search(budget)?
        }
        "q6" => {
            none(family)?;
            let q5 = q5_code_search(budget)?;
            double_hypercube_witness(5, q5.witness)?
        }
        other => {
            return Err(CliError::Usage(format!(
                "unknown family {other:?} (expected one of {})",
                FAMILIES.join(", ")
            )))
        }
    })
}

pub fn cmd_construct(
    family: &str,
    params: &[usize],
    budget: Budget,
) -> Result<CommandOutput, CliError> {
    let start = Instant::now();
    let spec = format!(
        "{family}:{}",
        params
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join(",")
    );
    let inst = build_family(family, params, budget)?;
    let graph6 = write_graph6(&inst.graph);
    let mut report = Report::new("construct", sha256_hex(spec.as_bytes()), "constructed")
        .with_witness(inst.witness);
    report.bounds = Some(
        serde_json::to_value(lower_bound(&inst.graph, CodeKind::RedIc)).expect("bounds serialize"),
    );
    report.stats = Some(SolveStats {
        nodes: 0,
        elapsed: start.elapsed(),
    });
    report.details = Some(json!({
        "name": inst.name,
        "vertices": inst.graph.order(),
        "graph6": graph6,
        "certificate": inst.certificate,
    }));
    let text = format!(
        "{}: n = {}, k = {} (density {:.4})\ngraph6: {graph6}\nwitness: {}\ncertificate: {}",
        inst.name,
        inst.graph.order(),
        inst.claimed_k,
        inst.density(),
        format_witness(inst.witness),
        serde_json::to_string(&inst.certificate).expect("certificate serializes"),
    );
    Ok(CommandOutput {
        code: EXIT_OK,
        text,
        report,
    })
}

/// Builds the reduction graph of a DIMACS formula. With `check`, also solves
/// it and compares the optimum against brute-force satisfiability.
pub fn cmd_reduce(path: &Path, check: Option<Budget>) -> Result<CommandOutput, CliError> {
    let start = Instant::now();
    let bytes = read_source(path)?;
    let phi = parse_dimacs(&String::from_utf8_lossy(&bytes))?;
    let f = GadgetSpec::stored_variable_gadget();
    let h = find_clause_gadget();
    let red = build_reduction(&phi, &f, &h)?;
    let graph6 = write_graph6(&red.graph);
    let mut report = Report::new("reduce", sha256_hex(&bytes), "reduced");
    report.k = Some(red.k);
    let mut details = json!({ "graph6": graph6, "sidecar": red.sidecar() });
    let mut text = format!(
        "reduction: n = {}, edges = {}, K = {}\ngraph6: {graph6}",
        red.graph.order(),
        red.graph.edge_count(),
        red.k
    );
    let mut code = EXIT_OK;
    if let Some(budget) = check {
        let rep = verify_reduction(&phi, &f, &h, budget)?;
        report.outcome = match rep.holds {
            Some(true) => "holds",
            Some(false) => {
                code = EXIT_FAIL;
                "violated"
            }
            None => "undecided",
        }
        .into();
        text.push_str(&format!(
            "\nsatisfiable: {}, optimum: {}, check: {}",
            rep.satisfiable,
            rep.optimum.map_or("unknown".to_string(), |k| k.to_string()),
            report.outcome
        ));
        details["certificate"] = serde_json::to_value(&rep).expect("report serializes");
    }
    report.details = Some(details);
    report.stats = Some(SolveStats {
        nodes: 0,
        elapsed: start.elapsed(),
    });
    text.push_str(&format!(
        "\nsidecar: {}",
        report.details.as_ref().unwrap()["sidecar"]
    ));
    Ok(CommandOutput { code, text, report })
}

fn status_code(status: RowStatus) -> i32 {
    if status == RowStatus::Fail {
        EXIT_FAIL
    } else {
        EXIT_OK
    }
}

pub fn cmd_table1(max_n: usize, opts: &TableOptions) -> Result<CommandOutput, CliError> {
    let start = Instant::now();
    let rows = tables::table1(max_n, opts)?;
    let status = summarize(rows.iter().map(|r| r.status));
    let mut report = Report::new(
        "table1",
        sha256_hex(format!("table1:{max_n}").as_bytes()),
        format!("{status:?}").to_lowercase(),
    );
    report.stats = Some(SolveStats {
        nodes: rows.iter().map(|r| r.nodes).sum(),
        elapsed: start.elapsed(),
    });
    report.details = Some(json!({ "rows": rows }));
    Ok(CommandOutput {
        code: status_code(status),
        text: render_table1(&rows),
        report,
    })
}

pub fn cmd_table2(
    max_n: usize,
    corpus: &[(usize, Vec<redic_core::Graph>)],
    opts: &TableOptions,
) -> Result<CommandOutput, CliError> {
    let start = Instant::now();
    let rows = tables::table2(max_n, corpus, opts)?;
    let status = summarize(rows.iter().map(|r| r.status));
    let mut report = Report::new(
        "table2",
        sha256_hex(format!("table2:{max_n}").as_bytes()),
        format!("{status:?}").to_lowercase(),
    );
    report.stats = Some(SolveStats {
        nodes: rows.iter().map(|r| r.nodes).sum(),
        elapsed: start.elapsed(),
    });
    report.details = Some(json!({ "rows": rows }));
    Ok(CommandOutput {
        code: status_code(status),
        text: render_table2(&rows),
        report,
    })
}
