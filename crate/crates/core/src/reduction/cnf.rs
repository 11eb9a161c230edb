//! 3-CNF formulas and DIMACS input.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CnfError {
    #[error("line {line}: {reason}")]
    Syntax { line: usize, reason: String },
    #[error("clause {clause} has {len} literals; exactly 3 are required")]
    NotThree { clause: usize, len: usize },
    #[error("clause {clause} repeats variable {var}")]
    RepeatedVariable { clause: usize, var: usize },
    #[error("clause {clause} uses variable {var} but only {vars} are declared")]
    OutOfRange {
        clause: usize,
        var: usize,
        vars: usize,
    },
    #[error("formula has no clauses")]
    Empty,
    #[error("header announces {announced} clauses, found {found}")]
    ClauseCount { announced: usize, found: usize },
    #[error("{0} variables is too many for exhaustive evaluation")]
    TooManyVariables(usize),
}

/// A literal: 1-based variable index and polarity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub var: usize,
    pub positive: bool,
}

impl Literal {
    pub fn from_dimacs(x: i64) -> Literal {
        Literal {
            var: x.unsigned_abs() as usize,
            positive: x > 0,
        }
    }

    pub fn to_dimacs(self) -> i64 {
        if self.positive {
            self.var as i64
        } else {
            -(self.var as i64)
        }
    }
}

/// A conjunction of clauses of three literals on distinct variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfFormula {
    vars: usize,
    clauses: Vec<[Literal; 3]>,
}

impl CnfFormula {
    /// Clauses as signed 1-based DIMACS literals.
    pub fn new(vars: usize, clauses: &[Vec<i64>]) -> Result<CnfFormula, CnfError> {
        let mut out = Vec::with_capacity(clauses.len());
        for (i, c) in clauses.iter().enumerate() {
            let clause = i + 1;
            if c.len() != 3 {
                return Err(CnfError::NotThree {
                    clause,
                    len: c.len(),
                });
            }
            let lits: Vec<Literal> = c.iter().map(|&x| Literal::from_dimacs(x)).collect();
            for (j, l) in lits.iter().enumerate() {
                if l.var == 0 || l.var > vars {
                    return Err(CnfError::OutOfRange {
                        clause,
                        var: l.var,
                        vars,
                    });
                }
                if lits[..j].iter().any(|m| m.var == l.var) {
                    return Err(CnfError::RepeatedVariable { clause, var: l.var });
                }
            }
            out.push([lits[0], lits[1], lits[2]]);
        }
        Ok(CnfFormula { vars, clauses: out })
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn clauses(&self) -> &[[Literal; 3]] {
        &self.clauses
    }

    /// `assignment` bit `i - 1` is the value of variable `i`.
    pub fn satisfied_by(&self, assignment: u64) -> bool {
        self.clauses.iter().all(|c| {
            c.iter()
                .any(|l| (assignment >> (l.var - 1) & 1 == 1) == l.positive)
        })
    }

    pub fn to_dimacs(&self) -> String {
        let mut s = format!("p cnf {} {}\n", self.vars, self.clauses.len());
        for c in &self.clauses {
            for l in c {
                s.push_str(&format!("{} ", l.to_dimacs()));
            }
            s.push_str("0\n");
        }
        s
    }
}

/// Parses DIMACS CNF: `c` comment lines, a `p cnf N M` header, then clauses
/// terminated by `0` (possibly spanning lines).
pub fn parse_dimacs(text: &str) -> Result<CnfFormula, CnfError> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses: Vec<Vec<i64>> = Vec::new();
    let mut current: Vec<i64> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let l = raw.trim();
        if l.is_empty() || l.starts_with('c') || l.starts_with('%') {
            continue;
        }
        let syntax = |reason: &str| CnfError::Syntax {
            line,
            reason: reason.to_string(),
        };
        if l.starts_with('p') {
            if header.is_some() {
                return Err(syntax("duplicate header"));
            }
            let f: Vec<&str> = l.split_whitespace().collect();
            if f.len() != 4 || f[1] != "cnf" {
                return Err(syntax("header must be `p cnf N M`"));
            }
            let n = f[2].parse().map_err(|_| syntax("bad variable count"))?;
            let m = f[3].parse().map_err(|_| syntax("bad clause count"))?;
            header = Some((n, m));
            continue;
        }
        if header.is_none() {
            return Err(syntax("clause before `p cnf` header"));
        }
        for tok in l.split_whitespace() {
            let x: i64 = tok
                .parse()
                .map_err(|_| syntax(&format!("bad literal {tok:?}")))?;
            if x == 0 {
                clauses.push(std::mem::take(&mut current));
            } else {
                current.push(x);
            }
        }
    }
    let (vars, announced) = header.ok_or(CnfError::Syntax {
        line: 1,
        reason: "missing `p cnf` header".into(),
    })?;
    if !current.is_empty() {
        clauses.push(current);
    }
    if clauses.len() != announced {
        return Err(CnfError::ClauseCount {
            announced,
            found: clauses.len(),
        });
    }
    CnfFormula::new(vars, &clauses)
}

/// Exhaustive satisfiability check.
pub fn brute_force_sat(phi: &CnfFormula) -> Result<bool, CnfError> {
    if phi.vars > 24 {
        return Err(CnfError::TooManyVariables(phi.vars));
    }
    Ok((0..1u64 << phi.vars).any(|a| phi.satisfied_by(a)))
}
