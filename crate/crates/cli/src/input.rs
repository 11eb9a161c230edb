//! Reading graphs, detector lists and formulas from the command line.

use std::io::Read;
use std::path::{Path, PathBuf};

use redic_core::formats::{parse_edge_list, parse_graph6, FormatError};
use redic_core::{Graph, GraphError, VertexSet};
use sha2::{Digest, Sha256};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Cnf(#[from] redic_core::reduction::CnfError),
    #[error(transparent)]
    Reduction(#[from] redic_core::reduction::ReductionError),
    #[error(transparent)]
    Construction(#[from] redic_core::constructions::ConstructionError),
    #[error(transparent)]
    Stream(#[from] redic_core::generators::StreamError),
    #[error("{0}")]
    Usage(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GraphFormat {
    /// An `n m` first line means edge list, anything else graph6.
    #[default]
    Auto,
    Graph6,
    EdgeList,
}

/// Where a graph comes from: a file (`-` for stdin) or a named family such
/// as `ladder:5` or `torus:5,6`.
#[derive(Debug, Clone)]
pub enum GraphSource {
    File(PathBuf, GraphFormat),
    Named(String),
}

#[derive(Debug, Clone)]
pub struct LoadedGraph {
    pub graph: Graph,
    /// Hex SHA-256 of the raw input (file bytes or family spec).
    pub digest: String,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn read_source(path: &Path) -> Result<Vec<u8>, CliError> {
    let io = |source| CliError::Io {
        path: path.display().to_string(),
        source,
    };
    if path.as_os_str() == "-" {
        let mut buf = Vec::new();
        std::io::stdin().read_to_end(&mut buf).map_err(io)?;
        Ok(buf)
    } else {
        std::fs::read(path).map_err(io)
    }
}

fn looks_like_edge_list(text: &str) -> bool {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .is_some_and(|l| {
            let f: Vec<&str> = l.split_whitespace().collect();
            f.len() == 2 && f.iter().all(|t| t.parse::<usize>().is_ok())
        })
}

pub fn parse_named(spec: &str) -> Result<Graph, CliError> {
    let (family, params) = spec.split_once(':').unwrap_or((spec, ""));
    let params: Vec<usize> = params
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("bad parameter {s:?} in {spec:?}")))
        })
        .collect::<Result<_, _>>()?;
    Ok(Graph::named(&family.replace('-', "_"), &params)?)
}

pub fn load_graph(source: &GraphSource) -> Result<LoadedGraph, CliError> {
    match source {
        GraphSource::Named(spec) => Ok(LoadedGraph {
            graph: parse_named(spec)?,
            digest: sha256_hex(spec.as_bytes()),
        }),
        GraphSource::File(path, format) => {
            let bytes = read_source(path)?;
            let text = String::from_utf8_lossy(&bytes);
            let edge_list = match format {
                GraphFormat::EdgeList => true,
                GraphFormat::Graph6 => false,
                GraphFormat::Auto => looks_like_edge_list(&text),
            };
            let graph = if edge_list {
                parse_edge_list(&text)?
            } else {
                parse_graph6(&bytes)?
            };
            Ok(LoadedGraph {
                graph,
                digest: sha256_hex(&bytes),
            })
        }
    }
}

/// Vertex indices separated by commas and/or whitespace.
pub fn parse_vertex_list(text: &str, n: usize) -> Result<VertexSet, CliError> {
    let mut s = VertexSet::EMPTY;
    for tok in text
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
    {
        let v: usize = tok
            .parse()
            .map_err(|_| CliError::Usage(format!("bad vertex {tok:?}")))?;
        if v >= n {
            return Err(CliError::Usage(format!("vertex {v} is outside 0..{n}")));
        }
        s.insert(v);
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formats_and_lists() {
        assert!(looks_like_edge_list("# c\n4 3\n0 1\n"));
        assert!(!looks_like_edge_list("Cs\n"));
        assert_eq!(parse_named("ladder:5").unwrap().order(), 10);
        assert_eq!(
            parse_named("complete-multipartite:2,2,2").unwrap().order(),
            6
        );
        assert!(parse_named("ladder:x").is_err());
        assert_eq!(
            parse_vertex_list("0, 1 3", 4).unwrap().to_vec(),
            vec![0, 1, 3]
        );
        assert!(parse_vertex_list("4", 4).is_err());
    }
}
