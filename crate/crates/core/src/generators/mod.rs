//! Isomorph-free enumeration of free trees and connected cubic graphs, and
//! ingestion of newline-delimited graph6 corpora.

mod cubic;
mod trees;

use std::io::BufRead;

use thiserror::Error;

use crate::formats::{parse_graph6, FormatError};
use crate::graph::Graph;

pub use cubic::{enum_cubic, enum_cubic_levels};
pub use trees::{enum_trees, Trees};

#[derive(Debug, Error)]
pub enum GeneratorError {
    #[error("order {0} exceeds the supported maximum")]
    TooLarge(usize),
    #[error("order must be at least 1")]
    Empty,
}

#[derive(Debug, Error)]
pub enum StreamError {
    #[error("line {line}: {source}")]
    Parse {
        line: usize,
        #[source]
        source: FormatError,
    },
    #[error("line {line}: {source}")]
    Io {
        line: usize,
        #[source]
        source: std::io::Error,
    },
}

impl StreamError {
    pub fn line(&self) -> usize {
        match self {
            StreamError::Parse { line, .. } | StreamError::Io { line, .. } => *line,
        }
    }
}

/// Lazily parses one graph per non-blank line. Items carry 1-based line
/// numbers on failure; the caller decides whether to skip or stop.
pub struct Graph6Lines<R> {
    reader: R,
    line: usize,
    buf: String,
}

impl<R: BufRead> Graph6Lines<R> {
    pub fn new(reader: R) -> Self {
        Graph6Lines {
            reader,
            line: 0,
            buf: String::new(),
        }
    }
}

impl<R: BufRead> Iterator for Graph6Lines<R> {
    type Item = Result<Graph, StreamError>;

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            self.buf.clear();
            self.line += 1;
            match self.reader.read_line(&mut self.buf) {
                Ok(0) => return None,
                Ok(_) => {}
                Err(source) => {
                    return Some(Err(StreamError::Io {
                        line: self.line,
                        source,
                    }))
                }
            }
            if self.buf.trim().is_empty() {
                continue;
            }
            return Some(
                parse_graph6(self.buf.as_bytes()).map_err(|source| StreamError::Parse {
                    line: self.line,
                    source,
                }),
            );
        }
    }
}

/// Graphs read from a stream, plus the lines skipped in lenient mode.
#[derive(Debug, Default)]
pub struct Graph6Batch {
    pub graphs: Vec<Graph>,
    pub skipped: Vec<StreamError>,
}

/// Reads a whole graph6 stream. With `strict`, the first bad line aborts;
/// otherwise bad lines are recorded in [`Graph6Batch::skipped`].
pub fn read_graph6_stream<R: BufRead>(reader: R, strict: bool) -> Result<Graph6Batch, StreamError> {
    let mut batch = Graph6Batch::default();
    for item in Graph6Lines::new(reader) {
        match item {
            Ok(g) => batch.graphs.push(g),
            Err(e) if strict => return Err(e),
            Err(e) => batch.skipped.push(e),
        }
    }
    Ok(batch)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formats::write_graph6;

    #[test]
    fn stream_modes() {
        let mut text = String::new();
        for n in 4..9 {
            text.push_str(&write_graph6(&Graph::cycle(n).unwrap()));
            text.push('\n');
        }
        let batch = read_graph6_stream(text.as_bytes(), true).unwrap();
        assert_eq!(batch.graphs.len(), 5);
        assert!(read_graph6_stream("".as_bytes(), true)
            .unwrap()
            .graphs
            .is_empty());

        let corrupt = "Cl\nCs\nC\x1e\nCl\n";
        let err = read_graph6_stream(corrupt.as_bytes(), true).unwrap_err();
        assert_eq!(err.line(), 3);
        let lenient = read_graph6_stream(corrupt.as_bytes(), false).unwrap();
        assert_eq!(lenient.graphs.len(), 3);
        assert_eq!(lenient.skipped[0].line(), 3);
    }
}
