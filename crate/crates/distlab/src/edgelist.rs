//! Plain edge-list blocks: a line `<n> <m>`, then `m` lines `<u> <v>`
//! with `u < v`. Blocks follow each other directly; blank lines and
//! lines starting with `#` are ignored.

use std::fmt::Write as _;
use std::io::BufRead;

use distlab_core::graph::Graph;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum EdgeListError {
    #[error("line {line}: expected {expected}")]
    Syntax { line: usize, expected: &'static str },
    #[error("line {line}: {source}")]
    Graph {
        line: usize,
        #[source]
        source: distlab_core::error::GraphError,
    },
    #[error("input ended inside a block declaring {0} edges")]
    Truncated(usize),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub fn emit(g: &Graph) -> String {
    let mut out = String::new();
    writeln!(out, "{} {}", g.n(), g.edge_count()).unwrap();
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

fn two_numbers(
    line: &str,
    lineno: usize,
    expected: &'static str,
) -> Result<(usize, usize), EdgeListError> {
    let err = || EdgeListError::Syntax {
        line: lineno,
        expected,
    };
    let mut it = line.split_whitespace();
    let a = it.next().and_then(|t| t.parse().ok()).ok_or_else(err)?;
    let b = it.next().and_then(|t| t.parse().ok()).ok_or_else(err)?;
    if it.next().is_some() {
        return Err(err());
    }
    Ok((a, b))
}

/// Streams graphs from edge-list blocks.
pub fn read_graphs<R: BufRead>(reader: R) -> impl Iterator<Item = Result<Graph, EdgeListError>> {
    let mut lines = reader
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| {
            l.as_ref()
                .map(|s| {
                    let t = s.trim();
                    !t.is_empty() && !t.starts_with('#')
                })
                .unwrap_or(true)
        });
    std::iter::from_fn(move || {
        let (lineno, header) = lines.next()?;
        Some((|| {
            let (n, m) = two_numbers(&header?, lineno, "`<n> <m>` header")?;
            let mut edges = Vec::with_capacity(m);
            for _ in 0..m {
                let (ln, l) = lines.next().ok_or(EdgeListError::Truncated(m))?;
                edges.push(two_numbers(&l?, ln, "`<u> <v>` edge")?);
            }
            Graph::from_edge_list(n, &edges).map_err(|source| EdgeListError::Graph {
                line: lineno,
                source,
            })
        })())
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn emit_and_read_back() {
        let g = Graph::cycle(5).unwrap();
        let text = emit(&g);
        assert!(text.starts_with("5 5\n0 1\n"));
        let mut both = text.clone();
        both.push_str("\n# a comment\n");
        both.push_str(&emit(&Graph::empty(2).unwrap()));
        let back: Vec<Graph> = read_graphs(both.as_bytes()).map(Result::unwrap).collect();
        assert_eq!(back, vec![g, Graph::empty(2).unwrap()]);
    }

    #[test]
    fn errors() {
        let r: Vec<_> = read_graphs("3 2\n0 1\n".as_bytes()).collect();
        assert!(matches!(r[0], Err(EdgeListError::Truncated(2))));
        let r: Vec<_> = read_graphs("3 1\n0 x\n".as_bytes()).collect();
        assert!(matches!(r[0], Err(EdgeListError::Syntax { line: 2, .. })));
        let r: Vec<_> = read_graphs("3 1\n0 0\n".as_bytes()).collect();
        assert!(matches!(r[0], Err(EdgeListError::Graph { line: 1, .. })));
    }
}
