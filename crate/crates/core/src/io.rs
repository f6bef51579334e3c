//! Edge-list text format: a header line `n m`, then `m` lines `u v` with
//! `u < v`, 0-indexed and space separated.

use std::fmt::Write as _;

use crate::error::GraphError;
use crate::graph::Graph;

pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hline, header) = lines.next().ok_or(GraphError::Parse {
        line: 1,
        msg: "missing `n m` header".into(),
    })?;
    let [n, m] = parse_pair(hline, header)?;
    let mut pairs = Vec::with_capacity(m);
    for (line, l) in lines {
        let [u, v] = parse_pair(line, l)?;
        pairs.push((u, v));
    }
    if pairs.len() != m {
        return Err(GraphError::Parse {
            line: hline,
            msg: format!("header announces {m} edges, found {}", pairs.len()),
        });
    }
    Graph::from_edge_list(n, &pairs)
}

fn parse_pair(line: usize, l: &str) -> Result<[usize; 2], GraphError> {
    let fields: Vec<&str> = l.split_whitespace().collect();
    if fields.len() != 2 {
        return Err(GraphError::Parse {
            line,
            msg: format!("expected two integers, got `{l}`"),
        });
    }
    let parse = |s: &str| {
        s.parse::<usize>().map_err(|e| GraphError::Parse {
            line,
            msg: format!("`{s}`: {e}"),
        })
    };
    Ok([parse(fields[0])?, parse(fields[1])?])
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.m());
    for &(u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let g = Graph::join_complete_empty(4, 3);
        assert_eq!(parse_edge_list(&write_edge_list(&g)).unwrap(), g);
    }

    #[test]
    fn count_mismatch() {
        let err = parse_edge_list("3 2\n0 1\n").unwrap_err();
        assert!(matches!(err, GraphError::Parse { line: 1, .. }));
    }

    #[test]
    fn garbage_line() {
        let err = parse_edge_list("3 1\n0 x\n").unwrap_err();
        assert!(matches!(err, GraphError::Parse { line: 2, .. }));
    }
}
