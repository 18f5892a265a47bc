/*!
Plain-text edge lists and code files.

A graph file starts with a header line `n m` followed by `m` lines `u v`
with `0 <= u < v < n`. Lines whose first non-blank character is `#` are
comments and blank lines are ignored. A code file is a whitespace-separated
list of vertex ids, again with `#` comment lines allowed.
*/

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{Graph, GraphError};
use crate::vertex_set::VertexSet;

/// A malformed graph or code file. `line` is 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, message: message.into() }
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_pair(line: usize, text: &str) -> Result<(usize, usize), ParseError> {
    let mut fields = text.split_whitespace();
    let mut next = |what: &str| -> Result<usize, ParseError> {
        let field = fields.next().ok_or_else(|| err(line, format!("missing {what}")))?;
        field.parse().map_err(|_| err(line, format!("{what} `{field}` is not a non-negative integer")))
    };
    let pair = (next("first field")?, next("second field")?);
    if let Some(extra) = fields.next() {
        return Err(err(line, format!("unexpected trailing field `{extra}`")));
    }
    Ok(pair)
}

/// Parses the edge-list format described in the module docs.
///
/// # Examples
///
/// ```
/// let g = idcode::parse_edge_list("# a path\n3 2\n0 1\n1 2\n").unwrap();
/// assert_eq!(g.size(), 2);
/// assert_eq!(idcode::parse_edge_list("3 1\n2 1\n").unwrap_err().line, 2);
/// ```
pub fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
    let mut lines = content_lines(text);
    let (header_line, header) = lines.next().ok_or_else(|| err(1, "missing `n m` header"))?;
    let (n, m) = parse_pair(header_line, header)?;
    let mut edges = Vec::with_capacity(m);
    for (line, body) in lines {
        if edges.len() == m {
            return Err(err(line, format!("more than the declared {m} edges")));
        }
        let (u, v) = parse_pair(line, body)?;
        if u >= v {
            return Err(err(line, format!("edge `{u} {v}` must satisfy u < v")));
        }
        if v >= n {
            return Err(err(line, format!("vertex {v} out of range for n = {n}")));
        }
        edges.push(((u, v), line));
    }
    if edges.len() < m {
        let last = text.lines().count().max(1);
        return Err(err(last, format!("expected {m} edges, found {}", edges.len())));
    }
    Graph::new(n, edges.iter().map(|&(e, _)| e)).map_err(|e| match e {
        GraphError::DuplicateEdge(a, b) => {
            let line = edges.iter().filter(|&&(e, _)| e == (a, b)).nth(1).map_or(0, |&(_, l)| l);
            err(line, format!("duplicate edge `{a} {b}`"))
        }
        other => err(header_line, other.to_string()),
    })
}

/// Canonical text form: header, then the sorted edges, newline-terminated.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.order(), g.size());
    for &(u, v) in g.edges() {
        writeln!(out, "{u} {v}").expect("writing to a String cannot fail");
    }
    out
}

/// Parses a code file: whitespace-separated vertex ids.
pub fn parse_code(text: &str) -> Result<VertexSet, ParseError> {
    let mut code = VertexSet::new();
    for (line, body) in content_lines(text) {
        for field in body.split_whitespace() {
            let v: usize = field.parse().map_err(|_| err(line, format!("`{field}` is not a vertex id")))?;
            code.insert(v);
        }
    }
    Ok(code)
}

/// Code file text: ids in increasing order on one line.
pub fn write_code(code: &VertexSet) -> String {
    let ids: Vec<String> = code.iter().map(|v| v.to_string()).collect();
    format!("{}\n", ids.join(" "))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let g = Graph::new(5, [(3, 4), (0, 1), (1, 2)]).unwrap();
        let text = write_edge_list(&g);
        assert_eq!(text, "5 3\n0 1\n1 2\n3 4\n");
        assert_eq!(parse_edge_list(&text).unwrap(), g);
    }

    #[test]
    fn comments_and_blank_lines() {
        let g = parse_edge_list("# header\n\n2 1\n  # inline comment line\n0 1\n").unwrap();
        assert_eq!(g.edges(), &[(0, 1)]);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let cases = [
            ("", 1),
            ("x 1\n", 1),
            ("3 1\n0 1 2\n", 2),
            ("3 2\n0 1\n", 2),
            ("3 1\n0 1\n1 2\n", 3),
            ("3 1\n0 3\n", 2),
            ("3 1\n1 1\n", 2),
            ("3 2\n0 1\n\n0 1\n", 4),
        ];
        for (text, line) in cases {
            let e = parse_edge_list(text).unwrap_err();
            assert_eq!(e.line, line, "{text:?}: {e}");
        }
    }

    #[test]
    fn codes() {
        assert_eq!(parse_code("# c\n4 0\n2\n").unwrap(), VertexSet::from([0, 2, 4]));
        assert_eq!(parse_code("1 a").unwrap_err().line, 1);
        assert_eq!(write_code(&VertexSet::from([3, 1])), "1 3\n");
        assert_eq!(write_code(&VertexSet::new()), "\n");
    }
}
