//! Plain-text edge lists for human authoring: a header line `n m`
//! followed by `m` lines `u v`. Blank lines and `#` comments are skipped.

use crate::graph::Graph;
use thiserror::Error;

/// Parse failure with the 1-based line number of the problem.
#[derive(Debug, Error, PartialEq, Eq)]
#[error("edge list parse error at line {line}: {reason}")]
pub struct ParseError {
    pub line: usize,
    pub reason: String,
}

fn bad(line: usize, reason: impl Into<String>) -> ParseError {
    ParseError {
        line,
        reason: reason.into(),
    }
}

/// Parses an edge-list document.
pub fn parse(text: &str) -> Result<Graph, ParseError> {
    let mut rows = text.lines().enumerate().filter_map(|(i, raw)| {
        let content = raw.split('#').next().unwrap_or("").trim();
        (!content.is_empty()).then_some((i + 1, content))
    });
    let (header_line, header) = rows.next().ok_or_else(|| bad(1, "missing `n m` header"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 2 {
        return Err(bad(header_line, format!("header must be `n m`, got {header:?}")));
    }
    let n: usize = fields[0]
        .parse()
        .map_err(|_| bad(header_line, format!("bad vertex count {:?}", fields[0])))?;
    let m: usize = fields[1]
        .parse()
        .map_err(|_| bad(header_line, format!("bad edge count {:?}", fields[1])))?;

    let mut edges: Vec<(u32, u32)> = Vec::with_capacity(m);
    for (line, content) in rows {
        let fields: Vec<&str> = content.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(bad(line, format!("edge line must be `u v`, got {content:?}")));
        }
        let u: u32 = fields[0]
            .parse()
            .map_err(|_| bad(line, format!("bad vertex {:?}", fields[0])))?;
        let v: u32 = fields[1]
            .parse()
            .map_err(|_| bad(line, format!("bad vertex {:?}", fields[1])))?;
        let key = (u.min(v), u.max(v));
        if edges.contains(&key) {
            return Err(bad(line, format!("duplicate edge {u} {v}")));
        }
        edges.push(key);
    }
    if edges.len() != m {
        return Err(bad(
            1,
            format!("header announces {m} edges but {} were listed", edges.len()),
        ));
    }
    Graph::from_edges(n, &edges).map_err(|e| bad(1, format!("invalid graph: {e}")))
}

/// Renders a graph as an edge-list document.
pub fn render(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.e());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}
