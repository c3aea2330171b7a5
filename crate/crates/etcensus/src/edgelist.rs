//! Edge-list text: an optional `n N` header line, then one `u v` pair per
//! line (0-indexed). Blank lines and `#` comments are ignored.

use etcensus_core::graph::Graph;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EdgeListError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
}

fn syntax(line: usize, message: impl Into<String>) -> EdgeListError {
    EdgeListError::Syntax {
        line,
        message: message.into(),
    }
}

pub fn write(g: &Graph) -> String {
    let mut s = format!("n {}\n", g.order());
    for (u, v) in g.edges() {
        s.push_str(&format!("{u} {v}\n"));
    }
    s
}

/// Without a header the order is one more than the largest vertex named.
pub fn parse(text: &str) -> Result<Graph, EdgeListError> {
    let mut order: Option<usize> = None;
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields[0] == "n" {
            if fields.len() != 2 || order.is_some() || !edges.is_empty() {
                return Err(syntax(i + 1, "misplaced order header"));
            }
            order = Some(fields[1].parse().map_err(|_| syntax(i + 1, "bad order"))?);
            continue;
        }
        if fields.len() != 2 {
            return Err(syntax(i + 1, "expected two vertices"));
        }
        let u: usize = fields[0].parse().map_err(|_| syntax(i + 1, "bad vertex"))?;
        let v: usize = fields[1].parse().map_err(|_| syntax(i + 1, "bad vertex"))?;
        edges.push((i + 1, u, v));
    }
    let n = order.unwrap_or_else(|| edges.iter().map(|&(_, u, v)| u.max(v) + 1).max().unwrap_or(0));
    let mut g = Graph::empty(n);
    for (line, u, v) in edges {
        g.try_add_edge(u, v).map_err(|e| syntax(line, e.to_string()))?;
    }
    Ok(g)
}
