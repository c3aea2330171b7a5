//! graph6 encoding for graphs with up to 258047 vertices.

use etcensus_core::graph::Graph;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Graph6Error {
    #[error("empty graph6 string")]
    Empty,
    #[error("byte {0:#04x} outside the graph6 range 63..=126")]
    BadByte(u8),
    #[error("graph6 string too short for {0} vertices")]
    Truncated(usize),
    #[error("graph6 string has {0} trailing bytes")]
    Trailing(usize),
    #[error("order {0} is too large for graph6")]
    TooLarge(usize),
    #[error("padding bits are not zero")]
    Padding,
}

const HEADER: &str = ">>graph6<<";

fn size_bytes(n: usize) -> Result<Vec<u8>, Graph6Error> {
    if n <= 62 {
        Ok(vec![n as u8 + 63])
    } else if n <= 258_047 {
        Ok(vec![
            126,
            ((n >> 12) & 63) as u8 + 63,
            ((n >> 6) & 63) as u8 + 63,
            (n & 63) as u8 + 63,
        ])
    } else {
        Err(Graph6Error::TooLarge(n))
    }
}

pub fn encode(g: &Graph) -> Result<String, Graph6Error> {
    let n = g.order();
    let mut out = size_bytes(n)?;
    let mut acc = 0u8;
    let mut nb = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            nb += 1;
            if nb == 6 {
                out.push(acc + 63);
                acc = 0;
                nb = 0;
            }
        }
    }
    if nb > 0 {
        out.push((acc << (6 - nb)) + 63);
    }
    Ok(String::from_utf8(out).expect("graph6 bytes are ASCII"))
}

pub fn decode(text: &str) -> Result<Graph, Graph6Error> {
    let text = text.trim_end_matches(['\n', '\r']);
    let text = text.strip_prefix(HEADER).unwrap_or(text);
    let bytes = text.as_bytes();
    if bytes.is_empty() {
        return Err(Graph6Error::Empty);
    }
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(Graph6Error::BadByte(b));
    }
    let (n, body) = if bytes[0] < 126 {
        (bytes[0] as usize - 63, &bytes[1..])
    } else {
        if bytes.len() < 4 || bytes[1] == 126 {
            return Err(Graph6Error::Truncated(0));
        }
        let n = bytes[1..4]
            .iter()
            .fold(0usize, |acc, &b| acc << 6 | (b as usize - 63));
        (n, &bytes[4..])
    };
    let bits = n * n.saturating_sub(1) / 2;
    let need = bits.div_ceil(6);
    if body.len() < need {
        return Err(Graph6Error::Truncated(n));
    }
    if body.len() > need {
        return Err(Graph6Error::Trailing(body.len() - need));
    }
    let mut g = Graph::empty(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                g.add_edge(i, j);
            }
            k += 1;
        }
    }
    if need > 0 {
        let pad = need * 6 - bits;
        if (body[need - 1] - 63) & ((1 << pad) - 1) != 0 {
            return Err(Graph6Error::Padding);
        }
    }
    Ok(g)
}
