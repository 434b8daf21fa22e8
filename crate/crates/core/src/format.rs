//! graph6 and plain edge-list text formats.
//!
//! graph6 layout: an order field (one byte `n + 63` for `n <= 62`, else `126`
//! followed by three 6-bit bytes), then the upper triangle of the adjacency
//! matrix in column order (`x(0,1) x(0,2) x(1,2) x(0,3) ...`) packed
//! big-endian into 6-bit groups, each offset by 63 and zero padded.

use crate::error::{Error, FormatError};
use crate::graph::{Graph, MAX_ORDER};

const HEADER: &str = ">>graph6<<";

fn g6_err(offset: usize, reason: impl Into<String>) -> FormatError {
    FormatError::Graph6 { offset, reason: reason.into() }
}

pub fn parse_graph6(text: &str) -> Result<Graph, Error> {
    let text = text.trim_end_matches(['\n', '\r']);
    let body = text.strip_prefix(HEADER).unwrap_or(text);
    let base = text.len() - body.len();
    let bytes = body.as_bytes();

    let sextet = |i: usize| -> Result<u32, FormatError> {
        let b = *bytes.get(i).ok_or_else(|| g6_err(base + i, "truncated input"))?;
        if !(63..=126).contains(&b) {
            return Err(g6_err(base + i, format!("byte {b} outside 63..=126")));
        }
        Ok(u32::from(b - 63))
    };

    let (order, mut pos) = match bytes.first() {
        None => return Err(g6_err(base, "empty input").into()),
        Some(126) => {
            if bytes.get(1) == Some(&126) {
                return Err(g6_err(base + 1, format!("orders above {MAX_ORDER} are not supported")).into());
            }
            let n = (sextet(1)? << 12) | (sextet(2)? << 6) | sextet(3)?;
            if n < 63 {
                return Err(g6_err(base, "non-canonical long order field").into());
            }
            (n as usize, 4)
        }
        Some(_) => (sextet(0)? as usize, 1),
    };
    if order > MAX_ORDER {
        return Err(g6_err(base, format!("order {order} exceeds {MAX_ORDER}")).into());
    }

    let bits = order * order.saturating_sub(1) / 2;
    let needed = bits.div_ceil(6);
    if bytes.len() < pos + needed {
        return Err(g6_err(base + bytes.len(), "truncated bit field").into());
    }
    if bytes.len() > pos + needed {
        return Err(g6_err(base + pos + needed, "trailing bytes").into());
    }

    let mut edges = Vec::new();
    let mut k = 0;
    let mut current = 0;
    for j in 1..order {
        for i in 0..j {
            if k % 6 == 0 {
                current = sextet(pos)?;
                pos += 1;
            }
            if current >> (5 - k % 6) & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    if k % 6 != 0 && current & ((1 << (6 - k % 6)) - 1) != 0 {
        return Err(g6_err(base + pos - 1, "nonzero padding bits").into());
    }
    Graph::new(order, edges)
}

pub fn emit_graph6(graph: &Graph) -> String {
    let n = graph.order();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.extend([126, (n >> 12) as u8 + 63, ((n >> 6) & 63) as u8 + 63, (n & 63) as u8 + 63]);
    }
    let mut acc = 0u8;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | graph.has_edge(i, j) as u8;
            k += 1;
            if k % 6 == 0 {
                out.push(acc + 63);
                acc = 0;
            }
        }
    }
    if k % 6 != 0 {
        out.push((acc << (6 - k % 6)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}

/// Parses `g m` followed by `m` lines `u v`. Blank lines and `#` comments
/// are ignored.
pub fn parse_edge_list(text: &str) -> Result<Graph, Error> {
    let err = |line: usize, reason: String| Error::from(FormatError::EdgeList { line, reason });
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (hline, header) = lines.next().ok_or_else(|| err(1, "missing header".into()))?;
    let nums = parse_pair(header).ok_or_else(|| err(hline, format!("expected \"g m\", got {header:?}")))?;
    let (order, size) = nums;
    if order > MAX_ORDER {
        return Err(err(hline, format!("order {order} exceeds {MAX_ORDER}")));
    }
    let mut edges = Vec::with_capacity(size);
    for (line, text) in lines {
        let (u, v) = parse_pair(text).ok_or_else(|| err(line, format!("expected \"u v\", got {text:?}")))?;
        if edges.len() == size {
            return Err(err(line, format!("more than the declared {size} edges")));
        }
        if u >= order || v >= order {
            return Err(err(line, format!("vertex out of range for order {order}")));
        }
        edges.push((u, v));
    }
    if edges.len() != size {
        return Err(err(hline, format!("declared {size} edges, found {}", edges.len())));
    }
    Graph::new(order, edges)
}

fn parse_pair(text: &str) -> Option<(usize, usize)> {
    let mut it = text.split_whitespace();
    let a = it.next()?.parse().ok()?;
    let b = it.next()?.parse().ok()?;
    it.next().is_none().then_some((a, b))
}

pub fn emit_edge_list(graph: &Graph) -> String {
    let mut out = format!("{} {}\n", graph.order(), graph.size());
    for &(u, v) in graph.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// Reads one graph, choosing the edge-list format when the first
/// significant line is two integers and graph6 otherwise.
pub fn parse_graph_auto(text: &str) -> Result<Graph, Error> {
    let first = text.lines().map(|l| l.split('#').next().unwrap_or("").trim()).find(|l| !l.is_empty());
    match first {
        Some(line) if parse_pair(line).is_some() => parse_edge_list(text),
        Some(line) => parse_graph6(line),
        None => Err(g6_err(0, "empty input").into()),
    }
}
