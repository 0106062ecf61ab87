//! graph6 encoding.
//!
//! Header `N(n)` is the single byte `n + 63` for `n <= 62` and `~` followed by
//! three 6-bit bytes for `63 <= n <= 258047`. The body packs `x(i,j)` for
//! `i < j` in the order `x(0,1), x(0,2), x(1,2), x(0,3), …`, six bits per byte
//! (most significant first), each byte offset by 63 and the last one
//! zero-padded.

use crate::error::{Error, Result};
use crate::graph::{bit, Graph, MAX_ORDER};

fn err(msg: impl Into<String>) -> Error {
    Error::Graph6(msg.into())
}

pub fn write_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::with_capacity(4 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(b'~');
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        let row = g.neighbors(j);
        for i in 0..j {
            acc = acc << 1 | (row >> i & 1) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

pub fn parse_graph6(line: &str) -> Result<Graph> {
    let text = line.trim_end_matches(['\n', '\r']);
    let text = text.strip_prefix(">>graph6<<").unwrap_or(text);
    let bytes = text.as_bytes();
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(err(format!(
            "byte {b} outside the printable range 63..=126"
        )));
    }
    let (n, body) = match bytes {
        [] => return Err(err("empty input")),
        [b'~', b'~', ..] => return Err(err("orders above 258047 are not supported")),
        [b'~', rest @ ..] => {
            if rest.len() < 3 {
                return Err(err("truncated extended header"));
            }
            let n = rest[..3]
                .iter()
                .fold(0usize, |acc, &b| acc << 6 | (b - 63) as usize);
            if n < 63 {
                return Err(err(format!("extended header used for small order {n}")));
            }
            (n, &rest[3..])
        }
        [h, rest @ ..] => ((h - 63) as usize, rest),
    };
    if n > MAX_ORDER {
        return Err(Error::OrderOverflow(n));
    }
    let nbits = n * n.saturating_sub(1) / 2;
    let expected = nbits.div_ceil(6);
    if body.len() != expected {
        return Err(err(format!(
            "order {n} needs {expected} data bytes, found {}",
            body.len()
        )));
    }
    let mut rows = vec![0u64; n];
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                rows[i] |= bit(j);
                rows[j] |= bit(i);
            }
            k += 1;
        }
    }
    if nbits % 6 != 0 {
        let last = body[expected - 1] - 63;
        let pad = 6 - nbits % 6;
        if last & ((1 << pad) - 1) != 0 {
            return Err(err("nonzero padding bits"));
        }
    }
    Graph::from_rows(rows)
}

/// Parses every non-empty line of a graph6 file.
pub fn parse_graph6_lines(text: &str) -> Result<Vec<Graph>> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .enumerate()
        .map(|(i, l)| {
            parse_graph6(l).map_err(|e| match e {
                Error::Graph6(m) => err(format!("line {}: {m}", i + 1)),
                other => other,
            })
        })
        .collect()
}
