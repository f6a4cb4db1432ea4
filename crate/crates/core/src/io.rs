//! Edge-list and digraph6 documents.
//!
//! Edge list: a header `n m`, then `m` lines `tail head` (0-based). Blank
//! lines and lines starting with `#` are ignored.
//!
//! digraph6: `&`, the order `N(n)`, then the `n × n` adjacency matrix in
//! row-major order packed big-endian into 6-bit groups, each offset by 63.

use std::fmt::Write as _;

use crate::digraph::{Arc, Digraph, MAX_VERTICES};
use crate::error::{FormatError, GraphError};

fn invariant(e: GraphError) -> FormatError {
    FormatError::InvariantViolation(e)
}

pub fn parse_edge_list(text: &str) -> Result<Digraph, FormatError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let syntax = |line: usize, message: &str| FormatError::SyntaxLine {
        line,
        message: message.into(),
    };

    let (hline, header) = lines
        .next()
        .ok_or_else(|| syntax(1, "missing header \"n m\""))?;
    let pair = |line: usize, l: &str| -> Result<(usize, usize), FormatError> {
        let mut it = l.split_whitespace();
        let (Some(a), Some(b), None) = (it.next(), it.next(), it.next()) else {
            return Err(syntax(line, "expected two integers"));
        };
        let a = a
            .parse()
            .map_err(|_| syntax(line, "not a non-negative integer"))?;
        let b = b
            .parse()
            .map_err(|_| syntax(line, "not a non-negative integer"))?;
        Ok((a, b))
    };
    let (n, m) = pair(hline, header)?;
    if n > MAX_VERTICES {
        return Err(invariant(GraphError::TooManyVertices {
            n,
            max: MAX_VERTICES,
        }));
    }
    let mut arcs = Vec::with_capacity(m);
    let mut last = hline;
    for (line, l) in lines {
        if arcs.len() == m {
            return Err(syntax(line, "more arc lines than the header declares"));
        }
        arcs.push(pair(line, l)?);
        last = line;
    }
    if arcs.len() != m {
        return Err(syntax(
            last,
            &format!("header declares {m} arcs, found {}", arcs.len()),
        ));
    }
    Digraph::build(n, arcs).map_err(invariant)
}

pub fn emit_edge_list(d: &Digraph) -> String {
    let mut s = format!("{} {}\n", d.n(), d.arc_count());
    for Arc { tail, head } in d.arcs() {
        writeln!(s, "{tail} {head}").expect("writing to a String");
    }
    s
}

fn encode_order(n: usize, out: &mut Vec<u8>) {
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
}

pub fn emit_digraph6(d: &Digraph) -> String {
    let n = d.n();
    let mut bytes = vec![b'&'];
    encode_order(n, &mut bytes);
    let mut acc = 0u8;
    let mut filled = 0;
    for i in 0..n {
        for j in 0..n {
            acc = acc << 1 | u8::from(d.has_arc(i, j));
            filled += 1;
            if filled == 6 {
                bytes.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        bytes.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(bytes).expect("digraph6 is printable ASCII")
}

pub fn parse_digraph6(text: &str) -> Result<Digraph, FormatError> {
    let s = text.trim_end_matches(['\n', '\r']).as_bytes();
    let syntax = |byte: usize, message: &str| FormatError::SyntaxByte {
        byte,
        message: message.into(),
    };
    if s.first() != Some(&b'&') {
        return Err(syntax(0, "digraph6 must start with '&'"));
    }
    let sextet = |i: usize| -> Result<u8, FormatError> {
        match s.get(i) {
            Some(&b) if (63..=126).contains(&b) => Ok(b - 63),
            Some(_) => Err(syntax(i, "byte outside 63..=126")),
            None => Err(syntax(i, "unexpected end of input")),
        }
    };
    let (n, mut pos) = match sextet(1)? {
        63 => {
            if s.get(2) == Some(&126) {
                return Err(syntax(2, "orders above 258047 are not supported"));
            }
            let n = (0..3).try_fold(0usize, |acc, k| {
                Ok::<_, FormatError>(acc << 6 | sextet(2 + k)? as usize)
            })?;
            (n, 5)
        }
        b => (b as usize, 2),
    };
    if n > MAX_VERTICES {
        return Err(invariant(GraphError::TooManyVertices {
            n,
            max: MAX_VERTICES,
        }));
    }
    let bits = n * n;
    let need = bits.div_ceil(6);
    if s.len() != pos + need {
        return Err(syntax(
            s.len().min(pos + need),
            &format!("expected {need} adjacency bytes"),
        ));
    }
    let mut arcs = Vec::new();
    let mut k = 0;
    while k < bits {
        let chunk = sextet(pos)?;
        for b in 0..6 {
            if k + b >= bits {
                if chunk >> (5 - b) & 1 == 1 {
                    return Err(syntax(pos, "non-zero padding bits"));
                }
                continue;
            }
            if chunk >> (5 - b) & 1 == 1 {
                let (i, j) = ((k + b) / n, (k + b) % n);
                arcs.push((i, j));
            }
        }
        k += 6;
        pos += 1;
    }
    Digraph::build(n, arcs).map_err(invariant)
}

/// Parses either format: digraph6 if the first non-blank byte is `&`.
pub fn parse_any(text: &str) -> Result<Digraph, FormatError> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('&') {
        parse_digraph6(trimmed.lines().next().unwrap_or_default())
    } else {
        parse_edge_list(text)
    }
}
