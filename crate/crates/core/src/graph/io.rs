//! Edge-list text format.
//!
//! ```text
//! # optional comments
//! n m
//! u v
//! ...
//! ```
//! Ids are 0-based. Anything after `#` on a line is ignored.

use std::fmt::Write as _;

use thiserror::Error;

use super::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            message: message.into(),
        }
    }
}

/// Non-comment, non-blank lines with their 1-based line numbers.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("").trim();
        (!body.is_empty()).then_some((i + 1, body))
    })
}

fn two_numbers(line: usize, body: &str) -> Result<(usize, usize), ParseError> {
    let mut it = body.split_whitespace();
    let mut next = |what: &str| -> Result<usize, ParseError> {
        let tok = it
            .next()
            .ok_or_else(|| ParseError::new(line, format!("missing {what}")))?;
        tok.parse()
            .map_err(|_| ParseError::new(line, format!("`{tok}` is not a non-negative integer")))
    };
    let a = next("first field")?;
    let b = next("second field")?;
    if let Some(extra) = it.next() {
        return Err(ParseError::new(
            line,
            format!("unexpected trailing field `{extra}`"),
        ));
    }
    Ok((a, b))
}

pub fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
    let mut lines = content_lines(text);
    let (header_line, header) = lines
        .next()
        .ok_or_else(|| ParseError::new(1, "missing `n m` header"))?;
    let (n, m) = two_numbers(header_line, header)?;
    let mut g = Graph::new(n);
    let mut last_line = header_line;
    for (line, body) in lines {
        last_line = line;
        let (u, v) = two_numbers(line, body)?;
        match g.add_edge(u, v) {
            Ok(true) => {}
            Ok(false) => return Err(ParseError::new(line, format!("duplicate edge {u} {v}"))),
            Err(e) => return Err(ParseError::new(line, e.to_string())),
        }
        if g.m() > m {
            return Err(ParseError::new(
                line,
                format!("more than the declared {m} edges"),
            ));
        }
    }
    if g.m() != m {
        return Err(ParseError::new(
            last_line,
            format!("header declares {m} edges but {} were listed", g.m()),
        ));
    }
    Ok(g)
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.m());
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").expect("writing to a String cannot fail");
    }
    out
}
