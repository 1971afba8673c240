//! Combinatorial simple 3-polytopes and simplicial 2-spheres.

mod polytope;
mod sphere;

pub use polytope::{FaceHistogram, PolytopeError, SimplePolytope3};
pub use sphere::{SimplicialSphere2, SphereError};

use std::fmt;

/// A syntax error in one of the line-based text formats, with its 1-based line number.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError { line, message: message.into() }
    }
}

/// Non-empty, non-comment lines of a document with their 1-based line numbers.
/// Everything after `#` is a comment.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(k, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((k + 1, line))
    })
}

/// Parses `<tag> <id>: rest` (or `<tag>: rest` when `id` is not expected) and returns
/// the id and the remaining text.
pub(crate) fn split_record<'a>(
    line_no: usize,
    line: &'a str,
    tag: &str,
) -> Result<(Option<usize>, &'a str), ParseError> {
    let (head, rest) = line
        .split_once(':')
        .ok_or_else(|| ParseError::new(line_no, format!("expected `{tag} ...: ...`")))?;
    let mut head_tokens = head.split_whitespace();
    if head_tokens.next() != Some(tag) {
        return Err(ParseError::new(line_no, format!("expected record tag `{tag}`")));
    }
    let id = match head_tokens.next() {
        Some(tok) => Some(
            tok.parse::<usize>()
                .map_err(|_| ParseError::new(line_no, format!("bad id `{tok}`")))?,
        ),
        None => None,
    };
    if head_tokens.next().is_some() {
        return Err(ParseError::new(line_no, "unexpected token before `:`"));
    }
    Ok((id, rest))
}

/// Parses a `<keyword> <value>` header line.
pub(crate) fn header<'a>(
    line: Option<(usize, &'a str)>,
    keyword: &str,
) -> Result<(usize, &'a str), ParseError> {
    let (no, line) = line.ok_or_else(|| ParseError::new(0, format!("missing `{keyword}` line")))?;
    match line.split_once(char::is_whitespace) {
        Some((kw, value)) if kw == keyword && !value.trim().is_empty() => Ok((no, value.trim())),
        _ => Err(ParseError::new(no, format!("expected `{keyword} <value>`"))),
    }
}

pub(crate) fn parse_count(no: usize, value: &str) -> Result<usize, ParseError> {
    value
        .parse::<usize>()
        .map_err(|_| ParseError::new(no, format!("bad count `{value}`")))
}

/// Formats an index set as `{a,b,c}`.
pub struct IndexSet<'a>(pub &'a [usize]);

impl fmt::Display for IndexSet<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}
