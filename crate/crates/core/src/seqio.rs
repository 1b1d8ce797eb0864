//! Plain-text sequence format: one sequence per line, whitespace-separated
//! signed 64-bit decimals. Blank lines and lines starting with `#` are
//! skipped.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::Sequence;

pub fn parse_sequences(text: &str) -> Result<Vec<Sequence>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        out.push(parse_line(trimmed, i + 1)?);
    }
    Ok(out)
}

/// Parses a single line of tokens; `line` is only used in error messages.
pub fn parse_line(text: &str, line: usize) -> Result<Sequence> {
    text.split_whitespace()
        .map(|tok| {
            tok.parse::<i64>().map_err(|e| Error::Parse {
                line,
                reason: format!("{tok:?}: {e}"),
            })
        })
        .collect()
}

pub fn parse_sequence_file(path: impl AsRef<Path>) -> Result<Vec<Sequence>> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse {
        line: 0,
        reason: format!("{}: {e}", path.display()),
    })?;
    parse_sequences(&text)
}

pub fn format_sequence(x: &[i64]) -> String {
    let mut s = String::new();
    for (i, v) in x.iter().enumerate() {
        if i > 0 {
            s.push(' ');
        }
        let _ = write!(s, "{v}");
    }
    s
}
