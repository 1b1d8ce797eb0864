//! Parentheses words over `{(, ., )}`.
//!
//! `W := '.' | '(' W W+ ')'`. The canonical form keeps the outermost pair;
//! the display form drops it, so `((..).)` is shown as `(..).`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::forest::{CartesianForest, NodeId};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParenWord(String);

impl ParenWord {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// Display form: the outermost pair of parentheses is dropped.
    pub fn display(&self) -> &str {
        if self.0.len() > 1 {
            &self.0[1..self.0.len() - 1]
        } else {
            &self.0
        }
    }

    pub fn leaf_count(&self) -> usize {
        self.0.bytes().filter(|&b| b == b'.').count()
    }

    /// Parses either form. Input with two or more top-level constituents is
    /// taken to be in display form and re-wrapped.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let top = scan(s)?;
        if top >= 2 {
            Ok(Self(format!("({s})")))
        } else {
            Ok(Self(s.to_owned()))
        }
    }

    pub fn to_forest(&self) -> CartesianForest {
        build_forest(&self.0).expect("ParenWord is validated on construction")
    }
}

impl fmt::Display for ParenWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl FromStr for ParenWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

fn malformed(offset: usize, reason: &str) -> Error {
    Error::MalformedWord {
        offset,
        reason: reason.to_owned(),
    }
}

/// Checks the grammar and returns the number of top-level constituents.
fn scan(s: &str) -> Result<usize> {
    if s.is_empty() {
        return Err(malformed(0, "empty word"));
    }
    let mut open: Vec<usize> = Vec::new();
    let mut top = 0usize;
    for (i, b) in s.bytes().enumerate() {
        match b {
            b'.' => match open.last_mut() {
                Some(c) => *c += 1,
                None => top += 1,
            },
            b'(' => open.push(0),
            b')' => {
                let count = open.pop().ok_or_else(|| malformed(i, "unbalanced ')'"))?;
                if count < 2 {
                    return Err(malformed(i, "group with fewer than two constituents"));
                }
                match open.last_mut() {
                    Some(c) => *c += 1,
                    None => top += 1,
                }
            }
            _ => return Err(malformed(i, "unexpected character")),
        }
    }
    if !open.is_empty() {
        return Err(malformed(s.len(), "unclosed '('"));
    }
    Ok(top)
}

/// Serializes a forest following the left-then-rights recursion:
/// `.` for the empty forest, otherwise `(w(left r1) w(right r1) … w(right rk))`.
///
/// Visits at most `node_count()` nodes, so a malformed arena with cycles
/// yields a truncated word instead of looping.
pub(crate) fn forest_to_word(forest: &CartesianForest) -> String {
    enum Task<'a> {
        Level(&'a [NodeId]),
        Close,
    }
    let mut out = String::with_capacity(3 * forest.node_count() + 1);
    let mut budget = forest.node_count();
    let mut work = vec![Task::Level(forest.roots())];
    while let Some(task) = work.pop() {
        match task {
            Task::Close => out.push(')'),
            Task::Level([]) => out.push('.'),
            Task::Level(level) => {
                if budget < level.len() {
                    break;
                }
                budget -= level.len();
                out.push('(');
                work.push(Task::Close);
                for &id in level.iter().rev() {
                    work.push(Task::Level(forest.right(id)));
                }
                work.push(Task::Level(forest.left(level[0])));
            }
        }
    }
    out
}

/// Canonical parentheses word of a valid forest.
pub fn cf_to_parens(forest: &CartesianForest) -> Result<ParenWord> {
    forest.check()?;
    Ok(ParenWord(forest_to_word(forest)))
}

/// Inverse of [`cf_to_parens`]. Accepts canonical or display form.
pub fn parens_to_cf(word: &str) -> Result<CartesianForest> {
    ParenWord::parse(word).map(|w| w.to_forest())
}

fn build_forest(word: &str) -> Result<CartesianForest> {
    scan(word)?;
    let mut forest = CartesianForest::new();
    // each open group collects its constituents; a constituent is a list of roots
    let mut open: Vec<Vec<Vec<NodeId>>> = Vec::new();
    let mut result: Option<Vec<NodeId>> = None;
    for b in word.bytes() {
        let done = match b {
            b'.' => Some(Vec::new()),
            b'(' => {
                open.push(Vec::new());
                None
            }
            _ => {
                let parts = open.pop().expect("scanned");
                let mut parts = parts.into_iter();
                let first = parts.next().expect("scanned");
                let mut roots = Vec::new();
                for (i, right) in parts.enumerate() {
                    let id = forest.add_node();
                    if i == 0 {
                        for &c in &first {
                            forest.push_left(id, c);
                        }
                    }
                    for c in right {
                        forest.push_right(id, c);
                    }
                    roots.push(id);
                }
                Some(roots)
            }
        };
        if let Some(part) = done {
            match open.last_mut() {
                Some(group) => group.push(part),
                None => result = Some(part),
            }
        }
    }
    for id in result.unwrap_or_default() {
        forest.push_root(id);
    }
    Ok(forest)
}
