//! Exact and one-difference Cartesian Forest matching.
//!
//! Exact matching slides a [`WindowState`] over the text and compares the
//! window representation with the pattern's at every position. The
//! approximate variants report every window within at most one difference
//! of the pattern, so exact occurrences are always included.

mod approx;
mod oracle;

pub use approx::approx_match;
pub use oracle::oracle_window_match;

use std::fmt;
use std::ops::AddAssign;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::linear::{representation, Repr, WindowCounters, WindowState};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DiffKind {
    /// One transposition of adjacent window elements.
    Swap,
    /// One window element replaced by an arbitrary value.
    Mismatch,
    /// One extra element in the window (window length `m + 1`).
    Insertion,
    /// One pattern element missing from the window (window length `m - 1`).
    Deletion,
}

impl DiffKind {
    pub const ALL: [DiffKind; 4] = [
        DiffKind::Swap,
        DiffKind::Mismatch,
        DiffKind::Insertion,
        DiffKind::Deletion,
    ];

    /// Window length used against a pattern of length `m`.
    pub fn window_len(self, m: usize) -> usize {
        match self {
            DiffKind::Swap | DiffKind::Mismatch => m,
            DiffKind::Insertion => m + 1,
            DiffKind::Deletion => m.saturating_sub(1),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            DiffKind::Swap => "swap",
            DiffKind::Mismatch => "mismatch",
            DiffKind::Insertion => "insertion",
            DiffKind::Deletion => "deletion",
        }
    }
}

impl fmt::Display for DiffKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DiffKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        DiffKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| format!("unknown difference kind {s:?}"))
    }
}

/// Work counters of one search.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Counters {
    pub element_comparisons: u64,
    /// Reads and writes of stored entries during window upkeep. Reported
    /// but not counted as comparisons.
    pub repr_accesses: u64,
    /// Window-versus-pattern entry comparisons, plus the offset test that
    /// clips each Parent-Distance entry read.
    pub repr_comparisons: u64,
    pub filter_comparisons: u64,
    pub windows: u64,
    /// Windows whose full representation (or candidate) was checked.
    pub full_checks: u64,
}

impl Counters {
    /// Element, representation and filter comparisons.
    pub fn comparisons(&self) -> u64 {
        self.element_comparisons + self.repr_comparisons + self.filter_comparisons
    }

    pub(crate) fn absorb_window(&mut self, w: WindowCounters) {
        self.element_comparisons += w.element_comparisons;
        self.repr_accesses += w.repr_accesses;
    }
}

impl AddAssign for Counters {
    fn add_assign(&mut self, o: Self) {
        self.element_comparisons += o.element_comparisons;
        self.repr_accesses += o.repr_accesses;
        self.repr_comparisons += o.repr_comparisons;
        self.filter_comparisons += o.filter_comparisons;
        self.windows += o.windows;
        self.full_checks += o.full_checks;
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MatchResult {
    /// 1-based window start positions, strictly increasing.
    pub positions: Vec<usize>,
    pub counters: Counters,
}

/// Compares the window representation with `pattern`, stopping at the first
/// difference.
pub(crate) fn window_equals<T: Ord>(
    w: &WindowState<'_, T>,
    pattern: &[i64],
    counters: &mut Counters,
) -> bool {
    let clip = u64::from(w.repr() == Repr::Pd);
    for (i, &p) in pattern.iter().enumerate() {
        counters.repr_comparisons += 1 + clip;
        if w.get(i) != p {
            return false;
        }
    }
    true
}

/// All positions `j` with `t[j..j+m-1]` having the same Cartesian forest as
/// `p`, using the chosen representation.
pub fn exact_match<T: Ord>(p: &[T], t: &[T], repr: Repr) -> Result<MatchResult> {
    if p.is_empty() {
        return Err(Error::EmptyPattern);
    }
    let mut result = MatchResult::default();
    if p.len() > t.len() {
        return Ok(result);
    }
    let pattern = representation(p, repr);
    let counters = &mut result.counters;
    let mut w = WindowState::new(t, p.len(), repr)?;
    loop {
        counters.windows += 1;
        counters.full_checks += 1;
        if window_equals(&w, &pattern, counters) {
            result.positions.push(w.start() + 1);
        }
        if !w.can_slide() {
            break;
        }
        w.slide()?;
    }
    counters.absorb_window(w.counters());
    Ok(result)
}
