//! Linear representations of the Cartesian forest of a sequence.
//!
//! With `small(h)` the nearest earlier position holding a strictly smaller
//! value and `equal(h)` the nearest earlier position holding an equal value
//! (both 0 when absent, positions 1-based):
//!
//! * Parent-Distance: `h - small(h)` if `small(h) > equal(h)`,
//!   `-(h - equal(h))` if `small(h) < equal(h)`, else 0.
//! * Referent: the first later position holding a value `<=` the current one,
//!   or -1.
//! * Skipped-Number: the number of earlier positions whose referent is `h`,
//!   negated when `equal(h) > small(h)`. When both anchors are 0 the sign is
//!   positive.
//!
//! Every function here is a single left-to-right (or right-to-left) stack
//! pass. The nearest earlier position holding a value `<=` `x[h]` is exactly
//! whichever of `small(h)`/`equal(h)` is larger, which is what the stack
//! yields.

mod window;

pub use window::{WindowCounters, WindowState};

use std::cmp::Ordering;

/// Which linear representation a window maintains.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Repr {
    Pd,
    Sn,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ParentDistance(pub Vec<i64>);

/// 1-based referent positions, -1 when absent.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ReferentTable(pub Vec<i64>);

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SkippedNumber(pub Vec<i64>);

/// Result of one stack step: how many entries were popped and where the new
/// element attaches.
pub(crate) struct Step {
    pub popped: i64,
    /// nearest earlier position with value `<=`, and whether it is equal
    pub anchor: Option<(usize, bool)>,
}

/// Runs the nearest-smaller-or-equal stack over `x`, calling `on_step` for
/// every position and `on_pop(j, h)` whenever `ref(j) = h`.
pub(crate) fn scan_stack<T: Ord>(
    x: &[T],
    mut on_pop: impl FnMut(usize, usize),
    mut on_step: impl FnMut(usize, Step),
) {
    let mut stack: Vec<usize> = Vec::with_capacity(x.len());
    for (h, v) in x.iter().enumerate() {
        let mut popped = 0;
        let mut anchor = None;
        while let Some(&top) = stack.last() {
            match x[top].cmp(v) {
                Ordering::Greater => {
                    stack.pop();
                    on_pop(top, h);
                    popped += 1;
                }
                Ordering::Equal => {
                    stack.pop();
                    on_pop(top, h);
                    popped += 1;
                    anchor = Some((top, true));
                    break;
                }
                Ordering::Less => {
                    anchor = Some((top, false));
                    break;
                }
            }
        }
        stack.push(h);
        on_step(h, Step { popped, anchor });
    }
}

pub(crate) fn pd_value(h: usize, anchor: Option<(usize, bool)>) -> i64 {
    match anchor {
        None => 0,
        Some((a, false)) => (h - a) as i64,
        Some((a, true)) => -((h - a) as i64),
    }
}

pub fn parent_distance<T: Ord>(x: &[T]) -> ParentDistance {
    let mut pd = vec![0; x.len()];
    scan_stack(x, |_, _| {}, |h, step| pd[h] = pd_value(h, step.anchor));
    ParentDistance(pd)
}

/// Right-to-left Parent-Distance: the mirror image of [`parent_distance`],
/// measuring the distance to the nearest later smaller or equal element.
/// Equals `reverse(parent_distance(reverse(x)))`.
pub fn parent_distance_rtl<T: Ord>(x: &[T]) -> ParentDistance {
    let m = x.len();
    let mut pd = vec![0; m];
    let mut stack: Vec<usize> = Vec::with_capacity(m);
    for h in (0..m).rev() {
        let v = &x[h];
        pd[h] = 0;
        while let Some(&top) = stack.last() {
            match x[top].cmp(v) {
                Ordering::Greater => {
                    stack.pop();
                }
                Ordering::Equal => {
                    stack.pop();
                    pd[h] = -((top - h) as i64);
                    break;
                }
                Ordering::Less => {
                    pd[h] = (top - h) as i64;
                    break;
                }
            }
        }
        stack.push(h);
    }
    ParentDistance(pd)
}

pub fn referent_table<T: Ord>(x: &[T]) -> ReferentTable {
    let mut refs = vec![-1; x.len()];
    scan_stack(x, |j, h| refs[j] = h as i64 + 1, |_, _| {});
    ReferentTable(refs)
}

pub fn skipped_number<T: Ord>(x: &[T]) -> SkippedNumber {
    let mut sn = vec![0; x.len()];
    scan_stack(
        x,
        |_, _| {},
        |h, step| {
            sn[h] = match step.anchor {
                Some((_, true)) => -step.popped,
                _ => step.popped,
            }
        },
    );
    SkippedNumber(sn)
}

/// Computes the chosen representation from scratch.
pub fn representation<T: Ord>(x: &[T], repr: Repr) -> Vec<i64> {
    match repr {
        Repr::Pd => parent_distance(x).0,
        Repr::Sn => skipped_number(x).0,
    }
}
