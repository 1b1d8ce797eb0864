use std::cmp::Ordering;
use std::collections::VecDeque;

use super::Repr;
use crate::error::{Error, Result};

const NONE: usize = usize::MAX;

/// Work performed while maintaining a window.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct WindowCounters {
    /// Three-way comparisons between text elements.
    pub element_comparisons: u64,
    /// Reads and writes of representation and referent entries.
    pub repr_accesses: u64,
}

/// A window of fixed length sliding over a text, holding the linear
/// representation of the current window.
///
/// All per-position state lives in ring buffers of the window length, so the
/// state is `O(m)` regardless of the text length. The stack of the
/// nearest-smaller-or-equal pass only ever holds window positions: the
/// departing head is dropped from its bottom on every slide.
///
/// On a slide only two kinds of entries can change besides the new last one:
///
/// * Skipped-Number: the referent `r` of the departing head loses one
///   skipped position, and turns positive if its equal anchor was the head.
///   This is applied eagerly in constant time.
/// * Parent-Distance: every position anchored on the departing head drops to
///   0. Nothing is stored for this; an entry whose distance exceeds its
///   window offset is read as 0.
#[derive(Debug, Clone)]
pub struct WindowState<'a, T> {
    text: &'a [T],
    len: usize,
    start: usize,
    repr: Repr,
    values: Vec<i64>,
    refs: Vec<usize>,
    spine: VecDeque<usize>,
    changed: Vec<usize>,
    counters: WindowCounters,
}

impl<'a, T: Ord> WindowState<'a, T> {
    /// Window over `text[0..m]`.
    pub fn new(text: &'a [T], m: usize, repr: Repr) -> Result<Self> {
        if m == 0 || m > text.len() {
            return Err(Error::WindowLength { m, n: text.len() });
        }
        let mut state = Self {
            text,
            len: m,
            start: 0,
            repr,
            values: vec![0; m],
            refs: vec![NONE; m],
            spine: VecDeque::with_capacity(m),
            changed: Vec::with_capacity(4),
            counters: WindowCounters::default(),
        };
        for e in 0..m {
            state.push(e);
        }
        state.changed = (0..m).collect();
        Ok(state)
    }

    fn push(&mut self, e: usize) {
        let v = &self.text[e];
        let len = self.len;
        self.refs[e % len] = NONE;
        self.counters.repr_accesses += 1;
        let mut popped = 0i64;
        let mut anchor = None;
        while let Some(&top) = self.spine.back() {
            self.counters.element_comparisons += 1;
            let ord = self.text[top].cmp(v);
            if ord == Ordering::Less {
                anchor = Some((top, false));
                break;
            }
            self.spine.pop_back();
            self.refs[top % len] = e;
            self.counters.repr_accesses += 1;
            popped += 1;
            if ord == Ordering::Equal {
                anchor = Some((top, true));
                break;
            }
        }
        self.spine.push_back(e);
        self.values[e % len] = match self.repr {
            Repr::Pd => super::pd_value(e, anchor),
            Repr::Sn if matches!(anchor, Some((_, true))) => -popped,
            Repr::Sn => popped,
        };
        self.counters.repr_accesses += 1;
    }

    /// Advances the window by one position.
    pub fn slide(&mut self) -> Result<()> {
        if !self.can_slide() {
            return Err(Error::SlidePastEnd);
        }
        let len = self.len;
        let head = self.start;
        let end = self.start + len - 1;
        self.changed.clear();
        if self.repr == Repr::Sn {
            let head_ref = self.refs[head % len];
            self.counters.repr_accesses += 1;
            if head_ref != NONE {
                let slot = head_ref % len;
                let old = self.values[slot];
                let new = if old < 0 {
                    self.counters.element_comparisons += 1;
                    if self.text[head_ref] == self.text[head] {
                        -old - 1
                    } else {
                        old + 1
                    }
                } else {
                    old - 1
                };
                self.values[slot] = new;
                self.counters.repr_accesses += 2;
                self.changed.push(head_ref);
            }
        }
        if self.spine.front() == Some(&head) {
            self.spine.pop_front();
        }
        self.start += 1;
        self.push(end + 1);
        self.changed.push(end + 1);
        Ok(())
    }

    pub fn can_slide(&self) -> bool {
        self.start + self.len < self.text.len()
    }

    /// 0-based text position of the first window element.
    pub fn start(&self) -> usize {
        self.start
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn repr(&self) -> Repr {
        self.repr
    }

    /// Representation entry at window offset `i`.
    #[inline]
    pub fn get(&self, i: usize) -> i64 {
        let v = self.values[(self.start + i) % self.len];
        if self.repr == Repr::Pd && v.unsigned_abs() as usize > i {
            0
        } else {
            v
        }
    }

    pub fn values(&self) -> Vec<i64> {
        (0..self.len).map(|i| self.get(i)).collect()
    }

    pub fn window(&self) -> &'a [T] {
        &self.text[self.start..self.start + self.len]
    }

    /// Window offsets whose stored entry changed during the last slide. The
    /// new last offset is always included. Parent-Distance entries clipped on
    /// read are not reported.
    pub fn changed(&self) -> impl Iterator<Item = usize> + '_ {
        self.changed.iter().map(move |&p| p - self.start)
    }

    pub fn counters(&self) -> WindowCounters {
        self.counters
    }
}
