//! One-difference matching.
//!
//! For every window the longest prefix agreeing with the pattern (compared
//! through left-to-right Parent-Distance) and the longest suffix agreeing with
//! it (compared through right-to-left Parent-Distance) bound where the single
//! difference can sit. Each position in that range is then verified exactly.
//! Swap matching additionally discards windows whose Skipped-Number differs
//! from the pattern's in more than three entries by absolute value, since an
//! adjacent transposition never changes more than three.
//!
//! Window Parent-Distances are read off text-wide nearest smaller-or-equal
//! tables: an anchor that falls outside the window simply reads as 0.

use std::cmp::Ordering;

use super::oracle::doubled_ranks;
use super::{Counters, DiffKind, MatchResult};
use crate::error::{Error, Result};
use crate::linear::{parent_distance, parent_distance_rtl, skipped_number, Repr, WindowState};

/// Nearest smaller-or-equal neighbour on each side, with an equality flag.
struct Anchors {
    prev: Vec<Option<(usize, bool)>>,
    next: Vec<Option<(usize, bool)>>,
}

impl Anchors {
    fn new<T: Ord>(t: &[T], counters: &mut Counters) -> Self {
        let n = t.len();
        let mut prev = vec![None; n];
        let mut next = vec![None; n];
        let mut stack: Vec<usize> = Vec::with_capacity(n);
        for h in 0..n {
            while let Some(&top) = stack.last() {
                counters.element_comparisons += 1;
                match t[top].cmp(&t[h]) {
                    Ordering::Greater => {
                        next[top] = Some((h, false));
                        stack.pop();
                    }
                    Ordering::Equal => {
                        next[top] = Some((h, true));
                        prev[h] = Some((top, true));
                        stack.pop();
                        break;
                    }
                    Ordering::Less => {
                        prev[h] = Some((top, false));
                        break;
                    }
                }
            }
            stack.push(h);
        }
        Self { prev, next }
    }

    /// Left-to-right PD of text position `g` inside a window starting at `start`.
    #[inline]
    fn pd(&self, g: usize, start: usize) -> i64 {
        match self.prev[g] {
            Some((a, eq)) if a >= start => signed(g - a, eq),
            _ => 0,
        }
    }

    /// Right-to-left PD of text position `g` inside a window ending before `end`.
    #[inline]
    fn rtl(&self, g: usize, end: usize) -> i64 {
        match self.next[g] {
            Some((b, eq)) if b < end => signed(b - g, eq),
            _ => 0,
        }
    }
}

#[inline]
fn signed(d: usize, negative: bool) -> i64 {
    if negative {
        -(d as i64)
    } else {
        d as i64
    }
}

struct Pattern {
    pd: Vec<i64>,
    rtl: Vec<i64>,
    /// PD of the pattern with position i removed, for deletion matching
    pd_without: Vec<Vec<i64>>,
}

/// Inclusive range of positions `i` where the single difference can sit,
/// given the agreeing prefix and suffix lengths. Empty when `lo > hi`.
fn candidates(kind: DiffKind, m: usize, pref: usize, suf: usize) -> (usize, usize) {
    match kind {
        // swap i <-> i+1: prefix [0, i) and suffix [i+2, m) must agree
        DiffKind::Swap if m < 2 => (1, 0),
        DiffKind::Swap => ((m - 2).saturating_sub(suf), pref.min(m - 2)),
        // replace i: prefix [0, i) and suffix (i, m) must agree
        DiffKind::Mismatch => ((m - 1).saturating_sub(suf), pref.min(m - 1)),
        // drop window position i (the window has m + 1 elements)
        DiffKind::Insertion => (m.saturating_sub(suf), pref.min(m)),
        // drop pattern position i (the window has m - 1 elements)
        DiffKind::Deletion => ((m - 1).saturating_sub(suf), pref.min(m - 1)),
    }
}

fn pd_equals<T: Ord>(x: &[T], target: &[i64], counters: &mut Counters) -> bool {
    counters.full_checks += 1;
    counters.repr_comparisons += x.len() as u64;
    parent_distance(x).0 == target
}

/// Finds a replacement for window position `i` compatible with every
/// pattern relation that involves `i`, then verifies the whole window.
fn mismatch_at(ranks: &[i64], i: usize, target: &[i64], counters: &mut Counters) -> bool {
    let m = ranks.len();
    let mut lo = i64::MIN; // replacement must be > lo
    let mut hi = i64::MAX; // and < hi
    let mut eq: Option<i64> = None;
    let mut consistent = true;
    let mut require_eq = |v: i64, eq: &mut Option<i64>| match *eq {
        Some(e) if e != v => consistent = false,
        _ => *eq = Some(v),
    };

    let d = target[i];
    let first_between = if d == 0 {
        0
    } else {
        let a = i - d.unsigned_abs() as usize;
        if d > 0 {
            lo = lo.max(ranks[a]);
        } else {
            require_eq(ranks[a], &mut eq);
        }
        a + 1
    };
    for &r in &ranks[first_between..i] {
        hi = hi.min(r);
    }
    for h in i + 1..m {
        let d = target[h];
        if d == 0 {
            lo = lo.max(ranks[h]);
            continue;
        }
        let a = h - d.unsigned_abs() as usize;
        match a.cmp(&i) {
            Ordering::Less => lo = lo.max(ranks[h]),
            Ordering::Equal if d > 0 => hi = hi.min(ranks[h]),
            Ordering::Equal => require_eq(ranks[h], &mut eq),
            Ordering::Greater => {}
        }
    }
    counters.repr_comparisons += m as u64;
    if !consistent {
        return false;
    }
    let value = match eq {
        Some(e) if lo < e && e < hi => e,
        Some(_) => return false,
        None if lo == i64::MIN => {
            if hi == i64::MAX {
                1
            } else {
                hi - 1
            }
        }
        None if lo + 1 < hi => lo + 1,
        None => return false,
    };
    let mut w = ranks.to_vec();
    w[i] = value;
    pd_equals(&w, target, counters)
}

fn abs_mismatches<T: Ord>(w: &WindowState<'_, T>, sn: &[i64], counters: &mut Counters) -> usize {
    let mut diff = 0;
    for (i, &s) in sn.iter().enumerate() {
        counters.repr_comparisons += 1;
        if w.get(i).abs() != s.abs() {
            diff += 1;
            if diff > 3 {
                break;
            }
        }
    }
    diff
}

/// All windows within one difference of `kind` from `p`.
///
/// Positions are 1-based window starts; windows have length
/// `kind.window_len(p.len())`. The result always equals the brute-force
/// [`oracle_window_match`](super::oracle_window_match) applied to every
/// window.
pub fn approx_match<T: Ord + Clone>(p: &[T], t: &[T], kind: DiffKind) -> Result<MatchResult> {
    let m = p.len();
    if m == 0 {
        return Err(Error::EmptyPattern);
    }
    if kind == DiffKind::Deletion && m < 2 {
        return Err(Error::PatternTooShort);
    }
    let wlen = kind.window_len(m);
    let mut result = MatchResult::default();
    if wlen > t.len() {
        return Ok(result);
    }
    let counters = &mut result.counters;

    let pattern = Pattern {
        pd: parent_distance(p).0,
        rtl: parent_distance_rtl(p).0,
        pd_without: if kind == DiffKind::Deletion {
            (0..m)
                .map(|i| {
                    let mut q = p.to_vec();
                    q.remove(i);
                    parent_distance(&q).0
                })
                .collect()
        } else {
            Vec::new()
        },
    };
    let anchors = Anchors::new(t, counters);
    let (mut sn_window, sn_pattern) = if kind == DiffKind::Swap {
        (Some(WindowState::new(t, m, Repr::Sn)?), skipped_number(p).0)
    } else {
        (None, Vec::new())
    };

    let overlap = wlen.min(m);
    for start in 0..=t.len() - wlen {
        counters.windows += 1;
        if start > 0 {
            if let Some(w) = sn_window.as_mut() {
                w.slide()?;
            }
        }
        let end = start + wlen;
        let window = &t[start..end];

        let mut pref = 0;
        while pref < overlap {
            counters.repr_comparisons += 1;
            if anchors.pd(start + pref, start) != pattern.pd[pref] {
                break;
            }
            pref += 1;
        }
        let same_length = matches!(kind, DiffKind::Swap | DiffKind::Mismatch);
        if same_length && pref == m {
            result.positions.push(start + 1);
            continue;
        }
        let mut suf = 0;
        while suf < overlap {
            counters.repr_comparisons += 1;
            if anchors.rtl(end - 1 - suf, end) != pattern.rtl[m - 1 - suf] {
                break;
            }
            suf += 1;
        }
        let (lo, hi) = candidates(kind, m, pref, suf);
        if lo > hi {
            continue;
        }

        let found = match kind {
            DiffKind::Swap => {
                let w = sn_window.as_ref().expect("swap keeps a window");
                abs_mismatches(w, &sn_pattern, counters) <= 3
                    && (lo..=hi).any(|i| {
                        let mut v = window.to_vec();
                        v.swap(i, i + 1);
                        pd_equals(&v, &pattern.pd, counters)
                    })
            }
            DiffKind::Mismatch => {
                let ranks = doubled_ranks(window);
                (lo..=hi).any(|i| mismatch_at(&ranks, i, &pattern.pd, counters))
            }
            DiffKind::Insertion => (lo..=hi).any(|i| {
                let mut v = window.to_vec();
                v.remove(i);
                pd_equals(&v, &pattern.pd, counters)
            }),
            DiffKind::Deletion => {
                let pd: Vec<i64> = (start..end).map(|g| anchors.pd(g, start)).collect();
                (lo..=hi).any(|i| {
                    counters.full_checks += 1;
                    counters.repr_comparisons += pd.len() as u64;
                    pattern.pd_without[i] == pd
                })
            }
        };
        if found {
            result.positions.push(start + 1);
        }
    }
    if let Some(w) = sn_window {
        counters.absorb_window(w.counters());
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::super::oracle_window_match;
    use super::*;

    fn oracle_scan(p: &[i64], t: &[i64], kind: DiffKind) -> Vec<usize> {
        let wlen = kind.window_len(p.len());
        if wlen > t.len() {
            return Vec::new();
        }
        (0..=t.len() - wlen)
            .filter(|&j| oracle_window_match(p, &t[j..j + wlen], Some(kind)).unwrap())
            .map(|j| j + 1)
            .collect()
    }

    fn all_sequences(len: usize, alphabet: usize) -> impl Iterator<Item = Vec<i64>> {
        (0..alphabet.pow(len as u32)).map(move |mut code| {
            (0..len)
                .map(|_| {
                    let d = (code % alphabet) as i64 + 1;
                    code /= alphabet;
                    d
                })
                .collect()
        })
    }

    #[test]
    fn examples() {
        let m = |p: &[i64], t: &[i64], k| approx_match(p, t, k).unwrap().positions;
        assert_eq!(m(&[1, 2, 3], &[2, 1, 3], DiffKind::Swap), [1]);
        assert_eq!(m(&[1, 2], &[1, 2], DiffKind::Swap), [1]);
        assert_eq!(m(&[1, 2, 3], &[1, 3, 2, 9], DiffKind::Mismatch), [1, 2]);
        assert_eq!(m(&[1, 2], &[1, 5, 2], DiffKind::Insertion), [1]);
        assert_eq!(m(&[1, 2, 3], &[1, 2], DiffKind::Deletion), [1]);
    }

    #[test]
    fn errors() {
        assert_eq!(
            approx_match::<i64>(&[], &[1, 2], DiffKind::Swap),
            Err(Error::EmptyPattern)
        );
        assert_eq!(
            approx_match(&[1], &[1, 2], DiffKind::Deletion),
            Err(Error::PatternTooShort)
        );
        assert!(approx_match(&[1, 2, 3], &[1], DiffKind::Mismatch)
            .unwrap()
            .positions
            .is_empty());
    }

    /// Every pattern of length <= 4 over {1..4} against every window.
    #[test]
    fn exhaustive_small_windows() {
        for kind in DiffKind::ALL {
            for m in 1..=4usize {
                if kind == DiffKind::Deletion && m < 2 {
                    continue;
                }
                let wlen = kind.window_len(m);
                let windows: Vec<Vec<i64>> = all_sequences(wlen, 4).collect();
                for p in all_sequences(m, 4) {
                    let text: Vec<i64> = windows.iter().flatten().copied().collect();
                    // one long text visits every window at aligned offsets
                    let got = approx_match(&p, &text, kind).unwrap().positions;
                    assert_eq!(got, oracle_scan(&p, &text, kind), "{kind} {p:?}");
                }
            }
        }
    }

    #[test]
    fn random_against_oracle() {
        let mut s = 0x9E3779B97F4A7C15u64;
        let mut next = |k: u64| {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1);
            ((s >> 33) % k) as i64
        };
        for kind in DiffKind::ALL {
            for _ in 0..120 {
                let m = 2 + next(6) as usize;
                let k = [2u64, 3, m as u64][next(3) as usize];
                let p: Vec<i64> = (0..m).map(|_| next(k)).collect();
                let t: Vec<i64> = (0..30).map(|_| next(k)).collect();
                assert_eq!(
                    approx_match(&p, &t, kind).unwrap().positions,
                    oracle_scan(&p, &t, kind),
                    "{kind} p={p:?} t={t:?}"
                );
            }
        }
    }

    #[test]
    fn exact_occurrences_are_contained() {
        let p = [2, 3, 1, 4, 1, 5];
        let t = [5, 7, 3, 6, 3, 7, 2, 8, 2, 4, 3, 3];
        for kind in [DiffKind::Swap, DiffKind::Mismatch] {
            let got = approx_match(&p, &t, kind).unwrap().positions;
            assert!(got.contains(&1) && got.contains(&5));
        }
    }
}
