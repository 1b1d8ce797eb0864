//! Brute-force window semantics. Every variant is decided by building
//! forests with the quadratic builder and comparing canonical keys; this is
//! the reference [`approx_match`](super::approx_match) must reproduce.

use crate::error::{Error, Result};
use crate::forest::{CartesianForest, ForestKey};

use super::DiffKind;

fn key<T: Ord>(x: &[T]) -> ForestKey {
    CartesianForest::from_sequence_naive(x).key()
}

/// Dense ranks doubled and offset by 2, so every gap between (and around)
/// the values has a free odd slot.
pub(crate) fn doubled_ranks<T: Ord>(w: &[T]) -> Vec<i64> {
    let mut order: Vec<usize> = (0..w.len()).collect();
    order.sort_by(|&a, &b| w[a].cmp(&w[b]));
    let mut ranks = vec![0; w.len()];
    let mut rank = 2;
    for (i, &j) in order.iter().enumerate() {
        if i > 0 && w[order[i - 1]] != w[j] {
            rank += 2;
        }
        ranks[j] = rank;
    }
    ranks
}

/// Decides whether `w` matches `p` with at most one difference of `kind`
/// (`None` asks for an exact match).
pub fn oracle_window_match<T: Ord + Clone>(
    p: &[T],
    w: &[T],
    kind: Option<DiffKind>,
) -> Result<bool> {
    let m = p.len();
    let expected = kind.map_or(m, |k| k.window_len(m));
    if w.len() != expected || (kind == Some(DiffKind::Deletion) && m < 2) {
        return Err(Error::WindowMismatch {
            kind: kind.map_or("exact", DiffKind::name),
            got: w.len(),
            pattern: m,
        });
    }
    let target = key(p);
    let exact = || key(w) == target;
    Ok(match kind {
        None => exact(),
        Some(DiffKind::Swap) => {
            exact()
                || (0..m.saturating_sub(1)).any(|i| {
                    let mut v = w.to_vec();
                    v.swap(i, i + 1);
                    key(&v) == target
                })
        }
        Some(DiffKind::Mismatch) => {
            let ranks = doubled_ranks(w);
            let top = ranks.iter().max().copied().unwrap_or(0) + 1;
            exact()
                || (0..m).any(|i| {
                    (1..=top).any(|value| {
                        let mut v = ranks.clone();
                        v[i] = value;
                        key(&v) == target
                    })
                })
        }
        Some(DiffKind::Insertion) => (0..w.len()).any(|i| {
            let mut v = w.to_vec();
            v.remove(i);
            key(&v) == target
        }),
        Some(DiffKind::Deletion) => {
            let window = key(w);
            (0..m).any(|i| {
                let mut q = p.to_vec();
                q.remove(i);
                key(&q) == window
            })
        }
    })
}
