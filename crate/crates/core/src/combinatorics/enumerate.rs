//! Exhaustive generation of Cartesian forests from the recursive
//! decomposition `F = node(F, F) × S + ∅`, `S = node(∅, F) × S + ∅`.
//!
//! Forests are produced as canonical parentheses words; a forest with a first
//! root `(left, right)` followed by siblings `right_2, …, right_k` is the word
//! `( w(left) w(right) w(right_2) … w(right_k) )`.

use crate::error::{Error, Result};
use crate::forest::CartesianForest;

use super::parens::ParenWord;

pub const MAX_ENUMERATION: usize = 12;

/// Memo tables of words for forests (`forests[n]`) and sibling runs
/// (`siblings[n]`, the concatenated constituents of roots 2..k).
struct Tables {
    forests: Vec<Vec<String>>,
    siblings: Vec<Vec<String>>,
}

impl Tables {
    fn new() -> Self {
        Self {
            forests: vec![vec![".".to_owned()]],
            siblings: vec![vec![String::new()]],
        }
    }

    /// Fills both tables up to size `n`.
    fn extend_to(&mut self, n: usize) {
        while self.forests.len() <= n {
            let size = self.forests.len();
            let mut sibs = Vec::new();
            for right in 0..size {
                for w in &self.forests[right] {
                    for rest in &self.siblings[size - 1 - right] {
                        sibs.push(format!("{w}{rest}"));
                    }
                }
            }
            self.siblings.push(sibs);
            let mut words = Vec::new();
            self.for_each_top(size, |w| words.push(w));
            self.forests.push(words);
        }
    }

    /// Calls `emit` with every forest word of size `n`, using the tables for
    /// all smaller sizes (which must already be filled).
    fn for_each_top(&self, n: usize, mut emit: impl FnMut(String)) {
        if n == 0 {
            emit(".".to_owned());
            return;
        }
        for left in 0..n {
            for right in 0..n - left {
                let rest = n - 1 - left - right;
                for lw in &self.forests[left] {
                    for rw in &self.forests[right] {
                        for sw in &self.siblings[rest] {
                            emit(format!("({lw}{rw}{sw})"));
                        }
                    }
                }
            }
        }
    }
}

/// Streams every forest word with `n` nodes without materializing the list.
pub fn for_each_forest_word(n: usize, mut visit: impl FnMut(&ParenWord)) -> Result<()> {
    if n > MAX_ENUMERATION {
        return Err(Error::EnumerationBudget(n));
    }
    let mut tables = Tables::new();
    if n > 0 {
        tables.extend_to(n - 1);
    }
    tables.for_each_top(n, |w| {
        let word = ParenWord::parse(&w).expect("generated words follow the grammar");
        visit(&word);
    });
    Ok(())
}

/// All structurally distinct forests with `n` nodes.
pub fn enumerate_forests(n: usize) -> Result<Vec<CartesianForest>> {
    let mut out = Vec::new();
    for_each_forest_word(n, |w| out.push(w.to_forest()))?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn small_sizes() {
        let zero = enumerate_forests(0).unwrap();
        assert_eq!(zero.len(), 1);
        assert!(zero[0].is_empty());

        let mut two = Vec::new();
        for_each_forest_word(2, |w| two.push(w.display().to_owned())).unwrap();
        two.sort();
        assert_eq!(two, ["(..).", ".(..)", "..."]);
    }

    #[test]
    fn counts_and_uniqueness() {
        let expected = [1usize, 1, 3, 11, 45, 197, 903, 4279];
        for (n, &e) in expected.iter().enumerate() {
            let forests = enumerate_forests(n).unwrap();
            assert_eq!(forests.len(), e);
            let keys: HashSet<_> = forests.iter().map(|f| f.key()).collect();
            assert_eq!(keys.len(), e);
            assert!(forests.iter().all(|f| f.is_valid() && f.node_count() == n));
        }
    }

    #[test]
    fn budget_guard() {
        assert_eq!(
            enumerate_forests(13).unwrap_err(),
            Error::EnumerationBudget(13)
        );
    }
}
