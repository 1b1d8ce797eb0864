//! The Cartesian Forest object and its construction from sequences.
//!
//! Forests live in an index arena. Every node owns two ordered lists of node
//! ids: its left sub-forest and its right sub-forest. Only the first root of a
//! list may have a non-empty left sub-forest.
//!
//! Forests built from a sequence use the 0-based position of each element as
//! its node id, so `node_count() == x.len()`.

use std::fmt;
use std::hash::{Hash, Hasher};

use crate::combinatorics::parens;
use crate::error::{Error, Result};

pub type NodeId = usize;

#[derive(Debug, Clone, Default)]
struct Node {
    left: Vec<NodeId>,
    right: Vec<NodeId>,
}

/// An ordered list of planar trees where only the first root at any level
/// may carry a left sub-forest.
///
/// Equality and hashing are structural: they go through [`ForestKey`], so
/// two forests with different node numbering compare equal when they have
/// the same shape.
#[derive(Clone, Default)]
pub struct CartesianForest {
    roots: Vec<NodeId>,
    nodes: Vec<Node>,
}

/// Canonical textual form of a forest (its parentheses word, outer pair kept).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ForestKey(pub String);

impl fmt::Display for ForestKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Clone, Copy)]
enum Slot {
    Top,
    Left(NodeId),
    Right(NodeId),
}

impl CartesianForest {
    pub fn new() -> Self {
        Self::default()
    }

    fn with_nodes(n: usize) -> Self {
        Self {
            roots: Vec::new(),
            nodes: vec![Node::default(); n],
        }
    }

    /// Allocates a detached node and returns its id.
    pub fn add_node(&mut self) -> NodeId {
        self.nodes.push(Node::default());
        self.nodes.len() - 1
    }

    pub fn push_root(&mut self, id: NodeId) {
        self.roots.push(id);
    }

    pub fn push_left(&mut self, parent: NodeId, child: NodeId) {
        self.nodes[parent].left.push(child);
    }

    pub fn push_right(&mut self, parent: NodeId, child: NodeId) {
        self.nodes[parent].right.push(child);
    }

    pub fn roots(&self) -> &[NodeId] {
        &self.roots
    }

    pub fn left(&self, id: NodeId) -> &[NodeId] {
        &self.nodes[id].left
    }

    pub fn right(&self, id: NodeId) -> &[NodeId] {
        &self.nodes[id].right
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    fn list_mut(&mut self, slot: Slot) -> &mut Vec<NodeId> {
        match slot {
            Slot::Top => &mut self.roots,
            Slot::Left(p) => &mut self.nodes[p].left,
            Slot::Right(p) => &mut self.nodes[p].right,
        }
    }

    /// Builds `F(x)` by direct recursion on the minimum positions.
    ///
    /// Quadratic in the worst case. This is the reference the linear builder
    /// is tested against. The recursion runs on an explicit work list so that
    /// sorted inputs do not exhaust the call stack.
    pub fn from_sequence_naive<T: Ord>(x: &[T]) -> Self {
        let mut forest = Self::with_nodes(x.len());
        let mut work = vec![(0usize, x.len(), Slot::Top)];
        while let Some((lo, hi, slot)) = work.pop() {
            if lo >= hi {
                continue;
            }
            let min = x[lo..hi].iter().min().expect("non-empty range");
            let minima: Vec<usize> = (lo..hi).filter(|&i| x[i] == *min).collect();
            let first = minima[0];
            work.push((lo, first, Slot::Left(first)));
            for pair in minima.windows(2) {
                work.push((pair[0] + 1, pair[1], Slot::Right(pair[0])));
            }
            let last = *minima.last().unwrap();
            work.push((last + 1, hi, Slot::Right(last)));
            *forest.list_mut(slot) = minima;
        }
        forest
    }

    /// Builds `F(x)` left to right, keeping the rightmost spine on a stack.
    ///
    /// Amortized constant work per element. Values on the stack are strictly
    /// increasing from bottom to top; each entry remembers the list it sits in.
    pub fn from_sequence<T: Ord>(x: &[T]) -> Self {
        let mut forest = Self::with_nodes(x.len());
        let mut spine: Vec<(NodeId, Slot)> = Vec::new();
        for (h, v) in x.iter().enumerate() {
            while matches!(spine.last(), Some(&(top, _)) if x[top] > *v) {
                spine.pop();
            }
            match spine.last().copied() {
                Some((s, slot)) if x[s] == *v => {
                    // h becomes the next sibling of s
                    spine.pop();
                    forest.list_mut(slot).push(h);
                    spine.push((h, slot));
                }
                top => {
                    let slot = match top {
                        Some((s, _)) => Slot::Right(s),
                        None => Slot::Top,
                    };
                    let below = std::mem::take(forest.list_mut(slot));
                    forest.nodes[h].left = below;
                    forest.list_mut(slot).push(h);
                    spine.push((h, slot));
                }
            }
        }
        forest
    }

    /// True iff every node is reachable exactly once and no non-first root of
    /// any level has a left sub-forest.
    pub fn is_valid(&self) -> bool {
        self.check().is_ok()
    }

    pub(crate) fn check(&self) -> Result<()> {
        let mut seen = vec![false; self.nodes.len()];
        let mut visited = 0usize;
        let mut work: Vec<&[NodeId]> = vec![&self.roots];
        while let Some(level) = work.pop() {
            for (i, &id) in level.iter().enumerate() {
                if id >= self.nodes.len() {
                    return Err(Error::InvalidForest(format!("node id {id} out of range")));
                }
                if std::mem::replace(&mut seen[id], true) {
                    return Err(Error::InvalidForest(format!("node {id} is shared")));
                }
                visited += 1;
                let node = &self.nodes[id];
                if i > 0 && !node.left.is_empty() {
                    return Err(Error::InvalidForest(format!(
                        "node {id} is not a first root but has a left sub-forest"
                    )));
                }
                work.push(&node.left);
                work.push(&node.right);
            }
        }
        if visited != self.nodes.len() {
            return Err(Error::InvalidForest(format!(
                "{} nodes are unreachable",
                self.nodes.len() - visited
            )));
        }
        Ok(())
    }

    pub fn key(&self) -> ForestKey {
        ForestKey(parens::forest_to_word(self))
    }

    /// A sequence whose forest is `self`: each root at nesting depth `d`
    /// gets value `d`.
    pub fn canonical_sequence(&self) -> Result<Vec<i64>> {
        self.check()?;
        enum Task<'a> {
            Level(&'a [NodeId], i64),
            Emit(i64),
        }
        let mut out = Vec::with_capacity(self.nodes.len());
        let mut work = vec![Task::Level(&self.roots, 1)];
        while let Some(task) = work.pop() {
            match task {
                Task::Emit(d) => out.push(d),
                Task::Level(level, depth) => {
                    for (i, &id) in level.iter().enumerate().rev() {
                        work.push(Task::Level(&self.nodes[id].right, depth + 1));
                        work.push(Task::Emit(depth));
                        if i == 0 {
                            work.push(Task::Level(&self.nodes[id].left, depth + 1));
                        }
                    }
                }
            }
        }
        Ok(out)
    }
}

/// Structural equality via canonical keys.
pub fn forests_equal(f: &CartesianForest, g: &CartesianForest) -> bool {
    f.node_count() == g.node_count() && f.key() == g.key()
}

impl PartialEq for CartesianForest {
    fn eq(&self, other: &Self) -> bool {
        forests_equal(self, other)
    }
}

impl Eq for CartesianForest {}

impl Hash for CartesianForest {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.key().hash(state);
    }
}

impl fmt::Debug for CartesianForest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CartesianForest({})", self.key())
    }
}
