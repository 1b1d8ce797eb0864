//! Schröder trees: planar trees whose internal nodes have at least two
//! children. An `n`-node Cartesian forest corresponds to a Schröder tree with
//! `n + 1` leaves.
//!
//! Text form: a leaf is `*`, an internal node is `[` followed by its
//! children and `]`. The root with three leaf children is `[***]`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::forest::{CartesianForest, NodeId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchroderTree {
    /// children of every node; an empty list marks a leaf
    children: Vec<Vec<usize>>,
    root: usize,
}

impl SchroderTree {
    pub fn leaf() -> Self {
        Self {
            children: vec![Vec::new()],
            root: 0,
        }
    }

    /// Builds a tree from raw child lists. The result is checked.
    pub fn from_parts(children: Vec<Vec<usize>>, root: usize) -> Result<Self> {
        let tree = Self { children, root };
        tree.check()?;
        Ok(tree)
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn children(&self, node: usize) -> &[usize] {
        &self.children[node]
    }

    pub fn leaf_count(&self) -> usize {
        self.children.iter().filter(|c| c.is_empty()).count()
    }

    fn check(&self) -> Result<()> {
        let n = self.children.len();
        if self.root >= n {
            return Err(Error::InvalidSchroder("root out of range".into()));
        }
        let mut seen = vec![false; n];
        seen[self.root] = true;
        let mut visited = 1;
        let mut work = vec![self.root];
        while let Some(v) = work.pop() {
            let kids = &self.children[v];
            if kids.len() == 1 {
                return Err(Error::InvalidSchroder(format!(
                    "internal node {v} has a single child"
                )));
            }
            for &c in kids {
                if c >= n || std::mem::replace(&mut seen[c], true) {
                    return Err(Error::InvalidSchroder(format!("bad child reference {c}")));
                }
                visited += 1;
                work.push(c);
            }
        }
        if visited != n {
            return Err(Error::InvalidSchroder("unreachable nodes".into()));
        }
        Ok(())
    }

    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = |i: usize, why: &str| Error::InvalidSchroder(format!("offset {i}: {why}"));
        let mut children: Vec<Vec<usize>> = Vec::new();
        let mut open: Vec<usize> = Vec::new();
        let mut root = None;
        for (i, b) in s.bytes().enumerate() {
            if root.is_some() {
                return Err(bad(i, "trailing input"));
            }
            let closed = match b {
                b'*' => {
                    children.push(Vec::new());
                    Some(children.len() - 1)
                }
                b'[' => {
                    children.push(Vec::new());
                    open.push(children.len() - 1);
                    None
                }
                b']' => {
                    let v = open.pop().ok_or_else(|| bad(i, "unbalanced ']'"))?;
                    if children[v].len() < 2 {
                        return Err(bad(i, "internal node with fewer than two children"));
                    }
                    Some(v)
                }
                _ => return Err(bad(i, "unexpected character")),
            };
            if let Some(v) = closed {
                match open.last() {
                    Some(&p) => children[p].push(v),
                    None => root = Some(v),
                }
            }
        }
        let root = root.ok_or_else(|| bad(s.len(), "incomplete tree"))?;
        Ok(Self { children, root })
    }
}

impl fmt::Display for SchroderTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        enum Tok {
            Node(usize),
            Close,
        }
        let mut work = vec![Tok::Node(self.root)];
        while let Some(tok) = work.pop() {
            match tok {
                Tok::Close => f.write_str("]")?,
                Tok::Node(v) if self.children[v].is_empty() => f.write_str("*")?,
                Tok::Node(v) => {
                    f.write_str("[")?;
                    work.push(Tok::Close);
                    work.extend(self.children[v].iter().rev().map(|&c| Tok::Node(c)));
                }
            }
        }
        Ok(())
    }
}

impl FromStr for SchroderTree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

/// Maps a forest with `k` roots to a node with `k + 1` subtrees: the image of
/// `left(r1)` followed by the images of `right(r1)`, …, `right(rk)`.
pub fn cf_to_schroder(forest: &CartesianForest) -> Result<SchroderTree> {
    forest.check()?;
    let mut children: Vec<Vec<usize>> = Vec::with_capacity(2 * forest.node_count() + 1);
    let mut work: Vec<(&[NodeId], Option<usize>)> = vec![(forest.roots(), None)];
    while let Some((level, parent)) = work.pop() {
        let v = children.len();
        children.push(Vec::new());
        if let Some(p) = parent {
            children[p].push(v);
        }
        if let Some(&first) = level.first() {
            for &r in level.iter().rev() {
                work.push((forest.right(r), Some(v)));
            }
            work.push((forest.left(first), Some(v)));
        }
    }
    Ok(SchroderTree { children, root: 0 })
}

#[derive(Clone, Copy)]
enum Target {
    Top,
    Left(NodeId),
    Right(NodeId),
}

/// Inverse of [`cf_to_schroder`].
pub fn schroder_to_cf(tree: &SchroderTree) -> Result<CartesianForest> {
    tree.check()?;
    let mut forest = CartesianForest::new();
    let mut work = vec![(tree.root, Target::Top)];
    while let Some((v, target)) = work.pop() {
        let kids = &tree.children[v];
        if kids.is_empty() {
            continue;
        }
        let roots: Vec<NodeId> = (1..kids.len()).map(|_| forest.add_node()).collect();
        for &r in &roots {
            match target {
                Target::Top => forest.push_root(r),
                Target::Left(p) => forest.push_left(p, r),
                Target::Right(p) => forest.push_right(p, r),
            }
        }
        work.push((kids[0], Target::Left(roots[0])));
        for (i, &r) in roots.iter().enumerate() {
            work.push((kids[i + 1], Target::Right(r)));
        }
    }
    Ok(forest)
}
