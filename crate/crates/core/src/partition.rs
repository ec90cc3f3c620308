//! Separator keys: countably many open classes covering `P(X)`.
//!
//! For a condition `p = {x_0 < … < x_k}` the key is the tuple of prefixes
//! `t_i = x_i | l` at a common cut level `l`, chosen so that every tuple
//! `(y_0, …, y_k)` with `t_i ⊑ y_i` is again an anti-clique. The class of `p`
//! is the set of conditions obtained this way, one element above each `t_i`.
//!
//! The cut level is the least `l` such that
//!
//! * `l > |Δ(x_i, x_j)|` for every pair, so the prefixes are distinct and
//!   every extension tuple keeps the same pairwise meets, and
//! * for every pair whose meet `d` is dense and which differs somewhere after
//!   `|d|`, the first such difference lies below `l`,
//!
//! raised to `min_len` when that is larger. Any edge inside an extension
//! tuple then lifts back to an edge inside `p`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::branch::{delta, Branch, Node};
use crate::condition::Condition;
use crate::error::{Error, Result};
use crate::hypergraph::HypergraphKind;

/// Which way a condition with at least two elements avoids being an edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CaseTag {
    /// Some pairwise meet is not a dense node.
    Case1,
    /// All meets are dense, but not all equal.
    Case2,
    /// All meets equal one dense node.
    Case3,
    Singleton,
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CaseTag::Case1 => "case1",
            CaseTag::Case2 => "case2",
            CaseTag::Case3 => "case3",
            CaseTag::Singleton => "singleton",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "KeyWire")]
pub struct SeparatorKey {
    kind: HypergraphKind,
    nodes: Vec<Node>,
    min_len: usize,
}

#[derive(Deserialize)]
struct KeyWire {
    kind: HypergraphKind,
    nodes: Vec<Vec<u32>>,
    min_len: usize,
}

impl TryFrom<KeyWire> for SeparatorKey {
    type Error = Error;

    fn try_from(w: KeyWire) -> Result<SeparatorKey> {
        let tree = w.kind.tree();
        let nodes = w
            .nodes
            .into_iter()
            .map(|n| Node::new(tree, n))
            .collect::<Result<Vec<_>>>()?;
        SeparatorKey::new(w.kind, nodes, w.min_len)
    }
}

impl SeparatorKey {
    /// Validates a key given by hand: nonempty, equal lengths at least
    /// `min_len`, pairwise distinct.
    pub fn new(kind: HypergraphKind, mut nodes: Vec<Node>, min_len: usize) -> Result<Self> {
        let invalid = |msg: &str| Err(Error::InvalidConfiguration(format!("separator key: {msg}")));
        if min_len < 1 {
            return invalid("min_len must be at least 1");
        }
        let Some(len) = nodes.first().map(Node::len) else {
            return invalid("no nodes");
        };
        if len < min_len || nodes.iter().any(|t| t.len() != len) {
            return invalid("nodes must share one length of at least min_len");
        }
        for t in &nodes {
            kind.tree().check_same(t.kind())?;
        }
        nodes.sort();
        if nodes.windows(2).any(|w| w[0] == w[1]) {
            return invalid("nodes must be distinct");
        }
        Ok(SeparatorKey {
            kind,
            nodes,
            min_len,
        })
    }

    pub fn kind(&self) -> HypergraphKind {
        self.kind
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn min_len(&self) -> usize {
        self.min_len
    }

    /// The common length `l` of the nodes.
    pub fn level(&self) -> usize {
        self.nodes[0].len()
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Index of the node that `y` extends, if any.
    pub fn owner(&self, y: &Branch) -> Option<usize> {
        self.nodes.iter().position(|t| y.extends(t))
    }

    /// For each node, the branches extending it with support below `depth`.
    pub fn node_extensions(&self, depth: usize) -> Vec<Vec<Branch>> {
        self.nodes.iter().map(|t| t.extensions(depth)).collect()
    }
}

impl fmt::Display for SeparatorKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(", self.kind)?;
        for (i, t) in self.nodes.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{t}")?;
        }
        write!(f, ")")
    }
}

fn pairwise_meets(xs: &[Branch]) -> Vec<(usize, usize, Node)> {
    let mut out = Vec::new();
    for i in 0..xs.len() {
        for j in i + 1..xs.len() {
            out.push((
                i,
                j,
                delta(&xs[i], &xs[j]).expect("condition elements are distinct"),
            ));
        }
    }
    out
}

pub fn classify(p: &Condition) -> CaseTag {
    if p.len() <= 1 {
        return CaseTag::Singleton;
    }
    let xs = p.sorted_elements();
    let meets = pairwise_meets(&xs);
    let dense = p.kind().dense();
    if meets.iter().any(|(_, _, d)| !dense.contains(d)) {
        CaseTag::Case1
    } else if meets.iter().any(|(_, _, d)| *d != meets[0].2) {
        CaseTag::Case2
    } else {
        CaseTag::Case3
    }
}

/// The cut level before `min_len` is applied.
pub fn cut_level(p: &Condition) -> usize {
    let xs = p.sorted_elements();
    let dense = p.kind().dense();
    let mut level = 1;
    for (i, j, d) in pairwise_meets(&xs) {
        level = level.max(d.len() + 1);
        if dense.contains(&d) {
            if let Some(k) = xs[i].first_difference_from(&xs[j], d.len() + 1) {
                level = level.max(k + 1);
            }
        }
    }
    level
}

pub fn separator(p: &Condition, min_len: usize) -> Result<SeparatorKey> {
    if p.is_empty() {
        return Err(Error::EmptyCondition);
    }
    if min_len < 1 {
        return Err(Error::BadArity(min_len));
    }
    let level = cut_level(p).max(min_len);
    let nodes = p.elements().iter().map(|x| x.prefix(level)).collect();
    Ok(SeparatorKey {
        kind: p.kind(),
        nodes,
        min_len,
    })
}

/// The partition index of `p`; `member_of(p, &class_key(p, m)?)` always holds.
pub fn class_key(p: &Condition, min_len: usize) -> Result<SeparatorKey> {
    separator(p, min_len)
}

/// `q` has exactly one element above each node of the key.
pub fn member_of(q: &Condition, key: &SeparatorKey) -> Result<bool> {
    q.kind().check_same(key.kind)?;
    if q.len() != key.nodes.len() {
        return Ok(false);
    }
    let mut hit = vec![false; key.nodes.len()];
    for y in q.elements() {
        match key.owner(y) {
            Some(i) if !hit[i] => hit[i] = true,
            _ => return Ok(false),
        }
    }
    Ok(true)
}
