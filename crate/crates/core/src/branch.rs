//! Nodes and finitely-supported branches of the trees `T_n` and `T_inf`.
//!
//! `T_n` has constant arity `n`. `T_inf` has branching degree `k + 1` at level
//! `k`, so an entry at index `k` is at most `k`. A [`Branch`] is an infinite
//! sequence that is zero from some index on; it is stored as its support with
//! trailing zeros trimmed, which makes structural equality coincide with
//! equality of branches.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};

/// Which tree a node or branch lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TreeKind {
    /// `T_n = n^{<ω}`, with `n >= 2`.
    Arity(u32),
    /// `T_inf`: entry at index `k` is at most `k`.
    Omega,
}

impl TreeKind {
    pub fn arity(n: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::BadArity(n as usize));
        }
        Ok(TreeKind::Arity(n))
    }

    /// Number of children of a node at level `index`.
    pub fn branching(self, index: usize) -> u32 {
        match self {
            TreeKind::Arity(n) => n,
            TreeKind::Omega => u32::try_from(index + 1).unwrap_or(u32::MAX),
        }
    }

    pub fn is_legal(self, index: usize, entry: u32) -> bool {
        entry < self.branching(index)
    }

    fn check_entry(self, index: usize, entry: u32) -> Result<()> {
        if self.is_legal(index, entry) {
            Ok(())
        } else {
            Err(Error::EntryOutOfRange {
                kind: self.to_string(),
                index,
                entry,
            })
        }
    }

    fn check_word(self, offset: usize, word: &[u32]) -> Result<()> {
        word.iter()
            .enumerate()
            .try_for_each(|(j, &e)| self.check_entry(offset + j, e))
    }

    /// Number of nodes at `level`, saturating at `u128::MAX`.
    pub fn level_size(self, level: usize) -> u128 {
        (0..level).fold(1u128, |acc, j| {
            acc.saturating_mul(self.branching(j) as u128)
        })
    }

    /// All words of length `len` whose entries are legal starting at absolute
    /// index `offset`, in lexicographic order.
    pub fn words(self, offset: usize, len: usize) -> Words {
        Words {
            kind: self,
            offset,
            current: Some(vec![0; len]),
        }
    }

    pub(crate) fn check_same(self, other: TreeKind) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::kind_mismatch(self, other))
        }
    }
}

impl fmt::Display for TreeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TreeKind::Arity(n) => write!(f, "T_{n}"),
            TreeKind::Omega => f.write_str("T_inf"),
        }
    }
}

/// Odometer over legal words of a fixed length.
#[derive(Debug, Clone)]
pub struct Words {
    kind: TreeKind,
    offset: usize,
    current: Option<Vec<u32>>,
}

impl Iterator for Words {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        let word = self.current.take()?;
        let mut next = word.clone();
        let mut j = next.len();
        loop {
            if j == 0 {
                break;
            }
            j -= 1;
            next[j] += 1;
            if next[j] < self.kind.branching(self.offset + j) {
                self.current = Some(next);
                break;
            }
            next[j] = 0;
        }
        Some(word)
    }
}

/// A finite node of a tree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Node {
    kind: TreeKind,
    word: Vec<u32>,
}

impl Node {
    pub fn new(kind: TreeKind, word: Vec<u32>) -> Result<Self> {
        kind.check_word(0, &word)?;
        Ok(Node { kind, word })
    }

    pub fn root(kind: TreeKind) -> Self {
        Node {
            kind,
            word: Vec::new(),
        }
    }

    pub(crate) fn from_trusted(kind: TreeKind, word: Vec<u32>) -> Self {
        debug_assert!(kind.check_word(0, &word).is_ok());
        Node { kind, word }
    }

    pub fn kind(&self) -> TreeKind {
        self.kind
    }

    pub fn word(&self) -> &[u32] {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    /// `self ⊑ other`.
    pub fn is_prefix_of(&self, other: &Node) -> bool {
        self.kind == other.kind && other.word.starts_with(&self.word)
    }

    /// `self ⊑ other` or `other ⊑ self`.
    pub fn comparable(&self, other: &Node) -> bool {
        self.is_prefix_of(other) || other.is_prefix_of(self)
    }

    /// The branch `self ⌢ 0̄`.
    pub fn zero_branch(&self) -> Branch {
        Branch::from_trusted(self.kind, self.word.clone())
    }

    /// All branches extending `self` whose support lies below `depth`.
    pub fn extensions(&self, depth: usize) -> Vec<Branch> {
        if self.len() > depth {
            if self.word[depth..].iter().all(|&e| e == 0) {
                return vec![self.zero_branch()];
            }
            return Vec::new();
        }
        self.kind
            .words(self.len(), depth - self.len())
            .map(|tail| {
                let mut support = self.word.clone();
                support.extend(tail);
                Branch::from_trusted(self.kind, support)
            })
            .collect()
    }
}

impl Serialize for Node {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.word.serialize(s)
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.word)
    }
}

fn trim(mut v: Vec<u32>) -> Vec<u32> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// A finitely-supported infinite branch: `x(i) = support[i]` below the
/// support length and `0` afterwards. The support never ends in `0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Branch {
    kind: TreeKind,
    support: Vec<u32>,
}

impl Branch {
    /// Builds a branch from any finite word; trailing zeros are trimmed.
    pub fn new(kind: TreeKind, word: Vec<u32>) -> Result<Self> {
        kind.check_word(0, &word)?;
        Ok(Branch {
            kind,
            support: trim(word),
        })
    }

    pub fn zero(kind: TreeKind) -> Self {
        Branch {
            kind,
            support: Vec::new(),
        }
    }

    pub(crate) fn from_trusted(kind: TreeKind, word: Vec<u32>) -> Self {
        debug_assert!(kind.check_word(0, &word).is_ok());
        Branch {
            kind,
            support: trim(word),
        }
    }

    pub fn kind(&self) -> TreeKind {
        self.kind
    }

    pub fn support(&self) -> &[u32] {
        &self.support
    }

    pub fn at(&self, index: usize) -> u32 {
        self.support.get(index).copied().unwrap_or(0)
    }

    /// The initial segment `x|len`.
    pub fn prefix(&self, len: usize) -> Node {
        Node::from_trusted(self.kind, (0..len).map(|i| self.at(i)).collect())
    }

    /// `t ⊑ self`.
    pub fn extends(&self, t: &Node) -> bool {
        self.kind == t.kind && t.word.iter().enumerate().all(|(i, &e)| self.at(i) == e)
    }

    /// Index of the first entry where the branches differ, if any.
    pub fn first_difference(&self, other: &Branch) -> Option<usize> {
        self.first_difference_from(other, 0)
    }

    /// Index of the first entry at or after `from` where the branches differ.
    pub fn first_difference_from(&self, other: &Branch, from: usize) -> Option<usize> {
        let end = self.support.len().max(other.support.len());
        (from..end).find(|&i| self.at(i) != other.at(i))
    }

    /// True iff the branches agree at every index strictly greater than `index`.
    pub fn same_tail_after(&self, other: &Branch, index: usize) -> bool {
        self.first_difference_from(other, index + 1).is_none()
    }
}

impl PartialOrd for Branch {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic order of the infinite sequences; on canonical supports this
/// is the ordinary `Vec` order.
impl Ord for Branch {
    fn cmp(&self, other: &Self) -> Ordering {
        self.kind
            .cmp(&other.kind)
            .then_with(|| self.support.cmp(&other.support))
    }
}

impl Serialize for Branch {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.support.serialize(s)
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.support)
    }
}

/// A finitely-supported tail, placed after `d ⌢ i`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "Vec<u32>", from = "Vec<u32>")]
pub struct Tail(Vec<u32>);

impl Tail {
    pub fn zero() -> Self {
        Tail(Vec::new())
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }
}

impl From<Vec<u32>> for Tail {
    fn from(v: Vec<u32>) -> Self {
        Tail(trim(v))
    }
}

impl From<Tail> for Vec<u32> {
    fn from(t: Tail) -> Self {
        t.0
    }
}

/// Longest common initial segment `Δ(x, y)`.
pub fn delta(x: &Branch, y: &Branch) -> Result<Node> {
    x.kind.check_same(y.kind)?;
    match x.first_difference(y) {
        None => Err(Error::EqualBranches),
        Some(i) => Ok(x.prefix(i)),
    }
}

/// The branch `d ⌢ i ⌢ x`.
pub fn concat_branch(d: &Node, i: u32, tail: &Tail) -> Result<Branch> {
    let kind = d.kind;
    kind.check_entry(d.len(), i)?;
    kind.check_word(d.len() + 1, &tail.0)?;
    let mut support = Vec::with_capacity(d.len() + 1 + tail.0.len());
    support.extend_from_slice(&d.word);
    support.push(i);
    support.extend_from_slice(&tail.0);
    Ok(Branch::from_trusted(kind, support))
}

/// `t ⊑ y`.
pub fn extends(y: &Branch, t: &Node) -> bool {
    y.extends(t)
}

/// The dense node set `D`: one node per level, obtained by walking the
/// length-lex enumeration `s_0, s_1, …` of all nodes and padding `s_k` with
/// zeros to length `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DenseSequence {
    kind: TreeKind,
}

impl DenseSequence {
    pub fn new(kind: TreeKind) -> Self {
        DenseSequence { kind }
    }

    pub fn kind(&self) -> TreeKind {
        self.kind
    }

    /// The unique member of `D` at `level`.
    pub fn node(&self, level: usize) -> Node {
        let mut remaining = level as u128;
        let mut len = 0;
        loop {
            let size = self.kind.level_size(len);
            if remaining < size {
                break;
            }
            remaining -= size;
            len += 1;
        }
        let mut word = vec![0u32; level];
        for j in (0..len).rev() {
            let b = self.kind.branching(j) as u128;
            word[j] = (remaining % b) as u32;
            remaining /= b;
        }
        Node::from_trusted(self.kind, word)
    }

    pub fn contains(&self, t: &Node) -> bool {
        t.kind == self.kind && self.node(t.len()) == *t
    }

    /// Position of `t` in the length-lex enumeration; `node(index(t))` extends `t`.
    pub fn enumeration_index(&self, t: &Node) -> u128 {
        let below: u128 = (0..t.len())
            .map(|l| self.kind.level_size(l))
            .fold(0, u128::saturating_add);
        let rank = t.word.iter().enumerate().fold(0u128, |acc, (j, &e)| {
            acc.saturating_mul(self.kind.branching(j) as u128)
                .saturating_add(e as u128)
        });
        below.saturating_add(rank)
    }
}

pub fn dense_node(d: &DenseSequence, level: usize) -> Node {
    d.node(level)
}

pub fn is_dense_node(d: &DenseSequence, t: &Node) -> bool {
    d.contains(t)
}

/// All branches of `kind` whose support lies below `depth`.
pub fn branches_within(kind: TreeKind, depth: usize) -> Vec<Branch> {
    Node::root(kind).extensions(depth)
}
