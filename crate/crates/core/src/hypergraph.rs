//! The tree hypergraphs `H_n`, `H0_inf` and `H1_inf`.
//!
//! Every edge is a bundle `{d ⌢ i ⌢ x : i ∈ I}` for a dense node `d`, a set of
//! entries `I` at position `|d|` and a common tail `x`. Anti-clique tests use
//! that shape directly: the only possible anchors inside a set are its dense
//! pairwise meets, and for a fixed anchor the members split into groups with a
//! common tail.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::branch::{delta, Branch, DenseSequence, Node, Tail, TreeKind};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HypergraphKind {
    /// `H_n` over `[T_n]`: edges of size exactly `n`.
    Hn(u32),
    /// `H0_inf` over `[T_inf]`: the edge at anchor `d` has size `|d|`.
    H0Inf,
    /// `H1_inf` over `[T_inf]`: pairs `d⌢i⌢x, d⌢j⌢x` with `i ≠ j < |d|`.
    H1Inf,
}

impl HypergraphKind {
    pub fn tree(self) -> TreeKind {
        match self {
            HypergraphKind::Hn(n) => TreeKind::Arity(n),
            HypergraphKind::H0Inf | HypergraphKind::H1Inf => TreeKind::Omega,
        }
    }

    pub fn dense(self) -> DenseSequence {
        DenseSequence::new(self.tree())
    }

    pub(crate) fn check_same(self, other: HypergraphKind) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::kind_mismatch(self, other))
        }
    }

    fn check_members(self, members: &[Branch]) -> Result<()> {
        let tree = self.tree();
        members.iter().try_for_each(|b| tree.check_same(b.kind()))
    }

    /// Entry sets at an anchor of length `anchor_len` that form an edge,
    /// restricted to the entries actually available in `entries`.
    fn edge_entry_sets(self, anchor_len: usize, entries: &BTreeSet<u32>) -> Vec<Vec<u32>> {
        match self {
            HypergraphKind::Hn(n) => {
                if (0..n).all(|i| entries.contains(&i)) {
                    vec![(0..n).collect()]
                } else {
                    Vec::new()
                }
            }
            HypergraphKind::H0Inf => {
                let a = anchor_len as u32;
                if anchor_len >= 2 && (0..a).all(|i| entries.contains(&i)) {
                    vec![(0..a).collect()]
                } else {
                    Vec::new()
                }
            }
            HypergraphKind::H1Inf => {
                let low: Vec<u32> = entries.range(..anchor_len as u32).copied().collect();
                let mut out = Vec::new();
                for (k, &i) in low.iter().enumerate() {
                    for &j in &low[k + 1..] {
                        out.push(vec![i, j]);
                    }
                }
                out
            }
        }
    }

    fn first_edge_entries(self, anchor_len: usize, entries: &BTreeSet<u32>) -> Option<Vec<u32>> {
        match self {
            HypergraphKind::H1Inf => {
                let mut low = entries.range(..anchor_len as u32);
                let i = *low.next()?;
                let j = *low.next()?;
                Some(vec![i, j])
            }
            _ => self.edge_entry_sets(anchor_len, entries).into_iter().next(),
        }
    }
}

impl fmt::Display for HypergraphKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HypergraphKind::Hn(n) => write!(f, "hn:{n}"),
            HypergraphKind::H0Inf => f.write_str("h0inf"),
            HypergraphKind::H1Inf => f.write_str("h1inf"),
        }
    }
}

impl FromStr for HypergraphKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "h0inf" => Ok(HypergraphKind::H0Inf),
            "h1inf" => Ok(HypergraphKind::H1Inf),
            _ => {
                let n = s
                    .strip_prefix("hn:")
                    .and_then(|n| n.parse::<u32>().ok())
                    .ok_or_else(|| Error::kind_mismatch("hn:<n> | h0inf | h1inf", s))?;
                if n < 2 {
                    return Err(Error::BadArity(n as usize));
                }
                Ok(HypergraphKind::Hn(n))
            }
        }
    }
}

/// An edge of one of the tree hypergraphs, with its anchor and common tail.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "EdgeWire")]
pub struct Edge {
    kind: HypergraphKind,
    anchor: Node,
    tail: Tail,
    members: Vec<Branch>,
}

impl Edge {
    pub fn from_members(kind: HypergraphKind, members: &[Branch]) -> Result<Edge> {
        if !is_edge(kind, members)? {
            return Err(Error::NotAClique);
        }
        let mut members = members.to_vec();
        members.sort();
        members.dedup();
        Ok(Edge::from_sorted(kind, members))
    }

    fn from_sorted(kind: HypergraphKind, members: Vec<Branch>) -> Edge {
        let anchor = delta(&members[0], &members[1]).expect("edge members are distinct");
        let tail = tail_after(&members[0], anchor.len());
        Edge {
            kind,
            anchor,
            tail,
            members,
        }
    }

    pub fn kind(&self) -> HypergraphKind {
        self.kind
    }

    pub fn anchor(&self) -> &Node {
        &self.anchor
    }

    pub fn tail(&self) -> &Tail {
        &self.tail
    }

    pub fn members(&self) -> &[Branch] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

#[derive(Deserialize)]
struct EdgeWire {
    kind: HypergraphKind,
    anchor: Vec<u32>,
    tail: Vec<u32>,
    members: Vec<Vec<u32>>,
}

impl TryFrom<EdgeWire> for Edge {
    type Error = Error;

    fn try_from(w: EdgeWire) -> Result<Edge> {
        let tree = w.kind.tree();
        let members = w
            .members
            .into_iter()
            .map(|m| Branch::new(tree, m))
            .collect::<Result<Vec<_>>>()?;
        let edge = Edge::from_members(w.kind, &members)?;
        if edge.anchor.word() != w.anchor.as_slice() || edge.tail != Tail::from(w.tail) {
            return Err(Error::InvalidHypergraph(
                "anchor or tail does not match the members".into(),
            ));
        }
        Ok(edge)
    }
}

/// Entries of `b` strictly after `index`, as a canonical tail.
fn tail_after(b: &Branch, index: usize) -> Tail {
    Tail::from(b.support().get(index + 1..).unwrap_or(&[]).to_vec())
}

/// True iff `s` (read as a set) is an edge of `kind`.
pub fn is_edge(kind: HypergraphKind, s: &[Branch]) -> Result<bool> {
    kind.check_members(s)?;
    let mut members = s.to_vec();
    members.sort();
    members.dedup();
    if members.len() < 2 {
        return Ok(false);
    }
    let anchor = delta(&members[0], &members[1])?;
    let a = anchor.len();
    if !kind.dense().contains(&anchor) {
        return Ok(false);
    }
    let mut entries = BTreeSet::new();
    for m in &members {
        if !m.extends(&anchor) || !entries.insert(m.at(a)) || !m.same_tail_after(&members[0], a) {
            return Ok(false);
        }
    }
    let expected: BTreeSet<u32> = match kind {
        HypergraphKind::Hn(n) => (0..n).collect(),
        HypergraphKind::H0Inf => (0..a as u32).collect(),
        HypergraphKind::H1Inf => {
            return Ok(members.len() == 2 && entries.iter().all(|&e| (e as usize) < a));
        }
    };
    Ok(members.len() >= 2 && entries == expected)
}

/// Dense nodes that occur as a meet of two members of `s`. In sorted order
/// every pairwise meet is the meet of some adjacent pair.
fn candidate_anchors(kind: HypergraphKind, sorted: &[Branch]) -> BTreeSet<Node> {
    let dense = kind.dense();
    sorted
        .windows(2)
        .filter_map(|w| delta(&w[0], &w[1]).ok())
        .filter(|d| dense.contains(d))
        .collect()
}

/// Members above `anchor`, grouped by their common tail; each group maps the
/// entry at `|anchor|` to the member.
fn tail_groups<'a>(anchor: &Node, s: &'a [Branch]) -> BTreeMap<Tail, BTreeMap<u32, &'a Branch>> {
    let a = anchor.len();
    let mut groups: BTreeMap<Tail, BTreeMap<u32, &Branch>> = BTreeMap::new();
    for b in s.iter().filter(|b| b.extends(anchor)) {
        groups
            .entry(tail_after(b, a))
            .or_default()
            .insert(b.at(a), b);
    }
    groups
}

fn sorted_set(s: &[Branch]) -> Vec<Branch> {
    let mut v = s.to_vec();
    v.sort();
    v.dedup();
    v
}

/// True iff no subset of `s` is an edge.
pub fn is_anti_clique(kind: HypergraphKind, s: &[Branch]) -> Result<bool> {
    kind.check_members(s)?;
    let sorted = sorted_set(s);
    for anchor in candidate_anchors(kind, &sorted) {
        for group in tail_groups(&anchor, &sorted).values() {
            let entries: BTreeSet<u32> = group.keys().copied().collect();
            if kind.first_edge_entries(anchor.len(), &entries).is_some() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Some edge contained in `s`, if there is one.
pub fn find_edge(kind: HypergraphKind, s: &[Branch]) -> Result<Option<Edge>> {
    kind.check_members(s)?;
    let sorted = sorted_set(s);
    for anchor in candidate_anchors(kind, &sorted) {
        for group in tail_groups(&anchor, &sorted).values() {
            let entries: BTreeSet<u32> = group.keys().copied().collect();
            if let Some(sel) = kind.first_edge_entries(anchor.len(), &entries) {
                let members = sel.iter().map(|e| group[e].clone()).collect();
                return Ok(Some(Edge::from_sorted(kind, members)));
            }
        }
    }
    Ok(None)
}

/// Every edge contained in `s`.
pub fn edges_among(kind: HypergraphKind, s: &[Branch]) -> Result<Vec<Edge>> {
    kind.check_members(s)?;
    let sorted = sorted_set(s);
    let mut out = Vec::new();
    for anchor in candidate_anchors(kind, &sorted) {
        for group in tail_groups(&anchor, &sorted).values() {
            let entries: BTreeSet<u32> = group.keys().copied().collect();
            for sel in kind.edge_entry_sets(anchor.len(), &entries) {
                let members = sel.iter().map(|e| group[e].clone()).collect();
                out.push(Edge::from_sorted(kind, members));
            }
        }
    }
    Ok(out)
}

/// All edges anchored at dense nodes of the given levels whose members have
/// support below `depth`.
pub fn edges_within(
    kind: HypergraphKind,
    depth: usize,
    anchor_levels: &BTreeSet<usize>,
) -> impl Iterator<Item = Edge> {
    let tree = kind.tree();
    let dense = kind.dense();
    let levels: Vec<usize> = anchor_levels
        .iter()
        .copied()
        .filter(|&a| a < depth)
        .collect();
    levels.into_iter().flat_map(move |a| {
        let anchor = dense.node(a);
        let entry_sets: Vec<Vec<u32>> = match kind {
            HypergraphKind::Hn(n) => vec![(0..n).collect()],
            HypergraphKind::H0Inf if a >= 2 => vec![(0..a as u32).collect()],
            HypergraphKind::H1Inf => {
                let all = (0..a as u32).collect();
                kind.edge_entry_sets(a, &all)
            }
            HypergraphKind::H0Inf => Vec::new(),
        };
        tree.words(a + 1, depth - a - 1).flat_map(move |tail| {
            let anchor = anchor.clone();
            entry_sets.clone().into_iter().map(move |sel| {
                let members = sel
                    .iter()
                    .map(|&i| {
                        let mut w = anchor.word().to_vec();
                        w.push(i);
                        w.extend_from_slice(&tail);
                        Branch::from_trusted(tree, w)
                    })
                    .collect();
                Edge::from_sorted(kind, members)
            })
        })
    })
}

/// For an `H1_inf` clique containing `x`, the length of its common anchor.
/// Every `H1_inf` clique sits over one anchor with one tail, so its size is
/// at most this value.
pub fn meet_anchor_clique_bound(x: &Branch, clique: &[Branch]) -> Result<usize> {
    let kind = HypergraphKind::H1Inf;
    let mut all = clique.to_vec();
    all.push(x.clone());
    kind.check_members(&all)?;
    let all = sorted_set(&all);
    if all.len() < 2 {
        return Err(Error::NotAClique);
    }
    for (k, a) in all.iter().enumerate() {
        for b in &all[k + 1..] {
            if !is_edge(kind, &[a.clone(), b.clone()])? {
                return Err(Error::NotAClique);
            }
        }
    }
    let other = all.iter().find(|b| *b != x).expect("at least two members");
    Ok(delta(x, other)?.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::branch::{branches_within, concat_branch};
    use itertools::Itertools;

    const H2: HypergraphKind = HypergraphKind::Hn(2);
    const H3: HypergraphKind = HypergraphKind::Hn(3);

    fn br(kind: HypergraphKind, s: &[u32]) -> Branch {
        Branch::new(kind.tree(), s.to_vec()).unwrap()
    }

    fn naive_anti_clique(kind: HypergraphKind, s: &[Branch]) -> bool {
        (2..=s.len()).all(|k| {
            s.iter()
                .cloned()
                .combinations(k)
                .all(|sub| !is_edge(kind, &sub).unwrap())
        })
    }

    #[test]
    fn is_edge_examples() {
        assert!(is_edge(H2, &[br(H2, &[1]), br(H2, &[1, 0, 1])]).unwrap());
        assert!(!is_edge(H2, &[br(H2, &[0, 1]), br(H2, &[1])]).unwrap());
        assert!(is_edge(H3, &[br(H3, &[]), br(H3, &[1]), br(H3, &[2])]).unwrap());
        assert!(!is_edge(H3, &[br(H3, &[]), br(H3, &[1])]).unwrap());
        assert!(!is_edge(H2, &[br(H2, &[]), br(H2, &[1]), br(H2, &[0, 1])]).unwrap());
    }

    #[test]
    fn is_edge_kind_mismatch() {
        assert!(matches!(
            is_edge(H2, &[br(H3, &[]), br(H3, &[1])]),
            Err(Error::KindMismatch { .. })
        ));
    }

    #[test]
    fn h0_degenerate_anchors_are_not_edges() {
        let k = HypergraphKind::H0Inf;
        // level-1 dense node [0]: the only candidate member set is {[0,0]} of size 1
        assert!(!is_edge(k, &[br(k, &[0, 0]), br(k, &[0, 1])]).unwrap());
        // level-2 dense node [0,0]: members [0,0,0], [0,0,1]
        assert!(is_edge(k, &[br(k, &[]), br(k, &[0, 0, 1])]).unwrap());
        // entry 2 = |d| is legal but not part of the edge
        assert!(!is_edge(k, &[br(k, &[]), br(k, &[0, 0, 1]), br(k, &[0, 0, 2])]).unwrap());
    }

    #[test]
    fn h1_edges_need_entries_below_anchor_length() {
        let k = HypergraphKind::H1Inf;
        assert!(is_edge(k, &[br(k, &[]), br(k, &[0, 0, 1])]).unwrap());
        assert!(!is_edge(k, &[br(k, &[]), br(k, &[0, 0, 2])]).unwrap());
        assert!(!is_edge(k, &[br(k, &[0, 0, 1]), br(k, &[0, 0, 2])]).unwrap());
    }

    #[test]
    fn anti_clique_examples() {
        assert!(is_anti_clique(H2, &[]).unwrap());
        assert!(is_anti_clique(H3, &[br(H3, &[2, 1])]).unwrap());
        assert!(!is_anti_clique(H3, &[br(H3, &[]), br(H3, &[1]), br(H3, &[2])]).unwrap());
        assert!(is_anti_clique(H2, &[br(H2, &[0, 1]), br(H2, &[1])]).unwrap());
    }

    #[test]
    fn find_edge_returns_a_valid_edge() {
        let s = [br(H3, &[0, 1]), br(H3, &[]), br(H3, &[1]), br(H3, &[2])];
        let e = find_edge(H3, &s).unwrap().unwrap();
        assert!(is_edge(H3, e.members()).unwrap());
        assert_eq!(e.anchor().len(), 0);
    }

    #[test]
    fn edges_within_examples() {
        let edges: Vec<_> = edges_within(H2, 3, &BTreeSet::from([0])).collect();
        assert_eq!(edges.len(), 4);
        assert!(edges
            .iter()
            .any(|e| e.members() == [br(H2, &[]), br(H2, &[1])]));
        for e in &edges {
            assert!(is_edge(H2, e.members()).unwrap());
            assert!(e.members().iter().all(|m| m.support().len() <= 3));
        }
        assert_eq!(edges_within(H2, 0, &BTreeSet::from([5])).count(), 0);

        let k = HypergraphKind::H1Inf;
        let edges: Vec<_> = edges_within(k, 4, &BTreeSet::from([3])).collect();
        // anchor [0,1,0]; pairs i<j<3; no free tail index below depth 4
        assert_eq!(edges.len(), 3);
        for e in &edges {
            assert!(is_edge(k, e.members()).unwrap());
            assert_eq!(e.anchor().word(), &[0, 1, 0]);
        }
    }

    #[test]
    fn meet_anchor_bound_examples() {
        let k = HypergraphKind::H1Inf;
        let d = k.dense().node(3);
        let m: Vec<_> = (0..3)
            .map(|i| concat_branch(&d, i, &Tail::zero()).unwrap())
            .collect();
        assert_eq!(meet_anchor_clique_bound(&m[0], &m[1..]).unwrap(), 3);

        let d5 = k.dense().node(5);
        let x = concat_branch(&d5, 0, &Tail::zero()).unwrap();
        let y = concat_branch(&d5, 4, &Tail::zero()).unwrap();
        assert_eq!(meet_anchor_clique_bound(&x, &[y]).unwrap(), 5);

        let far = concat_branch(&d5, 1, &Tail::from(vec![3])).unwrap();
        assert_eq!(
            meet_anchor_clique_bound(&m[0], &[far]),
            Err(Error::NotAClique)
        );
    }

    #[test]
    fn edge_json_round_trip() {
        let e = Edge::from_members(H2, &[br(H2, &[1]), br(H2, &[1, 0, 1])]).unwrap();
        let json = serde_json::to_string(&e).unwrap();
        assert_eq!(
            json,
            r#"{"kind":{"hn":2},"anchor":[1,0],"tail":[],"members":[[1],[1,0,1]]}"#
        );
        let back: Edge = serde_json::from_str(&json).unwrap();
        assert_eq!(back, e);
        let bad = r#"{"kind":{"hn":2},"anchor":[1,0],"tail":[],"members":[[0,1],[1]]}"#;
        assert!(serde_json::from_str::<Edge>(bad).is_err());
    }

    #[test]
    fn kind_parses() {
        assert_eq!("hn:3".parse::<HypergraphKind>().unwrap(), H3);
        assert_eq!(
            "h0inf".parse::<HypergraphKind>().unwrap(),
            HypergraphKind::H0Inf
        );
        assert!("hn:1".parse::<HypergraphKind>().is_err());
        assert!("g0".parse::<HypergraphKind>().is_err());
    }

    #[test]
    fn anti_clique_agrees_with_subset_oracle() {
        for kind in [H2, H3] {
            let pool = branches_within(kind.tree(), 3);
            for s in pool.iter().cloned().combinations(3).step_by(7) {
                assert_eq!(
                    is_anti_clique(kind, &s).unwrap(),
                    naive_anti_clique(kind, &s)
                );
            }
        }
    }

    #[test]
    fn h1_cliques_sit_over_one_anchor() {
        let k = HypergraphKind::H1Inf;
        let pool = branches_within(k.tree(), 5);
        let adj = |a: &Branch, b: &Branch| is_edge(k, &[a.clone(), b.clone()]).unwrap();
        for x in &pool {
            let nbrs: Vec<_> = pool.iter().filter(|y| adj(x, y)).collect();
            for (y, z) in nbrs.iter().tuple_combinations() {
                if adj(y, z) {
                    let d = delta(x, y).unwrap();
                    assert_eq!(delta(x, z).unwrap(), d);
                    assert_eq!(delta(y, z).unwrap(), d);
                }
            }
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn branch_strategy(kind: TreeKind, max_len: usize) -> impl Strategy<Value = Branch> {
            proptest::collection::vec(0u32..64, 0..=max_len).prop_map(move |raw| {
                let w = raw
                    .iter()
                    .enumerate()
                    .map(|(i, &e)| e % kind.branching(i))
                    .collect();
                Branch::new(kind, w).unwrap()
            })
        }

        proptest! {
            #[test]
            fn oracle_h2(s in proptest::collection::vec(branch_strategy(TreeKind::Arity(2), 5), 0..=5)) {
                let s: Vec<_> = s.into_iter().sorted().dedup().collect();
                prop_assert_eq!(is_anti_clique(H2, &s).unwrap(), naive_anti_clique(H2, &s));
            }

            #[test]
            fn oracle_h3(s in proptest::collection::vec(branch_strategy(TreeKind::Arity(3), 5), 0..=5)) {
                let s: Vec<_> = s.into_iter().sorted().dedup().collect();
                prop_assert_eq!(is_anti_clique(H3, &s).unwrap(), naive_anti_clique(H3, &s));
            }

            #[test]
            fn oracle_omega(s in proptest::collection::vec(branch_strategy(TreeKind::Omega, 5), 0..=5)) {
                let s: Vec<_> = s.into_iter().sorted().dedup().collect();
                for kind in [HypergraphKind::H0Inf, HypergraphKind::H1Inf] {
                    prop_assert_eq!(is_anti_clique(kind, &s).unwrap(), naive_anti_clique(kind, &s));
                }
            }

            #[test]
            fn edges_are_prefix_determined(level in 0usize..5, raw in proptest::collection::vec(0u32..64, 0..4)) {
                for kind in [H2, H3, HypergraphKind::H0Inf, HypergraphKind::H1Inf] {
                    let levels = BTreeSet::from([level]);
                    for e in edges_within(kind, level + 2, &levels).take(3) {
                        let tree = kind.tree();
                        let a = e.anchor().len();
                        let tail: Vec<u32> = raw.iter().enumerate()
                            .map(|(j, &x)| x % tree.branching(a + 1 + j)).collect();
                        let tail = Tail::from(tail);
                        let moved: Vec<_> = e.members().iter()
                            .map(|m| concat_branch(e.anchor(), m.at(a), &tail).unwrap())
                            .collect();
                        prop_assert!(is_edge(kind, &moved).unwrap());
                    }
                }
            }

            #[test]
            fn delta_symmetric_and_separating(
                x in branch_strategy(TreeKind::Arity(3), 6),
                y in branch_strategy(TreeKind::Arity(3), 6),
            ) {
                prop_assume!(x != y);
                let d = delta(&x, &y).unwrap();
                prop_assert_eq!(&d, &delta(&y, &x).unwrap());
                prop_assert!(x.extends(&d) && y.extends(&d));
                prop_assert_ne!(x.at(d.len()), y.at(d.len()));
            }

            #[test]
            fn concat_round_trip(
                d in proptest::collection::vec(0u32..3, 0..5),
                i in 0u32..3,
                tail in proptest::collection::vec(0u32..3, 0..5),
            ) {
                let kind = TreeKind::Arity(3);
                let node = Node::new(kind, d.clone()).unwrap();
                let b = concat_branch(&node, i, &Tail::from(tail.clone())).unwrap();
                for (k, &e) in d.iter().enumerate() {
                    prop_assert_eq!(b.at(k), e);
                }
                prop_assert_eq!(b.at(d.len()), i);
                for j in 0..8 {
                    prop_assert_eq!(b.at(d.len() + 1 + j), tail.get(j).copied().unwrap_or(0));
                }
            }
        }
    }
}
