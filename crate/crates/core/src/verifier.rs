//! Finite-depth checks of the quantitative properties of separator classes:
//! bounded antichains over `H_2`, `k`-linkedness, and the `H1_inf` clique bound.
//!
//! A class is explored at a fixed `depth`: its members are the conditions with
//! one element above each key node and every support below `depth`.

use std::collections::BTreeSet;

use itertools::Itertools;
use serde::Serialize;

use crate::branch::Branch;
use crate::clique::Graph;
use crate::condition::{compatible, is_antichain, is_centred, Condition};
use crate::error::{Error, Result};
use crate::hypergraph::{edges_among, is_anti_clique, is_edge, Edge, HypergraphKind};
use crate::partition::SeparatorKey;

/// An upper bound for the multicolor Ramsey number `R(3, …, 3)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RamseyBound {
    pub colors: usize,
    pub value: usize,
}

/// `U(1) = 3`, `U(k) = k (U(k-1) - 1) + 2`.
pub fn ramsey_upper(colors: usize) -> Result<RamseyBound> {
    if colors < 1 {
        return Err(Error::BadArity(colors));
    }
    let value = (2..=colors).fold(3usize, |u, k| k.saturating_mul(u - 1).saturating_add(2));
    Ok(RamseyBound { colors, value })
}

/// Does the 2-coloring `mask` of the edges of `K_n` have a monochromatic
/// triangle? Edge `(i, j)`, `i < j`, is bit `index(i, j)` in row-major order.
pub fn has_mono_triangle(n: usize, mask: u64) -> bool {
    let index = |i: usize, j: usize| i * n - i * (i + 1) / 2 + (j - i - 1);
    let color = |i: usize, j: usize| mask >> index(i, j) & 1;
    (0..n).tuple_combinations().any(|(a, b, c)| {
        let ab = color(a, b);
        ab == color(a, c) && ab == color(b, c)
    })
}

/// Exhaustive certificate that `R(3,3) = 6`: every 2-coloring of `K_6` has a
/// monochromatic triangle and some 2-coloring of `K_5` has none.
pub fn certify_r33() -> bool {
    let all6 = (0u64..1 << 15).all(|m| has_mono_triangle(6, m));
    let some5 = (0u64..1 << 10).any(|m| !has_mono_triangle(5, m));
    all6 && some5
}

/// Largest pairwise-incompatible subfamily, found exactly as a maximum clique
/// of the incompatibility graph.
pub fn max_antichain(family: &[Condition]) -> Result<(usize, Vec<Condition>)> {
    if let Some(first) = family.first() {
        for c in family {
            first.kind().check_same(c.kind())?;
        }
    }
    let mut err = None;
    let g = Graph::from_fn(family.len(), |u, v| {
        family[u] != family[v]
            && !compatible(&family[u], &family[v]).unwrap_or_else(|e| {
                err = Some(e);
                true
            })
    });
    if let Some(e) = err {
        return Err(e);
    }
    let witness: Vec<Condition> = g
        .max_clique()
        .into_iter()
        .map(|i| family[i].clone())
        .collect();
    Ok((witness.len(), witness))
}

/// All class members of `key` with supports below `depth`.
pub fn class_members(key: &SeparatorKey, depth: usize) -> Result<Vec<Condition>> {
    let ext = key.node_extensions(depth);
    if ext.iter().any(Vec::is_empty) {
        return Err(Error::DepthTooSmall { depth });
    }
    let kind = key.kind();
    let mut out = Vec::new();
    for tuple in ext.iter().multi_cartesian_product() {
        let tuple: Vec<Branch> = tuple.into_iter().cloned().collect();
        if is_anti_clique(kind, &tuple)? {
            out.push(Condition::from_trusted(kind, tuple.into_iter().collect()));
        }
    }
    if out.is_empty() {
        return Err(Error::DepthTooSmall { depth });
    }
    Ok(out)
}

#[derive(Debug, Clone, Serialize)]
pub struct AntichainReport {
    pub class_key: SeparatorKey,
    pub depth: usize,
    pub corpus_size: usize,
    pub max_antichain_found: usize,
    pub bound: usize,
    pub witness: Vec<Condition>,
}

impl AntichainReport {
    pub fn holds(&self) -> bool {
        self.max_antichain_found < self.bound
    }
}

/// Maximum antichain among the class members below `depth`, against the
/// Ramsey bound for `|key|` colors.
pub fn check_class_antichain_bound(key: &SeparatorKey, depth: usize) -> Result<AntichainReport> {
    let members = class_members(key, depth)?;
    let (size, witness) = max_antichain(&members)?;
    Ok(AntichainReport {
        class_key: key.clone(),
        depth,
        corpus_size: members.len(),
        max_antichain_found: size,
        bound: ramsey_upper(key.len())?.value,
        witness,
    })
}

/// A pair of antichain indices with its edge color, if any.
pub type PairColor = ((usize, usize), Option<usize>);

/// For each pair of an antichain inside a class, the least key index `i`
/// such that an edge joins an element of one condition to an element of the
/// other, both above `t_i`. `None` marks a pair with no such edge.
pub fn antichain_pair_colors(
    key: &SeparatorKey,
    antichain: &[Condition],
) -> Result<Vec<PairColor>> {
    let kind = key.kind();
    let mut out = Vec::new();
    for (a, b) in (0..antichain.len()).tuple_combinations() {
        let mut color = None;
        'search: for x in antichain[a].elements() {
            for y in antichain[b].elements() {
                if let (Some(i), Some(j)) = (key.owner(x), key.owner(y)) {
                    if i == j && is_edge(kind, &[x.clone(), y.clone()])? {
                        color = Some(color.map_or(i, |c: usize| c.min(i)));
                        if i == 0 {
                            break 'search;
                        }
                    }
                }
            }
        }
        out.push(((a, b), color));
    }
    Ok(out)
}

/// `k` class members whose union contains `edge`.
#[derive(Debug, Clone, Serialize)]
pub struct LinkedWitness {
    pub members: Vec<Condition>,
    pub edge: Edge,
}

#[derive(Debug, Clone, Serialize)]
pub struct LinkedReport {
    pub class_key: SeparatorKey,
    pub linked_arity: usize,
    pub depth: usize,
    pub universe_size: usize,
    pub edges_examined: usize,
    pub holds: bool,
    pub witness: Option<LinkedWitness>,
}

/// Exhaustive test that every `k` class members with supports below `depth`
/// have an anti-clique union.
///
/// A `k`-set of members fails exactly when its union contains an edge `E`.
/// `E` lives inside the union `U` of all node extensions, and it can be
/// spread over at most `k` members iff `E` splits into at most `k` blocks,
/// each with at most one element per key node and each completable to a
/// member. The search runs over the edges of `U` and those splittings, which
/// decides the same statement as enumerating all `k`-subsets of members.
pub fn check_class_k_linked(key: &SeparatorKey, k: usize, depth: usize) -> Result<LinkedReport> {
    if k < 2 {
        return Err(Error::BadArity(k));
    }
    let kind = key.kind();
    let ext = key.node_extensions(depth);
    if ext.iter().any(Vec::is_empty) {
        return Err(Error::DepthTooSmall { depth });
    }
    let universe: Vec<Branch> = ext.iter().flatten().cloned().collect();
    let mut report = LinkedReport {
        class_key: key.clone(),
        linked_arity: k,
        depth,
        universe_size: universe.len(),
        edges_examined: 0,
        holds: true,
        witness: None,
    };

    let completer = Completer {
        kind,
        ext: &ext,
        key,
    };
    let some_members = completer.first_members(k)?;
    if some_members.is_empty() {
        return Err(Error::DepthTooSmall { depth });
    }
    if some_members.len() < k {
        return Ok(report);
    }

    let mut edges = edges_among(kind, &universe)?;
    edges.sort_by_key(Edge::len);
    for edge in edges {
        report.edges_examined += 1;
        if edge.len() > k * key.len() {
            continue;
        }
        let owners: Vec<usize> = edge
            .members()
            .iter()
            .map(|y| key.owner(y).expect("universe elements extend key nodes"))
            .collect();
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        if let Some(covering) = completer.split(&edge, &owners, 0, k, &mut blocks)? {
            let mut members: Vec<Condition> = covering.into_iter().unique().collect();
            for m in &some_members {
                if members.len() == k {
                    break;
                }
                if !members.contains(m) {
                    members.push(m.clone());
                }
            }
            debug_assert!(!is_centred(&members)?);
            report.holds = false;
            report.witness = Some(LinkedWitness { members, edge });
            return Ok(report);
        }
    }
    Ok(report)
}

/// Every `n - 1` members of a class over `H_n` have a common extension.
pub fn check_class_linked(key: &SeparatorKey, n: usize, depth: usize) -> Result<LinkedReport> {
    if n < 3 {
        return Err(Error::BadArity(n));
    }
    check_class_k_linked(key, n - 1, depth)
}

struct Completer<'a> {
    kind: HypergraphKind,
    ext: &'a [Vec<Branch>],
    key: &'a SeparatorKey,
}

impl Completer<'_> {
    /// Up to `limit` distinct class members.
    fn first_members(&self, limit: usize) -> Result<Vec<Condition>> {
        let mut out = Vec::new();
        for tuple in self.ext.iter().multi_cartesian_product() {
            let tuple: Vec<Branch> = tuple.into_iter().cloned().collect();
            if is_anti_clique(self.kind, &tuple)? {
                out.push(Condition::from_trusted(
                    self.kind,
                    tuple.into_iter().collect(),
                ));
                if out.len() == limit {
                    break;
                }
            }
        }
        Ok(out)
    }

    /// Extends a partial tuple (one optional element per key node) to a member.
    fn complete(&self, slots: &mut Vec<Option<Branch>>, at: usize) -> Result<Option<Condition>> {
        let chosen: Vec<Branch> = slots.iter().flatten().cloned().collect();
        if !is_anti_clique(self.kind, &chosen)? {
            return Ok(None);
        }
        if at == slots.len() {
            return Ok(Some(Condition::from_trusted(
                self.kind,
                chosen.into_iter().collect(),
            )));
        }
        if slots[at].is_some() {
            return self.complete(slots, at + 1);
        }
        for y in &self.ext[at] {
            slots[at] = Some(y.clone());
            if let Some(c) = self.complete(slots, at + 1)? {
                slots[at] = None;
                return Ok(Some(c));
            }
        }
        slots[at] = None;
        Ok(None)
    }

    fn complete_block(
        &self,
        edge: &Edge,
        owners: &[usize],
        block: &[usize],
    ) -> Result<Option<Condition>> {
        let mut slots = vec![None; self.key.len()];
        for &e in block {
            slots[owners[e]] = Some(edge.members()[e].clone());
        }
        self.complete(&mut slots, 0)
    }

    /// Assigns edge elements `next..` to at most `k` blocks; returns one
    /// member per block once every block is completable.
    fn split(
        &self,
        edge: &Edge,
        owners: &[usize],
        next: usize,
        k: usize,
        blocks: &mut Vec<Vec<usize>>,
    ) -> Result<Option<Vec<Condition>>> {
        if next == owners.len() {
            let mut members = Vec::with_capacity(blocks.len());
            for block in blocks.iter() {
                match self.complete_block(edge, owners, block)? {
                    Some(m) => members.push(m),
                    None => return Ok(None),
                }
            }
            return Ok(Some(members));
        }
        for b in 0..blocks.len() {
            if blocks[b].iter().any(|&e| owners[e] == owners[next]) {
                continue;
            }
            blocks[b].push(next);
            let found = self.split(edge, owners, next + 1, k, blocks)?;
            blocks[b].pop();
            if found.is_some() {
                return Ok(found);
            }
        }
        if blocks.len() < k {
            blocks.push(vec![next]);
            let found = self.split(edge, owners, next + 1, k, blocks)?;
            blocks.pop();
            if found.is_some() {
                return Ok(found);
            }
        }
        Ok(None)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CliqueReport {
    pub class_key: SeparatorKey,
    pub depth: usize,
    pub universe_size: usize,
    pub max_clique: usize,
    /// Length of the longest dense node below `depth` comparable with a key
    /// node, i.e. the longest anchor an explored clique can sit on.
    pub anchor_len: usize,
    pub witness: Vec<Branch>,
}

impl CliqueReport {
    pub fn holds(&self) -> bool {
        self.max_clique <= self.anchor_len.max(1)
    }
}

/// Largest `H1_inf` clique among the branches above the key nodes with
/// support below `depth`.
pub fn check_h1_no_unbounded_clique(key: &SeparatorKey, depth: usize) -> Result<CliqueReport> {
    let kind = HypergraphKind::H1Inf;
    kind.check_same(key.kind())?;
    let universe: Vec<Branch> = key
        .node_extensions(depth)
        .into_iter()
        .flatten()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    if universe.is_empty() {
        return Err(Error::DepthTooSmall { depth });
    }
    let index = |b: &Branch| {
        universe
            .binary_search(b)
            .expect("edge members lie in the universe")
    };
    let mut g = Graph::new(universe.len());
    for e in edges_among(kind, &universe)? {
        g.add_edge(index(&e.members()[0]), index(&e.members()[1]));
    }
    let clique = g.max_clique();
    let dense = kind.dense();
    let anchor_len = (0..depth)
        .rev()
        .find(|&a| {
            let d = dense.node(a);
            key.nodes().iter().any(|t| t.comparable(&d))
        })
        .unwrap_or(0);
    Ok(CliqueReport {
        class_key: key.clone(),
        depth,
        universe_size: universe.len(),
        max_clique: clique.len(),
        anchor_len,
        witness: clique.into_iter().map(|i| universe[i].clone()).collect(),
    })
}

/// True iff the witness of an antichain report is a genuine antichain of the
/// reported size made of class members.
pub fn validate_antichain_report(report: &AntichainReport) -> Result<bool> {
    let members_ok = report
        .witness
        .iter()
        .map(|c| crate::partition::member_of(c, &report.class_key))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .all(|b| b);
    Ok(members_ok
        && report.witness.len() == report.max_antichain_found
        && is_antichain(&report.witness)?)
}

/// Edges join incompatible conditions.
pub fn incompatibility_graph(family: &[Condition]) -> Result<Graph> {
    let mut g = Graph::new(family.len());
    for (u, v) in (0..family.len()).tuple_combinations() {
        if !compatible(&family[u], &family[v])? {
            g.add_edge(u, v);
        }
    }
    Ok(g)
}
