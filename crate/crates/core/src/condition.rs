//! The forcing poset `P(X)` of finite anti-cliques, ordered by reverse
//! inclusion. Two conditions are compatible exactly when their union is an
//! anti-clique, and the union is then their greatest common extension.

use std::collections::BTreeSet;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::branch::Branch;
use crate::error::{Error, Result};
use crate::hypergraph::{is_anti_clique, HypergraphKind};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "ConditionWire")]
pub struct Condition {
    kind: HypergraphKind,
    elements: BTreeSet<Branch>,
}

#[derive(Deserialize)]
struct ConditionWire {
    kind: HypergraphKind,
    elements: Vec<Vec<u32>>,
}

impl TryFrom<ConditionWire> for Condition {
    type Error = Error;

    fn try_from(w: ConditionWire) -> Result<Condition> {
        let tree = w.kind.tree();
        let elements = w
            .elements
            .into_iter()
            .map(|e| Branch::new(tree, e))
            .collect::<Result<Vec<_>>>()?;
        Condition::new(w.kind, elements)
    }
}

impl Condition {
    pub fn new(kind: HypergraphKind, elements: impl IntoIterator<Item = Branch>) -> Result<Self> {
        let elements: BTreeSet<Branch> = elements.into_iter().collect();
        let v: Vec<Branch> = elements.iter().cloned().collect();
        if !is_anti_clique(kind, &v)? {
            return Err(Error::NotAntiClique);
        }
        Ok(Condition { kind, elements })
    }

    /// The maximum element `∅`.
    pub fn empty(kind: HypergraphKind) -> Self {
        Condition {
            kind,
            elements: BTreeSet::new(),
        }
    }

    pub fn singleton(kind: HypergraphKind, x: Branch) -> Result<Self> {
        Condition::new(kind, [x])
    }

    pub(crate) fn from_trusted(kind: HypergraphKind, elements: BTreeSet<Branch>) -> Self {
        Condition { kind, elements }
    }

    pub fn kind(&self) -> HypergraphKind {
        self.kind
    }

    pub fn elements(&self) -> &BTreeSet<Branch> {
        &self.elements
    }

    /// Elements in lexicographic order.
    pub fn sorted_elements(&self) -> Vec<Branch> {
        self.elements.iter().cloned().collect()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

fn check_kinds<'a>(
    kind: HypergraphKind,
    it: impl IntoIterator<Item = &'a Condition>,
) -> Result<()> {
    it.into_iter().try_for_each(|c| kind.check_same(c.kind))
}

fn union_is_anti_clique<'a>(
    kind: HypergraphKind,
    conds: impl IntoIterator<Item = &'a Condition>,
) -> Result<bool> {
    let union: BTreeSet<Branch> = conds
        .into_iter()
        .flat_map(|c| c.elements.iter().cloned())
        .collect();
    is_anti_clique(kind, &union.into_iter().collect::<Vec<_>>())
}

/// `q ≤ p`, i.e. `q` extends `p`.
pub fn leq(q: &Condition, p: &Condition) -> Result<bool> {
    q.kind.check_same(p.kind)?;
    Ok(p.elements.is_subset(&q.elements))
}

pub fn compatible(p: &Condition, q: &Condition) -> Result<bool> {
    p.kind.check_same(q.kind)?;
    union_is_anti_clique(p.kind, [p, q])
}

/// The greatest common extension of `p` and `q`, if they are compatible.
pub fn meet(p: &Condition, q: &Condition) -> Result<Option<Condition>> {
    if !compatible(p, q)? {
        return Ok(None);
    }
    let elements = p.elements.union(&q.elements).cloned().collect();
    Ok(Some(Condition::from_trusted(p.kind, elements)))
}

/// Every `n`-element subfamily has a common extension. Families with fewer
/// than `n` members satisfy this vacuously.
pub fn is_n_linked(family: &[Condition], n: usize) -> Result<bool> {
    if n < 2 {
        return Err(Error::BadArity(n));
    }
    let Some(first) = family.first() else {
        return Ok(true);
    };
    let kind = first.kind;
    check_kinds(kind, family)?;
    let distinct: Vec<&Condition> = family.iter().unique().collect();
    for sub in distinct.iter().combinations(n) {
        if !union_is_anti_clique(kind, sub.into_iter().copied())? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// For a finite family this is the same as being `n`-linked for every `n`.
pub fn is_centred(family: &[Condition]) -> Result<bool> {
    let Some(first) = family.first() else {
        return Ok(true);
    };
    check_kinds(first.kind, family)?;
    union_is_anti_clique(first.kind, family)
}

/// Pairwise incompatible.
pub fn is_antichain(family: &[Condition]) -> Result<bool> {
    let Some(first) = family.first() else {
        return Ok(true);
    };
    check_kinds(first.kind, family)?;
    for (p, q) in family.iter().tuple_combinations() {
        if p == q || compatible(p, q)? {
            return Ok(false);
        }
    }
    Ok(true)
}
