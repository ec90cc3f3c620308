//! Exact minimum partitions of a finite poset into parts satisfying a chain
//! condition, and an independent checker for partition certificates.

use std::fmt;
use std::str::FromStr;

use fixedbitset::FixedBitSet;
use itertools::Itertools;
use serde::{Deserialize, Serialize};

use super::FinitePoset;
use crate::clique::Graph;
use crate::error::{Error, Result};

/// The property each part of a partition must have.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum PartCondition {
    /// Pairwise compatible.
    Linked,
    /// Every subset of size at most `n` has a common lower bound.
    NLinked(usize),
    /// The whole part has a common lower bound.
    Centred,
    /// No antichain of size `n` inside the part.
    AntichainLt(usize),
}

impl fmt::Display for PartCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PartCondition::Linked => f.write_str("linked"),
            PartCondition::NLinked(n) => write!(f, "nlinked:{n}"),
            PartCondition::Centred => f.write_str("centred"),
            PartCondition::AntichainLt(n) => write!(f, "antichain-lt:{n}"),
        }
    }
}

impl FromStr for PartCondition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidConfiguration(format!("unknown condition {s:?}"));
        let param = |rest: &str| rest.parse::<usize>().map_err(|_| bad());
        match s.split_once(':') {
            None if s == "linked" => Ok(PartCondition::Linked),
            None if s == "centred" || s == "centered" => Ok(PartCondition::Centred),
            Some(("nlinked", n)) => Ok(PartCondition::NLinked(param(n)?)),
            Some(("antichain-lt", n)) => Ok(PartCondition::AntichainLt(param(n)?)),
            _ => Err(bad()),
        }
    }
}

impl From<PartCondition> for String {
    fn from(c: PartCondition) -> String {
        c.to_string()
    }
}

impl TryFrom<String> for PartCondition {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionCertificate {
    /// Part index of each element; parts are numbered from 0 in order of
    /// first appearance.
    pub labels: Vec<usize>,
    pub condition: PartCondition,
}

impl PartitionCertificate {
    pub fn part_count(&self) -> usize {
        self.labels.iter().max().map_or(0, |&m| m + 1)
    }

    pub fn parts(&self) -> Vec<Vec<usize>> {
        let mut parts = vec![Vec::new(); self.part_count()];
        for (x, &l) in self.labels.iter().enumerate() {
            parts[l].push(x);
        }
        parts
    }
}

/// The default size limit of the exact search.
pub fn min_parts_limit(condition: PartCondition) -> usize {
    match condition {
        PartCondition::Centred | PartCondition::NLinked(_) => 12,
        PartCondition::Linked | PartCondition::AntichainLt(_) => 16,
    }
}

/// The exact minimum number of parts, with a certificate.
pub fn min_parts(
    p: &FinitePoset,
    condition: PartCondition,
) -> Result<(usize, PartitionCertificate)> {
    min_parts_with_limit(p, condition, min_parts_limit(condition))
}

pub fn min_parts_with_limit(
    p: &FinitePoset,
    condition: PartCondition,
    limit: usize,
) -> Result<(usize, PartitionCertificate)> {
    if let PartCondition::NLinked(n) | PartCondition::AntichainLt(n) = condition {
        if n < 2 {
            return Err(Error::BadArity(n));
        }
    }
    let m = p.len();
    if m > limit {
        return Err(Error::TooLarge { size: m, limit });
    }
    let graph = p.incompatibility_graph();
    let omega = graph.max_clique().len();
    let lower = match condition {
        PartCondition::AntichainLt(n) => omega.div_ceil(n - 1),
        _ => omega,
    };
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by_key(|&x| std::cmp::Reverse(graph.neighbors(x).count_ones(..)));

    let mut search = Search {
        poset: p,
        graph: &graph,
        condition,
        order,
        lower,
        parts: Vec::new(),
        labels: vec![usize::MAX; m],
        best: m + 1,
        best_labels: (0..m).collect(),
    };
    if m == 0 {
        search.best = 0;
    } else {
        search.run(0);
    }
    let labels = renumber(&search.best_labels);
    let count = search.best.min(m);
    Ok((count, PartitionCertificate { labels, condition }))
}

fn renumber(labels: &[usize]) -> Vec<usize> {
    let mut map = std::collections::HashMap::new();
    labels
        .iter()
        .map(|l| {
            let next = map.len();
            *map.entry(*l).or_insert(next)
        })
        .collect()
}

struct Search<'a> {
    poset: &'a FinitePoset,
    graph: &'a Graph,
    condition: PartCondition,
    order: Vec<usize>,
    lower: usize,
    parts: Vec<Vec<usize>>,
    labels: Vec<usize>,
    best: usize,
    best_labels: Vec<usize>,
}

impl Search<'_> {
    /// Returns true once the lower bound is met and the search can stop.
    fn run(&mut self, idx: usize) -> bool {
        if self.parts.len() >= self.best {
            return false;
        }
        if idx == self.order.len() {
            self.best = self.parts.len();
            self.best_labels = self.labels.clone();
            return self.best <= self.lower;
        }
        let v = self.order[idx];
        for k in 0..self.parts.len() {
            if self.fits(k, v) {
                self.parts[k].push(v);
                self.labels[v] = k;
                let done = self.run(idx + 1);
                self.parts[k].pop();
                if done {
                    return true;
                }
            }
        }
        if self.parts.len() + 1 < self.best {
            self.labels[v] = self.parts.len();
            self.parts.push(vec![v]);
            let done = self.run(idx + 1);
            self.parts.pop();
            if done {
                return true;
            }
        }
        false
    }

    /// Whether part `k` still satisfies the condition after adding `v`,
    /// given that it satisfies it now.
    fn fits(&self, k: usize, v: usize) -> bool {
        let part = &self.parts[k];
        let p = self.poset;
        match self.condition {
            PartCondition::Linked => part.iter().all(|&u| p.compatible(u, v)),
            PartCondition::Centred => {
                let mut meet = p.down_set(v).clone();
                for &u in part {
                    meet.intersect_with(p.down_set(u));
                }
                !meet.is_clear()
            }
            PartCondition::NLinked(n) => (1..n.min(part.len() + 1)).all(|size| {
                part.iter().combinations(size).all(|sub| {
                    let mut meet = p.down_set(v).clone();
                    for &u in sub {
                        meet.intersect_with(p.down_set(u));
                    }
                    !meet.is_clear()
                })
            }),
            PartCondition::AntichainLt(n) => {
                let mut within = FixedBitSet::with_capacity(p.len());
                for &u in part {
                    if self.graph.has_edge(u, v) {
                        within.insert(u);
                    }
                }
                self.graph.max_clique_in(&within).len() + 1 < n
            }
        }
    }
}

/// Direct check of every part against the certificate's condition.
pub fn check_partition(p: &FinitePoset, cert: &PartitionCertificate) -> bool {
    if cert.labels.len() != p.len() {
        return false;
    }
    let has_lower_bound = |set: &[&usize]| {
        let mut meet = FixedBitSet::with_capacity(p.len());
        meet.insert_range(..);
        for &&u in set {
            meet.intersect_with(p.down_set(u));
        }
        !meet.is_clear()
    };
    cert.parts().iter().all(|part| match cert.condition {
        PartCondition::Linked => part
            .iter()
            .tuple_combinations()
            .all(|(&a, &b)| p.compatible(a, b)),
        PartCondition::Centred => has_lower_bound(&part.iter().collect::<Vec<_>>()),
        PartCondition::NLinked(n) => (2..=n.min(part.len()))
            .all(|size| part.iter().combinations(size).all(|s| has_lower_bound(&s))),
        PartCondition::AntichainLt(n) => {
            let sub = Graph::from_fn(part.len(), |i, j| !p.compatible(part[i], part[j]));
            sub.max_clique().len() < n
        }
    })
}
