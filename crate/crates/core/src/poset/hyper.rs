//! Finite hypergraphs, their anti-clique posets and the component-product
//! partition into centred parts.
//!
//! Each connected component `C` contributes a list of its anti-cliques. A
//! condition `p` goes to the part keyed by the choice function that picks
//! `p ∩ C` wherever that trace is nonempty and the first anti-clique of `C`
//! elsewhere. Anti-cliques of `C` are listed largest first, so the default
//! pick is a maximal anti-clique. Within a part all traces are fixed or
//! empty on each component, so the union of the key's picks is a common
//! extension, and every part is centred.

use std::collections::BTreeMap;

use fixedbitset::FixedBitSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{FinitePoset, PartCondition, PartitionCertificate};
use crate::error::{Error, Result};

/// Vertex limit for enumerating anti-cliques.
pub const MAX_VERTICES: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "HypergraphWire")]
pub struct FiniteHypergraph {
    vertices: usize,
    edges: Vec<Vec<usize>>,
}

#[derive(Deserialize)]
struct HypergraphWire {
    vertices: usize,
    edges: Vec<Vec<usize>>,
}

impl TryFrom<HypergraphWire> for FiniteHypergraph {
    type Error = Error;

    fn try_from(w: HypergraphWire) -> Result<Self> {
        FiniteHypergraph::new(w.vertices, w.edges)
    }
}

impl FiniteHypergraph {
    /// Edges are sorted and deduplicated; each needs at least two distinct
    /// vertices in range.
    pub fn new(vertices: usize, edges: Vec<Vec<usize>>) -> Result<Self> {
        let mut clean = Vec::with_capacity(edges.len());
        for mut e in edges {
            e.sort_unstable();
            let before = e.len();
            e.dedup();
            if e.len() != before {
                return Err(Error::InvalidHypergraph(format!(
                    "edge {e:?} repeats a vertex"
                )));
            }
            if e.len() < 2 {
                return Err(Error::InvalidHypergraph(format!(
                    "edge {e:?} has fewer than 2 vertices"
                )));
            }
            if let Some(&v) = e.iter().find(|&&v| v >= vertices) {
                return Err(Error::IndexOutOfRange {
                    index: v,
                    size: vertices,
                });
            }
            clean.push(e);
        }
        clean.sort();
        clean.dedup();
        Ok(FiniteHypergraph {
            vertices,
            edges: clean,
        })
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    fn edge_masks(&self) -> Vec<u32> {
        self.edges
            .iter()
            .map(|e| e.iter().fold(0u32, |m, &v| m | 1 << v))
            .collect()
    }

    /// Contains no edge.
    pub fn is_anti_clique_mask(&self, mask: u32) -> bool {
        self.edge_masks().iter().all(|&e| e & mask != e)
    }

    /// Connected components as vertex masks, ordered by least vertex.
    pub fn components(&self) -> Vec<u32> {
        let mut parent: Vec<usize> = (0..self.vertices).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while parent[r] != r {
                r = parent[r];
            }
            parent[x] = r;
            r
        }
        for e in &self.edges {
            let a = find(&mut parent, e[0]);
            for &v in &e[1..] {
                let b = find(&mut parent, v);
                parent[b] = a;
            }
        }
        let mut by_root: BTreeMap<usize, u32> = BTreeMap::new();
        for v in 0..self.vertices {
            let r = find(&mut parent, v);
            *by_root.entry(r).or_default() |= 1 << v;
        }
        let mut comps: Vec<u32> = by_root.into_values().collect();
        comps.sort_by_key(|m| m.trailing_zeros());
        comps
    }

    fn check_size(&self) -> Result<()> {
        if self.vertices > MAX_VERTICES {
            return Err(Error::TooLarge {
                size: self.vertices,
                limit: MAX_VERTICES,
            });
        }
        Ok(())
    }
}

/// The anti-clique poset of a finite hypergraph, with element `i` standing
/// for the vertex set `conditions[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AntiCliquePoset {
    pub poset: FinitePoset,
    pub conditions: Vec<u32>,
}

impl AntiCliquePoset {
    pub fn index_of(&self, mask: u32) -> Option<usize> {
        self.conditions.binary_search(&mask).ok()
    }
}

/// All anti-cliques ordered by reverse inclusion; elements are listed by
/// increasing mask, so `0` is the empty condition.
pub fn condition_poset_of(h: &FiniteHypergraph) -> Result<AntiCliquePoset> {
    h.check_size()?;
    let edges = h.edge_masks();
    let conditions: Vec<u32> = (0u32..1 << h.vertices)
        .filter(|&m| edges.iter().all(|&e| e & m != e))
        .collect();
    let n = conditions.len();
    let mut down = vec![FixedBitSet::with_capacity(n); n];
    for (b, &mb) in conditions.iter().enumerate() {
        for (a, &ma) in conditions.iter().enumerate() {
            if ma & mb == mb {
                down[b].insert(a);
            }
        }
    }
    Ok(AntiCliquePoset {
        poset: FinitePoset::from_down_sets(down),
        conditions,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CentredPartition {
    pub anti_cliques: AntiCliquePoset,
    pub components: Vec<u32>,
    /// Per part, the chosen anti-clique of each component.
    pub keys: Vec<Vec<u32>>,
    pub certificate: PartitionCertificate,
}

pub fn sigma_centred_partition(h: &FiniteHypergraph) -> Result<CentredPartition> {
    let anti_cliques = condition_poset_of(h)?;
    let components = h.components();
    let defaults: Vec<u32> = components
        .iter()
        .map(|&c| {
            anti_cliques
                .conditions
                .iter()
                .copied()
                .filter(|&m| m & !c == 0)
                .max_by_key(|&m| (m.count_ones(), std::cmp::Reverse(m)))
                .unwrap_or(0)
        })
        .collect();
    let mut keys: Vec<Vec<u32>> = Vec::new();
    let mut index: BTreeMap<Vec<u32>, usize> = BTreeMap::new();
    let mut labels = Vec::with_capacity(anti_cliques.conditions.len());
    for &p in &anti_cliques.conditions {
        let key: Vec<u32> = components
            .iter()
            .zip(&defaults)
            .map(|(&c, &d)| if p & c != 0 { p & c } else { d })
            .collect();
        let label = *index.entry(key.clone()).or_insert_with(|| {
            keys.push(key);
            keys.len() - 1
        });
        labels.push(label);
    }
    Ok(CentredPartition {
        anti_cliques,
        components,
        keys,
        certificate: PartitionCertificate {
            labels,
            condition: PartCondition::Centred,
        },
    })
}

/// A seeded hypergraph on `vertices` vertices split into at most
/// `components` blocks; each block is connected by a random spanning path
/// of pairs plus a few random edges of size 2 or 3.
pub fn random_hypergraph(vertices: usize, components: usize, seed: u64) -> FiniteHypergraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let blocks = components.clamp(1, vertices.max(1));
    let mut block_of: Vec<usize> = (0..vertices).map(|v| v % blocks).collect();
    for v in (1..block_of.len()).rev() {
        let j = rng.random_range(0..=v);
        block_of.swap(v, j);
    }
    let mut edges = Vec::new();
    for b in 0..blocks {
        let members: Vec<usize> = (0..vertices).filter(|&v| block_of[v] == b).collect();
        for w in members.windows(2) {
            if rng.random_bool(0.5) {
                edges.push(vec![w[0], w[1]]);
            } else if let Some(&third) = members.get(rng.random_range(0..members.len())) {
                let mut e = vec![w[0], w[1], third];
                e.sort_unstable();
                e.dedup();
                edges.push(e);
            }
        }
        if members.len() >= 3 {
            for _ in 0..rng.random_range(0..3) {
                let a = members[rng.random_range(0..members.len())];
                let b = members[rng.random_range(0..members.len())];
                if a != b {
                    edges.push(vec![a, b]);
                }
            }
        }
    }
    FiniteHypergraph::new(vertices, edges).expect("edges built from distinct vertices")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::{check_partition, min_parts};

    fn h(v: usize, edges: &[&[usize]]) -> FiniteHypergraph {
        FiniteHypergraph::new(v, edges.iter().map(|e| e.to_vec()).collect()).unwrap()
    }

    #[test]
    fn validation_and_json() {
        assert!(FiniteHypergraph::new(3, vec![vec![0]]).is_err());
        assert!(FiniteHypergraph::new(3, vec![vec![0, 0]]).is_err());
        assert!(FiniteHypergraph::new(3, vec![vec![0, 3]]).is_err());
        let g = h(4, &[&[1, 0], &[2, 3]]);
        let json = serde_json::to_string(&g).unwrap();
        assert_eq!(json, r#"{"vertices":4,"edges":[[0,1],[2,3]]}"#);
        assert_eq!(serde_json::from_str::<FiniteHypergraph>(&json).unwrap(), g);
        assert!(
            serde_json::from_str::<FiniteHypergraph>(r#"{"vertices":2,"edges":[[0]]}"#).is_err()
        );
    }

    #[test]
    fn condition_poset_examples() {
        let single = condition_poset_of(&h(2, &[&[0, 1]])).unwrap();
        assert_eq!(single.conditions, vec![0b00, 0b01, 0b10]);
        // the empty condition is the maximum
        assert!((0..3).all(|x| single.poset.leq(x, 0)));
        assert!(!single.poset.compatible(1, 2));

        let free = condition_poset_of(&h(2, &[])).unwrap();
        assert_eq!(free.conditions.len(), 4);
        assert!(free.poset.leq(3, 1) && free.poset.leq(3, 2));

        let tri = condition_poset_of(&h(3, &[&[0, 1, 2]])).unwrap();
        assert_eq!(tri.conditions.len(), 7);
        assert!(tri.conditions.iter().all(|m| m.count_ones() <= 2));

        let big = FiniteHypergraph::new(13, vec![]).unwrap();
        assert_eq!(
            condition_poset_of(&big).unwrap_err(),
            Error::TooLarge {
                size: 13,
                limit: 12
            }
        );
    }

    #[test]
    fn components_examples() {
        assert_eq!(
            h(5, &[&[0, 2], &[2, 4]]).components(),
            vec![0b10101, 0b00010, 0b01000]
        );
        assert_eq!(h(3, &[&[0, 1, 2]]).components(), vec![0b111]);
    }

    #[test]
    fn sigma_centred_examples() {
        let two = h(4, &[&[0, 1], &[2, 3]]);
        let part = sigma_centred_partition(&two).unwrap();
        let p = part.anti_cliques.index_of(0b0101).unwrap();
        let key = &part.keys[part.certificate.labels[p]];
        assert_eq!(key, &vec![0b0001, 0b0100]);
        assert!(check_partition(&part.anti_cliques.poset, &part.certificate));

        let one = sigma_centred_partition(&h(2, &[&[0, 1]])).unwrap();
        assert_eq!(one.keys.len(), 2);
        assert!(check_partition(&one.anti_cliques.poset, &one.certificate));

        let free = h(3, &[]);
        let part = sigma_centred_partition(&free).unwrap();
        assert!(check_partition(&part.anti_cliques.poset, &part.certificate));
        assert_eq!(
            min_parts(&part.anti_cliques.poset, PartCondition::Centred)
                .unwrap()
                .0,
            1
        );
    }

    #[test]
    fn random_partitions_are_centred() {
        for seed in 0..40 {
            let g = random_hypergraph(9, 1 + (seed as usize % 4), seed);
            assert!(g.components().len() <= 4);
            let part = sigma_centred_partition(&g).unwrap();
            assert!(check_partition(&part.anti_cliques.poset, &part.certificate));
            // every condition agrees with its key wherever its trace is nonempty
            for (i, &p) in part.anti_cliques.conditions.iter().enumerate() {
                let key = &part.keys[part.certificate.labels[i]];
                for (&c, &k) in part.components.iter().zip(key) {
                    assert!(p & c == 0 || p & c == k);
                }
            }
        }
    }
}
