//! Explicit finite posets and finite hypergraphs.
//!
//! A [`FinitePoset`] on `0..m` stores, for each element, the bitset of the
//! elements below it. Compatibility is a nonempty intersection of down-sets.

mod catalog;
mod gh;
mod hyper;
mod parts;

pub use catalog::{gh_example, naturally_labelled, random_poset};
pub use gh::{gh_amplify, gh_find_configuration, gh_validate, GHConfiguration};
pub use hyper::{
    condition_poset_of, random_hypergraph, sigma_centred_partition, AntiCliquePoset,
    CentredPartition, FiniteHypergraph,
};
pub use parts::{check_partition, min_parts, min_parts_limit, PartCondition, PartitionCertificate};

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::clique::Graph;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitePoset {
    down: Vec<FixedBitSet>,
}

/// JSON form: `leq` lists pairs `[a, b]` with `a ≤ b`; reflexive and
/// transitive pairs may be omitted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetWire {
    pub size: usize,
    pub leq: Vec<[usize; 2]>,
}

impl FinitePoset {
    /// The reflexive-transitive closure of `pairs`; fails on cycles.
    pub fn from_pairs(size: usize, pairs: &[[usize; 2]]) -> Result<Self> {
        let mut down = vec![FixedBitSet::with_capacity(size); size];
        for (x, d) in down.iter_mut().enumerate() {
            d.insert(x);
        }
        for &[a, b] in pairs {
            if a >= size || b >= size {
                return Err(Error::IndexOutOfRange {
                    index: a.max(b),
                    size,
                });
            }
            down[b].insert(a);
        }
        for k in 0..size {
            let dk = down[k].clone();
            for d in down.iter_mut() {
                if d.contains(k) {
                    d.union_with(&dk);
                }
            }
        }
        for (b, d) in down.iter().enumerate() {
            if let Some(a) = d.ones().find(|&a| a != b && down[a].contains(b)) {
                return Err(Error::InvalidPoset(format!(
                    "{a} and {b} lie below each other"
                )));
            }
        }
        Ok(FinitePoset { down })
    }

    /// Down-sets already closed and antisymmetric.
    pub(crate) fn from_down_sets(down: Vec<FixedBitSet>) -> Self {
        FinitePoset { down }
    }

    pub fn antichain(size: usize) -> Self {
        FinitePoset::from_pairs(size, &[]).expect("no pairs")
    }

    pub fn chain(size: usize) -> Self {
        let pairs: Vec<[usize; 2]> = (1..size).map(|i| [i, i - 1]).collect();
        FinitePoset::from_pairs(size, &pairs).expect("acyclic")
    }

    pub fn from_wire(w: &PosetWire) -> Result<Self> {
        FinitePoset::from_pairs(w.size, &w.leq)
    }

    /// All strict pairs, so the wire form is already closed.
    pub fn to_wire(&self) -> PosetWire {
        let mut leq = Vec::new();
        for (b, d) in self.down.iter().enumerate() {
            leq.extend(d.ones().filter(|&a| a != b).map(|a| [a, b]));
        }
        leq.sort_unstable();
        PosetWire {
            size: self.len(),
            leq,
        }
    }

    pub fn len(&self) -> usize {
        self.down.len()
    }

    pub fn is_empty(&self) -> bool {
        self.down.is_empty()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.down[b].contains(a)
    }

    /// `{z : z ≤ x}`.
    pub fn down_set(&self, x: usize) -> &FixedBitSet {
        &self.down[x]
    }

    pub fn compatible(&self, x: usize, y: usize) -> bool {
        !self.down[x].is_disjoint(&self.down[y])
    }

    /// Edges join incompatible elements; antichains are its cliques.
    pub fn incompatibility_graph(&self) -> Graph {
        Graph::from_fn(self.len(), |x, y| !self.compatible(x, y))
    }

    pub(crate) fn check_index(&self, x: usize) -> Result<()> {
        if x >= self.len() {
            return Err(Error::IndexOutOfRange {
                index: x,
                size: self.len(),
            });
        }
        Ok(())
    }
}

impl Serialize for FinitePoset {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_wire().serialize(s)
    }
}

impl<'de> Deserialize<'de> for FinitePoset {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = PosetWire::deserialize(d)?;
        FinitePoset::from_wire(&w).map_err(serde::de::Error::custom)
    }
}

pub fn compatible_fp(p: &FinitePoset, x: usize, y: usize) -> Result<bool> {
    p.check_index(x)?;
    p.check_index(y)?;
    Ok(p.compatible(x, y))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_and_order() {
        let p = FinitePoset::from_pairs(4, &[[0, 1], [1, 2]]).unwrap();
        assert!(p.leq(0, 2));
        assert!(p.leq(3, 3));
        assert!(!p.leq(2, 0));
        assert!(!p.leq(3, 2));
        assert!(FinitePoset::from_pairs(2, &[[0, 1], [1, 0]]).is_err());
        assert!(FinitePoset::from_pairs(2, &[[0, 2]]).is_err());
    }

    #[test]
    fn compatibility_examples() {
        // 0 is a common lower bound of 1 and 2; 3 is isolated
        let p = FinitePoset::from_pairs(4, &[[0, 1], [0, 2]]).unwrap();
        assert!(compatible_fp(&p, 1, 2).unwrap());
        assert!(!compatible_fp(&p, 1, 3).unwrap());
        assert!(compatible_fp(&p, 3, 3).unwrap());
        assert_eq!(
            compatible_fp(&p, 0, 9),
            Err(Error::IndexOutOfRange { index: 9, size: 4 })
        );
        assert_eq!(p.incompatibility_graph().max_clique().len(), 2);
    }

    #[test]
    fn json_round_trip() {
        let p = FinitePoset::from_pairs(3, &[[0, 1], [1, 2]]).unwrap();
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, r#"{"size":3,"leq":[[0,1],[0,2],[1,2]]}"#);
        assert_eq!(serde_json::from_str::<FinitePoset>(&json).unwrap(), p);
        assert!(serde_json::from_str::<FinitePoset>(r#"{"size":2,"leq":[[0,1],[1,0]]}"#).is_err());
    }

    #[test]
    fn chains_and_antichains() {
        let c = FinitePoset::chain(5);
        assert!(c.leq(4, 0));
        assert_eq!(c.incompatibility_graph().max_clique().len(), 1);
        let a = FinitePoset::antichain(5);
        assert_eq!(a.incompatibility_graph().max_clique().len(), 5);
    }
}
