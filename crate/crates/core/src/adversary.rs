//! Monochromatic edges and cliques against prefix-determined colorings.
//!
//! A [`PrefixColoring`] colors a branch by looking only at its first `D`
//! entries. This is a strict relaxation of "Borel coloring": it covers exactly
//! the colorings with a fixed finite modulus of continuity, and against those
//! the density of `D` gives a direct construction. Pick the dense node `d` at
//! a level of at least `D`; all branches `d ⌢ i ⌢ 0̄` share the prefix `d | D`
//! and hence one color, and they form an edge (or a clique of any requested
//! size in `H1_inf`).

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::branch::{Branch, Node, TreeKind};
use crate::condition::{is_centred, Condition};
use crate::error::{Error, Result};
use crate::hypergraph::{is_edge, HypergraphKind};

type Assign = Arc<dyn Fn(&[u32]) -> u32 + Send + Sync>;

/// A coloring of `[T]` that depends only on the depth-`D` prefix.
#[derive(Clone)]
pub struct PrefixColoring {
    kind: TreeKind,
    depth: usize,
    palette_size: u32,
    assign: Assign,
}

impl fmt::Debug for PrefixColoring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PrefixColoring")
            .field("kind", &self.kind)
            .field("depth", &self.depth)
            .field("palette_size", &self.palette_size)
            .finish_non_exhaustive()
    }
}

/// JSON form of a coloring: an explicit table over all words of length `depth`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringTable {
    pub kind: TreeKind,
    pub depth: usize,
    pub palette_size: u32,
    pub table: Vec<TableEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableEntry {
    pub word: Vec<u32>,
    pub color: u32,
}

impl PrefixColoring {
    /// Wraps an arbitrary map on depth-`D` words; `assign` must be pure.
    pub fn new(
        kind: TreeKind,
        depth: usize,
        palette_size: u32,
        assign: impl Fn(&[u32]) -> u32 + Send + Sync + 'static,
    ) -> Result<Self> {
        if palette_size < 1 {
            return Err(Error::InvalidColoring("palette must be nonempty".into()));
        }
        Ok(PrefixColoring {
            kind,
            depth,
            palette_size,
            assign: Arc::new(assign),
        })
    }

    pub fn constant(kind: TreeKind, depth: usize) -> Self {
        PrefixColoring::new(kind, depth, 1, |_| 0).expect("palette of size 1")
    }

    /// A seeded uniformly random table over all words of length `depth`.
    pub fn random(kind: TreeKind, depth: usize, palette_size: u32, seed: u64) -> Result<Self> {
        if palette_size < 1 {
            return Err(Error::InvalidColoring("palette must be nonempty".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let table: HashMap<Vec<u32>, u32> = kind
            .words(0, depth)
            .map(|w| (w, rng.random_range(0..palette_size)))
            .collect();
        PrefixColoring::from_map(kind, depth, palette_size, table)
    }

    fn from_map(
        kind: TreeKind,
        depth: usize,
        palette_size: u32,
        table: HashMap<Vec<u32>, u32>,
    ) -> Result<Self> {
        for w in kind.words(0, depth) {
            match table.get(&w) {
                None => return Err(Error::InvalidColoring(format!("no color for word {w:?}"))),
                Some(&c) if c >= palette_size => {
                    return Err(Error::InvalidColoring(format!(
                        "color {c} outside the palette"
                    )))
                }
                Some(_) => {}
            }
        }
        let expected = kind.level_size(depth);
        if table.len() as u128 != expected {
            return Err(Error::InvalidColoring(
                "table has words that are not tree nodes".into(),
            ));
        }
        PrefixColoring::new(kind, depth, palette_size, move |w| table[w])
    }

    pub fn from_table(t: &ColoringTable) -> Result<Self> {
        let mut map = HashMap::with_capacity(t.table.len());
        for e in &t.table {
            if e.word.len() != t.depth {
                return Err(Error::InvalidColoring(format!(
                    "word {:?} has the wrong length",
                    e.word
                )));
            }
            if map.insert(e.word.clone(), e.color).is_some() {
                return Err(Error::InvalidColoring(format!(
                    "word {:?} listed twice",
                    e.word
                )));
            }
        }
        PrefixColoring::from_map(t.kind, t.depth, t.palette_size, map)
    }

    /// The full table, in lexicographic word order.
    pub fn to_table(&self) -> ColoringTable {
        ColoringTable {
            kind: self.kind,
            depth: self.depth,
            palette_size: self.palette_size,
            table: self
                .kind
                .words(0, self.depth)
                .map(|w| TableEntry {
                    color: (self.assign)(&w),
                    word: w,
                })
                .collect(),
        }
    }

    pub fn kind(&self) -> TreeKind {
        self.kind
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn palette_size(&self) -> u32 {
        self.palette_size
    }

    pub fn color_of(&self, x: &Branch) -> u32 {
        (self.assign)(x.prefix(self.depth).word())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonochromeWitness {
    pub members: Vec<Branch>,
    pub color: u32,
    pub anchor: Node,
}

/// Colors every member, and fails unless they all agree.
fn common_color(c: &PrefixColoring, members: &[Branch]) -> Result<u32> {
    let color = c.color_of(&members[0]);
    if members.iter().skip(1).any(|m| c.color_of(m) != color) {
        return Err(Error::InvalidColoring(
            "coloring is not prefix-determined".into(),
        ));
    }
    if color >= c.palette_size {
        return Err(Error::InvalidColoring(format!(
            "color {color} outside the palette"
        )));
    }
    Ok(color)
}

fn bundle(anchor: &Node, entries: u32) -> Vec<Branch> {
    (0..entries)
        .map(|i| {
            let mut w = anchor.word().to_vec();
            w.push(i);
            Branch::from_trusted(anchor.kind(), w)
        })
        .collect()
}

/// A monochromatic edge of `H_n` or `H0_inf`.
pub fn find_mono_edge(c: &PrefixColoring, kind: HypergraphKind) -> Result<MonochromeWitness> {
    if kind == HypergraphKind::H1Inf {
        return Err(Error::kind_mismatch("hn:<n> | h0inf", kind));
    }
    c.kind.check_same(kind.tree())?;
    let level = c.depth.max(2);
    let anchor = kind.dense().node(level);
    let size = match kind {
        HypergraphKind::Hn(n) => n,
        _ => level as u32,
    };
    let members = bundle(&anchor, size);
    let color = common_color(c, &members)?;
    debug_assert!(is_edge(kind, &members)?);
    Ok(MonochromeWitness {
        members,
        color,
        anchor,
    })
}

/// A monochromatic `H1_inf` clique of size `m`.
pub fn find_mono_clique(c: &PrefixColoring, m: usize) -> Result<MonochromeWitness> {
    if m < 2 {
        return Err(Error::BadArity(m));
    }
    c.kind.check_same(TreeKind::Omega)?;
    let level = c.depth.max(m);
    let anchor = HypergraphKind::H1Inf.dense().node(level);
    let members = bundle(&anchor, m as u32);
    let color = common_color(c, &members)?;
    Ok(MonochromeWitness {
        members,
        color,
        anchor,
    })
}

/// Singleton conditions over a monochromatic `H0_inf` edge: a family inside
/// one color class that is `(|edge| - 1)`-linked but not centred.
pub fn refute_centred_class(c: &PrefixColoring) -> Result<Vec<Condition>> {
    let kind = HypergraphKind::H0Inf;
    let w = find_mono_edge(c, kind)?;
    let family = w
        .members
        .into_iter()
        .map(|x| Condition::singleton(kind, x))
        .collect::<Result<Vec<_>>>()?;
    debug_assert!(!is_centred(&family)?);
    Ok(family)
}

/// Checks a witness from scratch: one color, and an edge (`H_n`, `H0_inf`) or
/// a pairwise-adjacent set (`H1_inf`).
pub fn validate_witness(
    c: &PrefixColoring,
    kind: HypergraphKind,
    w: &MonochromeWitness,
) -> Result<bool> {
    if w.members.is_empty() || w.members.iter().any(|m| c.color_of(m) != w.color) {
        return Ok(false);
    }
    if kind == HypergraphKind::H1Inf {
        for (k, a) in w.members.iter().enumerate() {
            for b in &w.members[k + 1..] {
                if !is_edge(kind, &[a.clone(), b.clone()])? {
                    return Ok(false);
                }
            }
        }
        Ok(w.members.len() >= 2)
    } else {
        is_edge(kind, &w.members)
    }
}

/// True iff the family is not centred while dropping any single member makes
/// it centred.
pub fn validate_refutation(family: &[Condition]) -> Result<bool> {
    if is_centred(family)? {
        return Ok(false);
    }
    for skip in 0..family.len() {
        let rest: Vec<Condition> = family
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != skip)
            .map(|(_, c)| c.clone())
            .collect();
        if !is_centred(&rest)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::condition::is_n_linked;
    use std::sync::atomic::{AtomicUsize, Ordering};
    use std::sync::Mutex;

    const B2: TreeKind = TreeKind::Arity(2);

    fn br(kind: TreeKind, s: &[u32]) -> Branch {
        Branch::new(kind, s.to_vec()).unwrap()
    }

    #[test]
    fn mono_edge_examples() {
        let w = find_mono_edge(&PrefixColoring::constant(B2, 0), HypergraphKind::Hn(2)).unwrap();
        assert_eq!(w.members, vec![br(B2, &[1]), br(B2, &[1, 0, 1])]);
        assert_eq!(w.anchor.word(), &[1, 0]);

        let ident = PrefixColoring::new(B2, 2, 4, |w| w[0] * 2 + w[1]).unwrap();
        let w = find_mono_edge(&ident, HypergraphKind::Hn(2)).unwrap();
        assert_eq!(w.members, vec![br(B2, &[1]), br(B2, &[1, 0, 1])]);
        assert_eq!(w.color, 2);

        let o = TreeKind::Omega;
        let c = PrefixColoring::random(o, 3, 5, 11).unwrap();
        let w = find_mono_edge(&c, HypergraphKind::H0Inf).unwrap();
        assert_eq!(w.anchor.len(), 3);
        assert_eq!(w.members.len(), 3);
        assert!(validate_witness(&c, HypergraphKind::H0Inf, &w).unwrap());
    }

    #[test]
    fn mono_edge_rejects_wrong_kinds() {
        let c = PrefixColoring::constant(B2, 1);
        assert!(find_mono_edge(&c, HypergraphKind::Hn(3)).is_err());
        assert!(find_mono_edge(&c, HypergraphKind::H1Inf).is_err());
        assert!(find_mono_clique(&c, 3).is_err());
    }

    #[test]
    fn mono_clique_examples() {
        let o = TreeKind::Omega;
        for (depth, m) in [(1, 3), (0, 2), (5, 10)] {
            let c = PrefixColoring::random(o, depth, 3, depth as u64).unwrap();
            let w = find_mono_clique(&c, m).unwrap();
            assert_eq!(w.members.len(), m);
            assert_eq!(w.anchor.len(), depth.max(m));
            assert!(validate_witness(&c, HypergraphKind::H1Inf, &w).unwrap());
        }
        let c = PrefixColoring::constant(o, 2);
        assert_eq!(find_mono_clique(&c, 1).unwrap_err(), Error::BadArity(1));
    }

    #[test]
    fn refutation_examples() {
        let o = TreeKind::Omega;
        for depth in [0, 2, 4] {
            let c = PrefixColoring::random(o, depth, 2, 3).unwrap();
            let fam = refute_centred_class(&c).unwrap();
            assert_eq!(fam.len(), depth.max(2));
            assert!(validate_refutation(&fam).unwrap());
            assert!(fam.len() == 2 || is_n_linked(&fam, fam.len() - 1).unwrap());
        }
    }

    #[test]
    fn adversary_only_queries_witness_prefixes() {
        let calls = Arc::new(AtomicUsize::new(0));
        let seen = Arc::new(Mutex::new(Vec::new()));
        let (calls2, seen2) = (calls.clone(), seen.clone());
        let c = PrefixColoring::new(TreeKind::Arity(3), 3, 2, move |w| {
            calls2.fetch_add(1, Ordering::SeqCst);
            seen2.lock().unwrap().push(w.to_vec());
            w.iter().sum::<u32>() % 2
        })
        .unwrap();
        let w = find_mono_edge(&c, HypergraphKind::Hn(3)).unwrap();
        assert_eq!(calls.load(Ordering::SeqCst), w.members.len());
        let prefix = w.members[0].prefix(3);
        assert!(seen.lock().unwrap().iter().all(|q| q == prefix.word()));
    }

    #[test]
    fn impure_colorings_are_caught() {
        let n = Arc::new(AtomicUsize::new(0));
        let c = PrefixColoring::new(B2, 1, 2, move |_| {
            (n.fetch_add(1, Ordering::SeqCst) % 2) as u32
        })
        .unwrap();
        assert!(matches!(
            find_mono_edge(&c, HypergraphKind::Hn(2)),
            Err(Error::InvalidColoring(_))
        ));
    }

    #[test]
    fn table_round_trip_and_validation() {
        let c = PrefixColoring::random(TreeKind::Omega, 3, 4, 9).unwrap();
        let t = c.to_table();
        assert_eq!(t.table.len(), 6);
        let json = serde_json::to_string(&t).unwrap();
        let back = PrefixColoring::from_table(&serde_json::from_str(&json).unwrap()).unwrap();
        assert_eq!(back.to_table(), t);

        let mut missing = t.clone();
        missing.table.pop();
        assert!(PrefixColoring::from_table(&missing).is_err());
        let mut out_of_palette = t.clone();
        out_of_palette.table[0].color = 4;
        assert!(PrefixColoring::from_table(&out_of_palette).is_err());
        let mut illegal = t;
        illegal.table[0].word = vec![1, 0, 0];
        assert!(PrefixColoring::from_table(&illegal).is_err());
    }
}
