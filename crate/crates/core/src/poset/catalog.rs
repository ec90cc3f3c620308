//! Generated posets: exhaustive small catalogs, seeded random posets and the
//! fixed amplifier example.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::FinitePoset;

/// Every partial order on `0..m` in which `a < b` implies `a < b` as
/// integers, i.e. one representative per natural labelling. Each
/// isomorphism class appears at least once.
pub fn naturally_labelled(m: usize) -> Vec<FinitePoset> {
    let pairs: Vec<[usize; 2]> = (0..m).flat_map(|b| (0..b).map(move |a| [a, b])).collect();
    let mut out = Vec::new();
    let mut chosen = vec![vec![false; m]; m];
    extend(&pairs, 0, &mut chosen, &mut out);
    out
}

/// Pairs are visited with `b` increasing, so when `[a, b]` is decided every
/// relation among smaller elements is final and transitivity through `b`
/// can be checked on the spot.
fn extend(pairs: &[[usize; 2]], idx: usize, lt: &mut Vec<Vec<bool>>, out: &mut Vec<FinitePoset>) {
    if idx == pairs.len() {
        let strict: Vec<[usize; 2]> = pairs.iter().copied().filter(|&[a, b]| lt[a][b]).collect();
        out.push(FinitePoset::from_pairs(lt.len(), &strict).expect("acyclic"));
        return;
    }
    let [a, b] = pairs[idx];
    let last_for_b = idx + 1 == pairs.len() || pairs[idx + 1][1] != b;
    for choice in [false, true] {
        lt[a][b] = choice;
        if last_for_b && !closed_at(lt, b) {
            continue;
        }
        extend(pairs, idx + 1, lt, out);
    }
    lt[a][b] = false;
}

/// Transitivity for triples whose top is `b`.
fn closed_at(lt: &[Vec<bool>], b: usize) -> bool {
    (0..b).all(|c| !lt[c][b] || (0..c).all(|a| !lt[a][c] || lt[a][b]))
}

/// A seeded random poset: each pair `a < b` is an edge of a DAG with
/// probability `density`, then the order is its transitive closure.
pub fn random_poset(m: usize, density: f64, seed: u64) -> FinitePoset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs = Vec::new();
    for b in 0..m {
        for a in 0..b {
            if rng.random_bool(density) {
                pairs.push([a, b]);
            }
        }
    }
    FinitePoset::from_pairs(m, &pairs).expect("edges go upward")
}

/// The 10-element amplifier example with element names
/// `p1 p2 q11 q12 q21 q22 r11 r12 r21 r22` in that order: the `r_ij` are
/// minimal and lie below exactly `p_i` and `q_ij`.
pub fn gh_example() -> FinitePoset {
    let mut pairs = Vec::new();
    for i in 0..2 {
        for j in 0..2 {
            let r = 6 + 2 * i + j;
            pairs.push([r, i]);
            pairs.push([r, 2 + 2 * i + j]);
        }
    }
    FinitePoset::from_pairs(10, &pairs).expect("two-level order")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_sizes() {
        // labelled counts of naturally labelled posets
        let counts: Vec<usize> = (0..=5).map(|m| naturally_labelled(m).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 7, 40, 357]);
    }

    #[test]
    fn random_posets_are_reproducible() {
        assert_eq!(random_poset(8, 0.4, 3), random_poset(8, 0.4, 3));
        let p = random_poset(8, 1.0, 0);
        assert!(p.leq(0, 7));
    }

    #[test]
    fn gh_example_shape() {
        let p = gh_example();
        assert!(p.leq(6, 0) && p.leq(6, 2));
        assert!(!p.leq(6, 1) && !p.leq(6, 3));
        assert!(!p.compatible(0, 1));
        assert!(p.compatible(0, 2));
    }
}
