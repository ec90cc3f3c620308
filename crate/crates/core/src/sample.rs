//! Seeded random branches and conditions.

use rand::Rng;

use crate::branch::{Branch, TreeKind};
use crate::condition::Condition;
use crate::hypergraph::{is_anti_clique, HypergraphKind};

/// A branch whose support has length at most `max_support`.
pub fn random_branch(kind: TreeKind, max_support: usize, rng: &mut impl Rng) -> Branch {
    let len = rng.random_range(0..=max_support);
    let word = (0..len)
        .map(|i| rng.random_range(0..kind.branching(i)))
        .collect();
    Branch::new(kind, word).expect("entries drawn within range")
}

/// A condition with up to `size` elements, built greedily: draws that would
/// create an edge are skipped.
pub fn random_condition(
    kind: HypergraphKind,
    size: usize,
    max_support: usize,
    rng: &mut impl Rng,
) -> Condition {
    let mut elements: Vec<Branch> = Vec::with_capacity(size);
    for _ in 0..size * 8 {
        if elements.len() == size {
            break;
        }
        let x = random_branch(kind.tree(), max_support, rng);
        if elements.contains(&x) {
            continue;
        }
        elements.push(x);
        if !is_anti_clique(kind, &elements).expect("kinds agree") {
            elements.pop();
        }
    }
    Condition::new(kind, elements).expect("built as an anti-clique")
}
