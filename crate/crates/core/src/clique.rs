//! Exact maximum clique by branch and bound with a greedy-coloring bound.
//!
//! Antichains of a poset are cliques of its incompatibility graph, so this is
//! the search behind every "largest antichain" question in the crate.

use fixedbitset::FixedBitSet;

/// Undirected graph on `0..n` stored as adjacency bitsets.
#[derive(Debug, Clone)]
pub struct Graph {
    adj: Vec<FixedBitSet>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph {
            adj: vec![FixedBitSet::with_capacity(n); n],
        }
    }

    pub fn from_fn(n: usize, mut edge: impl FnMut(usize, usize) -> bool) -> Self {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                if edge(u, v) {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        if u != v {
            self.adj[u].insert(v);
            self.adj[v].insert(u);
        }
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn neighbors(&self, u: usize) -> &FixedBitSet {
        &self.adj[u]
    }

    pub fn all(&self) -> FixedBitSet {
        let mut s = FixedBitSet::with_capacity(self.len());
        s.insert_range(..);
        s
    }

    pub fn max_clique(&self) -> Vec<usize> {
        self.max_clique_in(&self.all())
    }

    /// A maximum clique of the subgraph induced by `within`, in ascending order.
    pub fn max_clique_in(&self, within: &FixedBitSet) -> Vec<usize> {
        let mut best = Vec::new();
        let mut current = Vec::new();
        self.expand(&mut current, within.clone(), &mut best);
        best.sort_unstable();
        best
    }

    /// True iff every pair in `set` is adjacent.
    pub fn is_clique(&self, set: &[usize]) -> bool {
        set.iter()
            .enumerate()
            .all(|(k, &u)| set[k + 1..].iter().all(|&v| self.has_edge(u, v)))
    }

    fn expand(&self, current: &mut Vec<usize>, mut cand: FixedBitSet, best: &mut Vec<usize>) {
        if cand.is_clear() {
            if current.len() > best.len() {
                *best = current.clone();
            }
            return;
        }
        let (order, bounds) = self.color_order(&cand);
        for k in (0..order.len()).rev() {
            if current.len() + bounds[k] <= best.len() {
                return;
            }
            let v = order[k];
            let mut next = cand.clone();
            next.intersect_with(&self.adj[v]);
            current.push(v);
            self.expand(current, next, best);
            current.pop();
            cand.set(v, false);
        }
    }

    /// Greedy sequential coloring of `cand`; vertices come back sorted by color
    /// with the color number (1-based) as an upper bound on any clique among
    /// the vertices up to that position.
    fn color_order(&self, cand: &FixedBitSet) -> (Vec<usize>, Vec<usize>) {
        let mut uncolored = cand.clone();
        let mut order = Vec::with_capacity(cand.count_ones(..));
        let mut bounds = Vec::with_capacity(order.capacity());
        let mut color = 0;
        while !uncolored.is_clear() {
            color += 1;
            let mut avail = uncolored.clone();
            while let Some(v) = avail.minimum() {
                avail.set(v, false);
                avail.difference_with(&self.adj[v]);
                uncolored.set(v, false);
                order.push(v);
                bounds.push(color);
            }
        }
        (order, bounds)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn brute_force(g: &Graph) -> usize {
        let n = g.len();
        (0u32..1 << n)
            .filter(|mask| {
                let set: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
                g.is_clique(&set)
            })
            .map(|mask| mask.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    #[test]
    fn small_cases() {
        assert!(Graph::new(0).max_clique().is_empty());
        assert_eq!(Graph::new(3).max_clique().len(), 1);
        let k4 = Graph::from_fn(4, |_, _| true);
        assert_eq!(k4.max_clique(), vec![0, 1, 2, 3]);
        let c5 = Graph::from_fn(5, |u, v| (v - u) % 5 == 1 || (v - u) % 5 == 4);
        assert_eq!(c5.max_clique().len(), 2);
    }

    #[test]
    fn matches_brute_force_on_random_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let n = rng.random_range(0..=12);
            let p = rng.random_range(0.1..0.9);
            let g = Graph::from_fn(n, |_, _| rng.random_bool(p));
            let c = g.max_clique();
            assert!(g.is_clique(&c));
            assert_eq!(c.len(), brute_force(&g));
            assert!(c.iter().tuple_windows().all(|(a, b)| a < b));
        }
    }
}
