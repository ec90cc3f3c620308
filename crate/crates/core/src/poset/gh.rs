//! The antichain amplifier: from `n - 1` pairwise incompatible `p_i` in one
//! class, each with `n - 1` pairwise incompatible partners `q_ij` such that
//! some `r_ij` in a second class lies below both, the `r_ij` form an
//! antichain of size `(n - 1)^2` inside the second class.
//!
//! On finite posets this is a verified constructive step, not a theorem about
//! countable partitions: singleton parts are always centred, so every finite
//! poset trivially has all the chain conditions.

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use super::{FinitePoset, PartitionCertificate};
use crate::clique::Graph;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GHConfiguration {
    pub n: usize,
    pub class_k: usize,
    pub class_l: usize,
    pub p: Vec<usize>,
    pub q: Vec<Vec<usize>>,
    pub r: Vec<Vec<usize>>,
}

fn pairwise_incompatible(poset: &FinitePoset, xs: &[usize]) -> bool {
    xs.iter()
        .enumerate()
        .all(|(k, &a)| xs[k + 1..].iter().all(|&b| !poset.compatible(a, b)))
}

/// Checks the order-theoretic clauses of `cfg`; the error names the first
/// one that fails.
pub fn gh_validate(poset: &FinitePoset, cfg: &GHConfiguration) -> Result<()> {
    let fail = |msg: String| Err(Error::InvalidConfiguration(msg));
    if cfg.n < 2 {
        return fail(format!("n = {} is below 2", cfg.n));
    }
    let side = cfg.n - 1;
    if cfg.p.len() != side {
        return fail(format!("p has {} elements, expected {side}", cfg.p.len()));
    }
    if cfg.q.len() != side || cfg.q.iter().any(|row| row.len() != side) {
        return fail(format!("q must be a {side} x {side} matrix"));
    }
    if cfg.r.len() != side || cfg.r.iter().any(|row| row.len() != side) {
        return fail(format!("r must be a {side} x {side} matrix"));
    }
    let all = cfg
        .p
        .iter()
        .chain(cfg.q.iter().flatten())
        .chain(cfg.r.iter().flatten());
    for &x in all {
        poset.check_index(x)?;
    }
    if !pairwise_incompatible(poset, &cfg.p) {
        return fail("p is not pairwise incompatible".into());
    }
    for (i, row) in cfg.q.iter().enumerate() {
        if !pairwise_incompatible(poset, row) {
            return fail(format!("q row {i} is not pairwise incompatible"));
        }
    }
    for i in 0..side {
        for j in 0..side {
            let r = cfg.r[i][j];
            if !poset.leq(r, cfg.p[i]) {
                return fail(format!("r[{i}][{j}] is not below p[{i}]"));
            }
            if !poset.leq(r, cfg.q[i][j]) {
                return fail(format!("r[{i}][{j}] is not below q[{i}][{j}]"));
            }
        }
    }
    Ok(())
}

/// The flattened `r` matrix, checked to be an antichain of size `(n - 1)^2`.
pub fn gh_amplify(poset: &FinitePoset, cfg: &GHConfiguration) -> Result<Vec<usize>> {
    gh_validate(poset, cfg)?;
    let out: Vec<usize> = cfg.r.iter().flatten().copied().collect();
    if !pairwise_incompatible(poset, &out) {
        return Err(Error::InvalidConfiguration(
            "r is not pairwise incompatible".into(),
        ));
    }
    let side = cfg.n - 1;
    assert_eq!(out.len(), side * side);
    if cfg.n > 2 {
        assert!(side * side > cfg.n);
    }
    Ok(out)
}

fn first_antichain(graph: &Graph, within: &FixedBitSet, size: usize) -> Option<Vec<usize>> {
    let mut c = graph.max_clique_in(within);
    if c.len() < size {
        return None;
    }
    c.truncate(size);
    Some(c)
}

/// Searches every pair of classes `(k, l)` for a configuration: an
/// `(n - 1)`-antichain `p` in class `k` whose members each have an
/// `(n - 1)`-antichain of partners in class `k`, every partner sharing a
/// lower bound with its `p_i` inside class `l`.
pub fn gh_find_configuration(
    poset: &FinitePoset,
    partition: &PartitionCertificate,
    n: usize,
) -> Option<GHConfiguration> {
    if n < 2 || partition.labels.len() != poset.len() {
        return None;
    }
    let side = n - 1;
    let m = poset.len();
    let graph = poset.incompatibility_graph();
    let parts = partition.parts();
    let common_below = |a: usize, b: usize, l: usize| {
        parts[l]
            .iter()
            .copied()
            .find(|&r| poset.leq(r, a) && poset.leq(r, b))
    };
    for (k, class_k) in parts.iter().enumerate() {
        for l in 0..parts.len() {
            // for each p in class k, the partners reachable through class l
            let mut partners = vec![None; m];
            let mut candidates = FixedBitSet::with_capacity(m);
            for &p in class_k {
                let mut reach = FixedBitSet::with_capacity(m);
                for &q in class_k {
                    if common_below(p, q, l).is_some() {
                        reach.insert(q);
                    }
                }
                if let Some(qs) = first_antichain(&graph, &reach, side) {
                    partners[p] = Some(qs);
                    candidates.insert(p);
                }
            }
            let Some(ps) = first_antichain(&graph, &candidates, side) else {
                continue;
            };
            let q: Vec<Vec<usize>> = ps.iter().map(|&p| partners[p].clone().unwrap()).collect();
            let r = ps
                .iter()
                .zip(&q)
                .map(|(&p, row)| {
                    row.iter()
                        .map(|&qq| common_below(p, qq, l).unwrap())
                        .collect()
                })
                .collect();
            return Some(GHConfiguration {
                n,
                class_k: k,
                class_l: l,
                p: ps,
                q,
                r,
            });
        }
    }
    None
}
