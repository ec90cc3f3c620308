//! The paired separation demos: class-level verification on one side, an
//! adversary witness against prefix colorings on the other.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use anyhow::{bail, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use chaincond::adversary::{validate_refutation, validate_witness};
use chaincond::sample::random_condition;
use chaincond::verifier::{validate_antichain_report, CliqueReport, LinkedReport};
use chaincond::*;

use crate::report::CheckResult;

/// Number of sampled classes per verification side.
const CLASSES: usize = 12;
/// Number of seeded colorings per adversary side.
const COLORINGS: u64 = 20;
/// Clique size demanded from the `H1_inf` adversary.
const CLIQUE_SIZE: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(into = "String")]
pub enum Demo {
    FiniteCc,
    BoundedCc,
    Linked(u32),
    Centred,
}

impl fmt::Display for Demo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Demo::FiniteCc => f.write_str("finite-cc"),
            Demo::BoundedCc => f.write_str("bounded-cc"),
            Demo::Linked(n) => write!(f, "linked:{n}"),
            Demo::Centred => f.write_str("centred"),
        }
    }
}

impl From<Demo> for String {
    fn from(d: Demo) -> String {
        d.to_string()
    }
}

impl FromStr for Demo {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "finite-cc" => Demo::FiniteCc,
            "bounded-cc" => Demo::BoundedCc,
            "centred" | "centered" => Demo::Centred,
            _ => match s.strip_prefix("linked:").map(str::parse::<u32>) {
                Some(Ok(n)) if n >= 3 => Demo::Linked(n),
                Some(_) => bail!("linked:n needs an integer n >= 3, got {s:?}"),
                None => {
                    bail!("unknown demo {s:?}; expected finite-cc, bounded-cc, linked:n or centred")
                }
            },
        })
    }
}

fn sample_keys(
    kind: HypergraphKind,
    sizes: std::ops::RangeInclusive<usize>,
    min_len: usize,
    seed: u64,
) -> Result<Vec<SeparatorKey>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut keys = BTreeSet::new();
    for _ in 0..CLASSES * 50 {
        if keys.len() == CLASSES {
            break;
        }
        let size = rng.random_range(sizes.clone());
        let p = random_condition(kind, size, 5, &mut rng);
        if sizes.contains(&p.len()) {
            keys.insert(class_key(&p, min_len)?);
        }
    }
    Ok(keys.into_iter().collect())
}

fn colorings(tree: TreeKind, depth: usize, seed: u64) -> Result<Vec<PrefixColoring>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..COLORINGS)
        .map(|i| {
            let palette = rng.random_range(2..=6);
            Ok(PrefixColoring::random(
                tree,
                depth,
                palette,
                seed.wrapping_add(i),
            )?)
        })
        .collect()
}

#[derive(Serialize)]
struct LinkedSummary {
    class_key: String,
    depth: usize,
    edges_examined: usize,
    holds: bool,
}

fn linked_side(name: &str, reports: Vec<LinkedReport>, arity: usize) -> CheckResult {
    let ok = reports.iter().filter(|r| r.holds).count();
    let pass = !reports.is_empty() && ok == reports.len();
    let details: Vec<LinkedSummary> = reports
        .iter()
        .map(|r| LinkedSummary {
            class_key: r.class_key.to_string(),
            depth: r.depth,
            edges_examined: r.edges_examined,
            holds: r.holds,
        })
        .collect();
    CheckResult::new(
        name,
        pass,
        format!("{ok}/{} classes {arity}-linked", reports.len()),
        details,
    )
}

fn clique_side(reports: Vec<CliqueReport>) -> CheckResult {
    let ok = reports.iter().filter(|r| r.holds()).count();
    let largest = reports.iter().map(|r| r.max_clique).max().unwrap_or(0);
    let details: Vec<_> = reports
        .iter()
        .map(|r| {
            json!({
                "class_key": r.class_key.to_string(),
                "depth": r.depth,
                "max_clique": r.max_clique,
                "anchor_len": r.anchor_len,
            })
        })
        .collect();
    CheckResult::new(
        "h1inf classes have bounded cliques",
        !reports.is_empty() && ok == reports.len(),
        format!(
            "{ok}/{} classes within their anchor bound, largest clique {largest}",
            reports.len()
        ),
        details,
    )
}

fn clique_adversary(depth: usize, seed: u64) -> Result<CheckResult> {
    let kind = HypergraphKind::H1Inf;
    let mut ok = 0;
    let mut details = Vec::new();
    for c in colorings(TreeKind::Omega, depth, seed)? {
        let w = find_mono_clique(&c, CLIQUE_SIZE)?;
        if validate_witness(&c, kind, &w)? {
            ok += 1;
        }
        details.push(json!({ "palette": c.palette_size(), "color": w.color, "anchor": w.anchor }));
    }
    Ok(CheckResult::new(
        format!("h1inf adversary finds {CLIQUE_SIZE}-cliques"),
        ok == COLORINGS,
        format!(
            "{ok}/{COLORINGS} depth-{depth} colorings have a monochromatic {CLIQUE_SIZE}-clique"
        ),
        details,
    ))
}

pub fn run_demo(which: Demo, depth: usize, seed: u64) -> Result<Vec<CheckResult>> {
    match which {
        Demo::FiniteCc => {
            let kind = HypergraphKind::H1Inf;
            let keys = sample_keys(kind, 1..=2, 1, seed)?;
            let reports = keys
                .par_iter()
                .map(|k| check_h1_no_unbounded_clique(k, k.level() + 2))
                .collect::<chaincond::Result<Vec<_>>>()?;
            Ok(vec![clique_side(reports), clique_adversary(depth, seed)?])
        }
        Demo::BoundedCc => {
            let kind = HypergraphKind::Hn(2);
            let mut keys = sample_keys(kind, 1..=1, 3, seed)?;
            keys.extend(sample_keys(kind, 2..=2, 1, seed)?);
            let reports = keys
                .par_iter()
                .map(|k| check_class_antichain_bound(k, k.level() + 3))
                .collect::<chaincond::Result<Vec<_>>>()?;
            let mut ok = 0;
            for r in &reports {
                if r.holds() && validate_antichain_report(r)? {
                    ok += 1;
                }
            }
            let details: Vec<_> = reports
                .iter()
                .map(|r| {
                    json!({
                        "class_key": r.class_key.to_string(),
                        "corpus_size": r.corpus_size,
                        "max_antichain": r.max_antichain_found,
                        "bound": r.bound,
                    })
                })
                .collect();
            let positive = CheckResult::new(
                "hn:2 class antichains below the Ramsey bound",
                !reports.is_empty() && ok == reports.len(),
                format!("{ok}/{} classes", reports.len()),
                details,
            );
            Ok(vec![positive, clique_adversary(depth, seed)?])
        }
        Demo::Linked(n) => {
            let kind = HypergraphKind::Hn(n);
            let keys = sample_keys(kind, 1..=2, 1, seed)?;
            let reports = keys
                .par_iter()
                .map(|k| check_class_linked(k, n as usize, k.level() + 2))
                .collect::<chaincond::Result<Vec<_>>>()?;
            let positive = linked_side(&format!("hn:{n} classes"), reports, n as usize - 1);
            let mut ok = 0;
            let mut details = Vec::new();
            for c in colorings(kind.tree(), depth, seed)? {
                let w = find_mono_edge(&c, kind)?;
                if validate_witness(&c, kind, &w)? {
                    ok += 1;
                }
                details.push(json!({ "color": w.color, "members": w.members }));
            }
            let negative = CheckResult::new(
                format!("hn:{n} adversary finds monochromatic edges"),
                ok == COLORINGS,
                format!("{ok}/{COLORINGS} depth-{depth} colorings have a monochromatic {n}-edge"),
                details,
            );
            Ok(vec![positive, negative])
        }
        Demo::Centred => {
            let kind = HypergraphKind::H0Inf;
            let mut out = Vec::new();
            for n in [3usize, 4] {
                let keys = sample_keys(kind, 1..=2, n + 1, seed)?;
                let reports = keys
                    .par_iter()
                    .map(|k| check_class_k_linked(k, n, k.level() + 1))
                    .collect::<chaincond::Result<Vec<_>>>()?;
                out.push(linked_side(
                    &format!("h0inf classes with min_len {}", n + 1),
                    reports,
                    n,
                ));
            }
            let mut ok = 0;
            let mut details = Vec::new();
            for c in colorings(TreeKind::Omega, depth, seed)? {
                let family = refute_centred_class(&c)?;
                let colors: BTreeSet<u32> = family
                    .iter()
                    .flat_map(|p| p.elements().iter().map(|x| c.color_of(x)))
                    .collect();
                if colors.len() == 1 && validate_refutation(&family)? {
                    ok += 1;
                }
                details.push(json!({ "family_size": family.len(), "colors": colors }));
            }
            out.push(CheckResult::new(
                "h0inf color classes are not centred",
                ok == COLORINGS,
                format!("{ok}/{COLORINGS} depth-{depth} colorings refuted"),
                details,
            ));
            Ok(out)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn selectors_parse() {
        for s in ["finite-cc", "bounded-cc", "linked:3", "linked:5", "centred"] {
            assert_eq!(s.parse::<Demo>().unwrap().to_string(), s);
        }
        assert!("linked:2".parse::<Demo>().is_err());
        assert!("linked:x".parse::<Demo>().is_err());
        assert!("sigma".parse::<Demo>().is_err());
    }

    #[test]
    fn demos_pass_and_replay() {
        for which in [
            Demo::FiniteCc,
            Demo::BoundedCc,
            Demo::Linked(3),
            Demo::Centred,
        ] {
            let a = run_demo(which, 2, 5).unwrap();
            assert!(a.iter().all(|r| r.pass), "{which}");
            let b = run_demo(which, 2, 5).unwrap();
            assert_eq!(
                serde_json::to_string(&a).unwrap(),
                serde_json::to_string(&b).unwrap()
            );
        }
    }
}
