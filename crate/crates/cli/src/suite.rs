//! Batch runs from a JSON config:
//!
//! ```json
//! { "checks": [
//!     { "check": "demo", "which": "linked:3" },
//!     { "check": "poset", "poset": {"size": 3, "leq": []}, "condition": "linked" },
//!     { "check": "gh-demo" }
//! ] }
//! ```

use anyhow::Result;
use serde::Deserialize;
use serde_json::json;

use chaincond::poset::sigma_centred_partition;
use chaincond::*;

use crate::demo::run_demo;
use crate::report::CheckResult;
use crate::{dispatch, AdversaryArgs, Command, PosetCommand};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteConfig {
    #[serde(default)]
    pub seed: Option<u64>,
    pub checks: Vec<Check>,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "check", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Check {
    Demo {
        which: String,
        #[serde(default = "default_depth")]
        depth: usize,
    },
    Adversary {
        kind: HypergraphKind,
        #[serde(default = "default_depth")]
        depth: usize,
        #[serde(default = "default_palette")]
        palette: u32,
        #[serde(default = "default_clique")]
        clique: usize,
    },
    Poset {
        poset: FinitePoset,
        condition: PartCondition,
    },
    GhDemo,
    SigmaCentred {
        hypergraph: FiniteHypergraph,
    },
}

fn default_depth() -> usize {
    4
}

fn default_palette() -> u32 {
    3
}

fn default_clique() -> usize {
    8
}

/// Runs every check in order; the config seed, when present, overrides the
/// command-line one.
pub fn run_suite(cfg: &SuiteConfig, seed: u64) -> Result<Vec<CheckResult>> {
    let seed = cfg.seed.unwrap_or(seed);
    let mut out = Vec::new();
    for (i, check) in cfg.checks.iter().enumerate() {
        let prefix = |mut r: CheckResult| {
            r.name = format!("[{i}] {}", r.name);
            r
        };
        let results = match check {
            Check::Demo { which, depth } => run_demo(which.parse()?, *depth, seed)?,
            Check::Adversary {
                kind,
                depth,
                palette,
                clique,
            } => {
                let cmd = Command::Adversary(AdversaryArgs {
                    kind: *kind,
                    depth: *depth,
                    palette: *palette,
                    coloring: None,
                    clique: *clique,
                });
                dispatch(&cmd, seed)?.1
            }
            Check::Poset { poset, condition } => {
                let (count, cert) = min_parts(poset, *condition)?;
                vec![CheckResult::new(
                    "minimum partition",
                    check_partition(poset, &cert),
                    format!("{count} parts ({condition}) on {} elements", poset.len()),
                    json!({ "parts": count, "certificate": cert }),
                )]
            }
            Check::GhDemo => dispatch(&Command::Poset(PosetCommand::GhDemo), seed)?.1,
            Check::SigmaCentred { hypergraph } => {
                let part = sigma_centred_partition(hypergraph)?;
                vec![CheckResult::new(
                    "centred partition",
                    check_partition(&part.anti_cliques.poset, &part.certificate),
                    format!("{} centred parts", part.keys.len()),
                    json!({ "keys": part.keys, "labels": part.certificate.labels }),
                )]
            }
        };
        out.extend(results.into_iter().map(prefix));
    }
    Ok(out)
}
