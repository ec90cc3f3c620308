//! Command-line front end for the chaincond checks.
//!
//! Every command produces a [`Report`]; the binary prints it as text or
//! JSON and exits with 0 when all checks pass, 1 when one fails and 2 on
//! usage or configuration errors.

pub mod demo;
pub mod report;
pub mod suite;

use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use chaincond::poset::{
    gh_amplify, gh_example, gh_find_configuration, min_parts, sigma_centred_partition,
    GHConfiguration,
};
use chaincond::*;

use crate::demo::{run_demo, Demo};
use crate::report::{CheckResult, Report};

#[derive(Debug, Parser)]
#[command(
    name = "chaincond",
    version,
    about = "Chain-condition checks for anti-clique posets"
)]
pub struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,

    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run one separation demo: finite-cc, bounded-cc, linked:<n> or centred.
    Demo {
        which: String,
        /// Prefix depth of the colorings the adversary plays against.
        #[arg(long, default_value_t = 4)]
        depth: usize,
    },
    /// Check one partition class exhaustively up to a depth.
    Verify(VerifyArgs),
    /// Find a monochromatic witness against a prefix coloring.
    Adversary(AdversaryArgs),
    /// Separator keys of conditions.
    #[command(subcommand)]
    Partition(PartitionCommand),
    /// Finite poset analysis.
    #[command(subcommand)]
    Poset(PosetCommand),
    /// Finite hypergraph constructions.
    #[command(subcommand)]
    Hypergraph(HypergraphCommand),
    /// Run the checks listed in a JSON config file.
    Suite { config: PathBuf },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Property {
    /// Every k members have a common extension (`--arity k`, default n-1 on hn:n).
    Linked,
    /// Largest antichain below the Ramsey bound for the key size.
    Antichain,
    /// `H1_inf` cliques bounded by the anchor length.
    Clique,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub kind: HypergraphKind,
    /// Key nodes as a JSON array of words, e.g. '[[0,1],[1,0]]'.
    #[arg(long)]
    pub key: String,
    #[arg(long, default_value_t = 1)]
    pub min_len: usize,
    #[arg(long, value_enum)]
    pub property: Property,
    #[arg(long)]
    pub arity: Option<usize>,
    /// Members have support of length at most this.
    #[arg(long)]
    pub depth: usize,
}

#[derive(Debug, Args)]
pub struct AdversaryArgs {
    #[arg(long)]
    pub kind: HypergraphKind,
    /// Prefix depth of the random coloring.
    #[arg(long, default_value_t = 4)]
    pub depth: usize,
    #[arg(long, default_value_t = 3)]
    pub palette: u32,
    /// Read the coloring table from a JSON file instead.
    #[arg(long)]
    pub coloring: Option<PathBuf>,
    /// Clique size for h1inf.
    #[arg(long, default_value_t = 8)]
    pub clique: usize,
}

#[derive(Debug, Subcommand)]
pub enum PartitionCommand {
    /// The class key of a condition.
    Key {
        #[arg(long)]
        kind: HypergraphKind,
        /// Condition elements as a JSON array of supports.
        #[arg(long)]
        condition: String,
        #[arg(long, default_value_t = 1)]
        min_len: usize,
    },
    /// Whether a condition belongs to the class of a key.
    CheckMembership {
        #[arg(long)]
        kind: HypergraphKind,
        #[arg(long)]
        condition: String,
        #[arg(long)]
        key: String,
        #[arg(long, default_value_t = 1)]
        min_len: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum PosetCommand {
    /// Exact minimum partition of a poset read from JSON.
    Analyze {
        file: PathBuf,
        /// linked, centred, nlinked:<n> or antichain-lt:<n>.
        #[arg(long)]
        condition: PartCondition,
    },
    /// The antichain amplifier on the built-in 10-element example.
    GhDemo,
}

#[derive(Debug, Subcommand)]
pub enum HypergraphCommand {
    /// Partition the anti-clique poset of a hypergraph into centred parts.
    SigmaCentred { file: PathBuf },
}

fn parse_words(s: &str, what: &str) -> Result<Vec<Vec<u32>>> {
    serde_json::from_str(s)
        .with_context(|| format!("{what} must be a JSON array of arrays of naturals"))
}

fn parse_key(kind: HypergraphKind, s: &str, min_len: usize) -> Result<SeparatorKey> {
    let nodes = parse_words(s, "--key")?
        .into_iter()
        .map(|w| Node::new(kind.tree(), w))
        .collect::<chaincond::Result<Vec<_>>>()?;
    Ok(SeparatorKey::new(kind, nodes, min_len)?)
}

fn parse_condition(kind: HypergraphKind, s: &str) -> Result<Condition> {
    let elements = parse_words(s, "--condition")?
        .into_iter()
        .map(|w| Branch::new(kind.tree(), w))
        .collect::<chaincond::Result<Vec<_>>>()?;
    Ok(Condition::new(kind, elements)?)
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| match e.line() {
        // semantic errors raised after parsing carry no position
        0 => anyhow!("{}: {e}", path.display()),
        line => anyhow!("{}: line {line} column {}: {e}", path.display(), e.column()),
    })
}

/// Runs a parsed command. Errors are usage or input errors; failed checks
/// come back inside the report.
pub fn run(cli: &Cli, argv: &[String]) -> Result<Report> {
    let start = Instant::now();
    let (parameters, results) = dispatch(&cli.command, cli.seed)?;
    // a suite config may carry its own seed
    let seed = parameters
        .get("seed")
        .and_then(Value::as_u64)
        .unwrap_or(cli.seed);
    let mut report = Report::new(argv.join(" "), parameters, seed, results);
    report.duration_ms = start.elapsed().as_millis();
    Ok(report)
}

pub(crate) fn dispatch(
    command: &Command,
    seed: u64,
) -> Result<(serde_json::Value, Vec<CheckResult>)> {
    Ok(match command {
        Command::Demo { which, depth } => {
            let which: Demo = which.parse()?;
            (
                json!({ "demo": which, "depth": depth }),
                run_demo(which, *depth, seed)?,
            )
        }
        Command::Verify(a) => (
            json!({
                "kind": a.kind.to_string(),
                "key": a.key,
                "min_len": a.min_len,
                "property": format!("{:?}", a.property).to_lowercase(),
                "arity": a.arity,
                "depth": a.depth,
            }),
            vec![verify(a)?],
        ),
        Command::Adversary(a) => (
            json!({
                "kind": a.kind.to_string(),
                "depth": a.depth,
                "palette": a.palette,
                "coloring": a.coloring,
                "clique": a.clique,
            }),
            adversary(a, seed)?,
        ),
        Command::Partition(PartitionCommand::Key {
            kind,
            condition,
            min_len,
        }) => {
            let p = parse_condition(*kind, condition)?;
            let key = class_key(&p, *min_len)?;
            let member = member_of(&p, &key)?;
            let result = CheckResult::new(
                "class key",
                member,
                format!("{} ({}, cut level {})", key, classify(&p), key.level()),
                json!({ "key": key, "case": classify(&p), "self_member": member }),
            );
            (
                json!({ "kind": kind.to_string(), "condition": condition, "min_len": min_len }),
                vec![result],
            )
        }
        Command::Partition(PartitionCommand::CheckMembership {
            kind,
            condition,
            key,
            min_len,
        }) => {
            let p = parse_condition(*kind, condition)?;
            let k = parse_key(*kind, key, *min_len)?;
            let member = member_of(&p, &k)?;
            let summary = if member { "member" } else { "not a member" };
            (
                json!({ "kind": kind.to_string(), "condition": condition, "key": key, "min_len": min_len }),
                vec![CheckResult::new(
                    "membership",
                    member,
                    summary,
                    json!({ "member": member }),
                )],
            )
        }
        Command::Poset(PosetCommand::Analyze { file, condition }) => {
            let poset: FinitePoset = read_json(file)?;
            let (count, cert) = min_parts(&poset, *condition)?;
            let valid = check_partition(&poset, &cert);
            (
                json!({ "file": file, "condition": condition }),
                vec![CheckResult::new(
                    "minimum partition",
                    valid,
                    format!("{count} parts ({condition}) on {} elements", poset.len()),
                    json!({ "parts": count, "certificate": cert }),
                )],
            )
        }
        Command::Poset(PosetCommand::GhDemo) => (json!({}), gh_demo()?),
        Command::Hypergraph(HypergraphCommand::SigmaCentred { file }) => {
            let h: FiniteHypergraph = read_json(file)?;
            let part = sigma_centred_partition(&h)?;
            let valid = check_partition(&part.anti_cliques.poset, &part.certificate);
            (
                json!({ "file": file }),
                vec![CheckResult::new(
                    "centred partition",
                    valid,
                    format!(
                        "{} conditions in {} centred parts over {} components",
                        part.anti_cliques.conditions.len(),
                        part.keys.len(),
                        part.components.len()
                    ),
                    json!({
                        "components": part.components,
                        "keys": part.keys,
                        "conditions": part.anti_cliques.conditions,
                        "labels": part.certificate.labels,
                    }),
                )],
            )
        }
        Command::Suite { config } => {
            let cfg: suite::SuiteConfig = read_json(config)?;
            let params = json!({ "config": config, "seed": cfg.seed.unwrap_or(seed) });
            (params, suite::run_suite(&cfg, seed)?)
        }
    })
}

fn verify(a: &VerifyArgs) -> Result<CheckResult> {
    let key = parse_key(a.kind, &a.key, a.min_len)?;
    Ok(match a.property {
        Property::Linked => {
            let k = match (a.arity, a.kind) {
                (Some(k), _) => k,
                (None, HypergraphKind::Hn(n)) => n as usize - 1,
                (None, _) => bail!("--arity is required for {}", a.kind),
            };
            let r = check_class_k_linked(&key, k, a.depth)?;
            let summary = match &r.witness {
                None => format!(
                    "{key} is {k}-linked below depth {} ({} edges examined)",
                    a.depth, r.edges_examined
                ),
                Some(w) => format!(
                    "{k} members of {key} cover the edge anchored at {}",
                    w.edge.anchor()
                ),
            };
            CheckResult::new("linked", r.holds, summary, r)
        }
        Property::Antichain => {
            let r = check_class_antichain_bound(&key, a.depth)?;
            let summary = format!(
                "largest antichain {} among {} members, bound {}",
                r.max_antichain_found, r.corpus_size, r.bound
            );
            CheckResult::new("antichain bound", r.holds(), summary, r)
        }
        Property::Clique => {
            let r = check_h1_no_unbounded_clique(&key, a.depth)?;
            let summary = format!(
                "largest clique {}, anchor length {}",
                r.max_clique, r.anchor_len
            );
            CheckResult::new("clique bound", r.holds(), summary, r)
        }
    })
}

fn adversary(a: &AdversaryArgs, seed: u64) -> Result<Vec<CheckResult>> {
    use chaincond::adversary::{validate_refutation, validate_witness, ColoringTable};
    let c = match &a.coloring {
        Some(path) => PrefixColoring::from_table(&read_json::<ColoringTable>(path)?)?,
        None => PrefixColoring::random(a.kind.tree(), a.depth, a.palette, seed)?,
    };
    let mut out = Vec::new();
    let w = match a.kind {
        HypergraphKind::H1Inf => find_mono_clique(&c, a.clique)?,
        _ => find_mono_edge(&c, a.kind)?,
    };
    let valid = validate_witness(&c, a.kind, &w)?;
    out.push(CheckResult::new(
        "monochromatic witness",
        valid,
        format!(
            "{} members of color {} over anchor {}",
            w.members.len(),
            w.color,
            w.anchor
        ),
        &w,
    ));
    if a.kind == HypergraphKind::H0Inf {
        let family = refute_centred_class(&c)?;
        let valid = validate_refutation(&family)?;
        out.push(CheckResult::new(
            "non-centred color class",
            valid,
            format!(
                "{} singletons, not centred, every proper subfamily centred",
                family.len()
            ),
            &family,
        ));
    }
    Ok(out)
}

fn gh_demo() -> Result<Vec<CheckResult>> {
    let p = gh_example();
    let cfg = GHConfiguration {
        n: 3,
        class_k: 0,
        class_l: 0,
        p: vec![0, 1],
        q: vec![vec![2, 3], vec![4, 5]],
        r: vec![vec![6, 7], vec![8, 9]],
    };
    let out = gh_amplify(&p, &cfg)?;
    let amplified = CheckResult::new(
        "amplified antichain",
        out.len() == 4,
        format!("antichain {out:?} of size {}", out.len()),
        json!({ "configuration": cfg, "antichain": out }),
    );
    let one_class = PartitionCertificate {
        labels: vec![0; p.len()],
        condition: PartCondition::Linked,
    };
    let found = gh_find_configuration(&p, &one_class, 3);
    let verified = match &found {
        Some(cfg) => gh_amplify(&p, cfg).is_ok(),
        None => false,
    };
    let search = CheckResult::new(
        "configuration search",
        verified,
        if verified {
            "found and amplified"
        } else {
            "not found"
        },
        &found,
    );
    Ok(vec![amplified, search])
}
