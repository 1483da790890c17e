//! Command-line front end: parsing, folding, verification, and
//! classification wired into reproducible JSON/text reports.
//!
//! Exit codes: 0 on success (a clean refutation included), 1 on usage
//! errors, 2 when a budget ran out before a definitive verdict.

use std::io::Write;
use std::path::Path;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::acceptance;
use crate::catalog;
use crate::folding::{enumerate_folded_roots, fold, root_orbits};
use crate::form::FormMatrix;
use crate::graph::{parse::parse_document, CoxeterGraph, SymmetryGroup};
use crate::report;
use crate::roots::enumerate_positive_roots;
use crate::verify::{decide, witness_search, Budget, VerdictStatus};

pub const TOOL: &str = "coxfold";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = TOOL, version = VERSION, about = "Exact folded root systems and the equivariant basis property of Coxeter graph symmetries")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CommonOpts {
    /// Catalog token (e.g. E6:g, tD4:rot4, Dinf[8]:g) or graph-spec file path.
    pub input: String,
    /// Root enumeration depth.
    #[arg(long, default_value_t = 12)]
    pub depth: u32,
    /// Orbit search depth for coverage and certificates.
    #[arg(long, default_value_t = 16)]
    pub orbit_depth: u32,
    /// Symmetry-group closure cap.
    #[arg(long, default_value_t = 1_000_000)]
    pub cap_closure: usize,
    /// Folded bond-order iteration cap.
    #[arg(long, default_value_t = 1_000)]
    pub cap_order: u32,
    /// Hard cap on enumerated roots / orbit nodes.
    #[arg(long, default_value_t = 1 << 20)]
    pub cap_nodes: usize,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the report to a file instead of stdout.
    #[arg(long)]
    #[serde(skip)]
    pub out: Option<String>,
}

impl CommonOpts {
    pub fn budget(&self) -> Budget {
        Budget {
            root_depth: self.depth,
            orbit_depth: self.orbit_depth,
            closure_cap: self.cap_closure,
            order_cap: self.cap_order,
            node_cap: self.cap_nodes,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Enumerate the positive roots of the canonical root system.
    Roots(CommonOpts),
    /// Compute the folded Coxeter system of a pair.
    Fold(CommonOpts),
    /// Vertex orbits, root orbits, and the orbit map of a pair.
    Orbits(CommonOpts),
    /// Decide the equivariant basis property.
    Check(CommonOpts),
    /// Classify a pair against the catalog patterns.
    Classify(CommonOpts),
    /// Search for a refutation witness.
    Witness(CommonOpts),
    /// Run the acceptance matrix and print pass/fail per criterion.
    Selftest {
        /// Run only criteria whose id contains this substring.
        #[arg(long)]
        only: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("budget exhausted: {0}")]
    Budget(String),
}

/// Envelope embedding the configuration and versions in every report.
#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    tool: &'static str,
    version: &'static str,
    command: &'a str,
    config: &'a CommonOpts,
    result: T,
}

fn render<T: Serialize>(
    command: &str,
    opts: &CommonOpts,
    result: T,
    text: String,
) -> Result<String, CliError> {
    match opts.format {
        Format::Text => Ok(text),
        Format::Json => {
            let envelope = Envelope {
                tool: TOOL,
                version: VERSION,
                command,
                config: opts,
                result,
            };
            serde_json::to_string_pretty(&envelope)
                .map_err(|e| CliError::Usage(format!("serialization failed: {e}")))
        }
    }
}

/// Resolve the input as a catalog token or a graph-spec file.
pub fn resolve_input(
    input: &str,
    closure_cap: usize,
) -> Result<(Arc<CoxeterGraph>, SymmetryGroup), CliError> {
    match catalog::pair_from_token(input) {
        Ok(pair) => Ok(pair),
        Err(token_err) => {
            if Path::new(input).exists() {
                let text = std::fs::read_to_string(input)
                    .map_err(|e| CliError::Usage(format!("cannot read {input}: {e}")))?;
                let parsed = parse_document(&text)
                    .map_err(|e| CliError::Usage(format!("{input}: {e}")))?;
                let group = parsed
                    .group(closure_cap)
                    .map_err(|e| CliError::Usage(format!("{input}: {e}")))?;
                return Ok((parsed.graph, group));
            }
            Err(CliError::Usage(format!(
                "input '{input}' is neither a catalog token ({token_err}) nor an existing file"
            )))
        }
    }
}

fn map_verify_err(e: crate::verify::VerifyError) -> CliError {
    use crate::folding::FoldingError;
    use crate::roots::RootError;
    use crate::verify::VerifyError;
    match &e {
        VerifyError::Root(RootError::Budget(_)) => CliError::Budget(e.to_string()),
        VerifyError::Folding(FoldingError::OrderCapExceeded(_)) => {
            CliError::Budget(e.to_string())
        }
        VerifyError::Folding(FoldingError::Root(RootError::Budget(_))) => {
            CliError::Budget(e.to_string())
        }
        _ => CliError::Usage(e.to_string()),
    }
}

/// Run one command; returns the report text and the process exit code.
pub fn execute(command: &Command) -> Result<(String, i32), CliError> {
    match command {
        Command::Roots(opts) => {
            let (graph, _group) = resolve_input(&opts.input, opts.cap_closure)?;
            let form = FormMatrix::new(Arc::clone(&graph))
                .map_err(|e| CliError::Usage(e.to_string()))?;
            let set = enumerate_positive_roots(
                &form,
                opts.depth,
                opts.budget().enumeration_caps(),
            )
            .map_err(|e| match e {
                crate::roots::RootError::Budget(_) => CliError::Budget(e.to_string()),
                other => CliError::Usage(other.to_string()),
            })?;
            let rep = report::rootset_report(&set);
            let mut text = format!(
                "{} positive roots (complete: {}, depth reached: {})\n",
                rep.count, rep.complete, rep.depth_reached
            );
            for r in &rep.roots {
                let coords: Vec<String> =
                    r.coords.iter().map(|c| format!("{}:{}", c.v, c.c)).collect();
                text.push_str(&format!("  depth {:>2}  [{}]\n", r.depth, coords.join(", ")));
            }
            Ok((render("roots", opts, rep, text)?, 0))
        }
        Command::Fold(opts) => {
            let (graph, group) = resolve_input(&opts.input, opts.cap_closure)?;
            let folded = fold(&graph, &group, opts.cap_order)
                .map_err(|e| CliError::Usage(e.to_string()))?;
            let rep = report::fold_report(&folded);
            let mut text = format!(
                "folded graph: {}\n",
                rep.folded_graph.name.as_deref().unwrap_or("(unrecognized)")
            );
            text.push_str(&format!("spherical orbits: {:?}\n", rep.spherical_orbits));
            if !rep.non_spherical_orbits.is_empty() {
                text.push_str(&format!(
                    "non-spherical orbits (excluded): {:?}\n",
                    rep.non_spherical_orbits
                ));
            }
            for (i, w) in rep.longest_words.iter().enumerate() {
                text.push_str(&format!("  u[{}] = {}\n", i, w.join(" ")));
            }
            text.push_str("folded matrix:\n");
            for row in &rep.folded_matrix {
                text.push_str(&format!("  {}\n", row.join(" ")));
            }
            Ok((render("fold", opts, rep, text)?, 0))
        }
        Command::Orbits(opts) => {
            let (graph, group) = resolve_input(&opts.input, opts.cap_closure)?;
            let folded = fold(&graph, &group, opts.cap_order)
                .map_err(|e| CliError::Usage(e.to_string()))?;
            let set = enumerate_positive_roots(
                &folded.form,
                opts.depth,
                opts.budget().enumeration_caps(),
            )
            .map_err(|e| CliError::Usage(e.to_string()))?;
            let orbits = root_orbits(&set, &group).map_err(|e| CliError::Usage(e.to_string()))?;
            let folded_set =
                enumerate_folded_roots(&folded, opts.depth, opts.budget().enumeration_caps())
                    .map_err(|e| CliError::Usage(e.to_string()))?;
            let fmap = crate::folding::compute_f(&folded, &folded_set, &set, &orbits)
                .map_err(|e| CliError::Usage(e.to_string()))?;
            let rep = report::orbits_report(&folded, &set, &folded_set, &orbits, &fmap);
            let text = format!(
                "vertex orbits: {:?}\npositive roots: {} (complete: {})\nroot orbits: {}\nfolded positive roots: {} (complete: {})\norbit map injective: {}, surjective: {}\n",
                rep.vertex_orbits.orbits,
                rep.positive_roots,
                rep.roots_complete,
                rep.root_orbits.len(),
                rep.folded_positive_roots,
                rep.folded_complete,
                rep.orbit_map_injective,
                rep.orbit_map_surjective
            );
            Ok((render("orbits", opts, rep, text)?, 0))
        }
        Command::Check(opts) => {
            let (graph, group) = resolve_input(&opts.input, opts.cap_closure)?;
            let verdict = decide(&graph, &group, &opts.budget()).map_err(map_verify_err)?;
            let rep = report::verdict_report(&verdict);
            let mut text = match verdict.status {
                VerdictStatus::Holds => "verdict: holds\n".to_string(),
                VerdictStatus::Fails => "verdict: fails\n".to_string(),
                VerdictStatus::CertifiedAffine => "verdict: certified-affine\n".to_string(),
                VerdictStatus::VerifiedToDepth(d) => {
                    format!("verdict: verified-to-depth {d}\n")
                }
            };
            for c in &rep.components {
                let label = c
                    .graph
                    .name
                    .as_deref()
                    .or_else(|| {
                        c.classification
                            .as_ref()
                            .and_then(|cl| cl.family.as_deref())
                    })
                    .unwrap_or("(unnamed)");
                text.push_str(&format!(
                    "  component {}: {}{}\n",
                    label,
                    c.status,
                    c.depth.map(|d| format!(" (depth {d})")).unwrap_or_default()
                ));
                if let Some(w) = &c.witness {
                    text.push_str(&format!(
                        "    witness: g = {}, pairing = {}\n",
                        w.symmetry, w.pairing
                    ));
                }
            }
            let exit = match verdict.status {
                VerdictStatus::VerifiedToDepth(_) if !verdict.truncation_capped => 2,
                _ => 0,
            };
            Ok((render("check", opts, rep, text)?, exit))
        }
        Command::Classify(opts) => {
            let (graph, group) = resolve_input(&opts.input, opts.cap_closure)?;
            let verdict = catalog::classify_pair(&graph, &group)
                .map_err(|e| CliError::Usage(e.to_string()))?;
            let rep = report::classify_report(&verdict);
            let text = match (&rep.case, &rep.reason) {
                (Some(case), _) => format!(
                    "family: {}  case: ({})  parameter: {}  folded: {}\n",
                    rep.family.as_deref().unwrap_or("?"),
                    case,
                    rep.parameter.unwrap_or(0),
                    rep.folded_family.as_deref().unwrap_or("?")
                ),
                (None, Some(reason)) => format!(
                    "family: {}  no match: {}\n",
                    rep.family.as_deref().unwrap_or("(unrecognized)"),
                    reason
                ),
                (None, None) => "no match\n".to_string(),
            };
            Ok((render("classify", opts, rep, text)?, 0))
        }
        Command::Witness(opts) => {
            let (graph, group) = resolve_input(&opts.input, opts.cap_closure)?;
            let form = FormMatrix::new(Arc::clone(&graph))
                .map_err(|e| CliError::Usage(e.to_string()))?;
            let set = enumerate_positive_roots(
                &form,
                opts.depth,
                opts.budget().enumeration_caps(),
            )
            .map_err(|e| CliError::Usage(e.to_string()))?;
            let found = witness_search(&form, &set, &group, &[])
                .map_err(|e| CliError::Usage(e.to_string()))?;
            let rep = found.as_ref().map(|w| report::witness_report(&graph, w));
            let text = match &rep {
                Some(w) => format!(
                    "witness found: g = {}, pairing = {}\n",
                    w.symmetry, w.pairing
                ),
                None => format!(
                    "no witness among {} enumerated roots (depth {})\n",
                    set.len(),
                    set.depth_reached
                ),
            };
            Ok((render("witness", opts, rep, text)?, 0))
        }
        Command::Selftest { only, format } => {
            let outcomes = acceptance::run_all(only.as_deref());
            let all_pass = outcomes.iter().all(|o| o.passed);
            let text = {
                let mut t = String::new();
                for o in &outcomes {
                    t.push_str(&format!(
                        "{} {} — {}\n",
                        if o.passed { "PASS" } else { "FAIL" },
                        o.id,
                        o.detail
                    ));
                }
                t.push_str(&format!(
                    "{}/{} criteria passed\n",
                    outcomes.iter().filter(|o| o.passed).count(),
                    outcomes.len()
                ));
                t
            };
            let out = match format {
                Format::Text => text,
                Format::Json => serde_json::to_string_pretty(&serde_json::json!({
                    "tool": TOOL,
                    "version": VERSION,
                    "command": "selftest",
                    "result": outcomes,
                }))
                .expect("selftest outcomes serialize"),
            };
            Ok((out, if all_pass { 0 } else { 1 }))
        }
    }
}

/// Entry point used by the binary. Returns the process exit code.
pub fn main_entry() -> i32 {
    let cli = Cli::parse();
    match execute(&cli.command) {
        Ok((text, code)) => {
            let out_path = match &cli.command {
                Command::Roots(o)
                | Command::Fold(o)
                | Command::Orbits(o)
                | Command::Check(o)
                | Command::Classify(o)
                | Command::Witness(o) => o.out.clone(),
                Command::Selftest { .. } => None,
            };
            match out_path {
                Some(path) => {
                    if let Err(e) = std::fs::write(&path, &text) {
                        eprintln!("cannot write {path}: {e}");
                        return 1;
                    }
                }
                None => {
                    let mut stdout = std::io::stdout();
                    let _ = stdout.write_all(text.as_bytes());
                }
            }
            code
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            1
        }
        Err(CliError::Budget(msg)) => {
            eprintln!("error: {msg}");
            2
        }
    }
}
