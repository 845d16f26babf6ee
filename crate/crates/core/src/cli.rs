//! Command-line plumbing: argument parsing, name-or-path resolution, and
//! text/machine rendering for every workbench operation.
//!
//! Exit codes: 0 for a pass or a completed measurement, 1 for a negative
//! verification or construction verdict, 2 for usage, parse, and shape
//! errors, 3 for refused budgets. Machine output is schema-stable JSON:
//! identical inputs and seed produce byte-identical bytes (no wall-clock
//! values anywhere).

use std::fs;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::bounds;
use crate::builtins;
use crate::error::Error;
use crate::forge::{self, SearchParams, SearchResult, Strategy, TransformPlan};
use crate::lincode::{self, LinearCode};
use crate::netmodel::{parse_network, Network};
use crate::sentinel::{self, Mode, SweepReport, Violation};
use crate::Result;

pub const DEFAULT_BUDGET: u128 = 1 << 20;
pub const DEFAULT_ORACLE_BUDGET: u128 = 1 << 24;

#[derive(Parser, Debug)]
#[command(
    name = "sumnet",
    version,
    about = "Workbench for secure sum computation over directed networks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Rendering: human text or schema-stable JSON.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the rendered output to a file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    pub workers: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Machine,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ModeArg {
    Secure,
    #[value(name = "user_secure", alias = "user-secure")]
    UserSecure,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Secure => Mode::Secure,
            ModeArg::UserSecure => Mode::UserSecure,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ConstructArg {
    /// One path per source; rate-1, keyless, private below min{C_min, s}.
    #[value(name = "user-route")]
    UserRoute,
    /// Random keyless base code of the requested rate.
    Base,
    /// Base plus key-mixing transform: rate --l with --r keys per source.
    Secure,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum TargetArg {
    /// Protect the sum value (user-facing privacy).
    Sum,
    /// Protect the full message tuple (strict privacy).
    Messages,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Cut values, capacity brackets, and feasibility for one network.
    Analyze {
        /// Built-in name or network file path.
        network: String,
        /// Adversary size.
        #[arg(long, default_value_t = 0)]
        r: u64,
        /// Accepted for symmetry; the report always carries both views.
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
    },
    /// Local realizability, decodability, and the security sweep.
    Verify {
        network: String,
        /// Built-in name or code file path.
        code: String,
        #[arg(long, default_value_t = 0)]
        r: usize,
        #[arg(long, value_enum, default_value_t = ModeArg::Secure)]
        mode: ModeArg,
        /// Refuse sweeps wider than this many wiretap sets.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
    },
    /// Build a code: routing, random base, or base plus secure transform.
    Construct {
        network: String,
        #[arg(long, value_enum)]
        mode: ConstructArg,
        /// Message symbols per source.
        #[arg(long, default_value_t = 1)]
        l: usize,
        /// Key symbols per source (secure mode).
        #[arg(long, default_value_t = 0)]
        r: usize,
        #[arg(long, default_value_t = 256)]
        attempts: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Enumerate or sample the local-encoder space for a surviving code.
    Search {
        network: String,
        #[arg(long, default_value_t = 1)]
        l: usize,
        /// Symbols per edge.
        #[arg(long = "n", default_value_t = 1)]
        n: usize,
        /// Key symbols per source.
        #[arg(long, default_value_t = 0)]
        kappa: usize,
        /// Field modulus (default: the network's own).
        #[arg(long)]
        q: Option<u64>,
        #[arg(long, default_value_t = 0)]
        r: usize,
        #[arg(long, value_enum, default_value_t = ModeArg::Secure)]
        mode: ModeArg,
        /// Enumerate the whole space in canonical order (the default).
        #[arg(long, conflicts_with = "randomized")]
        exhaustive: bool,
        /// Sample seeded random codes instead.
        #[arg(long)]
        randomized: bool,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Exact mutual information of one wiretap view by full enumeration.
    Oracle {
        network: String,
        code: String,
        /// Wiretapped edge ids, comma separated or repeated.
        #[arg(long = "W", value_delimiter = ',')]
        wiretap: Vec<String>,
        #[arg(long, value_enum, default_value_t = TargetArg::Messages)]
        target: TargetArg,
        /// Refuse enumerations wider than this many realizations.
        #[arg(long, default_value_t = DEFAULT_ORACLE_BUDGET)]
        budget: u128,
    },
    /// List the built-in networks and codes.
    Examples,
}

// ---------------------------------------------------------------------------
// Machine documents. Field order is the schema; do not reorder.

#[derive(Serialize)]
struct AnalyzeDoc<'a> {
    network: &'a str,
    report: bounds::BoundsReport,
}

#[derive(Serialize)]
struct ViolationDoc {
    wiretap: Vec<String>,
    combiner: Vec<u64>,
    leaked: Vec<u64>,
}

#[derive(Serialize)]
struct SweepDoc {
    mode: &'static str,
    r: usize,
    total: u64,
    examined: u64,
    holds: bool,
    violation: Option<ViolationDoc>,
}

#[derive(Serialize)]
struct LocalDoc {
    edge: String,
    column: Vec<u64>,
}

#[derive(Serialize)]
struct VerifyDoc<'a> {
    network: &'a str,
    code: &'a str,
    local_ok: bool,
    local_violation: Option<LocalDoc>,
    decodable: bool,
    sweep: SweepDoc,
    pass: bool,
}

#[derive(Serialize)]
struct Conventions {
    message_coordinates: &'static str,
    wiretap_condition: &'static str,
}

const CONVENTIONS: Conventions = Conventions {
    message_coordinates: "the first msg_len coordinates of every source block",
    wiretap_condition: "transformed security is checked against the stacked base encodings",
};

#[derive(Serialize)]
struct PlanDoc {
    msg_len: usize,
    key_len: usize,
    blocks: Vec<Vec<Vec<u64>>>,
}

#[derive(Serialize)]
struct ConstructDoc<'a> {
    network: &'a str,
    mode: &'static str,
    q: u64,
    msg_len: usize,
    key_len: usize,
    edge_dim: usize,
    escalated: bool,
    attempts: u64,
    conventions: Conventions,
    plan: Option<PlanDoc>,
    /// Serialized network matching `q`; present only after escalation.
    network_file: Option<String>,
    code: String,
}

#[derive(Serialize)]
struct SearchDoc<'a> {
    network: &'a str,
    mode: &'static str,
    l: usize,
    n: usize,
    kappa: usize,
    q: u64,
    r: usize,
    strategy: &'static str,
    space: String,
    budget: String,
    outcome: &'static str,
    examined: u64,
    conventions: Conventions,
    code: Option<String>,
}

#[derive(Serialize)]
struct MiDoc {
    numer: i64,
    denom: i64,
}

#[derive(Serialize)]
struct OracleDoc<'a> {
    network: &'a str,
    code: &'a str,
    mode: &'static str,
    wiretap: Vec<String>,
    states: String,
    mutual_information: MiDoc,
    leak_free: bool,
}

#[derive(Serialize)]
struct ExampleDoc {
    name: &'static str,
    kind: &'static str,
    origin: &'static str,
    summary: &'static str,
}

// ---------------------------------------------------------------------------
// Resolution and rendering helpers.

fn load_network(name_or_path: &str) -> Result<Network> {
    if let Ok(n) = builtins::network_by_name(name_or_path) {
        return Ok(n);
    }
    let text = fs::read_to_string(name_or_path).map_err(|e| {
        Error::UnknownName(format!("{name_or_path}: not a built-in network and not readable ({e})"))
    })?;
    parse_network(&text)
}

fn load_code(name_or_path: &str) -> Result<LinearCode> {
    if let Ok(c) = builtins::code_by_name(name_or_path) {
        return Ok(c);
    }
    let text = fs::read_to_string(name_or_path).map_err(|e| {
        Error::UnknownName(format!("{name_or_path}: not a built-in code and not readable ({e})"))
    })?;
    lincode::parse_code(&text)
}

fn ids(n: &Network, edges: &[usize]) -> Vec<String> {
    edges.iter().map(|&e| n.edges()[e].id.clone()).collect()
}

fn violation_doc(n: &Network, v: &Violation) -> ViolationDoc {
    ViolationDoc {
        wiretap: ids(n, &v.wiretap),
        combiner: v.combiner.clone(),
        leaked: v.leaked.clone(),
    }
}

fn sweep_doc(n: &Network, s: &SweepReport) -> SweepDoc {
    SweepDoc {
        mode: s.mode.as_str(),
        r: s.r,
        total: s.total,
        examined: s.examined,
        holds: s.holds(),
        violation: s.violation.as_ref().map(|v| violation_doc(n, v)),
    }
}

fn plan_doc(plan: &TransformPlan) -> PlanDoc {
    PlanDoc {
        msg_len: plan.msg_len(),
        key_len: plan.key_len(),
        blocks: plan
            .blocks()
            .iter()
            .map(|b| (0..b.rows()).map(|r| b.row(r).to_vec()).collect())
            .collect(),
    }
}

fn json_line<T: Serialize>(doc: &T) -> Result<String> {
    let mut s = serde_json::to_string(doc)
        .map_err(|e| Error::Internal(format!("serialization failed: {e}")))?;
    s.push('\n');
    Ok(s)
}

fn list(items: &[String]) -> String {
    if items.is_empty() {
        "(none)".to_string()
    } else {
        items.join(", ")
    }
}

fn nums(v: &[u64]) -> String {
    v.iter().map(u64::to_string).collect::<Vec<_>>().join(", ")
}

fn render_analyze_text(label: &str, rep: &bounds::BoundsReport) -> String {
    let mut out = String::new();
    out.push_str(&format!("network: {label}\n"));
    out.push_str(&format!("r: {}\n", rep.r));
    out.push_str(&format!(
        "c_min: {} (source {}; cut {})\n",
        rep.c_min,
        rep.c_min_source,
        list(&rep.c_min_witness)
    ));
    match (rep.d_min, &rep.d_min_witness) {
        (Some(d), Some(w)) => out.push_str(&format!("d_min: {d} (cut {})\n", list(w))),
        _ => out.push_str("d_min: none (no source admits an isolated cut)\n"),
    }
    out.push_str(&format!(
        "a_min: {} (cut {}; augmented {})\n",
        rep.a_min,
        list(&rep.a_min_cut),
        list(&rep.a_min_witness)
    ));
    out.push_str(&format!("g_min: {} (cut {})\n", rep.g_min, list(&rep.g_min_witness)));
    out.push_str(&format!("secure rate lower bound: {}\n", rep.lower));
    out.push_str(&format!("secure upper bound, isolated cuts: {}\n", rep.isolated_upper));
    out.push_str(&format!("secure upper bound, augmented cuts: {}\n", rep.augmented_upper));
    match rep.exact_secure_capacity {
        Some(c) => out.push_str(&format!("exact secure capacity: {c}\n")),
        None => out.push_str("exact secure capacity: open (bracket not closed)\n"),
    }
    out.push_str(&format!("user-secure feasible: {}\n", rep.user_secure_exists));
    out.push_str(&format!("user-secure upper bound: {}\n", rep.user_secure_upper));
    out.push_str(&format!("multi-edge tree: {}\n", rep.is_multi_edge_tree));
    out
}

fn render_sweep_text(n: &Network, s: &SweepReport) -> String {
    let mut out = format!(
        "sweep {} r={}: {} ({} of {} sets)\n",
        s.mode.as_str(),
        s.r,
        if s.holds() { "pass" } else { "fail" },
        s.examined,
        s.total
    );
    if let Some(v) = &s.violation {
        out.push_str(&format!("  wiretap: {}\n", list(&ids(n, &v.wiretap))));
        out.push_str(&format!("  combiner: {}\n", nums(&v.combiner)));
        out.push_str(&format!("  leaked: {}\n", nums(&v.leaked)));
    }
    out
}

// ---------------------------------------------------------------------------
// Execution.

/// Runs one parsed command and returns (exit code, rendered output).
pub fn execute(cli: Cli) -> Result<(i32, String)> {
    if let Some(w) = cli.workers {
        // Ignore "already initialized": tests and repeat callers share one
        // process-global pool.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(w).build_global();
    }
    let format = cli.format;
    match cli.command {
        Command::Analyze { network, r, mode: _ } => {
            let n = load_network(&network)?;
            let rep = bounds::bounds_report(&n, r)?;
            let text = match format {
                Format::Machine => json_line(&AnalyzeDoc {
                    network: &network,
                    report: rep,
                })?,
                Format::Text => render_analyze_text(&network, &rep),
            };
            Ok((0, text))
        }
        Command::Verify {
            network,
            code,
            r,
            mode,
            budget,
        } => {
            let n = load_network(&network)?;
            let c = load_code(&code)?;
            c.validate_against(&n)?;
            let local = lincode::check_local(&c, &n)?;
            let decodable = lincode::check_decodable(&c, &n)?.is_some();
            let sweep = sentinel::sweep(&n, &c, mode.into(), r, budget)?;
            let pass = local.is_none() && decodable && sweep.holds();
            let text = match format {
                Format::Machine => json_line(&VerifyDoc {
                    network: &network,
                    code: &code,
                    local_ok: local.is_none(),
                    local_violation: local.as_ref().map(|v| LocalDoc {
                        edge: v.edge.clone(),
                        column: v.column.clone(),
                    }),
                    decodable,
                    sweep: sweep_doc(&n, &sweep),
                    pass,
                })?,
                Format::Text => {
                    let mut out = String::new();
                    match &local {
                        None => out.push_str("local realizability: pass\n"),
                        Some(v) => out.push_str(&format!(
                            "local realizability: fail at {} (column {})\n",
                            v.edge,
                            nums(&v.column)
                        )),
                    }
                    out.push_str(&format!(
                        "decodability: {}\n",
                        if decodable { "pass" } else { "fail" }
                    ));
                    out.push_str(&render_sweep_text(&n, &sweep));
                    out.push_str(&format!("verdict: {}\n", if pass { "pass" } else { "fail" }));
                    out
                }
            };
            Ok((if pass { 0 } else { 1 }, text))
        }
        Command::Construct {
            network,
            mode,
            l,
            r,
            attempts,
            seed,
        } => {
            let n = load_network(&network)?;
            let built: Option<(LinearCode, Network, bool, u64, Option<TransformPlan>)> = match mode
            {
                ConstructArg::UserRoute => {
                    let code = forge::build_routing_user_secure(&n)?;
                    Some((code, n.clone(), false, 1, None))
                }
                ConstructArg::Base => forge::build_base_sum_code(&n, l, attempts, seed)?
                    .map(|b| (b.code, b.network, b.escalated, b.attempts_used, None)),
                ConstructArg::Secure => forge::build_secure_code(&n, l, r, attempts, seed)?
                    .map(|b| {
                        (
                            b.code,
                            b.network,
                            b.escalated,
                            b.base_attempts + b.transform_attempts,
                            Some(b.plan),
                        )
                    }),
            };
            let mode_name = match mode {
                ConstructArg::UserRoute => "user-route",
                ConstructArg::Base => "base",
                ConstructArg::Secure => "secure",
            };
            match built {
                None => Ok((
                    1,
                    format!("construct {mode_name}: no code found within {attempts} attempts\n"),
                )),
                Some((code, net, escalated, used, plan)) => {
                    let text = match format {
                        Format::Machine => json_line(&ConstructDoc {
                            network: &network,
                            mode: mode_name,
                            q: code.field().modulus(),
                            msg_len: code.msg_len(),
                            key_len: code.key_len(),
                            edge_dim: code.edge_dim(),
                            escalated,
                            attempts: used,
                            conventions: CONVENTIONS,
                            plan: plan.as_ref().map(plan_doc),
                            network_file: escalated.then(|| net.serialize()),
                            code: code.serialize(),
                        })?,
                        Format::Text => code.serialize(),
                    };
                    Ok((0, text))
                }
            }
        }
        Command::Search {
            network,
            l,
            n: edge_dim,
            kappa,
            q,
            r,
            mode,
            exhaustive: _,
            randomized,
            budget,
            seed,
        } => {
            let net = load_network(&network)?;
            let params = SearchParams {
                msg_len: l,
                edge_dim,
                key_len: kappa,
                q: q.unwrap_or_else(|| net.field().modulus()),
                r,
                mode: mode.into(),
                budget,
                seed,
                strategy: if randomized {
                    Strategy::Randomized
                } else {
                    Strategy::Exhaustive
                },
            };
            let outcome = forge::search_codes(&net, &params)?;
            let (label, exit, code) = match &outcome.result {
                SearchResult::Found(c) => ("found", 0, Some(c)),
                SearchResult::Exhausted => ("exhausted", 0, None),
                SearchResult::BudgetExceeded => ("budget_exceeded", 3, None),
            };
            let text = match format {
                Format::Machine => json_line(&SearchDoc {
                    network: &network,
                    mode: outcome.mode.as_str(),
                    l: outcome.msg_len,
                    n: outcome.edge_dim,
                    kappa: outcome.key_len,
                    q: outcome.q,
                    r: outcome.r,
                    strategy: outcome.strategy.as_str(),
                    space: outcome.space.to_string(),
                    budget: params.budget.to_string(),
                    outcome: label,
                    examined: outcome.examined,
                    conventions: CONVENTIONS,
                    code: code.map(|c| c.serialize()),
                })?,
                Format::Text => {
                    let mut out = String::new();
                    out.push_str(&format!("strategy: {}\n", outcome.strategy.as_str()));
                    out.push_str(&format!("space: {}\n", outcome.space));
                    out.push_str(&format!("outcome: {label}\n"));
                    out.push_str(&format!("examined: {}\n", outcome.examined));
                    if let Some(c) = code {
                        out.push('\n');
                        out.push_str(&c.serialize());
                    }
                    out
                }
            };
            Ok((exit, text))
        }
        Command::Oracle {
            network,
            code,
            wiretap,
            target,
            budget,
        } => {
            let n = load_network(&network)?;
            let c = load_code(&code)?;
            let mode = match target {
                TargetArg::Sum => Mode::UserSecure,
                TargetArg::Messages => Mode::Secure,
            };
            let w: Vec<usize> = wiretap
                .iter()
                .map(|id| n.edge_index(id))
                .collect::<Result<_>>()?;
            let rep = sentinel::entropy_oracle(&n, &c, mode, &w, budget)?;
            let mi = rep.mutual_information;
            let text = match format {
                Format::Machine => json_line(&OracleDoc {
                    network: &network,
                    code: &code,
                    mode: rep.mode.as_str(),
                    wiretap: ids(&n, &rep.wiretap),
                    states: rep.states.to_string(),
                    mutual_information: MiDoc {
                        numer: *mi.numer(),
                        denom: *mi.denom(),
                    },
                    leak_free: rep.leak_free(),
                })?,
                Format::Text => {
                    let mi_text = if *mi.denom() == 1 {
                        mi.numer().to_string()
                    } else {
                        format!("{}/{}", mi.numer(), mi.denom())
                    };
                    format!(
                        "mode: {}\nwiretap: {}\nstates: {}\nmutual information: {mi_text}\nleak free: {}\n",
                        rep.mode.as_str(),
                        list(&ids(&n, &rep.wiretap)),
                        rep.states,
                        rep.leak_free()
                    )
                }
            };
            Ok((0, text))
        }
        Command::Examples => {
            let cat = builtins::catalog();
            let text = match format {
                Format::Machine => {
                    let docs: Vec<ExampleDoc> = cat
                        .iter()
                        .map(|b| ExampleDoc {
                            name: b.name,
                            kind: b.kind,
                            origin: b.origin,
                            summary: b.summary,
                        })
                        .collect();
                    json_line(&docs)?
                }
                Format::Text => {
                    let mut out = String::new();
                    for b in &cat {
                        out.push_str(&format!(
                            "{:<22} {:<8} {:<14} {}\n",
                            b.name, b.kind, b.origin, b.summary
                        ));
                    }
                    out
                }
            };
            Ok((0, text))
        }
    }
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::BudgetExceeded { .. } => 3,
        _ => 2,
    }
}

/// Full entry point: parse, execute, emit, map errors to exit codes.
pub fn main_entry() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let out = cli.out.clone();
    match execute(cli) {
        Ok((code, text)) => {
            match &out {
                Some(path) => {
                    if let Err(e) = fs::write(path, &text) {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return 2;
                    }
                }
                None => print!("{text}"),
            }
            code
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> (i32, String) {
        let cli = Cli::try_parse_from(args).expect("arguments parse");
        execute(cli).expect("command executes")
    }

    #[test]
    fn analyze_fig2_reports_the_bracket() {
        let (code, text) = run(&["sumnet", "analyze", "fig2", "--r", "1"]);
        assert_eq!(code, 0);
        assert!(text.contains("c_min: 2"), "{text}");
        assert!(text.contains("exact secure capacity: 1"), "{text}");
        assert!(text.contains("user-secure upper bound: 2"), "{text}");
    }

    #[test]
    fn analyze_fig1_shows_the_sharper_bound() {
        let (_, text) = run(&["sumnet", "analyze", "fig1_reconstruction", "--r", "2"]);
        assert!(text.contains("secure upper bound, isolated cuts: 1"), "{text}");
        assert!(text.contains("secure upper bound, augmented cuts: 0"), "{text}");
    }

    #[test]
    fn verify_example2_passes_at_one_and_fails_at_two() {
        let (code, text) = run(&[
            "sumnet", "verify", "fig2", "example2", "--r", "1", "--mode", "user_secure",
        ]);
        assert_eq!(code, 0, "{text}");
        assert!(text.contains("verdict: pass"));
        let (code, text) = run(&[
            "sumnet", "verify", "fig2", "example2", "--r", "2", "--mode", "user_secure",
        ]);
        assert_eq!(code, 1);
        assert!(text.contains("wiretap: e1, e4"), "{text}");
    }

    #[test]
    fn verify_accepts_the_dash_spelling() {
        let (code, _) = run(&[
            "sumnet", "verify", "fig2", "example2", "--r", "1", "--mode", "user-secure",
        ]);
        assert_eq!(code, 0);
    }

    #[test]
    fn machine_output_is_byte_stable() {
        let args = [
            "sumnet", "analyze", "fig2", "--r", "1", "--format", "machine",
        ];
        let (_, a) = run(&args);
        let (_, b) = run(&args);
        assert_eq!(a, b);
        assert!(a.ends_with('\n'));
        let doc: serde_json::Value = serde_json::from_str(a.trim()).unwrap();
        assert_eq!(doc["report"]["c_min"], 2);
        assert_eq!(doc["report"]["user_secure_exists"], true);
    }

    #[test]
    fn construct_user_route_emits_a_verifiable_code() {
        let (code, text) = run(&["sumnet", "construct", "fig2", "--mode", "user-route"]);
        assert_eq!(code, 0);
        let parsed = lincode::parse_code(&text).expect("construct emits the code format");
        let n = builtins::network_by_name("fig2").unwrap();
        assert!(sentinel::sweep(&n, &parsed, Mode::UserSecure, 1, 1 << 20)
            .unwrap()
            .holds());
    }

    #[test]
    fn search_reports_exhaustion_at_the_boundary() {
        let (code, text) = run(&[
            "sumnet", "search", "fig2", "--l", "1", "--n", "1", "--q", "2", "--r", "2", "--mode",
            "user_secure", "--exhaustive", "--format", "machine",
        ]);
        assert_eq!(code, 0);
        let doc: serde_json::Value = serde_json::from_str(text.trim()).unwrap();
        assert_eq!(doc["outcome"], "exhausted");
        assert_eq!(doc["space"], "64");
    }

    #[test]
    fn oracle_measures_the_example_views() {
        let (code, text) = run(&[
            "sumnet", "oracle", "fig2", "example2", "--W", "e5", "--target", "sum",
        ]);
        assert_eq!(code, 0);
        assert!(text.contains("mutual information: 0"), "{text}");
        let (_, text) = run(&[
            "sumnet", "oracle", "fig2", "example2", "--W", "e1,e4", "--target", "sum",
        ]);
        assert!(text.contains("mutual information: 1"), "{text}");
    }

    #[test]
    fn examples_lists_every_builtin() {
        let (code, text) = run(&["sumnet", "examples"]);
        assert_eq!(code, 0);
        for name in ["fig2", "fig1_reconstruction", "reverse_butterfly", "example2"] {
            assert!(text.contains(name), "{text}");
        }
    }

    #[test]
    fn budget_refusals_surface_as_budget_errors() {
        let cli = Cli::try_parse_from([
            "sumnet", "verify", "fig2", "example2", "--r", "2", "--budget", "3",
        ])
        .unwrap();
        let err = execute(cli).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { .. }), "{err}");
        assert_eq!(exit_code_for(&err), 3);
    }

    #[test]
    fn unknown_names_are_usage_errors() {
        let cli = Cli::try_parse_from(["sumnet", "analyze", "no_such_network"]).unwrap();
        let err = execute(cli).unwrap_err();
        assert_eq!(exit_code_for(&err), 2);
    }
}
