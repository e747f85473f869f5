//! Command-line front end: argument parsing, dispatch and report rendering.

use std::ffi::OsString;
use std::fs;
use std::io::Read as _;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use num::One;
use serde::Serialize;

use crate::convergence::{radius_btdw, radius_unweighted, radius_weighted};
use crate::error::{Error, Result};
use crate::graph::{scc_decompose, ComponentReport, Graph};
use crate::ihara::{
    standard_taus, verify_flanders, verify_ihara_digraph, verify_lemma_suite, verify_tau_ihara,
    verify_weighted_ihara, IdentityCertificate,
};
use crate::io::{parse_graph, ReportDocument};
use crate::laplacian::{directed_dgl, tau_dgl};
use crate::poly::{smith_form, Polynomial, SmithForm};
use crate::rational::{parse_rational, Rational};
use crate::walks::{
    btdw_edge_power, btdw_recurrence, enumerate_btdw, enumerate_nbtw, nbt_katz_centrality,
    nbtw_recurrence, weighted_nbtw, WalkMode, DEFAULT_BUDGET,
};

/// Environment variable consulted when `--budget` is absent.
pub const BUDGET_ENV: &str = "NBTW_BUDGET";

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT_ERROR: i32 = 1;
pub const EXIT_CERTIFICATE_FAILED: i32 = 2;

const WEIGHTED_S_NOTE: &str =
    "weighted input: the undirected part keeps the forward arc weight on each reciprocated pair";
const CENTRALITY_NOTE: &str = "centrality values are raw row sums of the generating function, not normalized";

#[derive(Debug, Parser)]
#[command(name = "nbwalk", version, about = "Exact non-backtracking walk analysis of digraphs")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Edge-extension budget for brute-force walk enumeration.
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Suppress the summary line on standard error.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RadiusMode {
    Nbtw,
    Btdw,
    Weighted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Oracle,
    Recurrence,
    Edgepower,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Identity {
    Ihara,
    TauIhara,
    Flanders,
    WeightedIhara,
    Lemmas,
}

#[derive(Debug, Args)]
struct Input {
    /// Edge-list file, or `-` for standard input.
    input: String,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Strongly connected components and their cycle classes.
    Analyze(Input),
    /// Radius of convergence of the walk generating function.
    Radius {
        /// Walk family; defaults to `weighted` for weighted input and `nbtw` otherwise.
        #[arg(long, value_enum)]
        mode: Option<RadiusMode>,
        #[arg(long, value_parser = rational_arg)]
        tau: Option<Rational>,
        #[command(flatten)]
        input: Input,
    },
    /// Exact walk-count tables p_0 .. p_k.
    Walks {
        #[arg(long)]
        k: usize,
        /// Backtrack weight; selects downweighted walks when given.
        #[arg(long, value_parser = rational_arg)]
        omega: Option<Rational>,
        #[arg(long, value_enum, default_value_t = Method::Recurrence)]
        method: Method,
        #[command(flatten)]
        input: Input,
    },
    /// Row sums of the walk generating function at t.
    Centrality {
        #[arg(long, value_parser = rational_arg)]
        t: Rational,
        #[arg(long, value_enum)]
        mode: Option<RadiusMode>,
        /// Backtrack weight for `--mode btdw`.
        #[arg(long, value_parser = rational_arg)]
        omega: Option<Rational>,
        #[command(flatten)]
        input: Input,
    },
    /// Exact certificate for a determinant identity.
    Verify {
        #[arg(long, value_enum)]
        identity: Identity,
        #[arg(long, value_parser = rational_arg)]
        tau: Option<Rational>,
        #[command(flatten)]
        input: Input,
    },
    /// Smith form of the deformed graph Laplacian.
    Smith {
        #[arg(long, value_parser = rational_arg)]
        tau: Option<Rational>,
        #[command(flatten)]
        input: Input,
    },
}

fn rational_arg(s: &str) -> std::result::Result<Rational, String> {
    parse_rational(s).ok_or_else(|| format!("{s:?} is not a rational number"))
}

/// Result of one invocation: exit code plus the text destined for each stream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandOutcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CommandOutcome {
    fn failure(err: &Error) -> Self {
        Self {
            code: EXIT_INPUT_ERROR,
            stdout: String::new(),
            stderr: format!("error: {err}\n"),
        }
    }
}

#[derive(Debug, Serialize)]
struct AnalyzePayload {
    n: usize,
    m: usize,
    d: usize,
    d_u: usize,
    weighted: bool,
    components: ComponentReport,
}

#[derive(Debug, Serialize)]
struct VerifyPayload {
    all_equal: bool,
    certificates: Vec<IdentityCertificate>,
}

#[derive(Debug, Serialize)]
struct SmithPayload {
    #[serde(serialize_with = "crate::io::serde_opt_rational")]
    tau: Option<Rational>,
    determinant: Polynomial,
    smith_form: SmithForm,
}

/// Parses `argv` (program name first) and runs the command, reading the
/// budget override from the process environment.
pub fn run_command<I, T>(argv: I) -> CommandOutcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_command_with_env(argv, std::env::var(BUDGET_ENV).ok())
}

/// As [`run_command`], with the budget environment value supplied explicitly.
pub fn run_command_with_env<I, T>(argv: I, env_budget: Option<String>) -> CommandOutcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => return clap_outcome(e),
    };
    match execute(&cli, env_budget) {
        Ok((code, stdout, summary)) => CommandOutcome {
            code,
            stdout,
            stderr: if cli.quiet { String::new() } else { format!("{summary}\n") },
        },
        Err(err) => CommandOutcome::failure(&err),
    }
}

fn clap_outcome(e: clap::Error) -> CommandOutcome {
    match e.kind() {
        ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => CommandOutcome {
            code: EXIT_OK,
            stdout: e.to_string(),
            stderr: String::new(),
        },
        ErrorKind::InvalidSubcommand | ErrorKind::MissingSubcommand => {
            let name = e
                .get(clap::error::ContextKind::InvalidSubcommand)
                .map(|v| v.to_string())
                .unwrap_or_default();
            CommandOutcome::failure(&Error::UnknownCommand(name))
        }
        _ => {
            let message = e.render().to_string();
            let first = message.lines().next().unwrap_or("").trim_start_matches("error: ");
            CommandOutcome::failure(&Error::BadFlag(first.to_string()))
        }
    }
}

fn resolve_budget(flag: Option<u64>, env_budget: Option<String>) -> Result<u64> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match env_budget {
        Some(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::BadFlag(format!("{BUDGET_ENV}={v:?} is not a nonnegative integer"))),
        None => Ok(DEFAULT_BUDGET),
    }
}

fn read_input(path: &str) -> Result<Vec<u8>> {
    let io_error = |e: std::io::Error| Error::Parse {
        line: 0,
        message: format!("cannot read {path}: {e}"),
    };
    if path == "-" {
        let mut buf = Vec::new();
        std::io::stdin().read_to_end(&mut buf).map_err(io_error)?;
        Ok(buf)
    } else {
        fs::read(path).map_err(io_error)
    }
}

fn load(input: &Input) -> Result<(Vec<u8>, Graph)> {
    let bytes = read_input(&input.input)?;
    let text = String::from_utf8(bytes.clone()).map_err(|_| Error::Parse {
        line: 0,
        message: "input is not valid UTF-8".into(),
    })?;
    let graph = parse_graph(&text)?;
    Ok((bytes, graph))
}

fn render<T: Serialize>(doc: &ReportDocument<T>, format: Format) -> String {
    match format {
        Format::Json => doc.to_json() + "\n",
        Format::Tsv => doc.to_tsv(),
    }
}

fn document<T: Serialize>(bytes: &[u8], command: &str, g: &Graph, payload: T) -> ReportDocument<T> {
    let doc = ReportDocument::new(bytes, command, payload);
    if g.is_unweighted() {
        doc
    } else {
        doc.with_note(WEIGHTED_S_NOTE)
    }
}

fn default_mode(g: &Graph, mode: Option<RadiusMode>) -> RadiusMode {
    mode.unwrap_or(if g.is_unweighted() {
        RadiusMode::Nbtw
    } else {
        RadiusMode::Weighted
    })
}

fn walk_mode(mode: RadiusMode, omega: Option<&Rational>) -> Result<WalkMode> {
    match (mode, omega) {
        (RadiusMode::Nbtw, None) => Ok(WalkMode::Nbtw),
        (RadiusMode::Weighted, None) => Ok(WalkMode::Weighted),
        (RadiusMode::Btdw, Some(omega)) => Ok(WalkMode::Btdw { omega: omega.clone() }),
        (RadiusMode::Btdw, None) => Err(Error::BadFlag("--mode btdw requires --omega".into())),
        (_, Some(_)) => Err(Error::BadFlag("--omega applies only to --mode btdw".into())),
    }
}

type Executed = (i32, String, String);

fn execute(cli: &Cli, env_budget: Option<String>) -> Result<Executed> {
    let format = cli.format;
    match &cli.command {
        Command::Analyze(input) => {
            let (bytes, g) = load(input)?;
            let payload = AnalyzePayload {
                n: g.n(),
                m: g.m(),
                d: g.total_edges(),
                d_u: g.reciprocated_edges(),
                weighted: !g.is_unweighted(),
                components: scc_decompose(&g),
            };
            let summary = format!("analyze: {} components", payload.components.components.len());
            Ok((EXIT_OK, render(&document(&bytes, "analyze", &g, payload), format), summary))
        }
        Command::Radius { mode, tau, input } => {
            let (bytes, g) = load(input)?;
            let report = match (default_mode(&g, *mode), tau) {
                (RadiusMode::Nbtw, None) => radius_unweighted(&g)?,
                (RadiusMode::Weighted, None) => radius_weighted(&g)?,
                (RadiusMode::Btdw, Some(tau)) => radius_btdw(&g, tau)?,
                (RadiusMode::Btdw, None) => return Err(Error::BadFlag("--mode btdw requires --tau".into())),
                (_, Some(_)) => return Err(Error::BadFlag("--tau applies only to --mode btdw".into())),
            };
            let summary = format!("radius: r = {}", report.r.describe());
            Ok((EXIT_OK, render(&document(&bytes, "radius", &g, report), format), summary))
        }
        Command::Walks { k, omega, method, input } => {
            let (bytes, g) = load(input)?;
            let budget = resolve_budget(cli.budget, env_budget)?;
            let table = match (method, omega) {
                (Method::Oracle, None) => enumerate_nbtw(&g, *k, budget)?,
                (Method::Oracle, Some(w)) => enumerate_btdw(&g, *k, w, budget)?,
                (Method::Recurrence, None) => nbtw_recurrence(&g, *k)?,
                (Method::Recurrence, Some(w)) => btdw_recurrence(&g, *k, w)?,
                (Method::Edgepower, None) => weighted_nbtw(&g, *k),
                (Method::Edgepower, Some(w)) => btdw_edge_power(&g, *k, w)?,
            };
            let summary = format!("walks: {} tables", table.tables.len());
            Ok((EXIT_OK, render(&document(&bytes, "walks", &g, table), format), summary))
        }
        Command::Centrality { t, mode, omega, input } => {
            let (bytes, g) = load(input)?;
            let walk = walk_mode(default_mode(&g, *mode), omega.as_ref())?;
            let result = nbt_katz_centrality(&g, t, &walk)?;
            let doc = document(&bytes, "centrality", &g, result).with_note(CENTRALITY_NOTE);
            Ok((EXIT_OK, render(&doc, format), "centrality: converged".into()))
        }
        Command::Verify { identity, tau, input } => {
            let (bytes, g) = load(input)?;
            let certificates = certificates(&g, *identity, tau.as_ref())?;
            let all_equal = certificates.iter().all(|c| c.equal);
            let payload = VerifyPayload {
                all_equal,
                certificates,
            };
            let code = if all_equal { EXIT_OK } else { EXIT_CERTIFICATE_FAILED };
            let summary = format!("verify: {}", if all_equal { "all identities hold" } else { "certificate FAILED" });
            Ok((code, render(&document(&bytes, "verify", &g, payload), format), summary))
        }
        Command::Smith { tau, input } => {
            let (bytes, g) = load(input)?;
            let laplacian = match tau {
                Some(tau) => tau_dgl(&g, tau)?,
                None => directed_dgl(&g)?,
            };
            let payload = SmithPayload {
                tau: tau.clone(),
                determinant: laplacian.det()?,
                smith_form: smith_form(&laplacian),
            };
            let summary = format!("smith: rank {}", payload.smith_form.rank);
            Ok((EXIT_OK, render(&document(&bytes, "smith", &g, payload), format), summary))
        }
    }
}

fn certificates(g: &Graph, identity: Identity, tau: Option<&Rational>) -> Result<Vec<IdentityCertificate>> {
    let no_tau = |name: &str| Error::BadFlag(format!("--tau does not apply to --identity {name}"));
    match (identity, tau) {
        (Identity::Ihara, None) => Ok(vec![verify_ihara_digraph(g)?]),
        (Identity::Flanders, None) => Ok(vec![verify_flanders(g)?]),
        (Identity::WeightedIhara, None) => Ok(vec![verify_weighted_ihara(g)?]),
        (Identity::TauIhara, Some(tau)) => Ok(vec![verify_tau_ihara(g, tau)?]),
        (Identity::TauIhara, None) => standard_taus().iter().map(|t| verify_tau_ihara(g, t)).collect(),
        (Identity::Lemmas, tau) => verify_lemma_suite(g, tau.cloned().as_ref().unwrap_or(&Rational::one())),
        (Identity::Ihara, Some(_)) => Err(no_tau("ihara")),
        (Identity::Flanders, Some(_)) => Err(no_tau("flanders")),
        (Identity::WeightedIhara, Some(_)) => Err(no_tau("weighted-ihara")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::path::PathBuf;

    fn fixture(name: &str, body: &str) -> PathBuf {
        let dir = std::env::temp_dir().join(format!("nbwalk-cli-unit-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        let path = dir.join(name);
        fs::write(&path, body).unwrap();
        path
    }

    fn run(args: &[&str]) -> CommandOutcome {
        let argv: Vec<&str> = std::iter::once("nbwalk").chain(args.iter().copied()).collect();
        run_command_with_env(argv, None)
    }

    const PENDANT_TRIANGLE: &str = "1\t2\n2\t1\n2\t3\n3\t4\n4\t2\n";

    #[test]
    fn radius_of_pendant_triangle_is_one() {
        let path = fixture("pendant_triangle.tsv", PENDANT_TRIANGLE);
        let out = run(&["radius", path.to_str().unwrap()]);
        assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
        let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["payload"]["case_label"], "SomeOneCycleNoneMore");
        assert_eq!(v["payload"]["r"], "1");
    }

    #[test]
    fn oracle_and_recurrence_agree() {
        let path = fixture("walks.tsv", PENDANT_TRIANGLE);
        let p = path.to_str().unwrap();
        let table = |method: &str| {
            let out = run(&["walks", "--k", "5", "--method", method, p]);
            assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
            let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
            serde_json::to_string(&v["payload"]["tables"]).unwrap()
        };
        assert_eq!(table("oracle"), table("recurrence"));
        assert_eq!(table("oracle"), table("edgepower"));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run(&["frobnicate", "x"]).code, EXIT_INPUT_ERROR);
        assert_eq!(run(&["radius", "--bogus", "x"]).code, EXIT_INPUT_ERROR);
        let bad = fixture("bad.tsv", "1\t2\t0\n");
        let out = run(&["analyze", bad.to_str().unwrap()]);
        assert_eq!(out.code, EXIT_INPUT_ERROR);
        assert!(out.stderr.contains("non-positive"));
        assert_eq!(run(&["--help"]).code, EXIT_OK);
    }

    #[test]
    fn budget_precedence() {
        assert_eq!(resolve_budget(Some(5), Some("7".into())), Ok(5));
        assert_eq!(resolve_budget(None, Some("7".into())), Ok(7));
        assert_eq!(resolve_budget(None, None), Ok(DEFAULT_BUDGET));
        assert!(resolve_budget(None, Some("lots".into())).is_err());
        let path = fixture("budget.tsv", PENDANT_TRIANGLE);
        let argv = ["nbwalk", "walks", "--k", "6", "--method", "oracle", path.to_str().unwrap()];
        assert_eq!(run_command_with_env(argv, Some("3".into())).code, EXIT_INPUT_ERROR);
        let mut flagged = argv.to_vec();
        flagged.insert(1, "--budget=1000000");
        assert_eq!(run_command_with_env(flagged, Some("3".into())).code, EXIT_OK);
    }

    #[test]
    fn verify_and_tsv() {
        let path = fixture("k4.tsv", "%undirected\n1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n");
        let out = run(&["verify", "--identity", "ihara", path.to_str().unwrap()]);
        assert_eq!(out.code, EXIT_OK);
        let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["payload"]["certificates"][0]["equal"], true);
        let tsv = run(&["--format", "tsv", "--quiet", "smith", "--tau", "1/2", path.to_str().unwrap()]);
        assert_eq!(tsv.code, EXIT_OK);
        assert!(tsv.stderr.is_empty());
        assert!(tsv.stdout.contains("payload.smith_form.rank\t4"));
    }

    #[test]
    fn weighted_input_carries_note() {
        let path = fixture("weighted.tsv", "a b 2\nb c 3\nc a 5\n");
        let out = run(&["radius", path.to_str().unwrap()]);
        assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
        assert!(out.stdout.contains(WEIGHTED_S_NOTE));
        let again = run(&["radius", path.to_str().unwrap()]);
        assert_eq!(out.stdout, again.stdout);
    }
}
