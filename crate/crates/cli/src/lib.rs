//! Command-line front end for `regproof`: queries against ground systems and
//! the built-in example systems, and fixed-point reports for ground systems.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use regproof::examples::{add_system, allpos_system, dist_system, min_system, Graph};
use regproof::ground::{flex_regular_bruteforce, GroundSystem};
use regproof::proofgraph::{
    render_graph_text, render_structured, render_tree_graph_text, render_tree_structured,
};
use regproof::{
    prove_inductive, prove_regular, prove_regular_co, EmptySystem, GeneralizedSystem,
    InferenceSystem, ProofGraph, SearchOutcome,
};

pub mod input;

use input::{
    parse_add_goal, parse_allpos_goal, parse_dist_goal, parse_graph_file, parse_ground_file,
    parse_ground_goal, parse_min_goal, GroundFile,
};

pub const EXIT_PROVED: i32 = 0;
pub const EXIT_REFUTED: i32 = 1;
pub const EXIT_OUT_OF_FUEL: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_PARSE: i32 = 65;
pub const EXIT_IO: i32 = 74;

pub const DEFAULT_BUDGET: u64 = 10_000;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{}", match line { Some(l) => format!("line {l}: {message}"), None => message.clone() })]
    Parse {
        line: Option<usize>,
        message: String,
    },
    #[error("rule {rule}: {message}")]
    Invariant { rule: usize, message: String },
    #[error("{}: {message}", path.display())]
    Io { path: PathBuf, message: String },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Parse { .. } | CliError::Invariant { .. } => EXIT_PARSE,
            CliError::Io { .. } => EXIT_IO,
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "regproof",
    version,
    about = "Regular and corule-bounded proof search"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Search for a proof of one judgment
    Query(QueryArgs),
    /// Tabulate fixed-point membership for every judgment of a ground system
    Report {
        /// Ground system file
        file: PathBuf,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    /// Finite proof trees
    Inductive,
    /// Regular proof trees
    Regular,
    /// Regular proof trees bounded by the corules
    RegularCo,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Example {
    Allpos,
    Dist,
    Min,
    Add,
}

#[derive(Args, Debug)]
pub struct QueryArgs {
    #[arg(long, value_enum, default_value_t = Mode::Regular)]
    pub mode: Mode,

    /// Rule applications the search may attempt
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,

    /// Also write the certificate as graph text to this file
    #[arg(long, value_name = "PATH")]
    pub emit_graph: Option<PathBuf>,

    /// Ground system file
    #[arg(long, value_name = "FILE", conflicts_with = "example")]
    pub system: Option<PathBuf>,

    /// Built-in example system
    #[arg(long, value_name = "NAME")]
    pub example: Option<String>,

    /// Graph file for the dist example (default: the four-node example graph)
    #[arg(long, value_name = "FILE")]
    pub graph: Option<PathBuf>,

    /// Digit base for the add example
    #[arg(long, default_value_t = 10)]
    pub base: u32,

    /// Goal judgment, e.g. `dist a c 2` or a ground identifier
    #[arg(required = true, num_args = 1.., allow_hyphen_values = true)]
    pub goal: Vec<String>,
}

/// What a command prints, and the status it exits with.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub code: i32,
}

/// Parses `args` (program name first) and runs the command. Help and usage
/// errors are reported through the returned output.
pub fn run_from_args<I, T>(args: I) -> Result<Output, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(cli),
        Err(e) if !e.use_stderr() => Ok(Output {
            stdout: e.to_string(),
            code: 0,
        }),
        Err(e) => Err(CliError::Usage(e.to_string().trim_end().to_string())),
    }
}

pub fn run(cli: Cli) -> Result<Output, CliError> {
    match cli.command {
        Command::Query(q) => run_query(&q),
        Command::Report { file } => {
            let ground = load_ground_system(&file)?;
            Ok(Output {
                stdout: run_oracle_report(&ground)?,
                code: EXIT_PROVED,
            })
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

pub fn load_ground_system(path: &Path) -> Result<GroundFile, CliError> {
    parse_ground_file(&read(path)?)
}

/// A finished search, rendered.
struct Answer {
    stdout: String,
    graph: Option<String>,
    code: i32,
}

fn answer<R, C>(
    rules: R,
    corules: Option<C>,
    mode: Mode,
    goal: &R::Judgment,
    budget: u64,
) -> Result<Answer, CliError>
where
    R: InferenceSystem,
    C: InferenceSystem<Judgment = R::Judgment>,
{
    let budget_error = |e: regproof::Error| CliError::Usage(e.to_string());
    let rendered = match mode {
        Mode::Inductive => prove_inductive(&rules, goal, budget)
            .map_err(budget_error)?
            .map(|t| (render_tree_structured(&t), render_tree_graph_text(&t))),
        Mode::Regular => prove_regular(&rules, goal, budget)
            .map_err(budget_error)?
            .map(|cert| render_graph(&cert)),
        Mode::RegularCo => {
            let corules = corules.ok_or_else(|| {
                CliError::Usage("mode regular-co needs a system with corules".into())
            })?;
            let gen = GeneralizedSystem::new(rules, corules);
            prove_regular_co(&gen, goal, budget)
                .map_err(budget_error)?
                .map(|cert| render_graph(&cert))
        }
    };
    Ok(match rendered {
        SearchOutcome::Proved((structured, graph)) => Answer {
            stdout: format!("PROVED\n{structured}"),
            graph: Some(graph),
            code: EXIT_PROVED,
        },
        SearchOutcome::Refuted => Answer {
            stdout: "REFUTED\n".into(),
            graph: None,
            code: EXIT_REFUTED,
        },
        SearchOutcome::OutOfFuel { consumed } => Answer {
            stdout: format!("OUT-OF-FUEL\nconsumed: {consumed}\n"),
            graph: None,
            code: EXIT_OUT_OF_FUEL,
        },
    })
}

fn render_graph<J: regproof::Judgment>(cert: &ProofGraph<J>) -> (String, String) {
    (render_structured(cert), render_graph_text(cert))
}

type NoCorules<J> = Option<EmptySystem<J>>;

pub fn run_query(q: &QueryArgs) -> Result<Output, CliError> {
    if q.budget == 0 {
        return Err(CliError::Usage("budget must be at least 1".into()));
    }
    let goal = q.goal.join(" ");
    let answer = match (&q.system, q.example.as_deref()) {
        (Some(path), _) => {
            let ground = load_ground_system(path)?;
            let goal = parse_ground_goal(&goal)?;
            answer(ground.rules, ground.corules, q.mode, &goal, q.budget)?
        }
        (None, Some(name)) => {
            let example = Example::from_str(name, false).map_err(|_| {
                CliError::Usage(format!(
                    "unknown example `{name}` (expected allpos, dist, min or add)"
                ))
            })?;
            match example {
                Example::Allpos => {
                    let goal = parse_allpos_goal(&goal)?;
                    answer(allpos_system(), NoCorules::None, q.mode, &goal, q.budget)?
                }
                Example::Dist => {
                    let graph = match &q.graph {
                        Some(path) => parse_graph_file(&read(path)?)?,
                        None => Graph::four_node(),
                    };
                    let goal = parse_dist_goal(&goal, &graph)?;
                    answer(dist_system(graph), NoCorules::None, q.mode, &goal, q.budget)?
                }
                Example::Min => {
                    let goal = parse_min_goal(&goal)?;
                    let gen = min_system();
                    answer(gen.rules, Some(gen.corules), q.mode, &goal, q.budget)?
                }
                Example::Add => {
                    let gen = add_system(q.base).map_err(|e| CliError::Usage(e.to_string()))?;
                    let goal = parse_add_goal(&goal, q.base)?;
                    answer(gen.rules, Some(gen.corules), q.mode, &goal, q.budget)?
                }
            }
        }
        (None, None) => {
            return Err(CliError::Usage(
                "a query needs --system <file> or --example <name>".into(),
            ))
        }
    };
    if let (Some(path), Some(graph)) = (&q.emit_graph, &answer.graph) {
        fs::write(path, graph).map_err(|e| CliError::Io {
            path: path.clone(),
            message: e.to_string(),
        })?;
    }
    Ok(Output {
        stdout: answer.stdout,
        code: answer.code,
    })
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// One row per universe judgment with its membership in the inductive,
/// regular, coinductive and corule-bounded regular interpretations.
pub fn run_oracle_report(ground: &GroundFile) -> Result<String, CliError> {
    let corules = ground
        .corules
        .clone()
        .unwrap_or_else(|| GroundSystem::from_rules(Vec::new()));
    let universe: Vec<String> = ground
        .rules
        .universe()
        .union(corules.universe())
        .cloned()
        .collect();
    let rules = ground.rules.with_universe(universe.iter().cloned());
    let cap_error = |e: regproof::Error| CliError::Usage(e.to_string());

    let lfp = rules.lfp();
    let gfp = rules.gfp();
    let rfp = rules.rfp_bruteforce().map_err(cap_error)?;
    let flex = flex_regular_bruteforce(&rules, &corules).map_err(cap_error)?;
    assert!(
        lfp.is_subset(&rfp) && rfp == gfp,
        "fixed points out of order"
    );

    let headers = ["judgment", "Ind", "Reg", "CoInd", "Reg+CO"];
    let width = universe
        .iter()
        .map(String::len)
        .chain([headers[0].len()])
        .max()
        .unwrap_or(0);
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<width$}  {:<3}  {:<3}  {:<5}  {}",
        headers[0], headers[1], headers[2], headers[3], headers[4]
    );
    for j in &universe {
        let _ = writeln!(
            out,
            "{:<width$}  {:<3}  {:<3}  {:<5}  {}",
            j,
            yes_no(lfp.contains(j)),
            yes_no(rfp.contains(j)),
            yes_no(gfp.contains(j)),
            yes_no(flex.contains(j)),
        );
    }
    Ok(out)
}
