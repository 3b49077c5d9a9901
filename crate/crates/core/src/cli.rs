//! The `jseq` command line.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::json;
use thiserror::Error;

use crate::calculus::{check_derivation, Derivation};
use crate::logic::{validate_cs, ConstantSpec, LogicConfig, LogicError};
use crate::models::{check_conditions, EvidenceUniverse, FittingModel, ModelError};
use crate::search::{search, SearchOptions, SearchReport, SearchResult, DEFAULT_FUEL, FUEL_ENV};
use crate::syntax::{parse_formula, parse_sequent, Label, ParseError, Sequent};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_UNKNOWN: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

/// Label given to a bare formula goal.
pub const GOAL_LABEL: &str = "w";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot parse `{text}`: {source}")]
    Parse { text: String, source: ParseError },
    #[error(transparent)]
    Logic(#[from] LogicError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("{0}")]
    Derivation(String),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
    Latex,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// Logic name such as J, JT, LP, J45, S4, KJ or S4LP.
    #[arg(long, default_value = "J")]
    pub logic: String,
    /// Constant specification file, one `c : A` entry per line.
    #[arg(long)]
    pub cs: Option<PathBuf>,
    /// Stage passes per branch.
    #[arg(long, env = FUEL_ENV, default_value_t = DEFAULT_FUEL)]
    pub fuel: usize,
    /// Never apply (Ser) to labels it created, so serial search terminates.
    #[arg(long)]
    pub serial_once: bool,
    /// Replace (Ser) by the initial sequent for inconsistent evidence.
    #[arg(long)]
    pub fk: bool,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    pub output: OutputFormat,
    /// Print the measures and per-branch bounds of the goal.
    #[arg(long)]
    pub budget_report: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Search for a derivation or a countermodel of a goal.
    Prove {
        /// A sequent `G => D`, or a formula read as `=> w |= A`.
        goal: String,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Check a derivation exported as JSON.
    CheckProof {
        path: PathBuf,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Audit a model and confirm it refutes a goal.
    CheckModel {
        model: PathBuf,
        goal: String,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Parse a goal and print it in canonical form.
    Parse {
        goal: String,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        output: OutputFormat,
    },
    /// Prove every goal of a file, one per line.
    Corpus {
        path: PathBuf,
        #[command(flatten)]
        run: RunArgs,
    },
}

#[derive(Debug, Parser)]
#[command(
    name = "jseq",
    version,
    about = "Labeled sequent prover for justification logics"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

/// What a command prints and how it exits.
#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn new(code: i32, stdout: String) -> Outcome {
        Outcome {
            code,
            stdout,
            stderr: String::new(),
        }
    }

    fn usage(e: CliError) -> Outcome {
        Outcome {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        }
    }
}

/// Reads a sequent, or a formula wrapped as `=> w |= A`.
pub fn parse_goal(text: &str) -> Result<Sequent, CliError> {
    let parse_err = |source| CliError::Parse {
        text: text.to_string(),
        source,
    };
    if text.contains("=>") {
        parse_sequent(text).map_err(parse_err)
    } else {
        let a = parse_formula(text).map_err(parse_err)?;
        Ok(Sequent::goal(&Label::new(GOAL_LABEL), a))
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

impl RunArgs {
    pub fn config(&self) -> Result<LogicConfig, CliError> {
        let mut cfg: LogicConfig = self.logic.parse()?;
        if self.fk {
            cfg = cfg.with_fk();
            cfg.validate()?;
        }
        Ok(cfg)
    }

    pub fn constant_spec(&self, cfg: &LogicConfig) -> Result<ConstantSpec, CliError> {
        let cs = match &self.cs {
            Some(path) => ConstantSpec::load(path)?,
            None => ConstantSpec::empty(),
        };
        let report = validate_cs(cfg, &cs);
        if let Some(v) = report.violations.first() {
            return Err(LogicError::InvalidConfig(v.to_string()).into());
        }
        Ok(cs)
    }

    pub fn options(&self) -> SearchOptions {
        SearchOptions {
            fuel: self.fuel,
            serial_once: self.serial_once,
            ..SearchOptions::default()
        }
    }
}

/// Exit code of a search result.
pub fn exit_code(result: &SearchResult) -> i32 {
    match result {
        SearchResult::Derivable(_) => EXIT_OK,
        SearchResult::NotDerivable(_) => EXIT_FAIL,
        SearchResult::Unknown(_) => EXIT_UNKNOWN,
    }
}

fn status(result: &SearchResult) -> String {
    match result {
        SearchResult::Derivable(_) => "derivable".into(),
        SearchResult::NotDerivable(_) => "not-derivable".into(),
        SearchResult::Unknown(reason) => format!("unknown ({reason})"),
    }
}

fn report_json(cfg: &LogicConfig, goal: &Sequent, report: &SearchReport) -> serde_json::Value {
    let payload = match &report.result {
        SearchResult::Derivable(d) => json!({ "derivation": d.to_json() }),
        SearchResult::NotDerivable(m) => json!({ "model": m.to_json() }),
        SearchResult::Unknown(reason) => json!({ "reason": reason.to_string() }),
    };
    json!({
        "logic": cfg.name(),
        "goal": goal.to_string(),
        "status": status(&report.result),
        "result": payload,
        "budget": report.budget,
        "stats": report.stats,
    })
}

fn budget_text(cfg: &LogicConfig, report: &SearchReport) -> String {
    let b = &report.budget;
    let mut out = format!(
        "budget: l={} r={} e={} n(:)={} p(:)={} n([])={} p([])={} n(+)={} n(*)={} n(!)={} |CS|={} fuel={} chain-cap={}\n",
        b.l, b.r, b.e, b.n_colon, b.p_colon, b.n_box, b.p_box, b.n_plus, b.n_dot, b.n_bang,
        b.cs_size, b.fuel,
        report.stats.chain_cap.map_or("none".to_string(), |c| c.to_string()),
    );
    out.push_str(&format!(
        "stats: passes={} branches={} labels={}\n",
        report.stats.stage_passes, report.stats.branches, report.stats.labels_created
    ));
    for (group, bound) in b.branch_bounds(cfg) {
        let used: usize = group
            .0
            .iter()
            .map(|r| report.stats.max_branch_counts.get(r).copied().unwrap_or(0))
            .sum();
        let names: Vec<_> = group.0.iter().map(|r| format!("({})", r.name())).collect();
        out.push_str(&format!("bound {}: {used} <= {bound}\n", names.join("/")));
    }
    out
}

fn prove(goal: &str, run: &RunArgs) -> Result<Outcome, CliError> {
    let cfg = run.config()?;
    let cs = run.constant_spec(&cfg)?;
    let goal = parse_goal(goal)?;
    cfg.check_sequent(&goal)?;
    let report = search(&cfg, &cs, &goal, &run.options());
    let code = exit_code(&report.result);
    let mut out = String::new();
    match run.output {
        OutputFormat::Json => {
            out = serde_json::to_string_pretty(&report_json(&cfg, &goal, &report))
                .expect("report serializes");
            out.push('\n');
        }
        format => {
            out.push_str(&format!("{}: {}\n", cfg.name(), status(&report.result)));
            match &report.result {
                SearchResult::Derivable(d) if format == OutputFormat::Latex => {
                    out.push_str(&d.render_latex());
                }
                SearchResult::Derivable(d) => out.push_str(&d.render_text()),
                SearchResult::NotDerivable(m) => out.push_str(&m.to_json_string()),
                SearchResult::Unknown(_) => {}
            }
            if !out.ends_with('\n') {
                out.push('\n');
            }
            if run.budget_report {
                out.push_str(&budget_text(&cfg, &report));
            }
        }
    }
    Ok(Outcome::new(code, out))
}

fn check_proof(path: &Path, run: &RunArgs) -> Result<Outcome, CliError> {
    let cfg = run.config()?;
    let cs = run.constant_spec(&cfg)?;
    let d =
        Derivation::from_json_str(&read(path)?).map_err(|e| CliError::Derivation(e.to_string()))?;
    Ok(match check_derivation(&cfg, &cs, &d) {
        Ok(()) => Outcome::new(EXIT_OK, format!("ok: {} in {}\n", d.sequent, cfg.name())),
        Err(e) => Outcome {
            code: EXIT_FAIL,
            stdout: String::new(),
            stderr: format!("invalid derivation: {e}\n"),
        },
    })
}

fn check_model(model: &Path, goal: &str, run: &RunArgs) -> Result<Outcome, CliError> {
    let mut m = FittingModel::from_json_str(&read(model)?)?;
    m.logic = run.config()?;
    let cs = run.constant_spec(&m.logic)?;
    let goal = parse_goal(goal)?;
    m.logic.check_sequent(&goal)?;
    let interp = m.identity_for(&goal)?;
    let universe = EvidenceUniverse::for_sequent(&m, &cs, &goal);
    let report = check_conditions(&m, &cs, &universe);
    let valid = m.validates_sequent(&interp, &goal)?;
    let mut out = String::new();
    for v in &report.violations {
        out.push_str(&format!("{v}\n"));
    }
    out.push_str(&format!(
        "conditions checked: {}\n",
        report
            .checked
            .iter()
            .map(|c| c.name())
            .collect::<Vec<_>>()
            .join(", ")
    ));
    if valid {
        out.push_str(&format!("the model validates `{goal}`\n"));
    } else {
        out.push_str(&format!("the model refutes `{goal}`\n"));
    }
    let code = if report.is_ok() && !valid {
        EXIT_OK
    } else {
        EXIT_FAIL
    };
    Ok(Outcome::new(code, out))
}

fn parse_cmd(goal: &str, output: OutputFormat) -> Result<Outcome, CliError> {
    let s = parse_goal(goal)?;
    let text = match output {
        OutputFormat::Text => format!("{s}\n"),
        OutputFormat::Latex => format!("{}\n", s.render_latex()),
        OutputFormat::Json => format!("{}\n", json!({ "sequent": s.to_string() })),
    };
    Ok(Outcome::new(EXIT_OK, text))
}

/// Goals of a corpus file: one per line, `#` starts a comment.
pub fn corpus_goals(text: &str) -> Vec<&str> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .collect()
}

fn corpus(path: &Path, run: &RunArgs) -> Result<Outcome, CliError> {
    let cfg = run.config()?;
    let cs = run.constant_spec(&cfg)?;
    let text = read(path)?;
    let goals = corpus_goals(&text)
        .into_iter()
        .map(parse_goal)
        .collect::<Result<Vec<_>, _>>()?;
    for g in &goals {
        cfg.check_sequent(g)?;
    }
    let options = run.options();
    let results: Vec<_> = goals
        .par_iter()
        .map(|g| (g, search(&cfg, &cs, g, &options).result))
        .collect();
    let mut out = String::new();
    let mut code = EXIT_OK;
    for (g, r) in results {
        out.push_str(&format!("{}\t{g}\n", status(&r)));
        code = code.max(exit_code(&r));
    }
    Ok(Outcome::new(code, out))
}

pub fn run(cli: Cli) -> Outcome {
    let result = match &cli.command {
        Command::Prove { goal, run } => prove(goal, run),
        Command::CheckProof { path, run } => check_proof(path, run),
        Command::CheckModel { model, goal, run } => check_model(model, goal, run),
        Command::Parse { goal, output } => parse_cmd(goal, *output),
        Command::Corpus { path, run } => corpus(path, run),
    };
    result.unwrap_or_else(Outcome::usage)
}

/// Parses `args` (program name first) and runs the command.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            Outcome {
                code,
                stdout: if e.use_stderr() {
                    String::new()
                } else {
                    e.to_string()
                },
                stderr: if e.use_stderr() {
                    e.to_string()
                } else {
                    String::new()
                },
            }
        }
    }
}
