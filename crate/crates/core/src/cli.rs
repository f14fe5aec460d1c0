//! Command-line front end. [`run_args`] does all the work and returns the
//! text for stdout and stderr together with the exit code, so the binary is
//! a thin wrapper and tests can drive it in-process.
//!
//! Exit codes: 0 success, 1 usage, 2 parse or arity error, 3 invalid
//! quandle, 4 overflow or budget exceeded, 5 failed verification (relation
//! suite or cross-check mismatch).

use std::ffi::OsString;
use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use crate::matrix::{
    braid_matrix, evaluate_with, parse_braid_word, state_count, verify_relations, ColorMatrix, EvalOptions,
    MatrixDocument, MatrixError, DEFAULT_MAX_STATES,
};
use crate::quandle::{resolve_quandle, AxiomReport, Quandle, QuandleDocument, QuandleError};
use crate::random::{random_expr, rng_from_seed, ExprShape};
use crate::span::{decategorify, span_of_with_budget, SpanError};
use crate::tangle::{
    catalog, compile_diagram, extract_presentation, ColoringError, ParseError, TangleExpr, DEFAULT_BUDGET,
};

#[derive(Debug, Parser)]
#[command(name = "tanglecolor", version, about = "Quandle coloring invariants of tangles, knots and links")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Human,
    Structured,
}

#[derive(Clone, Debug, Args)]
pub struct Common {
    /// `dihedral:N` or a path to a quandle document
    #[arg(long, default_value = "dihedral:3")]
    pub quandle: String,
    #[arg(long, value_enum, default_value_t = Format::Human)]
    pub format: Format,
}

#[derive(Clone, Debug, Args)]
pub struct Limits {
    /// Search budget for the coloring oracle
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    /// Largest boundary width (in strands) any intermediate matrix may have
    #[arg(long)]
    pub max_width: Option<usize>,
}

impl Limits {
    fn eval_options(&self, d: usize) -> EvalOptions {
        let max_states = match self.max_width {
            Some(w) => state_count(d, w).unwrap_or(u64::MAX),
            None => DEFAULT_MAX_STATES,
        };
        EvalOptions { max_states }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Coloring matrix of an expression or catalog entry
    Eval {
        /// Tangle expression or catalog name
        input: String,
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        limits: Limits,
        /// Print the single coloring count of a link
        #[arg(long, conflicts_with = "span_summary")]
        count: bool,
        /// Print the apex size and double-preimage histogram of the coloring span
        #[arg(long)]
        span_summary: bool,
    },
    /// Check the defining tangle relations as matrix identities
    Relations {
        #[command(flatten)]
        common: Common,
    },
    /// Coloring matrix of a braid word such as "s1 s2 -s1"
    Braid {
        word: String,
        #[arg(long)]
        strands: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Check a quandle table against the axioms
    CheckQuandle {
        #[command(flatten)]
        common: Common,
    },
    /// Compare matrix evaluation with direct coloring enumeration
    CrossCheck {
        /// Expression or catalog name; omit to generate random expressions
        input: Option<String>,
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        limits: Limits,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of random expressions when no input is given
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
    /// Generators and relations of the fundamental involutory quandle
    Presentation {
        input: String,
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
    },
    /// List the built-in link diagrams
    Catalog {
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Arity(String),
    #[error(transparent)]
    Quandle(#[from] QuandleError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
    #[error(transparent)]
    Span(#[from] SpanError),
    #[error("{0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Json(_) => 1,
            CliError::Parse(_) | CliError::Arity(_) => 2,
            CliError::Quandle(_) => 3,
            CliError::Matrix(e) => matrix_code(e),
            CliError::Coloring(e) => coloring_code(e),
            CliError::Span(SpanError::Coloring(e)) => coloring_code(e),
            CliError::Span(SpanError::Matrix(e)) => matrix_code(e),
            CliError::Span(_) => 2,
        }
    }
}

fn matrix_code(e: &MatrixError) -> u8 {
    match e {
        MatrixError::Quandle(_) | MatrixError::QuandleMismatch { .. } => 3,
        MatrixError::Overflow | MatrixError::WidthExceeded { .. } | MatrixError::TooLargeForDense { .. } => 4,
        MatrixError::BraidIndex { .. } | MatrixError::BraidWord(_) => 2,
        MatrixError::DimensionMismatch { .. } | MatrixError::IndexOutOfRange { .. } => 2,
    }
}

fn coloring_code(e: &ColoringError) -> u8 {
    match e {
        ColoringError::Quandle(_) => 3,
        ColoringError::BudgetExceeded { .. } => 4,
    }
}

/// Result of one invocation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

/// Parses arguments (including the program name) and runs the command.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(cli.command),
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let text = e.render().to_string();
            if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            }
        }
    }
}

pub fn run(command: Command) -> Outcome {
    match dispatch(command) {
        Ok(done) => done,
        Err(e) => Outcome { code: e.exit_code(), stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

fn ok(stdout: String) -> Outcome {
    Outcome { code: 0, stdout, stderr: String::new() }
}

fn json<T: Serialize>(doc: &T) -> Result<String, CliError> {
    Ok(serde_json::to_string(doc)? + "\n")
}

fn load(common: &Common) -> Result<Quandle, CliError> {
    Ok(resolve_quandle(&common.quandle)?)
}

fn dispatch(command: Command) -> Result<Outcome, CliError> {
    match command {
        Command::Eval { input, common, limits, count, span_summary } => {
            let q = load(&common)?;
            let expr = catalog::resolve(&input)?;
            if span_summary {
                return summarize_span(&expr, &q, &limits, common.format).map(ok);
            }
            if count && !expr.is_closed() {
                let (m, n) = expr.arity();
                return Err(CliError::Arity(format!(
                    "--count needs a link (arity (0, 0)), but `{input}` has arity ({m}, {n})"
                )));
            }
            let mat = evaluate_with(&expr, &q, &limits.eval_options(q.size()))?;
            if count {
                let value = mat.scalar().expect("closed expressions give 1x1 matrices");
                return Ok(ok(match common.format {
                    Format::Human => format!("{value}\n"),
                    Format::Structured => json(&serde_json::json!({ "count": value }))?,
                }));
            }
            Ok(ok(render_matrix(&mat, &expr.to_string(), &q, common.format)?))
        }
        Command::Relations { common } => {
            let q = load(&common)?;
            let report = verify_relations(&q)?;
            let stdout = match common.format {
                Format::Human => format!("{report}\n"),
                Format::Structured => json(&report)?,
            };
            Ok(Outcome { code: if report.all_pass { 0 } else { 5 }, stdout, stderr: String::new() })
        }
        Command::Braid { word, strands, common } => {
            let q = load(&common)?;
            let letters = parse_braid_word(&word)?;
            let mat = braid_matrix(&letters, strands, &q)?;
            Ok(ok(render_matrix(&mat, &format!("braid `{word}` on {strands} strands"), &q, common.format)?))
        }
        Command::CheckQuandle { common } => check_quandle(&common),
        Command::CrossCheck { input, common, limits, seed, samples } => {
            let q = load(&common)?;
            let exprs: Vec<TangleExpr> = match input {
                Some(text) => vec![catalog::resolve(&text)?],
                None => {
                    let mut rng = rng_from_seed(seed);
                    (0..samples).map(|_| random_expr(&mut rng, ExprShape::default())).collect()
                }
            };
            cross_check(&exprs, &q, &limits, common.format)
        }
        Command::Presentation { input, format } => {
            let expr = catalog::resolve(&input)?;
            let p = extract_presentation(&compile_diagram(&expr));
            Ok(ok(match format {
                Format::Structured => json(&p)?,
                Format::Human => {
                    let mut s = format!("{} generators, {} relations\n", p.generators, p.relations.len());
                    for (a, b, c) in &p.relations {
                        writeln!(s, "  x{c} = x{b} |> x{a}").unwrap();
                    }
                    writeln!(s, "bottom: {:?}", p.marked_bottom).unwrap();
                    writeln!(s, "top: {:?}", p.marked_top).unwrap();
                    s
                }
            }))
        }
        Command::Catalog { format } => {
            #[derive(Serialize)]
            struct Entry {
                name: &'static str,
                description: &'static str,
                word: String,
            }
            let entries: Vec<Entry> = catalog::names()
                .map(|name| Entry {
                    name,
                    description: catalog::description(name).unwrap_or(""),
                    word: catalog::lookup(name).expect("catalog entry").to_string(),
                })
                .collect();
            Ok(ok(match format {
                Format::Structured => json(&entries)?,
                Format::Human => entries.iter().map(|e| format!("{:<8} {}\n", e.name, e.description)).collect(),
            }))
        }
    }
}

fn render_matrix(mat: &ColorMatrix, what: &str, q: &Quandle, format: Format) -> Result<String, CliError> {
    match format {
        Format::Structured => json(&mat.to_document()),
        Format::Human => Ok(format!(
            "{}x{} coloring matrix of {what} over {}\n{mat}",
            mat.rows(),
            mat.cols(),
            q.display_name()
        )),
    }
}

#[derive(Serialize)]
struct SpanSummary {
    m: usize,
    n: usize,
    apex_size: usize,
    /// `[preimage size, number of boundary pairs with that size]`
    histogram: Vec<[u64; 2]>,
}

fn summarize_span(expr: &TangleExpr, q: &Quandle, limits: &Limits, format: Format) -> Result<String, CliError> {
    let span = span_of_with_budget(expr, q, limits.budget)?;
    let summary = SpanSummary {
        m: span.m(),
        n: span.n(),
        apex_size: span.apex_size(),
        histogram: span.preimage_histogram().into_iter().map(|(k, v)| [k, v]).collect(),
    };
    match format {
        Format::Structured => json(&summary),
        Format::Human => {
            let mut s = format!("span {} -> {}, apex size {}\n", summary.m, summary.n, summary.apex_size);
            for [size, pairs] in &summary.histogram {
                writeln!(s, "  {pairs} boundary pairs with {size} colorings").unwrap();
            }
            Ok(s)
        }
    }
}

#[derive(Serialize)]
struct CheckQuandleDoc<'a> {
    size: usize,
    label: Option<&'a str>,
    #[serde(flatten)]
    report: &'a AxiomReport,
}

fn check_quandle(common: &Common) -> Result<Outcome, CliError> {
    // files are checked without the loader's rejection so the report can be shown
    let q = match common.quandle.strip_prefix("dihedral:") {
        Some(_) => resolve_quandle(&common.quandle)?,
        None => {
            let text = std::fs::read_to_string(&common.quandle).map_err(QuandleError::from)?;
            QuandleDocument::parse(&text)?.into_unchecked()?
        }
    };
    let report = q.verify_axioms();
    let stdout = match common.format {
        Format::Structured => json(&CheckQuandleDoc { size: q.size(), label: q.label(), report: &report })?,
        Format::Human => format!("{} (order {}): {report}\n", q.display_name(), q.size()),
    };
    Ok(Outcome { code: if report.is_quandle() { 0 } else { 3 }, stdout, stderr: String::new() })
}

#[derive(Serialize)]
struct CrossCheckCase {
    expression: String,
    arity: (usize, usize),
    matches: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    span_matrix: Option<MatrixDocument>,
    #[serde(skip_serializing_if = "Option::is_none")]
    eval_matrix: Option<MatrixDocument>,
}

#[derive(Serialize)]
struct CrossCheckReport {
    quandle: String,
    cases: Vec<CrossCheckCase>,
    all_match: bool,
}

/// Decategorified coloring span against the assembled matrix, per expression.
fn cross_check(exprs: &[TangleExpr], q: &Quandle, limits: &Limits, format: Format) -> Result<Outcome, CliError> {
    let opts = limits.eval_options(q.size());
    let mut cases = Vec::with_capacity(exprs.len());
    for expr in exprs {
        let via_span = decategorify(&span_of_with_budget(expr, q, limits.budget)?)?;
        let via_eval = evaluate_with(expr, q, &opts)?;
        let matches = via_span == via_eval;
        let single = exprs.len() == 1;
        cases.push(CrossCheckCase {
            expression: expr.to_string(),
            arity: expr.arity(),
            matches,
            span_matrix: (!matches || single).then(|| via_span.to_document()),
            eval_matrix: (!matches || single).then(|| via_eval.to_document()),
        });
    }
    let all_match = cases.iter().all(|c| c.matches);
    let report = CrossCheckReport { quandle: q.display_name(), cases, all_match };
    let stdout = match format {
        Format::Structured => json(&report)?,
        Format::Human => {
            let mut s = String::new();
            for c in &report.cases {
                let verdict = if c.matches { "match" } else { "MISMATCH" };
                writeln!(s, "{verdict:<8} ({}, {}) {}", c.arity.0, c.arity.1, c.expression).unwrap();
                if let (Some(a), Some(b)) = (&c.span_matrix, &c.eval_matrix) {
                    if !c.matches || report.cases.len() == 1 {
                        writeln!(s, "  span:     {:?}", a.entries).unwrap();
                        writeln!(s, "  evaluate: {:?}", b.entries).unwrap();
                    }
                }
            }
            let matched = report.cases.iter().filter(|c| c.matches).count();
            writeln!(s, "{matched}/{} expressions agree over {}", report.cases.len(), report.quandle).unwrap();
            s
        }
    };
    Ok(Outcome { code: if all_match { 0 } else { 5 }, stdout, stderr: String::new() })
}
