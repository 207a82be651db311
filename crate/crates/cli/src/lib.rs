//! The `ocn` command line: argument definitions and the subcommands.
//!
//! Every subcommand writes human-readable text by default and `key=value`
//! lines with `--porcelain`. [`run`] reports whether the answer was
//! positive; the binary maps that and errors to exit codes 0, 1 and 2.

pub mod bench;
mod input;

use std::io::{self, Write};
use std::path::PathBuf;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use ocn_core::cograph::cograph_ocn;
use ocn_core::coloring::{transitive_dag_coloring, verify_oriented_coloring, Coloring, Violation};
use ocn_core::cw_solver::{cw_ocn, cw_ocn_at_most};
use ocn_core::expr::{cw_validate, dico_to_cw2, msp_to_cw7, CwExpr};
use ocn_core::ilp::emit_bip;
use ocn_core::instances::{gen_named, random_dico, random_msp, Instance, NAMES};
use ocn_core::io::{parse_coloring, to_dot, write_edgelist};
use ocn_core::msp_solver::msp_ocn;
use ocn_core::oracle::{ocn_decide, ocn_exact_with_limit, DEFAULT_MAX_N};
use ocn_core::{Digraph, OcnError};
use thiserror::Error;

pub use input::{load, Input};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] OcnError),

    #[error("cannot read {}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },

    #[error("{0}")]
    Usage(String),

    #[error("engine does not apply: {0}")]
    Mismatch(String),

    #[error("engines disagree: {0}")]
    Disagreement(String),

    #[error("write failed: {0}")]
    Output(#[from] io::Error),
}

/// Whether a command's answer was positive.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Success,
    Negative,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Success => 0,
            Outcome::Negative => 1,
        }
    }
}

/// Exit code for usage and input errors.
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "ocn", version, about = "Oriented chromatic numbers of recursively defined digraphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute the oriented chromatic number and a coloring
    Solve(SolveArgs),
    /// Check a coloring file against a digraph
    Verify(VerifyArgs),
    /// Translate a di-co or msp expression into a clique-width expression
    Translate(TranslateArgs),
    /// Write the binary integer program in LP format
    EmitIlp(EmitIlpArgs),
    /// Generate a named or random instance
    Gen(GenArgs),
    /// Parse an input and report its structure
    Parse(ParseArgs),
    /// Time the engines on generated families
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Lang {
    Dico,
    Msp,
    Cw,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algo {
    Auto,
    GreedyTransitive,
    Cograph,
    Msp,
    Cw,
    Oracle,
}

impl Algo {
    pub fn name(self) -> &'static str {
        match self {
            Algo::Auto => "auto",
            Algo::GreedyTransitive => "greedy-transitive",
            Algo::Cograph => "cograph",
            Algo::Msp => "msp",
            Algo::Cw => "cw",
            Algo::Oracle => "oracle",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Edgelist,
    Dot,
    Expr,
    Lp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Cw,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    /// the family M'_i, scaling in i
    Mprime,
    /// random msp expressions of 10^3, 10^4 and 10^5 leaves
    Msp,
}

#[derive(Debug, Clone, Args)]
pub struct InputArgs {
    /// Edge list file, or an expression file when --lang is given
    #[arg(long, value_name = "PATH", conflicts_with = "expr", required_unless_present = "expr")]
    pub input: Option<PathBuf>,
    /// Expression text
    #[arg(long, value_name = "TEXT", requires = "lang")]
    pub expr: Option<String>,
    /// Expression language of the input
    #[arg(long, value_enum)]
    pub lang: Option<Lang>,
}

#[derive(Debug, Clone, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, value_enum, default_value = "auto")]
    pub algo: Algo,
    /// Only decide whether this many colors suffice
    #[arg(long, value_name = "INT")]
    pub r: Option<usize>,
    /// Vertex limit for the oracle
    #[arg(long, value_name = "INT", default_value_t = DEFAULT_MAX_N)]
    pub max_n: usize,
    #[arg(long)]
    pub porcelain: bool,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Coloring file with one `vertexName color` line per vertex
    pub coloring: PathBuf,
    #[arg(long)]
    pub porcelain: bool,
}

#[derive(Debug, Clone, Args)]
pub struct TranslateArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, value_enum)]
    pub to: Target,
    #[arg(long)]
    pub porcelain: bool,
}

#[derive(Debug, Clone, Args)]
pub struct EmitIlpArgs {
    #[command(flatten)]
    pub input: InputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct GenArgs {
    /// Instance name; `random-msp N` and `random-dico N` use --seed
    pub name: String,
    /// Integer parameters of the instance
    pub params: Vec<usize>,
    #[arg(long, value_enum, default_value = "edgelist")]
    pub format: Format,
    #[arg(long, value_name = "INT", default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Args)]
pub struct ParseArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Print the input in this format instead of a summary
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long)]
    pub porcelain: bool,
}

#[derive(Debug, Clone, Args)]
pub struct BenchArgs {
    #[arg(value_enum)]
    pub suite: Suite,
    /// First seed of the random suite
    #[arg(long, value_name = "INT", default_value_t = 0)]
    pub seed: u64,
    /// Largest leaf count (msp) or largest i (mprime)
    #[arg(long, value_name = "INT")]
    pub max_n: Option<usize>,
    #[arg(long)]
    pub porcelain: bool,
}

/// Runs one parsed command line, writing to `out`.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Solve(a) => cmd_solve(a, out),
        Command::Verify(a) => cmd_verify(a, out),
        Command::Translate(a) => cmd_translate(a, out),
        Command::EmitIlp(a) => cmd_emit_ilp(a, out),
        Command::Gen(a) => cmd_gen(a, out),
        Command::Parse(a) => cmd_parse(a, out),
        Command::Bench(a) => cmd_bench(a, out),
    }
}

/// Result of one solve run.
#[derive(Debug, Clone)]
pub struct SolveReport {
    pub engine: Algo,
    pub graph: Digraph,
    /// `None` when only `--r` was decided
    pub chi: Option<usize>,
    /// whether `--r` colors suffice, when asked
    pub feasible: Option<bool>,
    pub coloring: Option<Coloring>,
    pub elapsed: Duration,
}

/// The engine `auto` runs on `input`, after checking its precondition.
pub fn auto_engine(input: &Input) -> Result<Algo, CliError> {
    Ok(match input {
        Input::Dico(_) => Algo::Cograph,
        Input::Msp(_) => Algo::Msp,
        Input::Cw(e) => {
            cw_validate(e)?;
            Algo::Cw
        }
        Input::Digraph(g) => {
            g.ensure_oriented()?;
            if g.is_acyclic() && g.is_transitive() {
                Algo::GreedyTransitive
            } else {
                Algo::Oracle
            }
        }
    })
}

fn mismatch(engine: Algo, needs: &str, input: &Input) -> CliError {
    CliError::Mismatch(format!("{} needs {needs}, got a {} input", engine.name(), input.kind()))
}

fn cw_expr_of(input: &Input) -> Result<CwExpr, CliError> {
    match input {
        Input::Cw(e) => Ok(e.clone()),
        Input::Dico(e) => Ok(dico_to_cw2(e)),
        Input::Msp(e) => Ok(msp_to_cw7(e)),
        Input::Digraph(_) => Err(mismatch(Algo::Cw, "an expression", input)),
    }
}

/// Runs `algo` on `input`; with `r`, decides whether `r` colors suffice.
pub fn solve(input: &Input, algo: Algo, r: Option<usize>, max_n: usize) -> Result<SolveReport, CliError> {
    let engine = if algo == Algo::Auto { auto_engine(input)? } else { algo };
    let graph = input.digraph()?;
    let start = Instant::now();
    let (chi, coloring) = match engine {
        Algo::Auto => unreachable!("resolved above"),
        Algo::GreedyTransitive => {
            let c = transitive_dag_coloring(&graph)?;
            (Some(c.used_colors()), Some(c))
        }
        Algo::Cograph => match input {
            Input::Dico(e) => {
                let (chi, c) = cograph_ocn(e);
                (Some(chi), Some(c))
            }
            _ => return Err(mismatch(engine, "a di-co expression (--lang dico)", input)),
        },
        Algo::Msp => match input {
            Input::Msp(e) => {
                let (chi, c) = msp_ocn(e);
                (Some(chi), Some(c))
            }
            _ => return Err(mismatch(engine, "an msp expression (--lang msp)", input)),
        },
        Algo::Cw => {
            let e = cw_expr_of(input)?;
            match r {
                Some(r) => {
                    let (feasible, used) = cw_ocn_at_most(&e, r)?;
                    let elapsed = start.elapsed();
                    return Ok(SolveReport { engine, graph, chi: used, feasible: Some(feasible), coloring: None, elapsed });
                }
                None => (Some(cw_ocn(&e)?), None),
            }
        }
        Algo::Oracle => {
            let n = graph.vertex_count();
            if n > max_n {
                return Err(OcnError::TooLarge { what: "vertex count", size: n, limit: max_n }.into());
            }
            match r {
                Some(r) => {
                    let c = ocn_decide(&graph, r)?;
                    let elapsed = start.elapsed();
                    let feasible = Some(c.is_some());
                    return Ok(SolveReport { engine, graph, chi: None, feasible, coloring: c, elapsed });
                }
                None => {
                    let (chi, c) = ocn_exact_with_limit(&graph, max_n)?;
                    (Some(chi), Some(c))
                }
            }
        }
    };
    let elapsed = start.elapsed();
    let feasible = r.zip(chi).map(|(r, chi)| chi <= r);
    Ok(SolveReport { engine, graph, chi, feasible, coloring, elapsed })
}

fn cmd_solve(a: &SolveArgs, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let input = load(&a.input)?;
    let rep = solve(&input, a.algo, a.r, a.max_n)?;
    let g = &rep.graph;
    if a.porcelain {
        if let Some(chi) = rep.chi {
            writeln!(out, "chi_o={chi}")?;
        }
        if let (Some(r), Some(f)) = (a.r, rep.feasible) {
            writeln!(out, "r={r}")?;
            writeln!(out, "feasible={f}")?;
        }
        writeln!(out, "engine={}", rep.engine.name())?;
        if let Some(c) = &rep.coloring {
            for v in 0..g.vertex_count() {
                writeln!(out, "color.{}={}", g.name(v), c.color(v) + 1)?;
            }
        }
        writeln!(out, "time_us={}", rep.elapsed.as_micros())?;
    } else {
        if let Some(chi) = rep.chi {
            writeln!(out, "chi_o = {chi}")?;
        }
        if let (Some(r), Some(f)) = (a.r, rep.feasible) {
            writeln!(out, "{r} colors {}", if f { "suffice" } else { "do not suffice" })?;
        }
        writeln!(out, "engine: {}", rep.engine.name())?;
        if let Some(c) = &rep.coloring {
            writeln!(out, "coloring:")?;
            for v in 0..g.vertex_count() {
                writeln!(out, "  {} {}", g.name(v), c.color(v) + 1)?;
            }
        }
        writeln!(out, "time: {} us", rep.elapsed.as_micros())?;
    }
    Ok(if rep.feasible == Some(false) { Outcome::Negative } else { Outcome::Success })
}

fn describe(g: &Digraph, v: Violation, color: &Coloring) -> (String, String) {
    let arc = |(u, w): (usize, usize)| format!("{}->{}", g.name(u), g.name(w));
    match v {
        Violation::MonochromaticArc(a) => {
            ("monochromatic".into(), format!("arc {} has both ends colored {}", arc(a), color.color(a.0) + 1))
        }
        Violation::OppositeArcs(a1, a2) => (
            "opposite".into(),
            format!(
                "arcs {} and {} join colors {} and {} in opposite directions",
                arc(a1),
                arc(a2),
                color.color(a1.0) + 1,
                color.color(a1.1) + 1
            ),
        ),
    }
}

fn violation_arcs(g: &Digraph, v: Violation) -> String {
    let arc = |(u, w): (usize, usize)| format!("{}->{}", g.name(u), g.name(w));
    match v {
        Violation::MonochromaticArc(a) => arc(a),
        Violation::OppositeArcs(a1, a2) => format!("{},{}", arc(a1), arc(a2)),
    }
}

fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let g = load(&a.input)?.digraph()?;
    g.ensure_oriented()?;
    let c = parse_coloring(&input::read_file(&a.coloring)?, &g)?;
    match verify_oriented_coloring(&g, &c)? {
        None => {
            if a.porcelain {
                writeln!(out, "valid=true")?;
                writeln!(out, "colors={}", c.used_colors())?;
            } else {
                writeln!(out, "valid oriented coloring with {} colors", c.used_colors())?;
            }
            Ok(Outcome::Success)
        }
        Some(v) => {
            let (kind, text) = describe(&g, v, &c);
            if a.porcelain {
                writeln!(out, "valid=false")?;
                writeln!(out, "violation={kind}")?;
                writeln!(out, "arcs={}", violation_arcs(&g, v))?;
            } else {
                writeln!(out, "invalid: {text}")?;
            }
            Ok(Outcome::Negative)
        }
    }
}

fn cmd_translate(a: &TranslateArgs, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let input = load(&a.input)?;
    let Target::Cw = a.to;
    let e = match &input {
        Input::Digraph(_) => {
            return Err(CliError::Usage("translate needs an expression (--lang dico or --lang msp)".into()))
        }
        other => cw_expr_of(other)?,
    };
    let stats = cw_validate(&e)?;
    if a.porcelain {
        writeln!(out, "expr={}", e.to_text())?;
        writeln!(out, "labels={}", stats.k)?;
        writeln!(out, "vertices={}", stats.creates)?;
    } else {
        writeln!(out, "{}", e.to_text())?;
    }
    Ok(Outcome::Success)
}

fn cmd_emit_ilp(a: &EmitIlpArgs, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let g = load(&a.input)?.digraph()?;
    out.write_all(emit_bip(&g)?.as_bytes())?;
    Ok(Outcome::Success)
}

/// Renders an input in one of the text formats.
pub fn render(input: &Input, format: Format) -> Result<String, CliError> {
    Ok(match format {
        Format::Edgelist => write_edgelist(&input.digraph()?),
        Format::Dot => to_dot(&input.digraph()?, None),
        Format::Lp => emit_bip(&input.digraph()?)?,
        Format::Expr => match input.expr_text() {
            Some(text) => text + "\n",
            None => return Err(CliError::Usage("a raw digraph has no expression form".into())),
        },
    })
}

/// Builds a named instance or `random-msp N` / `random-dico N`.
pub fn generate(name: &str, params: &[usize], seed: u64) -> Result<Input, CliError> {
    let random = |build: fn(usize, u64) -> Input| match params {
        [n] if *n >= 1 => Ok(build(*n, seed)),
        _ => Err(CliError::Usage(format!("{name} expects one parameter N >= 1"))),
    };
    match name {
        "random-msp" => random(|n, s| Input::Msp(random_msp(n, s))),
        "random-dico" => random(|n, s| Input::Dico(random_dico(n, s))),
        _ => Ok(match gen_named(name, params)? {
            Instance::Digraph(g) => Input::Digraph(g),
            Instance::Dico(e) => Input::Dico(e),
            Instance::Msp(e) => Input::Msp(e),
        }),
    }
}

/// Names accepted by `ocn gen`.
pub fn generator_names() -> Vec<&'static str> {
    NAMES.iter().map(|(n, _)| *n).chain(["random-msp", "random-dico"]).collect()
}

fn cmd_gen(a: &GenArgs, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let input = generate(&a.name, &a.params, a.seed)?;
    out.write_all(render(&input, a.format)?.as_bytes())?;
    Ok(Outcome::Success)
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn cmd_parse(a: &ParseArgs, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let input = load(&a.input)?;
    if let Some(f) = a.format {
        out.write_all(render(&input, f)?.as_bytes())?;
        return Ok(Outcome::Success);
    }
    let g = input.digraph()?;
    let labels = match &input {
        Input::Cw(e) => Some(cw_validate(e)?.k),
        _ => None,
    };
    let facts = [
        ("kind", input.kind().to_string()),
        ("vertices", g.vertex_count().to_string()),
        ("arcs", g.arc_count().to_string()),
        ("oriented", g.is_oriented().to_string()),
        ("acyclic", g.is_acyclic().to_string()),
        ("transitive", g.is_transitive().to_string()),
    ];
    for (key, value) in &facts {
        if a.porcelain {
            writeln!(out, "{key}={value}")?;
        } else {
            let value = match value.as_str() {
                "true" => yes(true),
                "false" => yes(false),
                v => v,
            };
            writeln!(out, "{key}: {value}")?;
        }
    }
    if let Some(k) = labels {
        writeln!(out, "{}", if a.porcelain { format!("labels={k}") } else { format!("labels: {k}") })?;
    }
    Ok(Outcome::Success)
}

fn cmd_bench(a: &BenchArgs, out: &mut dyn Write) -> Result<Outcome, CliError> {
    match a.suite {
        Suite::Msp => {
            let max = a.max_n.unwrap_or(usize::MAX);
            let sizes: Vec<usize> = bench::MSP_SIZES.iter().copied().filter(|&n| n <= max).collect();
            if sizes.is_empty() {
                return Err(CliError::Usage(format!("--max-n {max} leaves no size to run")));
            }
            let rows = bench::msp_scaling(&sizes, bench::MSP_SEEDS, a.seed);
            if !a.porcelain {
                writeln!(out, "{:>8} {:>6} {:>12} {:>12} {:>6}", "leaves", "seeds", "mean_us", "ns/leaf", "max_chi")?;
            }
            for row in &rows {
                if a.porcelain {
                    writeln!(
                        out,
                        "n={} seeds={} mean_us={} ns_per_leaf={:.1} max_chi={}",
                        row.n,
                        row.seeds,
                        row.mean.as_micros(),
                        row.ns_per_leaf(),
                        row.max_chi
                    )?;
                } else {
                    writeln!(
                        out,
                        "{:>8} {:>6} {:>12} {:>12.1} {:>6}",
                        row.n,
                        row.seeds,
                        row.mean.as_micros(),
                        row.ns_per_leaf(),
                        row.max_chi
                    )?;
                }
            }
            let growth = bench::worst_growth(&rows);
            let linear = bench::linear_within(&rows, 2.0);
            if a.porcelain {
                writeln!(out, "worst_growth={growth:.2}")?;
                writeln!(out, "linear_within_2x={linear}")?;
            } else {
                writeln!(out, "time per leaf grows at most {growth:.2}x between sizes ({})", if linear { "within 2x" } else { "over 2x" })?;
            }
        }
        Suite::Mprime => {
            let rows = bench::mprime_table(a.max_n.unwrap_or(7))?;
            let us = |d: Option<Duration>| d.map_or("-".to_string(), |d| d.as_micros().to_string());
            if !a.porcelain {
                writeln!(out, "{:>3} {:>6} {:>5} {:>10} {:>10} {:>10}", "i", "n", "chi", "msp_us", "cw_us", "oracle_us")?;
            }
            for row in &rows {
                if a.porcelain {
                    writeln!(
                        out,
                        "i={} n={} chi_o={} msp_us={} cw_us={} oracle_us={}",
                        row.i,
                        row.n,
                        row.chi,
                        row.msp.as_micros(),
                        us(row.cw),
                        us(row.oracle)
                    )?;
                } else {
                    writeln!(
                        out,
                        "{:>3} {:>6} {:>5} {:>10} {:>10} {:>10}",
                        row.i,
                        row.n,
                        row.chi,
                        row.msp.as_micros(),
                        us(row.cw),
                        us(row.oracle)
                    )?;
                }
            }
        }
    }
    Ok(Outcome::Success)
}
