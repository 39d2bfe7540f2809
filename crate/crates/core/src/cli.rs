//! The `tourlab` command line.
//!
//! Every subcommand ends with one `#RESULT ` line (on stderr for the CSV
//! commands, so standard output stays plain CSV). Errors print a single
//! `#ERROR code=<code> <message>` line and exit with status 2.

use std::ffi::OsString;
use std::fs;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};

use crate::analysis::{budget_from_env, classify_unavoidability, Classification, Witness};
use crate::base::{
    make_ordinal_injection_tournament, Digraph, FiniteOrientedGraph, InjectionSpec,
    PresentedGraph, TournamentOracle,
};
use crate::density::{
    catalogue, density_profile, factorial_scheme, inversion_density_profile, make_block_scheme,
    optimize_scheme, DensityProfile,
};
use crate::embedding::{auto_oracle, spanning_embed_with, AlwaysInfinite, InfinitenessOracle};
use crate::error::{Error, Result};

#[derive(Debug, Parser)]
#[command(name = "tourlab", version, about = "Unavoidable subgraphs of countable tournaments")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify a graph as unavoidable or avoidable.
    Analyze {
        /// Edge-list file or graph family (anti-path, forward-path,
        /// certified-forward-path, out-stars, forest, layered:<seed>).
        graph: String,
        #[arg(long)]
        budget: Option<usize>,
        /// Exit with status 1 unless the verdict matches.
        #[arg(long, value_enum)]
        expect: Option<Expect>,
    },
    /// Spanning embedding of a graph into a tournament up to a horizon.
    Embed {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        tournament: String,
        #[arg(long)]
        horizon: usize,
        #[arg(long, value_enum, default_value = "auto")]
        oracle: OracleChoice,
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Exact forward-density profile of a tournament as CSV.
    Density {
        #[arg(long)]
        tournament: String,
        #[arg(long)]
        nmax: usize,
        #[arg(long, default_value_t = 1)]
        stride: usize,
    },
    /// Exact inversion-density profile of an injection as CSV.
    Inversions {
        /// identity, factorial, reversed:<n>, a catalogue pattern
        /// (`<name>` or `<name>:<ratio>`), or an injection file.
        #[arg(long)]
        injection: String,
        #[arg(long)]
        nmax: usize,
        #[arg(long, default_value_t = 1)]
        stride: usize,
    },
    /// Search the block-scheme catalogue for a high window inversion density.
    Optimize {
        /// `lo:hi`
        #[arg(long)]
        window: String,
        #[arg(long)]
        horizon: u64,
        /// Comma-separated catalogue names; all of them by default.
        #[arg(long)]
        patterns: Option<String>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Expect {
    Unavoidable,
    Avoidable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OracleChoice {
    Auto,
    AlwaysInfinite,
}

/// Parses `args` (program name first), runs, and returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 {
                write!(out, "{e}")
            } else {
                write!(err, "{e}")
            };
            return code;
        }
    };
    match execute(&config, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "#ERROR code={} {e}", e.code());
            2
        }
    }
}

/// Runs a parsed configuration.
pub fn execute(config: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match &config.command {
        Command::Analyze { graph, budget, expect } => analyze(graph, *budget, *expect, out),
        Command::Embed { graph, tournament, horizon, oracle, budget } => {
            embed(graph, tournament, *horizon, *oracle, *budget, out)
        }
        Command::Density { tournament, nmax, stride } => {
            positive("nmax", *nmax)?;
            positive("stride", *stride)?;
            let k = parse_tournament(tournament)?;
            csv(&density_profile(&k, *nmax, *stride)?, out, err)
        }
        Command::Inversions { injection, nmax, stride } => {
            positive("nmax", *nmax)?;
            positive("stride", *stride)?;
            let f = parse_injection(injection)?;
            let full = inversion_density_profile(&f, *nmax)?;
            let samples = full
                .samples
                .iter()
                .filter(|s| (s.n as usize - 2) % stride == 0 || s.n as usize == *nmax)
                .copied()
                .collect();
            csv(&DensityProfile { samples }, out, err)
        }
        Command::Optimize { window, horizon, patterns } => optimize(window, *horizon, patterns.as_deref(), out),
    }
}

fn positive(name: &str, v: usize) -> Result<()> {
    if v == 0 {
        return Err(Error::Parse(format!("--{name} must be positive")));
    }
    Ok(())
}

fn io(e: std::io::Error) -> Error {
    Error::from(e)
}

/// A graph family name or an edge-list file.
pub fn parse_graph(spec: &str) -> Result<Box<dyn Digraph>> {
    let family = match spec {
        "anti-path" => Some(PresentedGraph::anti_directed_path()),
        "forward-path" => Some(PresentedGraph::forward_path()),
        "certified-forward-path" => Some(PresentedGraph::certified_forward_path()),
        "out-stars" => Some(PresentedGraph::out_stars()),
        "forest" => Some(PresentedGraph::interleaved_forest()),
        _ => match spec.strip_prefix("layered:") {
            Some(seed) => Some(PresentedGraph::random_layered(parse_num(seed, "seed")?)),
            None => None,
        },
    };
    if let Some(g) = family {
        return Ok(Box::new(g));
    }
    let text = read_source(spec, "graph family")?;
    Ok(Box::new(FiniteOrientedGraph::parse(&text)?))
}

/// A tournament family name as accepted on the command line.
pub fn parse_tournament(spec: &str) -> Result<TournamentOracle> {
    Ok(match spec {
        "transitive-omega" => TournamentOracle::transitive_omega(),
        "transitive-omega-star" => TournamentOracle::transitive_omega_star(),
        "factorial-block" => TournamentOracle::factorial_block(),
        "exp-threshold" => TournamentOracle::exponential_threshold(),
        _ => {
            if let Some(seed) = spec.strip_prefix("random:") {
                TournamentOracle::seeded_random(parse_num(seed, "seed")?)
            } else if let Some(path) = spec.strip_prefix("injection:") {
                make_ordinal_injection_tournament(parse_injection(path)?)
            } else {
                return Err(Error::Parse(format!("unknown tournament family `{spec}`")));
            }
        }
    })
}

/// A named injection or an injection file.
pub fn parse_injection(spec: &str) -> Result<InjectionSpec> {
    match spec {
        "identity" => return Ok(InjectionSpec::identity()),
        "factorial" => return Ok(factorial_scheme().injection()),
        _ => {}
    }
    if let Some(n) = spec.strip_prefix("reversed:") {
        return Ok(InjectionSpec::reversed_prefix(parse_num(n, "length")?));
    }
    let (name, ratio) = match spec.split_once(':') {
        Some((a, b)) => (a, Some(b)),
        None => (spec, None),
    };
    if let Some(t) = catalogue().into_iter().find(|t| t.name == name) {
        let mut params = t.params.clone();
        if let Some(r) = ratio {
            params = t.at_ratio(r.parse().map_err(|_| Error::Parse(format!("bad ratio `{r}`")))?);
        }
        return Ok(make_block_scheme(params)?.injection());
    }
    let text = read_source(spec, "injection scheme")?;
    InjectionSpec::parse(&text)
}

fn read_source(spec: &str, what: &str) -> Result<String> {
    if !std::path::Path::new(spec).exists() {
        return Err(Error::Parse(format!("`{spec}` is neither a known {what} nor a file")));
    }
    Ok(fs::read_to_string(spec)?)
}

fn parse_num<T: std::str::FromStr>(s: &str, what: &str) -> Result<T> {
    s.parse().map_err(|_| Error::Parse(format!("bad {what} `{s}`")))
}

fn analyze(spec: &str, budget: Option<usize>, expect: Option<Expect>, out: &mut dyn Write) -> Result<i32> {
    let g = parse_graph(spec)?;
    let budget = budget.unwrap_or_else(budget_from_env);
    let mut note = None;
    let (verdict, witness) = match classify_unavoidability(g.as_ref(), budget) {
        Classification::Unavoidable => ("unavoidable", "none".to_string()),
        Classification::Avoidable(Witness::Cycle(c)) => ("avoidable", format!("cycle:{}", one_based(&c))),
        Classification::Avoidable(Witness::EscapingPath { start, sign, path }) => (
            "avoidable",
            format!("escaping-path:{}{sign}:{}", start + 1, one_based(&path)),
        ),
        Classification::Inconclusive(reason) => {
            note = Some(reason);
            ("inconclusive", "none".to_string())
        }
    };
    let size = match g.order() {
        Some(n) => format!("{n} vertices"),
        None => "infinite".to_string(),
    };
    writeln!(out, "graph {spec} ({size}), budget {budget}").map_err(io)?;
    if let Some(reason) = note {
        writeln!(out, "note: {reason}").map_err(io)?;
    }
    writeln!(out, "verdict={verdict} witness={witness}").map_err(io)?;
    writeln!(out, "#RESULT {verdict},{witness}").map_err(io)?;
    let code = match expect {
        Some(Expect::Unavoidable) if verdict != "unavoidable" => 1,
        Some(Expect::Avoidable) if verdict != "avoidable" => 1,
        _ => 0,
    };
    Ok(code)
}

fn one_based(vs: &[usize]) -> String {
    vs.iter().map(|v| (v + 1).to_string()).collect::<Vec<_>>().join(",")
}

fn embed(
    graph: &str,
    tournament: &str,
    horizon: usize,
    oracle: OracleChoice,
    budget: Option<usize>,
    out: &mut dyn Write,
) -> Result<i32> {
    positive("horizon", horizon)?;
    let g = parse_graph(graph)?;
    let k = parse_tournament(tournament)?;
    let o: Box<dyn InfinitenessOracle> = match oracle {
        OracleChoice::Auto => auto_oracle(&k)?,
        OracleChoice::AlwaysInfinite => Box::new(AlwaysInfinite),
    };
    let budget = budget.unwrap_or_else(budget_from_env);
    let run = spanning_embed_with(g.as_ref(), &k, o.as_ref(), horizon, budget)?;
    for (gv, kv) in run.map.iter() {
        writeln!(out, "{} {}", gv + 1, kv + 1).map_err(io)?;
    }
    let cells = if run.engines.is_empty() {
        "-".to_string()
    } else {
        run.engines.iter().map(|e| e.frontier.to_string()).collect::<Vec<_>>().join(",")
    };
    let summary = format!(
        "covered={} valid={} cells={cells} conform={} components={}",
        run.covered,
        run.valid,
        run.cells_conform,
        run.engines.len() + run.finite_components
    );
    writeln!(out, "oracle {}, {} vertices mapped", o.name(), run.map.len()).map_err(io)?;
    writeln!(out, "{summary}").map_err(io)?;
    writeln!(out, "#RESULT {summary}").map_err(io)?;
    Ok(if run.is_complete() { 0 } else { 1 })
}

fn csv(p: &DensityProfile, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    out.write_all(p.to_csv().as_bytes()).map_err(io)?;
    if let Some(m) = p.min_in(0, u64::MAX) {
        writeln!(err, "#RESULT min_density={} argmin={}", m.density(), m.n).map_err(io)?;
    }
    Ok(0)
}

fn optimize(window: &str, horizon: u64, patterns: Option<&str>, out: &mut dyn Write) -> Result<i32> {
    let (lo, hi) = window
        .split_once(':')
        .ok_or_else(|| Error::Parse(format!("window `{window}` is not lo:hi")))?;
    let window = (parse_num(lo, "window start")?, parse_num(hi, "window end")?);
    let mut space = catalogue();
    if let Some(list) = patterns {
        let names: Vec<&str> = list.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
        if let Some(bad) = names.iter().find(|n| !space.iter().any(|t| t.name == **n)) {
            return Err(Error::Parse(format!("unknown pattern `{bad}`")));
        }
        space.retain(|t| names.contains(&t.name));
    }
    let (scheme, report) = optimize_scheme(&space, horizon, window)?;
    writeln!(out, "scheme {scheme}").map_err(io)?;
    writeln!(out, "window {}:{} argmin={}", report.window.0, report.window.1, report.minimum.n).map_err(io)?;
    writeln!(out, "min_density={}", report.min_window_density()).map_err(io)?;
    writeln!(out, "#RESULT min_density={} target={}", report.min_window_density(), report.target).map_err(io)?;
    Ok(0)
}
