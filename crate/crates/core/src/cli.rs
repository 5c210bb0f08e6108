//! Command-line front end.
//!
//! Exit status: 0 on success or a valid witness, 1 when no witness exists
//! or a check fails, 2 on malformed input, unmet preconditions or usage
//! errors.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use num_rational::Rational64;

use crate::cellprobe::{audit_layout, kwise_rank_check, parse_layout, parse_problem, vandermonde_problem, AuditVerdict};
use crate::dense::{find_dense_set, DensityParams};
use crate::error::{Error, Result};
use crate::gap::find_gap_set;
use crate::graph::{parse_graph, parse_rational, parse_witness, Graph, Multigraph, THypergraph};
use crate::hyper::{find_hyper_dense, Mode};
use crate::log2::Log2;
use crate::oracle::{brute_force_best_gap, verify_witness, DEFAULT_BUDGET};
use crate::tightness::run_tightness_experiment;

#[derive(Debug, Parser)]
#[command(name = "probe-witness", version, about = "Dense vertex sets and cell-probe layout audits")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Set spanning |S| + 1 edges in a multigraph with m >= s(1 + eps).
    FindDense {
        file: PathBuf,
        #[arg(long, value_parser = rational)]
        epsilon: Rational64,
    },
    /// Set spanning |S| + g edges in a multigraph with m >= 2s + g + 1.
    FindGap {
        file: PathBuf,
        #[arg(long)]
        gap: u64,
    },
    /// Set of at most k vertices spanning |S| + k / (2^(t+1) log2 s) hyperedges.
    FindHyper {
        file: PathBuf,
        #[arg(long)]
        k: usize,
        /// Skip the density checks and report whatever the recursion finds.
        #[arg(long)]
        best_effort: bool,
    },
    /// Check a witness file against a graph.
    Verify { graph: PathBuf, witness: PathBuf },
    /// Exhaustive best gap over sets of at most kmax vertices.
    Oracle {
        file: PathBuf,
        #[arg(long)]
        kmax: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
    },
    /// Random t-uniform hypergraphs: how often do k vertices span k hyperedges?
    Tightness {
        #[arg(long)]
        s: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        seed: u64,
        /// Also append the report to this file.
        #[arg(long)]
        append: Option<PathBuf>,
    },
    /// Vandermonde problem over GF(p).
    GenProblem {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Do all k-subsets of columns have full rank?
    RankCheck {
        problem: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
    },
    /// Search a probe layout for cells read by more queries than they number.
    Audit {
        layout: PathBuf,
        #[arg(long, conflicts_with = "n", required_unless_present = "n")]
        k: Option<usize>,
        /// Input count; sets k = ceil(n / log2 n).
        #[arg(long)]
        n: Option<usize>,
    },
}

fn rational(text: &str) -> std::result::Result<Rational64, String> {
    parse_rational(text)
}

/// Runs the tool on `args` (program name first) and returns the exit status.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                2
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::invalid(format!("cannot read {}: {e}", path.display())))
}

fn io(e: std::io::Error) -> Error {
    Error::invalid(format!("write failed: {e}"))
}

fn multigraph(graph: Graph) -> Result<Multigraph> {
    match graph {
        Graph::Multi(g) => Ok(g),
        Graph::Hyper(h) => h.to_multigraph(),
    }
}

fn hypergraph(graph: Graph) -> THypergraph {
    match graph {
        Graph::Multi(g) => g.to_hypergraph(),
        Graph::Hyper(h) => h,
    }
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::FindDense { file, epsilon } => {
            let g = multigraph(parse_graph(&read(&file)?)?)?;
            let w = find_dense_set(&g, DensityParams::new(epsilon)?)?;
            write!(out, "{w}").map_err(io)?;
            Ok(0)
        }
        Command::FindGap { file, gap } => {
            let g = multigraph(parse_graph(&read(&file)?)?)?;
            let w = find_gap_set(&g, gap)?;
            write!(out, "{w}").map_err(io)?;
            Ok(0)
        }
        Command::FindHyper { file, k, best_effort } => {
            let g = hypergraph(parse_graph(&read(&file)?)?);
            let mode = if best_effort { Mode::BestEffort } else { Mode::Strict };
            match find_hyper_dense(&g, k, mode)? {
                Some(w) => {
                    write!(out, "{w}").map_err(io)?;
                    Ok(0)
                }
                None => {
                    writeln!(out, "no witness").map_err(io)?;
                    Ok(1)
                }
            }
        }
        Command::Verify { graph, witness } => {
            let g = parse_graph(&read(&graph)?)?;
            let w = parse_witness(&read(&witness)?)?;
            let verdict = verify_witness(&g, &w);
            writeln!(out, "{verdict}").map_err(io)?;
            Ok(if verdict.is_valid() { 0 } else { 1 })
        }
        Command::Oracle { file, kmax, budget } => {
            let g = parse_graph(&read(&file)?)?;
            let best = brute_force_best_gap(&g, kmax, budget)?;
            let set: Vec<String> = best.vertices.iter().map(usize::to_string).collect();
            writeln!(out, "S: {}\ngap: {}", set.join(" "), best.gap).map_err(io)?;
            Ok(0)
        }
        Command::Tightness {
            s,
            m,
            t,
            k,
            trials,
            seed,
            append,
        } => {
            let report = run_tightness_experiment(s, m, t, k, trials, seed)?;
            write!(out, "{report}").map_err(io)?;
            if let Some(path) = append {
                let mut file = fs::OpenOptions::new()
                    .create(true)
                    .append(true)
                    .open(&path)
                    .map_err(|e| Error::invalid(format!("cannot open {}: {e}", path.display())))?;
                writeln!(file, "{report}").map_err(io)?;
            }
            Ok(0)
        }
        Command::GenProblem { n, m, p, out: path } => {
            let problem = vandermonde_problem(n, m, p)?;
            match path {
                Some(path) => fs::write(&path, problem.to_string())
                    .map_err(|e| Error::invalid(format!("cannot write {}: {e}", path.display())))?,
                None => write!(out, "{problem}").map_err(io)?,
            }
            Ok(0)
        }
        Command::RankCheck { problem, k, budget } => {
            let problem = parse_problem(&read(&problem)?)?;
            let ok = kwise_rank_check(&problem, k, budget)?;
            writeln!(out, "kwise = {ok}").map_err(io)?;
            Ok(if ok { 0 } else { 1 })
        }
        Command::Audit { layout, k, n } => {
            let layout = parse_layout(&read(&layout)?)?;
            let k = match (k, n) {
                (Some(k), _) => k,
                (None, Some(n)) if n >= 2 => Log2::of(n as u64).ceil_quotient(n as u64, 1) as usize,
                (None, _) => return Err(Error::precondition("--n must be at least 2")),
            };
            let report = audit_layout(&layout, k)?;
            write!(out, "{report}").map_err(io)?;
            Ok(match report.verdict {
                AuditVerdict::Violation => 0,
                AuditVerdict::NoWitnessFound => 1,
                AuditVerdict::PreconditionsUnmet => 2,
            })
        }
    }
}
