//! Command implementations. [`run`] parses arguments and returns the exit
//! status; output goes to the given writers so tests can capture it.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use duocover_core::bitset::BitSet;
use duocover_core::mis::greedy_clique_cover;
use duocover_core::{
    build_family, coverage_stats, covered_pair_graph, graph_verify, independence_number, irredundancy_check,
    structural_verify, ConstructionParams, DesignFamily, Outcome, ProofIndex, QuerySubset, StructuralDefect,
    VerificationReport, VerifyError, WitnessError,
};

use crate::io::{read_design_file, write_design, write_design_file};
use crate::parallel::{default_jobs, exhaustive_verify_parallel};
use crate::report;

/// Process exit codes.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ExitStatus {
    /// Guarantee holds, or the command succeeded.
    Success = 0,
    /// Guarantee fails; a counterexample was printed.
    Fails = 1,
    /// Usage or input error.
    Usage = 2,
    /// Solver budget ran out.
    Undecided = 3,
}

#[derive(Parser, Debug)]
#[command(name = "duocover", version, about = "Build and verify families that meet every s-set in two points")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write the pairwise-recombination family for (g, t).
    Generate {
        #[arg(long)]
        group_size: u32,
        #[arg(long)]
        groups: u32,
        /// Output file; the design goes to stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check that every s-subset meets some block in at least two points.
    Verify {
        design: PathBuf,
        #[arg(long)]
        subset_size: u32,
        #[arg(long, value_enum, default_value_t = Mode::All)]
        mode: Mode,
        /// Worker threads for the exhaustive sweep (default: available cores).
        #[arg(long)]
        jobs: Option<usize>,
        /// Node limit for the independent-set solver.
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long)]
        json: bool,
    },
    /// Name a block meeting the given set twice, following the construction proof.
    Witness {
        design: PathBuf,
        /// Comma-separated elements, e.g. 1,7,13,25,37,49
        #[arg(long, value_delimiter = ',', required = true)]
        set: Vec<u32>,
        #[arg(long)]
        json: bool,
    },
    /// Coverage statistics, independence number and clique cover size.
    Stats {
        design: PathBuf,
        /// Also test whether each block is necessary.
        #[arg(long)]
        irredundancy: bool,
        /// Subset size for --irredundancy (default: alpha + 1).
        #[arg(long)]
        subset_size: Option<u32>,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum Mode {
    Exhaustive,
    Graph,
    Structural,
    All,
}

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> ExitStatus
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return ExitStatus::Usage;
            }
            let _ = write!(out, "{e}");
            return ExitStatus::Success;
        }
    };
    let result = match cli.command {
        Command::Generate { group_size, groups, out: path } => generate(group_size, groups, path.as_deref(), out, err),
        Command::Verify { design, subset_size, mode, jobs, budget, json } => {
            verify(&design, subset_size, mode, jobs.unwrap_or_else(default_jobs), budget, json, out)
        }
        Command::Witness { design, set, json } => witness(&design, set, json, out),
        Command::Stats { design, irredundancy, subset_size, budget, json } => {
            stats(&design, irredundancy, subset_size, budget, json, out)
        }
    };
    match result {
        Ok(status) => status,
        Err(message) => {
            let _ = writeln!(err, "error: {message}");
            ExitStatus::Usage
        }
    }
}

type CmdResult = Result<ExitStatus, String>;

fn load(path: &Path) -> Result<DesignFamily, String> {
    read_design_file(path).map_err(|e| e.to_string())
}

fn generate(g: u32, t: u32, path: Option<&Path>, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let params = ConstructionParams::new(g, t).map_err(|e| e.to_string())?;
    let family = build_family(&params);
    let summary = format!("n: {}\nblocks: {}\nthreshold: {}\n", params.n(), family.len(), params.guarantee_threshold());
    match path {
        Some(p) => {
            write_design_file(p, &family).map_err(|e| e.to_string())?;
            out.write_all(summary.as_bytes()).map_err(|e| e.to_string())?;
        }
        None => {
            out.write_all(write_design(&family).as_bytes()).map_err(|e| e.to_string())?;
            err.write_all(summary.as_bytes()).map_err(|e| e.to_string())?;
        }
    }
    Ok(ExitStatus::Success)
}

/// Structural reports carrying a real defect (not just "below threshold")
/// do not take part in the agreement check.
fn decisive(r: &VerificationReport) -> bool {
    r.outcome != Outcome::Undecided
        && !matches!(r.defect, Some(ref d) if !matches!(d, StructuralDefect::BelowThreshold { .. }))
}

fn verify(
    path: &Path,
    s: u32,
    mode: Mode,
    jobs: usize,
    budget: Option<u64>,
    json: bool,
    out: &mut dyn Write,
) -> CmdResult {
    let family = load(path)?;
    let run_exhaustive = || exhaustive_verify_parallel(&family, s, jobs);
    let run_graph = || graph_verify(&family, s, budget);
    let run_structural = || structural_verify(&family, s);

    let mut reports = Vec::new();
    let mut timed = |f: &dyn Fn() -> Result<VerificationReport, VerifyError>| -> Result<(), String> {
        let start = Instant::now();
        let r = f().map_err(|e| e.to_string())?;
        reports.push((r, start.elapsed()));
        Ok(())
    };
    match mode {
        Mode::Exhaustive => timed(&run_exhaustive)?,
        Mode::Graph => timed(&run_graph)?,
        Mode::Structural => timed(&run_structural)?,
        Mode::All => {
            timed(&run_exhaustive)?;
            timed(&run_graph)?;
            if family.has_structure() {
                timed(&run_structural)?;
            }
        }
    }

    let mut text = String::new();
    for (i, (r, elapsed)) in reports.iter().enumerate() {
        if json {
            text += &report::verification_json(r, *elapsed).to_string();
            text.push('\n');
        } else {
            if i > 0 {
                text.push('\n');
            }
            text += &report::verification_text(r, *elapsed);
        }
    }
    if mode == Mode::All {
        let outcomes: Vec<Outcome> =
            reports.iter().map(|(r, _)| r).filter(|r| decisive(r)).map(|r| r.outcome).collect();
        let agree = outcomes.windows(2).all(|w| w[0] == w[1]);
        if json {
            text += &serde_json::json!({ "agreement": agree }).to_string();
            text.push('\n');
        } else {
            text += &format!("\nagreement: {}\n", if agree { "yes" } else { "NO" });
        }
    }
    out.write_all(text.as_bytes()).map_err(|e| e.to_string())?;

    let outcomes: Vec<Outcome> = reports.iter().map(|(r, _)| r.outcome).collect();
    Ok(if outcomes.contains(&Outcome::Fails) {
        ExitStatus::Fails
    } else if outcomes.contains(&Outcome::Undecided) {
        ExitStatus::Undecided
    } else {
        ExitStatus::Success
    })
}

fn witness(path: &Path, set: Vec<u32>, json: bool, out: &mut dyn Write) -> CmdResult {
    let family = load(path)?;
    let subset = QuerySubset::from_unsorted(set, family.n()).map_err(|e| format!("bad --set: {e}"))?;
    let index =
        ProofIndex::build(&family).map_err(|e| e.to_string())?.map_err(|d| WitnessError::Defect(d).to_string())?;
    let w = index.witness(&subset).map_err(|e| e.to_string())?;
    let text =
        if json { report::witness_json(&family, &w).to_string() + "\n" } else { report::witness_text(&family, &w) };
    out.write_all(text.as_bytes()).map_err(|e| e.to_string())?;
    Ok(ExitStatus::Success)
}

fn stats(
    path: &Path,
    irredundancy: bool,
    subset_size: Option<u32>,
    budget: Option<u64>,
    json: bool,
    out: &mut dyn Write,
) -> CmdResult {
    let family = load(path)?;
    let coverage = coverage_stats(&family);
    let graph = covered_pair_graph(&family);
    let mis = independence_number(&graph, budget);
    let alpha = mis.exact();
    let clique_cover = greedy_clique_cover(&graph, &BitSet::full(graph.n())).len();

    let irredundancy = if irredundancy {
        let s = match (subset_size, alpha) {
            (Some(s), _) => s,
            (None, Some(a)) => a.size() as u32 + 1,
            (None, None) => return Err("alpha undecided; pass --subset-size".into()),
        };
        let r = irredundancy_check(&family, s, budget).map_err(|e| e.to_string())?;
        Some((s, r.necessary()))
    } else {
        None
    };

    let summary = report::StatsSummary { family: &family, coverage: &coverage, alpha, clique_cover, irredundancy };
    let text = if json { report::stats_json(&summary).to_string() + "\n" } else { report::stats_text(&summary) };
    out.write_all(text.as_bytes()).map_err(|e| e.to_string())?;
    Ok(if alpha.is_some() { ExitStatus::Success } else { ExitStatus::Undecided })
}
