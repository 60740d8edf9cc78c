//! Command-line surface: tally and compare election files, run the
//! correlation experiment, emit maximal-penalty boundary curves.
//!
//! Exit codes: 0 success, 1 input or validation error, 2 when every
//! candidate is disqualified. Output is deterministic for fixed flags
//! (seeds included), so reruns are byte-identical.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::ballot::{aggregate, CandidateIndex, Election, Tally, ValidationMode};
use crate::error::{Error, Result};
use crate::metrics::{max_penalty_boundary, pick_winner, MetricKind, TieRule};
use crate::montecarlo::{correlation_sweep, PnDistribution, SimConfig};
use crate::output::{
    render_comparison, render_region, render_simulation, ColumnOutcome, OutputFormat, RegionRow,
    TallyReport,
};
use crate::ranked::compare_methods;
use crate::satisfaction::{satisfaction_argmax, SatisfactionVariant};

#[derive(Parser)]
#[command(
    name = "nnv",
    version,
    about = "Signed-score voting with a fixed vote norm: tally elections, \
             compare against ranked methods, and run winner-quality experiments"
)]
struct Cli {
    /// Output format: table, json, or csv
    #[arg(long, global = true, env = "NNV_FORMAT", default_value = "table")]
    format: OutputFormat,

    /// Decimal places for table and csv values. Tables default to 2;
    /// csv and json default to full round-trip precision (json always
    /// keeps it).
    #[arg(long, global = true)]
    digits: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Aggregate an election file and pick winners
    Tally {
        /// Election JSON file
        file: PathBuf,

        /// Winning metric: w:<b>,<c> (note the order: w:1,1 divides P - N
        /// by 1 + N/P), exp, sqsum, or power. Repeatable; defaults to
        /// popularity w:0,1.
        #[arg(long = "metric")]
        metrics: Vec<String>,

        /// Append the voter-satisfaction column S
        #[arg(long)]
        satisfaction: bool,

        /// Append the adjusted satisfaction column S_bar
        #[arg(long)]
        sbar: bool,

        /// Keep ballots that miss the vote norm instead of rejecting them
        #[arg(long)]
        lenient: bool,

        /// Tie handling: report, or lowest-index to always name one winner
        #[arg(long, default_value = "report")]
        tie_rule: String,
    },

    /// Compare signed-score winners with Borda, Condorcet, and instant
    /// runoff on the same ballots
    Compare {
        /// Election JSON file (every ballot needs distinct scores)
        file: PathBuf,

        /// Signed metrics to include. Defaults to w:0,1 and w:1,1; a
        /// satisfaction row S always joins them.
        #[arg(long = "metric")]
        metrics: Vec<String>,

        /// Keep ballots that miss the vote norm instead of rejecting them
        #[arg(long)]
        lenient: bool,

        /// Tie handling: report, or lowest-index to always name one winner
        #[arg(long, default_value = "report")]
        tie_rule: String,
    },

    /// Estimate how often each metric crowns the satisfaction-maximizing
    /// candidate, over random electorates
    Simulate {
        /// Candidate counts, comma separated
        #[arg(long, value_delimiter = ',', default_values_t = [3usize, 4, 5, 8, 20])]
        m: Vec<usize>,

        /// Random electorates per candidate count
        #[arg(long, default_value_t = 1_000_000)]
        trials: u64,

        /// Seed; trial t always runs on stream t, so results do not depend
        /// on thread count
        #[arg(long, default_value_t = 42)]
        seed: u64,

        /// Metric to survey (repeatable). Defaults to w:0,1, w:1,1, w:2,1,
        /// and w:0.5,0.5.
        #[arg(long = "metrics")]
        metrics: Vec<String>,

        /// Satisfaction variant: s, or sbar to also count positives spent
        /// on losers as losses
        #[arg(long, default_value = "s")]
        variant: String,

        /// Per-candidate (P, N) law: uniform, uniform:<lo>,<hi>, or
        /// int:<max>
        #[arg(long, default_value = "uniform")]
        dist: String,

        /// Survey metrics even on candidate counts where they are not
        /// admissible
        #[arg(long)]
        force: bool,
    },

    /// Emit the maximal-penalty boundary b_max(c) for given candidate
    /// counts
    Region {
        /// Candidate counts, comma separated
        #[arg(long, value_delimiter = ',', default_values_t = [2usize, 3, 4, 5])]
        m: Vec<usize>,

        /// Sampling step along c in [0, 1]
        #[arg(long, default_value_t = 0.01)]
        c_step: f64,
    },
}

fn parse_tie_rule(spec: &str) -> Result<TieRule> {
    match spec {
        "report" => Ok(TieRule::Report),
        "lowest-index" => Ok(TieRule::LowestIndex),
        other => Err(Error::InvalidConfig(format!(
            "tie rule `{other}`: expected report or lowest-index"
        ))),
    }
}

fn parse_variant(spec: &str) -> Result<SatisfactionVariant> {
    match spec {
        "s" | "S" => Ok(SatisfactionVariant::S),
        "sbar" | "s_bar" | "S_bar" => Ok(SatisfactionVariant::SBar),
        other => Err(Error::InvalidConfig(format!(
            "satisfaction variant `{other}`: expected s or sbar"
        ))),
    }
}

fn parse_metrics(specs: &[String], default: Vec<MetricKind>) -> Result<Vec<MetricKind>> {
    if specs.is_empty() {
        return Ok(default);
    }
    specs.iter().map(|spec| MetricKind::parse(spec)).collect()
}

fn load_election(path: &Path, lenient: bool) -> Result<Election> {
    let mode = if lenient {
        ValidationMode::Lenient
    } else {
        ValidationMode::Strict
    };
    Election::from_json_file(path, mode)
}

fn disqualified_of(tally: &Tally) -> Vec<CandidateIndex> {
    tally
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.qualified())
        .map(|(i, _)| CandidateIndex(i))
        .collect()
}

fn cmd_tally(
    file: &Path,
    metric_specs: &[String],
    satisfaction: bool,
    sbar: bool,
    lenient: bool,
    tie_rule: &str,
) -> Result<TallyReport> {
    let tie = parse_tie_rule(tie_rule)?;
    let election = load_election(file, lenient)?;
    let tally = aggregate(&election);
    let metrics = parse_metrics(metric_specs, vec![MetricKind::popularity()])?;

    let mut columns = Vec::new();
    for metric in &metrics {
        let result = pick_winner(&tally, metric, tie)?;
        columns.push(ColumnOutcome {
            label: metric.label(),
            values: result.values,
            winner: Some(result.winner),
        });
    }
    let mut variants = Vec::new();
    if satisfaction {
        variants.push(SatisfactionVariant::S);
    }
    if sbar {
        variants.push(SatisfactionVariant::SBar);
    }
    for variant in variants {
        let result = satisfaction_argmax(&tally, variant, tie, true)?;
        columns.push(ColumnOutcome {
            label: variant.label().to_string(),
            values: result.values,
            winner: Some(result.winner),
        });
    }

    let disqualified = disqualified_of(&tally);
    Ok(TallyReport {
        candidates: election.candidate_names().to_vec(),
        norm: election.norm(),
        tally,
        columns,
        disqualified,
        norm_deviations: election.deviations().len(),
    })
}

fn region_rows(candidate_counts: &[usize], c_step: f64) -> Result<Vec<RegionRow>> {
    if !(c_step.is_finite() && 0.0 < c_step && c_step <= 1.0) {
        return Err(Error::InvalidConfig(format!(
            "c-step must lie in (0, 1], got {c_step}"
        )));
    }
    for &m in candidate_counts {
        if m < 2 {
            return Err(Error::InvalidConfig(format!(
                "boundary curves need m >= 2, got {m}"
            )));
        }
    }
    let mut rows = Vec::new();
    for &m in candidate_counts {
        let mut i = 0usize;
        loop {
            // March in multiples of the step and close exactly at c = 1.
            let c = (i as f64 * c_step).min(1.0);
            rows.push(RegionRow {
                m,
                c,
                b_max: max_penalty_boundary(m, c),
            });
            if c >= 1.0 {
                break;
            }
            i += 1;
        }
    }
    Ok(rows)
}

fn execute(cli: &Cli) -> Result<String> {
    match &cli.command {
        Command::Tally {
            file,
            metrics,
            satisfaction,
            sbar,
            lenient,
            tie_rule,
        } => {
            let report = cmd_tally(file, metrics, *satisfaction, *sbar, *lenient, tie_rule)?;
            report.render(cli.format, cli.digits)
        }
        Command::Compare {
            file,
            metrics,
            lenient,
            tie_rule,
        } => {
            let tie = parse_tie_rule(tie_rule)?;
            let election = load_election(file, *lenient)?;
            let metrics = parse_metrics(
                metrics,
                vec![MetricKind::popularity(), MetricKind::rational(1.0, 1.0)?],
            )?;
            let report =
                compare_methods(&election, &metrics, Some(SatisfactionVariant::S), tie)?;
            render_comparison(&report, cli.format, cli.digits)
        }
        Command::Simulate {
            m,
            trials,
            seed,
            metrics,
            variant,
            dist,
            force,
        } => {
            if m.is_empty() {
                return Err(Error::InvalidConfig("no candidate counts given".to_string()));
            }
            let mut config = SimConfig::new(m[0], *trials, *seed);
            config.metrics = parse_metrics(metrics, MetricKind::survey_set())?;
            config.variant = parse_variant(variant)?;
            config.distribution = PnDistribution::parse(dist)?;
            config.allow_non_admissible = *force;
            let reports = correlation_sweep(&config, m)?;
            render_simulation(&reports, cli.format, cli.digits)
        }
        Command::Region { m, c_step } => {
            let rows = region_rows(m, *c_step)?;
            render_region(&rows, cli.format, cli.digits)
        }
    }
}

/// Parse `args` and run, writing the report to `out` and complaints to
/// `err`. Returns the process exit code.
pub fn run_from<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(parse_err) => {
            // Help and version requests are successes; everything else is
            // an input error.
            let to_stdout = !parse_err.use_stderr();
            let target: &mut dyn Write = if to_stdout { out } else { err };
            let _ = write!(target, "{parse_err}");
            return if to_stdout { 0 } else { 1 };
        }
    };
    match execute(&cli) {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            0
        }
        Err(Error::NoQualifiedCandidate) => {
            let _ = writeln!(err, "error: {}", Error::NoQualifiedCandidate);
            2
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}
