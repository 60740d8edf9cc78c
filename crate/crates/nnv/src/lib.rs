//! Normed negative voting.
//!
//! Voters score every candidate with a signed number; magnitudes must sum to
//! a fixed norm per ballot. Aggregation produces per-candidate positive and
//! negative totals `(P, N)`, and a family of winning metrics trades raw
//! support against the opposition a candidate provokes.
//!
//! The pieces, in dependency order:
//!
//! * [`ballot`] -- ballots, elections, norm validation, and aggregation into
//!   per-candidate `(P, N)` tallies.
//! * [`metrics`] -- the winning-metric family `(P - cN) / (1 + b N/P)`, a few
//!   nonlinear alternatives, tie handling, and the admissibility analysis
//!   that bounds how hard negative votes may bite.
//! * [`satisfaction`] -- how content the electorate is with a given winner,
//!   in raw and mean-adjusted variants.
//! * [`ranked`] -- Borda, Condorcet, and instant-runoff on the same ballots,
//!   approval-ballot conversion, and side-by-side method comparison.
//! * [`montecarlo`] -- seeded, thread-count-independent experiments:
//!   satisfaction-agreement rates across metrics and field sizes, and a
//!   search for monotonicity violations.
//! * [`output`] -- table / CSV / JSON rendering shared by the CLI.
//! * [`cli`] -- the `nnv` binary: `tally`, `compare`, `simulate`, `region`.
//!
//! Each capability has a runnable walkthrough under `examples/`:
//! `tally_basics`, `winning_metrics`, `penalty_region`, `voter_satisfaction`,
//! `ranked_comparison`, `approval_ballots`, `correlation_study`, and
//! `monotonicity_hunt`.

pub mod ballot;
pub mod cli;
pub mod error;
pub mod metrics;
pub mod montecarlo;
pub mod output;
pub mod ranked;
pub mod satisfaction;

pub use ballot::{
    aggregate, polarity, popularity, qualified, validate_ballot, Ballot, CandidateIndex,
    CandidateTally, Election, NormDeviation, Tally, ValidationMode, DEFAULT_NORM, NORM_TOLERANCE,
};
pub use error::{Error, Result};
pub use montecarlo::{
    correlation_experiment, correlation_sweep, monotonicity_search, random_tally,
    Counterexample, MetricAgreement, PnDistribution, SimConfig, SimReport,
};

pub use output::{
    render_comparison, render_region, render_simulation, ColumnOutcome, OutputFormat, RegionRow,
    TallyReport,
};

pub use ranked::{
    approval_to_nnv, borda_scores, compare_methods, default_names, election_to_ranks,
    instant_runoff, to_ranks, ComparisonReport, IrvOutcome, IrvRound, MethodOutcome,
    MethodResult, PairwiseMatrix, Ranks,
};

pub use satisfaction::{
    max_satisfaction_winner, satisfaction, satisfaction_argmax, satisfaction_bar,
    satisfaction_per_voter, satisfaction_value, SatisfactionVariant,
};

pub use metrics::{
    is_admissible, is_admissible_grid, max_penalty_boundary, pick_winner, scale_linearity_check,
    two_voter_override_check, winning_metric, MetricKind, MetricParams, OverrideCheck,
    ScaleLinearityReport, TieRule, Winner, WinnerResult, TIE_TOLERANCE,
};
