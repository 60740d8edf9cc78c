//! Monte Carlo experiments over random electorates.
//!
//! Two studies ship here. The correlation experiment drives random vote
//! aggregates through each winning metric and asks how often the metric's
//! winner is also the candidate whose victory would satisfy voters most.
//! The monotonicity search hunts for elections where a voter shifting vote
//! weight *toward* the sitting winner makes that winner lose.
//!
//! Results are reproducible: trial `t` always runs on stream `t` of a
//! counter-based generator, so the numbers do not depend on how rayon
//! schedules the work or how many threads it uses.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::ballot::{aggregate, qualified, Ballot, Election, Tally, ValidationMode, DEFAULT_NORM};
use crate::error::{Error, Result};
use crate::metrics::{pick_winner, MetricKind, MetricParams, TieRule, Winner, TIE_TOLERANCE};
use crate::satisfaction::SatisfactionVariant;

/// Per-candidate (positive, negative) sampling law.
#[derive(Debug, Clone, PartialEq)]
pub enum PnDistribution {
    /// P and N drawn independently and uniformly from `[lo, hi)`.
    Uniform { lo: f64, hi: f64 },
    /// P and N drawn as independent uniform integers in `0..=max`.
    Integers { max: u32 },
}

impl Default for PnDistribution {
    fn default() -> Self {
        PnDistribution::Uniform { lo: 0.0, hi: 1.0 }
    }
}

impl PnDistribution {
    /// Parse `uniform`, `uniform:<lo>,<hi>`, or `int:<max>`.
    pub fn parse(spec: &str) -> Result<Self> {
        let bad = || Error::InvalidConfig(format!(
            "distribution `{spec}`: expected `uniform`, `uniform:<lo>,<hi>`, or `int:<max>`"
        ));
        let dist = if spec == "uniform" {
            PnDistribution::default()
        } else if let Some(rest) = spec.strip_prefix("uniform:") {
            let (lo, hi) = rest.split_once(',').ok_or_else(bad)?;
            PnDistribution::Uniform {
                lo: lo.trim().parse().map_err(|_| bad())?,
                hi: hi.trim().parse().map_err(|_| bad())?,
            }
        } else if let Some(max) = spec.strip_prefix("int:") {
            PnDistribution::Integers {
                max: max.trim().parse().map_err(|_| bad())?,
            }
        } else {
            return Err(bad());
        };
        dist.validate()?;
        Ok(dist)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            PnDistribution::Uniform { lo, hi } => {
                if !(lo.is_finite() && hi.is_finite() && 0.0 <= lo && lo < hi) {
                    return Err(Error::InvalidConfig(format!(
                        "uniform distribution needs 0 <= lo < hi, got [{lo}, {hi})"
                    )));
                }
            }
            PnDistribution::Integers { max } => {
                if max == 0 {
                    return Err(Error::InvalidConfig(
                        "integer distribution needs max >= 1".to_string(),
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn label(&self) -> String {
        match *self {
            PnDistribution::Uniform { lo, hi } if lo == 0.0 && hi == 1.0 => "uniform".to_string(),
            PnDistribution::Uniform { lo, hi } => format!("uniform:{lo},{hi}"),
            PnDistribution::Integers { max } => format!("int:{max}"),
        }
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> (f64, f64) {
        match *self {
            PnDistribution::Uniform { lo, hi } => {
                (rng.random_range(lo..hi), rng.random_range(lo..hi))
            }
            PnDistribution::Integers { max } => (
                rng.random_range(0..=max) as f64,
                rng.random_range(0..=max) as f64,
            ),
        }
    }
}

/// Elections with no qualified candidate are redrawn; give up after this
/// many attempts rather than spin forever on a hopeless distribution.
const REDRAW_CAP: usize = 10_000;

fn fill_qualified_pairs(
    rng: &mut ChaCha8Rng,
    m: usize,
    dist: &PnDistribution,
    pairs: &mut Vec<(f64, f64)>,
) {
    for _ in 0..REDRAW_CAP {
        pairs.clear();
        pairs.extend((0..m).map(|_| dist.sample(rng)));
        if pairs.iter().any(|&(p, n)| qualified(p, n)) {
            return;
        }
    }
    panic!("no qualified candidate after {REDRAW_CAP} redraws; distribution {dist:?} starves the electorate");
}

/// One random aggregate with at least one qualified candidate.
pub fn random_tally(rng: &mut ChaCha8Rng, m: usize, dist: &PnDistribution) -> Tally {
    let mut pairs = Vec::with_capacity(m);
    fill_qualified_pairs(rng, m, dist, &mut pairs);
    Tally::from_pairs(&pairs)
}

/// Correlation experiment configuration.
#[derive(Debug, Clone)]
pub struct SimConfig {
    pub candidates: usize,
    pub trials: u64,
    pub seed: u64,
    pub distribution: PnDistribution,
    pub metrics: Vec<MetricKind>,
    pub variant: SatisfactionVariant,
    /// Let metrics run on candidate counts where they are not admissible.
    pub allow_non_admissible: bool,
}

impl SimConfig {
    pub fn new(candidates: usize, trials: u64, seed: u64) -> Self {
        SimConfig {
            candidates,
            trials,
            seed,
            distribution: PnDistribution::default(),
            metrics: MetricKind::survey_set(),
            variant: SatisfactionVariant::default(),
            allow_non_admissible: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.candidates < 2 {
            return Err(Error::InvalidConfig(format!(
                "need at least 2 candidates, got {}",
                self.candidates
            )));
        }
        if self.trials == 0 {
            return Err(Error::InvalidConfig("need at least 1 trial".to_string()));
        }
        if self.metrics.is_empty() {
            return Err(Error::InvalidConfig("no metrics requested".to_string()));
        }
        self.distribution.validate()?;
        if !self.allow_non_admissible {
            for metric in &self.metrics {
                if !metric.admissible_for(self.candidates) {
                    return Err(Error::NonAdmissibleMetric {
                        metric: metric.label(),
                        m: self.candidates,
                    });
                }
            }
        }
        Ok(())
    }
}

/// How often one metric's winner coincided with the satisfaction winner.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MetricAgreement {
    pub metric: String,
    pub matches: u64,
    pub trials: u64,
    pub rate: f64,
}

/// Correlation experiment result for one candidate count.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimReport {
    pub candidates: usize,
    pub trials: u64,
    pub seed: u64,
    pub distribution: String,
    pub variant: String,
    pub agreements: Vec<MetricAgreement>,
}

impl SimReport {
    pub fn rate(&self, metric: &str) -> Option<f64> {
        self.agreements
            .iter()
            .find(|a| a.metric == metric)
            .map(|a| a.rate)
    }
}

/// Whether any tied-best satisfaction candidate is also a tied-best metric
/// candidate, among qualified candidates.
fn satisfaction_matches_metric(
    pairs: &[(f64, f64)],
    metric: &MetricKind,
    variant: SatisfactionVariant,
) -> bool {
    let total_negative: f64 = pairs.iter().map(|&(_, n)| n).sum();
    let total_popularity: f64 = pairs.iter().map(|&(p, n)| p - n).sum();
    let satisfaction_of = |p: f64, n: f64| match variant {
        // S(alpha) = P - N + (N_tot - N) ranks candidates by P - 2N.
        SatisfactionVariant::S => p - 2.0 * n + total_negative,
        SatisfactionVariant::SBar => 2.0 * (p - n) - total_popularity,
    };

    let mut best_s = f64::NEG_INFINITY;
    let mut best_w = f64::NEG_INFINITY;
    for &(p, n) in pairs {
        if !qualified(p, n) {
            continue;
        }
        best_s = best_s.max(satisfaction_of(p, n));
        best_w = best_w.max(metric.evaluate(p, n));
    }
    pairs.iter().any(|&(p, n)| {
        qualified(p, n)
            && satisfaction_of(p, n) >= best_s - TIE_TOLERANCE
            && metric.evaluate(p, n) >= best_w - TIE_TOLERANCE
    })
}

/// Estimate, for each configured metric, the probability that its winner is
/// the candidate maximizing voter satisfaction.
///
/// A trial counts as a match when the metric's tied-winner set and the
/// satisfaction tied-winner set intersect. Trials parallelize over a rayon
/// pool; results are identical for any thread count and bit-identical across
/// runs with the same seed.
pub fn correlation_experiment(config: &SimConfig) -> Result<SimReport> {
    config.validate()?;
    let m = config.candidates;
    let zero = || vec![0u64; config.metrics.len()];
    let counts = (0..config.trials)
        .into_par_iter()
        .fold(
            || (zero(), Vec::with_capacity(m)),
            |(mut acc, mut pairs), trial| {
                let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
                rng.set_stream(trial);
                fill_qualified_pairs(&mut rng, m, &config.distribution, &mut pairs);
                for (slot, metric) in acc.iter_mut().zip(&config.metrics) {
                    if satisfaction_matches_metric(&pairs, metric, config.variant) {
                        *slot += 1;
                    }
                }
                (acc, pairs)
            },
        )
        .map(|(acc, _)| acc)
        .reduce(zero, |mut a, b| {
            for (x, y) in a.iter_mut().zip(b) {
                *x += y;
            }
            a
        });
    Ok(SimReport {
        candidates: m,
        trials: config.trials,
        seed: config.seed,
        distribution: config.distribution.label(),
        variant: config.variant.label().to_string(),
        agreements: config
            .metrics
            .iter()
            .zip(counts)
            .map(|(metric, matches)| MetricAgreement {
                metric: metric.label(),
                matches,
                trials: config.trials,
                rate: matches as f64 / config.trials as f64,
            })
            .collect(),
    })
}

/// Run [`correlation_experiment`] across several candidate counts.
pub fn correlation_sweep(base: &SimConfig, candidate_counts: &[usize]) -> Result<Vec<SimReport>> {
    candidate_counts
        .iter()
        .map(|&m| {
            let mut config = base.clone();
            config.candidates = m;
            correlation_experiment(&config)
        })
        .collect()
}

/// An election where extra support flips the winner out.
///
/// `voter` moved `delta` of vote weight off their negative score on `rival`
/// and onto the standing winner -- strictly raising the winner's score -- yet
/// the perturbed election elects `new_winner` instead.
#[derive(Debug, Clone)]
pub struct Counterexample {
    pub election: Election,
    pub perturbed: Election,
    pub winner_before: crate::ballot::CandidateIndex,
    pub new_winner: crate::ballot::CandidateIndex,
    pub rival: crate::ballot::CandidateIndex,
    pub voter: usize,
    pub delta: f64,
}

impl Counterexample {
    /// Re-run both elections and confirm the flip still holds.
    pub fn verify(&self, params: &MetricParams) -> bool {
        let metric = MetricKind::Rational(*params);
        let before = pick_winner(&aggregate(&self.election), &metric, TieRule::Report);
        let after = pick_winner(&aggregate(&self.perturbed), &metric, TieRule::Report);
        matches!(
            (before, after),
            (Ok(b), Ok(a))
                if b.winner == Winner::Single(self.winner_before)
                && a.winner == Winner::Single(self.new_winner)
        ) && self.winner_before != self.new_winner
    }
}

fn random_normed_ballot(rng: &mut ChaCha8Rng, m: usize, norm: f64) -> Ballot {
    loop {
        let raw: Vec<f64> = (0..m).map(|_| rng.random_range(-1.0..1.0)).collect();
        let magnitude: f64 = raw.iter().map(|s| s.abs()).sum();
        if magnitude > 1e-3 {
            let scale = norm / magnitude;
            return Ballot::new(raw.into_iter().map(|s| s * scale).collect());
        }
    }
}

/// Search random electorates for a monotonicity violation of the given
/// metric: a ballot change that strictly favors the current winner yet
/// dethrones them.
///
/// Each trial draws a small electorate, finds its unique winner, then tries
/// every (voter, rival) reallocation that moves weight from a negative vote
/// on the rival to the voter's non-negative score on the winner. Returns the
/// first counterexample found within `trials`, or `None`.
pub fn monotonicity_search(
    params: &MetricParams,
    m: usize,
    trials: u64,
    seed: u64,
) -> Option<Counterexample> {
    assert!(m >= 2, "need at least 2 candidates");
    let metric = MetricKind::Rational(*params);
    let norm = DEFAULT_NORM;
    (0..trials).into_par_iter().find_map_first(|trial| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(trial);
        let voters = rng.random_range(3..=6);
        let ballots: Vec<Ballot> = (0..voters)
            .map(|_| random_normed_ballot(&mut rng, m, norm))
            .collect();
        let tally = {
            let mut pairs = vec![(0.0, 0.0); m];
            for ballot in &ballots {
                for (c, pair) in pairs.iter_mut().enumerate() {
                    pair.0 += ballot.positive(c);
                    pair.1 += ballot.negative(c);
                }
            }
            Tally::from_pairs(&pairs)
        };
        let winner = pick_winner(&tally, &metric, TieRule::Report)
            .ok()?
            .winner
            .single()?;

        for (voter, ballot) in ballots.iter().enumerate() {
            if ballot.scores()[winner.0] < 0.0 {
                continue;
            }
            for rival in 0..m {
                let against = ballot.negative(rival);
                if rival == winner.0 || against <= 0.0 {
                    continue;
                }
                // Full and half reallocation of the negative weight.
                for delta in [against, against / 2.0] {
                    let mut scores = ballot.scores().to_vec();
                    scores[winner.0] += delta;
                    scores[rival] += delta;
                    let mut perturbed_ballots = ballots.clone();
                    perturbed_ballots[voter] = Ballot::new(scores);
                    let perturbed = Election::new(
                        crate::ranked::default_names(m),
                        perturbed_ballots,
                        norm,
                        ValidationMode::Strict,
                    )
                    .expect("reallocation preserves the norm");
                    let outcome =
                        pick_winner(&aggregate(&perturbed), &metric, TieRule::Report).ok()?;
                    if let Some(new_winner) = outcome.winner.single() {
                        if new_winner != winner {
                            let election = Election::new(
                                crate::ranked::default_names(m),
                                ballots.clone(),
                                norm,
                                ValidationMode::Strict,
                            )
                            .expect("ballots were drawn normed");
                            return Some(Counterexample {
                                election,
                                perturbed,
                                winner_before: winner,
                                new_winner,
                                rival: crate::ballot::CandidateIndex(rival),
                                voter,
                                delta,
                            });
                        }
                    }
                }
            }
        }
        None
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn distribution_parsing_round_trips() {
        assert_eq!(
            PnDistribution::parse("uniform").unwrap(),
            PnDistribution::Uniform { lo: 0.0, hi: 1.0 }
        );
        assert_eq!(
            PnDistribution::parse("uniform:0.5,2").unwrap(),
            PnDistribution::Uniform { lo: 0.5, hi: 2.0 }
        );
        assert_eq!(
            PnDistribution::parse("int:5").unwrap(),
            PnDistribution::Integers { max: 5 }
        );
        for spec in ["uniform:2,1", "uniform:-1,1", "int:0", "gauss", "int:x"] {
            assert!(PnDistribution::parse(spec).is_err(), "{spec} should fail");
        }
        for dist in [
            PnDistribution::default(),
            PnDistribution::Uniform { lo: 0.5, hi: 2.0 },
            PnDistribution::Integers { max: 5 },
        ] {
            assert_eq!(PnDistribution::parse(&dist.label()).unwrap(), dist);
        }
    }

    #[test]
    fn random_tally_always_has_a_qualified_candidate() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let tally = random_tally(&mut rng, 3, &PnDistribution::default());
            assert!(tally.iter().any(|c| c.qualified()));
        }
    }

    #[test]
    fn non_admissible_metric_is_rejected_up_front() {
        let mut config = SimConfig::new(3, 10, 0);
        config.metrics = vec![MetricKind::rational(1.0, 2.0).unwrap()];
        assert_eq!(
            config.validate().unwrap_err(),
            Error::NonAdmissibleMetric {
                metric: "w:2,1".to_string(),
                m: 3
            }
        );
        config.allow_non_admissible = true;
        assert!(config.validate().is_ok());
    }

    #[test]
    fn same_seed_gives_identical_reports() {
        let mut config = SimConfig::new(4, 2_000, 42);
        config.allow_non_admissible = true;
        let a = correlation_experiment(&config).unwrap();
        let b = correlation_experiment(&config).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn report_is_independent_of_worker_count() {
        let mut config = SimConfig::new(3, 2_000, 7);
        config.metrics = vec![MetricKind::popularity(), MetricKind::rational(1.0, 1.0).unwrap()];
        let parallel = correlation_experiment(&config).unwrap();
        let single = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap()
            .install(|| correlation_experiment(&config).unwrap());
        assert_eq!(parallel, single);
    }

    #[test]
    fn two_candidate_agreement_is_high_but_not_total() {
        // With two candidates every metric orders (P, N) pairs roughly like
        // satisfaction's P - 2N, so agreement should be well above chance,
        // yet the orders are not identical, so it stays below 1.
        let mut config = SimConfig::new(2, 2_000, 3);
        config.allow_non_admissible = true;
        let report = correlation_experiment(&config).unwrap();
        for agreement in &report.agreements {
            assert!(agreement.rate > 0.5, "{}: {}", agreement.metric, agreement.rate);
            assert!(agreement.matches <= agreement.trials);
        }
        assert!(report.rate("w:0,1").unwrap() < 1.0);
    }

    #[test]
    fn match_check_handles_ties_and_disqualification() {
        // Satisfaction argmax is A (5 - 0 = 5 beats 4 - 2 + ... ); metric
        // argmax for popularity is also A; B disqualified either way.
        let pairs = [(5.0, 0.0), (2.0, 4.0)];
        assert!(satisfaction_matches_metric(
            &pairs,
            &MetricKind::popularity(),
            SatisfactionVariant::S
        ));
        // A and B tie on popularity 3; satisfaction prefers B (lower N), but
        // the tied sets still intersect.
        let pairs = [(5.0, 2.0), (4.0, 1.0)];
        assert!(satisfaction_matches_metric(
            &pairs,
            &MetricKind::popularity(),
            SatisfactionVariant::S
        ));
        // Popularity picks A (4 vs 3), satisfaction picks B (P - 2N: -2 vs 1).
        let pairs = [(10.0, 6.0), (4.0, 1.5)];
        assert!(!satisfaction_matches_metric(
            &pairs,
            &MetricKind::popularity(),
            SatisfactionVariant::S
        ));
    }

    #[test]
    fn sbar_agreement_with_popularity_is_total() {
        // The adjusted satisfaction argmax is the popularity argmax, so the
        // popularity row must match on every single trial.
        let mut config = SimConfig::new(5, 3_000, 11);
        config.metrics = vec![MetricKind::popularity()];
        config.variant = SatisfactionVariant::SBar;
        let report = correlation_experiment(&config).unwrap();
        assert_relative_eq!(report.agreements[0].rate, 1.0);
    }

    #[test]
    fn monotonicity_counterexample_exists_for_polarity_penalties() {
        let params = MetricParams::new(1.0, 1.0).unwrap();
        let found = monotonicity_search(&params, 3, 200_000, 42)
            .expect("polarity-penalized metrics are non-monotone");
        assert!(found.verify(&params));
        // The reallocation really did raise the winner's aggregate P.
        let before = aggregate(&found.election);
        let after = aggregate(&found.perturbed);
        let w = found.winner_before;
        assert!(after.get(w).unwrap().positive > before.get(w).unwrap().positive);
    }

    #[test]
    fn popularity_is_monotone_under_reallocation() {
        // Moving weight onto the winner never lowers the winner's
        // popularity gap against the rival (both gain the same delta) or
        // anyone else, so no counterexample can exist.
        let params = MetricParams::new(1.0, 0.0).unwrap();
        assert!(monotonicity_search(&params, 3, 20_000, 42).is_none());
    }
}
