//! Winning metrics over aggregated `(P, N)` tallies.
//!
//! The workhorse is the two-parameter rational metric
//!
//! ```text
//! W(P, N) = (P - c N) / (1 + b N / P)
//! ```
//!
//! where `c` weighs negative votes in the numerator and `b` penalizes
//! polarity `N / P` in the denominator. `b = 0, c = 1` reduces to plain
//! popularity `P - N`.
//!
//! Not every `(c, b)` pair is usable: if the penalty is too aggressive, a
//! single voter's negative votes can overturn an otherwise unanimous
//! winner. [`is_admissible`] tests the exact condition for a given number of
//! candidates, and [`max_penalty_boundary`] traces the largest usable `b`
//! for each `c`. For two candidates the admissible region is exactly
//! `c + b <= 1`; at `c = 1` it grows to `b <= m - 2`.

use std::fmt;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::ballot::{polarity, CandidateIndex, Tally};
use crate::error::{Error, Result};

/// Absolute tolerance under which two metric values count as tied.
pub const TIE_TOLERANCE: f64 = 1e-9;

/// Slack for admissibility comparisons, so that pairs lying exactly on the
/// boundary (which is part of the admissible region) are not rejected over
/// last-bit rounding. Kept tiny and scale-aware: near the region's edges the
/// margin of inadmissibility grows only quadratically, so every extra digit
/// of slack costs half a digit of boundary accuracy.
fn admissibility_slack(b: f64, bound: f64) -> f64 {
    1e-14 * (1.0 + bound + b)
}

/// Weights of the rational winning metric.
///
/// `c` scales negative votes in the numerator, `b` scales the polarity
/// penalty in the denominator. Beware the flag spelling `w:<b>,<c>` used by
/// the CLI and [`MetricKind::parse`]: it names `b` first, `c` second.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricParams {
    pub c: f64,
    pub b: f64,
}

impl MetricParams {
    /// Validates `0 <= c <= 1` and `b >= 0`. A `c` above 1 lets a lone
    /// negative vote cancel more than one positive vote, which no candidate
    /// count can compensate.
    pub fn new(c: f64, b: f64) -> Result<Self> {
        if !c.is_finite() || !b.is_finite() {
            return Err(Error::InvalidMetricParams {
                c,
                b,
                reason: "parameters must be finite",
            });
        }
        if c < 0.0 || b < 0.0 {
            return Err(Error::InvalidMetricParams {
                c,
                b,
                reason: "parameters must be non-negative",
            });
        }
        if c > 1.0 {
            return Err(Error::InvalidMetricParams {
                c,
                b,
                reason: "c must not exceed 1",
            });
        }
        Ok(MetricParams { c, b })
    }
}

/// `(P - cN) / (1 + b N/P)`.
///
/// With `N = 0` this is exactly `P`; the empty tally `(0, 0)` maps to 0. For
/// disqualified candidates (`N > P`) the value is still computed so reports
/// can show it, but winner selection never considers it.
pub fn winning_metric(p: f64, n: f64, params: &MetricParams) -> f64 {
    rational_metric(p, n, params.c, params.b)
}

fn rational_metric(p: f64, n: f64, c: f64, b: f64) -> f64 {
    if p == 0.0 && n == 0.0 {
        return 0.0;
    }
    // polarity() returns +inf for p = 0, n > 0; guard b = 0 so that the
    // denominator never becomes 0 * inf.
    let denom = if b == 0.0 {
        1.0
    } else {
        1.0 + b * polarity(p, n)
    };
    (p - c * n) / denom
}

/// The metric families understood by winner selection and the simulator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MetricKind {
    /// The rational metric with explicit weights.
    Rational(MetricParams),
    /// `(P - N) / exp(N / P)`.
    ExpPolarity,
    /// `(P - N)^2 / (P + N)`.
    SquareOverSum,
    /// `(P - N)^(1 - N/P)`. Kept for comparison; it is not scale linear, so
    /// doubling every ballot changes the ranking. Winner selection accepts
    /// it only behind an explicit override.
    PowerForm,
}

impl MetricKind {
    pub fn rational(c: f64, b: f64) -> Result<Self> {
        Ok(MetricKind::Rational(MetricParams::new(c, b)?))
    }

    /// Plain popularity `P - N`, i.e. `c = 1, b = 0`.
    pub fn popularity() -> Self {
        MetricKind::Rational(MetricParams { c: 1.0, b: 0.0 })
    }

    /// The four rational metrics used throughout the correlation survey:
    /// `w:0,1`, `w:1,1`, `w:2,1` and `w:0.5,0.5`.
    pub fn survey_set() -> Vec<MetricKind> {
        vec![
            MetricKind::Rational(MetricParams { c: 1.0, b: 0.0 }),
            MetricKind::Rational(MetricParams { c: 1.0, b: 1.0 }),
            MetricKind::Rational(MetricParams { c: 1.0, b: 2.0 }),
            MetricKind::Rational(MetricParams { c: 0.5, b: 0.5 }),
        ]
    }

    /// Evaluate the metric on one candidate's totals.
    pub fn evaluate(&self, p: f64, n: f64) -> f64 {
        match self {
            MetricKind::Rational(params) => winning_metric(p, n, params),
            MetricKind::ExpPolarity => (p - n) * (-polarity(p, n)).exp(),
            MetricKind::SquareOverSum => {
                if p + n == 0.0 {
                    0.0
                } else {
                    let d = p - n;
                    d * d / (p + n)
                }
            }
            // Negative base with fractional exponent yields NaN; that only
            // happens for disqualified candidates, whose value is diagnostic.
            MetricKind::PowerForm => (p - n).powf(1.0 - polarity(p, n)),
        }
    }

    /// Whether the metric may be used to pick winners among `m` candidates.
    ///
    /// Rational metrics defer to [`is_admissible`]; the exponential and
    /// square-over-sum forms are scale linear and bounded by popularity, so
    /// they are always usable; the power form is ruled out entirely because
    /// it is not scale linear.
    pub fn admissible_for(&self, m: usize) -> bool {
        match self {
            MetricKind::Rational(params) => is_admissible(params.c, params.b, m),
            MetricKind::ExpPolarity | MetricKind::SquareOverSum => true,
            MetricKind::PowerForm => false,
        }
    }

    /// Parse a metric spec: `w:<b>,<c>` (note the order), `exp`, `sqsum` or
    /// `power`.
    pub fn parse(spec: &str) -> Result<Self> {
        match spec {
            "exp" => return Ok(MetricKind::ExpPolarity),
            "sqsum" => return Ok(MetricKind::SquareOverSum),
            "power" => return Ok(MetricKind::PowerForm),
            _ => {}
        }
        let rest = spec
            .strip_prefix("w:")
            .ok_or_else(|| Error::MetricSpec(spec.to_string()))?;
        let (b_str, c_str) = rest
            .split_once(',')
            .ok_or_else(|| Error::MetricSpec(spec.to_string()))?;
        let b: f64 = b_str
            .trim()
            .parse()
            .map_err(|_| Error::MetricSpec(spec.to_string()))?;
        let c: f64 = c_str
            .trim()
            .parse()
            .map_err(|_| Error::MetricSpec(spec.to_string()))?;
        MetricKind::rational(c, b)
    }

    /// Canonical spec string, inverse of [`MetricKind::parse`].
    pub fn label(&self) -> String {
        match self {
            MetricKind::Rational(p) => format!("w:{},{}", p.b, p.c),
            MetricKind::ExpPolarity => "exp".to_string(),
            MetricKind::SquareOverSum => "sqsum".to_string(),
            MetricKind::PowerForm => "power".to_string(),
        }
    }
}

impl fmt::Display for MetricKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// How to resolve ties among top-scoring candidates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TieRule {
    /// Report the whole tied set.
    #[default]
    Report,
    /// Deterministically pick the tied candidate with the lowest index.
    LowestIndex,
}

/// Outcome of winner selection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Winner {
    Single(CandidateIndex),
    Tie(Vec<CandidateIndex>),
}

impl Winner {
    pub(crate) fn from_set(mut set: Vec<CandidateIndex>, rule: TieRule) -> Winner {
        debug_assert!(!set.is_empty());
        if set.len() == 1 {
            Winner::Single(set[0])
        } else {
            match rule {
                TieRule::Report => Winner::Tie(set),
                TieRule::LowestIndex => Winner::Single(set.remove(0)),
            }
        }
    }

    pub fn candidates(&self) -> &[CandidateIndex] {
        match self {
            Winner::Single(c) => std::slice::from_ref(c),
            Winner::Tie(set) => set,
        }
    }

    pub fn contains(&self, index: CandidateIndex) -> bool {
        self.candidates().contains(&index)
    }

    pub fn single(&self) -> Option<CandidateIndex> {
        match self {
            Winner::Single(c) => Some(*c),
            Winner::Tie(_) => None,
        }
    }
}

/// Winner selection result: the winner (or tie set), the metric value of
/// every candidate, and which candidates were disqualified.
#[derive(Debug, Clone, PartialEq)]
pub struct WinnerResult {
    pub winner: Winner,
    /// Metric values index-aligned with the tally; disqualified candidates
    /// keep their diagnostic value here.
    pub values: Vec<f64>,
    pub disqualified: Vec<CandidateIndex>,
}

/// Indices whose value is within `tol` of the best eligible value.
///
/// Returns an empty vector when nothing is eligible.
pub(crate) fn argmax_with_ties(values: &[f64], eligible: &[bool], tol: f64) -> Vec<usize> {
    debug_assert_eq!(values.len(), eligible.len());
    let mut best = f64::NEG_INFINITY;
    let mut any = false;
    for (i, &v) in values.iter().enumerate() {
        if eligible[i] && v > best {
            best = v;
            any = true;
        }
    }
    if !any {
        return Vec::new();
    }
    values
        .iter()
        .enumerate()
        .filter(|&(i, &v)| eligible[i] && v >= best - tol)
        .map(|(i, _)| i)
        .collect()
}

/// Pick the winner: the qualified candidate maximizing the metric.
///
/// Candidates with more negative than positive votes are disqualified from
/// winning no matter their metric value. Values within [`TIE_TOLERANCE`] of
/// the maximum count as tied.
pub fn pick_winner(tally: &Tally, metric: &MetricKind, tie_rule: TieRule) -> Result<WinnerResult> {
    let values: Vec<f64> = tally
        .iter()
        .map(|c| metric.evaluate(c.positive, c.negative))
        .collect();
    let eligible: Vec<bool> = tally.iter().map(|c| c.qualified()).collect();
    let top = argmax_with_ties(&values, &eligible, TIE_TOLERANCE);
    if top.is_empty() {
        return Err(Error::NoQualifiedCandidate);
    }
    let disqualified = eligible
        .iter()
        .enumerate()
        .filter(|&(_, &q)| !q)
        .map(|(i, _)| CandidateIndex(i))
        .collect();
    Ok(WinnerResult {
        winner: Winner::from_set(top.into_iter().map(CandidateIndex).collect(), tie_rule),
        values,
        disqualified,
    })
}

/// Largest value of `a x - b x^2` over `x` in `[0, 1]`.
fn peak_excess(c: f64, b: f64, m: usize) -> f64 {
    let a = (m as f64 - 1.0) * c + b - 1.0;
    if b == 0.0 {
        return a.max(0.0);
    }
    let vertex = a / (2.0 * b);
    if vertex <= 0.0 {
        0.0
    } else if vertex >= 1.0 {
        a - b
    } else {
        a * a / (4.0 * b)
    }
}

/// Exact admissibility of `(c, b)` for `m` candidates.
///
/// A pair is admissible when no single ballot can push a candidate with
/// unanimous support of all other voters below another candidate, i.e. when
///
/// ```text
/// m - 2  >=  ((m-1)c + b - 1) x - b x^2      for all x in [0, 1]
/// ```
///
/// Decided here by locating the parabola's vertex. [`is_admissible_grid`]
/// answers the same question by brute force; the two must agree.
pub fn is_admissible(c: f64, b: f64, m: usize) -> bool {
    assert!(m >= 2, "admissibility needs at least two candidates");
    assert!(c >= 0.0 && b >= 0.0, "weights must be non-negative");
    let bound = m as f64 - 2.0;
    peak_excess(c, b, m) <= bound + admissibility_slack(b, bound)
}

/// Grid-scan admissibility check, sampling `x` every `grid_step`.
pub fn is_admissible_grid(c: f64, b: f64, m: usize, grid_step: f64) -> bool {
    assert!(m >= 2, "admissibility needs at least two candidates");
    assert!(c >= 0.0 && b >= 0.0, "weights must be non-negative");
    assert!(
        grid_step > 0.0 && grid_step <= 1.0,
        "grid step must be in (0, 1]"
    );
    let n = (1.0 / grid_step).round().max(1.0) as u64;
    let a = (m as f64 - 1.0) * c + b - 1.0;
    let bound = (m as f64 - 2.0) + admissibility_slack(b, m as f64 - 2.0);
    (0..=n).all(|i| {
        let x = i as f64 / n as f64;
        a * x - b * x * x <= bound
    })
}

/// Largest admissible `b` for the given candidate count and `c`, located by
/// bisection to an absolute tolerance of about 1e-6.
///
/// At `c = 1` the peak of the constraint quadratic meets the bound
/// tangentially, which square-roots the comparison slack inside
/// [`is_admissible`]: the located boundary can be off by a few parts in a
/// million there (about 2e-6 by `m = 10`). Away from `c = 1` the crossing
/// is transversal and the result is much tighter.
pub fn max_penalty_boundary(m: usize, c: f64) -> f64 {
    assert!(m >= 2, "boundary needs at least two candidates");
    assert!((0.0..=1.0).contains(&c), "c must be in [0, 1]");
    // b = 0 is admissible for every c <= 1.
    let mut lo = 0.0f64;
    let mut hi = 1.0f64;
    while is_admissible(c, hi, m) {
        lo = hi;
        hi *= 2.0;
        assert!(hi < 1e12, "admissible region unexpectedly unbounded");
    }
    // Converge well past the advertised 1e-6 so the comparison slack inside
    // is_admissible stays the dominant error term.
    while hi - lo > 1e-8 {
        let mid = 0.5 * (lo + hi);
        if is_admissible(c, mid, m) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// The two-candidate stress test behind the admissibility condition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OverrideCheck {
    /// Metric of the candidate loved by voter 1 (P = 10) and hit with `x`
    /// negative votes by voter 2.
    pub a_metric: f64,
    /// Metric of the rival on whom voter 2 spends the remaining `10 - x`.
    pub b_metric: f64,
    /// Whether the rival overtakes, i.e. whether one dissenting voter
    /// overrides a unanimous favorite.
    pub b_wins: bool,
}

/// Evaluate the two-voter scenario: voter 1 gives candidate A the full norm
/// of 10; voter 2 casts `x` against A and `10 - x` for B.
///
/// For every admissible `(c, b)` pair at `m = 2`, B must never win.
pub fn two_voter_override_check(c: f64, b: f64, x: f64) -> OverrideCheck {
    assert!((0.0..=10.0).contains(&x), "x must be in [0, 10]");
    assert!(c >= 0.0 && b >= 0.0, "weights must be non-negative");
    let a_metric = rational_metric(10.0, x, c, b);
    let b_metric = rational_metric(10.0 - x, 0.0, c, b);
    OverrideCheck {
        a_metric,
        b_metric,
        b_wins: b_metric > a_metric + TIE_TOLERANCE,
    }
}

/// Result of probing a metric for scale linearity.
#[derive(Debug, Clone, PartialEq)]
pub struct ScaleLinearityReport {
    pub metric: String,
    pub samples: usize,
    pub failures: usize,
    pub max_relative_error: f64,
    pub pass: bool,
}

/// Check `metric(k P, k N) = k * metric(P, N)` on random qualified tallies
/// for `k` in {2, 10, 100}.
///
/// Any metric used for winner selection must pass, otherwise the outcome
/// would depend on turnout rather than vote shares. The sampling is
/// deterministic, so the report is reproducible.
pub fn scale_linearity_check(metric: &MetricKind, samples: usize) -> ScaleLinearityReport {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5ca1e);
    let mut failures = 0usize;
    let mut max_rel = 0.0f64;
    for _ in 0..samples {
        let p: f64 = rng.random_range(0.5..20.0);
        let n: f64 = rng.random_range(0.0..p);
        let base = metric.evaluate(p, n);
        for k in [2.0, 10.0, 100.0] {
            let scaled = metric.evaluate(k * p, k * n);
            let expect = k * base;
            let rel = if expect == 0.0 {
                scaled.abs()
            } else {
                ((scaled - expect) / expect).abs()
            };
            max_rel = max_rel.max(rel);
            if rel > 1e-9 {
                failures += 1;
            }
        }
    }
    ScaleLinearityReport {
        metric: metric.label(),
        samples,
        failures,
        max_relative_error: max_rel,
        pass: failures == 0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ballot::Tally;
    use approx::assert_relative_eq;

    fn w(c: f64, b: f64) -> MetricParams {
        MetricParams::new(c, b).unwrap()
    }

    #[test]
    fn rational_metric_worked_values() {
        assert_relative_eq!(winning_metric(10.0, 5.0, &w(1.0, 1.0)), 10.0 / 3.0);
        assert_relative_eq!(winning_metric(11.0, 5.0, &w(1.0, 1.0)), 66.0 / 16.0);
        assert_relative_eq!(winning_metric(11.0, 5.0, &w(1.0, 2.0)), 66.0 / 21.0);
        assert_relative_eq!(winning_metric(11.0, 5.0, &w(0.5, 0.5)), 93.5 / 13.5);
        // No negatives: the metric is exactly P for every parameter choice.
        assert_eq!(winning_metric(7.25, 0.0, &w(0.5, 3.0)), 7.25);
        assert_eq!(winning_metric(0.0, 0.0, &w(1.0, 1.0)), 0.0);
    }

    #[test]
    fn rational_metric_handles_pure_negatives() {
        // Only negative votes: the value is diagnostic but must stay defined.
        assert_eq!(winning_metric(0.0, 4.0, &w(1.0, 0.0)), -4.0);
        let v = winning_metric(0.0, 4.0, &w(1.0, 1.0));
        assert_eq!(v, 0.0);
        assert!(v.is_sign_negative());
    }

    #[test]
    fn metric_params_are_validated() {
        assert!(MetricParams::new(1.0, 0.0).is_ok());
        assert!(MetricParams::new(1.1, 0.0).is_err());
        assert!(MetricParams::new(-0.1, 1.0).is_err());
        assert!(MetricParams::new(0.5, -1.0).is_err());
        assert!(MetricParams::new(0.5, f64::NAN).is_err());
    }

    #[test]
    fn metric_spec_round_trips() {
        for spec in ["w:0,1", "w:1,1", "w:2,1", "w:0.5,0.5", "exp", "sqsum", "power"] {
            let kind = MetricKind::parse(spec).unwrap();
            assert_eq!(kind.label(), spec);
        }
        // The flag order is b first, then c.
        match MetricKind::parse("w:2,1").unwrap() {
            MetricKind::Rational(p) => {
                assert_eq!(p.b, 2.0);
                assert_eq!(p.c, 1.0);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(MetricKind::parse("w:1").is_err());
        assert!(MetricKind::parse("w:1,2").is_err(), "c = 2 must be rejected");
        assert!(MetricKind::parse("banana").is_err());
    }

    #[test]
    fn alternate_metric_values() {
        assert_relative_eq!(MetricKind::ExpPolarity.evaluate(10.0, 0.0), 10.0);
        assert_relative_eq!(
            MetricKind::ExpPolarity.evaluate(10.0, 5.0),
            5.0 * (-0.5f64).exp()
        );
        assert_relative_eq!(MetricKind::SquareOverSum.evaluate(10.0, 5.0), 25.0 / 15.0);
        assert_eq!(MetricKind::SquareOverSum.evaluate(0.0, 0.0), 0.0);
        // The power form is not scale linear: doubling the tally does not
        // double the value.
        assert_relative_eq!(MetricKind::PowerForm.evaluate(4.0, 2.0), 2.0f64.sqrt());
        assert_relative_eq!(MetricKind::PowerForm.evaluate(8.0, 4.0), 2.0);
    }

    #[test]
    fn picks_highest_qualified_candidate() {
        // A has the most raw support but also the most opposition.
        let tally = Tally::from_pairs(&[(10.0, 5.0), (4.0, 0.0), (1.0, 0.0)]);
        let result = pick_winner(
            &tally,
            &MetricKind::Rational(w(1.0, 1.0)),
            TieRule::Report,
        )
        .unwrap();
        assert_eq!(result.winner, Winner::Single(CandidateIndex(1)));
        assert_relative_eq!(result.values[0], 10.0 / 3.0);
        assert_relative_eq!(result.values[1], 4.0);
        assert_relative_eq!(result.values[2], 1.0);
        assert!(result.disqualified.is_empty());
    }

    #[test]
    fn disqualified_candidates_cannot_win() {
        // A's metric value is high but N > P disqualifies it.
        let tally = Tally::from_pairs(&[(10.0, 11.0), (1.0, 0.0)]);
        let result = pick_winner(&tally, &MetricKind::popularity(), TieRule::Report).unwrap();
        assert_eq!(result.winner, Winner::Single(CandidateIndex(1)));
        assert_eq!(result.disqualified, vec![CandidateIndex(0)]);
        // The diagnostic value for A is still reported.
        assert_relative_eq!(result.values[0], -1.0);
    }

    #[test]
    fn no_qualified_candidate_is_an_error() {
        let tally = Tally::from_pairs(&[(3.0, 7.0), (3.0, 7.0)]);
        let err = pick_winner(&tally, &MetricKind::popularity(), TieRule::Report).unwrap_err();
        assert_eq!(err, Error::NoQualifiedCandidate);
    }

    #[test]
    fn tie_rules() {
        let tally = Tally::from_pairs(&[(5.0, 0.0), (5.0, 0.0), (1.0, 0.0)]);
        let report = pick_winner(&tally, &MetricKind::popularity(), TieRule::Report).unwrap();
        assert_eq!(
            report.winner,
            Winner::Tie(vec![CandidateIndex(0), CandidateIndex(1)])
        );
        let lowest = pick_winner(&tally, &MetricKind::popularity(), TieRule::LowestIndex).unwrap();
        assert_eq!(lowest.winner, Winner::Single(CandidateIndex(0)));
    }

    #[test]
    fn near_ties_within_tolerance_count_as_ties() {
        let tally = Tally::from_pairs(&[(5.0, 0.0), (5.0 - 1e-10, 0.0)]);
        let report = pick_winner(&tally, &MetricKind::popularity(), TieRule::Report).unwrap();
        assert!(matches!(report.winner, Winner::Tie(_)));
    }

    #[test]
    fn empty_tally_has_no_winner() {
        let tally = Tally::from_pairs(&[(0.0, 0.0), (0.0, 0.0)]);
        // Nobody voted: everyone is qualified at polarity 0 and ties at 0.
        let report = pick_winner(&tally, &MetricKind::popularity(), TieRule::Report).unwrap();
        assert_eq!(
            report.winner,
            Winner::Tie(vec![CandidateIndex(0), CandidateIndex(1)])
        );
    }

    #[test]
    fn two_candidate_admissibility_is_the_c_plus_b_line() {
        // Dyadic lattice: c + b is exact in floating point, so the reference
        // predicate has no rounding of its own.
        for i in 0..=128 {
            for j in 0..=128 {
                let c = i as f64 / 128.0;
                let b = j as f64 / 64.0;
                assert_eq!(
                    is_admissible(c, b, 2),
                    c + b <= 1.0,
                    "mismatch at c={c}, b={b}"
                );
            }
        }
    }

    #[test]
    fn admissibility_worked_values() {
        assert!(is_admissible(1.0, 1.0, 3), "the boundary itself is usable");
        assert!(!is_admissible(1.0, 1.5, 3));
        assert!(!is_admissible(1.0, 1.0, 2));
        assert!(is_admissible(1.0, 0.0, 2));
        assert!(is_admissible(0.0, 0.0, 2));
        for m in 3..=20 {
            assert!(is_admissible(1.0, 1.0, m), "w:1,1 usable for m={m}");
        }
    }

    #[test]
    fn at_full_negative_weight_the_boundary_is_m_minus_2() {
        for m in 2..=6 {
            let limit = m as f64 - 2.0;
            let mut b = 0.0;
            while b <= limit + 1e-12 {
                assert!(is_admissible(1.0, b, m), "b={b} under limit for m={m}");
                b += 0.25;
            }
            assert!(!is_admissible(1.0, limit + 0.01, m));
        }
    }

    #[test]
    fn closed_form_and_grid_scan_agree() {
        for m in [2usize, 3, 4, 5] {
            let b_hi = 2.0 * (m as f64 - 2.0) + 2.0;
            for i in 0..30 {
                for j in 0..30 {
                    let c = i as f64 / 29.0;
                    let b = b_hi * j as f64 / 29.0;
                    assert_eq!(
                        is_admissible(c, b, m),
                        is_admissible_grid(c, b, m, 1e-3),
                        "mismatch at c={c}, b={b}, m={m}"
                    );
                }
            }
        }
    }

    #[test]
    fn boundary_bisection_matches_known_curves() {
        // m = 2: b_max = 1 - c.
        for i in 0..=4 {
            let c = i as f64 * 0.25;
            assert!((max_penalty_boundary(2, c) - (1.0 - c)).abs() < 1e-6);
        }
        assert!((max_penalty_boundary(3, 1.0) - 1.0).abs() < 1e-6);
        assert!((max_penalty_boundary(4, 1.0) - 2.0).abs() < 1e-6);
        // m = 3, c = 0: the vertex condition gives b^2 - 6b + 1 <= 0, so the
        // largest root 3 + 2*sqrt(2) is the boundary.
        let expect = 3.0 + 2.0 * 2.0f64.sqrt();
        assert!((max_penalty_boundary(3, 0.0) - expect).abs() < 1e-6);
    }

    #[test]
    fn boundary_is_monotone() {
        // Non-increasing in c for fixed m.
        for m in [2, 3, 5] {
            let mut prev = f64::INFINITY;
            for i in 0..=10 {
                let c = i as f64 / 10.0;
                let b = max_penalty_boundary(m, c);
                assert!(b <= prev + 1e-6, "b_max must not grow with c (m={m})");
                prev = b;
            }
        }
        // Non-decreasing in m for fixed c.
        for &c in &[0.0, 0.5, 1.0] {
            let mut prev = 0.0;
            for m in 2..=8 {
                let b = max_penalty_boundary(m, c);
                assert!(b >= prev - 1e-6, "b_max must not shrink with m (c={c})");
                prev = b;
            }
        }
    }

    #[test]
    fn override_check_worked_values() {
        // Popularity: voter 2's x against A exactly cancels x for B.
        let check = two_voter_override_check(1.0, 0.0, 5.0);
        assert_relative_eq!(check.a_metric, 5.0);
        assert_relative_eq!(check.b_metric, 5.0);
        assert!(!check.b_wins);
        // With a polarity penalty the dissenter overrides the unanimous
        // favorite; that is exactly why (1,1) is inadmissible at m = 2.
        let check = two_voter_override_check(1.0, 1.0, 5.0);
        assert_relative_eq!(check.a_metric, 10.0 / 3.0);
        assert_relative_eq!(check.b_metric, 5.0);
        assert!(check.b_wins);
        // x = 0 is always a tie between P = 10 and P = 10.
        assert!(!two_voter_override_check(1.0, 1.0, 0.0).b_wins);
    }

    #[test]
    fn admissible_pairs_never_let_the_dissenter_win() {
        for i in 0..=20 {
            for j in 0..=20 {
                let c = i as f64 / 20.0;
                let b = j as f64 / 20.0;
                if !is_admissible(c, b, 2) {
                    continue;
                }
                for k in 0..=100 {
                    let x = k as f64 / 10.0;
                    let check = two_voter_override_check(c, b, x);
                    assert!(
                        !check.b_wins,
                        "override at c={c}, b={b}, x={x}: {check:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn scale_linearity_verdicts() {
        assert!(scale_linearity_check(&MetricKind::parse("w:1,1").unwrap(), 200).pass);
        assert!(scale_linearity_check(&MetricKind::ExpPolarity, 200).pass);
        assert!(scale_linearity_check(&MetricKind::SquareOverSum, 200).pass);
        let power = scale_linearity_check(&MetricKind::PowerForm, 200);
        assert!(!power.pass);
        assert!(power.failures > 0);
    }

    #[test]
    fn metric_is_monotone_in_p_and_n() {
        let h = 1e-3;
        for params in [w(1.0, 1.0), w(1.0, 2.0), w(0.5, 0.5), w(1.0, 0.0), w(0.0, 1.0)] {
            for pi in 1..=10 {
                let p = pi as f64;
                let mut n = 0.0;
                while n < p {
                    let base = winning_metric(p, n, &params);
                    assert!(
                        winning_metric(p + h, n, &params) > base,
                        "not increasing in P at ({p}, {n}) for {params:?}"
                    );
                    assert!(
                        winning_metric(p, n + h, &params) < base,
                        "not decreasing in N at ({p}, {n}) for {params:?}"
                    );
                    n += 0.5;
                }
            }
        }
    }

    #[test]
    fn with_full_negative_weight_lower_polarity_wins_at_equal_popularity() {
        // At c = 1 the numerator is exactly the popularity, so between
        // equally popular candidates the polarity penalty decides.
        for b in [0.5, 1.0, 2.0] {
            let params = w(1.0, b);
            for d in [1.0, 4.0] {
                let mut prev = f64::INFINITY;
                for n in [0.0, 1.0, 2.0, 5.0, 9.0] {
                    let v = winning_metric(d + n, n, &params);
                    assert!(v < prev, "polarity penalty not strict at b={b}, n={n}");
                    prev = v;
                }
            }
        }
        // With c < 1 that guarantee disappears: a high-turnout polarizing
        // candidate can outscore a calm one of equal popularity.
        let params = w(0.0, 1.0);
        let calm = winning_metric(2.0, 1.0, &params);
        let polarizing = winning_metric(10.0, 9.0, &params);
        assert!(polarizing > calm);
    }

    #[test]
    fn survey_set_admissibility_depends_on_field_size() {
        let set = MetricKind::survey_set();
        // w:2,1 sits outside the admissible region for 3 candidates but on
        // its boundary for 4.
        assert!(!set[2].admissible_for(3));
        assert!(set[2].admissible_for(4));
        assert!(set.iter().all(|k| k.admissible_for(5)));
        assert!(!MetricKind::PowerForm.admissible_for(5));
    }
}
