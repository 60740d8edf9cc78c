//! Ballots, elections and vote aggregation.
//!
//! A ballot assigns one signed score to every candidate. Positive scores are
//! votes for a candidate, negative scores are votes against, and zero is an
//! abstention on that candidate. The score magnitudes of a ballot must sum to
//! the election's norm (10 unless the election says otherwise), so every voter
//! spends exactly the same total voting weight and only chooses how to split
//! it.
//!
//! Aggregation adds the positive scores of each candidate into `P` and the
//! magnitudes of the negative scores into `N`. Everything downstream (winning
//! metrics, satisfaction, simulation) works on these per-candidate `(P, N)`
//! pairs.

use std::fmt;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Norm used when an election does not declare one.
pub const DEFAULT_NORM: f64 = 10.0;

/// Absolute tolerance for the norm check and for score comparisons.
pub const NORM_TOLERANCE: f64 = 1e-9;

/// Index of a candidate in the election's roster.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CandidateIndex(pub usize);

impl fmt::Display for CandidateIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// One voter's signed scores, index-aligned with the candidate roster.
#[derive(Debug, Clone, PartialEq)]
pub struct Ballot {
    scores: Vec<f64>,
}

impl Ballot {
    pub fn new(scores: Vec<f64>) -> Self {
        Ballot { scores }
    }

    pub fn scores(&self) -> &[f64] {
        &self.scores
    }

    pub fn len(&self) -> usize {
        self.scores.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scores.is_empty()
    }

    /// Positive part of the score for `candidate`.
    pub fn positive(&self, candidate: usize) -> f64 {
        self.scores[candidate].max(0.0)
    }

    /// Magnitude of the negative part of the score for `candidate`.
    pub fn negative(&self, candidate: usize) -> f64 {
        (-self.scores[candidate]).max(0.0)
    }

    /// Sum of score magnitudes, the quantity the norm constrains.
    pub fn magnitude(&self) -> f64 {
        self.scores.iter().map(|s| s.abs()).sum()
    }
}

impl From<Vec<f64>> for Ballot {
    fn from(scores: Vec<f64>) -> Self {
        Ballot::new(scores)
    }
}

/// How strictly ballots are validated against the norm.
///
/// Lenient mode exists for data sets that are known to contain small norm
/// violations: the ballot is accepted and the deviation reported instead of
/// rejected. Everything else (shape, finiteness) is still enforced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ValidationMode {
    #[default]
    Strict,
    Lenient,
}

/// A norm violation accepted under lenient validation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormDeviation {
    /// Index of the offending ballot, when validated as part of an election.
    pub ballot: Option<usize>,
    /// What the magnitudes actually sum to.
    pub actual: f64,
    /// What they should have summed to.
    pub norm: f64,
}

/// Check one ballot against the norm.
///
/// Returns `Ok(None)` for a clean ballot and, in lenient mode,
/// `Ok(Some(deviation))` for a ballot whose magnitudes miss the norm. Strict
/// mode turns that deviation into an error. Empty ballots and non-finite
/// scores are rejected in both modes.
pub fn validate_ballot(
    ballot: &Ballot,
    norm: f64,
    mode: ValidationMode,
) -> Result<Option<NormDeviation>> {
    validate_ballot_at(ballot, norm, mode, None)
}

fn validate_ballot_at(
    ballot: &Ballot,
    norm: f64,
    mode: ValidationMode,
    index: Option<usize>,
) -> Result<Option<NormDeviation>> {
    if ballot.is_empty() {
        return Err(Error::EmptyBallot);
    }
    if let Some(candidate) = ballot.scores().iter().position(|s| !s.is_finite()) {
        return Err(Error::NonFiniteScore {
            ballot: index,
            candidate,
        });
    }
    let actual = ballot.magnitude();
    if (actual - norm).abs() <= NORM_TOLERANCE {
        return Ok(None);
    }
    match mode {
        ValidationMode::Strict => Err(Error::NormViolation {
            ballot: index,
            actual,
            norm,
        }),
        ValidationMode::Lenient => Ok(Some(NormDeviation {
            ballot: index,
            actual,
            norm,
        })),
    }
}

/// A validated set of ballots over a fixed candidate roster.
#[derive(Debug, Clone, PartialEq)]
pub struct Election {
    names: Vec<String>,
    ballots: Vec<Ballot>,
    norm: f64,
    mode: ValidationMode,
    deviations: Vec<NormDeviation>,
}

/// On-disk JSON form of an election.
#[derive(Debug, Serialize, Deserialize)]
struct ElectionFile {
    candidates: Vec<String>,
    ballots: Vec<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    norm: Option<f64>,
}

impl Election {
    /// Build an election, validating every ballot.
    pub fn new(
        names: Vec<String>,
        ballots: Vec<Ballot>,
        norm: f64,
        mode: ValidationMode,
    ) -> Result<Self> {
        if names.is_empty() {
            return Err(Error::NoCandidates);
        }
        for (i, name) in names.iter().enumerate() {
            if names[..i].contains(name) {
                return Err(Error::DuplicateCandidate(name.clone()));
            }
        }
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::InvalidNorm(norm));
        }
        let m = names.len();
        let mut deviations = Vec::new();
        for (i, ballot) in ballots.iter().enumerate() {
            if ballot.len() != m {
                return Err(Error::BallotLength {
                    ballot: i,
                    got: ballot.len(),
                    expected: m,
                });
            }
            if let Some(dev) = validate_ballot_at(ballot, norm, mode, Some(i))? {
                deviations.push(dev);
            }
        }
        Ok(Election {
            names,
            ballots,
            norm,
            mode,
            deviations,
        })
    }

    /// Parse the JSON form: `{"candidates": [...], "ballots": [[...]], "norm": 10}`.
    pub fn from_json_str(json: &str, mode: ValidationMode) -> Result<Self> {
        let file: ElectionFile = serde_json::from_str(json)?;
        let ballots = file.ballots.into_iter().map(Ballot::new).collect();
        Election::new(
            file.candidates,
            ballots,
            file.norm.unwrap_or(DEFAULT_NORM),
            mode,
        )
    }

    /// Read and parse an election JSON file.
    pub fn from_json_file(path: &Path, mode: ValidationMode) -> Result<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| Error::InvalidConfig(format!("cannot read {}: {e}", path.display())))?;
        Election::from_json_str(&text, mode)
    }

    /// Serialize back to the JSON file form.
    pub fn to_json_string(&self) -> String {
        let file = ElectionFile {
            candidates: self.names.clone(),
            ballots: self.ballots.iter().map(|b| b.scores().to_vec()).collect(),
            norm: Some(self.norm),
        };
        serde_json::to_string_pretty(&file).expect("election serializes")
    }

    /// Number of candidates.
    pub fn candidate_count(&self) -> usize {
        self.names.len()
    }

    pub fn candidate_names(&self) -> &[String] {
        &self.names
    }

    pub fn candidate_name(&self, index: CandidateIndex) -> &str {
        &self.names[index.0]
    }

    pub fn ballots(&self) -> &[Ballot] {
        &self.ballots
    }

    pub fn norm(&self) -> f64 {
        self.norm
    }

    pub fn mode(&self) -> ValidationMode {
        self.mode
    }

    /// Norm deviations accepted under lenient validation, empty when strict.
    pub fn deviations(&self) -> &[NormDeviation] {
        &self.deviations
    }
}

/// Aggregated votes for one candidate.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CandidateTally {
    /// Sum of positive scores received.
    pub positive: f64,
    /// Sum of negative score magnitudes received.
    pub negative: f64,
}

impl CandidateTally {
    pub fn new(positive: f64, negative: f64) -> Self {
        CandidateTally { positive, negative }
    }

    pub fn popularity(&self) -> f64 {
        popularity(self.positive, self.negative)
    }

    pub fn polarity(&self) -> f64 {
        polarity(self.positive, self.negative)
    }

    pub fn qualified(&self) -> bool {
        qualified(self.positive, self.negative)
    }
}

/// Per-candidate `(P, N)` totals for an election.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Tally {
    counts: Vec<CandidateTally>,
}

impl Tally {
    pub fn from_counts(counts: Vec<CandidateTally>) -> Self {
        Tally { counts }
    }

    /// Convenience constructor from `(P, N)` pairs.
    pub fn from_pairs(pairs: &[(f64, f64)]) -> Self {
        Tally {
            counts: pairs
                .iter()
                .map(|&(p, n)| CandidateTally::new(p, n))
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn counts(&self) -> &[CandidateTally] {
        &self.counts
    }

    pub fn get(&self, index: CandidateIndex) -> Option<&CandidateTally> {
        self.counts.get(index.0)
    }

    pub fn iter(&self) -> std::slice::Iter<'_, CandidateTally> {
        self.counts.iter()
    }

    /// Sum of all candidates' positive votes.
    pub fn total_positive(&self) -> f64 {
        self.counts.iter().map(|c| c.positive).sum()
    }

    /// Sum of all candidates' negative votes.
    pub fn total_negative(&self) -> f64 {
        self.counts.iter().map(|c| c.negative).sum()
    }

    /// Indices of candidates with `N <= P`.
    pub fn qualified_candidates(&self) -> Vec<CandidateIndex> {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, c)| c.qualified())
            .map(|(i, _)| CandidateIndex(i))
            .collect()
    }
}

/// Sum every ballot into per-candidate `(P, N)` totals.
pub fn aggregate(election: &Election) -> Tally {
    let m = election.candidate_count();
    let mut counts = vec![CandidateTally::default(); m];
    for ballot in election.ballots() {
        for (c, count) in counts.iter_mut().enumerate() {
            count.positive += ballot.positive(c);
            count.negative += ballot.negative(c);
        }
    }
    Tally { counts }
}

/// Net support `P - N`.
pub fn popularity(p: f64, n: f64) -> f64 {
    p - n
}

/// Contention around a candidate, `N / P`.
///
/// A candidate nobody voted on has polarity 0; a candidate with only
/// negative votes has infinite polarity.
pub fn polarity(p: f64, n: f64) -> f64 {
    if n == 0.0 {
        0.0
    } else if p == 0.0 {
        f64::INFINITY
    } else {
        n / p
    }
}

/// A candidate qualifies to win only when negatives do not outweigh
/// positives (polarity at most 1).
pub fn qualified(p: f64, n: f64) -> bool {
    n <= p
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn election(ballots: Vec<Vec<f64>>) -> Election {
        let names = ["A", "B", "C"].iter().map(|s| s.to_string()).collect();
        Election::new(
            names,
            ballots.into_iter().map(Ballot::new).collect(),
            DEFAULT_NORM,
            ValidationMode::Strict,
        )
        .unwrap()
    }

    #[test]
    fn aggregates_two_voter_example() {
        // Voter 1 goes all in for A, voter 2 votes against A and spreads the
        // rest over B and C.
        let e = election(vec![vec![10.0, 0.0, 0.0], vec![-5.0, 4.0, 1.0]]);
        let t = aggregate(&e);
        assert_eq!(t.counts()[0], CandidateTally::new(10.0, 5.0));
        assert_eq!(t.counts()[1], CandidateTally::new(4.0, 0.0));
        assert_eq!(t.counts()[2], CandidateTally::new(1.0, 0.0));
        assert_relative_eq!(t.counts()[0].popularity(), 5.0);
        assert_relative_eq!(t.counts()[0].polarity(), 0.5);
        assert!(t.counts().iter().all(|c| c.qualified()));
    }

    #[test]
    fn all_negative_ballot_is_valid() {
        // Spending the whole norm against one candidate is allowed.
        let e = election(vec![vec![-10.0, 0.0, 0.0]]);
        let t = aggregate(&e);
        assert_eq!(t.counts()[0], CandidateTally::new(0.0, 10.0));
        assert!(!t.counts()[0].qualified());
        assert_eq!(t.counts()[0].polarity(), f64::INFINITY);
    }

    #[test]
    fn strict_mode_rejects_norm_violation() {
        let ballot = Ballot::new(vec![5.0, 2.0, 1.0]);
        let err = validate_ballot(&ballot, 10.0, ValidationMode::Strict).unwrap_err();
        assert_eq!(
            err,
            Error::NormViolation {
                ballot: None,
                actual: 8.0,
                norm: 10.0
            }
        );
    }

    #[test]
    fn lenient_mode_reports_deviation() {
        let ballot = Ballot::new(vec![5.0, 2.0, 1.0]);
        let dev = validate_ballot(&ballot, 10.0, ValidationMode::Lenient)
            .unwrap()
            .expect("deviation reported");
        assert_eq!(dev.actual, 8.0);
        assert_eq!(dev.norm, 10.0);
    }

    #[test]
    fn norm_check_uses_tolerance() {
        let ballot = Ballot::new(vec![5.0 + 4e-10, 3.0, 2.0]);
        assert!(validate_ballot(&ballot, 10.0, ValidationMode::Strict)
            .unwrap()
            .is_none());
    }

    #[test]
    fn empty_and_nonfinite_ballots_fail_in_both_modes() {
        let empty = Ballot::new(vec![]);
        for mode in [ValidationMode::Strict, ValidationMode::Lenient] {
            assert_eq!(
                validate_ballot(&empty, 10.0, mode).unwrap_err(),
                Error::EmptyBallot
            );
        }
        let nan = Ballot::new(vec![f64::NAN, 5.0, 5.0]);
        for mode in [ValidationMode::Strict, ValidationMode::Lenient] {
            assert_eq!(
                validate_ballot(&nan, 10.0, mode).unwrap_err(),
                Error::NonFiniteScore {
                    ballot: None,
                    candidate: 0
                }
            );
        }
    }

    #[test]
    fn election_rejects_wrong_ballot_length() {
        let names = vec!["A".to_string(), "B".to_string()];
        let err = Election::new(
            names,
            vec![Ballot::new(vec![10.0])],
            10.0,
            ValidationMode::Strict,
        )
        .unwrap_err();
        assert_eq!(
            err,
            Error::BallotLength {
                ballot: 0,
                got: 1,
                expected: 2
            }
        );
    }

    #[test]
    fn election_rejects_duplicate_names() {
        let names = vec!["A".to_string(), "A".to_string()];
        let err = Election::new(names, vec![], 10.0, ValidationMode::Strict).unwrap_err();
        assert_eq!(err, Error::DuplicateCandidate("A".to_string()));
    }

    #[test]
    fn election_error_names_offending_ballot() {
        let names = vec!["A".to_string(), "B".to_string()];
        let ballots = vec![Ballot::new(vec![6.0, 4.0]), Ballot::new(vec![6.0, 3.0])];
        let err = Election::new(names, ballots, 10.0, ValidationMode::Strict).unwrap_err();
        assert_eq!(
            err,
            Error::NormViolation {
                ballot: Some(1),
                actual: 9.0,
                norm: 10.0
            }
        );
    }

    #[test]
    fn json_parsing_defaults_norm_to_ten() {
        let e = Election::from_json_str(
            r#"{"candidates": ["A", "B"], "ballots": [[6, -4]]}"#,
            ValidationMode::Strict,
        )
        .unwrap();
        assert_eq!(e.norm(), 10.0);
        assert_eq!(e.ballots()[0].scores(), &[6.0, -4.0]);
    }

    #[test]
    fn json_round_trip() {
        let e = Election::from_json_str(
            r#"{"candidates": ["A", "B"], "ballots": [[6, -4], [-1, 9]], "norm": 10}"#,
            ValidationMode::Strict,
        )
        .unwrap();
        let again = Election::from_json_str(&e.to_json_string(), ValidationMode::Strict).unwrap();
        assert_eq!(e, again);
    }

    #[test]
    fn json_parse_error_reports_position() {
        let err = Election::from_json_str("{\"candidates\": [", ValidationMode::Strict).unwrap_err();
        match err {
            Error::Json(msg) => assert!(msg.contains("line"), "no position in: {msg}"),
            other => panic!("expected Json error, got {other:?}"),
        }
    }

    #[test]
    fn polarity_edge_cases() {
        assert_eq!(polarity(0.0, 0.0), 0.0);
        assert_eq!(polarity(0.0, 3.0), f64::INFINITY);
        assert_relative_eq!(polarity(8.0, 2.0), 0.25);
        assert!(qualified(0.0, 0.0));
        assert!(qualified(2.0, 2.0));
        assert!(!qualified(3.0, 4.0));
    }

    #[test]
    fn popularity_is_antisymmetric() {
        for &(p, n) in &[(10.0, 5.0), (0.0, 0.0), (3.5, 7.25)] {
            assert_eq!(popularity(p, n), -popularity(n, p));
        }
    }

    #[test]
    fn aggregation_is_monotone_in_ballots() {
        let ballots = vec![
            vec![10.0, 0.0, 0.0],
            vec![-5.0, 4.0, 1.0],
            vec![2.0, -3.0, 5.0],
        ];
        let mut prev = Tally::from_pairs(&[(0.0, 0.0); 3]);
        for k in 1..=ballots.len() {
            let t = aggregate(&election(ballots[..k].to_vec()));
            for (now, before) in t.counts().iter().zip(prev.counts()) {
                assert!(now.positive >= before.positive);
                assert!(now.negative >= before.negative);
            }
            prev = t;
        }
    }
}
