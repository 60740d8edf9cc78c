//! Ranked-ballot methods, for comparison against signed-score voting.
//!
//! A signed score vector induces a strict ranking whenever its entries are
//! distinct, so the same electorate can be run through Borda, Condorcet, and
//! instant-runoff counts and the winners compared. Approval ballots embed in
//! the other direction: approving a candidate becomes an equal positive
//! share of the vote norm, disapproving an equal negative share.

use crate::ballot::{Ballot, CandidateIndex, Election, ValidationMode};
use crate::error::{Error, Result};
use crate::metrics::{MetricKind, TieRule, Winner};

/// Rank of each candidate on one ballot: `ranks[i]` is 1 for the highest
/// score, up to `m` for the lowest.
pub type Ranks = Vec<usize>;

/// Strict ranking induced by a ballot's scores.
///
/// Fails with [`Error::TiedScores`] when two candidates share a score, since
/// the ballot then carries no order between them. `ballot_index` only labels
/// the error.
pub fn to_ranks(ballot: &Ballot, ballot_index: Option<usize>) -> Result<Ranks> {
    let scores = ballot.scores();
    let m = scores.len();
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&i, &j| scores[j].partial_cmp(&scores[i]).expect("scores are finite"));
    for pair in order.windows(2) {
        if scores[pair[0]] == scores[pair[1]] {
            return Err(Error::TiedScores {
                ballot: ballot_index,
                a: pair[0].min(pair[1]),
                b: pair[0].max(pair[1]),
            });
        }
    }
    let mut ranks = vec![0; m];
    for (position, &candidate) in order.iter().enumerate() {
        ranks[candidate] = position + 1;
    }
    Ok(ranks)
}

/// Rankings for every ballot of an election.
pub fn election_to_ranks(election: &Election) -> Result<Vec<Ranks>> {
    election
        .ballots()
        .iter()
        .enumerate()
        .map(|(i, ballot)| to_ranks(ballot, Some(i)))
        .collect()
}

/// Borda count: rank `r` earns `m - r` points, summed over ballots.
pub fn borda_scores(rankings: &[Ranks], m: usize) -> Vec<f64> {
    let mut scores = vec![0.0; m];
    for ranks in rankings {
        assert!(ranks.len() == m, "ranking length {} != {m}", ranks.len());
        for (candidate, &rank) in ranks.iter().enumerate() {
            scores[candidate] += (m - rank) as f64;
        }
    }
    scores
}

/// Ballots preferring `i` over `j`, for every ordered pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairwiseMatrix {
    wins: Vec<Vec<usize>>,
}

impl PairwiseMatrix {
    pub fn from_rankings(rankings: &[Ranks], m: usize) -> Self {
        let mut wins = vec![vec![0; m]; m];
        for ranks in rankings {
            assert!(ranks.len() == m, "ranking length {} != {m}", ranks.len());
            for i in 0..m {
                for j in 0..m {
                    if i != j && ranks[i] < ranks[j] {
                        wins[i][j] += 1;
                    }
                }
            }
        }
        PairwiseMatrix { wins }
    }

    pub fn len(&self) -> usize {
        self.wins.len()
    }

    pub fn is_empty(&self) -> bool {
        self.wins.is_empty()
    }

    /// Ballots ranking `i` above `j`.
    pub fn preferring(&self, i: usize, j: usize) -> usize {
        self.wins[i][j]
    }

    /// Whether `i` beats every other candidate head to head.
    pub fn beats_all(&self, i: usize) -> bool {
        (0..self.len()).all(|j| j == i || self.wins[i][j] > self.wins[j][i])
    }

    /// The candidate beating all others head to head, if one exists.
    pub fn condorcet_winner(&self) -> Option<CandidateIndex> {
        (0..self.len()).find(|&i| self.beats_all(i)).map(CandidateIndex)
    }
}

/// One counting round of an instant-runoff election.
#[derive(Debug, Clone, PartialEq)]
pub struct IrvRound {
    /// First-preference count among surviving candidates; eliminated
    /// candidates carry `None`.
    pub counts: Vec<Option<usize>>,
    /// Candidates eliminated at the end of this round.
    pub eliminated: Vec<CandidateIndex>,
}

/// Instant-runoff result with the full round log.
#[derive(Debug, Clone, PartialEq)]
pub struct IrvOutcome {
    pub winner: Winner,
    pub rounds: Vec<IrvRound>,
}

/// Instant runoff: repeatedly count first preferences among survivors and
/// eliminate everyone sharing the lowest count.
///
/// When all survivors share the same count no further elimination can
/// separate them and they are reported as a tie.
pub fn instant_runoff(rankings: &[Ranks], m: usize, tie_rule: TieRule) -> IrvOutcome {
    assert!(m > 0, "need at least one candidate");
    let mut alive = vec![true; m];
    let mut rounds = Vec::new();
    loop {
        let mut counts = vec![0usize; m];
        for ranks in rankings {
            assert!(ranks.len() == m, "ranking length {} != {m}", ranks.len());
            let first = (0..m)
                .filter(|&c| alive[c])
                .min_by_key(|&c| ranks[c])
                .expect("at least one candidate is alive");
            counts[first] += 1;
        }
        let survivors: Vec<usize> = (0..m).filter(|&c| alive[c]).collect();
        let min = survivors.iter().map(|&c| counts[c]).min().unwrap();
        let max = survivors.iter().map(|&c| counts[c]).max().unwrap();
        let round_counts: Vec<Option<usize>> = (0..m)
            .map(|c| alive[c].then_some(counts[c]))
            .collect();
        if survivors.len() == 1 || min == max {
            rounds.push(IrvRound {
                counts: round_counts,
                eliminated: Vec::new(),
            });
            let set: Vec<CandidateIndex> =
                survivors.into_iter().map(CandidateIndex).collect();
            return IrvOutcome {
                winner: Winner::from_set(set, tie_rule),
                rounds,
            };
        }
        let eliminated: Vec<CandidateIndex> = survivors
            .iter()
            .filter(|&&c| counts[c] == min)
            .map(|&c| CandidateIndex(c))
            .collect();
        for &c in &eliminated {
            alive[c.0] = false;
        }
        rounds.push(IrvRound {
            counts: round_counts,
            eliminated,
        });
    }
}

/// Approval ballots embedded as signed scores: each approval is worth
/// `+norm / m`, each non-approval `-norm / m`.
pub fn approval_to_nnv(approvals: &[Vec<bool>], m: usize, norm: f64) -> Result<Election> {
    let share = norm / m as f64;
    let ballots = approvals
        .iter()
        .map(|approved| {
            assert!(approved.len() == m, "ballot length {} != {m}", approved.len());
            Ballot::new(
                approved
                    .iter()
                    .map(|&yes| if yes { share } else { -share })
                    .collect(),
            )
        })
        .collect();
    Election::new(default_names(m), ballots, norm, ValidationMode::Strict)
}

/// Spreadsheet-style candidate names: A, B, ..., Z, AA, AB, ...
pub fn default_names(m: usize) -> Vec<String> {
    (0..m)
        .map(|mut i| {
            let mut name = String::new();
            loop {
                name.insert(0, (b'A' + (i % 26) as u8) as char);
                i /= 26;
                if i == 0 {
                    break;
                }
                i -= 1;
            }
            name
        })
        .collect()
}

/// How one method decided an election.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MethodOutcome {
    Winner(CandidateIndex),
    Tie(Vec<CandidateIndex>),
    /// The method produced no winner (a Condorcet cycle, or every candidate
    /// disqualified).
    NoWinner,
}

impl MethodOutcome {
    fn from_winner(winner: Winner) -> Self {
        match winner {
            Winner::Single(c) => MethodOutcome::Winner(c),
            Winner::Tie(set) => MethodOutcome::Tie(set),
        }
    }

    /// The unique winner, when the method produced one.
    pub fn decided(&self) -> Option<CandidateIndex> {
        match self {
            MethodOutcome::Winner(c) => Some(*c),
            _ => None,
        }
    }
}

/// One method's row in a comparison report.
#[derive(Debug, Clone, PartialEq)]
pub struct MethodResult {
    /// Label, e.g. `w:1,1`, `borda`, `condorcet`, `irv`.
    pub method: String,
    pub outcome: MethodOutcome,
    /// Per-candidate values where the method has them (metric values, Borda
    /// scores, first-round counts); `None` for Condorcet.
    pub scores: Option<Vec<f64>>,
    /// Whether this row is a signed-score method (as opposed to ranked).
    pub signed: bool,
}

/// Side-by-side outcome of signed-score metrics and ranked methods on the
/// same ballots.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonReport {
    pub candidates: Vec<String>,
    pub results: Vec<MethodResult>,
    /// True when some decided signed-score winner differs from some decided
    /// ranked winner. Ties and no-winner rows are not divergence.
    pub divergent: bool,
}

impl ComparisonReport {
    pub fn result(&self, method: &str) -> Option<&MethodResult> {
        self.results.iter().find(|r| r.method == method)
    }
}

/// Run the requested signed-score metrics plus Borda, Condorcet, and
/// instant runoff over one election, optionally with a voter-satisfaction
/// row on the signed side.
///
/// Signed rows where every candidate is disqualified report
/// [`MethodOutcome::NoWinner`] rather than failing, so the ranked rows still
/// come through.
pub fn compare_methods(
    election: &Election,
    metrics: &[MetricKind],
    satisfaction: Option<crate::satisfaction::SatisfactionVariant>,
    tie_rule: TieRule,
) -> Result<ComparisonReport> {
    let m = election.candidate_count();
    let tally = crate::ballot::aggregate(election);
    let mut results = Vec::new();
    for metric in metrics {
        let row = match crate::metrics::pick_winner(&tally, metric, tie_rule) {
            Ok(r) => MethodResult {
                method: metric.label(),
                outcome: MethodOutcome::from_winner(r.winner),
                scores: Some(r.values),
                signed: true,
            },
            Err(Error::NoQualifiedCandidate) => MethodResult {
                method: metric.label(),
                outcome: MethodOutcome::NoWinner,
                scores: Some(
                    tally
                        .iter()
                        .map(|c| metric.evaluate(c.positive, c.negative))
                        .collect(),
                ),
                signed: true,
            },
            Err(e) => return Err(e),
        };
        results.push(row);
    }

    if let Some(variant) = satisfaction {
        let values: Vec<f64> = (0..m)
            .map(|i| {
                crate::satisfaction::satisfaction_value(&tally, CandidateIndex(i), variant)
            })
            .collect::<Result<_>>()?;
        let outcome =
            match crate::satisfaction::satisfaction_argmax(&tally, variant, tie_rule, true) {
                Ok(r) => MethodOutcome::from_winner(r.winner),
                Err(Error::NoQualifiedCandidate) => MethodOutcome::NoWinner,
                Err(e) => return Err(e),
            };
        results.push(MethodResult {
            method: variant.label().to_string(),
            outcome,
            scores: Some(values),
            signed: true,
        });
    }

    let rankings = election_to_ranks(election)?;
    let borda = borda_scores(&rankings, m);
    let borda_top = {
        let eligible = vec![true; m];
        crate::metrics::argmax_with_ties(&borda, &eligible, 0.0)
    };
    results.push(MethodResult {
        method: "borda".to_string(),
        outcome: MethodOutcome::from_winner(Winner::from_set(
            borda_top.into_iter().map(CandidateIndex).collect(),
            tie_rule,
        )),
        scores: Some(borda.clone()),
        signed: false,
    });

    let matrix = PairwiseMatrix::from_rankings(&rankings, m);
    results.push(MethodResult {
        method: "condorcet".to_string(),
        outcome: match matrix.condorcet_winner() {
            Some(c) => MethodOutcome::Winner(c),
            None => MethodOutcome::NoWinner,
        },
        scores: None,
        signed: false,
    });

    let irv = instant_runoff(&rankings, m, tie_rule);
    let first_round: Vec<f64> = irv.rounds[0]
        .counts
        .iter()
        .map(|c| c.unwrap_or(0) as f64)
        .collect();
    results.push(MethodResult {
        method: "irv".to_string(),
        outcome: MethodOutcome::from_winner(irv.winner),
        scores: Some(first_round),
        signed: false,
    });

    let signed_decided: Vec<CandidateIndex> = results
        .iter()
        .filter(|r| r.signed)
        .filter_map(|r| r.outcome.decided())
        .collect();
    let ranked_decided: Vec<CandidateIndex> = results
        .iter()
        .filter(|r| !r.signed)
        .filter_map(|r| r.outcome.decided())
        .collect();
    let divergent = signed_decided
        .iter()
        .any(|s| ranked_decided.iter().any(|r| r != s));

    Ok(ComparisonReport {
        candidates: election.candidate_names().to_vec(),
        results,
        divergent,
    })
}
