//! Voter satisfaction with an election outcome.
//!
//! When candidate `alpha` wins, a voter is satisfied by the votes they cast
//! for `alpha`, dissatisfied by the votes they cast against `alpha`, and
//! satisfied by every negative vote they cast on the losers (their opposition
//! "worked"). Summed over voters this gives the aggregate
//!
//! ```text
//! S(alpha) = P(alpha) - N(alpha) + sum of N over the other candidates
//! ```
//!
//! The adjusted variant also counts positive votes on losers as wasted:
//!
//! ```text
//! SBar(alpha) = S(alpha) - sum of P over the other candidates
//! ```
//!
//! `SBar` rewrites to `2 (P - N)(alpha) - sum of (P - N) over everyone`, so
//! the candidate maximizing it is exactly the popularity winner.

use crate::ballot::{CandidateIndex, Election, Tally};
use crate::error::{Error, Result};
use crate::metrics::{argmax_with_ties, TieRule, Winner, WinnerResult, TIE_TOLERANCE};

/// Which satisfaction aggregate to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SatisfactionVariant {
    /// `S`: negative votes on losers pay off, positives on losers are neutral.
    #[default]
    S,
    /// `SBar`: positives spent on losers count as losses too.
    SBar,
}

impl SatisfactionVariant {
    pub fn label(&self) -> &'static str {
        match self {
            SatisfactionVariant::S => "S",
            SatisfactionVariant::SBar => "S_bar",
        }
    }
}

fn check_index(tally: &Tally, alpha: CandidateIndex) -> Result<()> {
    if alpha.0 >= tally.len() {
        return Err(Error::UnknownCandidate {
            index: alpha.0,
            count: tally.len(),
        });
    }
    Ok(())
}

/// Aggregate satisfaction if `alpha` were declared the winner.
pub fn satisfaction(tally: &Tally, alpha: CandidateIndex) -> Result<f64> {
    check_index(tally, alpha)?;
    let own = &tally.counts()[alpha.0];
    let others_negative = tally.total_negative() - own.negative;
    Ok(own.popularity() + others_negative)
}

/// Aggregate satisfaction with wasted positive votes subtracted.
pub fn satisfaction_bar(tally: &Tally, alpha: CandidateIndex) -> Result<f64> {
    check_index(tally, alpha)?;
    let own = &tally.counts()[alpha.0];
    let others_positive = tally.total_positive() - own.positive;
    Ok(satisfaction(tally, alpha)? - others_positive)
}

/// Dispatch on the variant.
pub fn satisfaction_value(
    tally: &Tally,
    alpha: CandidateIndex,
    variant: SatisfactionVariant,
) -> Result<f64> {
    match variant {
        SatisfactionVariant::S => satisfaction(tally, alpha),
        SatisfactionVariant::SBar => satisfaction_bar(tally, alpha),
    }
}

/// Each voter's satisfaction if `alpha` were declared the winner.
///
/// Summing the result equals [`satisfaction`] of the aggregated tally.
pub fn satisfaction_per_voter(election: &Election, alpha: CandidateIndex) -> Result<Vec<f64>> {
    let m = election.candidate_count();
    if alpha.0 >= m {
        return Err(Error::UnknownCandidate {
            index: alpha.0,
            count: m,
        });
    }
    Ok(election
        .ballots()
        .iter()
        .map(|ballot| {
            let mut value = ballot.positive(alpha.0) - ballot.negative(alpha.0);
            for mu in 0..m {
                if mu != alpha.0 {
                    value += ballot.negative(mu);
                }
            }
            value
        })
        .collect())
}

/// The qualified candidate whose victory would satisfy voters most.
pub fn max_satisfaction_winner(
    tally: &Tally,
    variant: SatisfactionVariant,
    tie_rule: TieRule,
) -> Result<WinnerResult> {
    satisfaction_argmax(tally, variant, tie_rule, true)
}

/// As [`max_satisfaction_winner`], optionally letting disqualified
/// candidates compete.
pub fn satisfaction_argmax(
    tally: &Tally,
    variant: SatisfactionVariant,
    tie_rule: TieRule,
    qualified_only: bool,
) -> Result<WinnerResult> {
    let values: Vec<f64> = (0..tally.len())
        .map(|i| satisfaction_value(tally, CandidateIndex(i), variant))
        .collect::<Result<_>>()?;
    let eligible: Vec<bool> = tally
        .iter()
        .map(|c| !qualified_only || c.qualified())
        .collect();
    let top = argmax_with_ties(&values, &eligible, TIE_TOLERANCE);
    if top.is_empty() {
        return Err(Error::NoQualifiedCandidate);
    }
    let disqualified = tally
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.qualified())
        .map(|(i, _)| CandidateIndex(i))
        .collect();
    Ok(WinnerResult {
        winner: Winner::from_set(top.into_iter().map(CandidateIndex).collect(), tie_rule),
        values,
        disqualified,
    })
}
