//! Which victory would voters be happiest with?
//!
//! Satisfaction credits a voter for votes cast on the winner (signed) and
//! for negative votes on losers -- opposition that worked. The adjusted
//! variant also debits positives wasted on losers; maximizing it turns out
//! to be the same as maximizing popularity.

use nnv::ballot::{aggregate, Ballot, CandidateIndex, Election, ValidationMode};
use nnv::satisfaction::{
    max_satisfaction_winner, satisfaction, satisfaction_bar, satisfaction_per_voter,
    SatisfactionVariant,
};
use nnv::metrics::TieRule;

fn main() {
    let election = Election::new(
        vec!["A".into(), "B".into(), "C".into(), "D".into()],
        vec![
            Ballot::new(vec![5.0, -3.0, 0.0, 1.0]),
            Ballot::new(vec![6.0, 2.0, -1.0, 0.0]),
            Ballot::new(vec![-5.0, 1.0, 3.0, 0.0]),
            Ballot::new(vec![0.0, 4.0, 3.0, 2.0]),
        ],
        9.0,
        ValidationMode::Strict,
    )
    .unwrap();
    let tally = aggregate(&election);

    println!("if the winner were ...      S   S_bar");
    for i in 0..election.candidate_count() {
        let alpha = CandidateIndex(i);
        println!(
            "{:>22}   {:>6}  {:>6}",
            election.candidate_name(alpha),
            satisfaction(&tally, alpha).unwrap(),
            satisfaction_bar(&tally, alpha).unwrap(),
        );
    }

    let s = max_satisfaction_winner(&tally, SatisfactionVariant::S, TieRule::Report).unwrap();
    let sbar =
        max_satisfaction_winner(&tally, SatisfactionVariant::SBar, TieRule::Report).unwrap();
    println!();
    println!(
        "S argmax: {}; S_bar argmax: {} (= popularity winner)",
        election.candidate_name(s.winner.single().unwrap()),
        election.candidate_name(sbar.winner.single().unwrap()),
    );

    // Per-voter view for the S winner: voter 3, who opposed the winner's
    // main rival, gets credit even though they scored the winner 0.
    let alpha = s.winner.single().unwrap();
    let per_voter = satisfaction_per_voter(&election, alpha).unwrap();
    println!(
        "per-voter satisfaction with {} winning: {:?} (sum {})",
        election.candidate_name(alpha),
        per_voter,
        per_voter.iter().sum::<f64>(),
    );
}
