//! Build a small election in code, aggregate it, and read the tally.
//!
//! Each voter hands out signed scores whose magnitudes sum to the vote
//! norm; negatives actively count against a candidate instead of merely
//! withholding support.

use nnv::ballot::{aggregate, Ballot, CandidateIndex, Election, ValidationMode};
use nnv::metrics::{pick_winner, MetricKind, TieRule};

fn main() {
    let election = Election::new(
        vec!["Ash".into(), "Birch".into(), "Cedar".into()],
        vec![
            // 10 points of magnitude each, split as the voter pleases.
            Ballot::new(vec![7.0, 3.0, 0.0]),
            Ballot::new(vec![-4.0, 5.0, 1.0]),
            Ballot::new(vec![2.0, -6.0, 2.0]),
        ],
        10.0,
        ValidationMode::Strict,
    )
    .expect("ballots are normed");

    let tally = aggregate(&election);
    println!("candidate  P     N     popularity  polarity  qualified");
    for (i, name) in election.candidate_names().iter().enumerate() {
        let c = tally.get(CandidateIndex(i)).unwrap();
        println!(
            "{name:<9}  {:<4}  {:<4}  {:<10}  {:<8.3}  {}",
            c.positive,
            c.negative,
            c.popularity(),
            c.polarity(),
            c.qualified()
        );
    }

    // Popularity alone ignores how contested a candidate is; the polarity
    // penalty in w:1,1 does not.
    for metric in [MetricKind::popularity(), MetricKind::rational(1.0, 1.0).unwrap()] {
        let result = pick_winner(&tally, &metric, TieRule::Report).expect("someone qualifies");
        let names: Vec<&str> = result
            .winner
            .candidates()
            .iter()
            .map(|c| election.candidate_name(*c))
            .collect();
        println!("{}: {}", metric.label(), names.join(", "));
    }
}
