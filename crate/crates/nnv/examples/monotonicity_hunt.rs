//! Hunt for a monotonicity violation.
//!
//! Under a fixed vote norm, the only way to vote *harder* for the leader
//! is to take weight from somewhere else. With a polarity-penalized metric
//! that reallocation can backfire: easing a negative vote on a rival
//! shrinks the rival's penalty faster than the extra positive helps the
//! leader. The search below finds a concrete electorate where supporting
//! the winner costs them the election.

use nnv::ballot::aggregate;
use nnv::metrics::MetricParams;
use nnv::montecarlo::monotonicity_search;

fn main() {
    let params = MetricParams::new(1.0, 1.0).unwrap();
    let Some(found) = monotonicity_search(&params, 3, 1_000_000, 42) else {
        println!("no counterexample within the trial budget");
        return;
    };

    let names = found.election.candidate_names();
    println!(
        "voter {} moves {:.3} points of negative weight off {} and onto {}:",
        found.voter,
        found.delta,
        names[found.rival.0],
        names[found.winner_before.0],
    );
    println!();
    println!("  before: {:?}", found.election.ballots()[found.voter].scores());
    println!("  after:  {:?}", found.perturbed.ballots()[found.voter].scores());
    println!();
    let before = aggregate(&found.election);
    let after = aggregate(&found.perturbed);
    for (i, name) in names.iter().enumerate() {
        let b = &before.counts()[i];
        let a = &after.counts()[i];
        println!(
            "  {name}: (P,N) ({:.2}, {:.2}) -> ({:.2}, {:.2})",
            b.positive, b.negative, a.positive, a.negative
        );
    }
    println!();
    println!(
        "winner flips {} -> {}, despite the perturbation strictly favoring {}",
        names[found.winner_before.0],
        names[found.new_winner.0],
        names[found.winner_before.0],
    );
    assert!(found.verify(&params));

    // The same hunt against plain popularity comes home empty-handed: both
    // gainers rise by the same amount, so the gap to the winner never
    // closes.
    let popularity = MetricParams::new(1.0, 0.0).unwrap();
    assert!(monotonicity_search(&popularity, 3, 50_000, 42).is_none());
    println!("popularity (w:0,1): no counterexample in 50k electorates");
}
