//! Approval ballots as a special case of normed signed scores.
//!
//! An approval ballot approves some subset of candidates. Embedding it as
//! signed scores -- norm split evenly, positive on approved, negative on the
//! rest -- lets the whole metric machinery run on approval elections too.

use nnv::ballot::{aggregate, CandidateIndex};
use nnv::metrics::{pick_winner, MetricKind, TieRule};
use nnv::ranked::approval_to_nnv;

fn main() {
    // Five approval ballots over four candidates.
    let approvals = vec![
        vec![true, true, false, false],
        vec![true, false, false, false],
        vec![false, true, true, false],
        vec![true, true, false, false],
        vec![false, false, true, true],
    ];
    let election = approval_to_nnv(&approvals, 4, 10.0).unwrap();

    println!("ballot 0 becomes {:?}", election.ballots()[0].scores());

    let tally = aggregate(&election);
    println!();
    println!("candidate  approvals  P      N      popularity");
    for (i, name) in election.candidate_names().iter().enumerate() {
        let approvals_for: usize = approvals.iter().filter(|b| b[i]).count();
        let c = tally.get(CandidateIndex(i)).unwrap();
        println!(
            "{name:<9}  {approvals_for:<9}  {:<5}  {:<5}  {}",
            c.positive,
            c.negative,
            c.popularity()
        );
    }

    // With every ballot worth the same total weight, popularity ranks
    // candidates exactly by approval count.
    let result = pick_winner(&tally, &MetricKind::popularity(), TieRule::Report).unwrap();
    let winners: Vec<&str> = result
        .winner
        .candidates()
        .iter()
        .map(|c| election.candidate_name(*c))
        .collect();
    println!();
    println!("popularity winner(s): {}", winners.join(", "));
}
