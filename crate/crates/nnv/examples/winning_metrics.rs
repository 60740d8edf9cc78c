//! The winning-metric family and what the polarity penalty changes.
//!
//! A candidate with huge positive support but equally huge opposition can
//! out-poll a calm consensus candidate on raw popularity. Dividing by
//! 1 + b.N/P makes contested support count for less.

use nnv::ballot::Tally;
use nnv::metrics::{pick_winner, MetricKind, TieRule};

fn main() {
    // Three candidates: a polarizing front-runner, a consensus candidate,
    // and a bystander.
    let tally = Tally::from_pairs(&[(10.0, 5.0), (4.0, 0.0), (1.0, 0.0)]);
    let metrics = [
        MetricKind::popularity(),
        MetricKind::rational(1.0, 1.0).unwrap(),
        MetricKind::rational(1.0, 2.0).unwrap(),
        MetricKind::ExpPolarity,
        MetricKind::SquareOverSum,
    ];

    println!("          (P,N) = (10,5)   (4,0)    (1,0)");
    for metric in &metrics {
        let result = pick_winner(&tally, metric, TieRule::Report).unwrap();
        let values: Vec<String> = result.values.iter().map(|v| format!("{v:<7.3}")).collect();
        let winner = result.winner.single().map(|c| char::from(b'A' + c.0 as u8));
        println!(
            "{:<10}        {}  winner {}",
            metric.label(),
            values.join("  "),
            winner.map(String::from).unwrap_or_else(|| "tie".into())
        );
    }

    // Half the norm in negatives halves the front-runner's w:1,1 score
    // (10 - 5 over 1.5), so the consensus candidate B wins there despite
    // 6 fewer positive points.
    let w11 = MetricKind::rational(1.0, 1.0).unwrap();
    assert_eq!(
        pick_winner(&tally, &w11, TieRule::Report).unwrap().winner.single(),
        Some(nnv::ballot::CandidateIndex(1))
    );
}
