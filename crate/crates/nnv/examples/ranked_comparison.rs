//! Two electorates with identical rankings, different outcomes.
//!
//! Ranked methods (Borda, Condorcet, instant runoff) only see the order of
//! scores on each ballot. Signed scores also carry *how much* -- so two
//! elections can agree on every ranking yet crown different winners once
//! vote weight is counted.

use nnv::ballot::{Ballot, Election, ValidationMode};
use nnv::metrics::{MetricKind, TieRule};
use nnv::output::{render_comparison, OutputFormat};
use nnv::ranked::compare_methods;
use nnv::satisfaction::SatisfactionVariant;

fn report(title: &str, ballots: Vec<Ballot>) {
    let election = Election::new(
        vec!["A".into(), "B".into(), "C".into(), "D".into()],
        ballots,
        10.0,
        ValidationMode::Lenient,
    )
    .unwrap();
    let comparison = compare_methods(
        &election,
        &[MetricKind::popularity(), MetricKind::rational(1.0, 1.0).unwrap()],
        Some(SatisfactionVariant::S),
        TieRule::Report,
    )
    .unwrap();
    println!("== {title} ==");
    print!(
        "{}",
        render_comparison(&comparison, OutputFormat::Table, None).unwrap()
    );
    println!();
}

fn main() {
    // Voter 2 mildly prefers D over C over B over A ...
    report(
        "spread-out second voter",
        vec![
            Ballot::new(vec![5.0, 2.0, 1.0, -1.0]),
            Ballot::new(vec![-5.0, 0.0, 1.0, 4.0]),
            Ballot::new(vec![3.0, 4.0, -2.0, 1.0]),
        ],
    );
    // ... or pours nearly the whole norm into D. Same ranking, so the
    // ranked rows are identical -- but the signed rows flip to D and the
    // report flags the divergence.
    report(
        "concentrated second voter",
        vec![
            Ballot::new(vec![5.0, 2.0, 1.0, -1.0]),
            Ballot::new(vec![-1.0, 0.0, 1.0, 8.0]),
            Ballot::new(vec![3.0, 4.0, -2.0, 1.0]),
        ],
    );
}
