//! How much polarity penalty is too much?
//!
//! A metric over-penalizes when a candidate can lose to a rival who simply
//! received *fewer total votes*. The admissible (c, b) region keeps that
//! from happening; its boundary b_max(c) grows with the candidate count.

use nnv::metrics::{is_admissible, max_penalty_boundary, two_voter_override_check};

fn main() {
    // Boundary curves: for two candidates the region is the triangle
    // c + b <= 1; at c = 1 it reaches b = m - 2.
    println!("   c   b_max(m=2)  b_max(m=3)  b_max(m=5)");
    for i in 0..=4 {
        let c = i as f64 / 4.0;
        println!(
            "{c:>4}  {:>10.4}  {:>10.4}  {:>10.4}",
            max_penalty_boundary(2, c),
            max_penalty_boundary(3, c),
            max_penalty_boundary(5, c),
        );
    }

    // The two-voter stress test behind the m=2 constraint: voter one gives
    // candidate a the full norm, voter two splits x against a and 10 - x
    // for b. If the metric is admissible, a's 10 positive points always
    // hold off b's 10 - x.
    println!();
    for (c, b) in [(0.5, 0.5), (1.0, 1.0)] {
        let mut overridden = 0;
        for i in 0..=100 {
            let x = i as f64 / 10.0;
            if two_voter_override_check(c, b, x).b_wins {
                overridden += 1;
            }
        }
        println!(
            "c={c}, b={b}: admissible for m=2: {}, overridden at {overridden}/101 split points",
            is_admissible(c, b, 2),
        );
    }
}
