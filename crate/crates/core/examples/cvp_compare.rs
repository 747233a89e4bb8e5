//! Reduction vs. brute-force closest lattice point over the box
//! |x_i| <= a+2. Reports how often the certified word is optimal.
//!
//! `cargo run --release --example cvp_compare -- 4`

use std::collections::BTreeMap;

use circulant8::audit::{box_points, cvp_oracle};
use circulant8::lattice::build_system;
use circulant8::reduction::reduce;

fn main() -> Result<(), circulant8::Error> {
    let k = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(4);
    let sys = build_system(k)?;
    let mut gap: BTreeMap<i64, usize> = BTreeMap::new();
    let mut worst = 0;
    for x in box_points(sys.a() + 2) {
        let (best, _) = cvp_oracle(x, &sys, 3);
        let cert = reduce(x, &sys)?;
        worst = worst.max(best);
        *gap.entry(cert.word_length - best).or_default() += 1;
    }
    println!("k={k} worst closest-vector distance={worst}");
    for (d, count) in gap {
        println!("  word_length - optimum = {d}: {count} points");
    }
    Ok(())
}
