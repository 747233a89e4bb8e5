//! BFS diameter of the constructed circulant for a range of k.
//!
//! `cargo run --release --example diameter_sweep -- 2 20`

use std::time::Instant;

use circulant8::graph::{construct, diameter, distance_profile};

fn main() -> Result<(), circulant8::Error> {
    let mut args = std::env::args().skip(1).filter_map(|s| s.parse::<i64>().ok());
    let lo = args.next().unwrap_or(2);
    let hi = args.next().unwrap_or(12);
    for k in lo..=hi {
        let t = Instant::now();
        let g = construct(k)?;
        let d = diameter(&g);
        let prof = distance_profile(&g);
        let last = prof.histogram.last().copied().unwrap_or(0);
        println!(
            "k={k:<3} n={:<7} steps={:?} diameter={} at_max={last} ({:.1} ms)",
            g.n(),
            g.connection(),
            d.map_or("disconnected".into(), |d| d.to_string()),
            t.elapsed().as_secs_f64() * 1e3
        );
    }
    Ok(())
}
