//! Exhaustive audit of the orthant case tables.
//!
//! `cargo run --release --example case_audit -- 4 5 6` sweeps the box
//! `|x_i| <= a+1` for each k and prints a key=value summary plus findings.

use circulant8::audit::{dead_across, verify_case_coverage};

fn main() -> Result<(), circulant8::Error> {
    let ks: Vec<i64> = std::env::args().skip(1).filter_map(|s| s.parse().ok()).collect();
    let ks = if ks.is_empty() { vec![4, 6, 8, 5, 7, 9] } else { ks };
    let mut reports = Vec::new();
    for k in ks {
        let rep = verify_case_coverage(k)?;
        println!("{}", rep.render());
        reports.push(rep);
    }
    for parity in [circulant8::Parity::Even, circulant8::Parity::Odd] {
        let same: Vec<_> = reports.iter().filter(|r| r.parity == parity).cloned().collect();
        if !same.is_empty() {
            let dead = dead_across(&same);
            println!("{parity}: {} rules never fired", dead.len());
            for d in dead {
                println!("  {d}");
            }
        }
    }
    Ok(())
}
