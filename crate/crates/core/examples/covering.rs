//! Covering check: every residue of Z_n within k steps, by reduction and
//! by BFS.
//!
//! `cargo run --release --example covering -- 2 3 4 5 6 7 8`

use circulant8::audit::verify_covering;

fn main() {
    let ks: Vec<i64> = std::env::args().skip(1).filter_map(|s| s.parse().ok()).collect();
    let ks = if ks.is_empty() { (2..=8).collect() } else { ks };
    let mut ok = true;
    for k in ks {
        match verify_covering(k) {
            Ok(r) => {
                println!("{} worst={:?}", r.summary(), r.worst_residues);
                for f in &r.failures {
                    println!("  finding {f}");
                }
                ok &= r.passed();
            }
            Err(e) => {
                println!("covering k={k} error=\"{e}\"");
                ok = false;
            }
        }
    }
    std::process::exit(if ok { 0 } else { 1 });
}
