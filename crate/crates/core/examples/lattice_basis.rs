//! Prints the lattice for one k: basis, derived vectors, determinant and
//! the per-vector norms and sign patterns.
//!
//! `cargo run --example lattice_basis -- 6`

use circulant8::lattice::{build_system, det4, distinct_sign_patterns, covers_all_orthants};

fn main() -> Result<(), circulant8::Error> {
    let k = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(4);
    let sys = build_system(k)?;
    println!("k={k} parity={} a={} order={}", sys.parity(), sys.a(), sys.order());
    for (i, v) in sys.vectors().iter().enumerate() {
        println!("v{} = {v:<20} l1={} max|c|={}", i + 1, v.l1_norm(), v.max_abs());
    }
    println!("det(v1..v4) = {}", det4(&sys.basis()));
    println!("distinct sign patterns: {}", distinct_sign_patterns(&sys));
    println!("strictly inside all 16 orthants: {}", covers_all_orthants(&sys));
    Ok(())
}
