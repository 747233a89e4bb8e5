//! Certified routing: reduce the lift of a residue, print the full trace
//! and the resulting generator word, then compare with the BFS distance.
//!
//! `cargo run --example route -- 6 1000`

use circulant8::graph::{bfs_distances, construct};
use circulant8::lattice::build_system;
use circulant8::quotient::generator_set;
use circulant8::reduction::{lift_residue, reduce, word_from_certificate};

fn main() -> Result<(), circulant8::Error> {
    let mut args = std::env::args().skip(1).filter_map(|s| s.parse::<i64>().ok());
    let k = args.next().unwrap_or(4);
    let g = args.next().unwrap_or(123);
    let sys = build_system(k)?;
    let gens = generator_set(k)?;
    let x = lift_residue(g.rem_euclid(gens.n), gens.n)?;

    let cert = reduce(x, &sys)?;
    cert.check(&sys)?;
    let fmt = |m: &[circulant8::LatticeStep]| m.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
    println!("input     {}", cert.input);
    println!("stage 1   {} move(s): {}", cert.stage1_moves.len(), fmt(&cert.stage1_moves));
    println!("stage 2   {} : {}", cert.stage2_case.as_deref().unwrap_or("-"), fmt(&cert.stage2_moves));
    println!("anchor    {}", cert.anchor);
    println!("residual  {}  (l1 = {})", cert.residual, cert.word_length);

    let word = word_from_certificate(&cert, &gens)?;
    let bfs = bfs_distances(&construct(k)?)[word.replay(&gens) as usize];
    println!("word      {word}  reaches {} (bfs distance {bfs})", word.replay(&gens));
    Ok(())
}
