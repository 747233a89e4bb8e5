//! Writes the edge list of the k-th graph and reads it back as a check.
//!
//! `cargo run --example export_edges -- 3 /tmp/c3.edges`

use circulant8::cli::edge_list;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let k: i64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(2);
    let path = args.next().unwrap_or_else(|| format!("circulant_k{k}.edges"));
    let text = edge_list(k)?;
    std::fs::write(&path, &text)?;
    let back = std::fs::read_to_string(&path)?;
    let edges = back.lines().filter(|l| !l.starts_with('#')).count();
    println!("{} -> {path}: {edges} edges, identical={}", back.lines().next().unwrap_or(""), back == text);
    Ok(())
}
