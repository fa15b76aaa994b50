//! Prints the census seed set statistics for a crossing cap.
//!
//! ```text
//! cargo run --release -p stgen-generate --example census -- 4
//! ```

use std::time::Instant;

fn main() {
    let cap: usize = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(3);
    let start = Instant::now();
    let (out, stats) = stgen_generate::generate_minimal_with_stats(cap);
    let elapsed = start.elapsed();
    println!("crossing cap      {cap}");
    println!("pairings          {}", stats.pairings);
    println!("connected         {}", stats.connected_pairings);
    println!("raw candidates    {}", stats.raw_candidates);
    println!("valid candidates  {}", stats.valid_candidates);
    println!("reduced forms     {}", stats.reduced_forms);
    println!("survivors         {}", stats.survivors);
    println!("elapsed           {elapsed:.2?}");
    for p in out.iter().take(8) {
        println!("  {p}");
    }
    if out.len() > 8 {
        println!("  … {} more", out.len() - 8);
    }
}
