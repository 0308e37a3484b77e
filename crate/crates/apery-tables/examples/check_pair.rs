//! Check the structural conditions (splitting identity, shift identity, unit
//! boundary coefficients, positivity) for every built-in pair and for a pair
//! loaded from a JSON definition.
//!
//!     cargo run --example check_pair

use apery_tables::poly::{pair_to_file, parse_pair_file, preset, verify_conditions};

fn main() {
    for name in ["zeta3", "log2-paper", "log2-alt", "zeta2"] {
        let pair = preset(name).unwrap();
        let report = verify_conditions(&pair, 10);
        println!(
            "{name:11} cond1={} cond2={} cond3={} cond4={:?} admissible={}",
            report.cond1,
            report.cond2,
            report.cond3,
            report.cond4,
            report.admissible()
        );
    }

    // round-trip a pair through the JSON file format
    let text = pair_to_file(&preset("zeta3").unwrap());
    let back = parse_pair_file(&text).unwrap();
    println!("\npair file round-trip ok: {}", back == preset("zeta3").unwrap());
    println!("file format:\n{text}");
}
