//! Build the two rational tables for the zeta3 pair and print the corner
//! that can be checked by hand.
//!
//!     cargo run --example build_tables

use apery_tables::poly::zeta3_pair;
use apery_tables::table::{build, BoundarySpec, TableMode};

fn main() {
    let pair = zeta3_pair();
    let q = build(&pair, &BoundarySpec::Unit, 5, 5, TableMode::Full).unwrap();
    let p = build(&pair, &BoundarySpec::Series, 5, 5, TableMode::Full).unwrap();

    println!("q table (unit boundary):");
    for i in 0..=5 {
        let row: Vec<String> = (0..=5).map(|j| q.at(i, j).unwrap().to_string()).collect();
        println!("  {}", row.join("\t"));
    }
    println!("\np table (partial-sum boundary):");
    for i in 0..=5 {
        let row: Vec<String> = (0..=5).map(|j| p.at(i, j).unwrap().to_string()).collect();
        println!("  {}", row.join("\t"));
    }

    println!("\nboth tables satisfy every recurrence: {}", q.verify_consistency() && p.verify_consistency());
    println!("diagonal ratio p55/q55 = {} (zeta(3) = 1.2020569...)", {
        let r = p.diag(5).unwrap() / q.diag(5).unwrap();
        format!("{} ~ {:.10}", r, rat_to_f64(&r))
    });

    // large tables stream two rows at a time to bound memory
    let big = build(&pair, &BoundarySpec::Unit, 200, 200, TableMode::TwoRowStreaming).unwrap();
    println!("q_200,200 has {} digits", big.diag(200).unwrap().numer().to_string().len());
}

fn rat_to_f64(r: &apery_tables::Rat) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}
