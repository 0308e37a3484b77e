//! Integrality of the table entries: modular witnesses, the Z-linear
//! decomposition they certify, and the lcm ladder d_n that clears the p-table
//! denominators.
//!
//!     cargo run --example integrality

use apery_tables::integrality::{
    find_witness, lcm_growth, lcm_upto, verify_integrality, zlinear_decomposition,
    IntegralityMode,
};
use apery_tables::poly::{preset, zeta3_pair};
use apery_tables::table::{build, BoundarySpec, TableMode};

fn main() {
    let pair = zeta3_pair();
    let q = build(&pair, &BoundarySpec::Unit, 12, 12, TableMode::Full).unwrap();
    let p = build(&pair, &BoundarySpec::Series, 12, 12, TableMode::Full).unwrap();

    // strict mode: q integral, d_n^3 p integral
    let report = verify_integrality(&q, &p, 12, IntegralityMode::Strict).unwrap();
    println!("strict integrality to 12x12: pass={}", report.pass);
    println!("largest p denominator: {} (d_12^3 = {})", report.max_denominator, lcm_upto(12).pow(3));

    // the witness x with f(0,j') = x f(i',j') and g(0,j') = x g(i',j') mod f(i',0)
    for (i, j) in [(2, 1), (3, 2), (5, 3)] {
        let w = find_witness(&pair, i, j).unwrap();
        let (c1, c2, c3) = zlinear_decomposition(&pair, &q, i, j).unwrap();
        println!(
            "(i,j)=({i},{j}): witness x={} mod {}; u_ij = {c1} u_(i-1,j) + {c2} u_(i-1,j-1) + {c3} u_(i,j-1)",
            w.x, w.modulus
        );
    }

    // the zeta2 preset violates the unit-boundary condition, so only an
    // empirical denominator ledger is produced there
    let z2 = preset("zeta2").unwrap();
    let q2 = build(&z2, &BoundarySpec::Unit, 10, 10, TableMode::Full).unwrap();
    let p2 = build(&z2, &BoundarySpec::Series, 10, 10, TableMode::Full).unwrap();
    let ledger = verify_integrality(&q2, &p2, 10, IntegralityMode::Empirical).unwrap();
    println!(
        "\nzeta2 empirical ledger: max denominator {}, antidiagonal clearers {:?}",
        ledger.max_denominator,
        &ledger.antidiagonal_clearers[..6]
    );

    // d_n = lcm(1..n) grows like e^n; log(d_n)/n -> 1
    println!("\nlog(d_n)/n:");
    for (n, v) in lcm_growth(60, 20).into_iter().step_by(10) {
        println!("  n={n:3}  {}", v.mid_decimal());
    }
}
