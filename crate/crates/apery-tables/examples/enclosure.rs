//! The table-internal rigorous enclosure of zeta(3): nested exact-rational
//! intervals from the diagonal ratio plus the integral tail bound,
//! cross-checked against the independent Euler-Maclaurin oracle.
//!
//!     cargo run --example enclosure

use apery_tables::ball::BallReal;
use apery_tables::convergence::{zeta3_cross_checked, zeta3_enclosure};
use apery_tables::poly::zeta3_pair;
use apery_tables::refvalues::zeta3;
use apery_tables::table::{build, BoundarySpec, TableMode};

fn main() {
    let pair = zeta3_pair();
    let q = build(&pair, &BoundarySpec::Unit, 20, 20, TableMode::Full).unwrap();
    let p = build(&pair, &BoundarySpec::Series, 20, 20, TableMode::Full).unwrap();

    println!("nested enclosures [r_NN, r_NN + tail/q_NN^2]:");
    for n in [2, 5, 10, 20] {
        let e = zeta3_enclosure(&q, &p, n).unwrap();
        let lo = BallReal::from_rational(&e.lo, 40);
        println!("  N={n:2}  lo = {}  width = {}", lo.mid_decimal(), BallReal::from_rational(&e.width(), 40).mid_decimal());
    }

    let e = zeta3_enclosure(&q, &p, 20).unwrap();
    let oracle = zeta3_cross_checked(&e, 40).unwrap();
    println!("\n40-digit oracle inside every enclosure: {}", oracle.mid_decimal());
    println!("oracle radius: {}", zeta3(40).rad_decimal());
}
