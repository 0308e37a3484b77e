//! Independent reference oracles: Hurwitz zeta(3, x) by Euler-Maclaurin
//! summation with rigorous remainder bounds, plus log 2 and zeta(2).
//!
//!     cargo run --example reference_values

use apery_tables::poly::{int_rat, rat};
use apery_tables::refvalues::{hurwitz_zeta3, log2_ref, zeta2_ref, zeta3};

fn main() {
    let z3 = zeta3(50);
    println!("zeta(3)      = {} +- {}", z3.mid_decimal(), z3.rad_decimal());

    for (x, label) in [
        (int_rat(2), "zeta(3, 2)  "),
        (rat(3, 2), "zeta(3, 3/2)"),
        (rat(1, 3), "zeta(3, 1/3)"),
    ] {
        let v = hurwitz_zeta3(&x, 40).unwrap();
        println!("{label} = {} +- {}", v.mid_decimal(), v.rad_decimal());
    }

    // identities the oracles must satisfy
    let lhs = hurwitz_zeta3(&rat(3, 2), 40).unwrap();
    let rhs = zeta3(40).mul_rat(&int_rat(7)).add_rat(&int_rat(-8));
    println!("\nzeta(3, 3/2) = 7 zeta(3) - 8 within radii: {}", lhs.overlaps(&rhs));

    println!("\nlog 2   = {}", log2_ref(40).mid_decimal());
    println!("zeta(2) = {}", zeta2_ref(40).mid_decimal());
}
