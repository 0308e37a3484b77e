//! The Hurwitz-zeta continued fraction: convergents at rational points, the
//! tails omega(i), and the bridge identity that recovers zeta(3) from the
//! first two table columns.
//!
//!     cargo run --example cfrac_bridge

use apery_tables::ball::BallReal;
use apery_tables::contfrac::{bridge_identity, convergents, omega_tail, p_poly};
use apery_tables::poly::{int_rat, rat};
use apery_tables::refvalues::hurwitz_zeta3;

fn main() {
    println!("P(n, x) = n^3 + (n+1)^3 + (4n+2)x(x+1):");
    for n in 0..4i64 {
        println!("  P({n}, 1) = {}", p_poly(n, &int_rat(1)));
    }

    println!("\ndepth-60 convergents vs the Euler-Maclaurin oracle zeta(3, x+1):");
    for x in [int_rat(0), int_rat(1), rat(1, 2), int_rat(2)] {
        let v = convergents(&x, 60).unwrap().last().unwrap().value();
        let oracle = hurwitz_zeta3(&(&x + int_rat(1)), 30).unwrap();
        let err = oracle.add_rat(&-v.clone()).abs();
        println!(
            "  x = {:4}  value = {}  |err| = {}",
            x.to_string(),
            BallReal::from_rational(&v, 20).mid_decimal(),
            err.mid_decimal()
        );
    }

    println!("\ntails omega(i) (heuristic radii from consecutive truncations):");
    for i in 0..4u32 {
        let w = omega_tail(i, 60, 30).unwrap();
        println!("  omega({i}) = {} +- {}", w.value.mid_decimal(), w.value.rad_decimal());
    }

    println!("\nbridge residual |(omega p_i0 + p_i1)/(omega q_i0 + q_i1) - zeta(3)|:");
    for depth in [20usize, 40, 80] {
        let r = bridge_identity(3, depth, 40).unwrap();
        println!("  i = 3, depth {depth:3}: {}", r.mid_decimal());
    }
}
