//! Diagonal asymptotics: the exact transfer matrices, their limit with
//! eigenvalues 17 +- 12 sqrt 2, and the empirically measured growth rates of
//! the diagonal sequences.
//!
//!     cargo run --example asymptotics

use apery_tables::asymptotics::{
    check_limit_eigen, empirical_rate, transfer_limit, transfer_matrix, QSqrt2,
};
use apery_tables::poly::zeta3_pair;
use apery_tables::table::{build, BoundarySpec, TableMode};
use apery_tables::Rat;

fn main() {
    for n in [1u32, 2, 10] {
        let a = transfer_matrix(n);
        println!("A_{n} = [[{}, {}], [{}, {}]], det = {}", a.a, a.b, a.c, a.d, a.det());
    }
    let lim = transfer_limit();
    println!("limit A = [[{}, {}], [{}, {}]]", lim.a, lim.b, lim.c, lim.d);
    println!("A e = lambda e exactly over Q(sqrt 2) for both eigenpairs: {}", check_limit_eigen());

    let pair = zeta3_pair();
    let q = build(&pair, &BoundarySpec::Unit, 30, 30, TableMode::TwoRowStreaming).unwrap();
    let series: Vec<Rat> = (0..=30).map(|n| q.diag(n).unwrap().clone()).collect();
    let rate = empirical_rate(&series, &QSqrt2::from_ints(17, 12), 40).unwrap();
    println!("\nq diagonal: target 17 + 12 sqrt 2 = {}", rate.target.mid_decimal());
    for (n, r) in rate.ratios.iter().rev().take(3).rev() {
        println!("  q_{n}/q_{} = {:.6}", n - 1, ratio_f64(r));
    }
    println!(
        "relative deviation of the final ratio: {:.4}",
        ratio_f64(&rate.final_ratio_deviation.unwrap())
    );
}

fn ratio_f64(r: &Rat) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}
