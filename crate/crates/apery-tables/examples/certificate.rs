//! The numerical irrationality certificate: integers a_n, b_n with
//! 0 != |a_n - b_n zeta(3)| -> 0, every inequality certified by ball
//! arithmetic.
//!
//!     cargo run --example certificate

use apery_tables::asymptotics::irrationality_certificate;

fn main() {
    let cert = irrationality_certificate(20, None).unwrap();
    println!("working precision: {} digits\n", cert.digits);
    println!("{:>3} {:>24} {:>24}  |a - b zeta(3)|", "n", "a_n", "b_n");
    for row in &cert.rows {
        println!(
            "{:>3} {:>24} {:>24}  {}",
            row.n,
            row.a.to_string(),
            row.b.to_string(),
            row.scaled.abs().mid_decimal()
        );
    }
    println!("\nall linear forms certified nonzero:     {}", cert.all_nonzero);
    println!("|eps_n| strictly decreasing:            {}", cert.eps_strictly_decreasing);
    println!("scaled forms below 1 for n >= 5:        {}", cert.scaled_below_one);
    println!(
        "scaled forms strictly decreasing:       {} (lcm jumps at prime powers break this)",
        cert.scaled_strictly_decreasing
    );
    println!(
        "\n(1/n) log |d_n^3 eps_n| at n = {}:  {}",
        cert.n,
        cert.rows.last().unwrap().log_scaled_over_n.mid_decimal()
    );
    println!("decay target 3 + log(17 - 12 sqrt 2): {}", cert.target_log.mid_decimal());
}
