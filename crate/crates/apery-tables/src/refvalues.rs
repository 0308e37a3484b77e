//! Independent high-precision oracles: Hurwitz zeta at integer s >= 2 and
//! rational x via Euler-Maclaurin with an explicit remainder bound, plus
//! log 2 through its geometric-rate series.
//!
//! The Euler-Maclaurin pieces are summed as exact rationals; the only
//! rounding happens once, when the total is packed into a ball, and the
//! remainder bound is added to the radius. For f(t) = (t+x)^(-s) all high
//! derivatives keep a fixed sign, so the remainder after K correction terms
//! is bounded by the first omitted term.

use std::collections::HashMap;
use std::sync::Mutex;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::ball::BallReal;
use crate::error::{Error, Result};
use crate::poly::{int_rat, Rat};

type Int = BigInt;

fn bernoulli_cache() -> &'static Mutex<Vec<Rat>> {
    static CACHE: OnceLock<Mutex<Vec<Rat>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(vec![Rat::one(), Rat::new(Int::from(-1), Int::from(2))]))
}

/// Bernoulli number B_n (B_1 = -1/2 convention), via the defining recurrence
/// sum_{k<=n} C(n+1,k) B_k = 0.
pub fn bernoulli(n: usize) -> Rat {
    let mut cache = bernoulli_cache().lock().expect("bernoulli cache poisoned");
    while cache.len() <= n {
        let m = cache.len(); // computing B_m
        if m % 2 == 1 {
            cache.push(Rat::zero());
            continue;
        }
        let mut acc = Rat::zero();
        let mut binom = Int::one(); // C(m+1, 0)
        for (k, b) in cache.iter().enumerate() {
            if !b.is_zero() {
                acc += b * Rat::from_integer(binom.clone());
            }
            // C(m+1, k+1) from C(m+1, k)
            binom = binom * Int::from(m + 1 - k) / Int::from(k + 1);
        }
        let bm = -acc / Rat::from_integer(Int::from(m as u64 + 1));
        cache.push(bm);
    }
    cache[n].clone()
}

/// Rising factorial s (s+1) ... (s+m-1).
fn pochhammer(s: u32, m: u32) -> Int {
    let mut acc = Int::one();
    for t in 0..m {
        acc *= Int::from(s + t);
    }
    acc
}

fn factorial(m: u32) -> Int {
    let mut acc = Int::one();
    for t in 2..=m {
        acc *= Int::from(t);
    }
    acc
}

fn pow_rat(x: &Rat, e: u32) -> Rat {
    let mut acc = Rat::one();
    let mut base = x.clone();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc *= &base;
        }
        base = &base * &base;
        e >>= 1;
    }
    acc
}

/// Hurwitz zeta(s, x) for integer s >= 2 and rational x > 0, as a ball of
/// radius <= 10^(-digits).
pub fn hurwitz_zeta(s: u32, x: &Rat, digits: u32) -> Result<BallReal> {
    if !x.is_positive() {
        return Err(Error::Domain(format!("hurwitz zeta needs x > 0, got {x}")));
    }
    assert!(s >= 2);
    let target = Rat::new(Int::one(), crate::ball::pow10(digits + 5));
    let mut n_cut = (digits as usize).max(16);
    loop {
        if let Some(ball) = try_euler_maclaurin(s, x, digits, n_cut, &target) {
            return Ok(ball);
        }
        n_cut *= 2;
    }
}

fn try_euler_maclaurin(
    s: u32,
    x: &Rat,
    digits: u32,
    n_cut: usize,
    target: &Rat,
) -> Option<BallReal> {
    // partial sum over n = 0 .. n_cut-1
    let mut total = Rat::zero();
    for n in 0..n_cut {
        total += pow_rat(&(x + int_rat(n as i64)), s).recip();
    }
    let a = x + int_rat(n_cut as i64); // evaluation point N + x
    let a_inv = a.recip();
    // integral term: a^(1-s) / (s-1)
    total += pow_rat(&a_inv, s - 1) / int_rat((s - 1) as i64);
    // half term: a^(-s) / 2
    total += pow_rat(&a_inv, s) / int_rat(2);
    // corrections: + B_{2j}/(2j)! * (s)_{2j-1} * a^(-s-2j+1)
    let mut prev_mag: Option<Rat> = None;
    let mut j: u32 = 1;
    loop {
        let b = bernoulli(2 * j as usize);
        let coeff = Rat::from_integer(pochhammer(s, 2 * j - 1)) / Rat::from_integer(factorial(2 * j));
        let term = b * coeff * pow_rat(&a_inv, s + 2 * j - 1);
        let mag = term.abs();
        if &mag < target {
            // remainder is bounded by this first omitted term
            let mut ball = BallReal::from_rational(&total, digits);
            let extra = ((mag * Rat::from_integer(crate::ball::pow10(digits)))
                .ceil()
                .to_integer()
                + 1)
                * 2;
            ball = BallReal::from_parts(
                ball.mid_raw().clone(),
                ball.rad_raw() + extra,
                digits,
            );
            return Some(ball);
        }
        if let Some(prev) = &prev_mag {
            if &mag > prev {
                // divergent regime reached before the target: need a larger cutoff
                return None;
            }
        }
        prev_mag = Some(mag);
        total += term;
        j += 1;
    }
}

/// zeta(3, x): the s = 3 specialization used throughout.
pub fn hurwitz_zeta3(x: &Rat, digits: u32) -> Result<BallReal> {
    hurwitz_zeta(3, x, digits)
}

/// zeta(3), memoized per precision.
pub fn zeta3(digits: u32) -> BallReal {
    static CACHE: OnceLock<Mutex<HashMap<u32, BallReal>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(b) = cache.lock().expect("zeta3 cache poisoned").get(&digits) {
        return b.clone();
    }
    let b = hurwitz_zeta(3, &Rat::one(), digits).expect("zeta(3,1) is in domain");
    cache
        .lock()
        .expect("zeta3 cache poisoned")
        .insert(digits, b.clone());
    b
}

pub fn zeta2_ref(digits: u32) -> BallReal {
    hurwitz_zeta(2, &Rat::one(), digits).expect("zeta(2,1) is in domain")
}

/// log 2 = sum_{k>=1} 1/(k 2^k); the tail after K terms is below 1/((K+1) 2^K).
pub fn log2_ref(digits: u32) -> BallReal {
    let k_max = ((digits as f64 + 6.0) * std::f64::consts::LN_10 / std::f64::consts::LN_2).ceil()
        as u32
        + 2;
    let mut sum = Rat::zero();
    let mut pow = Rat::one();
    let half = Rat::new(Int::one(), Int::from(2));
    for k in 1..=k_max {
        pow *= &half;
        sum += &pow / int_rat(k as i64);
    }
    let tail = &pow / int_rat(k_max as i64 + 1) * int_rat(2);
    let ball = BallReal::from_rational(&sum, digits);
    let extra = (tail * Rat::from_integer(crate::ball::pow10(digits)))
        .ceil()
        .to_integer()
        + 1;
    BallReal::from_parts(ball.mid_raw().clone(), ball.rad_raw() + extra, digits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_rat, rat};

    #[test]
    fn bernoulli_first_values() {
        assert_eq!(bernoulli(0), Rat::one());
        assert_eq!(bernoulli(1), rat(-1, 2));
        assert_eq!(bernoulli(2), rat(1, 6));
        assert_eq!(bernoulli(4), rat(-1, 30));
        assert_eq!(bernoulli(12), rat(-691, 2730));
        assert_eq!(bernoulli(7), Rat::zero());
    }

    #[test]
    fn zeta3_first_digits() {
        let z = zeta3(40);
        // 39-decimal truncation of zeta(3)
        let reference =
            parse_rat("1202056903159594285399738161511449990764/1000000000000000000000000000000000000000")
                .unwrap();
        let ulp = rat(1, 10i64.pow(13)) * rat(1, 10i64.pow(13)) * rat(1, 10i64.pow(13));
        let diff = (z.mid_rat() - reference).abs();
        assert!(diff < ulp * rat(2, 1), "zeta(3) enclosure wrong");
        assert!(z.rad_rat() < rat(1, 10i64.pow(18)) * rat(1, 10i64.pow(18)));
    }

    #[test]
    fn zeta2_first_digits() {
        let z = zeta2_ref(30);
        let reference =
            parse_rat("1644934066848226436472415166646/1000000000000000000000000000000").unwrap();
        assert!(z.contains_rat(&reference));
    }

    #[test]
    fn log2_first_digits() {
        let l = log2_ref(30);
        let reference =
            parse_rat("693147180559945309417232121458/1000000000000000000000000000000").unwrap();
        assert!(l.contains_rat(&reference));
    }

    #[test]
    fn hurwitz_shift_identity() {
        // zeta(3, 2) = zeta(3) - 1
        let a = hurwitz_zeta3(&int_rat(2), 35).unwrap();
        let b = zeta3(35).add_rat(&int_rat(-1));
        assert!(a.overlaps(&b));
    }

    #[test]
    fn hurwitz_at_three_halves() {
        // zeta(3, 3/2) = 7 zeta(3) - 8 by odd-term rearrangement
        let a = hurwitz_zeta3(&rat(3, 2), 35).unwrap();
        let b = zeta3(35).mul_rat(&int_rat(7)).add_rat(&int_rat(-8));
        assert!(a.overlaps(&b));
    }

    #[test]
    fn domain_rejection() {
        assert!(hurwitz_zeta3(&rat(-1, 2), 20).is_err());
        assert!(hurwitz_zeta3(&Rat::zero(), 20).is_err());
    }

    #[test]
    fn refinement_is_monotone() {
        let coarse = zeta3(20);
        let fine = zeta3(40);
        assert!(fine.rad_rat() < coarse.rad_rat());
        assert!(coarse.contains_rat(&fine.mid_rat()));
    }
}
