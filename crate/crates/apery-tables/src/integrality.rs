//! Arithmetic structure of the tables: the lcm sequence d_n, the modular
//! witness behind the Z-linear decomposition, and bulk integrality sweeps.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::ball::{ln_rational, BallReal};
use crate::error::{Error, Result};
use crate::poly::{PolyPair, Rat};
use crate::table::RationalTable;

type Int = BigInt;

/// d_n = lcm(1..n), built by prime powers: d_n = d_{n-1} * p exactly when
/// n = p^k, else d_n = d_{n-1}.
pub struct LcmCache {
    values: Vec<Int>,
}

impl LcmCache {
    pub fn new(n_max: u32) -> Self {
        let mut values = Vec::with_capacity(n_max as usize + 1);
        values.push(Int::one()); // d_0 := 1 by convention
        let mut current = Int::one();
        for n in 1..=n_max {
            if let Some(p) = prime_power_base(n) {
                current *= Int::from(p);
            }
            values.push(current.clone());
        }
        LcmCache { values }
    }

    pub fn get(&self, n: u32) -> &Int {
        &self.values[n as usize]
    }
}

/// Some(p) when n = p^k for a prime p, else None.
fn prime_power_base(n: u32) -> Option<u32> {
    if n < 2 {
        return None;
    }
    let mut m = n;
    let mut p = 0;
    for cand in 2..=n {
        if cand * cand > n {
            break;
        }
        if m % cand == 0 {
            p = cand;
            while m % cand == 0 {
                m /= cand;
            }
            break;
        }
    }
    if p == 0 {
        return Some(n); // n itself is prime
    }
    if m == 1 {
        Some(p)
    } else {
        None
    }
}

pub fn lcm_upto(n: u32) -> Int {
    assert!(n >= 1);
    LcmCache::new(n).get(n).clone()
}

/// The modular witness at (i, j): an integer x with
/// f(i',j') = x f(0,j') and g(0,j') = x g(i',j')  (mod f(i',0)),
/// where i' = i/gcd(i,j), j' = j/gcd(i,j).
#[derive(Clone, Debug)]
pub struct WitnessRecord {
    pub i: u32,
    pub j: u32,
    pub d: u32,
    pub x: Int,
    pub modulus: Int,
}

fn int_value(pair_value: Rat) -> Result<Int> {
    if pair_value.denom().is_one() {
        Ok(pair_value.numer().clone())
    } else {
        Err(Error::UnsupportedPair)
    }
}

fn pair_has_cubic_boundary(pair: &PolyPair) -> bool {
    let one = Rat::one();
    let a = pair.f.coeff_at_i0();
    let b = pair.f.coeff_at_j0();
    (a == one || a == -one.clone()) && (b == one || b == -one)
}

pub fn find_witness(pair: &PolyPair, i: u32, j: u32) -> Result<WitnessRecord> {
    assert!(i >= 1 && j >= 1);
    if !pair_has_cubic_boundary(pair) {
        return Err(Error::UnsupportedPair);
    }
    let d = i.gcd(&j);
    let (ir, jr) = ((i / d) as i64, (j / d) as i64);
    let modulus = int_value(pair.f_at(ir, 0))?.abs();
    let x = if modulus.is_one() {
        Int::zero()
    } else {
        let f_ij = int_value(pair.f_at(ir, jr))?;
        let f_0j = int_value(pair.f_at(0, jr))?;
        // cond3 makes gcd(f(0,j'), f(i',0)) = 1, so the inverse exists
        let egcd = f_0j.extended_gcd(&modulus);
        if !egcd.gcd.abs().is_one() {
            return Err(Error::InvariantViolation(format!(
                "f(0,{jr}) not invertible mod f({ir},0)"
            )));
        }
        // normalize in case gcd came out as -1
        let inv = egcd.x * egcd.gcd.signum();
        (f_ij * inv).mod_floor(&modulus)
    };
    // induced congruence g(0,j') = x g(i',j') (mod f(i',0))
    let g_0j = int_value(pair.g_at(0, jr))?;
    let g_ij = int_value(pair.g_at(ir, jr))?;
    if !(g_0j - &x * g_ij).mod_floor(&modulus).is_zero() {
        return Err(Error::InvariantViolation(format!(
            "witness congruence for g fails at ({i},{j})"
        )));
    }
    Ok(WitnessRecord { i, j, d, x, modulus })
}

/// Integer coefficients (c1, c2, c3) with
/// u_{i,j} = c1 u_{i-1,j} + c2 u_{i,j-1} + c3 u_{i-1,j-1} exactly.
pub fn zlinear_decomposition(
    pair: &PolyPair,
    table: &RationalTable,
    i: u32,
    j: u32,
) -> Result<(Int, Int, Int)> {
    assert!(i >= 1 && j >= 1, "decomposition needs interior indices");
    let w = find_witness(pair, i, j)?;
    let (ir, jr) = ((i / w.d) as i64, (j / w.d) as i64);
    let f_i0 = int_value(pair.f_at(ir, 0))?;
    let exact_div = |num: Int| -> Result<Int> {
        let (q, r) = num.div_rem(&f_i0);
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::InvariantViolation(format!(
                "witness coefficients not divisible by f({ir},0) at ({i},{j})"
            )))
        }
    };
    let c1 = exact_div(int_value(pair.f_at(ir, jr))? - &w.x * int_value(pair.f_at(0, jr))?)?;
    let c3 = exact_div(int_value(pair.g_at(0, jr))? - &w.x * int_value(pair.g_at(ir, jr))?)?;
    let c2 = w.x.clone();
    // reconstruction must be exact
    let lhs = table.at(i, j)?;
    let rhs = Rat::from_integer(c1.clone()) * table.at(i - 1, j)?
        + Rat::from_integer(c2.clone()) * table.at(i, j - 1)?
        + Rat::from_integer(c3.clone()) * table.at(i - 1, j - 1)?;
    if *lhs != rhs {
        return Err(Error::InvariantViolation(format!(
            "Z-linear reconstruction fails at ({i},{j})"
        )));
    }
    Ok((c1, c2, c3))
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum IntegralityMode {
    Strict,
    Empirical,
}

#[derive(Clone, Debug)]
pub struct IntegralityReport {
    pub mode: IntegralityMode,
    pub n: u32,
    pub pass: bool,
    /// first offending cell and its denominator, strict mode
    pub first_failure: Option<(u32, u32, Int)>,
    /// per-antidiagonal smallest multiplier clearing all denominators,
    /// empirical mode (indexed by i + j)
    pub antidiagonal_clearers: Vec<Int>,
    pub max_denominator: Int,
}

/// Strict mode asserts q integral and d_{max(i,j)}^degree * p integral;
/// empirical mode only ledgers the exact denominators.
pub fn verify_integrality(
    qtable: &RationalTable,
    ptable: &RationalTable,
    n: u32,
    mode: IntegralityMode,
) -> Result<IntegralityReport> {
    assert!(qtable.imax >= n && ptable.imax >= n);
    let degree = ptable.pair.degree();
    let lcms = LcmCache::new(n);
    let mut clearers = vec![Int::one(); 2 * n as usize + 1];
    let mut max_den = Int::one();
    let mut first_failure = None;
    'sweep: for i in 0..=n {
        for j in 0..=n {
            let q_den = qtable.at(i, j)?.denom().clone();
            let p_den = ptable.at(i, j)?.denom().clone();
            max_den = max_den.max(q_den.clone()).max(p_den.clone());
            let diag = (i + j) as usize;
            clearers[diag] = clearers[diag].lcm(&q_den).lcm(&p_den);
            if mode == IntegralityMode::Strict {
                if !q_den.is_one() {
                    first_failure = Some((i, j, q_den));
                    break 'sweep;
                }
                let scale = lcms.get(i.max(j)).pow(degree);
                if !scale.is_multiple_of(&p_den) {
                    first_failure = Some((i, j, p_den));
                    break 'sweep;
                }
            }
        }
    }
    Ok(IntegralityReport {
        mode,
        n,
        pass: first_failure.is_none(),
        first_failure,
        antidiagonal_clearers: clearers,
        max_denominator: max_den,
    })
}

/// (n, log(d_n)/n) with rigorous log enclosures; trends toward 1 without any
/// convergence assertion.
pub fn lcm_growth(n_max: u32, digits: u32) -> Vec<(u32, BallReal)> {
    assert!(n_max >= 2);
    let lcms = LcmCache::new(n_max);
    (1..=n_max)
        .map(|n| {
            let dn = Rat::from_integer(lcms.get(n).clone());
            let l = ln_rational(&dn, digits).mul_rat(&Rat::new(Int::one(), Int::from(n)));
            (n, l)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int_rat, rat, zeta2_pair, zeta3_pair};
    use crate::table::{build, BoundarySpec, TableMode};

    #[test]
    fn lcm_small_values() {
        assert_eq!(lcm_upto(1), Int::one());
        assert_eq!(lcm_upto(4), Int::from(12));
        assert_eq!(lcm_upto(10), Int::from(2520));
    }

    #[test]
    fn lcm_matches_fold_oracle_to_1000() {
        let cache = LcmCache::new(1000);
        let mut fold = Int::one();
        for n in 1..=1000u32 {
            fold = fold.lcm(&Int::from(n));
            assert_eq!(cache.get(n), &fold, "d_{n}");
        }
    }

    #[test]
    fn lcm_steps_are_one_or_prime() {
        let cache = LcmCache::new(10_000);
        for n in 2..=10_000u32 {
            let step = cache.get(n) / cache.get(n - 1);
            if !step.is_one() {
                // step must be the prime base of n
                assert_eq!(Some(&step), prime_power_base(n).map(Int::from).as_ref());
            }
        }
    }

    #[test]
    fn witness_hand_values() {
        let pair = zeta3_pair();
        let w = find_witness(&pair, 2, 1).unwrap();
        assert_eq!(w.modulus, Int::from(8));
        assert_eq!(w.x, Int::from(5));
        let w = find_witness(&pair, 2, 2).unwrap();
        assert_eq!(w.d, 2);
        assert_eq!(w.modulus, Int::from(1));
        assert_eq!(w.x, Int::zero());
        let w = find_witness(&pair, 3, 2).unwrap();
        assert_eq!(w.modulus, Int::from(27));
        assert_eq!(w.x, Int::from(22));
    }

    #[test]
    fn witness_rejects_non_cubic_pairs() {
        assert!(matches!(
            find_witness(&zeta2_pair(), 2, 1),
            Err(Error::UnsupportedPair)
        ));
    }

    #[test]
    fn decomposition_hand_values() {
        let pair = zeta3_pair();
        let q = build(&pair, &BoundarySpec::Unit, 4, 4, TableMode::Full).unwrap();
        let p = build(&pair, &BoundarySpec::Series, 4, 4, TableMode::Full).unwrap();
        let (c1, c2, c3) = zlinear_decomposition(&pair, &q, 2, 1).unwrap();
        assert_eq!((c1, c2, c3), (Int::from(2), Int::from(5), Int::from(-2)));
        let (c1, c2, c3) = zlinear_decomposition(&pair, &p, 1, 1).unwrap();
        assert_eq!((c1, c2, c3), (Int::from(6), Int::zero(), Int::from(-1)));
    }

    #[test]
    fn integrality_strict_small() {
        let pair = zeta3_pair();
        let q = build(&pair, &BoundarySpec::Unit, 12, 12, TableMode::Full).unwrap();
        let p = build(&pair, &BoundarySpec::Series, 12, 12, TableMode::Full).unwrap();
        let report = verify_integrality(&q, &p, 12, IntegralityMode::Strict).unwrap();
        assert!(report.pass, "failure: {:?}", report.first_failure);
        // hand-checked cells
        assert_eq!(*p.at(2, 1).unwrap(), rat(125, 8));
        assert_eq!(rat(125, 8) * int_rat(8), int_rat(125));
        assert_eq!(*p.at(2, 2).unwrap(), rat(351, 4));
        assert_eq!(rat(351, 4) * int_rat(8), int_rat(702));
    }

    #[test]
    fn integrality_empirical_for_zeta2() {
        let pair = zeta2_pair();
        let q = build(&pair, &BoundarySpec::Unit, 8, 8, TableMode::Full).unwrap();
        let p = build(&pair, &BoundarySpec::Series, 8, 8, TableMode::Full).unwrap();
        let report = verify_integrality(&q, &p, 8, IntegralityMode::Empirical).unwrap();
        assert!(report.pass);
        assert!(report.max_denominator > Int::one());
    }

    #[test]
    fn lcm_growth_values() {
        let growth = lcm_growth(100, 25);
        let at = |n: u32| growth[n as usize - 1].1.clone();
        // log(2520)/10 = 0.783201418...
        let v10 = at(10);
        assert!(v10.lo_rat() > rat(783_201, 1_000_000));
        assert!(v10.hi_rat() < rat(783_202, 1_000_000));
        let v100 = at(100);
        assert!(v100.lo_rat() > rat(85, 100) && v100.hi_rat() < rat(105, 100));
        assert!(at(1).contains_rat(&Rat::zero()));
    }
}
