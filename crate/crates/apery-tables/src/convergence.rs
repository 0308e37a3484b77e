//! Cross-differences, ratio telescoping, the rigorous table-internal
//! enclosure of zeta(3), and the linear forms eps = q zeta(3) - p.

use num_traits::{Signed, Zero};

use crate::ball::BallReal;
use crate::error::{Error, Result};
use crate::poly::{int_rat, rat, PolyPair, Rat};
use crate::refvalues::zeta3;
use crate::table::RationalTable;

/// delta^row_{i,j} = p_{i-1,j} q_{i-1,j-1} - p_{i-1,j-1} q_{i-1,j} and
/// delta^col_{i,j} = p_{i,j-1} q_{i-1,j-1} - p_{i-1,j-1} q_{i,j-1}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossDifference {
    pub i: u32,
    pub j: u32,
    pub row_value: Rat,
    pub col_value: Rat,
}

pub fn delta_row(ptable: &RationalTable, qtable: &RationalTable, i: u32, j: u32) -> Result<Rat> {
    assert!(i >= 1 && j >= 1);
    Ok(ptable.at(i - 1, j)? * qtable.at(i - 1, j - 1)?
        - ptable.at(i - 1, j - 1)? * qtable.at(i - 1, j)?)
}

pub fn delta_col(ptable: &RationalTable, qtable: &RationalTable, i: u32, j: u32) -> Result<Rat> {
    assert!(i >= 1 && j >= 1);
    Ok(ptable.at(i, j - 1)? * qtable.at(i - 1, j - 1)?
        - ptable.at(i - 1, j - 1)? * qtable.at(i, j - 1)?)
}

pub fn cross_difference(
    ptable: &RationalTable,
    qtable: &RationalTable,
    i: u32,
    j: u32,
) -> Result<CrossDifference> {
    Ok(CrossDifference {
        i,
        j,
        row_value: delta_row(ptable, qtable, i, j)?,
        col_value: delta_col(ptable, qtable, i, j)?,
    })
}

/// The two exact identities linking the cross-differences for any admissible
/// pair:
///
///   f(0,j) delta^row_{i,j}   = f(i,0) delta^col_{i,j}
///   f(0,j) delta^row_{i+1,j} = g(i,0) delta^col_{i,j}
///
/// Checked pointwise for 1 <= i, j <= n (the second one needs row i+1, so it
/// runs for i <= n-1 when the tables stop at n).
pub fn check_delta_identities(
    pair: &PolyPair,
    ptable: &RationalTable,
    qtable: &RationalTable,
    n: u32,
) -> Result<()> {
    for i in 1..=n {
        for j in 1..=n {
            let dcol = delta_col(ptable, qtable, i, j)?;
            let drow = delta_row(ptable, qtable, i, j)?;
            if pair.f_at(0, j as i64) * &drow != pair.f_at(i as i64, 0) * &dcol {
                return Err(Error::InvariantViolation(format!(
                    "row/col cross-difference identity fails at ({i},{j})"
                )));
            }
            if i + 1 <= ptable.imax {
                let drow_up = delta_row(ptable, qtable, i + 1, j)?;
                if pair.f_at(0, j as i64) * &drow_up != pair.g_at(i as i64, 0) * &dcol {
                    return Err(Error::InvariantViolation(format!(
                        "shifted cross-difference identity fails at ({i},{j})"
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Closed forms special to the zeta3 tables: delta^row = j^-3, delta^col = i^-3.
pub fn check_delta_closed_forms(
    ptable: &RationalTable,
    qtable: &RationalTable,
    n: u32,
) -> Result<()> {
    for i in 1..=n {
        for j in 1..=n {
            let want_row = int_rat((j as i64).pow(3)).recip();
            let want_col = int_rat((i as i64).pow(3)).recip();
            if delta_row(ptable, qtable, i, j)? != want_row {
                return Err(Error::InvariantViolation(format!(
                    "delta^row at ({i},{j}) differs from j^-3"
                )));
            }
            if delta_col(ptable, qtable, i, j)? != want_col {
                return Err(Error::InvariantViolation(format!(
                    "delta^col at ({i},{j}) differs from i^-3"
                )));
            }
        }
    }
    Ok(())
}

/// r_{i,j} = p_{i,j} / q_{i,j}.
pub fn ratio(ptable: &RationalTable, qtable: &RationalTable, i: u32, j: u32) -> Result<Rat> {
    let q = qtable.at(i, j)?;
    if q.is_zero() {
        return Err(Error::Domain(format!("q({i},{j}) = 0 in ratio")));
    }
    Ok(ptable.at(i, j)? / q)
}

/// Exact telescoping along a row:
/// r_{i,j} - r_{i,j-1} = delta^row_{i+1,j} / (q_{i,j} q_{i,j-1}); along a
/// column: r_{i,j} - r_{i-1,j} = delta^col_{i,j+1} / (q_{i,j} q_{i-1,j}).
pub fn check_telescoping(
    ptable: &RationalTable,
    qtable: &RationalTable,
    n: u32,
) -> Result<()> {
    for i in 1..=n {
        for j in 1..=n {
            if i + 1 <= ptable.imax {
                let lhs = ratio(ptable, qtable, i, j)? - ratio(ptable, qtable, i, j - 1)?;
                let rhs = delta_row(ptable, qtable, i + 1, j)?
                    / (qtable.at(i, j)? * qtable.at(i, j - 1)?);
                if lhs != rhs {
                    return Err(Error::InvariantViolation(format!(
                        "row telescoping fails at ({i},{j})"
                    )));
                }
            }
            if j + 1 <= ptable.jmax {
                let lhs = ratio(ptable, qtable, i, j)? - ratio(ptable, qtable, i - 1, j)?;
                let rhs = delta_col(ptable, qtable, i, j + 1)?
                    / (qtable.at(i, j)? * qtable.at(i - 1, j)?);
                if lhs != rhs {
                    return Err(Error::InvariantViolation(format!(
                        "column telescoping fails at ({i},{j})"
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Upper bound on sum_{k >= j} k^-3: the integral bound 1/(2(j-1)^2) for
/// j >= 2; for j = 1 a coarse rational upper bound on the full sum zeta(3).
pub fn tail_bound(j: u32) -> Rat {
    assert!(j >= 1);
    if j == 1 {
        rat(121, 100)
    } else {
        Rat::new(1.into(), 2 * num_bigint::BigInt::from(j - 1).pow(2))
    }
}

/// Rigorous enclosure [lo, hi] of zeta(3) built only from the tables:
/// lo = r_{N,N}, hi = lo + tail_bound(N) / q_{N,N}^2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enclosure {
    pub n: u32,
    pub lo: Rat,
    pub hi: Rat,
}

impl Enclosure {
    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &Rat) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_interval(&self, lo: &Rat, hi: &Rat) -> bool {
        &self.lo <= lo && hi <= &self.hi
    }

    pub fn overlaps_ball(&self, b: &BallReal) -> bool {
        self.lo <= b.hi_rat() && b.lo_rat() <= self.hi
    }
}

pub fn zeta3_enclosure(
    qtable: &RationalTable,
    ptable: &RationalTable,
    n: u32,
) -> Result<Enclosure> {
    assert!(n >= 2, "the integral tail bound needs N >= 2");
    let r = ratio(ptable, qtable, n, n)?;
    let q = qtable.at(n, n)?;
    let b = tail_bound(n) / (q * q);
    Ok(Enclosure {
        n,
        lo: r.clone(),
        hi: r + b,
    })
}

/// The linear form eps_{i,j} = q_{i,j} zeta(3) - p_{i,j} as a rigorous ball.
#[derive(Clone, Debug)]
pub struct LinearForm {
    pub i: u32,
    pub j: u32,
    pub q: Rat,
    pub p: Rat,
    pub value: BallReal,
}

impl LinearForm {
    pub fn ratio(&self) -> Rat {
        &self.p / &self.q
    }
}

/// Compute eps_{i,j}; errors with the precision needed when the ball is too
/// wide to certify the value nonzero.
pub fn epsilon(
    qtable: &RationalTable,
    ptable: &RationalTable,
    i: u32,
    j: u32,
    digits: u32,
) -> Result<LinearForm> {
    let q = qtable.at(i, j)?.clone();
    let p = ptable.at(i, j)?.clone();
    let value = zeta3(digits).mul_rat(&q).add_rat(&-p.clone());
    if value.contains_zero() && !(q.is_zero() && p.is_zero()) {
        return Err(Error::InsufficientPrecision { needed: digits * 2 });
    }
    // the paper's bound |eps| <= zeta(3)/q, asserted whenever q > 0
    if q.is_positive() {
        let bound = zeta3(digits).mul_rat(&q.recip());
        if !value.abs().lo_rat().le(&bound.hi_rat()) {
            return Err(Error::InvariantViolation(format!(
                "|eps({i},{j})| exceeds zeta(3)/q"
            )));
        }
    }
    Ok(LinearForm { i, j, q, p, value })
}

/// Cross-validate the Euler-Maclaurin oracle against the table-internal
/// enclosure; disagreement is a hard error. Returns the oracle ball.
pub fn zeta3_cross_checked(enclosure: &Enclosure, digits: u32) -> Result<BallReal> {
    let oracle = zeta3(digits);
    if !enclosure.overlaps_ball(&oracle) {
        return Err(Error::InvariantViolation(format!(
            "zeta(3) oracle at {digits} digits disjoint from the N = {} enclosure",
            enclosure.n
        )));
    }
    Ok(oracle)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::zeta3_pair;
    use crate::table::{build, BoundarySpec, TableMode};

    fn tables(n: u32) -> (RationalTable, RationalTable) {
        let pair = zeta3_pair();
        (
            build(&pair, &BoundarySpec::Series, n, n, TableMode::Full).unwrap(),
            build(&pair, &BoundarySpec::Unit, n, n, TableMode::Full).unwrap(),
        )
    }

    #[test]
    fn delta_hand_values() {
        let (p, q) = tables(4);
        assert_eq!(delta_row(&p, &q, 2, 1).unwrap(), int_rat(1));
        assert_eq!(delta_col(&p, &q, 1, 1).unwrap(), int_rat(1));
        assert_eq!(delta_row(&p, &q, 3, 2).unwrap(), rat(1, 8));
        assert_eq!(delta_col(&p, &q, 3, 2).unwrap(), rat(1, 27));
    }

    #[test]
    fn closed_forms_hold_to_12() {
        let (p, q) = tables(12);
        check_delta_closed_forms(&p, &q, 12).unwrap();
        check_delta_identities(&zeta3_pair(), &p, &q, 12).unwrap();
    }

    #[test]
    fn identities_hold_for_other_presets() {
        for name in ["log2-paper", "log2-alt", "zeta2"] {
            let pair = crate::poly::preset(name).unwrap();
            let p = build(&pair, &BoundarySpec::Series, 8, 8, TableMode::Full).unwrap();
            let q = build(&pair, &BoundarySpec::Unit, 8, 8, TableMode::Full).unwrap();
            check_delta_identities(&pair, &p, &q, 8).unwrap_or_else(|e| panic!("{name}: {e}"));
        }
    }

    #[test]
    fn ratios_and_telescoping() {
        let (p, q) = tables(6);
        assert_eq!(ratio(&p, &q, 1, 1).unwrap(), rat(6, 5));
        assert_eq!(ratio(&p, &q, 2, 2).unwrap(), rat(351, 292));
        // r_{1,1} - r_{0,1} = 1/5 = 1/(1^3 * 5 * 1)
        let d = ratio(&p, &q, 1, 1).unwrap() - ratio(&p, &q, 0, 1).unwrap();
        assert_eq!(d, rat(1, 5));
        check_telescoping(&p, &q, 5).unwrap();
    }

    #[test]
    fn tail_bound_values_and_soundness() {
        assert_eq!(tail_bound(2), rat(1, 2));
        assert_eq!(tail_bound(11), rat(1, 200));
        // brute-force partial tails stay below the bound
        for j in [2u32, 5, 11] {
            let mut partial = Rat::zero();
            for k in j..j + 10_000 {
                partial += int_rat((k as i64).pow(3)).recip();
            }
            assert!(partial < tail_bound(j), "tail bound too small at j = {j}");
        }
        assert!(tail_bound(1) > rat(12021, 10000));
    }

    #[test]
    fn enclosure_at_2_matches_hand_arithmetic() {
        let (p, q) = tables(2);
        let e = zeta3_enclosure(&q, &p, 2).unwrap();
        assert_eq!(e.lo, rat(351, 292));
        assert_eq!(e.width(), rat(1, 2) / int_rat(73 * 73));
        assert!(e.width() < rat(94, 1_000_000));
        let oracle = zeta3(30);
        assert!(e.contains(&oracle.mid_rat()));
    }

    #[test]
    fn enclosures_nest() {
        let (p, q) = tables(8);
        let mut prev = zeta3_enclosure(&q, &p, 2).unwrap();
        for n in 3..=8 {
            let e = zeta3_enclosure(&q, &p, n).unwrap();
            assert!(prev.contains_interval(&e.lo, &e.hi), "not nested at N = {n}");
            prev = e;
        }
    }

    #[test]
    fn epsilon_hand_value() {
        let (p, q) = tables(2);
        let e = epsilon(&q, &p, 1, 1, 30).unwrap();
        // 5 zeta(3) - 6 = 0.010284515797...
        let diff = (e.value.mid_rat() - rat(10284515797, 10i64.pow(12))).abs();
        assert!(diff < rat(1, 10i64.pow(11)));
        assert!(e.value.is_positive());
        let top = epsilon(&q, &p, 0, 0, 30).unwrap();
        assert!(top.value.contains_rat(&zeta3(40).mid_rat()));
    }

    #[test]
    fn epsilon_insufficient_precision() {
        let (p, q) = tables(12);
        // 12 digits is far too few to separate eps_{12,12} from zero
        match epsilon(&q, &p, 12, 12, 10) {
            Err(Error::InsufficientPrecision { needed: 20 }) => {}
            other => panic!("expected precision error, got {other:?}"),
        }
    }

    #[test]
    fn cross_check_agrees() {
        let (p, q) = tables(6);
        let e = zeta3_enclosure(&q, &p, 6).unwrap();
        zeta3_cross_checked(&e, 25).unwrap();
        // a deliberately shifted interval must be rejected
        let bogus = Enclosure {
            n: 6,
            lo: e.lo.clone() + int_rat(1),
            hi: e.hi.clone() + int_rat(1),
        };
        assert!(zeta3_cross_checked(&bogus, 25).is_err());
    }
}
