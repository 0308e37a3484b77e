//! Transfer matrices along the diagonal, exact eigen-data over Q(sqrt 2),
//! empirical decay/growth rates, the diagonal three-term recurrence, and the
//! irrationality certificate.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::ball::BallReal;
use crate::convergence::epsilon;
use crate::error::{Error, Result};
use crate::integrality::LcmCache;
use crate::poly::{int_rat, zeta3_pair, Rat};
use crate::table::{build, BoundarySpec, RationalTable, TableMode};

type Int = BigInt;

/// 2x2 exact rational matrix (row major).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat2 {
    pub a: Rat,
    pub b: Rat,
    pub c: Rat,
    pub d: Rat,
}

impl Mat2 {
    pub fn new(a: Rat, b: Rat, c: Rat, d: Rat) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        Mat2 {
            a: &self.a * &o.a + &self.b * &o.c,
            b: &self.a * &o.b + &self.b * &o.d,
            c: &self.c * &o.a + &self.d * &o.c,
            d: &self.c * &o.b + &self.d * &o.d,
        }
    }

    pub fn det(&self) -> Rat {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn apply(&self, v: (&Rat, &Rat)) -> (Rat, Rat) {
        (
            &self.a * v.0 + &self.b * v.1,
            &self.c * v.0 + &self.d * v.1,
        )
    }
}

/// The diagonal transfer matrix: the exact product of the in-row step
/// [[(6n^3+9n^2+5n+1)/(n+1)^3, -n^3/(n+1)^3], [1, 0]] with the cross-row step
/// [[6, -1], [1, 0]]; it maps (u_{n-1,n}, u_{n-1,n-1}) to (u_{n,n+1}, u_{n,n})
/// for any solution u of the zeta3 system.
pub fn transfer_matrix(n: u32) -> Mat2 {
    assert!(n >= 1);
    let n = n as i64;
    let cube = int_rat((n + 1).pow(3));
    let row_step = Mat2::new(
        int_rat(6 * n.pow(3) + 9 * n.pow(2) + 5 * n + 1) / &cube,
        -int_rat(n.pow(3)) / &cube,
        Rat::one(),
        Rat::zero(),
    );
    let cross_step = Mat2::new(int_rat(6), int_rat(-1), Rat::one(), Rat::zero());
    row_step.mul(&cross_step)
}

/// Limit of the transfer matrices.
pub fn transfer_limit() -> Mat2 {
    Mat2::new(int_rat(35), int_rat(-6), int_rat(6), int_rat(-1))
}

/// Assert (u_{n,n+1}, u_{n,n}) = A_n (u_{n-1,n}, u_{n-1,n-1}) exactly for
/// 1 <= n <= n_max on the given table.
pub fn check_transfer_on_table(table: &RationalTable, n_max: u32) -> Result<()> {
    for n in 1..=n_max {
        let a = transfer_matrix(n);
        let prev = (table.superdiag(n - 1)?, table.diag(n - 1)?);
        let (top, bot) = a.apply(prev);
        if &top != table.superdiag(n)? || &bot != table.diag(n)? {
            return Err(Error::InvariantViolation(format!(
                "transfer matrix fails on the table at n = {n}"
            )));
        }
    }
    Ok(())
}

/// Element a + b sqrt(2) of Q(sqrt 2), with exact arithmetic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSqrt2 {
    pub a: Rat,
    pub b: Rat,
}

impl QSqrt2 {
    pub fn new(a: Rat, b: Rat) -> Self {
        QSqrt2 { a, b }
    }

    pub fn from_ints(a: i64, b: i64) -> Self {
        QSqrt2::new(int_rat(a), int_rat(b))
    }

    pub fn add(&self, o: &QSqrt2) -> QSqrt2 {
        QSqrt2::new(&self.a + &o.a, &self.b + &o.b)
    }

    pub fn mul(&self, o: &QSqrt2) -> QSqrt2 {
        QSqrt2::new(
            &self.a * &o.a + int_rat(2) * &self.b * &o.b,
            &self.a * &o.b + &self.b * &o.a,
        )
    }

    pub fn scale(&self, r: &Rat) -> QSqrt2 {
        QSqrt2::new(&self.a * r, &self.b * r)
    }

    /// Rigorous ball at the given scale.
    pub fn to_ball(&self, digits: u32) -> BallReal {
        let sqrt2 = BallReal::from_int(2, digits).nth_root(2).expect("2 >= 0");
        sqrt2.mul_rat(&self.b).add_rat(&self.a)
    }
}

/// The two eigenpairs (lambda, e) of the limit matrix, exact over Q(sqrt 2):
/// lambda = 17 +- 12 sqrt(2), e = (18 +- 12 sqrt(2), 6).
pub fn limit_eigen() -> [(QSqrt2, (QSqrt2, QSqrt2)); 2] {
    [
        (
            QSqrt2::from_ints(17, 12),
            (QSqrt2::from_ints(18, 12), QSqrt2::from_ints(6, 0)),
        ),
        (
            QSqrt2::from_ints(17, -12),
            (QSqrt2::from_ints(18, -12), QSqrt2::from_ints(6, 0)),
        ),
    ]
}

/// Exact algebraic verification that A e = lambda e for both eigenpairs.
pub fn check_limit_eigen() -> bool {
    let a = transfer_limit();
    limit_eigen().iter().all(|(lam, (e1, e2))| {
        let top = e1.scale(&a.a).add(&e2.scale(&a.b));
        let bot = e1.scale(&a.c).add(&e2.scale(&a.d));
        top == lam.mul(e1) && bot == lam.mul(e2)
    })
}

/// Empirical rate data for a positive series: consecutive ratios, n-th roots
/// of |x_n|, and the relative deviation of the final entries from the target.
#[derive(Clone, Debug)]
pub struct RateReport {
    pub target: BallReal,
    /// (n, x_n / x_{n-1}) exact
    pub ratios: Vec<(u32, Rat)>,
    /// (n, |x_n|^(1/n)) rigorous ball
    pub nth_roots: Vec<(u32, BallReal)>,
    /// |final ratio - target| / target, midpoint arithmetic
    pub final_ratio_deviation: Option<Rat>,
    /// |final root - target| / target, midpoint arithmetic
    pub final_root_deviation: Option<Rat>,
}

/// Rates for an exact series indexed from n = 0. Entries must be nonzero
/// beyond the first.
pub fn empirical_rate(series: &[Rat], target: &QSqrt2, digits: u32) -> Result<RateReport> {
    if series.len() < 5 {
        return Err(Error::Domain("rate extraction needs at least 5 terms".into()));
    }
    let target_ball = target.to_ball(digits);
    let mut ratios = Vec::new();
    let mut nth_roots = Vec::new();
    for n in 1..series.len() as u32 {
        let prev = &series[n as usize - 1];
        let cur = &series[n as usize];
        if prev.is_zero() {
            return Err(Error::Domain(format!("zero term at index {}", n - 1)));
        }
        ratios.push((n, cur / prev));
        let root = BallReal::from_rational(&cur.abs(), digits)
            .nth_root(n)
            .expect("|x| >= 0");
        nth_roots.push((n, root));
    }
    let rel_dev = |x: &Rat| -> Rat { ((x - target_ball.mid_rat()) / target_ball.mid_rat()).abs() };
    let final_ratio_deviation = ratios.last().map(|(_, r)| rel_dev(&r.abs()));
    let final_root_deviation = nth_roots.last().map(|(_, r)| rel_dev(&r.mid_rat()));
    Ok(RateReport {
        target: target_ball,
        ratios,
        nth_roots,
        final_ratio_deviation,
        final_root_deviation,
    })
}

/// Rates for a series of balls (the eps forms); every ball must exclude zero.
pub fn empirical_rate_balls(series: &[BallReal], target: &QSqrt2, digits: u32) -> Result<RateReport> {
    if series.len() < 5 {
        return Err(Error::Domain("rate extraction needs at least 5 terms".into()));
    }
    let target_ball = target.to_ball(digits);
    let mut ratios = Vec::new();
    let mut nth_roots = Vec::new();
    for n in 1..series.len() as u32 {
        let prev = series[n as usize - 1].abs();
        let cur = series[n as usize].abs();
        if prev.contains_zero() || cur.contains_zero() {
            return Err(Error::InsufficientPrecision { needed: digits * 2 });
        }
        ratios.push((n, cur.mid_rat() / prev.mid_rat()));
        nth_roots.push((n, cur.nth_root(n).expect("|x| > 0")));
    }
    let rel_dev = |x: &Rat| -> Rat { ((x - target_ball.mid_rat()) / target_ball.mid_rat()).abs() };
    let final_ratio_deviation = ratios.last().map(|(_, r)| rel_dev(&r.abs()));
    let final_root_deviation = nth_roots.last().map(|(_, r)| rel_dev(&r.mid_rat()));
    Ok(RateReport {
        target: target_ball,
        ratios,
        nth_roots,
        final_ratio_deviation,
        final_root_deviation,
    })
}

/// Assert the diagonal three-term recurrence
/// (n+1)^3 u_{n+1,n+1} = (34n^3+51n^2+27n+5) u_{n,n} - n^3 u_{n-1,n-1}
/// exactly for 1 <= n <= n_max - 1.
pub fn apery_diagonal_check(table: &RationalTable, n_max: u32) -> Result<()> {
    for n in 1..n_max {
        let n_i = n as i64;
        let lhs = int_rat((n_i + 1).pow(3)) * table.diag(n + 1)?;
        let rhs = int_rat(34 * n_i.pow(3) + 51 * n_i.pow(2) + 27 * n_i + 5) * table.diag(n)?
            - int_rat(n_i.pow(3)) * table.diag(n - 1)?;
        if lhs != rhs {
            return Err(Error::InvariantViolation(format!(
                "diagonal recurrence fails at n = {n}"
            )));
        }
    }
    Ok(())
}

/// One row of the certificate: the integer pair (a_n, b_n) =
/// (d_n^3 p_{n,n}, d_n^3 q_{n,n}) and the certified linear form.
#[derive(Clone, Debug)]
pub struct CertRow {
    pub n: u32,
    pub a: Int,
    pub b: Int,
    /// eps_{n,n} = q zeta(3) - p
    pub eps: BallReal,
    /// d_n^3 eps_{n,n} = |a_n - b_n zeta(3)| up to sign
    pub scaled: BallReal,
    /// (1/n) log |d_n^3 eps_{n,n}|
    pub log_scaled_over_n: BallReal,
    /// |eps_{n,n}|^(1/n)
    pub eps_root: BallReal,
}

#[derive(Clone, Debug)]
pub struct Certificate {
    pub n: u32,
    pub digits: u32,
    pub rows: Vec<CertRow>,
    /// every |a_n - b_n zeta(3)| certified nonzero
    pub all_nonzero: bool,
    /// d_n^3 |eps_{n,n}| strictly decreasing for 5 <= n <= N. The lcm jumps
    /// by a factor p^3 at prime powers, which outweighs the one-step decay of
    /// eps, so this is false for any range containing a prime >= 5; kept as a
    /// measured flag.
    pub scaled_strictly_decreasing: bool,
    /// |eps_{n,n}| strictly decreasing for 1 <= n <= N
    pub eps_strictly_decreasing: bool,
    /// q_{n,n} strictly increasing for 1 <= n <= N
    pub q_strictly_increasing: bool,
    /// d_n^3 |eps| < 1 for 5 <= n <= N
    pub scaled_below_one: bool,
    /// 3 + log(17 - 12 sqrt(2)), the decay constant of the final estimate
    pub target_log: BallReal,
    /// |log_scaled_over_n(N) - target_log| by midpoints
    pub final_log_deviation: Rat,
}

/// Working precision for the linear form at diagonal index n.
pub fn default_digits(n: u32) -> u32 {
    (16 * n).div_ceil(10) + 32
}

/// Build the certificate for the diagonal up to N, retrying once at double
/// precision when the nonzero certification fails.
pub fn irrationality_certificate(n_max: u32, digits: Option<u32>) -> Result<Certificate> {
    assert!(n_max >= 5);
    let d0 = digits.unwrap_or_else(|| default_digits(n_max));
    match certificate_attempt(n_max, d0) {
        Err(Error::InsufficientPrecision { .. }) => match certificate_attempt(n_max, d0 * 2) {
            Err(Error::InsufficientPrecision { .. }) => {
                Err(Error::InsufficientPrecision { needed: d0 * 4 })
            }
            other => other,
        },
        other => other,
    }
}

fn certificate_attempt(n_max: u32, digits: u32) -> Result<Certificate> {
    let pair = zeta3_pair();
    let q = build(&pair, &BoundarySpec::Unit, n_max, n_max, TableMode::TwoRowStreaming)?;
    let p = build(&pair, &BoundarySpec::Series, n_max, n_max, TableMode::TwoRowStreaming)?;
    let lcms = LcmCache::new(n_max);

    let mut rows = Vec::with_capacity(n_max as usize);
    for n in 1..=n_max {
        let form = epsilon(&q, &p, n, n, digits)?;
        let scale = Rat::from_integer(lcms.get(n).pow(3));
        let scaled = form.value.mul_rat(&scale);
        let a = (&form.p * &scale).to_integer();
        let b = (&form.q * &scale).to_integer();
        // integrality must be exact, not a rounding artifact
        if Rat::from_integer(a.clone()) != &form.p * &scale
            || Rat::from_integer(b.clone()) != &form.q * &scale
        {
            return Err(Error::InvariantViolation(format!(
                "d_{n}^3 scaling fails to clear denominators"
            )));
        }
        let abs_scaled = scaled.abs();
        let log_scaled_over_n = abs_scaled
            .ln()?
            .mul_rat(&Rat::new(Int::one(), Int::from(n)));
        let eps_root = form.value.abs().nth_root(n)?;
        rows.push(CertRow {
            n,
            a,
            b,
            eps: form.value,
            scaled,
            log_scaled_over_n,
            eps_root,
        });
    }

    let all_nonzero = rows.iter().all(|r| !r.scaled.contains_zero());
    let scaled_strictly_decreasing = rows
        .windows(2)
        .filter(|w| w[0].n >= 5)
        .all(|w| w[1].scaled.abs().strictly_below(&w[0].scaled.abs()));
    let eps_strictly_decreasing = rows
        .windows(2)
        .all(|w| w[1].eps.abs().strictly_below(&w[0].eps.abs()));
    let q_strictly_increasing =
        (1..n_max).all(|n| q.diag(n + 1).map(|d| d > q.diag(n).unwrap()).unwrap_or(false));
    let scaled_below_one = rows
        .iter()
        .filter(|r| r.n >= 5)
        .all(|r| r.scaled.abs().hi_rat() < Rat::one());

    let lam_minus = QSqrt2::from_ints(17, -12).to_ball(digits.min(60));
    let target_log = lam_minus.ln()?.add_rat(&int_rat(3));
    let last = rows.last().expect("n_max >= 5");
    let final_log_deviation =
        (last.log_scaled_over_n.mid_rat() - target_log.mid_rat()).abs();

    Ok(Certificate {
        n: n_max,
        digits,
        rows,
        all_nonzero,
        scaled_strictly_decreasing,
        eps_strictly_decreasing,
        q_strictly_increasing,
        scaled_below_one,
        target_log,
        final_log_deviation,
    })
}
