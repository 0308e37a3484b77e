//! Midpoint-radius arithmetic over scaled-integer fixed point.
//!
//! A `BallReal` stores value = mid / 10^digits with a nonnegative radius in
//! the same scale; the true value always lies in [mid - rad, mid + rad] /
//! 10^digits. Every operation rounds outward, so enclosure is preserved under
//! composition. Monotone operations (mul, div, ln, roots) go through exact
//! rational endpoints rather than midpoint error propagation.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::Rat;

type Int = BigInt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BallReal {
    mid: Int,
    rad: Int,
    digits: u32,
}

pub fn pow10(k: u32) -> Int {
    Int::from(10u32).pow(k)
}

/// Round a/b to the nearest integer (ties away from zero).
fn round_div(a: &Int, b: &Int) -> Int {
    debug_assert!(b.is_positive());
    let two_a: Int = a * 2;
    let (q, r) = two_a.div_mod_floor(&(b * 2));
    if r >= *b {
        q + 1
    } else {
        q
    }
}

fn ceil_div(a: &Int, b: &Int) -> Int {
    debug_assert!(b.is_positive());
    let (q, r) = a.div_mod_floor(b);
    if r.is_zero() {
        q
    } else {
        q + 1
    }
}

impl BallReal {
    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn mid_raw(&self) -> &Int {
        &self.mid
    }

    pub fn rad_raw(&self) -> &Int {
        &self.rad
    }

    pub fn from_parts(mid: Int, rad: Int, digits: u32) -> Self {
        assert!(!rad.is_negative());
        BallReal { mid, rad, digits }
    }

    /// Exact rational rounded into the scale; radius covers the rounding.
    pub fn from_rational(r: &Rat, digits: u32) -> Self {
        let scale = pow10(digits);
        let scaled_num = r.numer() * &scale;
        // BigRational keeps the denominator positive
        let exact = scaled_num.is_multiple_of(r.denom());
        let mid = round_div(&scaled_num, r.denom());
        let rad = if exact { Int::zero() } else { Int::one() };
        BallReal { mid, rad, digits }
    }

    pub fn from_int(n: i64, digits: u32) -> Self {
        BallReal {
            mid: Int::from(n) * pow10(digits),
            rad: Int::zero(),
            digits,
        }
    }

    /// Smallest ball at this scale containing the exact interval [lo, hi].
    pub fn from_interval(lo: &Rat, hi: &Rat, digits: u32) -> Self {
        assert!(lo <= hi);
        let scale = Rat::from_integer(pow10(digits));
        let lo_s = (lo * &scale).floor().to_integer();
        let hi_s = (hi * &scale).ceil().to_integer();
        let mid = round_div(&(&lo_s + &hi_s), &Int::from(2));
        // outward by one ulp to absorb the midpoint rounding
        let rad = (&hi_s - &lo_s) / 2 + 2;
        BallReal { mid, rad, digits }
    }

    pub fn lo_rat(&self) -> Rat {
        Rat::new(&self.mid - &self.rad, pow10(self.digits))
    }

    pub fn hi_rat(&self) -> Rat {
        Rat::new(&self.mid + &self.rad, pow10(self.digits))
    }

    pub fn mid_rat(&self) -> Rat {
        Rat::new(self.mid.clone(), pow10(self.digits))
    }

    pub fn rad_rat(&self) -> Rat {
        Rat::new(self.rad.clone(), pow10(self.digits))
    }

    pub fn with_digits(&self, digits: u32) -> Self {
        if digits == self.digits {
            return self.clone();
        }
        if digits > self.digits {
            let f = pow10(digits - self.digits);
            return BallReal {
                mid: &self.mid * &f,
                rad: &self.rad * &f,
                digits,
            };
        }
        let f = pow10(self.digits - digits);
        BallReal {
            mid: round_div(&self.mid, &f),
            rad: ceil_div(&self.rad, &f) + 1,
            digits,
        }
    }

    fn align(a: &BallReal, b: &BallReal) -> (BallReal, BallReal, u32) {
        let d = a.digits.min(b.digits);
        (a.with_digits(d), b.with_digits(d), d)
    }

    pub fn add(&self, other: &BallReal) -> BallReal {
        let (a, b, d) = BallReal::align(self, other);
        BallReal {
            mid: a.mid + b.mid,
            rad: a.rad + b.rad,
            digits: d,
        }
    }

    pub fn sub(&self, other: &BallReal) -> BallReal {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> BallReal {
        BallReal {
            mid: -self.mid.clone(),
            rad: self.rad.clone(),
            digits: self.digits,
        }
    }

    pub fn abs(&self) -> BallReal {
        if !self.contains_zero() {
            return if self.mid.is_negative() {
                self.neg()
            } else {
                self.clone()
            };
        }
        let hi = self.lo_rat().abs().max(self.hi_rat().abs());
        BallReal::from_interval(&Rat::zero(), &hi, self.digits)
    }

    pub fn mul(&self, other: &BallReal) -> BallReal {
        let (a, b, d) = BallReal::align(self, other);
        let products = [
            a.lo_rat() * b.lo_rat(),
            a.lo_rat() * b.hi_rat(),
            a.hi_rat() * b.lo_rat(),
            a.hi_rat() * b.hi_rat(),
        ];
        let lo = products.iter().min().unwrap();
        let hi = products.iter().max().unwrap();
        BallReal::from_interval(lo, hi, d)
    }

    pub fn mul_rat(&self, r: &Rat) -> BallReal {
        let (lo, hi) = if r.is_negative() {
            (self.hi_rat() * r, self.lo_rat() * r)
        } else {
            (self.lo_rat() * r, self.hi_rat() * r)
        };
        BallReal::from_interval(&lo, &hi, self.digits)
    }

    pub fn add_rat(&self, r: &Rat) -> BallReal {
        BallReal::from_interval(&(self.lo_rat() + r), &(self.hi_rat() + r), self.digits)
    }

    pub fn div(&self, other: &BallReal) -> Result<BallReal> {
        if other.contains_zero() {
            return Err(Error::Domain("division by a ball containing zero".into()));
        }
        let (a, b, d) = BallReal::align(self, other);
        let quotients = [
            a.lo_rat() / b.lo_rat(),
            a.lo_rat() / b.hi_rat(),
            a.hi_rat() / b.lo_rat(),
            a.hi_rat() / b.hi_rat(),
        ];
        let lo = quotients.iter().min().unwrap();
        let hi = quotients.iter().max().unwrap();
        Ok(BallReal::from_interval(lo, hi, d))
    }

    pub fn powi(&self, e: u32) -> BallReal {
        let mut acc = BallReal::from_int(1, self.digits);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn contains_zero(&self) -> bool {
        self.mid.abs() <= self.rad
    }

    pub fn is_positive(&self) -> bool {
        self.mid > self.rad
    }

    pub fn is_negative(&self) -> bool {
        self.mid < -self.rad.clone()
    }

    pub fn contains_rat(&self, r: &Rat) -> bool {
        &self.lo_rat() <= r && r <= &self.hi_rat()
    }

    pub fn overlaps(&self, other: &BallReal) -> bool {
        self.lo_rat() <= other.hi_rat() && other.lo_rat() <= self.hi_rat()
    }

    /// Certified strict order: every point of self is below every point of other.
    pub fn strictly_below(&self, other: &BallReal) -> bool {
        self.hi_rat() < other.lo_rat()
    }

    /// Natural log; the operand ball must be strictly positive.
    pub fn ln(&self) -> Result<BallReal> {
        if !self.is_positive() {
            return Err(Error::Domain("ln of a ball not strictly positive".into()));
        }
        let lo = ln_rational(&self.lo_rat(), self.digits);
        let hi = ln_rational(&self.hi_rat(), self.digits);
        Ok(BallReal::from_interval(&lo.lo_rat(), &hi.hi_rat(), self.digits))
    }

    /// n-th root; the operand ball must be nonnegative.
    pub fn nth_root(&self, n: u32) -> Result<BallReal> {
        assert!(n >= 1);
        let lo = self.lo_rat();
        let hi = self.hi_rat();
        if lo.is_negative() {
            return Err(Error::Domain("root of a ball containing negatives".into()));
        }
        let (rlo, _) = nth_root_rational(&lo, n, self.digits);
        let (_, rhi) = nth_root_rational(&hi, n, self.digits);
        Ok(BallReal::from_interval(&rlo, &rhi, self.digits))
    }

    pub fn to_f64(&self) -> f64 {
        self.mid_rat().to_f64().unwrap_or(f64::NAN)
    }

    /// Decimal rendering of the midpoint, exact at this scale.
    pub fn mid_decimal(&self) -> String {
        decimal_string(&self.mid, self.digits)
    }

    pub fn rad_decimal(&self) -> String {
        decimal_string(&self.rad, self.digits)
    }
}

pub fn decimal_string(scaled: &Int, digits: u32) -> String {
    let neg = scaled.is_negative();
    let a = scaled.abs();
    let s = a.to_string();
    let d = digits as usize;
    let (ip, fp) = if s.len() > d {
        (s[..s.len() - d].to_string(), s[s.len() - d..].to_string())
    } else {
        ("0".to_string(), format!("{:0>width$}", s, width = d))
    };
    let sign = if neg { "-" } else { "" };
    if d == 0 {
        format!("{sign}{ip}")
    } else {
        format!("{sign}{ip}.{fp}")
    }
}

/// Integer n-th root: largest y with y^n <= a (a >= 0).
pub fn int_nth_root(a: &Int, n: u32) -> Int {
    assert!(!a.is_negative());
    if a.is_zero() || n == 1 {
        return a.clone();
    }
    let bits = a.bits();
    let mut x: Int = Int::one() << (bits / n as u64 + 1);
    loop {
        // Newton: x' = ((n-1)x + a / x^(n-1)) / n
        let xp = (&x * (n - 1) + a / x.pow(n - 1)) / n;
        if xp >= x {
            break;
        }
        x = xp;
    }
    while x.pow(n) > *a {
        x -= 1;
    }
    x
}

/// Bracketing pair (lo, hi) of rationals with lo <= r^(1/n) <= hi at the
/// given scale.
fn nth_root_rational(r: &Rat, n: u32, digits: u32) -> (Rat, Rat) {
    debug_assert!(!r.is_negative());
    let scale_n = pow10(digits * n);
    let v = (r.numer() * scale_n).div_floor(r.denom());
    let y = int_nth_root(&v, n);
    let den = pow10(digits);
    (
        Rat::new(y.clone(), den.clone()),
        Rat::new(y + 2, den),
    )
}

/// atanh(z) for |z| <= 1/2 in fixed point at scale 10^prec.
/// Returns (value, radius) in ulps of 10^-prec.
fn atanh_fixed(zn: &Int, zd: &Int, prec: u32) -> (Int, Int) {
    let scale = pow10(prec);
    let zd = if zd.is_negative() {
        // normalize sign into the numerator
        return atanh_fixed(&-zn.clone(), &-zd.clone(), prec);
    } else {
        zd.clone()
    };
    debug_assert!(zn.abs() * 2 <= zd);
    let signed_round = |a: &Int, b: &Int| -> Int {
        if a.is_negative() {
            -round_div(&-a.clone(), b)
        } else {
            round_div(a, b)
        }
    };
    let z2 = signed_round(&(zn * zn * &scale), &(&zd * &zd)); // err <= 1 ulp
    let mut pow = signed_round(&(zn * &scale), &zd); // z, err <= 1 ulp
    let mut err_pow = Int::one();
    let mut sum = pow.clone();
    let mut err_sum = Int::one();
    let mut k: u64 = 1;
    loop {
        pow = signed_round(&(&pow * &z2), &scale);
        // |z^2| <= 1/4 shrinks the inherited error; rounding and the z2 ulp
        // add at most 3 ulps per step
        err_pow = &err_pow / 4 + 3;
        let term = signed_round(&pow, &Int::from(2 * k + 1));
        sum += &term;
        err_sum += &err_pow + 1;
        if pow.abs() <= &err_pow + Int::from(2 * k + 1) {
            // geometric tail: sum of remaining |z|^(2m+1) <= 2 |z^(2k+3)|
            err_sum += pow.abs() + &err_pow + 2;
            break;
        }
        k += 1;
    }
    (sum, err_sum)
}

/// ln 2 in fixed point at scale 10^prec: 2 atanh(1/3).
fn ln2_fixed(prec: u32) -> (Int, Int) {
    let (v, e) = atanh_fixed(&Int::one(), &Int::from(3), prec);
    (v * 2, e * 2 + 1)
}

const LN_GUARD: u32 = 15;

/// Rigorous enclosure of ln(r) for a positive rational, at the given scale.
pub fn ln_rational(r: &Rat, digits: u32) -> BallReal {
    assert!(r.is_positive());
    let prec = digits + LN_GUARD;
    // r = s * 2^e with s in [1/2, 2)
    let mut e: i64 = r.numer().bits() as i64 - r.denom().bits() as i64;
    let two = Rat::from_integer(Int::from(2));
    let pow2 = |k: i64| -> Rat {
        if k >= 0 {
            Rat::from_integer(Int::one() << k as u64)
        } else {
            Rat::new(Int::one(), Int::one() << (-k) as u64)
        }
    };
    let mut s = r / pow2(e);
    while s >= two {
        s /= &two;
        e += 1;
    }
    while s < two.recip() {
        s *= &two;
        e -= 1;
    }
    // z = (s-1)/(s+1) in [-1/3, 1/3]
    let zn = s.numer() - s.denom();
    let zd = s.numer() + s.denom();
    let (at, at_err) = atanh_fixed(&zn, &zd, prec);
    let (l2, l2_err) = ln2_fixed(prec);
    let mid = &at * 2 + &l2 * e;
    let rad = at_err * 2 + l2_err * Int::from(e.unsigned_abs()) + 1;
    BallReal::from_parts(mid, rad, prec).with_digits(digits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int_rat, rat};

    #[test]
    fn sub_self_contains_zero() {
        let x = BallReal::from_rational(&rat(22, 7), 30);
        let d = x.sub(&x);
        assert!(d.contains_zero());
    }

    #[test]
    fn sqrt2_squared_encloses_two() {
        let two = BallReal::from_int(2, 50);
        let r = two.nth_root(2).unwrap();
        assert!(r.powi(2).contains_rat(&int_rat(2)));
        // and the enclosure is tight at this scale
        assert!(r.rad_rat() < rat(1, 10i64.pow(17)));
    }

    #[test]
    fn ln_of_two_matches_reference() {
        let l = ln_rational(&int_rat(2), 30);
        let refr = crate::poly::parse_rat(
            "693147180559945309417232121458/1000000000000000000000000000000",
        )
        .unwrap();
        assert!(l.contains_rat(&refr));
        assert!(l.rad_rat() < rat(1, 10i64.pow(18)) * rat(1, 10i64.pow(10)));
    }

    #[test]
    fn ln_respects_products() {
        // ln(6) = ln(2) + ln(3) within combined radii
        let a = ln_rational(&int_rat(2), 35).add(&ln_rational(&int_rat(3), 35));
        let b = ln_rational(&int_rat(6), 35);
        assert!(a.overlaps(&b));
    }

    #[test]
    fn ln_of_extreme_magnitudes() {
        let big = ln_rational(&int_rat(10).pow(40), 30);
        // should be 40 ln 10 = 92.10340371976182736071...
        let reference = crate::poly::parse_rat("9210340371976182736071/100000000000000000000").unwrap();
        assert!((big.mid_rat() - reference).abs() < rat(1, 10i64.pow(18)));
        let small = ln_rational(&rat(1, 10i64.pow(18)), 30);
        assert!(small.is_negative());
    }

    #[test]
    fn division_by_zero_ball_rejected() {
        let z = BallReal::from_parts(Int::from(1), Int::from(2), 10);
        assert!(BallReal::from_int(1, 10).div(&z).is_err());
    }

    #[test]
    fn int_roots_are_exact_floors() {
        assert_eq!(int_nth_root(&Int::from(0), 3), Int::from(0));
        assert_eq!(int_nth_root(&Int::from(26), 3), Int::from(2));
        assert_eq!(int_nth_root(&Int::from(27), 3), Int::from(3));
        assert_eq!(int_nth_root(&Int::from(10).pow(60), 4), Int::from(10).pow(15));
    }

    #[test]
    fn decimal_rendering() {
        let b = BallReal::from_rational(&rat(-1234567, 10000), 6);
        assert_eq!(b.mid_decimal(), "-123.456700");
    }
}
