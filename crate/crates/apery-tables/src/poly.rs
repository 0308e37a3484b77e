//! Homogeneous bivariate polynomial pairs (f, g) and their structural conditions.
//!
//! The whole construction hangs on two exact polynomial identities:
//!
//!   (1) f(i,j) g(i,j) = f(i,0) g(i,0) + f(0,j) g(0,j)
//!   (2) f(i+1,j) - f(i,j+1) = g(i+1,j+1) - g(i,j)
//!
//! plus the cubic-boundary condition f(0,x), f(x,0) in {x^d, -x^d} and a
//! positivity condition used for monotonicity. All checks here are symbolic
//! over exact rationals.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rat = BigRational;
pub type Int = BigInt;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int_rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// General (not necessarily homogeneous) bivariate polynomial over Q,
/// keyed by exponent pair (a, b) for i^a j^b. Zero coefficients are absent.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BiPoly {
    pub coeffs: BTreeMap<(u32, u32), Rat>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly::default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn monomial(a: u32, b: u32, c: Rat) -> Self {
        let mut p = BiPoly::zero();
        p.add_term(a, b, c);
        p
    }

    pub fn add_term(&mut self, a: u32, b: u32, c: Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry((a, b)).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&(a, b));
        }
    }

    pub fn add(&self, other: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (&(a, b), c) in &other.coeffs {
            out.add_term(a, b, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (&(a, b), c) in &other.coeffs {
            out.add_term(a, b, -c.clone());
        }
        out
    }

    pub fn mul(&self, other: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for (&(a1, b1), c1) in &self.coeffs {
            for (&(a2, b2), c2) in &other.coeffs {
                out.add_term(a1 + a2, b1 + b2, c1 * c2);
            }
        }
        out
    }

    /// Substitute i -> i + di, j -> j + dj and expand.
    pub fn shift(&self, di: u32, dj: u32) -> BiPoly {
        let mut out = BiPoly::zero();
        for (&(a, b), c) in &self.coeffs {
            // (i + di)^a (j + dj)^b by binomial expansion
            for p in 0..=a {
                let bin_a = binomial(a, p);
                let di_pow = Int::from(di).pow(a - p);
                for q in 0..=b {
                    let bin_b = binomial(b, q);
                    let dj_pow = Int::from(dj).pow(b - q);
                    let factor = Rat::from_integer(&bin_a * &bin_b * &di_pow * &dj_pow);
                    out.add_term(p, q, c * factor);
                }
            }
        }
        out
    }

    pub fn eval(&self, i: &Rat, j: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for (&(a, b), c) in &self.coeffs {
            acc += c * pow_rat(i, a) * pow_rat(j, b);
        }
        acc
    }
}

fn binomial(n: u32, k: u32) -> Int {
    let mut num = Int::one();
    let mut den = Int::one();
    for t in 0..k.min(n - k) {
        num *= Int::from(n - t);
        den *= Int::from(t + 1);
    }
    num / den
}

fn pow_rat(x: &Rat, e: u32) -> Rat {
    let mut acc = Rat::one();
    for _ in 0..e {
        acc *= x;
    }
    acc
}

/// Homogeneous bivariate polynomial of a fixed degree.
///
/// Every stored exponent pair (a, b) satisfies a + b = degree; zero
/// coefficients may be absent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly2 {
    pub degree: u32,
    pub coeffs: BTreeMap<(u32, u32), Rat>,
}

impl Poly2 {
    pub fn new(degree: u32, entries: &[((u32, u32), Rat)]) -> Result<Self> {
        let mut coeffs = BTreeMap::new();
        for ((a, b), c) in entries {
            if a + b != degree {
                return Err(Error::NonHomogeneous {
                    a: *a,
                    b: *b,
                    degree,
                });
            }
            if !c.is_zero() {
                let e = coeffs.entry((*a, *b)).or_insert_with(Rat::zero);
                *e += c.clone();
                if e.is_zero() {
                    coeffs.remove(&(*a, *b));
                }
            }
        }
        Ok(Poly2 { degree, coeffs })
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, a: u32, b: u32) -> Rat {
        self.coeffs.get(&(a, b)).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn eval(&self, i: &Rat, j: &Rat) -> Rat {
        self.as_bipoly().eval(i, j)
    }

    /// Convenience for integer arguments, the common case in the recurrences.
    pub fn eval_int(&self, i: i64, j: i64) -> Rat {
        self.eval(&int_rat(i), &int_rat(j))
    }

    pub fn as_bipoly(&self) -> BiPoly {
        BiPoly {
            coeffs: self.coeffs.clone(),
        }
    }

    /// Restriction f(0, x) as coefficients of x^degree (only the (0, d) monomial
    /// survives for a homogeneous polynomial).
    pub fn coeff_at_i0(&self) -> Rat {
        self.coeff(0, self.degree)
    }

    pub fn coeff_at_j0(&self) -> Rat {
        self.coeff(self.degree, 0)
    }
}

impl fmt::Display for Poly2 {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(out, "0");
        }
        let mut first = true;
        for (&(a, b), c) in self.coeffs.iter().rev() {
            if !first {
                write!(out, " + ")?;
            }
            first = false;
            write!(out, "({})*i^{}*j^{}", c, a, b)?;
        }
        Ok(())
    }
}

/// A pair of homogeneous polynomials of equal degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyPair {
    pub f: Poly2,
    pub g: Poly2,
    pub name: String,
}

/// Outcome of the condition-(cond4) positivity check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Cond4Status {
    /// All coefficients of (f - g) - (f(0,j) - g(0,j)) are nonnegative with a
    /// strictly positive one present; positivity on i, j >= 1 follows.
    ProvedByCoefficients,
    /// Exhaustively sampled true for 1 <= i, j <= bound.
    SampledTrue { bound: u32 },
    /// A counterexample point.
    False { i: u32, j: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    pub cond1: bool,
    pub cond2: bool,
    pub cond3: bool,
    pub cond4: Cond4Status,
}

impl ConditionReport {
    pub fn admissible(&self) -> bool {
        self.cond1 && self.cond2
    }
}

/// Build a pair from raw coefficient maps. Rejects non-homogeneous input;
/// does not validate the structural conditions.
pub fn make_pair(
    coeffs_f: &[((u32, u32), Rat)],
    coeffs_g: &[((u32, u32), Rat)],
    degree: u32,
    name: &str,
) -> Result<PolyPair> {
    Ok(PolyPair {
        f: Poly2::new(degree, coeffs_f)?,
        g: Poly2::new(degree, coeffs_g)?,
        name: name.to_string(),
    })
}

impl PolyPair {
    pub fn degree(&self) -> u32 {
        self.f.degree
    }

    /// f evaluated at integer (i, j); the recurrences only ever need integers.
    pub fn f_at(&self, i: i64, j: i64) -> Rat {
        self.f.eval_int(i, j)
    }

    pub fn g_at(&self, i: i64, j: i64) -> Rat {
        self.g.eval_int(i, j)
    }
}

/// Decide the four structural conditions.
///
/// cond1 and cond2 are exact symbolic identities. cond3 inspects the two
/// boundary restrictions against +-x^degree. cond4 uses the sufficient
/// coefficient test first and falls back to exhaustive sampling on
/// 1 <= i, j <= sample_bound.
pub fn verify_conditions(pair: &PolyPair, sample_bound: u32) -> ConditionReport {
    let f = pair.f.as_bipoly();
    let g = pair.g.as_bipoly();
    let d = pair.degree();

    // cond1: f*g - f(i,0)g(i,0) - f(0,j)g(0,j) == 0
    let fg = f.mul(&g);
    let fi0gi0 = BiPoly::monomial(2 * d, 0, pair.f.coeff_at_j0() * pair.g.coeff_at_j0());
    let f0jg0j = BiPoly::monomial(0, 2 * d, pair.f.coeff_at_i0() * pair.g.coeff_at_i0());
    let cond1 = fg.sub(&fi0gi0).sub(&f0jg0j).is_zero();

    // cond2: f(i+1,j) - f(i,j+1) - g(i+1,j+1) + g(i,j) == 0
    let lhs = f.shift(1, 0).sub(&f.shift(0, 1));
    let rhs = g.shift(1, 1).sub(&g);
    let cond2 = lhs.sub(&rhs).is_zero();

    // cond3: f(0,x) and f(x,0) are +-x^d
    let one = Rat::one();
    let c_i0 = pair.f.coeff_at_i0();
    let c_j0 = pair.f.coeff_at_j0();
    let is_unit = |c: &Rat| *c == one || *c == -one.clone();
    let cond3 = is_unit(&c_i0) && is_unit(&c_j0);

    // cond4: f(i,j) - f(0,j) > g(i,j) - g(0,j) for i, j >= 1
    let diff = f
        .sub(&g)
        .sub(&BiPoly::monomial(0, d, pair.f.coeff_at_i0() - pair.g.coeff_at_i0()));
    let all_nonneg = diff.coeffs.values().all(|c| !c.is_negative());
    let mixed_positive = diff
        .coeffs
        .iter()
        .any(|(&(a, b), c)| a > 0 && b > 0 && c.is_positive());
    let cond4 = if all_nonneg && mixed_positive {
        Cond4Status::ProvedByCoefficients
    } else {
        sample_cond4(&diff, sample_bound)
    };

    ConditionReport {
        cond1,
        cond2,
        cond3,
        cond4,
    }
}

fn sample_cond4(diff: &BiPoly, bound: u32) -> Cond4Status {
    for i in 1..=bound {
        for j in 1..=bound {
            let v = diff.eval(&int_rat(i as i64), &int_rat(j as i64));
            if !v.is_positive() {
                return Cond4Status::False { i, j };
            }
        }
    }
    Cond4Status::SampledTrue { bound }
}

// ---------------------------------------------------------------------------
// Presets
// ---------------------------------------------------------------------------

/// f = i^3 + 2i^2 j + 2i j^2 + j^3, g = i^3 - 2i^2 j + 2i j^2 - j^3.
pub fn zeta3_pair() -> PolyPair {
    make_pair(
        &[
            ((3, 0), int_rat(1)),
            ((2, 1), int_rat(2)),
            ((1, 2), int_rat(2)),
            ((0, 3), int_rat(1)),
        ],
        &[
            ((3, 0), int_rat(1)),
            ((2, 1), int_rat(-2)),
            ((1, 2), int_rat(2)),
            ((0, 3), int_rat(-1)),
        ],
        3,
        "zeta3",
    )
    .expect("preset is homogeneous")
}

/// f = i + j, g = i - j (the printed sign variant; its boundary series is the
/// harmonic series).
pub fn log2_paper_pair() -> PolyPair {
    make_pair(
        &[((1, 0), int_rat(1)), ((0, 1), int_rat(1))],
        &[((1, 0), int_rat(1)), ((0, 1), int_rat(-1))],
        1,
        "log2-paper",
    )
    .expect("preset is homogeneous")
}

/// f = i + j, g = j - i; the boundary series alternates and converges to log 2.
pub fn log2_alt_pair() -> PolyPair {
    make_pair(
        &[((1, 0), int_rat(1)), ((0, 1), int_rat(1))],
        &[((1, 0), int_rat(-1)), ((0, 1), int_rat(1))],
        1,
        "log2-alt",
    )
    .expect("preset is homogeneous")
}

/// f = i^2 + ij + j^2/2, g = i^2 - ij + j^2/2. Fails the unit-boundary
/// condition (the j^2/2 coefficient), so only empirical integrality ledgers
/// apply. The sign of g is pinned by the shift identity: with -g the pair
/// satisfies the splitting identity but not the shift identity.
pub fn zeta2_pair() -> PolyPair {
    make_pair(
        &[
            ((2, 0), int_rat(1)),
            ((1, 1), int_rat(1)),
            ((0, 2), rat(1, 2)),
        ],
        &[
            ((2, 0), int_rat(1)),
            ((1, 1), int_rat(-1)),
            ((0, 2), rat(1, 2)),
        ],
        2,
        "zeta2",
    )
    .expect("preset is homogeneous")
}

pub fn preset(name: &str) -> Option<PolyPair> {
    match name {
        "zeta3" => Some(zeta3_pair()),
        "log2-paper" => Some(log2_paper_pair()),
        "log2-alt" => Some(log2_alt_pair()),
        "zeta2" => Some(zeta2_pair()),
        _ => None,
    }
}

// ---------------------------------------------------------------------------
// Pair-definition files
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct PairFile {
    name: String,
    degree: u32,
    f: Vec<(u32, u32, String)>,
    g: Vec<(u32, u32, String)>,
}

pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num: Int = num
        .parse()
        .map_err(|_| Error::Parse(format!("bad numerator in {s:?}")))?;
    let den: Int = den
        .parse()
        .map_err(|_| Error::Parse(format!("bad denominator in {s:?}")))?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rat::new(num, den))
}

pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parse a pair-definition file: JSON with fields name, degree and two lists
/// of (a, b, "num/den") monomials.
pub fn parse_pair_file(text: &str) -> Result<PolyPair> {
    let file: PairFile =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("pair file: {e}")))?;
    let conv = |entries: &[(u32, u32, String)]| -> Result<Vec<((u32, u32), Rat)>> {
        entries
            .iter()
            .map(|(a, b, s)| Ok(((*a, *b), parse_rat(s)?)))
            .collect()
    };
    make_pair(&conv(&file.f)?, &conv(&file.g)?, file.degree, &file.name)
}

pub fn pair_to_file(pair: &PolyPair) -> String {
    let conv = |p: &Poly2| {
        p.coeffs
            .iter()
            .map(|(&(a, b), c)| (a, b, format_rat(c)))
            .collect::<Vec<_>>()
    };
    let file = PairFile {
        name: pair.name.clone(),
        degree: pair.degree(),
        f: conv(&pair.f),
        g: conv(&pair.g),
    };
    serde_json::to_string_pretty(&file).expect("pair file serializes")
}

// ---------------------------------------------------------------------------
// Search
// ---------------------------------------------------------------------------

/// A pair found by `search_pairs` together with its triviality flag.
///
/// A pair is trivial when neither polynomial has a mixed monomial i^a j^b
/// with a, b >= 1. Pure pairs f = c1 i^d + c2 j^d, g = c1 i^d - c2 j^d
/// satisfy the splitting and shift identities in every degree, but without
/// i-j coupling the recurrence never mixes the boundary data, so they yield
/// no new approximations. The degree-1 pairs are necessarily of this shape;
/// the interesting statement is that nothing else exists in degree > 3.
#[derive(Clone, Debug)]
pub struct FoundPair {
    pub pair: PolyPair,
    pub nontrivial: bool,
}

pub const DEFAULT_SEARCH_CAP: u128 = 100_000_000;

/// Exhaustive search over integer-coefficient pairs with entries in
/// [-height, height] passing cond1 and cond2 exactly.
///
/// For each candidate f the cond2 identity is linear in g with a
/// one-dimensional kernel spanned by (i-j)^degree, so g is enumerated on that
/// affine line instead of over the full box; the result set is identical to a
/// full product enumeration. Pairs are reported as primitive representatives
/// (f and g jointly scaled by a positive rational so the integer coefficients
/// have content 1), in deterministic order.
pub fn search_pairs(degree: u32, height: u32, cap: u128) -> Result<Vec<FoundPair>> {
    assert!(degree >= 1 && height >= 1);
    let d = degree as usize;
    let box_size = (2 * height + 1) as u128;
    let f_space = box_size.pow(degree + 1);
    if f_space > cap {
        return Err(Error::SearchSpaceTooLarge { size: f_space, cap });
    }

    let kernel: Vec<Int> = (0..=d)
        .map(|k| {
            let b = binomial(degree, k as u32);
            if k % 2 == 0 {
                b
            } else {
                -b
            }
        })
        .collect();

    let mut seen: std::collections::HashSet<Vec<Int>> = Default::default();
    let mut found = Vec::new();
    let mut coeffs = vec![-(height as i64); d + 1];
    loop {
        if coeffs.iter().any(|&c| c != 0) {
            search_g_for_f(degree, height, &coeffs, &kernel, &mut seen, &mut found);
        }
        // odometer over the coefficient box
        let mut pos = d + 1;
        for k in (0..=d).rev() {
            if coeffs[k] < height as i64 {
                pos = k;
                break;
            }
        }
        if pos > d {
            break;
        }
        coeffs[pos] += 1;
        for c in coeffs.iter_mut().skip(pos + 1) {
            *c = -(height as i64);
        }
    }
    Ok(found)
}

/// Solve cond2 for g given f and keep integer solutions inside the box.
fn search_g_for_f(
    degree: u32,
    height: u32,
    f_coeffs: &[i64],
    kernel: &[Int],
    seen: &mut std::collections::HashSet<Vec<Int>>,
    found: &mut Vec<FoundPair>,
) {
    let d = degree as usize;
    let f = poly_from_dense(degree, f_coeffs);
    let fb = f.as_bipoly();
    // rhs(i,j) = f(i+1,j) - f(i,j+1); find g with g(i+1,j+1) - g(i,j) = rhs.
    let rhs = fb.shift(1, 0).sub(&fb.shift(0, 1));

    // Linear system in the d+1 coefficients of g, one equation per monomial
    // i^p j^q with p + q <= degree of the expanded difference.
    let mut monomials: std::collections::BTreeSet<(u32, u32)> = rhs.coeffs.keys().cloned().collect();
    // columns: contribution of g_k (coefficient of i^{d-k} j^k)
    let mut cols: Vec<BiPoly> = Vec::with_capacity(d + 1);
    for k in 0..=d {
        let gk = BiPoly::monomial((d - k) as u32, k as u32, Rat::one());
        let col = gk.shift(1, 1).sub(&gk);
        monomials.extend(col.coeffs.keys().cloned());
        cols.push(col);
    }
    let monomials: Vec<(u32, u32)> = monomials.into_iter().collect();
    let rows = monomials.len();
    let mut mat: Vec<Vec<Rat>> = Vec::with_capacity(rows);
    for &(p, q) in &monomials {
        let mut row: Vec<Rat> = cols
            .iter()
            .map(|c| c.coeffs.get(&(p, q)).cloned().unwrap_or_else(Rat::zero))
            .collect();
        row.push(rhs.coeffs.get(&(p, q)).cloned().unwrap_or_else(Rat::zero));
        mat.push(row);
    }
    let Some(particular) = solve_exact(&mut mat, d + 1) else {
        return;
    };

    // g = particular + t * kernel; the constant coefficient forces the
    // admissible integer t into a short interval.
    // kernel[0] = 1, so t = g_0 - particular_0 must be such that every
    // coefficient particular_k + t*kernel_k is an integer in [-h, h].
    let h = int_rat(height as i64);
    let lo = (-h.clone() - &particular[0]).ceil().to_integer();
    let hi = (h.clone() - &particular[0]).floor().to_integer();
    let mut t = lo.clone();
    while t <= hi {
        let tr = Rat::from_integer(t.clone());
        let g_coeffs: Vec<Rat> = (0..=d)
            .map(|k| &particular[k] + &tr * Rat::from_integer(kernel[k].clone()))
            .collect();
        t += 1;
        if !g_coeffs
            .iter()
            .all(|c| c.denom().is_one() && c.numer().abs() <= Int::from(height))
        {
            continue;
        }
        if g_coeffs.iter().all(|c| c.is_zero()) {
            continue;
        }
        let g = poly_from_rats(degree, &g_coeffs);
        let pair = PolyPair {
            f: f.clone(),
            g,
            name: String::new(),
        };
        let report = verify_conditions(&pair, 1);
        if !(report.cond1 && report.cond2) {
            continue;
        }
        let (key, pair) = primitive_representative(pair);
        if !seen.insert(key) {
            continue;
        }
        let has_mixed = |p: &Poly2| {
            p.as_bipoly()
                .coeffs
                .iter()
                .any(|(&(a, b), c)| a >= 1 && b >= 1 && !c.is_zero())
        };
        let nontrivial = has_mixed(&pair.f) || has_mixed(&pair.g);
        found.push(FoundPair { pair, nontrivial });
    }
}

fn poly_from_dense(degree: u32, coeffs: &[i64]) -> Poly2 {
    let entries: Vec<((u32, u32), Rat)> = coeffs
        .iter()
        .enumerate()
        .map(|(k, &c)| (((degree - k as u32), k as u32), int_rat(c)))
        .collect();
    Poly2::new(degree, &entries).expect("dense coefficients are homogeneous")
}

fn poly_from_rats(degree: u32, coeffs: &[Rat]) -> Poly2 {
    let entries: Vec<((u32, u32), Rat)> = coeffs
        .iter()
        .enumerate()
        .map(|(k, c)| (((degree - k as u32), k as u32), c.clone()))
        .collect();
    Poly2::new(degree, &entries).expect("dense coefficients are homogeneous")
}

/// Gaussian elimination over Q on an augmented matrix; returns a particular
/// solution or None when inconsistent.
fn solve_exact(mat: &mut [Vec<Rat>], unknowns: usize) -> Option<Vec<Rat>> {
    let rows = mat.len();
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; unknowns];
    let mut r = 0;
    for c in 0..unknowns {
        let Some(p) = (r..rows).find(|&rr| !mat[rr][c].is_zero()) else {
            continue;
        };
        mat.swap(r, p);
        let inv = mat[r][c].clone();
        for v in mat[r][c..].iter_mut() {
            *v /= &inv;
        }
        for rr in 0..rows {
            if rr != r && !mat[rr][c].is_zero() {
                let factor = mat[rr][c].clone();
                for cc in c..=unknowns {
                    let delta = &factor * &mat[r][cc];
                    mat[rr][cc] -= delta;
                }
            }
        }
        pivot_of_col[c] = Some(r);
        r += 1;
        if r == rows {
            break;
        }
    }
    // inconsistency: zero row with nonzero rhs
    for rr in 0..rows {
        if mat[rr][..unknowns].iter().all(|v| v.is_zero()) && !mat[rr][unknowns].is_zero() {
            return None;
        }
    }
    let mut sol = vec![Rat::zero(); unknowns];
    for c in 0..unknowns {
        if let Some(p) = pivot_of_col[c] {
            sol[c] = mat[p][unknowns].clone();
        }
    }
    Some(sol)
}

/// Divide f and g jointly by the positive content of their integer
/// coefficients; the dedupe key is the concatenated normalized coefficients.
fn primitive_representative(pair: PolyPair) -> (Vec<Int>, PolyPair) {
    let d = pair.degree() as usize;
    let dense = |p: &Poly2| -> Vec<Int> {
        (0..=d)
            .map(|k| p.coeff((d - k) as u32, k as u32).to_integer())
            .collect()
    };
    let mut all: Vec<Int> = dense(&pair.f);
    all.extend(dense(&pair.g));
    let mut content = Int::zero();
    for c in &all {
        content = num_integer::gcd(content, c.abs());
    }
    if content.is_zero() || content.is_one() {
        let name = describe_pair(&all, d);
        return (
            all,
            PolyPair {
                name,
                ..pair
            },
        );
    }
    let scaled: Vec<Int> = all.iter().map(|c| c / &content).collect();
    let scale = Rat::new(Int::one(), content);
    let rescale = |p: &Poly2| {
        let entries: Vec<((u32, u32), Rat)> = p
            .coeffs
            .iter()
            .map(|(&e, c)| (e, c * &scale))
            .collect();
        Poly2::new(p.degree, &entries).expect("rescale preserves homogeneity")
    };
    let name = describe_pair(&scaled, d);
    (
        scaled,
        PolyPair {
            f: rescale(&pair.f),
            g: rescale(&pair.g),
            name,
        },
    )
}

fn describe_pair(dense: &[Int], d: usize) -> String {
    let fmt_half = |half: &[Int]| {
        half.iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    };
    format!(
        "deg{}[{}|{}]",
        d,
        fmt_half(&dense[..=d]),
        fmt_half(&dense[d + 1..])
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeta3_coefficients_evaluate() {
        let pair = zeta3_pair();
        assert_eq!(pair.f_at(1, 1), int_rat(6));
        assert_eq!(pair.f_at(2, 1), int_rat(21));
        assert_eq!(pair.g_at(2, 1), int_rat(3));
        // f(0,j) = j^3 and g(0,j) = -j^3
        for j in 1..6 {
            assert_eq!(pair.f_at(0, j), int_rat(j * j * j));
            assert_eq!(pair.g_at(0, j), int_rat(-j * j * j));
        }
    }

    #[test]
    fn homogeneity_violation_is_rejected() {
        let err = make_pair(&[((2, 0), int_rat(1))], &[((3, 0), int_rat(1))], 3, "bad");
        match err {
            Err(Error::NonHomogeneous { a: 2, b: 0, degree: 3 }) => {}
            other => panic!("expected homogeneity rejection, got {other:?}"),
        }
    }

    #[test]
    fn zeta3_conditions_all_hold() {
        let report = verify_conditions(&zeta3_pair(), 5);
        assert!(report.cond1);
        assert!(report.cond2);
        assert!(report.cond3);
        assert_eq!(report.cond4, Cond4Status::ProvedByCoefficients);
    }

    #[test]
    fn zeta2_pair_fails_cubic_boundary() {
        let report = verify_conditions(&zeta2_pair(), 5);
        assert!(report.cond1);
        assert!(report.cond2);
        assert!(!report.cond3);
    }

    #[test]
    fn log2_pairs_pass_first_three_conditions() {
        for pair in [log2_paper_pair(), log2_alt_pair()] {
            let report = verify_conditions(&pair, 5);
            assert!(report.cond1, "{}", pair.name);
            assert!(report.cond2, "{}", pair.name);
            assert!(report.cond3, "{}", pair.name);
        }
        // only the alternating variant satisfies the positivity condition
        assert_eq!(
            verify_conditions(&log2_alt_pair(), 5).cond4,
            Cond4Status::SampledTrue { bound: 5 }
        );
        assert!(matches!(
            verify_conditions(&log2_paper_pair(), 5).cond4,
            Cond4Status::False { .. }
        ));
    }

    #[test]
    fn zeta3_pair_symmetry() {
        // f(j,i) = f(i,j) and g(j,i) = -g(i,j) symbolically
        let pair = zeta3_pair();
        for (&(a, b), c) in &pair.f.coeffs {
            assert_eq!(pair.f.coeff(b, a), *c);
        }
        for (&(a, b), c) in &pair.g.coeffs {
            assert_eq!(pair.g.coeff(b, a), -c.clone());
        }
    }

    #[test]
    fn verify_conditions_is_pure() {
        let a = verify_conditions(&zeta3_pair(), 7);
        let b = verify_conditions(&zeta3_pair(), 7);
        assert_eq!(a, b);
    }

    #[test]
    fn search_finds_zeta3_at_degree_3_height_2() {
        let found = search_pairs(3, 2, DEFAULT_SEARCH_CAP).unwrap();
        let target = zeta3_pair();
        assert!(found
            .iter()
            .any(|fp| fp.pair.f == target.f && fp.pair.g == target.g));
    }

    #[test]
    fn search_finds_both_log2_variants_at_degree_1() {
        let found = search_pairs(1, 1, DEFAULT_SEARCH_CAP).unwrap();
        let a = log2_paper_pair();
        let b = log2_alt_pair();
        assert!(found.iter().any(|fp| fp.pair.f == a.f && fp.pair.g == a.g));
        assert!(found.iter().any(|fp| fp.pair.f == b.f && fp.pair.g == b.g));
    }

    #[test]
    fn search_is_deterministic() {
        let a = search_pairs(2, 1, DEFAULT_SEARCH_CAP).unwrap();
        let b = search_pairs(2, 1, DEFAULT_SEARCH_CAP).unwrap();
        let names = |v: &[FoundPair]| v.iter().map(|p| p.pair.name.clone()).collect::<Vec<_>>();
        assert_eq!(names(&a), names(&b));
    }

    #[test]
    fn search_cap_is_enforced() {
        assert!(matches!(
            search_pairs(9, 9, 100),
            Err(Error::SearchSpaceTooLarge { .. })
        ));
    }

    #[test]
    fn pair_file_roundtrip() {
        let pair = zeta2_pair();
        let text = pair_to_file(&pair);
        let parsed = parse_pair_file(&text).unwrap();
        assert_eq!(parsed, pair);
    }
}
