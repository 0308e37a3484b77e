//! Row-by-row construction of the 2-D rational tables.
//!
//! The top row of the coupled recurrence propagates row i-1 to row i:
//!
//!   u_{i,j} = (f(i,j) u_{i-1,j} + g(0,j) u_{i-1,j-1}) / f(i,0)
//!
//! while its bottom row is asserted as a consistency check on every step.
//! Coefficients are always taken in the gcd-reduced form f(i/d, j/d) with
//! d = gcd(i, j); homogeneity makes this mathematically identical and keeps
//! the intermediate rationals small.

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{PolyPair, Rat};

/// Boundary values along row 0 and column 0.
#[derive(Clone)]
pub enum BoundarySpec {
    /// u_{0,j} = u_{i,0} = 1.
    Unit,
    /// u_{0,0} = 0 and partial sums of the boundary series:
    /// u_{0,j} = sum_{n<=j} (1/f(0,n)) prod_{k<n} (-g(0,k)/f(0,k)),
    /// u_{i,0} = sum_{n<=i} (1/f(n,0)) prod_{k<n} ( g(k,0)/f(k,0)).
    Series,
    /// Explicit generators for u_{0,j} and u_{i,0}.
    Custom {
        row0: std::sync::Arc<dyn Fn(u32) -> Rat + Send + Sync>,
        col0: std::sync::Arc<dyn Fn(u32) -> Rat + Send + Sync>,
    },
}

impl BoundarySpec {
    pub fn kind(&self) -> &'static str {
        match self {
            BoundarySpec::Unit => "unit",
            BoundarySpec::Series => "series",
            BoundarySpec::Custom { .. } => "custom",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TableMode {
    Full,
    TwoRowStreaming,
}

/// Default cap on stored entries in full mode.
pub const DEFAULT_ENTRY_BUDGET: usize = 16_000_000;

enum TableData {
    Full(Vec<Vec<Rat>>),
    Streaming {
        row0: Vec<Rat>,
        col0: Vec<Rat>,
        /// u_{n,n} for n = 0..=min(I, J)
        diag: Vec<Rat>,
        /// u_{n,n+1} for n = 0..
        superdiag: Vec<Rat>,
        last_row: Vec<Rat>,
        prev_row: Vec<Rat>,
    },
}

/// A built table of exact rationals over 0..=imax x 0..=jmax.
pub struct RationalTable {
    pub pair: PolyPair,
    pub boundary: BoundarySpec,
    pub imax: u32,
    pub jmax: u32,
    pub mode: TableMode,
    data: TableData,
}

/// Exact boundary values (row 0 up to j_max, column 0 up to i_max).
pub fn boundary_values(
    pair: &PolyPair,
    spec: &BoundarySpec,
    j_max: u32,
    i_max: u32,
) -> Result<(Vec<Rat>, Vec<Rat>)> {
    match spec {
        BoundarySpec::Unit => Ok((
            vec![Rat::one(); j_max as usize + 1],
            vec![Rat::one(); i_max as usize + 1],
        )),
        BoundarySpec::Series => {
            let row0 = series_sums(j_max, |n| pair.f_at(0, n), |k| -pair.g_at(0, k))?;
            let col0 = series_sums(i_max, |n| pair.f_at(n, 0), |k| pair.g_at(k, 0))?;
            Ok((row0, col0))
        }
        BoundarySpec::Custom { row0, col0 } => Ok((
            (0..=j_max).map(|j| row0(j)).collect(),
            (0..=i_max).map(|i| col0(i)).collect(),
        )),
    }
}

fn series_sums(
    n_max: u32,
    lead: impl Fn(i64) -> Rat,
    prod_num: impl Fn(i64) -> Rat,
) -> Result<Vec<Rat>> {
    let mut out = Vec::with_capacity(n_max as usize + 1);
    out.push(Rat::zero());
    let mut product = Rat::one();
    let mut sum = Rat::zero();
    for n in 1..=n_max as i64 {
        let leading = lead(n);
        if leading.is_zero() {
            return Err(Error::ZeroLeadingValue { index: n as u32 });
        }
        if n > 1 {
            // factor for k = n-1 joins the running product
            let denom = lead(n - 1);
            if denom.is_zero() {
                return Err(Error::ZeroLeadingValue { index: n as u32 - 1 });
            }
            product *= prod_num(n - 1) / denom;
        }
        sum += &product / leading;
        out.push(sum.clone());
    }
    Ok(out)
}

/// The gcd-reduced coefficient triple (f(i',j'), g(0,j'), f(i',0)).
fn reduced_coeffs(pair: &PolyPair, i: u32, j: u32) -> (Rat, Rat, Rat) {
    let d = i.gcd(&j).max(1);
    let (ir, jr) = ((i / d) as i64, (j / d) as i64);
    (pair.f_at(ir, jr), pair.g_at(0, jr), pair.f_at(ir, 0))
}

/// Propagate row i-1 to row i. `prev_row[0..]` is row i-1 including j = 0;
/// `col0_entry` is the boundary value u_{i,0}. The bottom half of the coupled
/// recurrence is asserted at every j; a violation means the supplied row does
/// not satisfy the cross-row recurrence.
pub fn step_row(pair: &PolyPair, prev_row: &[Rat], i: u32, col0_entry: Rat) -> Result<Vec<Rat>> {
    assert!(i >= 1, "row 0 is boundary-owned");
    let mut row = Vec::with_capacity(prev_row.len());
    row.push(col0_entry);
    for j in 1..prev_row.len() as u32 {
        let (f_ij, g_0j, f_i0) = reduced_coeffs(pair, i, j);
        if f_i0.is_zero() {
            return Err(Error::ZeroLeadingValue { index: i });
        }
        let uj = &prev_row[j as usize];
        let ujm1 = &prev_row[j as usize - 1];
        let new = (&f_ij * uj + &g_0j * ujm1) / &f_i0;
        // bottom row of the coupled recurrence, same gcd reduction:
        // f(0,j') u_{i-1,j} + g(i',j') u_{i-1,j-1} = f(i',0) u_{i,j-1}
        let d = i.gcd(&j).max(1);
        let (ir, jr) = ((i / d) as i64, (j / d) as i64);
        let lhs = pair.f_at(0, jr) * uj + pair.g_at(ir, jr) * ujm1;
        let rhs = &f_i0 * &row[j as usize - 1];
        if lhs != rhs {
            return Err(Error::InconsistentBoundary { row: i, col: j });
        }
        row.push(new);
    }
    Ok(row)
}

/// Check the in-row recurrence for a row with index i:
/// f(0,j+1) u_{i,j+1} = (f(i+1,j) - g(i+1,j+1)) u_{i,j} + g(0,j) u_{i,j-1}.
pub fn check_row_recurrence(pair: &PolyPair, row: &[Rat], i: u32) -> bool {
    let i = i as i64;
    for j in 1..row.len() as i64 - 1 {
        let lhs = pair.f_at(0, j + 1) * &row[j as usize + 1];
        let rhs = (pair.f_at(i + 1, j) - pair.g_at(i + 1, j + 1)) * &row[j as usize]
            + pair.g_at(0, j) * &row[j as usize - 1];
        if lhs != rhs {
            return false;
        }
    }
    true
}

/// Reconstruct row i-1 from row i via the adjugate system
/// (the inverse of the propagation step, valid when g(i',0) != 0).
pub fn inverse_step(pair: &PolyPair, row: &[Rat], i: u32) -> Result<Vec<Rat>> {
    assert!(i >= 1);
    let mut prev = vec![Rat::zero(); row.len()];
    // second component at j = 1 recovers the j = 0 entry
    let g_i0 = pair.g_at(i as i64, 0);
    if g_i0.is_zero() {
        return Err(Error::NonInvertibleStep { i });
    }
    prev[0] = (pair.f_at(i as i64, 1) * &row[0] - pair.f_at(0, 1) * &row[1]) / &g_i0;
    for j in 1..row.len() as u32 {
        let d = i.gcd(&j).max(1);
        let (ir, jr) = ((i / d) as i64, (j / d) as i64);
        let g_red = pair.g_at(ir, 0);
        if g_red.is_zero() {
            return Err(Error::NonInvertibleStep { i: ir as u32 });
        }
        prev[j as usize] =
            (pair.g_at(ir, jr) * &row[j as usize] - pair.g_at(0, jr) * &row[j as usize - 1])
                / &g_red;
    }
    Ok(prev)
}

/// Check the column recurrence at a fixed j:
/// f(i+1,0) u_{i+1,j-1} = (f(i,j) + g(i+1,j)) u_{i,j-1} - g(i,0) u_{i-1,j-1}.
pub fn check_column_recurrence(table: &RationalTable, j: u32) -> bool {
    assert!(j >= 1);
    let pair = &table.pair;
    for i in 1..table.imax as i64 {
        let (Some(up), Some(mid), Some(down)) = (
            table.get((i - 1) as u32, j - 1),
            table.get(i as u32, j - 1),
            table.get((i + 1) as u32, j - 1),
        ) else {
            return false;
        };
        let lhs = pair.f_at(i + 1, 0) * down;
        let rhs = (pair.f_at(i, j as i64) + pair.g_at(i + 1, j as i64)) * mid
            - pair.g_at(i, 0) * up;
        if lhs != rhs {
            return false;
        }
    }
    true
}

/// Build the table over 0..=imax x 0..=jmax.
pub fn build(
    pair: &PolyPair,
    spec: &BoundarySpec,
    imax: u32,
    jmax: u32,
    mode: TableMode,
) -> Result<RationalTable> {
    build_with_budget(pair, spec, imax, jmax, mode, DEFAULT_ENTRY_BUDGET)
}

pub fn build_with_budget(
    pair: &PolyPair,
    spec: &BoundarySpec,
    imax: u32,
    jmax: u32,
    mode: TableMode,
    budget: usize,
) -> Result<RationalTable> {
    if mode == TableMode::Full {
        let entries = (imax as usize + 1) * (jmax as usize + 1);
        if entries > budget {
            return Err(Error::SizeBudget { budget });
        }
    }
    let (row0, col0) = boundary_values(pair, spec, jmax, imax)?;
    // induction base: row 0 must satisfy the in-row recurrence
    if !check_row_recurrence(pair, &row0, 0) {
        return Err(Error::InconsistentBoundary { row: 0, col: 0 });
    }

    match mode {
        TableMode::Full => {
            let mut rows = Vec::with_capacity(imax as usize + 1);
            rows.push(row0);
            for i in 1..=imax {
                let row = step_row(pair, &rows[i as usize - 1], i, col0[i as usize].clone())?;
                rows.push(row);
            }
            Ok(RationalTable {
                pair: pair.clone(),
                boundary: spec.clone(),
                imax,
                jmax,
                mode,
                data: TableData::Full(rows),
            })
        }
        TableMode::TwoRowStreaming => {
            let mut diag = vec![row0[0].clone()];
            let mut superdiag = Vec::new();
            if jmax >= 1 {
                superdiag.push(row0[1].clone());
            }
            let mut prev_row = row0.clone();
            let mut last_row = row0.clone();
            for i in 1..=imax {
                let row = step_row(pair, &last_row, i, col0[i as usize].clone())?;
                prev_row = std::mem::replace(&mut last_row, row);
                if (i as usize) < last_row.len() {
                    diag.push(last_row[i as usize].clone());
                }
                if (i as usize + 1) < last_row.len() {
                    superdiag.push(last_row[i as usize + 1].clone());
                }
            }
            Ok(RationalTable {
                pair: pair.clone(),
                boundary: spec.clone(),
                imax,
                jmax,
                mode,
                data: TableData::Streaming {
                    row0,
                    col0,
                    diag,
                    superdiag,
                    last_row,
                    prev_row,
                },
            })
        }
    }
}

impl RationalTable {
    pub fn get(&self, i: u32, j: u32) -> Option<&Rat> {
        if i > self.imax || j > self.jmax {
            return None;
        }
        match &self.data {
            TableData::Full(rows) => Some(&rows[i as usize][j as usize]),
            TableData::Streaming {
                row0,
                col0,
                diag,
                superdiag,
                last_row,
                prev_row,
            } => {
                if i == 0 {
                    Some(&row0[j as usize])
                } else if j == 0 {
                    Some(&col0[i as usize])
                } else if i == self.imax {
                    Some(&last_row[j as usize])
                } else if i + 1 == self.imax {
                    Some(&prev_row[j as usize])
                } else if i == j {
                    diag.get(i as usize)
                } else if j == i + 1 {
                    superdiag.get(i as usize)
                } else {
                    None
                }
            }
        }
    }

    pub fn at(&self, i: u32, j: u32) -> Result<&Rat> {
        self.get(i, j).ok_or(Error::OutOfRange { i, j })
    }

    pub fn row(&self, i: u32) -> Option<&[Rat]> {
        match &self.data {
            TableData::Full(rows) => rows.get(i as usize).map(|r| r.as_slice()),
            TableData::Streaming { row0, last_row, prev_row, .. } => {
                if i == 0 {
                    Some(row0)
                } else if i == self.imax {
                    Some(last_row)
                } else if i + 1 == self.imax {
                    Some(prev_row)
                } else {
                    None
                }
            }
        }
    }

    /// u_{n,n}
    pub fn diag(&self, n: u32) -> Result<&Rat> {
        match &self.data {
            TableData::Full(_) => self.at(n, n),
            TableData::Streaming { diag, .. } => {
                diag.get(n as usize).ok_or(Error::OutOfRange { i: n, j: n })
            }
        }
    }

    /// u_{n,n+1}
    pub fn superdiag(&self, n: u32) -> Result<&Rat> {
        match &self.data {
            TableData::Full(_) => self.at(n, n + 1),
            TableData::Streaming { superdiag, .. } => superdiag
                .get(n as usize)
                .ok_or(Error::OutOfRange { i: n, j: n + 1 }),
        }
    }

    /// Verify the in-row recurrence on every stored row and the column
    /// recurrence on every column (full mode).
    pub fn verify_consistency(&self) -> bool {
        match &self.data {
            TableData::Full(rows) => {
                rows.iter()
                    .enumerate()
                    .all(|(i, row)| check_row_recurrence(&self.pair, row, i as u32))
                    && (1..=self.jmax).all(|j| check_column_recurrence(self, j))
            }
            TableData::Streaming { last_row, .. } => {
                check_row_recurrence(&self.pair, last_row, self.imax)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int_rat as ir, log2_alt_pair, log2_paper_pair, rat, zeta3_pair};

    fn unit_table(n: u32) -> RationalTable {
        build(&zeta3_pair(), &BoundarySpec::Unit, n, n, TableMode::Full).unwrap()
    }

    fn series_table(n: u32) -> RationalTable {
        build(&zeta3_pair(), &BoundarySpec::Series, n, n, TableMode::Full).unwrap()
    }

    #[test]
    fn series_boundary_partial_sums() {
        let (row0, col0) =
            boundary_values(&zeta3_pair(), &BoundarySpec::Series, 3, 3).unwrap();
        assert_eq!(row0, vec![ir(0), ir(1), rat(9, 8), rat(251, 216)]);
        assert_eq!(col0, row0);
    }

    #[test]
    fn unit_boundary_is_all_ones() {
        let (row0, col0) = boundary_values(&zeta3_pair(), &BoundarySpec::Unit, 4, 4).unwrap();
        assert!(row0.iter().all(|v| v.is_one()));
        assert!(col0.iter().all(|v| v.is_one()));
    }

    #[test]
    fn log2_alt_boundary_alternates() {
        let (row0, _) =
            boundary_values(&log2_alt_pair(), &BoundarySpec::Series, 3, 3).unwrap();
        assert_eq!(row0, vec![ir(0), ir(1), rat(1, 2), rat(5, 6)]);
    }

    #[test]
    fn log2_paper_boundary_is_harmonic() {
        let (row0, _) =
            boundary_values(&log2_paper_pair(), &BoundarySpec::Series, 3, 3).unwrap();
        assert_eq!(row0, vec![ir(0), ir(1), rat(3, 2), rat(11, 6)]);
    }

    #[test]
    fn step_rows_match_hand_values() {
        let pair = zeta3_pair();
        let row0 = vec![Rat::one(); 4];
        let row1 = step_row(&pair, &row0, 1, Rat::one()).unwrap();
        assert_eq!(row1, vec![ir(1), ir(5), ir(13), ir(25)]);
        let row2 = step_row(&pair, &row1, 2, Rat::one()).unwrap();
        assert_eq!(row2[1], ir(13));
        assert_eq!(row2[2], ir(73));

        let srow0 = vec![ir(0), ir(1), rat(9, 8)];
        let srow1 = step_row(&pair, &srow0, 1, ir(1)).unwrap();
        assert_eq!(srow1, vec![ir(1), ir(6), rat(125, 8)]);
    }

    #[test]
    fn small_tables_match_hand_recurrence() {
        let q = unit_table(2);
        let expect_q = [[1, 1, 1], [1, 5, 13], [1, 13, 73]];
        for i in 0..3u32 {
            for j in 0..3u32 {
                assert_eq!(*q.at(i, j).unwrap(), ir(expect_q[i as usize][j as usize]));
            }
        }
        let p = series_table(2);
        assert_eq!(*p.at(0, 2).unwrap(), rat(9, 8));
        assert_eq!(*p.at(1, 1).unwrap(), ir(6));
        assert_eq!(*p.at(1, 2).unwrap(), rat(125, 8));
        assert_eq!(*p.at(2, 2).unwrap(), rat(351, 4));
    }

    #[test]
    fn row_recurrence_checks() {
        let pair = zeta3_pair();
        assert!(check_row_recurrence(&pair, &vec![Rat::one(); 5], 0));
        assert!(check_row_recurrence(
            &pair,
            &[ir(0), ir(1), rat(9, 8), rat(251, 216)],
            0
        ));
        let mut corrupted = vec![Rat::one(); 5];
        corrupted[2] += Rat::one();
        assert!(!check_row_recurrence(&pair, &corrupted, 0));
    }

    #[test]
    fn inverse_step_roundtrips() {
        let pair = zeta3_pair();
        let q = unit_table(3);
        let back = inverse_step(&pair, q.row(1).unwrap(), 1).unwrap();
        assert!(back.iter().all(|v| v.is_one()));
        let p = series_table(3);
        let back = inverse_step(&pair, p.row(2).unwrap(), 2).unwrap();
        assert_eq!(back[..3], [ir(1), ir(6), rat(125, 8)]);
        for i in 1..=3u32 {
            for table in [&q, &p] {
                let row = table.row(i).unwrap();
                let prev = inverse_step(&pair, row, i).unwrap();
                assert_eq!(prev, table.row(i - 1).unwrap());
            }
        }
    }

    #[test]
    fn degenerate_inverse_errors() {
        // g == 0 has g(i,0) = 0 identically
        let pair = crate::poly::make_pair(
            &[((1, 0), ir(1)), ((0, 1), ir(1))],
            &[((0, 1), ir(0))],
            1,
            "degenerate",
        )
        .unwrap();
        let err = inverse_step(&pair, &[ir(1), ir(1)], 1);
        assert!(matches!(err, Err(Error::NonInvertibleStep { .. })));
    }

    #[test]
    fn column_recurrence_holds() {
        let q = unit_table(4);
        let p = series_table(4);
        for j in 1..=4 {
            assert!(check_column_recurrence(&q, j));
            assert!(check_column_recurrence(&p, j));
        }
    }

    #[test]
    fn consistency_and_symmetry_to_20() {
        for table in [unit_table(20), series_table(20)] {
            assert!(table.verify_consistency());
            for i in 0..=20u32 {
                for j in 0..i {
                    assert_eq!(table.at(i, j).unwrap(), table.at(j, i).unwrap());
                }
            }
        }
    }

    #[test]
    fn q_rows_increase() {
        let q = unit_table(12);
        for i in 1..=12u32 {
            for j in 1..=12u32 {
                assert!(q.at(i, j).unwrap() > q.at(i, j - 1).unwrap());
            }
        }
    }

    #[test]
    fn streaming_matches_full() {
        let pair = zeta3_pair();
        let full = build(&pair, &BoundarySpec::Series, 12, 13, TableMode::Full).unwrap();
        let stream =
            build(&pair, &BoundarySpec::Series, 12, 13, TableMode::TwoRowStreaming).unwrap();
        for n in 0..=12u32 {
            assert_eq!(full.diag(n).unwrap(), stream.diag(n).unwrap());
            assert_eq!(full.superdiag(n).unwrap(), stream.superdiag(n).unwrap());
        }
    }

    #[test]
    fn budget_overflow_errors() {
        let err = build_with_budget(
            &zeta3_pair(),
            &BoundarySpec::Unit,
            100,
            100,
            TableMode::Full,
            100,
        );
        assert!(matches!(err, Err(Error::SizeBudget { .. })));
    }
}
