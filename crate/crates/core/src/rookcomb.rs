//! Rook placements on Ferrers boards, the q-counting inversion statistic
//! and the q-integer product for maximal placements.

use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::json::bigint_value;
use crate::partition::Partition;

/// Univariate polynomial in `q` with integer coefficients, constant term first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct QPolynomial(Vec<BigInt>);

impl QPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        QPolynomial(coeffs)
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        QPolynomial::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        QPolynomial(Vec::new())
    }

    pub fn one() -> Self {
        QPolynomial(vec![BigInt::one()])
    }

    /// `[m]_q = 1 + q + … + q^{m−1}`.
    pub fn q_integer(m: usize) -> Self {
        QPolynomial(vec![BigInt::one(); m])
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn coefficient(&self, d: usize) -> BigInt {
        self.0.get(d).cloned().unwrap_or_default()
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.0.iter().sum()
    }

    /// `Some(c)` when `self = q^c · other`.
    pub fn offset_to(&self, other: &QPolynomial) -> Option<usize> {
        let lead_zeros = |p: &QPolynomial| p.0.iter().take_while(|c| c.is_zero()).count();
        let (a, b) = (lead_zeros(self), lead_zeros(other));
        if a < b || self.0[a..] != other.0[b..] {
            return None;
        }
        Some(a - b)
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.0.iter().map(bigint_value).collect())
    }
}

impl Add for &QPolynomial {
    type Output = QPolynomial;
    fn add(self, rhs: &QPolynomial) -> QPolynomial {
        let len = self.0.len().max(rhs.0.len());
        let coeffs = (0..len).map(|i| self.coefficient(i) + rhs.coefficient(i)).collect();
        QPolynomial::new(coeffs)
    }
}

impl Mul for &QPolynomial {
    type Output = QPolynomial;
    fn mul(self, rhs: &QPolynomial) -> QPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return QPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in rhs.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPolynomial::new(out)
    }
}

impl fmt::Display for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (d, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c < &BigInt::zero();
            let mag = if neg { -c } else { c.clone() };
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let var = match d {
                0 => String::new(),
                1 => "q".to_string(),
                _ => format!("q^{d}"),
            };
            if d == 0 || !mag.is_one() {
                write!(f, "{mag}")?;
            }
            f.write_str(&var)?;
        }
        Ok(())
    }
}

/// Left-justified board with `rows[i]` cells in row `i + 1`; row 1 at the
/// bottom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FerrersBoard {
    rows: Vec<u32>,
}

impl FerrersBoard {
    pub fn new(rows: Vec<u32>) -> Result<Self> {
        if let Some(i) = rows.windows(2).position(|w| w[0] > w[1]) {
            return Err(Error::NotWeaklyIncreasing(i + 2));
        }
        Ok(FerrersBoard { rows })
    }

    pub fn from_partition(lambda: &Partition) -> Self {
        FerrersBoard { rows: lambda.parts().to_vec() }
    }

    pub fn rows(&self) -> &[u32] {
        &self.rows
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn contains(&self, row: usize, col: usize) -> bool {
        row >= 1 && row <= self.rows.len() && col >= 1 && col <= self.rows[row - 1] as usize
    }

    /// Reflect across the diagonal; rows of the result are the column
    /// heights, re-sorted increasingly.
    pub fn transpose(&self) -> FerrersBoard {
        let width = self.rows.last().copied().unwrap_or(0);
        let mut cols: Vec<u32> = (1..=width)
            .map(|j| self.rows.iter().filter(|&&r| r >= j).count() as u32)
            .collect();
        cols.sort_unstable();
        FerrersBoard { rows: cols }
    }

    /// Visits every `k`-rook placement, passing the chosen column of each
    /// row (`0` for an empty row) and the inversion statistic.
    fn for_each_placement(&self, k: usize, mut visit: impl FnMut(&[usize], usize)) {
        let n = self.rows.len();
        if k > n {
            return;
        }
        let width = self.rows.last().copied().unwrap_or(0) as usize;
        let mut used = vec![false; width + 1];
        let mut cols = vec![0usize; n];
        #[allow(clippy::too_many_arguments)]
        fn go(
            board: &FerrersBoard,
            row: usize,
            left: usize,
            stat: usize,
            used: &mut [bool],
            cols: &mut Vec<usize>,
            visit: &mut dyn FnMut(&[usize], usize),
        ) {
            let n = board.rows.len();
            if left == 0 {
                visit(cols, stat);
                return;
            }
            if n - row < left {
                return;
            }
            // Skip this row.
            go(board, row + 1, left, stat, used, cols, visit);
            let len = board.rows[row] as usize;
            let mut free_left = 0usize;
            for c in 1..=len {
                if used[c] {
                    continue;
                }
                used[c] = true;
                cols[row] = c;
                go(board, row + 1, left - 1, stat + free_left, used, cols, visit);
                cols[row] = 0;
                used[c] = false;
                free_left += 1;
            }
        }
        go(self, 0, k, 0, &mut used, &mut cols, &mut visit);
    }
}

/// A set of cells with no two in a row or column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RookPlacement {
    cells: Vec<(usize, usize)>,
}

impl RookPlacement {
    /// Cells are `(row, column)`, both 1-based.
    pub fn new(mut cells: Vec<(usize, usize)>) -> Result<Self> {
        cells.sort_unstable();
        for (i, a) in cells.iter().enumerate() {
            for b in &cells[i + 1..] {
                if a.0 == b.0 || a.1 == b.1 {
                    return Err(Error::InvalidPlacement(format!("{a:?} attacks {b:?}")));
                }
            }
        }
        Ok(RookPlacement { cells })
    }

    pub fn cells(&self) -> &[(usize, usize)] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }
}

/// Exact number of `k`-rook placements on the board.
pub fn rook_number(board: &FerrersBoard, k: usize) -> BigInt {
    let mut count: u128 = 0;
    board.for_each_placement(k, |_, _| count += 1);
    BigInt::from(count)
}

/// Counts cells that hold no rook, lie strictly left of a rook in their row,
/// and are not cancelled by a rook lower in the same column.
pub fn inversion_stat(board: &FerrersBoard, placement: &RookPlacement) -> Result<usize> {
    for &(r, c) in placement.cells() {
        if !board.contains(r, c) {
            return Err(Error::InvalidPlacement(format!("({r},{c}) is off the board")));
        }
    }
    let mut stat = 0;
    for &(r, c) in placement.cells() {
        for j in 1..c {
            let cancelled = placement.cells().iter().any(|&(r2, c2)| c2 == j && r2 < r);
            if !cancelled {
                stat += 1;
            }
        }
    }
    Ok(stat)
}

/// `Σ_P q^{inv(P)}` over all `k`-rook placements.
pub fn q_rook_polynomial(board: &FerrersBoard, k: usize) -> QPolynomial {
    let mut counts: Vec<u128> = Vec::new();
    board.for_each_placement(k, |_, stat| {
        if counts.len() <= stat {
            counts.resize(stat + 1, 0);
        }
        counts[stat] += 1;
    });
    QPolynomial::new(counts.into_iter().map(BigInt::from).collect())
}

/// All `k`-rook placements, in enumeration order.
pub fn placements(board: &FerrersBoard, k: usize) -> Vec<RookPlacement> {
    let mut out = Vec::new();
    board.for_each_placement(k, |cols, _| {
        let cells = cols
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(r, &c)| (r + 1, c))
            .collect();
        out.push(RookPlacement { cells });
    });
    out
}

/// `∏ᵢ [λᵢ − i + 1]_q`.
pub fn product_formula(lambda: &Partition) -> Result<QPolynomial> {
    lambda.check_board()?;
    Ok(lambda
        .parts()
        .iter()
        .enumerate()
        .fold(QPolynomial::one(), |acc, (i, &p)| &acc * &QPolynomial::q_integer(p as usize - i)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn board(rows: &[u32]) -> FerrersBoard {
        FerrersBoard::new(rows.to_vec()).unwrap()
    }

    #[test]
    fn rook_number_examples() {
        assert_eq!(rook_number(&board(&[2, 2]), 2), BigInt::from(2));
        assert_eq!(rook_number(&board(&[3, 4, 4]), 0), BigInt::from(1));
        assert_eq!(rook_number(&board(&[1, 2]), 1), BigInt::from(3));
        assert_eq!(rook_number(&board(&[1, 2]), 3), BigInt::from(0));
    }

    #[test]
    fn inversion_examples() {
        let b = board(&[2, 2]);
        let p = RookPlacement::new(vec![(1, 1), (2, 2)]).unwrap();
        assert_eq!(inversion_stat(&b, &p).unwrap(), 0);
        let p = RookPlacement::new(vec![(1, 2), (2, 1)]).unwrap();
        assert_eq!(inversion_stat(&b, &p).unwrap(), 1);
        let p = RookPlacement::new(vec![]).unwrap();
        assert_eq!(inversion_stat(&b, &p).unwrap(), 0);
        let p = RookPlacement::new(vec![(1, 3)]).unwrap();
        assert!(inversion_stat(&b, &p).is_err());
        assert!(RookPlacement::new(vec![(1, 1), (2, 1)]).is_err());
    }

    #[test]
    fn incremental_stat_matches_definition() {
        for rows in [[2u32, 3, 3], [1, 3, 4], [3, 3, 3]] {
            let b = board(&rows);
            for k in 0..=3 {
                let mut via_def = [0u64; 16];
                for p in placements(&b, k) {
                    via_def[inversion_stat(&b, &p).unwrap()] += 1;
                }
                let q = q_rook_polynomial(&b, k);
                for (d, c) in via_def.iter().enumerate() {
                    assert_eq!(q.coefficient(d), BigInt::from(*c));
                }
            }
        }
    }

    #[test]
    fn q_rook_examples() {
        assert_eq!(q_rook_polynomial(&board(&[2, 2]), 2), QPolynomial::from_i64(&[1, 1]));
        assert_eq!(q_rook_polynomial(&board(&[2, 3]), 2), QPolynomial::from_i64(&[1, 2, 1]));
        assert_eq!(q_rook_polynomial(&board(&[1]), 1), QPolynomial::one());
    }

    #[test]
    fn product_formula_examples() {
        let p = |s: &str| Partition::parse(s).unwrap();
        assert_eq!(product_formula(&p("2,4,4,5,5")).unwrap(), QPolynomial::from_i64(&[1, 4, 7, 7, 4, 1]));
        assert_eq!(product_formula(&p("1,2,3,4")).unwrap(), QPolynomial::one());
        assert_eq!(product_formula(&p("2,2")).unwrap(), QPolynomial::from_i64(&[1, 1]));
        assert!(product_formula(&p("1,1")).is_err());
    }

    #[test]
    fn qpoly_display_and_offset() {
        let a = QPolynomial::from_i64(&[1, 4, 7, 7, 4, 1]);
        assert_eq!(a.to_string(), "1 + 4q + 7q^2 + 7q^3 + 4q^4 + q^5");
        assert_eq!(QPolynomial::from_i64(&[0, -1, 2]).to_string(), "-q + 2q^2");
        let shifted = QPolynomial::from_i64(&[0, 0, 1, 4, 7, 7, 4, 1]);
        assert_eq!(shifted.offset_to(&a), Some(2));
        assert_eq!(a.offset_to(&a), Some(0));
        assert_eq!(a.offset_to(&shifted), None);
        assert_eq!(a.to_json().to_string(), "[1,4,7,7,4,1]");
    }

    #[test]
    fn transpose_examples() {
        assert_eq!(board(&[1, 3]).transpose().rows(), &[1, 1, 2]);
        assert_eq!(board(&[2, 2]).transpose().rows(), &[2, 2]);
    }
}
