//! Finite-rank graded ℤ-algebras generated in degree one, stored as
//! multiplication tables between consecutive graded pieces.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::Result;
use crate::lattice::IMatrix;
use crate::rookcomb::QPolynomial;

/// Sparse integer matrix stored by columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: Vec<Vec<(usize, BigInt)>>,
    small: Option<Vec<Vec<(usize, i128)>>>,
}

impl SparseMatrix {
    pub fn from_columns(rows: usize, cols: Vec<Vec<(usize, BigInt)>>) -> Self {
        let small = cols
            .iter()
            .map(|c| c.iter().map(|(i, a)| a.to_i128().map(|s| (*i, s))).collect::<Option<Vec<_>>>())
            .collect::<Option<Vec<_>>>();
        SparseMatrix { rows, cols, small }
    }

    pub fn from_dense(m: &IMatrix, rows: usize, ncols: usize) -> Self {
        let cols = (0..ncols)
            .map(|j| (0..rows).filter(|&i| !m[i][j].is_zero()).map(|i| (i, m[i][j].clone())).collect())
            .collect();
        SparseMatrix::from_columns(rows, cols)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn to_dense(&self) -> IMatrix {
        let mut m = vec![vec![BigInt::zero(); self.cols.len()]; self.rows];
        for (j, col) in self.cols.iter().enumerate() {
            for (i, a) in col {
                m[*i][j] = a.clone();
            }
        }
        m
    }

    fn apply_big(&self, scale: &BigInt, v: &[BigInt], out: &mut [BigInt]) {
        for (j, col) in self.cols.iter().enumerate() {
            if v[j].is_zero() {
                continue;
            }
            let s = scale * &v[j];
            for (i, a) in col {
                out[*i] += &s * a;
            }
        }
    }

    /// `out += scale·M·v`, or `None` on overflow.
    fn apply_small(&self, scale: i128, v: &[i128], out: &mut [i128]) -> Option<()> {
        let cols = self.small.as_ref()?;
        for (j, col) in cols.iter().enumerate() {
            if v[j] == 0 {
                continue;
            }
            let s = scale.checked_mul(v[j])?;
            for (i, a) in col {
                out[*i] = out[*i].checked_add(s.checked_mul(*a)?)?;
            }
        }
        Some(())
    }
}

/// `dims[d]` is the rank of the degree-`d` piece; `tables[k][d]` multiplies
/// degree `d` by the `k`-th basis element of degree one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedAlgebra {
    dims: Vec<usize>,
    tables: Vec<Vec<SparseMatrix>>,
}

impl GradedAlgebra {
    /// `dims[0]` must be 1 and `tables[k].len() == dims.len() − 1`.
    pub fn new(mut dims: Vec<usize>, mut tables: Vec<Vec<SparseMatrix>>) -> Self {
        while dims.len() > 1 && dims.last() == Some(&0) {
            dims.pop();
        }
        let top = dims.len() - 1;
        for t in tables.iter_mut() {
            t.truncate(top);
        }
        debug_assert_eq!(dims[0], 1);
        debug_assert_eq!(tables.len(), dims.get(1).copied().unwrap_or(0));
        GradedAlgebra { dims, tables }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, d: usize) -> usize {
        self.dims.get(d).copied().unwrap_or(0)
    }

    pub fn rank(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn top_degree(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn table(&self, k: usize, d: usize) -> &SparseMatrix {
        &self.tables[k][d]
    }

    pub fn hilbert(&self) -> QPolynomial {
        QPolynomial::new(self.dims.iter().map(|&d| BigInt::from(d)).collect())
    }

    /// Multiplication by the degree-one element `w`, as a dense
    /// `dims[d+1] × dims[d]` matrix.
    pub fn multiplication_matrix(&self, w: &[BigInt], d: usize) -> IMatrix {
        let (rows, cols) = (self.dim(d + 1), self.dim(d));
        let mut m = vec![vec![BigInt::zero(); cols]; rows];
        if rows == 0 {
            return m;
        }
        for (k, wk) in w.iter().enumerate() {
            if wk.is_zero() {
                continue;
            }
            for (j, col) in self.tables[k][d].cols.iter().enumerate() {
                for (i, a) in col {
                    m[*i][j] += wk * a;
                }
            }
        }
        m
    }

    /// `w·v` for `w` of degree one and `v` of degree `d`.
    pub fn mul_linear(&self, w: &[BigInt], v: &[BigInt], d: usize) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.dim(d + 1)];
        if out.is_empty() {
            return out;
        }
        for (k, wk) in w.iter().enumerate() {
            if !wk.is_zero() {
                self.tables[k][d].apply_big(wk, v, &mut out);
            }
        }
        out
    }

    fn mul_linear_small(&self, w: &[i128], v: &[i128], d: usize) -> Option<Vec<i128>> {
        let mut out = vec![0i128; self.dim(d + 1)];
        if out.is_empty() {
            return Some(out);
        }
        for (k, &wk) in w.iter().enumerate() {
            if wk != 0 {
                self.tables[k][d].apply_small(wk, v, &mut out)?;
            }
        }
        Some(out)
    }

    /// `w^m` for `m ≥ 1`, as a degree-`m` coordinate vector.
    pub fn power(&self, w: &[BigInt], m: usize) -> Vec<BigInt> {
        let mut v = w.to_vec();
        for d in 1..m {
            v = self.mul_linear(w, &v, d);
        }
        v
    }

    /// Least `m ≥ 1` with `w^m = 0`, or `None` when it exceeds `cap`.
    pub fn nilpotence_order_capped(&self, w: &[BigInt], cap: usize) -> Result<Option<usize>> {
        let small: Option<Vec<i128>> = w.iter().map(ToPrimitive::to_i128).collect();
        if let Some(ws) = small {
            if let Some(r) = self.order_small(&ws, cap) {
                return r;
            }
        }
        self.order_big(w, cap)
    }

    pub fn nilpotence_order(&self, w: &[BigInt]) -> Result<usize> {
        Ok(self.nilpotence_order_capped(w, usize::MAX)?.expect("uncapped"))
    }

    /// `None` signals overflow.
    fn order_small(&self, w: &[i128], cap: usize) -> Option<Result<Option<usize>>> {
        let mut v = w.to_vec();
        let mut m = 1;
        loop {
            if v.iter().all(|&a| a == 0) {
                return Some(Ok((m <= cap).then_some(m)));
            }
            if m >= cap {
                return Some(Ok(None));
            }
            if m >= self.top_degree() {
                return Some(Ok((m < cap).then_some(m + 1)));
            }
            v = self.mul_linear_small(w, &v, m)?;
            m += 1;
        }
    }

    fn order_big(&self, w: &[BigInt], cap: usize) -> Result<Option<usize>> {
        let mut v = w.to_vec();
        let mut m = 1;
        loop {
            if v.iter().all(Zero::is_zero) {
                return Ok((m <= cap).then_some(m));
            }
            if m >= cap {
                return Ok(None);
            }
            if m >= self.top_degree() {
                return Ok((m < cap).then_some(m + 1));
            }
            v = self.mul_linear(w, &v, m);
            m += 1;
        }
    }
}
