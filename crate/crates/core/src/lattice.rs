//! Exact integer linear algebra: determinants, echelon forms, Smith normal
//! form and unimodular completion.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type IMatrix = Vec<Vec<BigInt>>;

pub fn to_big(m: &[Vec<i64>]) -> IMatrix {
    m.iter().map(|r| r.iter().map(|&a| BigInt::from(a)).collect()).collect()
}

pub fn to_small(m: &IMatrix) -> Option<Vec<Vec<i64>>> {
    m.iter().map(|r| r.iter().map(|a| a.to_i64()).collect()).collect()
}

pub fn identity(n: usize) -> IMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

pub fn mat_mul(a: &IMatrix, b: &IMatrix) -> IMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(BigInt::zero(), |acc, k| acc + &row[k] * &b[k][j]))
                .collect()
        })
        .collect()
}

pub fn transpose(a: &IMatrix) -> IMatrix {
    let cols = a.first().map_or(0, Vec::len);
    (0..cols).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn determinant(m: &IMatrix) -> Result<BigInt> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(Error::ShapeMismatch("determinant of a non-square matrix".into()));
    }
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return Ok(BigInt::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    Ok(sign * &a[n - 1][n - 1])
}

/// Rank over ℚ.
pub fn rank(rows: &IMatrix) -> usize {
    let mut h = HermiteEchelon::new(rows.first().map_or(0, Vec::len));
    for r in rows {
        h.insert(r.clone());
    }
    h.rank()
}

/// Inverse of a square integer matrix, failing unless the determinant is ±1.
pub fn unimodular_inverse(m: &IMatrix) -> Result<IMatrix> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(Error::ShapeMismatch("inverse of a non-square matrix".into()));
    }
    if !determinant(m)?.abs().is_one() {
        return Err(Error::NotUnimodular);
    }
    // Gauss-Jordan over ℚ; the result is integral by the determinant check.
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            r.iter()
                .cloned()
                .map(BigRational::from_integer)
                .chain((0..n).map(|j| BigRational::from_integer(BigInt::from((i == j) as i64))))
                .collect()
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !a[i][c].is_zero()).ok_or(Error::NotUnimodular)?;
        a.swap(p, c);
        let inv = a[c][c].recip();
        for v in a[c].iter_mut() {
            *v *= &inv;
        }
        for i in 0..n {
            if i != c && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                let pivot = a[c].clone();
                for (x, p) in a[i].iter_mut().zip(&pivot) {
                    *x -= p * &f;
                }
            }
        }
    }
    Ok(a.into_iter().map(|r| r[n..].iter().map(|v| v.to_integer()).collect()).collect())
}

/// Row-style Hermite echelon form built incrementally. Rows are kept sorted
/// by pivot column with positive pivots.
#[derive(Debug, Clone)]
pub struct HermiteEchelon {
    width: usize,
    rows: Vec<(usize, Vec<BigInt>)>,
}

fn leading(v: &[BigInt]) -> Option<usize> {
    v.iter().position(|a| !a.is_zero())
}

impl HermiteEchelon {
    pub fn new(width: usize) -> Self {
        HermiteEchelon { width, rows: Vec::new() }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// `(pivot column, row)` pairs in pivot order.
    pub fn rows(&self) -> &[(usize, Vec<BigInt>)] {
        &self.rows
    }

    pub fn pivots(&self) -> impl Iterator<Item = (usize, &BigInt)> {
        self.rows.iter().map(|(c, r)| (*c, &r[*c]))
    }

    /// Adds `v` to the generated lattice; returns whether the rank grew.
    pub fn insert(&mut self, mut v: Vec<BigInt>) -> bool {
        assert_eq!(v.len(), self.width, "row width mismatch");
        loop {
            let Some(c) = leading(&v) else { return false };
            match self.rows.binary_search_by_key(&c, |(p, _)| *p) {
                Ok(idx) => {
                    let row = &mut self.rows[idx].1;
                    let (a, b) = (row[c].clone(), v[c].clone());
                    if (&b % &a).is_zero() {
                        let q = &b / &a;
                        for (x, y) in v.iter_mut().zip(row.iter()) {
                            *x -= &q * y;
                        }
                        continue;
                    }
                    let e = a.extended_gcd(&b);
                    let (g, s, t) = (e.gcd, e.x, e.y);
                    let (ag, bg) = (&a / &g, &b / &g);
                    let new_row: Vec<BigInt> = row.iter().zip(&v).map(|(r, x)| &s * r + &t * x).collect();
                    let new_v: Vec<BigInt> = row.iter().zip(&v).map(|(r, x)| &ag * x - &bg * r).collect();
                    *row = new_row;
                    if row[c].is_negative() {
                        row.iter_mut().for_each(|x| *x = -x.clone());
                    }
                    v = new_v;
                }
                Err(idx) => {
                    if v[c].is_negative() {
                        v.iter_mut().for_each(|x| *x = -x.clone());
                    }
                    self.rows.insert(idx, (c, v));
                    return true;
                }
            }
        }
    }

    /// Whether `v` lies in the generated lattice.
    pub fn contains(&self, v: &[BigInt]) -> bool {
        let mut v = v.to_vec();
        for (c, row) in &self.rows {
            if v[..*c].iter().any(|a| !a.is_zero()) {
                return false;
            }
            let (q, r) = v[*c].div_rem(&row[*c]);
            if !r.is_zero() {
                return false;
            }
            for (x, y) in v.iter_mut().zip(row) {
                *x -= &q * y;
            }
        }
        v.iter().all(Zero::is_zero)
    }

    /// Reduces entries above each pivot into `[0, pivot)`.
    pub fn reduce(&mut self) {
        for k in (0..self.rows.len()).rev() {
            let (c, piv_row) = self.rows[k].clone();
            for i in 0..k {
                let q = self.rows[i].1[c].div_floor(&piv_row[c]);
                if !q.is_zero() {
                    for (x, y) in self.rows[i].1.iter_mut().zip(&piv_row) {
                        *x -= &q * y;
                    }
                }
            }
        }
    }

    /// Index of the lattice in `ℤ^width`, or `None` when the rank is short.
    pub fn index(&self) -> Option<BigInt> {
        (self.rows.len() == self.width).then(|| self.rows.iter().map(|(c, r)| r[*c].clone()).product())
    }
}

/// Smith normal form `U·A·V = D` with `U`, `V` unimodular.
#[derive(Debug, Clone)]
pub struct Smith {
    /// Nonzero diagonal entries `d₁ | d₂ | …`, all positive.
    pub divisors: Vec<BigInt>,
    pub u: IMatrix,
    pub v: IMatrix,
}

pub fn smith_normal_form(a: &IMatrix, cols: usize) -> Smith {
    let m = a.len();
    let n = cols;
    let mut d = a.clone();
    let mut u = identity(m);
    let mut v = identity(n);
    let mut divisors = Vec::new();
    let mut t = 0;
    while t < m.min(n) {
        // Pivot: nonzero entry of least absolute value in the trailing block.
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if !d[i][j].is_zero() && best.is_none_or(|(bi, bj)| d[i][j].abs() < d[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        d.swap(t, pi);
        u.swap(t, pi);
        for row in d.iter_mut() {
            row.swap(t, pj);
        }
        for row in v.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut changed = false;
            // Clear column t below the pivot.
            for i in t + 1..m {
                if d[i][t].is_zero() {
                    continue;
                }
                let q = d[i][t].div_floor(&d[t][t]);
                row_axpy(&mut d, i, t, &q);
                row_axpy(&mut u, i, t, &q);
                if !d[i][t].is_zero() {
                    d.swap(t, i);
                    u.swap(t, i);
                    changed = true;
                }
            }
            // Clear row t right of the pivot.
            for j in t + 1..n {
                if d[t][j].is_zero() {
                    continue;
                }
                let q = d[t][j].div_floor(&d[t][t]);
                col_axpy(&mut d, j, t, &q);
                col_axpy(&mut v, j, t, &q);
                if !d[t][j].is_zero() {
                    swap_cols(&mut d, t, j);
                    swap_cols(&mut v, t, j);
                    changed = true;
                }
            }
            if changed {
                continue;
            }
            // Divisibility: fold any non-multiple into row t.
            let bad = (t + 1..m).find_map(|i| {
                (t + 1..n).find(|&j| !(&d[i][j] % &d[t][t]).is_zero()).map(|_| i)
            });
            match bad {
                Some(i) => {
                    row_axpy(&mut d, t, i, &-BigInt::one());
                    row_axpy(&mut u, t, i, &-BigInt::one());
                }
                None => break,
            }
        }
        if d[t][t].is_negative() {
            d[t].iter_mut().for_each(|x| *x = -x.clone());
            u[t].iter_mut().for_each(|x| *x = -x.clone());
        }
        divisors.push(d[t][t].clone());
        t += 1;
    }
    Smith { divisors, u, v }
}

/// `row_i -= q·row_k`.
fn row_axpy(a: &mut IMatrix, i: usize, k: usize, q: &BigInt) {
    let src = a[k].clone();
    for (x, y) in a[i].iter_mut().zip(&src) {
        *x -= q * y;
    }
}

/// `col_j -= q·col_k`.
fn col_axpy(a: &mut IMatrix, j: usize, k: usize, q: &BigInt) {
    for row in a.iter_mut() {
        let y = row[k].clone();
        row[j] -= q * y;
    }
}

fn swap_cols(a: &mut IMatrix, i: usize, j: usize) {
    for row in a.iter_mut() {
        row.swap(i, j);
    }
}

/// For primitive `g`, a unimodular `W` with `g·W = e₁` together with
/// `W⁻¹`, whose first row is `g`.
pub fn unimodular_completion(g: &[i64]) -> Result<(IMatrix, IMatrix)> {
    let n = g.len();
    let content = g.iter().fold(0i64, |acc, &a| acc.gcd(&a));
    if content != 1 {
        return Err(Error::NonPrimitive(format!("{g:?}")));
    }
    let mut row: Vec<BigInt> = g.iter().map(|&a| BigInt::from(a)).collect();
    let mut w = identity(n);
    // Column operations fold every entry into position 0 by extended gcd.
    for j in 1..n {
        if row[j].is_zero() {
            continue;
        }
        let (a, b) = (row[0].clone(), row[j].clone());
        let e = a.extended_gcd(&b);
        let (gg, s, t) = (e.gcd, e.x, e.y);
        let (ag, bg) = (&a / &gg, &b / &gg);
        // [c0 cj] ← [c0 cj]·[[s, −b/g], [t, a/g]], determinant 1.
        for r in w.iter_mut() {
            let (c0, cj) = (r[0].clone(), r[j].clone());
            r[0] = &s * &c0 + &t * &cj;
            r[j] = &ag * &cj - &bg * &c0;
        }
        row[0] = gg;
        row[j] = BigInt::zero();
    }
    if row[0].is_negative() {
        for r in w.iter_mut() {
            r[0] = -r[0].clone();
        }
    }
    let winv = unimodular_inverse(&w)?;
    Ok((w, winv))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(m: &[&[i64]]) -> IMatrix {
        to_big(&m.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    #[test]
    fn determinants() {
        assert_eq!(determinant(&big(&[&[1, 2], &[3, 4]])).unwrap(), BigInt::from(-2));
        assert_eq!(determinant(&big(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 5]])).unwrap(), BigInt::from(-5));
        assert_eq!(determinant(&big(&[&[1, 2], &[2, 4]])).unwrap(), BigInt::zero());
        assert_eq!(determinant(&vec![]).unwrap(), BigInt::one());
    }

    #[test]
    fn inverse_of_unimodular() {
        let a = big(&[&[1, 2], &[0, -1]]);
        let inv = unimodular_inverse(&a).unwrap();
        assert_eq!(mat_mul(&a, &inv), identity(2));
        assert_eq!(unimodular_inverse(&big(&[&[2, 0], &[0, 1]])).unwrap_err(), Error::NotUnimodular);
    }

    #[test]
    fn hermite_index_and_membership() {
        let mut h = HermiteEchelon::new(2);
        assert!(h.insert(big(&[&[2, 0]])[0].clone()));
        assert!(h.insert(big(&[&[0, 2]])[0].clone()));
        assert!(!h.insert(big(&[&[2, 2]])[0].clone()));
        assert_eq!(h.index(), Some(BigInt::from(4)));
        assert!(h.contains(&big(&[&[4, -2]])[0]));
        assert!(!h.contains(&big(&[&[1, 0]])[0]));
        assert!(h.insert(big(&[&[1, 1]])[0].clone()) || h.index() == Some(BigInt::from(2)));
        assert_eq!(h.index(), Some(BigInt::from(2)));
        assert_eq!(rank(&big(&[&[1, 2], &[2, 4], &[0, 1]])), 2);
    }

    #[test]
    fn smith_examples() {
        let a = big(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let s = smith_normal_form(&a, 3);
        assert_eq!(s.divisors, vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
        let d = mat_mul(&mat_mul(&s.u, &a), &s.v);
        for (i, row) in d.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                let want = if i == j { s.divisors[i].clone() } else { BigInt::zero() };
                assert_eq!(*x, want);
            }
        }
    }

    #[test]
    fn completion_first_row() {
        let (w, winv) = unimodular_completion(&[6, 10, 15]).unwrap();
        assert_eq!(winv[0], big(&[&[6, 10, 15]])[0]);
        assert_eq!(mat_mul(&w, &winv), identity(3));
        assert!(unimodular_completion(&[2, 4]).is_err());
        let (_, winv) = unimodular_completion(&[-1, 0]).unwrap();
        assert_eq!(winv[0], big(&[&[-1, 0]])[0]);
    }

    proptest! {
        #[test]
        fn smith_is_a_factorization(entries in prop::collection::vec(-6i64..7, 12)) {
            let a: IMatrix = entries.chunks(4).map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
            let s = smith_normal_form(&a, 4);
            prop_assert!(determinant(&s.u).unwrap().abs().is_one());
            prop_assert!(determinant(&s.v).unwrap().abs().is_one());
            let d = mat_mul(&mat_mul(&s.u, &a), &s.v);
            for (i, row) in d.iter().enumerate() {
                for (j, x) in row.iter().enumerate() {
                    let want = if i == j && i < s.divisors.len() { s.divisors[i].clone() } else { BigInt::zero() };
                    prop_assert_eq!(x, &want);
                }
            }
            for w in s.divisors.windows(2) {
                prop_assert!((&w[1] % &w[0]).is_zero());
            }
            prop_assert_eq!(s.divisors.len(), rank(&a));
        }

        #[test]
        fn completion_of_random_primitive(g in prop::collection::vec(-9i64..10, 1..5)) {
            let content = g.iter().fold(0i64, |acc, &a| acc.gcd(&a));
            prop_assume!(content == 1);
            let (w, winv) = unimodular_completion(&g).unwrap();
            prop_assert_eq!(&winv[0], &to_big(std::slice::from_ref(&g))[0]);
            prop_assert_eq!(mat_mul(&w, &winv), identity(g.len()));
        }

        #[test]
        fn echelon_membership(vs in prop::collection::vec(prop::collection::vec(-5i64..6, 3), 1..5),
                              coeffs in prop::collection::vec(-3i64..4, 5)) {
            let mut h = HermiteEchelon::new(3);
            for v in &vs {
                h.insert(to_big(std::slice::from_ref(v))[0].clone());
            }
            let combo: Vec<BigInt> = (0..3)
                .map(|j| vs.iter().zip(&coeffs).map(|(v, c)| BigInt::from(v[j] * c)).sum())
                .collect();
            prop_assert!(h.contains(&combo));
            let mut r = h.clone();
            r.reduce();
            prop_assert!(r.contains(&combo));
        }
    }
}
