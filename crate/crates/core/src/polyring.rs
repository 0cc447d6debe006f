//! Sparse multivariate polynomials with exact coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};

/// Exact coefficient domain. Values carry whatever context they need (the
/// modulus of a prime field), so constants are built from an existing value.
pub trait Coefficient: Clone + PartialEq + Eq + fmt::Debug + fmt::Display {
    fn vanishes(&self) -> bool;
    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negate(&self) -> Self;
    /// Integer `v` in the same domain as `self`.
    fn lift_int(&self, v: &BigInt) -> Self;
    /// Multiplicative inverse, when it exists in the domain.
    fn inverse(&self) -> Option<Self>;

    fn one_like(&self) -> Self {
        self.lift_int(&BigInt::one())
    }

    fn zero_like(&self) -> Self {
        self.lift_int(&BigInt::zero())
    }

    /// Used only for rendering signs.
    fn is_negative(&self) -> bool {
        false
    }

    fn is_unity(&self) -> bool {
        *self == self.one_like()
    }
}

impl Coefficient for BigInt {
    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negate(&self) -> Self {
        -self
    }
    fn lift_int(&self, v: &BigInt) -> Self {
        v.clone()
    }
    fn inverse(&self) -> Option<Self> {
        One::is_one(&self.abs()).then(|| self.clone())
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
}

impl Coefficient for BigRational {
    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negate(&self) -> Self {
        -self
    }
    fn lift_int(&self, v: &BigInt) -> Self {
        BigRational::from_integer(v.clone())
    }
    fn inverse(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
}

/// Element of the prime field `𝔽_p`, stored as a residue in `0..p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u64,
    modulus: u64,
}

impl Fp {
    /// `p` must be prime and below 2³².
    pub fn new(value: i64, modulus: u64) -> Self {
        let m = modulus as i64;
        Fp { value: value.rem_euclid(m) as u64, modulus }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    fn pow(&self, mut e: u64) -> Fp {
        let (mut base, mut acc) = (self.value, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % self.modulus;
            }
            base = base * base % self.modulus;
            e >>= 1;
        }
        Fp { value: acc, modulus: self.modulus }
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Coefficient for Fp {
    fn vanishes(&self) -> bool {
        self.value == 0
    }
    fn plus(&self, rhs: &Self) -> Self {
        Fp { value: (self.value + rhs.value) % self.modulus, modulus: self.modulus }
    }
    fn minus(&self, rhs: &Self) -> Self {
        Fp { value: (self.value + self.modulus - rhs.value) % self.modulus, modulus: self.modulus }
    }
    fn times(&self, rhs: &Self) -> Self {
        Fp { value: self.value * rhs.value % self.modulus, modulus: self.modulus }
    }
    fn negate(&self) -> Self {
        Fp { value: (self.modulus - self.value) % self.modulus, modulus: self.modulus }
    }
    fn lift_int(&self, v: &BigInt) -> Self {
        let r = v.mod_floor(&BigInt::from(self.modulus));
        Fp { value: r.to_u64().expect("residue fits"), modulus: self.modulus }
    }
    fn inverse(&self) -> Option<Self> {
        (self.value != 0).then(|| self.pow(self.modulus - 2))
    }
}

/// Exponent vector over a fixed number of variables.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    /// `x_i`, 1-based.
    pub fn variable(i: usize, nvars: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i - 1] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Exponent of `x_i`, 1-based.
    pub fn exponent(&self, i: usize) -> u32 {
        self.0[i - 1]
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect())
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Indices (1-based) of variables that occur.
    pub fn support(&self) -> Vec<usize> {
        self.0.iter().enumerate().filter(|(_, &a)| a > 0).map(|(i, _)| i + 1).collect()
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let factors: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &a)| a > 0)
            .map(|(i, &a)| if a == 1 { format!("x{}", i + 1) } else { format!("x{}^{a}", i + 1) })
            .collect();
        if factors.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&factors.join("*"))
        }
    }
}

/// Both orders have `x₁ < x₂ < … < xₙ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TermOrder {
    /// Compare the exponent of `xₙ` first, then `xₙ₋₁`, and so on.
    Lex,
    /// Total degree first; ties go to the monomial with the smaller exponent
    /// at the lowest-index differing variable.
    GradedRevLex,
}

impl TermOrder {
    /// Key whose lexicographic order is the term order.
    pub fn key(&self, m: &Monomial) -> Vec<i64> {
        match self {
            TermOrder::Lex => m.0.iter().rev().map(|&a| a as i64).collect(),
            TermOrder::GradedRevLex => std::iter::once(m.degree() as i64)
                .chain(m.0.iter().map(|&a| -(a as i64)))
                .collect(),
        }
    }

    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Result<Ordering> {
        if a.nvars() != b.nvars() {
            return Err(Error::AmbientMismatch(a.nvars(), b.nvars()));
        }
        Ok(self.key(a).cmp(&self.key(b)))
    }

    pub fn name(&self) -> &'static str {
        match self {
            TermOrder::Lex => "lex",
            TermOrder::GradedRevLex => "grevlex",
        }
    }
}

/// Finite map from monomials to nonzero coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly<C> {
    nvars: usize,
    terms: BTreeMap<Monomial, C>,
}

pub type ZPoly = Poly<BigInt>;

impl<C: Coefficient> Poly<C> {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn monomial(m: Monomial, c: C) -> Self {
        let mut p = Poly::zero(m.nvars());
        p.add_term(m, c);
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut p = Poly::zero(nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> Option<&C> {
        self.terms.get(m)
    }

    /// Adds `c·m` in place, dropping the term if it cancels.
    pub fn add_term(&mut self, m: Monomial, c: C) {
        debug_assert_eq!(m.nvars(), self.nvars);
        if c.vanishes() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(old) => {
                let s = old.plus(&c);
                if s.vanishes() {
                    self.terms.remove(&m);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    /// Any coefficient, used as a template for constants.
    pub fn sample_coefficient(&self) -> Option<&C> {
        self.terms.values().next()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.negate());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (m.clone(), c.negate())).collect() }
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Poly::zero(self.nvars);
        for (m, a) in &self.terms {
            out.add_term(m.clone(), a.times(c));
        }
        out
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &C) -> Self {
        let mut out = Poly::zero(self.nvars);
        for (t, a) in &self.terms {
            out.add_term(t.mul(m), a.times(c));
        }
        out
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Poly::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1.times(c2));
            }
        }
        out
    }

    /// `self^e` for `e ≥ 1`; `e = 0` needs a unit and is rejected.
    pub fn pow(&self, e: u32) -> Self {
        assert!(e >= 1, "pow needs a positive exponent");
        let mut acc = self.clone();
        for _ in 1..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Largest total degree, or `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Part of total degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Self {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().filter(|(m, _)| m.degree() == d).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// Order-maximal monomial with its coefficient.
    pub fn leading_term(&self, order: TermOrder) -> Option<(&Monomial, &C)> {
        self.terms.iter().max_by(|a, b| order.key(a.0).cmp(&order.key(b.0)))
    }

    pub fn leading_monomial(&self, order: TermOrder) -> Option<&Monomial> {
        self.leading_term(order).map(|t| t.0)
    }

    /// Replace `x_i` by `images[i-1]`; all images share one ambient ring.
    pub fn substitute(&self, images: &[Poly<C>]) -> Result<Self> {
        if images.len() != self.nvars {
            return Err(Error::ShapeMismatch(format!("{} images for {} variables", images.len(), self.nvars)));
        }
        let target = images.first().map_or(0, |p| p.nvars);
        if images.iter().any(|p| p.nvars != target) {
            return Err(Error::ShapeMismatch("images live in different rings".into()));
        }
        // Powers of each image, cached on demand.
        let mut powers: Vec<Vec<Poly<C>>> = vec![Vec::new(); self.nvars];
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut term = Poly::monomial(Monomial::one(target), c.clone());
            for (i, &a) in m.0.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                while powers[i].len() < a as usize {
                    let next = match powers[i].last() {
                        Some(p) => p.mul(&images[i]),
                        None => images[i].clone(),
                    };
                    powers[i].push(next);
                }
                term = term.mul(&powers[i][a as usize - 1]);
            }
            out = out.add(&term);
        }
        Ok(out)
    }

    pub fn map_coefficients<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    /// Monomials in descending lex order with `xₙ` most significant.
    fn display_order(&self) -> Vec<(&Monomial, &C)> {
        let mut ts: Vec<_> = self.terms.iter().collect();
        ts.sort_by_key(|t| std::cmp::Reverse(TermOrder::Lex.key(t.0)));
        ts
    }

    /// `[{exponents, coefficient}]` with decimal-string coefficients.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.display_order()
                .into_iter()
                .map(|(m, c)| json!({"exponents": m.exponents(), "coefficient": c.to_string()}))
                .collect(),
        )
    }
}

impl<C: Coefficient> Poly<C>
where
    C: From<BigInt>,
{
    pub fn constant(nvars: usize, c: C) -> Self {
        Poly::monomial(Monomial::one(nvars), c)
    }
}

impl ZPoly {
    /// `x_i`, 1-based.
    pub fn var(i: usize, nvars: usize) -> Self {
        Poly::monomial(Monomial::variable(i, nvars), BigInt::one())
    }

    pub fn one(nvars: usize) -> Self {
        Poly::monomial(Monomial::one(nvars), BigInt::one())
    }

    pub fn to_rational(&self) -> Poly<BigRational> {
        self.map_coefficients(|c| BigRational::from_integer(c.clone()))
    }

    pub fn to_fp(&self, p: u64) -> Poly<Fp> {
        let t = Fp::new(0, p);
        self.map_coefficients(|c| t.lift_int(c))
    }

    /// `x_i ↦ Σ_j M[i][j]·y_j`; `M` is `n × m`, the result lives in `m`
    /// variables.
    pub fn substitute_linear_rect(&self, matrix: &[Vec<i64>], target_nvars: usize) -> Result<Self> {
        if matrix.len() != self.nvars || matrix.iter().any(|r| r.len() != target_nvars) {
            return Err(Error::ShapeMismatch(format!(
                "substitution matrix is not {}×{}",
                self.nvars, target_nvars
            )));
        }
        let images: Vec<ZPoly> = matrix.iter().map(|row| LinearForm::new(row.clone()).to_poly()).collect();
        if images.is_empty() {
            return Ok(self.clone());
        }
        self.substitute(&images)
    }

    /// `x_i ↦ Σ_j M[i][j]·x_j` for square `M`.
    pub fn substitute_linear(&self, matrix: &[Vec<i64>]) -> Result<Self> {
        self.substitute_linear_rect(matrix, self.nvars)
    }
}

impl<C: Coefficient> fmt::Display for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.display_order().into_iter().enumerate() {
            let neg = c.is_negative();
            let mag = if neg { c.negate() } else { c.clone() };
            match (idx, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let is_const = m.degree() == 0;
            if is_const {
                write!(f, "{mag}")?;
            } else if mag.is_unity() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

/// Integer linear form `Σ aᵢxᵢ`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinearForm(Vec<i64>);

impl LinearForm {
    pub fn new(coeffs: Vec<i64>) -> Self {
        LinearForm(coeffs)
    }

    /// `x_i`, 1-based.
    pub fn variable(i: usize, nvars: usize) -> Self {
        let mut c = vec![0; nvars];
        c[i - 1] = 1;
        LinearForm(c)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }

    pub fn content(&self) -> i64 {
        self.0.iter().fold(0i64, |g, &a| g.gcd(&a))
    }

    pub fn is_primitive(&self) -> bool {
        self.content() == 1
    }

    /// Representative up to sign with first nonzero coefficient positive.
    pub fn canonical_sign(&self) -> LinearForm {
        match self.0.iter().find(|&&a| a != 0) {
            Some(&a) if a < 0 => LinearForm(self.0.iter().map(|a| -a).collect()),
            _ => self.clone(),
        }
    }

    /// Largest absolute coefficient.
    pub fn norm(&self) -> i64 {
        self.0.iter().map(|a| a.abs()).max().unwrap_or(0)
    }

    pub fn to_poly(&self) -> ZPoly {
        Poly::from_terms(
            self.0.len(),
            self.0
                .iter()
                .enumerate()
                .map(|(i, &a)| (Monomial::variable(i + 1, self.0.len()), BigInt::from(a))),
        )
    }
}

/// Terms in increasing variable index: `x1 - x2 + 2*x4`.
impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &a) in self.0.iter().enumerate().filter(|(_, a)| **a != 0) {
            let sign = match (first, a < 0) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            let mag = a.unsigned_abs();
            if mag == 1 {
                write!(f, "{sign}x{}", i + 1)?;
            } else {
                write!(f, "{sign}{mag}*x{}", i + 1)?;
            }
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

fn check_range(i: usize, j: usize, n: usize) -> Result<()> {
    if i == 0 || j > n || i > j + 1 {
        return Err(Error::BadRange { start: i, end: j, nvars: n });
    }
    Ok(())
}

/// `e_m(x_i, …, x_j)` in `n` variables; `i = j + 1` is the empty range.
pub fn elementary(m: u32, i: usize, j: usize, n: usize) -> Result<ZPoly> {
    check_range(i, j, n)?;
    let vars: Vec<usize> = (i..=j).collect();
    let mut out = Poly::zero(n);
    let mut exps = vec![0u32; n];
    fn go(vars: &[usize], left: u32, exps: &mut Vec<u32>, out: &mut ZPoly) {
        if left == 0 {
            out.add_term(Monomial(exps.clone()), BigInt::one());
            return;
        }
        for (k, &v) in vars.iter().enumerate() {
            exps[v - 1] += 1;
            go(&vars[k + 1..], left - 1, exps, out);
            exps[v - 1] -= 1;
        }
    }
    go(&vars, m, &mut exps, &mut out);
    Ok(out)
}

/// `h_m(x_i, …, x_j)` in `n` variables; `i = j + 1` is the empty range.
pub fn complete(m: u32, i: usize, j: usize, n: usize) -> Result<ZPoly> {
    check_range(i, j, n)?;
    let vars: Vec<usize> = (i..=j).collect();
    let mut out = Poly::zero(n);
    let mut exps = vec![0u32; n];
    fn go(vars: &[usize], left: u32, exps: &mut Vec<u32>, out: &mut ZPoly) {
        if left == 0 {
            out.add_term(Monomial(exps.clone()), BigInt::one());
            return;
        }
        for (k, &v) in vars.iter().enumerate() {
            exps[v - 1] += 1;
            go(&vars[k..], left - 1, exps, out);
            exps[v - 1] -= 1;
        }
    }
    go(&vars, m, &mut exps, &mut out);
    Ok(out)
}

/// Matrix of a permutation of variables: `x_i ↦ x_{σ(i)}` with `σ` 1-based.
pub fn permutation_matrix(sigma: &[usize]) -> Vec<Vec<i64>> {
    let n = sigma.len();
    (0..n)
        .map(|i| {
            let mut row = vec![0; n];
            row[sigma[i] - 1] = 1;
            row
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn x(i: usize, n: usize) -> ZPoly {
        ZPoly::var(i, n)
    }

    #[test]
    fn leading_monomials() {
        let f = complete(2, 1, 2, 2).unwrap();
        assert_eq!(f.to_string(), "x2^2 + x1*x2 + x1^2");
        for ord in [TermOrder::Lex, TermOrder::GradedRevLex] {
            assert_eq!(f.leading_monomial(ord).unwrap(), &Monomial::new(vec![0, 2]));
            assert_eq!(
                ord.compare(&Monomial::one(2), &Monomial::variable(1, 2)).unwrap(),
                Ordering::Less
            );
        }
        assert!(TermOrder::Lex.compare(&Monomial::one(2), &Monomial::one(3)).is_err());
    }

    #[test]
    fn orders_differ_where_expected() {
        // x1^3 vs x2 in two variables.
        let a = Monomial::new(vec![3, 0]);
        let b = Monomial::new(vec![0, 1]);
        assert_eq!(TermOrder::Lex.compare(&a, &b).unwrap(), Ordering::Less);
        assert_eq!(TermOrder::GradedRevLex.compare(&a, &b).unwrap(), Ordering::Greater);
        // x1*x3 vs x2^2: grevlex penalizes the x1 exponent.
        let c = Monomial::new(vec![1, 0, 1]);
        let d = Monomial::new(vec![0, 2, 0]);
        assert_eq!(TermOrder::GradedRevLex.compare(&c, &d).unwrap(), Ordering::Less);
    }

    #[test]
    fn symmetric_constructors() {
        assert_eq!(elementary(1, 1, 3, 3).unwrap(), complete(1, 1, 3, 3).unwrap());
        assert!(elementary(4, 1, 3, 3).unwrap().is_zero());
        assert_eq!(elementary(0, 2, 3, 3).unwrap(), ZPoly::one(3));
        assert_eq!(complete(0, 3, 2, 3).unwrap(), ZPoly::one(3));
        assert!(complete(2, 3, 2, 3).unwrap().is_zero());
        assert_eq!(complete(3, 1, 2, 2).unwrap().num_terms(), 4);
        assert!(elementary(1, 0, 2, 3).is_err());
        assert!(elementary(1, 1, 4, 3).is_err());
    }

    #[test]
    fn linear_substitution() {
        let f = x(1, 2).pow(2);
        let omega = vec![vec![1, 2], vec![0, -1]];
        assert_eq!(f.substitute_linear(&omega).unwrap().to_string(), "4*x2^2 + 4*x1*x2 + x1^2");
        let id = vec![vec![1, 0], vec![0, 1]];
        let h = complete(2, 1, 2, 2).unwrap();
        assert_eq!(h.substitute_linear(&id).unwrap(), h);
        assert_eq!(h.substitute_linear(&permutation_matrix(&[2, 1])).unwrap(), h);
        assert!(h.substitute_linear(&[vec![1, 0]]).is_err());
    }

    #[test]
    fn display_and_json() {
        let f = x(1, 3).pow(2).mul(&x(2, 3)).add(&x(3, 3).scale(&BigInt::from(3)));
        assert_eq!(f.to_string(), "3*x3 + x1^2*x2");
        let g = ZPoly::one(2).sub(&x(1, 2));
        assert_eq!(g.to_string(), "-x1 + 1");
        assert_eq!(
            x(2, 2).scale(&BigInt::from(-5)).to_json().to_string(),
            r#"[{"coefficient":"-5","exponents":[0,1]}]"#
        );
        assert_eq!(LinearForm::new(vec![1, 0, 2]).to_string(), "x1 + 2*x3");
        assert_eq!(LinearForm::new(vec![0, -1, 3]).to_string(), "-x2 + 3*x3");
        assert_eq!(LinearForm::new(vec![0, 0]).to_string(), "0");
    }

    #[test]
    fn linear_form_helpers() {
        let f = LinearForm::new(vec![0, -2, 4]);
        assert_eq!(f.content(), 2);
        assert!(!f.is_primitive());
        assert_eq!(f.canonical_sign(), LinearForm::new(vec![0, 2, -4]));
        assert_eq!(f.norm(), 4);
        assert!(LinearForm::new(vec![3, 5]).is_primitive());
    }

    #[test]
    fn prime_field_arithmetic() {
        let a = Fp::new(-1, 5);
        assert_eq!(a.value(), 4);
        assert_eq!(a.inverse().unwrap().value(), 4);
        assert_eq!(Fp::new(2, 3).inverse().unwrap().value(), 2);
        assert!(Fp::new(0, 7).inverse().is_none());
    }

    fn small_poly(n: usize) -> impl Strategy<Value = Vec<(Vec<u32>, i64)>> {
        prop::collection::vec((prop::collection::vec(0u32..3, n), -4i64..5), 0..5)
    }

    fn zpoly(n: usize, t: &[(Vec<u32>, i64)]) -> ZPoly {
        Poly::from_terms(n, t.iter().map(|(e, c)| (Monomial::new(e.clone()), BigInt::from(*c))))
    }

    fn check_axioms<C: Coefficient>(a: &Poly<C>, b: &Poly<C>, c: &Poly<C>) {
        assert_eq!(a.mul(b).mul(c), a.mul(&b.mul(c)));
        assert_eq!(a.mul(&b.add(c)), a.mul(b).add(&a.mul(c)));
        assert_eq!(a.add(b), b.add(a));
        assert_eq!(a.mul(b), b.mul(a));
        assert!(a.sub(a).is_zero());
    }

    proptest! {
        #[test]
        fn ring_axioms(a in small_poly(3), b in small_poly(3), c in small_poly(3)) {
            let (a, b, c) = (zpoly(3, &a), zpoly(3, &b), zpoly(3, &c));
            check_axioms(&a, &b, &c);
            check_axioms(&a.to_rational(), &b.to_rational(), &c.to_rational());
            check_axioms(&a.to_fp(5), &b.to_fp(5), &c.to_fp(5));
            let half = BigRational::new(BigInt::one(), BigInt::from(2));
            let q = a.to_rational().scale(&half);
            check_axioms(&q, &b.to_rational(), &c.to_rational());
        }

        #[test]
        fn complete_recurrence(m in 1u32..7, l in 1usize..6) {
            let n = 5;
            let lhs = complete(m, 1, l, n).unwrap();
            let rhs = x(l, n).mul(&complete(m - 1, 1, l, n).unwrap()).add(&complete(m, 1, l - 1, n).unwrap());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn order_is_multiplicative(a in prop::collection::vec(0u32..4, 3),
                                   b in prop::collection::vec(0u32..4, 3),
                                   c in prop::collection::vec(0u32..4, 3)) {
            let (a, b, c) = (Monomial::new(a), Monomial::new(b), Monomial::new(c));
            for ord in [TermOrder::Lex, TermOrder::GradedRevLex] {
                let before = ord.compare(&a, &b).unwrap();
                prop_assert_eq!(ord.compare(&a.mul(&c), &b.mul(&c)).unwrap(), before);
                prop_assert!(ord.compare(&Monomial::one(3), &c).unwrap() != Ordering::Greater);
            }
        }
    }

    #[test]
    fn generating_function_gives_elementary() {
        // ∏(1 + xᵢ t) with t as an extra last variable.
        for n in 1..=5 {
            let t = x(n + 1, n + 1);
            let one = ZPoly::one(n + 1);
            let prod = (1..=n).fold(one.clone(), |acc, i| acc.mul(&one.add(&x(i, n + 1).mul(&t))));
            for m in 0..=n as u32 {
                let extracted = Poly::from_terms(
                    n,
                    prod.terms()
                        .filter(|(mono, _)| mono.exponent(n + 1) == m)
                        .map(|(mono, c)| (Monomial::new(mono.exponents()[..n].to_vec()), c.clone())),
                );
                assert_eq!(extracted, elementary(m, 1, n, n).unwrap());
            }
        }
    }
}
