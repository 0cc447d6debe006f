//! Marked bases with monic leading terms over ℤ, normal forms, certification
//! and standard monomials.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::HermiteEchelon;
use crate::polyring::{Coefficient, Monomial, Poly, TermOrder, ZPoly};
use crate::rookcomb::QPolynomial;

/// How a basis earned its Gröbner status.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Certification {
    None,
    /// Monic, order-maximal, pairwise coprime leading terms.
    Coprime,
    /// Read off a degree-by-degree echelon form of the whole ideal.
    Derived,
}

/// Outcome of [`certify`]; failures are carried, not raised.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertifyReport {
    pub monic: bool,
    pub maximal_markings: bool,
    pub coprime: bool,
    pub reduced: bool,
    pub leading_terms: Vec<String>,
}

/// Polynomials with a designated leading monomial each.
#[derive(Debug, Clone)]
pub struct MarkedBasis {
    nvars: usize,
    order: TermOrder,
    elements: Vec<(ZPoly, Monomial)>,
    certification: Certification,
    reduced: bool,
}

impl MarkedBasis {
    /// Marks each nonzero generator at its order-leading monomial.
    pub fn new(nvars: usize, order: TermOrder, gens: Vec<ZPoly>) -> Result<Self> {
        let mut marked = Vec::new();
        for g in gens {
            if g.nvars() != nvars {
                return Err(Error::AmbientMismatch(g.nvars(), nvars));
            }
            if let Some(m) = g.leading_monomial(order).cloned() {
                marked.push((g, m));
            }
        }
        Ok(Self::with_marks(nvars, order, marked))
    }

    /// Uses the given markings as they are; certification decides whether
    /// they can drive reduction.
    pub fn with_marks(nvars: usize, order: TermOrder, elements: Vec<(ZPoly, Monomial)>) -> Self {
        let mut b = MarkedBasis { nvars, order, elements, certification: Certification::None, reduced: false };
        let report = certify(&b);
        b.reduced = report.reduced;
        if report.monic && report.maximal_markings && report.coprime {
            b.certification = Certification::Coprime;
        }
        b
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> TermOrder {
        self.order
    }

    pub fn elements(&self) -> &[(ZPoly, Monomial)] {
        &self.elements
    }

    pub fn polys(&self) -> impl Iterator<Item = &ZPoly> {
        self.elements.iter().map(|(p, _)| p)
    }

    pub fn leading_monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.elements.iter().map(|(_, m)| m)
    }

    pub fn certification(&self) -> Certification {
        self.certification
    }

    pub fn certified_groebner(&self) -> bool {
        self.certification != Certification::None
    }

    pub fn reduced(&self) -> bool {
        self.reduced
    }

    /// Exponent bounds `bᵢ` when the leading terms are exactly the pure
    /// powers `xᵢ^{bᵢ+1}`, one per variable.
    pub fn standard_box(&self) -> Option<Vec<u32>> {
        let mut bounds: Vec<Option<u32>> = vec![None; self.nvars];
        for m in self.leading_monomials() {
            let supp = m.support();
            if supp.len() != 1 || bounds[supp[0] - 1].is_some() {
                return None;
            }
            bounds[supp[0] - 1] = Some(m.exponent(supp[0]) - 1);
        }
        bounds.into_iter().collect()
    }

    /// Exponent of the pure power of each variable among the leading terms.
    fn pure_power_bounds(&self) -> Result<Vec<u32>> {
        (1..=self.nvars)
            .map(|i| {
                self.leading_monomials()
                    .filter(|m| m.support() == [i])
                    .map(|m| m.exponent(i))
                    .min()
                    .map(|e| e - 1)
                    .ok_or(Error::InfiniteRank)
            })
            .collect()
    }

    pub fn is_standard(&self, m: &Monomial) -> bool {
        !self.leading_monomials().any(|l| l.divides(m))
    }
}

/// Checks monic and maximal markings, pairwise coprimality and reducedness.
pub fn certify(b: &MarkedBasis) -> CertifyReport {
    let monic = b.elements.iter().all(|(p, m)| p.coefficient(m).is_some_and(|c| c.is_one()));
    let maximal_markings = b.elements.iter().all(|(p, m)| p.leading_monomial(b.order) == Some(m));
    let coprime = b
        .elements
        .iter()
        .enumerate()
        .all(|(i, (_, a))| b.elements[i + 1..].iter().all(|(_, c)| a.coprime(c)));
    let reduced = b.elements.iter().enumerate().all(|(i, (p, _))| {
        b.elements
            .iter()
            .enumerate()
            .all(|(j, (_, l))| i == j || p.terms().all(|(t, _)| !l.divides(t)))
    });
    CertifyReport {
        monic,
        maximal_markings,
        coprime,
        reduced,
        leading_terms: b.leading_monomials().map(Monomial::to_string).collect(),
    }
}

/// Division by a monic marked list, always reducing the order-largest
/// reducible term first.
fn reduce<C: Coefficient>(f: &Poly<C>, basis: &[(Poly<C>, Monomial)], order: TermOrder) -> Poly<C> {
    let mut queue: BTreeMap<Vec<i64>, (Monomial, C)> = BTreeMap::new();
    let push = |queue: &mut BTreeMap<Vec<i64>, (Monomial, C)>, m: Monomial, c: C| {
        let key = order.key(&m);
        match queue.get_mut(&key) {
            Some(entry) => {
                let s = entry.1.plus(&c);
                if s.vanishes() {
                    queue.remove(&key);
                } else {
                    entry.1 = s;
                }
            }
            None => {
                if !c.vanishes() {
                    queue.insert(key, (m, c));
                }
            }
        }
    };
    for (m, c) in f.terms() {
        push(&mut queue, m.clone(), c.clone());
    }
    let mut out = Poly::zero(f.nvars());
    while let Some((_, (m, c))) = queue.pop_last() {
        match basis.iter().find(|(_, l)| l.divides(&m)) {
            Some((g, l)) => {
                let q = l.quotient_of(&m);
                for (t, a) in g.terms() {
                    if t == l {
                        continue;
                    }
                    push(&mut queue, t.mul(&q), a.times(&c).negate());
                }
            }
            None => out.add_term(m, c),
        }
    }
    out
}

/// Unique standard-monomial representative of `f` modulo the basis.
pub fn normal_form(f: &ZPoly, b: &MarkedBasis) -> Result<ZPoly> {
    if !b.certified_groebner() {
        return Err(Error::NotCertified);
    }
    if f.nvars() != b.nvars {
        return Err(Error::AmbientMismatch(f.nvars(), b.nvars));
    }
    Ok(reduce(f, &b.elements, b.order))
}

/// Normal form over another coefficient domain; the integer basis is mapped
/// into the domain of `f`.
pub fn normal_form_over<C: Coefficient>(f: &Poly<C>, b: &MarkedBasis) -> Result<Poly<C>> {
    if !b.certified_groebner() {
        return Err(Error::NotCertified);
    }
    if f.nvars() != b.nvars {
        return Err(Error::AmbientMismatch(f.nvars(), b.nvars));
    }
    let Some(template) = f.sample_coefficient().cloned() else {
        return Ok(f.clone());
    };
    let mapped: Vec<(Poly<C>, Monomial)> = b
        .elements
        .iter()
        .map(|(p, m)| (p.map_coefficients(|c| template.lift_int(c)), m.clone()))
        .collect();
    Ok(reduce(f, &mapped, b.order))
}

/// Normal form by an explicit marked list over any coefficient domain; the
/// markings must be monic, order-maximal and pairwise coprime.
pub fn reduce_by<C: Coefficient>(f: &Poly<C>, basis: &[(Poly<C>, Monomial)], order: TermOrder) -> Result<Poly<C>> {
    for (i, (g, m)) in basis.iter().enumerate() {
        let monic = g.coefficient(m).is_some_and(Coefficient::is_unity);
        if !monic || g.leading_monomial(order) != Some(m) || basis[i + 1..].iter().any(|(_, l)| !l.coprime(m)) {
            return Err(Error::NotCertified);
        }
    }
    Ok(reduce(f, basis, order))
}

pub fn in_ideal(f: &ZPoly, b: &MarkedBasis) -> Result<bool> {
    Ok(normal_form(f, b)?.is_zero())
}

/// Mutual membership of generators, each side reduced by its own order.
pub fn ideals_equal(a: &MarkedBasis, b: &MarkedBasis) -> Result<bool> {
    if a.nvars != b.nvars {
        return Err(Error::AmbientMismatch(a.nvars, b.nvars));
    }
    for p in a.polys() {
        if !in_ideal(p, b)? {
            return Ok(false);
        }
    }
    for p in b.polys() {
        if !in_ideal(p, a)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Standard monomials grouped by degree, each group in ascending term order.
pub fn all_standard_monomials(b: &MarkedBasis) -> Result<Vec<Vec<Monomial>>> {
    if !b.certified_groebner() {
        return Err(Error::NotCertified);
    }
    let bounds = b.pure_power_bounds()?;
    let mut by_degree: Vec<Vec<Monomial>> = vec![Vec::new(); bounds.iter().sum::<u32>() as usize + 1];
    let mut exps = vec![0u32; b.nvars];
    loop {
        let m = Monomial::new(exps.clone());
        if b.is_standard(&m) {
            by_degree[m.degree() as usize].push(m);
        }
        // Odometer over the box.
        let mut i = 0;
        while i < exps.len() && exps[i] == bounds[i] {
            exps[i] = 0;
            i += 1;
        }
        if i == exps.len() {
            break;
        }
        exps[i] += 1;
    }
    while by_degree.len() > 1 && by_degree.last().is_some_and(Vec::is_empty) {
        by_degree.pop();
    }
    for group in &mut by_degree {
        group.sort_by_key(|m| b.order.key(m));
    }
    Ok(by_degree)
}

pub fn standard_monomials(b: &MarkedBasis, d: usize) -> Result<Vec<Monomial>> {
    Ok(all_standard_monomials(b)?.into_iter().nth(d).unwrap_or_default())
}

/// `Σ_d #(standard monomials of degree d)·q^d`.
pub fn hilbert_series(b: &MarkedBasis) -> Result<QPolynomial> {
    let groups = all_standard_monomials(b)?;
    Ok(QPolynomial::new(groups.iter().map(|g| BigInt::from(g.len())).collect()))
}

/// All monomials of degree `d` in `n` variables.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut exps = vec![0u32; n];
    fn go(i: usize, left: u32, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        let n = exps.len();
        if i + 1 == n {
            exps[i] = left;
            out.push(Monomial::new(exps.clone()));
            exps[i] = 0;
            return;
        }
        for a in 0..=left {
            exps[i] = a;
            go(i + 1, left - a, exps, out);
        }
        exps[i] = 0;
    }
    if n == 0 {
        if d == 0 {
            out.push(Monomial::one(0));
        }
        return out;
    }
    go(0, d, &mut exps, &mut out);
    out
}

/// Reduced Gröbner basis of the ideal generated by homogeneous `gens`,
/// read off a Hermite echelon form of each graded piece. Returns `None` when
/// some piece has a non-unit pivot, so no monic marking exists. The ideal
/// must contain every monomial of degree `max_degree`.
pub fn derive_basis(gens: &[ZPoly], nvars: usize, order: TermOrder, max_degree: u32) -> Result<Option<MarkedBasis>> {
    for g in gens {
        if g.nvars() != nvars {
            return Err(Error::AmbientMismatch(g.nvars(), nvars));
        }
        if !g.is_homogeneous() {
            return Err(Error::NotHomogeneous);
        }
    }
    let mut basis: Vec<(ZPoly, Monomial)> = Vec::new();
    let mut prev_rows: Vec<ZPoly> = Vec::new();
    for d in 0..=max_degree {
        let mut cols = monomials_of_degree(nvars, d);
        cols.sort_by_key(|m| std::cmp::Reverse(order.key(m)));
        let index: BTreeMap<&Monomial, usize> = cols.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut h = HermiteEchelon::new(cols.len());
        let to_row = |p: &ZPoly| {
            let mut row = vec![BigInt::zero(); cols.len()];
            for (m, c) in p.terms() {
                row[index[m]] = c.clone();
            }
            row
        };
        for p in &prev_rows {
            for i in 1..=nvars {
                h.insert(to_row(&p.mul_monomial(&Monomial::variable(i, nvars), &BigInt::one())));
            }
        }
        for g in gens.iter().filter(|g| g.degree() == Some(d)) {
            h.insert(to_row(g));
        }
        if h.pivots().any(|(_, p)| !p.is_one()) {
            return Ok(None);
        }
        h.reduce();
        let rows: Vec<ZPoly> = h
            .rows()
            .iter()
            .map(|(_, r)| Poly::from_terms(nvars, cols.iter().cloned().zip(r.iter().cloned())))
            .collect();
        for ((c, _), p) in h.rows().iter().zip(&rows) {
            let lead = &cols[*c];
            if !basis.iter().any(|(_, l)| l.divides(lead)) {
                basis.push((p.clone(), lead.clone()));
            }
        }
        if h.rank() == cols.len() {
            let mut b = MarkedBasis::with_marks(nvars, order, basis);
            b.certification = Certification::Derived;
            return Ok(Some(b));
        }
        prev_rows = rows;
    }
    Err(Error::InfiniteRank)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{complete, elementary};

    fn x(i: usize, n: usize) -> ZPoly {
        ZPoly::var(i, n)
    }

    fn i23() -> MarkedBasis {
        MarkedBasis::new(2, TermOrder::Lex, vec![x(1, 2).pow(2), complete(2, 1, 2, 2).unwrap()]).unwrap()
    }

    #[test]
    fn normal_forms_in_small_ring() {
        let b = i23();
        assert!(b.certified_groebner());
        assert!(normal_form(&complete(2, 1, 2, 2).unwrap(), &b).unwrap().is_zero());
        assert_eq!(normal_form(&x(2, 2).pow(2), &b).unwrap(), x(1, 2).mul(&x(2, 2)).neg());
        assert_eq!(standard_monomials(&b, 1).unwrap().len(), 2);
        assert_eq!(hilbert_series(&b).unwrap(), QPolynomial::from_i64(&[1, 2, 1]));
        assert_eq!(b.standard_box(), Some(vec![1, 1]));
    }

    #[test]
    fn uncertified_bases_are_refused() {
        let n = 2;
        let marks = vec![(x(1, n).add(&x(2, n)), Monomial::variable(1, n)), (x(1, n), Monomial::variable(1, n))];
        let b = MarkedBasis::with_marks(n, TermOrder::Lex, marks);
        let r = certify(&b);
        assert!(!r.coprime);
        assert!(!r.maximal_markings);
        assert_eq!(normal_form(&x(1, n), &b).unwrap_err(), Error::NotCertified);
        assert_eq!(
            serde_json::to_string(&r).unwrap(),
            r#"{"monic":true,"maximal_markings":false,"coprime":false,"reduced":false,"leading_terms":["x1","x1"]}"#
        );
    }

    #[test]
    fn elementary_and_complete_ideals_agree() {
        for n in 1..=4usize {
            let e = MarkedBasis::new(n, TermOrder::Lex, (1..=n as u32).map(|i| elementary(i, 1, n, n).unwrap()).collect())
                .unwrap();
            let h = MarkedBasis::new(
                n,
                TermOrder::Lex,
                (1..=n).map(|i| complete((n - i + 1) as u32, 1, i, n).unwrap()).collect(),
            )
            .unwrap();
            assert!(h.certified_groebner());
            for p in e.polys() {
                assert!(in_ideal(p, &h).unwrap());
            }
        }
    }

    #[test]
    fn derived_basis_matches_known_one() {
        let gens = vec![x(1, 2).pow(2), complete(2, 1, 2, 2).unwrap()];
        let b = derive_basis(&gens, 2, TermOrder::Lex, 3).unwrap().unwrap();
        assert_eq!(b.certification(), Certification::Derived);
        assert!(b.reduced());
        assert_eq!(hilbert_series(&b).unwrap(), QPolynomial::from_i64(&[1, 2, 1]));
        assert!(ideals_equal(&b, &i23()).unwrap());
    }

    #[test]
    fn derived_basis_rejects_non_unit_pivots() {
        // ⟨(a+b)², (a+2b)²⟩ has quotient ℤ in degree 2 but needs pivot 4.
        let (a, b) = (x(1, 2), x(2, 2));
        let f = a.add(&b).pow(2);
        let g = a.add(&b.scale(&BigInt::from(2))).pow(2);
        assert!(derive_basis(&[f, g], 2, TermOrder::Lex, 4).unwrap().is_none());
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials_of_degree(3, 2).len(), 6);
        assert_eq!(monomials_of_degree(0, 0).len(), 1);
        assert_eq!(monomials_of_degree(1, 4).len(), 1);
    }
}
