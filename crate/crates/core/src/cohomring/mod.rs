//! The rings `R^λ = ℤ[x₁..xₙ]/I_λ` and their quotients and changes of
//! coordinates.
//!
//! A [`RingPresentation`] keeps a [`GradedAlgebra`] (multiplication tables
//! on a ℤ-basis of each graded piece) together with a *frame*: the visible
//! generators written in the degree-one basis. Rings built from a partition
//! also keep their polynomial presentation, so elements can be shown in
//! standard form.

mod algebra;
pub mod bases;
mod quotient;
mod search;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{json, Value};

pub use algebra::{GradedAlgebra, SparseMatrix};
pub use search::{box_vectors, Nilpotent, NilpotentReport};

use crate::error::{Error, Result};
use crate::groebner::{all_standard_monomials, normal_form, Certification, MarkedBasis};
use crate::lattice::{to_big, unimodular_inverse};
use crate::partition::Partition;
use crate::polyring::{LinearForm, Monomial, TermOrder, ZPoly};
use crate::rookcomb::QPolynomial;

/// Ideal generators in polynomial variables, each variable being a linear
/// form in the visible generators of the ring.
#[derive(Debug, Clone)]
pub struct PolyPresentation {
    pub nvars: usize,
    pub gens: Vec<ZPoly>,
    /// A certified basis of the ideal, when one is known.
    pub basis: Option<MarkedBasis>,
    pub variables: Vec<LinearForm>,
}

impl PolyPresentation {
    /// Whether variable `i` is visible generator `i` for every `i`.
    fn variables_are_visible(&self, ngens: usize) -> bool {
        self.nvars == ngens && (0..ngens).all(|i| self.variables[i] == LinearForm::variable(i + 1, ngens))
    }
}

#[derive(Debug, Clone)]
pub struct RingPresentation {
    algebra: GradedAlgebra,
    frame: Vec<Vec<BigInt>>,
    poly: Option<PolyPresentation>,
    /// Standard monomials labelling the internal basis, by degree.
    labels: Option<Vec<Vec<Monomial>>>,
    source: Option<Partition>,
    norm_hint: i64,
}

/// `R^λ` under the lex presentation with leading terms `xᵢ^{λᵢ−i+1}`.
pub fn build_ring(lambda: &Partition) -> Result<RingPresentation> {
    let basis = bases::standard_basis(lambda)?;
    RingPresentation::from_basis(basis, Some(lambda.clone()))
}

impl RingPresentation {
    /// Ring `ℤ[x₁..xₙ]/⟨basis⟩` for a certified, finite-rank basis.
    pub fn from_basis(basis: MarkedBasis, source: Option<Partition>) -> Result<Self> {
        let n = basis.nvars();
        let groups = all_standard_monomials(&basis)?;
        let coords = |p: &ZPoly, d: usize| -> Vec<(usize, BigInt)> {
            let group = groups.get(d).map_or(&[][..], Vec::as_slice);
            p.terms()
                .map(|(m, c)| {
                    let idx = group.iter().position(|g| g == m).expect("normal form is standard");
                    (idx, c.clone())
                })
                .collect()
        };
        let dims: Vec<usize> = groups.iter().map(Vec::len).collect();
        let ones: &[Monomial] = groups.get(1).map_or(&[], Vec::as_slice);
        let mut tables = Vec::with_capacity(ones.len());
        for e in ones {
            let mut per_degree = Vec::new();
            for d in 0..groups.len().saturating_sub(1) {
                let cols = groups[d]
                    .iter()
                    .map(|s| Ok(coords(&normal_form(&ZPoly::from_terms(n, [(e.mul(s), BigInt::one())]), &basis)?, d + 1)))
                    .collect::<Result<Vec<_>>>()?;
                per_degree.push(SparseMatrix::from_columns(dims[d + 1], cols));
            }
            tables.push(per_degree);
        }
        let frame = (1..=n)
            .map(|i| {
                let nf = normal_form(&ZPoly::var(i, n), &basis)?;
                let mut v = vec![BigInt::zero(); dims.get(1).copied().unwrap_or(0)];
                for (idx, c) in coords(&nf, 1) {
                    v[idx] = c;
                }
                Ok(v)
            })
            .collect::<Result<Vec<_>>>()?;
        let gens = basis.polys().cloned().collect();
        Ok(RingPresentation {
            algebra: GradedAlgebra::new(dims, tables),
            frame,
            poly: Some(PolyPresentation {
                nvars: n,
                gens,
                basis: Some(basis),
                variables: (1..=n).map(|i| LinearForm::variable(i, n)).collect(),
            }),
            labels: Some(groups),
            source,
            norm_hint: 0,
        })
    }

    pub fn algebra(&self) -> &GradedAlgebra {
        &self.algebra
    }

    /// Number of visible generators.
    pub fn ngens(&self) -> usize {
        self.frame.len()
    }

    pub fn frame(&self) -> &[Vec<BigInt>] {
        &self.frame
    }

    /// Rank of the degree-one piece.
    pub fn degree_one_rank(&self) -> usize {
        self.algebra.dim(1)
    }

    pub fn rank(&self) -> usize {
        self.algebra.rank()
    }

    pub fn top_degree(&self) -> usize {
        self.algebra.top_degree()
    }

    pub fn hilbert_series(&self) -> QPolynomial {
        self.algebra.hilbert()
    }

    pub fn poly(&self) -> Option<&PolyPresentation> {
        self.poly.as_ref()
    }

    /// The certified basis whose variables are the visible generators.
    pub fn basis(&self) -> Option<&MarkedBasis> {
        self.poly
            .as_ref()
            .filter(|p| p.variables_are_visible(self.ngens()))
            .and_then(|p| p.basis.as_ref())
    }

    pub fn source(&self) -> Option<&Partition> {
        self.source.as_ref()
    }

    /// Largest entry of the change of coordinates applied so far (0 when
    /// none was applied).
    pub fn norm_hint(&self) -> i64 {
        self.norm_hint
    }

    /// Standard monomials of the internal basis in degree `d`.
    pub fn labels(&self, d: usize) -> Option<&[Monomial]> {
        self.labels.as_ref().and_then(|l| l.get(d)).map(Vec::as_slice)
    }

    /// Degree-one coordinates of a form in the visible generators.
    pub fn internal(&self, f: &LinearForm) -> Result<Vec<BigInt>> {
        if f.nvars() != self.ngens() {
            return Err(Error::AmbientMismatch(f.nvars(), self.ngens()));
        }
        let mut v = vec![BigInt::zero(); self.degree_one_rank()];
        for (a, col) in f.coeffs().iter().zip(&self.frame) {
            if *a == 0 {
                continue;
            }
            let a = BigInt::from(*a);
            for (x, c) in v.iter_mut().zip(col) {
                *x += &a * c;
            }
        }
        Ok(v)
    }

    /// Least `m ≥ 1` with `f^m = 0`.
    pub fn nilpotence_order(&self, f: &LinearForm) -> Result<usize> {
        self.algebra.nilpotence_order(&self.internal(f)?)
    }

    /// Same as [`Self::nilpotence_order`], but gives up past `cap`.
    pub fn nilpotence_order_capped(&self, f: &LinearForm, cap: usize) -> Result<Option<usize>> {
        self.algebra.nilpotence_order_capped(&self.internal(f)?, cap)
    }

    /// Standard form of `f`, for rings that keep their basis.
    pub fn element(&self, f: &ZPoly) -> Result<RingElement<'_>> {
        let basis = self.basis().ok_or_else(|| Error::Unsupported("ring has no certified basis".into()))?;
        Ok(RingElement { ring: self, poly: normal_form(f, basis)? })
    }

    /// New visible generators `y` with `x = A·y`; `A` must be unimodular.
    pub fn obfuscate(&self, a: &[Vec<i64>]) -> Result<RingPresentation> {
        let n = self.ngens();
        if a.len() != n || a.iter().any(|r| r.len() != n) {
            return Err(Error::ShapeMismatch(format!("obfuscation matrix must be {n}×{n}")));
        }
        let ainv = unimodular_inverse(&to_big(a))?;
        let frame = (0..n)
            .map(|j| {
                let mut v = vec![BigInt::zero(); self.degree_one_rank()];
                for (i, col) in self.frame.iter().enumerate() {
                    let c = &ainv[j][i];
                    if c.is_zero() {
                        continue;
                    }
                    for (x, y) in v.iter_mut().zip(col) {
                        *x += c * y;
                    }
                }
                v
            })
            .collect();
        let poly = match &self.poly {
            Some(p) if p.variables_are_visible(n) => Some(PolyPresentation {
                nvars: n,
                gens: p.gens.iter().map(|g| g.substitute_linear(a)).collect::<Result<_>>()?,
                basis: None,
                variables: p.variables.clone(),
            }),
            _ => None,
        };
        let entry_norm = a.iter().flatten().map(|x| x.abs()).max().unwrap_or(0);
        Ok(RingPresentation {
            algebra: self.algebra.clone(),
            frame,
            poly,
            labels: None,
            source: None,
            norm_hint: self.norm_hint.max(1) * entry_norm,
        })
    }

    /// Reports `{n, rank, hilbert, leading_terms}`.
    pub fn report(&self) -> Value {
        let leading: Vec<String> = self
            .poly
            .as_ref()
            .and_then(|p| p.basis.as_ref())
            .map(|b| b.leading_monomials().map(Monomial::to_string).collect())
            .unwrap_or_default();
        json!({
            "n": self.ngens(),
            "rank": self.rank(),
            "hilbert": self.hilbert_series().to_json(),
            "leading_terms": leading,
        })
    }

    /// Both stickiness clauses for the normal form of `m` in a self-core
    /// ring presented by its grevlex basis.
    pub fn is_sticky_consistent(&self, m: &Monomial) -> Result<bool> {
        let wrong = || Error::Unsupported("stickiness needs the grevlex basis of a self-core ring".into());
        let basis = self.basis().ok_or_else(wrong)?;
        let source = self.source.as_ref().ok_or_else(wrong)?;
        if basis.order() != TermOrder::GradedRevLex || !source.is_self_core() || basis.certification() == Certification::None {
            return Err(wrong());
        }
        let k = source.part(1) as usize;
        let nf = normal_form(&ZPoly::from_terms(m.nvars(), [(m.clone(), BigInt::one())]), basis)?;
        for i in k..=m.nvars() {
            if m.exponent(i) > 0 && nf.terms().any(|(t, _)| t.exponent(i) == 0) {
                return Ok(false);
            }
        }
        let low_only = |t: &Monomial| (k..=t.nvars()).all(|i| t.exponent(i) == 0);
        if low_only(m) && !nf.terms().all(|(t, _)| low_only(t)) {
            return Ok(false);
        }
        Ok(true)
    }
}

/// `R^λ` presented by the grevlex basis of a self-core partition.
pub fn build_self_core_ring(lambda: &Partition) -> Result<RingPresentation> {
    RingPresentation::from_basis(bases::self_core_basis(lambda)?, Some(lambda.clone()))
}

/// A polynomial kept in standard form.
#[derive(Debug, Clone)]
pub struct RingElement<'a> {
    ring: &'a RingPresentation,
    poly: ZPoly,
}

impl<'a> RingElement<'a> {
    pub fn poly(&self) -> &ZPoly {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn mul(&self, other: &RingElement<'a>) -> Result<RingElement<'a>> {
        self.ring.element(&self.poly.mul(&other.poly))
    }

    pub fn add(&self, other: &RingElement<'a>) -> Result<RingElement<'a>> {
        self.ring.element(&self.poly.add(&other.poly))
    }

    /// `self^m`, reducing after every multiplication.
    pub fn pow(&self, m: u32) -> Result<RingElement<'a>> {
        let mut acc = self.ring.element(&ZPoly::one(self.poly.nvars()))?;
        for _ in 0..m {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::hilbert_series;

    fn p(s: &str) -> Partition {
        Partition::parse(s).unwrap()
    }

    fn lf(c: &[i64]) -> LinearForm {
        LinearForm::new(c.to_vec())
    }

    /// Expands `f^m` in the polynomial ring and reduces once.
    fn order_by_expansion(lambda: &Partition, f: &LinearForm) -> usize {
        let basis = bases::standard_basis(lambda).unwrap();
        let g = f.to_poly();
        if normal_form(&g, &basis).unwrap().is_zero() {
            return 1;
        }
        (2..)
            .find(|&m| normal_form(&g.pow(m), &basis).unwrap().is_zero())
            .unwrap() as usize
    }

    #[test]
    fn small_ring_shape() {
        let r = build_ring(&p("2,3")).unwrap();
        assert_eq!(r.rank(), 4);
        assert_eq!(r.hilbert_series(), QPolynomial::from_i64(&[1, 2, 1]));
        assert_eq!(r.basis().unwrap().standard_box(), Some(vec![1, 1]));
        assert_eq!(
            r.report().to_string(),
            r#"{"hilbert":[1,2,1],"leading_terms":["x1^2","x2^2"],"n":2,"rank":4}"#
        );
        let staircase = build_ring(&p("1,2,3")).unwrap();
        assert_eq!(staircase.rank(), 1);
        assert!(build_ring(&p("1,1")).is_err());
    }

    #[test]
    fn nilpotence_examples() {
        let r = build_ring(&p("2,3")).unwrap();
        assert_eq!(r.nilpotence_order(&lf(&[1, 2])).unwrap(), 2);
        assert_eq!(r.nilpotence_order(&lf(&[0, 0])).unwrap(), 1);
        let r = build_ring(&p("2,4")).unwrap();
        assert_eq!(r.nilpotence_order(&lf(&[1, 2])).unwrap(), 4);
        let lam = p("4,4,6,6,8,10");
        let r = build_ring(&lam).unwrap();
        for i in 1..=lam.len() {
            assert_eq!(r.nilpotence_order(&LinearForm::variable(i, lam.len())).unwrap(), lam.part(i) as usize);
        }
    }

    #[test]
    fn tables_agree_with_full_expansion() {
        for s in ["2,3", "2,4", "3,3,5", "3,4,4", "2,2,4", "3,3,4,5"] {
            let lam = p(s);
            let r = build_ring(&lam).unwrap();
            let n = lam.len();
            for v in box_vectors(n, 2) {
                let f = LinearForm::new(v);
                assert_eq!(r.nilpotence_order(&f).unwrap(), order_by_expansion(&lam, &f), "{lam} {f}");
            }
        }
    }

    #[test]
    fn ring_elements_reduce() {
        let r = build_ring(&p("2,3")).unwrap();
        let x2 = r.element(&ZPoly::var(2, 2)).unwrap();
        assert_eq!(x2.pow(2).unwrap().poly(), &ZPoly::var(1, 2).mul(&ZPoly::var(2, 2)).neg());
        assert!(x2.pow(3).unwrap().is_zero());
        assert!(x2.pow(0).unwrap().poly() == &ZPoly::one(2));
    }

    #[test]
    fn obfuscation_preserves_orders() {
        let lam = p("3,4,5");
        let r = build_ring(&lam).unwrap();
        let a = vec![vec![1, 1, 0], vec![0, 1, -1], vec![0, 0, 1]];
        let o = r.obfuscate(&a).unwrap();
        assert_eq!(o.hilbert_series(), r.hilbert_series());
        assert!(o.source().is_none());
        assert_eq!(o.norm_hint(), 1);
        // c' = Aᵀc carries a form to the same element.
        for v in box_vectors(3, 2) {
            let c = LinearForm::new(v.clone());
            let cp: Vec<i64> = (0..3).map(|j| (0..3).map(|i| a[i][j] * v[i]).sum()).collect();
            assert_eq!(
                r.nilpotence_order(&c).unwrap(),
                o.nilpotence_order(&LinearForm::new(cp)).unwrap()
            );
        }
        // The substituted generators present the same ring.
        let gens = &o.poly().unwrap().gens;
        let derived = crate::groebner::derive_basis(gens, 3, TermOrder::Lex, o.top_degree() as u32 + 1).unwrap();
        if let Some(b) = derived {
            assert_eq!(hilbert_series(&b).unwrap(), r.hilbert_series());
        }
        assert!(r.obfuscate(&[vec![2, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).is_err());
    }

    #[test]
    fn stickiness_examples() {
        let r = build_self_core_ring(&p("3,3,4,5")).unwrap();
        assert!(r.is_sticky_consistent(&Monomial::new(vec![2, 0, 1, 0])).unwrap());
        assert!(r.is_sticky_consistent(&Monomial::new(vec![2, 2, 0, 0])).unwrap());
        assert!(r.is_sticky_consistent(&Monomial::new(vec![1, 0, 0, 0])).unwrap());
        assert!(build_ring(&p("3,3,4,5")).unwrap().is_sticky_consistent(&Monomial::one(4)).is_err());
    }
}
