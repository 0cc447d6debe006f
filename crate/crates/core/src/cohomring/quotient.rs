//! Quotients `R/⟨f⟩` by primitive degree-one elements.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{GradedAlgebra, PolyPresentation, RingPresentation, SparseMatrix};
use crate::error::{Error, Result};
use crate::groebner::{derive_basis, hilbert_series};
use crate::lattice::{mat_mul, smith_normal_form, to_small, unimodular_completion, unimodular_inverse, IMatrix};
use crate::polyring::{LinearForm, TermOrder};

/// Projection `R_d → R_d/L_d` and a section back, as dense matrices.
struct Piece {
    dim: usize,
    project: IMatrix,
    lift: IMatrix,
}

impl RingPresentation {
    /// `R/⟨f⟩` for primitive `f`. Visible generators of the quotient are the
    /// images of those of `R`. When `R` keeps a polynomial presentation in its
    /// visible generators, the quotient also gets one in `n − 1` variables
    /// `z₂..zₙ`, where `z = W⁻¹y` completes `f` to a unimodular change of
    /// coordinates; its basis is `None` when no monic marking exists.
    pub fn quotient_by_linear(&self, f: &LinearForm) -> Result<RingPresentation> {
        let w = self.internal(f)?;
        let content = w.iter().fold(BigInt::zero(), |g, a| num_integer::Integer::gcd(&g, a));
        if !content.is_one() {
            return Err(Error::NonPrimitive(f.to_string()));
        }
        let a = &self.algebra;
        let top = a.top_degree();
        let mut pieces = vec![Piece { dim: 1, project: vec![vec![BigInt::one()]], lift: vec![vec![BigInt::one()]] }];
        for d in 1..=top {
            let rows = a.dim(d);
            let image = a.multiplication_matrix(&w, d - 1);
            let snf = smith_normal_form(&image, a.dim(d - 1));
            if snf.divisors.iter().any(|x| !x.is_one()) {
                return Err(Error::QuotientNotFree(d));
            }
            let r = snf.divisors.len();
            let uinv = unimodular_inverse(&snf.u)?;
            let project = snf.u[r..].to_vec();
            let lift = uinv.iter().map(|row| row[r..].to_vec()).collect();
            pieces.push(Piece { dim: rows - r, project, lift });
        }
        let dims: Vec<usize> = pieces.iter().map(|p| p.dim).collect();
        let q1 = dims.get(1).copied().unwrap_or(0);
        let mut tables = Vec::with_capacity(q1);
        for i in 0..q1 {
            let lifted: Vec<BigInt> = pieces[1].lift.iter().map(|row| row[i].clone()).collect();
            let mut per_degree = Vec::new();
            for d in 0..top {
                let m = a.multiplication_matrix(&lifted, d);
                let t = mat_mul(&mat_mul(&pieces[d + 1].project, &m), &pieces[d].lift);
                per_degree.push(SparseMatrix::from_dense(&t, dims[d + 1], dims[d]));
            }
            tables.push(per_degree);
        }
        let frame = self
            .frame
            .iter()
            .map(|v| {
                pieces[1]
                    .project
                    .iter()
                    .map(|row| row.iter().zip(v).fold(BigInt::zero(), |acc, (x, y)| acc + x * y))
                    .collect()
            })
            .collect();
        let algebra = GradedAlgebra::new(dims, tables);
        let poly = match &self.poly {
            Some(p) if p.variables_are_visible(self.ngens()) => Some(self.quotient_polys(p, f, &algebra)?),
            _ => None,
        };
        Ok(RingPresentation { algebra, frame, poly, labels: None, source: None, norm_hint: self.norm_hint })
    }

    fn quotient_polys(&self, p: &PolyPresentation, f: &LinearForm, algebra: &GradedAlgebra) -> Result<PolyPresentation> {
        let n = p.nvars;
        let (w, winv) = unimodular_completion(f.coeffs())?;
        let w = to_small(&w).ok_or_else(|| Error::Unsupported("completion entries overflow".into()))?;
        let winv = to_small(&winv).ok_or_else(|| Error::Unsupported("completion entries overflow".into()))?;
        // y = W·z with z₁ = 0.
        let rect: Vec<Vec<i64>> = w.iter().map(|row| row[1..].to_vec()).collect();
        let gens = p.gens.iter().map(|g| g.substitute_linear_rect(&rect, n - 1)).collect::<Result<Vec<_>>>()?;
        let basis = derive_basis(&gens, n - 1, TermOrder::Lex, algebra.top_degree() as u32 + 1)?;
        if let Some(b) = &basis {
            if hilbert_series(b)? != algebra.hilbert() {
                return Err(Error::Unsupported("polynomial and table quotients disagree".into()));
            }
        }
        Ok(PolyPresentation {
            nvars: n - 1,
            gens,
            basis,
            variables: winv[1..].iter().map(|row| LinearForm::new(row.clone())).collect(),
        })
    }
}
