//! Explicit Gröbner bases for the ideals `I_λ`.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::groebner::MarkedBasis;
use crate::partition::Partition;
use crate::polyring::{complete, Monomial, TermOrder, ZPoly};

/// `h_{λᵢ−i+1}(x₁..xᵢ)` for each row, in `n` variables.
pub fn standard_generators(lambda: &Partition) -> Result<Vec<ZPoly>> {
    lambda.check_board()?;
    let n = lambda.len();
    lambda
        .parts()
        .iter()
        .enumerate()
        .map(|(i, &p)| complete(p - i as u32, 1, i + 1, n))
        .collect()
}

/// The generators of `I_λ` under lex, with leading terms `xᵢ^{λᵢ−i+1}`.
pub fn standard_basis(lambda: &Partition) -> Result<MarkedBasis> {
    if lambda.is_empty() {
        return Err(Error::EmptyPartition);
    }
    MarkedBasis::new(lambda.len(), TermOrder::Lex, standard_generators(lambda)?)
}

/// `xⱼ·h₁(j)` in `n` variables.
fn x_times_h1(j: usize, n: usize) -> Result<ZPoly> {
    Ok(ZPoly::var(j, n).mul(&complete(1, 1, j, n)?))
}

/// Lex basis for `μ = (2, 3, …, i, p)`:
/// `{xⱼ·h₁(j) : j < i} ∪ {xᵢ^{p−i+1} + xᵢ^{p−i}·h₁(i−1)}`.
pub fn hook_basis(i: usize, p: u32) -> Result<MarkedBasis> {
    if i == 0 {
        return Err(Error::EmptyPartition);
    }
    if (p as usize) < i {
        return Err(Error::InvalidBoard { row: i, part: p });
    }
    let n = i;
    let mut gens: Vec<ZPoly> = (1..i).map(|j| x_times_h1(j, n)).collect::<Result<_>>()?;
    let e = p - i as u32;
    let xi_pow = |a: u32| ZPoly::from_terms(n, [(power(i, a, n), BigInt::from(1))]);
    gens.push(xi_pow(e + 1).add(&xi_pow(e).mul(&complete(1, 1, i - 1, n)?)));
    MarkedBasis::new(n, TermOrder::Lex, gens)
}

/// The partition `(2, 3, …, i, p)` that [`hook_basis`] presents.
pub fn hook_partition(i: usize, p: u32) -> Result<Partition> {
    let mut parts: Vec<u32> = (2..=i as u32).collect();
    parts.push(p);
    Partition::new(parts)
}

fn power(i: usize, a: u32, n: usize) -> Monomial {
    let mut e = vec![0; n];
    e[i - 1] = a;
    Monomial::new(e)
}

/// Grevlex basis for a self-core `λ` with `k = λ₁`:
/// `Gⱼ = h_{k−j+1}(1..j)` for `j < k` and `Gⱼ = xⱼ·h₁(j)` for `j ≥ k`.
pub fn self_core_basis(lambda: &Partition) -> Result<MarkedBasis> {
    if lambda.is_empty() {
        return Err(Error::EmptyPartition);
    }
    if !lambda.is_self_core() {
        return Err(Error::Unsupported(format!("{lambda} is not its own core")));
    }
    let n = lambda.len();
    let k = lambda.part(1) as usize;
    let gens = (1..=n)
        .map(|j| if j < k { complete((k - j + 1) as u32, 1, j, n) } else { x_times_h1(j, n) })
        .collect::<Result<Vec<_>>>()?;
    MarkedBasis::new(n, TermOrder::GradedRevLex, gens)
}
