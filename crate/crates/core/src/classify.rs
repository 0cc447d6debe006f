//! Isomorphism tests, blind recovery of an indecomposable partition from its
//! ring, tensor nilpotence and the behaviour over fields where 2 is a unit.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cohomring::{bases, box_vectors, build_ring, RingPresentation};
use crate::error::{Error, Result};
use crate::groebner::{certify, reduce_by, MarkedBasis};
use crate::lattice::{determinant, rank, to_big, HermiteEchelon};
use crate::partition::Partition;
use crate::polyring::{Coefficient, Fp, LinearForm, Monomial, Poly, TermOrder, ZPoly};
use crate::rookcomb::QPolynomial;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IsoVerdict {
    pub isomorphic: bool,
    pub components_left: Vec<Vec<u32>>,
    pub components_right: Vec<Vec<u32>>,
}

/// Compares the multisets of indecomposable components.
pub fn isomorphic(lambda: &Partition, mu: &Partition) -> Result<IsoVerdict> {
    let (a, b) = (lambda.decompose()?, mu.decompose()?);
    let list = |c: &crate::partition::ComponentMultiset| c.sorted().into_iter().map(Vec::from).collect();
    Ok(IsoVerdict { isomorphic: a == b, components_left: list(&a), components_right: list(&b) })
}

/// `k₁ + ⋯ + k_r − r + 1`.
pub fn tensor_nilpotence(orders: &[usize]) -> Result<usize> {
    if orders.is_empty() {
        return Err(Error::EmptyList);
    }
    if orders.contains(&0) {
        return Err(Error::Unsupported("nilpotence orders are positive".into()));
    }
    Ok(orders.iter().sum::<usize>() + 1 - orders.len())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RecoveryParams {
    /// Base radius of the coefficient box, at least 2.
    pub radius: i64,
    pub max_depth: usize,
    /// Largest entry of the change of coordinates, 0 when there was none.
    pub norm_hint: i64,
}

impl Default for RecoveryParams {
    fn default() -> Self {
        RecoveryParams { radius: 2, max_depth: 64, norm_hint: 0 }
    }
}

impl RecoveryParams {
    /// Box radius large enough to contain every classified minimal
    /// nilpotent after a change of coordinates of the hinted size.
    pub fn effective_radius(&self, rank: usize) -> i64 {
        if self.norm_hint == 0 {
            self.radius
        } else {
            self.radius.max(self.norm_hint * (rank as i64 + 1))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Branch {
    pub form: Vec<i64>,
    /// Recovered partition, or the error that ended the branch.
    pub outcome: std::result::Result<String, String>,
    pub node: Option<Box<RecoveryNode>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RecoveryNode {
    pub rank: usize,
    pub k: usize,
    pub radius: i64,
    pub candidates: Vec<Vec<i64>>,
    pub excluded: Vec<Vec<i64>>,
    pub rule: &'static str,
    pub branches: Vec<Branch>,
    pub tally: BTreeMap<String, usize>,
    pub result: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RecoveryReport {
    pub partition: Partition,
    pub tree: RecoveryNode,
}

/// Recovers the hidden indecomposable `λ` from any presentation of `R^λ`.
pub fn recover_partition(r: &RingPresentation, params: &RecoveryParams) -> Result<RecoveryReport> {
    if params.radius < 2 {
        return Err(Error::Unsupported("recovery radius must be at least 2".into()));
    }
    let (partition, tree) = recover_node(r, params, 0)?;
    Ok(RecoveryReport { partition, tree })
}

fn recover_node(r: &RingPresentation, params: &RecoveryParams, depth: usize) -> Result<(Partition, RecoveryNode)> {
    if depth > params.max_depth {
        return Err(Error::RecursionDepth(params.max_depth));
    }
    let n = r.degree_one_rank();
    let radius = params.effective_radius(n);
    let mut node = RecoveryNode {
        rank: n,
        k: 0,
        radius,
        candidates: Vec::new(),
        excluded: Vec::new(),
        rule: "point",
        branches: Vec::new(),
        tally: BTreeMap::new(),
        result: Partition::empty().to_string(),
    };
    if n == 0 {
        return Ok((Partition::empty(), node));
    }
    let (k, cands) = r.min_nilpotence(radius)?;
    if cands.is_empty() {
        return Err(Error::NoNilpotent { k, radius });
    }
    node.k = k;
    node.candidates = cands.iter().map(|c| c.form.coeffs().to_vec()).collect();
    let internal: Vec<Vec<BigInt>> = cands.iter().map(|c| c.internal.clone()).collect();
    let assemble = |nu: &Partition| -> Result<Partition> {
        let mut parts = vec![k as u32];
        parts.extend(nu.parts().iter().map(|p| p + 1));
        Partition::new(parts)
    };
    let branch = |form: &LinearForm| -> std::result::Result<(Partition, RecoveryNode), Error> {
        let q = r.quotient_by_linear(form)?;
        recover_node(&q, params, depth + 1)
    };

    if rank(&internal) == internal.len() || k == 2 {
        node.rule = if internal.len() == 1 { "unique" } else { "any" };
        let form = &cands[0].form;
        let (nu, child) = branch(form)?;
        let lambda = assemble(&nu)?;
        node.branches.push(Branch { form: form.coeffs().to_vec(), outcome: Ok(nu.to_string()), node: Some(Box::new(child)) });
        node.result = lambda.to_string();
        return Ok((lambda, node));
    }

    node.rule = "majority";
    let mut kept = Vec::new();
    for (i, c) in cands.iter().enumerate() {
        let others: Vec<Vec<BigInt>> = internal.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, v)| v.clone()).collect();
        let mut with = others.clone();
        with.push(internal[i].clone());
        if rank(&with) > rank(&others) {
            node.excluded.push(c.form.coeffs().to_vec());
        } else {
            kept.push(c);
        }
    }
    for c in &kept {
        let outcome = branch(&c.form);
        let entry = match outcome {
            Ok((nu, child)) => {
                *node.tally.entry(nu.to_string()).or_default() += 1;
                Branch { form: c.form.coeffs().to_vec(), outcome: Ok(nu.to_string()), node: Some(Box::new(child)) }
            }
            Err(e) => Branch { form: c.form.coeffs().to_vec(), outcome: Err(e.to_string()), node: None },
        };
        node.branches.push(entry);
    }
    let needed = kept.len().saturating_sub(1).max(1);
    let winners: Vec<&String> = node.tally.iter().filter(|(_, &v)| v >= needed).map(|(p, _)| p).collect();
    match winners.as_slice() {
        [one] => {
            let nu = Partition::parse(one)?;
            let lambda = assemble(&nu)?;
            node.result = lambda.to_string();
            Ok((lambda, node))
        }
        _ => Err(Error::MajorityTie(format!(
            "{} candidates, tally {:?}",
            kept.len(),
            node.tally
        ))),
    }
}

/// Deterministic `n × n` matrix with entries in `{−1, 0, 1}` and
/// determinant `±1`.
pub fn obfuscation_matrix(n: usize, seed: u64) -> Vec<Vec<i64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let m: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(-1..=1)).collect()).collect();
        let d = determinant(&to_big(&m)).expect("square");
        if d == BigInt::from(1) || d == BigInt::from(-1) {
            return m;
        }
    }
}

/// Index in `R₂` of the subgroup spanned by squares of box forms of radius
/// 2; `0` means the squares span a lattice of smaller rank.
pub fn square_index(r: &RingPresentation) -> BigInt {
    let alg = r.algebra();
    if alg.dim(2) == 0 {
        return BigInt::from(1);
    }
    let mut h = HermiteEchelon::new(alg.dim(2));
    for v in box_vectors(r.ngens(), 2) {
        let w = r.internal(&LinearForm::new(v)).expect("box matches generator count");
        h.insert(alg.power(&w, 2));
    }
    h.index().unwrap_or_else(BigInt::zero)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TensorProfile {
    /// Nilpotence orders of the visible generators, sorted.
    pub orders: Vec<usize>,
    pub square_index: String,
}

impl TensorProfile {
    pub fn of(r: &RingPresentation) -> Result<Self> {
        let n = r.ngens();
        let mut orders =
            (1..=n).map(|i| r.nilpotence_order(&LinearForm::variable(i, n))).collect::<Result<Vec<_>>>()?;
        orders.sort_unstable();
        Ok(TensorProfile { orders, square_index: square_index(r).to_string() })
    }
}

/// Isomorphism invariants used to separate rings with equal Hilbert series.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RingInvariants {
    pub hilbert: Vec<String>,
    pub min_nilpotence: usize,
    pub witnesses: usize,
    pub spectrum: Vec<usize>,
    pub square_index: String,
}

impl RingInvariants {
    pub fn of(r: &RingPresentation, radius: i64) -> Result<Self> {
        let (k, w) = r.min_nilpotence(radius)?;
        Ok(RingInvariants {
            hilbert: r.hilbert_series().coefficients().iter().map(BigInt::to_string).collect(),
            min_nilpotence: k,
            witnesses: w.len(),
            spectrum: r.order_spectrum(radius)?,
            square_index: square_index(r).to_string(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FieldIsoWitness {
    pub partition: Partition,
    /// `0` for ℚ.
    pub characteristic: u64,
    pub half: String,
    /// Rows give `(x₁, y)` in terms of `(x₁, x₂)`.
    pub substitution: Vec<Vec<String>>,
    /// The ring splits as `A[x]/⟨x²⟩ ⊗ A[y]/⟨y²⟩`.
    pub splits: bool,
    /// `x₁ ↦ x₁, x₂ ↦ x₃ − ½x₁` is an isomorphism
    /// `R^{(2,3)} ⊗ A → R^{(2,2,4)} ⊗ A`.
    pub cross_isomorphism: bool,
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Mutual membership of two generator sets over a field, each taken with
/// its own monic coprime marking under lex.
fn field_ideals_equal<C: Coefficient>(a: &[Poly<C>], b: &[Poly<C>]) -> Result<bool> {
    let mark = |gens: &[Poly<C>]| -> Result<Vec<(Poly<C>, Monomial)>> {
        gens.iter()
            .filter(|g| !g.is_zero())
            .map(|g| {
                let (m, c) = g.leading_term(TermOrder::Lex).expect("nonzero");
                let inv = c.inverse().ok_or_else(|| Error::NotMonic(g.to_string()))?;
                Ok((g.scale(&inv), m.clone()))
            })
            .collect()
    };
    let (ma, mb) = (mark(a)?, mark(b)?);
    for g in a {
        if !reduce_by(g, &mb, TermOrder::Lex)?.is_zero() {
            return Ok(false);
        }
    }
    for g in b {
        if !reduce_by(g, &ma, TermOrder::Lex)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn check_over<C: Coefficient>(lambda: &Partition, t: &C) -> Result<(bool, bool, C)> {
    let two = t.lift_int(&BigInt::from(2));
    let half = two.inverse().ok_or(Error::CharacteristicTwo)?;
    let lift = |p: &ZPoly| p.map_coefficients(|c| t.lift_int(c));
    let var = |i: usize, n: usize| lift(&ZPoly::var(i, n));
    let gens: Vec<Poly<C>> = bases::standard_generators(lambda)?.iter().map(lift).collect();
    let splits = if lambda.parts() == [2, 3] {
        // Variables (x₁, y) with x₂ = y − ½x₁.
        let images = vec![var(1, 2), var(2, 2).sub(&var(1, 2).scale(&half))];
        let moved = gens.iter().map(|g| g.substitute(&images)).collect::<Result<Vec<_>>>()?;
        field_ideals_equal(&moved, &[var(1, 2).pow(2), var(2, 2).pow(2)])?
    } else {
        field_ideals_equal(&gens, &[var(1, 3).pow(2), var(1, 3).add(&var(2, 3)), var(3, 3).pow(2)])?
    };
    // φ(x₁) = x₁, φ(x₂) = x₃ − ½x₁ kills I_{(2,3)} in R^{(2,2,4)} ⊗ A; it is
    // onto since x₂ ≡ −x₁ there, and both sides have rank 4.
    let images = vec![var(1, 3), var(3, 3).sub(&var(1, 3).scale(&half))];
    let source: Vec<Poly<C>> =
        bases::standard_generators(&Partition::new(vec![2, 3])?)?.iter().map(lift).collect();
    let moved = source.iter().map(|g| g.substitute(&images)).collect::<Result<Vec<_>>>()?;
    let marked_target = MarkedBasis::new(3, TermOrder::Lex, bases::standard_generators(&Partition::new(vec![2, 2, 4])?)?)?;
    debug_assert!(certify(&marked_target).coprime);
    let kills = moved
        .iter()
        .map(|g| crate::groebner::normal_form_over(g, &marked_target).map(|r| r.is_zero()))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .all(|b| b);
    let ranks_agree = build_ring(&Partition::new(vec![2, 3])?)?.rank() == build_ring(&Partition::new(vec![2, 2, 4])?)?.rank();
    Ok((splits, kills && ranks_agree, half))
}

/// Completes the square over ℚ (`p = 0`) or `𝔽_p` for the pair
/// `(2,3)`, `(2,2,4)`.
pub fn field_iso_check(lambda: &Partition, p: u64) -> Result<FieldIsoWitness> {
    if lambda.parts() != [2, 3] && lambda.parts() != [2, 2, 4] {
        return Err(Error::Unsupported(format!("field check is defined for (2,3) and (2,2,4), not {lambda}")));
    }
    if p == 2 {
        return Err(Error::CharacteristicTwo);
    }
    if p != 0 && !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let (splits, cross, half) = if p == 0 {
        let (s, c, h) = check_over(lambda, &BigRational::zero())?;
        (s, c, h.to_string())
    } else {
        let (s, c, h) = check_over(lambda, &Fp::new(0, p))?;
        (s, c, h.to_string())
    };
    Ok(FieldIsoWitness {
        partition: lambda.clone(),
        characteristic: p,
        substitution: vec![vec!["1".into(), "0".into()], vec![half.clone(), "1".into()]],
        half,
        splits,
        cross_isomorphism: cross,
    })
}

/// Hilbert series of `R^λ` read from the rook product.
pub fn poincare(lambda: &Partition) -> Result<QPolynomial> {
    if lambda.is_empty() {
        return Ok(QPolynomial::one());
    }
    crate::rookcomb::product_formula(lambda)
}
