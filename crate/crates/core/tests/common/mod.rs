//! Oracles shared by the integration tests. Each one is computed directly
//! from definitions, without going through the library routine it checks.

#![allow(dead_code)]

use num_bigint::BigInt;
use partvar::groebner::{normal_form, MarkedBasis};
use partvar::polyring::{Monomial, ZPoly};
use partvar::Partition;
use rand::Rng;

/// Weakly increasing sequences with `λᵢ ≥ i`, `1 ≤ n ≤ max_rows` and parts
/// at most `max_part`.
pub fn board_family(max_rows: usize, max_part: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut stack: Vec<Vec<u32>> = vec![Vec::new()];
    while let Some(cur) = stack.pop() {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if cur.len() == max_rows {
            continue;
        }
        let lo = cur.last().copied().unwrap_or(1).max(cur.len() as u32 + 1);
        for p in lo..=max_part {
            let mut next = cur.clone();
            next.push(p);
            stack.push(next);
        }
    }
    out.sort();
    out
}

pub fn partition(parts: &[u32]) -> Partition {
    Partition::new(parts.to_vec()).unwrap()
}

/// For each row, its value inside its indecomposable component, or `None`
/// for a split row. A split row is the first `k` with `λ_k = k`; the rows
/// after it are shifted down by `k`.
pub fn component_values(parts: &[u32]) -> Vec<Option<u32>> {
    match (1..=parts.len()).find(|&k| parts[k - 1] == k as u32) {
        None => parts.iter().map(|&p| Some(p)).collect(),
        Some(k) => {
            let mut out = component_values(&parts[..k - 1]);
            out.push(None);
            let rest: Vec<u32> = parts[k..].iter().map(|&p| p - k as u32).collect();
            out.extend(component_values(&rest));
            out
        }
    }
}

/// Component index of each row, `None` for split rows.
pub fn component_ids(parts: &[u32]) -> Vec<Option<usize>> {
    fn go(parts: &[u32], next: &mut usize, out: &mut Vec<Option<usize>>) {
        match (1..=parts.len()).find(|&k| parts[k - 1] == k as u32) {
            None => {
                if !parts.is_empty() {
                    out.extend(std::iter::repeat_n(Some(*next), parts.len()));
                    *next += 1;
                }
            }
            Some(k) => {
                go(&parts[..k - 1], next, out);
                out.push(None);
                let rest: Vec<u32> = parts[k..].iter().map(|&p| p - k as u32).collect();
                go(&rest, next, out);
            }
        }
    }
    let mut out = Vec::new();
    go(parts, &mut 0, &mut out);
    out
}

/// `∏ᵢ [λᵢ − i + 1]_q` by direct convolution.
pub fn q_product(parts: &[u32]) -> Vec<i64> {
    let mut acc = vec![1i64];
    for (i, &p) in parts.iter().enumerate() {
        let m = p as usize - i;
        let mut next = vec![0i64; acc.len() + m - 1];
        for (d, &c) in acc.iter().enumerate() {
            for e in 0..m {
                next[d + e] += c;
            }
        }
        acc = next;
    }
    acc
}

pub fn to_i64(coeffs: &[BigInt]) -> Vec<i64> {
    coeffs.iter().map(|c| i64::try_from(c).unwrap()).collect()
}

/// Smallest `m ≥ 1` with `f^m ≡ 0`, by expanding powers and reducing.
pub fn order_by_expansion(f: &ZPoly, basis: &MarkedBasis, cap: u32) -> Option<u32> {
    let f = normal_form(f, basis).unwrap();
    if f.is_zero() {
        return Some(1);
    }
    let mut power = f.clone();
    for m in 2..=cap {
        power = normal_form(&power.mul(&f), basis).unwrap();
        if power.is_zero() {
            return Some(m);
        }
    }
    None
}

pub fn linear(coeffs: &[i64]) -> ZPoly {
    let n = coeffs.len();
    coeffs.iter().enumerate().fold(ZPoly::zero(n), |acc, (i, &a)| acc.add(&ZPoly::var(i + 1, n).scale(&BigInt::from(a))))
}

/// A few terms of degree at most `max_deg` with coefficients in `[−5, 5]`.
pub fn random_poly<R: Rng>(rng: &mut R, n: usize, max_deg: u32, terms: usize) -> ZPoly {
    let mut out = ZPoly::zero(n);
    for _ in 0..terms {
        let mut e = vec![0u32; n];
        let d = rng.gen_range(0..=max_deg);
        for _ in 0..d {
            e[rng.gen_range(0..n)] += 1;
        }
        let c = BigInt::from(rng.gen_range(-5i64..=5));
        out = out.add(&ZPoly::from_terms(n, [(Monomial::new(e), c)]));
    }
    out
}

/// A random board-valid partition with at most `max_rows` rows.
pub fn random_partition<R: Rng>(rng: &mut R, max_rows: usize, max_part: u32) -> Vec<u32> {
    let n = rng.gen_range(1..=max_rows);
    let mut parts = Vec::with_capacity(n);
    let mut prev = 1u32;
    for i in 1..=n as u32 {
        let lo = prev.max(i);
        let p = rng.gen_range(lo..=max_part.max(lo));
        parts.push(p);
        prev = p;
    }
    parts
}
