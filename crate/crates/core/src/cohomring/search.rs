//! Bounded searches for linear forms of small nilpotence order.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::RingPresentation;
use crate::error::Result;
use crate::polyring::LinearForm;

/// Nonzero vectors in `[−r, r]ⁿ` with first nonzero entry positive, ordered
/// by largest absolute entry, then by absolute sum, then lexicographically.
pub fn box_vectors(n: usize, radius: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut v = vec![-radius; n];
    if n == 0 {
        return out;
    }
    loop {
        if v.iter().find(|&&a| a != 0).is_some_and(|&a| a > 0) {
            out.push(v.clone());
        }
        let mut i = n;
        loop {
            if i == 0 {
                out.sort_by_key(|v| (v.iter().map(|a| a.abs()).max(), v.iter().map(|a| a.abs()).sum::<i64>(), v.clone()));
                return out;
            }
            i -= 1;
            if v[i] < radius {
                v[i] += 1;
                break;
            }
            v[i] = -radius;
        }
    }
}

/// A primitive form found by search, with its degree-one coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nilpotent {
    pub form: LinearForm,
    pub internal: Vec<BigInt>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NilpotentReport {
    pub k: usize,
    pub forms: Vec<Vec<i64>>,
}

impl NilpotentReport {
    pub fn new(k: usize, found: &[Nilpotent]) -> Self {
        NilpotentReport { k, forms: found.iter().map(|f| f.form.coeffs().to_vec()).collect() }
    }
}

fn canonical(v: &[BigInt]) -> Vec<BigInt> {
    match v.iter().find(|a| !a.is_zero()) {
        Some(a) if a.is_negative() => v.iter().map(|x| -x).collect(),
        _ => v.to_vec(),
    }
}

fn is_primitive(v: &[BigInt]) -> bool {
    v.iter().fold(BigInt::zero(), |g, a| g.gcd(a)) == BigInt::from(1)
}

impl RingPresentation {
    /// Primitive forms in the box, one per element of degree one up to sign.
    fn distinct_primitive(&self, radius: i64) -> Result<Vec<Nilpotent>> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for v in box_vectors(self.ngens(), radius) {
            let form = LinearForm::new(v);
            let w = self.internal(&form)?;
            if !is_primitive(&w) || !seen.insert(canonical(&w)) {
                continue;
            }
            out.push(Nilpotent { form, internal: w });
        }
        Ok(out)
    }

    /// Primitive forms of order exactly `k` in the box, up to sign.
    pub fn enumerate_k_nilpotents(&self, k: usize, radius: i64) -> Result<Vec<Nilpotent>> {
        let mut out = Vec::new();
        for cand in self.distinct_primitive(radius)? {
            if self.algebra.nilpotence_order_capped(&cand.internal, k)? == Some(k) {
                out.push(cand);
            }
        }
        Ok(out)
    }

    /// Smallest order of a nonzero form in the box, with all primitive
    /// witnesses up to sign. With no nonzero forms the answer is `(1, [])`.
    pub fn min_nilpotence(&self, radius: i64) -> Result<(usize, Vec<Nilpotent>)> {
        let mut best = usize::MAX;
        let mut witnesses = Vec::new();
        for cand in self.distinct_primitive(radius)? {
            if let Some(o) = self.algebra.nilpotence_order_capped(&cand.internal, best)? {
                if o < best {
                    best = o;
                    witnesses.clear();
                }
                witnesses.push(cand);
            }
        }
        if witnesses.is_empty() {
            return Ok((1, witnesses));
        }
        Ok((best, witnesses))
    }

    /// Order of every distinct primitive form in the box, sorted.
    pub fn order_spectrum(&self, radius: i64) -> Result<Vec<usize>> {
        let mut out = self
            .distinct_primitive(radius)?
            .iter()
            .map(|c| self.algebra.nilpotence_order(&c.internal))
            .collect::<Result<Vec<_>>>()?;
        out.sort_unstable();
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomring::build_ring;
    use crate::partition::Partition;

    fn forms(r: &RingPresentation, k: usize, radius: i64) -> Vec<Vec<i64>> {
        let mut f: Vec<_> = r.enumerate_k_nilpotents(k, radius).unwrap().into_iter().map(|n| n.form.coeffs().to_vec()).collect();
        f.sort();
        f
    }

    #[test]
    fn box_order() {
        let b = box_vectors(2, 1);
        assert_eq!(b, vec![vec![0, 1], vec![1, 0], vec![1, -1], vec![1, 1]]);
        assert_eq!(box_vectors(3, 2).len(), (125 - 1) / 2);
    }

    #[test]
    fn small_classifications() {
        let r = build_ring(&Partition::parse("3,3,3").unwrap()).unwrap();
        assert_eq!(forms(&r, 3, 3), vec![vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]]);
        let r = build_ring(&Partition::parse("2,3").unwrap()).unwrap();
        assert_eq!(forms(&r, 2, 3), vec![vec![1, 0], vec![1, 2]]);
        let r = build_ring(&Partition::parse("4,5,6").unwrap()).unwrap();
        assert_eq!(forms(&r, 4, 2), vec![vec![1, 0, 0]]);
        let (k, w) = r.min_nilpotence(2).unwrap();
        assert_eq!((k, w.len()), (4, 1));
        let point = build_ring(&Partition::parse("1,2").unwrap()).unwrap();
        assert_eq!(point.min_nilpotence(2).unwrap().0, 1);
        let json = serde_json::to_string(&NilpotentReport::new(4, &w)).unwrap();
        assert_eq!(json, r#"{"k":4,"forms":[[1,0,0]]}"#);
    }
}
