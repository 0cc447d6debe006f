//! Desk-scale verification suites run by `partvar verify`.
//!
//! Each check sweeps a bounded family of partitions and compares two
//! independent computations of the same quantity.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::Serialize;

use crate::classify::{field_iso_check, obfuscation_matrix, recover_partition, tensor_nilpotence, RecoveryParams};
use crate::cohomring::{bases, build_ring, build_self_core_ring};
use crate::error::{Error, Result};
use crate::groebner::{all_standard_monomials, hilbert_series, ideals_equal};
use crate::partition::Partition;
use crate::polyring::LinearForm;
use crate::rookcomb::{product_formula, q_rook_polynomial, rook_number, FerrersBoard, QPolynomial};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Rook,
    Groebner,
    Nilpotence,
    Classify,
    All,
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "rook" => Suite::Rook,
            "groebner" => Suite::Groebner,
            "nilpotence" => Suite::Nilpotence,
            "classify" => Suite::Classify,
            "all" => Suite::All,
            _ => return Err(Error::Parse(format!("unknown suite '{s}'"))),
        })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Rook => "rook",
            Suite::Groebner => "groebner",
            Suite::Nilpotence => "nilpotence",
            Suite::Classify => "classify",
            Suite::All => "all",
        })
    }
}

/// Outcome of one check over the family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub suite: String,
    pub name: String,
    pub cases: usize,
    /// Failing cases, at most a handful kept.
    pub failures: Vec<String>,
    pub failed: usize,
}

impl Check {
    fn new(suite: Suite, name: &str) -> Self {
        Check { suite: suite.to_string(), name: name.into(), cases: 0, failures: Vec::new(), failed: 0 }
    }

    fn record(&mut self, ok: bool, case: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < 5 {
                self.failures.push(case());
            }
        }
    }

    /// Errors count as failures of the case they came from.
    fn record_result(&mut self, ok: Result<bool>, case: impl FnOnce() -> String) {
        match ok {
            Ok(b) => self.record(b, case),
            Err(e) => self.record(false, || format!("{}: {e}", case())),
        }
    }

    pub fn passed(&self) -> bool {
        self.failed == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub max_rows: usize,
    pub max_part: u32,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    /// One aligned line per check.
    pub fn table(&self) -> String {
        let width = self.checks.iter().map(|c| c.suite.len() + c.name.len() + 1).max().unwrap_or(0);
        let mut out = String::new();
        for c in &self.checks {
            let label = format!("{}/{}", c.suite, c.name);
            let status = if c.passed() { "PASS" } else { "FAIL" };
            out.push_str(&format!("{label:<width$}  {status}  {}/{}\n", c.cases - c.failed, c.cases));
            for f in &c.failures {
                out.push_str(&format!("    {f}\n"));
            }
        }
        out
    }
}

/// Runs `suite` over partitions with at most `max_rows` rows and parts at
/// most `max_part`. `seed` drives the changes of coordinates in recovery.
pub fn run(suite: Suite, max_rows: usize, max_part: u32, seed: u64) -> Result<VerifyReport> {
    let family = Partition::valid_family(max_rows, max_part);
    let mut checks = Vec::new();
    if matches!(suite, Suite::Rook | Suite::All) {
        checks.extend(rook_suite(&family));
    }
    if matches!(suite, Suite::Groebner | Suite::All) {
        checks.extend(groebner_suite(&family, max_rows, max_part)?);
    }
    if matches!(suite, Suite::Nilpotence | Suite::All) {
        checks.extend(nilpotence_suite(&family));
    }
    if matches!(suite, Suite::Classify | Suite::All) {
        checks.extend(classify_suite(&family, seed));
    }
    Ok(VerifyReport { max_rows, max_part, checks })
}

fn rook_vector(b: &FerrersBoard, n: usize) -> Vec<BigInt> {
    (0..=n).map(|k| rook_number(b, k)).collect()
}

fn rook_suite(family: &[Partition]) -> Vec<Check> {
    let s = Suite::Rook;
    let mut product = Check::new(s, "q-rook-product");
    let mut transpose = Check::new(s, "transpose-invariance");
    let mut recurrence = Check::new(s, "delete-row-recurrence");
    let mut gjw = Check::new(s, "gjw-equivalence");
    let mut vectors: BTreeMap<usize, Vec<(&Partition, Vec<BigInt>)>> = BTreeMap::new();
    for lam in family {
        let n = lam.len();
        let board = FerrersBoard::from_partition(lam);
        let q = q_rook_polynomial(&board, n);
        product.record(product_formula(lam).is_ok_and(|p| p == q), || lam.to_string());
        let rv = rook_vector(&board, n);
        transpose.record(rv == rook_vector(&board.transpose(), n), || lam.to_string());
        if n >= 2 {
            let smaller = FerrersBoard::new(lam.parts()[..n - 1].to_vec()).expect("prefix of a partition");
            let last = BigInt::from(lam.part(n));
            let ok = (1..=n).all(|k| {
                rook_number(&board, k)
                    == rook_number(&smaller, k) + (&last - BigInt::from(k) + 1) * rook_number(&smaller, k - 1)
            });
            recurrence.record(ok, || lam.to_string());
        }
        vectors.entry(n).or_default().push((lam, rv));
    }
    for group in vectors.values() {
        for (i, (a, ra)) in group.iter().enumerate() {
            for (b, rb) in &group[i + 1..] {
                gjw.record_result(a.rook_equivalent(b).map(|e| e == (ra == rb)), || format!("{a} vs {b}"));
            }
        }
    }
    vec![product, transpose, recurrence, gjw]
}

fn groebner_suite(family: &[Partition], max_rows: usize, max_part: u32) -> Result<Vec<Check>> {
    let s = Suite::Groebner;
    let mut hilbert = Check::new(s, "hilbert-series");
    let mut standard = Check::new(s, "standard-basis-certified");
    let mut hook = Check::new(s, "hook-basis");
    let mut core = Check::new(s, "self-core-basis");
    let mut sticky = Check::new(s, "stickiness");
    let mut strip = Check::new(s, "quotient-by-x1");
    for lam in family {
        let name = || lam.to_string();
        hilbert.record_result(
            build_ring(lam).and_then(|r| Ok(r.hilbert_series() == product_formula(lam)?)),
            name,
        );
        standard.record_result(bases::standard_basis(lam).map(|b| b.certified_groebner()), name);
        if lam.is_self_core() {
            let check = || -> Result<bool> {
                let b = bases::self_core_basis(lam)?;
                Ok(b.certified_groebner() && ideals_equal(&b, &bases::standard_basis(lam)?)?)
            };
            core.record_result(check(), name);
            let sticky_ok = || -> Result<bool> {
                let r = build_self_core_ring(lam)?;
                let b = bases::standard_basis(lam)?;
                for m in all_standard_monomials(&b)?.iter().flatten() {
                    if !r.is_sticky_consistent(m)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            };
            sticky.record_result(sticky_ok(), name);
        }
        if lam.is_indecomposable()? {
            let check = || -> Result<bool> {
                let q = build_ring(lam)?.quotient_by_linear(&LinearForm::variable(1, lam.len()))?;
                let nu = lam.strip_first_row_col()?;
                let want = if nu.is_empty() { QPolynomial::one() } else { product_formula(&nu)? };
                Ok(q.hilbert_series() == want)
            };
            strip.record_result(check(), name);
        }
    }
    for i in 1..=max_rows.min(4) {
        for p in i as u32..=max_part {
            let check = || -> Result<bool> {
                let b = bases::hook_basis(i, p)?;
                let mu = bases::hook_partition(i, p)?;
                Ok(b.certified_groebner()
                    && ideals_equal(&b, &bases::standard_basis(&mu)?)?
                    && hilbert_series(&b)? == product_formula(&mu)?)
            };
            hook.record_result(check(), || format!("i={i} p={p}"));
        }
    }
    Ok(vec![hilbert, standard, hook, core, sticky, strip])
}

fn nilpotence_suite(family: &[Partition]) -> Vec<Check> {
    let s = Suite::Nilpotence;
    let mut rows = Check::new(s, "variable-orders");
    let mut tensor = Check::new(s, "tensor-orders");
    let mut prefix = Check::new(s, "prefix-sum-orders");
    for lam in family {
        let n = lam.len();
        let ring = match build_ring(lam) {
            Ok(r) => r,
            Err(e) => {
                rows.record(false, || format!("{lam}: {e}"));
                continue;
            }
        };
        let comps = match lam.row_components() {
            Ok(c) => c,
            Err(e) => {
                rows.record(false, || format!("{lam}: {e}"));
                continue;
            }
        };
        let order = |f: LinearForm| ring.nilpotence_order(&f);
        let check = || -> Result<bool> {
            for (i, c) in comps.iter().enumerate() {
                if let Some((_, v)) = c {
                    if order(LinearForm::variable(i + 1, n))? != *v as usize {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        };
        rows.record_result(check(), || lam.to_string());
        // One variable from each component: the first row of each.
        let mut firsts: BTreeMap<usize, (usize, u32)> = BTreeMap::new();
        for (i, c) in comps.iter().enumerate() {
            if let Some((comp, v)) = c {
                firsts.entry(*comp).or_insert((i, *v));
            }
        }
        if firsts.len() >= 2 {
            let check = || -> Result<bool> {
                let mut coeffs = vec![0; n];
                for (i, _) in firsts.values() {
                    coeffs[*i] = 1;
                }
                let want = tensor_nilpotence(&firsts.values().map(|(_, v)| *v as usize).collect::<Vec<_>>())?;
                Ok(order(LinearForm::new(coeffs))? == want)
            };
            tensor.record_result(check(), || lam.to_string());
        }
        let k = lam.part(1) as usize;
        if k >= 2 && n + 1 >= k && lam.is_indecomposable().unwrap_or(false) {
            // With k = λ₁: (x₁ + ⋯ + x_{k−1})^k = 0 iff λ₁ = ⋯ = λ_{k−1} = k.
            let check = || -> Result<bool> {
                let coeffs = (1..=n).map(|i| i64::from(i < k)).collect();
                let flat = lam.parts()[..k - 1].iter().all(|&p| p as usize == k);
                Ok((order(LinearForm::new(coeffs))? <= k) == flat)
            };
            prefix.record_result(check(), || lam.to_string());
        }
    }
    vec![rows, tensor, prefix]
}

fn classify_suite(family: &[Partition], seed: u64) -> Vec<Check> {
    let s = Suite::Classify;
    let mut roundtrip = Check::new(s, "decompose-reassemble");
    let mut plain = Check::new(s, "recover-standard");
    let mut hidden = Check::new(s, "recover-obfuscated");
    let mut field = Check::new(s, "field-isomorphism");
    let params = RecoveryParams::default();
    for lam in family {
        roundtrip.record_result(lam.segments().map(|s| Partition::reassemble(&s) == *lam), || lam.to_string());
        if !lam.is_indecomposable().unwrap_or(false) {
            continue;
        }
        plain.record_result(
            build_ring(lam).and_then(|r| Ok(recover_partition(&r, &params)?.partition == *lam)),
            || lam.to_string(),
        );
        let check = || -> Result<bool> {
            let a = obfuscation_matrix(lam.len(), seed);
            let r = build_ring(lam)?.obfuscate(&a)?;
            let hinted = RecoveryParams { norm_hint: r.norm_hint(), ..params };
            Ok(recover_partition(&r, &hinted)?.partition == *lam)
        };
        hidden.record_result(check(), || format!("{lam} seed {seed}"));
    }
    for parts in [vec![2, 3], vec![2, 2, 4]] {
        let lam = Partition::new(parts).expect("valid");
        for p in [0, 3, 5] {
            field.record_result(
                field_iso_check(&lam, p).map(|w| w.splits && w.cross_isomorphism),
                || format!("{lam} over p={p}"),
            );
        }
    }
    vec![roundtrip, plain, hidden, field]
}
