//! Partitions stored in weakly increasing order, their Ferrers-board
//! invariants, and the splitting into indecomposable components.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A weakly increasing sequence of positive parts `λ₁ ≤ λ₂ ≤ … ≤ λₙ`.
///
/// Row `i` (1-indexed) of the Ferrers board has `λᵢ` cells; row 1 is the
/// bottom row.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Builds a partition, dropping zero parts. Fails unless the nonzero
    /// parts are weakly increasing.
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        let parts: Vec<u32> = parts.into_iter().filter(|&p| p > 0).collect();
        if let Some(i) = parts.windows(2).position(|w| w[0] > w[1]) {
            return Err(Error::NotWeaklyIncreasing(i + 2));
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// Parses `"2,4,4,5,5"`. Whitespace around tokens is ignored and the
    /// empty string is the empty partition.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        let text = text
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .unwrap_or(text);
        if text.trim().is_empty() {
            return Ok(Partition::empty());
        }
        let parts = text
            .split(',')
            .map(|tok| {
                let tok = tok.trim();
                tok.parse::<u32>().map_err(|_| Error::Parse(tok.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// Number of rows `n`.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `λᵢ` with 1-based `i`.
    pub fn part(&self, i: usize) -> u32 {
        self.0[i - 1]
    }

    pub fn largest(&self) -> u32 {
        self.0.last().copied().unwrap_or(0)
    }

    pub fn size(&self) -> u64 {
        self.0.iter().map(|&p| p as u64).sum()
    }

    /// `λᵢ ≥ i` for every row; otherwise the variety is empty.
    pub fn board_valid(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &p)| p as usize > i)
    }

    pub fn check_board(&self) -> Result<()> {
        match self.0.iter().enumerate().find(|(i, &p)| (p as usize) <= *i) {
            Some((i, &p)) => Err(Error::InvalidBoard { row: i + 1, part: p }),
            None => Ok(()),
        }
    }

    /// Row indices `k` with `λ_k = k`.
    pub fn split_rows(&self) -> Vec<usize> {
        (1..=self.len()).filter(|&k| self.part(k) as usize == k).collect()
    }

    /// True iff `λ_k ≠ k` for every `k`.
    pub fn is_indecomposable(&self) -> Result<bool> {
        self.check_board()?;
        Ok(self.split_rows().is_empty())
    }

    /// The pieces between consecutive split rows, in order, each shifted
    /// down by its offset. Empty pieces are kept so that
    /// [`Partition::reassemble`] inverts this exactly.
    pub fn segments(&self) -> Result<Vec<Segment>> {
        self.check_board()?;
        let mut out = Vec::new();
        let mut offset = 0usize;
        for k in self.split_rows() {
            let rows = self.0[offset..k - 1]
                .iter()
                .map(|&p| p - offset as u32)
                .collect();
            out.push(Segment { offset, rows: Partition(rows) });
            offset = k;
        }
        let rows = self.0[offset..].iter().map(|&p| p - offset as u32).collect();
        out.push(Segment { offset, rows: Partition(rows) });
        Ok(out)
    }

    /// Inverse of [`Partition::segments`]: shifts each piece back up and
    /// re-inserts the split row after every piece but the last.
    pub fn reassemble(segments: &[Segment]) -> Partition {
        let mut parts = Vec::new();
        for (idx, seg) in segments.iter().enumerate() {
            parts.extend(seg.rows.0.iter().map(|&p| p + seg.offset as u32));
            if idx + 1 < segments.len() {
                parts.push(parts.len() as u32 + 1);
            }
        }
        Partition(parts)
    }

    /// The multiset of indecomposable components.
    pub fn decompose(&self) -> Result<ComponentMultiset> {
        let components = self
            .segments()?
            .into_iter()
            .filter(|s| !s.rows.is_empty())
            .map(|s| s.rows)
            .collect();
        Ok(ComponentMultiset::new(components))
    }

    /// For every row, the index of its component and its value there;
    /// `None` for split rows.
    pub fn row_components(&self) -> Result<Vec<Option<(usize, u32)>>> {
        let mut out = vec![None; self.len()];
        let mut comp = 0usize;
        for seg in self.segments()? {
            if seg.rows.is_empty() {
                continue;
            }
            for (j, &p) in seg.rows.parts().iter().enumerate() {
                out[seg.offset + j] = Some((comp, p));
            }
            comp += 1;
        }
        Ok(out)
    }

    /// The smallest indecomposable subpartition with the same number of rows
    /// and the same first row: `μ₁ = … = μ_{k−1} = k` and `μᵢ = i + 1` for
    /// `k ≤ i ≤ n`, where `k = λ₁`. Needs `n ≥ k`.
    pub fn core(&self) -> Result<Partition> {
        if !self.is_indecomposable()? {
            return Err(Error::Decomposable(self.split_rows()[0]));
        }
        let n = self.len();
        let k = self.0.first().copied().unwrap_or(0) as usize;
        if n < k || n == 0 {
            return Err(Error::CoreUndefined { rows: n, needed: k.max(1) });
        }
        let parts = (1..=n)
            .map(|i| if i < k { k as u32 } else { i as u32 + 1 })
            .collect();
        Ok(Partition(parts))
    }

    pub fn is_self_core(&self) -> bool {
        matches!(self.core(), Ok(c) if &c == self)
    }

    /// `ν = (λ₂ − 1, …, λₙ − 1)`: remove the bottom row and the first column.
    pub fn strip_first_row_col(&self) -> Result<Partition> {
        if self.is_empty() {
            return Err(Error::EmptyPartition);
        }
        self.check_board()?;
        Partition::new(self.0[1..].iter().map(|&p| p - 1).collect())
    }

    /// `μᵢ ≤ λᵢ` for each row of `μ` (aligned at the bottom).
    pub fn is_subpartition_of(&self, other: &Partition) -> bool {
        self.len() <= other.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// The multiset `{λᵢ − i}`, returned sorted.
    pub fn gjw_invariant(&self) -> Vec<i64> {
        let mut v: Vec<i64> = self
            .0
            .iter()
            .enumerate()
            .map(|(i, &p)| p as i64 - (i as i64 + 1))
            .collect();
        v.sort_unstable();
        v
    }

    /// Rook equivalence for boards with the same number of rows.
    pub fn rook_equivalent(&self, other: &Partition) -> Result<bool> {
        if self.len() != other.len() {
            return Err(Error::RowCountMismatch(self.len(), other.len()));
        }
        Ok(self.gjw_invariant() == other.gjw_invariant())
    }

    /// The unique strictly increasing partition in the rook-equivalence class.
    pub fn strict_representative(&self) -> Result<Partition> {
        self.check_board()?;
        let parts = self
            .gjw_invariant()
            .into_iter()
            .enumerate()
            .map(|(i, s)| (s + i as i64 + 1) as u32)
            .collect();
        Ok(Partition(parts))
    }

    /// `wᵢ = max({1,…,λᵢ} ∖ {w₁,…,w_{i−1}})` in `S_size`. Rows past `n` have
    /// length `size`, which gives the maximal coset representative and agrees
    /// with padding by rows of length `λₙ` when `size = λₙ`.
    pub fn schubert_permutation(&self, size: usize) -> Result<Permutation> {
        self.check_board()?;
        if size < self.largest() as usize || size < self.len() {
            return Err(Error::PermutationTooSmall { size, longest: self.largest() });
        }
        let mut used = vec![false; size + 1];
        let mut w = Vec::with_capacity(size);
        for i in 0..size {
            let bound = if i < self.len() { self.0[i] as usize } else { size };
            let pick = (1..=bound).rev().find(|&c| !used[c]).ok_or(Error::InvalidBoard {
                row: i + 1,
                part: bound as u32,
            })?;
            used[pick] = true;
            w.push(pick);
        }
        Ok(Permutation(w))
    }

    /// Every partition with at most `max_rows` rows and parts at most
    /// `max_part` (the empty partition included), in a fixed order.
    pub fn family(max_rows: usize, max_part: u32) -> Vec<Partition> {
        fn extend(cur: &mut Vec<u32>, max_rows: usize, max_part: u32, out: &mut Vec<Partition>) {
            out.push(Partition(cur.clone()));
            if cur.len() == max_rows {
                return;
            }
            let lo = cur.last().copied().unwrap_or(1);
            for p in lo..=max_part {
                cur.push(p);
                extend(cur, max_rows, max_part, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        extend(&mut Vec::new(), max_rows, max_part, &mut out);
        out
    }

    /// Board-valid members of [`Partition::family`] with at least one row.
    pub fn valid_family(max_rows: usize, max_part: u32) -> Vec<Partition> {
        Partition::family(max_rows, max_part)
            .into_iter()
            .filter(|p| !p.is_empty() && p.board_valid())
            .collect()
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Vec<u32> {
        p.0
    }
}

impl FromStr for Partition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Partition::parse(s)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// One piece of a partition between split rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Segment {
    /// Number of rows (and columns) below and left of this piece.
    pub offset: usize,
    pub rows: Partition,
}

/// Unordered collection of indecomposable partitions. Keeps the order in
/// which components were found for display; equality ignores order.
#[derive(Debug, Clone, Eq, Serialize)]
#[serde(transparent)]
pub struct ComponentMultiset(Vec<Partition>);

impl ComponentMultiset {
    pub fn new(components: Vec<Partition>) -> Self {
        ComponentMultiset(components)
    }

    pub fn components(&self) -> &[Partition] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sorted(&self) -> Vec<Partition> {
        let mut v = self.0.clone();
        v.sort();
        v
    }
}

impl PartialEq for ComponentMultiset {
    fn eq(&self, other: &Self) -> bool {
        self.sorted() == other.sorted()
    }
}

impl fmt::Display for ComponentMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// A permutation in one-line notation with values `1..=N`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(values: Vec<usize>) -> Result<Self> {
        let n = values.len();
        let mut seen = vec![false; n + 1];
        for &v in &values {
            if v == 0 || v > n || seen[v] {
                return Err(Error::Unsupported(format!("{values:?} is not a permutation")));
            }
            seen[v] = true;
        }
        Ok(Permutation(values))
    }

    pub fn values(&self) -> &[usize] {
        &self.0
    }

    /// No `i < j < k` with `wᵢ > w_k > w_j`.
    pub fn is_312_avoiding(&self) -> bool {
        let w = &self.0;
        let n = w.len();
        // For each j, the smallest value to its left that exceeds w[j]
        // must not have a value between them to the right.
        for j in 0..n {
            for i in 0..j {
                if w[i] <= w[j] {
                    continue;
                }
                if w[j + 1..].iter().any(|&x| w[i] > x && x > w[j]) {
                    return false;
                }
            }
        }
        true
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.len() <= 9 {
            let s: String = self.0.iter().map(|v| v.to_string()).collect();
            f.write_str(&s)
        } else {
            let s: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
            f.write_str(&s.join(" "))
        }
    }
}
