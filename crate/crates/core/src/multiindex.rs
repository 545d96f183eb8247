//! H-types of homaloidal nets and the Noether equations.
//!
//! A multi-index `ν = (ν_1, …, ν_{d-1})` of degree `d` counts base points by
//! multiplicity: `ν_i` points of multiplicity `i`. This module never touches
//! geometry.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MultiIndexError {
    #[error("degree must be at least 2, got {0}")]
    DegreeTooSmall(i64),
    #[error("degree {degree} needs {expected} entries, got {found}")]
    WrongLength {
        degree: u32,
        expected: usize,
        found: usize,
    },
    #[error("entry nu_{index} is negative ({value})")]
    NegativeEntry { index: usize, value: i64 },
    #[error("all entries are zero")]
    EmptyMultiIndex,
}

/// The H-type `(ν_1, …, ν_{d-1})` together with its degree `d ≥ 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<u32>")]
pub struct MultiIndex {
    degree: u32,
    counts: Vec<u32>,
}

/// Outcome of checking `Σ i²ν_i = d² − 1` and then `Σ iν_i = 3(d − 1)`.
///
/// Deficits are `lhs − rhs`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NoetherStatus {
    Ok,
    SelfIntersectionMismatch(i64),
    GenusMismatch(i64),
}

impl NoetherStatus {
    pub fn is_ok(&self) -> bool {
        matches!(self, NoetherStatus::Ok)
    }
}

/// Multiplicities `m_1 ≥ m_2 ≥ … ≥ m_r > 0` of the base points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MultiplicityProfile(Vec<u32>);

impl MultiplicityProfile {
    pub fn values(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sum(&self) -> u64 {
        self.0.iter().map(|&m| m as u64).sum()
    }

    pub fn sum_of_squares(&self) -> u64 {
        self.0.iter().map(|&m| (m as u64).pow(2)).sum()
    }
}

impl MultiIndex {
    /// Validates `counts` for degree `d`: exactly `d − 1` non-negative entries.
    pub fn new(d: i64, counts: &[i64]) -> Result<MultiIndex, MultiIndexError> {
        if d < 2 {
            return Err(MultiIndexError::DegreeTooSmall(d));
        }
        let expected = (d - 1) as usize;
        if counts.len() != expected {
            return Err(MultiIndexError::WrongLength {
                degree: d as u32,
                expected,
                found: counts.len(),
            });
        }
        let mut out = Vec::with_capacity(expected);
        for (i, &v) in counts.iter().enumerate() {
            if v < 0 {
                return Err(MultiIndexError::NegativeEntry {
                    index: i + 1,
                    value: v,
                });
            }
            out.push(v as u32);
        }
        Ok(MultiIndex {
            degree: d as u32,
            counts: out,
        })
    }

    /// Degree inferred from the length: `d = 1 + #ν`.
    pub fn from_counts(counts: &[i64]) -> Result<MultiIndex, MultiIndexError> {
        MultiIndex::new(counts.len() as i64 + 1, counts)
    }

    pub(crate) fn from_raw(degree: u32, counts: Vec<u32>) -> MultiIndex {
        debug_assert_eq!(counts.len() + 1, degree as usize);
        MultiIndex { degree, counts }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    /// `ν_i` for `1 ≤ i ≤ d − 1`, and 0 outside that range.
    pub fn nu(&self, i: usize) -> u32 {
        if i == 0 {
            0
        } else {
            self.counts.get(i - 1).copied().unwrap_or(0)
        }
    }

    fn weighted_sum(&self, weight: impl Fn(i64) -> i64) -> i64 {
        self.counts
            .iter()
            .enumerate()
            .map(|(k, &v)| weight(k as i64 + 1) * v as i64)
            .sum()
    }

    pub fn noether_status(&self) -> NoetherStatus {
        let d = self.degree as i64;
        let self_int = self.weighted_sum(|i| i * i) - (d * d - 1);
        if self_int != 0 {
            return NoetherStatus::SelfIntersectionMismatch(self_int);
        }
        let genus = self.weighted_sum(|i| i) - 3 * (d - 1);
        if genus != 0 {
            return NoetherStatus::GenusMismatch(genus);
        }
        NoetherStatus::Ok
    }

    /// Multiplicity profile: `m_i = max{ j : Σ_{k≥j} ν_k > i − 1 }`, i.e. the
    /// value `j` repeated `ν_j` times, from the highest `j` down.
    pub fn multiplicities(&self) -> Result<MultiplicityProfile, MultiIndexError> {
        let mut out = Vec::with_capacity(self.reduced_length() as usize);
        for (k, &v) in self.counts.iter().enumerate().rev() {
            out.extend(std::iter::repeat_n(k as u32 + 1, v as usize));
        }
        if out.is_empty() {
            return Err(MultiIndexError::EmptyMultiIndex);
        }
        Ok(MultiplicityProfile(out))
    }

    /// `r = Σ ν_i`, the number of base points.
    pub fn reduced_length(&self) -> u64 {
        self.counts.iter().map(|&v| v as u64).sum()
    }

    /// `ρ = Σ i(i+1)ν_i / 2`, the number of linear conditions.
    pub fn length(&self) -> u64 {
        self.weighted_sum(|i| i * (i + 1) / 2) as u64
    }

    /// `(2d − 2, 0, …, 0, 1)`, or `(3)` when `d = 2`.
    pub fn is_de_jonquieres(&self) -> bool {
        let d = self.degree as usize;
        if d == 2 {
            return self.counts == [3];
        }
        let last = self.counts.len() - 1;
        self.counts.iter().enumerate().all(|(k, &v)| match k {
            0 => v as usize == 2 * d - 2,
            k if k == last => v == 1,
            _ => v == 0,
        })
    }

    /// Exactly one nonzero entry.
    pub fn is_symmetric(&self) -> bool {
        self.counts.iter().filter(|&&v| v != 0).count() == 1
    }

    /// `(d − 1)(2d − 1) = Σ i(d − i)ν_i`, a consequence of the Noether equations.
    pub fn check_identity_2dm1(&self) -> bool {
        let d = self.degree as i64;
        (d - 1) * (2 * d - 1) == self.weighted_sum(|i| i * (d - i))
    }
}

impl TryFrom<Vec<i64>> for MultiIndex {
    type Error = MultiIndexError;

    fn try_from(counts: Vec<i64>) -> Result<Self, Self::Error> {
        MultiIndex::from_counts(&counts)
    }
}

impl From<MultiIndex> for Vec<u32> {
    fn from(value: MultiIndex) -> Self {
        value.counts
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.counts.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// All non-negative solutions of the Noether equations for degree `d`,
/// ordered lexicographically decreasing on `(ν_{d−1}, …, ν_1)`.
///
/// Nested search from the highest index down; each `ν_i` is bounded by the
/// remaining budgets of both sums, and a branch is cut when the remaining
/// budgets `(s1, s2)` cannot be met with indices `≤ i`, which needs
/// `s1 ≤ s2 ≤ i·s1`.
pub fn enumerate_noether(d: u32) -> Vec<MultiIndex> {
    assert!(d >= 2, "enumerate_noether needs d >= 2");
    let d64 = d as u64;
    let mut out = Vec::new();
    let mut counts = vec![0u32; (d - 1) as usize];
    search(
        (d - 1) as usize,
        3 * (d64 - 1),
        d64 * d64 - 1,
        &mut counts,
        d,
        &mut out,
    );
    out
}

fn search(i: usize, s1: u64, s2: u64, counts: &mut [u32], d: u32, out: &mut Vec<MultiIndex>) {
    if i == 1 {
        if s1 == s2 {
            counts[0] = s1 as u32;
            out.push(MultiIndex::from_raw(d, counts.to_vec()));
            counts[0] = 0;
        }
        return;
    }
    let w1 = i as u64;
    let w2 = w1 * w1;
    let max = (s1 / w1).min(s2 / w2);
    for v in (0..=max).rev() {
        let r1 = s1 - v * w1;
        let r2 = s2 - v * w2;
        let below = (i - 1) as u64;
        if r2 < r1 || r2 > below * r1 {
            continue;
        }
        counts[i - 1] = v as u32;
        search(i - 1, r1, r2, counts, d, out);
    }
    counts[i - 1] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mi(counts: &[i64]) -> MultiIndex {
        MultiIndex::from_counts(counts).unwrap()
    }

    #[test]
    fn construction() {
        assert!(MultiIndex::new(2, &[3]).is_ok());
        assert!(MultiIndex::new(3, &[4, 1]).is_ok());
        assert_eq!(
            MultiIndex::new(3, &[4, 1, 0]),
            Err(MultiIndexError::WrongLength {
                degree: 3,
                expected: 2,
                found: 3
            })
        );
        assert_eq!(
            MultiIndex::new(3, &[4, -1]),
            Err(MultiIndexError::NegativeEntry {
                index: 2,
                value: -1
            })
        );
        assert_eq!(
            MultiIndex::new(1, &[]),
            Err(MultiIndexError::DegreeTooSmall(1))
        );
    }

    #[test]
    fn noether_examples() {
        assert_eq!(mi(&[0, 6, 0, 0]).noether_status(), NoetherStatus::Ok);
        assert_eq!(mi(&[3, 3, 0]).noether_status(), NoetherStatus::Ok);
        // (1,0), d=3: 1 - 8
        assert_eq!(
            mi(&[1, 0]).noether_status(),
            NoetherStatus::SelfIntersectionMismatch(-7)
        );
        // passes the first equation, fails the second: (0,2) at d=3 has Σi²ν = 8, Σiν = 4
        assert_eq!(
            mi(&[0, 2]).noether_status(),
            NoetherStatus::GenusMismatch(-2)
        );
    }

    #[test]
    fn multiplicity_examples() {
        assert_eq!(
            mi(&[4, 1]).multiplicities().unwrap().values(),
            &[2, 1, 1, 1, 1]
        );
        assert_eq!(
            mi(&[0, 6, 0, 0]).multiplicities().unwrap().values(),
            &[2, 2, 2, 2, 2, 2]
        );
        assert_eq!(
            mi(&[6, 0, 1]).multiplicities().unwrap().values(),
            &[3, 1, 1, 1, 1, 1, 1]
        );
        assert_eq!(
            mi(&[0, 0, 0]).multiplicities(),
            Err(MultiIndexError::EmptyMultiIndex)
        );
    }

    #[test]
    fn lengths() {
        let q = mi(&[3]);
        assert_eq!((q.reduced_length(), q.length()), (3, 3));
        let a = mi(&[6, 0, 1]);
        assert_eq!((a.reduced_length(), a.length()), (7, 12));
        let b = mi(&[8, 0, 0, 1]);
        assert_eq!((b.reduced_length(), b.length()), (9, 18));
    }

    #[test]
    fn enumeration_small_degrees() {
        assert_eq!(enumerate_noether(2), vec![mi(&[3])]);
        assert_eq!(enumerate_noether(3), vec![mi(&[4, 1])]);
        assert_eq!(enumerate_noether(4), vec![mi(&[6, 0, 1]), mi(&[3, 3, 0])]);
        assert_eq!(
            enumerate_noether(5),
            vec![
                mi(&[8, 0, 0, 1]),
                mi(&[6, 0, 2, 0]),
                mi(&[3, 3, 1, 0]),
                mi(&[0, 6, 0, 0])
            ]
        );
        assert_eq!(enumerate_noether(6).len(), 5);
    }

    #[test]
    fn classification_flags() {
        assert!(mi(&[8, 0, 0, 1]).is_de_jonquieres());
        assert!(mi(&[3]).is_de_jonquieres());
        assert!(mi(&[0, 6, 0, 0]).is_symmetric());
        let t = mi(&[3, 3, 0]);
        assert!(!t.is_de_jonquieres() && !t.is_symmetric());
    }

    #[test]
    fn identity_2dm1() {
        assert!(mi(&[3]).check_identity_2dm1());
        assert!(mi(&[6, 0, 1]).check_identity_2dm1());
        assert!(mi(&[0, 6, 0, 0]).check_identity_2dm1());
        assert!(!mi(&[1, 0]).check_identity_2dm1());
    }

    #[test]
    fn serde_form() {
        let m = mi(&[6, 0, 1]);
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, "[6,0,1]");
        let back: MultiIndex = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
        assert!(serde_json::from_str::<MultiIndex>("[-1,2]").is_err());
    }
}
