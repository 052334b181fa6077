//! Finding every occurrence of a rank pattern in a series.
//!
//! The fast path filters by up/down encoding, runs an exact binary matcher,
//! then verifies each candidate window's full relative order. A naive
//! sliding-window matcher serves as the independent oracle.

mod sbndm;

use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pattern::{relative_order, RankPattern};

/// Up/down encoding: bit `i` is 1 iff `x[i] < x[i+1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinarySequence(Vec<u8>);

impl BinarySequence {
    pub fn bits(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl From<Vec<u8>> for BinarySequence {
    fn from(bits: Vec<u8>) -> Self {
        debug_assert!(bits.iter().all(|&b| b <= 1));
        BinarySequence(bits)
    }
}

/// Strictly increasing 1-based end positions of a pattern's occurrences.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct OccurrenceList(Vec<usize>);

impl OccurrenceList {
    pub fn new() -> Self {
        OccurrenceList(Vec::new())
    }

    /// Panics in debug builds if `ends` is not strictly increasing.
    pub fn from_sorted(ends: Vec<usize>) -> Self {
        debug_assert!(ends.windows(2).all(|w| w[0] < w[1]), "{ends:?}");
        OccurrenceList(ends)
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<usize> {
        self.0
    }

    pub(crate) fn push(&mut self, end: usize) {
        debug_assert!(self.0.last().is_none_or(|&l| l < end));
        self.0.push(end);
    }
}

impl Deref for OccurrenceList {
    type Target = [usize];

    fn deref(&self) -> &[usize] {
        &self.0
    }
}

fn encode<T: PartialOrd>(x: &[T]) -> Result<BinarySequence> {
    if x.len() < 2 {
        return Err(Error::Contract(
            "binary encoding needs at least two values".into(),
        ));
    }
    Ok(BinarySequence(
        x.windows(2).map(|w| u8::from(w[0] < w[1])).collect(),
    ))
}

pub fn filtration_encode(x: &[f64]) -> Result<BinarySequence> {
    encode(x)
}

pub fn filtration_encode_pattern(p: &RankPattern) -> Result<BinarySequence> {
    encode(p.ranks())
}

/// 1-based end positions `j` in `b` with `b[j-|d|+1..=j] == d`.
pub fn binary_match_all(b: &BinarySequence, d: &BinarySequence) -> Vec<usize> {
    sbndm::find_all(&b.0, &d.0)
        .into_iter()
        .map(|end| end + 1)
        .collect()
}

/// Checks one window against a pattern by walking its values in rank order.
pub struct WindowVerifier<'p> {
    pattern: &'p RankPattern,
    by_rank: Vec<usize>,
}

impl<'p> WindowVerifier<'p> {
    pub fn new(pattern: &'p RankPattern) -> Self {
        WindowVerifier {
            pattern,
            by_rank: pattern.by_rank(),
        }
    }

    /// Whether the window of `pattern.len()` values ending at the 1-based
    /// position `end` is strictly ordered as the pattern says.
    pub fn matches(&self, k: &[f64], end: usize) -> bool {
        let m = self.pattern.len();
        if end < m || end > k.len() {
            return false;
        }
        let window = &k[end - m..end];
        self.by_rank
            .windows(2)
            .all(|pair| window[pair[0]] < window[pair[1]])
    }
}

pub fn verify_window(k: &[f64], end: usize, p: &RankPattern) -> bool {
    WindowVerifier::new(p).matches(k, end)
}

/// Work done by one filtered match, for instrumentation.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct MatchStats {
    pub candidates: u64,
}

/// Filter, binary-match and verify. Requires `p.len() >= 2`.
pub fn fav_occurrences(k: &[f64], p: &RankPattern) -> Result<OccurrenceList> {
    fav_occurrences_counted(k, p).map(|(occ, _)| occ)
}

pub fn fav_occurrences_counted(k: &[f64], p: &RankPattern) -> Result<(OccurrenceList, MatchStats)> {
    let d = filtration_encode_pattern(p)?;
    if k.len() < p.len() {
        return Ok((OccurrenceList::new(), MatchStats::default()));
    }
    let b = filtration_encode(k)?;
    let verifier = WindowVerifier::new(p);
    let candidates = binary_match_all(&b, &d);
    let stats = MatchStats {
        candidates: candidates.len() as u64,
    };
    let ends = candidates
        .into_iter()
        .map(|j| j + 1)
        .filter(|&end| verifier.matches(k, end))
        .collect();
    Ok((OccurrenceList(ends), stats))
}

/// Slides a window over `k` and recomputes each window's relative order.
/// Windows containing ties never match.
pub fn oracle_occurrences(k: &[f64], p: &RankPattern) -> OccurrenceList {
    let m = p.len();
    if m == 0 || k.len() < m {
        return OccurrenceList::new();
    }
    OccurrenceList(
        k.windows(m)
            .enumerate()
            .filter(|(_, w)| relative_order(w).is_ok_and(|r| r == *p))
            .map(|(start, _)| start + m)
            .collect(),
    )
}
