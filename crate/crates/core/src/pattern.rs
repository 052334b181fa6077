//! Rank patterns (order-preserving patterns) and the arithmetic used to
//! derive, compare and fuse them.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A permutation of `1..=m` giving the relative order of `m` values.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct RankPattern(Vec<usize>);

impl RankPattern {
    /// Validates that `ranks` is a non-empty permutation of `1..=len`.
    pub fn new(ranks: Vec<usize>) -> Result<Self> {
        if ranks.is_empty() {
            return Err(Error::InvalidPattern("empty pattern".into()));
        }
        let m = ranks.len();
        let mut seen = vec![false; m];
        for &r in &ranks {
            if r == 0 || r > m || seen[r - 1] {
                return Err(Error::InvalidPattern(format!(
                    "{ranks:?} is not a permutation of 1..={m}"
                )));
            }
            seen[r - 1] = true;
        }
        Ok(RankPattern(ranks))
    }

    /// Caller guarantees `ranks` is a permutation.
    pub(crate) fn from_ranks_unchecked(ranks: Vec<usize>) -> Self {
        debug_assert!(RankPattern::new(ranks.clone()).is_ok(), "{ranks:?}");
        RankPattern(ranks)
    }

    pub fn ranks(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Positions (0-based) ordered by increasing rank: `by_rank()[r-1]` is
    /// the position holding rank `r`.
    pub fn by_rank(&self) -> Vec<usize> {
        let mut order = vec![0; self.0.len()];
        for (pos, &r) in self.0.iter().enumerate() {
            order[r - 1] = pos;
        }
        order
    }

    /// Appends a new last element with rank `v` (1..=m+1); existing ranks at
    /// or above `v` move up by one.
    pub fn extend_with_rank(&self, v: usize) -> RankPattern {
        debug_assert!((1..=self.len() + 1).contains(&v));
        let mut ranks: Vec<usize> = self
            .0
            .iter()
            .map(|&r| if r >= v { r + 1 } else { r })
            .collect();
        ranks.push(v);
        RankPattern(ranks)
    }
}

impl TryFrom<Vec<usize>> for RankPattern {
    type Error = Error;

    fn try_from(ranks: Vec<usize>) -> Result<Self> {
        RankPattern::new(ranks)
    }
}

impl From<RankPattern> for Vec<usize> {
    fn from(p: RankPattern) -> Vec<usize> {
        p.0
    }
}

impl fmt::Display for RankPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, r) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{r}")?;
        }
        f.write_str(")")
    }
}

/// Accepts `(2,1,4,3)` as well as the bare `2,1,4,3`.
impl FromStr for RankPattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let inner = s
            .strip_prefix('(')
            .and_then(|rest| rest.strip_suffix(')'))
            .unwrap_or(s);
        let ranks = inner
            .split(',')
            .map(|tok| {
                tok.trim().parse::<usize>().map_err(|_| {
                    Error::InvalidPattern(format!("bad rank {:?} in {s:?}", tok.trim()))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        RankPattern::new(ranks)
    }
}

/// Ranks of `q` under strict ordering. Any two equal values are an error.
pub fn relative_order(q: &[f64]) -> Result<RankPattern> {
    if q.is_empty() {
        return Err(Error::InvalidPattern(
            "empty series has no relative order".into(),
        ));
    }
    let mut idx: Vec<usize> = (0..q.len()).collect();
    idx.sort_by(|&a, &b| q[a].partial_cmp(&q[b]).unwrap_or(Ordering::Equal));
    let mut ranks = vec![0; q.len()];
    for (r, pair) in idx.windows(2).enumerate() {
        if q[pair[0]] == q[pair[1]] {
            let (a, b) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
            return Err(Error::Tie(a + 1, b + 1));
        }
        ranks[pair[0]] = r + 1;
    }
    ranks[*idx.last().unwrap()] = q.len();
    Ok(RankPattern(ranks))
}

/// Re-normalises a slice of distinct ranks to a permutation of `1..=len`.
fn compress(ranks: &[usize]) -> RankPattern {
    let mut idx: Vec<usize> = (0..ranks.len()).collect();
    idx.sort_by_key(|&i| ranks[i]);
    let mut out = vec![0; ranks.len()];
    for (r, &i) in idx.iter().enumerate() {
        out[i] = r + 1;
    }
    RankPattern(out)
}

pub fn prefix_order(x: &RankPattern) -> Result<RankPattern> {
    if x.len() < 2 {
        return Err(Error::Contract(format!("prefix order of {x} is undefined")));
    }
    Ok(compress(&x.0[..x.len() - 1]))
}

pub fn suffix_order(x: &RankPattern) -> Result<RankPattern> {
    if x.len() < 2 {
        return Err(Error::Contract(format!("suffix order of {x} is undefined")));
    }
    Ok(compress(&x.0[1..]))
}

/// Lower and upper verification positions (1-based, in `2..=m`) of a
/// pattern relative to its suffix order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundaryPositions {
    /// Unchanged position holding the largest rank below the first element.
    pub lower: Option<usize>,
    /// Changed position holding the smallest rank above the first element.
    pub upper: Option<usize>,
}

pub fn boundary_positions(o: &RankPattern, s: &RankPattern) -> Result<BoundaryPositions> {
    let m = o.len();
    if m < 2 || s.len() + 1 != m {
        return Err(Error::Contract(format!(
            "{s} cannot be the suffix order of {o}"
        )));
    }
    if suffix_order(o)? != *s {
        return Err(Error::Contract(format!(
            "{s} is not the suffix order of {o}"
        )));
    }
    let mut lower: Option<usize> = None;
    let mut upper: Option<usize> = None;
    for j in 1..m {
        let pos = j + 1;
        let rank = o.0[j];
        if s.0[j - 1] == rank {
            if lower.is_none_or(|l| rank > o.0[l - 1]) {
                lower = Some(pos);
            }
        } else if upper.is_none_or(|u| rank < o.0[u - 1]) {
            upper = Some(pos);
        }
    }
    Ok(BoundaryPositions { lower, upper })
}

/// Superpatterns of length `m+1` obtained by fusing a pattern with one of
/// its fusion patterns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Fused {
    /// The first/last relation is forced by the shared middle.
    Single(RankPattern),
    /// First and last fall in the same gap of the middle; `rising` has the
    /// first element below the last, `falling` the opposite.
    Pair {
        rising: RankPattern,
        falling: RankPattern,
    },
}

impl Fused {
    pub fn patterns(&self) -> Vec<&RankPattern> {
        match self {
            Fused::Single(u) => vec![u],
            Fused::Pair { rising, falling } => vec![rising, falling],
        }
    }
}

/// Whether `suffix_order(o) == prefix_order(f)`.
pub fn fusion_compatible(o: &RankPattern, f: &RankPattern) -> bool {
    o.len() == f.len() && o.len() >= 2 && suffix_order(o).ok() == prefix_order(f).ok()
}

/// Builds the superpattern with a fixed relation between its first and last
/// elements. Middle element `i` is `o[i+1]` / `f[i]`.
fn fuse_with(o: &RankPattern, f: &RankPattern, first_below_last: bool) -> RankPattern {
    let m = o.len();
    let first = o.0[0];
    let mut ranks = Vec::with_capacity(m + 1);
    ranks.push(first + usize::from(!first_below_last));
    for i in 0..m - 1 {
        ranks.push(f.0[i] + usize::from(first < o.0[i + 1]));
    }
    ranks.push(f.0[m - 1] + usize::from(first_below_last));
    RankPattern::from_ranks_unchecked(ranks)
}

/// `o ⊕ f`: the length-`m+1` patterns whose prefix order is `o` and whose
/// suffix order is `f`.
pub fn fuse(o: &RankPattern, f: &RankPattern) -> Result<Fused> {
    if !fusion_compatible(o, f) {
        return Err(Error::Contract(format!("{o} and {f} cannot be fused")));
    }
    let (first, last) = (o.0[0], f.0[f.len() - 1]);
    Ok(match first.cmp(&last) {
        Ordering::Equal => Fused::Pair {
            rising: fuse_with(o, f, true),
            falling: fuse_with(o, f, false),
        },
        Ordering::Less => Fused::Single(fuse_with(o, f, true)),
        Ordering::Greater => Fused::Single(fuse_with(o, f, false)),
    })
}

/// Whether the first `o.len()` ranks of `c` have relative order `o`.
pub fn is_prefix_extension(c: &RankPattern, o: &RankPattern) -> bool {
    c.len() >= o.len() && compress(&c.0[..o.len()]) == *o
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(r: &[usize]) -> RankPattern {
        RankPattern::new(r.to_vec()).unwrap()
    }

    #[test]
    fn relative_order_examples() {
        assert_eq!(
            relative_order(&[5., 3., 13., 8.]).unwrap(),
            p(&[2, 1, 4, 3])
        );
        assert_eq!(relative_order(&[7.]).unwrap(), p(&[1]));
        assert!(matches!(relative_order(&[4., 4.]), Err(Error::Tie(1, 2))));
        assert!(matches!(
            relative_order(&[1., 9., 3., 9.]),
            Err(Error::Tie(2, 4))
        ));
    }

    #[test]
    fn prefix_and_suffix_orders() {
        assert_eq!(suffix_order(&p(&[2, 1, 4, 3])).unwrap(), p(&[1, 3, 2]));
        assert_eq!(prefix_order(&p(&[2, 1, 4, 3])).unwrap(), p(&[2, 1, 3]));
        assert_eq!(suffix_order(&p(&[1, 2])).unwrap(), p(&[1]));
        assert!(suffix_order(&p(&[1])).is_err());
        assert!(prefix_order(&p(&[1])).is_err());
    }

    #[test]
    fn boundary_examples() {
        let b = boundary_positions(&p(&[2, 1, 4, 3]), &p(&[1, 3, 2])).unwrap();
        assert_eq!(
            b,
            BoundaryPositions {
                lower: Some(2),
                upper: Some(4)
            }
        );
        let b = boundary_positions(&p(&[4, 1, 3, 2]), &p(&[1, 3, 2])).unwrap();
        assert_eq!(
            b,
            BoundaryPositions {
                lower: Some(3),
                upper: None
            }
        );
        let b = boundary_positions(&p(&[1, 2]), &p(&[1])).unwrap();
        assert_eq!(
            b,
            BoundaryPositions {
                lower: None,
                upper: Some(2)
            }
        );
        assert!(boundary_positions(&p(&[2, 1, 4, 3]), &p(&[2, 1, 3]))
            .unwrap_err()
            .is_contract());
        assert!(boundary_positions(&p(&[2, 1, 4, 3]), &p(&[1, 2])).is_err());
    }

    #[test]
    fn fuse_examples() {
        assert_eq!(
            fuse(&p(&[2, 1, 4, 3]), &p(&[1, 3, 2, 4])).unwrap(),
            Fused::Single(p(&[2, 1, 4, 3, 5]))
        );
        assert_eq!(
            fuse(&p(&[1, 2]), &p(&[2, 1])).unwrap(),
            Fused::Pair {
                rising: p(&[1, 3, 2]),
                falling: p(&[2, 3, 1])
            }
        );
        assert_eq!(
            fuse(&p(&[1, 2]), &p(&[1, 2])).unwrap(),
            Fused::Single(p(&[1, 2, 3]))
        );
        assert!(fuse(&p(&[1, 2]), &p(&[1, 2, 3])).is_err());
        assert!(fuse(&p(&[2, 1, 4, 3]), &p(&[2, 1, 3, 4]))
            .unwrap_err()
            .is_contract());
    }

    #[test]
    fn prefix_extension_examples() {
        assert!(is_prefix_extension(&p(&[1, 3, 2, 4]), &p(&[1, 3, 2])));
        assert!(is_prefix_extension(&p(&[2, 1, 4, 3, 5]), &p(&[2, 1, 4, 3])));
        assert!(!is_prefix_extension(&p(&[2, 1]), &p(&[1, 2])));
        assert!(!is_prefix_extension(&p(&[1]), &p(&[1, 2])));
    }

    #[test]
    fn extend_with_rank_shifts() {
        assert_eq!(p(&[1, 3, 2]).extend_with_rank(4), p(&[1, 3, 2, 4]));
        assert_eq!(p(&[1, 3, 2]).extend_with_rank(1), p(&[2, 4, 3, 1]));
        assert_eq!(p(&[1, 3, 2]).extend_with_rank(3), p(&[1, 4, 2, 3]));
    }

    #[test]
    fn text_syntax() {
        assert_eq!(
            "(2,1,4,3)".parse::<RankPattern>().unwrap(),
            p(&[2, 1, 4, 3])
        );
        assert_eq!(" 2, 1 ".parse::<RankPattern>().unwrap(), p(&[2, 1]));
        assert_eq!(p(&[2, 1, 4, 3]).to_string(), "(2,1,4,3)");
        assert!("(1,1)".parse::<RankPattern>().is_err());
        assert!("(0,1)".parse::<RankPattern>().is_err());
        assert!("a,b".parse::<RankPattern>().is_err());
        assert!(serde_json::from_str::<RankPattern>("[1,3]").is_err());
        assert_eq!(serde_json::to_string(&p(&[2, 1])).unwrap(), "[2,1]");
    }
}
