use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matcher::OccurrenceList;
use crate::pattern::{boundary_positions, RankPattern};

/// Keeps the occurrences of `s` that extend one step to the left into an
/// occurrence of `o`, where `s` is the suffix order of `o`.
///
/// Only two comparisons are needed per candidate: the new leading value must
/// sit above the value at the lower position and below the value at the
/// upper position. Equality rejects.
pub fn vop(o: &RankPattern, s: &RankPattern, occ_s: &[usize], k: &[f64]) -> Result<OccurrenceList> {
    let bounds = boundary_positions(o, s)?;
    let m = o.len();
    let mut out = OccurrenceList::new();
    for &c in occ_s {
        if c < m || c > k.len() {
            continue;
        }
        // 0-based index of position c-m+1
        let base = c - m;
        let lead = k[base];
        let above_lower = bounds.lower.is_none_or(|lp| lead > k[base + lp - 1]);
        let below_upper = bounds.upper.is_none_or(|up| lead < k[base + up - 1]);
        if above_lower && below_upper {
            out.push(c);
        }
    }
    Ok(out)
}

/// One fusion pattern with the positions where it occurs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FusionEntry {
    pub pattern: RankPattern,
    pub occurrences: OccurrenceList,
}

/// Fusion patterns keyed by the rank of their last element.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct FusionTable {
    entries: BTreeMap<usize, FusionEntry>,
}

impl FusionTable {
    pub fn get(&self, rank: usize) -> Option<&FusionEntry> {
        self.entries.get(&rank)
    }

    /// Entries in increasing extension rank.
    pub fn iter(&self) -> impl Iterator<Item = (usize, &FusionEntry)> {
        self.entries.iter().map(|(&v, e)| (v, e))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Computes fusion-pattern occurrences by extending each anchor window one
/// step to the right.
///
/// `window_order` is the relative order of the last `window_order.len()`
/// values of every anchor window ending at `c`. The rank of `k[c+1]` among
/// those values is found by binary search over the window's order
/// statistics; `c+1` is then recorded under that rank. Anchors at the end of
/// the series, and extensions tying a window value, contribute nothing.
pub fn cfp(window_order: &RankPattern, anchors: &[usize], k: &[f64]) -> FusionTable {
    let len = window_order.len();
    let by_rank = window_order.by_rank();
    let mut entries: BTreeMap<usize, FusionEntry> = BTreeMap::new();
    for &c in anchors {
        if c < len || c >= k.len() {
            continue;
        }
        let start = c - len;
        let next = k[c];
        let below = by_rank.partition_point(|&pos| k[start + pos] < next);
        if below < len && k[start + by_rank[below]] == next {
            continue;
        }
        let v = below + 1;
        entries
            .entry(v)
            .or_insert_with(|| FusionEntry {
                pattern: window_order.extend_with_rank(v),
                occurrences: OccurrenceList::new(),
            })
            .occurrences
            .push(c + 1);
    }
    FusionTable { entries }
}

pub(crate) fn check_minsup(minsup: usize) -> Result<()> {
    if minsup == 0 {
        return Err(Error::Contract("minsup must be at least 1".into()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcher::fav_occurrences;
    use crate::pattern::suffix_order;

    const K: [f64; 15] = [
        16., 8., 11., 10., 17., 13., 20., 18., 22., 14., 24., 23., 27., 25., 28.,
    ];

    fn p(r: &[usize]) -> RankPattern {
        RankPattern::new(r.to_vec()).unwrap()
    }

    #[test]
    fn vop_reference() {
        let o = p(&[2, 1, 4, 3]);
        let s = suffix_order(&o).unwrap();
        let occ_s = fav_occurrences(&K, &s).unwrap();
        let occ_o = vop(&o, &s, &occ_s, &K).unwrap();
        // <4> fails because k1 > k4
        assert_eq!(occ_o.as_slice(), &[6, 8, 12, 14]);
        assert!(vop(&o, &s, &[], &K).unwrap().is_empty());
        assert!(vop(&o, &p(&[2, 1, 3]), &occ_s, &K)
            .unwrap_err()
            .is_contract());
    }

    #[test]
    fn vop_absent_upper() {
        // o=(4,1,3,2): only k_lead > k_{lower} is checked
        let o = p(&[4, 1, 3, 2]);
        let s = p(&[1, 3, 2]);
        let k = [9., 1., 5., 3., 0.5, 4., 2.];
        let occ_s = fav_occurrences(&k, &s).unwrap();
        assert_eq!(occ_s.as_slice(), &[4, 7]);
        assert_eq!(vop(&o, &s, &occ_s, &k).unwrap().as_slice(), &[4]);
    }

    #[test]
    fn cfp_round_one() {
        let s = p(&[1, 3, 2]);
        let table = cfp(&s, &[4, 6, 8, 12, 14], &K);
        assert_eq!(table.len(), 1);
        let entry = table.get(4).unwrap();
        assert_eq!(entry.pattern, p(&[1, 3, 2, 4]));
        assert_eq!(entry.occurrences.as_slice(), &[5, 7, 9, 13, 15]);
    }

    #[test]
    fn cfp_round_two() {
        let u = p(&[2, 1, 4, 3, 5]);
        let table = cfp(&suffix_order(&u).unwrap(), &[7, 9, 13, 15], &K);
        assert_eq!(table.len(), 2);
        let e2 = table.get(2).unwrap();
        assert_eq!(e2.pattern, p(&[1, 4, 3, 5, 2]));
        assert_eq!(e2.occurrences.as_slice(), &[10]);
        let e4 = table.get(4).unwrap();
        assert_eq!(e4.pattern, p(&[1, 3, 2, 5, 4]));
        assert_eq!(e4.occurrences.as_slice(), &[8, 14]);
    }

    #[test]
    fn cfp_edges() {
        assert!(cfp(&p(&[1, 3, 2]), &[15], &K).is_empty());
        // k4 = 4 ties the window value 4
        let k = [1., 4., 2., 4.];
        assert!(cfp(&p(&[1, 3, 2]), &[3], &k).is_empty());
    }
}
