use std::cmp::Ordering;

use crate::error::Result;
use crate::matcher::OccurrenceList;
use crate::pattern::{fuse, Fused, RankPattern};

use super::prepare::FusionTable;
use super::{Counters, FrequentPattern};

/// Whether CSS stops once too few prefix occurrences remain unconsumed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ending {
    Early,
    Exhaustive,
}

/// Supports of the length-`m+1` superpatterns of `o`, computed by fusing `o`
/// with each of its fusion patterns and pairing occurrences `gf == go + 1`.
///
/// Matched pairs are consumed from a working copy of `occ_o`; the caller's
/// lists are never modified. Returns only patterns meeting `minsup`.
pub fn css(
    k: &[f64],
    o: &RankPattern,
    occ_o: &[usize],
    fusions: &FusionTable,
    minsup: usize,
    ending: Ending,
    counters: &mut Counters,
) -> Result<Vec<FrequentPattern>> {
    let m = o.len();
    let mut remaining: Vec<usize> = occ_o.to_vec();
    let mut frequent = Vec::new();

    for (_, entry) in fusions.iter() {
        if ending == Ending::Early && remaining.len() < minsup {
            break;
        }
        let occ_f = entry.occurrences.as_slice();
        if occ_f.len() < minsup {
            continue;
        }
        let fused = fuse(o, &entry.pattern)?;
        counters.candidates_checked += fused.patterns().len() as u64;

        let mut rising = OccurrenceList::new();
        let mut falling = OccurrenceList::new();
        let mut kept = Vec::with_capacity(remaining.len());
        let (mut i, mut j) = (0, 0);
        while i < remaining.len() && j < occ_f.len() {
            counters.superpattern_occurrence_comparisons += 1;
            let go = remaining[i];
            let gf = occ_f[j];
            match (go + 1).cmp(&gf) {
                Ordering::Less => {
                    kept.push(go);
                    i += 1;
                }
                Ordering::Greater => j += 1,
                Ordering::Equal => {
                    match &fused {
                        Fused::Single(_) => rising.push(gf),
                        Fused::Pair { .. } => {
                            // first vs last value of the length-(m+1) window
                            let begin = k[gf - m - 1];
                            let end = k[gf - 1];
                            if begin < end {
                                rising.push(gf);
                            } else if begin > end {
                                falling.push(gf);
                            }
                        }
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        kept.extend_from_slice(&remaining[i..]);
        remaining = kept;

        let outputs = match fused {
            Fused::Single(u) => vec![(u, rising)],
            Fused::Pair {
                rising: u,
                falling: v,
            } => vec![(u, rising), (v, falling)],
        };
        frequent.extend(
            outputs
                .into_iter()
                .filter(|(_, occ)| occ.len() >= minsup)
                .map(|(pattern, occurrences)| FrequentPattern::new(pattern, occurrences)),
        );
    }
    Ok(frequent)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::miner::prepare::cfp;

    const K: [f64; 15] = [
        16., 8., 11., 10., 17., 13., 20., 18., 22., 14., 24., 23., 27., 25., 28.,
    ];

    fn p(r: &[usize]) -> RankPattern {
        RankPattern::new(r.to_vec()).unwrap()
    }

    fn reference_fusions() -> FusionTable {
        cfp(&p(&[1, 3, 2]), &[4, 6, 8, 12, 14], &K)
    }

    #[test]
    fn single_superpattern() {
        let mut counters = Counters::default();
        let out = css(
            &K,
            &p(&[2, 1, 4, 3]),
            &[6, 8, 12, 14],
            &reference_fusions(),
            3,
            Ending::Early,
            &mut counters,
        )
        .unwrap();
        assert_eq!(out.len(), 1);
        assert_eq!(out[0].pattern, p(&[2, 1, 4, 3, 5]));
        assert_eq!(out[0].occurrences.as_slice(), &[7, 9, 13, 15]);
        assert_eq!(out[0].support, 4);
        assert_eq!(counters.candidates_checked, 1);
    }

    #[test]
    fn higher_threshold_filters_result() {
        let mut counters = Counters::default();
        let out = css(
            &K,
            &p(&[2, 1, 4, 3]),
            &[6, 8, 12, 14],
            &reference_fusions(),
            5,
            Ending::Exhaustive,
            &mut counters,
        )
        .unwrap();
        assert!(out.is_empty());
        // the fusion entry has 5 occurrences so it was still fused
        assert_eq!(counters.candidates_checked, 1);
    }

    #[test]
    fn empty_prefix_occurrences_stop_immediately() {
        let mut counters = Counters::default();
        let out = css(
            &K,
            &p(&[2, 1, 4, 3]),
            &[],
            &reference_fusions(),
            1,
            Ending::Early,
            &mut counters,
        )
        .unwrap();
        assert!(out.is_empty());
        assert_eq!(counters, Counters::default());
    }

    #[test]
    fn pair_routing_by_endpoint_values() {
        // o=(1,2); windows 1..3 = (1,5,2) rising, 3..5 = (2,6,1) falling, 5..7 tie
        let k = [1., 5., 2., 6., 1., 4., 1.];
        let o = p(&[1, 2]);
        let occ_o = crate::matcher::oracle_occurrences(&k, &o);
        assert_eq!(occ_o.as_slice(), &[2, 4, 6]);
        let fusions = cfp(&p(&[1]), &occ_o, &k);
        let entry = fusions.get(1).unwrap();
        assert_eq!(entry.pattern, p(&[2, 1]));
        assert_eq!(entry.occurrences.as_slice(), &[3, 5, 7]);
        let mut counters = Counters::default();
        let mut out = css(&k, &o, &occ_o, &fusions, 1, Ending::Early, &mut counters).unwrap();
        out.sort_by(|a, b| a.pattern.cmp(&b.pattern));
        assert_eq!(out.len(), 2);
        assert_eq!(out[0].pattern, p(&[1, 3, 2]));
        assert_eq!(out[0].occurrences.as_slice(), &[3]);
        assert_eq!(out[1].pattern, p(&[2, 3, 1]));
        assert_eq!(out[1].occurrences.as_slice(), &[5]);
        assert_eq!(counters.candidates_checked, 2);
    }
}
