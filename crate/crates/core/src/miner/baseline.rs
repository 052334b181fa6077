//! Reference miners: the sliding-window oracle and the enumeration baseline.

use std::collections::BTreeMap;

use crate::error::Result;
use crate::matcher::{fav_occurrences_counted, oracle_occurrences, OccurrenceList};
use crate::pattern::{relative_order, RankPattern};

use super::{Counters, FrequentPattern, MinedPatterns};

/// Enumerates every window that starts at an occurrence of `o`, grows the
/// window one value per level, and counts relative orders directly. Stops at
/// the first length with nothing frequent.
///
/// Counters: one candidate per distinct superpattern seen, one comparison per
/// window examined.
pub fn sliding_oracle(
    k: &[f64],
    o: &RankPattern,
    minsup: usize,
    max_len: Option<usize>,
) -> MinedPatterns {
    let m = o.len();
    let prefix_occurrences = oracle_occurrences(k, o);
    let mut counters = Counters::default();
    let mut levels = Vec::new();
    if prefix_occurrences.len() >= minsup {
        // 0-based window starts
        let starts: Vec<usize> = prefix_occurrences.iter().map(|&end| end - m).collect();
        let longest = max_len.map_or(k.len(), |max| max.min(k.len()));
        for g in m + 1..=longest {
            let mut seen: BTreeMap<RankPattern, Vec<usize>> = BTreeMap::new();
            for &start in &starts {
                if start + g > k.len() {
                    continue;
                }
                counters.superpattern_occurrence_comparisons += 1;
                if let Ok(pattern) = relative_order(&k[start..start + g]) {
                    seen.entry(pattern).or_default().push(start + g);
                }
            }
            counters.candidates_checked += seen.len() as u64;
            let level: Vec<FrequentPattern> = seen
                .into_iter()
                .filter(|(_, ends)| ends.len() >= minsup)
                .map(|(pattern, ends)| {
                    FrequentPattern::new(pattern, OccurrenceList::from_sorted(ends))
                })
                .collect();
            if level.is_empty() {
                break;
            }
            levels.push(level);
        }
    }
    MinedPatterns {
        prefix_occurrences,
        levels,
        counters,
        trace: None,
    }
}

/// Extends every frequent pattern by each of its `g+1` possible last ranks
/// and matches each candidate against the whole series.
///
/// Counters: one candidate per enumerated extension, one comparison per
/// candidate window verified by the matcher.
pub fn enumerate(
    k: &[f64],
    o: &RankPattern,
    minsup: usize,
    max_len: Option<usize>,
) -> Result<MinedPatterns> {
    let mut counters = Counters::default();
    let (prefix_occurrences, stats) = fav_occurrences_counted(k, o)?;
    counters.superpattern_occurrence_comparisons += stats.candidates;
    let mut levels: Vec<Vec<FrequentPattern>> = Vec::new();
    let mut frontier = if prefix_occurrences.len() >= minsup {
        vec![o.clone()]
    } else {
        Vec::new()
    };
    while !frontier.is_empty() {
        if max_len.is_some_and(|max| frontier[0].len() >= max) {
            break;
        }
        let mut level = Vec::new();
        for h in &frontier {
            for v in 1..=h.len() + 1 {
                let candidate = h.extend_with_rank(v);
                counters.candidates_checked += 1;
                let (occ, stats) = fav_occurrences_counted(k, &candidate)?;
                counters.superpattern_occurrence_comparisons += stats.candidates;
                if occ.len() >= minsup {
                    level.push(FrequentPattern::new(candidate, occ));
                }
            }
        }
        frontier = level.iter().map(|f| f.pattern.clone()).collect();
        if !level.is_empty() {
            levels.push(level);
        }
    }
    Ok(MinedPatterns {
        prefix_occurrences,
        levels,
        counters,
        trace: None,
    })
}
