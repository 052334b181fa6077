//! Mining all frequent co-occurrence patterns (COPs) of a prefix pattern.
//!
//! The main path finds the prefix's suffix order with the filtered matcher,
//! derives the prefix occurrences from it ([`vop`]), collects fusion-pattern
//! occurrences ([`cfp`]) and grows superpatterns level by level by pairing
//! occurrence lists ([`css`]). Three reference variants share the report
//! format so they can be compared byte for byte.

mod baseline;
mod css;
mod prepare;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matcher::{fav_occurrences, oracle_occurrences, OccurrenceList};
use crate::pattern::{relative_order, suffix_order, RankPattern};
use crate::series::{extract_keypoints, identity_keypoints, KeypointSeries, NumericSeries};

pub use baseline::{enumerate, sliding_oracle};
pub use css::{css, Ending};
pub use prepare::{cfp, vop, FusionEntry, FusionTable};

use prepare::check_minsup;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FrequentPattern {
    pub pattern: RankPattern,
    pub support: usize,
    pub occurrences: OccurrenceList,
}

impl FrequentPattern {
    pub fn new(pattern: RankPattern, occurrences: OccurrenceList) -> Self {
        FrequentPattern {
            pattern,
            support: occurrences.len(),
            occurrences,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Counters {
    /// Superpatterns generated before the frequency test.
    pub candidates_checked: u64,
    /// Occurrence comparisons made while computing superpattern supports.
    pub superpattern_occurrence_comparisons: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Algorithm {
    #[serde(rename = "copminer")]
    CopMiner,
    #[serde(rename = "enum")]
    Enum,
    #[serde(rename = "noending")]
    NoEnding,
    #[serde(rename = "sliding-oracle")]
    SlidingOracle,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [
        Algorithm::CopMiner,
        Algorithm::Enum,
        Algorithm::NoEnding,
        Algorithm::SlidingOracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::CopMiner => "copminer",
            Algorithm::Enum => "enum",
            Algorithm::NoEnding => "noending",
            Algorithm::SlidingOracle => "sliding-oracle",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| format!("unknown algorithm {s:?}"))
    }
}

/// Intermediate results of the fusion-based miner.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct MiningTrace {
    pub suffix: Option<RankPattern>,
    pub suffix_occurrences: OccurrenceList,
    pub prefix_occurrences: OccurrenceList,
    /// Fusion tables in the order patterns were expanded.
    pub expansions: Vec<Expansion>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Expansion {
    pub pattern: RankPattern,
    pub fusions: FusionTable,
}

/// Raw output of one miner before it is wrapped into a [`MiningReport`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinedPatterns {
    pub prefix_occurrences: OccurrenceList,
    /// Frequent COPs of length `m+1`, `m+2`, ...; no empty levels.
    pub levels: Vec<Vec<FrequentPattern>>,
    pub counters: Counters,
    pub trace: Option<MiningTrace>,
}

/// The fusion-based miner. With [`Ending::Exhaustive`] this is the
/// no-ending-strategy variant.
pub fn fusion_mine(
    k: &[f64],
    o: &RankPattern,
    minsup: usize,
    ending: Ending,
    max_len: Option<usize>,
    with_trace: bool,
) -> Result<MinedPatterns> {
    check_minsup(minsup)?;
    let within = |len: usize| max_len.is_none_or(|max| len <= max);
    let s = suffix_order(o)?;
    let occ_s = if s.len() >= 2 {
        fav_occurrences(k, &s)?
    } else {
        oracle_occurrences(k, &s)
    };
    let occ_o = vop(o, &s, &occ_s, k)?;
    let fusions = cfp(&s, &occ_s, k);

    let mut trace = with_trace.then(|| MiningTrace {
        suffix: Some(s.clone()),
        suffix_occurrences: occ_s.clone(),
        prefix_occurrences: occ_o.clone(),
        expansions: vec![Expansion {
            pattern: o.clone(),
            fusions: fusions.clone(),
        }],
    });

    let mut counters = Counters::default();
    let mut levels = Vec::new();
    let mut current = if within(o.len() + 1) {
        css(k, o, &occ_o, &fusions, minsup, ending, &mut counters)?
    } else {
        Vec::new()
    };
    while !current.is_empty() {
        if !within(o.len() + levels.len() + 2) {
            current.sort_by(|a, b| a.pattern.cmp(&b.pattern));
            levels.push(current);
            break;
        }
        current.sort_by(|a, b| a.pattern.cmp(&b.pattern));
        let mut next = Vec::new();
        for h in &current {
            // anchor on h's own occurrences: only those can pair in css
            let fusions = cfp(&suffix_order(&h.pattern)?, &h.occurrences, k);
            next.extend(css(
                k,
                &h.pattern,
                &h.occurrences,
                &fusions,
                minsup,
                ending,
                &mut counters,
            )?);
            if let Some(t) = trace.as_mut() {
                t.expansions.push(Expansion {
                    pattern: h.pattern.clone(),
                    fusions,
                });
            }
        }
        levels.push(std::mem::replace(&mut current, next));
    }
    Ok(MinedPatterns {
        prefix_occurrences: occ_o,
        levels,
        counters,
        trace,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConfigEcho {
    pub algorithm: Algorithm,
    pub minsup: usize,
    pub prefix: RankPattern,
    pub keypoints: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrefixSummary {
    pub pattern: RankPattern,
    pub support: usize,
    pub occurrences: OccurrenceList,
    pub frequent: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Level {
    pub length: usize,
    pub patterns: Vec<FrequentPattern>,
}

/// Frequent COPs grouped by length, the prefix's own support, and work
/// counters. Patterns within a level are in lexicographic rank order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MiningReport {
    pub config: ConfigEcho,
    pub prefix: PrefixSummary,
    pub frequent: Vec<Level>,
    pub counters: Counters,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<MiningTrace>,
}

impl MiningReport {
    fn assemble(config: ConfigEcho, mined: MinedPatterns) -> Self {
        let m = config.prefix.len();
        let prefix = PrefixSummary {
            pattern: config.prefix.clone(),
            support: mined.prefix_occurrences.len(),
            frequent: mined.prefix_occurrences.len() >= config.minsup,
            occurrences: mined.prefix_occurrences,
        };
        let frequent = mined
            .levels
            .into_iter()
            .enumerate()
            .map(|(i, mut patterns)| {
                patterns.sort_by(|a, b| a.pattern.cmp(&b.pattern));
                Level {
                    length: m + i + 1,
                    patterns,
                }
            })
            .collect();
        MiningReport {
            config,
            prefix,
            frequent,
            counters: mined.counters,
            trace: mined.trace,
        }
    }

    /// Every frequent COP, shortest first.
    pub fn patterns(&self) -> impl Iterator<Item = &FrequentPattern> {
        self.frequent.iter().flat_map(|l| l.patterns.iter())
    }

    pub fn cop_count(&self) -> usize {
        self.frequent.iter().map(|l| l.patterns.len()).sum()
    }

    pub fn level(&self, length: usize) -> &[FrequentPattern] {
        self.frequent
            .iter()
            .find(|l| l.length == length)
            .map_or(&[], |l| &l.patterns)
    }

    pub fn find(&self, pattern: &RankPattern) -> Option<&FrequentPattern> {
        self.level(pattern.len())
            .iter()
            .find(|f| f.pattern == *pattern)
    }

    /// The mined content without counters, config or trace, for comparing
    /// variants.
    pub fn frequent_set(&self) -> (&PrefixSummary, &[Level]) {
        (&self.prefix, &self.frequent)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }

    /// `length,pattern,support` rows, one per COP.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("length,pattern,support\n");
        for f in self.patterns() {
            out.push_str(&format!(
                "{},\"{}\",{}\n",
                f.pattern.len(),
                f.pattern,
                f.support
            ));
        }
        out
    }
}

/// Mines the COPs of `o` in an already reduced series `k`.
pub fn mine_keypoints(
    k: &[f64],
    o: &RankPattern,
    minsup: usize,
    algorithm: Algorithm,
) -> Result<MiningReport> {
    let options = MineOptions {
        algorithm,
        ..MineOptions::default()
    };
    run(k, o, minsup, &options)
}

fn run(k: &[f64], o: &RankPattern, minsup: usize, options: &MineOptions) -> Result<MiningReport> {
    let MineOptions {
        algorithm,
        keypoints,
        trace: with_trace,
        max_len,
    } = *options;
    check_minsup(minsup)?;
    if o.len() < 2 {
        return Err(Error::ShortPrefix(o.len()));
    }
    let mined = match algorithm {
        Algorithm::CopMiner => fusion_mine(k, o, minsup, Ending::Early, max_len, with_trace)?,
        Algorithm::NoEnding => fusion_mine(k, o, minsup, Ending::Exhaustive, max_len, with_trace)?,
        Algorithm::Enum => enumerate(k, o, minsup, max_len)?,
        Algorithm::SlidingOracle => sliding_oracle(k, o, minsup, max_len),
    };
    let config = ConfigEcho {
        algorithm,
        minsup,
        prefix: o.clone(),
        keypoints,
    };
    Ok(MiningReport::assemble(config, mined))
}

/// The user-supplied prefix: raw values (reduced and ranked) or ranks.
#[derive(Debug, Clone, PartialEq)]
pub enum Prefix {
    Values(NumericSeries),
    Ranks(RankPattern),
}

impl Prefix {
    /// Normalises to a rank pattern. Raw values go through keypoint
    /// extraction first when `keypoints` is set.
    pub fn to_pattern(&self, keypoints: bool) -> Result<RankPattern> {
        let o = match self {
            Prefix::Ranks(o) => o.clone(),
            Prefix::Values(p) => {
                let q = if keypoints {
                    extract_keypoints(p).into_series()
                } else {
                    p.clone()
                };
                if q.len() < 2 {
                    return Err(Error::ShortPrefix(q.len()));
                }
                relative_order(&q)?
            }
        };
        if o.len() < 2 {
            return Err(Error::ShortPrefix(o.len()));
        }
        Ok(o)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MineOptions {
    pub algorithm: Algorithm,
    /// `false` mines the raw series directly (no keypoint extraction).
    pub keypoints: bool,
    /// Record intermediate occurrence lists and fusion tables.
    pub trace: bool,
    /// Longest COP to mine; `None` grows until nothing is frequent.
    pub max_len: Option<usize>,
}

impl Default for MineOptions {
    fn default() -> Self {
        MineOptions {
            algorithm: Algorithm::CopMiner,
            keypoints: true,
            trace: false,
            max_len: None,
        }
    }
}

/// The series the miners run on under the given keypoint setting.
pub fn reduce(t: &NumericSeries, keypoints: bool) -> KeypointSeries {
    if keypoints {
        extract_keypoints(t)
    } else {
        identity_keypoints(t)
    }
}

/// Full pipeline: reduce `t`, normalise the prefix, then mine.
pub fn mine_series(
    t: &NumericSeries,
    prefix: &Prefix,
    minsup: usize,
    options: &MineOptions,
) -> Result<MiningReport> {
    check_minsup(minsup)?;
    let o = prefix.to_pattern(options.keypoints)?;
    let k = reduce(t, options.keypoints);
    run(k.values(), &o, minsup, options)
}

/// Mines all frequent COPs of the raw prefix `p` in the raw series `t`.
pub fn cop_mine(
    t: &NumericSeries,
    p: &NumericSeries,
    minsup: usize,
    options: &MineOptions,
) -> Result<MiningReport> {
    mine_series(t, &Prefix::Values(p.clone()), minsup, options)
}

#[cfg(test)]
mod tests {
    use super::*;

    const T: [f64; 20] = [
        16., 8., 11., 10., 12., 16., 17., 13., 20., 18., 21., 22., 18., 14., 21., 24., 23., 27.,
        25., 28.,
    ];

    fn p(r: &[usize]) -> RankPattern {
        RankPattern::new(r.to_vec()).unwrap()
    }

    fn reference(minsup: usize, algorithm: Algorithm) -> MiningReport {
        let t = NumericSeries::new(T.to_vec()).unwrap();
        let prefix = NumericSeries::new(vec![5., 3., 7., 13., 8.]).unwrap();
        let options = MineOptions {
            algorithm,
            trace: true,
            ..MineOptions::default()
        };
        cop_mine(&t, &prefix, minsup, &options).unwrap()
    }

    #[test]
    fn reference_run() {
        let report = reference(3, Algorithm::CopMiner);
        assert_eq!(report.config.prefix, p(&[2, 1, 4, 3]));
        assert_eq!(report.prefix.occurrences.as_slice(), &[6, 8, 12, 14]);
        assert!(report.prefix.frequent);
        assert_eq!(report.cop_count(), 1);
        let u = report.find(&p(&[2, 1, 4, 3, 5])).unwrap();
        assert_eq!(u.support, 4);
        assert_eq!(u.occurrences.as_slice(), &[7, 9, 13, 15]);
        let trace = report.trace.unwrap();
        assert_eq!(trace.expansions.len(), 2);
        assert_eq!(trace.expansions[1].fusions.len(), 2);
    }

    #[test]
    fn reference_run_high_threshold() {
        let report = reference(5, Algorithm::CopMiner);
        assert_eq!(report.cop_count(), 0);
        assert!(!report.prefix.frequent);
    }

    #[test]
    fn variants_agree_on_reference() {
        let main = reference(3, Algorithm::CopMiner);
        for algo in [
            Algorithm::Enum,
            Algorithm::NoEnding,
            Algorithm::SlidingOracle,
        ] {
            let other = reference(3, algo);
            assert_eq!(other.frequent_set(), main.frequent_set(), "{algo}");
        }
        let en = reference(3, Algorithm::Enum);
        assert!(en.counters.candidates_checked > main.counters.candidates_checked);
    }

    #[test]
    fn oracle_at_minsup_one() {
        let k = extract_keypoints(&NumericSeries::new(T.to_vec()).unwrap());
        let report =
            mine_keypoints(k.values(), &p(&[2, 1, 4, 3]), 1, Algorithm::SlidingOracle).unwrap();
        let six = report.level(6);
        assert!(six.iter().any(|f| f.pattern == p(&[3, 1, 5, 4, 6, 2])));
        assert!(six.iter().any(|f| f.pattern == p(&[2, 1, 4, 3, 6, 5])));
        assert_eq!(six.len(), 2);
        let main = mine_keypoints(k.values(), &p(&[2, 1, 4, 3]), 1, Algorithm::CopMiner).unwrap();
        assert_eq!(main.frequent_set(), report.frequent_set());
    }

    #[test]
    fn degenerate_inputs() {
        let o = p(&[2, 1, 4, 3]);
        for algo in Algorithm::ALL {
            let r = mine_keypoints(&[1., 2.], &o, 1, algo).unwrap();
            assert_eq!(r.cop_count(), 0);
            assert_eq!(r.prefix.support, 0);
            let r = mine_keypoints(&[], &o, 1, algo).unwrap();
            assert_eq!(r.cop_count(), 0);
        }
        assert!(mine_keypoints(&[1., 2.], &o, 0, Algorithm::CopMiner)
            .unwrap_err()
            .is_contract());
        assert!(matches!(
            mine_keypoints(&[1., 2.], &p(&[1]), 1, Algorithm::CopMiner),
            Err(Error::ShortPrefix(1))
        ));
    }

    #[test]
    fn prefix_normalisation() {
        let t = NumericSeries::new(T.to_vec()).unwrap();
        // (1,2,3) reduces to two keypoints
        let short = Prefix::Values(NumericSeries::new(vec![1., 2., 3.]).unwrap());
        assert_eq!(short.to_pattern(true).unwrap(), p(&[1, 2]));
        let one = Prefix::Values(NumericSeries::new(vec![1.]).unwrap());
        assert!(matches!(one.to_pattern(true), Err(Error::ShortPrefix(1))));
        let tied = Prefix::Values(NumericSeries::new(vec![4., 1., 4.]).unwrap());
        assert!(matches!(tied.to_pattern(true), Err(Error::Tie(1, 3))));
        let ranks = Prefix::Ranks(p(&[2, 1, 4, 3]));
        let a = mine_series(&t, &ranks, 3, &MineOptions::default()).unwrap();
        let b = cop_mine(
            &t,
            &NumericSeries::new(vec![5., 3., 7., 13., 8.]).unwrap(),
            3,
            &MineOptions::default(),
        )
        .unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn csv_rendering() {
        let report = reference(3, Algorithm::CopMiner);
        assert_eq!(
            report.to_csv(),
            "length,pattern,support\n5,\"(2,1,4,3,5)\",4\n"
        );
    }
}
