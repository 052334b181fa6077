//! Trend prediction from mined COPs and its evaluation on held-out data.
//!
//! The series is split chronologically. COPs of the prefix are mined on the
//! training half and the `k` most supported extensions of the target length
//! are predicted. On the test half every window extending the prefix is
//! counted: recall weighs patterns by their test support, while precision
//! counts predicted patterns that never occur in the test half.

use std::collections::BTreeMap;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::miner::{mine_series, Algorithm, MineOptions, MiningReport, Prefix};
use crate::pattern::{is_prefix_extension, relative_order, RankPattern};
use crate::series::NumericSeries;

/// Chronological split: the first `⌊ratio·N⌋` values train, the rest test.
pub fn split(t: &NumericSeries, ratio: f64) -> Result<(NumericSeries, NumericSeries)> {
    let n = t.len();
    let cut = if ratio > 0.0 && ratio < 1.0 {
        (ratio * n as f64).floor() as usize
    } else if ratio >= 1.0 {
        n
    } else {
        0
    };
    if cut == 0 || cut >= n {
        return Err(Error::EmptySplit {
            ratio,
            side: if cut == 0 { "training" } else { "test" },
            len: n,
        });
    }
    let values = t.values();
    Ok((
        NumericSeries::new(values[..cut].to_vec())?,
        NumericSeries::new(values[cut..].to_vec())?,
    ))
}

/// The `k` COPs of length `prefix + horizon` with the highest support.
/// Ties go to the lexicographically smaller rank sequence.
pub fn predict_top_k(report: &MiningReport, k: usize, horizon: usize) -> Vec<RankPattern> {
    let length = report.config.prefix.len() + horizon;
    let mut candidates: Vec<_> = report.level(length).iter().collect();
    candidates.sort_by(|a, b| {
        b.support
            .cmp(&a.support)
            .then_with(|| a.pattern.cmp(&b.pattern))
    });
    candidates
        .into_iter()
        .take(k)
        .map(|f| f.pattern.clone())
        .collect()
}

/// Support of every length-`length` window pattern in `k` whose leading
/// ranks have relative order `o`. Windows with ties are skipped.
pub fn extension_supports(
    k: &[f64],
    o: &RankPattern,
    length: usize,
) -> BTreeMap<RankPattern, usize> {
    let mut supports = BTreeMap::new();
    if length < o.len() || k.len() < length {
        return supports;
    }
    for window in k.windows(length) {
        if let Ok(pattern) = relative_order(window) {
            if is_prefix_extension(&pattern, o) {
                *supports.entry(pattern).or_insert(0) += 1;
            }
        }
    }
    supports
}

fn round4<S: Serializer>(x: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64((x * 1e4).round() / 1e4)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PatternSupport {
    pub pattern: RankPattern,
    pub support: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PredictionEval {
    pub predicted: Vec<RankPattern>,
    /// Every extension occurring in the test series with its support.
    pub test_supports: Vec<PatternSupport>,
    pub tp_mass: usize,
    pub fn_mass: usize,
    pub fp_count: usize,
    #[serde(serialize_with = "round4")]
    pub precision: f64,
    #[serde(serialize_with = "round4")]
    pub recall: f64,
    #[serde(serialize_with = "round4")]
    pub f1: f64,
}

impl PredictionEval {
    pub fn test_support(&self, pattern: &RankPattern) -> usize {
        self.test_supports
            .iter()
            .find(|s| s.pattern == *pattern)
            .map_or(0, |s| s.support)
    }
}

/// Scores predicted one-step extensions of `o` against the test keypoint
/// series.
pub fn evaluate(predicted: &[RankPattern], test_k: &[f64], o: &RankPattern) -> PredictionEval {
    evaluate_at(predicted, test_k, o, o.len() + 1)
}

/// As [`evaluate`], for extensions of total length `length`.
pub fn evaluate_at(
    predicted: &[RankPattern],
    test_k: &[f64],
    o: &RankPattern,
    length: usize,
) -> PredictionEval {
    let supports = extension_supports(test_k, o, length);

    let tp_mass: usize = predicted.iter().filter_map(|p| supports.get(p)).sum();
    let total: usize = supports.values().sum();
    let fn_mass = total - tp_mass;
    let fp_count = predicted
        .iter()
        .filter(|p| !supports.contains_key(*p))
        .count();

    let precision = if predicted.is_empty() {
        0.0
    } else {
        (predicted.len() - fp_count) as f64 / predicted.len() as f64
    };
    let recall = if total > 0 {
        tp_mass as f64 / total as f64
    } else {
        0.0
    };
    let f1 = if precision + recall > 0.0 {
        2.0 * precision * recall / (precision + recall)
    } else {
        0.0
    };
    PredictionEval {
        predicted: predicted.to_vec(),
        test_supports: supports
            .into_iter()
            .map(|(pattern, support)| PatternSupport { pattern, support })
            .collect(),
        tp_mass,
        fn_mass,
        fp_count,
        precision,
        recall,
        f1,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PredictConfig {
    pub ratio: f64,
    pub top_k: usize,
    pub horizon: usize,
    /// Training-side support threshold.
    pub minsup: usize,
    pub keypoints: bool,
}

impl Default for PredictConfig {
    fn default() -> Self {
        PredictConfig {
            ratio: 0.8,
            top_k: 2,
            horizon: 1,
            minsup: 1,
            keypoints: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PredictedPattern {
    pub pattern: RankPattern,
    pub train_support: usize,
    pub test_support: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PredictionRun {
    pub prefix: RankPattern,
    pub ratio: f64,
    pub top_k: usize,
    pub horizon: usize,
    pub train_len: usize,
    pub test_len: usize,
    pub predicted: Vec<PredictedPattern>,
    pub evaluation: PredictionEval,
}

/// Split, mine the training half, predict and evaluate on the test half.
pub fn run_prediction(
    t: &NumericSeries,
    prefix: &Prefix,
    config: &PredictConfig,
) -> Result<PredictionRun> {
    if config.top_k == 0 || config.horizon == 0 {
        return Err(Error::Contract(
            "top-k and horizon must be at least 1".into(),
        ));
    }
    let (train, test) = split(t, config.ratio)?;
    let o = prefix.to_pattern(config.keypoints)?;
    let options = MineOptions {
        algorithm: Algorithm::CopMiner,
        keypoints: config.keypoints,
        trace: false,
        max_len: Some(o.len() + config.horizon),
    };
    let report = mine_series(&train, &Prefix::Ranks(o.clone()), config.minsup, &options)?;
    let predicted = predict_top_k(&report, config.top_k, config.horizon);
    let test_k = crate::miner::reduce(&test, config.keypoints);
    let evaluation = evaluate_at(&predicted, test_k.values(), &o, o.len() + config.horizon);
    let predicted = predicted
        .into_iter()
        .map(|pattern| PredictedPattern {
            train_support: report.find(&pattern).map_or(0, |f| f.support),
            test_support: evaluation.test_support(&pattern),
            pattern,
        })
        .collect();
    Ok(PredictionRun {
        prefix: o,
        ratio: config.ratio,
        top_k: config.top_k,
        horizon: config.horizon,
        train_len: train.len(),
        test_len: test.len(),
        predicted,
        evaluation,
    })
}
