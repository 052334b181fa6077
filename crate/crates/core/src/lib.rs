//! Mining co-occurrence order-preserving patterns (COPs) from numeric time
//! series.
//!
//! A COP of a prefix pattern is a frequent order-preserving pattern whose
//! leading values are ordered like the prefix. The pipeline reduces the
//! series to its local extrema ([`series`]), matches the prefix's suffix
//! order with a filtered bit-parallel matcher ([`matcher`]), and grows
//! superpatterns by fusing occurrence lists ([`miner`]). [`predictor`]
//! evaluates mined COPs as one-step trend forecasts and [`bench`] times the
//! miner variants against each other.

pub mod bench;
pub mod error;
pub mod matcher;
pub mod miner;
pub mod pattern;
pub mod predictor;
pub mod series;

pub use error::{Error, Result};
pub use matcher::OccurrenceList;
pub use miner::{cop_mine, mine_series, Algorithm, MineOptions, MiningReport, Prefix};
pub use pattern::RankPattern;
pub use series::{extract_keypoints, KeypointSeries, NumericSeries};
