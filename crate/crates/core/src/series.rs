//! Numeric series, keypoint (local extremum) extraction and text ingestion.

use std::io::{BufRead, BufReader, Read};
use std::ops::Deref;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

/// A finite sequence of finite real values.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct NumericSeries(Vec<f64>);

impl NumericSeries {
    /// Wraps `values`, rejecting NaN and infinities.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if let Some(pos) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite(pos + 1));
        }
        Ok(NumericSeries(values))
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    /// The series concatenated with itself `times` times.
    pub fn repeated(&self, times: usize) -> NumericSeries {
        NumericSeries(self.0.repeat(times))
    }
}

impl Deref for NumericSeries {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl TryFrom<Vec<f64>> for NumericSeries {
    type Error = Error;

    fn try_from(values: Vec<f64>) -> Result<Self> {
        NumericSeries::new(values)
    }
}

/// The keypoints of a series together with their 1-based source positions.
#[derive(Debug, Clone, PartialEq)]
pub struct KeypointSeries {
    values: NumericSeries,
    source_index: Vec<usize>,
}

impl KeypointSeries {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn series(&self) -> &NumericSeries {
        &self.values
    }

    pub fn into_series(self) -> NumericSeries {
        self.values
    }

    /// 1-based index into the originating series for each kept value.
    pub fn source_index(&self) -> &[usize] {
        &self.source_index
    }

    pub fn len(&self) -> usize {
        self.source_index.len()
    }

    pub fn is_empty(&self) -> bool {
        self.source_index.is_empty()
    }
}

/// Whether the interior point `i` (0-based, `0 < i < len-1`) is a local
/// minimum or maximum under the mixed strict/non-strict rule.
pub fn is_local_extremum(t: &[f64], i: usize) -> bool {
    let (prev, cur, next) = (t[i - 1], t[i], t[i + 1]);
    let minimum = (cur < prev && cur <= next) || (cur <= prev && cur < next);
    let maximum = (cur > prev && cur >= next) || (cur >= prev && cur > next);
    minimum || maximum
}

/// Keeps the endpoints and every interior local extremum of `t`, in order.
///
/// Plateaus are not merged: `(1,2,2,1)` keeps both 2s since each satisfies
/// one of the non-strict maximum clauses.
pub fn extract_keypoints(t: &NumericSeries) -> KeypointSeries {
    let n = t.len();
    if n <= 2 {
        return KeypointSeries {
            values: t.clone(),
            source_index: (1..=n).collect(),
        };
    }
    let mut values = Vec::with_capacity(n);
    let mut source_index = Vec::with_capacity(n);
    values.push(t[0]);
    source_index.push(1);
    for i in 1..n - 1 {
        if is_local_extremum(t, i) {
            values.push(t[i]);
            source_index.push(i + 1);
        }
    }
    values.push(t[n - 1]);
    source_index.push(n);
    KeypointSeries {
        values: NumericSeries(values),
        source_index,
    }
}

/// Wraps a series as its own keypoint series (every point kept). Used when
/// keypoint extraction is switched off.
pub fn identity_keypoints(t: &NumericSeries) -> KeypointSeries {
    KeypointSeries {
        values: t.clone(),
        source_index: (1..=t.len()).collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ColumnSelector {
    Name(String),
    /// 0-based field index.
    Index(usize),
}

impl FromStr for ColumnSelector {
    type Err = std::convert::Infallible;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Ok(match s.parse::<usize>() {
            Ok(i) => ColumnSelector::Index(i),
            Err(_) => ColumnSelector::Name(s.to_string()),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InputFormat {
    /// One value per line.
    Plain,
    /// Comma-separated with a header row; values taken from one column.
    Csv(ColumnSelector),
}

fn parse_value(token: &str, line: usize) -> Result<f64> {
    let value: f64 = token.parse().map_err(|_| Error::Parse {
        line,
        token: token.to_string(),
    })?;
    if !value.is_finite() {
        return Err(Error::NonFiniteInput {
            line,
            token: token.to_string(),
        });
    }
    Ok(value)
}

/// Reads a series from UTF-8 text. Blank lines (plain) and blank cells (csv)
/// are skipped.
pub fn load_series<R: Read>(source: R, format: &InputFormat) -> Result<NumericSeries> {
    let values = match format {
        InputFormat::Plain => load_plain(source)?,
        InputFormat::Csv(column) => load_csv(source, column)?,
    };
    if values.is_empty() {
        return Err(Error::Empty);
    }
    Ok(NumericSeries(values))
}

fn load_plain<R: Read>(source: R) -> Result<Vec<f64>> {
    let mut values = Vec::new();
    for (idx, line) in BufReader::new(source).lines().enumerate() {
        let line = line?;
        let token = line.trim();
        if token.is_empty() {
            continue;
        }
        values.push(parse_value(token, idx + 1)?);
    }
    Ok(values)
}

fn load_csv<R: Read>(source: R, column: &ColumnSelector) -> Result<Vec<f64>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(source);
    let col = match column {
        ColumnSelector::Index(i) => *i,
        ColumnSelector::Name(name) => reader
            .headers()?
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| Error::MissingColumn(name.clone()))?,
    };
    let mut values = Vec::new();
    for record in reader.records() {
        let record = record?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        if record.iter().all(str::is_empty) {
            continue;
        }
        let field = record
            .get(col)
            .ok_or(Error::ShortRow { line, column: col })?;
        if field.is_empty() {
            continue;
        }
        values.push(parse_value(field, line)?);
    }
    Ok(values)
}
