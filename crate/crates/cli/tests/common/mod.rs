#![allow(dead_code)]

use std::io::Write;
use std::process::{Command, Output};

use rand::rngs::StdRng;
use rand::SeedableRng;
use tempfile::NamedTempFile;

pub const EXAMPLE_T: [f64; 20] = [
    16., 8., 11., 10., 12., 16., 17., 13., 20., 18., 21., 22., 18., 14., 21., 24., 23., 27., 25.,
    28.,
];

/// Seed from `COP_SEED`, or a fixed default.
pub fn seed() -> u64 {
    std::env::var("COP_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(0x5eed_c0de)
}

pub fn rng(stream: u64) -> StdRng {
    StdRng::seed_from_u64(seed() ^ stream.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

pub fn series_file(values: &[f64]) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    for v in values {
        writeln!(f, "{v}").unwrap();
    }
    f.flush().unwrap();
    f
}

pub fn text_file(text: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f.flush().unwrap();
    f
}

pub fn copmine(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_copmine"))
        .args(args)
        .output()
        .expect("binary runs")
}

pub fn path(f: &NamedTempFile) -> &str {
    f.path().to_str().unwrap()
}

pub fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

pub fn json(out: &Output) -> serde_json::Value {
    assert!(
        out.status.success(),
        "exit {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

/// Ranks by counting smaller elements; `None` on any tie.
pub fn ranks(window: &[f64]) -> Option<Vec<usize>> {
    let mut out = Vec::with_capacity(window.len());
    for (i, x) in window.iter().enumerate() {
        if window[i + 1..].contains(x) {
            return None;
        }
        out.push(window.iter().filter(|y| *y < x).count() + 1);
    }
    Some(out)
}

/// 1-based ends of every window of `t` ranked exactly like `p`.
pub fn occurrences(t: &[f64], p: &[usize]) -> Vec<usize> {
    if p.is_empty() || t.len() < p.len() {
        return Vec::new();
    }
    (p.len()..=t.len())
        .filter(|&end| ranks(&t[end - p.len()..end]).as_deref() == Some(p))
        .collect()
}

/// Turning points with first and last kept, straight from the extremum test.
pub fn keypoints(t: &[f64]) -> Vec<f64> {
    if t.len() <= 2 {
        return t.to_vec();
    }
    let mut out = vec![t[0]];
    for w in t.windows(3) {
        let (a, b, c) = (w[0], w[1], w[2]);
        if (b < a && b <= c) || (b <= a && b < c) || (b > a && b >= c) || (b >= a && b > c) {
            out.push(b);
        }
    }
    out.push(t[t.len() - 1]);
    out
}

pub fn pattern_text(p: &[usize]) -> String {
    let inner: Vec<String> = p.iter().map(|r| r.to_string()).collect();
    format!("({})", inner.join(","))
}
