//! All-occurrences exact matching of short binary patterns.
//!
//! Patterns up to 64 symbols use a simplified backward nondeterministic DAWG
//! matcher that reads a 2-gram before entering its inner loop (SBNDM2).
//! Longer patterns fall back to a plain window scan with identical output.

const WORD: usize = u64::BITS as usize;

/// Per-symbol occurrence masks: bit `i` of `masks[c]` is set iff
/// `pattern[i] == c`.
struct Masks {
    masks: [u64; 2],
    len: usize,
}

impl Masks {
    fn new(pattern: &[u8]) -> Masks {
        debug_assert!(!pattern.is_empty() && pattern.len() <= WORD);
        let mut masks = [0u64; 2];
        for (i, &c) in pattern.iter().enumerate() {
            masks[c as usize] |= 1 << i;
        }
        Masks {
            masks,
            len: pattern.len(),
        }
    }

    #[inline]
    fn get(&self, c: u8) -> u64 {
        self.masks[c as usize]
    }
}

/// 0-based end indices of every occurrence of `pattern` in `text`.
pub(crate) fn find_all(text: &[u8], pattern: &[u8]) -> Vec<usize> {
    let m = pattern.len();
    if m == 0 || m > text.len() {
        return Vec::new();
    }
    if m == 1 || m > WORD {
        return naive(text, pattern);
    }
    sbndm2(text, &Masks::new(pattern))
}

/// State `d` has bit `i` set iff the text factor read so far, `text[j..=end]`,
/// equals `pattern[i..i + (end - j + 1)]`. Reading one more symbol to the
/// left maps bit `i + 1` to bit `i`.
fn sbndm2(text: &[u8], masks: &Masks) -> Vec<usize> {
    let m = masks.len;
    let n = text.len();
    let mut out = Vec::new();
    let mut end = m - 1;
    while end < n {
        let mut d = (masks.get(text[end]) >> 1) & masks.get(text[end - 1]);
        if d == 0 {
            // the 2-gram ending here is not a pattern factor
            end += m - 1;
            continue;
        }
        let mut j = end - 1;
        let start = end + 1 - m;
        while j > start {
            j -= 1;
            d = (d >> 1) & masks.get(text[j]);
            if d == 0 {
                break;
            }
        }
        if d & 1 != 0 && j == start {
            out.push(end);
            end += 1;
        } else {
            // text[j..=end] is not a factor; no window starting at or before j can match
            end = j + m;
        }
    }
    out
}

fn naive(text: &[u8], pattern: &[u8]) -> Vec<usize> {
    text.windows(pattern.len())
        .enumerate()
        .filter(|(_, w)| *w == pattern)
        .map(|(start, _)| start + pattern.len() - 1)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn alternating_text() {
        let b = [0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1];
        assert_eq!(find_all(&b, &[1, 0]), vec![2, 4, 6, 8, 10, 12]);
        assert_eq!(find_all(&b, &[1, 1]), Vec::<usize>::new());
        assert_eq!(find_all(&b, &b), vec![13]);
        assert_eq!(find_all(&b, &[0]), vec![0, 2, 4, 6, 8, 10, 12]);
        assert_eq!(find_all(&[1, 1, 1, 1], &[1, 1, 1]), vec![2, 3]);
    }

    #[test]
    fn long_patterns_fall_back() {
        let text: Vec<u8> = (0..300).map(|i| ((i * 7 + i / 5) % 3 == 0) as u8).collect();
        let pattern = text[100..180].to_vec();
        assert_eq!(find_all(&text, &pattern), naive(&text, &pattern));
        assert!(find_all(&text, &pattern).contains(&179));
    }

    proptest! {
        #[test]
        fn agrees_with_naive(
            text in prop::collection::vec(0u8..2, 0..400),
            pattern in prop::collection::vec(0u8..2, 1..70),
        ) {
            prop_assert_eq!(find_all(&text, &pattern), naive(&text, &pattern));
        }

        #[test]
        fn agrees_on_self_substrings(
            text in prop::collection::vec(0u8..2, 2..300),
            a in 0usize..300,
            len in 2usize..66,
        ) {
            let a = a % (text.len() - 1);
            let b = (a + len).min(text.len());
            let pattern = &text[a..b];
            let found = find_all(&text, pattern);
            prop_assert!(found.contains(&(b - 1)));
            prop_assert_eq!(found, naive(&text, pattern));
        }
    }
}
