//! Edit-distance based string similarity on a 0 to 100 scale.
//!
//! All functions operate on Unicode scalar values, not bytes.

/// Cost of replacing one character with another.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubstitutionCost {
    /// Classic Levenshtein distance.
    One,
    /// A substitution costs as much as a deletion plus an insertion (indel
    /// distance). This is the distance underlying [`similarity_ratio`].
    Two,
}

impl SubstitutionCost {
    fn value(self) -> usize {
        match self {
            SubstitutionCost::One => 1,
            SubstitutionCost::Two => 2,
        }
    }
}

/// Minimal edit cost between `a` and `b` with unit insertions and deletions.
pub fn levenshtein_distance(a: &str, b: &str, sub: SubstitutionCost) -> usize {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    levenshtein_chars(&a, &b, sub)
}

pub(crate) fn levenshtein_chars(a: &[char], b: &[char], sub: SubstitutionCost) -> usize {
    // common prefix and suffix never contribute
    let prefix = a.iter().zip(b).take_while(|(x, y)| x == y).count();
    let (a, b) = (&a[prefix..], &b[prefix..]);
    let suffix = a.iter().rev().zip(b.iter().rev()).take_while(|(x, y)| x == y).count();
    let (a, b) = (&a[..a.len() - suffix], &b[..b.len() - suffix]);

    let (short, long) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    if short.is_empty() {
        return long.len();
    }
    let sub = sub.value();
    let mut row: Vec<usize> = (0..=short.len()).collect();
    for (i, lc) in long.iter().enumerate() {
        let mut diag = row[0];
        row[0] = i + 1;
        for (j, sc) in short.iter().enumerate() {
            let above = row[j + 1];
            let cost = if lc == sc { diag } else { diag + sub };
            row[j + 1] = cost.min(above + 1).min(row[j] + 1);
            diag = above;
        }
    }
    row[short.len()]
}

/// `round(100 * num / den)` with ties to even, in exact integer arithmetic.
fn round_percent(num: usize, den: usize) -> u8 {
    let scaled = 100 * num;
    let (q, r) = (scaled / den, scaled % den);
    let q = match (2 * r).cmp(&den) {
        std::cmp::Ordering::Greater => q + 1,
        std::cmp::Ordering::Equal if q % 2 == 1 => q + 1,
        _ => q,
    };
    q as u8
}

pub(crate) fn ratio_chars(a: &[char], b: &[char]) -> u8 {
    let total = a.len() + b.len();
    if total == 0 {
        return 100;
    }
    let d = levenshtein_chars(a, b, SubstitutionCost::Two);
    round_percent(total - d, total)
}

/// Normalized similarity `round(100 * (S - D) / S)` where `S` is the summed
/// length and `D` the indel distance. Two empty strings score 100.
pub fn similarity_ratio(a: &str, b: &str) -> u8 {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    ratio_chars(&a, &b)
}

/// Highest ratio `similarity_ratio` can reach for strings of these lengths.
/// Used to skip pairs that cannot clear a threshold.
pub fn ratio_upper_bound(len_a: usize, len_b: usize) -> u8 {
    let total = len_a + len_b;
    if total == 0 {
        return 100;
    }
    round_percent(total - len_a.abs_diff(len_b), total)
}

/// Best [`similarity_ratio`] of the shorter string against every contiguous
/// window of the longer string with the same length.
pub fn partial_ratio(a: &str, b: &str) -> u8 {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    partial_ratio_chars(&a, &b)
}

pub(crate) fn partial_ratio_chars(a: &[char], b: &[char]) -> u8 {
    if a.len() == b.len() {
        return ratio_chars(a, b);
    }
    let (short, long) = if a.len() < b.len() { (a, b) } else { (b, a) };
    if short.is_empty() {
        return 100;
    }
    let mut best = 0;
    for window in long.windows(short.len()) {
        best = best.max(ratio_chars(short, window));
        if best == 100 {
            break;
        }
    }
    best
}
