//! Ratcliff/Obershelp gestalt pattern matching.
//!
//! The matched length `M` is found by taking the longest common contiguous
//! block, then recursing into the regions to its left and right. The score is
//! `2M / (|a| + |b|)` with lengths in code points.
//!
//! The longest-block search keeps the first block found scanning `a` then `b`
//! left to right. That choice is order-dependent, so the two inputs are put in
//! code-point lexicographic order before matching, which makes the score
//! symmetric.

use std::collections::HashMap;

/// A text split into code points, with a position index for fast block search.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct PreparedText {
    chars: Vec<char>,
    positions: HashMap<char, Vec<u32>>,
}

impl PreparedText {
    pub fn new(text: &str) -> Self {
        let chars: Vec<char> = text.chars().collect();
        let mut positions: HashMap<char, Vec<u32>> = HashMap::new();
        for (j, &c) in chars.iter().enumerate() {
            positions.entry(c).or_default().push(j as u32);
        }
        Self { chars, positions }
    }

    pub fn chars(&self) -> &[char] {
        &self.chars
    }

    pub fn len(&self) -> usize {
        self.chars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chars.is_empty()
    }
}

/// Similarity of two strings in `[0, 1]`.
pub fn similarity(a: &str, b: &str) -> f64 {
    prepared_similarity(&PreparedText::new(a), &PreparedText::new(b))
}

/// Similarity of two pre-split texts.
pub fn prepared_similarity(a: &PreparedText, b: &PreparedText) -> f64 {
    let total = a.len() + b.len();
    if total == 0 {
        return 1.0;
    }
    2.0 * matched_chars(a, b) as f64 / total as f64
}

/// Total length of the matching blocks between `a` and `b`.
pub fn matched_chars(a: &PreparedText, b: &PreparedText) -> usize {
    if a.is_empty() || b.is_empty() {
        return 0;
    }
    let (a, b) = if a.chars <= b.chars { (a, b) } else { (b, a) };
    Matcher::new(a, b).total()
}

struct Matcher<'a> {
    a: &'a [char],
    b: &'a PreparedText,
    // run lengths keyed by (end position in b) + 1, for the previous and current row of a
    prev: Vec<u32>,
    cur: Vec<u32>,
    prev_touched: Vec<usize>,
    cur_touched: Vec<usize>,
}

impl<'a> Matcher<'a> {
    fn new(a: &'a PreparedText, b: &'a PreparedText) -> Self {
        let m = b.len() + 1;
        Self {
            a: &a.chars,
            b,
            prev: vec![0; m],
            cur: vec![0; m],
            prev_touched: Vec::new(),
            cur_touched: Vec::new(),
        }
    }

    fn total(&mut self) -> usize {
        let mut matched = 0;
        let mut pending = vec![(0, self.a.len(), 0, self.b.len())];
        while let Some((alo, ahi, blo, bhi)) = pending.pop() {
            let (i, j, k) = self.longest_block(alo, ahi, blo, bhi);
            if k == 0 {
                continue;
            }
            matched += k;
            if alo < i && blo < j {
                pending.push((alo, i, blo, j));
            }
            if i + k < ahi && j + k < bhi {
                pending.push((i + k, ahi, j + k, bhi));
            }
        }
        matched
    }

    /// Longest common block of `a[alo..ahi]` and `b[blo..bhi]` as `(i, j, len)`.
    fn longest_block(
        &mut self,
        alo: usize,
        ahi: usize,
        blo: usize,
        bhi: usize,
    ) -> (usize, usize, usize) {
        let (mut best_i, mut best_j, mut best_k) = (alo, blo, 0usize);
        for i in alo..ahi {
            if let Some(js) = self.b.positions.get(&self.a[i]) {
                let start = js.partition_point(|&j| (j as usize) < blo);
                for &j in &js[start..] {
                    let j = j as usize;
                    if j >= bhi {
                        break;
                    }
                    let k = self.prev[j] + 1;
                    self.cur[j + 1] = k;
                    self.cur_touched.push(j + 1);
                    let k = k as usize;
                    if k > best_k {
                        best_i = i + 1 - k;
                        best_j = j + 1 - k;
                        best_k = k;
                    }
                }
            }
            for &t in &self.prev_touched {
                self.prev[t] = 0;
            }
            self.prev_touched.clear();
            std::mem::swap(&mut self.prev, &mut self.cur);
            std::mem::swap(&mut self.prev_touched, &mut self.cur_touched);
        }
        for &t in &self.prev_touched {
            self.prev[t] = 0;
        }
        self.prev_touched.clear();
        (best_i, best_j, best_k)
    }
}
