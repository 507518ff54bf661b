//! Character-offset spans and interval arithmetic.
//!
//! All offsets in this crate count Unicode scalar values of the decoded
//! source, never bytes, so span arithmetic is identical across platforms
//! and implementations.

use serde::{Deserialize, Serialize};

/// Half-open interval of character offsets, `start..end`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CharSpan {
    pub start: usize,
    pub end: usize,
}

impl CharSpan {
    pub fn new(start: usize, end: usize) -> Self {
        debug_assert!(start <= end, "span start {start} > end {end}");
        CharSpan { start, end }
    }

    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.start == self.end
    }

    pub fn contains_span(&self, other: &CharSpan) -> bool {
        self.start <= other.start && other.end <= self.end
    }

    pub fn intersects(&self, other: &CharSpan) -> bool {
        self.start < other.end && other.start < self.end
    }

    pub fn intersection_len(&self, other: &CharSpan) -> usize {
        let lo = self.start.max(other.start);
        let hi = self.end.min(other.end);
        hi.saturating_sub(lo)
    }

    /// Smallest span covering both.
    pub fn hull(&self, other: &CharSpan) -> CharSpan {
        CharSpan::new(self.start.min(other.start), self.end.max(other.end))
    }

    /// Character distance between two disjoint spans; 0 if they touch or overlap.
    pub fn gap_to(&self, other: &CharSpan) -> usize {
        if self.intersects(other) {
            return 0;
        }
        if self.end <= other.start {
            other.start - self.end
        } else {
            self.start - other.end
        }
    }
}

/// Number of characters in `s`.
pub fn char_len(s: &str) -> usize {
    s.chars().count()
}

/// Substring of `s` between character offsets `start..end`.
pub fn char_slice(s: &str, start: usize, end: usize) -> String {
    s.chars().skip(start).take(end.saturating_sub(start)).collect()
}

/// Byte offset of character offset `idx` in `s` (byte length if past the end).
pub fn char_to_byte(s: &str, idx: usize) -> usize {
    s.char_indices().nth(idx).map(|(b, _)| b).unwrap_or(s.len())
}

/// Character offset of byte offset `b` in `s`.
pub fn byte_to_char(s: &str, b: usize) -> usize {
    s.char_indices().take_while(|(off, _)| *off < b).count()
}

/// Merge a list of intervals into disjoint sorted intervals.
pub fn merge_intervals(mut spans: Vec<CharSpan>) -> Vec<CharSpan> {
    spans.retain(|s| !s.is_empty());
    spans.sort();
    let mut out: Vec<CharSpan> = Vec::with_capacity(spans.len());
    for s in spans {
        match out.last_mut() {
            Some(last) if s.start <= last.end => last.end = last.end.max(s.end),
            _ => out.push(s),
        }
    }
    out
}

/// Total length of `span ∩ union`, where `union` is disjoint and sorted.
pub fn covered_len(span: &CharSpan, union: &[CharSpan]) -> usize {
    union.iter().map(|u| span.intersection_len(u)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn merge_overlapping_and_touching() {
        let merged = merge_intervals(vec![
            CharSpan::new(5, 9),
            CharSpan::new(0, 3),
            CharSpan::new(3, 5),
            CharSpan::new(20, 21),
        ]);
        assert_eq!(merged, vec![CharSpan::new(0, 9), CharSpan::new(20, 21)]);
    }

    #[test]
    fn covered_length_counts_each_piece_once() {
        let union = vec![CharSpan::new(0, 10), CharSpan::new(20, 30)];
        assert_eq!(covered_len(&CharSpan::new(5, 25), &union), 10);
        assert_eq!(covered_len(&CharSpan::new(10, 20), &union), 0);
    }

    #[test]
    fn char_offsets_are_scalar_values() {
        let s = "αβ$x$";
        assert_eq!(char_len(s), 5);
        assert_eq!(char_slice(s, 2, 5), "$x$");
        assert_eq!(char_to_byte(s, 2), 4);
        assert_eq!(byte_to_char(s, 4), 2);
    }

    #[test]
    fn gap_between_spans() {
        let a = CharSpan::new(0, 5);
        let b = CharSpan::new(8, 10);
        assert_eq!(a.gap_to(&b), 3);
        assert_eq!(b.gap_to(&a), 3);
        assert_eq!(a.gap_to(&CharSpan::new(4, 6)), 0);
    }
}
