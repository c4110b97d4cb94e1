use std::fmt;

use super::value::{PropertyValue, ABSENT};

/// One piece of a temporal quantity: `value` holds on `[start, end)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Segment {
    pub start: i64,
    pub end: i64,
    pub value: PropertyValue,
}

impl Segment {
    pub fn new(start: i64, end: i64, value: impl Into<PropertyValue>) -> Self {
        Segment {
            start,
            end,
            value: value.into(),
        }
    }

    pub fn contains(&self, t: i64) -> bool {
        self.start <= t && t < self.end
    }
}

/// A value defined piecewise over disjoint half-open integer intervals.
///
/// Well-formed quantities have `start < end` on every segment and segments
/// sorted by start without overlap. Construction does not enforce this; the
/// validation module reports violations.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TemporalQuantity {
    pub segments: Vec<Segment>,
}

impl TemporalQuantity {
    pub fn new(segments: Vec<Segment>) -> Self {
        TemporalQuantity { segments }
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    /// Value at time `t`, or [`PropertyValue::Absent`] when no segment covers it.
    /// Assumes segments are sorted and disjoint.
    pub fn value_at(&self, t: i64) -> &PropertyValue {
        let after = self.segments.partition_point(|s| s.start <= t);
        match after.checked_sub(1).map(|i| &self.segments[i]) {
            Some(seg) if t < seg.end => &seg.value,
            _ => &ABSENT,
        }
    }

    /// Earliest start and latest end, if any segment exists.
    pub fn span(&self) -> Option<(i64, i64)> {
        let lo = self.segments.iter().map(|s| s.start).min()?;
        let hi = self.segments.iter().map(|s| s.end).max()?;
        Some((lo, hi))
    }
}

impl fmt::Display for TemporalQuantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, s) in self.segments.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "({}, {}, {})", s.start, s.end, s.value)?;
        }
        f.write_str("]")
    }
}

/// Convenience wrapper around [`TemporalQuantity::value_at`].
pub fn tq_value_at(tq: &TemporalQuantity, t: i64) -> PropertyValue {
    tq.value_at(t).clone()
}
