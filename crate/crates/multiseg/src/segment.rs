use std::cmp::Ordering;
use std::fmt;

use crate::MultisegError;

/// A nonempty integer interval `[a, b]`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Segment {
    a: i64,
    b: i64,
}

impl Segment {
    pub fn new(a: i64, b: i64) -> Result<Self, MultisegError> {
        if a > b {
            return Err(MultisegError::EmptySegment { a, b });
        }
        Ok(Segment { a, b })
    }

    /// `[a, b]`, or `None` when `a > b`.
    pub fn try_new(a: i64, b: i64) -> Option<Self> {
        (a <= b).then_some(Segment { a, b })
    }

    pub fn point(c: i64) -> Self {
        Segment { a: c, b: c }
    }

    pub fn begin(&self) -> i64 {
        self.a
    }

    pub fn end(&self) -> i64 {
        self.b
    }

    /// Number of points.
    pub fn size(&self) -> usize {
        (self.b - self.a + 1) as usize
    }

    pub fn contains(&self, x: i64) -> bool {
        self.a <= x && x <= self.b
    }

    pub fn is_subset_of(&self, other: &Segment) -> bool {
        other.a <= self.a && self.b <= other.b
    }

    /// `self ≺ other`: `other` starts strictly inside-or-just-after `self`
    /// and ends strictly after it.
    pub fn precedes(&self, other: &Segment) -> bool {
        self.a < other.a && other.a <= self.b + 1 && self.b < other.b
    }

    pub fn linked(&self, other: &Segment) -> bool {
        self.precedes(other) || other.precedes(self)
    }

    pub fn shift(&self, t: i64) -> Segment {
        Segment { a: self.a + t, b: self.b + t }
    }

    /// `[a-1, b-1]`.
    pub fn left_shift(&self) -> Segment {
        self.shift(-1)
    }

    /// `[a+1, b+1]`.
    pub fn right_shift(&self) -> Segment {
        self.shift(1)
    }

    /// `[a, b-1]`.
    pub fn drop_end(&self) -> Option<Segment> {
        Segment::try_new(self.a, self.b - 1)
    }

    /// `[a+1, b]`.
    pub fn drop_begin(&self) -> Option<Segment> {
        Segment::try_new(self.a + 1, self.b)
    }

    /// `[a, b+1]`.
    pub fn extend_end(&self) -> Segment {
        Segment { a: self.a, b: self.b + 1 }
    }

    /// `[a-1, b]`.
    pub fn extend_begin(&self) -> Segment {
        Segment { a: self.a - 1, b: self.b }
    }

    /// Union and (possibly empty) intersection of a linked pair.
    pub fn offspring(&self, other: &Segment) -> (Segment, Option<Segment>) {
        let union = Segment { a: self.a.min(other.a), b: self.b.max(other.b) };
        (union, Segment::try_new(self.a.max(other.a), self.b.min(other.b)))
    }

    /// `[-b, -a]`.
    pub fn dual(&self) -> Segment {
        Segment { a: -self.b, b: -self.a }
    }

    /// Canonical order: end descending, then begin descending.
    pub fn canonical_cmp(&self, other: &Segment) -> Ordering {
        other.b.cmp(&self.b).then(other.a.cmp(&self.a))
    }
}

/// `≺` where either side may be empty; an empty segment precedes nothing.
pub fn precedes_opt(x: Option<Segment>, y: Option<Segment>) -> bool {
    matches!((x, y), (Some(x), Some(y)) if x.precedes(&y))
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.a == self.b {
            write!(f, "[{}]", self.a)
        } else {
            write!(f, "[{},{}]", self.a, self.b)
        }
    }
}

impl fmt::Debug for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
