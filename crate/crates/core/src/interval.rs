//! Closed real intervals and the possibility-based order relations used by the
//! outranking model.
//!
//! An interval `[lo, hi]` with `lo == hi` is *degenerate* and stands for an
//! ordinary real number. Comparisons go through [`possibility`], the degree of
//! credibility that a realization of one interval is at least a realization of
//! the other.

use std::fmt;
use std::ops::{Add, Neg};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A closed interval `[lo, hi]` with `lo <= hi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    /// Builds `[lo, hi]`, rejecting non-finite limits and `lo > hi`.
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !lo.is_finite() || !hi.is_finite() {
            return Err(Error::InvalidInterval {
                lo,
                hi,
                reason: "limits must be finite",
            });
        }
        if lo > hi {
            return Err(Error::InvalidInterval {
                lo,
                hi,
                reason: "lower limit exceeds upper limit",
            });
        }
        Ok(Self { lo, hi })
    }

    /// The degenerate interval `[value, value]`.
    #[inline]
    pub fn point(value: f64) -> Self {
        debug_assert!(value.is_finite(), "non-finite point interval");
        Self { lo: value, hi: value }
    }

    #[inline]
    pub fn lo(&self) -> f64 {
        self.lo
    }

    #[inline]
    pub fn hi(&self) -> f64 {
        self.hi
    }

    #[inline]
    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    /// Exact structural degeneracy (`lo == hi` bitwise).
    #[inline]
    pub fn is_degenerate(&self) -> bool {
        self.lo == self.hi
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    /// `P(self >= other)`.
    #[inline]
    pub fn possibility_geq(&self, other: &Interval) -> f64 {
        possibility(self, other)
    }

    /// `self >= other`, i.e. `P(self >= other) >= 0.5`.
    #[inline]
    pub fn geq(&self, other: &Interval) -> bool {
        interval_geq(self, other)
    }

    /// `self > other`, i.e. `P(self >= other) > 0.5`.
    #[inline]
    pub fn gt(&self, other: &Interval) -> bool {
        interval_gt(self, other)
    }
}

impl Add for Interval {
    type Output = Interval;

    #[inline]
    fn add(self, rhs: Interval) -> Interval {
        Interval {
            lo: self.lo + rhs.lo,
            hi: self.hi + rhs.hi,
        }
    }
}

impl Neg for Interval {
    type Output = Interval;

    #[inline]
    fn neg(self) -> Interval {
        Interval {
            lo: -self.hi,
            hi: -self.lo,
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl Serialize for Interval {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        [self.lo, self.hi].serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Interval {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let [lo, hi] = <[f64; 2]>::deserialize(deserializer)?;
        Interval::new(lo, hi).map_err(serde::de::Error::custom)
    }
}

/// Free-function form of interval construction.
pub fn make_interval(lo: f64, hi: f64) -> Result<Interval> {
    Interval::new(lo, hi)
}

/// Degree of credibility `P(e >= d)` that a realization of `e` is at least a
/// realization of `d`.
///
/// Two degenerate intervals compare as real numbers (1 or 0). Otherwise the
/// ratio `(ē - d̲) / (width(e) + width(d))` is clamped to `[0, 1]`.
#[inline]
pub fn possibility(e: &Interval, d: &Interval) -> f64 {
    if e.is_degenerate() && d.is_degenerate() {
        return if e.lo >= d.lo { 1.0 } else { 0.0 };
    }
    let p = (e.hi - d.lo) / (e.width() + d.width());
    if p > 1.0 {
        1.0
    } else if p >= 0.0 {
        p
    } else {
        0.0
    }
}

#[inline]
pub fn interval_geq(e: &Interval, d: &Interval) -> bool {
    possibility(e, d) >= 0.5
}

#[inline]
pub fn interval_gt(e: &Interval, d: &Interval) -> bool {
    possibility(e, d) > 0.5
}
