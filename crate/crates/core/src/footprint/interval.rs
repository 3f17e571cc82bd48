use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Serialize};

use super::FootprintError;

/// Closed range `[lo, hi]` with `lo <= hi`. A point value has `lo == hi`.
///
/// Serializes as a two-element JSON array.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 2]", into = "[f64; 2]")]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    pub const ZERO: Interval = Interval { lo: 0.0, hi: 0.0 };

    pub fn new(lo: f64, hi: f64) -> Result<Self, FootprintError> {
        if !lo.is_finite() || !hi.is_finite() {
            return Err(FootprintError::NonFinite("interval bound"));
        }
        if lo > hi {
            return Err(FootprintError::InvertedInterval { lo, hi });
        }
        Ok(Interval { lo, hi })
    }

    /// Degenerate interval `[x, x]`.
    ///
    /// # Panics
    /// If `x` is not finite.
    pub fn point(x: f64) -> Self {
        assert!(x.is_finite(), "interval point must be finite, got {x}");
        Interval { lo: x, hi: x }
    }

    /// Smallest interval containing both values, in either order.
    pub fn hull(a: f64, b: f64) -> Result<Self, FootprintError> {
        Interval::new(a.min(b), a.max(b))
    }

    pub fn lo(self) -> f64 {
        self.lo
    }

    pub fn hi(self) -> f64 {
        self.hi
    }

    pub fn mid(self) -> f64 {
        self.lo + (self.hi - self.lo) / 2.0
    }

    pub fn width(self) -> f64 {
        self.hi - self.lo
    }

    pub fn is_point(self) -> bool {
        self.lo == self.hi
    }

    pub fn is_non_negative(self) -> bool {
        self.lo >= 0.0
    }

    pub fn contains(self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    /// `[k·lo, k·hi]`. Negative factors are rejected: none of the quantities
    /// modeled here may flip sign.
    pub fn scale(self, k: f64) -> Result<Self, FootprintError> {
        if !k.is_finite() {
            return Err(FootprintError::NonFinite("scale factor"));
        }
        if k < 0.0 {
            return Err(FootprintError::NegativeScale(k));
        }
        Ok(Interval {
            lo: self.lo * k,
            hi: self.hi * k,
        })
    }

    /// Endpoint-paired product `[a.lo·b.lo, a.hi·b.hi]`.
    ///
    /// For two non-negative ranges this is also the exact interval product.
    pub fn pairwise_mul(self, other: Interval) -> Interval {
        debug_assert!(self.is_non_negative() && other.is_non_negative());
        Interval {
            lo: self.lo * other.lo,
            hi: self.hi * other.hi,
        }
    }

    /// Apply a monotone non-decreasing function to both endpoints.
    pub(crate) fn map_monotone(self, f: impl Fn(f64) -> f64) -> Interval {
        let (lo, hi) = (f(self.lo), f(self.hi));
        debug_assert!(lo <= hi, "map_monotone given a decreasing function");
        Interval { lo, hi }
    }
}

impl Add for Interval {
    type Output = Interval;

    fn add(self, rhs: Interval) -> Interval {
        Interval {
            lo: self.lo + rhs.lo,
            hi: self.hi + rhs.hi,
        }
    }
}

impl TryFrom<[f64; 2]> for Interval {
    type Error = FootprintError;

    fn try_from([lo, hi]: [f64; 2]) -> Result<Self, Self::Error> {
        Interval::new(lo, hi)
    }
}

impl From<Interval> for [f64; 2] {
    fn from(iv: Interval) -> Self {
        [iv.lo, iv.hi]
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_point() {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "[{}, {}]", self.lo, self.hi)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(lo: f64, hi: f64) -> Interval {
        Interval::new(lo, hi).unwrap()
    }

    #[test]
    fn add_laptop_and_cloud_ranges() {
        let total = iv(3.36, 13.44) + Interval::point(2.725);
        assert!((total.lo() - 6.085).abs() < 1e-12);
        assert!((total.hi() - 16.165).abs() < 1e-12);
    }

    #[test]
    fn add_endpoints() {
        assert_eq!(iv(1.0, 2.0) + iv(3.0, 5.0), iv(4.0, 7.0));
        assert_eq!(Interval::ZERO + iv(0.3, 0.9), iv(0.3, 0.9));
    }

    #[test]
    fn scale_operator_range() {
        let laptops = iv(70.0, 400.0).scale(0.48).unwrap();
        assert!((laptops.lo() - 33.6).abs() < 1e-12);
        assert!((laptops.hi() - 192.0).abs() < 1e-12);
    }

    #[test]
    fn scale_identity_and_zero() {
        let a = iv(2.5, 9.0);
        assert_eq!(a.scale(1.0).unwrap(), a);
        assert_eq!(a.scale(0.0).unwrap(), Interval::ZERO);
    }

    #[test]
    fn negative_scale_rejected() {
        assert_eq!(iv(1.0, 2.0).scale(-0.5), Err(FootprintError::NegativeScale(-0.5)));
    }

    #[test]
    fn inverted_and_nan_rejected() {
        assert!(matches!(
            Interval::new(2.0, 1.0),
            Err(FootprintError::InvertedInterval { .. })
        ));
        assert!(Interval::new(f64::NAN, 1.0).is_err());
        assert!(Interval::new(0.0, f64::INFINITY).is_err());
    }

    #[test]
    fn hull_sorts() {
        assert_eq!(Interval::hull(91.7, 83.2).unwrap(), iv(83.2, 91.7));
    }

    #[test]
    fn json_shape() {
        let a = iv(0.18, 0.3);
        assert_eq!(serde_json::to_string(&a).unwrap(), "[0.18,0.3]");
        let back: Interval = serde_json::from_str("[0.18,0.3]").unwrap();
        assert_eq!(back, a);
        assert!(serde_json::from_str::<Interval>("[0.3,0.18]").is_err());
    }
}
