//! Exact half-integer arithmetic.
//!
//! Every optimum handled by this crate is either a positive integer or half
//! an odd positive integer. Storing twice the mathematical value keeps all
//! arithmetic in `i64` and makes equality exact; nothing in the crate ever
//! rounds through floating point.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

/// An exact multiple of one half, stored as twice its value.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HalfInt {
    doubled: i64,
}

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt { doubled: 0 };
    pub const HALF: HalfInt = HalfInt { doubled: 1 };
    pub const ONE: HalfInt = HalfInt { doubled: 2 };

    /// Builds the value `doubled / 2`.
    pub const fn from_doubled(doubled: i64) -> Self {
        HalfInt { doubled }
    }

    pub const fn from_int(v: i64) -> Self {
        HalfInt { doubled: 2 * v }
    }

    /// Twice the value; always exact.
    pub const fn doubled(self) -> i64 {
        self.doubled
    }

    pub const fn is_integer(self) -> bool {
        self.doubled % 2 == 0
    }

    /// The integer value, if this is a whole number.
    pub fn as_int(self) -> Option<i64> {
        self.is_integer().then_some(self.doubled / 2)
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt { doubled: self.doubled + rhs.doubled }
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt { doubled: self.doubled - rhs.doubled }
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt { doubled: -self.doubled }
    }
}

/// Renders integers plainly and half-odd values as `p/2`, never as decimals.
impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.doubled % 2 == 0 {
            write!(f, "{}", self.doubled / 2)
        } else {
            write!(f, "{}/2", self.doubled)
        }
    }
}

impl fmt::Debug for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_without_decimals() {
        assert_eq!(HalfInt::from_int(3).to_string(), "3");
        assert_eq!(HalfInt::from_doubled(7).to_string(), "7/2");
        assert_eq!(HalfInt::from_doubled(-3).to_string(), "-3/2");
        assert_eq!(HalfInt::from_doubled(1).to_string(), "1/2");
    }

    #[test]
    fn arithmetic_is_exact() {
        let a = HalfInt::from_doubled(3); // 3/2
        let b = HalfInt::from_int(2);
        assert_eq!(a + b, HalfInt::from_doubled(7));
        assert_eq!(b - a, HalfInt::HALF);
        assert_eq!(-a, HalfInt::from_doubled(-3));
        assert!(a < b);
    }

    #[test]
    fn integer_detection() {
        assert_eq!(HalfInt::from_doubled(4).as_int(), Some(2));
        assert_eq!(HalfInt::from_doubled(5).as_int(), None);
    }

    #[test]
    fn serde_round_trips_as_doubled_integer() {
        let v = HalfInt::from_doubled(5);
        let json = serde_json::to_string(&v).unwrap();
        assert_eq!(json, "5");
        let back: HalfInt = serde_json::from_str(&json).unwrap();
        assert_eq!(back, v);
    }
}
