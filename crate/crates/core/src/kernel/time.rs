//! Discrete time values with an infinity element.
//!
//! All timers and durations in the model are of this type. Addition
//! saturates at infinity; subtraction is the truncated `monus`.

use std::fmt;
use std::ops::Add;

/// A non-negative discrete time value, or infinity (a disabled timer).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TimeValue {
    Finite(u64),
    Infinity,
}

pub use TimeValue::{Finite, Infinity};

impl TimeValue {
    pub fn is_finite(self) -> bool {
        matches!(self, Finite(_))
    }

    pub fn is_zero(self) -> bool {
        self == Finite(0)
    }

    /// The finite payload, if any.
    pub fn finite(self) -> Option<u64> {
        match self {
            Finite(n) => Some(n),
            Infinity => None,
        }
    }

    /// Truncated subtraction: `Finite(x) monus Finite(y) = Finite(max(x - y, 0))`;
    /// infinity absorbs any finite subtrahend.
    pub fn monus(self, rhs: TimeValue) -> TimeValue {
        match (self, rhs) {
            (Finite(x), Finite(y)) => Finite(x.saturating_sub(y)),
            (Infinity, Finite(_)) => Infinity,
            // Subtracting infinity is never needed by any rule; define it as 0
            // so monus stays total.
            (_, Infinity) => Finite(0),
        }
    }
}

impl Add for TimeValue {
    type Output = TimeValue;

    fn add(self, rhs: TimeValue) -> TimeValue {
        match (self, rhs) {
            (Finite(x), Finite(y)) => Finite(x + y),
            _ => Infinity,
        }
    }
}

impl Add<u64> for TimeValue {
    type Output = TimeValue;

    fn add(self, rhs: u64) -> TimeValue {
        self + Finite(rhs)
    }
}

impl PartialOrd for TimeValue {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for TimeValue {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        match (self, other) {
            (Finite(x), Finite(y)) => x.cmp(y),
            (Finite(_), Infinity) => std::cmp::Ordering::Less,
            (Infinity, Finite(_)) => std::cmp::Ordering::Greater,
            (Infinity, Infinity) => std::cmp::Ordering::Equal,
        }
    }
}

impl fmt::Display for TimeValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Finite(n) => write!(f, "{n}"),
            Infinity => write!(f, "INF"),
        }
    }
}

impl From<u64> for TimeValue {
    fn from(n: u64) -> Self {
        Finite(n)
    }
}
