//! Integers extended by `±∞`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use thiserror::Error;

/// An element of `Z ∪ {-∞, +∞}` with the obvious total order.
///
/// Addition saturates at the infinities; adding opposite infinities is a
/// contract violation reported by [`ExtInt::try_add`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExtInt {
    NegInf,
    Finite(i64),
    PosInf,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExtIntError {
    #[error("-∞ + ∞ is undefined")]
    OppositeInfinities,
    #[error("cannot parse {0:?} as an extended integer")]
    Parse(String),
}

impl ExtInt {
    pub const ZERO: ExtInt = ExtInt::Finite(0);

    pub fn finite(self) -> Option<i64> {
        match self {
            ExtInt::Finite(v) => Some(v),
            _ => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, ExtInt::Finite(_))
    }

    pub fn try_add(self, other: ExtInt) -> Result<ExtInt, ExtIntError> {
        use ExtInt::*;
        match (self, other) {
            (NegInf, PosInf) | (PosInf, NegInf) => Err(ExtIntError::OppositeInfinities),
            (NegInf, _) | (_, NegInf) => Ok(NegInf),
            (PosInf, _) | (_, PosInf) => Ok(PosInf),
            (Finite(a), Finite(b)) => Ok(Finite(a + b)),
        }
    }

    pub fn try_sub(self, other: ExtInt) -> Result<ExtInt, ExtIntError> {
        self.try_add(-other)
    }
}

impl From<i64> for ExtInt {
    fn from(v: i64) -> Self {
        ExtInt::Finite(v)
    }
}

impl From<i32> for ExtInt {
    fn from(v: i32) -> Self {
        ExtInt::Finite(v as i64)
    }
}

impl From<usize> for ExtInt {
    fn from(v: usize) -> Self {
        ExtInt::Finite(v as i64)
    }
}

impl Ord for ExtInt {
    fn cmp(&self, other: &Self) -> Ordering {
        use ExtInt::*;
        match (self, other) {
            (Finite(a), Finite(b)) => a.cmp(b),
            (a, b) => rank(*a).cmp(&rank(*b)),
        }
    }
}

fn rank(x: ExtInt) -> u8 {
    match x {
        ExtInt::NegInf => 0,
        ExtInt::Finite(_) => 1,
        ExtInt::PosInf => 2,
    }
}

impl PartialOrd for ExtInt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Neg for ExtInt {
    type Output = ExtInt;
    fn neg(self) -> ExtInt {
        match self {
            ExtInt::NegInf => ExtInt::PosInf,
            ExtInt::PosInf => ExtInt::NegInf,
            ExtInt::Finite(v) => ExtInt::Finite(-v),
        }
    }
}

/// Panics on `-∞ + ∞`; use [`ExtInt::try_add`] when either side can be
/// an opposite infinity.
impl Add for ExtInt {
    type Output = ExtInt;
    fn add(self, other: ExtInt) -> ExtInt {
        self.try_add(other).expect("-∞ + ∞")
    }
}

impl Sub for ExtInt {
    type Output = ExtInt;
    fn sub(self, other: ExtInt) -> ExtInt {
        self + (-other)
    }
}

impl fmt::Display for ExtInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtInt::NegInf => write!(f, "-inf"),
            ExtInt::PosInf => write!(f, "inf"),
            ExtInt::Finite(v) => write!(f, "{v}"),
        }
    }
}

impl FromStr for ExtInt {
    type Err = ExtIntError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "inf" | "+inf" | "∞" | "+∞" => Ok(ExtInt::PosInf),
            "-inf" | "-∞" => Ok(ExtInt::NegInf),
            t => t.parse::<i64>().map(ExtInt::Finite).map_err(|_| ExtIntError::Parse(s.to_string())),
        }
    }
}
