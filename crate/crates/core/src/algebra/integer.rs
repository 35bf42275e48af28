//! Arbitrary-precision integers with an inline fast path.
//!
//! Values that fit in an `i64` are stored inline and promoted to a
//! [`BigInt`] only when an operation overflows. The representation is kept
//! normalized so that derived equality and hashing are sound.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Small(i64),
    Big(Box<BigInt>),
}

/// An exact integer.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Integer(Repr);

impl Integer {
    pub const ZERO: Integer = Integer(Repr::Small(0));
    pub const ONE: Integer = Integer(Repr::Small(1));

    fn from_big(b: BigInt) -> Integer {
        match b.to_i64() {
            Some(v) => Integer(Repr::Small(v)),
            None => Integer(Repr::Big(Box::new(b))),
        }
    }

    /// Returns the value as a `BigInt`.
    pub fn to_bigint(&self) -> BigInt {
        match &self.0 {
            Repr::Small(v) => BigInt::from(*v),
            Repr::Big(b) => (**b).clone(),
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        match &self.0 {
            Repr::Small(v) => Some(*v),
            Repr::Big(_) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0))
    }

    pub fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small(1))
    }

    /// True for ±1.
    pub fn is_unit(&self) -> bool {
        matches!(self.0, Repr::Small(1) | Repr::Small(-1))
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small(v) => *v < 0,
            Repr::Big(b) => b.is_negative(),
        }
    }

    pub fn signum(&self) -> i32 {
        match &self.0 {
            Repr::Small(v) => v.signum() as i32,
            Repr::Big(b) => {
                if b.is_negative() {
                    -1
                } else {
                    1
                }
            }
        }
    }

    pub fn abs(&self) -> Integer {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Euclidean remainder, always in `0..|m|`.
    pub fn rem_euclid(&self, m: &Integer) -> Integer {
        assert!(!m.is_zero(), "remainder by zero");
        if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &m.0) {
            if let Some(r) = a.checked_rem_euclid(*b) {
                return Integer(Repr::Small(r));
            }
        }
        let m = m.to_bigint().abs();
        Integer::from_big(self.to_bigint().mod_floor(&m))
    }

    /// Floor division.
    pub fn div_floor(&self, m: &Integer) -> Integer {
        assert!(!m.is_zero(), "division by zero");
        if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &m.0) {
            if let Some(q) = a.checked_div(*b) {
                let q = if (a % b != 0) && ((*a < 0) != (*b < 0)) { q - 1 } else { q };
                return Integer(Repr::Small(q));
            }
        }
        Integer::from_big(self.to_bigint().div_floor(&m.to_bigint()))
    }

    /// Division that succeeds only when `m` divides `self`.
    pub fn div_exact(&self, m: &Integer) -> Option<Integer> {
        if m.is_zero() {
            return None;
        }
        if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &m.0) {
            if *b == -1 {
                return a.checked_neg().map(|v| Integer(Repr::Small(v))).or_else(|| Some(-self));
            }
            return if a % b == 0 { Some(Integer(Repr::Small(a / b))) } else { None };
        }
        let (q, r) = self.to_bigint().div_rem(&m.to_bigint());
        if r.is_zero() {
            Some(Integer::from_big(q))
        } else {
            None
        }
    }

    /// Non-negative greatest common divisor.
    pub fn gcd(&self, other: &Integer) -> Integer {
        if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &other.0) {
            let g = (a.unsigned_abs()).gcd(&b.unsigned_abs());
            if let Ok(g) = i64::try_from(g) {
                return Integer(Repr::Small(g));
            }
        }
        Integer::from_big(self.to_bigint().gcd(&other.to_bigint()))
    }

    /// Returns `(g, s, t)` with `g = s*self + t*other` and `g >= 0`.
    pub fn ext_gcd(&self, other: &Integer) -> (Integer, Integer, Integer) {
        if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &other.0) {
            if let Some(res) = small_ext_gcd(*a, *b) {
                return res;
            }
        }
        let e = self.to_bigint().extended_gcd(&other.to_bigint());
        let (mut g, mut s, mut t) = (e.gcd, e.x, e.y);
        if g.is_negative() {
            g = -g;
            s = -s;
            t = -t;
        }
        (Integer::from_big(g), Integer::from_big(s), Integer::from_big(t))
    }

    pub fn pow(&self, e: u32) -> Integer {
        let mut acc = Integer::ONE;
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

fn small_ext_gcd(a: i64, b: i64) -> Option<(Integer, Integer, Integer)> {
    let (mut r0, mut r1) = (a as i128, b as i128);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        r0 = -r0;
        s0 = -s0;
        t0 = -t0;
    }
    let g = i64::try_from(r0).ok()?;
    let s = i64::try_from(s0).ok()?;
    let t = i64::try_from(t0).ok()?;
    Some((Integer::from(g), Integer::from(s), Integer::from(t)))
}

impl Default for Integer {
    fn default() -> Self {
        Integer::ZERO
    }
}

impl From<i64> for Integer {
    fn from(v: i64) -> Self {
        Integer(Repr::Small(v))
    }
}

impl From<i32> for Integer {
    fn from(v: i32) -> Self {
        Integer(Repr::Small(v as i64))
    }
}

impl From<u64> for Integer {
    fn from(v: u64) -> Self {
        match i64::try_from(v) {
            Ok(s) => Integer(Repr::Small(s)),
            Err(_) => Integer::from_big(BigInt::from(v)),
        }
    }
}

impl From<usize> for Integer {
    fn from(v: usize) -> Self {
        Integer::from(v as u64)
    }
}

impl From<BigInt> for Integer {
    fn from(v: BigInt) -> Self {
        Integer::from_big(v)
    }
}

impl FromStr for Integer {
    type Err = num_bigint::ParseBigIntError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(Integer::from_big(BigInt::from_str(s)?))
    }
}

impl Ord for Integer {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a), Repr::Small(b)) => a.cmp(b),
            _ => self.to_bigint().cmp(&other.to_bigint()),
        }
    }
}

impl PartialOrd for Integer {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Integer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(v) => write!(f, "{v}"),
            Repr::Big(b) => write!(f, "{b}"),
        }
    }
}

impl fmt::Debug for Integer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $checked:ident, $big:tt) => {
        impl $tr<&Integer> for &Integer {
            type Output = Integer;
            fn $m(self, rhs: &Integer) -> Integer {
                if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &rhs.0) {
                    if let Some(v) = a.$checked(*b) {
                        return Integer(Repr::Small(v));
                    }
                }
                Integer::from_big(self.to_bigint() $big rhs.to_bigint())
            }
        }
        impl $tr<Integer> for Integer {
            type Output = Integer;
            fn $m(self, rhs: Integer) -> Integer {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Integer> for Integer {
            type Output = Integer;
            fn $m(self, rhs: &Integer) -> Integer {
                (&self).$m(rhs)
            }
        }
        impl $tr<Integer> for &Integer {
            type Output = Integer;
            fn $m(self, rhs: Integer) -> Integer {
                self.$m(&rhs)
            }
        }
    };
}

binop!(Add, add, checked_add, +);
binop!(Sub, sub, checked_sub, -);
binop!(Mul, mul, checked_mul, *);

impl Neg for &Integer {
    type Output = Integer;
    fn neg(self) -> Integer {
        match &self.0 {
            Repr::Small(v) => match v.checked_neg() {
                Some(n) => Integer(Repr::Small(n)),
                None => Integer::from_big(-BigInt::from(*v)),
            },
            Repr::Big(b) => Integer::from_big(-(**b).clone()),
        }
    }
}

impl Neg for Integer {
    type Output = Integer;
    fn neg(self) -> Integer {
        -&self
    }
}

impl Zero for Integer {
    fn zero() -> Self {
        Integer::ZERO
    }
    fn is_zero(&self) -> bool {
        Integer::is_zero(self)
    }
}

impl One for Integer {
    fn one() -> Self {
        Integer::ONE
    }
}
