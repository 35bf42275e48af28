//! Coefficient rings: the integers and prime fields.

use std::fmt::Debug;
use std::hash::Hash;

use super::integer::Integer;
use super::AlgebraError;

/// A Euclidean domain with exact arithmetic.
///
/// Every implementation used here is either `Z` or a field, which is all the
/// elimination routines need.
pub trait EuclideanRing: Clone + Debug + Send + Sync {
    type Elem: Clone + Debug + PartialEq + Eq + Hash + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_integer(&self, x: &Integer) -> Self::Elem;
    fn from_i64(&self, x: i64) -> Self::Elem {
        self.from_integer(&Integer::from(x))
    }
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn is_unit(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// `a / b` when `b` divides `a`.
    fn div_exact(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem>;
    /// Returns `(g, s, t)` with `g = s*a + t*b` a gcd of `a` and `b`.
    fn ext_gcd(&self, a: &Self::Elem, b: &Self::Elem) -> (Self::Elem, Self::Elem, Self::Elem);
    /// Euclidean size; units have size 1 and zero has size 0.
    fn size(&self, a: &Self::Elem) -> u128;
    /// Canonical associate, together with the unit it was multiplied by.
    fn normalize(&self, a: &Self::Elem) -> (Self::Elem, Self::Elem);
    /// The factor as an integer, for reporting invariant factors.
    fn to_integer(&self, a: &Self::Elem) -> Integer;
    /// Zero for `Z`, `p` for `F_p`.
    fn characteristic(&self) -> u64;
}

/// The ring of integers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Integers;

impl EuclideanRing for Integers {
    type Elem = Integer;

    fn zero(&self) -> Integer {
        Integer::ZERO
    }
    fn one(&self) -> Integer {
        Integer::ONE
    }
    fn from_integer(&self, x: &Integer) -> Integer {
        x.clone()
    }
    fn is_zero(&self, a: &Integer) -> bool {
        a.is_zero()
    }
    fn is_unit(&self, a: &Integer) -> bool {
        a.is_unit()
    }
    fn add(&self, a: &Integer, b: &Integer) -> Integer {
        a + b
    }
    fn sub(&self, a: &Integer, b: &Integer) -> Integer {
        a - b
    }
    fn mul(&self, a: &Integer, b: &Integer) -> Integer {
        a * b
    }
    fn neg(&self, a: &Integer) -> Integer {
        -a
    }
    fn div_exact(&self, a: &Integer, b: &Integer) -> Option<Integer> {
        a.div_exact(b)
    }
    fn ext_gcd(&self, a: &Integer, b: &Integer) -> (Integer, Integer, Integer) {
        a.ext_gcd(b)
    }
    fn size(&self, a: &Integer) -> u128 {
        match a.to_i64() {
            Some(v) => v.unsigned_abs() as u128,
            None => u128::MAX,
        }
    }
    fn normalize(&self, a: &Integer) -> (Integer, Integer) {
        if a.is_negative() {
            (-a, Integer::from(-1))
        } else {
            (a.clone(), Integer::ONE)
        }
    }
    fn to_integer(&self, a: &Integer) -> Integer {
        a.clone()
    }
    fn characteristic(&self) -> u64 {
        0
    }
}

/// The prime field `F_p`, elements stored as residues in `0..p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// Fails unless `p` is a prime below `2^62`.
    pub fn new(p: u64) -> Result<PrimeField, AlgebraError> {
        if !(2..(1u64 << 62)).contains(&p) || !is_prime(p) {
            return Err(AlgebraError::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn inverse(&self, a: u64) -> Option<u64> {
        if a % self.p == 0 {
            return None;
        }
        Some(self.pow(a, self.p - 2))
    }

    fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        a %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &a);
            }
            a = self.mul(&a, &a);
            e >>= 1;
        }
        acc
    }
}

fn is_prime(p: u64) -> bool {
    if p < 4 {
        return p >= 2;
    }
    if p % 2 == 0 {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl EuclideanRing for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_integer(&self, x: &Integer) -> u64 {
        let r = x.rem_euclid(&Integer::from(self.p));
        r.to_i64().expect("residue fits") as u64
    }
    fn from_i64(&self, x: i64) -> u64 {
        x.rem_euclid(self.p as i64) as u64
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn is_unit(&self, a: &u64) -> bool {
        *a != 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.p as u128) as u64
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + self.p as u128 - *b as u128) % self.p as u128) as u64
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn div_exact(&self, a: &u64, b: &u64) -> Option<u64> {
        self.inverse(*b).map(|inv| self.mul(a, &inv))
    }
    fn ext_gcd(&self, a: &u64, b: &u64) -> (u64, u64, u64) {
        if *a != 0 {
            (1, self.inverse(*a).unwrap(), 0)
        } else if *b != 0 {
            (1, 0, self.inverse(*b).unwrap())
        } else {
            (0, 0, 0)
        }
    }
    fn size(&self, a: &u64) -> u128 {
        u128::from(*a != 0)
    }
    fn normalize(&self, a: &u64) -> (u64, u64) {
        match self.inverse(*a) {
            Some(inv) => (1, inv),
            None => (0, 1),
        }
    }
    fn to_integer(&self, a: &u64) -> Integer {
        Integer::from(*a)
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
}

/// Runtime choice of coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Coefficients {
    Integers,
    Prime(PrimeField),
}

impl Coefficients {
    pub fn prime(p: u64) -> Result<Coefficients, AlgebraError> {
        Ok(Coefficients::Prime(PrimeField::new(p)?))
    }
}

impl std::fmt::Display for Coefficients {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Coefficients::Integers => write!(f, "Z"),
            Coefficients::Prime(fp) => write!(f, "F{}", fp.modulus()),
        }
    }
}

impl std::str::FromStr for Coefficients {
    type Err = AlgebraError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("z") || t.eq_ignore_ascii_case("int") {
            return Ok(Coefficients::Integers);
        }
        let digits = t.trim_start_matches(['F', 'f', 'p', 'P']);
        let p: u64 = digits.parse().map_err(|_| AlgebraError::BadCoefficients(s.to_string()))?;
        Coefficients::prime(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_composites() {
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(9).is_err());
        assert!(PrimeField::new(7).is_ok());
    }

    #[test]
    fn field_inverse() {
        let f = PrimeField::new(101).unwrap();
        for a in 1..101 {
            let inv = f.inverse(a).unwrap();
            assert_eq!(f.mul(&a, &inv), 1);
        }
        assert_eq!(f.from_i64(-1), 100);
    }

    #[test]
    fn parse_coefficients() {
        assert_eq!("Z".parse::<Coefficients>().unwrap(), Coefficients::Integers);
        assert_eq!("F2".parse::<Coefficients>().unwrap(), Coefficients::prime(2).unwrap());
        assert!("F4".parse::<Coefficients>().is_err());
    }
}
