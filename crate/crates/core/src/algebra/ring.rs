//! Coefficient rings.
//!
//! [`Ring`] is the user-facing tag carried by chain complexes. The [`Pid`]
//! trait is the arithmetic context used by the elimination engines; it is
//! implemented for the integers, the rationals and prime fields.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coefficient ring of a chain complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Ring {
    Integers,
    Rationals,
    PrimeField(u64),
}

impl Ring {
    pub fn prime_field(p: u64) -> Result<Ring> {
        if is_prime(p) {
            Ok(Ring::PrimeField(p))
        } else {
            Err(Error::InvalidRing(format!("{p} is not prime")))
        }
    }

    pub fn is_field(&self) -> bool {
        !matches!(self, Ring::Integers)
    }

    /// Canonical representative of an integer in this ring's storage
    /// convention (reduced into `0..p` for prime fields).
    pub fn normalize(&self, x: &BigInt) -> BigInt {
        match self {
            Ring::PrimeField(p) => x.mod_floor(&BigInt::from(*p)),
            _ => x.clone(),
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Integers => write!(f, "Z"),
            Ring::Rationals => write!(f, "Q"),
            Ring::PrimeField(p) => write!(f, "F{p}"),
        }
    }
}

impl FromStr for Ring {
    type Err = Error;

    /// Accepts `Z`, `Q`, `Fp` forms such as `F2`, `F101`, or `GF(3)`.
    fn from_str(s: &str) -> Result<Ring> {
        let t = s.trim();
        match t {
            "Z" | "z" | "ZZ" | "integers" => return Ok(Ring::Integers),
            "Q" | "q" | "QQ" | "rationals" => return Ok(Ring::Rationals),
            _ => {}
        }
        let digits = t
            .strip_prefix("GF(")
            .and_then(|r| r.strip_suffix(')'))
            .or_else(|| t.strip_prefix('F'))
            .or_else(|| t.strip_prefix('f'))
            .ok_or_else(|| Error::InvalidRing(format!("unknown ring `{s}`")))?;
        let p: u64 = digits
            .parse()
            .map_err(|_| Error::InvalidRing(format!("unknown ring `{s}`")))?;
        Ring::prime_field(p)
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Arithmetic context for a principal ideal domain.
///
/// Fields are PIDs in which every nonzero element is a unit; the elimination
/// code is written once against this trait.
pub trait Pid: Clone + fmt::Debug {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn is_unit(&self, a: &Self::Elem) -> bool;
    /// `a / b` when `b` divides `a`.
    fn div_exact(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem>;
    /// `(g, s, t)` with `s*a + t*b = g = gcd(a, b)`.
    fn xgcd(&self, a: &Self::Elem, b: &Self::Elem) -> (Self::Elem, Self::Elem, Self::Elem);
    /// Euclidean size used for pivot selection; 0 for zero.
    fn size(&self, a: &Self::Elem) -> u64;
    /// `q` with `a - q*b` of smaller size than `b` (nearest quotient over `Z`).
    fn quotient(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn from_int(&self, a: &BigInt) -> Self::Elem;
    /// Integer representative, if there is one (residues are taken in `0..p`).
    fn to_int(&self, a: &Self::Elem) -> Option<BigInt>;
    fn is_field(&self) -> bool;

    /// Value as a rational number (residues for prime fields).
    fn to_rational(&self, a: &Self::Elem) -> num_rational::BigRational {
        num_rational::BigRational::from_integer(self.to_int(a).expect("integral element"))
    }

    /// Normalized associate (non-negative for the integers, one for fields).
    fn normalize_associate(&self, a: &Self::Elem) -> Self::Elem;
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Integers;

impl Pid for Integers {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn is_unit(&self, a: &BigInt) -> bool {
        a.abs().is_one()
    }
    fn div_exact(&self, a: &BigInt, b: &BigInt) -> Option<BigInt> {
        if b.is_zero() {
            return None;
        }
        let (q, r) = a.div_rem(b);
        r.is_zero().then_some(q)
    }
    fn xgcd(&self, a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
        let e = a.extended_gcd(b);
        (e.gcd, e.x, e.y)
    }
    fn size(&self, a: &BigInt) -> u64 {
        a.abs().to_u64().unwrap_or(u64::MAX)
    }
    fn quotient(&self, a: &BigInt, b: &BigInt) -> BigInt {
        let (q, r) = a.div_mod_floor(b);
        // r has the sign of b; r - b is the smaller remainder past the midpoint.
        if (&r + &r).abs() > b.abs() {
            q + 1
        } else {
            q
        }
    }
    fn from_int(&self, a: &BigInt) -> BigInt {
        a.clone()
    }
    fn to_int(&self, a: &BigInt) -> Option<BigInt> {
        Some(a.clone())
    }
    fn is_field(&self) -> bool {
        false
    }
    fn normalize_associate(&self, a: &BigInt) -> BigInt {
        a.abs()
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Rationals;

impl Pid for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn is_unit(&self, a: &BigRational) -> bool {
        !a.is_zero()
    }
    fn div_exact(&self, a: &BigRational, b: &BigRational) -> Option<BigRational> {
        (!b.is_zero()).then(|| a / b)
    }
    fn xgcd(&self, a: &BigRational, b: &BigRational) -> (BigRational, BigRational, BigRational) {
        field_xgcd(self, a, b)
    }
    fn size(&self, a: &BigRational) -> u64 {
        // Prefer pivots with small numerator and denominator.
        if a.is_zero() {
            0
        } else {
            let n = a.numer().abs().to_u64().unwrap_or(u64::MAX / 2);
            let d = a.denom().to_u64().unwrap_or(u64::MAX / 2);
            n.saturating_add(d)
        }
    }
    fn quotient(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a / b
    }
    fn from_int(&self, a: &BigInt) -> BigRational {
        BigRational::from_integer(a.clone())
    }
    fn to_int(&self, a: &BigRational) -> Option<BigInt> {
        a.is_integer().then(|| a.to_integer())
    }
    fn to_rational(&self, a: &BigRational) -> BigRational {
        a.clone()
    }
    fn is_field(&self) -> bool {
        true
    }
    fn normalize_associate(&self, a: &BigRational) -> BigRational {
        if a.is_zero() {
            a.clone()
        } else {
            BigRational::one()
        }
    }
}

/// The prime field `Z/p`.
#[derive(Clone, Copy, Debug)]
pub struct PrimeField {
    pub p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Self {
        debug_assert!(is_prime(p));
        PrimeField { p }
    }

    pub fn inv(&self, a: u64) -> u64 {
        // Fermat: a^(p-2)
        let mut base = a as u128 % self.p as u128;
        let mut exp = self.p - 2;
        let mut acc: u128 = 1;
        let m = self.p as u128;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % m;
            }
            base = base * base % m;
            exp >>= 1;
        }
        acc as u64
    }
}

impl Pid for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
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
    fn is_unit(&self, a: &u64) -> bool {
        *a != 0
    }
    fn div_exact(&self, a: &u64, b: &u64) -> Option<u64> {
        (*b != 0).then(|| self.mul(a, &self.inv(*b)))
    }
    fn xgcd(&self, a: &u64, b: &u64) -> (u64, u64, u64) {
        field_xgcd(self, a, b)
    }
    fn size(&self, a: &u64) -> u64 {
        u64::from(*a != 0)
    }
    fn quotient(&self, a: &u64, b: &u64) -> u64 {
        self.div_exact(a, b).expect("nonzero divisor")
    }
    fn from_int(&self, a: &BigInt) -> u64 {
        a.mod_floor(&BigInt::from(self.p)).to_u64().expect("reduced residue")
    }
    fn to_int(&self, a: &u64) -> Option<BigInt> {
        Some(BigInt::from(*a))
    }
    fn is_field(&self) -> bool {
        true
    }
    fn normalize_associate(&self, a: &u64) -> u64 {
        u64::from(*a != 0)
    }
}

fn field_xgcd<P: Pid>(f: &P, a: &P::Elem, b: &P::Elem) -> (P::Elem, P::Elem, P::Elem) {
    if !f.is_zero(a) {
        let s = f.div_exact(&f.one(), a).expect("nonzero in a field");
        (f.one(), s, f.zero())
    } else if !f.is_zero(b) {
        let t = f.div_exact(&f.one(), b).expect("nonzero in a field");
        (f.one(), f.zero(), t)
    } else {
        (f.zero(), f.zero(), f.zero())
    }
}

/// Dispatch a generic computation on the PID matching a [`Ring`] tag.
///
/// The integers and the rationals share the integer engine for lattice work;
/// use [`with_pid`] when genuine field arithmetic over `Q` is required.
#[macro_export]
macro_rules! with_lattice_ring {
    ($ring:expr, |$pid:ident| $body:expr) => {
        match $ring {
            $crate::algebra::Ring::Integers | $crate::algebra::Ring::Rationals => {
                let $pid = $crate::algebra::ring::Integers;
                $body
            }
            $crate::algebra::Ring::PrimeField(p) => {
                let $pid = $crate::algebra::ring::PrimeField::new(p);
                $body
            }
        }
    };
}

/// Dispatch on the exact PID for a [`Ring`] tag (`Q` uses rational arithmetic).
#[macro_export]
macro_rules! with_pid {
    ($ring:expr, |$pid:ident| $body:expr) => {
        match $ring {
            $crate::algebra::Ring::Integers => {
                let $pid = $crate::algebra::ring::Integers;
                $body
            }
            $crate::algebra::Ring::Rationals => {
                let $pid = $crate::algebra::ring::Rationals;
                $body
            }
            $crate::algebra::Ring::PrimeField(p) => {
                let $pid = $crate::algebra::ring::PrimeField::new(p);
                $body
            }
        }
    };
}

/// Integer value of a small element, for reporting.
pub fn to_i64(a: &BigInt) -> Option<i64> {
    a.to_i64()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_rings() {
        assert_eq!("Z".parse::<Ring>().unwrap(), Ring::Integers);
        assert_eq!("Q".parse::<Ring>().unwrap(), Ring::Rationals);
        assert_eq!("F2".parse::<Ring>().unwrap(), Ring::PrimeField(2));
        assert_eq!("GF(7)".parse::<Ring>().unwrap(), Ring::PrimeField(7));
        assert!("F4".parse::<Ring>().is_err());
        assert!("R".parse::<Ring>().is_err());
    }

    #[test]
    fn prime_field_inverse() {
        let f = PrimeField::new(101);
        for a in 1..101u64 {
            assert_eq!(f.mul(&a, &f.inv(a)), 1);
        }
    }

    #[test]
    fn integer_xgcd_identity() {
        let z = Integers;
        let (a, b) = (BigInt::from(12), BigInt::from(-18));
        let (g, s, t) = z.xgcd(&a, &b);
        assert_eq!(&s * &a + &t * &b, g);
        assert_eq!(g.abs(), BigInt::from(6));
    }
}
