//! Scalar fields: prime fields `F_p` and the rationals.
//!
//! Everything above this layer is generic over [`Field`]. There is no
//! floating point anywhere in the crate.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Inv, One, Zero};

/// An exact field usable as the coefficient ring of path algebras.
pub trait Field:
    Clone
    + PartialEq
    + Eq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// Multiplicative inverse, `None` for zero.
    fn inverse(&self) -> Option<Self>;

    fn from_i64(n: i64) -> Self;

    /// `p` for `F_p`, `0` for the rationals.
    fn characteristic() -> u64;

    /// Short name used in file headers and reports, e.g. `"5"` or `"rational"`.
    fn field_name() -> String;

    /// Parses an integer `"-3"` or a fraction `"2/3"`.
    fn parse(s: &str) -> Option<Self>;
}

/// Element of the prime field `Z/PZ`, always stored reduced to `[0, P)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fp<const P: u32>(u32);

const fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl<const P: u32> Fp<P> {
    const MODULUS_IS_PRIME: () = assert!(is_prime(P), "Fp modulus must be prime");

    pub fn new(value: i64) -> Self {
        #[allow(clippy::let_unit_value)]
        let _ = Self::MODULUS_IS_PRIME;
        Fp(value.rem_euclid(P as i64) as u32)
    }

    pub fn value(self) -> u32 {
        self.0
    }

    fn pow(self, mut e: u64) -> Self {
        let mut base = self.0 as u64;
        let mut acc = 1u64;
        let p = P as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        Fp(acc as u32)
    }
}

impl<const P: u32> fmt::Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u32> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u32> Add for Fp<P> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let s = self.0 as u64 + rhs.0 as u64;
        Fp((s % P as u64) as u32)
    }
}

impl<const P: u32> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let s = self.0 as u64 + P as u64 - rhs.0 as u64;
        Fp((s % P as u64) as u32)
    }
}

impl<const P: u32> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Fp((self.0 as u64 * rhs.0 as u64 % P as u64) as u32)
    }
}

impl<const P: u32> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        if self.0 == 0 {
            self
        } else {
            Fp(P - self.0)
        }
    }
}

impl<const P: u32> Zero for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u32> One for Fp<P> {
    fn one() -> Self {
        Fp::new(1)
    }
}

impl<const P: u32> Inv for Fp<P> {
    type Output = Self;
    fn inv(self) -> Self {
        self.inverse().expect("inverse of zero in F_p")
    }
}

impl<const P: u32> Field for Fp<P> {
    fn inverse(&self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            Some(self.pow(P as u64 - 2))
        }
    }

    fn from_i64(n: i64) -> Self {
        Fp::new(n)
    }

    fn characteristic() -> u64 {
        P as u64
    }

    fn field_name() -> String {
        P.to_string()
    }

    fn parse(s: &str) -> Option<Self> {
        let s = s.trim();
        match s.split_once('/') {
            Some((num, den)) => {
                let num = Self::from_i64(num.trim().parse().ok()?);
                let den = Self::from_i64(den.trim().parse().ok()?);
                Some(num * den.inverse()?)
            }
            None => Some(Self::from_i64(s.parse().ok()?)),
        }
    }
}

impl Field for BigRational {
    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.clone().inv())
        }
    }

    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn characteristic() -> u64 {
        0
    }

    fn field_name() -> String {
        "rational".to_string()
    }

    fn parse(s: &str) -> Option<Self> {
        let s = s.trim();
        match s.split_once('/') {
            Some((num, den)) => {
                let num: BigInt = num.trim().parse().ok()?;
                let den: BigInt = den.trim().parse().ok()?;
                if den.is_zero() {
                    return None;
                }
                Some(BigRational::new(num, den))
            }
            None => Some(BigRational::from_integer(s.parse().ok()?)),
        }
    }
}

/// True when `x` prints with a leading minus sign. Only meaningful for the
/// rationals; prime-field representatives are never negative.
pub(crate) fn prints_negative<F: Field>(x: &F) -> bool {
    x.to_string().starts_with('-')
}

#[cfg(test)]
mod tests {
    use super::*;

    type F5 = Fp<5>;

    #[test]
    fn reduced_representatives() {
        assert_eq!(F5::new(-1).value(), 4);
        assert_eq!(F5::new(12).value(), 2);
        assert_eq!((F5::new(3) + F5::new(4)).value(), 2);
        assert_eq!((F5::new(1) - F5::new(3)).value(), 3);
        assert_eq!((-F5::new(0)).value(), 0);
    }

    #[test]
    fn inverses() {
        for v in 1..5 {
            let x = F5::new(v);
            assert_eq!(x * x.inverse().unwrap(), F5::one());
        }
        assert!(F5::zero().inverse().is_none());
        let q = BigRational::parse("-2/6").unwrap();
        assert_eq!(q.inverse().unwrap(), BigRational::from_i64(-3));
    }

    #[test]
    fn parse_round_trip() {
        assert_eq!(F5::parse("1/2"), Some(F5::new(3)));
        assert_eq!(F5::parse("-7"), Some(F5::new(3)));
        assert_eq!(F5::parse("1/0"), None);
        let q = BigRational::parse("3/9").unwrap();
        assert_eq!(q.to_string(), "1/3");
        assert_eq!(BigRational::parse(&q.to_string()), Some(q));
    }
}
