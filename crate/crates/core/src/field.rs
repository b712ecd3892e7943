//! The coefficient field abstraction.
//!
//! Everything above this module is written against [`Field`], an exact field of
//! characteristic zero. Two implementations ship with the crate: the rationals
//! ([`BigRational`]) and the Gaussian rationals ([`crate::GaussianRational`]),
//! the latter being the default [`crate::Scalar`].
//!
//! Equality must be decidable and canonical; there is deliberately no
//! floating-point implementation.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// An exact field of characteristic zero containing ℚ.
///
/// The `Ord` bound is a canonical total order used only for deterministic
/// output (map keys, sorting); it need not be compatible with the field
/// operations.
pub trait Field:
    Clone
    + Eq
    + Ord
    + Hash
    + Debug
    + Display
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Send
    + Sync
    + 'static
{
    fn from_rational(r: BigRational) -> Self;

    /// `Some` iff the value lies in ℚ.
    fn to_rational(&self) -> Option<BigRational>;

    /// An exact square root inside the field, if one exists.
    fn sqrt(&self) -> Option<Self>;

    fn from_bigint(n: BigInt) -> Self {
        Self::from_rational(BigRational::from_integer(n))
    }

    fn from_i64(n: i64) -> Self {
        Self::from_bigint(BigInt::from(n))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_rational(BigRational::new(num.into(), den.into()))
    }

    /// Multiplicative inverse; `None` for zero.
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Self::one() / self.clone())
        }
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }

    /// Integer power, negative exponents allowed for nonzero values.
    fn powi(&self, e: i64) -> Option<Self> {
        if e >= 0 {
            Some(self.pow(e as u32))
        } else {
            self.inv().map(|x| x.pow((-e) as u32))
        }
    }

    /// `Some(n)` iff the value is a rational integer.
    fn to_integer(&self) -> Option<BigInt> {
        self.to_rational().filter(|r| r.is_integer()).map(|r| r.to_integer())
    }
}

/// Exact square root of a non-negative rational, if it is a perfect square.
pub(crate) fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer();
    let d = r.denom();
    let sn = n.sqrt();
    let sd = d.sqrt();
    if &(&sn * &sn) == n && &(&sd * &sd) == d {
        Some(BigRational::new(sn, sd))
    } else {
        None
    }
}

impl Field for BigRational {
    fn from_rational(r: BigRational) -> Self {
        r
    }

    fn to_rational(&self) -> Option<BigRational> {
        Some(self.clone())
    }

    fn sqrt(&self) -> Option<Self> {
        rational_sqrt(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn rational_square_roots() {
        assert_eq!(q(9, 4).sqrt(), Some(q(3, 2)));
        assert_eq!(q(2, 1).sqrt(), None);
        assert_eq!(q(-4, 1).sqrt(), None);
        assert_eq!(q(0, 1).sqrt(), Some(q(0, 1)));
    }

    #[test]
    fn powers() {
        assert_eq!(q(2, 3).pow(3), q(8, 27));
        assert_eq!(q(2, 3).powi(-2), Some(q(9, 4)));
        assert_eq!(q(0, 1).powi(-1), None);
        assert_eq!(q(5, 1).pow(0), q(1, 1));
    }
}
