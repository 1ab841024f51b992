//! Coordinate scalars.
//!
//! Every geometric routine in this crate is generic over [`Scalar`], so the
//! same predicate code runs on `f64` during search and on exact
//! [`BigRational`] / [`QuadRational`] values during certification.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::quad::QuadRational;

/// A field-like coordinate type with a sign oracle.
///
/// For exact types `sign` is exact. For `f64` it is the strict sign of the
/// value, with no tolerance.
pub trait Scalar:
    Clone
    + fmt::Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// -1, 0 or +1.
    fn sign(&self) -> i8;

    /// Nearest `f64` (lossy for exact types).
    fn to_f64(&self) -> f64;

    fn from_i64(v: i64) -> Self;

    /// Whether values of this type are exact (orientation never suffers rounding).
    const EXACT: bool;
}

impl Scalar for f64 {
    fn sign(&self) -> i8 {
        if *self > 0.0 {
            1
        } else if *self < 0.0 {
            -1
        } else {
            0
        }
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn from_i64(v: i64) -> Self {
        v as f64
    }

    const EXACT: bool = false;
}

impl Scalar for BigRational {
    fn sign(&self) -> i8 {
        if self.is_positive() {
            1
        } else if self.is_negative() {
            -1
        } else {
            0
        }
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    const EXACT: bool = true;
}

impl Scalar for QuadRational {
    fn sign(&self) -> i8 {
        self.signum()
    }

    fn to_f64(&self) -> f64 {
        QuadRational::to_f64(self)
    }

    fn from_i64(v: i64) -> Self {
        QuadRational::from_rational(BigRational::from_integer(BigInt::from(v)))
    }

    const EXACT: bool = true;
}

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Shorthand for `n/d`; panics on `d == 0`.
pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Exact rational value of a finite `f64` (every finite double is dyadic).
pub fn rational_from_f64(x: f64) -> Option<BigRational> {
    BigRational::from_float(x)
}

/// Best rational approximation of `x` among its continued-fraction
/// convergents whose denominator does not exceed `max_den`.
pub fn convergent_snap(x: f64, max_den: u64) -> BigRational {
    assert!(x.is_finite(), "cannot snap non-finite value {x}");
    let max_den = BigInt::from(max_den.max(1));
    let exact = BigRational::from_float(x).expect("finite");
    // continued fraction of the exact dyadic value
    let (mut p0, mut q0) = (BigInt::zero(), BigInt::one());
    let (mut p1, mut q1) = (BigInt::one(), BigInt::zero());
    let mut rem = exact.clone();
    loop {
        let a = rem.floor().to_integer();
        let p2 = &a * &p1 + &p0;
        let q2 = &a * &q1 + &q0;
        if q2 > max_den {
            break;
        }
        p0 = std::mem::replace(&mut p1, p2);
        q0 = std::mem::replace(&mut q1, q2);
        let frac = &rem - BigRational::from_integer(a);
        if frac.is_zero() {
            break;
        }
        rem = frac.recip();
    }
    if q1.is_zero() {
        // max_den smaller than the first denominator cannot happen (q=1 always fits)
        unreachable!("first convergent always has denominator 1");
    }
    BigRational::new(p1, q1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_sign_is_strict() {
        assert_eq!(0.0f64.sign(), 0);
        assert_eq!((-0.0f64).sign(), 0);
        assert_eq!(1e-300f64.sign(), 1);
        assert_eq!((-1e-300f64).sign(), -1);
    }

    #[test]
    fn snapping_examples() {
        assert_eq!(convergent_snap(0.5, 1_000_000), ratio(1, 2));
        assert_eq!(convergent_snap(0.333_333_333, 1_000), ratio(1, 3));
        assert_eq!(convergent_snap(0.333_333_4, 1_000_000), ratio(1, 3));
        assert_eq!(convergent_snap(-2.25, 10), ratio(-9, 4));
        assert_eq!(convergent_snap(3.0, 1), rat(3));
    }

    #[test]
    fn pi_convergents() {
        assert_eq!(convergent_snap(std::f64::consts::PI, 10), ratio(22, 7));
        assert_eq!(convergent_snap(std::f64::consts::PI, 110), ratio(333, 106));
        assert_eq!(convergent_snap(std::f64::consts::PI, 1000), ratio(355, 113));
    }
}
