//! Exact arithmetic in the quadratic field Q(√3).

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// The number `a + b·√3` with rational `a` and `b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadRational {
    pub a: BigRational,
    pub b: BigRational,
}

fn rsign(x: &BigRational) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

impl QuadRational {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        QuadRational { a, b }
    }

    pub fn from_rational(a: BigRational) -> Self {
        QuadRational { a, b: BigRational::zero() }
    }

    /// `b·√3`.
    pub fn sqrt3_times(b: BigRational) -> Self {
        QuadRational { a: BigRational::zero(), b }
    }

    pub fn sqrt3() -> Self {
        Self::sqrt3_times(BigRational::one())
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Exact sign of `a + b√3`.
    ///
    /// When `a` and `b` disagree in sign the result is decided by comparing
    /// `a²` against `3b²`.
    pub fn signum(&self) -> i8 {
        let sa = rsign(&self.a);
        let sb = rsign(&self.b);
        if sa == 0 {
            return sb;
        }
        if sb == 0 || sa == sb {
            return sa;
        }
        let a2 = &self.a * &self.a;
        let b2 = &self.b * &self.b * BigRational::from_integer(BigInt::from(3));
        match a2.cmp(&b2) {
            std::cmp::Ordering::Greater => sa,
            std::cmp::Ordering::Less => sb,
            std::cmp::Ordering::Equal => 0, // unreachable: √3 is irrational
        }
    }

    /// `a − b√3`.
    pub fn conjugate(&self) -> Self {
        QuadRational { a: self.a.clone(), b: -self.b.clone() }
    }

    /// Field norm `a² − 3b²`.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - &self.b * &self.b * BigRational::from_integer(BigInt::from(3))
    }

    pub fn recip(&self) -> Self {
        let n = self.norm();
        assert!(!n.is_zero(), "division by zero in Q(sqrt 3)");
        let c = self.conjugate();
        QuadRational { a: c.a / &n, b: c.b / n }
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        a + b * 3f64.sqrt()
    }
}

impl Zero for QuadRational {
    fn zero() -> Self {
        QuadRational { a: BigRational::zero(), b: BigRational::zero() }
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for QuadRational {
    fn one() -> Self {
        QuadRational { a: BigRational::one(), b: BigRational::zero() }
    }
}

impl Add for QuadRational {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        QuadRational { a: self.a + o.a, b: self.b + o.b }
    }
}

impl Sub for QuadRational {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        QuadRational { a: self.a - o.a, b: self.b - o.b }
    }
}

impl Mul for QuadRational {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let three = BigRational::from_integer(BigInt::from(3));
        QuadRational {
            a: &self.a * &o.a + &self.b * &o.b * three,
            b: &self.a * &o.b + &self.b * &o.a,
        }
    }
}

impl Div for QuadRational {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: Self) -> Self {
        self * o.recip()
    }
}

impl Neg for QuadRational {
    type Output = Self;
    fn neg(self) -> Self {
        QuadRational { a: -self.a, b: -self.b }
    }
}

impl PartialOrd for QuadRational {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadRational {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.clone() - other.clone()).signum().cmp(&0)
    }
}

impl fmt::Display for QuadRational {
    /// Writes the pointset-file coordinate grammar: `a`, `b*rt3` or `a+b*rt3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "{}*rt3", self.b),
            (false, false) => write!(f, "{}+{}*rt3", self.a, self.b),
        }
    }
}
