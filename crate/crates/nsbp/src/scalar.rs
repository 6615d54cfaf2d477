//! Scalar fields.
//!
//! `Scalar` is the field interface used by every algebraic routine (polynomials,
//! coefficient tables, moment recursions). `Real` adds the ordered,
//! transcendental operations needed by special functions and quadrature.

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    fn from_i64(v: i64) -> Self;
    fn from_rational(r: &BigRational) -> Self;
    /// Nearest double, used for reporting only.
    fn to_f64(&self) -> f64;

    /// True when arithmetic is exact (no rounding).
    fn is_exact() -> bool {
        false
    }

    /// The exact rational value of a finite binary or rational scalar.
    fn to_rational(&self) -> Option<BigRational> {
        None
    }

    fn from_ratio(p: i64, q: i64) -> Self {
        Self::from_i64(p) / Self::from_i64(q)
    }

    fn from_usize(v: usize) -> Self {
        Self::from_i64(v as i64)
    }

    fn recip(&self) -> Self {
        Self::one() / self.clone()
    }

    fn sq(&self) -> Self {
        self.clone() * self.clone()
    }

    /// Integer power by repeated squaring; negative exponents invert.
    fn powi(&self, e: i64) -> Self {
        if e < 0 {
            return self.powi(-e).recip();
        }
        let mut base = self.clone();
        let mut acc = Self::one();
        let mut e = e as u64;
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
}

pub trait Real: Scalar + PartialOrd {
    fn from_f64(v: f64) -> Self;
    fn exp(&self) -> Self;
    fn exp_m1(&self) -> Self;
    fn ln(&self) -> Self;
    fn sqrt(&self) -> Self;
    fn sin(&self) -> Self;
    fn cos(&self) -> Self;
    fn abs(&self) -> Self;
    fn floor(&self) -> Self;
    fn pi() -> Self;
    fn euler_gamma() -> Self;
    /// Mantissa bits of the active precision.
    fn bits() -> u32;
    fn is_finite(&self) -> bool;

    /// Unit roundoff 2^-bits.
    fn epsilon() -> Self {
        Self::from_i64(2).powi(-(Self::bits() as i64))
    }

    /// x^e for x > 0.
    fn powf(&self, e: &Self) -> Self {
        (self.ln() * e.clone()).exp()
    }

    /// Magnitude below which relative accuracy is lost to gradual underflow.
    fn tiny() -> Self {
        Self::zero()
    }

    fn max(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    fn min(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }

    /// Integer value if `self` is an integer.
    fn as_integer(&self) -> Option<i64> {
        if self.is_finite() && self.floor() == *self {
            let v = self.to_f64();
            if v.abs() < 9.0e15 {
                return Some(v as i64);
            }
        }
        None
    }
}

impl Scalar for f64 {
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn from_rational(r: &BigRational) -> Self {
        ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn to_rational(&self) -> Option<BigRational> {
        BigRational::from_float(*self)
    }
}

impl Real for f64 {
    fn from_f64(v: f64) -> Self {
        v
    }
    fn exp(&self) -> Self {
        f64::exp(*self)
    }
    fn exp_m1(&self) -> Self {
        f64::exp_m1(*self)
    }
    fn ln(&self) -> Self {
        f64::ln(*self)
    }
    fn sqrt(&self) -> Self {
        f64::sqrt(*self)
    }
    fn sin(&self) -> Self {
        f64::sin(*self)
    }
    fn cos(&self) -> Self {
        f64::cos(*self)
    }
    fn abs(&self) -> Self {
        f64::abs(*self)
    }
    fn floor(&self) -> Self {
        f64::floor(*self)
    }
    fn pi() -> Self {
        std::f64::consts::PI
    }
    fn euler_gamma() -> Self {
        0.577_215_664_901_532_9
    }
    fn bits() -> u32 {
        53
    }
    fn is_finite(&self) -> bool {
        f64::is_finite(*self)
    }
    fn powf(&self, e: &Self) -> Self {
        f64::powf(*self, *e)
    }
    fn tiny() -> Self {
        f64::MIN_POSITIVE / f64::EPSILON
    }
}

impl Scalar for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_rational(r: &BigRational) -> Self {
        r.clone()
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn is_exact() -> bool {
        true
    }
    fn to_rational(&self) -> Option<BigRational> {
        Some(self.clone())
    }
}

/// Absolute value for exact rationals (kept here so callers need not import `Signed`).
pub fn rational_abs(r: &BigRational) -> BigRational {
    r.abs()
}
