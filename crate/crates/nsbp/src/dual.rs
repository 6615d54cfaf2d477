//! Forward-mode dual numbers over any scalar field.
//!
//! Used to differentiate exact moment expressions with respect to the horizon T.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct Dual<S> {
    pub v: S,
    pub d: S,
}

impl<S: Scalar> Dual<S> {
    pub fn constant(v: S) -> Self {
        Dual { v, d: S::zero() }
    }

    /// The independent variable at value `v`.
    pub fn variable(v: S) -> Self {
        Dual { v, d: S::one() }
    }
}

impl<S: Scalar> fmt::Display for Dual<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}ε", self.v, self.d)
    }
}

impl<S: Scalar> Add for Dual<S> {
    type Output = Self;
    fn add(self, r: Self) -> Self {
        Dual { v: self.v + r.v, d: self.d + r.d }
    }
}

impl<S: Scalar> Sub for Dual<S> {
    type Output = Self;
    fn sub(self, r: Self) -> Self {
        Dual { v: self.v - r.v, d: self.d - r.d }
    }
}

impl<S: Scalar> Mul for Dual<S> {
    type Output = Self;
    fn mul(self, r: Self) -> Self {
        Dual {
            d: self.d * r.v.clone() + self.v.clone() * r.d,
            v: self.v * r.v,
        }
    }
}

impl<S: Scalar> Div for Dual<S> {
    type Output = Self;
    fn div(self, r: Self) -> Self {
        let v = self.v / r.v.clone();
        let d = (self.d - v.clone() * r.d) / r.v;
        Dual { v, d }
    }
}

impl<S: Scalar> Neg for Dual<S> {
    type Output = Self;
    fn neg(self) -> Self {
        Dual { v: -self.v, d: -self.d }
    }
}

impl<S: Scalar> Zero for Dual<S> {
    fn zero() -> Self {
        Dual::constant(S::zero())
    }
    fn is_zero(&self) -> bool {
        self.v.is_zero() && self.d.is_zero()
    }
}

impl<S: Scalar> One for Dual<S> {
    fn one() -> Self {
        Dual::constant(S::one())
    }
}

impl<S: Scalar> Scalar for Dual<S> {
    fn from_i64(v: i64) -> Self {
        Dual::constant(S::from_i64(v))
    }
    fn from_rational(r: &BigRational) -> Self {
        Dual::constant(S::from_rational(r))
    }
    fn to_f64(&self) -> f64 {
        self.v.to_f64()
    }
    fn is_exact() -> bool {
        S::is_exact()
    }
}
