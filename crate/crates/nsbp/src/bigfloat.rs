//! Arbitrary-precision binary floating point backed by MPFR.

use std::cell::Cell;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};
use rug::float::Constant;
use rug::ops::Pow;

use crate::scalar::{Real, Scalar};

pub const DEFAULT_PRECISION: u32 = 256;

thread_local! {
    static PRECISION: Cell<u32> = const { Cell::new(DEFAULT_PRECISION) };
}

/// Mantissa bits used for newly created `BigFloat` values on this thread.
pub fn working_precision() -> u32 {
    PRECISION.with(|p| p.get())
}

pub fn set_working_precision(bits: u32) {
    PRECISION.with(|p| p.set(bits.max(24)));
}

/// Runs `f` with a temporary working precision.
pub fn with_precision<R>(bits: u32, f: impl FnOnce() -> R) -> R {
    let old = working_precision();
    set_working_precision(bits);
    let out = f();
    set_working_precision(old);
    out
}

/// Version string of the linked MPFR library.
pub fn mpfr_version() -> String {
    // SAFETY: mpfr_get_version returns a pointer to a static NUL-terminated string.
    unsafe {
        std::ffi::CStr::from_ptr(gmp_mpfr_sys::mpfr::get_version())
            .to_string_lossy()
            .into_owned()
    }
}

#[derive(Clone, Debug)]
pub struct BigFloat(pub rug::Float);

impl BigFloat {
    pub fn new<T>(v: T) -> Self
    where
        rug::Float: rug::Assign<T>,
    {
        BigFloat(rug::Float::with_val(working_precision(), v))
    }

    pub fn precision(&self) -> u32 {
        self.0.prec()
    }

    /// Decimal digits that faithfully represent the mantissa.
    fn digits(&self) -> usize {
        (self.0.prec() as f64 * std::f64::consts::LOG10_2).ceil() as usize + 1
    }

    /// Parses a decimal or rational literal at the working precision.
    pub fn parse(s: &str) -> Option<Self> {
        let s = s.trim();
        if let Some((p, q)) = s.split_once('/') {
            let p = Self::parse(p)?;
            let q = Self::parse(q)?;
            return Some(p / q);
        }
        let v = rug::Float::parse(s).ok()?;
        Some(BigFloat(rug::Float::with_val(working_precision(), v)))
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_zero() {
            return write!(f, "0");
        }
        write!(f, "{}", self.0.to_string_radix(10, Some(self.digits())))
    }
}

impl PartialEq for BigFloat {
    fn eq(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}

impl PartialOrd for BigFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.0.partial_cmp(&other.0)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident) => {
        impl $tr for BigFloat {
            type Output = BigFloat;
            fn $m(self, rhs: BigFloat) -> BigFloat {
                BigFloat($tr::$m(self.0, &rhs.0))
            }
        }
    };
}
binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);
binop!(Div, div);

impl Neg for BigFloat {
    type Output = BigFloat;
    fn neg(self) -> BigFloat {
        BigFloat(-self.0)
    }
}

impl Zero for BigFloat {
    fn zero() -> Self {
        BigFloat::new(0)
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl One for BigFloat {
    fn one() -> Self {
        BigFloat::new(1)
    }
}

impl Scalar for BigFloat {
    fn from_i64(v: i64) -> Self {
        BigFloat::new(v)
    }
    fn from_rational(r: &BigRational) -> Self {
        let q: rug::Rational = r
            .to_string()
            .parse()
            .expect("rational literal round-trips through rug");
        BigFloat::new(&q)
    }
    fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }
    fn to_rational(&self) -> Option<BigRational> {
        let q = self.0.to_rational()?;
        let big = |i: &rug::Integer| num_bigint::BigInt::parse_bytes(i.to_string_radix(16).as_bytes(), 16);
        Some(BigRational::new(big(q.numer())?, big(q.denom())?))
    }
}

impl Real for BigFloat {
    fn from_f64(v: f64) -> Self {
        BigFloat::new(v)
    }
    fn exp(&self) -> Self {
        BigFloat(self.0.clone().exp())
    }
    fn exp_m1(&self) -> Self {
        BigFloat(self.0.clone().exp_m1())
    }
    fn ln(&self) -> Self {
        BigFloat(self.0.clone().ln())
    }
    fn sqrt(&self) -> Self {
        BigFloat(self.0.clone().sqrt())
    }
    fn sin(&self) -> Self {
        BigFloat(self.0.clone().sin())
    }
    fn cos(&self) -> Self {
        BigFloat(self.0.clone().cos())
    }
    fn abs(&self) -> Self {
        BigFloat(self.0.clone().abs())
    }
    fn floor(&self) -> Self {
        BigFloat(self.0.clone().floor())
    }
    fn pi() -> Self {
        BigFloat::new(Constant::Pi)
    }
    fn euler_gamma() -> Self {
        BigFloat::new(Constant::Euler)
    }
    fn bits() -> u32 {
        working_precision()
    }
    fn is_finite(&self) -> bool {
        self.0.is_finite()
    }
    fn powf(&self, e: &Self) -> Self {
        BigFloat(self.0.clone().pow(&e.0))
    }
}
