//! Truncated Laurent series in a formal perturbation ε.
//!
//! Lets the moment recursion pass through parameter points where a leading
//! coefficient vanishes: evaluate at α+ε and read off the ε⁰ coefficient.
//! Every value tracks how many of its coefficients are actually known, so
//! cancellations cannot silently manufacture precision.

use std::cell::Cell;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::scalar::Scalar;

/// Default number of coefficients kept after a division.
pub const SERIES_TERMS: usize = 16;

thread_local! {
    static ORDER: Cell<usize> = const { Cell::new(SERIES_TERMS) };
}

/// Runs `f` with quotients truncated to `terms` coefficients.
pub fn with_order<R>(terms: usize, f: impl FnOnce() -> R) -> R {
    let old = ORDER.with(|o| o.replace(terms.max(1)));
    let r = f();
    ORDER.with(|o| o.set(old));
    r
}

fn order() -> usize {
    ORDER.with(|o| o.get())
}

/// Σ c_i ε^{val+i}. An exact series is a finite sum; otherwise the
/// remainder is O(ε^{val+len}).
#[derive(Clone, Debug)]
pub struct Laurent<S> {
    /// Exponent of `c[0]`.
    val: i32,
    c: Vec<S>,
    exact: bool,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LaurentError {
    #[error("series has a pole of order {0} at ε = 0")]
    Pole(i32),
    #[error("series truncated before the ε⁰ coefficient")]
    Truncated,
}

impl<S: Scalar> Laurent<S> {
    pub fn constant(v: S) -> Self {
        Laurent { val: 0, c: vec![v], exact: true }.normalized()
    }

    /// `v + ε`.
    pub fn perturbed(v: S) -> Self {
        Laurent { val: 0, c: vec![v, S::one()], exact: true }
    }

    /// Number of known coefficients from the valuation on; `usize::MAX` when exact.
    pub fn known_terms(&self) -> usize {
        if self.exact {
            usize::MAX
        } else {
            self.c.len()
        }
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    pub fn valuation(&self) -> i32 {
        self.val
    }

    fn end(&self) -> i32 {
        self.val + self.c.len() as i32
    }

    /// Coefficient of ε^e when it is known.
    pub fn coeff(&self, e: i32) -> Option<S> {
        if e < self.val {
            return Some(S::zero());
        }
        match self.c.get((e - self.val) as usize) {
            Some(x) => Some(x.clone()),
            None if self.exact => Some(S::zero()),
            None => None,
        }
    }

    fn normalized(mut self) -> Self {
        let lead = self.c.iter().take_while(|x| x.is_zero()).count();
        self.c.drain(..lead);
        self.val += lead as i32;
        if self.exact {
            while self.c.last().is_some_and(|x| x.is_zero()) {
                self.c.pop();
            }
            if self.c.is_empty() {
                self.val = 0;
            }
        }
        self
    }

    /// The regular part at ε = 0; fails on a genuine pole or when truncation
    /// has consumed the constant term.
    pub fn at_zero(&self) -> Result<S, LaurentError> {
        let s = self.clone().normalized();
        if s.c.is_empty() {
            return if s.exact || s.val > 0 { Ok(S::zero()) } else { Err(LaurentError::Truncated) };
        }
        if s.val < 0 {
            return Err(LaurentError::Pole(-s.val));
        }
        s.coeff(0).ok_or(LaurentError::Truncated)
    }
}

impl<S: Scalar> fmt::Display for Laurent<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.c.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({})ε^{}", x, self.val + i as i32)?;
        }
        if self.exact {
            if self.c.is_empty() {
                write!(f, "0")?;
            }
            Ok(())
        } else {
            write!(f, " + O(ε^{})", self.end())
        }
    }
}

impl<S: Scalar> PartialEq for Laurent<S> {
    fn eq(&self, other: &Self) -> bool {
        (self.clone() - other.clone()).is_zero()
    }
}

impl<S: Scalar> Add for Laurent<S> {
    type Output = Self;
    fn add(self, r: Self) -> Self {
        let lo = self.val.min(r.val);
        let exact = self.exact && r.exact;
        let hi = match (self.exact, r.exact) {
            (true, true) => self.end().max(r.end()),
            (true, false) => r.end(),
            (false, true) => self.end(),
            (false, false) => self.end().min(r.end()),
        };
        if hi <= lo {
            return Laurent { val: hi, c: Vec::new(), exact };
        }
        let c = (lo..hi).map(|e| self.coeff(e).unwrap() + r.coeff(e).unwrap()).collect();
        Laurent { val: lo, c, exact }.normalized()
    }
}

impl<S: Scalar> Neg for Laurent<S> {
    type Output = Self;
    fn neg(self) -> Self {
        Laurent { val: self.val, c: self.c.into_iter().map(|x| -x).collect(), exact: self.exact }
    }
}

impl<S: Scalar> Sub for Laurent<S> {
    type Output = Self;
    fn sub(self, r: Self) -> Self {
        self + (-r)
    }
}

impl<S: Scalar> Mul for Laurent<S> {
    type Output = Self;
    fn mul(self, r: Self) -> Self {
        let (a, r) = (self.normalized(), r.normalized());
        if (a.exact && a.c.is_empty()) || (r.exact && r.c.is_empty()) {
            return Self::zero();
        }
        let exact = a.exact && r.exact;
        let len = match (a.exact, r.exact) {
            (true, true) => (a.c.len() + r.c.len()).saturating_sub(1),
            (true, false) => r.c.len(),
            (false, true) => a.c.len(),
            (false, false) => a.c.len().min(r.c.len()),
        };
        let c = (0..len)
            .map(|i| {
                let lo = i.saturating_sub(r.c.len().saturating_sub(1));
                (lo..=i.min(a.c.len().saturating_sub(1)))
                    .filter(|j| i - j < r.c.len())
                    .fold(S::zero(), |acc, j| acc + a.c[j].clone() * r.c[i - j].clone())
            })
            .collect();
        Laurent { val: a.val + r.val, c, exact }.normalized()
    }
}

impl<S: Scalar> Div for Laurent<S> {
    type Output = Self;
    fn div(self, r: Self) -> Self {
        let a = self.normalized();
        let b = r.normalized();
        assert!(!b.c.is_empty(), "division by a series with no known nonzero coefficient");
        if b.exact && b.c.len() == 1 {
            let d = b.c[0].clone();
            return Laurent { val: a.val - b.val, c: a.c.into_iter().map(|x| x / d.clone()).collect(), exact: a.exact };
        }
        let known = |s: &Laurent<S>| if s.exact { order() } else { s.c.len() };
        let len = known(&a).min(known(&b));
        let mut q: Vec<S> = Vec::with_capacity(len);
        for i in 0..len {
            let mut num = a.c.get(i).cloned().unwrap_or_else(S::zero);
            for (j, qj) in q.iter().enumerate() {
                if let Some(bj) = b.c.get(i - j) {
                    num = num - qj.clone() * bj.clone();
                }
            }
            q.push(num / b.c[0].clone());
        }
        Laurent { val: a.val - b.val, c: q, exact: false }
    }
}

impl<S: Scalar> Zero for Laurent<S> {
    fn zero() -> Self {
        Self::constant(S::zero())
    }
    fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }
}

impl<S: Scalar> One for Laurent<S> {
    fn one() -> Self {
        Self::constant(S::one())
    }
}

impl<S: Scalar> Scalar for Laurent<S> {
    fn from_i64(v: i64) -> Self {
        Self::constant(S::from_i64(v))
    }
    fn from_rational(r: &BigRational) -> Self {
        Self::constant(S::from_rational(r))
    }
    fn to_f64(&self) -> f64 {
        self.at_zero().map(|v| v.to_f64()).unwrap_or(f64::NAN)
    }
    fn is_exact() -> bool {
        S::is_exact()
    }
}
