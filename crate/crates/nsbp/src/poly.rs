//! Dense univariate polynomials over a scalar field.

use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::Scalar;

/// Coefficients indexed by power; no trailing zeros except for the zero polynomial `[]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> Poly<S> {
    pub fn new(mut coeffs: Vec<S>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: S) -> Self {
        Self::new(vec![c])
    }

    /// The monomial x.
    pub fn x() -> Self {
        Self::new(vec![S::zero(), S::one()])
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> S {
        self.coeffs.get(k).cloned().unwrap_or_else(S::zero)
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, x: &S) -> S {
        self.coeffs.iter().rev().fold(S::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn scale(&self, s: &S) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.clone() * s.clone()).collect())
    }

    /// p(λx).
    pub fn compose_scale(&self, lambda: &S) -> Self {
        let mut pow = S::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c.clone() * pow.clone());
            pow = pow * lambda.clone();
        }
        Self::new(out)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.clone() * S::from_usize(k))
                .collect(),
        )
    }

    /// x·p(x).
    pub fn shift_up(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut out = vec![S::zero()];
        out.extend(self.coeffs.iter().cloned());
        Poly { coeffs: out }
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&S) -> U) -> Poly<U> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }
}

impl<S: Scalar> Add for Poly<S> {
    type Output = Self;
    fn add(self, r: Self) -> Self {
        let n = self.coeffs.len().max(r.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) + r.coeff(k)).collect())
    }
}

impl<S: Scalar> Sub for Poly<S> {
    type Output = Self;
    fn sub(self, r: Self) -> Self {
        self + (-r)
    }
}

impl<S: Scalar> Neg for Poly<S> {
    type Output = Self;
    fn neg(self) -> Self {
        Poly { coeffs: self.coeffs.into_iter().map(|c| -c).collect() }
    }
}

impl<S: Scalar> Mul for Poly<S> {
    type Output = Self;
    fn mul(self, r: Self) -> Self {
        if self.is_zero() || r.is_zero() {
            return Self::zero();
        }
        let mut out = vec![S::zero(); self.coeffs.len() + r.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in r.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(out)
    }
}
