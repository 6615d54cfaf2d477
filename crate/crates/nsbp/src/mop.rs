//! Multiple orthogonal polynomials for the modified Bessel weights.
//!
//! Type II: the monic P̃ₙ^{(α,c)} and its rescaling Pₙ(x) = (β/c)^{−n} P̃ₙ(βx/c).
//!
//! Type I: Q̃ₙ = Σ_k (−c)^k C(n,k) w_{k+α,c}, reduced to the basis
//! {w_{α,c}, w_{α+1,c}} with w_{ν+2,c}(u) = u w_{ν,c}(u) − (ν+1) w_{ν+1,c}(u).
//! In x the basis is ω₁(x) = w_{α,c}(βx/c), ω₂(x) = w_{α+1,c}(βx/c), and
//! Qₙ(x) = E·(a₁(x)ω₁(x) + a₂(x)ω₂(x)) with the common constant E = e^{−1/c}c^α,
//! so every linear relation among the Qₙ is an exact identity on (a₁, a₂).

use crate::entanglement::{dphi, phi};
use crate::error::{Error, Result};
use crate::params::EnsembleParams;
use crate::poly::Poly;
use crate::scalar::{Real, Scalar};
use crate::specfun::{bessel_asymptotic_threshold, bessel_i, bessel_i_scaled, bessel_series, binomial, digamma, factorial, gamma_fn, hyp1f1, laguerre, rgamma};

/// P̃ₙ^{(α,c)}: coefficient of u^k is n!/k! · c^{k−n} · L_{n−k}^{(−n−α−1)}(1/c).
pub fn typeii_poly_tilde<S: Scalar>(n: usize, alpha: &S, c: &S) -> Poly<S> {
    let lag_alpha = -(S::from_usize(n) + alpha.clone() + S::one());
    let inv_c = c.recip();
    let coeffs = (0..=n)
        .map(|k| {
            factorial::<S>(n) / factorial::<S>(k) * c.powi(k as i64 - n as i64) * laguerre(n - k, &lag_alpha, &inv_c)
        })
        .collect();
    Poly::new(coeffs)
}

/// Pₙ as a polynomial in x.
pub fn typeii_poly<S: Scalar>(n: usize, p: &EnsembleParams<S>) -> Poly<S> {
    let s = p.scale();
    typeii_poly_tilde(n, &p.alpha, &p.c).compose_scale(&s).scale(&s.powi(-(n as i64)))
}

pub fn typeii_eval<S: Scalar>(n: usize, p: &EnsembleParams<S>, x: &S) -> S {
    typeii_poly(n, p).eval(x)
}

/// Coefficients of w_{j+α,c} in the basis {w_{α,c}, w_{α+1,c}}.
pub fn reduce_w<S: Scalar>(j: usize, alpha: &S) -> (Poly<S>, Poly<S>) {
    let mut prev = (Poly::constant(S::one()), Poly::zero());
    let mut cur = (Poly::zero(), Poly::constant(S::one()));
    if j == 0 {
        return prev;
    }
    for i in 0..j - 1 {
        // red(i+2) = u·red(i) − (α+i+1)·red(i+1)
        let f = alpha.clone() + S::from_usize(i + 1);
        let next = (prev.0.shift_up() - cur.0.scale(&f), prev.1.shift_up() - cur.1.scale(&f));
        prev = cur;
        cur = next;
    }
    cur
}

/// (A₁, A₂) with Q̃ₙ = A₁(u) w_{α,c}(u) + A₂(u) w_{α+1,c}(u).
pub fn typei_tilde_coeffs<S: Scalar>(n: usize, alpha: &S, c: &S) -> (Poly<S>, Poly<S>) {
    let mut a1 = Poly::zero();
    let mut a2 = Poly::zero();
    let mc = -c.clone();
    for k in 0..=n {
        let f = mc.powi(k as i64) * binomial(&S::from_usize(n), k);
        let (r1, r2) = reduce_w(k, alpha);
        a1 = a1 + r1.scale(&f);
        a2 = a2 + r2.scale(&f);
    }
    (a1, a2)
}

/// A type I function in x: E·(a₁ω₁ + a₂ω₂), E = e^{−1/c}c^α.
#[derive(Clone, Debug, PartialEq)]
pub struct TypeIFunction<S> {
    pub n: usize,
    pub a1: Poly<S>,
    pub a2: Poly<S>,
}

impl<S: Scalar> TypeIFunction<S> {
    pub fn zero(n: usize) -> Self {
        TypeIFunction { n, a1: Poly::zero(), a2: Poly::zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.a1.is_zero() && self.a2.is_zero()
    }

    pub fn scale(&self, s: &S) -> Self {
        TypeIFunction { n: self.n, a1: self.a1.scale(s), a2: self.a2.scale(s) }
    }

    pub fn add(&self, o: &Self) -> Self {
        TypeIFunction { n: self.n, a1: self.a1.clone() + o.a1.clone(), a2: self.a2.clone() + o.a2.clone() }
    }

    /// Multiplication by a polynomial in x.
    pub fn mul_poly(&self, q: &Poly<S>) -> Self {
        TypeIFunction { n: self.n, a1: self.a1.clone() * q.clone(), a2: self.a2.clone() * q.clone() }
    }

    /// x·d/dx, from x ω₁' = (α − βx)ω₁ + ω₂ and x ω₂' = (βx/c)ω₁ − βx ω₂.
    pub fn x_derivative(&self, p: &EnsembleParams<S>) -> Self {
        let x = Poly::x();
        let bx = x.scale(&p.beta);
        let a1 = self.a1.derivative().shift_up()
            + self.a1.clone() * (Poly::constant(p.alpha.clone()) - bx.clone())
            + self.a2.clone() * bx.scale(&p.c.recip());
        let a2 = self.a1.clone() + self.a2.derivative().shift_up() - self.a2.clone() * bx;
        TypeIFunction { n: self.n, a1, a2 }
    }
}

/// Qₙ in x: a_i(x) = (−1)^n β^{n+1}/n! · Ã_i(βx/c).
pub fn typei_function<S: Scalar>(n: usize, p: &EnsembleParams<S>) -> TypeIFunction<S> {
    let (t1, t2) = typei_tilde_coeffs(n, &p.alpha, &p.c);
    let s = p.scale();
    let mut f = p.beta.powi(n as i64 + 1) / factorial::<S>(n);
    if n % 2 == 1 {
        f = -f;
    }
    TypeIFunction { n, a1: t1.compose_scale(&s).scale(&f), a2: t2.compose_scale(&s).scale(&f) }
}

/// H̃ₙ = (−1)^n n! e^{1/c} c^{−α−n−1}.
pub fn normalization_h<S: Real>(n: usize, alpha: &S, c: &S) -> S {
    let v = factorial::<S>(n) * c.recip().exp() * c.powf(&-(alpha.clone() + S::from_usize(n + 1)));
    if n % 2 == 1 {
        -v
    } else {
        v
    }
}

/// w_{ν,c}(u) = u^ν e^{−cu} Σ_i u^i/(i! Γ(ν+i+1)) = u^{ν/2} e^{−cu} I_ν(2√u).
pub fn w_nu_c<S: Real>(nu: &S, c: &S, u: &S) -> Result<S> {
    if !(*u > S::zero()) {
        return Err(Error::Domain(format!("weight needs a positive argument, got {u}")));
    }
    let z = S::from_i64(2) * u.sqrt();
    if z.to_f64() >= bessel_asymptotic_threshold::<S>() {
        // one exponential for u^{ν/2} e^{z − cu}, which stays in range where its factors would not
        let half = S::from_ratio(1, 2);
        return Ok((nu.clone() * half * u.ln() + z.clone() - c.clone() * u.clone()).exp() * bessel_i_scaled(nu, &z)?);
    }
    Ok(u.powf(nu) * (-(c.clone() * u.clone())).exp() * bessel_series(nu, u)?)
}

/// Basis values (ω₁(x), ω₂(x)).
pub fn basis_omega<S: Real>(p: &EnsembleParams<S>, x: &S) -> Result<(S, S)> {
    if !(*x > S::zero()) {
        return Err(Error::Domain(format!("x must be positive, got {x}")));
    }
    let u = p.scale() * x.clone();
    Ok((w_nu_c(&p.alpha, &p.c, &u)?, w_nu_c(&(p.alpha.clone() + S::one()), &p.c, &u)?))
}

/// E = e^{−1/c} c^α.
pub fn type_i_constant<S: Real>(p: &EnsembleParams<S>) -> S {
    (-p.c.recip()).exp() * p.c.powf(&p.alpha)
}

impl<S: Real> TypeIFunction<S> {
    /// Value given precomputed (ω₁, ω₂) and E.
    pub fn eval_with(&self, x: &S, omega: &(S, S), e: &S) -> S {
        e.clone() * (self.a1.eval(x) * omega.0.clone() + self.a2.eval(x) * omega.1.clone())
    }

    pub fn eval(&self, p: &EnsembleParams<S>, x: &S) -> Result<S> {
        let om = basis_omega(p, x)?;
        Ok(self.eval_with(x, &om, &type_i_constant(p)))
    }
}

pub fn typei_eval<S: Real>(n: usize, p: &EnsembleParams<S>, x: &S) -> Result<S> {
    typei_function(n, p).eval(p, x)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Weight {
    W1,
    W2,
}

/// w₁ = x^{α/2} e^{−βx} I_α(√(ax)/t), w₂ = x^{(α+1)/2} e^{−βx} I_{α+1}(√(ax)/t).
pub fn weight_w<S: Real>(kind: Weight, p: &EnsembleParams<S>, x: &S) -> Result<S> {
    if !(*x > S::zero()) {
        return Err(Error::Domain(format!("x must be positive, got {x}")));
    }
    let h = p.horizon()?;
    let nu = match kind {
        Weight::W1 => p.alpha.clone(),
        Weight::W2 => p.alpha.clone() + S::one(),
    };
    let z = (h.a.clone() * x.clone()).sqrt() / h.t.clone();
    let half = S::from_ratio(1, 2);
    if z.to_f64() >= bessel_asymptotic_threshold::<S>() {
        return Ok((nu.clone() * half * x.ln() + z.clone() - p.beta.clone() * x.clone()).exp() * bessel_i_scaled(&nu, &z)?);
    }
    Ok(x.powf(&(nu.clone() * half)) * (-(p.beta.clone() * x.clone())).exp() * bessel_i(&nu, &z)?)
}

/// ∫₀^∞ u^{s−1} Q̃ₙ^{(α,c)}(u) du
/// = (−1)^n e^{1/c} Γ(s)Γ(s+α)/(Γ(s−n) c^{s+α} Γ(n+α+1)) ₁F₁(n−s+1; α+n+1; −1/c).
///
/// Non-terminating cases are summed through Kummer's transformation
/// e^{1/c}₁F₁(n−s+1; b; −1/c) = ₁F₁(s+α; b; 1/c), whose terms are all positive.
pub fn moment_integral_xq<S: Real>(s: &S, n: usize, alpha: &S, c: &S) -> Result<S> {
    if !(*s > S::zero()) || !(s.clone() + alpha.clone() > S::zero()) {
        return Err(Error::Domain(format!("need s > 0 and s + alpha > 0, got s={s}")));
    }
    let nn = S::from_usize(n);
    let rg = rgamma(&(s.clone() - nn.clone()));
    if rg.is_zero() {
        return Ok(S::zero());
    }
    let b = alpha.clone() + nn.clone() + S::one();
    let a_lit = nn.clone() - s.clone() + S::one();
    let inv_c = c.recip();
    let f = if a_lit.as_integer().is_some_and(|v| v <= 0) {
        inv_c.exp() * hyp1f1(&a_lit, &b, &-inv_c.clone())?
    } else {
        hyp1f1(&(s.clone() + alpha.clone()), &b, &inv_c)?
    };
    let v = gamma_fn(s)? * gamma_fn(&(s.clone() + alpha.clone()))? * rg
        / (c.powf(&(s.clone() + alpha.clone())) * gamma_fn(&b)?)
        * f;
    Ok(if n % 2 == 1 { -v } else { v })
}

/// ∫₀^∞ u^k ln u · Q̃ₙ^{(α,c)}(u) du
/// = (ψ₀(k+1) − ψ₀(k−n+1))/Γ(k+1−n) · Φ^{k,n}_{α,α} + 1/Γ(k+1−n) · d(Φ^{k,n}_{v,v} − Φ^{k,n}_{v,α})/dv|_{v=α}.
///
/// When k−n+1 = −m is a non-positive integer, 1/Γ vanishes and −ψ₀/Γ tends to (−1)^m m!.
pub fn log_moment_tilde<S: Real>(k: usize, n: usize, alpha: &S, c: &S) -> Result<S> {
    let ph = phi(alpha, alpha, k, n, c)?;
    if k + 1 <= n {
        let m = n - 1 - k;
        let f = factorial::<S>(m);
        return Ok(if m % 2 == 0 { f * ph } else { -f * ph });
    }
    let z = S::from_usize(k + 1 - n);
    let rg = rgamma(&z);
    let psi = digamma(&S::from_usize(k + 1))? - digamma(&z)?;
    Ok(psi * rg.clone() * ph + rg * dphi(alpha, k, n, c)?)
}

/// ∫₀^∞ x^k ln x · Qₙ(x) dx for the normalized, rescaled Qₙ.
pub fn log_moment_integral_q<S: Real>(k: usize, n: usize, p: &EnsembleParams<S>) -> Result<S> {
    let lt = log_moment_tilde(k, n, &p.alpha, &p.c)?;
    let ft = moment_integral_xq(&S::from_usize(k + 1), n, &p.alpha, &p.c)?;
    let ratio = p.c.clone() / p.beta.clone();
    let pre = ratio.powi(k as i64 - n as i64) / normalization_h(n, &p.alpha, &p.c);
    Ok(pre * (lt + ratio.ln() * ft))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Real, Scalar};
    use num_traits::{One, Zero};
    use crate::{BigFloat, Rational};

    fn r(p: i64, q: i64) -> Rational {
        Rational::from_ratio(p, q)
    }

    #[test]
    fn type_ii_examples() {
        assert_eq!(typeii_poly_tilde(0, &r(3, 2), &r(2, 1)), Poly::constant(r(1, 1)));
        let p1 = typeii_poly_tilde(1, &r(0, 1), &r(1, 1));
        assert_eq!(p1.coeffs(), &[r(-2, 1), r(1, 1)]);
        assert_eq!(p1.coeff(0), laguerre(1, &r(-2, 1), &r(1, 1)));
        for n in 0..8 {
            let p = typeii_poly_tilde(n, &r(1, 3), &r(5, 7));
            assert_eq!(p.degree(), Some(n));
            assert_eq!(p.coeff(n), r(1, 1));
        }
    }

    #[test]
    fn type_i_examples() {
        let c = r(3, 4);
        let (a1, a2) = typei_tilde_coeffs(0, &r(1, 2), &c);
        assert_eq!((a1, a2), (Poly::constant(r(1, 1)), Poly::zero()));
        // Q̃₁ = w_α − c·w_{α+1}
        let (a1, a2) = typei_tilde_coeffs(1, &r(1, 2), &c);
        assert_eq!((a1, a2), (Poly::constant(r(1, 1)), Poly::constant(-c.clone())));
        for n in 0..10usize {
            let (a1, a2) = typei_tilde_coeffs(n, &r(1, 2), &c);
            assert!(a1.degree().unwrap_or(0) <= n.div_ceil(2));
            assert!(a2.degree().unwrap_or(0) <= n / 2);
        }
    }

    #[test]
    fn reduction_matches_bessel_contiguity() {
        let alpha = BigFloat::from_ratio(1, 3);
        let c = BigFloat::from_ratio(2, 5);
        let u = BigFloat::from_ratio(7, 3);
        for j in 0..7usize {
            let (r1, r2) = reduce_w(j, &alpha);
            let lhs = w_nu_c(&(alpha.clone() + BigFloat::from_usize(j)), &c, &u).unwrap();
            let rhs = r1.eval(&u) * w_nu_c(&alpha, &c, &u).unwrap()
                + r2.eval(&u) * w_nu_c(&(alpha.clone() + BigFloat::one()), &c, &u).unwrap();
            let rel = ((lhs.clone() - rhs) / lhs).abs().to_f64();
            assert!(rel < 1e-60, "j={j} rel={rel}");
        }
    }

    #[test]
    fn normalization_examples() {
        let e = BigFloat::one().exp();
        let h0: BigFloat = normalization_h(0, &BigFloat::zero(), &BigFloat::one());
        assert!(((h0 - e.clone()) / e.clone()).abs().to_f64() < 1e-70);
        let h1: BigFloat = normalization_h(1, &BigFloat::zero(), &BigFloat::one());
        assert!(((h1 + e.clone()) / e.clone()).abs().to_f64() < 1e-70);
        // 2!·e²·(1/2)^{-4} = 32e²
        let h2: BigFloat = normalization_h(2, &BigFloat::one(), &BigFloat::from_ratio(1, 2));
        let want = BigFloat::from_i64(32) * e.sq();
        assert!(((h2 - want.clone()) / want).abs().to_f64() < 1e-70);
    }

    #[test]
    fn xq_specializations() {
        let alpha = BigFloat::from_ratio(1, 2);
        let c = BigFloat::from_ratio(2, 3);
        for n in 0..6usize {
            let h = normalization_h(n, &alpha, &c);
            let v = moment_integral_xq(&BigFloat::from_usize(n + 1), n, &alpha, &c).unwrap();
            assert!(((v - h.clone()) / h).abs().to_f64() < 1e-65, "n={n}");
            for s in 1..=n {
                assert!(moment_integral_xq(&BigFloat::from_usize(s), n, &alpha, &c).unwrap().is_zero());
            }
        }
        assert!(moment_integral_xq(&BigFloat::zero(), 1, &alpha, &c).is_err());
    }

    #[test]
    fn weight_domain() {
        let p = crate::derive_params(1, 0.0, 2.0, 0.5, 1.0).unwrap();
        assert!(weight_w(Weight::W1, &p, &-1.0).is_err());
        assert!((weight_w(Weight::W1, &p, &1e-30).unwrap() - 1.0).abs() < 1e-12);
    }
}
