//! Average purity and entanglement entropy under the mean-field conversion
//! r → m₁, the Φ building block, and the Hilbert-Schmidt limits.

use crate::error::{Error, Result};
use crate::moments::moment_closed;
use crate::params::EnsembleParams;
use crate::scalar::{Real, Scalar};
use crate::specfun::{digamma, gamma_fn, hyp1f1, hyp1f1_dparam, laguerre, rgamma, Param};

/// Φ^{k,n}_{v₁,v₂} = (−1)^n c^{−k−v₂−1} Γ(k+1)Γ(k+v₂+1)/Γ(n+v₁+1) · ₁F₁(k+v₂+1; n+v₁+1; 1/c).
pub fn phi<S: Real>(v1: &S, v2: &S, k: usize, n: usize, c: &S) -> Result<S> {
    let (a, b, pre) = phi_parts(v1, v2, k, n, c)?;
    Ok(pre * hyp1f1(&a, &b, &c.recip())?)
}

fn phi_parts<S: Real>(v1: &S, v2: &S, k: usize, n: usize, c: &S) -> Result<(S, S, S)> {
    let b = S::from_usize(n + 1) + v1.clone();
    if b.as_integer().is_some_and(|v| v <= 0) {
        return Err(Error::Pole(format!("Gamma({b}) in the denominator of Phi")));
    }
    let a = S::from_usize(k + 1) + v2.clone();
    let mut pre = c.powf(&-a.clone()) * gamma_fn(&S::from_usize(k + 1))? * gamma_fn(&a)? / gamma_fn(&b)?;
    if n % 2 == 1 {
        pre = -pre;
    }
    Ok((a, b, pre))
}

/// d(Φ^{k,n}_{v,v} − Φ^{k,n}_{v,α})/dv at v = α, which is ∂Φ/∂v₂.
///
/// v₂ enters through c^{−k−v₂−1}, Γ(k+v₂+1) and the upper ₁F₁ parameter.
pub fn dphi<S: Real>(alpha: &S, k: usize, n: usize, c: &S) -> Result<S> {
    let (a, b, pre) = phi_parts(alpha, alpha, k, n, c)?;
    let z = c.recip();
    let f = hyp1f1(&a, &b, &z)?;
    let df = hyp1f1_dparam(&a, &b, &z, Param::First)?;
    Ok(pre * ((digamma(&a)? - c.ln()) * f + df))
}

/// E[P] = (α²c² + 2c²n² + 3αc²n + 2αc + 4cn + 1)/(n(αc + cn + 1)²).
pub fn avg_purity<S: Scalar>(p: &EnsembleParams<S>) -> S {
    let (a, c, n) = (p.alpha.clone(), p.c.clone(), p.nn());
    let two = S::from_i64(2);
    let num = a.sq() * c.sq() + two.clone() * c.sq() * n.sq() + S::from_i64(3) * a.clone() * c.sq() * n.clone()
        + two.clone() * a.clone() * c.clone()
        + S::from_i64(4) * c.clone() * n.clone()
        + S::one();
    let d = a * c.clone() + c * n.clone() + S::one();
    num / (n * d.sq())
}

/// E[T] = E[Σ xᵢ ln xᵢ] in closed form.
pub fn expected_t<S: Real>(p: &EnsembleParams<S>) -> Result<S> {
    let (al, c, be) = (&p.alpha, &p.c, &p.beta);
    let n = p.n;
    let nn = p.nn();
    let inv_c = c.recip();
    let lag = |m: usize, a: S| laguerre(m, &a, &inv_c);
    let cpow = |e: S| c.powf(&e);
    let sign = |k: usize| if k % 2 == 0 { S::one() } else { -S::one() };

    let mut s1 = S::zero();
    for k in 0..n.saturating_sub(2) {
        s1 = s1
            + sign(k) * cpow(al.clone() + S::from_usize(k + 2)) * gamma_fn(&S::from_usize(n - k - 2))?
                / gamma_fn(&S::from_usize(k + 1))?
                * phi(al, al, k + 1, n - 1, c)?
                * lag(n - k, -(nn.clone() + al.clone() + S::one()));
    }
    let mut s2 = S::zero();
    for k in 0..n.saturating_sub(1) {
        s2 = s2
            + sign(k) * cpow(al.clone() + S::from_usize(k + 1)) * gamma_fn(&S::from_usize(n - k - 1))?
                / gamma_fn(&S::from_usize(k + 1))?
                * phi(al, al, k + 1, n, c)?
                * lag(n - k - 1, -(nn.clone() + al.clone()));
    }
    let mut s3 = S::zero();
    for k in 0..=2usize {
        let kk = k + n - 1;
        let inner = (digamma(&S::from_usize(k + n))? - digamma(&S::from_usize(k + 1))?) * phi(al, al, kk, n - 1, c)?
            + dphi(al, kk, n - 1, c)?;
        s3 = s3
            + cpow(al.clone() + S::from_usize(k + n)) * lag(2 - k, -(nn.clone() + al.clone() + S::one()))
                / gamma_fn(&S::from_usize(k + 1))?
                * rgamma(&S::from_usize(k + n - 1))
                * inner;
    }
    let s4 = cpow(al.clone() + nn.clone()) / gamma_fn(&nn)?
        * ((digamma(&S::from_usize(n + 1))? + S::euler_gamma()) * phi(al, al, n, n, c)? + dphi(al, n, n, c)?);
    let sn = sign(n);
    let body = nn.clone() * s1 - s2 - sn.clone() * nn.clone() * s3 - sn * s4;
    let tail = nn.clone() * (al.clone() * c.clone() + c.clone() * nn + S::one()) / (be.clone() * c.clone())
        * ((c.clone() / be.clone()).ln() - S::one());
    Ok((-inv_c.clone()).exp() / be.clone() * body + tail)
}

/// E[S] = ln m₁ − E[T]/m₁.
pub fn avg_entropy<S: Real>(p: &EnsembleParams<S>) -> Result<S> {
    let m1 = moment_closed(1, p)?;
    Ok(m1.ln() - expected_t(p)? / m1)
}

/// E_HS[P] = (2n+α)/(n(n+α)+1).
pub fn hs_purity<S: Scalar>(n: usize, alpha: &S) -> S {
    let nn = S::from_usize(n);
    (S::from_i64(2) * nn.clone() + alpha.clone()) / (nn.clone() * (nn + alpha.clone()) + S::one())
}

/// E_HS[S] = ψ₀(n(n+α)+1) − ψ₀(n+α) − (n+1)/(2(α+n)).
pub fn hs_entropy<S: Real>(n: usize, alpha: &S) -> Result<S> {
    let nn = S::from_usize(n);
    let na = nn.clone() + alpha.clone();
    Ok(digamma(&(nn.clone() * na.clone() + S::one()))? - digamma(&na)?
        - (nn + S::one()) / (S::from_i64(2) * na))
}

/// Exact variant of [`hs_entropy`] for integer α ≥ 0: the ψ₀ difference is a finite harmonic sum.
pub fn hs_entropy_exact<S: Scalar>(n: usize, alpha: usize) -> S {
    let na = n + alpha;
    let mut h = S::zero();
    for j in na..n * na + 1 {
        h = h + S::from_usize(j).recip();
    }
    h - S::from_usize(n + 1) / S::from_usize(2 * na)
}

/// (E_h[r], E_h[r²], E_h[r ln r]) for r ~ Gamma(n(n+α), β).
pub fn gamma_trace_moments<S: Real>(n: usize, alpha: &S, beta: &S) -> Result<(S, S, S)> {
    let d = S::from_usize(n) * (S::from_usize(n) + alpha.clone());
    let er = d.clone() / beta.clone();
    let er2 = d.clone() * (d.clone() + S::one()) / beta.sq();
    let erl = er.clone() * (digamma(&(d + S::one()))? - beta.ln());
    Ok((er, er2, erl))
}

/// lim_{a→0} m₂ = n(n+α)(2n+α)/β².
pub fn hs_limit_m2<S: Scalar>(n: usize, alpha: &S, beta: &S) -> S {
    let nn = S::from_usize(n);
    nn.clone() * (nn.clone() + alpha.clone()) * (S::from_i64(2) * nn + alpha.clone()) / beta.sq()
}

/// lim_{a→0} E[T] = n(α+n)/β · (ψ₀(n+α) − ln β) + n(n+1)/(2β).
pub fn hs_limit_t<S: Real>(n: usize, alpha: &S, beta: &S) -> Result<S> {
    let nn = S::from_usize(n);
    let na = nn.clone() + alpha.clone();
    Ok(nn.clone() * na.clone() / beta.clone() * (digamma(&na)? - beta.ln())
        + nn.clone() * (nn + S::one()) / (S::from_i64(2) * beta.clone()))
}

/// Mean-field entanglement summary; values are averages after replacing r by m₁.
#[derive(Clone, Debug)]
pub struct EntanglementReport<S> {
    pub purity_mean: S,
    pub entropy_mean: S,
    pub expected_t: S,
    pub m1: S,
    pub params: EnsembleParams<S>,
}

pub fn report<S: Real>(p: &EnsembleParams<S>) -> Result<EntanglementReport<S>> {
    let m1 = moment_closed(1, p)?;
    let et = expected_t(p)?;
    Ok(EntanglementReport {
        purity_mean: avg_purity(p),
        entropy_mean: m1.ln() - et.clone() / m1.clone(),
        expected_t: et,
        m1,
        params: p.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Real, Scalar};
    use num_traits::{One, Zero};
    use crate::{BigFloat, Rational};

    #[test]
    fn phi_examples() {
        let z = BigFloat::zero();
        let one = BigFloat::one();
        let v = phi(&z, &z, 0, 0, &one).unwrap();
        assert!((v - one.exp()).abs().to_f64() < 1e-70);
        // −Γ(2)/Γ(3)·₁F₁(2;3;1) = −(1/2)·2 = −1
        let v = phi(&one, &one, 0, 1, &one).unwrap();
        assert!((v + one.clone()).abs().to_f64() < 1e-70);
        assert!(matches!(phi(&BigFloat::from_i64(-2), &z, 0, 1, &one), Err(Error::Pole(_))));
    }

    #[test]
    fn dphi_matches_difference() {
        let al = BigFloat::from_ratio(1, 2);
        let c = BigFloat::from_ratio(3, 2);
        let h = BigFloat::from_f64(1e-25);
        let f = |v: &BigFloat| phi(&al, v, 3, 2, &c).unwrap();
        let fd = (f(&(al.clone() + h.clone())) - f(&(al.clone() - h.clone()))) / (BigFloat::from_i64(2) * h);
        let d = dphi(&al, 3, 2, &c).unwrap();
        assert!(((d.clone() - fd) / d).abs().to_f64() < 1e-30);
    }

    #[test]
    fn purity_examples() {
        let p = EnsembleParams::from_beta_c(2, Rational::from_i64(0), Rational::from_i64(1), Rational::from_i64(1))
            .unwrap();
        assert_eq!(avg_purity(&p), Rational::from_ratio(17, 18));
        // a single path has E[x²]/E[x]² > 1, so the mean-field value is not 1
        let p1 = p.with_n(1);
        assert_eq!(avg_purity(&p1), Rational::from_ratio(7, 4));
    }

    #[test]
    fn hs_examples() {
        assert_eq!(hs_purity(2, &Rational::from_i64(0)), Rational::from_ratio(4, 5));
        assert_eq!(hs_purity(3, &Rational::from_i64(2)), Rational::from_ratio(1, 2));
        assert_eq!(hs_purity(1, &Rational::from_ratio(3, 7)), Rational::from_i64(1));
        assert_eq!(hs_entropy_exact::<Rational>(2, 0), Rational::from_ratio(1, 3));
        assert_eq!(hs_entropy_exact::<Rational>(1, 0), Rational::from_i64(0));
        let v: f64 = hs_entropy(2, &1.0).unwrap();
        assert!((v - (1.0 / 3.0 + 1.0 / 4.0 + 1.0 / 5.0 + 1.0 / 6.0 - 0.5)).abs() < 1e-13);
        assert_eq!(hs_limit_m2(1, &Rational::from_i64(0), &Rational::from_i64(1)), Rational::from_i64(2));
        assert_eq!(hs_limit_m2(2, &Rational::from_i64(1), &Rational::from_i64(1)), Rational::from_i64(30));
    }

    #[test]
    fn gamma_moments() {
        let (r, r2, rl) = gamma_trace_moments(1, &0.0, &1.0).unwrap();
        assert!((r - 1.0).abs() < 1e-15 && (r2 - 2.0).abs() < 1e-15);
        assert!((rl - (1.0 - 0.577_215_664_901_532_9)).abs() < 1e-14);
        let (_, r2, _) = gamma_trace_moments(2, &0.0, &1.0).unwrap();
        assert!((r2 - 20.0).abs() < 1e-13);
        let (r, _, _) = gamma_trace_moments(2, &1.0, &2.0).unwrap();
        assert!((r - 3.0).abs() < 1e-15);
    }
}
