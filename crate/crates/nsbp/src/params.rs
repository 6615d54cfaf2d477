//! Ensemble parameters and the derived constants β and c.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Start point and time window of the bridge.
#[derive(Clone, Debug, PartialEq)]
pub struct Horizon<S> {
    pub a: S,
    pub t: S,
    pub big_t: S,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EnsembleParams<S> {
    pub n: usize,
    pub alpha: S,
    /// T/(2t(T−t))
    pub beta: S,
    /// 2tT/(a(T−t))
    pub c: S,
    /// Absent when the ensemble was specified through (β, c) directly.
    pub horizon: Option<Horizon<S>>,
}

pub fn beta_of<S: Scalar>(t: &S, big_t: &S) -> S {
    big_t.clone() / (S::from_i64(2) * t.clone() * (big_t.clone() - t.clone()))
}

pub fn c_of<S: Scalar>(a: &S, t: &S, big_t: &S) -> S {
    S::from_i64(2) * t.clone() * big_t.clone() / (a.clone() * (big_t.clone() - t.clone()))
}

fn check_alpha<S: Scalar + PartialOrd>(alpha: &S) -> Result<()> {
    if !(*alpha > -S::one()) {
        return Err(Error::Domain(format!("alpha must exceed -1, got {alpha}")));
    }
    Ok(())
}

pub fn derive_params<S: Scalar + PartialOrd>(
    n: usize,
    alpha: S,
    a: S,
    t: S,
    big_t: S,
) -> Result<EnsembleParams<S>> {
    if n == 0 {
        return Err(Error::Domain("n must be at least 1".into()));
    }
    check_alpha(&alpha)?;
    if !(a > S::zero()) {
        return Err(Error::Domain(format!("a must be positive, got {a}")));
    }
    if !(t > S::zero()) {
        return Err(Error::Domain(format!("t must be positive, got {t}")));
    }
    if !(t < big_t) {
        return Err(Error::Domain(format!("need t < T, got t={t}, T={big_t}")));
    }
    let beta = beta_of(&t, &big_t);
    let c = c_of(&a, &t, &big_t);
    Ok(EnsembleParams { n, alpha, beta, c, horizon: Some(Horizon { a, t, big_t }) })
}

impl<S: Scalar> EnsembleParams<S> {
    /// Parameters given by (β, c) without an underlying time window.
    pub fn from_beta_c(n: usize, alpha: S, beta: S, c: S) -> Result<Self>
    where
        S: PartialOrd,
    {
        check_alpha(&alpha)?;
        if !(beta > S::zero()) || !(c > S::zero()) {
            return Err(Error::Domain("beta and c must be positive".into()));
        }
        Ok(EnsembleParams { n, alpha, beta, c, horizon: None })
    }

    /// Same ensemble with a different number of paths.
    pub fn with_n(&self, n: usize) -> Self {
        EnsembleParams { n, ..self.clone() }
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&S) -> U) -> EnsembleParams<U> {
        EnsembleParams {
            n: self.n,
            alpha: f(&self.alpha),
            beta: f(&self.beta),
            c: f(&self.c),
            horizon: self.horizon.as_ref().map(|h| Horizon { a: f(&h.a), t: f(&h.t), big_t: f(&h.big_t) }),
        }
    }

    pub fn nn(&self) -> S {
        S::from_usize(self.n)
    }

    /// β/c, the scale between the natural variable x and u = βx/c.
    pub fn scale(&self) -> S {
        self.beta.clone() / self.c.clone()
    }

    pub fn horizon(&self) -> Result<&Horizon<S>> {
        self.horizon
            .as_ref()
            .ok_or_else(|| Error::Unsupported("operation needs (a, t, T), not only (beta, c)".into()))
    }
}

impl EnsembleParams<BigRational> {
    pub fn to_scalar<U: Scalar>(&self) -> EnsembleParams<U> {
        self.map(U::from_rational)
    }
}

/// Exact value of a literal such as `3`, `-1/4`, `0.125` or `1e-8`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Domain(format!("not a number: {s:?}"));
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let q = parse_rational(q)?;
        if q.is_zero() {
            return Err(Error::Domain(format!("zero denominator in {s:?}")));
        }
        return Ok(parse_rational(p)? / q);
    }
    let (mant, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (neg, mant) = match mant.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mant.strip_prefix('+').unwrap_or(mant)),
    };
    let (int, frac) = mant.split_once('.').unwrap_or((mant, ""));
    if int.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !int.chars().chain(frac.chars()).all(|ch| ch.is_ascii_digit()) {
        return Err(bad());
    }
    let digits: BigInt = format!("{int}{frac}").parse().map_err(|_| bad())?;
    let shift = exp - frac.len() as i32;
    let ten = BigRational::from_integer(BigInt::from(10));
    let mut v = BigRational::from_integer(digits);
    let p = num_traits::pow(ten, shift.unsigned_abs() as usize);
    if shift >= 0 {
        v *= p;
    } else {
        v /= p;
    }
    Ok(if neg { -v } else { v })
}

/// The default verification grid: n ∈ {1..4}, α ∈ {0, 1/2, 1, 2},
/// (a, t, T) ∈ {(2, 1/2, 1), (1, 1/4, 1), (5, 1/2, 1)}.
pub fn default_grid() -> Vec<EnsembleParams<BigRational>> {
    let mut out = Vec::new();
    for n in 1..=4 {
        for alpha in ["0", "1/2", "1", "2"] {
            for (a, t, big_t) in [("2", "1/2", "1"), ("1", "1/4", "1"), ("5", "1/2", "1")] {
                let r = |s: &str| parse_rational(s).expect("grid literal");
                out.push(derive_params(n, r(alpha), r(a), r(t), r(big_t)).expect("grid point is admissible"));
            }
        }
    }
    out
}

/// Grid points with distinct (α, a, t, T), taking n = 1.
pub fn default_shapes() -> Vec<EnsembleParams<BigRational>> {
    default_grid().into_iter().filter(|p| p.n == 1).collect()
}
