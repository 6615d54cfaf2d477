//! Spectral moments m_k = E[Σ xᵢ^k] and the integrals I_{s,t}(k) = ∫ x^k Q_s P_t.
//!
//! Three independent routes:
//! * the exact functional ∫ x^j Q_s = β^{s−j} C(j,s) (s+α+1)_{j−s} ₁F₁(s−j; s+α+1; −1/c),
//!   which makes every I_{s,t}(k) with integer k ≥ 0 a rational function of (α, β, c);
//! * the recurrence in k and n with coefficients d₁…d₇ (production path);
//! * quadrature of x^k K(x,x).

use std::collections::HashMap;

use num_rational::BigRational;

use crate::coeffs::{self, Vars};
use crate::dual::Dual;
use crate::error::{Error, Result};
use crate::kernel::KernelContext;
use crate::laurent::{with_order, Laurent, LaurentError};
use crate::mop::typeii_poly;
use crate::params::{beta_of, c_of, EnsembleParams};
use crate::quadrature::{integrate_halfline, QuadOptions, QuadratureResult};
use crate::scalar::{Real, Scalar};
use crate::specfun::{binomial, hyp1f1, hyp1f1_terminating, pochhammer};

/// m₀ = n, m₁ = (cn(α+n)+n)/(βc), m₂ = (cn(α+2n)(c(α+n)+2)+n)/(β²c²).
pub fn moment_closed<S: Scalar>(k: usize, p: &EnsembleParams<S>) -> Result<S> {
    let (a, b, c, n) = (p.alpha.clone(), p.beta.clone(), p.c.clone(), p.nn());
    match k {
        0 => Ok(n),
        1 => Ok((c.clone() * n.clone() * (a + n.clone()) + n) / (b * c)),
        2 => Ok((c.clone() * n.clone() * (a.clone() + S::from_i64(2) * n.clone()) * (c.clone() * (a + n.clone()) + S::from_i64(2))
            + n)
            / (b.sq() * c.sq())),
        _ => Err(Error::Unsupported(format!("no closed form for m_{k}"))),
    }
}

/// ∫₀^∞ x^j Q_s(x) dx for integer j ≥ 0 (zero when j < s).
pub fn q_moment_exact<S: Scalar>(j: usize, s: usize, p: &EnsembleParams<S>) -> Result<S> {
    if j < s {
        return Ok(S::zero());
    }
    let b = p.alpha.clone() + S::from_usize(s + 1);
    let f = hyp1f1_terminating(j - s, &b, &-p.c.recip())?;
    Ok(p.beta.powi(s as i64 - j as i64) * binomial(&S::from_usize(j), s) * pochhammer(&b, j - s) * f)
}

/// I_{s,t}(k) for integer k ≥ 0 through the exact functional.
pub fn ist_exact<S: Scalar>(s: usize, t: usize, k: usize, p: &EnsembleParams<S>) -> Result<S> {
    let pt = typeii_poly(t, p);
    let mut acc = S::zero();
    for (l, coef) in pt.coeffs().iter().enumerate() {
        if !coef.is_zero() {
            acc = acc + coef.clone() * q_moment_exact(k + l, s, p)?;
        }
    }
    Ok(acc)
}

/// m_k = Σ_{j<n} I_{j,j}(k).
pub fn moment_exact<S: Scalar>(k: usize, p: &EnsembleParams<S>) -> Result<S> {
    let mut acc = S::zero();
    for j in 0..p.n {
        acc = acc + ist_exact(j, j, k, p)?;
    }
    Ok(acc)
}

/// Parameters as duals in T, for derivatives along the horizon.
pub fn params_in_t<S: Scalar>(p: &EnsembleParams<S>) -> Result<EnsembleParams<Dual<S>>> {
    let h = p.horizon()?;
    let t = Dual::constant(h.t.clone());
    let big_t = Dual::variable(h.big_t.clone());
    let a = Dual::constant(h.a.clone());
    Ok(EnsembleParams {
        n: p.n,
        alpha: Dual::constant(p.alpha.clone()),
        beta: beta_of(&t, &big_t),
        c: c_of(&a, &t, &big_t),
        horizon: None,
    })
}

/// dm_k/dT, differentiating the exact functional.
pub fn moment_dt<S: Scalar>(k: usize, p: &EnsembleParams<S>) -> Result<S> {
    Ok(moment_exact(k, &params_in_t(p)?)?.d)
}

/// 2(t−T)² dm_k/dT.
pub fn ist_dbi<S: Scalar>(k: usize, p: &EnsembleParams<S>) -> Result<S> {
    let h = p.horizon()?;
    Ok(S::from_i64(2) * (h.t.clone() - h.big_t.clone()).sq() * moment_dt(k, p)?)
}

/// κ(R_k, R) = I_{n−1,n}(k).
pub fn covariance_r<S: Scalar>(k: usize, p: &EnsembleParams<S>) -> Result<S> {
    ist_exact(p.n - 1, p.n, k, p)
}

/// Memo of m_k at n + shift, filled by the recurrence in k and n:
///
/// d₁ m_k = (1/β)(d₄ m⁻¹_{k−1} − d₃ m_{k−1} − (d₂/2) m⁺¹_{k−1}) + ((k−1)/β²)(d₇ m_{k−2} + d₆ m⁺¹_{k−2} + d₅ m⁺²_{k−2}),
///
/// with every dᵢ evaluated at the shifted n. Where d₁ vanishes the whole fill
/// is redone at α+ε in Laurent series and the ε⁰ coefficient is kept.
///
/// Floating parameters are binary rationals; the table then runs over their
/// exact values and rounds each entry once, since a vanishing d₁ cannot be
/// recognised after rounding.
#[derive(Clone, Debug)]
pub struct MomentTable<S> {
    pub params: EnsembleParams<S>,
    map: HashMap<(usize, i64), S>,
    /// Nodes (k, n+shift) where d₁ = 0 forced the Laurent route.
    pub degenerate: Vec<(usize, i64)>,
    exact: Option<Box<MomentTable<BigRational>>>,
}

struct Singular(usize, i64);

fn r2_node<T: Scalar>(
    k: usize,
    shift: i64,
    p: &EnsembleParams<T>,
    memo: &mut HashMap<(usize, i64), T>,
) -> std::result::Result<T, Singular> {
    let nn = p.n as i64 + shift;
    if nn <= 0 {
        return Ok(T::zero());
    }
    if k == 0 {
        return Ok(T::from_i64(nn));
    }
    if let Some(v) = memo.get(&(k, shift)) {
        return Ok(v.clone());
    }
    let v = Vars::new(T::from_usize(k), T::from_i64(nn), p.alpha.clone(), p.c.clone(), p.beta.clone());
    let d: Vec<T> = (1..=7).map(|i| coeffs::d(i, &v)).collect();
    if d[0].is_zero() {
        return Err(Singular(k, nn));
    }
    let b = p.beta.clone();
    let mut rhs = (d[3].clone() * r2_node(k - 1, shift - 1, p, memo)?
        - d[2].clone() * r2_node(k - 1, shift, p, memo)?
        - d[1].clone() / T::from_i64(2) * r2_node(k - 1, shift + 1, p, memo)?)
        / b.clone();
    if k >= 2 {
        rhs = rhs
            + T::from_usize(k - 1) / b.sq()
                * (d[6].clone() * r2_node(k - 2, shift, p, memo)?
                    + d[5].clone() * r2_node(k - 2, shift + 1, p, memo)?
                    + d[4].clone() * r2_node(k - 2, shift + 2, p, memo)?);
    }
    let m = rhs / d[0].clone();
    memo.insert((k, shift), m.clone());
    Ok(m)
}

impl<S: Scalar> MomentTable<S> {
    pub fn new(params: EnsembleParams<S>) -> Self {
        let exact = if S::is_exact() {
            None
        } else {
            match (params.alpha.to_rational(), params.beta.to_rational(), params.c.to_rational()) {
                (Some(alpha), Some(beta), Some(c)) => Some(Box::new(MomentTable::new(EnsembleParams {
                    n: params.n,
                    alpha,
                    beta,
                    c,
                    horizon: None,
                }))),
                _ => None,
            }
        };
        MomentTable { params, map: HashMap::new(), degenerate: Vec::new(), exact }
    }

    /// m_k at n + shift.
    pub fn get(&mut self, k: usize, shift: i64) -> Result<S> {
        if let Some(ex) = self.exact.as_mut() {
            let v = ex.get(k, shift)?;
            self.degenerate.clone_from(&ex.degenerate);
            return Ok(S::from_rational(&v));
        }
        match r2_node(k, shift, &self.params, &mut self.map) {
            Ok(v) => Ok(v),
            Err(Singular(k0, n0)) => {
                self.degenerate.push((k0, n0));
                let pe = EnsembleParams {
                    n: self.params.n,
                    alpha: Laurent::perturbed(self.params.alpha.clone()),
                    beta: Laurent::constant(self.params.beta.clone()),
                    c: Laurent::constant(self.params.c.clone()),
                    horizon: None,
                };
                // short series first; more terms only if truncation reached ε⁰
                for terms in [4, 8, 16, 32, 64] {
                    let mut memo = HashMap::new();
                    let v = with_order(terms, || r2_node(k, shift, &pe, &mut memo))
                        .map_err(|Singular(k, n)| Error::Degenerate { k, n })?;
                    match v.at_zero() {
                        Ok(x) => {
                            for ((kk, ss), val) in memo {
                                if let Ok(y) = val.at_zero() {
                                    self.map.entry((kk, ss)).or_insert(y);
                                }
                            }
                            return Ok(x);
                        }
                        Err(LaurentError::Truncated) => continue,
                        Err(LaurentError::Pole(_)) => break,
                    }
                }
                Err(Error::Degenerate { k: k0, n: n0 })
            }
        }
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}

/// m_k through the recurrence, filling `table`.
pub fn moment_recurrence_r2<S: Scalar>(k: usize, table: &mut MomentTable<S>) -> Result<S> {
    table.get(k, 0)
}

fn kernel_opts<S: Real>(p: &EnsembleParams<S>, extra: S, tol: &S) -> QuadOptions<S> {
    QuadOptions::new(p.alpha.clone() + extra, p.beta.clone(), tol.clone())
}

/// ∫₀^∞ x^k K(x,x) dx.
pub fn moment_quadrature<S: Real>(k: &S, p: &EnsembleParams<S>, tol: &S) -> Result<QuadratureResult<S>> {
    if !(k.clone() + p.alpha.clone() > -S::one()) {
        return Err(Error::Domain(format!("x^{k} K(x,x) is not integrable at the origin")));
    }
    let ctx = KernelContext::new(p.clone());
    integrate_halfline(|x| Ok(x.powf(k) * ctx.kernel_sum(x, x)?), &kernel_opts(p, k.clone(), tol))
}

/// I_{s,t}(k) by quadrature.
pub fn ist_quadrature<S: Real>(s: usize, t: usize, k: &S, p: &EnsembleParams<S>, tol: &S) -> Result<IstValue<S>> {
    let ctx = KernelContext::with_degree(p.clone(), s.max(t));
    let r = integrate_halfline(|x| Ok(x.powf(k) * ctx.q(s, x)? * ctx.p(t, x)), &kernel_opts(p, k.clone(), tol))?;
    Ok(IstValue { s, t, k: k.clone(), value: r.value, error_bound: r.error_bound })
}

#[derive(Clone, Debug)]
pub struct IstValue<S> {
    pub s: usize,
    pub t: usize,
    pub k: S,
    pub value: S,
    pub error_bound: S,
}

/// m₋₁ = −nβ/(αc(α+n)) ₁F₁(n+1; n+α+1; −1/c) ₁F₁(1−n; 1−n−α; 1/c)
///       + β(α+n)/α ₁F₁(−n; −n−α; 1/c) ₁F₁(n; n+α; −1/c) − β.
pub fn inverse_moment<S: Real>(p: &EnsembleParams<S>) -> Result<S> {
    let (a, b, c, n) = (p.alpha.clone(), p.beta.clone(), p.c.clone(), p.nn());
    if a.is_zero() {
        return Err(Error::Unsupported("the inverse moment formula has a 1/alpha factor; alpha = 0 is excluded".into()));
    }
    let z = c.recip();
    let one = S::one();
    let t1 = -(n.clone() * b.clone()) / (a.clone() * c * (a.clone() + n.clone()))
        * hyp1f1(&(n.clone() + one.clone()), &(n.clone() + a.clone() + one.clone()), &-z.clone())?
        * hyp1f1(&(one.clone() - n.clone()), &(one - n.clone() - a.clone()), &z)?;
    let t2 = b.clone() * (a.clone() + n.clone()) / a.clone()
        * hyp1f1(&-n.clone(), &-(n.clone() + a.clone()), &z)?
        * hyp1f1(&n, &(p.nn() + a), &-z)?;
    Ok(t1 + t2 - b)
}

/// A linear relation Σ coef · I_{s,t}(k) = 0.
#[derive(Clone, Debug)]
pub struct Term<S> {
    pub coef: S,
    pub s: usize,
    pub t: usize,
    pub k: usize,
}

/// Residual of a relation together with Σ|terms| for relative comparisons.
#[derive(Clone, Debug)]
pub struct Residual<S> {
    pub value: S,
    pub scale: S,
}

impl<S: Real> Residual<S> {
    pub fn relative(&self) -> S {
        if self.scale.is_zero() {
            self.value.abs()
        } else {
            self.value.abs() / self.scale.clone()
        }
    }
}

/// Value of a relation for rational or floating data; the scale uses `abs`.
pub fn evaluate_relation<S: Scalar>(
    terms: &[Term<S>],
    ist: &mut impl FnMut(usize, usize, usize) -> Result<S>,
    abs: impl Fn(&S) -> S,
) -> Result<Residual<S>> {
    let mut value = S::zero();
    let mut scale = S::zero();
    for tm in terms {
        let x = tm.coef.clone() * ist(tm.s, tm.t, tm.k)?;
        scale = scale + abs(&x);
        value = value + x;
    }
    Ok(Residual { value, scale })
}

/// The eight relations among I_{s,t}(k−1), I_{s,t}(k) for s, t ∈ {n−1, n, n+1}, as printed.
pub fn appendix_a2_relations<S: Scalar>(k: usize, p: &EnsembleParams<S>) -> Result<Vec<Vec<Term<S>>>> {
    if k == 0 || p.n == 0 {
        return Err(Error::Domain("relations need k >= 1 and n >= 1".into()));
    }
    let n = p.n;
    let (nm, n0, np) = (n - 1, n, n + 1);
    let (a, b, c) = (p.alpha.clone(), p.beta.clone(), p.c.clone());
    let nn = p.nn();
    let kk = S::from_usize(k);
    let one = S::one();
    let i = |x: i64| S::from_i64(x);
    let (k1, k0) = (k - 1, k);
    let t = |coef: S, s: usize, tt: usize, k: usize| Term { coef, s, t: tt, k };
    let b2 = b.sq();
    let b3 = b2.clone() * b.clone();
    let np1 = nn.clone() + one.clone();

    let r1 = vec![
        t(nn.clone() * (-one.clone() + c.clone() * (nn.clone() - kk.clone())) * b.clone(), nm, nm, k1),
        t(-(c.clone() * nn.clone() * b2.clone()), nm, nm, k0),
        t(-((one.clone() + c.clone() + c.clone() * a.clone()) * b2.clone()), nm, n0, k1),
        t(nn.sq() * (one.clone() + c.clone() * (nn.clone() + a.clone())), nm, n0, k1),
        t(c.clone() * b3.clone(), nm, n0, k0),
        t(nn.clone() * (one.clone() + c.clone() * (one.clone() + i(2) * nn.clone() + a.clone())) * b.clone(), n0, n0, k1),
        t(-(c.clone() * nn.clone() * b2.clone()), n0, n0, k0),
        t(-(c.clone() * b3.clone()), np, nm, k1),
        t(c.clone() * nn.clone() * b2.clone(), np, nm, k0),
    ];
    let r2 = vec![
        t(nn.clone() * b.clone(), nm, nm, k1),
        t((one.clone() + c.clone() * (one.clone() - kk.clone() + i(2) * nn.clone() + a.clone())) * b2.clone(), nm, n0, k1),
        t(-(c.clone() * b3.clone()), nm, n0, k0),
        t(nn.clone() * (one.clone() + c.clone() * (nn.clone() + a.clone())) * b.clone(), n0, n0, k1),
        t(nn.clone() * np1.clone(), n0, np, k1),
        t(c.clone() * b3.clone(), np, nm, k1),
    ];
    let r3 = vec![
        t(nn.clone() * np1.clone(), nm, nm, k1),
        t(np1.clone() * (one.clone() + c.clone() * (np1.clone() + a.clone())) * b.clone(), nm, n0, k1),
        t(c.clone() * (one.clone() + kk.clone()) * b2.clone(), np, nm, k1),
        t(-(nn.clone() * (one.clone() + c.clone() * (nn.clone() + a.clone())) * b.clone()), np, n0, k1),
        t(-(nn.clone() * np1.clone()), np, np, k1),
    ];
    let r4 = vec![
        t(c.clone() * nn.clone() * b.clone(), nm, nm, k1),
        t(c.clone() * b2.clone(), nm, n0, k1),
        t(nn.clone() * (i(2) + c.clone() * (kk.clone() + nn.clone() + a.clone())), nm, n0, k1),
        t((i(2) + c.clone() * (i(2) + i(3) * nn.clone() + i(2) * a.clone())) * b.clone(), n0, n0, k1),
        t(-(i(2) * c.clone() * b2.clone()), n0, n0, k0),
        t(i(2) * c.clone() * b2.clone(), np, n0, k1),
    ];
    let r5 = vec![
        t(c.clone() * (kk.clone() - one.clone()) * b.clone(), n0, n0, k1),
        t(c.clone() * b2.clone(), nm, n0, k1),
        t(-nn.clone(), nm, n0, k1),
        t(np1.clone(), n0, np, k1),
        t(-(c.clone() * b2.clone()), np, n0, k1),
    ];
    let r6 = vec![
        t(nn.clone() * np1.clone(), nm, n0, k1),
        t(np1.clone() * (one.clone() + c.clone() * (np1.clone() + a.clone())) * b.clone(), n0, n0, k1),
        t(c.clone() * b3.clone(), np, nm, k1),
        t((one.clone() + c.clone() * (one.clone() + kk.clone() + i(2) * nn.clone() + a.clone())) * b2.clone(), np, n0, k1),
        t(-(c.clone() * b3.clone()), np, n0, k0),
        t(np1.clone() * b.clone(), np, np, k1),
    ];
    let r7 = vec![
        t(-((i(2) + c.clone() + i(3) * c.clone() * nn.clone() + i(2) * c.clone() * a.clone()) * b.clone()), n0, n0, k1),
        t(i(2) * c.clone() * b2.clone(), n0, n0, k0),
        t(-(i(2) * c.clone() * b2.clone()), nm, n0, k1),
        t(-(c.clone() * b2.clone()), np, n0, k1),
        t(-(np1.clone() * (i(2) + c.clone() * (one.clone() - kk.clone() + nn.clone() + a.clone()))), n0, np, k1),
        t(-(c.clone() * np1.clone() * b.clone()), np, np, k1),
    ];
    let r8 = vec![
        t(-(c.clone() * b2.clone()), nm, n0, k1),
        t(-((one.clone() + c.clone() * (one.clone() + i(2) * nn.clone() + a.clone())) * b.clone()), n0, n0, k1),
        t(c.clone() * b2.clone(), n0, n0, k0),
        t(-(np1.clone() * (one.clone() + c.clone() * (np1.clone() + a.clone()))), n0, np, k1),
        t(c.clone() * b3.clone() / np1.clone(), np, nm, k1),
        t((one.clone() + c.clone() * (a.clone() - one.clone())) * b2.clone() / np1.clone(), np, n0, k1),
        t(-(c.clone() * b3.clone() / np1.clone()), np, n0, k0),
        t((one.clone() - c.clone() * (one.clone() + kk.clone() + nn.clone())) * b.clone(), np, np, k1),
        t(c.clone() * b2.clone(), np, np, k0),
    ];
    Ok(vec![r1, r2, r3, r4, r5, r6, r7, r8])
}

/// Residuals of the eight relations with exact I-values.
pub fn appendix_a2_residuals<S: Scalar>(
    k: usize,
    p: &EnsembleParams<S>,
    abs: impl Fn(&S) -> S + Copy,
) -> Result<Vec<Residual<S>>> {
    let rels = appendix_a2_relations(k, p)?;
    let mut cache: HashMap<(usize, usize, usize), S> = HashMap::new();
    let mut ist = |s: usize, t: usize, k: usize| -> Result<S> {
        if let Some(v) = cache.get(&(s, t, k)) {
            return Ok(v.clone());
        }
        let v = ist_exact(s, t, k, p)?;
        cache.insert((s, t, k), v.clone());
        Ok(v)
    };
    rels.iter().map(|r| evaluate_relation(r, &mut ist, abs)).collect()
}

fn vars<S: Scalar>(k: usize, p: &EnsembleParams<S>) -> Vars<S> {
    let v = Vars::new(S::from_usize(k), p.nn(), p.alpha.clone(), p.c.clone(), p.beta.clone());
    match &p.horizon {
        Some(h) => v.with_times(h.t.clone(), h.big_t.clone()),
        None => v,
    }
}

/// k m_k − β I_{n−1,n}(k) + n/(βc) I_{n,n−1}(k), then the two relations carrying b₆…b₁₇.
pub fn tk_residuals<S: Scalar>(k: usize, p: &EnsembleParams<S>, abs: impl Fn(&S) -> S + Copy) -> Result<Vec<Residual<S>>> {
    if k < 2 {
        return Err(Error::Domain("the b6 relation reaches I(k-2); need k >= 2".into()));
    }
    let n = p.n;
    let v = vars(k, p);
    let bb = |i: usize| coeffs::b(i, &v);
    let (lo, hi) = (n - 1, n);
    let mut ist = |s: usize, t: usize, k: usize| ist_exact(s, t, k, p);
    let (b, c, nn) = (p.beta.clone(), p.c.clone(), p.nn());
    let m = moment_exact(k, p)?;
    let i_lo = ist_exact(lo, hi, k, p)?;
    let i_hi = ist_exact(hi, lo, k, p)?;
    let parts = [S::from_usize(k) * m, -(b.clone() * i_lo), nn / (b * c) * i_hi];
    let tk1 = Residual {
        value: parts.iter().cloned().fold(S::zero(), |a, x| a + x),
        scale: parts.iter().fold(S::zero(), |a, x| a + abs(x)),
    };
    let t = |coef: S, s: usize, tt: usize, k: usize| Term { coef, s, t: tt, k };
    let tk2 = vec![
        t(bb(6)?, lo, hi, k - 2),
        t(bb(7)?, lo, hi, k - 1),
        t(bb(8)?, lo, hi, k),
        t(bb(9)?, lo, hi, k + 1),
        t(bb(10)?, hi, lo, k - 1),
        t(bb(11)?, hi, lo, k),
    ];
    let tk3 = vec![
        t(bb(12)?, lo, hi, k - 1),
        t(bb(13)?, lo, hi, k),
        t(bb(14)?, lo, hi, k + 1),
        t(bb(15)?, hi, lo, k - 1),
        t(bb(16)?, hi, lo, k),
        t(bb(17)?, hi, lo, k + 1),
    ];
    Ok(vec![tk1, evaluate_relation(&tk2, &mut ist, abs)?, evaluate_relation(&tk3, &mut ist, abs)?])
}

fn r1_parts<S: Scalar>(k: usize, p: &EnsembleParams<S>, printed: bool) -> Result<Vec<S>> {
    let v = vars(k, p);
    let b = |i: usize| coeffs::b(i, &v);
    let kk = S::from_usize(k);
    let m = |j: usize| moment_exact(j, p);
    let dm = |j: usize| moment_dt(j, p);
    let lhs = b(3)? * (kk.clone() + S::from_i64(4)) * (S::from_i64(2) * kk.clone() + S::from_i64(7)) * m(k + 3)?;
    let m0 = b(0)? * kk.clone() * (kk.clone() + S::one() - p.alpha.clone()) * (kk.clone() + S::one() + p.alpha.clone()) * m(k)?;
    let k1 = kk + S::one();
    Ok(if printed {
        vec![lhs, -(b(2)? * m(k + 2)?), -(b(1)? * m(k + 1)?), -m0, -(b(4)? * dm(k + 2)?), -(b(5)? / k1 * dm(k + 1)?)]
    } else {
        vec![lhs, b(2)? * m(k + 2)?, -(b(1)? * m(k + 1)?), m0, -(b(5)? * dm(k + 2)?), b(4)? / k1 * dm(k + 1)?]
    })
}

/// Residual of the compact recurrence with T-derivatives, in the form that holds:
/// b₃(k+4)(2k+7) m_{k+3} = −b₂ m_{k+2} + b₁ m_{k+1} − b₀ k(k+1−α)(k+1+α) m_k + b₅ dm_{k+2}/dT − (b₄/(k+1)) dm_{k+1}/dT.
pub fn recurrence_r1_residual<S: Scalar>(k: usize, p: &EnsembleParams<S>, abs: impl Fn(&S) -> S) -> Result<Residual<S>> {
    let parts = r1_parts(k, p, false)?;
    Ok(Residual {
        value: parts.iter().cloned().fold(S::zero(), |a, x| a + x),
        scale: parts.iter().fold(S::zero(), |a, x| a + abs(x)),
    })
}

/// Same recurrence with the signs and b₄/b₅ placement exactly as typeset; reported for comparison.
pub fn recurrence_r1_printed_residual<S: Scalar>(
    k: usize,
    p: &EnsembleParams<S>,
    abs: impl Fn(&S) -> S,
) -> Result<Residual<S>> {
    let parts = r1_parts(k, p, true)?;
    Ok(Residual {
        value: parts.iter().cloned().fold(S::zero(), |a, x| a + x),
        scale: parts.iter().fold(S::zero(), |a, x| a + abs(x)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;
    use crate::params::default_grid;
    use crate::{parse_rational, Rational};

    fn rp(n: usize, alpha: &str, beta: &str, c: &str) -> EnsembleParams<Rational> {
        let r = |s: &str| parse_rational(s).unwrap();
        EnsembleParams::from_beta_c(n, r(alpha), r(beta), r(c)).unwrap()
    }

    #[test]
    fn closed_examples() {
        assert_eq!(moment_closed(0, &rp(5, "0", "1", "1")).unwrap(), Rational::from_i64(5));
        assert_eq!(moment_closed(1, &rp(2, "1", "1", "1")).unwrap(), Rational::from_i64(8));
        assert_eq!(moment_closed(2, &rp(1, "0", "1", "1")).unwrap(), Rational::from_i64(7));
        assert!(moment_closed(3, &rp(1, "0", "1", "1")).is_err());
    }

    #[test]
    fn functional_reproduces_closed_forms() {
        for p in default_grid() {
            for k in 0..=2 {
                assert_eq!(moment_exact(k, &p).unwrap(), moment_closed(k, &p).unwrap());
            }
            for i in 0..4 {
                for j in 0..4 {
                    let v = ist_exact(j, i, 0, &p).unwrap();
                    assert_eq!(v, if i == j { Rational::from_i64(1) } else { Rational::from_i64(0) });
                }
            }
        }
    }

    #[test]
    fn recurrence_matches_functional() {
        for p in default_grid().into_iter().step_by(5) {
            let mut tab = MomentTable::new(p.clone());
            for k in 0..=5 {
                assert_eq!(tab.get(k, 0).unwrap(), moment_exact(k, &p).unwrap(), "k={k} {p:?}");
            }
        }
    }

    #[test]
    fn covariance_is_t_derivative() {
        for p in default_grid().into_iter().step_by(7) {
            for k in 0..4 {
                assert_eq!(covariance_r(k, &p).unwrap(), ist_dbi(k, &p).unwrap());
            }
        }
    }
}
