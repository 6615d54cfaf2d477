//! Adaptive integration over (0, ∞).
//!
//! x = (e^u − 1)/λ with u = exp((π/2) sinh τ), trapezoid rule in τ. Near the
//! origin x ≈ u/λ decays doubly exponentially in τ, absorbing algebraic
//! endpoint behaviour x^σ; for large x the substitution turns e^{−λx} into a
//! triple-exponential decay. The τ-range is fixed on the coarsest level and
//! the step is halved until consecutive levels agree.

use crate::error::{Error, Result};
use crate::scalar::Real;

#[derive(Clone, Debug)]
pub struct QuadratureResult<S> {
    pub value: S,
    pub error_bound: S,
    pub evaluations: usize,
}

#[derive(Clone, Debug)]
pub struct QuadOptions<S> {
    /// Exponent σ of the behaviour f(x) ~ x^σ at the origin (> −1).
    pub singularity_exponent: S,
    /// Rate λ of the e^{−λx} tail.
    pub decay_rate: S,
    /// Relative tolerance, measured against ∫|f|.
    pub tol: S,
    pub max_refine: usize,
}

impl<S: Real> QuadOptions<S> {
    pub fn new(singularity_exponent: S, decay_rate: S, tol: S) -> Self {
        QuadOptions { singularity_exponent, decay_rate, tol, max_refine: 12 }
    }
}

const H0: f64 = 0.5;

struct Node<S> {
    x: S,
    w: S,
}

/// Abscissa and Jacobian at τ; `None` once x over- or underflows.
fn node<S: Real>(tau: &S, lambda: &S) -> Option<Node<S>> {
    let half_pi = S::pi() / S::from_i64(2);
    let e = tau.exp();
    let sinh = (e.clone() - e.recip()) / S::from_i64(2);
    let cosh = (e.clone() + e.recip()) / S::from_i64(2);
    let u = (half_pi.clone() * sinh).exp();
    let x = u.exp_m1() / lambda.clone();
    let w = (u.exp() / lambda.clone()) * u.clone() * half_pi * cosh;
    if !x.is_finite() || !w.is_finite() || !(x > S::zero()) {
        return None;
    }
    Some(Node { x, w })
}

fn l1<S: Real>(v: &[S]) -> S {
    v.iter().fold(S::zero(), |a, x| a + x.abs())
}

/// Vector-valued integral; convergence is required componentwise.
pub fn integrate_halfline_vec<S: Real>(
    f: impl Fn(&S) -> Result<Vec<S>>,
    opts: &QuadOptions<S>,
) -> Result<Vec<QuadratureResult<S>>> {
    let lambda = opts.decay_rate.clone();
    let sigma1 = opts.singularity_exponent.clone() + S::one();
    if !(sigma1 > S::zero()) || !(lambda > S::zero()) {
        return Err(Error::Domain("need singularity exponent > -1 and positive decay rate".into()));
    }
    let eps = S::epsilon();
    let h0 = S::from_f64(H0);
    let mut evals = 0usize;
    let mut eval = |tau: &S| -> Result<Option<(S, S, Vec<S>)>> {
        let Some(nd) = node(tau, &lambda) else { return Ok(None) };
        evals += 1;
        let v = f(&nd.x)?;
        Ok(Some((nd.x, nd.w.clone(), v.into_iter().map(|y| y * nd.w.clone()).collect())))
    };

    // level 0 and the truncation points
    let (_, _, centre) = eval(&S::zero())?.ok_or_else(|| Error::Convergence("no valid centre node".into()))?;
    let dim = centre.len();
    let mut sum = centre.clone();
    let mut abs = centre.iter().map(|v| v.abs()).collect::<Vec<_>>();
    let mut tails = vec![S::zero(); 2];
    let mut ends = [0i64; 2];
    for (side, sgn) in [(0usize, -1i64), (1, 1)] {
        let mut k = 0i64;
        let mut quiet = 0;
        let mut last_rem = S::zero();
        loop {
            k += 1;
            let tau = h0.clone() * S::from_i64(sgn * k);
            let Some((x, w, v)) = eval(&tau)? else { break };
            if !v.iter().all(|y| y.is_finite()) {
                // overflow in a factor of an integrand that has already died out
                if quiet > 0 {
                    tails[side] = last_rem;
                    break;
                }
                return Err(Error::Convergence(format!("integrand is not finite at x = {x}")));
            }
            for i in 0..dim {
                sum[i] = sum[i].clone() + v[i].clone();
                abs[i] = abs[i].clone() + v[i].abs();
            }
            ends[side] = k;
            // remainder of the omitted range, from f ~ x^σ on the left and f ~ e^{−λx} on the right
            let fx = l1(&v) / w;
            let rem = if side == 0 { fx * x / sigma1.clone() } else { fx / lambda.clone() };
            let scale = l1(&abs) * h0.clone();
            last_rem = rem.clone();
            if rem <= eps.clone() * scale.clone() && l1(&v) * h0.clone() <= eps.clone() * scale.clone() {
                quiet += 1;
                if quiet >= 3 {
                    tails[side] = rem;
                    break;
                }
            } else {
                quiet = 0;
            }
            if k > 400 {
                return Err(Error::Convergence("integrand tail does not decay".into()));
            }
        }
    }
    let tail = tails[0].clone() + tails[1].clone();
    let mut h = h0.clone();
    let mut prev: Vec<S> = sum.iter().map(|s| s.clone() * h.clone()).collect();
    let mut l1v: Vec<S> = abs.iter().map(|s| s.clone() * h.clone()).collect();
    for level in 1..=opts.max_refine {
        h = h / S::from_i64(2);
        let mut add = vec![S::zero(); dim];
        let mut add_abs = vec![S::zero(); dim];
        // odd multiples of the new step inside the fixed range
        let lo = -2 * ends[0] * (1i64 << (level - 1)) + 1;
        let hi = 2 * ends[1] * (1i64 << (level - 1)) - 1;
        let mut j = lo;
        while j <= hi {
            if let Some((x, _, v)) = eval(&(h.clone() * S::from_i64(j)))? {
                if !v.iter().all(|y| y.is_finite()) {
                    return Err(Error::Convergence(format!("integrand is not finite at x = {x}")));
                }
                for i in 0..dim {
                    add[i] = add[i].clone() + v[i].clone();
                    add_abs[i] = add_abs[i].clone() + v[i].abs();
                }
            }
            j += 2;
        }
        let cur: Vec<S> = (0..dim).map(|i| prev[i].clone() / S::from_i64(2) + h.clone() * add[i].clone()).collect();
        l1v = (0..dim).map(|i| l1v[i].clone() / S::from_i64(2) + h.clone() * add_abs[i].clone()).collect();
        let errs: Vec<S> = (0..dim)
            .map(|i| {
                let d = (cur[i].clone() - prev[i].clone()).abs();
                let floor = eps.clone() * l1v[i].clone() * S::from_i64(4);
                d.max(floor) + tail.clone()
            })
            .collect();
        let done = (0..dim).all(|i| errs[i] <= opts.tol.clone() * l1v[i].clone() || l1v[i] <= S::tiny());
        if done {
            return Ok((0..dim)
                .map(|i| QuadratureResult { value: cur[i].clone(), error_bound: errs[i].clone(), evaluations: evals })
                .collect());
        }
        prev = cur;
    }
    Err(Error::Convergence(format!("no convergence after {} refinements", opts.max_refine)))
}

/// ∫₀^∞ f(x) dx.
pub fn integrate_halfline<S: Real>(f: impl Fn(&S) -> Result<S>, opts: &QuadOptions<S>) -> Result<QuadratureResult<S>> {
    let mut r = integrate_halfline_vec(|x| Ok(vec![f(x)?]), opts)?;
    Ok(r.remove(0))
}

/// ∫₀^∞∫₀^∞ f(x, y) dx dy by nesting the one-dimensional rule; the inner
/// integral runs at a tolerance a decade tighter than the outer one.
pub fn integrate_product_2d<S: Real>(
    f: impl Fn(&S, &S) -> Result<S>,
    x_opts: &QuadOptions<S>,
    y_opts: &QuadOptions<S>,
) -> Result<QuadratureResult<S>> {
    let mut inner_opts = y_opts.clone();
    inner_opts.tol = y_opts.tol.clone() / S::from_i64(10);
    let inner_evals = std::cell::Cell::new(0usize);
    let inner_err = std::cell::RefCell::new(S::zero());
    let outer = integrate_halfline(
        |x| {
            let r = integrate_halfline(|y| f(x, y), &inner_opts)?;
            inner_evals.set(inner_evals.get() + r.evaluations);
            let e = inner_err.borrow().clone().max(r.error_bound.clone());
            *inner_err.borrow_mut() = e;
            Ok(r.value)
        },
        x_opts,
    )?;
    Ok(QuadratureResult {
        value: outer.value,
        // the largest inner error, spread over an O(1) effective outer range
        error_bound: outer.error_bound + inner_err.into_inner() / x_opts.decay_rate.clone(),
        evaluations: inner_evals.get(),
    })
}
