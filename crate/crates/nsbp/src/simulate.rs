//! Monte Carlo samplers for the conditioned ensemble.
//!
//! Two routes: a complex matrix Brownian bridge (integer α), whose squared
//! singular values at time t are the n path positions, and independent
//! BESQ bridges sampled exactly on a grid with rejection of crossings.
//!
//! Everything here runs in f64; the statistical error dominates.

use nalgebra::{Complex, DMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, Gamma, Poisson, StandardNormal};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::params::EnsembleParams;
use crate::specfun::bessel_i_scaled;

/// Variance per unit time of each real and imaginary entry component of W.
/// With this choice |M|² for n = 1 is a squared Bessel process of index α
/// with transition kernel I_α(√(xy)/t).
pub const ENTRY_VARIANCE: f64 = 1.0;

/// Samples drawn from one RNG stream before moving to the next.
const CHUNK: usize = 256;

#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumSample {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    pub seed: u64,
    /// Index of the sample within its batch.
    pub index: usize,
    pub params: EnsembleParams<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PathEnsemble {
    pub times: Vec<f64>,
    /// trajectories[i][j]: i-th smallest position at times[j].
    pub trajectories: Vec<Vec<f64>>,
}

fn bridge_window(p: &EnsembleParams<f64>) -> Result<(f64, f64, f64)> {
    let h = p.horizon()?;
    Ok((h.a, h.t, h.big_t))
}

fn integer_alpha(p: &EnsembleParams<f64>) -> Result<usize> {
    let a = p.alpha;
    if a < 0.0 || a.fract() != 0.0 {
        return Err(Error::Unsupported(format!(
            "matrix bridge needs a non-negative integer alpha, got {a}; use sample_spectrum_sde"
        )));
    }
    Ok(a as usize)
}

/// RNG for stream `stream` of master seed `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn complex_normal<R: Rng>(rng: &mut R, var: f64) -> Complex<f64> {
    let s = var.sqrt();
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex::new(s * re, s * im)
}

fn start_matrix(n: usize, alpha: usize, a: f64) -> DMatrix<Complex<f64>> {
    let mut m = DMatrix::zeros(n + alpha, n);
    for i in 0..n {
        m[(i, i)] = Complex::new(a.sqrt(), 0.0);
    }
    m
}

/// Eigenvalues of M†M, ascending, as squared singular values.
fn gram_spectrum(m: &DMatrix<Complex<f64>>) -> Vec<f64> {
    let mut ev: Vec<f64> = m.singular_values().iter().map(|s| s * s).collect();
    ev.sort_by(|a, b| a.total_cmp(b));
    ev
}

/// One matrix-bridge sample at time t from `rng`.
pub fn sample_spectrum_with<R: Rng>(p: &EnsembleParams<f64>, rng: &mut R) -> Result<Vec<f64>> {
    let alpha = integer_alpha(p)?;
    let (a, t, big_t) = bridge_window(p)?;
    // W(t) − (t/T)W(T) is a Brownian bridge value: variance t(T−t)/T per component
    let var = ENTRY_VARIANCE * t * (big_t - t) / big_t;
    let mut m = start_matrix(p.n, alpha, a) * Complex::new(1.0 - t / big_t, 0.0);
    for z in m.iter_mut() {
        *z += complex_normal(rng, var);
    }
    Ok(gram_spectrum(&m))
}

pub fn sample_spectrum(p: &EnsembleParams<f64>, seed: u64) -> Result<SpectrumSample> {
    let mut rng = stream_rng(seed, 0);
    Ok(SpectrumSample { eigenvalues: sample_spectrum_with(p, &mut rng)?, seed, index: 0, params: p.clone() })
}

/// `count` samples in parallel. Chunk j of the batch draws from stream j,
/// so the output does not depend on the thread count.
pub fn sample_batch<F>(p: &EnsembleParams<f64>, count: usize, seed: u64, draw: F) -> Result<Vec<SpectrumSample>>
where
    F: Fn(&EnsembleParams<f64>, &mut ChaCha20Rng) -> Result<Vec<f64>> + Sync,
{
    if count == 0 {
        return Err(Error::Domain("sample count must be positive".into()));
    }
    let chunks: Vec<Result<Vec<SpectrumSample>>> = (0..count.div_ceil(CHUNK))
        .into_par_iter()
        .map(|j| {
            let mut rng = stream_rng(seed, j as u64);
            (j * CHUNK..((j + 1) * CHUNK).min(count))
                .map(|index| {
                    Ok(SpectrumSample { eigenvalues: draw(p, &mut rng)?, seed, index, params: p.clone() })
                })
                .collect()
        })
        .collect();
    let mut out = Vec::with_capacity(count);
    for c in chunks {
        out.extend(c?);
    }
    Ok(out)
}

pub fn sample_spectra(p: &EnsembleParams<f64>, count: usize, seed: u64) -> Result<Vec<SpectrumSample>> {
    integer_alpha(p)?;
    sample_batch(p, count, seed, |p, rng| sample_spectrum_with(p, rng))
}

/// Eigenvalue trajectories of one matrix bridge on `n_times` equispaced
/// times in [0, T].
pub fn sample_paths(p: &EnsembleParams<f64>, n_times: usize, seed: u64) -> Result<PathEnsemble> {
    let alpha = integer_alpha(p)?;
    let (a, _, big_t) = bridge_window(p)?;
    if n_times < 2 {
        return Err(Error::Domain("path grid needs at least 2 points".into()));
    }
    let mut rng = stream_rng(seed, 0);
    let times: Vec<f64> = (0..n_times).map(|j| big_t * j as f64 / (n_times - 1) as f64).collect();
    let (rows, cols) = (p.n + alpha, p.n);
    // W on the grid, then the bridge correction with W(T)
    let mut w = vec![DMatrix::<Complex<f64>>::zeros(rows, cols)];
    for j in 1..n_times {
        let dt = times[j] - times[j - 1];
        let mut next = w[j - 1].clone();
        for z in next.iter_mut() {
            *z += complex_normal(&mut rng, ENTRY_VARIANCE * dt);
        }
        w.push(next);
    }
    let m0 = start_matrix(p.n, alpha, a);
    let w_end = w[n_times - 1].clone();
    let mut trajectories = vec![Vec::with_capacity(n_times); p.n];
    for (j, s) in times.iter().enumerate() {
        let r = s / big_t;
        let m = if j == n_times - 1 {
            DMatrix::zeros(rows, cols)
        } else {
            &m0 * Complex::new(1.0 - r, 0.0) + &w[j] - &w_end * Complex::new(r, 0.0)
        };
        for (i, v) in gram_spectrum(&m).into_iter().enumerate() {
            trajectories[i].push(v);
        }
    }
    Ok(PathEnsemble { times, trajectories })
}

/// Δ · χ'²_δ(y/Δ): one exact BESQ^δ step of length Δ from y.
fn besq_step<R: Rng>(rng: &mut R, delta: f64, y: f64, dt: f64) -> f64 {
    let lam = y / dt;
    let extra = if lam > 0.0 { Poisson::new(lam / 2.0).expect("positive rate").sample(rng) } else { 0.0 };
    let g = Gamma::new(delta / 2.0 + extra, 2.0).expect("positive shape");
    dt * g.sample(rng)
}

/// Whether paths i < k, ordered at both ends of a step, met in between.
///
/// Locally y_k − y_i diffuses like Brownian motion with variance
/// 4(y_i + y_k) per unit time, and a Brownian bridge between gaps g₀, g₁ > 0
/// touches zero with probability exp(−2g₀g₁/(σ²Δ)).
fn crossed_between<R: Rng>(rng: &mut R, prev: &[f64], y: &[f64], i: usize, k: usize, dt: f64) -> bool {
    let (g0, g1) = (prev[k] - prev[i], y[k] - y[i]);
    let var = 2.0 * (prev[i] + prev[k] + y[i] + y[k]) * dt;
    rng.random::<f64>() < (-2.0 * g0 * g1 / var).exp()
}

/// Settings of the bridge-and-reject sampler.
#[derive(Clone, Debug)]
pub struct SdeOptions {
    /// Equispaced check times in (0, T), t added.
    pub grid: usize,
    pub max_tries: usize,
}

impl Default for SdeOptions {
    fn default() -> Self {
        SdeOptions { grid: 100, max_tries: 200_000 }
    }
}

/// One sample from independent BESQ bridges a → 0, conditioned on keeping
/// their order at every check time after the first.
///
/// A BESQ bridge to 0 is X(s) = (1 − s/T)² Y(sT/(T − s)) with Y a free BESQ
/// from a, so each path is sampled exactly at the check times. Meetings
/// between check times are rejected with the Brownian-bridge crossing
/// probability; the frozen diffusion coefficient and the order taken at the
/// first check time leave a grid bias.
pub fn sample_spectrum_sde_with<R: Rng>(p: &EnsembleParams<f64>, rng: &mut R, o: &SdeOptions) -> Result<Vec<f64>> {
    let (a, t, big_t) = bridge_window(p)?;
    if o.grid < 2 {
        return Err(Error::Domain("check grid needs at least 2 points".into()));
    }
    let delta = 2.0 * (p.alpha + 1.0);
    let mut times: Vec<f64> = (1..o.grid).map(|j| big_t * j as f64 / o.grid as f64).collect();
    times.push(t);
    times.sort_by(|x, y| x.total_cmp(y));
    times.dedup();
    let at_t = times.iter().position(|s| *s == t).expect("t is on the grid");
    let tau: Vec<f64> = times.iter().map(|s| s * big_t / (big_t - s)).collect();
    let n = p.n;
    let mut y = vec![0.0; n];
    let mut prev = vec![0.0; n];
    let mut order: Vec<usize> = (0..n).collect();
    for _ in 0..o.max_tries {
        y.iter_mut().for_each(|v| *v = a);
        let mut prev_tau = 0.0;
        let mut ok = true;
        let mut sample = Vec::new();
        for (j, (s, tj)) in times.iter().zip(&tau).enumerate() {
            let dt = tj - prev_tau;
            prev.copy_from_slice(&y);
            for v in y.iter_mut() {
                *v = besq_step(rng, delta, *v, dt);
            }
            prev_tau = *tj;
            // the common factor (1 − s/T)² does not change the order
            if j == 0 {
                order.sort_by(|&i, &k| y[i].total_cmp(&y[k]));
            } else if order.windows(2).any(|w| y[w[0]] >= y[w[1]] || crossed_between(rng, &prev, &y, w[0], w[1], dt)) {
                ok = false;
                break;
            }
            if j == at_t {
                let f = (1.0 - s / big_t).powi(2);
                sample = order.iter().map(|&i| f * y[i]).collect();
            }
        }
        if ok {
            return Ok(sample);
        }
    }
    Err(Error::Sampler(format!(
        "no ordered configuration in {} tries (n={n}, alpha={}, grid={}); acceptance rate below {:.1e}",
        o.max_tries,
        p.alpha,
        o.grid,
        1.0 / o.max_tries as f64
    )))
}

pub fn sample_spectrum_sde(p: &EnsembleParams<f64>, seed: u64) -> Result<SpectrumSample> {
    let mut rng = stream_rng(seed, 0);
    let eigenvalues = sample_spectrum_sde_with(p, &mut rng, &SdeOptions::default())?;
    Ok(SpectrumSample { eigenvalues, seed, index: 0, params: p.clone() })
}

pub fn sample_spectra_sde(p: &EnsembleParams<f64>, count: usize, seed: u64, o: &SdeOptions) -> Result<Vec<SpectrumSample>> {
    sample_batch(p, count, seed, |p, rng| sample_spectrum_sde_with(p, rng, o))
}

/// BESQ transition density (1/2τ)(y/x)^{α/2} e^{−(x+y)/2τ} I_α(√(xy)/τ).
pub fn besq_density(alpha: f64, tau: f64, x: f64, y: f64) -> Result<f64> {
    if x == 0.0 {
        return Ok((-y / (2.0 * tau)).exp() * y.powf(alpha) / ((2.0 * tau).powf(alpha + 1.0) * crate::specfun::gamma_fn(&(alpha + 1.0))?));
    }
    let z = (x * y).sqrt() / tau;
    let log = (alpha / 2.0) * (y / x).ln() - (x + y) / (2.0 * tau) + z;
    Ok(log.exp() * bessel_i_scaled(&alpha, &z)? / (2.0 * tau))
}

/// Density at time t of a single BESQ bridge from a to 0 over [0, T].
pub fn besq_bridge_density(alpha: f64, a: f64, t: f64, big_t: f64, y: f64) -> Result<f64> {
    let g = (big_t / (big_t - t)).powf(alpha + 1.0) * (a / (2.0 * big_t) - y / (2.0 * (big_t - t))).exp();
    Ok(besq_density(alpha, t, a, y)? * g)
}

/// Mean and standard error.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Estimate {
    pub mean: f64,
    pub se: f64,
}

impl Estimate {
    fn of(v: &[f64]) -> Estimate {
        let n = v.len() as f64;
        let mean = v.iter().sum::<f64>() / n;
        let var = v.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
        Estimate { mean, se: (var / n).sqrt() }
    }

    /// |mean − target| in units of the standard error.
    pub fn z(&self, target: f64) -> f64 {
        (self.mean - target).abs() / self.se
    }
}

#[derive(Clone, Debug)]
pub struct EmpiricalStatistics {
    pub samples: usize,
    /// (k, E[R_k])
    pub r: Vec<(usize, Estimate)>,
    pub t1: Estimate,
    /// Var(R₁), with the standard error of the sample variance.
    pub var_r1: Estimate,
    /// Σλᵢ² with λᵢ = xᵢ/Σx.
    pub purity: Estimate,
    /// −Σλᵢ ln λᵢ.
    pub entropy: Estimate,
}

fn power_sum(x: &[f64], k: usize) -> f64 {
    x.iter().map(|v| v.powi(k as i32)).sum()
}

/// Purity and entropy of the normalized spectrum.
pub fn spectrum_entanglement(x: &[f64]) -> (f64, f64) {
    let r1: f64 = x.iter().sum();
    let lam = x.iter().map(|v| v / r1);
    let purity = lam.clone().map(|l| l * l).sum();
    let entropy = -lam.filter(|l| *l > 0.0).map(|l| l * l.ln()).sum::<f64>();
    (purity, entropy)
}

pub fn empirical_statistics(samples: &[SpectrumSample], k_list: &[usize]) -> Result<EmpiricalStatistics> {
    if samples.len() < 2 {
        return Err(Error::Domain("need at least 2 samples".into()));
    }
    let col = |f: &dyn Fn(&[f64]) -> f64| samples.iter().map(|s| f(&s.eigenvalues)).collect::<Vec<_>>();
    let r = k_list.iter().map(|&k| (k, Estimate::of(&col(&|x| power_sum(x, k))))).collect();
    let t1 = Estimate::of(&col(&|x| x.iter().map(|v| v * v.ln()).sum()));
    let r1 = col(&|x| power_sum(x, 1));
    let n = r1.len() as f64;
    let mean = r1.iter().sum::<f64>() / n;
    let dev2: Vec<f64> = r1.iter().map(|x| (x - mean).powi(2)).collect();
    let var = dev2.iter().sum::<f64>() / (n - 1.0);
    let m4 = dev2.iter().map(|d| d * d).sum::<f64>() / n;
    let var_r1 = Estimate { mean: var, se: ((m4 - var * var) / n).max(0.0).sqrt() };
    let purity = Estimate::of(&col(&|x| spectrum_entanglement(x).0));
    let entropy = Estimate::of(&col(&|x| spectrum_entanglement(x).1));
    Ok(EmpiricalStatistics { samples: samples.len(), r, t1, var_r1, purity, entropy })
}
