//! Verification suites over the built-in grid. `nsbp verify` and the
//! acceptance report both run these.

use std::time::Instant;

use nsbp::bigfloat::with_precision;
use nsbp::entanglement::{avg_entropy, avg_purity, expected_t, hs_entropy_exact, hs_limit_m2, hs_limit_t, hs_purity};
use nsbp::kernel::KernelContext;
use nsbp::moments::{
    appendix_a2_residuals, covariance_r, moment_closed, recurrence_r1_printed_residual, recurrence_r1_residual,
    tk_residuals, MomentTable,
};
use nsbp::params::{default_grid, default_shapes};
use nsbp::quadrature::{integrate_halfline, integrate_halfline_vec, QuadOptions};
use nsbp::scalar::rational_abs;
use nsbp::simulate::{empirical_statistics, sample_spectra, stream_rng};
use nsbp::{derive_params, parse_rational, BigFloat, EnsembleParams, Rational, Real, Result, Scalar};
use num_traits::Zero;
use rand::Rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Orthogonality,
    Cd,
    Recurrence,
    Appendix,
    Hslimit,
    Mc,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Orthogonality => "orthogonality",
            Suite::Cd => "cd",
            Suite::Recurrence => "recurrence",
            Suite::Appendix => "appendix",
            Suite::Hslimit => "hslimit",
            Suite::Mc => "mc",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    /// Residual or statistic compared against the tolerance.
    pub value: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl Check {
    /// Passes when value < tolerance.
    pub fn below(name: impl Into<String>, value: f64, tolerance: f64) -> Check {
        Check { name: name.into(), value, tolerance, passed: value < tolerance }
    }

    pub fn exact(name: impl Into<String>, equal: bool) -> Check {
        Check { name: name.into(), value: if equal { 0.0 } else { 1.0 }, tolerance: 0.0, passed: equal }
    }

    fn error(name: impl Into<String>, e: nsbp::Error) -> Check {
        Check { name: format!("{}: {e}", name.into()), value: f64::NAN, tolerance: 0.0, passed: false }
    }
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<Check>,
    pub seconds: f64,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    /// Largest value/tolerance ratio.
    pub fn worst(&self) -> Option<&Check> {
        let ratio = |c: &Check| if c.tolerance > 0.0 { c.value / c.tolerance } else { c.value };
        self.checks.iter().max_by(|a, b| ratio(a).total_cmp(&ratio(b)))
    }
}

fn timed(suite: &str, f: impl FnOnce() -> Vec<Check>) -> SuiteReport {
    let t0 = Instant::now();
    let checks = f();
    SuiteReport { suite: suite.into(), checks, seconds: t0.elapsed().as_secs_f64() }
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub precision_bits: u32,
    pub seed: u64,
    /// Random points per parameter set in the kernel suites.
    pub points: usize,
    pub mc_samples: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { precision_bits: 128, seed: 20_251_015, points: 100, mc_samples: 100_000 }
    }
}

pub fn label<S: Scalar>(p: &EnsembleParams<S>) -> String {
    match &p.horizon {
        Some(h) => format!("n={} alpha={} a={} t={} T={}", p.n, p.alpha, h.a, h.t, h.big_t),
        None => format!("n={} alpha={} beta={} c={}", p.n, p.alpha, p.beta, p.c),
    }
}

fn shape_label<S: Scalar>(p: &EnsembleParams<S>) -> String {
    label(p).split_once(' ').map(|(_, rest)| rest.to_string()).unwrap_or_default()
}

pub fn run(suite: Suite, cfg: &SuiteConfig) -> SuiteReport {
    match suite {
        Suite::Orthogonality => biorthogonality(cfg, 6),
        Suite::Cd => {
            let (mut a, b) = kernel_identities(cfg, 8);
            a.checks.extend(b.checks);
            a.seconds += b.seconds;
            a
        }
        Suite::Recurrence => recurrence(cfg),
        Suite::Appendix => appendix(),
        Suite::Hslimit => hs_limits(cfg),
        Suite::Mc => monte_carlo(cfg),
    }
}

/// max_{i,j ≤ d} |∫ Q_j P_i − δ_ij| for each (α, a, t, T); the integrals do
/// not involve n, so one value covers every n of the grid.
pub fn biorthogonality(cfg: &SuiteConfig, d: usize) -> SuiteReport {
    timed("orthogonality", || {
        with_precision(cfg.precision_bits, || {
            default_shapes()
                .iter()
                .map(|pr| {
                    let name = format!("biorthogonality i,j<={d} {} (all n)", shape_label(pr));
                    match biorthogonality_defect(&pr.to_scalar(), d) {
                        Ok(v) => Check::below(name, v, 1e-12),
                        Err(e) => Check::error(name, e),
                    }
                })
                .collect()
        })
    })
}

fn biorthogonality_defect(p: &EnsembleParams<BigFloat>, d: usize) -> Result<f64> {
    let ctx = KernelContext::with_degree(p.clone(), d);
    let o = QuadOptions::new(p.alpha.clone(), p.beta.clone(), BigFloat::from_f64(1e-20));
    let r = integrate_halfline_vec(
        |x| {
            let q: Vec<BigFloat> = (0..=d).map(|j| ctx.q(j, x)).collect::<Result<_>>()?;
            let pv: Vec<BigFloat> = (0..=d).map(|i| ctx.p(i, x)).collect();
            Ok(q.iter().flat_map(|qj| pv.iter().map(move |pi| qj.clone() * pi.clone())).collect())
        },
        &o,
    )?;
    let mut worst = 0f64;
    for j in 0..=d {
        for i in 0..=d {
            let want = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((r[j * (d + 1) + i].value.to_f64() - want).abs());
        }
    }
    Ok(worst)
}

/// Random points around the bulk: the mean position times e^{±2}.
fn sample_points(p: &EnsembleParams<BigFloat>, count: usize, seed: u64, stream: u64) -> Vec<(BigFloat, BigFloat)> {
    let mean = moment_closed(1, p).expect("m1") / p.nn();
    let mut rng = stream_rng(seed, stream);
    let mut draw = || mean.clone() * BigFloat::from_f64((4.0 * (rng.random::<f64>() - 0.5)).exp());
    (0..count).map(|_| (draw(), draw())).collect()
}

/// Christoffel-Darboux and confluent forms against the direct sum, then the
/// B-operator identity and its diagonal, for n ≤ `n_max` on each shape.
pub fn kernel_identities(cfg: &SuiteConfig, n_max: usize) -> (SuiteReport, SuiteReport) {
    let t0 = Instant::now();
    let mut cd = Vec::new();
    let mut cdd = Vec::new();
    with_precision(cfg.precision_bits, || {
        for (si, shape) in default_shapes().iter().enumerate() {
            for n in 1..=n_max {
                let p: EnsembleParams<BigFloat> = shape.with_n(n).to_scalar();
                let ctx = KernelContext::new(p.clone());
                let pts = sample_points(&p, cfg.points, cfg.seed, (si * 64 + n) as u64);
                let name = shape_label(&shape.with_n(n));
                let (mut w_cd, mut w_diag, mut w_b, mut w_b1) = (0f64, 0f64, 0f64, 0f64);
                let mut failure = None;
                for (x, y) in &pts {
                    let r = (|| -> Result<()> {
                        let (a, b) = ctx.cd_discrepancy(x, y)?;
                        w_cd = w_cd.max(a.to_f64());
                        w_diag = w_diag.max(b.to_f64());
                        w_b = w_b.max(ctx.b_operator_residual(x, y)?.relative().to_f64());
                        w_b1 = w_b1.max(ctx.cdd1_residual(x)?.relative().to_f64());
                        Ok(())
                    })();
                    if let Err(e) = r {
                        failure = Some(e);
                        break;
                    }
                }
                let tag = format!("n={n} {name}");
                match failure {
                    Some(e) => {
                        cd.push(Check::error(format!("cd {tag}"), e.clone()));
                        cdd.push(Check::error(format!("cdd {tag}"), e));
                    }
                    None => {
                        cd.push(Check::below(format!("cd sum-vs-cd {tag}"), w_cd, 1e-20));
                        cd.push(Check::below(format!("cd sum-vs-diag {tag}"), w_diag, 1e-20));
                        cdd.push(Check::below(format!("cdd {tag}"), w_b, 1e-20));
                        cdd.push(Check::below(format!("cdd1 {tag}"), w_b1, 1e-20));
                    }
                }
            }
        }
    });
    let secs = t0.elapsed().as_secs_f64();
    (
        SuiteReport { suite: "cd".into(), checks: cd, seconds: secs },
        SuiteReport { suite: "cdd".into(), checks: cdd, seconds: 0.0 },
    )
}

/// The moment recurrence against the closed forms (exactly) and against
/// quadrature of x^k K(x,x) for k = 3..6 (within ten times the bound).
pub fn moment_recurrence(cfg: &SuiteConfig) -> SuiteReport {
    timed("recurrence", || {
        let mut out = Vec::new();
        for p in default_grid() {
            let name = label(&p);
            let mut tab = MomentTable::new(p.clone());
            let low = (0..=2).all(|k| match (tab.get(k, 0), moment_closed(k, &p)) {
                (Ok(a), Ok(b)) => a == b,
                _ => false,
            });
            out.push(Check::exact(format!("m0..m2 exact {name}"), low));
            let exact: Result<Vec<Rational>> = (3..=6).map(|k| tab.get(k, 0)).collect();
            let r = exact.and_then(|exact| {
                with_precision(cfg.precision_bits, || {
                    let pf: EnsembleParams<BigFloat> = p.to_scalar();
                    let ctx = KernelContext::new(pf.clone());
                    let o = QuadOptions::new(pf.alpha.clone(), pf.beta.clone(), BigFloat::from_f64(1e-25));
                    let q = integrate_halfline_vec(
                        |x| {
                            let k = ctx.kernel_sum(x, x)?;
                            Ok((3..=6).map(|j| x.powi(j) * k.clone()).collect())
                        },
                        &o,
                    )?;
                    // |exact − quadrature| / (10 × bound), worst over k
                    Ok(exact
                        .iter()
                        .zip(&q)
                        .map(|(e, r)| {
                            let diff = (BigFloat::from_rational(e) - r.value.clone()).abs();
                            (diff / (r.error_bound.clone() * BigFloat::from_i64(10))).to_f64()
                        })
                        .fold(0f64, f64::max))
                })
            });
            match r {
                Ok(v) => out.push(Check::below(format!("m3..m6 vs quadrature (units of 10x bound) {name}"), v, 1.0)),
                Err(e) => out.push(Check::error(format!("m3..m6 {name}"), e)),
            }
        }
        out
    })
}

/// Recurrence suite: the moment recurrence, the compact recurrence with
/// T-derivatives in the form that holds, and the three relations behind it.
pub fn recurrence(cfg: &SuiteConfig) -> SuiteReport {
    let mut rep = moment_recurrence(cfg);
    let t0 = Instant::now();
    for p in default_grid() {
        let name = label(&p);
        for k in 0..=2 {
            match recurrence_r1_residual(k, &p, rational_abs) {
                Ok(r) => out_exact(&mut rep.checks, format!("compact recurrence k={k} {name}"), r.value.is_zero()),
                Err(e) => rep.checks.push(Check::error(format!("compact recurrence k={k} {name}"), e)),
            }
        }
        for k in 2..=4 {
            match tk_residuals(k, &p, rational_abs) {
                Ok(rs) => {
                    for (i, r) in rs.iter().enumerate() {
                        out_exact(&mut rep.checks, format!("tk{} k={k} {name}", i + 1), r.value.is_zero());
                    }
                }
                Err(e) => rep.checks.push(Check::error(format!("tk k={k} {name}"), e)),
            }
        }
    }
    rep.seconds += t0.elapsed().as_secs_f64();
    rep
}

fn out_exact(out: &mut Vec<Check>, name: String, ok: bool) {
    out.push(Check::exact(name, ok));
}

fn rel(r: &nsbp::moments::Residual<Rational>) -> f64 {
    if r.scale.is_zero() {
        r.value.to_f64().abs()
    } else {
        (rational_abs(&r.value) / r.scale.clone()).to_f64()
    }
}

/// The eight relations of the appendix and the compact recurrence, both
/// exactly as typeset, at 10⁻⁸ relative.
pub fn appendix() -> SuiteReport {
    timed("appendix", || {
        let mut out = Vec::new();
        for p in default_grid() {
            let name = label(&p);
            for k in 1..=3 {
                match appendix_a2_residuals(k, &p, rational_abs) {
                    Ok(rs) => {
                        for (i, r) in rs.iter().enumerate() {
                            out.push(Check::below(format!("A.2 relation {} k={k} {name}", i + 1), rel(r), 1e-8));
                        }
                    }
                    Err(e) => out.push(Check::error(format!("A.2 k={k} {name}"), e)),
                }
            }
            for k in 0..=2 {
                match recurrence_r1_printed_residual(k, &p, rational_abs) {
                    Ok(r) => out.push(Check::below(format!("compact recurrence as typeset k={k} {name}"), rel(&r), 1e-8)),
                    Err(e) => out.push(Check::error(format!("compact recurrence as typeset k={k} {name}"), e)),
                }
            }
        }
        out
    })
}

fn big_c_params(n: usize, alpha: &Rational, beta: &Rational) -> EnsembleParams<Rational> {
    EnsembleParams::from_beta_c(n, alpha.clone(), beta.clone(), Rational::from_i64(10_000_000_000)).expect("admissible")
}

/// The a → 0 limits: m₂ and E[T] at c = 10¹⁰, and the exact Hilbert-Schmidt
/// values at n = 2, α = 0.
pub fn hs_limits(cfg: &SuiteConfig) -> SuiteReport {
    timed("hslimit", || {
        let mut out = Vec::new();
        let r = |s: &str| parse_rational(s).expect("literal");
        for n in 1..=4 {
            for al in ["0", "1/2", "1", "2"] {
                for be in ["2", "8/3"] {
                    let p = big_c_params(n, &r(al), &r(be));
                    let name = label(&p);
                    let m2 = moment_closed(2, &p).expect("m2");
                    let lw = hs_limit_m2(n, &p.alpha, &p.beta);
                    out.push(Check::below(format!("m2 vs limit {name}"), (rational_abs(&(m2 - lw.clone())) / lw).to_f64(), 1e-6));
                    let et = with_precision(cfg.precision_bits, || {
                        let pf: EnsembleParams<BigFloat> = p.to_scalar();
                        let lim = hs_limit_t(n, &pf.alpha, &pf.beta)?;
                        let v = expected_t(&pf)?;
                        Ok(((v - lim.clone()) / lim).abs().to_f64())
                    });
                    match et {
                        Ok(v) => out.push(Check::below(format!("E[T] vs limit {name}"), v, 1e-6)),
                        Err(e) => out.push(Check::error(format!("E[T] vs limit {name}"), e)),
                    }
                }
            }
        }
        out.push(Check::exact("hs_purity(2,0) = 4/5", hs_purity(2, &Rational::from_i64(0)) == r("4/5")));
        out.push(Check::exact("hs_entropy(2,0) = 1/3", hs_entropy_exact::<Rational>(2, 0) == r("1/3")));
        out
    })
}

/// Mean-field purity: the closed form equals m₂/m₁² on the grid, and at
/// n = 200, α = 0 it is within 1% of 2/n.
pub fn purity_checks() -> SuiteReport {
    timed("purity", || {
        let mut out = Vec::new();
        for p in default_grid() {
            let m1 = moment_closed(1, &p).expect("m1");
            let m2 = moment_closed(2, &p).expect("m2");
            out.push(Check::exact(format!("purity = m2/m1^2 {}", label(&p)), avg_purity(&p) == m2 / (m1.clone() * m1)));
        }
        for shape in default_shapes().iter().filter(|p| p.alpha.is_zero()) {
            let p = shape.with_n(200);
            let v = avg_purity(&p).to_f64();
            out.push(Check::below(format!("purity vs 2/n {}", label(&p)), (v * 100.0 - 1.0).abs(), 0.01));
        }
        out
    })
}

/// E[T] in closed form against quadrature of x ln x K(x,x) for n ≤ 4, and
/// the entropy range for n ≥ 2.
pub fn entropy_checks(cfg: &SuiteConfig) -> SuiteReport {
    timed("entropy", || {
        with_precision(cfg.precision_bits, || {
            let mut out = Vec::new();
            for p in default_grid() {
                let pf: EnsembleParams<BigFloat> = p.to_scalar();
                let name = label(&p);
                let r = (|| -> Result<f64> {
                    let closed = expected_t(&pf)?;
                    let ctx = KernelContext::new(pf.clone());
                    let o = QuadOptions::new(pf.alpha.clone() + BigFloat::from_i64(1), pf.beta.clone(), BigFloat::from_f64(1e-20));
                    let q = integrate_halfline(|x| Ok(x.clone() * x.ln() * ctx.kernel_sum(x, x)?), &o)?;
                    Ok(((closed - q.value.clone()) / q.value).abs().to_f64())
                })();
                match r {
                    Ok(v) => out.push(Check::below(format!("E[T] vs quadrature {name}"), v, 1e-10)),
                    Err(e) => out.push(Check::error(format!("E[T] vs quadrature {name}"), e)),
                }
                if p.n >= 2 {
                    match avg_entropy(&pf) {
                        Ok(s) => {
                            let inside = s >= BigFloat::zero() && s <= pf.nn().ln();
                            out.push(Check {
                                name: format!("0 <= entropy <= ln n {name}"),
                                value: s.to_f64() / (p.n as f64).ln(),
                                tolerance: 1.0,
                                passed: inside,
                            });
                        }
                        Err(e) => out.push(Check::error(format!("entropy {name}"), e)),
                    }
                }
            }
            out
        })
    })
}

/// Matrix-bridge samples at (n=2, α=1, a=2, t=1/2, T=1): mean of R₁ and R₂
/// within 3 SE of m₁, m₂; variance of R₁ within 4 SE of its closed form.
pub fn monte_carlo(cfg: &SuiteConfig) -> SuiteReport {
    timed("mc", || {
        let r = |s: &str| parse_rational(s).expect("literal");
        let pe = derive_params(2, r("1"), r("2"), r("1/2"), r("1")).expect("admissible");
        let name = label(&pe);
        let stats = sample_spectra(&pe.to_scalar(), cfg.mc_samples, cfg.seed).and_then(|s| empirical_statistics(&s, &[1, 2]));
        let st = match stats {
            Ok(st) => st,
            Err(e) => return vec![Check::error(format!("sampling {name}"), e)],
        };
        let mut out = Vec::new();
        for (k, e) in &st.r {
            let m = moment_closed(*k, &pe).expect("closed").to_f64();
            out.push(Check::below(format!("E[R{k}] in SE units, {} samples {name}", st.samples), e.z(m), 3.0));
        }
        let v = covariance_r(1, &pe).expect("covariance").to_f64();
        out.push(Check::below(format!("Var(R1) in SE units, {} samples {name}", st.samples), st.var_r1.z(v), 4.0));
        out
    })
}
