//! Command implementations. Each returns a report to print and an exit code.

use std::fmt::Write as _;
use std::path::Path;

use nsbp::bigfloat::with_precision;
use nsbp::entanglement::{avg_purity, hs_entropy, hs_purity, report as entanglement_report};
use nsbp::kernel::KernelContext;
use nsbp::moments::{moment_closed, moment_quadrature, MomentTable};
use nsbp::mop::{type_i_constant, typei_function, typeii_poly};
use nsbp::simulate::{
    empirical_statistics, sample_paths, sample_spectra, sample_spectra_sde, spectrum_entanglement, SdeOptions,
};
use nsbp::{derive_params, parse_rational, BigFloat, EnsembleParams, Error, Rational, Real, Scalar};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::suites::{self, Suite, SuiteConfig, SuiteReport};

pub const SCHEMA_VERSION: &str = "nsbp/1";

/// Exit status: 0 pass, 1 numerical check failed, 2 usage or domain error.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass = 0,
    CheckFailed = 1,
    Usage = 2,
}

#[derive(Debug)]
pub struct Outcome {
    pub output: String,
    pub status: Status,
}

impl Outcome {
    fn json(v: Value, status: Status) -> Outcome {
        Outcome { output: serde_json::to_string_pretty(&v).expect("serializable") + "\n", status }
    }

    fn csv(s: String) -> Outcome {
        Outcome { output: s, status: Status::Pass }
    }

    /// Structured error report.
    pub fn error(e: &Error) -> Outcome {
        let (kind, status) = match e {
            Error::Domain(_) | Error::Pole(_) | Error::Unsupported(_) => ("domain", Status::Usage),
            _ => ("numerical", Status::CheckFailed),
        };
        Outcome::json(json!({ "schema_version": SCHEMA_VERSION, "error": { "kind": kind, "message": e.to_string() } }), status)
    }

    pub fn usage(msg: &str) -> Outcome {
        Outcome::json(json!({ "schema_version": SCHEMA_VERSION, "error": { "kind": "usage", "message": msg } }), Status::Usage)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

/// Raw parameter literals; parsed exactly.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamSpec {
    pub n: Option<usize>,
    pub alpha: Option<Literal>,
    pub a: Option<Literal>,
    pub t: Option<Literal>,
    #[serde(rename = "T")]
    pub big_t: Option<Literal>,
}

/// A number given either as a JSON number or as a string such as "1/2".
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum Literal {
    Int(i64),
    Float(f64),
    Text(String),
}

impl Literal {
    fn text(&self) -> String {
        match self {
            Literal::Int(v) => v.to_string(),
            Literal::Float(v) => format!("{v:e}"),
            Literal::Text(s) => s.clone(),
        }
    }
}

/// Contents of a `--config` file.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub precision_bits: Option<u32>,
    pub tol: Option<Literal>,
    pub format: Option<Format>,
    pub seed: Option<u64>,
    pub params: Option<ParamSpec>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<FileConfig, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        serde_json::from_str(&text).map_err(|e| format!("bad config {}: {e}", path.display()))
    }
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub precision_bits: u32,
    pub tol: Rational,
    pub format: Format,
    pub seed: u64,
    pub n: usize,
    pub alpha: String,
    pub a: String,
    pub t: String,
    pub big_t: String,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            precision_bits: 128,
            tol: parse_rational("1e-20").expect("literal"),
            format: Format::Json,
            seed: 1,
            n: 2,
            alpha: "0".into(),
            a: "2".into(),
            t: "1/2".into(),
            big_t: "1".into(),
        }
    }
}

impl RunConfig {
    pub fn apply_file(&mut self, f: &FileConfig) -> Result<(), Error> {
        if let Some(b) = f.precision_bits {
            self.precision_bits = b;
        }
        if let Some(t) = &f.tol {
            self.tol = parse_rational(&t.text())?;
        }
        if let Some(fm) = f.format {
            self.format = fm;
        }
        if let Some(s) = f.seed {
            self.seed = s;
        }
        if let Some(p) = &f.params {
            if let Some(n) = p.n {
                self.n = n;
            }
            for (dst, src) in [(&mut self.alpha, &p.alpha), (&mut self.a, &p.a), (&mut self.t, &p.t), (&mut self.big_t, &p.big_t)] {
                if let Some(l) = src {
                    *dst = l.text();
                }
            }
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(), Error> {
        if self.precision_bits < 64 {
            return Err(Error::Domain(format!("precision must be at least 64 bits, got {}", self.precision_bits)));
        }
        if self.tol <= Rational::from_i64(0) {
            return Err(Error::Domain("tolerance must be positive".into()));
        }
        Ok(())
    }

    pub fn params(&self) -> Result<EnsembleParams<Rational>, Error> {
        self.params_with_a(&self.a)
    }

    fn params_with_a(&self, a: &str) -> Result<EnsembleParams<Rational>, Error> {
        derive_params(
            self.n,
            parse_rational(&self.alpha)?,
            parse_rational(a)?,
            parse_rational(&self.t)?,
            parse_rational(&self.big_t)?,
        )
    }

    fn suite_config(&self) -> SuiteConfig {
        SuiteConfig { precision_bits: self.precision_bits, seed: self.seed, ..SuiteConfig::default() }
    }
}

fn exact_str(r: &Rational) -> String {
    r.to_string()
}

fn decimal(r: &Rational) -> String {
    BigFloat::from_rational(r).to_string()
}

fn number(r: &Rational) -> Value {
    json!({ "exact": exact_str(r), "decimal": decimal(r) })
}

fn params_json(p: &EnsembleParams<Rational>) -> Value {
    let mut v = json!({
        "n": p.n,
        "alpha": number(&p.alpha),
        "beta": number(&p.beta),
        "c": number(&p.c),
    });
    if let Some(h) = &p.horizon {
        v["a"] = number(&h.a);
        v["t"] = number(&h.t);
        v["T"] = number(&h.big_t);
    }
    v
}

fn envelope(command: &str, p: Option<&EnsembleParams<Rational>>, cfg: &RunConfig) -> Value {
    let mut v = json!({ "schema_version": SCHEMA_VERSION, "command": command, "precision_bits": cfg.precision_bits });
    if let Some(p) = p {
        v["params"] = params_json(p);
    }
    v
}

fn merge(mut base: Value, extra: Value) -> Value {
    if let (Some(b), Value::Object(e)) = (base.as_object_mut(), extra) {
        b.extend(e);
    }
    base
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum PolyType {
    #[value(name = "I")]
    TypeI,
    #[value(name = "II")]
    TypeII,
}

/// Coefficients of Pₙ, or of a₁, a₂ in Qₙ = E·(a₁ω₁ + a₂ω₂). Here n is the
/// degree; the families do not depend on the number of paths.
pub fn cmd_poly(cfg: &RunConfig, kind: PolyType) -> Result<Outcome, Error> {
    let degree = cfg.n;
    let p = RunConfig { n: degree.max(1), ..cfg.clone() }.params()?;
    let coeffs = |poly: &nsbp::poly::Poly<Rational>| poly.coeffs().iter().map(exact_str).collect::<Vec<_>>();
    let body = match kind {
        PolyType::TypeII => json!({
            "type": "II",
            "degree": degree,
            "variable": "x",
            "coefficients": coeffs(&typeii_poly(degree, &p)),
        }),
        PolyType::TypeI => {
            let f = typei_function(degree, &p);
            let e = with_precision(cfg.precision_bits, || type_i_constant(&p.to_scalar::<BigFloat>()).to_string());
            json!({
                "type": "I",
                "degree": degree,
                "form": "E*(a1(x)*w_alpha(x) + a2(x)*w_alpha+1(x)), w_nu(x) = w_{nu,c}(beta*x/c), E = exp(-1/c)*c^alpha",
                "E": e,
                "a1": coeffs(&f.a1),
                "a2": coeffs(&f.a2),
            })
        }
    };
    Ok(Outcome::json(merge(envelope("poly", Some(&p), cfg), body), Status::Pass))
}

/// The kernel by its three routes, and the identity residuals at (x, y).
pub fn cmd_kernel(cfg: &RunConfig, x: &str, y: &str) -> Result<Outcome, Error> {
    let p = cfg.params()?;
    let (xr, yr) = (parse_rational(x)?, parse_rational(y)?);
    with_precision(cfg.precision_bits, || {
        let ctx = KernelContext::new(p.to_scalar::<BigFloat>());
        let (xf, yf) = (BigFloat::from_rational(&xr), BigFloat::from_rational(&yr));
        let sum = ctx.kernel_sum(&xf, &yf)?;
        let cd = ctx.kernel_cd(&xf, &yf)?;
        let diag = ctx.kernel_diag(&xf)?;
        let (r_cd, r_diag) = ctx.cd_discrepancy(&xf, &yf)?;
        let r_b = ctx.b_operator_residual(&xf, &yf)?.relative();
        let r_b1 = ctx.cdd1_residual(&xf)?.relative();
        let tol = BigFloat::from_rational(&cfg.tol);
        let pass = [&r_cd, &r_diag, &r_b, &r_b1].iter().all(|r| **r < tol);
        let body = json!({
            "x": number(&xr),
            "y": number(&yr),
            "kernel_sum": sum.to_string(),
            "kernel_cd": cd.to_string(),
            "kernel_diag_at_x": diag.to_string(),
            "residuals": {
                "sum_vs_cd": r_cd.to_string(),
                "sum_vs_diag_at_x": r_diag.to_string(),
                "b_operator": r_b.to_string(),
                "diagonal_derivative": r_b1.to_string(),
            },
            "tolerance": decimal(&cfg.tol),
            "pass": pass,
        });
        Ok(Outcome::json(merge(envelope("kernel", Some(&p), cfg), body), if pass { Status::Pass } else { Status::CheckFailed }))
    })
}

/// Moment table: the recurrence (exact), closed forms for k ≤ 2, quadrature.
pub fn cmd_moments(cfg: &RunConfig, k_max: usize) -> Result<Outcome, Error> {
    let p = cfg.params()?;
    let mut tab = MomentTable::new(p.clone());
    let rows = with_precision(cfg.precision_bits, || -> Result<Vec<Value>, Error> {
        let pf: EnsembleParams<BigFloat> = p.to_scalar();
        let tol = BigFloat::from_rational(&cfg.tol);
        let mut rows = Vec::new();
        for k in 0..=k_max {
            let exact = tab.get(k, 0)?;
            let closed = moment_closed(k, &p).ok();
            let q = moment_quadrature(&BigFloat::from_usize(k), &pf, &tol)?;
            let diff = (BigFloat::from_rational(&exact) - q.value.clone()).abs();
            let pass = closed.as_ref().is_none_or(|c| *c == exact) && diff <= q.error_bound.clone() * BigFloat::from_i64(10);
            rows.push(json!({
                "k": k,
                "exact": exact_str(&exact),
                "exact_decimal": decimal(&exact),
                "closed_form": closed.as_ref().map(exact_str),
                "quadrature": q.value.to_string(),
                "quadrature_bound": q.error_bound.to_string(),
                "abs_diff": diff.to_string(),
                "pass": pass,
            }));
        }
        Ok(rows)
    })?;
    let pass = rows.iter().all(|r| r["pass"] == json!(true));
    let status = if pass { Status::Pass } else { Status::CheckFailed };
    match cfg.format {
        Format::Json => Ok(Outcome::json(merge(envelope("moments", Some(&p), cfg), json!({ "rows": rows, "pass": pass })), status)),
        Format::Csv => {
            let mut s = String::from("k,exact,exact_decimal,closed_form,quadrature,quadrature_bound,abs_diff,pass\n");
            for r in &rows {
                let f = |k: &str| r[k].as_str().map(str::to_string).unwrap_or_default();
                writeln!(
                    s,
                    "{},{},{},{},{},{},{},{}",
                    r["k"], f("exact"), f("exact_decimal"), f("closed_form"), f("quadrature"), f("quadrature_bound"), f("abs_diff"), r["pass"]
                )
                .expect("string write");
            }
            Ok(Outcome { output: s, status })
        }
    }
}

pub fn suite_json(r: &SuiteReport) -> Value {
    json!({
        "suite": r.suite,
        "pass": r.passed(),
        "seconds": r.seconds,
        "checks": r.checks.iter().map(|c| json!({
            "name": c.name,
            "value": format!("{:e}", c.value),
            "tolerance": format!("{:e}", c.tolerance),
            "pass": c.passed,
        })).collect::<Vec<_>>(),
    })
}

pub fn cmd_verify(cfg: &RunConfig, suite: Suite) -> Result<Outcome, Error> {
    let rep = suites::run(suite, &cfg.suite_config());
    let status = if rep.passed() { Status::Pass } else { Status::CheckFailed };
    Ok(Outcome::json(merge(envelope("verify", None, cfg), suite_json(&rep)), status))
}

pub fn cmd_purity(cfg: &RunConfig) -> Result<Outcome, Error> {
    let p = cfg.params()?;
    let v = avg_purity(&p);
    let lim = hs_purity(p.n, &p.alpha);
    let m1 = moment_closed(1, &p)?;
    let ratio = moment_closed(2, &p)? / (m1.clone() * m1);
    let body = json!({
        "value": number(&v),
        "m2_over_m1_squared": number(&ratio),
        "hs_limit": number(&lim),
        "diff": number(&(v.clone() - lim)),
        "mean_field": true,
    });
    Ok(Outcome::json(merge(envelope("purity", Some(&p), cfg), body), Status::Pass))
}

fn entropy_row(p: &EnsembleParams<Rational>) -> Result<(BigFloat, BigFloat, BigFloat, BigFloat), Error> {
    let pf: EnsembleParams<BigFloat> = p.to_scalar();
    let r = entanglement_report(&pf)?;
    Ok((r.entropy_mean, r.purity_mean, r.expected_t, r.m1))
}

/// Mean-field entropy ln m₁ − E[T]/m₁, or a CSV sweep over the start point a.
pub fn cmd_entropy(cfg: &RunConfig, sweep_a: Option<&[String]>) -> Result<Outcome, Error> {
    with_precision(cfg.precision_bits, || {
        if let Some(list) = sweep_a {
            let mut s = String::from("a,entropy,purity,expected_t,m1\n");
            for a in list {
                let p = cfg.params_with_a(a)?;
                let (e, pu, t, m1) = entropy_row(&p)?;
                let h = p.horizon.as_ref().expect("derived from a window");
                writeln!(s, "{},{e},{pu},{t},{m1}", exact_str(&h.a)).expect("string write");
            }
            return Ok(Outcome::csv(s));
        }
        let p = cfg.params()?;
        let (e, _, t, m1) = entropy_row(&p)?;
        let lim = hs_entropy(p.n, &BigFloat::from_rational(&p.alpha))?;
        let body = json!({
            "value": e.to_string(),
            "hs_limit": lim.to_string(),
            "diff": (e.clone() - lim).to_string(),
            "expected_t": t.to_string(),
            "m1": m1.to_string(),
            "mean_field": true,
            "note": "r is replaced by its mean m1; `nsbp simulate` reports the sampled entropy",
        });
        Ok(Outcome::json(merge(envelope("entropy", Some(&p), cfg), body), Status::Pass))
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Method {
    /// Complex matrix Brownian bridge (integer alpha).
    Matrix,
    /// BESQ bridges with rejection of crossings (any alpha).
    Sde,
}

#[derive(Clone, Debug)]
pub struct SimulateArgs {
    pub samples: usize,
    pub paths: bool,
    pub grid: usize,
    pub method: Method,
    pub scale: f64,
}

/// Samples as CSV, one row each; or, with `paths`, one trajectory ensemble
/// in long format (time, path, value). A summary goes to stderr.
pub fn cmd_simulate(cfg: &RunConfig, a: &SimulateArgs) -> Result<Outcome, Error> {
    if a.samples == 0 {
        return Err(Error::Domain("--samples must be at least 1".into()));
    }
    if !(a.scale > 0.0 && a.scale.is_finite()) {
        return Err(Error::Domain("--scale must be positive".into()));
    }
    let p = cfg.params()?;
    let pf: EnsembleParams<f64> = p.to_scalar();
    if a.paths {
        let e = sample_paths(&pf, a.grid, cfg.seed)?;
        let mut s = String::from("time,path,value\n");
        for (i, tr) in e.trajectories.iter().enumerate() {
            for (t, v) in e.times.iter().zip(tr) {
                writeln!(s, "{t:e},{i},{:e}", v * a.scale).expect("string write");
            }
        }
        return Ok(Outcome::csv(s));
    }
    let samples = match a.method {
        Method::Matrix => sample_spectra(&pf, a.samples, cfg.seed)?,
        Method::Sde => sample_spectra_sde(&pf, a.samples, cfg.seed, &SdeOptions::default())?,
    };
    let mut s = String::from("sample");
    for i in 1..=p.n {
        write!(s, ",x{i}").expect("string write");
    }
    s.push_str(",r1,purity,entropy\n");
    for smp in &samples {
        write!(s, "{}", smp.index).expect("string write");
        for v in &smp.eigenvalues {
            write!(s, ",{:e}", v * a.scale).expect("string write");
        }
        let (pu, en) = spectrum_entanglement(&smp.eigenvalues);
        writeln!(s, ",{:e},{pu:e},{en:e}", smp.eigenvalues.iter().sum::<f64>() * a.scale).expect("string write");
    }
    if samples.len() >= 2 {
        let st = empirical_statistics(&samples, &[1, 2])?;
        let m = |k| moment_closed(k, &p).map(|v| v.to_f64());
        eprintln!(
            "{} samples: E[R1] = {:.6} ± {:.6} (m1 = {:.6}), E[R2] = {:.6} ± {:.6} (m2 = {:.6}), purity {:.6} ± {:.6}, entropy {:.6} ± {:.6}",
            st.samples,
            st.r[0].1.mean,
            st.r[0].1.se,
            m(1)?,
            st.r[1].1.mean,
            st.r[1].1.se,
            m(2)?,
            st.purity.mean,
            st.purity.se,
            st.entropy.mean,
            st.entropy.se
        );
    }
    Ok(Outcome::csv(s))
}
