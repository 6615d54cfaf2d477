use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use nsbp_cli::commands::{
    cmd_entropy, cmd_kernel, cmd_moments, cmd_poly, cmd_purity, cmd_simulate, cmd_verify, FileConfig, Format, Method,
    Outcome, PolyType, RunConfig, SimulateArgs,
};
use nsbp_cli::suites::Suite;

/// Non-intersecting squared Bessel paths: polynomials, kernels, moments,
/// entanglement averages and Monte Carlo.
#[derive(Parser, Debug)]
#[command(name = "nsbp", version)]
struct Cli {
    /// JSON file with precision_bits, tol, format, seed and params {n, alpha, a, t, T}.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Working precision in bits for big-float evaluation.
    #[arg(long, global = true, env = "NSBP_PRECISION")]
    precision: Option<u32>,
    /// Quadrature and residual tolerance.
    #[arg(long, global = true)]
    tol: Option<String>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[arg(long, global = true)]
    n: Option<usize>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    alpha: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    a: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    t: Option<String>,
    #[arg(long = "T", global = true, allow_hyphen_values = true)]
    big_t: Option<String>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Coefficients of the type I or type II function of degree --n.
    Poly {
        #[arg(long = "type", value_enum)]
        kind: PolyType,
    },
    /// K(x, y) by direct sum and Christoffel-Darboux form, with residuals.
    Kernel {
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
    },
    /// Moment table with closed-form and quadrature cross-checks.
    Moments {
        #[arg(long)]
        k_max: usize,
    },
    /// Run a verification suite over the built-in grid.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
    },
    /// Mean-field average purity.
    Purity,
    /// Mean-field average entropy, or a CSV sweep over a.
    Entropy {
        #[arg(long, value_delimiter = ',')]
        sweep_a: Option<Vec<String>>,
    },
    /// Monte Carlo samples of the spectrum, or path trajectories.
    Simulate {
        #[arg(long, default_value_t = 1)]
        samples: usize,
        /// Emit one trajectory ensemble on --grid times instead of samples.
        #[arg(long)]
        paths: bool,
        #[arg(long, default_value_t = 201)]
        grid: usize,
        #[arg(long, value_enum, default_value_t = Method::Matrix)]
        method: Method,
        /// Factor applied to every output position.
        #[arg(long, default_value_t = 1.0)]
        scale: f64,
    },
}

fn config(cli: &Cli) -> Result<RunConfig, Outcome> {
    let mut cfg = RunConfig::default();
    if let Some(path) = &cli.config {
        let f = FileConfig::load(path).map_err(|m| Outcome::usage(&m))?;
        cfg.apply_file(&f).map_err(|e| Outcome::error(&e))?;
    }
    if let Some(b) = cli.precision {
        cfg.precision_bits = b;
    }
    if let Some(t) = &cli.tol {
        cfg.tol = nsbp::parse_rational(t).map_err(|e| Outcome::error(&e))?;
    }
    if let Some(f) = cli.format {
        cfg.format = f;
    }
    if let Some(s) = cli.seed {
        cfg.seed = s;
    }
    if let Some(n) = cli.n {
        cfg.n = n;
    }
    for (dst, src) in [(&mut cfg.alpha, &cli.alpha), (&mut cfg.a, &cli.a), (&mut cfg.t, &cli.t), (&mut cfg.big_t, &cli.big_t)] {
        if let Some(v) = src {
            *dst = v.clone();
        }
    }
    cfg.validate().map_err(|e| Outcome::error(&e))?;
    Ok(cfg)
}

fn dispatch(cli: &Cli) -> Outcome {
    let cfg = match config(cli) {
        Ok(c) => c,
        Err(o) => return o,
    };
    let r = nsbp::bigfloat::with_precision(cfg.precision_bits, || match &cli.cmd {
        Cmd::Poly { kind } => cmd_poly(&cfg, *kind),
        Cmd::Kernel { x, y } => cmd_kernel(&cfg, x, y),
        Cmd::Moments { k_max } => cmd_moments(&cfg, *k_max),
        Cmd::Verify { suite } => cmd_verify(&cfg, *suite),
        Cmd::Purity => cmd_purity(&cfg),
        Cmd::Entropy { sweep_a } => cmd_entropy(&cfg, sweep_a.as_deref()),
        Cmd::Simulate { samples, paths, grid, method, scale } => cmd_simulate(
            &cfg,
            &SimulateArgs { samples: *samples, paths: *paths, grid: *grid, method: *method, scale: *scale },
        ),
    });
    r.unwrap_or_else(|e| Outcome::error(&e))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = dispatch(&cli);
    let mut stdout = std::io::stdout().lock();
    // a closed pipe is not an error worth reporting
    let _ = stdout.write_all(out.output.as_bytes());
    ExitCode::from(out.status as u8)
}
