//! Non-intersecting squared Bessel paths.
//!
//! Multiple orthogonal polynomials for the modified Bessel weights, the
//! correlation kernel, spectral moments and their recurrences, dynamical
//! entanglement averages, plus quadrature and Monte Carlo oracles.
//!
//! Analytic code is generic over [`Scalar`]/[`Real`]; the aliases below pick
//! the usual concrete fields.

pub mod bigfloat;
pub mod coeffs;
pub mod dual;
pub mod entanglement;
pub mod error;
pub mod kernel;
pub mod laurent;
pub mod moments;
pub mod mop;
pub mod params;
pub mod poly;
pub mod quadrature;
pub mod scalar;
pub mod simulate;
pub mod specfun;

pub use bigfloat::BigFloat;
pub use dual::Dual;
pub use error::{Error, Result};
pub use laurent::Laurent;
pub use params::{derive_params, parse_rational, EnsembleParams, Horizon};
pub use scalar::{Real, Scalar};

/// Exact rational field.
pub type Rational = num_rational::BigRational;
/// MPFR float at the thread's working precision.
pub type Float = BigFloat;

pub type ExactParams = EnsembleParams<Rational>;
pub type FloatParams = EnsembleParams<BigFloat>;
