//! Properties of the correlation kernel: trace, reproducing property,
//! nonnegative correlation functions, and agreement of the forms in f64.

use nsbp::bigfloat::with_precision;
use nsbp::kernel::KernelContext;
use nsbp::params::default_shapes;
use nsbp::quadrature::{integrate_halfline, QuadOptions};
use nsbp::{derive_params, BigFloat, EnsembleParams, Rational, Real, Scalar};
use proptest::prelude::*;

fn params(n: usize, alpha: (i64, i64), a: i64) -> EnsembleParams<Rational> {
    let r = Rational::from_ratio;
    derive_params(n, r(alpha.0, alpha.1), r(a, 1), r(1, 2), r(1, 1)).unwrap()
}

fn opts(p: &EnsembleParams<BigFloat>) -> QuadOptions<BigFloat> {
    QuadOptions::new(p.alpha.clone(), p.beta.clone(), BigFloat::from_f64(1e-24))
}

#[test]
fn diagonal_integrates_to_n() {
    with_precision(128, || {
        for shape in default_shapes() {
            for n in [1, 3, 6] {
                let p: EnsembleParams<BigFloat> = shape.with_n(n).to_scalar();
                let ctx = KernelContext::new(p.clone());
                let q = integrate_halfline(|x| ctx.kernel_diag(x), &opts(&p)).unwrap();
                let err = (q.value - BigFloat::from_i64(n as i64)).abs().to_f64();
                assert!(err < 1e-20, "n={n} alpha={}: {err:e}", shape.alpha);
            }
        }
    });
}

#[test]
fn kernel_reproduces_itself() {
    with_precision(128, || {
        for (n, alpha, a) in [(2, (0, 1), 2), (3, (1, 2), 5), (4, (2, 1), 1)] {
            let p: EnsembleParams<BigFloat> = params(n, alpha, a).to_scalar();
            let ctx = KernelContext::new(p.clone());
            for (x, y) in [(0.3, 1.7), (2.5, 0.8), (1.1, 1.1)] {
                let (x, y) = (BigFloat::from_f64(x), BigFloat::from_f64(y));
                let q = integrate_halfline(|z| Ok(ctx.kernel_sum(&x, z)? * ctx.kernel_sum(z, &y)?), &opts(&p)).unwrap();
                let k = ctx.kernel_sum(&x, &y).unwrap();
                let rel = ((q.value - k.clone()) / k).abs().to_f64();
                assert!(rel < 1e-18, "n={n}: {rel:e}");
            }
        }
    });
}

#[test]
fn diagonal_is_zero_free_inside() {
    let p: EnsembleParams<f64> = params(5, (1, 1), 2).to_scalar();
    let ctx = KernelContext::new(p);
    for i in 1..400 {
        let x = i as f64 * 0.05;
        assert!(ctx.kernel_diag(&x).unwrap() > 0.0, "x={x}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn two_point_correlation_is_nonnegative(
        n in 1usize..6,
        alpha in 0i64..4,
        a in 1i64..6,
        x in 0.01f64..8.0,
        y in 0.01f64..8.0,
    ) {
        with_precision(128, || {
            let p: EnsembleParams<BigFloat> = params(n, (alpha, 2), a).to_scalar();
            let ctx = KernelContext::new(p);
            let (x, y) = (BigFloat::from_f64(x), BigFloat::from_f64(y));
            let kxx = ctx.kernel_diag(&x).unwrap();
            let kyy = ctx.kernel_diag(&y).unwrap();
            let kxy = ctx.kernel_sum(&x, &y).unwrap();
            let kyx = ctx.kernel_sum(&y, &x).unwrap();
            let det = kxx.clone() * kyy.clone() - kxy * kyx;
            let scale = kxx.clone() * kyy;
            prop_assert!(kxx >= BigFloat::from_i64(0));
            prop_assert!(det.to_f64() >= -1e-30 * scale.to_f64());
            Ok(())
        })?;
    }

    #[test]
    fn double_precision_forms_agree(
        n in 1usize..6,
        alpha in 0i64..4,
        a in 1i64..6,
        x in 0.05f64..6.0,
        y in 0.05f64..6.0,
    ) {
        prop_assume!((x - y).abs() > 1e-3);
        let p: EnsembleParams<f64> = params(n, (alpha, 2), a).to_scalar();
        let ctx = KernelContext::new(p);
        let s = ctx.kernel_sum(&x, &y).unwrap();
        let cd = ctx.kernel_cd(&x, &y).unwrap();
        let scale = (ctx.kernel_diag(&x).unwrap() * ctx.kernel_diag(&y).unwrap()).sqrt();
        prop_assert!((s - cd).abs() <= 1e-8 * scale.max(s.abs()), "sum {s} cd {cd}");
    }
}
