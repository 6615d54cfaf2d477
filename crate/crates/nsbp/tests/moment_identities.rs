//! Moment recurrences and integral relations across the parameter grid.

use nsbp::moments::{
    appendix_a2_relations, appendix_a2_residuals, covariance_r, evaluate_relation, inverse_moment, ist_dbi, ist_exact,
    ist_quadrature, moment_closed, moment_exact, moment_quadrature, recurrence_r1_printed_residual,
    recurrence_r1_residual, tk_residuals, MomentTable,
};
use nsbp::kernel::KernelContext;
use nsbp::params::default_grid;
use nsbp::quadrature::{integrate_product_2d, QuadOptions};
use nsbp::{derive_params, BigFloat, EnsembleParams, Rational, Real, Scalar};
use num_traits::Zero;
use proptest::prelude::*;

fn r(p: i64, q: i64) -> Rational {
    Rational::from_ratio(p, q)
}

fn rabs(x: &Rational) -> Rational {
    if *x < Rational::zero() {
        -x.clone()
    } else {
        x.clone()
    }
}

fn hp(p: &EnsembleParams<Rational>) -> EnsembleParams<BigFloat> {
    p.to_scalar()
}

#[test]
fn recurrence_reproduces_closed_forms_on_grid() {
    for p in default_grid() {
        let mut tab = MomentTable::new(p.clone());
        for k in 0..=2 {
            assert_eq!(tab.get(k, 0).unwrap(), moment_closed(k, &p).unwrap(), "k={k} {p:?}");
        }
    }
}

#[test]
fn recurrence_matches_quadrature() {
    let tol = BigFloat::from_f64(1e-30);
    for p in default_grid().into_iter().filter(|p| p.n <= 3).step_by(5) {
        let mut tab = MomentTable::new(p.clone());
        for k in 3..=6usize {
            let exact = BigFloat::from_rational(&tab.get(k, 0).unwrap());
            let q = moment_quadrature(&BigFloat::from_usize(k), &hp(&p), &tol).unwrap();
            let err = (q.value.clone() - exact.clone()).abs();
            assert!(err <= q.error_bound.clone() * BigFloat::from_i64(10) + exact * BigFloat::from_f64(1e-28), "k={k}");
        }
    }
}

#[test]
fn third_moment_example_by_quadrature() {
    let p = EnsembleParams::from_beta_c(2, r(1, 1), r(1, 1), r(1, 1)).unwrap();
    let exact = moment_exact(3, &p).unwrap();
    assert_eq!(MomentTable::new(p.clone()).get(3, 0).unwrap(), exact);
    let q = moment_quadrature(&BigFloat::from_i64(3), &hp(&p), &BigFloat::from_f64(1e-25)).unwrap();
    let e = BigFloat::from_rational(&exact);
    assert!(((q.value - e.clone()) / e).abs().to_f64() < 1e-15);
    // double precision reaches the same value at a looser tolerance
    let q = moment_quadrature(&3.0, &p.to_scalar::<f64>(), &1e-11).unwrap();
    assert!((q.value - exact.to_f64()).abs() / exact.to_f64() < 1e-10);
}

#[test]
fn fractional_moment_is_stable() {
    let p = hp(&default_grid()[13]);
    let half = BigFloat::from_ratio(1, 2);
    let a = moment_quadrature(&half, &p, &BigFloat::from_f64(1e-20)).unwrap();
    let b = moment_quadrature(&half, &p, &BigFloat::from_f64(1e-35)).unwrap();
    assert!((a.value - b.value).abs() <= a.error_bound);
    let m0 = moment_quadrature(&BigFloat::zero(), &p, &BigFloat::from_f64(1e-30)).unwrap();
    assert!((m0.value - BigFloat::from_usize(p.n)).abs().to_f64() < 1e-28);
}

#[test]
fn moments_are_positive() {
    for p in default_grid().into_iter().step_by(3) {
        let mut tab = MomentTable::new(p);
        for k in 0..=6 {
            assert!(tab.get(k, 0).unwrap() > Rational::zero());
        }
    }
}

#[test]
fn integrals_match_quadrature() {
    let p = derive_params(3, r(1, 2), r(2, 1), r(1, 2), r(1, 1)).unwrap();
    let ph = hp(&p);
    let tol = BigFloat::from_f64(1e-30);
    for (s, t, k) in [(0, 0, 0), (2, 2, 0), (1, 2, 0), (2, 3, 1), (3, 2, 2), (1, 1, 4)] {
        let q = ist_quadrature(s, t, &BigFloat::from_usize(k), &ph, &tol).unwrap();
        let e = BigFloat::from_rational(&ist_exact(s, t, k, &p).unwrap());
        assert!((q.value - e).abs().to_f64() < 1e-28, "({s},{t},{k})");
    }
    // I_{n−1,n}(2) = 2(t−T)² dm₂/dT
    let q = ist_quadrature(2, 3, &BigFloat::from_i64(2), &ph, &tol).unwrap();
    let d = BigFloat::from_rational(&ist_dbi(2, &p).unwrap());
    assert!((q.value - d).abs().to_f64() < 1e-28);
}

#[test]
fn covariance_vanishes_at_k0_and_follows_t_derivative() {
    for p in default_grid() {
        assert!(covariance_r(0, &p).unwrap().is_zero());
        for k in 1..=3 {
            assert_eq!(covariance_r(k, &p).unwrap(), ist_dbi(k, &p).unwrap());
        }
    }
}

#[test]
fn t_derivative_by_central_difference() {
    for p in default_grid().into_iter().step_by(7) {
        let h = p.horizon.clone().unwrap();
        let step = 1e-4;
        let at = |dt: f64| {
            let bt = h.big_t.to_f64() + dt;
            let q = derive_params(p.n, p.alpha.to_f64(), h.a.to_f64(), h.t.to_f64(), bt).unwrap();
            let mut tab = MomentTable::new(q);
            tab.get(3, 0).unwrap()
        };
        let fd = (at(step) - at(-step)) / (2.0 * step);
        let want = covariance_r(3, &p).unwrap().to_f64() / (2.0 * (h.t.to_f64() - h.big_t.to_f64()).powi(2));
        assert!(((fd - want) / want).abs() < 1e-6, "{fd} {want}");
    }
}

#[test]
fn covariance_by_double_integral() {
    // κ(R₁, R) = ∫∫ x (x−y) K(x,y) K(y,x) dx dy
    let p = derive_params(1, 1.0, 2.0, 0.5, 1.0).unwrap();
    let ctx = KernelContext::new(p.clone());
    let o = QuadOptions::new(p.alpha, p.beta, 1e-11);
    let v = integrate_product_2d(|x, y| Ok(x * (x - y) * ctx.kernel_sum(x, y)? * ctx.kernel_sum(y, x)?), &o, &o).unwrap();
    let pr = derive_params(1, r(1, 1), r(2, 1), r(1, 2), r(1, 1)).unwrap();
    let want = covariance_r(1, &pr).unwrap().to_f64();
    assert!((v.value - want).abs() / want.abs() < 1e-8, "{} {want}", v.value);
}

#[test]
fn inverse_moment_by_quadrature() {
    for (n, al, c, be) in [(1, r(1, 1), r(1, 1), r(1, 1)), (3, r(2, 1), r(1, 2), r(2, 1)), (2, r(1, 2), r(2, 3), r(8, 3))] {
        let p = hp(&EnsembleParams::from_beta_c(n, al, be, c).unwrap());
        let closed = inverse_moment(&p).unwrap();
        let q = moment_quadrature(&BigFloat::from_i64(-1), &p, &BigFloat::from_f64(1e-30)).unwrap();
        assert!(((closed.clone() - q.value) / closed).abs().to_f64() < 1e-25);
    }
    let p = EnsembleParams::from_beta_c(2, 0.0, 1.0, 1.0).unwrap();
    assert!(matches!(inverse_moment(&p), Err(nsbp::Error::Unsupported(_))));
}

#[test]
fn compact_recurrence_with_t_derivatives() {
    for p in default_grid().into_iter().step_by(4) {
        for k in 0..=2 {
            let res = recurrence_r1_residual(k, &p, rabs).unwrap();
            assert!(res.value.is_zero(), "k={k} {p:?}");
            assert!(!res.scale.is_zero());
        }
    }
}

#[test]
fn compact_recurrence_as_typeset_does_not_close() {
    for p in default_grid().into_iter().step_by(4) {
        let res = recurrence_r1_printed_residual(0, &p, rabs).unwrap();
        assert!(!res.value.is_zero());
    }
}

#[test]
fn integral_relations_behind_the_recurrences() {
    for p in default_grid().into_iter().step_by(3) {
        for k in 2..=4 {
            for (i, res) in tk_residuals(k, &p, rabs).unwrap().iter().enumerate() {
                assert!(res.value.is_zero(), "relation {i}, k={k} {p:?}");
            }
        }
    }
}

#[test]
fn appendix_relations_exact_and_quadrature_routes_agree() {
    // whatever the printed relations evaluate to, both I-value routes must give it
    let p = derive_params(2, r(1, 1), r(2, 1), r(1, 2), r(1, 1)).unwrap();
    let exact = appendix_a2_residuals(2, &p, rabs).unwrap();
    let ph = hp(&p);
    let tol = BigFloat::from_f64(1e-30);
    let rels = appendix_a2_relations(2, &ph).unwrap();
    let mut ist = |s: usize, t: usize, k: usize| Ok(ist_quadrature(s, t, &BigFloat::from_usize(k), &ph, &tol)?.value);
    for (rel, e) in rels.iter().zip(&exact) {
        let q = evaluate_relation(rel, &mut ist, |x: &BigFloat| x.abs()).unwrap();
        let e_val = BigFloat::from_rational(&e.value);
        assert!((q.value - e_val).abs() <= q.scale * BigFloat::from_f64(1e-25));
    }
}

fn grid_rational() -> impl Strategy<Value = Rational> {
    (1i64..30, 1i64..8).prop_map(|(p, q)| r(p, q))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn recurrence_agrees_with_functional(n in 1usize..5, a in 0i64..12, c in grid_rational(), be in grid_rational(), k in 3usize..6) {
        let p = EnsembleParams::from_beta_c(n, r(a, 4), be, c).unwrap();
        let mut tab = MomentTable::new(p.clone());
        prop_assert_eq!(tab.get(k, 0).unwrap(), moment_exact(k, &p).unwrap());
    }
}
