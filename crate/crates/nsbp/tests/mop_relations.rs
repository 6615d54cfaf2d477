//! Recurrences, structure relations and differential properties of the type I
//! and type II families, checked as exact identities over the rationals.
//!
//! Type I functions are compared coefficientwise in the basis
//! {w_{α,c}, w_{α+1,c}}; a relation holds iff both coefficient polynomials of
//! the combination vanish.

use nsbp::mop::{reduce_w, typei_function, typei_tilde_coeffs, typeii_poly, typeii_poly_tilde, TypeIFunction};
use nsbp::poly::Poly;
use nsbp::specfun::{binomial, factorial};
use nsbp::{EnsembleParams, Rational, Scalar};
use proptest::prelude::*;

fn r(p: i64, q: i64) -> Rational {
    Rational::from_ratio(p, q)
}

fn n_(n: usize) -> Rational {
    Rational::from_usize(n)
}

/// Shapes (α, c, β).
fn shapes() -> Vec<(Rational, Rational, Rational)> {
    vec![(r(1, 3), r(3, 7), r(5, 2)), (r(0, 1), r(1, 1), r(1, 1)), (r(-1, 2), r(7, 4), r(2, 3)), (r(2, 1), r(1, 5), r(4, 1))]
}

/// Q̃ₙ^{(α+shift,c)} in the basis of w_{α,c}, as a type I function in u
/// (β = c makes x and u coincide).
fn qt(n: i64, shift: usize, alpha: &Rational, c: &Rational) -> TypeIFunction<Rational> {
    if n < 0 {
        return TypeIFunction::zero(0);
    }
    let n = n as usize;
    let mut a1 = Poly::zero();
    let mut a2 = Poly::zero();
    for k in 0..=n {
        let f = (-c.clone()).powi(k as i64) * binomial(&n_(n), k);
        let (r1, r2) = reduce_w(k + shift, alpha);
        a1 = a1 + r1.scale(&f);
        a2 = a2 + r2.scale(&f);
    }
    TypeIFunction { n, a1, a2 }
}

fn u_params(alpha: &Rational, c: &Rational) -> EnsembleParams<Rational> {
    EnsembleParams::from_beta_c(1, alpha.clone(), c.clone(), c.clone()).unwrap()
}

fn pt(n: i64, alpha: &Rational, c: &Rational) -> Poly<Rational> {
    if n < 0 {
        Poly::zero()
    } else {
        typeii_poly_tilde(n as usize, alpha, c)
    }
}

fn px(n: i64, p: &EnsembleParams<Rational>) -> Poly<Rational> {
    if n < 0 {
        Poly::zero()
    } else {
        typeii_poly(n as usize, p)
    }
}

fn qx(n: i64, p: &EnsembleParams<Rational>) -> TypeIFunction<Rational> {
    if n < 0 {
        TypeIFunction::zero(0)
    } else {
        typei_function(n as usize, p)
    }
}

fn combo(terms: &[(Rational, TypeIFunction<Rational>)]) -> TypeIFunction<Rational> {
    terms.iter().fold(TypeIFunction::zero(0), |acc, (s, f)| acc.add(&f.scale(s)))
}

fn pcombo(terms: &[(Rational, Poly<Rational>)]) -> Poly<Rational> {
    terms.iter().fold(Poly::zero(), |acc, (s, f)| acc + f.scale(s))
}

fn one() -> Rational {
    r(1, 1)
}

#[test]
fn four_point_recurrence_type_ii_tilde() {
    for (al, c, _) in shapes() {
        for n in 0..=10i64 {
            let nr = n_(n as usize);
            let c2 = c.clone() * c.clone();
            let lhs = pt(n, &al, &c).shift_up();
            let rhs = pcombo(&[
                (one(), pt(n + 1, &al, &c)),
                ((c.clone() * (n_(2 * n as usize) + al.clone() + one()) + one()) / c2.clone(), pt(n, &al, &c)),
                (nr.clone() * (c.clone() * (al.clone() + nr.clone()) + r(2, 1)) / c.powi(3), pt(n - 1, &al, &c)),
                (nr.clone() * (nr.clone() - one()) / c.powi(4), pt(n - 2, &al, &c)),
            ]);
            assert_eq!(lhs, rhs, "n={n}");
        }
    }
}

#[test]
fn lowering_relations_type_ii() {
    for (al, c, _) in shapes() {
        let al1 = al.clone() + one();
        for n in 0..=8i64 {
            let nr = n_(n as usize);
            // P̃ₙ = (n/c) P̃_{n−1}^{(α+1)} + P̃ₙ^{(α+1)}
            let rhs = pcombo(&[(nr.clone() / c.clone(), pt(n - 1, &al1, &c)), (one(), pt(n, &al1, &c))]);
            assert_eq!(pt(n, &al, &c), rhs, "first relation, n={n}");
            // u P̃ₙ^{(α+1)} = (n/c³) P̃_{n−1} + ((c(n+α+1)+1)/c²) P̃ₙ + P̃_{n+1}
            let rhs = pcombo(&[
                (nr.clone() / c.powi(3), pt(n - 1, &al, &c)),
                ((c.clone() * (nr.clone() + al1.clone()) + one()) / c.powi(2), pt(n, &al, &c)),
                (one(), pt(n + 1, &al, &c)),
            ]);
            assert_eq!(pt(n, &al1, &c).shift_up(), rhs, "second relation, n={n}");
            // P̃ₙ^{(α+1)} = Σ_j n!/j! (−1)^{j+n} c^{j−n} P̃_j
            let terms: Vec<_> = (0..=n)
                .map(|j| {
                    let s = if (j + n) % 2 == 0 { one() } else { -one() };
                    (s * factorial::<Rational>(n as usize) / factorial::<Rational>(j as usize) * c.powi(j - n), pt(j, &al, &c))
                })
                .collect();
            assert_eq!(pt(n, &al1, &c), pcombo(&terms), "third relation, n={n}");
        }
    }
}

#[test]
fn structure_relation_type_ii_tilde() {
    for (al, c, _) in shapes() {
        for n in 0..=8i64 {
            let nr = n_(n as usize);
            let lhs = pt(n, &al, &c).derivative().shift_up();
            let rhs = pcombo(&[
                (nr.clone() * (nr.clone() - one()) / c.powi(3), pt(n - 2, &al, &c)),
                (nr.clone() * (c.clone() * (al.clone() + nr.clone()) + one()) / c.powi(2), pt(n - 1, &al, &c)),
                (nr.clone(), pt(n, &al, &c)),
            ]);
            assert_eq!(lhs, rhs, "n={n}");
        }
    }
}

#[test]
fn derivative_raises_parameter_type_ii() {
    for (al, c, _) in shapes() {
        let al1 = al.clone() + one();
        for n in 1..=8i64 {
            let d = pt(n, &al, &c).derivative();
            assert_eq!(d, pt(n - 1, &al1, &c).scale(&n_(n as usize)), "n={n}");
            // without the factor n the leading coefficients disagree
            if n >= 2 {
                assert_ne!(d, pt(n - 1, &al1, &c), "n={n}");
            }
        }
    }
}

#[test]
fn third_order_ode_type_ii() {
    for (al, c, _) in shapes() {
        for n in 0..=6i64 {
            let y = pt(n, &al, &c);
            let (d1, d2, d3) = (y.derivative(), y.derivative().derivative(), y.derivative().derivative().derivative());
            let u = Poly::x();
            let c2 = c.clone() * c.clone();
            let q1 = u.scale(&c2) + Poly::constant(c.clone() * (n_(n as usize) - al.clone() - r(2, 1)) - one());
            let q2 = Poly::constant(al.clone() + r(2, 1)) - u.scale(&(c.clone() * r(2, 1)));
            let ode = y.scale(&-(c2 * n_(n as usize))) + q1 * d1 + q2 * d2 + d3.shift_up();
            assert!(ode.is_zero(), "n={n}");
        }
    }
}

#[test]
fn type_ii_x_relations() {
    for (al, c, be) in shapes() {
        let p = EnsembleParams::from_beta_c(1, al.clone(), be.clone(), c.clone()).unwrap();
        let bc = be.clone() * c.clone();
        for n in 0..=8i64 {
            let nr = n_(n as usize);
            let rhs = pcombo(&[
                (one(), px(n + 1, &p)),
                ((c.clone() * (al.clone() + n_(2 * n as usize) + one()) + one()) / bc.clone(), px(n, &p)),
                (nr.clone() * (c.clone() * (al.clone() + nr.clone()) + r(2, 1)) / (be.powi(2) * c.clone()), px(n - 1, &p)),
                (nr.clone() * (nr.clone() - one()) / (be.powi(3) * c.clone()), px(n - 2, &p)),
            ]);
            assert_eq!(px(n, &p).shift_up(), rhs, "recurrence, n={n}");
            let rhs = pcombo(&[
                (nr.clone(), px(n, &p)),
                (nr.clone() * (c.clone() * (al.clone() + nr.clone()) + one()) / bc.clone(), px(n - 1, &p)),
                ((nr.clone() - one()) * nr.clone() / (be.powi(2) * c.clone()), px(n - 2, &p)),
            ]);
            assert_eq!(px(n, &p).derivative().shift_up(), rhs, "structure, n={n}");
        }
    }
}

#[test]
fn four_point_recurrence_type_i_tilde() {
    for (al, c, _) in shapes() {
        let c2 = c.clone() * c.clone();
        for n in 0..=8i64 {
            let nr = n_(n as usize);
            let z = combo(&[
                (one(), qt(n, 0, &al, &c).mul_poly(&Poly::x())),
                (-one() / c2.clone(), qt(n + 2, 0, &al, &c)),
                ((c.clone() * (al.clone() + nr.clone() + one()) + r(2, 1)) / c2.clone(), qt(n + 1, 0, &al, &c)),
                (-(c.clone() * (al.clone() + n_(2 * n as usize) + one()) + one()) / c2.clone(), qt(n, 0, &al, &c)),
                (nr.clone() / c.clone(), qt(n - 1, 0, &al, &c)),
            ]);
            assert!(z.is_zero(), "n={n}");
        }
    }
}

#[test]
fn structure_relation_type_i_tilde() {
    for (al, c, _) in shapes() {
        let up = u_params(&al, &c);
        for n in 0..=8i64 {
            let nr = n_(n as usize);
            let z = combo(&[
                (one(), qt(n, 0, &al, &c).x_derivative(&up)),
                (one() / c.clone(), qt(n + 2, 0, &al, &c)),
                (-(c.clone() * (al.clone() + nr.clone() + one()) + one()) / c.clone(), qt(n + 1, 0, &al, &c)),
                (nr + one(), qt(n, 0, &al, &c)),
            ]);
            assert!(z.is_zero(), "n={n}");
        }
    }
}

#[test]
fn parameter_lowering_and_derivative_type_i() {
    for (al, c, _) in shapes() {
        let up = u_params(&al, &c);
        for n in 0..=8i64 {
            // Q̃ₙ^{(α+1)} − Q̃ₙ/c + Q̃_{n+1}/c = 0
            let z = combo(&[
                (one(), qt(n, 1, &al, &c)),
                (-one() / c.clone(), qt(n, 0, &al, &c)),
                (one() / c.clone(), qt(n + 1, 0, &al, &c)),
            ]);
            assert!(z.is_zero(), "lowering, n={n}");
            // u d/du Q̃ₙ^{(α+1)} = u Q̃_{n+1}
            let z = combo(&[
                (one(), qt(n, 1, &al, &c).x_derivative(&up)),
                (-one(), qt(n + 1, 0, &al, &c).mul_poly(&Poly::x())),
            ]);
            assert!(z.is_zero(), "derivative, n={n}");
        }
    }
}

#[test]
fn mixed_recurrence_type_i() {
    // u Q̃ₙ + Q̃_{n+1}^{(α+1)}/c − ((c(α+n+1)+1)/c) Q̃ₙ^{(α+1)} + n Q̃_{n−1}^{(α+1)} = 0
    for (al, c, _) in shapes() {
        for n in 0..=8i64 {
            let nr = n_(n as usize);
            let z = combo(&[
                (one(), qt(n, 0, &al, &c).mul_poly(&Poly::x())),
                (one() / c.clone(), qt(n + 1, 1, &al, &c)),
                (-(c.clone() * (al.clone() + nr.clone() + one()) + one()) / c.clone(), qt(n, 1, &al, &c)),
                (nr, qt(n - 1, 1, &al, &c)),
            ]);
            assert!(z.is_zero(), "n={n}");
        }
    }
}

#[test]
fn type_i_x_relations() {
    for (al, c, be) in shapes() {
        let p = EnsembleParams::from_beta_c(1, al.clone(), be.clone(), c.clone()).unwrap();
        for n in 0..=7i64 {
            let (n1, n2) = (n_(n as usize + 1), n_(n as usize + 2));
            let z = combo(&[
                (one(), qx(n, &p).mul_poly(&Poly::x())),
                (-(n1.clone() * n2.clone()) / (be.powi(3) * c.clone()), qx(n + 2, &p)),
                (
                    -(n1.clone() * (c.clone() * (al.clone() + n1.clone()) + r(2, 1))) / (be.powi(2) * c.clone()),
                    qx(n + 1, &p),
                ),
                (-(c.clone() * (al.clone() + n_(2 * n as usize) + one()) + one()) / (be.clone() * c.clone()), qx(n, &p)),
                (-one(), qx(n - 1, &p)),
            ]);
            assert!(z.is_zero(), "recurrence, n={n}");
            let z = combo(&[
                (one(), qx(n, &p).x_derivative(&p)),
                (n1.clone() * n2 / (be.powi(2) * c.clone()), qx(n + 2, &p)),
                (n1.clone() * (c.clone() * (al.clone() + n1.clone()) + one()) / (be.clone() * c.clone()), qx(n + 1, &p)),
                (n1, qx(n, &p)),
            ]);
            assert!(z.is_zero(), "structure, n={n}");
        }
    }
}

#[test]
fn type_i_degrees_follow_stepline() {
    for (al, c, _) in shapes() {
        for n in 0..=10usize {
            let (a1, a2) = typei_tilde_coeffs(n, &al, &c);
            assert!(a1.degree().map_or(true, |d| d <= n.div_ceil(2)), "n={n}");
            assert!(a2.degree().map_or(true, |d| d <= n / 2), "n={n}");
        }
    }
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (1i64..40, 1i64..12).prop_map(|(p, q)| r(p, q))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn recurrences_hold_at_random_parameters(a in (-5i64..30, 1i64..6), c in small_rational(), n in 0usize..6) {
        let al = r(a.0, a.1 * 6);
        prop_assume!(al > r(-1, 1));
        let n = n as i64;
        let nr = n_(n as usize);
        let c2 = c.clone() * c.clone();
        let z = combo(&[
            (one(), qt(n, 0, &al, &c).mul_poly(&Poly::x())),
            (-one() / c2.clone(), qt(n + 2, 0, &al, &c)),
            ((c.clone() * (al.clone() + nr.clone() + one()) + r(2, 1)) / c2.clone(), qt(n + 1, 0, &al, &c)),
            (-(c.clone() * (al.clone() + n_(2 * n as usize) + one()) + one()) / c2.clone(), qt(n, 0, &al, &c)),
            (nr.clone() / c.clone(), qt(n - 1, 0, &al, &c)),
        ]);
        prop_assert!(z.is_zero());
        let lhs = pt(n, &al, &c).shift_up();
        let rhs = pcombo(&[
            (one(), pt(n + 1, &al, &c)),
            ((c.clone() * (n_(2 * n as usize) + al.clone() + one()) + one()) / c2.clone(), pt(n, &al, &c)),
            (nr.clone() * (c.clone() * (al.clone() + nr.clone()) + r(2, 1)) / c.powi(3), pt(n - 1, &al, &c)),
            (nr.clone() * (nr.clone() - one()) / c.powi(4), pt(n - 2, &al, &c)),
        ]);
        prop_assert_eq!(lhs, rhs);
    }
}
