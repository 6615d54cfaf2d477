//! Correlation kernel K(x,y) = Σ_{j<n} Q_j(x) P_j(y), its Christoffel-Darboux
//! compression, the confluent diagonal, and the derivative identity for
//! B_{x,y} = 1 + x∂_x + y∂_y.

use crate::error::{Error, Result};
use crate::moments::Residual;
use crate::mop::{basis_omega, type_i_constant, typei_function, typeii_poly, TypeIFunction};
use crate::params::EnsembleParams;
use crate::poly::Poly;
use crate::scalar::{Real, Scalar};

/// Polynomial families up to degree n+1 for one parameter set.
#[derive(Clone, Debug)]
pub struct KernelContext<S> {
    pub params: EnsembleParams<S>,
    qs: Vec<TypeIFunction<S>>,
    /// x·Q_j'(x), exact in the two-weight basis.
    xdq: Vec<TypeIFunction<S>>,
    ps: Vec<Poly<S>>,
    /// x·P_j'(x).
    xdp: Vec<Poly<S>>,
}

impl<S: Scalar> KernelContext<S> {
    pub fn new(params: EnsembleParams<S>) -> Self {
        let deg = params.n + 1;
        Self::with_degree(params, deg)
    }

    /// Context holding families up to `max(degree, n+1)`.
    pub fn with_degree(params: EnsembleParams<S>, degree: usize) -> Self {
        let top = degree.max(params.n + 1);
        let qs: Vec<_> = (0..=top).map(|j| typei_function(j, &params)).collect();
        let xdq = qs.iter().map(|q| q.x_derivative(&params)).collect();
        let ps: Vec<_> = (0..=top).map(|j| typeii_poly(j, &params)).collect();
        let xdp = ps.iter().map(|p| p.derivative().shift_up()).collect();
        KernelContext { params, qs, xdq, ps, xdp }
    }

    pub fn degree(&self) -> usize {
        self.ps.len() - 1
    }

    pub fn type_i(&self, j: usize) -> &TypeIFunction<S> {
        &self.qs[j]
    }

    pub fn type_ii(&self, j: usize) -> &Poly<S> {
        &self.ps[j]
    }
}

/// Q_j and x·Q_j' at one point, all j, sharing the weight evaluation.
struct QValues<S> {
    q: Vec<S>,
    xdq: Vec<S>,
}

struct PValues<S> {
    p: Vec<S>,
    xdp: Vec<S>,
}

fn check_positive<S: Real>(x: &S) -> Result<()> {
    if !(*x > S::zero()) {
        return Err(Error::Domain(format!("kernel arguments must be positive, got {x}")));
    }
    Ok(())
}

impl<S: Real> KernelContext<S> {
    fn qvals(&self, x: &S) -> Result<QValues<S>> {
        check_positive(x)?;
        let om = basis_omega(&self.params, x)?;
        let e = type_i_constant(&self.params);
        Ok(QValues {
            q: self.qs.iter().map(|f| f.eval_with(x, &om, &e)).collect(),
            xdq: self.xdq.iter().map(|f| f.eval_with(x, &om, &e)).collect(),
        })
    }

    fn pvals(&self, y: &S) -> PValues<S> {
        PValues { p: self.ps.iter().map(|p| p.eval(y)).collect(), xdp: self.xdp.iter().map(|p| p.eval(y)).collect() }
    }

    pub fn q(&self, j: usize, x: &S) -> Result<S> {
        check_positive(x)?;
        self.qs[j].eval(&self.params, x)
    }

    pub fn p(&self, j: usize, x: &S) -> S {
        self.ps[j].eval(x)
    }

    /// Σ_{j<n} Q_j(x) P_j(y).
    pub fn kernel_sum(&self, x: &S, y: &S) -> Result<S> {
        check_positive(y)?;
        let q = self.qvals(x)?;
        let p = self.pvals(y);
        Ok((0..self.params.n).fold(S::zero(), |a, j| a + q.q[j].clone() * p.p[j].clone()))
    }

    /// Four-term numerator of the Christoffel-Darboux form, (x−y)K(x,y).
    fn cd_terms(&self, q: &QValues<S>, p: &PValues<S>) -> [S; 4] {
        let (a, b, c) = (&self.params.alpha, &self.params.beta, &self.params.c);
        let m = self.params.n;
        let mm = S::from_usize(m);
        let pm = |j: i64| if j < 0 { S::zero() } else { p.p[j as usize].clone() };
        let mi = m as i64;
        let b2c = b.sq() * c.clone();
        let b3c = b2c.clone() * b.clone();
        [
            mm.clone() * (mm.clone() + S::one()) / b3c.clone() * q.q[m + 1].clone() * pm(mi - 1),
            mm.clone() * (mm.clone() - S::one()) / b3c * q.q[m].clone() * pm(mi - 2),
            mm.clone() * (c.clone() * (a.clone() + mm) + S::from_i64(2)) / b2c * q.q[m].clone() * pm(mi - 1),
            -(q.q[m - 1].clone() * pm(mi)),
        ]
    }

    /// Seven-term closed form of x·K(x,x).
    fn diag_terms(&self, x: &S, q: &QValues<S>, p: &PValues<S>) -> [S; 7] {
        let (a, b, c) = (&self.params.alpha, &self.params.beta, &self.params.c);
        let n = self.params.n;
        let nn = S::from_usize(n);
        let one = S::one();
        let pm = |j: i64| if j < 0 { S::zero() } else { p.p[j as usize].clone() };
        let ni = n as i64;
        let bx = b.clone() * x.clone();
        [
            nn.clone() * (nn.clone() + one.clone()) / (b.sq() * c.clone()) * q.q[n + 1].clone() * pm(ni),
            nn.clone() * (nn.sq() - one.clone()) / (b.sq().sq() * c.sq()) * q.q[n + 1].clone() * pm(ni - 2),
            nn.clone() * (c.clone() * (a.clone() + nn.clone()) + one.clone()) / (b.clone() * c.clone())
                * q.q[n].clone()
                * pm(ni),
            -(nn.clone() * (c.clone() * (a.clone() + nn.clone() - bx.clone()) + one.clone()) / (b.sq() * c.sq()))
                * q.q[n].clone()
                * pm(ni - 1),
            (c.clone() * nn.clone() * (a.clone() + nn.clone()) + nn.clone()) / (b.clone() * c.clone())
                * q.q[n - 1].clone()
                * pm(ni - 1),
            (a.clone() + c.recip() + S::from_i64(2) * nn.clone() - bx) * q.q[n - 1].clone() * pm(ni),
            (nn.clone() - one) * nn / (b.sq() * c.clone()) * q.q[n - 1].clone() * pm(ni - 2),
        ]
    }

    /// Switch distance below which the compressed form is replaced by a first-order expansion.
    pub fn eps_switch() -> S {
        S::from_i64(2).powi(-((S::bits() / 4) as i64))
    }

    /// Christoffel-Darboux evaluation of K(x,y).
    pub fn kernel_cd(&self, x: &S, y: &S) -> Result<S> {
        check_positive(y)?;
        let q = self.qvals(x)?;
        let d = x.clone() - y.clone();
        let scale = x.clone().abs().max(S::one());
        if d.abs() < Self::eps_switch() * scale {
            // K(x,y) ≈ K(x,x) + (y−x) Σ Q_j(x) P_j'(x)
            let kd = self.kernel_diag(x)?;
            let mut slope = S::zero();
            for j in 0..self.params.n {
                slope = slope + q.q[j].clone() * self.ps[j].derivative().eval(x);
            }
            return Ok(kd - d * slope);
        }
        let p = self.pvals(y);
        let t = self.cd_terms(&q, &p);
        Ok(t.into_iter().fold(S::zero(), |a, v| a + v) / d)
    }

    /// K(x,x) from the confluent closed form.
    pub fn kernel_diag(&self, x: &S) -> Result<S> {
        let q = self.qvals(x)?;
        let p = self.pvals(x);
        let t = self.diag_terms(x, &q, &p);
        Ok(t.into_iter().fold(S::zero(), |a, v| a + v) / x.clone())
    }

    /// B_{x,y}K − [−β(x−y)K + (n/(βc)) Q_n(x)P_{n−1}(y) − β Q_{n−1}(x)P_n(y)].
    pub fn b_operator_residual(&self, x: &S, y: &S) -> Result<Residual<S>> {
        check_positive(y)?;
        let q = self.qvals(x)?;
        let p = self.pvals(y);
        let (b, c) = (&self.params.beta, &self.params.c);
        let n = self.params.n;
        let mut k = S::zero();
        let mut bk = S::zero();
        let mut scale = S::zero();
        for j in 0..n {
            let t0 = q.q[j].clone() * p.p[j].clone();
            let t1 = q.xdq[j].clone() * p.p[j].clone();
            let t2 = q.q[j].clone() * p.xdp[j].clone();
            scale = scale + t0.abs() + t1.abs() + t2.abs();
            k = k + t0.clone();
            bk = bk + t0 + t1 + t2;
        }
        let r1 = -(b.clone() * (x.clone() - y.clone()) * k);
        let r2 = S::from_usize(n) / (b.clone() * c.clone()) * q.q[n].clone() * p.p[n - 1].clone();
        let r3 = -(b.clone() * q.q[n - 1].clone() * p.p[n].clone());
        scale = scale + r1.abs() + r2.abs() + r3.abs();
        Ok(Residual { value: bk - r1 - r2 - r3, scale })
    }

    /// K(x,x) + x d/dx K(x,x) − [(n/(βc)) Q_n P_{n−1} − β Q_{n−1} P_n](x).
    pub fn cdd1_residual(&self, x: &S) -> Result<Residual<S>> {
        let q = self.qvals(x)?;
        let p = self.pvals(x);
        let (b, c) = (&self.params.beta, &self.params.c);
        let n = self.params.n;
        let mut lhs = S::zero();
        let mut scale = S::zero();
        for j in 0..n {
            let t0 = q.q[j].clone() * p.p[j].clone();
            let t1 = q.xdq[j].clone() * p.p[j].clone();
            let t2 = q.q[j].clone() * p.xdp[j].clone();
            scale = scale + t0.abs() + t1.abs() + t2.abs();
            lhs = lhs + t0 + t1 + t2;
        }
        let r2 = S::from_usize(n) / (b.clone() * c.clone()) * q.q[n].clone() * p.p[n - 1].clone();
        let r3 = -(b.clone() * q.q[n - 1].clone() * p.p[n].clone());
        scale = scale + r2.abs() + r3.abs();
        Ok(Residual { value: lhs - r2 - r3, scale })
    }

    /// Relative spread between the direct sum and the compressed forms at (x, y), and at (x, x).
    pub fn cd_discrepancy(&self, x: &S, y: &S) -> Result<(S, S)> {
        let ks = self.kernel_sum(x, y)?;
        let kc = self.kernel_cd(x, y)?;
        let kd = self.kernel_diag(x)?;
        let kxx = self.kernel_sum(x, x)?;
        let rel = |a: S, b: S| (a.clone() - b).abs() / a.abs().max(S::from_f64(1e-300));
        Ok((rel(ks, kc), rel(kxx, kd)))
    }
}
