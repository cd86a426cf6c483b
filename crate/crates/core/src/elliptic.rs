//! Weierstrass `wp` for the lattice `Z + tau Z` and the quantities built on it:
//! half-period values `e_k`, the level-2 invariant `t(tau)`, Picard solutions,
//! the half-period reduction sum and the tripling formula for
//! `w(z) = (wp(z) - e1)/(e2 - e1)`.
//!
//! `wp` is summed row by row,
//!
//! ```text
//! wp(z) = -(pi^2/3) E2(tau) + pi^2 * sum_m csc^2(pi (z + m tau)),
//! ```
//!
//! where each row term decays like `|q|^(2|m|)` with `q = exp(i pi tau)`. The
//! branch values `e_k` come from theta constants instead, so `wp(omega_k) = e_k`
//! is a genuine cross-check between two routes.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::orbit::RationalPair;
use crate::params::ComplexValue;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// A point of the upper half-plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TauPoint(Complex64);

impl TauPoint {
    pub fn new(re: f64, im: f64) -> Result<Self> {
        if im > 0.0 && im.is_finite() && re.is_finite() {
            Ok(TauPoint(Complex64::new(re, im)))
        } else {
            Err(Error::PrecisionLoss { imag: im, floor: 0.0 })
        }
    }

    pub fn value(&self) -> Complex64 {
        self.0
    }

    /// Image under the Moebius map of `[[a, b], [c, d]]`.
    pub fn moebius(&self, a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        let w = (self.0 * a as f64 + b as f64) / (self.0 * c as f64 + d as f64);
        TauPoint::new(w.re, w.im)
    }

    /// Half-periods `omega_0..omega_3 = 0, 1/2, tau/2, (1 + tau)/2`.
    pub fn half_periods(&self) -> [Complex64; 4] {
        let tau = self.0;
        [
            Complex64::new(0.0, 0.0),
            Complex64::new(0.5, 0.0),
            tau / 2.0,
            (tau + 1.0) / 2.0,
        ]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EllipticInvariants {
    pub e1: ComplexValue,
    pub e2: ComplexValue,
    pub e3: ComplexValue,
    pub g2: ComplexValue,
    pub g3: ComplexValue,
    pub t: ComplexValue,
}

impl EllipticInvariants {
    pub fn e(&self) -> [Complex64; 3] {
        [self.e1.into(), self.e2.into(), self.e3.into()]
    }

    pub fn t(&self) -> Complex64 {
        self.t.into()
    }
}

/// Numerical thresholds. All evaluation goes through an immutable config.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Elliptic {
    /// Smallest accepted `Im(tau)`.
    pub min_imag: f64,
    /// Distance to the lattice below which `wp` reports a pole.
    pub pole_threshold: f64,
    /// Series truncation, relative to the running sum.
    pub rel_tol: f64,
}

impl Default for Elliptic {
    fn default() -> Self {
        Elliptic {
            min_imag: 0.1,
            pole_threshold: 1e-6,
            rel_tol: 1e-17,
        }
    }
}

// csc^2(pi u) = -4w/(1-w)^2 with w = exp(2 pi i u) chosen so |w| <= 1.
fn csc2(u: Complex64) -> Complex64 {
    let u = if u.im < 0.0 { -u } else { u };
    let w = (2.0 * PI * I * u).exp();
    -4.0 * w / ((1.0 - w) * (1.0 - w))
}

// cos(pi u)/sin^3(pi u) = -4i w(1+w)/(w-1)^3, odd in u.
fn cot_csc2(u: Complex64) -> Complex64 {
    if u.im < 0.0 {
        return -cot_csc2(-u);
    }
    let w = (2.0 * PI * I * u).exp();
    let d = w - 1.0;
    -4.0 * I * w * (1.0 + w) / (d * d * d)
}

impl Elliptic {
    fn check_tau(&self, tau: &TauPoint) -> Result<()> {
        let im = tau.0.im;
        if im < self.min_imag {
            return Err(Error::PrecisionLoss {
                imag: im,
                floor: self.min_imag,
            });
        }
        Ok(())
    }

    /// Reduces `z` to `a + b tau` with `a, b` in `[-1/2, 1/2)` and checks the
    /// distance to the nearest lattice point.
    fn reduce(&self, z: Complex64, tau: &TauPoint) -> Result<Complex64> {
        let tau = tau.0;
        let b = z.im / tau.im;
        let a = z.re - b * tau.re;
        let a = a - (a + 0.5).floor();
        let b = b - (b + 0.5).floor();
        let r = Complex64::new(a, 0.0) + tau * b;
        let mut dist = f64::INFINITY;
        for m in -1..=1 {
            for n in -1..=1 {
                dist = dist.min((r - (m as f64) - tau * n as f64).norm());
            }
        }
        if dist < self.pole_threshold {
            return Err(Error::PoleProximity { distance: dist });
        }
        Ok(r)
    }

    fn row_sum(&self, z: Complex64, tau: Complex64, term: fn(Complex64) -> Complex64) -> Complex64 {
        let mut sum = term(z);
        for m in 1.. {
            let up = term(z + tau * m as f64);
            let down = term(z - tau * m as f64);
            sum += up + down;
            if up.norm() + down.norm() <= self.rel_tol * sum.norm().max(1e-300) || m > 10_000 {
                break;
            }
        }
        sum
    }

    fn eisenstein_e2(&self, tau: Complex64) -> Complex64 {
        let q2 = (2.0 * PI * I * tau).exp();
        let mut sum = Complex64::new(0.0, 0.0);
        let mut qn = q2;
        for n in 1.. {
            let term = qn * n as f64 / (1.0 - qn);
            sum += term;
            if term.norm() <= self.rel_tol || n > 100_000 {
                break;
            }
            qn *= q2;
        }
        1.0 - 24.0 * sum
    }

    pub fn wp(&self, z: Complex64, tau: &TauPoint) -> Result<Complex64> {
        self.check_tau(tau)?;
        let r = self.reduce(z, tau)?;
        let rows = self.row_sum(r, tau.0, csc2);
        Ok(-(PI * PI / 3.0) * self.eisenstein_e2(tau.0) + PI * PI * rows)
    }

    pub fn wp_prime(&self, z: Complex64, tau: &TauPoint) -> Result<Complex64> {
        self.check_tau(tau)?;
        let r = self.reduce(z, tau)?;
        let rows = self.row_sum(r, tau.0, cot_csc2);
        Ok(-2.0 * PI * PI * PI * rows)
    }

    /// `theta_2^4, theta_3^4, theta_4^4` at nome `q = exp(i pi tau)`.
    fn theta4_constants(&self, tau: Complex64) -> [Complex64; 3] {
        let q = (PI * I * tau).exp();
        let q_quarter = (PI * I * tau / 4.0).exp();
        let one = Complex64::new(1.0, 0.0);
        let (mut th2, mut th3, mut th4) = (one, one, one);
        for n in 1..10_000i64 {
            let sq = q.powi((n * n) as i32);
            let pr = q.powi((n * (n + 1)) as i32);
            th2 += pr;
            th3 += 2.0 * sq;
            th4 += if n % 2 == 0 { 2.0 * sq } else { -2.0 * sq };
            if sq.norm() < self.rel_tol && pr.norm() < self.rel_tol {
                break;
            }
        }
        let th2 = 2.0 * q_quarter * th2;
        [th2.powi(4), th3.powi(4), th4.powi(4)]
    }

    pub fn invariants_at(&self, tau: &TauPoint) -> Result<EllipticInvariants> {
        self.check_tau(tau)?;
        let [t2, t3, t4] = self.theta4_constants(tau.0);
        let c = PI * PI / 3.0;
        let e1 = c * (t3 + t4);
        let e2 = -c * (t2 + t3);
        let e3 = c * (t2 - t4);
        let g2 = 2.0 * (e1 * e1 + e2 * e2 + e3 * e3);
        let g3 = 4.0 * e1 * e2 * e3;
        let t = (e3 - e1) / (e2 - e1);
        let scale = e1.norm().max(e2.norm()).max(e3.norm());
        let gap = (e1 - e2).norm().min((e1 - e3).norm()).min((e2 - e3).norm());
        if gap < 1e-12 * scale || t.norm() < 1e-14 || (t - 1.0).norm() < 1e-14 {
            return Err(Error::PrecisionLoss {
                imag: tau.0.im,
                floor: self.min_imag,
            });
        }
        Ok(EllipticInvariants {
            e1: e1.into(),
            e2: e2.into(),
            e3: e3.into(),
            g2: g2.into(),
            g3: g3.into(),
            t: t.into(),
        })
    }

    /// `w(z) = (wp(z) - e1)/(e2 - e1)`.
    pub fn w(&self, z: Complex64, tau: &TauPoint, inv: &EllipticInvariants) -> Result<Complex64> {
        let [e1, e2, _] = inv.e();
        Ok((self.wp(z, tau)? - e1) / (e2 - e1))
    }

    /// The point `(t, y)` of the Picard solution labelled by `v` at `tau`.
    pub fn picard_eval(&self, v: &RationalPair, tau: &TauPoint) -> Result<(Complex64, Complex64)> {
        if v.is_half_integer() {
            return Err(Error::HalfPeriod(v.to_string()));
        }
        let inv = self.invariants_at(tau)?;
        let p = picard_argument(v, tau);
        Ok((inv.t(), self.w(p, tau, &inv)?))
    }

    /// `sum_k alpha_k wp'(mu + nu tau + omega_k)`.
    pub fn reduction_residual(
        &self,
        alpha: &[f64; 4],
        v: &RationalPair,
        tau: &TauPoint,
    ) -> Result<Complex64> {
        let p = picard_argument(v, tau);
        let mut sum = Complex64::new(0.0, 0.0);
        for (a, w) in alpha.iter().zip(tau.half_periods()) {
            let d = self.wp_prime(p + w, tau)?;
            sum += *a * d;
        }
        Ok(sum)
    }

    /// `(y, t, f(y, t), g(y, t))` with `y = w(z)`.
    pub fn tripling_parts(
        &self,
        z: Complex64,
        tau: &TauPoint,
    ) -> Result<(Complex64, Complex64, Complex64, Complex64)> {
        let inv = self.invariants_at(tau)?;
        let t = inv.t();
        let y = self.w(z, tau, &inv)?;
        Ok((y, t, tripling_f(y, t), tripling_g(y, t)))
    }

    /// Both sides of `w(3z) = y (f/g)^2`.
    pub fn triple_check(&self, z: Complex64, tau: &TauPoint) -> Result<(Complex64, Complex64)> {
        let inv = self.invariants_at(tau)?;
        let (y, _, f, g) = self.tripling_parts(z, tau)?;
        let scale = f.norm().max(1.0);
        if g.norm() < 1e-12 * scale {
            return Err(Error::ZeroDenominator(g.norm()));
        }
        let lhs = self.w(3.0 * z, tau, &inv)?;
        let ratio = f / g;
        Ok((lhs, y * ratio * ratio))
    }
}

pub fn picard_argument(v: &RationalPair, tau: &TauPoint) -> Complex64 {
    let mu = *v.mu().numer() as f64 / *v.mu().denom() as f64;
    let nu = *v.nu().numer() as f64 / *v.nu().denom() as f64;
    Complex64::new(mu, 0.0) + tau.0 * nu
}

/// `f = y^4 + 4yt - 6y^2 t - 3t^2 + 4yt^2`.
pub fn tripling_f(y: Complex64, t: Complex64) -> Complex64 {
    y.powi(4) + 4.0 * y * t - 6.0 * y * y * t - 3.0 * t * t + 4.0 * y * t * t
}

/// `g = 4y^3 t - 6y^2 t + 4y^3 - 3y^4 + t^2`.
pub fn tripling_g(y: Complex64, t: Complex64) -> Complex64 {
    4.0 * y.powi(3) * t - 6.0 * y * y * t + 4.0 * y.powi(3) - 3.0 * y.powi(4) + t * t
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn tau(re: f64, im: f64) -> TauPoint {
        TauPoint::new(re, im).unwrap()
    }

    // Direct lattice sum, symmetric over a square window, for small checks.
    fn wp_brute(z: Complex64, tau: Complex64) -> Complex64 {
        let mut s = 1.0 / (z * z);
        let r = 120;
        for m in -r..=r {
            for n in -r..=r {
                if m == 0 && n == 0 {
                    continue;
                }
                let w = tau * n as f64 + m as f64;
                s += 1.0 / ((z - w) * (z - w)) - 1.0 / (w * w);
            }
        }
        s
    }

    #[test]
    fn csc_forms_match_trig() {
        for u in [c(0.3, 0.2), c(-0.1, -0.7), c(0.45, 0.0), c(0.2, -1.5)] {
            let s = (PI * u).sin();
            assert!((csc2(u) - 1.0 / (s * s)).norm() < 1e-12 * (1.0 / (s * s)).norm());
            let ref_ = (PI * u).cos() / (s * s * s);
            assert!((cot_csc2(u) - ref_).norm() < 1e-11 * ref_.norm().max(1.0));
        }
    }

    #[test]
    fn matches_eisenstein_lattice_sum() {
        let e = Elliptic::default();
        let t = tau(0.1, 1.0);
        let z = c(0.23, 0.31);
        let got = e.wp(z, &t).unwrap();
        let want = wp_brute(z, t.value());
        // Truncated double sum converges only like 1/R.
        assert!((got - want).norm() < 5e-3 * want.norm(), "{got} vs {want}");
    }

    #[test]
    fn half_period_values_agree_with_theta_route() {
        let e = Elliptic::default();
        for t in [tau(0.0, 1.0), tau(0.3, 1.1), tau(-0.4, 0.6), tau(1.7, 2.5)] {
            let inv = e.invariants_at(&t).unwrap();
            let w = t.half_periods();
            for (k, ek) in inv.e().into_iter().enumerate() {
                let direct = e.wp(w[k + 1], &t).unwrap();
                assert!((direct - ek).norm() < 1e-11 * ek.norm().max(1.0), "k={k}");
            }
        }
    }

    #[test]
    fn invariants_examples() {
        let e = Elliptic::default();
        let inv = e.invariants_at(&tau(0.0, 1.0)).unwrap();
        let [e1, e2, e3] = inv.e();
        assert!((e1 + e2 + e3).norm() < 1e-12);
        let g2: Complex64 = inv.g2.into();
        let g3: Complex64 = inv.g3.into();
        assert!((4.0 * e1.powi(3) - g2 * e1 - g3).norm() < 1e-10);

        let a = e.invariants_at(&tau(0.0, 2.0)).unwrap().t();
        let b = e.invariants_at(&tau(2.0, 2.0)).unwrap().t();
        assert!((a - b).norm() < 1e-10);
    }

    #[test]
    fn square_lattice_t_is_half() {
        // Square lattice: e3 = 0 and e2 = -e1.
        let inv = Elliptic::default().invariants_at(&tau(0.0, 1.0)).unwrap();
        assert!((inv.t() - 0.5).norm() < 1e-13);
    }

    #[test]
    fn domain_guards() {
        let e = Elliptic::default();
        assert!(matches!(
            e.invariants_at(&tau(0.0, 0.05)),
            Err(Error::PrecisionLoss { .. })
        ));
        assert!(TauPoint::new(0.0, -1.0).is_err());
        let t = tau(0.2, 1.3);
        assert!(matches!(e.wp(c(0.0, 0.0), &t), Err(Error::PoleProximity { .. })));
        assert!(matches!(
            e.wp(c(1.0, 0.0) + t.value() * 2.0 + 1e-8, &t),
            Err(Error::PoleProximity { .. })
        ));
    }

    #[test]
    fn evenness_and_half_period_value() {
        let e = Elliptic::default();
        let t = tau(0.35, 0.9);
        let z = c(0.17, 0.41);
        assert!((e.wp(z, &t).unwrap() - e.wp(-z, &t).unwrap()).norm() < 1e-12 * e.wp(z, &t).unwrap().norm());
        let inv = e.invariants_at(&t).unwrap();
        assert!((e.wp(c(0.5, 0.0), &t).unwrap() - inv.e()[0]).norm() < 1e-11);
    }

    #[test]
    fn picard_quarter_period_is_sqrt_t() {
        let e = Elliptic::default();
        let v = RationalPair::from_ints((1, 4), (0, 1));
        let (t, y) = e.picard_eval(&v, &tau(0.0, 2.0)).unwrap();
        assert!((y * y - t).norm() < 1e-8);
    }

    #[test]
    fn picard_third_period_on_quartic_d() {
        let e = Elliptic::default();
        let v = RationalPair::from_ints((1, 3), (1, 3));
        let (t, y) = e.picard_eval(&v, &tau(0.0, 1.0)).unwrap();
        let d = 3.0 * y.powi(4) - 4.0 * t * y.powi(3) - 4.0 * y.powi(3) + 6.0 * t * y * y - t * t;
        assert!(d.norm() < 1e-7, "{d}");
    }

    #[test]
    fn picard_rejects_half_periods() {
        let e = Elliptic::default();
        for (mu, nu) in [((1, 2), (0, 1)), ((0, 1), (0, 1)), ((1, 2), (1, 2)), ((3, 2), (1, 1))] {
            let v = RationalPair::from_ints(mu, nu);
            assert!(matches!(e.picard_eval(&v, &tau(0.0, 1.0)), Err(Error::HalfPeriod(_))));
        }
    }

    #[test]
    fn reduction_residual_examples() {
        let e = Elliptic::default();
        let v = RationalPair::from_ints((1, 4), (0, 1));
        let zero = e.reduction_residual(&[0.0; 4], &v, &tau(0.0, 1.0)).unwrap();
        assert_eq!(zero, c(0.0, 0.0));
        for t in [tau(0.0, 1.0), tau(1.0, 2.0), tau(0.0, 3.0)] {
            let r = e.reduction_residual(&[1.5, 1.5, -0.25, -0.25], &v, &t).unwrap();
            assert!(r.norm() < 1e-8, "{r}");
        }
        let r = e.reduction_residual(&[1.0, 2.0, 3.0, 4.0], &v, &tau(0.0, 1.0)).unwrap();
        assert!(r.norm() > 1e-3);
    }

    #[test]
    fn tripling_at_order_three_and_six_points() {
        let e = Elliptic::default();
        let t = tau(0.25, 1.2);
        let z = (t.value() + 1.0) / 3.0;
        let (_, _, _, g) = e.tripling_parts(z, &t).unwrap();
        assert!(g.norm() < 1e-7, "{g}");
        assert!(e.triple_check(z, &t).is_err());

        // 3z = 1/2 and w(1/2) = 0, so y f^2 = 0: the point lies on f = 0.
        let (y, _, f, g) = e.tripling_parts(c(1.0 / 6.0, 0.0), &t).unwrap();
        assert!(f.norm() < 1e-7 * g.norm(), "f = {f}");
        assert!(y.norm() > 1e-3);
    }
}
