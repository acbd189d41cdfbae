//! Time integrals of the heat kernel: the fractional kernel
//! `K_s(r) = int_0^inf p(r,t) t^(-1-s) dt` and the logarithmic pair
//! `K1 = int_0^1 p/t dt`, `K2 = int_1^inf p/t dt`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::heat::{HyperbolicHeat, RadialHeat};
use super::terms::TermSum;
use crate::error::{Error, Result};
use crate::quad::{integrate_semiinfinite_scaled, QuadratureConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KernelRoute {
    TimeQuadrature,
    BesselClosedForm,
    TermAlgebra,
    /// Exact elementary formula (Euclidean heat kernel).
    ClosedForm,
    /// The even-dimensional heat-kernel integral over `x > r`.
    RadialIntegral,
}

impl KernelRoute {
    pub fn name(&self) -> &'static str {
        match self {
            KernelRoute::TimeQuadrature => "time_quadrature",
            KernelRoute::BesselClosedForm => "bessel_closed_form",
            KernelRoute::TermAlgebra => "term_algebra",
            KernelRoute::ClosedForm => "closed_form",
            KernelRoute::RadialIntegral => "radial_integral",
        }
    }
}

fn check_s(s: f64) -> Result<()> {
    if !(s > 0.0 && s < 1.0) {
        return Err(Error::domain("frac_kernel", format!("s must lie in (0, 1), got {s}")));
    }
    Ok(())
}

fn check_r(r: f64) -> Result<()> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::domain("kernel", format!("need r > 0, got {r}")));
    }
    Ok(())
}

/// `int_0^T p(r,t) t^(-1-s) dt` with `u = r^2/4t`:
/// `int_{r^2/4T}^inf p(r, r^2/4u) (4u/r^2)^s du / u`.
fn short_time<H: RadialHeat + ?Sized>(heat: &H, r: f64, s: f64, cfg: &QuadratureConfig) -> Result<f64> {
    let split = cfg.split_time;
    let a = r * r / (4.0 * split);
    let ln_scale = (4.0 / (r * r)).ln();
    let f = |u: f64| -> f64 {
        if u <= 0.0 {
            return 0.0;
        }
        let t = r * r / (4.0 * u);
        match heat.eval(r, t) {
            Ok(p) if p == 0.0 => 0.0,
            Ok(p) => p * (s * (ln_scale + u.ln())).exp() / u,
            Err(_) => f64::NAN,
        }
    };
    integrate_semiinfinite_scaled(f, a, 1.0, cfg)?.into_value()
}

/// `int_T^inf p(r,t) t^(-1-s) dt`.
fn long_time<H: RadialHeat + ?Sized>(heat: &H, r: f64, s: f64, cfg: &QuadratureConfig) -> Result<f64> {
    let split = cfg.split_time;
    let nf = heat.dim() as f64;
    // for large r the integrand peaks near t = r / (n - 1)
    let scale = (r / (nf - 1.0).max(1.0)).max(1.0);
    let f = |t: f64| -> f64 {
        match heat.eval(r, t) {
            Ok(p) if p == 0.0 => 0.0,
            Ok(p) => p * (-(1.0 + s) * t.ln()).exp(),
            Err(_) => f64::NAN,
        }
    };
    integrate_semiinfinite_scaled(f, split, scale, cfg)?.into_value()
}

/// `K_s(r)` for an arbitrary radial heat kernel, by time quadrature.
pub fn frac_kernel_time<H: RadialHeat + ?Sized>(heat: &H, s: f64, r: f64, cfg: &QuadratureConfig) -> Result<f64> {
    check_s(s)?;
    check_r(r)?;
    Ok(short_time(heat, r, s, cfg)? + long_time(heat, r, s, cfg)?)
}

/// `K_s(r)` on `H^n` for `n in {3, 5}` from
/// `int t^(-nu-1) e^(-alpha t - beta/t) dt = 2 (beta/alpha)^(-nu/2) K_nu(2 sqrt(alpha beta))`:
/// `K_s = (-1)^m (2m)^nu / (2^m pi^(m+1/2)) D^m [r^-nu K_nu(m r)]`, `nu = s + 1/2`.
pub fn frac_kernel_bessel(n: usize, s: f64, r: f64) -> Result<f64> {
    check_s(s)?;
    check_r(r)?;
    if n != 3 && n != 5 {
        return Err(Error::RouteMismatch {
            route: KernelRoute::BesselClosedForm.name(),
            n,
        });
    }
    let m = (n - 1) / 2;
    let mf = m as f64;
    let nu = s + 0.5;
    let sum = TermSum::bessel_seed(nu, mf)?.hyperbolic_d_pow(m);
    let ln_pref = nu * (2.0 * mf).ln() - mf * 2f64.ln() - (mf + 0.5) * PI.ln();
    let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
    Ok(sign * sum.eval_scaled(r, 1.0, ln_pref)?.0)
}

/// `K_s(r)` on `H^n` by the chosen route.
pub fn frac_kernel(n: usize, s: f64, r: f64, route: KernelRoute, cfg: &QuadratureConfig) -> Result<f64> {
    match route {
        KernelRoute::TimeQuadrature => frac_kernel_time(HyperbolicHeat::shared(n)?, s, r, cfg),
        KernelRoute::BesselClosedForm => frac_kernel_bessel(n, s, r),
        other => Err(Error::RouteMismatch { route: other.name(), n }),
    }
}

/// `K1(r) = int_0^T p/t dt`, the short-time logarithmic kernel.
pub fn log_kernel_short<H: RadialHeat + ?Sized>(heat: &H, r: f64, cfg: &QuadratureConfig) -> Result<f64> {
    check_r(r)?;
    short_time(heat, r, 0.0, cfg)
}

/// `K2(r) = int_T^inf p/t dt`, the long-time logarithmic kernel. `r = 0` is allowed.
pub fn log_kernel_long<H: RadialHeat + ?Sized>(heat: &H, r: f64, cfg: &QuadratureConfig) -> Result<f64> {
    if !(r >= 0.0 && r.is_finite()) {
        return Err(Error::domain("log_kernels", format!("need r >= 0, got {r}")));
    }
    long_time(heat, r, 0.0, cfg)
}

/// `(K1(r), K2(r))` on `H^n`.
pub fn log_kernels(n: usize, r: f64, cfg: &QuadratureConfig) -> Result<(f64, f64)> {
    let heat = HyperbolicHeat::shared(n)?;
    Ok((log_kernel_short(heat, r, cfg)?, log_kernel_long(heat, r, cfg)?))
}

/// Tolerances used for kernel tabulation.
pub fn kernel_config() -> QuadratureConfig {
    QuadratureConfig::relative(1e-10).with_max_subdivisions(4000)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyperbolic::heat::EuclideanHeat;
    use crate::specfun::{gamma, upper_gamma};
    use approx::assert_relative_eq;

    #[test]
    fn euclidean_short_kernel_is_incomplete_gamma() {
        // K1(r) = pi^(-n/2) r^(-n) Gamma(n/2, r^2/4) for the Gaussian kernel
        let cfg = kernel_config();
        for &(n, r) in &[(3usize, 1.0f64), (1, 0.3), (2, 2.5)] {
            let k1 = log_kernel_short(&EuclideanHeat { n }, r, &cfg).unwrap();
            let nf = n as f64;
            let want = PI.powf(-nf / 2.0) * r.powf(-nf) * upper_gamma(nf / 2.0, r * r / 4.0).unwrap();
            assert_relative_eq!(k1, want, max_relative = 1e-10);
        }
    }

    #[test]
    fn euclidean_frac_kernel_is_power_law() {
        // int_0^inf (4 pi t)^(-n/2) e^(-r^2/4t) t^(-1-s) dt = 4^s Gamma(n/2+s) / (pi^(n/2) r^(n+2s))
        let cfg = kernel_config();
        for &(n, s, r) in &[(1usize, 0.5f64, 0.7f64), (2, 0.25, 1.3), (3, 0.75, 2.0)] {
            let nf = n as f64;
            let got = frac_kernel_time(&EuclideanHeat { n }, s, r, &cfg).unwrap();
            let want = 4f64.powf(s) * gamma(nf / 2.0 + s).unwrap() / (PI.powf(nf / 2.0) * r.powf(nf + 2.0 * s));
            assert_relative_eq!(got, want, max_relative = 1e-9);
        }
    }

    #[test]
    fn bessel_and_time_routes_agree() {
        let cfg = kernel_config();
        for &n in &[3usize, 5] {
            for &s in &[0.25, 0.5, 0.75] {
                for &r in &[0.5, 1.0, 2.0, 4.0] {
                    let a = frac_kernel(n, s, r, KernelRoute::TimeQuadrature, &cfg).unwrap();
                    let b = frac_kernel(n, s, r, KernelRoute::BesselClosedForm, &cfg).unwrap();
                    assert_relative_eq!(a, b, max_relative = 1e-7);
                }
            }
        }
    }

    #[test]
    fn route_mismatch() {
        let cfg = kernel_config();
        assert!(matches!(
            frac_kernel(4, 0.5, 1.0, KernelRoute::BesselClosedForm, &cfg),
            Err(Error::RouteMismatch { .. })
        ));
        assert!(frac_kernel(3, 1.5, 1.0, KernelRoute::TimeQuadrature, &cfg).is_err());
        assert!(frac_kernel(3, 0.5, 0.0, KernelRoute::TimeQuadrature, &cfg).is_err());
    }

    #[test]
    fn kernels_positive_and_decreasing() {
        let cfg = kernel_config();
        for n in 2..=5 {
            let mut prev = (f64::INFINITY, f64::INFINITY, f64::INFINITY);
            for k in 0..12 {
                let r = 0.1 * 1.6f64.powi(k);
                let ks = frac_kernel(n, 0.5, r, KernelRoute::TimeQuadrature, &cfg).unwrap();
                let (k1, k2) = log_kernels(n, r, &cfg).unwrap();
                assert!(ks > 0.0 && k1 > 0.0 && k2 > 0.0);
                assert!(ks < prev.0 && k1 < prev.1 && k2 < prev.2, "n={n} r={r}");
                prev = (ks, k1, k2);
            }
        }
    }
}
