//! Heat kernels `p_n(r, t)` on hyperbolic space and on Euclidean space.

use std::f64::consts::PI;
use std::sync::OnceLock;

use super::series::{cosh_m1, GaussianDerivative};
use super::terms::{ln_sinh, TermSum};
use crate::error::{Error, Result};
use crate::quad::{integrate_with_breaks, QuadratureConfig};
use crate::specfun::gamma_ln;

/// Below this radius the `w`-series replaces the closed-form expansion.
const SERIES_RADIUS: f64 = 0.5;

/// A radial heat kernel on an `n`-dimensional model space.
pub trait RadialHeat: Sync {
    fn dim(&self) -> usize;
    /// `p(r, t)` for `r >= 0`, `t > 0`.
    fn eval(&self, r: f64, t: f64) -> Result<f64>;
    /// Density of the volume element in geodesic polar coordinates,
    /// without the sphere area.
    fn radial_density(&self, r: f64) -> f64;
}

/// `(4 pi t)^(-n/2) e^(-r^2/4t)`.
#[derive(Debug, Clone, Copy)]
pub struct EuclideanHeat {
    pub n: usize,
}

impl RadialHeat for EuclideanHeat {
    fn dim(&self) -> usize {
        self.n
    }

    fn eval(&self, r: f64, t: f64) -> Result<f64> {
        check_rt(r, t)?;
        let nf = self.n as f64;
        Ok((-0.5 * nf * (4.0 * PI * t).ln() - r * r / (4.0 * t)).exp())
    }

    fn radial_density(&self, r: f64) -> f64 {
        r.powi(self.n as i32 - 1)
    }
}

fn check_rt(r: f64, t: f64) -> Result<()> {
    if !(r >= 0.0 && r.is_finite()) {
        return Err(Error::domain("heat_kernel", format!("need r >= 0, got {r}")));
    }
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::domain("heat_kernel", format!("need t > 0, got {t}")));
    }
    Ok(())
}

/// Heat kernel of `H^n`, `2 <= n <= 5`.
#[derive(Debug, Clone)]
pub struct HyperbolicHeat {
    n: usize,
    m: usize,
    /// `D^m` of the seed, closed form.
    closed: TermSum,
    /// `D^m` of the seed, small-radius series.
    series: GaussianDerivative,
    /// `ln` of the constant prefactor magnitude.
    ln_pref: f64,
    sign: f64,
    cfg: QuadratureConfig,
}

impl HyperbolicHeat {
    pub fn new(n: usize) -> Result<Self> {
        if !(2..=5).contains(&n) {
            return Err(Error::domain("heat_kernel", format!("dimension must be in 2..=5, got {n}")));
        }
        let cfg = QuadratureConfig::relative(1e-12).with_abs_tol(0.0);
        if n % 2 == 1 {
            // (-1)^m / (2^m pi^m) (4 pi t)^(-1/2) e^(-m^2 t) D^m e^(-r^2/4t)
            let m = (n - 1) / 2;
            let mf = m as f64;
            Ok(HyperbolicHeat {
                n,
                m,
                closed: TermSum::gaussian(mf * mf).hyperbolic_d_pow(m),
                series: GaussianDerivative::new(m, false),
                ln_pref: -mf * (2.0 * PI).ln() - 0.5 * (4.0 * PI).ln(),
                sign: if m % 2 == 0 { 1.0 } else { -1.0 },
                cfg,
            })
        } else {
            // (-1)^m / (2^(m+5/2) pi^(m+3/2)) t^(-3/2) e^(-(2m+1)^2 t/4)
            //   int_r^inf g_m(x) / sqrt(cosh x - cosh r) dx,
            // g_m = sinh x D^m ((x / sinh x) e^(-x^2/4t))
            let m = (n - 2) / 2;
            let mf = m as f64;
            Ok(HyperbolicHeat {
                n,
                m,
                closed: TermSum::gaussian_over_sinh(0.0).hyperbolic_d_pow(m),
                series: GaussianDerivative::new(m, true),
                ln_pref: -(mf + 2.5) * 2f64.ln() - (mf + 1.5) * PI.ln(),
                sign: if m % 2 == 0 { 1.0 } else { -1.0 },
                cfg,
            })
        }
    }

    /// Shared instance for dimension `n`.
    pub fn shared(n: usize) -> Result<&'static HyperbolicHeat> {
        static CACHE: [OnceLock<HyperbolicHeat>; 4] = [OnceLock::new(), OnceLock::new(), OnceLock::new(), OnceLock::new()];
        if !(2..=5).contains(&n) {
            return Err(Error::domain("heat_kernel", format!("dimension must be in 2..=5, got {n}")));
        }
        let slot = &CACHE[n - 2];
        if let Some(h) = slot.get() {
            return Ok(h);
        }
        let h = HyperbolicHeat::new(n)?;
        Ok(slot.get_or_init(|| h))
    }

    /// Replace the inner quadrature tolerances (even dimensions only).
    pub fn with_config(mut self, cfg: QuadratureConfig) -> Self {
        self.cfg = cfg;
        self
    }

    /// `e^ln_scale p_n(r, t)`, with the scale applied inside the exponentials
    /// so that values far below the double range stay representable.
    pub fn eval_scaled(&self, r: f64, t: f64, ln_scale: f64) -> Result<f64> {
        check_rt(r, t)?;
        if self.n % 2 == 1 {
            self.odd(r, t, ln_scale)
        } else {
            self.even(r, t, ln_scale)
        }
    }

    /// `e^ln_factor * D^m(seed)(x)`; the series covers small `x`.
    fn d_seed(&self, x: f64, t: f64, ln_factor: f64) -> Result<f64> {
        if x < SERIES_RADIUS {
            let e = (ln_factor - x * x / (4.0 * t)).exp();
            if e == 0.0 {
                return Ok(0.0);
            }
            Ok(self.series.poly(cosh_m1(x), 0.5 / t) * e)
        } else {
            Ok(self.closed.eval_scaled(x, t, ln_factor)?.0)
        }
    }

    fn odd(&self, r: f64, t: f64, ln_scale: f64) -> Result<f64> {
        let mf = self.m as f64;
        let ln_f = self.ln_pref - 0.5 * t.ln() + ln_scale;
        let v = if r < SERIES_RADIUS {
            self.d_seed(r, t, ln_f - mf * mf * t)?
        } else {
            // the closed form carries e^(-m^2 t) itself
            self.d_seed(r, t, ln_f)?
        };
        Ok(self.sign * v)
    }

    fn even(&self, r: f64, t: f64, ln_scale: f64) -> Result<f64> {
        let mf = self.m as f64;
        let ln_f = self.ln_pref - 1.5 * t.ln() - (2.0 * mf + 1.0).powi(2) * t / 4.0 + ln_scale;
        // x = r + u^2; cosh x - cosh r = 2 sinh(r + u^2/2) sinh(u^2/2)
        let integrand = |u: f64| -> f64 {
            let v = u * u;
            let x = r + v;
            let half = 0.5 * v;
            // 2u / sqrt(2 sinh(r + v/2) sinh(v/2)), with u / sqrt(sinh(v/2)) kept finite
            let ratio = if half < 1e-8 { 2f64.sqrt() } else { u / half.sinh().sqrt() };
            let ln_w = ratio.ln() + 2f64.ln() - 0.5 * (2f64.ln() + ln_sinh(r + half)) + ln_sinh(x) + ln_f;
            self.d_seed(x, t, ln_w).unwrap_or(f64::NAN)
        };
        // the integrand lives on x <= max(r, t) + a Gaussian width
        let reach = r.max(t) + 2.0 * (80.0 * t).sqrt() + 6.0;
        let u_max = (reach - r).sqrt();
        let mut breaks = Vec::new();
        let width = (2.0 * t / r.max(1e-3)).min(t.sqrt());
        for k in 0..6 {
            let d = width * 4f64.powi(k);
            if d < reach - r {
                breaks.push(d.sqrt());
            }
        }
        if t > r {
            breaks.push((t - r).sqrt());
        }
        let q = integrate_with_breaks(integrand, 0.0, u_max, &breaks, &self.cfg)?.into_value()?;
        Ok(self.sign * q)
    }
}

impl RadialHeat for HyperbolicHeat {
    fn dim(&self) -> usize {
        self.n
    }

    fn eval(&self, r: f64, t: f64) -> Result<f64> {
        self.eval_scaled(r, t, 0.0)
    }

    fn radial_density(&self, r: f64) -> f64 {
        r.sinh().powi(self.n as i32 - 1)
    }
}

/// `p_n(r, t)` on `H^n`, `n in 2..=5`.
pub fn heat_kernel(n: usize, r: f64, t: f64) -> Result<f64> {
    HyperbolicHeat::shared(n)?.eval(r, t)
}

/// `int p_n(r, t) dvol` by radial quadrature; equal to one.
pub fn heat_mass(n: usize, t: f64) -> Result<f64> {
    let h = HyperbolicHeat::shared(n)?;
    let cfg = QuadratureConfig::relative(1e-11);
    let reach = (n as f64 - 1.0) * t + 12.0 * t.sqrt() + 30.0;
    let f = |r: f64| h.eval(r, t).unwrap_or(f64::NAN) * h.radial_density(r);
    let breaks: Vec<f64> = (1..8).map(|k| k as f64 * t.sqrt()).collect();
    // beyond `reach` the integrand is below e^-200
    Ok(sphere_area(n) * integrate_with_breaks(f, 0.0, reach, &breaks, &cfg)?.into_value()?)
}

/// Surface area of the unit sphere `S^(n-1)`.
pub fn sphere_area(n: usize) -> f64 {
    let a = n as f64 / 2.0;
    2.0 * (a * PI.ln() - gamma_ln(a).unwrap_or(f64::NAN)).exp()
}

/// The two-sided comparison envelope
/// `t^(-n/2) exp(-(n-1)^2 t/4 - r^2/4t - (n-1) r/2) (1+r+t)^((n-3)/2) (1+r)`.
pub fn dm_envelope(n: usize, r: f64, t: f64) -> f64 {
    ln_dm_envelope(n, r, t).exp()
}

fn ln_dm_envelope(n: usize, r: f64, t: f64) -> f64 {
    let nf = n as f64;
    let e = -(nf - 1.0).powi(2) * t / 4.0 - r * r / (4.0 * t) - (nf - 1.0) * r / 2.0;
    -nf / 2.0 * t.ln() + e + (nf - 3.0) / 2.0 * (1.0 + r + t).ln() + (1.0 + r).ln()
}

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct RatioScan {
    pub ratio_min: f64,
    pub ratio_max: f64,
}

impl RatioScan {
    /// Smallest `C` with `ratio / c` in `[1/C, C]` for the best normalization `c`.
    pub fn spread_constant(&self) -> f64 {
        (self.ratio_max / self.ratio_min).sqrt()
    }
}

/// Extremes of `p_n / envelope` over a grid.
pub fn dm_ratio_scan(n: usize, r_grid: &[f64], t_grid: &[f64]) -> Result<RatioScan> {
    if r_grid.is_empty() || t_grid.is_empty() {
        return Err(Error::domain("dm_ratio_scan", "empty grid"));
    }
    let heat = HyperbolicHeat::shared(n)?;
    let pts: Vec<(f64, f64)> = r_grid.iter().flat_map(|&r| t_grid.iter().map(move |&t| (r, t))).collect();
    let ratios = crate::par::try_map(&pts, |&(r, t)| heat.eval_scaled(r, t, -ln_dm_envelope(n, r, t)))?;
    let mut scan = RatioScan {
        ratio_min: f64::INFINITY,
        ratio_max: 0.0,
    };
    for q in ratios {
        if !(q.is_finite() && q > 0.0) {
            return Err(Error::NonFinite { at: q });
        }
        scan.ratio_min = scan.ratio_min.min(q);
        scan.ratio_max = scan.ratio_max.max(q);
    }
    Ok(scan)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn p3_closed(r: f64, t: f64) -> f64 {
        let phi = if r == 0.0 { 1.0 } else { r / r.sinh() };
        (4.0 * PI * t).powf(-1.5) * phi * (-t - r * r / (4.0 * t)).exp()
    }

    fn mass(n: usize, t: f64) -> f64 {
        heat_mass(n, t).unwrap()
    }

    #[test]
    fn p3_matches_closed_form() {
        for &(r, t) in &[(0.0, 1.0), (0.1, 0.01), (0.49, 2.0), (0.5, 0.5), (1.0, 0.5), (3.0, 0.2), (12.0, 5.0)] {
            assert_relative_eq!(heat_kernel(3, r, t).unwrap(), p3_closed(r, t), max_relative = 1e-12);
        }
    }

    #[test]
    fn masses_are_one() {
        for n in 2..=5 {
            for &t in &[0.1, 1.0, 3.0] {
                let m = mass(n, t);
                assert!((m - 1.0).abs() < 1e-8, "n={n} t={t} mass={m}");
            }
        }
    }

    #[test]
    fn continuous_across_series_switch() {
        for n in 2..=5 {
            let a = heat_kernel(n, SERIES_RADIUS * (1.0 - 1e-9), 0.7).unwrap();
            let b = heat_kernel(n, SERIES_RADIUS * (1.0 + 1e-9), 0.7).unwrap();
            assert_relative_eq!(a, b, max_relative = 1e-9);
        }
    }

    #[test]
    fn small_time_is_euclidean() {
        for n in 2..=5 {
            let t = 1e-4;
            let r = 0.02;
            let e = EuclideanHeat { n }.eval(r, t).unwrap();
            assert_relative_eq!(heat_kernel(n, r, t).unwrap(), e, max_relative = 1e-3);
        }
    }

    #[test]
    fn envelope_examples() {
        assert_relative_eq!(dm_envelope(3, 0.0, 1.0), (-1.0f64).exp(), max_relative = 1e-15);
        let want = (-1.0f64).exp() * 3f64.powf(-0.5) * 2.0;
        assert_relative_eq!(dm_envelope(2, 1.0, 1.0), want, max_relative = 1e-15);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(heat_kernel(6, 1.0, 1.0).is_err());
        assert!(heat_kernel(3, -1.0, 1.0).is_err());
        assert!(heat_kernel(3, 1.0, 0.0).is_err());
        assert!(dm_ratio_scan(3, &[], &[1.0]).is_err());
    }
}
