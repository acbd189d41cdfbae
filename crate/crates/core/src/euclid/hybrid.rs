//! Multiplier route for functions on `R^n`.
//!
//! The time integral is split at `T`. The short-time part is the Fourier
//! multiplier `int_0^T (e^-t - e^(-λt)) / t dt = Ein(λT) - Ein(T)` (or its
//! fractional analogue) applied on a large torus, where periodization is
//! harmless because the short-time kernel decays like `e^(-r^2/4T)`. The
//! long-time part is a smooth convolution done in real space, so the zero
//! frequency is treated exactly instead of being lost to the torus.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::functions::TestFunction;
use super::grid::PeriodicGridFunction;
use super::pointwise::{check_point, outer_radius, SphericalMean};
use crate::error::{Error, Result};
use crate::hyperbolic::sphere_area;
use crate::quad::{integrate_with_breaks, QuadratureConfig};
use crate::specfun::{ein, exp_integral_e1, gamma, lower_gamma_over_power};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HybridConfig {
    pub side_length: f64,
    pub points_per_axis: usize,
    pub split_time: f64,
}

impl HybridConfig {
    /// Torus side `2 R + 8` for a function supported in the ball of radius `R`;
    /// the resolution resolves the slow Fourier decay of compact bumps.
    pub fn for_function(f: &TestFunction) -> Self {
        let n = f.dimension;
        HybridConfig {
            side_length: (2.0 * f.truncation_radius + 8.0).max(10.0),
            points_per_axis: match n {
                1 => 4096,
                2 => 512,
                _ => 64,
            },
            split_time: 1.0,
        }
    }
}

/// Operator evaluated by the multiplier route.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Operator {
    Log,
    Frac(f64),
}

fn short_symbol(op: Operator, t: f64) -> Result<Box<dyn Fn(f64) -> f64>> {
    match op {
        Operator::Log => {
            let base = ein(t)?;
            Ok(Box::new(move |lam: f64| ein(lam * t).unwrap_or(f64::NAN) - base))
        }
        Operator::Frac(s) => {
            // [lam^s gamma(1-s, lam T) - (1 - e^(-lam T)) T^-s] / Gamma(1-s)
            let g = gamma(1.0 - s)?;
            Ok(Box::new(move |lam: f64| {
                let z = lam * t;
                let lower = lam * t.powf(1.0 - s) * lower_gamma_over_power(1.0 - s, z).unwrap_or(f64::NAN);
                (lower + (-z).exp_m1() * t.powf(-s)) / g
            }))
        }
    }
}

/// `int_T^inf (4 pi t)^(-n/2) e^(-r^2/4t) t^(-1-s) dt
///  = (4 pi)^(-n/2) T^(-n/2-s) gamma(n/2+s, z) / z^(n/2+s)`, `z = r^2/4T`.
fn long_kernel(n: usize, s: f64, t: f64, r: f64) -> f64 {
    let a = n as f64 / 2.0 + s;
    let z = r * r / (4.0 * t);
    (4.0 * PI).powf(-(n as f64) / 2.0) * t.powf(-a) * lower_gamma_over_power(a, z).unwrap_or(f64::NAN)
}

/// The operator at each point of `xs`, from one FFT of the sampled function.
pub fn multiplier_points(f: &TestFunction, xs: &[Vec<f64>], op: Operator, cfg: &HybridConfig) -> Result<Vec<f64>> {
    if let Operator::Frac(s) = op {
        if !(s > 0.0 && s < 1.0) {
            return Err(Error::domain("multiplier_points", format!("s must lie in (0, 1), got {s}")));
        }
    }
    for x in xs {
        check_point(f, x)?;
    }
    let t = cfg.split_time;
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::domain("multiplier_points", "split time must be positive"));
    }
    let grid = PeriodicGridFunction::sample(f, cfg.side_length, cfg.points_per_axis)?;
    let mut spec = grid.spectrum();
    spec.map_symbol(short_symbol(op, t)?);
    let qcfg = QuadratureConfig::new(1e-13, 1e-11, 4000, t)?;
    let n = f.dimension;
    let area = sphere_area(n);
    let s = match op {
        Operator::Log => 0.0,
        Operator::Frac(s) => s,
    };
    crate::par::try_map(xs, |x| {
        let short = spec.eval_at(x)?;
        let mean = SphericalMean::new(f, x);
        let outer = outer_radius(f, x);
        let p = n as i32 - 1;
        let conv = area
            * integrate_with_breaks(|r| long_kernel(n, s, t, r) * mean.at(r) * r.powi(p), 0.0, outer, &f.sphere_breaks(x), &qcfg)?
                .into_value()?;
        let fx = f.eval(x);
        let long = match op {
            Operator::Log => fx * exp_integral_e1(t)? - conv,
            Operator::Frac(s) => s / gamma(1.0 - s)? * (fx * t.powf(-s) / s - conv),
        };
        Ok(short + long)
    })
}

pub fn log_multiplier_point(f: &TestFunction, x: &[f64], cfg: &HybridConfig) -> Result<f64> {
    Ok(multiplier_points(f, &[x.to_vec()], Operator::Log, cfg)?[0])
}

pub fn frac_multiplier_point(f: &TestFunction, x: &[f64], s: f64, cfg: &HybridConfig) -> Result<f64> {
    Ok(multiplier_points(f, &[x.to_vec()], Operator::Frac(s), cfg)?[0])
}
