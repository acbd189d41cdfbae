//! Pointwise `log(-Δ)` on `H^n` for radial functions, its split into near,
//! far and remainder parts, and a time-integral oracle.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::heat::{sphere_area, HyperbolicHeat, RadialHeat};
use super::kernels::{kernel_config, log_kernel_long, log_kernel_short};
use super::series::cosh_m1;
use crate::error::{Error, Result};
use crate::quad::{integrate, integrate_semiinfinite_scaled, integrate_with_breaks, QuadratureConfig, SingularityHint, SingularityKind};
use crate::regularity::Smoothness;
use crate::specfun::EULER_GAMMA;

/// How far past the last support radius the `K1` tail is followed; the
/// integrand there is below `e^-100`.
const K1_REACH: f64 = 20.0;

/// A function on `H^n` depending only on the distance to a fixed centre.
#[derive(Clone)]
pub struct HyperRadialFunction {
    pub id: String,
    profile: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    /// `profile(d) = 0` for `d >= support`.
    pub support: f64,
    pub smoothness: Smoothness,
}

impl fmt::Debug for HyperRadialFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("HyperRadialFunction")
            .field("id", &self.id)
            .field("support", &self.support)
            .field("smoothness", &self.smoothness)
            .finish()
    }
}

impl HyperRadialFunction {
    pub fn new(
        id: impl Into<String>,
        support: f64,
        smoothness: Smoothness,
        profile: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Result<Self> {
        if !(support > 0.0 && support.is_finite()) {
            return Err(Error::domain("HyperRadialFunction::new", "support radius must be positive and finite"));
        }
        Ok(HyperRadialFunction {
            id: id.into(),
            profile: Arc::new(profile),
            support,
            smoothness,
        })
    }

    /// `exp(-1 / (1 - (d/R)^2))` for `d < R`.
    pub fn bump(radius: f64) -> Result<Self> {
        Self::new("bump", radius, Smoothness::Smooth, move |d: f64| {
            let q = d / radius;
            if q < 1.0 {
                (-1.0 / (1.0 - q * q)).exp()
            } else {
                0.0
            }
        })
    }

    /// `(1 - d/R)_+`, Lipschitz.
    pub fn tent(radius: f64) -> Result<Self> {
        Self::new("tent", radius, Smoothness::Holder(1.0), move |d: f64| (1.0 - d / radius).max(0.0))
    }

    pub fn zero() -> Self {
        Self::new("zero", 1.0, Smoothness::Smooth, |_| 0.0).expect("valid support")
    }

    pub fn eval(&self, d: f64) -> f64 {
        if d >= self.support {
            0.0
        } else {
            (self.profile)(d)
        }
    }
}

/// Geometry of spheres around a point at distance `x_dist` from the centre.
struct Sphere<'a> {
    n: usize,
    f: &'a HyperRadialFunction,
    x_dist: f64,
    fx: f64,
    /// `|S^(n-2)| / |S^(n-1)|`.
    norm: f64,
    cfg: QuadratureConfig,
}

impl<'a> Sphere<'a> {
    fn new(n: usize, f: &'a HyperRadialFunction, x_dist: f64, cfg: QuadratureConfig) -> Self {
        Sphere {
            n,
            f,
            x_dist,
            fx: f.eval(x_dist),
            norm: sphere_area(n - 1) / sphere_area(n),
            cfg,
        }
    }

    /// Distance to the centre of the point at radius `r`, angle `theta`
    /// (law of cosines, arranged to avoid cancellation).
    fn distance(&self, r: f64, theta: f64) -> f64 {
        let half = (0.5 * theta).sin();
        let w = cosh_m1(self.x_dist - r) + 2.0 * self.x_dist.sinh() * r.sinh() * half * half;
        2.0 * (0.5 * w).sqrt().asinh()
    }

    /// Integrate `g(f(distance))` over the sphere of radius `r`, normalized to a mean.
    fn mean_of(&self, r: f64, g: impl Fn(f64) -> f64) -> Result<f64> {
        if self.x_dist == 0.0 || r == 0.0 {
            return Ok(g(self.f.eval(self.x_dist + r)));
        }
        let pw = self.n as i32 - 2;
        let h = |theta: f64| g(self.f.eval(self.distance(r, theta))) * theta.sin().powi(pw);
        // the sphere leaves the support at cos(theta*) below
        let mut breaks = Vec::new();
        let c = (self.x_dist.cosh() * r.cosh() - self.f.support.cosh()) / (self.x_dist.sinh() * r.sinh());
        if c.abs() < 1.0 {
            breaks.push(c.acos());
        }
        if self.n == 2 {
            Ok(integrate_with_breaks(h, 0.0, std::f64::consts::PI, &breaks, &self.cfg)?.into_value()? / std::f64::consts::PI)
        } else {
            Ok(self.norm * integrate_with_breaks(h, 0.0, std::f64::consts::PI, &breaks, &self.cfg)?.into_value()?)
        }
    }

    /// Spherical mean of `f` at radius `r`.
    fn mean(&self, r: f64) -> Result<f64> {
        self.mean_of(r, |v| v)
    }

    /// `f(x) - mean(r)`, integrated directly so that it is accurate for small `r`.
    fn deficit(&self, r: f64) -> Result<f64> {
        let fx = self.fx;
        self.mean_of(r, move |v| fx - v)
    }

    /// Radius beyond which the sphere misses the support.
    fn outer(&self) -> f64 {
        self.x_dist + self.f.support
    }

    /// Radius below which the sphere stays inside the support.
    fn inner(&self) -> Option<f64> {
        (self.f.support > self.x_dist).then(|| self.f.support - self.x_dist)
    }

    fn density(&self, r: f64) -> f64 {
        r.sinh().powi(self.n as i32 - 1)
    }
}

fn check(n: usize, f: &HyperRadialFunction, x_dist: f64) -> Result<()> {
    if !(2..=5).contains(&n) {
        return Err(Error::domain("log_pointwise_h", format!("dimension must be in 2..=5, got {n}")));
    }
    if !(x_dist >= 0.0 && x_dist.is_finite()) {
        return Err(Error::domain("log_pointwise_h", format!("need x_dist >= 0, got {x_dist}")));
    }
    if !f.smoothness.is_dini() {
        return Err(Error::SmoothnessTooLow { id: f.id.clone() });
    }
    Ok(())
}

/// Tolerances for the pointwise integrals.
pub fn pointwise_config() -> QuadratureConfig {
    QuadratureConfig::new(1e-13, 1e-11, 4000, 1.0).expect("valid config")
}

struct Pieces<'a> {
    sphere: Sphere<'a>,
    heat: &'static HyperbolicHeat,
    kcfg: QuadratureConfig,
    cfg: QuadratureConfig,
}

impl<'a> Pieces<'a> {
    fn new(n: usize, f: &'a HyperRadialFunction, x_dist: f64, cfg: &QuadratureConfig) -> Result<Self> {
        check(n, f, x_dist)?;
        Ok(Pieces {
            sphere: Sphere::new(n, f, x_dist, *cfg),
            heat: HyperbolicHeat::shared(n)?,
            kcfg: kernel_config(),
            cfg: *cfg,
        })
    }

    fn k1(&self, r: f64) -> f64 {
        log_kernel_short(self.heat, r, &self.kcfg).unwrap_or(f64::NAN)
    }

    fn k2(&self, r: f64) -> f64 {
        log_kernel_long(self.heat, r, &self.kcfg).unwrap_or(f64::NAN)
    }

    /// `int_a^b g(r) sinh^(n-1) r dr` with breakpoints; the lower end at 0 is
    /// flattened by `r = u^2`.
    fn radial(&self, g: impl Fn(f64) -> f64, a: f64, b: f64, breaks: &[f64]) -> Result<f64> {
        if b <= a {
            return Ok(0.0);
        }
        let h = |r: f64| {
            let d = self.sphere.density(r);
            if d == 0.0 {
                0.0
            } else {
                g(r) * d
            }
        };
        let mut pts: Vec<f64> = breaks.iter().copied().filter(|&p| p > a && p < b).collect();
        pts.sort_by(f64::total_cmp);
        if a == 0.0 {
            let first = pts.first().copied().unwrap_or(b);
            let head = integrate(h, 0.0, first, SingularityHint::lower(SingularityKind::InverseSqrt), &self.cfg)?.into_value()?;
            let rest = if first < b {
                integrate_with_breaks(h, first, b, &pts, &self.cfg)?.into_value()?
            } else {
                0.0
            };
            Ok(head + rest)
        } else {
            integrate_with_breaks(h, a, b, &pts, &self.cfg)?.into_value()
        }
    }

    fn geometry_breaks(&self) -> Vec<f64> {
        let mut b = vec![self.sphere.outer()];
        if let Some(i) = self.sphere.inner() {
            b.push(i);
        }
        b
    }

    fn k1_deficit(&self, a: f64, b: f64, extra: &[f64]) -> Result<f64> {
        let mut br = self.geometry_breaks();
        br.extend_from_slice(extra);
        self.radial(|r| self.k1(r) * self.sphere.deficit(r).unwrap_or(f64::NAN), a, b, &br)
    }

    fn kernel_mean(&self, k: impl Fn(f64) -> f64, a: f64, b: f64, extra: &[f64]) -> Result<f64> {
        let mut br = self.geometry_breaks();
        br.extend_from_slice(extra);
        let b = b.min(self.sphere.outer());
        self.radial(|r| k(r) * self.sphere.mean(r).unwrap_or(f64::NAN), a, b, &br)
    }

    fn k1_tail_end(&self) -> f64 {
        self.sphere.outer().max(1.0) + K1_REACH
    }

    /// `int K1 (f(x) - f) - int K2 f + Gamma'(1) f(x)`, as one pass over the radius.
    fn full(&self) -> Result<f64> {
        let area = sphere_area(self.sphere.n);
        let end = self.k1_tail_end();
        // breakpoints chosen independently of the unit ball used by the split
        let extra = [0.25, 0.75, 2.0];
        let near = self.k1_deficit(0.0, end, &extra)?;
        let far = self.kernel_mean(|r| self.k2(r), 0.0, end, &extra)?;
        Ok(area * (near - far) - EULER_GAMMA * self.sphere.fx)
    }

    fn split(&self) -> Result<SplitReport> {
        let area = sphere_area(self.sphere.n);
        let fx = self.sphere.fx;
        let end = self.k1_tail_end();
        let near = area * self.k1_deficit(0.0, 1.0, &[])?;
        let far = -area * self.kernel_mean(|r| self.k2(r), 1.0, f64::INFINITY, &[])?;
        let r1 = -area * self.kernel_mean(|r| self.k2(r), 0.0, 1.0, &[])?;
        let r2 = -area * self.kernel_mean(|r| self.k1(r), 1.0, f64::INFINITY, &[])?;
        let rho = rho_hyperbolic_with(self.heat, self.sphere.n, end - self.sphere.outer().max(1.0) + 1.0, &self.kcfg)?;
        let remainder = r1 + r2 + rho.value * fx;
        let full = self.full()?;
        let sum = near + far + remainder;
        Ok(SplitReport {
            n: self.sphere.n,
            x_dist: self.sphere.x_dist,
            near,
            far,
            remainder,
            rho: rho.value,
            rho_error: rho.error,
            full,
            residual: (sum - full).abs(),
        })
    }
}

/// `log(-Δ) f` at a point `x_dist` from the centre of `f`.
pub fn log_pointwise_h(n: usize, f: &HyperRadialFunction, x_dist: f64) -> Result<f64> {
    log_pointwise_h_with(n, f, x_dist, &pointwise_config())
}

pub fn log_pointwise_h_with(n: usize, f: &HyperRadialFunction, x_dist: f64, cfg: &QuadratureConfig) -> Result<f64> {
    Pieces::new(n, f, x_dist, cfg)?.full()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SplitReport {
    pub n: usize,
    pub x_dist: f64,
    /// `int_{B_1} K1 (f(x) - f)`.
    pub near: f64,
    /// `-int_{outside B_1} K2 f`.
    pub far: f64,
    pub remainder: f64,
    /// `int_{outside B_1} K1 dvol + Gamma'(1)`.
    pub rho: f64,
    pub rho_error: f64,
    /// The pointwise value computed in one pass.
    pub full: f64,
    /// `|near + far + remainder - full|`.
    pub residual: f64,
}

/// Near, far and remainder parts, and their sum against the one-pass value.
pub fn split_check(n: usize, f: &HyperRadialFunction, x_dist: f64) -> Result<SplitReport> {
    Pieces::new(n, f, x_dist, &pointwise_config())?.split()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RhoEstimate {
    pub value: f64,
    pub error: f64,
}

fn rho_hyperbolic_with(heat: &HyperbolicHeat, n: usize, reach: f64, kcfg: &QuadratureConfig) -> Result<RhoEstimate> {
    let cfg = pointwise_config();
    let area = sphere_area(n);
    let g = |r: f64| log_kernel_short(heat, r, kcfg).unwrap_or(f64::NAN) * heat.radial_density(r);
    let q = integrate_with_breaks(g, 1.0, 1.0 + reach, &[2.0, 4.0, 8.0], &cfg)?;
    let value = area * q.into_value()? - EULER_GAMMA;
    // kernel tolerance propagates relatively into the integral
    let error = area * q.error_estimate + kcfg.rel_tol * (value + EULER_GAMMA).abs();
    Ok(RhoEstimate { value, error })
}

/// The constant `int_{outside B_1} K1 dvol + Gamma'(1)` on `H^n`.
pub fn rho_hyperbolic(n: usize) -> Result<RhoEstimate> {
    rho_hyperbolic_with(HyperbolicHeat::shared(n)?, n, K1_REACH, &kernel_config())
}

/// `int_0^inf (e^-t f(x) - e^(tΔ) f(x)) / t dt`, with the heat semigroup
/// applied by radial quadrature against `p_n`. Independent of `K1`, `K2`.
pub fn log_bochner_h(n: usize, f: &HyperRadialFunction, x_dist: f64, cfg: &QuadratureConfig) -> Result<f64> {
    check(n, f, x_dist)?;
    let heat = HyperbolicHeat::shared(n)?;
    let inner_cfg = QuadratureConfig::new(cfg.abs_tol * 1e-2, cfg.rel_tol * 1e-2, cfg.max_subdivisions, 1.0)?;
    let sphere = Sphere::new(n, f, x_dist, inner_cfg);
    let area = sphere_area(n);
    let fx = sphere.fx;
    let outer = sphere.outer();
    let radial = |g: &dyn Fn(f64) -> f64, b: f64, breaks: &[f64]| -> f64 {
        let h = |r: f64| {
            let d = sphere.density(r);
            if d == 0.0 {
                0.0
            } else {
                g(r) * d
            }
        };
        integrate_with_breaks(h, 0.0, b, breaks, &inner_cfg)
            .and_then(|q| q.into_value())
            .unwrap_or(f64::NAN)
    };
    // f(x) - e^(tΔ)f(x) = int p (f(x) - mean) dvol, using total mass one
    let short = |t: f64| -> f64 {
        let sd = t.sqrt();
        let reach = (n as f64 - 1.0) * t + 14.0 * sd;
        let mut breaks: Vec<f64> = (1..10).map(|k| k as f64 * sd).collect();
        breaks.push(outer);
        let g = |r: f64| heat.eval(r, t).unwrap_or(f64::NAN) * sphere.deficit(r).unwrap_or(f64::NAN);
        let deficit = area * radial(&g, reach, &breaks);
        ((-t).exp_m1() * fx + deficit) / t
    };
    let long = |t: f64| -> f64 {
        let g = |r: f64| heat.eval(r, t).unwrap_or(f64::NAN) * sphere.mean(r).unwrap_or(f64::NAN);
        let semigroup = area * radial(&g, outer, &[0.5, 1.0, 2.0]);
        ((-t).exp() * fx - semigroup) / t
    };
    let head = integrate(short, 0.0, cfg.split_time, SingularityHint::NONE, cfg)?.into_value()?;
    let tail = integrate_semiinfinite_scaled(long, cfg.split_time, 1.0, cfg)?.into_value()?;
    Ok(head + tail)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormReport {
    pub n: usize,
    pub p: f64,
    pub r_trunc: Vec<f64>,
    /// `||K2||_{L^p(B_R)}` for each `R`.
    pub norms: Vec<f64>,
    /// `|norm(R_last) - norm(R_prev)| / norm(R_last)`.
    pub last_rel_change: f64,
    /// For `p = 1`: increments divided by `log(R_(i+1) / R_i)`.
    pub log_growth_rates: Vec<f64>,
}

/// Truncated `L^p` norms of `K2` over geodesic balls.
pub fn kernel_norms(n: usize, p: f64, r_trunc: &[f64]) -> Result<NormReport> {
    if !(p >= 1.0 && p.is_finite()) {
        return Err(Error::domain("kernel_norms", format!("need p >= 1, got {p}")));
    }
    if r_trunc.len() < 2 || r_trunc.windows(2).any(|w| !(w[1] > w[0])) || r_trunc[0] <= 0.0 {
        return Err(Error::domain("kernel_norms", "need at least two increasing positive radii"));
    }
    let heat = HyperbolicHeat::shared(n)?;
    let kcfg = kernel_config();
    let cfg = pointwise_config();
    let area = sphere_area(n);
    // K2^p sinh^(n-1), assembled in logs for large radii
    let g = |r: f64| {
        let k = log_kernel_long(heat, r, &kcfg).unwrap_or(f64::NAN);
        if r == 0.0 {
            return if n == 1 { k.powf(p) } else { 0.0 };
        }
        (p * k.ln() + (n as f64 - 1.0) * super::terms::ln_sinh(r)).exp()
    };
    let mut edges = vec![0.0];
    edges.extend_from_slice(r_trunc);
    let pieces = crate::par::try_map(&edges.windows(2).map(|w| (w[0], w[1])).collect::<Vec<_>>(), |&(a, b)| {
        let breaks: Vec<f64> = (1..(b as usize)).map(|k| k as f64).collect();
        integrate_with_breaks(g, a, b, &breaks, &cfg)?.into_value()
    })?;
    let mut acc = 0.0;
    let mut norms = Vec::with_capacity(r_trunc.len());
    for piece in pieces {
        acc += area * piece;
        norms.push(acc.powf(1.0 / p));
    }
    let k = norms.len();
    let last_rel_change = (norms[k - 1] - norms[k - 2]).abs() / norms[k - 1];
    let log_growth_rates = norms
        .windows(2)
        .zip(r_trunc.windows(2))
        .map(|(nw, rw)| (nw[1] - nw[0]) / (rw[1] / rw[0]).ln())
        .collect();
    Ok(NormReport {
        n,
        p,
        r_trunc: r_trunc.to_vec(),
        norms,
        last_rel_change,
        log_growth_rates,
    })
}

/// `int |f| e^(-(n-1) r) / (1 + r) dvol` for radial `f`.
pub fn weighted_l1(n: usize, f: &HyperRadialFunction) -> Result<f64> {
    let cfg = pointwise_config();
    let nf = n as f64;
    let g = |r: f64| f.eval(r).abs() * (-(nf - 1.0) * r).exp() / (1.0 + r) * r.sinh().powi(n as i32 - 1);
    Ok(sphere_area(n) * integrate(g, 0.0, f.support, SingularityHint::NONE, &cfg)?.into_value()?)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnergyReport {
    pub n: usize,
    /// `int |R_n(f; x)| |f(x)| dvol(x)`.
    pub lhs: f64,
    /// `||chi_1 K2||_1`.
    pub k2_ball_norm: f64,
    /// `||K1 1_{r >= 1}||_1`.
    pub k1_outer_norm: f64,
    pub rho: f64,
    pub f_l2_squared: f64,
    /// Right side with `rho` as a signed coefficient.
    pub rhs_signed: f64,
    /// Right side with `|rho|`, the bound for the `rho f` term itself.
    pub rhs_abs: f64,
    pub holds_signed: bool,
    pub holds_abs: bool,
}

/// Both sides of the remainder energy bound with `(p, q) = (2, 1)`.
pub fn energy_inequality(n: usize, f: &HyperRadialFunction) -> Result<EnergyReport> {
    let heat = HyperbolicHeat::shared(n)?;
    let kcfg = kernel_config();
    let cfg = QuadratureConfig::new(1e-12, 1e-8, 2000, 1.0)?;
    let area = sphere_area(n);
    let dens = |r: f64| heat.radial_density(r);
    let k2_ball_norm = area
        * integrate(|r| log_kernel_long(heat, r, &kcfg).unwrap_or(f64::NAN) * dens(r), 0.0, 1.0, SingularityHint::NONE, &cfg)?
            .into_value()?;
    let rho = rho_hyperbolic(n)?.value;
    let k1_outer_norm = rho + EULER_GAMMA;
    let f_l2_squared =
        area * integrate(|r| f.eval(r).powi(2) * dens(r), 0.0, f.support, SingularityHint::NONE, &cfg)?.into_value()?;
    // |R_n(f; x)| at Gauss nodes in x, then the outer integral
    let remainder = |x: f64| -> Result<f64> {
        let pieces = Pieces::new(n, f, x, &cfg)?;
        let r1 = -area * pieces.kernel_mean(|r| pieces.k2(r), 0.0, 1.0, &[])?;
        let r2 = -area * pieces.kernel_mean(|r| pieces.k1(r), 1.0, f64::INFINITY, &[])?;
        Ok(r1 + r2 + rho * pieces.sphere.fx)
    };
    let (nodes, weights) = crate::quad::gauss_legendre(48);
    let half = 0.5 * f.support;
    let xs: Vec<f64> = nodes.iter().map(|z| half * (z + 1.0)).collect();
    let rs = crate::par::try_map(&xs, |&x| remainder(x))?;
    let lhs = area
        * half
        * xs.iter()
            .zip(&rs)
            .zip(&weights)
            .map(|((&x, &r), &w)| w * r.abs() * f.eval(x).abs() * dens(x))
            .sum::<f64>();
    let common = (k2_ball_norm + k1_outer_norm) * f_l2_squared;
    let rhs_signed = common + rho * f_l2_squared;
    let rhs_abs = common + rho.abs() * f_l2_squared;
    Ok(EnergyReport {
        n,
        lhs,
        k2_ball_norm,
        k1_outer_norm,
        rho,
        f_l2_squared,
        rhs_signed,
        rhs_abs,
        holds_signed: lhs <= rhs_signed,
        holds_abs: lhs <= rhs_abs,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChapmanKolmogorov {
    pub n: usize,
    pub t: f64,
    pub s: f64,
    pub d: f64,
    /// `int p_t(x, y) p_s(y, z) dvol(y)`.
    pub convolution: f64,
    /// `p_(t+s)(x, z)`.
    pub direct: f64,
}

impl ChapmanKolmogorov {
    pub fn abs_error(&self) -> f64 {
        (self.convolution - self.direct).abs()
    }
}

/// Semigroup property at distance `d`, by polar quadrature around `x`
/// (radius, then polar angle towards `z`).
pub fn chapman_kolmogorov(n: usize, t: f64, s: f64, d: f64) -> Result<ChapmanKolmogorov> {
    if !(t > 0.0 && s > 0.0 && d >= 0.0 && d.is_finite()) {
        return Err(Error::domain("chapman_kolmogorov", "need t, s > 0 and d >= 0"));
    }
    let heat = HyperbolicHeat::shared(n)?;
    let cfg = QuadratureConfig::new(1e-14, 1e-11, 4000, 1.0)?;
    let norm = sphere_area(n - 1) / sphere_area(n);
    let pw = n as i32 - 2;
    let angular = |r: f64| -> f64 {
        let g = |theta: f64| {
            let half = (0.5 * theta).sin();
            let w = cosh_m1(d - r) + 2.0 * d.sinh() * r.sinh() * half * half;
            let dist = 2.0 * (0.5 * w).sqrt().asinh();
            heat.eval(dist, s).unwrap_or(f64::NAN) * theta.sin().powi(pw)
        };
        let q = integrate(g, 0.0, std::f64::consts::PI, SingularityHint::NONE, &cfg).and_then(|q| q.into_value());
        let v = q.unwrap_or(f64::NAN);
        if n == 2 {
            v / std::f64::consts::PI
        } else {
            norm * v
        }
    };
    let reach = d + 2.0 * (n as f64) * (t + s) + 30.0 * (t + s).sqrt() + 6.0;
    let h = |r: f64| heat.eval(r, t).unwrap_or(f64::NAN) * heat.radial_density(r) * angular(r);
    let breaks: Vec<f64> = [0.5 * d, d, 1.0, 2.0, 4.0].into_iter().filter(|&b| b > 0.0 && b < reach).collect();
    let convolution = sphere_area(n) * integrate_with_breaks(h, 0.0, reach, &breaks, &cfg)?.into_value()?;
    Ok(ChapmanKolmogorov {
        n,
        t,
        s,
        d,
        convolution,
        direct: heat.eval(d, t + s)?,
    })
}
