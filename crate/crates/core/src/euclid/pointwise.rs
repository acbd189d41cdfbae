//! Real-space routes on `R^n`: the singular-integral formulas and the heat
//! semigroup time integrals, both reduced to radial integrals of spherical means.

use std::f64::consts::PI;

use super::constants::{constants, FracConstant};
use super::functions::TestFunction;
use crate::error::{Error, Result};
use crate::quad::{
    gauss_legendre, integrate, integrate_semiinfinite_scaled, integrate_with_breaks, short_time_moment, QuadratureConfig,
    SingularityHint,
};
use crate::specfun::{exp_integral_e1, gamma, gamma_ln, upper_gamma};

/// Nodes of the trapezoid rule on the circle.
const CIRCLE_POINTS: usize = 256;
/// Polar Gauss–Legendre nodes and azimuthal trapezoid nodes on `S^2`.
const SPHERE_POLAR: usize = 32;
const SPHERE_AZIMUTH: usize = 64;

/// Spherical mean of `f` over the sphere of radius `r` about `x`.
pub struct SphericalMean<'a> {
    f: &'a TestFunction,
    x: Vec<f64>,
    /// Unit directions and weights summing to one.
    dirs: Vec<(Vec<f64>, f64)>,
}

impl<'a> SphericalMean<'a> {
    pub fn new(f: &'a TestFunction, x: &[f64]) -> Self {
        let dirs = match f.dimension {
            1 => vec![(vec![1.0], 0.5), (vec![-1.0], 0.5)],
            2 => (0..CIRCLE_POINTS)
                .map(|j| {
                    let th = 2.0 * PI * j as f64 / CIRCLE_POINTS as f64;
                    (vec![th.cos(), th.sin()], 1.0 / CIRCLE_POINTS as f64)
                })
                .collect(),
            _ => {
                let (z, w) = gauss_legendre(SPHERE_POLAR);
                let mut d = Vec::with_capacity(SPHERE_POLAR * SPHERE_AZIMUTH);
                for (zi, wi) in z.iter().zip(&w) {
                    let rho = (1.0 - zi * zi).sqrt();
                    for k in 0..SPHERE_AZIMUTH {
                        let ph = 2.0 * PI * k as f64 / SPHERE_AZIMUTH as f64;
                        d.push((vec![rho * ph.cos(), rho * ph.sin(), *zi], 0.5 * wi / SPHERE_AZIMUTH as f64));
                    }
                }
                d
            }
        };
        SphericalMean { f, x: x.to_vec(), dirs }
    }

    pub fn at(&self, r: f64) -> f64 {
        let mut y = vec![0.0; self.x.len()];
        self.dirs
            .iter()
            .map(|(u, w)| {
                for ((yi, xi), ui) in y.iter_mut().zip(&self.x).zip(u) {
                    *yi = xi + r * ui;
                }
                w * self.f.eval(&y)
            })
            .sum()
    }

    /// `f(x) - mean(r)`, summed term by term.
    pub fn deficit(&self, r: f64) -> f64 {
        let fx = self.f.eval(&self.x);
        let mut y = vec![0.0; self.x.len()];
        self.dirs
            .iter()
            .map(|(u, w)| {
                for ((yi, xi), ui) in y.iter_mut().zip(&self.x).zip(u) {
                    *yi = xi + r * ui;
                }
                w * (fx - self.f.eval(&y))
            })
            .sum()
    }
}

pub(crate) fn check_point(f: &TestFunction, x: &[f64]) -> Result<()> {
    if x.len() != f.dimension {
        return Err(Error::domain("pointwise", format!("point has {} coordinates, function is on R^{}", x.len(), f.dimension)));
    }
    if x.iter().any(|v| !v.is_finite()) {
        return Err(Error::domain("pointwise", "point must be finite"));
    }
    if !f.truncation_radius.is_finite() {
        return Err(Error::domain("pointwise", format!("`{}` does not decay; use a periodic grid", f.id)));
    }
    if !f.smoothness.is_dini() {
        return Err(Error::SmoothnessTooLow { id: f.id.clone() });
    }
    Ok(())
}

/// Radius about `x` beyond which every sphere misses the (truncated) support.
pub(crate) fn outer_radius(f: &TestFunction, x: &[f64]) -> f64 {
    f.truncation_radius + x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

/// Inner radius of the fractional near-diagonal integral.
const DEFICIT_FLOOR: f64 = 1e-3;

pub fn pointwise_config() -> QuadratureConfig {
    QuadratureConfig::new(1e-12, 1e-10, 4000, 1.0).expect("valid config")
}

fn radial(g: impl Fn(f64) -> f64, a: f64, b: f64, breaks: &[f64], cfg: &QuadratureConfig) -> Result<f64> {
    if b <= a {
        return Ok(0.0);
    }
    integrate_with_breaks(g, a, b, breaks, cfg)?.into_value()
}

/// `c_n int_{B_1(x)} (f(x) - f(y)) |x-y|^-n dy - c_n int_{outside} f(y) |x-y|^-n dy + rho_n f(x)`.
pub fn log_pointwise(f: &TestFunction, x: &[f64]) -> Result<f64> {
    log_pointwise_with(f, x, &pointwise_config())
}

pub fn log_pointwise_with(f: &TestFunction, x: &[f64], cfg: &QuadratureConfig) -> Result<f64> {
    check_point(f, x)?;
    let k = constants(f.dimension)?;
    let mean = SphericalMean::new(f, x);
    let outer = outer_radius(f, x);
    let breaks = f.sphere_breaks(x);
    // c_n |S^(n-1)| = 2
    let near = radial(|r| if r == 0.0 { 0.0 } else { mean.deficit(r) / r }, 0.0, 1.0, &breaks, cfg)?;
    let far = radial(|r| mean.at(r) / r, 1.0, outer, &breaks, cfg)?;
    Ok(2.0 * (near - far) + k.rho_n * f.eval(x))
}

/// `c_(n,s) P.V. int (f(x) - f(y)) |x-y|^(-n-2s) dy`.
pub fn frac_pointwise(f: &TestFunction, x: &[f64], s: f64) -> Result<f64> {
    frac_pointwise_with(f, x, s, &pointwise_config())
}

pub fn frac_pointwise_with(f: &TestFunction, x: &[f64], s: f64, cfg: &QuadratureConfig) -> Result<f64> {
    check_point(f, x)?;
    let c = FracConstant::new(f.dimension, s)?;
    let area = constants(f.dimension)?.sphere_area;
    let mean = SphericalMean::new(f, x);
    let outer = outer_radius(f, x).max(1.0);
    let breaks = f.sphere_breaks(x);
    let g = |r: f64| mean.deficit(r) * (-(1.0 + 2.0 * s) * r.ln()).exp();
    // below DEFICIT_FLOOR the deficit is rounding noise over r^(1+2s); use its
    // local power law d(r) ~ d(δ) (r/δ)^p instead
    let d = DEFICIT_FLOOR;
    let (d1, d2) = (mean.deficit(d), mean.deficit(0.5 * d));
    let p = if d1 != 0.0 && d2 != 0.0 && d1.signum() == d2.signum() {
        (d1 / d2).log2().clamp(0.5, 4.0)
    } else {
        2.0
    };
    if p <= 2.0 * s {
        return Err(Error::SmoothnessTooLow { id: f.id.clone() });
    }
    let cap = d1 * d.powf(-2.0 * s) / (p - 2.0 * s);
    let head = cap + radial(&g, d, 1.0, &breaks, cfg)?;
    let body = radial(&g, 1.0, outer, &breaks, cfg)?;
    // beyond the support the deficit is f(x)
    let tail = f.eval(x) * outer.powf(-2.0 * s) / (2.0 * s);
    Ok(c.c_ns * area * (head + body + tail))
}

/// Heat semigroup pieces at a point, by radial quadrature against the Gaussian kernel.
struct Semigroup<'a> {
    mean: SphericalMean<'a>,
    fx: f64,
    n: usize,
    outer: f64,
    breaks: Vec<f64>,
    area: f64,
    ln_gamma_half_n: f64,
    cfg: QuadratureConfig,
}

impl<'a> Semigroup<'a> {
    fn new(f: &'a TestFunction, x: &[f64], cfg: &QuadratureConfig) -> Result<Self> {
        let n = f.dimension;
        Ok(Semigroup {
            mean: SphericalMean::new(f, x),
            fx: f.eval(x),
            n,
            outer: outer_radius(f, x),
            breaks: f.sphere_breaks(x),
            area: constants(n)?.sphere_area,
            ln_gamma_half_n: gamma_ln(n as f64 / 2.0)?,
            cfg: QuadratureConfig::new(cfg.abs_tol * 1e-2, cfg.rel_tol * 1e-2, cfg.max_subdivisions, 1.0)?,
        })
    }

    fn gauss(&self, r: f64, t: f64) -> f64 {
        let nf = self.n as f64;
        (-0.5 * nf * (4.0 * PI * t).ln() - r * r / (4.0 * t) + (nf - 1.0) * r.ln()).exp()
    }

    /// `f(x) - e^(tΔ) f(x)`.
    fn deficit(&self, t: f64) -> Result<f64> {
        let reach = 20.0 * t.sqrt();
        let b = reach.min(self.outer);
        let sd = t.sqrt();
        let mut breaks = self.breaks.clone();
        breaks.extend((1..8).map(|k| k as f64 * sd));
        let g = |r: f64| if r == 0.0 { 0.0 } else { self.gauss(r, t) * self.mean.deficit(r) };
        let inner = self.area * radial(g, 0.0, b, &breaks, &self.cfg)?;
        let tail = if self.outer < reach && self.fx != 0.0 {
            let a = self.n as f64 / 2.0;
            self.fx * (upper_gamma(a, self.outer * self.outer / (4.0 * t))?.ln() - self.ln_gamma_half_n).exp()
        } else {
            0.0
        };
        Ok(inner + tail)
    }

    /// `e^(tΔ) f(x)`.
    fn apply(&self, t: f64) -> Result<f64> {
        let b = (20.0 * t.sqrt()).min(self.outer);
        let g = |r: f64| if r == 0.0 { 0.0 } else { self.gauss(r, t) * self.mean.at(r) };
        Ok(self.area * radial(g, 0.0, b, &self.breaks, &self.cfg)?)
    }
}

fn nan_on_err(v: Result<f64>) -> f64 {
    v.unwrap_or(f64::NAN)
}

/// `int_0^inf (e^-t f(x) - e^(tΔ) f(x)) / t dt`, split at `cfg.split_time`.
pub fn log_bochner_point(f: &TestFunction, x: &[f64], cfg: &QuadratureConfig) -> Result<f64> {
    check_point(f, x)?;
    let sg = Semigroup::new(f, x, cfg)?;
    let fx = sg.fx;
    let split = cfg.split_time;
    let head = |t: f64| {
        if t == 0.0 {
            return 0.0;
        }
        ((-t).exp_m1() * fx + nan_on_err(sg.deficit(t))) / t
    };
    let a = integrate(head, 0.0, split, SingularityHint::NONE, cfg)?.into_value()?;
    let scale = (sg.outer * sg.outer / 4.0).max(split);
    let b = integrate_semiinfinite_scaled(|t| nan_on_err(sg.apply(t)) / t, split, scale, cfg)?.into_value()?;
    Ok(a + fx * exp_integral_e1(split)? - b)
}

const BOCHNER_SHORT_TIME: f64 = 1e-6;

/// `s / Gamma(1-s) int_0^inf (f(x) - e^(tΔ) f(x)) t^(-1-s) dt`.
pub fn frac_bochner_point(f: &TestFunction, x: &[f64], s: f64, cfg: &QuadratureConfig) -> Result<f64> {
    check_point(f, x)?;
    if !(s > 0.0 && s < 1.0) {
        return Err(Error::domain("frac_bochner_point", format!("s must lie in (0, 1), got {s}")));
    }
    let sg = Semigroup::new(f, x, cfg)?;
    let split = cfg.split_time;
    // below BOCHNER_SHORT_TIME the deficit is a polynomial fit; above it the
    // variable is log t, which absorbs the t^(-s) growth
    let cap = short_time_moment(|t| sg.deficit(t), s, BOCHNER_SHORT_TIME)?;
    let head = |w: f64| {
        let t = w.exp();
        nan_on_err(sg.deficit(t)) * t.powf(-s)
    };
    let a = cap + integrate(head, BOCHNER_SHORT_TIME.ln(), split.ln(), SingularityHint::NONE, cfg)?.into_value()?;
    let scale = (sg.outer * sg.outer / 4.0).max(split);
    let b = integrate_semiinfinite_scaled(|t| nan_on_err(sg.apply(t)) * (-(1.0 + s) * t.ln()).exp(), split, scale, cfg)?
        .into_value()?;
    let tail = sg.fx * split.powf(-s) / s;
    Ok(s / gamma(1.0 - s)? * (a + tail - b))
}

/// `int f dy` over `R^n`, by the same radial reduction about the origin.
pub fn integral(f: &TestFunction) -> Result<f64> {
    let origin = vec![0.0; f.dimension];
    check_point(f, &origin)?;
    let mean = SphericalMean::new(f, &origin);
    let area = constants(f.dimension)?.sphere_area;
    let p = f.dimension as i32 - 1;
    Ok(area * radial(|r| mean.at(r) * r.powi(p), 0.0, f.truncation_radius, &f.sphere_breaks(&origin), &pointwise_config())?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::digamma;

    fn bochner_cfg() -> QuadratureConfig {
        QuadratureConfig::new(1e-11, 1e-9, 4000, 1.0).unwrap()
    }

    #[test]
    fn spherical_means() {
        // mean of |y|^2 over the sphere of radius r about x is |x|^2 + r^2
        let f = TestFunction::gaussian(3).unwrap();
        let x = [0.3, -0.2, 0.5];
        let m = SphericalMean::new(&f, &x);
        let r: f64 = 0.7;
        let direct = m.at(r);
        let x2: f64 = x.iter().map(|v| v * v).sum();
        // exact mean of exp(-|y|^2/2): e^(-(|x|^2+r^2)/2) sinh(|x| r) / (|x| r)
        let d = x2.sqrt();
        let want = (-(x2 + r * r) / 2.0).exp() * (d * r).sinh() / (d * r);
        assert!((direct - want).abs() < 1e-14);
        assert!((m.deficit(r) - (f.eval(&x) - want)).abs() < 1e-14);
    }

    #[test]
    fn gaussian_log_value_at_origin() {
        for n in 1..=3 {
            let f = TestFunction::gaussian(n).unwrap();
            let want = digamma(n as f64 / 2.0).unwrap() + 2f64.ln();
            let got = log_pointwise(&f, &vec![0.0; n]).unwrap();
            assert!((got - want).abs() < 1e-8, "n={n}: {got} vs {want}");
        }
    }

    #[test]
    fn gaussian_frac_value_at_origin() {
        for &(n, s) in &[(1usize, 0.5f64), (2, 0.25), (3, 0.75)] {
            let f = TestFunction::gaussian(n).unwrap();
            let a = n as f64 / 2.0;
            let want = 2f64.powf(s) * gamma(a + s).unwrap() / gamma(a).unwrap();
            let got = frac_pointwise(&f, &vec![0.0; n], s).unwrap();
            assert!((got - want).abs() < 1e-7, "n={n} s={s}: {got} vs {want}");
        }
    }

    #[test]
    fn bochner_routes_match_pointwise() {
        let cfg = bochner_cfg();
        let f = TestFunction::bump(1).unwrap();
        for x in [0.0, 0.4, 1.7] {
            let p = log_pointwise(&f, &[x]).unwrap();
            let b = log_bochner_point(&f, &[x], &cfg).unwrap();
            assert!((p - b).abs() < 1e-7 * (1.0 + p.abs()), "x={x}: {p} vs {b}");
            let p = frac_pointwise(&f, &[x], 0.5).unwrap();
            let b = frac_bochner_point(&f, &[x], 0.5, &cfg).unwrap();
            assert!((p - b).abs() < 1e-7 * (1.0 + p.abs()), "x={x}: {p} vs {b}");
        }
    }

    #[test]
    fn trivial_cases() {
        let z = TestFunction::zero(2).unwrap();
        assert_eq!(log_pointwise(&z, &[0.1, 0.2]).unwrap(), 0.0);
        assert_eq!(log_bochner_point(&z, &[0.1, 0.2], &bochner_cfg()).unwrap(), 0.0);
        assert_eq!(frac_bochner_point(&z, &[0.0, 0.0], 0.3, &bochner_cfg()).unwrap(), 0.0);
        // outside the support only the far term survives, and it is negative
        let b = TestFunction::bump(2).unwrap();
        assert!(log_pointwise(&b, &[2.5, 0.0]).unwrap() < 0.0);
        assert!(log_pointwise(&b, &[0.0]).is_err());
        let c = TestFunction::cos_mode(&[1.0]).unwrap();
        assert!(log_pointwise(&c, &[0.0]).is_err());
    }

    #[test]
    fn total_integral() {
        let g = TestFunction::gaussian(2).unwrap();
        assert!((integral(&g).unwrap() - 2.0 * PI).abs() < 1e-10);
    }
}
