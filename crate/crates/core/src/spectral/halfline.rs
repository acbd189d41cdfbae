//! Brownian motion on `(0, inf)` killed at the origin.
//!
//! The transition density is `p_t(x, y) = g_t(x - y) - g_t(x + y)` with
//! `g_t(z) = (4 pi t)^(-1/2) exp(-z^2 / 4t)`. Mass leaks through the boundary:
//! `int p_t(x, y) dy = erf(x / 2 sqrt t)`, so the heat-kernel and spectral
//! versions of `(-Δ)^s` differ by the potential
//! `V_s(x) = s/Γ(1-s) int_0^inf t^(-1-s) (1 - mass(t, x)) dt`.

use std::f64::consts::PI;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quad::{integrate, integrate_with_breaks, short_time_moment, QuadratureConfig, SingularityHint};
use crate::specfun::{erf, erfc, gamma};

/// `p_t(x, y)`, zero off the half-line. Written as
/// `g_t(x - y) (1 - exp(-xy/t))` so it stays nonnegative in floating point.
pub fn halfline_density(t: f64, x: f64, y: f64) -> f64 {
    if x <= 0.0 || y <= 0.0 {
        return 0.0;
    }
    let d = x - y;
    (-d * d / (4.0 * t)).exp() / (4.0 * PI * t).sqrt() * -(-x * y / t).exp_m1()
}

/// `int_0^inf p_t(x, y) dy = erf(x / 2 sqrt t)`.
pub fn halfline_mass(t: f64, x: f64) -> Result<f64> {
    check_tx("halfline_mass", t, x)?;
    Ok(erf(x / (2.0 * t.sqrt())))
}

/// `r(t, x) = 1 - mass`.
pub fn mass_loss(t: f64, x: f64) -> Result<f64> {
    check_tx("mass_loss", t, x)?;
    Ok(erfc(x / (2.0 * t.sqrt())))
}

/// The mass by direct quadrature of the density in `y`.
pub fn halfline_mass_by_quadrature(t: f64, x: f64, cfg: &QuadratureConfig) -> Result<f64> {
    check_tx("halfline_mass_by_quadrature", t, x)?;
    let (hi, breaks) = y_window(t, x, &[]);
    integrate_with_breaks(|y| halfline_density(t, x, y), 0.0, hi, &breaks, cfg)?.into_value()
}

fn check_tx(func: &'static str, t: f64, x: f64) -> Result<()> {
    if !(t > 0.0 && t.is_finite()) || !(x > 0.0 && x.is_finite()) {
        return Err(Error::domain(func, format!("need t > 0 and x > 0, got t = {t}, x = {x}")));
    }
    Ok(())
}

/// Upper end and breakpoints for a `y` integral against `p_t(x, .)`.
fn y_window(t: f64, x: f64, extra: &[f64]) -> (f64, Vec<f64>) {
    let w = t.sqrt();
    let hi = x + 20.0 * w;
    let mut b: Vec<f64> = [-6.0, -2.0, 0.0, 2.0, 6.0].iter().map(|k| x + k * w).collect();
    b.extend_from_slice(extra);
    (hi, b)
}

fn frac_prefactor(s: f64) -> Result<f64> {
    Ok(s / gamma(1.0 - s)?)
}

/// `int_T^inf t^(-1-s) h(t) dt` with `t = T / v^2`, for `h` that vanishes
/// like `t^(-1/2)` or faster.
fn tail<H: Fn(f64) -> f64>(h: H, big_t: f64, s: f64, cfg: &QuadratureConfig) -> Result<f64> {
    let g = |v: f64| if v == 0.0 { 0.0 } else { v.powf(2.0 * s - 1.0) * h(big_t / (v * v)) };
    Ok(2.0 * big_t.powf(-s) * integrate(g, 0.0, 1.0, SingularityHint::NONE, cfg)?.into_value()?)
}

/// `int_lo^hi t^(-1-s) h(t) dt` in the variable `log t`.
fn middle<H: Fn(f64) -> f64>(h: H, lo: f64, hi: f64, s: f64, cfg: &QuadratureConfig) -> Result<f64> {
    let g = |w: f64| {
        let t = w.exp();
        h(t) * t.powf(-s)
    };
    integrate(g, lo.ln(), hi.ln(), SingularityHint::NONE, cfg)?.into_value()
}

/// `V_s(x)` by quadrature of the mass loss, split at `T = x^2`:
/// `int_0^T t^(-1-s) r dt + T^(-s)/s - int_T^inf t^(-1-s) (1 - r) dt`.
pub fn massloss_vs(x: f64, s: f64, cfg: &QuadratureConfig) -> Result<f64> {
    check_s("massloss_vs", s)?;
    check_tx("massloss_vs", 1.0, x)?;
    let big_t = x * x;
    let z = |t: f64| x / (2.0 * t.sqrt());
    // erfc(z) < 1e-44 for z > 10
    let head = middle(|t| erfc(z(t)), big_t / 400.0, big_t, s, cfg)?;
    let tl = tail(|t| erf(z(t)), big_t, s, cfg)?;
    Ok(frac_prefactor(s)? * (head + big_t.powf(-s) / s - tl))
}

fn check_s(func: &'static str, s: f64) -> Result<()> {
    if !(s > 0.0 && s < 1.0) {
        return Err(Error::domain(func, format!("s must lie in (0, 1), got {s}")));
    }
    Ok(())
}

/// A bounded profile supported in `[a, b]`, `0 < a < b`.
#[derive(Clone)]
pub struct HalfLineProfile {
    pub support: (f64, f64),
    f: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
}

impl std::fmt::Debug for HalfLineProfile {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("HalfLineProfile").field("support", &self.support).finish()
    }
}

impl HalfLineProfile {
    pub fn new(a: f64, b: f64, f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Result<Self> {
        if !(a > 0.0 && a < b && b.is_finite()) {
            return Err(Error::domain("HalfLineProfile", format!("need 0 < a < b, got [{a}, {b}]")));
        }
        Ok(HalfLineProfile {
            support: (a, b),
            f: Arc::new(f),
        })
    }

    /// `exp(1 - 1/(1 - z^2))` on `[a, b]` rescaled to `z` in `[-1, 1]`; peak value 1.
    pub fn bump(a: f64, b: f64) -> Result<Self> {
        let (c, h) = ((a + b) / 2.0, (b - a) / 2.0);
        Self::new(a, b, move |y| {
            let z = (y - c) / h;
            if z.abs() < 1.0 {
                (1.0 - 1.0 / (1.0 - z * z)).exp()
            } else {
                0.0
            }
        })
    }

    pub fn eval(&self, y: f64) -> f64 {
        if y <= self.support.0 || y >= self.support.1 {
            0.0
        } else {
            (self.f)(y)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiscrepancyReport {
    pub s: f64,
    pub x: f64,
    pub f_x: f64,
    /// Heat-semigroup form `c_s int (f(x) - P_t f(x)) t^(-1-s) dt`.
    pub a: f64,
    /// Kernel form `c_s int int (f(x) - f(y)) p_t(x, y) dy t^(-1-s) dt`.
    pub b: f64,
    pub vs: f64,
    /// `|A - B - V_s(x) f(x)|`.
    pub residual: f64,
    pub tolerance: f64,
    pub holds: bool,
}

/// Below this time both integrands are replaced by a cubic fit.
const SHORT_TIME: f64 = 1e-4;
const SPLIT: f64 = 1.0;

fn inner_config() -> QuadratureConfig {
    QuadratureConfig::new(1e-15, 1e-13, 4000, 1.0).expect("static config")
}

/// The identity `A - B = V_s(x) f(x)` with all three terms by independent quadrature.
pub fn frac_discrepancy_halfline(
    f: &HalfLineProfile,
    s: f64,
    x: f64,
    cfg: &QuadratureConfig,
) -> Result<DiscrepancyReport> {
    check_s("frac_discrepancy_halfline", s)?;
    check_tx("frac_discrepancy_halfline", 1.0, x)?;
    let icfg = inner_config();
    let (a, b) = f.support;
    let fx = f.eval(x);

    // P_t f(x): y-quadrature over the support only.
    let heat = |t: f64| -> Result<f64> {
        let (_, breaks) = y_window(t, x, &[]);
        integrate_with_breaks(|y| halfline_density(t, x, y) * f.eval(y), a, b, &breaks, &icfg)?.into_value()
    };
    // int_0^inf (f(x) - f(y)) p_t(x, y) dy over the whole half-line.
    let kernel = |t: f64| -> Result<f64> {
        let (hi, breaks) = y_window(t, x, &[a, b]);
        integrate_with_breaks(|y| (fx - f.eval(y)) * halfline_density(t, x, y), 0.0, hi.max(b), &breaks, &icfg)?
            .into_value()
    };
    let semigroup = |t: f64| heat(t).map(|p| fx - p);

    let lift = |r: Result<f64>| r.unwrap_or(f64::NAN);
    let check = |v: f64| {
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonConvergence {
                value: v,
                error_estimate: f64::INFINITY,
                evaluations: 0,
            })
        }
    };

    let a_val = short_time_moment(&semigroup, s, SHORT_TIME)?
        + check(middle(|t| lift(semigroup(t)), SHORT_TIME, SPLIT, s, cfg)?)?
        + fx * SPLIT.powf(-s) / s
        - check(tail(|t| lift(heat(t)), SPLIT, s, cfg)?)?;
    let b_val = short_time_moment(&kernel, s, SHORT_TIME)?
        + check(middle(|t| lift(kernel(t)), SHORT_TIME, SPLIT, s, cfg)?)?
        + check(tail(|t| lift(kernel(t)), SPLIT, s, cfg)?)?;
    let c = frac_prefactor(s)?;
    let (a_val, b_val) = (c * a_val, c * b_val);
    let vs = massloss_vs(x, s, cfg)?;
    let residual = (a_val - b_val - vs * fx).abs();
    let tolerance = 1e-6 * (1.0 + a_val.abs());
    Ok(DiscrepancyReport {
        s,
        x,
        f_x: fx,
        a: a_val,
        b: b_val,
        vs,
        residual,
        tolerance,
        holds: residual <= tolerance,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VsRow {
    pub x: f64,
    pub s: f64,
    pub vs: f64,
}

/// `V_s(x)` over a grid of `x` and `s`, rows ordered by `x` then `s`.
pub fn vs_sweep(xs: &[f64], ss: &[f64], cfg: &QuadratureConfig) -> Result<Vec<VsRow>> {
    let pairs: Vec<(f64, f64)> = xs.iter().flat_map(|&x| ss.iter().map(move |&s| (x, s))).collect();
    crate::par::try_map(&pairs, |&(x, s)| Ok(VsRow { x, s, vs: massloss_vs(x, s, cfg)? }))
}

pub const VS_HEADER: [&str; 3] = ["x", "s", "V_s"];

pub fn vs_csv_rows(rows: &[VsRow]) -> Vec<Vec<f64>> {
    rows.iter().map(|r| vec![r.x, r.s, r.vs]).collect()
}

/// Polynomial (Neville) extrapolation of `(s_i, v_i)` to `s = 0`.
pub fn extrapolate_to_zero(s: &[f64], v: &[f64]) -> Result<f64> {
    if s.is_empty() || s.len() != v.len() {
        return Err(Error::domain("extrapolate_to_zero", "need matching nonempty samples"));
    }
    let mut p = v.to_vec();
    let m = s.len();
    for k in 1..m {
        for i in 0..m - k {
            let den = s[i] - s[i + k];
            if den == 0.0 {
                return Err(Error::domain("extrapolate_to_zero", "sample points must be distinct"));
            }
            p[i] = (s[i] * p[i + 1] - s[i + k] * p[i]) / den;
        }
    }
    Ok(p[0])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::gamma;

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::new(1e-13, 1e-11, 4000, 1.0).unwrap()
    }

    /// `int_0^inf t^(-1-s) erfc(x/2 sqrt t) dt = (4/x^2)^s Γ(s + 1/2) / (s sqrt pi)`.
    fn vs_closed(x: f64, s: f64) -> f64 {
        (4.0 / (x * x)).powf(s) * gamma(s + 0.5).unwrap() / (PI.sqrt() * gamma(1.0 - s).unwrap())
    }

    #[test]
    fn mass_limits() {
        assert!((halfline_mass(1e-8, 1.0).unwrap() - 1.0).abs() < 1e-12);
        assert!(halfline_mass(1e8, 1.0).unwrap() <= 1e-4);
        let q = halfline_mass_by_quadrature(1.0, 1.0, &cfg()).unwrap();
        assert!((q - halfline_mass(1.0, 1.0).unwrap()).abs() < 1e-10);
        for &(t, x) in &[(0.01, 0.3), (10.0, 2.0), (1e3, 0.5)] {
            let q = halfline_mass_by_quadrature(t, x, &cfg()).unwrap();
            assert!((q - halfline_mass(t, x).unwrap()).abs() < 1e-10, "{t} {x}");
        }
    }

    #[test]
    fn density_positive_and_symmetric() {
        for &t in &[1e-3, 0.1, 1.0, 50.0] {
            for i in 1..30 {
                for j in 1..30 {
                    let (x, y) = (0.1 * i as f64, 0.13 * j as f64);
                    let p = halfline_density(t, x, y);
                    assert!(p >= 0.0);
                    assert_eq!(p, halfline_density(t, y, x));
                }
            }
        }
    }

    #[test]
    fn vs_against_closed_form() {
        for &(x, s) in &[(1.0, 0.2), (1.0, 0.02), (1.5, 0.5), (0.3, 0.9), (50.0, 0.1)] {
            let v = massloss_vs(x, s, &cfg()).unwrap();
            let c = vs_closed(x, s);
            assert!((v - c).abs() < 1e-8 * c, "{x} {s} {v} {c}");
        }
    }

    #[test]
    fn vs_increases_toward_one() {
        let ss = [0.2, 0.1, 0.05, 0.02];
        let v: Vec<f64> = ss.iter().map(|&s| massloss_vs(1.0, s, &cfg()).unwrap()).collect();
        assert!(v.windows(2).all(|w| w[1] > w[0]));
        assert!(v.iter().all(|&x| x < 1.0));
        let lim = extrapolate_to_zero(&ss, &v).unwrap();
        assert!((lim - 1.0).abs() < 1e-2, "{lim}");
    }

    #[test]
    fn neville_reproduces_polynomials() {
        let s = [0.3, 0.2, 0.1, 0.05];
        let v: Vec<f64> = s.iter().map(|&x| 2.0 - x + 3.0 * x * x * x).collect();
        assert!((extrapolate_to_zero(&s, &v).unwrap() - 2.0).abs() < 1e-13);
    }

    #[test]
    fn discrepancy_identity() {
        let f = HalfLineProfile::bump(1.0, 2.0).unwrap();
        let r = frac_discrepancy_halfline(&f, 0.5, 1.5, &cfg()).unwrap();
        assert!(r.holds, "{r:?}");
        assert!(r.vs > 0.0 && r.f_x == 1.0);
        let r = frac_discrepancy_halfline(&f, 0.9, 1.5, &cfg()).unwrap();
        assert!(r.residual <= 1e-5 * (1.0 + r.a.abs()), "{r:?}");
    }

    #[test]
    fn discrepancy_vanishes_where_f_does() {
        let f = HalfLineProfile::bump(1.0, 2.0).unwrap();
        let r = frac_discrepancy_halfline(&f, 0.5, 3.0, &cfg()).unwrap();
        assert_eq!(r.f_x, 0.0);
        assert!((r.a - r.b).abs() <= 1e-6 * (1.0 + r.a.abs()), "{r:?}");
        assert!(r.a < 0.0);
    }
}
