//! Scalar integral identities behind the heat-semigroup formulas, each
//! evaluated by brute quadrature so it can be compared with closed forms.

use serde::{Deserialize, Serialize};

use super::{integrate, integrate_semiinfinite, integrate_split, QuadratureConfig, SingularityHint, SingularityKind};
use crate::error::{Error, Result};
use crate::specfun::{digamma, gamma, upper_gamma, EULER_GAMMA};

/// `int_0^inf (e^-t - e^-(lambda t)) / t dt`, split at `cfg.split_time`.
/// The value is `log lambda`.
pub fn frullani_log(lambda: f64, cfg: &QuadratureConfig) -> Result<f64> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::domain("frullani_log", format!("lambda must be positive, got {lambda}")));
    }
    if lambda == 1.0 {
        return Ok(0.0);
    }
    let f = |t: f64| ((-t).exp_m1() - (-lambda * t).exp_m1()) / t;
    let split = cfg.split_time;
    let head = integrate(f, 0.0, split, SingularityHint::NONE, cfg)?.into_value()?;
    // e^-(lambda t) decays on the scale 1/lambda; give the tail map that scale.
    let scale = (1.0 / lambda).max(1.0);
    let tail = super::integrate_semiinfinite_scaled(|t: f64| ((-t).exp() - (-lambda * t).exp()) / t, split, scale, cfg)?
        .into_value()?;
    Ok(head + tail)
}

/// One dimension of the double-integral identity
/// `int_{1/4}^inf int_s^inf ... - int_0^{1/4} int_0^s ... = Gamma'(n/2)/2 + Gamma(n/2) log 2`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DoubleIntegralCheck {
    pub n: usize,
    /// Iterated double integral.
    pub iterated: f64,
    /// After exchanging the order: `1/2 int_0^inf t^(n/2-1) e^-t log(4t) dt`.
    pub single: f64,
    pub closed_form: f64,
    pub residual: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GammaTailPoint {
    pub n: usize,
    pub s: f64,
    pub r: f64,
    pub lower: f64,
    pub value: f64,
    pub upper: f64,
    pub holds: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScalarIdentityReport {
    /// `int_0^1 (e^-t - 1)/t + int_1^inf e^-t / t`.
    pub euler_sum: f64,
    pub euler_residual: f64,
    pub double_integral: Vec<DoubleIntegralCheck>,
    pub gamma_tail: Vec<GammaTailPoint>,
}

fn double_integral_iterated(n: usize, cfg: &QuadratureConfig) -> Result<f64> {
    let a = n as f64 / 2.0;
    let weight = move |t: f64| t.powf(a - 1.0) * (-t).exp();
    let inner_hint = if n == 1 {
        SingularityHint::lower(SingularityKind::InverseSqrt)
    } else {
        SingularityHint::NONE
    };
    // s >= 1/4: inner int_s^inf, outer int_{1/4}^inf ds / 2s
    let upper_part = integrate_semiinfinite(
        |s: f64| {
            let inner = integrate_semiinfinite(weight, s, cfg).map(|q| q.value).unwrap_or(f64::NAN);
            inner / (2.0 * s)
        },
        0.25,
        cfg,
    )?
    .into_value()?;
    // s <= 1/4: inner int_0^s, outer int_0^{1/4} ds / 2s
    let lower_part = integrate(
        |s: f64| {
            let inner = integrate(weight, 0.0, s, inner_hint, cfg).map(|q| q.value).unwrap_or(f64::NAN);
            inner / (2.0 * s)
        },
        0.0,
        0.25,
        inner_hint,
        cfg,
    )?
    .into_value()?;
    Ok(upper_part - lower_part)
}

fn double_integral_single(n: usize, cfg: &QuadratureConfig) -> Result<f64> {
    let a = n as f64 / 2.0;
    let f = |t: f64| 0.5 * t.powf(a - 1.0) * (-t).exp() * (4.0 * t).ln();
    let hint = if n <= 2 {
        SingularityHint::lower(SingularityKind::InverseSqrt)
    } else {
        SingularityHint::NONE
    };
    integrate_split(f, 0.0, 1.0, hint, cfg)?.into_value()
}

/// Evaluate the three scalar identities: the integral for `-gamma`, the
/// double-integral identity for every `n` in `n_list`, and the two-sided
/// incomplete-gamma tail bound on a scan of `r` for `s in {0, 1/2}`.
pub fn verify_scalar_identities(n_list: &[usize], cfg: &QuadratureConfig) -> Result<ScalarIdentityReport> {
    if n_list.is_empty() || n_list.contains(&0) {
        return Err(Error::domain("verify_scalar_identities", "need a nonempty list of n >= 1"));
    }
    let i1 = integrate(|t: f64| (-t).exp_m1() / t, 0.0, 1.0, SingularityHint::NONE, cfg)?.into_value()?;
    let i2 = integrate_semiinfinite(|t: f64| (-t).exp() / t, 1.0, cfg)?.into_value()?;
    let euler_sum = i1 + i2;

    let mut double_integral = Vec::with_capacity(n_list.len());
    for &n in n_list {
        let a = n as f64 / 2.0;
        let closed_form = gamma(a)? * digamma(a)? / 2.0 + gamma(a)? * std::f64::consts::LN_2;
        let iterated = double_integral_iterated(n, cfg)?;
        let single = double_integral_single(n, cfg)?;
        double_integral.push(DoubleIntegralCheck {
            n,
            iterated,
            single,
            closed_form,
            residual: (iterated - closed_form).abs(),
        });
    }

    let mut gamma_tail = Vec::new();
    for &n in n_list.iter().filter(|&&n| n >= 2) {
        for &s in &[0.0, 0.5] {
            gamma_tail.extend(gamma_tail_scan(n, s, 20, 12.0)?);
        }
    }

    Ok(ScalarIdentityReport {
        euler_sum,
        euler_residual: (euler_sum + EULER_GAMMA).abs(),
        double_integral,
        gamma_tail,
    })
}

/// Check `2^(2-2s-n) r^(n+2s-2) e^(-r^2/4) <= Gamma(n/2+s, r^2/4) <= 2^(3-2s-n) r^(n+2s-2) e^(-r^2/4)`
/// on `points` values of `r` from just above `2 sqrt(n-2+2s)` to `r_max`.
pub fn gamma_tail_scan(n: usize, s: f64, points: usize, r_max: f64) -> Result<Vec<GammaTailPoint>> {
    if n < 2 || s < 0.0 || points < 2 {
        return Err(Error::domain("gamma_tail_scan", "need n >= 2, s >= 0, points >= 2"));
    }
    let nf = n as f64;
    let r_min = 2.0 * (nf - 2.0 + 2.0 * s).sqrt() + 0.1;
    (0..points)
        .map(|i| {
            let r = r_min + (r_max - r_min) * i as f64 / (points - 1) as f64;
            let base = r.powf(nf + 2.0 * s - 2.0) * (-r * r / 4.0).exp();
            let lower = 2f64.powf(2.0 - 2.0 * s - nf) * base;
            let upper = 2.0 * lower;
            let value = upper_gamma(nf / 2.0 + s, r * r / 4.0)?;
            // the lower bound is attained exactly when n = 2, s = 0
            let slack = 1e-12 * value;
            Ok(GammaTailPoint {
                n,
                s,
                r,
                lower,
                value,
                upper,
                holds: lower <= value + slack && value <= upper + slack,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frullani_values() {
        let cfg = QuadratureConfig::default();
        assert_eq!(frullani_log(1.0, &cfg).unwrap(), 0.0);
        assert!((frullani_log(2.0, &cfg).unwrap() - 2f64.ln()).abs() < 1e-10);
        assert!((frullani_log(1e-3, &cfg).unwrap() - 1e-3f64.ln()).abs() < 1e-9);
        assert!(frullani_log(0.0, &cfg).is_err());
        assert!(frullani_log(-2.0, &cfg).is_err());
    }

    #[test]
    fn frullani_split_insensitive() {
        let base = QuadratureConfig::default();
        let mut moved = base;
        moved.split_time = 0.3;
        let a = frullani_log(7.5, &base).unwrap();
        let b = frullani_log(7.5, &moved).unwrap();
        assert!((a - b).abs() < 1e-10);
    }

    #[test]
    fn euler_identity_and_n2_value() {
        let rep = verify_scalar_identities(&[2], &QuadratureConfig::default()).unwrap();
        assert!(rep.euler_residual <= 1e-10);
        let want = -EULER_GAMMA / 2.0 + std::f64::consts::LN_2;
        assert!((rep.double_integral[0].closed_form - want).abs() < 1e-14);
        assert!((want - 0.404_539_3).abs() < 1e-7);
        assert!(rep.double_integral[0].residual < 1e-8);
        assert!((rep.double_integral[0].single - want).abs() < 1e-9);
    }

    #[test]
    fn gamma_tail_point() {
        let pts = gamma_tail_scan(3, 0.5, 20, 12.0).unwrap();
        assert!(pts.iter().all(|p| p.holds));
        // the point (n, s, r) = (3, 0.5, 6)
        let nf = 3.0;
        let s = 0.5;
        let r: f64 = 6.0;
        let base = r.powf(nf + 2.0 * s - 2.0) * (-r * r / 4.0).exp();
        let v = upper_gamma(nf / 2.0 + s, r * r / 4.0).unwrap();
        assert!(2f64.powf(2.0 - 2.0 * s - nf) * base <= v);
        assert!(v <= 2f64.powf(3.0 - 2.0 * s - nf) * base);
    }

    #[test]
    fn empty_list_rejected() {
        assert!(verify_scalar_identities(&[], &QuadratureConfig::default()).is_err());
    }
}
