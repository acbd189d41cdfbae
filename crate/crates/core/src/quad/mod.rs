//! Adaptive one-dimensional quadrature.
//!
//! A globally adaptive Gauss–Kronrod (10/21) scheme: the interval with the
//! largest error estimate is bisected until the summed estimate falls under
//! `max(abs_tol, rel_tol * |value|)`. Semi-infinite ranges are mapped onto
//! `(0, 1]` by `u = 1 / (1 + t - a)` and endpoint singularities can be
//! flattened by a square-root substitution.

mod identities;

pub use identities::{
    frullani_log, verify_scalar_identities, DoubleIntegralCheck, GammaTailPoint, ScalarIdentityReport,
};

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerances and budget for the adaptive integrator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
    /// Where time integrals `int_0^inf ... dt` are split into short and long time.
    pub split_time: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            abs_tol: 1e-12,
            rel_tol: 1e-10,
            max_subdivisions: 2000,
            split_time: 1.0,
        }
    }
}

impl QuadratureConfig {
    pub fn new(abs_tol: f64, rel_tol: f64, max_subdivisions: usize, split_time: f64) -> Result<Self> {
        let cfg = QuadratureConfig {
            abs_tol,
            rel_tol,
            max_subdivisions,
            split_time,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Purely relative tolerance, for integrands whose size is far from one.
    pub fn relative(rel_tol: f64) -> Self {
        QuadratureConfig {
            abs_tol: 0.0,
            rel_tol,
            ..Default::default()
        }
    }

    pub fn with_abs_tol(mut self, abs_tol: f64) -> Self {
        self.abs_tol = abs_tol;
        self
    }

    pub fn with_rel_tol(mut self, rel_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self
    }

    pub fn with_max_subdivisions(mut self, n: usize) -> Self {
        self.max_subdivisions = n;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let tol_ok = self.abs_tol >= 0.0
            && self.rel_tol >= 0.0
            && (self.abs_tol > 0.0 || self.rel_tol > 0.0)
            && self.abs_tol.is_finite()
            && self.rel_tol.is_finite();
        if !tol_ok {
            return Err(Error::domain("QuadratureConfig", "tolerances must be non-negative, one positive"));
        }
        if self.max_subdivisions < 1 {
            return Err(Error::domain("QuadratureConfig", "max_subdivisions must be >= 1"));
        }
        if !(self.split_time > 0.0 && self.split_time.is_finite()) {
            return Err(Error::domain("QuadratureConfig", "split_time must be positive"));
        }
        Ok(())
    }

    fn target(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}

/// Outcome of an integration. `converged == false` means the subdivision
/// budget ran out; `value` is still the best available estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadResult {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
    pub converged: bool,
}

impl QuadResult {
    /// The value, or `NonConvergence` when the budget was exhausted.
    pub fn into_value(self) -> Result<f64> {
        if self.converged {
            Ok(self.value)
        } else {
            Err(Error::NonConvergence {
                value: self.value,
                error_estimate: self.error_estimate,
                evaluations: self.evaluations,
            })
        }
    }

    fn combine(self, other: QuadResult) -> QuadResult {
        QuadResult {
            value: self.value + other.value,
            error_estimate: self.error_estimate + other.error_estimate,
            evaluations: self.evaluations + other.evaluations,
            converged: self.converged && other.converged,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Endpoint {
    Lower,
    Upper,
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SingularityKind {
    InverseSqrt,
    Log,
    None,
}

/// Where the integrand is singular, if anywhere.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularityHint {
    endpoint: Endpoint,
    kind: SingularityKind,
}

impl SingularityHint {
    pub const NONE: SingularityHint = SingularityHint {
        endpoint: Endpoint::None,
        kind: SingularityKind::None,
    };

    pub fn new(endpoint: Endpoint, kind: SingularityKind) -> Result<Self> {
        if (endpoint == Endpoint::None) != (kind == SingularityKind::None) {
            return Err(Error::domain(
                "SingularityHint",
                "kind must be none exactly when endpoint is none",
            ));
        }
        Ok(SingularityHint { endpoint, kind })
    }

    pub fn lower(kind: SingularityKind) -> Self {
        SingularityHint {
            endpoint: Endpoint::Lower,
            kind,
        }
    }

    pub fn upper(kind: SingularityKind) -> Self {
        SingularityHint {
            endpoint: Endpoint::Upper,
            kind,
        }
    }

    pub fn endpoint(&self) -> Endpoint {
        self.endpoint
    }

    pub fn kind(&self) -> SingularityKind {
        self.kind
    }
}

const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}

impl Eq for Segment {}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gk21<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Result<Segment> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    if !fc.is_finite() {
        return Err(Error::NonFinite { at: center });
    }
    let mut res_g = 0.0;
    let mut res_k = fc * WGK[10];
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];
    for j in 0..10 {
        let x = half * XGK[j];
        let f1 = f(center - x);
        let f2 = f(center + x);
        if !f1.is_finite() {
            return Err(Error::NonFinite { at: center - x });
        }
        if !f2.is_finite() {
            return Err(Error::NonFinite { at: center + x });
        }
        fv1[j] = f1;
        fv2[j] = f2;
        res_k += WGK[j] * (f1 + f2);
        if j % 2 == 1 {
            res_g += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = res_k * 0.5;
    let mut res_asc = WGK[10] * (fc - mean).abs();
    let mut res_abs = WGK[10] * fc.abs();
    for j in 0..10 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
        res_abs += WGK[j] * (fv1[j].abs() + fv2[j].abs());
    }
    let value = res_k * half;
    res_asc *= half.abs();
    res_abs *= half.abs();
    let mut err = ((res_k - res_g) * half).abs();
    if res_asc != 0.0 && err != 0.0 {
        err = res_asc * (200.0 * err / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }
    Ok(Segment { a, b, value, error: err })
}

/// Adaptive integration over `[a, b]` starting from the given breakpoints.
fn adaptive<F: Fn(f64) -> f64>(f: &F, points: &[f64], cfg: &QuadratureConfig) -> Result<QuadResult> {
    cfg.validate()?;
    let mut heap = BinaryHeap::new();
    let mut evaluations = 0;
    for w in points.windows(2) {
        if w[1] > w[0] {
            heap.push(gk21(f, w[0], w[1])?);
            evaluations += 21;
        }
    }
    let totals = |heap: &BinaryHeap<Segment>| {
        // sum smallest first for a stable total
        let mut segs: Vec<&Segment> = heap.iter().collect();
        segs.sort_by(|x, y| x.a.total_cmp(&y.a));
        segs.iter().fold((0.0, 0.0), |(v, e), s| (v + s.value, e + s.error))
    };
    let (mut value, mut error) = totals(&heap);
    let mut splits = 0;
    let mut frozen_error = 0.0;
    let mut frozen: Vec<Segment> = Vec::new();
    while error > cfg.target(value) && splits < cfg.max_subdivisions {
        let Some(seg) = heap.pop() else { break };
        let mid = 0.5 * (seg.a + seg.b);
        let width = seg.b - seg.a;
        if width <= 4.0 * f64::EPSILON * seg.a.abs().max(seg.b.abs()).max(f64::MIN_POSITIVE) || mid <= seg.a || mid >= seg.b {
            // cannot refine further; keep its contribution and move on
            frozen_error += seg.error;
            frozen.push(seg);
            if heap.is_empty() {
                break;
            }
            continue;
        }
        let left = gk21(f, seg.a, mid)?;
        let right = gk21(f, mid, seg.b)?;
        evaluations += 42;
        value += left.value + right.value - seg.value;
        error += left.error + right.error - seg.error;
        heap.push(left);
        heap.push(right);
        splits += 1;
        if splits % 64 == 0 {
            let (v, e) = totals(&heap);
            let fv: f64 = frozen.iter().map(|s| s.value).sum();
            value = v + fv;
            error = e + frozen_error;
        }
    }
    let (v, e) = totals(&heap);
    let fv: f64 = frozen.iter().map(|s| s.value).sum();
    let value = v + fv;
    let error = e + frozen_error;
    let converged = error <= cfg.target(value) || (error <= 1e3 * f64::EPSILON * value.abs());
    Ok(QuadResult {
        value,
        error_estimate: error,
        evaluations,
        converged,
    })
}

/// Integrate `f` over the finite interval `[a, b]`.
pub fn integrate<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    hint: SingularityHint,
    cfg: &QuadratureConfig,
) -> Result<QuadResult> {
    if !(a.is_finite() && b.is_finite() && a < b) {
        return Err(Error::domain("integrate", format!("need finite a < b, got [{a}, {b}]")));
    }
    match hint.endpoint {
        Endpoint::None => adaptive(&f, &[a, b], cfg),
        Endpoint::Lower => {
            // x = a + u^2
            let len = b - a;
            let g = |u: f64| 2.0 * u * f(a + u * u);
            adaptive(&g, &[0.0, len.sqrt()], cfg)
        }
        Endpoint::Upper => {
            let len = b - a;
            let g = |u: f64| 2.0 * u * f(b - u * u);
            adaptive(&g, &[0.0, len.sqrt()], cfg)
        }
    }
}

/// Integrate over `[a, b]` with extra interior breakpoints (kinks, support
/// boundaries). Breakpoints outside `(a, b)` are ignored.
pub fn integrate_with_breaks<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    breaks: &[f64],
    cfg: &QuadratureConfig,
) -> Result<QuadResult> {
    if !(a.is_finite() && b.is_finite() && a < b) {
        return Err(Error::domain("integrate", format!("need finite a < b, got [{a}, {b}]")));
    }
    let mut pts = vec![a];
    let mut inner: Vec<f64> = breaks.iter().copied().filter(|&p| p > a && p < b).collect();
    inner.sort_by(f64::total_cmp);
    pts.extend(inner);
    pts.push(b);
    adaptive(&f, &pts, cfg)
}

/// Integrate `f` over `[a, inf)` using the map `t = a + 1/u - 1`.
pub fn integrate_semiinfinite<F: Fn(f64) -> f64>(f: F, a: f64, cfg: &QuadratureConfig) -> Result<QuadResult> {
    integrate_semiinfinite_scaled(f, a, 1.0, cfg)
}

/// Semi-infinite integration with a length scale: `t = a + scale (1/u - 1)`.
/// Choosing `scale` near the decay length of `f` keeps the mapped integrand tame.
pub fn integrate_semiinfinite_scaled<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    scale: f64,
    cfg: &QuadratureConfig,
) -> Result<QuadResult> {
    if !a.is_finite() || !(scale > 0.0 && scale.is_finite()) {
        return Err(Error::domain("integrate_semiinfinite", "need finite a and positive scale"));
    }
    let g = |u: f64| {
        let t = a + scale * (1.0 / u - 1.0);
        let v = f(t);
        if v == 0.0 {
            0.0
        } else {
            scale * v / (u * u)
        }
    };
    adaptive(&g, &[0.0, 0.5, 1.0], cfg)
}

/// `int_0^δ h(t) t^(-1-s) dt` for `h(t) = c1 t + c2 t^2 + c3 t^3 + O(t^4)`,
/// with the coefficients fitted through `h` at `δ, δ/2, δ/4`. Used where
/// `h` is a difference that loses relative accuracy as `t -> 0`.
pub(crate) fn short_time_moment<H: Fn(f64) -> Result<f64>>(h: H, s: f64, d: f64) -> Result<f64> {
    let (q1, q2, q4) = (h(d)? / d, 2.0 * h(d / 2.0)? / d, 4.0 * h(d / 4.0)? / d);
    // q(t) = h(t)/t = c1 + c2 t + c3 t^2 at t = d, d/2, d/4
    let c3 = ((q1 - q2) / (d / 2.0) - (q2 - q4) / (d / 4.0)) / (d * 0.75);
    let c2 = (q1 - q2) / (d / 2.0) - c3 * 1.5 * d;
    let c1 = q1 - c2 * d - c3 * d * d;
    Ok(c1 * d.powf(1.0 - s) / (1.0 - s) + c2 * d.powf(2.0 - s) / (2.0 - s) + c3 * d.powf(3.0 - s) / (3.0 - s))
}

/// `int_a^b + int_b^inf`, the usual split for integrands that are singular or
/// peaked near `a` and decay at infinity.
pub fn integrate_split<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    split: f64,
    hint: SingularityHint,
    cfg: &QuadratureConfig,
) -> Result<QuadResult> {
    let head = integrate(&f, a, split, hint, cfg)?;
    let tail = integrate_semiinfinite_scaled(&f, split, (split - a).max(1.0), cfg)?;
    Ok(head.combine(tail))
}

/// Gauss–Legendre nodes and weights on `[-1, 1]` by Newton iteration.
pub fn gauss_legendre(m: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; m];
    let mut w = vec![0.0; m];
    for i in 0..m {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (m as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=m {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * z * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = m as f64 * (z * p1 - p0) / (z * z - 1.0);
            let dz = p1 / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
    (x, w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::default()
    }

    #[test]
    fn gauss_legendre_integrates_polynomials() {
        let (x, w) = gauss_legendre(10);
        let s: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(18)).sum();
        assert!((s - 2.0 / 19.0).abs() < 1e-14);
        assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn constant_and_sine() {
        let r = integrate(|_| 1.0, 0.0, 1.0, SingularityHint::NONE, &cfg()).unwrap();
        assert!((r.value - 1.0).abs() < 1e-15);
        assert!(r.converged && r.evaluations >= 1 && r.error_estimate >= 0.0);
        let r = integrate(f64::sin, 0.0, PI, SingularityHint::NONE, &cfg()).unwrap();
        assert!((r.value - 2.0).abs() < 1e-12);
    }

    #[test]
    fn inverse_sqrt_hint() {
        let hint = SingularityHint::lower(SingularityKind::InverseSqrt);
        let r = integrate(|x: f64| 1.0 / x.sqrt(), 0.0, 1.0, hint, &cfg()).unwrap();
        assert!((r.value - 2.0).abs() < 1e-12);
        let hint = SingularityHint::upper(SingularityKind::InverseSqrt);
        let r = integrate(|x: f64| 1.0 / (1.0 - x).sqrt(), 0.0, 1.0, hint, &cfg()).unwrap();
        assert!((r.value - 2.0).abs() < 1e-12);
    }

    #[test]
    fn log_hint() {
        let hint = SingularityHint::lower(SingularityKind::Log);
        let r = integrate(|x: f64| x.ln(), 0.0, 1.0, hint, &cfg()).unwrap();
        assert!((r.value + 1.0).abs() < 1e-12);
    }

    #[test]
    fn hint_is_harmless_on_smooth_integrands() {
        let f = |x: f64| (x * x).exp() * x.cos();
        let plain = integrate(f, 0.0, 1.3, SingularityHint::NONE, &cfg()).unwrap().value;
        for hint in [
            SingularityHint::lower(SingularityKind::InverseSqrt),
            SingularityHint::upper(SingularityKind::InverseSqrt),
        ] {
            let v = integrate(f, 0.0, 1.3, hint, &cfg()).unwrap().value;
            assert!((v - plain).abs() < 1e-12);
        }
    }

    #[test]
    fn semi_infinite() {
        let r = integrate_semiinfinite(|t: f64| (-t).exp(), 0.0, &cfg()).unwrap();
        assert!((r.value - 1.0).abs() < 1e-12);
        let e1 = crate::specfun::exp_integral_e1(1.0).unwrap();
        let r = integrate_semiinfinite(|t: f64| (-t).exp() / t, 1.0, &cfg()).unwrap();
        assert!((r.value - e1).abs() < 1e-11);
        let r = integrate_semiinfinite(|t: f64| t.powf(1.5) * (-t).exp(), 0.0, &cfg()).unwrap();
        assert_relative_eq!(r.value, 0.75 * PI.sqrt(), max_relative = 1e-11);
    }

    #[test]
    fn relative_tolerance_on_tiny_integrands() {
        let scale = 1e-80;
        let r = integrate_semiinfinite(|t: f64| scale * (-t).exp(), 0.0, &QuadratureConfig::relative(1e-12)).unwrap();
        assert_relative_eq!(r.value, scale, max_relative = 1e-11);
    }

    #[test]
    fn non_finite_is_reported() {
        let r = integrate(|x: f64| 1.0 / (x - 0.5), 0.0, 1.0, SingularityHint::NONE, &cfg());
        assert!(matches!(r, Err(Error::NonFinite { .. })) || r.map(|q| !q.converged).unwrap_or(true));
        let r = integrate(|_| f64::NAN, 0.0, 1.0, SingularityHint::NONE, &cfg());
        assert!(matches!(r, Err(Error::NonFinite { .. })));
    }

    #[test]
    fn budget_exhaustion_returns_estimate() {
        let tight = QuadratureConfig::default().with_max_subdivisions(1).with_abs_tol(1e-15).with_rel_tol(1e-15);
        let r = integrate(|x: f64| (50.0 * x).sin().abs(), 0.0, 3.0, SingularityHint::NONE, &tight).unwrap();
        assert!(!r.converged);
        assert!(r.value.is_finite());
        assert!(matches!(r.into_value(), Err(Error::NonConvergence { .. })));
    }

    #[test]
    fn config_validation() {
        assert!(QuadratureConfig::new(0.0, 0.0, 10, 1.0).is_err());
        assert!(QuadratureConfig::new(1e-12, 1e-10, 0, 1.0).is_err());
        assert!(QuadratureConfig::new(1e-12, 1e-10, 10, 0.0).is_err());
        assert!(SingularityHint::new(Endpoint::None, SingularityKind::Log).is_err());
        assert!(SingularityHint::new(Endpoint::Lower, SingularityKind::None).is_err());
        assert!(integrate(|x| x, 1.0, 0.0, SingularityHint::NONE, &cfg()).is_err());
    }

    #[test]
    fn breakpoints_help_kinks() {
        let f = |x: f64| (x - 0.3).abs();
        let r = integrate_with_breaks(f, 0.0, 1.0, &[0.3, 7.0], &cfg()).unwrap();
        assert!((r.value - (0.045 + 0.245)).abs() < 1e-14);
    }
}
