//! Named suites of numerical checks with a machine-readable report.
//!
//! Every check records a measured quantity and the bound it must not
//! exceed; a check passes iff `measured <= bound`. A computation that fails
//! records `NaN`, which never passes.

use std::f64::consts::{LN_2, PI};
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::euclid::{
    frac_bochner_point, frac_constant_check, frac_pointwise, limits_report, log_bochner_point, log_pointwise,
    multiplier_points, HybridConfig, Operator, PeriodicGridFunction, TestFunction,
};
use crate::hyperbolic::{
    asympt_fit, chapman_kolmogorov, dm_ratio_scan, energy_inequality, frac_kernel, heat_kernel, heat_mass,
    kernel_config, kernel_norms, linear_grid, log_grid, split_check, FitModel, HyperRadialFunction, KernelKind,
    KernelRoute, KernelTable, Regime, Space,
};
use crate::quad::{frullani_log, integrate_semiinfinite, verify_scalar_identities, QuadratureConfig};
use crate::spectral::{
    apply_phi, bochner_eigen_log, embedding_counterexample, extrapolate_to_zero, frac_discrepancy_halfline,
    halfline_mass, halfline_mass_by_quadrature, massloss_vs, EigenModel, HalfLineProfile, PhiSpec,
    SpectralCoefficients,
};
use crate::specfun::{bessel_k, digamma, gamma, EULER_GAMMA};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    All,
    Specfun,
    Identities,
    Euclid,
    Hyperbolic,
    Spectral,
}

impl Suite {
    pub const PARTS: [Suite; 5] = [Suite::Specfun, Suite::Identities, Suite::Euclid, Suite::Hyperbolic, Suite::Spectral];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Specfun => "specfun",
            Suite::Identities => "identities",
            Suite::Euclid => "euclid",
            Suite::Hyperbolic => "hyperbolic",
            Suite::Spectral => "spectral",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [Suite::All, Suite::Specfun, Suite::Identities, Suite::Euclid, Suite::Hyperbolic, Suite::Spectral]
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::domain("Suite", format!("unknown suite `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    pub description: String,
    pub measured: f64,
    pub bound: f64,
    pub pass: bool,
    /// The identity or estimate being checked.
    pub reference: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub suite: Suite,
    pub checks: Vec<Check>,
    pub wall_time_ms: u64,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

struct Checks(Vec<Check>);

impl Checks {
    fn push(&mut self, id: &str, description: &str, reference: &str, measured: Result<f64>, bound: f64) {
        let measured = measured.unwrap_or(f64::NAN);
        self.0.push(Check {
            id: id.to_owned(),
            description: description.to_owned(),
            measured,
            bound,
            pass: measured <= bound,
            reference: reference.to_owned(),
        });
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn max_of(it: impl IntoIterator<Item = f64>) -> f64 {
    it.into_iter().fold(0.0, |m, x| if x.is_nan() || m.is_nan() { f64::NAN } else { m.max(x) })
}

pub fn run(suite: Suite) -> VerifyReport {
    let start = Instant::now();
    let mut c = Checks(Vec::new());
    let parts: Vec<Suite> = if suite == Suite::All { Suite::PARTS.to_vec() } else { vec![suite] };
    for part in parts {
        match part {
            Suite::Specfun => specfun_checks(&mut c),
            Suite::Identities => identity_checks(&mut c),
            Suite::Euclid => euclid_checks(&mut c),
            Suite::Hyperbolic => hyperbolic_checks(&mut c),
            Suite::Spectral => spectral_checks(&mut c),
            Suite::All => unreachable!(),
        }
    }
    VerifyReport {
        suite,
        checks: c.0,
        wall_time_ms: start.elapsed().as_millis() as u64,
    }
}

fn tight() -> QuadratureConfig {
    QuadratureConfig::new(1e-13, 1e-11, 4000, 1.0).expect("static config")
}

fn specfun_checks(c: &mut Checks) {
    c.push("gamma_factorial", "|Γ(6) - 120| / 120", "Γ(n+1) = n!", gamma(6.0).map(|g| rel(g, 120.0)), 1e-14);
    c.push(
        "digamma_one",
        "|ψ(1) + γ|",
        "ψ(1) = -γ",
        digamma(1.0).map(|d| (d + EULER_GAMMA).abs()),
        1e-14,
    );
    c.push(
        "bessel_half_integer",
        "rel error of K_(1/2)(2) against sqrt(π/4) e^-2",
        "K_(1/2)(x) = sqrt(π/2x) e^-x",
        bessel_k(0.5, 2.0).map(|k| rel(k, (PI / 4.0).sqrt() * (-2.0f64).exp())),
        1e-13,
    );
    // int_0^inf t^(-ν-1) e^(-αt-β/t) dt = 2 (β/α)^(-ν/2) K_ν(2 sqrt(αβ))
    let laplace = || -> Result<f64> {
        let (nu, a, b) = (1.5, 1.0, 0.25);
        let q = integrate_semiinfinite(|t: f64| t.powf(-nu - 1.0) * (-a * t - b / t).exp(), 0.0, &tight())?.into_value()?;
        let closed = 2.0 * (b / a).powf(-nu / 2.0) * bessel_k(nu, 2.0 * (a * b).sqrt())?;
        Ok(rel(q, closed))
    };
    c.push(
        "bessel_laplace",
        "Laplace-type integral of t^(-ν-1) e^(-αt-β/t) against 2 (β/α)^(-ν/2) K_ν, (ν,α,β) = (1.5,1,0.25)",
        "Laplace representation of K_ν",
        laplace(),
        1e-9,
    );
}

fn identity_checks(c: &mut Checks) {
    let cfg = tight();
    let frullani = || -> Result<f64> {
        let errs = (0..13)
            .map(|i| {
                let lam = 10f64.powf(-3.0 + 0.5 * i as f64);
                frullani_log(lam, &cfg).map(|v| (v - lam.ln()).abs())
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(max_of(errs))
    };
    c.push(
        "frullani",
        "max |∫(e^-t - e^-λt)/t dt - log λ| over 13 λ in [1e-3, 1e3]",
        "Frullani integral for log λ",
        frullani(),
        1e-9,
    );
    match verify_scalar_identities(&[1, 2, 3, 4, 5, 6], &cfg) {
        Ok(rep) => {
            c.push(
                "euler",
                "|∫_0^1 (e^-t - 1)/t + ∫_1^∞ e^-t/t + γ|",
                "integral form of the Euler-Mascheroni constant",
                Ok(rep.euler_residual),
                1e-10,
            );
            c.push(
                "double_integral",
                "max over n = 1..6 of |iterated integral - (Γ'(n/2)/2 + Γ(n/2) log 2)|",
                "double-integral identity for the constant in the log kernel",
                Ok(max_of(rep.double_integral.iter().map(|f| f.residual))),
                1e-8,
            );
            let violations = rep.gamma_tail.iter().filter(|p| !p.holds).count();
            c.push(
                "gamma_tail",
                "points violating the two-sided Γ(n/2+s, r²/4) bound, n = 2..5, s in {0, 1/2}",
                "upper incomplete gamma tail bound",
                Ok(violations as f64),
                0.0,
            );
        }
        Err(e) => {
            for id in ["euler", "double_integral", "gamma_tail"] {
                c.push(id, "scalar identity report", "scalar identities", Err(e.clone()), 0.0);
            }
        }
    }
}

fn euclid_checks(c: &mut Checks) {
    let cfg = QuadratureConfig::new(1e-12, 1e-10, 4000, 1.0).expect("static config");
    for n in [1usize, 2] {
        let routes = || -> Result<(f64, f64)> {
            let f = TestFunction::bump(n)?;
            let pts: Vec<Vec<f64>> = [0.0, 0.2, 0.4, 0.6, 0.8]
                .iter()
                .map(|&r| {
                    let mut x = vec![0.0; n];
                    x[0] = r;
                    x
                })
                .collect();
            let m = multiplier_points(&f, &pts, Operator::Log, &HybridConfig::for_function(&f))?;
            let (mut ep, mut eb) = (0.0f64, 0.0f64);
            for (x, &mv) in pts.iter().zip(&m) {
                // values near a sign change are compared on the scale of the largest value
                let scale = mv.abs().max(0.1 * max_of(m.iter().map(|v| v.abs())));
                ep = ep.max((log_pointwise(&f, x)? - mv).abs() / scale);
                eb = eb.max((log_bochner_point(&f, x, &cfg)? - mv).abs() / scale);
            }
            Ok((ep, eb))
        };
        let r = routes();
        let (ep, eb) = match &r {
            Ok((a, b)) => (Ok(*a), Ok(*b)),
            Err(e) => (Err(e.clone()), Err(e.clone())),
        };
        c.push(
            &format!("log_routes_pointwise_n{n}"),
            "bump: max rel |pointwise - multiplier| at 5 points",
            "pointwise singular-integral formula for log(-Δ)",
            ep,
            2e-3,
        );
        c.push(
            &format!("log_routes_bochner_n{n}"),
            "bump: max rel |Bochner - multiplier| at 5 points",
            "Bochner heat-semigroup formula for log(-Δ)",
            eb,
            2e-3,
        );
    }
    for n in [1usize, 2, 3] {
        let gauss = || -> Result<(f64, f64, f64)> {
            let f = TestFunction::gaussian(n)?;
            let x = vec![0.0; n];
            let exact = digamma(n as f64 / 2.0)? + LN_2;
            let p = (log_pointwise(&f, &x)? - exact).abs();
            let b = (log_bochner_point(&f, &x, &cfg)? - exact).abs();
            let h = HybridConfig {
                side_length: 24.0,
                points_per_axis: if n == 3 { 64 } else { 128 },
                split_time: 1.0,
            };
            let m = (multiplier_points(&f, &[x], Operator::Log, &h)?[0] - exact).abs();
            Ok((p.max(b), m, exact))
        };
        let r = gauss();
        c.push(
            &format!("log_gaussian_n{n}"),
            "|log(-Δ) e^(-|x|²/2) at 0 - (ψ(n/2) + log 2)|, pointwise and Bochner",
            "log Laplacian of a Gaussian",
            r.as_ref().map(|v| v.0).map_err(Clone::clone),
            1e-3,
        );
        c.push(
            &format!("log_gaussian_multiplier_n{n}"),
            "same, multiplier route on an L = 24 torus",
            "log Laplacian of a Gaussian",
            r.map(|v| v.1),
            1e-4,
        );
    }
    c.push(
        "frac_constant",
        "max rel diff of c_(n,s) closed form vs heat-semigroup prefactor, n in 1..3, s in {1/4,1/2,3/4}",
        "normalizing constant of the fractional kernel",
        frac_constant_check(&[1, 2, 3], &[0.25, 0.5, 0.75], &tight()).map(|v| max_of(v.iter().map(|x| x.rel_diff))),
        1e-8,
    );
    let moment = || -> Result<f64> {
        let mut worst = 0.0f64;
        for n in [1usize, 2] {
            let f = TestFunction::gaussian(n)?;
            let x = vec![0.0; n];
            for s in [0.25, 0.5, 0.75] {
                let nf = n as f64;
                let exact = 2f64.powf(s) * gamma(nf / 2.0 + s)? / gamma(nf / 2.0)?;
                worst = worst.max((frac_pointwise(&f, &x, s)? - exact).abs());
                worst = worst.max((frac_bochner_point(&f, &x, s, &cfg)? - exact).abs());
            }
        }
        Ok(worst)
    };
    c.push(
        "frac_gaussian",
        "|(-Δ)^s e^(-|x|²/2) at 0 - 2^s Γ(n/2+s)/Γ(n/2)|, n in {1,2}, pointwise and Bochner",
        "fractional Laplacian of a Gaussian",
        moment(),
        1e-3,
    );
    let limits = || -> Result<(f64, f64, f64)> {
        let g = PeriodicGridFunction::sample(&TestFunction::bump(1)?, 8.0, 256)?;
        let r0 = limits_report(&g, &[0.2, 0.1, 0.05, 0.02])?;
        let inc = r0.rows.windows(2).filter(|w| !(w[1].e0 < w[0].e0)).count() as f64;
        let r1 = limits_report(&g, &[1e-4])?;
        let e1 = r1.rows[0].e1 / r1.laplacian_norm;
        let rq = limits_report(&g, &[0.1, 0.05, 0.01])?;
        let q: Vec<f64> = rq.rows.iter().map(|r| r.q / r.s).collect();
        let spread = max_of(q.iter().copied()) / q.iter().copied().fold(f64::INFINITY, f64::min);
        Ok((inc, e1, spread))
    };
    let r = limits();
    c.push(
        "limit_s_to_0",
        "count of non-decreasing steps of ||(-Δ)^s f - f|| along s = 0.2, 0.1, 0.05, 0.02",
        "(-Δ)^s f -> f as s -> 0",
        r.as_ref().map(|v| v.0).map_err(Clone::clone),
        0.0,
    );
    c.push(
        "limit_s_to_1",
        "||(-Δ)^(1-s) f + Δf|| / ||Δf|| at s = 1e-4",
        "(-Δ)^s f -> -Δf as s -> 1",
        r.as_ref().map(|v| v.1).map_err(Clone::clone),
        1e-3,
    );
    c.push(
        "difference_quotient",
        "max/min of q(s)/s over s = 0.1, 0.05, 0.01",
        "((-Δ)^s f - f)/s -> log(-Δ) f with rate O(s)",
        r.map(|v| v.2),
        3.0,
    );
}

/// `(4 pi t)^(-3/2) (r / sinh r) e^(-t - r^2/4t)`.
fn p3_closed(r: f64, t: f64) -> f64 {
    let phi = if r == 0.0 { 1.0 } else { r / r.sinh() };
    (4.0 * PI * t).powf(-1.5) * phi * (-t - r * r / (4.0 * t)).exp()
}

fn fit_table(kind: KernelKind, n: usize, s: Option<f64>, grid: Result<Vec<f64>>) -> Result<KernelTable> {
    KernelTable::build(Space::Hyperbolic, kind, n, s, &grid?, None, &kernel_config())
}

fn hyperbolic_checks(c: &mut Checks) {
    let pts = [
        (0.0, 1.0),
        (0.1, 0.01),
        (0.3, 0.1),
        (0.5, 0.5),
        (1.0, 0.5),
        (1.0, 3.0),
        (2.0, 1.0),
        (3.0, 0.2),
        (6.0, 2.0),
        (12.0, 5.0),
    ];
    c.push(
        "heat_h3_closed_form",
        "max rel |p_3 term algebra - closed form| at 10 (r, t)",
        "explicit heat kernel of H^3",
        pts.iter()
            .map(|&(r, t)| heat_kernel(3, r, t).map(|v| rel(v, p3_closed(r, t))))
            .collect::<Result<Vec<_>>>()
            .map(max_of),
        1e-12,
    );
    for n in [2usize, 3] {
        c.push(
            &format!("heat_mass_n{n}"),
            "max |∫ p_n dvol - 1| at t in {0.1, 1, 10}",
            "stochastic completeness of H^n",
            [0.1, 1.0, 10.0]
                .iter()
                .map(|&t| heat_mass(n, t).map(|m| (m - 1.0).abs()))
                .collect::<Result<Vec<_>>>()
                .map(max_of),
            1e-8,
        );
    }
    c.push(
        "chapman_kolmogorov",
        "max |p_0.5 * p_0.5 - p_1| on H^3 at d in {0, 1, 2}",
        "semigroup property of the heat kernel",
        [0.0, 1.0, 2.0]
            .iter()
            .map(|&d| chapman_kolmogorov(3, 0.5, 0.5, d).map(|x| x.abs_error()))
            .collect::<Result<Vec<_>>>()
            .map(max_of),
        1e-6,
    );
    for n in [2usize, 3] {
        let scan = || -> Result<f64> {
            let r = linear_grid(0.0, 10.0, 30)?;
            let t = log_grid(0.01, 10.0, 30)?;
            Ok(dm_ratio_scan(n, &r, &t)?.spread_constant())
        };
        c.push(
            &format!("heat_envelope_n{n}"),
            "comparison constant C of p_n against the two-sided envelope, 30x30 grid",
            "two-sided Gaussian heat kernel bounds on H^n",
            scan(),
            10.0,
        );
    }
    for n in [2usize, 3] {
        for s in [0.25, 0.5, 0.75] {
            let nf = n as f64;
            let small = fit_table(KernelKind::Frac, n, Some(s), log_grid(1e-4, 1e-2, 12))
                .and_then(|t| asympt_fit(&t, Regime::SmallR, FitModel::Power))
                .map(|f| rel(f.coef("log_r"), -(nf + 2.0 * s)));
            c.push(
                &format!("frac_kernel_small_n{n}_s{s}"),
                "rel error of the fitted small-r exponent against -(n+2s)",
                "fractional kernel asymptotics",
                small,
                0.02,
            );
            let large = fit_table(KernelKind::Frac, n, Some(s), linear_grid(30.0, 120.0, 24))
                .and_then(|t| asympt_fit(&t, Regime::LargeR, FitModel::PowerExp));
            c.push(
                &format!("frac_kernel_rate_n{n}_s{s}"),
                "rel error of the fitted exponential rate against -(n-1)",
                "fractional kernel asymptotics",
                large.as_ref().map(|f| rel(f.coef("r"), -(nf - 1.0))).map_err(Clone::clone),
                0.02,
            );
            c.push(
                &format!("frac_kernel_power_n{n}_s{s}"),
                "rel error of the fitted large-r power against -(1+s)",
                "fractional kernel asymptotics",
                large.map(|f| rel(f.coef("log_r"), -(1.0 + s))),
                0.10,
            );
        }
    }
    for n in [2usize, 3] {
        let nf = n as f64;
        c.push(
            &format!("k1_small_n{n}"),
            "rel error of the fitted small-r K1 exponent against -n",
            "log kernel asymptotics",
            fit_table(KernelKind::Log1, n, None, log_grid(1e-4, 1e-2, 12))
                .and_then(|t| asympt_fit(&t, Regime::SmallR, FitModel::Power))
                .map(|f| rel(f.coef("log_r"), -nf)),
            0.02,
        );
        c.push(
            &format!("k1_gaussian_n{n}"),
            "rel error of the fitted r² coefficient of log K1 against -1/4",
            "log kernel asymptotics",
            fit_table(KernelKind::Log1, n, None, linear_grid(5.0, 20.0, 24))
                .and_then(|t| asympt_fit(&t, Regime::LargeR, FitModel::GaussianTail))
                .map(|f| rel(f.coef("r2"), -0.25)),
            0.02,
        );
        let k2 = fit_table(KernelKind::Log2, n, None, linear_grid(20.0, 60.0, 24))
            .and_then(|t| asympt_fit(&t, Regime::LargeR, FitModel::PowerExp));
        c.push(
            &format!("k2_rate_n{n}"),
            "rel error of the fitted K2 exponential rate against -(n-1)",
            "log kernel asymptotics",
            k2.as_ref().map(|f| rel(f.coef("r"), -(nf - 1.0))).map_err(Clone::clone),
            0.02,
        );
        c.push(
            &format!("k2_power_n{n}"),
            "rel error of the fitted K2 power against -1",
            "log kernel asymptotics",
            k2.map(|f| rel(f.coef("log_r"), -1.0)),
            0.15,
        );
        c.push(
            &format!("k2_flat_n{n}"),
            "(max - min)/max of K2 over r in [0.01, 0.1]",
            "K2 is bounded near the origin",
            fit_table(KernelKind::Log2, n, None, log_grid(0.01, 0.1, 10)).map(|t| {
                let hi = max_of(t.values.iter().copied());
                let lo = t.values.iter().copied().fold(f64::INFINITY, f64::min);
                (hi - lo) / hi
            }),
            0.10,
        );
    }
    for p in [1.5, 2.0] {
        c.push(
            &format!("k2_lp_p{p}"),
            "rel change of ||K2||_(L^p(B_R)) on H^3 between R = 20 and R = 30",
            "K2 lies in L^p for p > 1",
            kernel_norms(3, p, &[20.0, 30.0]).map(|r| r.last_rel_change),
            1e-6,
        );
    }
    c.push(
        "k2_l1_log_growth",
        "|g2/g1 - 1| for the L^1 increments per unit log R, R = 13.3, 20, 30",
        "K2 norm on balls grows like log R for p = 1",
        kernel_norms(3, 1.0, &[40.0 / 3.0, 20.0, 30.0]).map(|r| (r.log_growth_rates[1] / r.log_growth_rates[0] - 1.0).abs()),
        0.20,
    );
    let split = || -> Result<f64> {
        let f = HyperRadialFunction::bump(2.0)?;
        let mut worst = 0.0f64;
        for x in [0.0, 1.0] {
            let r = split_check(3, &f, x)?;
            worst = worst.max(r.residual / (1.0 + r.full.abs()));
        }
        Ok(worst)
    };
    c.push(
        "split_identity",
        "|near + far + remainder - full| / (1 + |full|) for a bump on H^3 at d in {0, 1}",
        "near/far split of the pointwise log Laplacian",
        split(),
        1e-8,
    );
    let energy = || -> Result<f64> {
        let r = energy_inequality(3, &HyperRadialFunction::bump(1.0)?)?;
        Ok(r.lhs / r.rhs_abs.min(r.rhs_signed))
    };
    c.push(
        "remainder_energy",
        "∫|R_3 f||f| divided by the right-hand side of the energy bound",
        "L^2 bound for the remainder",
        energy(),
        1.0,
    );
    c.push(
        "frac_kernel_routes",
        "max rel diff of time-quadrature and Bessel kernels, n in {3,5}, s in {1/4,1/2,3/4}, r in {0.5,1,2,4}",
        "closed form of the fractional kernel in odd dimensions",
        (|| -> Result<f64> {
            let cfg = kernel_config();
            let mut worst = 0.0f64;
            for n in [3usize, 5] {
                for s in [0.25, 0.5, 0.75] {
                    for r in [0.5, 1.0, 2.0, 4.0] {
                        let a = frac_kernel(n, s, r, KernelRoute::TimeQuadrature, &cfg)?;
                        let b = frac_kernel(n, s, r, KernelRoute::BesselClosedForm, &cfg)?;
                        worst = worst.max(rel(a, b));
                    }
                }
            }
            Ok(worst)
        })(),
        1e-7,
    );
}

fn spectral_checks(c: &mut Checks) {
    let cfg = tight();
    c.push(
        "bochner_eigen",
        "max |∫(e^-t - e^-λt)/t dt - log λ| for λ = l(l+1), l = 1..5",
        "Bochner formula on an eigenbasis",
        (1..=5u32)
            .map(|l| bochner_eigen_log((l * (l + 1)) as f64, &cfg).map(|b| b.abs_error))
            .collect::<Result<Vec<_>>>()
            .map(max_of),
        1e-10,
    );
    let sphere = || -> Result<f64> {
        let m = EigenModel::sphere2(3);
        let i = EigenModel::sphere_index(1, 0);
        let out = apply_phi(&m, &SpectralCoefficients::unit(&m, i)?, &PhiSpec::Log)?;
        Ok((out.coeffs[i] - LN_2).abs())
    };
    c.push("sphere_log", "|log(-Δ) Y_(1,0) coefficient - log 2|", "spectral calculus on S^2", sphere(), 1e-15);
    c.push(
        "halfline_mass",
        "|quadrature mass - erf(x/2√t)| at t = x = 1",
        "mass of the killed half-line heat kernel",
        halfline_mass_by_quadrature(1.0, 1.0, &cfg).and_then(|q| Ok((q - halfline_mass(1.0, 1.0)?).abs())),
        1e-10,
    );
    let ss = [0.2, 0.1, 0.05, 0.02];
    let vs = ss.iter().map(|&s| massloss_vs(1.0, s, &cfg)).collect::<Result<Vec<_>>>();
    c.push(
        "massloss_monotone",
        "count of non-increasing steps of V_s(1) along s = 0.2, 0.1, 0.05, 0.02",
        "V_s -> 1 - H as s -> 0",
        vs.as_ref()
            .map(|v| v.windows(2).filter(|w| !(w[1] > w[0])).count() as f64)
            .map_err(Clone::clone),
        0.0,
    );
    c.push(
        "massloss_limit",
        "|extrapolated V_0(1) - 1|",
        "V_s -> 1 - H as s -> 0",
        vs.and_then(|v| extrapolate_to_zero(&ss, &v)).map(|l| (l - 1.0).abs()),
        1e-2,
    );
    let discrepancy = || -> Result<f64> {
        let f = HalfLineProfile::bump(1.0, 2.0)?;
        let r = frac_discrepancy_halfline(&f, 0.5, 1.5, &cfg)?;
        Ok(r.residual / (1.0 + r.a.abs()))
    };
    c.push(
        "spectral_vs_heat",
        "|A - B - V_s(x) f(x)| / (1 + |A|), bump on [1, 2], x = 1.5, s = 1/2",
        "spectral minus heat-kernel fractional Laplacian equals V_s",
        discrepancy(),
        1e-6,
    );
    let table = embedding_counterexample(0.25, &[1000, 1_000_000]);
    c.push(
        "embedding_g",
        "6 - (G(10^6) - G(10^3))",
        "H^(2ε) is not contained in H^log",
        table.as_ref().map(|t| 6.0 - (t.rows[1].g - t.rows[0].g)).map_err(Clone::clone),
        0.0,
    );
    c.push(
        "embedding_f",
        "F(10^6) - F(10^3) at ε = 1/4",
        "H^(2ε) is not contained in H^log",
        table.map(|t| t.rows[1].f - t.rows[0].f),
        1e-3,
    );
}
