//! Constants of the pointwise formulas on `R^n`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hyperbolic::{frac_kernel_time, sphere_area, EuclideanHeat};
use crate::quad::QuadratureConfig;
use crate::specfun::{digamma, gamma, gamma_ln, EULER_GAMMA};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EuclideanConstants {
    pub n: usize,
    /// `pi^(-n/2) Gamma(n/2) = 2 / |S^(n-1)|`.
    pub c_n: f64,
    /// `2 log 2 + psi(n/2) - gamma`.
    pub rho_n: f64,
    /// `|S^(n-1)|`.
    pub sphere_area: f64,
}

fn check_n(n: usize) -> Result<()> {
    if !(1..=10).contains(&n) {
        return Err(Error::domain("constants", format!("dimension must be in 1..=10, got {n}")));
    }
    Ok(())
}

pub fn constants(n: usize) -> Result<EuclideanConstants> {
    check_n(n)?;
    let a = n as f64 / 2.0;
    Ok(EuclideanConstants {
        n,
        c_n: (gamma_ln(a)? - a * PI.ln()).exp(),
        rho_n: 2.0 * 2f64.ln() + digamma(a)? - EULER_GAMMA,
        sphere_area: sphere_area(n),
    })
}

/// `c_(n,s)` in `(-Δ)^s f(x) = c_(n,s) P.V. int (f(x) - f(y)) |x - y|^(-n-2s) dy`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FracConstant {
    pub n: usize,
    pub s: f64,
    pub c_ns: f64,
}

impl FracConstant {
    /// `s 4^s Gamma(n/2 + s) / (pi^(n/2) Gamma(1 - s))`.
    pub fn new(n: usize, s: f64) -> Result<Self> {
        check_n(n)?;
        if !(s > 0.0 && s < 1.0) {
            return Err(Error::domain("FracConstant", format!("s must lie in (0, 1), got {s}")));
        }
        let a = n as f64 / 2.0;
        let ln = s.ln() + s * 4f64.ln() + gamma_ln(a + s)? - a * PI.ln() - gamma_ln(1.0 - s)?;
        Ok(FracConstant { n, s, c_ns: ln.exp() })
    }

    /// The same constant from the heat semigroup:
    /// `s / Gamma(1-s) * int_0^inf (4 pi t)^(-n/2) e^(-1/4t) t^(-1-s) dt`
    /// (the kernel at `r = 1`), by time quadrature.
    pub fn from_heat_semigroup(n: usize, s: f64, cfg: &QuadratureConfig) -> Result<f64> {
        check_n(n)?;
        let k = frac_kernel_time(&EuclideanHeat { n }, s, 1.0, cfg)?;
        Ok(s / gamma(1.0 - s)? * k)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FracConstantCheck {
    pub n: usize,
    pub s: f64,
    pub formula: f64,
    pub semigroup: f64,
    pub rel_diff: f64,
}

/// Compare the closed form of `c_(n,s)` with time quadrature on a grid of `(n, s)`.
pub fn frac_constant_check(ns: &[usize], ss: &[f64], cfg: &QuadratureConfig) -> Result<Vec<FracConstantCheck>> {
    let pairs: Vec<(usize, f64)> = ns.iter().flat_map(|&n| ss.iter().map(move |&s| (n, s))).collect();
    crate::par::try_map(&pairs, |&(n, s)| {
        let formula = FracConstant::new(n, s)?.c_ns;
        let semigroup = FracConstant::from_heat_semigroup(n, s, cfg)?;
        Ok(FracConstantCheck {
            n,
            s,
            formula,
            semigroup,
            rel_diff: (formula - semigroup).abs() / formula.abs(),
        })
    })
}
