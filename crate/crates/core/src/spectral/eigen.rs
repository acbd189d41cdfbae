//! Functional calculus `φ(-Δ)` on explicit eigenbases.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quad::{frullani_log, QuadratureConfig};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ModelId {
    Torus { n: usize, side_length: f64, points_per_axis: usize },
    Sphere2 { l_max: usize },
    Abstract,
}

/// Eigenvalues of `-Δ`, nondecreasing and listed with multiplicity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenModel {
    pub id: ModelId,
    pub eigenvalues: Vec<f64>,
}

impl EigenModel {
    /// `|2 pi k / L|^2` for `k` in `[-N/2, N/2)^n`.
    pub fn torus(n: usize, side_length: f64, points_per_axis: usize) -> Result<Self> {
        if !(1..=3).contains(&n) || !(side_length > 0.0) || points_per_axis < 2 || points_per_axis % 2 != 0 {
            return Err(Error::domain("EigenModel::torus", "need n in 1..=3, L > 0 and even N"));
        }
        let m = points_per_axis as i64;
        let w = 2.0 * PI / side_length;
        let total = points_per_axis.pow(n as u32);
        let mut eigenvalues: Vec<f64> = (0..total)
            .map(|mut j| {
                let mut lam = 0.0;
                for _ in 0..n {
                    let k = (j % points_per_axis) as i64 - m / 2;
                    lam += (w * k as f64).powi(2);
                    j /= points_per_axis;
                }
                lam
            })
            .collect();
        eigenvalues.sort_by(f64::total_cmp);
        Ok(EigenModel {
            id: ModelId::Torus {
                n,
                side_length,
                points_per_axis,
            },
            eigenvalues,
        })
    }

    /// `l (l + 1)` with multiplicity `2 l + 1`, `l <= l_max`.
    pub fn sphere2(l_max: usize) -> Self {
        let eigenvalues = (0..=l_max)
            .flat_map(|l| std::iter::repeat((l * (l + 1)) as f64).take(2 * l + 1))
            .collect();
        EigenModel {
            id: ModelId::Sphere2 { l_max },
            eigenvalues,
        }
    }

    pub fn from_eigenvalues(mut eigenvalues: Vec<f64>) -> Result<Self> {
        if eigenvalues.iter().any(|&l| !(l >= 0.0 && l.is_finite())) {
            return Err(Error::domain("EigenModel", "eigenvalues must be finite and nonnegative"));
        }
        eigenvalues.sort_by(f64::total_cmp);
        Ok(EigenModel {
            id: ModelId::Abstract,
            eigenvalues,
        })
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    /// Index of the first eigenvalue of `Y_(l, m)` on the sphere, i.e. `l^2`.
    pub fn sphere_index(l: usize, m: i64) -> usize {
        (l * l) as usize + (m + l as i64) as usize
    }
}

/// Coefficients of a function in the model's eigenbasis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralCoefficients {
    pub coeffs: Vec<f64>,
    /// `sum |c|^2` over eigenvalue-zero modes removed by the log symbol.
    pub annihilated: f64,
}

impl SpectralCoefficients {
    pub fn new(model: &EigenModel, coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.len() != model.len() {
            return Err(Error::domain("SpectralCoefficients", "length does not match the model"));
        }
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::domain("SpectralCoefficients", "coefficients must be finite"));
        }
        Ok(SpectralCoefficients { coeffs, annihilated: 0.0 })
    }

    pub fn unit(model: &EigenModel, index: usize) -> Result<Self> {
        let mut c = vec![0.0; model.len()];
        *c.get_mut(index).ok_or_else(|| Error::domain("SpectralCoefficients::unit", "index out of range"))? = 1.0;
        Self::new(model, c)
    }
}

/// The function `φ` in `φ(-Δ)`.
#[derive(Clone)]
pub enum PhiSpec {
    Frac(f64),
    Log,
    Heat(f64),
    /// `(λ^s - 1) / s`, which tends to `log λ` as `s -> 0`.
    ShiftedFracQuotient(f64),
    Custom(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
}

impl fmt::Debug for PhiSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PhiSpec::Frac(s) => write!(f, "Frac({s})"),
            PhiSpec::Log => write!(f, "Log"),
            PhiSpec::Heat(t) => write!(f, "Heat({t})"),
            PhiSpec::ShiftedFracQuotient(s) => write!(f, "ShiftedFracQuotient({s})"),
            PhiSpec::Custom(_) => write!(f, "Custom"),
        }
    }
}

impl PhiSpec {
    pub fn validate(&self) -> Result<()> {
        match *self {
            PhiSpec::Frac(s) | PhiSpec::ShiftedFracQuotient(s) if !(s > 0.0 && s < 1.0) => {
                Err(Error::domain("PhiSpec", format!("s must lie in (0, 1), got {s}")))
            }
            PhiSpec::Heat(t) if !(t > 0.0 && t.is_finite()) => Err(Error::domain("PhiSpec", format!("need t > 0, got {t}"))),
            _ => Ok(()),
        }
    }

    /// `φ(λ)`; for `Log` at `λ = 0` this is `None` (the mode is projected out).
    pub fn eval(&self, lam: f64) -> Option<f64> {
        match self {
            PhiSpec::Frac(s) => Some(lam.powf(*s)),
            PhiSpec::Log => (lam > 0.0).then(|| lam.ln()),
            PhiSpec::Heat(t) => Some((-t * lam).exp()),
            PhiSpec::ShiftedFracQuotient(s) => Some(if lam == 0.0 { -1.0 / s } else { (s * lam.ln()).exp_m1() / s }),
            PhiSpec::Custom(g) => Some(g(lam)),
        }
    }
}

/// `c_j <- φ(λ_j) c_j`. Under `Log` the eigenvalue-zero coefficients are set
/// to zero and their squared mass is added to `annihilated`.
pub fn apply_phi(model: &EigenModel, coeffs: &SpectralCoefficients, phi: &PhiSpec) -> Result<SpectralCoefficients> {
    phi.validate()?;
    if coeffs.coeffs.len() != model.len() {
        return Err(Error::domain("apply_phi", "coefficients do not match the model"));
    }
    let mut annihilated = coeffs.annihilated;
    let out = model
        .eigenvalues
        .iter()
        .zip(&coeffs.coeffs)
        .map(|(&lam, &c)| match phi.eval(lam) {
            Some(m) => m * c,
            None => {
                annihilated += c * c;
                0.0
            }
        })
        .collect();
    Ok(SpectralCoefficients { coeffs: out, annihilated })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BochnerEigen {
    pub lambda: f64,
    /// `int_0^inf (e^-t - e^(-λt)) / t dt` by quadrature.
    pub value: f64,
    pub log: f64,
    pub abs_error: f64,
}

/// The Bochner integral for a single eigenvalue, against `log λ`.
pub fn bochner_eigen_log(lambda: f64, cfg: &QuadratureConfig) -> Result<BochnerEigen> {
    let value = frullani_log(lambda, cfg)?;
    let log = lambda.ln();
    Ok(BochnerEigen {
        lambda,
        value,
        log,
        abs_error: (value - log).abs(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SobolevNorms {
    /// `sum (1 + λ^(2s)) |c|^2`, zero modes counted once.
    pub h_s_squared: f64,
    /// `sum (1 + (log λ)^2) |c|^2`, zero modes counted once.
    pub h_log_squared: f64,
}

pub fn sobolev_norms(model: &EigenModel, coeffs: &SpectralCoefficients, s: f64) -> Result<SobolevNorms> {
    if !(s >= 0.0 && s.is_finite()) {
        return Err(Error::domain("sobolev_norms", format!("need s >= 0, got {s}")));
    }
    if coeffs.coeffs.len() != model.len() {
        return Err(Error::domain("sobolev_norms", "coefficients do not match the model"));
    }
    let (mut hs, mut hl) = (0.0, 0.0);
    for (&lam, &c) in model.eigenvalues.iter().zip(&coeffs.coeffs) {
        let c2 = c * c;
        if lam == 0.0 {
            hs += c2;
            hl += c2;
        } else {
            hs += (1.0 + lam.powf(2.0 * s)) * c2;
            hl += (1.0 + lam.ln().powi(2)) * c2;
        }
    }
    Ok(SobolevNorms {
        h_s_squared: hs,
        h_log_squared: hl,
    })
}
