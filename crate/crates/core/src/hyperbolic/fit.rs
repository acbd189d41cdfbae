//! Least-squares fits of `log K(r)` for asymptotic exponents and rates.

use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use super::table::KernelTable;
use crate::error::{Error, Result};

/// Upper edge of the small-radius window.
pub const SMALL_R_MAX: f64 = 0.3;
/// Lower edge of the large-radius window.
pub const LARGE_R_MIN: f64 = 3.0;
/// Fewest points accepted in a window.
pub const MIN_POINTS: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    SmallR,
    LargeR,
}

/// Regressors for `log K`: always a constant, then
/// `log r` (power), `log r, r` (power_exp) or `log r, r, r^2` (gaussian_tail).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FitModel {
    Power,
    PowerExp,
    GaussianTail,
}

impl FitModel {
    fn columns(&self) -> &'static [&'static str] {
        match self {
            FitModel::Power => &["const", "log_r"],
            FitModel::PowerExp => &["const", "log_r", "r"],
            FitModel::GaussianTail => &["const", "log_r", "r", "r2"],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitReport {
    pub regime: Regime,
    pub model: FitModel,
    /// Keys `const`, `log_r`, `r`, `r2` as present in the model.
    pub coefficients: BTreeMap<String, f64>,
    /// Root-mean-square residual of `log K`.
    pub residual: f64,
    pub points: usize,
}

impl FitReport {
    pub fn coef(&self, name: &str) -> f64 {
        self.coefficients.get(name).copied().unwrap_or(f64::NAN)
    }
}

/// Fit the table's points inside the regime window.
pub fn asympt_fit(table: &KernelTable, regime: Regime, model: FitModel) -> Result<FitReport> {
    let pts: Vec<(f64, f64)> = table
        .r_grid
        .iter()
        .zip(&table.values)
        .filter(|(&r, _)| match regime {
            Regime::SmallR => r > 0.0 && r <= SMALL_R_MAX,
            Regime::LargeR => r >= LARGE_R_MIN,
        })
        .map(|(&r, &v)| (r, v))
        .collect();
    if pts.len() < MIN_POINTS {
        return Err(Error::domain(
            "asympt_fit",
            format!("{} points in the window, need at least {MIN_POINTS}", pts.len()),
        ));
    }
    if pts.iter().any(|&(_, v)| !(v > 0.0)) {
        return Err(Error::domain("asympt_fit", "values must be positive"));
    }
    let cols = model.columns();
    let design = DMatrix::from_fn(pts.len(), cols.len(), |i, j| {
        let r = pts[i].0;
        match cols[j] {
            "const" => 1.0,
            "log_r" => r.ln(),
            "r" => r,
            _ => r * r,
        }
    });
    let y = DVector::from_iterator(pts.len(), pts.iter().map(|&(_, v)| v.ln()));
    let beta = least_squares(&design, &y)?;
    let resid = &design * &beta - &y;
    let residual = (resid.norm_squared() / pts.len() as f64).sqrt();
    Ok(FitReport {
        regime,
        model,
        coefficients: cols.iter().zip(beta.iter()).map(|(k, &v)| (k.to_string(), v)).collect(),
        residual,
        points: pts.len(),
    })
}

/// Column-equilibrated SVD solve; rank deficiency is an error.
fn least_squares(a: &DMatrix<f64>, y: &DVector<f64>) -> Result<DVector<f64>> {
    let scales: Vec<f64> = (0..a.ncols()).map(|j| a.column(j).norm()).collect();
    if scales.iter().any(|&s| s == 0.0 || !s.is_finite()) {
        return Err(Error::IllConditioned);
    }
    let mut scaled = a.clone();
    for (j, s) in scales.iter().enumerate() {
        scaled.column_mut(j).scale_mut(1.0 / s);
    }
    let svd = scaled.svd(true, true);
    let smax = svd.singular_values.max();
    let smin = svd.singular_values.min();
    if smin <= 1e-10 * smax {
        return Err(Error::IllConditioned);
    }
    let z = svd.solve(y, 0.0).map_err(|_| Error::IllConditioned)?;
    Ok(DVector::from_iterator(z.len(), z.iter().zip(&scales).map(|(v, s)| v / s)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyperbolic::kernels::KernelRoute;
    use crate::hyperbolic::table::{KernelKind, Space};
    use crate::quad::QuadratureConfig;

    fn synthetic(r_grid: Vec<f64>, f: impl Fn(f64) -> f64) -> KernelTable {
        KernelTable {
            space: Space::Hyperbolic,
            kind: KernelKind::Log2,
            n: 3,
            parameter: None,
            route: KernelRoute::TimeQuadrature,
            cfg: QuadratureConfig::default(),
            values: r_grid.iter().map(|&r| f(r)).collect(),
            r_grid,
        }
    }

    #[test]
    fn recovers_exact_models() {
        let t = synthetic((0..20).map(|i| 3.0 + i as f64).collect(), |r: f64| 2.0 * r.powf(-1.5) * (-2.0 * r - 0.25 * r * r).exp());
        let f = asympt_fit(&t, Regime::LargeR, FitModel::GaussianTail).unwrap();
        assert!((f.coef("log_r") + 1.5).abs() < 1e-8);
        assert!((f.coef("r") + 2.0).abs() < 1e-8);
        assert!((f.coef("r2") + 0.25).abs() < 1e-9);
        assert!((f.coef("const") - 2f64.ln()).abs() < 1e-7);
        assert!(f.residual < 1e-10);

        let t = synthetic((1..10).map(|i| 0.03 * i as f64).collect(), |r: f64| r.powf(-4.0));
        let f = asympt_fit(&t, Regime::SmallR, FitModel::Power).unwrap();
        assert!((f.coef("log_r") + 4.0).abs() < 1e-10);
    }

    #[test]
    fn too_few_points() {
        let t = synthetic(vec![3.0, 4.0, 5.0], |r| (-r).exp());
        assert!(asympt_fit(&t, Regime::LargeR, FitModel::PowerExp).is_err());
        let t = synthetic(vec![0.5, 1.0, 2.0, 2.5, 2.9, 4.0], |r| (-r).exp());
        assert!(asympt_fit(&t, Regime::SmallR, FitModel::Power).is_err());
    }

    #[test]
    fn rank_deficient_design() {
        // all radii equal in the window: log r and r are constant columns
        let mut t = synthetic(vec![5.0; 8], |r| (-r).exp());
        t.r_grid = vec![5.0; 8];
        assert!(matches!(asympt_fit(&t, Regime::LargeR, FitModel::PowerExp), Err(Error::IllConditioned)));
    }
}
