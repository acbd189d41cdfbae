//! Behaviour of `(-Δ)^s` on a torus as `s -> 0` and `s -> 1`.

use serde::{Deserialize, Serialize};

use super::grid::PeriodicGridFunction;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LimitRow {
    pub s: f64,
    /// `||(-Δ)^s f - f||_2`.
    pub e0: f64,
    /// `||(-Δ)^(1-s) f + Δ f||_2`.
    pub e1: f64,
    /// `||((-Δ)^s f - f)/s - log(-Δ) f||_2`.
    pub q: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LimitsReport {
    pub rows: Vec<LimitRow>,
    /// `||Δ f||_2`, the scale for `e1`.
    pub laplacian_norm: f64,
    /// `||f||_2` after the mean is removed.
    pub f_norm: f64,
}

/// The three limit errors along `s_grid`. The mean of `f` is removed first,
/// so that the constant mode (eigenvalue zero) plays no part.
pub fn limits_report(f: &PeriodicGridFunction, s_grid: &[f64]) -> Result<LimitsReport> {
    if s_grid.is_empty() || s_grid.iter().any(|&s| !(s > 0.0 && s < 1.0)) {
        return Err(Error::domain("limits_report", "every s must lie in (0, 1)"));
    }
    let f = f.remove_mean();
    let lap = f.neg_laplacian()?;
    let log = f.log_multiplier()?;
    let rows = crate::par::try_map(s_grid, |&s| {
        let fs = f.frac_multiplier(s)?;
        let e0 = fs.combine(1.0, &f, -1.0)?.l2_norm();
        let e1 = f.frac_multiplier(1.0 - s)?.combine(1.0, &lap, -1.0)?.l2_norm();
        let q = fs.combine(1.0 / s, &f, -1.0 / s)?.combine(1.0, &log, -1.0)?.l2_norm();
        Ok(LimitRow { s, e0, e1, q })
    })?;
    Ok(LimitsReport {
        rows,
        laplacian_norm: lap.l2_norm(),
        f_norm: f.l2_norm(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::euclid::functions::TestFunction;

    #[test]
    fn limits_on_a_bump() {
        let b = TestFunction::bump(1).unwrap();
        let g = PeriodicGridFunction::sample(&b, 8.0, 256).unwrap();
        let rep = limits_report(&g, &[0.2, 0.1, 0.05, 0.02]).unwrap();
        assert!(rep.rows.windows(2).all(|w| w[1].e0 < w[0].e0));
        for w in rep.rows.windows(2) {
            let ratio = (w[1].q / w[1].s) / (w[0].q / w[0].s);
            assert!((0.3..=3.0).contains(&ratio), "{ratio}");
        }
        let near_one = limits_report(&g, &[1e-4]).unwrap();
        assert!(near_one.rows[0].e1 <= 1e-3 * near_one.laplacian_norm);
    }

    #[test]
    fn rejects_bad_s() {
        let g = PeriodicGridFunction::from_fn(1, 1.0, 8, |x| x[0]).unwrap();
        assert!(limits_report(&g, &[]).is_err());
        assert!(limits_report(&g, &[1.0]).is_err());
    }
}
