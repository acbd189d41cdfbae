//! Functions sampled on a periodic grid and Fourier multipliers acting on them.

use std::f64::consts::PI;
use std::path::Path;

use rustfft::num_complex::Complex;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use super::functions::TestFunction;
use crate::error::{Error, Result};
use crate::io;
use crate::quad::{integrate_semiinfinite, QuadratureConfig};

/// Samples on `[-L/2, L/2)^n` with `N` points per axis, last axis fastest.
#[derive(Debug, Clone, PartialEq)]
pub struct PeriodicGridFunction {
    pub n: usize,
    pub side_length: f64,
    pub points_per_axis: usize,
    pub samples: Vec<f64>,
}

/// JSON header written next to a grid CSV.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridHeader {
    pub n: usize,
    #[serde(rename = "L")]
    pub side_length: f64,
    #[serde(rename = "N")]
    pub points_per_axis: usize,
}

/// Spectrum of a grid function: unnormalized DFT coefficients, same layout as the samples.
#[derive(Debug, Clone)]
pub struct Spectrum {
    pub n: usize,
    pub side_length: f64,
    pub points_per_axis: usize,
    pub coeffs: Vec<Complex<f64>>,
}

fn check_shape(n: usize, side_length: f64, points: usize) -> Result<()> {
    if !(1..=3).contains(&n) {
        return Err(Error::domain("PeriodicGridFunction", format!("dimension must be 1, 2 or 3, got {n}")));
    }
    if !(side_length > 0.0 && side_length.is_finite()) {
        return Err(Error::domain("PeriodicGridFunction", "side length must be positive"));
    }
    if points < 2 || points % 2 != 0 {
        return Err(Error::domain("PeriodicGridFunction", format!("points per axis must be even, got {points}")));
    }
    Ok(())
}

/// Signed frequency index of position `j` in an FFT of length `m`, in `[-m/2, m/2)`.
fn freq_index(j: usize, m: usize) -> i64 {
    if j < m / 2 {
        j as i64
    } else {
        j as i64 - m as i64
    }
}

/// In-place n-dimensional FFT by one-dimensional transforms along each axis.
fn fft_nd(data: &mut [Complex<f64>], n: usize, m: usize, inverse: bool) {
    let mut planner = FftPlanner::new();
    let fft = if inverse { planner.plan_fft_inverse(m) } else { planner.plan_fft_forward(m) };
    let mut line = vec![Complex::new(0.0, 0.0); m];
    for axis in 0..n {
        let stride = m.pow((n - 1 - axis) as u32);
        let block = stride * m;
        for base in (0..data.len()).step_by(block) {
            for off in 0..stride {
                for (k, v) in line.iter_mut().enumerate() {
                    *v = data[base + off + k * stride];
                }
                fft.process(&mut line);
                for (k, v) in line.iter().enumerate() {
                    data[base + off + k * stride] = *v;
                }
            }
        }
    }
}

impl PeriodicGridFunction {
    pub fn new(n: usize, side_length: f64, points_per_axis: usize, samples: Vec<f64>) -> Result<Self> {
        check_shape(n, side_length, points_per_axis)?;
        if samples.len() != points_per_axis.pow(n as u32) {
            return Err(Error::domain("PeriodicGridFunction", "sample count must be N^n"));
        }
        if let Some(i) = samples.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { at: i as f64 });
        }
        Ok(PeriodicGridFunction {
            n,
            side_length,
            points_per_axis,
            samples,
        })
    }

    pub fn from_fn(n: usize, side_length: f64, points_per_axis: usize, f: impl Fn(&[f64]) -> f64) -> Result<Self> {
        check_shape(n, side_length, points_per_axis)?;
        let len = points_per_axis.pow(n as u32);
        let mut x = vec![0.0; n];
        let samples = (0..len)
            .map(|i| {
                Self::coords_into(n, side_length, points_per_axis, i, &mut x);
                f(&x)
            })
            .collect();
        Self::new(n, side_length, points_per_axis, samples)
    }

    pub fn sample(f: &TestFunction, side_length: f64, points_per_axis: usize) -> Result<Self> {
        Self::from_fn(f.dimension, side_length, points_per_axis, |x| f.eval(x))
    }

    pub fn spacing(&self) -> f64 {
        self.side_length / self.points_per_axis as f64
    }

    fn coords_into(n: usize, side_length: f64, m: usize, index: usize, out: &mut [f64]) {
        let h = side_length / m as f64;
        let mut rest = index;
        for axis in (0..n).rev() {
            out[axis] = -0.5 * side_length + h * (rest % m) as f64;
            rest /= m;
        }
    }

    /// Coordinates of sample `index`.
    pub fn coords(&self, index: usize) -> Vec<f64> {
        let mut x = vec![0.0; self.n];
        Self::coords_into(self.n, self.side_length, self.points_per_axis, index, &mut x);
        x
    }

    /// Index of the grid point at `x`, if `x` is a node.
    pub fn index_of(&self, x: &[f64]) -> Option<usize> {
        if x.len() != self.n {
            return None;
        }
        let h = self.spacing();
        let m = self.points_per_axis;
        let mut index = 0;
        for &xi in x {
            let j = (xi + 0.5 * self.side_length) / h;
            let jr = j.round();
            if (j - jr).abs() > 1e-9 || jr < 0.0 || jr >= m as f64 {
                return None;
            }
            index = index * m + jr as usize;
        }
        Some(index)
    }

    pub fn spectrum(&self) -> Spectrum {
        let mut coeffs: Vec<Complex<f64>> = self.samples.iter().map(|&v| Complex::new(v, 0.0)).collect();
        fft_nd(&mut coeffs, self.n, self.points_per_axis, false);
        Spectrum {
            n: self.n,
            side_length: self.side_length,
            points_per_axis: self.points_per_axis,
            coeffs,
        }
    }

    /// Multiply every mode by `symbol(|xi|^2)` and transform back.
    pub fn apply_symbol(&self, symbol: impl Fn(f64) -> f64) -> Result<Self> {
        let mut spec = self.spectrum();
        spec.map_symbol(symbol);
        spec.to_grid()
    }

    /// `e^(tΔ) f`.
    pub fn heat_apply(&self, t: f64) -> Result<Self> {
        if !(t > 0.0 && t.is_finite()) {
            return Err(Error::domain("heat_apply", format!("need t > 0, got {t}")));
        }
        self.apply_symbol(|lam| (-t * lam).exp())
    }

    /// `log(-Δ) f` on the mean-zero complement; the mean mode is set to zero.
    pub fn log_multiplier(&self) -> Result<Self> {
        self.apply_symbol(|lam| if lam == 0.0 { 0.0 } else { lam.ln() })
    }

    /// `(-Δ)^s f`.
    pub fn frac_multiplier(&self, s: f64) -> Result<Self> {
        if !(s > 0.0 && s < 1.0) {
            return Err(Error::domain("frac_multiplier", format!("s must lie in (0, 1), got {s}")));
        }
        self.apply_symbol(|lam| if lam == 0.0 { 0.0 } else { lam.powf(s) })
    }

    /// `-Δ f`.
    pub fn neg_laplacian(&self) -> Result<Self> {
        self.apply_symbol(|lam| lam)
    }

    pub fn mean(&self) -> f64 {
        self.samples.iter().sum::<f64>() / self.samples.len() as f64
    }

    pub fn remove_mean(&self) -> Self {
        let m = self.mean();
        self.map(|v| v - m)
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        PeriodicGridFunction {
            samples: self.samples.iter().map(|&v| f(v)).collect(),
            ..self.clone()
        }
    }

    /// `a * self + b * other` on the same grid.
    pub fn combine(&self, a: f64, other: &Self, b: f64) -> Result<Self> {
        if (self.n, self.points_per_axis) != (other.n, other.points_per_axis) || self.side_length != other.side_length {
            return Err(Error::domain("PeriodicGridFunction::combine", "grids differ"));
        }
        Ok(PeriodicGridFunction {
            samples: self.samples.iter().zip(&other.samples).map(|(x, y)| a * x + b * y).collect(),
            ..self.clone()
        })
    }

    /// Discrete `L^2` norm, `sqrt(h^n sum |f|^2)`.
    pub fn l2_norm(&self) -> f64 {
        (self.spacing().powi(self.n as i32) * self.samples.iter().map(|v| v * v).sum::<f64>()).sqrt()
    }

    pub fn max_norm(&self) -> f64 {
        self.samples.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Trigonometric interpolant at an arbitrary point (Nyquist modes dropped).
    pub fn eval_at(&self, x: &[f64]) -> Result<f64> {
        self.spectrum().eval_at(x)
    }

    /// `int_0^inf (e^-t f(x_i) - e^(tΔ) f(x_i)) / t dt` at a node, with the
    /// semigroup applied mode by mode and the time integral done by quadrature.
    /// Requires a mean-zero grid function.
    pub fn log_bochner_at(&self, index: usize, cfg: &QuadratureConfig) -> Result<f64> {
        if index >= self.samples.len() {
            return Err(Error::domain("log_bochner_at", "index out of range"));
        }
        let spec = self.spectrum();
        let scale = f64::abs(spec.coeffs[0].re) / self.samples.len() as f64;
        if scale > 1e-12 * self.max_norm().max(1e-300) {
            return Err(Error::domain("log_bochner_at", "grid function must have zero mean"));
        }
        let x = self.coords(index);
        // contributions of each nonzero eigenvalue at x
        let mut modes: Vec<(f64, f64)> = spec
            .modes()
            .filter(|(_, lam, _)| *lam > 0.0)
            .map(|(j, lam, xi)| (lam, spec.mode_value(j, &xi, &x)))
            .filter(|(_, c)| *c != 0.0)
            .collect();
        modes.sort_by(|a, b| a.0.total_cmp(&b.0));
        let fx = self.samples[index];
        let heat = |t: f64| modes.iter().map(|&(lam, c)| c * (-lam * t).exp()).sum::<f64>();
        let head = |t: f64| {
            if t == 0.0 {
                return 0.0;
            }
            // (e^-t - 1) f(x) + sum c (1 - e^(-lam t)), both O(t)
            let d: f64 = modes.iter().map(|&(lam, c)| -c * (-lam * t).exp_m1()).sum();
            ((-t).exp_m1() * fx + d) / t
        };
        let split = cfg.split_time;
        let a = crate::quad::integrate(head, 0.0, split, crate::quad::SingularityHint::NONE, cfg)?.into_value()?;
        let b = integrate_semiinfinite(|t| ((-t).exp() * fx - heat(t)) / t, split, cfg)?.into_value()?;
        Ok(a + b)
    }

    /// Rows of coordinates then value, plus a `{n, L, N}` JSON sidecar.
    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let mut header: Vec<String> = (0..self.n).map(|i| format!("x{i}")).collect();
        header.push("value".into());
        let header: Vec<&str> = header.iter().map(|s| s.as_str()).collect();
        let rows: Vec<Vec<f64>> = (0..self.samples.len())
            .map(|i| {
                let mut row = self.coords(i);
                row.push(self.samples[i]);
                row
            })
            .collect();
        io::write_csv(path, &header, &rows)?;
        io::write_json(
            &io::sidecar_path(path),
            &GridHeader {
                n: self.n,
                side_length: self.side_length,
                points_per_axis: self.points_per_axis,
            },
        )
    }

    pub fn read_csv(path: &Path) -> Result<Self> {
        let h: GridHeader = io::read_json(&io::sidecar_path(path))?;
        let (_, rows) = io::read_csv(path)?;
        if rows.iter().any(|r| r.len() != h.n + 1) {
            return Err(Error::Io("row width does not match the header".into()));
        }
        Self::new(h.n, h.side_length, h.points_per_axis, rows.iter().map(|r| r[h.n]).collect())
    }
}

impl Spectrum {
    /// `(flat index, |xi|^2, xi)` for every mode.
    pub fn modes(&self) -> impl Iterator<Item = (usize, f64, Vec<f64>)> + '_ {
        let m = self.points_per_axis;
        let w = 2.0 * PI / self.side_length;
        (0..self.coeffs.len()).map(move |j| {
            let mut rest = j;
            let mut xi = vec![0.0; self.n];
            for axis in (0..self.n).rev() {
                xi[axis] = w * freq_index(rest % m, m) as f64;
                rest /= m;
            }
            let lam = xi.iter().map(|v| v * v).sum();
            (j, lam, xi)
        })
    }

    pub fn map_symbol(&mut self, symbol: impl Fn(f64) -> f64) {
        let lams: Vec<f64> = self.modes().map(|(_, lam, _)| lam).collect();
        for (c, lam) in self.coeffs.iter_mut().zip(lams) {
            *c *= symbol(lam);
        }
    }

    pub fn to_grid(&self) -> Result<PeriodicGridFunction> {
        let mut data = self.coeffs.clone();
        fft_nd(&mut data, self.n, self.points_per_axis, true);
        let norm = data.len() as f64;
        PeriodicGridFunction::new(
            self.n,
            self.side_length,
            self.points_per_axis,
            data.iter().map(|c| c.re / norm).collect(),
        )
    }

    fn is_nyquist(&self, j: usize) -> bool {
        let m = self.points_per_axis;
        let mut rest = j;
        for _ in 0..self.n {
            if rest % m == m / 2 {
                return true;
            }
            rest /= m;
        }
        false
    }

    /// Real contribution of mode `j` to the interpolant at `x`.
    fn mode_value(&self, j: usize, xi: &[f64], x: &[f64]) -> f64 {
        if self.is_nyquist(j) {
            return 0.0;
        }
        // samples start at -L/2, so the phase is measured from there
        let phase: f64 = xi.iter().zip(x).map(|(k, xv)| k * (xv + 0.5 * self.side_length)).sum();
        let c = self.coeffs[j];
        (c.re * phase.cos() - c.im * phase.sin()) / self.coeffs.len() as f64
    }

    pub fn eval_at(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.n {
            return Err(Error::domain("eval_at", "point dimension does not match the grid"));
        }
        Ok(self.modes().map(|(j, _, xi)| self.mode_value(j, &xi, x)).sum())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn cos_grid(n: usize, l: f64, m: usize, k: i64) -> PeriodicGridFunction {
        let w = 2.0 * PI * k as f64 / l;
        PeriodicGridFunction::from_fn(n, l, m, |x| (w * x[0]).cos()).unwrap()
    }

    #[test]
    fn heat_on_modes_and_constants() {
        let l = 5.0;
        let f = cos_grid(1, l, 32, 1);
        let t = 0.3;
        let g = f.heat_apply(t).unwrap();
        let decay = (-t * (2.0 * PI / l).powi(2)).exp();
        for (a, b) in g.samples.iter().zip(&f.samples) {
            assert!((a - decay * b).abs() < 1e-14);
        }
        let c = PeriodicGridFunction::from_fn(2, 3.0, 8, |_| 2.5).unwrap();
        assert!(c.heat_apply(4.0).unwrap().samples.iter().all(|v| (v - 2.5).abs() < 1e-14));
        let tiny = f.heat_apply(1e-12).unwrap();
        assert!(tiny.combine(1.0, &f, -1.0).unwrap().max_norm() < 1e-10);
    }

    #[test]
    fn log_of_unit_mode_vanishes() {
        let f = cos_grid(1, 2.0 * PI, 16, 1);
        assert!(f.log_multiplier().unwrap().max_norm() < 1e-14);
        let f = cos_grid(2, 2.0 * PI, 16, 3);
        let g = f.log_multiplier().unwrap();
        for (a, b) in g.samples.iter().zip(&f.samples) {
            assert!((a - 9f64.ln() * b).abs() < 1e-13);
        }
    }

    #[test]
    fn half_powers_compose_to_laplacian() {
        let f = PeriodicGridFunction::from_fn(2, 6.0, 32, |x| (-(x[0] * x[0] + 2.0 * x[1] * x[1])).exp()).unwrap();
        let twice = f.frac_multiplier(0.5).unwrap().frac_multiplier(0.5).unwrap();
        let lap = f.neg_laplacian().unwrap();
        assert!(twice.combine(1.0, &lap, -1.0).unwrap().max_norm() < 1e-10);
        assert!(f.frac_multiplier(1.0).is_err());
    }

    #[test]
    fn interpolant_matches_nodes_and_modes() {
        let f = PeriodicGridFunction::from_fn(2, 4.0, 16, |x| (PI * x[0] / 2.0).sin() * (PI * x[1]).cos()).unwrap();
        let i = 37;
        assert_relative_eq!(f.eval_at(&f.coords(i)).unwrap(), f.samples[i], epsilon = 1e-13);
        let x = [0.123, -0.77];
        let want = (PI * x[0] / 2.0).sin() * (PI * x[1]).cos();
        assert_relative_eq!(f.eval_at(&x).unwrap(), want, epsilon = 1e-13);
        assert_eq!(f.index_of(&f.coords(i)), Some(i));
        assert_eq!(f.index_of(&x), None);
    }

    #[test]
    fn bochner_on_a_mode_is_log_lambda() {
        let l = 2.0 * PI;
        let f = cos_grid(1, l, 16, 3);
        let cfg = QuadratureConfig::new(1e-14, 1e-12, 2000, 1.0).unwrap();
        for i in [0usize, 3, 8] {
            let v = f.log_bochner_at(i, &cfg).unwrap();
            assert!((v - 9f64.ln() * f.samples[i]).abs() < 1e-10, "{v}");
        }
        let nonzero_mean = PeriodicGridFunction::from_fn(1, l, 16, |_| 1.0).unwrap();
        assert!(nonzero_mean.log_bochner_at(0, &cfg).is_err());
    }

    #[test]
    fn csv_round_trip() {
        let f = PeriodicGridFunction::from_fn(2, 3.0, 4, |x| x[0] - 0.3 * x[1]).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("g.csv");
        f.write_csv(&p).unwrap();
        assert_eq!(PeriodicGridFunction::read_csv(&p).unwrap(), f);
        let h: GridHeader = io::read_json(&io::sidecar_path(&p)).unwrap();
        assert_eq!((h.n, h.side_length, h.points_per_axis), (2, 3.0, 4));
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(PeriodicGridFunction::new(1, 1.0, 3, vec![0.0; 3]).is_err());
        assert!(PeriodicGridFunction::new(4, 1.0, 2, vec![0.0; 16]).is_err());
        assert!(PeriodicGridFunction::new(1, 1.0, 4, vec![0.0; 3]).is_err());
        assert!(PeriodicGridFunction::new(1, 1.0, 2, vec![0.0, f64::NAN]).is_err());
    }
}
