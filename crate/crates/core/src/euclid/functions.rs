//! Registry of analytic test functions on `R^n`.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::regularity::Smoothness;

/// Quadrature stops at this radius for the Gaussian, where it is below `1e-31`.
pub const GAUSSIAN_TRUNCATION: f64 = 12.0;

type Eval = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;
type Profile = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

#[derive(Clone)]
pub struct TestFunction {
    pub id: String,
    pub dimension: usize,
    eval: Eval,
    /// Zero outside this ball about the origin; infinite for the Gaussian and Fourier modes.
    pub support_radius: f64,
    /// Radius beyond which the function is treated as zero by the real-space routes.
    pub truncation_radius: f64,
    /// Radii (about the origin) where the profile is not smooth.
    pub kinks: Vec<f64>,
    pub smoothness: Smoothness,
    /// Exact Fourier transform as a function of `|xi|`, when known.
    fourier: Option<Profile>,
}

impl fmt::Debug for TestFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TestFunction")
            .field("id", &self.id)
            .field("dimension", &self.dimension)
            .field("support_radius", &self.support_radius)
            .field("smoothness", &self.smoothness)
            .finish()
    }
}

fn norm(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

fn check_dim(n: usize) -> Result<()> {
    if !(1..=3).contains(&n) {
        return Err(Error::domain("TestFunction", format!("dimension must be 1, 2 or 3, got {n}")));
    }
    Ok(())
}

impl TestFunction {
    fn radial(
        id: &str,
        n: usize,
        support: f64,
        truncation: f64,
        kinks: Vec<f64>,
        smoothness: Smoothness,
        profile: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Result<Self> {
        check_dim(n)?;
        Ok(TestFunction {
            id: id.to_string(),
            dimension: n,
            eval: Arc::new(move |x: &[f64]| profile(norm(x))),
            support_radius: support,
            truncation_radius: truncation,
            kinks,
            smoothness,
            fourier: None,
        })
    }

    /// `exp(-|x|^2 / 2)`.
    pub fn gaussian(n: usize) -> Result<Self> {
        let mut f = Self::radial("gaussian", n, f64::INFINITY, GAUSSIAN_TRUNCATION, vec![], Smoothness::Smooth, |r| {
            (-0.5 * r * r).exp()
        })?;
        let nf = n as f64;
        f.fourier = Some(Arc::new(move |xi: f64| (2.0 * PI).powf(nf / 2.0) * (-0.5 * xi * xi).exp()));
        Ok(f)
    }

    /// `exp(-1 / (1 - |x|^2))` inside the unit ball.
    pub fn bump(n: usize) -> Result<Self> {
        Self::radial("bump", n, 1.0, 1.0, vec![1.0], Smoothness::Smooth, |r| {
            if r < 1.0 {
                (-1.0 / (1.0 - r * r)).exp()
            } else {
                0.0
            }
        })
    }

    /// One on `|x| <= 1/2`, a half cosine down to zero at `|x| = 1`.
    pub fn plateau(n: usize) -> Result<Self> {
        Self::radial("plateau", n, 1.0, 1.0, vec![0.5, 1.0], Smoothness::Holder(1.0), |r| {
            if r <= 0.5 {
                1.0
            } else if r < 1.0 {
                0.5 * (1.0 + (PI * (r - 0.5) / 0.5).cos())
            } else {
                0.0
            }
        })
    }

    /// `(1 - |x|)_+`, Lipschitz.
    pub fn tent(n: usize) -> Result<Self> {
        Self::radial("tent", n, 1.0, 1.0, vec![0.0, 1.0], Smoothness::Holder(1.0), |r| (1.0 - r).max(0.0))
    }

    pub fn zero(n: usize) -> Result<Self> {
        Self::radial("zero", n, 1.0, 1.0, vec![], Smoothness::Smooth, |_| 0.0)
    }

    /// `cos(k . x)`; only meaningful on periodic grids whose frequencies include `k`.
    pub fn cos_mode(k: &[f64]) -> Result<Self> {
        check_dim(k.len())?;
        let k = k.to_vec();
        let n = k.len();
        Ok(TestFunction {
            id: "cos_mode".into(),
            dimension: n,
            eval: Arc::new(move |x: &[f64]| k.iter().zip(x).map(|(a, b)| a * b).sum::<f64>().cos()),
            support_radius: f64::INFINITY,
            truncation_radius: f64::INFINITY,
            kinks: vec![],
            smoothness: Smoothness::Smooth,
            fourier: None,
        })
    }

    /// Names accepted by [`TestFunction::by_id`].
    pub const REGISTRY: [&'static str; 5] = ["gaussian", "bump", "plateau", "tent", "zero"];

    pub fn by_id(id: &str, n: usize) -> Result<Self> {
        match id {
            "gaussian" => Self::gaussian(n),
            "bump" => Self::bump(n),
            "plateau" => Self::plateau(n),
            "tent" => Self::tent(n),
            "zero" => Self::zero(n),
            _ => Err(Error::domain("TestFunction::by_id", format!("unknown function `{id}`"))),
        }
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        (self.eval)(x)
    }

    pub fn fourier(&self, xi: f64) -> Option<f64> {
        self.fourier.as_ref().map(|g| g(xi))
    }

    /// Radii about `x` at which a sphere crosses a kink of the profile.
    pub(crate) fn sphere_breaks(&self, x: &[f64]) -> Vec<f64> {
        let d = norm(x);
        let mut b: Vec<f64> = self.kinks.iter().flat_map(|&k| [(k - d).abs(), k + d]).filter(|&v| v > 0.0).collect();
        b.sort_by(f64::total_cmp);
        b.dedup();
        b
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_lookup() {
        for id in TestFunction::REGISTRY {
            for n in 1..=3 {
                let f = TestFunction::by_id(id, n).unwrap();
                assert_eq!(f.dimension, n);
                let far = vec![f.truncation_radius + 0.1; n];
                assert!(f.eval(&far).abs() < 1e-31);
            }
        }
        assert!(TestFunction::by_id("nope", 1).is_err());
        assert!(TestFunction::bump(4).is_err());
    }

    #[test]
    fn profiles() {
        let b = TestFunction::bump(2).unwrap();
        assert!((b.eval(&[0.0, 0.0]) - (-1f64).exp()).abs() < 1e-15);
        let p = TestFunction::plateau(1).unwrap();
        assert_eq!(p.eval(&[0.3]), 1.0);
        assert!((p.eval(&[0.75]) - 0.5).abs() < 1e-15);
        let c = TestFunction::cos_mode(&[2.0]).unwrap();
        assert!((c.eval(&[PI / 4.0])).abs() < 1e-15);
        let g = TestFunction::gaussian(1).unwrap();
        assert!((g.fourier(0.0).unwrap() - (2.0 * PI).sqrt()).abs() < 1e-14);
        assert!(b.fourier(0.0).is_none());
    }

    #[test]
    fn sphere_breaks_cover_kinks() {
        let p = TestFunction::plateau(2).unwrap();
        let got = p.sphere_breaks(&[0.2, 0.0]);
        let want = [0.3, 0.7, 0.8, 1.2];
        assert_eq!(got.len(), 4);
        assert!(got.iter().zip(want).all(|(a, b)| (a - b).abs() < 1e-15));
    }
}
