//! Sampled radial kernels with their provenance.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::heat::{EuclideanHeat, HyperbolicHeat, RadialHeat};
use super::kernels::{frac_kernel_bessel, frac_kernel_time, log_kernel_long, log_kernel_short, KernelRoute};
use crate::error::{Error, Result};
use crate::io;
use crate::quad::QuadratureConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Space {
    Euclidean,
    Hyperbolic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KernelKind {
    /// `K_s`, parameter `s`.
    Frac,
    /// Short-time logarithmic kernel `K1`.
    Log1,
    /// Long-time logarithmic kernel `K2`.
    Log2,
    /// Heat kernel, parameter `t`.
    Heat,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KernelTable {
    pub space: Space,
    pub kind: KernelKind,
    pub n: usize,
    /// `s` for `Frac`, `t` for `Heat`.
    pub parameter: Option<f64>,
    pub route: KernelRoute,
    pub cfg: QuadratureConfig,
    pub r_grid: Vec<f64>,
    pub values: Vec<f64>,
}

/// The JSON sidecar written next to the CSV.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableMeta {
    pub space: Space,
    pub kind: KernelKind,
    pub n: usize,
    pub s: Option<f64>,
    pub t: Option<f64>,
    pub route: KernelRoute,
    pub tolerances: QuadratureConfig,
    pub rows: usize,
}

/// `points` log-spaced radii from `r_min` to `r_max`.
pub fn log_grid(r_min: f64, r_max: f64, points: usize) -> Result<Vec<f64>> {
    if !(r_min > 0.0 && r_max > r_min && points >= 2) {
        return Err(Error::domain("log_grid", "need 0 < r_min < r_max and points >= 2"));
    }
    let (a, b) = (r_min.ln(), r_max.ln());
    Ok((0..points)
        .map(|i| (a + (b - a) * i as f64 / (points - 1) as f64).exp())
        .collect())
}

/// `points` evenly spaced radii from `r_min` to `r_max`.
pub fn linear_grid(r_min: f64, r_max: f64, points: usize) -> Result<Vec<f64>> {
    if !(r_min >= 0.0 && r_max > r_min && points >= 2) {
        return Err(Error::domain("linear_grid", "need 0 <= r_min < r_max and points >= 2"));
    }
    Ok((0..points)
        .map(|i| r_min + (r_max - r_min) * i as f64 / (points - 1) as f64)
        .collect())
}

fn default_route(space: Space, kind: KernelKind, n: usize) -> KernelRoute {
    match (space, kind) {
        (Space::Hyperbolic, KernelKind::Heat) if n % 2 == 1 => KernelRoute::TermAlgebra,
        (Space::Hyperbolic, KernelKind::Heat) => KernelRoute::RadialIntegral,
        (Space::Euclidean, KernelKind::Heat) => KernelRoute::ClosedForm,
        _ => KernelRoute::TimeQuadrature,
    }
}

impl KernelTable {
    /// Tabulate a kernel on `r_grid`. `route = None` picks the natural route.
    /// Rows are evaluated in parallel; the result does not depend on the
    /// worker count.
    #[allow(clippy::too_many_arguments)]
    pub fn build(
        space: Space,
        kind: KernelKind,
        n: usize,
        parameter: Option<f64>,
        r_grid: &[f64],
        route: Option<KernelRoute>,
        cfg: &QuadratureConfig,
    ) -> Result<KernelTable> {
        cfg.validate()?;
        if r_grid.is_empty() || r_grid.windows(2).any(|w| !(w[1] > w[0])) || !(r_grid[0] >= 0.0) {
            return Err(Error::domain("KernelTable::build", "r_grid must be nonempty, nonnegative and increasing"));
        }
        match kind {
            KernelKind::Frac => match parameter {
                Some(s) if s > 0.0 && s < 1.0 => {}
                _ => return Err(Error::domain("KernelTable::build", "fractional kernel needs s in (0, 1)")),
            },
            KernelKind::Heat => match parameter {
                Some(t) if t > 0.0 && t.is_finite() => {}
                _ => return Err(Error::domain("KernelTable::build", "heat kernel needs t > 0")),
            },
            _ => {}
        }
        let heat: Box<dyn RadialHeat> = match space {
            Space::Euclidean => {
                if n == 0 || n > 10 {
                    return Err(Error::domain("KernelTable::build", "Euclidean dimension must be in 1..=10"));
                }
                Box::new(EuclideanHeat { n })
            }
            Space::Hyperbolic => Box::new(HyperbolicHeat::shared(n)?.clone()),
        };
        let route = route.unwrap_or_else(|| default_route(space, kind, n));
        let allowed = match (space, kind, route) {
            (_, KernelKind::Frac | KernelKind::Log1 | KernelKind::Log2, KernelRoute::TimeQuadrature) => true,
            (Space::Hyperbolic, KernelKind::Frac, KernelRoute::BesselClosedForm) => n == 3 || n == 5,
            (Space::Hyperbolic, KernelKind::Heat, KernelRoute::TermAlgebra) => n % 2 == 1,
            (Space::Hyperbolic, KernelKind::Heat, KernelRoute::RadialIntegral) => n % 2 == 0,
            (Space::Euclidean, KernelKind::Heat, KernelRoute::ClosedForm) => true,
            _ => false,
        };
        if !allowed {
            return Err(Error::RouteMismatch { route: route.name(), n });
        }
        let needs_positive = !matches!(kind, KernelKind::Log2 | KernelKind::Heat);
        if needs_positive && r_grid[0] <= 0.0 {
            return Err(Error::domain("KernelTable::build", "this kernel is singular at r = 0"));
        }
        let heat = heat.as_ref();
        let values = crate::par::try_map(r_grid, |&r| match (kind, route) {
            (KernelKind::Frac, KernelRoute::BesselClosedForm) => frac_kernel_bessel(n, parameter.unwrap_or(0.5), r),
            (KernelKind::Frac, _) => frac_kernel_time(heat, parameter.unwrap_or(0.5), r, cfg),
            (KernelKind::Log1, _) => log_kernel_short(heat, r, cfg),
            (KernelKind::Log2, _) => log_kernel_long(heat, r, cfg),
            (KernelKind::Heat, _) => heat.eval(r, parameter.unwrap_or(1.0)),
        })?;
        Ok(KernelTable {
            space,
            kind,
            n,
            parameter,
            route,
            cfg: *cfg,
            r_grid: r_grid.to_vec(),
            values,
        })
    }

    pub fn len(&self) -> usize {
        self.r_grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.r_grid.is_empty()
    }

    /// Values positive and strictly decreasing in `r`.
    pub fn is_positive_decreasing(&self) -> bool {
        self.values.iter().all(|&v| v > 0.0) && self.values.windows(2).all(|w| w[1] < w[0])
    }

    pub fn meta(&self) -> TableMeta {
        let (s, t) = match self.kind {
            KernelKind::Frac => (self.parameter, None),
            KernelKind::Heat => (None, self.parameter),
            _ => (None, None),
        };
        TableMeta {
            space: self.space,
            kind: self.kind,
            n: self.n,
            s,
            t,
            route: self.route,
            tolerances: self.cfg,
            rows: self.len(),
        }
    }

    /// Write `r,value` rows to `path` and the metadata to the `.json` sidecar.
    pub fn write(&self, path: &Path) -> Result<()> {
        let rows: Vec<Vec<f64>> = self.r_grid.iter().zip(&self.values).map(|(&r, &v)| vec![r, v]).collect();
        io::write_csv(path, &["r", "value"], &rows)?;
        io::write_json(&io::sidecar_path(path), &self.meta())
    }

    pub fn read(path: &Path) -> Result<KernelTable> {
        let meta: TableMeta = io::read_json(&io::sidecar_path(path))?;
        let (header, rows) = io::read_csv(path)?;
        if header != ["r", "value"] || rows.iter().any(|r| r.len() != 2) {
            return Err(Error::Io("expected columns r,value".into()));
        }
        Ok(KernelTable {
            space: meta.space,
            kind: meta.kind,
            n: meta.n,
            parameter: meta.s.or(meta.t),
            route: meta.route,
            cfg: meta.tolerances,
            r_grid: rows.iter().map(|r| r[0]).collect(),
            values: rows.iter().map(|r| r[1]).collect(),
        })
    }
}
