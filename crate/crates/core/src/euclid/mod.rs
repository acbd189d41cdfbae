//! Fractional and logarithmic Laplacians on `R^n` and on flat tori.

mod constants;
mod functions;
mod grid;
mod hybrid;
mod limits;
mod pointwise;

pub use constants::{constants, frac_constant_check, EuclideanConstants, FracConstant, FracConstantCheck};
pub use functions::{TestFunction, GAUSSIAN_TRUNCATION};
pub use grid::{GridHeader, PeriodicGridFunction, Spectrum};
pub use hybrid::{frac_multiplier_point, log_multiplier_point, multiplier_points, HybridConfig, Operator};
pub use limits::{limits_report, LimitRow, LimitsReport};
pub use pointwise::{
    frac_bochner_point, frac_pointwise, frac_pointwise_with, integral, log_bochner_point, log_pointwise,
    log_pointwise_with, pointwise_config, SphericalMean,
};
