//! Kernels and the pointwise logarithmic Laplacian on hyperbolic space.

mod fit;
mod heat;
mod kernels;
mod pointwise;
mod series;
mod table;
pub mod terms;

pub use heat::{dm_envelope, dm_ratio_scan, heat_kernel, heat_mass, sphere_area, EuclideanHeat, HyperbolicHeat, RadialHeat, RatioScan};
pub use terms::{BesselFactor, RadialTerm, TermSum};
pub use kernels::{
    frac_kernel, frac_kernel_bessel, frac_kernel_time, kernel_config, log_kernel_long, log_kernel_short, log_kernels,
    KernelRoute,
};
pub use fit::{asympt_fit, FitModel, FitReport, Regime, LARGE_R_MIN, MIN_POINTS, SMALL_R_MAX};
pub use table::{linear_grid, log_grid, KernelKind, KernelTable, Space, TableMeta};
pub use pointwise::{
    chapman_kolmogorov, energy_inequality, kernel_norms, log_bochner_h, log_pointwise_h, log_pointwise_h_with,
    pointwise_config, rho_hyperbolic, split_check, weighted_l1, ChapmanKolmogorov, EnergyReport, HyperRadialFunction,
    NormReport, RhoEstimate, SplitReport,
};
