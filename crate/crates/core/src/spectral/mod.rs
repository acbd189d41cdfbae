//! Functional calculus on explicit eigenbases, an `H^{2ε}` versus `H^log`
//! counterexample, and the killed half-line mass-loss model.

mod counterexample;
mod eigen;
mod halfline;

pub use counterexample::{
    coefficient, eigenvalue, embedding_counterexample, CounterexampleRow, CounterexampleTable, MAX_N, MIN_N,
};
pub use eigen::{
    apply_phi, bochner_eigen_log, sobolev_norms, BochnerEigen, EigenModel, ModelId, PhiSpec, SobolevNorms,
    SpectralCoefficients,
};
pub use halfline::{
    extrapolate_to_zero, frac_discrepancy_halfline, halfline_density, halfline_mass, halfline_mass_by_quadrature,
    mass_loss, massloss_vs, vs_csv_rows, vs_sweep, DiscrepancyReport, HalfLineProfile, VsRow, VS_HEADER,
};
