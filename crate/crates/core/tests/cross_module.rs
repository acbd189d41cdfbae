use loglap::euclid::{PeriodicGridFunction, TestFunction};
use loglap::hyperbolic::{kernel_config, linear_grid, KernelKind, KernelTable, Space};
use loglap::quad::{frullani_log, QuadratureConfig};
use loglap::spectral::{apply_phi, bochner_eigen_log, EigenModel, PhiSpec, SpectralCoefficients};
use proptest::prelude::*;

#[test]
fn kernel_table_round_trips_through_csv() {
    let grid = linear_grid(0.5, 4.0, 8).unwrap();
    let t = KernelTable::build(Space::Hyperbolic, KernelKind::Log2, 3, None, &grid, None, &kernel_config()).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("k2.csv");
    t.write(&path).unwrap();
    let back = KernelTable::read(&path).unwrap();
    assert_eq!(back.r_grid, t.r_grid);
    assert_eq!(back.values, t.values);
    assert!(back.is_positive_decreasing());
}

#[test]
fn grid_function_round_trips_through_csv() {
    let g = PeriodicGridFunction::sample(&TestFunction::bump(2).unwrap(), 8.0, 16).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.csv");
    g.write_csv(&path).unwrap();
    let back = PeriodicGridFunction::read_csv(&path).unwrap();
    assert_eq!(back.l2_norm(), g.l2_norm());
}

#[test]
fn torus_log_symbol_matches_frullani() {
    // the spectral log symbol on a torus against the scalar Frullani integral
    let model = EigenModel::torus(1, 2.0 * std::f64::consts::PI, 16).unwrap();
    let cfg = QuadratureConfig::default();
    for &lam in model.eigenvalues.iter().filter(|&&l| l > 0.0) {
        let e = bochner_eigen_log(lam, &cfg).unwrap();
        assert!((e.value - frullani_log(lam, &cfg).unwrap()).abs() < 1e-9);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn heat_then_frac_commute(t in 0.01f64..2.0, s in 0.05f64..0.95, seed in 0usize..9) {
        let model = EigenModel::sphere2(8);
        let c = SpectralCoefficients::unit(&model, 1 + seed * 7).unwrap();
        let a = apply_phi(&model, &apply_phi(&model, &c, &PhiSpec::Heat(t)).unwrap(), &PhiSpec::Frac(s)).unwrap();
        let b = apply_phi(&model, &apply_phi(&model, &c, &PhiSpec::Frac(s)).unwrap(), &PhiSpec::Heat(t)).unwrap();
        for (x, y) in a.coeffs.iter().zip(&b.coeffs) {
            prop_assert!((x - y).abs() <= 1e-13 * (1.0 + x.abs()));
        }
    }

    #[test]
    fn frullani_is_additive(a in 1e-2f64..1e2, b in 1e-2f64..1e2) {
        let cfg = QuadratureConfig::default();
        let lhs = frullani_log(a * b, &cfg).unwrap();
        let rhs = frullani_log(a, &cfg).unwrap() + frullani_log(b, &cfg).unwrap();
        prop_assert!((lhs - rhs).abs() < 1e-8);
    }
}
