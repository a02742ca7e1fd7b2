mod common;

use approx::assert_abs_diff_eq;
use common::{integrate_product, random_h_field};
use proptest::prelude::*;
use spectral_core::{recover_velocity, Grid, OddField};
use weighted_spaces::{e_tilde, from_tilde, h_norm, TildeCoeffs, WeightSpec};

/// Both sides of the transport identity
/// `integral sin(x) f_x f rho dx = (1/2) integral f^2 rho dx`,
/// evaluated by raw weighted quadrature.
fn transport_identity_sides(f: &OddField) -> (f64, f64) {
    let grid = f.grid();
    let rho: Vec<f64> = grid
        .points()
        .iter()
        .map(|&x| WeightSpec::Rho.eval(x))
        .collect();
    let fs = f.synthesize();
    let fx = f.differentiate().synthesize();
    let lhs: Vec<f64> = grid
        .points()
        .iter()
        .zip(fx.iter().zip(fs.iter()))
        .zip(rho.iter())
        .map(|((&x, (&dfv, &fv)), &w)| x.sin() * dfv * fv * w)
        .collect();
    let rhs: Vec<f64> = fs
        .iter()
        .zip(rho.iter())
        .map(|(&fv, &w)| 0.5 * fv * fv * w)
        .collect();
    (grid.integrate(&lhs), grid.integrate(&rhs))
}

#[test]
fn transport_identity_on_basis_elements() {
    let grid = Grid::new(32);
    for k in 1..=3 {
        let e = e_tilde(&grid, k).unwrap();
        let (lhs, rhs) = transport_identity_sides(&e);
        assert_abs_diff_eq!(lhs, rhs, epsilon = 1e-10);
    }
}

#[test]
fn weight_family_is_pointwise_dominated() {
    // (1 + cos x)^k <= 2^(k-i) (1 + cos x)^i whenever k >= i.
    let grid = Grid::new(24);
    for &x in grid.points() {
        for i in 0..=4_u32 {
            for k in i..=4 {
                let high = WeightSpec::RhoK(k).eval(x);
                let low = WeightSpec::RhoK(i).eval(x);
                assert!(high <= 2.0_f64.powi((k - i) as i32) * low + 1e-14);
            }
        }
    }
}

/// Sup-norm diagnostics for the control of a field and its recovered
/// velocity by the weighted norm: returns the three observed ratios
/// `sup |f| rho^(1/2) / ||f||_H`, `sup |u| rho^(1/2) / ||f||_H`,
/// and `sup |u_x| / ||f||_H`.
fn control_ratios(f: &OddField) -> (f64, f64, f64) {
    let grid = f.grid();
    let h = h_norm(f).unwrap();
    let pair = recover_velocity(f);
    let fs = f.synthesize();
    let us = pair.u.synthesize();
    let uxs = pair.u.differentiate().synthesize();
    let mut sup_f = 0.0_f64;
    let mut sup_u = 0.0_f64;
    let mut sup_ux = 0.0_f64;
    for (i, &x) in grid.points().iter().enumerate() {
        let half = WeightSpec::Rho.eval(x).sqrt();
        sup_f = sup_f.max(fs[i].abs() * half);
        sup_u = sup_u.max(us[i].abs() * half);
        sup_ux = sup_ux.max(uxs[i].abs());
    }
    (sup_f / h, sup_u / h, sup_ux / h)
}

#[test]
fn sup_norm_control_is_resolution_stable() {
    // The observed control constants must not blow up or collapse when
    // the same field is re-expanded on a twice-finer grid.
    let tilde = TildeCoeffs::new((1..=12).map(|k| 0.5_f64.powi(k)).collect());
    let coarse = from_tilde(&Grid::new(48), &tilde).unwrap();
    let fine = from_tilde(&Grid::new(96), &tilde).unwrap();
    let (a1, b1, c1) = control_ratios(&coarse);
    let (a2, b2, c2) = control_ratios(&fine);
    for (lo, hi) in [(a1, a2), (b1, b2), (c1, c2)] {
        assert!(lo.is_finite() && hi.is_finite() && lo > 0.0 && hi > 0.0);
        let ratio = hi / lo;
        assert!(
            (0.5..=2.0).contains(&ratio),
            "control constant drifted under refinement: {lo} vs {hi}"
        );
    }
}

#[test]
fn sup_norm_control_bounded_over_random_sample() {
    // Fit the constant over a sample of admissible fields; it must stay
    // uniformly bounded (the point of using the singular weight).
    let grid = Grid::new(48);
    let mut worst = 0.0_f64;
    for seed in 100..140 {
        let f = random_h_field(&grid, seed, 0.1);
        let (a, b, c) = control_ratios(&f);
        worst = worst.max(a).max(b).max(c);
    }
    assert!(worst.is_finite());
    assert!(worst < 10.0, "observed control constant {worst} too large");
}

#[test]
fn integrate_product_matches_parseval() {
    // Unweighted L^2 via samples equals pi * sum of squared coefficients.
    let grid = Grid::new(32);
    let f = random_h_field(&grid, 7, 0.2);
    let fs = f.synthesize();
    let by_grid = integrate_product(&grid, &fs, &fs);
    let by_coeffs: f64 = std::f64::consts::PI * f.coeffs().iter().map(|a| a * a).sum::<f64>();
    assert_abs_diff_eq!(by_grid, by_coeffs, epsilon = 1e-12);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn transport_identity_holds_on_h(seed in 0u64..500, decay in 0.1f64..0.5) {
        let grid = Grid::new(32);
        let f = random_h_field(&grid, seed, decay);
        let (lhs, rhs) = transport_identity_sides(&f);
        let scale = rhs.abs().max(1.0);
        prop_assert!((lhs - rhs).abs() <= 1e-8 * scale);
    }
}
