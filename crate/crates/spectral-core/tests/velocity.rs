mod common;

use std::f64::consts::PI;

use approx::assert_abs_diff_eq;
use spectral_core::quad::adaptive_simpson;
use spectral_core::{recover_velocity, Grid, OddField};

#[test]
fn negative_sine_recovers_sine_velocity() {
    let grid = Grid::new(8);
    let omega = OddField::from_coeffs(grid, vec![-1.0]).unwrap();
    let v = recover_velocity(&omega);
    assert_abs_diff_eq!(v.u.coeffs()[0], 1.0, epsilon = 1e-15);
    assert_abs_diff_eq!(v.u_x0, 1.0, epsilon = 1e-15);
}

#[test]
fn single_mode_double_integration() {
    let grid = Grid::new(8);
    let omega = OddField::from_coeffs(grid, vec![0.0, 1.0]).unwrap();
    let v = recover_velocity(&omega);
    assert_abs_diff_eq!(v.u.coeffs()[1], -0.25, epsilon = 1e-15);
    assert_abs_diff_eq!(v.u_x0, -0.5, epsilon = 1e-15);
}

#[test]
fn velocity_slope_matches_moment_quadrature() {
    // u_x(0) = (1/2π)∫₀^{2π} y ω(y) dy, evaluated by adaptive Simpson with
    // the field summed directly — an independent, non-spectral oracle.
    let grid = Grid::new(16);
    for seed in [5u64, 6, 7] {
        let omega = common::random_odd(&grid, seed);
        let v = recover_velocity(&omega);
        let integral = adaptive_simpson(&|y| y * omega.eval(y), 0.0, 2.0 * PI, 1e-13);
        assert_abs_diff_eq!(v.u_x0, integral / (2.0 * PI), epsilon = 1e-10);
    }
}

#[test]
fn recovered_velocity_solves_u_xx_equals_omega() {
    let grid = Grid::new(24);
    let omega = common::random_odd(&grid, 9);
    let v = recover_velocity(&omega);
    let u_xx = v.u.differentiate().differentiate();
    let scale = omega.coeffs().iter().fold(1e-30f64, |m, a| m.max(a.abs()));
    for (got, want) in u_xx.coeffs().iter().zip(omega.coeffs()) {
        assert_abs_diff_eq!(got, want, epsilon = 1e-12 * scale);
    }
}

#[test]
fn recovery_inverts_double_differentiation() {
    let grid = Grid::new(24);
    let f = common::random_odd(&grid, 10);
    let back = recover_velocity(&f.differentiate().differentiate()).u;
    for (got, want) in back.coeffs().iter().zip(f.coeffs()) {
        assert_abs_diff_eq!(got, want, epsilon = 1e-12);
    }
}

#[test]
fn velocity_evaluation_matches_integral_formula() {
    // u(x) = ∫₀ˣ (x−y) ω(y) dy + x·u_x(0) pointwise, not just in modes.
    let grid = Grid::new(12);
    let omega = common::random_smooth_odd(&grid, 12, 0.3);
    let v = recover_velocity(&omega);
    for &x in &[0.7, -1.3, 2.9] {
        let integral = adaptive_simpson(&|y| (x - y) * omega.eval(y), 0.0, x, 1e-13);
        assert_abs_diff_eq!(v.u.eval(x), integral + x * v.u_x0, epsilon = 1e-10);
    }
}
