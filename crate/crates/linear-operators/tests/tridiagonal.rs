mod common;

use approx::{assert_abs_diff_eq, assert_relative_eq};
use common::random_tilde;
use linear_operators::{coeff_d, damping_audit, margin, TridiagonalOperator};
use proptest::prelude::*;

#[test]
fn apply_matches_dense_matrix() {
    let op = TridiagonalOperator::new(12);
    let dense = op.dense();
    let c = random_tilde(12, 3, 0.1);
    let via_apply = op.apply(&c);
    let via_dense = dense * nalgebra::DVector::from_column_slice(&c);
    for (a, b) in via_apply.iter().zip(via_dense.iter()) {
        assert_abs_diff_eq!(a, b, epsilon = 1e-14);
    }
}

#[test]
fn quadratic_form_telescopes_exactly() {
    // The telescoped expression and the raw dot product <Lc, c> must
    // agree to rounding for any coefficient vector: the cross terms
    // cancel identically, truncation included.
    for seed in [1_u64, 2, 3, 4] {
        let op = TridiagonalOperator::new(40);
        let c = random_tilde(40, seed, 0.05);
        let image = op.apply(&c);
        let dot: f64 = image.iter().zip(c.iter()).map(|(a, b)| a * b).sum();
        let telescoped = op.quadratic_form(&c);
        let scale = c.iter().map(|v| v * v).sum::<f64>();
        assert_abs_diff_eq!(dot, telescoped, epsilon = 1e-12 * scale.max(1.0));
    }
}

#[test]
fn rayleigh_of_first_basis_vector() {
    // Concentrating on k = 1 gives <Lc, c> = -(d_2 - d_1) = -9/16.
    let op = TridiagonalOperator::new(8);
    let mut c = vec![0.0; 8];
    c[0] = 1.0;
    let r = op.rayleigh(&c).unwrap();
    assert_relative_eq!(r, -9.0 / 16.0, max_relative = 1e-14);
    assert_relative_eq!(-(coeff_d(2) - coeff_d(1)), -9.0 / 16.0, max_relative = 1e-15);
}

#[test]
fn rayleigh_of_zero_vector_is_none() {
    let op = TridiagonalOperator::new(4);
    assert!(op.rayleigh(&[0.0; 4]).is_none());
}

#[test]
fn dense_has_correct_bandwidth() {
    let op = TridiagonalOperator::new(10);
    let dense = op.dense();
    for i in 0..10 {
        for j in 0..10 {
            let v: f64 = dense[(i, j)];
            if i.abs_diff(j) > 1 {
                assert_abs_diff_eq!(v, 0.0, epsilon = 0.0);
            }
        }
    }
    // Subdiagonal entries are -d_k, superdiagonal entries +d_{k+1}.
    assert_relative_eq!(dense[(1, 0)], -coeff_d(2), max_relative = 1e-15);
    assert_relative_eq!(dense[(0, 1)], coeff_d(2), max_relative = 1e-15);
}

#[test]
fn audit_certifies_margins() {
    let report = damping_audit(2_000);
    assert!(report.passed());
    assert!(report.all_positive);
    assert!(report.identity_holds);
    assert_eq!(report.monotone_decreasing_from, 2);
    assert_eq!(report.argmin_k, 2_000);
    assert_relative_eq!(report.min_margin, margin(2_000), max_relative = 1e-12);
    assert!(report.max_quadratic_bound < -0.5);
    assert!(!report.samples.is_empty());
}

#[test]
fn audit_notices_corrupted_coupling() {
    assert!(linear_operators::audit_detects_corruption(137, 200));
    assert!(linear_operators::audit_detects_corruption(1, 50));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn rayleigh_never_exceeds_critical_value(seed in 0u64..1000, dim in 2usize..64) {
        let op = TridiagonalOperator::new(dim);
        let c = random_tilde(dim, seed, 0.0);
        prop_assume!(c.iter().any(|v| v.abs() > 1e-6));
        let r = op.rayleigh(&c).unwrap();
        // Every gap exceeds 1/2 by at least the margin at the truncation
        // edge, so the Rayleigh quotient is capped strictly below -1/2.
        let cap = -0.5 - margin(dim as u64).min(margin(1));
        prop_assert!(r <= cap + 1e-12, "rayleigh {} above cap {}", r, cap);
    }
}
